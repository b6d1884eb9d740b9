"""
Arc-list text format:

    # comments anywhere
    n 5
    0 1
    1 2

Header first (after comments), then one whitespace-separated 0-indexed arc
per line. Duplicate arcs are an error, not a silent merge.
"""

from typing import Iterable, Optional

from digraph_core import Digraph, build
from errors import ArcListParseError


def parse(text: str) -> Digraph:
    n: Optional[int] = None
    seen = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != 'n':
                raise ArcListParseError(line_no, f"expected header 'n <count>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise ArcListParseError(line_no, f"vertex count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise ArcListParseError(line_no, f"vertex count must be at least 1, got {n}")
            continue
        if len(parts) != 2:
            raise ArcListParseError(line_no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ArcListParseError(line_no, f"non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ArcListParseError(line_no, f"vertex out of range [0, {n}) in {line!r}")
        if u == v:
            raise ArcListParseError(line_no, f"self-loop at vertex {u}")
        if (u, v) in seen:
            raise ArcListParseError(line_no, f"duplicate arc {u} {v} (first on line {seen[(u, v)]})")
        seen[(u, v)] = line_no
    if n is None:
        raise ArcListParseError(max(1, len(text.splitlines())), "missing header 'n <count>'")
    return build(n, seen.keys())


def serialize(D: Digraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {D.n}")
    lines.extend(f"{u} {v}" for u, v in D.arcs())
    return '\n'.join(lines) + '\n'


def read_file(path: str) -> Digraph:
    with open(path, 'r') as f:
        return parse(f.read())


def write_file(path: str, D: Digraph, comments: Iterable[str] = ()):
    with open(path, 'w') as f:
        f.write(serialize(D, comments))
