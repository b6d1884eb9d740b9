"""
Simple loop-free digraphs on vertices 0..n-1.
Construction, validation and degree parameters.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from errors import DigraphError

Arc = Tuple[int, int]


def arc_bit(n: int, u: int, v: int) -> int:
    """Bit position of arc u->v in the n(n-1)-bit encoding used by search."""
    return u * (n - 1) + (v if v < u else v - 1)


@dataclass(frozen=True)
class Digraph:
    """
    Immutable simple digraph.

    out_adj[u] is the sorted tuple of out-neighbours of u. Equality and
    hashing are by labelled structure, not up to isomorphism.
    """
    n: int
    out_adj: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DigraphError(f"digraph needs at least one vertex, got n={self.n}")
        if len(self.out_adj) != self.n:
            raise DigraphError(f"expected {self.n} adjacency rows, got {len(self.out_adj)}")
        for u, row in enumerate(self.out_adj):
            for v in row:
                if not 0 <= v < self.n:
                    raise DigraphError(f"arc ({u}, {v}) leaves the vertex range [0, {self.n})")
                if v == u:
                    raise DigraphError(f"self-loop at vertex {u}")
            if list(row) != sorted(set(row)):
                raise DigraphError(f"row {u} must be strictly increasing")

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.out_adj)

    def arcs(self) -> List[Arc]:
        return [(u, v) for u, row in enumerate(self.out_adj) for v in row]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def out_degrees(self) -> List[int]:
        return [len(row) for row in self.out_adj]

    def in_degrees(self) -> List[int]:
        counts = [0] * self.n
        for row in self.out_adj:
            for v in row:
                counts[v] += 1
        return counts

    def to_bitmask(self) -> int:
        mask = 0
        for u, v in self.arcs():
            mask |= 1 << arc_bit(self.n, u, v)
        return mask

    @classmethod
    def from_bitmask(cls, n: int, mask: int) -> "Digraph":
        width = n - 1
        rows = []
        for u in range(n):
            row_bits = (mask >> (u * width)) & ((1 << width) - 1) if width else 0
            row = []
            for j in range(width):
                if row_bits >> j & 1:
                    row.append(j if j < u else j + 1)
            rows.append(tuple(row))
        return cls(n, tuple(rows))


@dataclass(frozen=True)
class DegreeProfile:
    min_out: int
    min_in: int
    is_d_regular: Optional[int]


def build(n: int, arcs: Iterable[Arc]) -> Digraph:
    """
    Build a digraph from an arc list. Duplicates collapse.

    Raises:
        DigraphError: on a self-loop, an out-of-range vertex or n < 1
    """
    if n < 1:
        raise DigraphError(f"digraph needs at least one vertex, got n={n}")
    rows = [set() for _ in range(n)]
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc ({u}, {v}) leaves the vertex range [0, {n})")
        if u == v:
            raise DigraphError(f"self-loop at vertex {u}")
        rows[u].add(v)
    return Digraph(n, tuple(tuple(sorted(row)) for row in rows))


def circulant(n: int, d: int) -> Digraph:
    """Arcs i -> i+1, ..., i+d (mod n). d-regular with girth ceil(n/d)."""
    if not 1 <= d < n:
        raise DigraphError(f"circulant needs 1 <= d < n, got n={n}, d={d}")
    return build(n, ((i, (i + j) % n) for i in range(n) for j in range(1, d + 1)))


def cycle(n: int) -> Digraph:
    """The directed cycle C_n."""
    return circulant(n, 1)


def complete(n: int) -> Digraph:
    """Complete symmetric digraph: every ordered pair of distinct vertices."""
    return build(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def degree_profile(D: Digraph) -> DegreeProfile:
    outs = D.out_degrees()
    ins = D.in_degrees()
    regular = None
    if len(set(outs)) == 1 and set(ins) == set(outs):
        regular = outs[0]
    return DegreeProfile(min_out=min(outs), min_in=min(ins), is_d_regular=regular)


def is_oriented(D: Digraph) -> bool:
    """True when no pair of symmetric arcs exists."""
    return not any(D.has_arc(v, u) for u, v in D.arcs())


def disjoint_union(copies: int, D: Digraph) -> Digraph:
    """jD: copy c sits on the index block [c*n, (c+1)*n)."""
    if copies < 1:
        raise DigraphError(f"need at least one copy, got {copies}")
    n = D.n
    return build(
        copies * n,
        ((c * n + u, c * n + v) for c in range(copies) for u, v in D.arcs()),
    )
