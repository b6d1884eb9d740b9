"""
Girth, closed walks and simple cycles.

girth() is a BFS from every vertex. The cycle-parity questions asked by the
girth-doubling argument are answered on simple cycles (bounded DFS), while
the multiples-of-p questions are answered on closed walks (boolean matrix
powers); the two are not interchangeable.
"""

import random
from collections import Counter, deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import matrix_ops
from digraph_core import Digraph
from errors import WalkError

Cycle = Tuple[int, ...]


@dataclass(frozen=True)
class Walk:
    """v_0, v_1, ..., v_l on a host digraph; length l counts arcs."""
    host: Digraph
    vertices: Tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise WalkError("a walk needs at least one vertex")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not self.host.has_arc(a, b):
                raise WalkError(f"({a}, {b}) is not an arc of the host")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def arc_multiset(self) -> Counter:
        return Counter(zip(self.vertices, self.vertices[1:]))


@dataclass(frozen=True)
class CycleMultiset:
    cycles: Tuple[Cycle, ...]

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.cycles)

    def arc_multiset(self) -> Counter:
        arcs = Counter()
        for c in self.cycles:
            for i, u in enumerate(c):
                arcs[(u, c[(i + 1) % len(c)])] += 1
        return arcs


@dataclass(frozen=True)
class GirthResult:
    """value is None when the digraph has no cycle of the requested kind."""
    value: Optional[int]
    witness: Optional[Cycle] = None

    @property
    def is_acyclic(self) -> bool:
        return self.value is None


NO_CYCLE = GirthResult(None, None)


def canonical_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotate so the smallest vertex comes first."""
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def _shortest_cycle_through(D: Digraph, v: int, limit: Optional[int]) -> Optional[Cycle]:
    # BFS from v; the first arc back into v closes a shortest cycle through v
    parent = {v: None}
    depth = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if limit is not None and depth[u] + 1 >= limit:
            break
        for w in D.out_adj[u]:
            if w == v:
                path = []
                node = u
                while node is not None:
                    path.append(node)
                    node = parent[node]
                return tuple(reversed(path))
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
    return None


def girth(D: Digraph) -> GirthResult:
    """Shortest directed cycle and a witness, O(n(n+m))."""
    best: Optional[Cycle] = None
    for v in range(D.n):
        found = _shortest_cycle_through(D, v, len(best) if best else None)
        if found is not None and (best is None or len(found) < len(best)):
            best = found
            if len(best) == 2:
                break
    if best is None:
        return NO_CYCLE
    return GirthResult(len(best), canonical_cycle(best))


def count_closed_walks(D: Digraph, length: int, v: int) -> int:
    """Exact number of closed walks of the given length through v: (M^l)_vv."""
    if length < 1:
        raise ValueError(f"walk length must be positive, got {length}")
    return matrix_ops.mat_pow(matrix_ops.adjacency(D), length)[v, v]


def has_closed_walk(D: Digraph, length: int) -> bool:
    if length < 1:
        raise ValueError(f"walk length must be positive, got {length}")
    power = matrix_ops.bool_pow(matrix_ops.to_bool(matrix_ops.adjacency(D)), length)
    return bool(np.any(np.diagonal(power)))


def closed_walk_lengths(D: Digraph, max_len: int) -> List[bool]:
    """
    Entry l-1 says whether some closed walk of length l exists, l = 1..max_len.
    One boolean product per length.
    """
    A = matrix_ops.to_bool(matrix_ops.adjacency(D))
    present = []
    power = np.eye(D.n, dtype=bool)
    for _ in range(max_len):
        power = matrix_ops.bool_mul(power, A)
        present.append(bool(np.any(np.diagonal(power))))
    return present


def decompose_closed_walk(w: Walk) -> CycleMultiset:
    """
    Split a closed walk into simple cycles.

    Scans the walk with a stack; the first repeated vertex closes a cycle,
    which is popped off and recorded. The earliest completed cycle always
    wins.
    """
    if not w.is_closed or w.length < 1:
        raise WalkError("only closed walks of positive length decompose into cycles")
    stack = [w.vertices[0]]
    position: Dict[int, int] = {w.vertices[0]: 0}
    cycles: List[Cycle] = []
    for x in w.vertices[1:]:
        if x in position:
            start = position[x]
            cycles.append(tuple(stack[start:]))
            for popped in stack[start + 1:]:
                del position[popped]
            del stack[start + 1:]
        else:
            position[x] = len(stack)
            stack.append(x)
    return CycleMultiset(tuple(cycles))


def random_closed_walk(D: Digraph, rng: random.Random, start: int, max_len: int) -> Optional[Walk]:
    """Random out-arc steps from start until the first return; None if stuck or too long."""
    vertices = [start]
    current = start
    while len(vertices) <= max_len:
        options = D.out_adj[current]
        if not options:
            return None
        current = rng.choice(options)
        vertices.append(current)
        if current == start:
            return Walk(D, tuple(vertices))
    return None


def enumerate_simple_cycles(D: Digraph, max_len: int) -> List[Cycle]:
    """
    Every simple cycle with at most max_len arcs, once each, smallest vertex first.

    The DFS from start s only visits vertices above s, so each cycle is found
    exactly once, from its minimum vertex.
    """
    if max_len < 2:
        raise ValueError(f"max_len must be at least 2, got {max_len}")
    found: List[Cycle] = []
    for s in range(D.n):
        path = [s]
        on_path = {s}
        # explicit stack of neighbour iterators
        stack = [iter(D.out_adj[s])]
        while stack:
            advanced = False
            for w in stack[-1]:
                if w == s:
                    if len(path) >= 2:
                        found.append(tuple(path))
                    continue
                if w > s and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    stack.append(iter(D.out_adj[w]))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                on_path.discard(path.pop())
    return found


def shortest_even_cycle(D: Digraph, bound: int) -> GirthResult:
    """Shortest simple cycle of even length strictly below bound."""
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    if bound < 3:
        return NO_CYCLE
    best = None
    for c in enumerate_simple_cycles(D, bound - 1):
        if len(c) % 2 == 0 and (best is None or len(c) < len(best)):
            best = c
    if best is None:
        return NO_CYCLE
    return GirthResult(len(best), best)
