"""
Direct (tensor / Kronecker / categorical) product of digraphs and the
girth amplifier C_p x D.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Tuple

import networkx as nx

import walks
from digraph_core import Digraph, build, cycle, degree_profile
from errors import DigraphError


@dataclass(frozen=True)
class ProductLayout:
    """Row-major vertex numbering (u, v) -> u*n2 + v, shared with matrix_ops.kronecker."""
    n1: int
    n2: int

    def index(self, u: int, v: int) -> int:
        return u * self.n2 + v

    def project(self, index: int) -> Tuple[int, int]:
        return divmod(index, self.n2)


def direct_product(D1: Digraph, D2: Digraph) -> Digraph:
    """(u, v) -> (x, y) iff u -> x in D1 and v -> y in D2."""
    layout = ProductLayout(D1.n, D2.n)
    return build(
        D1.n * D2.n,
        (
            (layout.index(u, v), layout.index(x, y))
            for u, x in D1.arcs()
            for v, y in D2.arcs()
        ),
    )


def cycle_product_shape(length: int, m: int) -> Tuple[int, int]:
    """C_l x C_m is gcd(l, m) disjoint copies of C_lcm(l, m)."""
    if length < 2 or m < 2:
        raise DigraphError(f"cycle lengths must be at least 2, got ({length}, {m})")
    g = gcd(length, m)
    return g, length * m // g


def to_networkx(D: Digraph) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(range(D.n))
    G.add_edges_from(D.arcs())
    return G


def _is_directed_cycle(G: nx.DiGraph) -> bool:
    if G.number_of_nodes() < 2:
        return False
    if any(G.out_degree(x) != 1 or G.in_degree(x) != 1 for x in G.nodes):
        return False
    start = next(iter(G.nodes))
    node, steps = start, 0
    while True:
        node = next(iter(G.successors(node)))
        steps += 1
        if node == start:
            return steps == G.number_of_nodes()


def verify_cycle_product(length: int, m: int) -> List[List[int]]:
    """
    Build C_l x C_m, split it into weakly connected components and check each
    is a directed cycle of length lcm(l, m), gcd(l, m) of them in total.

    Returns:
        The components as sorted vertex lists.

    Raises:
        AssertionError: if the product does not have the expected shape
    """
    copies, cycle_len = cycle_product_shape(length, m)
    G = to_networkx(direct_product(cycle(length), cycle(m)))
    components = sorted(sorted(c) for c in nx.weakly_connected_components(G))
    assert len(components) == copies, f"{len(components)} components, expected {copies}"
    for comp in components:
        sub = G.subgraph(comp)
        assert len(comp) == cycle_len, f"component of size {len(comp)}, expected {cycle_len}"
        assert _is_directed_cycle(sub), f"component {comp[:4]}... is not a directed cycle"
    return components


def girth_amplifier(D: Digraph, p: int) -> Digraph:
    """C_p x D: p*n vertices, same minimum out-degree as D."""
    if p < 2:
        raise DigraphError(f"multiplier p must be at least 2, got {p}")
    return direct_product(cycle(p), D)


def amplified_parameters(D: Digraph, p: int) -> Tuple[int, int, walks.GirthResult]:
    """Order, minimum out-degree and girth of C_p x D."""
    amplified = girth_amplifier(D, p)
    return amplified.n, degree_profile(amplified).min_out, walks.girth(amplified)
