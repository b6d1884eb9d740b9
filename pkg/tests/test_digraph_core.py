import os
import random
import sys

import pytest

# Make src/GirthLab importable
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src', 'GirthLab'))

import digraph_core
import walks
from digraph_core import Digraph, build, circulant, complete, cycle, degree_profile, disjoint_union
from errors import DigraphError


def test_build_cycle_and_symmetric_pair():
    c3 = build(3, [(0, 1), (1, 2), (2, 0)])
    assert c3.out_adj == ((1,), (2,), (0,))
    assert c3 == cycle(3)

    pair = build(2, [(0, 1), (1, 0)])
    assert pair.m == 2
    assert walks.girth(pair).value == 2


def test_build_rejects_self_loop_and_bad_vertex():
    with pytest.raises(DigraphError):
        build(1, [(0, 0)])
    with pytest.raises(DigraphError):
        build(3, [(0, 3)])
    with pytest.raises(DigraphError):
        build(0, [])


def test_build_deduplicates_and_round_trips():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 8)
        arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(3 * n)]
        arcs = [(u, v) for u, v in arcs if u != v]
        D = build(n, arcs + arcs)
        assert D.arcs() == sorted(set(arcs))


def test_digraph_constructor_validates_rows():
    with pytest.raises(DigraphError):
        Digraph(2, ((1, 1), ()))
    with pytest.raises(DigraphError):
        Digraph(2, ((1,),))


@pytest.mark.parametrize('n,d,expected', [(5, 1, 5), (5, 2, 3), (7, 3, 3)])
def test_circulant_examples(n, d, expected):
    assert walks.girth(circulant(n, d)).value == expected


def test_circulant_rejects_large_jump():
    with pytest.raises(DigraphError):
        circulant(4, 4)


def test_circulant_regular_with_ceiling_girth():
    for n in range(2, 31):
        for d in range(1, n):
            D = circulant(n, d)
            assert degree_profile(D).is_d_regular == d
            assert walks.girth(D).value == -(-n // d), (n, d)


def test_degree_profile_examples():
    assert degree_profile(cycle(5)) == digraph_core.DegreeProfile(1, 1, 1)
    assert degree_profile(circulant(5, 2)) == digraph_core.DegreeProfile(2, 2, 2)
    star = build(3, [(0, 1), (0, 2)])
    profile = degree_profile(star)
    assert profile.min_out == 0
    assert profile.is_d_regular is None


def test_out_degree_below_order():
    D = complete(6)
    assert D.m == 30
    assert all(len(row) < D.n for row in D.out_adj)


def test_disjoint_union():
    c3 = cycle(3)
    assert disjoint_union(1, c3) == c3

    two = disjoint_union(2, c3)
    assert two.n == 6
    assert walks.girth(two).value == 3
    assert two.has_arc(3, 4) and two.has_arc(5, 3)

    arcs3 = disjoint_union(3, build(2, [(0, 1)]))
    assert arcs3.n == 6 and arcs3.m == 3
    assert walks.girth(arcs3).is_acyclic


def test_disjoint_union_keeps_girth_and_min_out():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 6)
        D = build(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.4])
        U = disjoint_union(rng.randint(1, 3), D)
        assert walks.girth(U).value == walks.girth(D).value
        assert degree_profile(U).min_out == degree_profile(D).min_out


def test_bitmask_round_trip_exhaustive_n3():
    seen = set()
    for mask in range(1 << 6):
        D = Digraph.from_bitmask(3, mask)
        assert D.to_bitmask() == mask
        seen.add(D)
    assert len(seen) == 64


def test_is_oriented():
    assert digraph_core.is_oriented(cycle(4))
    assert not digraph_core.is_oriented(cycle(2))
