from __future__ import annotations

import random

import pytest

from hkverify import diagrams as dg


def test_theta_literal_is_valid():
    d = dg.build(6, [(1, 2), (3, 4), (5, 6)], [(1, 3, 5), (2, 4, 6)], ())
    assert d.bidegree == (2, 0)
    assert d.degree == 2


def test_empty_diagram():
    d = dg.build(0, ())
    assert d.bidegree == (0, 0)
    assert d == dg.empty()


@pytest.mark.parametrize("edges,tri,uni", [
    ([(1, 2), (2, 3)], [], (1, 2, 3, 4)),          # flag in two edges
    ([(1, 2), (3, 4)], [(1, 2, 3)], (4, 4)),       # univalent flag reused
    ([(1, 2), (3, 4)], [(1, 2, 3)], ()),           # counts inconsistent
])
def test_build_rejects_bad_partitions(edges, tri, uni):
    with pytest.raises(dg.MalformedDiagram):
        dg.build(4, edges, tri, uni)


def test_build_rejects_odd_flag_count():
    with pytest.raises(dg.MalformedDiagram):
        dg.build(3, [(1, 2)], [], (1, 2, 3))


def test_wheel_shapes():
    assert dg.wheel(1).bidegree == (2, 2)
    w4 = dg.wheel(2)
    assert w4.degree == 8
    assert sum(len(t) for t in w4.trivalent) == 12
    w8 = dg.wheel(4)
    assert w8.bidegree == (8, 8)
    assert w8.univalent == tuple(range(2, 17, 2))


def test_wheel_zero_rejected():
    with pytest.raises(ValueError):
        dg.wheel(0)


def test_wheel_labelling_sign_is_minus_one():
    for k in (1, 2, 3):
        assert dg.wheel_with_sign(k)[1] == -1


def test_union_bidegrees():
    assert dg.disjoint_union(dg.strut(), dg.strut()).bidegree == (0, 4)
    assert dg.disjoint_union(dg.wheel(1), dg.strut()).bidegree == (2, 4)
    assert dg.strut().bidegree == (0, 2)
    assert dg.theta().bidegree == (2, 0)


def test_union_with_unit_is_identity():
    assert dg.canonicalize(dg.disjoint_union(dg.empty(), dg.theta())) == dg.canonicalize(dg.theta())


def _random_relabel(d, rng):
    perm = list(range(1, d.num_flags + 1))
    rng.shuffle(perm)
    return dg.relabel(d, dict(zip(range(1, d.num_flags + 1), perm)))


def test_relabel_keeps_key_and_sign():
    rng = random.Random(7)
    for d in (dg.wheel(1), dg.wheel(2), dg.theta(), dg.disjoint_union(dg.wheel(1), dg.strut())):
        ref = dg.canonicalize(d)
        for _ in range(5):
            assert dg.canonicalize(_random_relabel(d, rng)) == ref


def test_reversing_a_vertex_flips_sign():
    d = dg.wheel(1)
    key, sign = dg.canonicalize(d)
    key2, sign2 = dg.canonicalize(dg.reverse_vertex(d, 0))
    assert key2 == key and sign2 == -sign != 0


def test_twice_reversed_restores_sign():
    d = dg.wheel(2)
    assert dg.canonicalize(dg.reverse_vertex(dg.reverse_vertex(d, 1), 1)) == dg.canonicalize(d)


def test_odd_automorphism_gives_sign_zero():
    # swapping the two legs at one end of H is an odd automorphism
    assert dg.canonicalize(dg.h_diagram())[1] == 0
    assert dg.canonicalize(dg.tripod())[1] == 0


def test_doubled_edge_with_two_legs_is_the_two_wheel():
    d = dg.build(8, [(1, 2), (3, 4), (5, 7), (6, 8)], [(1, 3, 5), (2, 4, 6)], (7, 8))
    key, sign = dg.canonicalize(d)
    assert sign != 0
    assert key == dg.canonicalize(dg.wheel(1))[0]


def test_canonical_representative_is_fixed_point():
    for d in (dg.wheel(1), dg.wheel(2), dg.theta(), dg.disjoint_union(dg.theta(), dg.wheel(1))):
        key, _ = dg.canonicalize(d)
        assert dg.canonicalize(dg.diagram_from_key(key)) == (key, 1)


def test_b_prime_membership():
    assert dg.is_in_B_prime(dg.wheel(2))
    assert not dg.is_in_B_prime(dg.disjoint_union(dg.wheel(1), dg.strut()))
    assert dg.is_in_B_prime(dg.empty())


def test_literal_round_trip():
    for d in (dg.wheel(2), dg.theta(), dg.disjoint_union(dg.wheel(1), dg.strut()), dg.empty()):
        assert dg.parse_diagram(dg.format_diagram(d)) == d


def test_literal_is_whitespace_insensitive():
    d = dg.parse_diagram(" flags = 6 ;edges=(1 2) (3 4)(5 6);  tri=(1 3 5)(2 6 4) ; uni= ")
    assert d == dg.theta()


@pytest.mark.parametrize("text", [
    "edges=(1 2)",
    "flags=2; edges=(1 2); uni=(1 2)",
    "flags=2; edges=(1 2) x; uni=(1)(2)",
    "flags=2; bogus=(1)",
])
def test_literal_errors(text):
    with pytest.raises(dg.MalformedDiagram):
        dg.parse_diagram(text)


def test_components_split_union():
    u = dg.disjoint_union(dg.disjoint_union(dg.wheel(1), dg.theta()), dg.strut())
    parts = sorted(c.bidegree for c in dg.components(u))
    assert parts == [(0, 2), (2, 0), (2, 2)]
