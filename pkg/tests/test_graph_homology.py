from __future__ import annotations

from fractions import Fraction

import pytest

from hkverify import diagrams as dg
from hkverify.char_classes import modified_bernoulli
from hkverify.graph_homology import (
    ContextIncomplete,
    GraphVector,
    StrutPresent,
    build_quotient,
    differential,
    ihx_relation,
    is_zero_mod_relations,
    product,
    wheeling_check,
    wheeling_element,
)


def V(d, c=1):
    return GraphVector.from_diagram(d, c)


W2, W4, TH = V(dg.wheel(1)), V(dg.wheel(2)), V(dg.theta())


def test_product_unit():
    assert product(GraphVector.one(), TH) == TH
    assert product(TH, GraphVector.one()) == TH


def test_product_of_wheels_is_the_union():
    assert product(W2, W2) == V(dg.disjoint_union(dg.wheel(1), dg.wheel(1)))


def test_product_commutes_on_theta_and_w2():
    assert product(TH, W2) == product(W2, TH)


def test_differential_of_w2_is_theta():
    assert differential(W2) == TH


def test_differential_of_theta_vanishes():
    assert not differential(TH)


def test_differential_of_w2_squared():
    u = dg.disjoint_union(dg.wheel(1), dg.wheel(1))
    legs = u.univalent
    bridge = V(dg.glue_legs(u, legs[0], legs[2]))
    assert differential(product(W2, W2)) == 2 * product(TH, W2) + 4 * bridge


def test_differential_rejects_struts():
    with pytest.raises(StrutPresent):
        differential(V(dg.disjoint_union(dg.wheel(1), dg.strut())))


def test_differential_is_theta_linear():
    for g in (W2, W4, product(W2, W2)):
        assert differential(product(TH, g)) == product(TH, differential(g))


def test_differential_lowers_legs_by_two():
    for g in (W4, product(W2, W2), product(TH, W4)):
        before = g.bidegrees()
        for k, l in differential(g).bidegrees():
            assert (k, l + 2) in before


def test_wheeling_element_pieces():
    b = modified_bernoulli(2)
    om = wheeling_element(8)
    assert om.homogeneous(0) == GraphVector.one()
    assert om.homogeneous(4) == Fraction(1, 48) * W2
    assert om.homogeneous(8) == b[2] * W4 + Fraction(1, 2) * b[1] ** 2 * product(W2, W2)


def test_theta_is_not_a_relation():
    ctx = build_quotient((2, 0), [dg.theta()])
    assert ctx.relation_rank == 0
    assert not is_zero_mod_relations(TH, ctx)
    assert is_zero_mod_relations(GraphVector(), ctx)


def test_no_relations_without_trivalent_vertices():
    ctx = build_quotient((0, 4), [dg.disjoint_union(dg.strut(), dg.strut())])
    assert ctx.relation_rank == 0


def test_ihx_generator_lies_in_span():
    rels = []
    for key in differential(W4).support():
        d = dg.diagram_from_key(key)
        rels += [GraphVector(ihx_relation(d, i)) for i in range(len(d.edges))]
    rel = next(r for r in rels if r)
    ctx = build_quotient((4, 2), rel.support())
    assert ctx.relation_rank >= 1
    assert is_zero_mod_relations(rel, ctx)


def test_context_incomplete():
    ctx = build_quotient((2, 0), [dg.theta()])
    with pytest.raises(ContextIncomplete):
        is_zero_mod_relations(W2, ctx)


def test_build_quotient_checks_bidegree():
    with pytest.raises(ValueError):
        build_quotient((2, 0), [dg.wheel(1)])


def test_wheeling_through_degree_four():
    rows = wheeling_check(8)
    assert [r["degree"] for r in rows] == [0, 2, 4]
    assert all(r["reduced_norm_zero"] for r in rows)
    # degree 2 needs no relation at all
    assert rows[1]["relation_rank"] == 0


def test_degree_two_holds_identically():
    om = wheeling_element(4)
    assert differential(om.homogeneous(4)) == Fraction(1, 48) * TH


@pytest.mark.parametrize("bad", [0, 3, -2])
def test_wheeling_check_bound(bad):
    with pytest.raises(ValueError):
        wheeling_check(bad)


def test_wrong_constant_is_detected():
    # with 1/24 in place of 1/48 the degree-4 difference is not a relation
    om = wheeling_element(8)
    diff = differential(om.homogeneous(8)) - Fraction(1, 24) * product(TH, om.homogeneous(4))
    ctx = build_quotient((4, 2), diff.support())
    assert not is_zero_mod_relations(diff, ctx)
