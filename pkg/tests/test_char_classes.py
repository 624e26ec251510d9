from __future__ import annotations

from fractions import Fraction

import pytest

from hkverify import diagrams as dg
from hkverify.char_classes import (
    GradedPolynomial,
    UnsupportedDiagram,
    c_from_ch,
    ch_from_c,
    classical_todd,
    modified_bernoulli,
    rw_symbol_map,
    td,
    td_half,
)
from hkverify.graph_homology import GraphVector, product, wheeling_element


def c(n, k):
    return GradedPolynomial.variable(n, k)


def test_bernoulli_values():
    b = modified_bernoulli(3)
    assert b[1] == Fraction(1, 48)
    assert b[2] == Fraction(-1, 5760)
    assert b[3] == Fraction(1, 362880)
    assert 0 not in b


def test_bernoulli_against_sympy_series():
    import sympy as sp
    x = sp.Symbol("x")
    ser = sp.series(sp.log(sp.sinh(x / 2) / (x / 2)) / 2, x, 0, 13).removeO()
    b = modified_bernoulli(6)
    for k in range(1, 7):
        assert Fraction(str(ser.coeff(x, 2 * k))) == b[k]


def test_bernoulli_range():
    with pytest.raises(ValueError):
        modified_bernoulli(0)


def test_newton_examples():
    ch = ch_from_c(2)
    assert ch[1] == -c(2, 1)
    assert ch[2] == (c(2, 1) * c(2, 1) - c(2, 2) * 2) * Fraction(1, 12)


def test_c_ch_round_trip():
    n = 8
    ch = ch_from_c(n)
    back = c_from_ch(n)
    for k in range(1, n + 1):
        assert back[k].substitute(ch) == c(n, k)


def test_td_half_low_weights():
    h = td_half(4)
    assert h.weight_part(0) == GradedPolynomial.constant(4, 1)
    assert h.weight_part(1) == c(4, 1) * Fraction(1, 24)
    assert h.weight_part(2) == (c(4, 1) * c(4, 1) * 7 - c(4, 2) * 4) * Fraction(1, 5760)


def test_td_half_four_from_bernoulli():
    b = modified_bernoulli(2)
    ch = ch_from_c(2)
    x = ch[1] * (-b[1] * 2) + ch[2] * (-b[2] * 24)
    want = GradedPolynomial.constant(2, 1) + x + x * x * Fraction(1, 2)
    assert want == td_half(2)


def test_td_is_square_of_half():
    for n in range(1, 9):
        h = td_half(n)
        assert td(n) == h * h


def test_classical_todd_low_weights():
    t = classical_todd(3)
    assert t.weight_part(1) == c(3, 1) * Fraction(1, 12)
    assert t.weight_part(2) == (c(3, 1) * c(3, 1) * 3 - c(3, 2)) * Fraction(1, 720)
    assert t.constant_term() == 1


def test_classical_todd_matches():
    for n in range(1, 9):
        assert td(n) == classical_todd(n)


def test_truncation():
    x = c(2, 1) * c(2, 2)
    assert not x.terms


def test_exp_needs_zero_constant():
    with pytest.raises(ValueError):
        GradedPolynomial.constant(2, 1).exp()


def test_rw_generators():
    n = 3
    strut = rw_symbol_map(GraphVector.from_diagram(dg.strut()), n)
    assert strut.parts == {(1, 0, 0): GradedPolynomial.constant(n, 2)}
    theta = rw_symbol_map(GraphVector.from_diagram(dg.theta()), n)
    assert theta.parts == {(0, 1, -1): GradedPolynomial.constant(n, 48)}
    w2 = rw_symbol_map(GraphVector.from_diagram(dg.wheel(1)), n)
    assert w2.part() == c(n, 1) * 2
    assert rw_symbol_map(GraphVector.from_diagram(dg.wheel(1), Fraction(1, 48)), n).part() == td_half(n).weight_part(1)


def test_rw_of_omega():
    for n in range(1, 9):
        img = rw_symbol_map(wheeling_element(4 * n), n)
        assert set(img.parts) <= {(0, 0, 0)}
        assert img.part() == td_half(n)


def test_rw_multiplicative():
    n = 4
    gens = [GraphVector.from_diagram(d) for d in (dg.strut(), dg.theta(), dg.wheel(1), dg.wheel(2))]
    for g1 in gens:
        for g2 in gens:
            assert rw_symbol_map(product(g1, g2), n) == rw_symbol_map(g1, n) * rw_symbol_map(g2, n)


def test_rw_unsupported():
    with pytest.raises(UnsupportedDiagram):
        rw_symbol_map(GraphVector.from_diagram(dg.wheel(1)) + GraphVector(
            {dg.canonicalize(dg.glue_legs(dg.wheel(2), 2, 4))[0]: 1}), 3)
