"""Randomized invariants, driven by hypothesis."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from hkverify import diagrams as dg
from hkverify import lefschetz as lf
from hkverify.char_classes import GradedPolynomial, c_from_ch, ch_from_c
from hkverify.graph_homology import GraphVector, differential, product
from hkverify.laurent import Laurent
from hkverify.symplectic import (
    CubicTensor,
    ExteriorElement,
    SymplecticSpace,
    contract_delta,
    phi_evaluate,
)

small = st.integers(-3, 3)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)

DIAGRAMS = [dg.wheel(1), dg.wheel(2), dg.theta(), dg.strut(),
            dg.disjoint_union(dg.wheel(1), dg.theta())]


@st.composite
def relabelled(draw):
    d = draw(st.sampled_from(DIAGRAMS))
    perm = draw(st.permutations(range(1, d.num_flags + 1)))
    return d, dg.relabel(d, dict(zip(range(1, d.num_flags + 1), perm)))


@settings(max_examples=40, deadline=None)
@given(relabelled())
def test_key_invariant_under_relabelling(pair):
    d, e = pair
    assert dg.canonicalize(d) == dg.canonicalize(e)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(DIAGRAMS[:3]), st.data())
def test_as_flip(d, data):
    i = data.draw(st.integers(0, len(d.trivalent) - 1))
    key, sign = dg.canonicalize(d)
    key2, sign2 = dg.canonicalize(dg.reverse_vertex(d, i))
    assert key == key2 and sign2 == -sign


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(DIAGRAMS), st.sampled_from(DIAGRAMS))
def test_union_bidegree_adds(d1, d2):
    u = dg.disjoint_union(d1, d2)
    assert u.bidegree == (d1.bidegree[0] + d2.bidegree[0], d1.bidegree[1] + d2.bidegree[1])


GENS = [GraphVector.from_diagram(d) for d in (dg.wheel(1), dg.wheel(2), dg.theta())]


@st.composite
def graph_vectors(draw):
    out = GraphVector()
    for g in GENS:
        out = out + draw(fractions) * g
    return out


@settings(max_examples=25, deadline=None)
@given(graph_vectors(), graph_vectors())
def test_product_commutative(g1, g2):
    assert product(g1, g2) == product(g2, g1)


@settings(max_examples=25, deadline=None)
@given(graph_vectors(), graph_vectors(), fractions)
def test_differential_linear(g1, g2, c):
    assert differential(g1 + c * g2) == differential(g1) + c * differential(g2)


@settings(max_examples=15, deadline=None)
@given(graph_vectors())
def test_differential_theta_linear(g):
    th = GraphVector.from_diagram(dg.theta())
    assert differential(product(th, g)) == product(th, differential(g))


@st.composite
def exterior(draw, n, g=2):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        f = tuple(sorted(draw(st.sets(st.integers(1, 2 * n), max_size=2 * n))))
        a = tuple(sorted(draw(st.sets(st.integers(0, g - 1), max_size=g))))
        terms[(f, a)] = draw(fractions)
    return ExteriorElement(terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), exterior(n))))
def test_local_sl2(pair):
    n, x = pair
    sp = SymplecticSpace(n)
    s = sp.sigma()
    D = lambda y: contract_delta(y, sp)  # noqa: E731
    assert s * D(x) - D(s * x) == sp.Pi(x)
    assert sp.Pi(s * x) - s * sp.Pi(x) == 2 * (s * x)
    assert sp.Pi(D(x)) - D(sp.Pi(x)) == -2 * D(x)


@settings(max_examples=30, deadline=None)
@given(exterior(2), exterior(2), exterior(2))
def test_exterior_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
def test_pairing_antisymmetric(u, v):
    sp = SymplecticSpace(2)
    assert sp.pairing(u, v) == -sp.pairing(v, u)


vec4 = st.lists(small, min_size=4, max_size=4)


@settings(max_examples=20, deadline=None)
@given(vec4, vec4, vec4, vec4, vec4, vec4)
def test_w2_labelling_invariance(w1, w2, u1, u2, x1, x2):
    sp = SymplecticSpace(2)
    d = dg.wheel(1)
    beta = [CubicTensor.of([(w1, 0), (u1, 1)]), CubicTensor.of([(w2, 1), (u2, 0)])]
    base = phi_evaluate(d, beta, sp)
    for lab in ([(1, 2), (3, 4), (6, 5), (7, 8)], [(7, 8), (3, 4), (5, 6), (1, 2)]):
        assert phi_evaluate(d, beta, sp, labelling=lab) == base


@settings(max_examples=15, deadline=None)
@given(vec4, vec4, vec4, vec4)
def test_boundary_compatibility_w2(w1, w2, u1, u2):
    sp = SymplecticSpace(2)
    d = dg.wheel(1)
    beta = [CubicTensor.of([(w1, 0), (u1, 1)]), CubicTensor.of([(w2, 1), (u2, 0)])]
    lhs = phi_evaluate(dg.glue_legs(d, *d.univalent), beta, sp)
    assert lhs == contract_delta(phi_evaluate(d, beta, sp), sp)


@st.composite
def formal_classes(draw, n):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        key = (draw(st.integers(0, n)), draw(st.integers(0, 4)), draw(st.integers(0, 4)))
        terms[key] = Laurent({draw(st.integers(-2, 2)): draw(fractions)})
    return lf.FormalClass(n, terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: formal_classes(n)))
def test_formal_sl2(x):
    L, La, Pi = lf.L_sigma, lf.Lambda, lf.Pi
    assert L(La(x)) - La(L(x)) == Pi(x)
    assert Pi(L(x)) - L(Pi(x)) == 2 * L(x)
    assert Pi(La(x)) - La(Pi(x)) == -2 * La(x)
    assert La(lf.L_sigmabar(x)) == lf.L_sigmabar(La(x))


@st.composite
def pbasis(draw, n):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        i = draw(st.integers(0, n // 2))
        a, b = draw(st.integers(0, n)), draw(st.integers(0, n))
        terms[(i, a, b)] = Laurent({draw(st.integers(-2, 2)): draw(fractions)})
    return lf.PBasisClass(n, terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(pbasis(n), pbasis(n), st.integers(0, n))))
def test_pairing_symmetric(triple):
    x, y, extra = triple
    assert lf.pairing(x, y, extra) == lf.pairing(y, x, extra)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.data())
def test_c_ch_round_trip(n, data):
    coeffs = [data.draw(fractions) for _ in range(n)]
    p = GradedPolynomial(n)
    for k, v in enumerate(coeffs, start=1):
        p = p + GradedPolynomial.variable(n, k) * v
    there = GradedPolynomial(n, prefix="ch")
    back = c_from_ch(n)
    for k, v in enumerate(coeffs, start=1):
        there = there + back[k] * v
    assert there.substitute(ch_from_c(n)) == p


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(-3, 3), fractions, max_size=3),
       st.dictionaries(st.integers(-3, 3), fractions, max_size=3),
       st.dictionaries(st.integers(-3, 3), fractions, max_size=3))
def test_laurent_ring(a, b, c):
    x, y, z = Laurent(a), Laurent(b), Laurent(c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == Laurent()
    assert x * Fraction(0) == Laurent()
