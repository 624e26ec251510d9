"""Rational combinations of Jacobi diagrams modulo AS and IHX.

AS is internal: vectors are stored on canonical keys with signed
coefficients. IHX is imposed per bidegree by row-reducing the relations
generated from a set of seed diagrams until closure.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from . import diagrams as dg
from .linalg import RowEchelon

__all__ = [
    "StrutPresent",
    "ContextIncomplete",
    "GraphVector",
    "QuotientContext",
    "product",
    "differential",
    "wheeling_element",
    "ihx_relation",
    "build_quotient",
    "is_zero_mod_relations",
    "wheeling_check",
]


class StrutPresent(ValueError):
    pass


class ContextIncomplete(KeyError):
    pass


class GraphVector:
    """Finite rational combination of canonical diagrams."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[bytes, Fraction] | None = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_diagram(cls, d: dg.JacobiDiagram, coeff=1) -> "GraphVector":
        key, sign = dg.canonicalize(d)
        return cls({key: sign * Fraction(coeff)} if sign else {})

    @classmethod
    def one(cls) -> "GraphVector":
        return cls.from_diagram(dg.empty())

    @property
    def terms(self) -> dict[bytes, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self) -> list[bytes]:
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, GraphVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GraphVector") -> "GraphVector":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return GraphVector(out)

    def __neg__(self):
        return GraphVector({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c) -> "GraphVector":
        c = Fraction(c)
        return GraphVector({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GraphVector):
            return product(self, other)
        return self.__rmul__(other)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(k[0], k[1]) for k in self._terms}

    def homogeneous(self, degree: int) -> "GraphVector":
        return GraphVector({k: v for k, v in self._terms.items() if k[0] + k[1] == degree})

    def coefficient(self, d: dg.JacobiDiagram) -> Fraction:
        """Coefficient of the oriented diagram d (0 for AS-degenerate d)."""
        key, sign = dg.canonicalize(d)
        return sign * self._terms.get(key, Fraction(0))

    def __repr__(self):
        body = " + ".join(f"{v}*[{dg.format_diagram(dg.diagram_from_key(k))}]" for k, v in self.items())
        return f"GraphVector({body or '0'})"


def product(g1: GraphVector, g2: GraphVector) -> GraphVector:
    out: dict[bytes, Fraction] = {}
    for k1, v1 in g1.items():
        d1 = dg.diagram_from_key(k1)
        for k2, v2 in g2.items():
            key, sign = dg.canonicalize(dg.disjoint_union(d1, dg.diagram_from_key(k2)))
            if sign:
                out[key] = out.get(key, 0) + sign * v1 * v2
    return GraphVector(out)


def _differential_diagram(d: dg.JacobiDiagram) -> dict[bytes, Fraction]:
    if not dg.is_in_B_prime(d):
        raise StrutPresent(dg.format_diagram(d))
    out: dict[bytes, Fraction] = {}
    for u, v in combinations(sorted(d.univalent), 2):
        key, sign = dg.canonicalize(dg.glue_legs(d, u, v))
        if sign:
            out[key] = out.get(key, 0) + sign
    return out


def differential(g: GraphVector) -> GraphVector:
    """Sum over all ways of gluing two univalent vertices."""
    out: dict[bytes, Fraction] = {}
    for k, v in g.items():
        for kk, s in _differential_diagram(dg.diagram_from_key(k)).items():
            out[kk] = out.get(kk, 0) + v * s
    return GraphVector(out)


def wheel_vector(k: int) -> GraphVector:
    return GraphVector.from_diagram(dg.wheel(k))


def wheeling_element(max_degree: int) -> GraphVector:
    """exp(sum_k b_2k w_2k) truncated to diagrams with at most max_degree vertices."""
    from .char_classes import modified_bernoulli

    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    kmax = max_degree // 4
    b = modified_bernoulli(max(kmax, 1))
    x = GraphVector()
    for k in range(1, kmax + 1):
        x = x + b[k] * wheel_vector(k)

    def trunc(g):
        return GraphVector({kk: v for kk, v in g.items() if kk[0] + kk[1] <= max_degree})

    total = GraphVector.one()
    power = GraphVector.one()
    j = 1
    while True:
        power = trunc(Fraction(1, j) * product(power, x))
        if not power:
            break
        total = total + power
        j += 1
    return total


# --- IHX quotient ------------------------------------------------------------

def ihx_relation(d: dg.JacobiDiagram, edge_index: int) -> dict[bytes, Fraction]:
    """I + H + X = 0 at an edge joining two distinct trivalent vertices.

    With the edge flags e_u, e_v and cyclic orders (e_u, a, b) and (e_v, c, d),
    the other two terms are (e_u, b, c), (e_v, a, d) and (e_u, c, a), (e_v, b, d):
    the Jacobi identity for a totally antisymmetric structure tensor.
    Returns an empty dict for edges where IHX does not apply.
    """
    fu, fv = d.edges[edge_index]
    where = {}
    for i, t in enumerate(d.trivalent):
        for j, f in enumerate(t):
            where[f] = (i, j)
    if fu not in where or fv not in where:
        return {}
    (iu, ju), (iv, jv) = where[fu], where[fv]
    if iu == iv:
        return {}
    tu = d.trivalent[iu]
    tv = d.trivalent[iv]
    a, b = tu[(ju + 1) % 3], tu[(ju + 2) % 3]
    c, e = tv[(jv + 1) % 3], tv[(jv + 2) % 3]
    out: dict[bytes, Fraction] = {}
    for new_u, new_v in (((fu, a, b), (fv, c, e)), ((fu, b, c), (fv, a, e)), ((fu, c, a), (fv, b, e))):
        tri = list(d.trivalent)
        tri[iu], tri[iv] = new_u, new_v
        key, sign = dg.canonicalize(dg.JacobiDiagram(d.num_flags, d.edges, tuple(tri), d.univalent))
        if sign:
            out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


@dataclass
class QuotientContext:
    bidegree: tuple[int, int]
    basis: list[bytes]
    echelon: RowEchelon = field(repr=False)
    n_relations: int = 0

    @property
    def relation_rank(self) -> int:
        return self.echelon.rank

    @property
    def basis_size(self) -> int:
        return len(self.basis)

    def rows(self) -> list[dict[bytes, Fraction]]:
        return self.echelon.rows()


def build_quotient(bidegree: tuple[int, int], seeds: Iterable) -> QuotientContext:
    """Close the seed set under IHX and row-reduce every generated relation.

    Seeds may be diagrams or canonical keys. Only non-degenerate diagrams are
    kept as basis elements; AS-degenerate ones vanish from the relations.
    """
    todo = []
    for s in seeds:
        if isinstance(s, dg.JacobiDiagram):
            key, sign = dg.canonicalize(s)
            if not sign:
                continue
            s = key
        if (s[0], s[1]) != tuple(bidegree):
            raise ValueError(f"seed of bidegree {(s[0], s[1])} in context {bidegree}")
        todo.append(s)
    seen = set(todo)
    basis = sorted(seen)
    relations = []
    while todo:
        key = todo.pop()
        d = dg.diagram_from_key(key)
        for i in range(len(d.edges)):
            rel = ihx_relation(d, i)
            if not rel:
                continue
            relations.append(rel)
            for k in rel:
                if k not in seen:
                    seen.add(k)
                    basis.append(k)
                    todo.append(k)
    basis = sorted(seen)
    ech = RowEchelon(basis)
    for rel in relations:
        ech.add(rel)
    return QuotientContext(tuple(bidegree), basis, ech, len(relations))


def is_zero_mod_relations(g: GraphVector, ctx: QuotientContext) -> bool:
    basis = set(ctx.basis)
    for k in g.support():
        if k not in basis:
            raise ContextIncomplete(k)
    return not ctx.echelon.reduce(g.terms)


def wheeling_check(max_degree: int = 8) -> list[dict]:
    """Check dOmega_2k - (Theta/48) Omega_{2k-2} = 0 for each piece with 4k <= max_degree.

    max_degree bounds the vertex count of Omega_2k (2k trivalent plus 2k
    univalent vertices); degree 0 is listed as a vacuous pass.
    """
    if max_degree < 2 or max_degree % 2:
        raise ValueError("max_degree must be even and >= 2")
    omega = wheeling_element(max_degree)
    theta = GraphVector.from_diagram(dg.theta())
    report = [
        {"degree": 0, "bidegree": [0, 0], "basis_size": 0, "relation_rank": 0,
         "reduced_norm_zero": True, "elapsed_ms": 0.0}
    ]
    for k in range(1, max_degree // 4 + 1):
        t0 = time.perf_counter()
        lhs = differential(omega.homogeneous(4 * k))
        rhs = Fraction(1, 48) * product(theta, omega.homogeneous(4 * k - 4))
        diff = lhs - rhs
        bideg = (2 * k, 2 * k - 2)
        ctx = build_quotient(bideg, diff.support())
        ok = is_zero_mod_relations(diff, ctx)
        report.append({
            "degree": 2 * k,
            "bidegree": list(bideg),
            "basis_size": ctx.basis_size,
            "relation_rank": ctx.relation_rank,
            "reduced_norm_zero": ok,
            "elapsed_ms": round(1000 * (time.perf_counter() - t0), 3),
        })
    return report
