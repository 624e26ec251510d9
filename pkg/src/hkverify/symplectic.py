"""Local model: a symplectic vector space, its exterior algebra and the
diagram evaluation map.

Elements of (exterior algebra on V*) tensor A are stored on monomials
theta^I (x) a^J with I, J strictly increasing index tuples. A is the exterior
algebra on g odd generators a_0, ..., a_{g-1}. Dual basis indices run 1..2n
and sigma = sum_i theta^{2i-1} theta^{2i}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Iterable, Mapping, Sequence

from . import diagrams as dg

__all__ = [
    "SymplecticSpace",
    "ExteriorElement",
    "CubicTensor",
    "InvalidLabelling",
    "BidegreeMismatch",
    "contract_delta",
    "contract_delta_decomposable",
    "sl2_check",
    "default_labelling",
    "normalize_labelling",
    "orientation_sign",
    "phi_evaluate",
    "rw_evaluate",
    "random_cubic",
    "prop312_check",
]


class InvalidLabelling(ValueError):
    pass


class BidegreeMismatch(ValueError):
    pass


def _merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of sorting the concatenation a + b (both increasing); 0 on overlap."""
    sb = set(b)
    if any(x in sb for x in a):
        return 0
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return -1 if inv % 2 else 1


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting seq, with the sorted tuple (sign 0 on repeats)."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _perm_sign(source: Sequence, target: Sequence) -> int:
    """Sign of the permutation taking the sequence source to target."""
    pos = {x: i for i, x in enumerate(target)}
    s, _ = _sort_sign([pos[x] for x in source])
    return s


class ExteriorElement:
    """Sparse element of (wedge V*) (x) A with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[tuple[int, ...], tuple[int, ...]], Fraction] | None = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def scalar(cls, c=1) -> "ExteriorElement":
        return cls({((), ()): c})

    @classmethod
    def form(cls, indices: Sequence[int], aux: Sequence[int] = (), coeff=1) -> "ExteriorElement":
        s1, f = _sort_sign(list(indices))
        s2, a = _sort_sign(list(aux))
        return cls({(f, a): s1 * s2 * Fraction(coeff)} if s1 * s2 else {})

    @classmethod
    def covector(cls, coeffs: Sequence) -> "ExteriorElement":
        """sum_m coeffs[m-1] theta^m."""
        return cls({((m,), ()): c for m, c in enumerate(coeffs, start=1)})

    @property
    def terms(self):
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, ExteriorElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return ExteriorElement(out)

    def __neg__(self):
        return ExteriorElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = Fraction(c)
        return ExteriorElement({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExteriorElement):
            return self.__rmul__(other)
        out: dict = {}
        for (f1, a1), v1 in self._terms.items():
            for (f2, a2), v2 in other._terms.items():
                s = _merge_sign(f1, f2)
                if not s:
                    continue
                s *= _merge_sign(a1, a2)
                if not s:
                    continue
                if len(a1) % 2 and len(f2) % 2:
                    s = -s
                k = (tuple(sorted(f1 + f2)), tuple(sorted(a1 + a2)))
                out[k] = out.get(k, 0) + s * v1 * v2
        return ExteriorElement(out)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(f), len(a)) for f, a in self._terms}

    def component(self, form_degree: int | None = None, aux_degree: int | None = None) -> "ExteriorElement":
        return ExteriorElement({
            (f, a): v for (f, a), v in self._terms.items()
            if (form_degree is None or len(f) == form_degree)
            and (aux_degree is None or len(a) == aux_degree)
        })

    def to_dict(self) -> dict[str, str]:
        out = {}
        for (f, a), v in sorted(self._terms.items()):
            name = "^".join(f"t{i}" for i in f) or "1"
            if a:
                name += " (x) " + "".join(f"a{j}" for j in a)
            out[name] = str(v)
        return out

    def __repr__(self):
        body = " + ".join(f"{v}*[{k}]" for k, v in self.to_dict().items())
        return f"ExteriorElement({body or '0'})"


@dataclass(frozen=True)
class SymplecticSpace:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def pairing(self, u: Sequence, v: Sequence):
        """sigma(u, v) for coordinate vectors u, v in the basis e_1..e_2n.

        Integer input gives an int, rational input a Fraction.
        """
        return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(self.n))

    def basis_vector(self, m: int) -> tuple[int, ...]:
        return tuple(1 if j == m else 0 for j in range(1, self.dim + 1))

    def sigma(self) -> ExteriorElement:
        return ExteriorElement({((2 * i - 1, 2 * i), ()): 1 for i in range(1, self.n + 1)})

    def flat_row(self, w: Sequence) -> list:
        """Values sigma(w, e_m) for m = 1..2n."""
        row = []
        for i in range(self.n):
            row += [-w[2 * i + 1], w[2 * i]]
        return row

    def flat(self, w: Sequence) -> ExteriorElement:
        """The covector sigma(w, -) = sum_m sigma(w, e_m) theta^m."""
        return ExteriorElement.covector(self.flat_row(w))

    def Pi(self, x: ExteriorElement) -> ExteriorElement:
        return ExteriorElement({(f, a): (len(f) - self.n) * v for (f, a), v in x.terms.items()})


def _exact(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class CubicTensor:
    """sum_j w_j^3 (x) a_{aux_j}: one trivalent slot of a split-form input."""
    summands: tuple[tuple[tuple[Fraction, ...], int], ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[Sequence, int]], g: int | None = None) -> "CubicTensor":
        out = []
        for w, a in pairs:
            if a < 0 or (g is not None and a >= g):
                raise ValueError(f"auxiliary index {a} out of range")
            out.append((tuple(_exact(x) for x in w), int(a)))
        return cls(tuple(out))


# --- contraction -------------------------------------------------------------

def contract_delta(x: ExteriorElement, sp: SymplecticSpace) -> ExteriorElement:
    """Contraction by sigma, computed on basis monomials.

    In an increasing index set the pair (2r-1, 2r) can only occur adjacently,
    so each such pair is removed with sign +1.
    """
    out: dict = {}
    for (f, a), v in x.terms.items():
        fs = set(f)
        for r in range(1, sp.n + 1):
            if 2 * r - 1 in fs and 2 * r in fs:
                k = (tuple(i for i in f if i not in (2 * r - 1, 2 * r)), a)
                out[k] = out.get(k, 0) + v
    return ExteriorElement(out)


def contract_delta_decomposable(covectors: Sequence[Sequence], aux: ExteriorElement, sp: SymplecticSpace) -> ExteriorElement:
    """Contraction of (alpha_1 ^ ... ^ alpha_l) (x) aux by the literal double sum.

    covectors[s] lists the values alpha_s(e_1), ..., alpha_s(e_2n).
    """
    l = len(covectors)
    out = ExteriorElement()
    for s, t in combinations(range(l), 2):
        c = Fraction(0)
        for r in range(sp.n):
            c += covectors[s][2 * r] * Fraction(covectors[t][2 * r + 1])
            c -= covectors[s][2 * r + 1] * Fraction(covectors[t][2 * r])
        if not c:
            continue
        # (-1)^{s+t-1} with 1-based s, t
        sign = 1 if (s + t) % 2 else -1
        rest = ExteriorElement.scalar(sign * c)
        for i in range(l):
            if i not in (s, t):
                rest = rest * ExteriorElement.covector(covectors[i])
        out = out + rest * aux
    return out


def _random_element(rng: random.Random, sp: SymplecticSpace, g: int) -> ExteriorElement:
    p = rng.randint(0, sp.dim)
    q = rng.randint(0, g)
    terms = {}
    for _ in range(rng.randint(1, 4)):
        f = tuple(sorted(rng.sample(range(1, sp.dim + 1), p)))
        a = tuple(sorted(rng.sample(range(g), q)))
        terms[(f, a)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return ExteriorElement(terms)


def _trial_rng(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


def sl2_check(sp: SymplecticSpace, g: int, trials: int, seed: int = 0) -> dict:
    """[sigma, delta] = Pi, [Pi, sigma] = 2 sigma, [Pi, delta] = -2 delta on random elements."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    s = sp.sigma()

    def L(x):
        return s * x

    def D(x):
        return contract_delta(x, sp)

    failures = []
    for i in range(trials):
        x = _random_element(_trial_rng(seed, i), sp, g)
        checks = {
            "[sigma,delta]=Pi": L(D(x)) - D(L(x)) == sp.Pi(x),
            "[Pi,sigma]=2sigma": sp.Pi(L(x)) - L(sp.Pi(x)) == 2 * L(x),
            "[Pi,delta]=-2delta": sp.Pi(D(x)) - D(sp.Pi(x)) == -2 * D(x),
        }
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failures.append({"trial": i, "failed": bad, "element": x.to_dict()})
    return {"n": sp.n, "gens": g, "trials": trials, "seed": seed,
            "failures": failures, "passed": not failures}


# --- labellings and the evaluation map --------------------------------------

Labelling = tuple[tuple[int, int], ...]


def default_labelling(d: dg.JacobiDiagram) -> Labelling:
    """Edges in listed order, univalent flags in the second slot, struts last."""
    uni = set(d.univalent)
    main, struts = [], []
    for a, b in d.edges:
        if a in uni and b in uni:
            struts.append((a, b))
        elif a in uni:
            main.append((b, a))
        else:
            main.append((a, b))
    return tuple(main + struts)


def normalize_labelling(d: dg.JacobiDiagram, labelling: Iterable[Sequence[int]]) -> tuple[Labelling, int]:
    """Validate a labelling and move univalent flags to the second slot.

    Returns the fixed labelling and the factor (-1 per swap) relating the
    evaluation of the given labelling to that of the fixed one.
    """
    lab = [tuple(e) for e in labelling]
    if any(len(e) != 2 for e in lab):
        raise InvalidLabelling("edges must be flag pairs")
    if sorted(tuple(sorted(e)) for e in lab) != sorted(tuple(sorted(e)) for e in d.edges):
        raise InvalidLabelling("labelled edges do not match the diagram's edges")
    uni = set(d.univalent)
    factor = 1
    main, struts = [], []
    for a, b in lab:
        if a in uni and b in uni:
            struts.append((a, b))
        elif a in uni:
            main.append((b, a))
            factor = -factor
        else:
            main.append((a, b))
    return tuple(main + struts), factor


def orientation_sign(d: dg.JacobiDiagram, labelling: Iterable[Sequence[int]] | None = None) -> int:
    """Sign comparing the edge-ordered flags (univalent ones dropped) with the vertex triples."""
    if labelling is None:
        lab = default_labelling(d)
    else:
        lab, _ = normalize_labelling(d, labelling)
    uni = set(d.univalent)
    seq = [f for e in lab for f in e if f not in uni]
    target = [f for t in d.trivalent for f in t]
    return _perm_sign(seq, target)


def _aux_product(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return _sort_sign(list(indices))


def _wedge_rows(rows: Sequence[Sequence]) -> dict[tuple[int, ...], object]:
    """Coefficients of the wedge of covectors given by their value rows."""
    cur: dict[tuple[int, ...], object] = {(): 1}
    for row in rows:
        nxt: dict[tuple[int, ...], object] = {}
        for idx, c in cur.items():
            for m, v in enumerate(row, start=1):
                if not v or m in idx:
                    continue
                above = sum(1 for x in idx if x > m)
                key = tuple(sorted(idx + (m,)))
                nxt[key] = nxt.get(key, 0) + (-c * v if above % 2 else c * v)
        cur = {k: v for k, v in nxt.items() if v}
        if not cur:
            break
    return cur


def phi_evaluate(
    d: dg.JacobiDiagram,
    cubic: Sequence[CubicTensor],
    sp: SymplecticSpace,
    labelling: Iterable[Sequence[int]] | None = None,
    endo_slots="identity",
) -> ExteriorElement:
    """Evaluate the diagram on one cubic tensor per trivalent vertex (listed order).

    endo_slots is "identity" or, per univalent flag in labelling order, a pair
    (w', alpha) with alpha given by its values on e_1..e_2n.
    """
    k, l = d.bidegree
    if len(cubic) != k:
        raise BidegreeMismatch(f"{len(cubic)} cubic slots for {k} trivalent vertices")
    lab, factor = (default_labelling(d), 1) if labelling is None else normalize_labelling(d, labelling)
    sign = factor * orientation_sign(d, lab)
    uni = set(d.univalent)
    vof = d.vertex_of()
    uni_order = [f for e in lab for f in e if f in uni]
    if endo_slots == "identity":
        endo = None
    else:
        endo = [(tuple(_exact(x) for x in w), [_exact(x) for x in a]) for w, a in endo_slots]
        if len(endo) != l:
            raise BidegreeMismatch(f"{len(endo)} endomorphism slots for {l} univalent vertices")
    slot_of = {u: j for j, u in enumerate(uni_order)}
    inner = [(vof[a], vof[b]) for a, b in lab if a not in uni and b not in uni]
    legs = [(vof[a], b) for a, b in lab if a not in uni and b in uni]
    struts = [(a, b) for a, b in lab if a in uni and b in uni]

    total: dict = {}
    for choice in cartesian(*(c.summands for c in cubic)):
        s_aux, aux = _aux_product([a for _, a in choice])
        if not s_aux:
            continue
        scalar = sign * s_aux
        for va, vb in inner:
            scalar *= sp.pairing(choice[va][0], choice[vb][0])
            if not scalar:
                break
        if not scalar:
            continue
        # rows in labelling order: legs first, explicit struts after
        rows = []
        for v, u in legs:
            w = choice[v][0]
            if endo is None:
                rows.append(sp.flat_row(w))
            else:
                wu, alpha = endo[slot_of[u]]
                scalar *= sp.pairing(w, wu)
                rows.append(alpha)
        if endo is not None:
            for a, b in struts:
                (wa, aa), (wb, ab) = endo[slot_of[a]], endo[slot_of[b]]
                scalar *= sp.pairing(wa, wb)
                rows += [aa, ab]
        if not scalar:
            continue
        for idx, c in _wedge_rows(rows).items():
            key = (idx, aux)
            total[key] = total.get(key, 0) + scalar * c
    out = ExteriorElement(total)
    if endo is None:
        for _ in struts:
            out = out * (2 * sp.sigma())
    return out


def rw_evaluate(vector, alpha: CubicTensor, sp: SymplecticSpace) -> ExteriorElement:
    """Evaluate a combination of canonical diagrams on alpha at every trivalent slot."""
    total = ExteriorElement()
    for key, coeff in vector.items():
        d = dg.diagram_from_key(key)
        total = total + coeff * phi_evaluate(d, [alpha] * d.bidegree[0], sp)
    return total


def random_cubic(rng: random.Random, sp: SymplecticSpace, g: int, vertex: int, summands: int = 2) -> CubicTensor:
    """Random split cubic with entries in -3..3; the first summand uses generator vertex mod g."""
    pairs = []
    for j in range(summands):
        w = [rng.randint(-3, 3) for _ in range(sp.dim)]
        a = vertex % g if j == 0 else rng.randrange(g)
        pairs.append((w, a))
    return CubicTensor.of(pairs, g)


def prop312_check(d: dg.JacobiDiagram, sp: SymplecticSpace, g: int, trials: int, seed: int = 0) -> dict:
    """Compare the evaluation of the differential with the contraction of the evaluation.

    Each trial draws a fresh split input per trivalent vertex; the glued
    diagrams keep the vertex order, so the same input applies to every term.
    A second route evaluates the canonical differential on a shared alpha.
    """
    from .graph_homology import GraphVector, StrutPresent, differential

    if not dg.is_in_B_prime(d):
        raise StrutPresent(dg.format_diagram(d))
    k, l = d.bidegree
    if l < 2:
        raise ValueError("need at least two univalent vertices")
    legs = sorted(d.univalent)
    glued = [dg.glue_legs(d, u, v) for u, v in combinations(legs, 2)]
    dvec = differential(GraphVector.from_diagram(d))
    results = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        beta = [random_cubic(rng, sp, g, v) for v in range(k)]
        rhs = contract_delta(phi_evaluate(d, beta, sp), sp)
        lhs = ExteriorElement()
        for gd in glued:
            lhs = lhs + phi_evaluate(gd, beta, sp)
        alpha = CubicTensor(tuple(s for c in beta for s in c.summands))
        rw_lhs = rw_evaluate(dvec, alpha, sp)
        rw_rhs = contract_delta(phi_evaluate(d, [alpha] * k, sp), sp)
        ok = lhs == rhs and rw_lhs == rw_rhs
        results.append({"trial": i, "equal": ok, "nonzero": bool(rhs)})
        if not ok:
            return {"diagram": dg.format_diagram(d), "n": sp.n, "gens": g, "trials": trials,
                    "seed": seed, "results": results, "passed": False,
                    "witness": {"lhs": lhs.to_dict(), "rhs": rhs.to_dict(),
                                "rw_lhs": rw_lhs.to_dict(), "rw_rhs": rw_rhs.to_dict()}}
    return {"diagram": dg.format_diagram(d), "n": sp.n, "gens": g, "trials": trials,
            "seed": seed, "results": results, "passed": True}
