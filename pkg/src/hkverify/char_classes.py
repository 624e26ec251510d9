"""Characteristic classes with vanishing odd Chern classes.

Polynomials live in Q[c_2, c_4, ..., c_2n] (or the same ring in Chern
characters ch_2k) with c_2k of weight k, truncated above weight n. The square
root of the Todd genus is built from modified Bernoulli numbers; the classical
Todd class is rebuilt independently from x/(1 - e^-x) with sympy as an oracle.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping

__all__ = [
    "GradedPolynomial",
    "modified_bernoulli",
    "ch_from_c",
    "c_from_ch",
    "td_half",
    "td",
    "td_half_via_ch",
    "classical_todd",
    "RWImage",
    "UnsupportedDiagram",
    "rw_symbol_map",
    "SeriesMismatch",
]


class SeriesMismatch(ArithmeticError):
    pass


class GradedPolynomial:
    """Polynomial in weighted variables <prefix>_2, <prefix>_4, ... truncated at weight n.

    Monomials are exponent tuples (e_1, ..., e_n) where e_k is the power of the
    weight-k variable.
    """

    __slots__ = ("n", "prefix", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple, Fraction] | None = None, prefix: str = "c"):
        self.n = n
        self.prefix = prefix
        self._terms = {
            m: Fraction(v) for m, v in (terms or {}).items() if v and _weight(m) <= n
        }

    @classmethod
    def constant(cls, n, value, prefix="c"):
        return cls(n, {(0,) * n: Fraction(value)}, prefix)

    @classmethod
    def variable(cls, n, k, prefix="c"):
        """The weight-k generator (c_2k or ch_2k)."""
        m = [0] * n
        if 1 <= k <= n:
            m[k - 1] = 1
        return cls(n, {tuple(m): 1} if 1 <= k <= n else {}, prefix)

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return dict(self._terms)

    def _check(self, other):
        if self.n != other.n or self.prefix != other.prefix:
            raise ValueError("incompatible graded polynomials")

    def __add__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(self.n, other, self.prefix)
        self._check(other)
        out = dict(self._terms)
        for m, v in other._terms.items():
            out[m] = out.get(m, 0) + v
        return GradedPolynomial(self.n, out, self.prefix)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.n, {m: -v for m, v in self._terms.items()}, self.prefix)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            c = Fraction(other)
            return GradedPolynomial(self.n, {m: c * v for m, v in self._terms.items()}, self.prefix)
        self._check(other)
        out: dict[tuple, Fraction] = {}
        for m1, v1 in self._terms.items():
            w1 = _weight(m1)
            for m2, v2 in other._terms.items():
                if w1 + _weight(m2) > self.n:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + v1 * v2
        return GradedPolynomial(self.n, out, self.prefix)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = GradedPolynomial.constant(self.n, 1, self.prefix)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return (self.n, self.prefix, self._terms) == (other.n, other.prefix, other._terms)

    def __hash__(self):
        return hash((self.n, self.prefix, frozenset(self._terms.items())))

    def weight_part(self, w: int) -> "GradedPolynomial":
        return GradedPolynomial(
            self.n, {m: v for m, v in self._terms.items() if _weight(m) == w}, self.prefix
        )

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.n, Fraction(0))

    def exp(self) -> "GradedPolynomial":
        """exp of a polynomial with zero constant term (finite by truncation)."""
        if self.constant_term():
            raise ValueError("exp needs a zero constant term")
        out = GradedPolynomial.constant(self.n, 1, self.prefix)
        power = out
        for j in range(1, self.n + 1):
            power = power * self * Fraction(1, j)
            out = out + power
        return out

    def substitute(self, images: Mapping[int, "GradedPolynomial"]) -> "GradedPolynomial":
        """Replace the weight-k variable by images[k] (a polynomial of weight >= k)."""
        sample = next(iter(images.values()))
        out = GradedPolynomial(self.n, {}, sample.prefix)
        for m, v in self._terms.items():
            term = GradedPolynomial.constant(self.n, v, sample.prefix)
            for k, e in enumerate(m, start=1):
                if e:
                    term = term * images[k] ** e
            out = out + term
        return out

    def monomials(self) -> Iterator[tuple[tuple, Fraction]]:
        """Terms in canonical order: by weight, then exponent tuple descending."""
        for m in sorted(self._terms, key=lambda m: (_weight(m), tuple(-e for e in m))):
            yield m, self._terms[m]

    def to_dict(self) -> dict[str, str]:
        return {_monomial_name(m, self.prefix): str(v) for m, v in self.monomials()}

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, v in self.monomials():
            name = _monomial_name(m, self.prefix)
            parts.append(str(v) if name == "1" else f"{v}*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GradedPolynomial(n={self.n}, {self})"


def _weight(m) -> int:
    return sum(k * e for k, e in enumerate(m, start=1))


def _monomial_name(m, prefix) -> str:
    parts = []
    for k, e in enumerate(m, start=1):
        if e:
            parts.append(f"{prefix}{2 * k}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


# --- univariate series -------------------------------------------------------

def _series_log(f: list[Fraction]) -> list[Fraction]:
    if f[0] != 1:
        raise ValueError("log needs constant term 1")
    g = [Fraction(0)] * len(f)
    for k in range(1, len(f)):
        g[k] = f[k] - Fraction(sum(j * g[j] * f[k - j] for j in range(1, k)), k)
    return g


def modified_bernoulli(k_max: int) -> dict[int, Fraction]:
    """b_2k for 1 <= k <= k_max from (1/2) log(sinh(x/2) / (x/2))."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    order = 2 * k_max + 1
    f = [Fraction(0)] * order
    for j in range(k_max + 1):
        f[2 * j] = Fraction(1, factorial(2 * j + 1) * 4 ** j)
    g = _series_log(f)
    return {k: g[2 * k] / 2 for k in range(1, k_max + 1)}


# --- Newton identities -------------------------------------------------------

def ch_from_c(n: int) -> dict[int, GradedPolynomial]:
    """ch_2k as polynomials in c_2, ..., c_2n (odd Chern classes zero)."""
    def e(i):
        if i % 2:
            return GradedPolynomial(n)
        return GradedPolynomial.variable(n, i // 2)

    p: dict[int, GradedPolynomial] = {}
    for m in range(1, 2 * n + 1):
        acc = e(m) * ((-1) ** (m - 1) * m)
        for i in range(1, m):
            acc = acc + e(i) * p[m - i] * (-1) ** (i - 1)
        p[m] = acc
    return {k: p[2 * k] * Fraction(1, factorial(2 * k)) for k in range(1, n + 1)}


def c_from_ch(n: int) -> dict[int, GradedPolynomial]:
    """c_2k as polynomials in ch_2, ..., ch_2n."""
    def p(i):
        if i % 2:
            return GradedPolynomial(n, prefix="ch")
        return GradedPolynomial.variable(n, i // 2, "ch") * factorial(i)

    e: dict[int, GradedPolynomial] = {0: GradedPolynomial.constant(n, 1, "ch")}
    for m in range(1, 2 * n + 1):
        acc = GradedPolynomial(n, prefix="ch")
        for i in range(1, m + 1):
            acc = acc + e[m - i] * p(i) * (-1) ** (i - 1)
        e[m] = acc * Fraction(1, m)
    return {k: e[2 * k] for k in range(1, n + 1)}


# --- Todd classes --------------------------------------------------------------

def _log_td_half_ch(n: int) -> GradedPolynomial:
    b = modified_bernoulli(n)
    acc = GradedPolynomial(n, prefix="ch")
    for k in range(1, n + 1):
        acc = acc + GradedPolynomial.variable(n, k, "ch") * (-b[k] * factorial(2 * k))
    return acc


def td_half_via_ch(n: int) -> GradedPolynomial:
    """td^(1/2) = exp(-sum b_2k (2k)! ch_2k), in ch variables."""
    return _log_td_half_ch(n).exp()


def td_half(n: int) -> GradedPolynomial:
    """Square root of the Todd genus through weight n, in c variables."""
    return td_half_via_ch(n).substitute(ch_from_c(n))


def td(n: int) -> GradedPolynomial:
    """Todd genus through weight n, as exp(-2 sum ...) cross-checked against td_half squared."""
    direct = (_log_td_half_ch(n) * 2).exp().substitute(ch_from_c(n))
    half = td_half(n)
    if half * half != direct:
        raise SeriesMismatch("exp(-2 sum b ch) differs from the square of td^(1/2)")
    return direct


def classical_todd(n: int) -> GradedPolynomial:
    """Todd class from x/(1 - e^-x) on Chern roots, then c_odd = 0 (sympy pipeline).

    Odd classes are dropped in the elementary symmetric functions before the
    Newton identities; substitution is a ring map so the result is the same.
    """
    import sympy as sp
    from sympy.polys.rings import ring

    x = sp.Symbol("x")
    top = 2 * n
    logq = sp.series(sp.log(x / (1 - sp.exp(-x))), x, 0, top + 1).removeO()
    t = [sp.Rational(logq.coeff(x, j)) for j in range(top + 1)]
    names = [f"c{2 * k}" for k in range(1, n + 1)] + ["s"]
    R, *gens = ring(",".join(names), sp.QQ)
    cs, s = gens[:-1], gens[-1]
    e = {0: R.one}
    for i in range(1, top + 1):
        e[i] = cs[i // 2 - 1] * s ** i if i % 2 == 0 else R.zero
    p: dict = {}
    for m in range(1, top + 1):
        acc = (-1) ** (m - 1) * m * e[m]
        for i in range(1, m):
            acc += (-1) ** (i - 1) * e[i] * p[m - i]
        p[m] = acc
    log_td = sum((p[j] * t[j] for j in range(1, top + 1)), R.zero)

    def trunc(f):
        return R({mon: coef for mon, coef in f.items() if mon[-1] <= top})

    total = R.one
    power = R.one
    for j in range(1, n + 1):  # log_td starts in s-degree 2
        power = trunc(power * log_td * sp.Rational(1, j))
        total += power
    terms = {}
    for mon, coef in total.items():
        terms[tuple(mon[:-1])] = Fraction(int(coef.numerator), int(coef.denominator))
    return GradedPolynomial(n, {m: v for m, v in terms.items() if v})


# --- Rozansky-Witten symbols -------------------------------------------------

class UnsupportedDiagram(ValueError):
    pass


class RWImage:
    """Sum of sigma^a sigmabar^b lambda^e times a c-polynomial.

    Keys are (a, b, e); sigma, sigmabar and lambda are commuting formal symbols.
    """

    def __init__(self, n: int, parts: Mapping[tuple[int, int, int], GradedPolynomial] | None = None):
        self.n = n
        self.parts = {k: v for k, v in (parts or {}).items() if v.terms}

    @classmethod
    def scalar(cls, n, poly: GradedPolynomial, a=0, b=0, e=0):
        return cls(n, {(a, b, e): poly})

    def __add__(self, other):
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out[k] + v if k in out else v
        return RWImage(self.n, out)

    def __mul__(self, other):
        if not isinstance(other, RWImage):
            return RWImage(self.n, {k: v * other for k, v in self.parts.items()})
        out: dict = {}
        for (a1, b1, e1), p1 in self.parts.items():
            for (a2, b2, e2), p2 in other.parts.items():
                k = (a1 + a2, b1 + b2, e1 + e2)
                prod = p1 * p2
                out[k] = out[k] + prod if k in out else prod
        return RWImage(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RWImage) and self.parts == other.parts

    def part(self, a=0, b=0, e=0) -> GradedPolynomial:
        return self.parts.get((a, b, e), GradedPolynomial(self.n))

    def __repr__(self):
        body = " + ".join(f"sigma^{a} sigmabar^{b} lambda^{e} * ({p})" for (a, b, e), p in sorted(self.parts.items()))
        return f"RWImage({body or '0'})"


def rw_symbol_map(g, n: int) -> RWImage:
    """Multiplicative map on unions of struts, thetas and wheels.

    strut -> 2 sigma, theta -> (48/lambda) sigmabar, w_2k -> -(2k)! ch_2k.
    """
    from . import diagrams as dg

    ch = ch_from_c(n)
    theta_key, theta_sign = dg.canonicalize(dg.theta())
    strut_key, _ = dg.canonicalize(dg.strut())
    one = GradedPolynomial.constant(n, 1)
    wheels: dict[bytes, tuple[int, int]] = {}

    def generator(comp) -> RWImage:
        key, sign = dg.canonicalize(comp)
        if sign == 0:
            return RWImage(n)
        if key == strut_key:
            return RWImage.scalar(n, one * 2, a=1)
        if key == theta_key:
            return RWImage.scalar(n, one * (48 * sign * theta_sign), b=1, e=-1)
        tri, uni = comp.bidegree
        if tri == uni and tri % 2 == 0 and tri > 0:
            k = tri // 2
            if k not in [kk for kk, _ in wheels.values()]:
                wk, ws = dg.canonicalize(dg.wheel(k))
                wheels[wk] = (k, ws)
            if key in wheels:
                k, ws = wheels[key]
                value = ch[k] * (-factorial(2 * k)) if k <= n else GradedPolynomial(n)
                return RWImage.scalar(n, value * (sign * ws))
        raise UnsupportedDiagram(dg.format_diagram(comp))

    total = RWImage(n)
    for key, coeff in g.items():
        term = RWImage.scalar(n, one * coeff)
        for comp in dg.components(dg.diagram_from_key(key)):
            term = term * generator(comp)
        total = total + term
    return total
