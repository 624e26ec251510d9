"""Laurent polynomials in a single formal parameter (written lambda)."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class Laurent:
    """Finitely supported map exponent -> Fraction."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None):
        self._c = {int(e): Fraction(v) for e, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e: int) -> "Laurent":
        return cls({e: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            c = Fraction(other)
            return Laurent({e: c * v for e, v in self._c.items()})
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Laurent.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, e: int) -> "Laurent":
        """Multiply by lambda^e."""
        return Laurent({x + e: v for x, v in self._c.items()})

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def positive_monomial(self) -> bool:
        """A single term with a positive rational coefficient."""
        return len(self._c) == 1 and next(iter(self._c.values())) > 0

    def nonneg_coefficients(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                parts.append(str(v))
            elif e == 1:
                parts.append(f"{v}*lambda")
            else:
                parts.append(f"{v}*lambda^{e}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Laurent({self})"
