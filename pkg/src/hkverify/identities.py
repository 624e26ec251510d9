"""Two factorial sums behind the decomposition and the integral expansion."""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .lefschetz import RangeError

__all__ = ["lemma_a1", "lemma_a1_closed", "lemma_a2", "lemma_a2_closed", "sweep"]


def lemma_a1(n: int, k: int, j: int) -> Fraction:
    """sum_i (-1)^i (n-2k+2i+1)(n-2k+i)! / (i! (k-i-j)! (n-k+i-j+1)!)."""
    if not (0 <= j <= k and 2 * k <= n):
        raise RangeError(f"needs n/2 >= k >= j >= 0, got n={n}, k={k}, j={j}")
    total = Fraction(0)
    for i in range(k - j + 1):
        num = (-1) ** i * (n - 2 * k + 2 * i + 1) * factorial(n - 2 * k + i)
        den = factorial(i) * factorial(k - i - j) * factorial(n - k + i - j + 1)
        total += Fraction(num, den)
    return total


def lemma_a1_closed(n: int, k: int, j: int) -> Fraction:
    return Fraction(1 if k == j else 0)


def lemma_a2(n: int, m: int, i: int = 0) -> Fraction:
    """sum_{k=i}^{m-i} (n-k-i)! (n-m+k-i)! / ((k-i)! (m-k-i)!)."""
    if not (0 <= 2 * i <= m <= n):
        raise RangeError(f"needs n >= m >= 2i >= 0, got n={n}, m={m}, i={i}")
    return sum(
        (Fraction(factorial(n - k - i) * factorial(n - m + k - i), factorial(k - i) * factorial(m - k - i))
         for k in range(i, m - i + 1)),
        Fraction(0),
    )


def lemma_a2_closed(n: int, m: int, i: int = 0) -> Fraction:
    return Fraction(factorial(n - m) ** 2 * comb(2 * n - 2 * i - m + 1, m - 2 * i))


def sweep(max_n: int) -> dict:
    """Every admissible index triple with n <= max_n."""
    failures = []
    count_a1 = count_a2 = 0
    for n in range(max_n + 1):
        for k in range(n // 2 + 1):
            for j in range(k + 1):
                count_a1 += 1
                if lemma_a1(n, k, j) != lemma_a1_closed(n, k, j):
                    failures.append({"lemma": "a1", "n": n, "k": k, "j": j})
        for m in range(n + 1):
            for i in range(m // 2 + 1):
                count_a2 += 1
                if lemma_a2(n, m, i) != lemma_a2_closed(n, m, i):
                    failures.append({"lemma": "a2", "n": n, "m": m, "i": i})
    return {"max_n": max_n, "a1_cases": count_a1, "a2_cases": count_a2,
            "failures": failures, "passed": not failures}
