"""Multiplicity polynomials of configuration-space compactifications.

For a smooth base of dimension ``d``, the connected multiplicity polynomial
``h_n(x)`` collects one monomial ``x^w`` for every single-component nest on
n labels together with an admissible weight vector of total weight w.  It
obeys the recurrence over set partitions of {1..n}

    h_1 = 1,    h_n = sum over partitions {I_1..I_k}:
                         h_|I_1| * ... * h_|I_k| * sigma_{k-1}

with ``sigma_k = x + x^2 + ... + x^(d*k-1)`` for k > 0 and ``sigma_0 = 0``.
Because the summand depends only on block sizes, the sum is taken over
integer partitions weighted by the number of set partitions of that shape.

The exponential generating function ``N(x,t) = sum h_n t^n / n!`` is pinned
down by the functional identity

    exp(x^d N) - x^(d+1) exp(N) = (1-x) x^d t + (1 - x^(d+1)),

which an independent solver unwinds order by order in t: at order n the
unknown ``h_n`` enters with the factor ``x^d (1-x)``, so one exact
polynomial division isolates it.

Finally, the multiplicity table ``a_{m,i}`` reads off how many i-shifted
copies of the m-th cartesian power occur in the decomposition:
``a_{m,i} = [x^i] ([t^n/n!] N^m) / m!`` with the division by m! exact.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .polyseries import (
    EGF,
    ONE,
    ZERO,
    IntPoly,
    egf_exp,
    egf_mul,
    egf_term,
    egf_unit,
    monomial,
)


def sigma(k: int, d: int) -> IntPoly:
    """Weight polynomial of one internal node with ``k+1`` sons.

    ``sigma(0, d) = 0`` and ``sigma(k, d) = x + x^2 + ... + x^(d*k-1)``,
    which is the zero polynomial when ``d*k - 1 < 1``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if k == 0 or d * k - 1 < 1:
        return ZERO
    return IntPoly((0,) + (1,) * (d * k - 1))


def integer_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples."""

    def gen(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return gen(n, n)


def _shape_count(n: int, shape: tuple[int, ...]) -> int:
    # Number of set partitions of an n-set whose block sizes are `shape`.
    denom = 1
    for part in shape:
        denom *= math.factorial(part)
    for mult in Counter(shape).values():
        denom *= math.factorial(mult)
    count, rem = divmod(math.factorial(n), denom)
    if rem:
        raise ArithmeticError("set-partition count is not an integer")
    return count


@lru_cache(maxsize=None)
def _h_list(n: int, d: int) -> tuple[IntPoly, ...]:
    if n == 1:
        return (ONE,)
    prev = _h_list(n - 1, d)
    total = ZERO
    for shape in integer_partitions(n):
        k = len(shape)
        if k == 1:
            continue  # sigma_0 = 0 kills the one-block term
        term = sigma(k - 1, d)
        if term.is_zero:
            continue
        for part in shape:
            term = term * prev[part - 1]
        total = total + term * _shape_count(n, shape)
    return prev + (total,)


def h_recurrence(n: int, d: int) -> IntPoly:
    """The polynomial ``h_n`` computed by the partition recurrence."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return _h_list(n, d)[n - 1]


def recurrence_egf(n_max: int, d: int) -> EGF:
    """The series ``N`` with coefficients ``0, h_1, ..., h_n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return EGF((ZERO,) + _h_list(n_max, d), n_max)


def egf_solve(n_max: int, d: int) -> EGF:
    """Solve the functional identity for ``N`` order by order in t.

    Independent of the partition recurrence: the two constructions agree
    coefficientwise, which the verification suite asserts.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    xd = monomial(d)
    xd1 = monomial(d + 1)
    lead = xd - xd1  # x^d (1 - x), the factor multiplying the unknown h_n
    rhs_1 = xd - xd1  # coefficient of t in (1-x) x^d t
    from .polyseries import binomial

    h: list[IntPoly] = [ZERO]
    exp_top: list[IntPoly] = [ONE]  # coefficients of exp(x^d N)
    exp_low: list[IntPoly] = [ONE]  # coefficients of exp(N)
    for n in range(1, n_max + 1):
        low_top = ZERO
        low_low = ZERO
        for k in range(1, n):
            c = binomial(n - 1, k - 1)
            if h[k].is_zero:
                continue
            low_top = low_top + (h[k] * xd) * exp_top[n - k] * c
            low_low = low_low + h[k] * exp_low[n - k] * c
        rhs = rhs_1 if n == 1 else ZERO
        residual = rhs - (low_top - low_low * xd1)
        try:
            hn = residual.divexact(lead)
        except ValueError as exc:
            raise ArithmeticError(
                f"identity solve failed at order {n}: division not exact"
            ) from exc
        h.append(hn)
        exp_top.append(low_top + hn * xd)
        exp_low.append(low_low + hn)
    return EGF(h, n_max)


def verify_identity(series: EGF, d: int) -> EGF:
    """Residual of the functional identity for a candidate series.

    Returns ``exp(x^d N) - x^(d+1) exp(N) - (1-x) x^d t - (1 - x^(d+1))``
    truncated at the order of ``series``; the zero series iff the identity
    holds to that order.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not series.coefficient(0).is_zero:
        raise ValueError("series must have zero constant term")
    order = series.order
    xd = monomial(d)
    xd1 = monomial(d + 1)
    lhs = egf_exp(series.scale(xd)) - egf_exp(series).scale(xd1)
    rhs = egf_term(0, ONE - xd1, order)
    if order >= 1:
        rhs = rhs + egf_term(1, xd - xd1, order)
    return lhs - rhs


@dataclass(frozen=True)
class MultiplicityTable:
    """Nonzero multiplicities ``a_{m,i}`` of the i-shifted m-th power."""

    n: int
    d: int
    entries: dict[tuple[int, int], int]

    def value(self, m: int, i: int) -> int:
        return self.entries.get((m, i), 0)

    def row_poly(self, m: int) -> IntPoly:
        """The polynomial ``sum_i a_{m,i} x^i`` for a fixed power m."""
        if not 1 <= m <= self.n:
            return ZERO
        top = max((i for (mm, i) in self.entries if mm == m), default=-1)
        return IntPoly(self.value(m, i) for i in range(top + 1))

    def terms(self) -> list[tuple[int, int, int]]:
        """Nonzero ``(m, i, a_{m,i})`` in canonical order: m desc, i asc."""
        return sorted(
            ((m, i, a) for (m, i), a in self.entries.items()),
            key=lambda t: (-t[0], t[1]),
        )

    def total(self) -> int:
        return sum(self.entries.values())


def multiplicity_table(n: int, d: int) -> MultiplicityTable:
    """Extract all ``a_{m,i}`` from powers of the generating function."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    series = recurrence_egf(n, d)
    entries: dict[tuple[int, int], int] = {}
    power = egf_unit(n)
    fact = 1
    for m in range(1, n + 1):
        power = egf_mul(power, series)
        fact *= m
        try:
            row = power.coefficient(n).divexact_int(fact)
        except ValueError as exc:
            raise ArithmeticError(
                f"multiplicity division by {m}! not exact"
            ) from exc
        for i, a in enumerate(row.coeffs):
            if a < 0:
                raise ArithmeticError("negative multiplicity")
            if a:
                entries[(m, i)] = a
    return MultiplicityTable(n=n, d=d, entries=entries)
