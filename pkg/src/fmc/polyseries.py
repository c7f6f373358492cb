"""Exact arithmetic for integer polynomials and truncated exponential series.

Polynomials are dense, with arbitrary-precision integer coefficients stored
low power first; the canonical form carries no trailing zero, and the zero
polynomial is the empty coefficient tuple.

A truncated exponential generating function (EGF) of order ``r`` stores
polynomial coefficients ``h_0 .. h_r`` and represents ``sum h_i t^i / i!``.
Products use the binomial convolution

    (a * b)_n = sum_k C(n, k) a_k b_{n-k}

so integer coefficients stay integers, and the exponential of a series with
zero constant term satisfies the division-free recurrence

    e_0 = 1,    e_n = sum_{k=1..n} C(n-1, k-1) a_k e_{n-k}.

Truncation orders are fixed at construction; combining series of different
orders is an error rather than a silent re-truncation.  All values are
immutable and all operations are pure functions, so they may be shared
freely across threads.
"""

from __future__ import annotations

from typing import Iterable, Union


class IntPoly:
    """Dense integer polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = tuple(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        self.coeffs: tuple[int, ...] = cs

    @property
    def degree(self) -> int:
        """Degree in canonical form; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __rmul__(self, other: int) -> "IntPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift(self, j: int) -> "IntPoly":
        """Multiply by ``x**j``."""
        if j < 0:
            raise ValueError("negative shift")
        if self.is_zero:
            return ZERO
        return IntPoly((0,) * j + self.coeffs)

    def divexact(self, divisor: "IntPoly") -> "IntPoly":
        """Exact polynomial quotient; raises ValueError on any remainder."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return ZERO
        dd = divisor.degree
        lead = divisor.coeffs[-1]
        qd = self.degree - dd
        if qd < 0:
            raise ValueError("inexact polynomial division")
        rem = list(self.coeffs)
        quot = [0] * (qd + 1)
        for i in range(qd, -1, -1):
            c = rem[i + dd]
            if c % lead:
                raise ValueError("inexact polynomial division")
            f = c // lead
            quot[i] = f
            if f:
                for j, dc in enumerate(divisor.coeffs):
                    rem[i + j] -= f * dc
        if any(rem):
            raise ValueError("inexact polynomial division")
        return IntPoly(quot)

    def divexact_int(self, divisor: int) -> "IntPoly":
        """Divide every coefficient by ``divisor``; raises ValueError if inexact."""
        if divisor == 0:
            raise ZeroDivisionError("division by zero")
        out = []
        for c in self.coeffs:
            q, r = divmod(c, divisor)
            if r:
                raise ValueError("inexact coefficient division")
            out.append(q)
        return IntPoly(out)

    def is_palindromic(self, degree: int) -> bool:
        """True if the coefficients read the same both ways over 0..degree."""
        if degree < 0 or self.degree > degree:
            return False
        padded = self.coeffs + (0,) * (degree + 1 - len(self.coeffs))
        return padded == padded[::-1]

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO = IntPoly()
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def monomial(exponent: int, coefficient: int = 1) -> IntPoly:
    """The polynomial ``coefficient * x**exponent``."""
    if exponent < 0:
        raise ValueError("negative exponent")
    return IntPoly((0,) * exponent + (coefficient,))


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact convolution product in canonical form."""
    return a * b


def format_poly(p: IntPoly, var: str = "x") -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


# Pascal-triangle cache for binomial coefficients; rows are appended once and
# never mutated afterwards, so concurrent readers always see complete rows.
_PASCAL: list[tuple[int, ...]] = [(1,)]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient from a growing Pascal-triangle cache."""
    if k < 0 or k > n:
        return 0
    while len(_PASCAL) <= n:
        prev = _PASCAL[-1]
        row = (1,) + tuple(prev[i] + prev[i + 1] for i in range(len(prev) - 1)) + (1,)
        _PASCAL.append(row)
    return _PASCAL[n][k]


def _as_poly(value: Union[IntPoly, int]) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly((value,)) if value else ZERO
    raise TypeError(f"expected IntPoly or int, got {type(value).__name__}")


class EGF:
    """Truncated exponential generating function with polynomial coefficients.

    ``coeffs[i]`` is the polynomial ``h_i`` of the series
    ``sum h_i t^i / i!`` truncated at ``t**order``.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Union[IntPoly, int]], order: int | None = None) -> None:
        polys = tuple(_as_poly(c) for c in coeffs)
        if order is None:
            if not polys:
                raise ValueError("empty coefficient list and no order given")
            order = len(polys) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(polys) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        polys += (ZERO,) * (order + 1 - len(polys))
        self.order: int = order
        self.coeffs: tuple[IntPoly, ...] = polys

    def coefficient(self, n: int) -> IntPoly:
        if 0 <= n <= self.order:
            return self.coeffs[n]
        return ZERO

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EGF):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("EGF", self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"EGF(order={self.order}, coeffs={[list(c.coeffs) for c in self.coeffs]})"

    def _check_order(self, other: "EGF") -> None:
        if self.order != other.order:
            raise ValueError(
                f"EGF truncation orders differ: {self.order} != {other.order}"
            )

    def __add__(self, other: "EGF") -> "EGF":
        if not isinstance(other, EGF):
            return NotImplemented
        self._check_order(other)
        return EGF([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "EGF") -> "EGF":
        if not isinstance(other, EGF):
            return NotImplemented
        self._check_order(other)
        return EGF([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self) -> "EGF":
        return EGF([-c for c in self.coeffs], self.order)

    def scale(self, q: Union[IntPoly, int]) -> "EGF":
        """Multiply every coefficient by a fixed polynomial (or integer)."""
        factor = _as_poly(q)
        return EGF([c * factor for c in self.coeffs], self.order)


def egf_zero(order: int) -> EGF:
    return EGF([ZERO], order)


def egf_unit(order: int) -> EGF:
    """The multiplicative identity: h_0 = 1, all other coefficients zero."""
    return EGF([ONE], order)


def egf_term(n: int, value: Union[IntPoly, int], order: int) -> EGF:
    """The series whose only nonzero coefficient is ``h_n = value``."""
    if not 0 <= n <= order:
        raise ValueError("coefficient index outside truncation order")
    coeffs = [ZERO] * (order + 1)
    coeffs[n] = _as_poly(value)
    return EGF(coeffs, order)


def egf_mul(a: EGF, b: EGF) -> EGF:
    """Binomial-convolution product; truncation orders must match."""
    a._check_order(b)
    out = []
    for n in range(a.order + 1):
        acc = ZERO
        for k in range(n + 1):
            ak = a.coeffs[k]
            bk = b.coeffs[n - k]
            if ak.is_zero or bk.is_zero:
                continue
            acc = acc + ak * bk * binomial(n, k)
        out.append(acc)
    return EGF(out, a.order)


def egf_pow(a: EGF, m: int) -> EGF:
    if m < 0:
        raise ValueError("negative series power")
    result = egf_unit(a.order)
    for _ in range(m):
        result = egf_mul(result, a)
    return result


def egf_exp(a: EGF) -> EGF:
    """Exponential of a series with zero constant term.

    The result stays integral: no divisions occur.
    """
    if not a.coeffs[0].is_zero:
        raise ValueError("exp requires a zero constant term")
    out = [ONE]
    for n in range(1, a.order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            ak = a.coeffs[k]
            if ak.is_zero:
                continue
            acc = acc + ak * out[n - k] * binomial(n - 1, k - 1)
        out.append(acc)
    return EGF(out, a.order)
