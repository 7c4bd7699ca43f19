"""Exact scalar arithmetic and the combinatorial coefficient functions.

Everything in the package is computed over the Gaussian rationals: no
floating point appears anywhere, so equality checks are structural and
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Arbitrary-precision rational in canonical reduced form (gcd 1, positive
# denominator) -- exactly what the coefficient bookkeeping requires.
Rational = Fraction


def binom(K: int, L: int) -> int:
    """Binomial coefficient, with binom(K, L) = 0 whenever K < L."""
    if K < 0 or L < 0:
        raise ValueError(f"binom requires nonnegative arguments, got ({K}, {L})")
    return math.comb(K, L)


def falling(n: int, L: int) -> int:
    """Falling factorial n(n-1)...(n-L+1); equals 1 for L = 0 and 0 for n < L."""
    if n < 0 or L < 0:
        raise ValueError(f"falling requires nonnegative arguments, got ({n}, {L})")
    return math.perm(n, L)


def epsilon(n: int, k: int) -> int:
    """Complement of the Kronecker delta: 0 when n == k, else 1."""
    return 0 if n == k else 1


def theta(L: int, n: int, k: int, N: int, K: int) -> int:
    """Coefficient of the order-L singular term in the smeared bracket.

    theta(L; n,k, N,K) =
        eps(k,0) eps(N,0) binom(k,L) falling(N,L)
      - eps(K,0) eps(n,0) binom(K,L) falling(n,L)

    Only L >= 2 is meaningful: the L = 1 contribution of the bracket is
    regular and carried separately by the smearing decomposition.
    """
    if L < 2:
        raise ValueError(f"theta is defined for L >= 2, got L={L}")
    if min(n, k, N, K) < 0:
        raise ValueError(f"theta requires nonnegative indices, got {(n, k, N, K)}")
    return epsilon(k, 0) * epsilon(N, 0) * binom(k, L) * falling(N, L) - epsilon(
        K, 0
    ) * epsilon(n, 0) * binom(K, L) * falling(n, L)


@dataclass(frozen=True)
class CScalar:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(value) -> "CScalar":
        """Coerce an int, Fraction, or CScalar to a CScalar."""
        if isinstance(value, CScalar):
            return value
        return CScalar(Fraction(value))

    def conjugate(self) -> "CScalar":
        return CScalar(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> "CScalar":
        return CScalar(-self.re, -self.im)

    def __add__(self, other) -> "CScalar":
        other = CScalar.of(other)
        return CScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "CScalar":
        other = CScalar.of(other)
        return CScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "CScalar":
        return CScalar.of(other).__sub__(self)

    def __mul__(self, other) -> "CScalar":
        if not isinstance(other, (CScalar, Fraction, int)):
            return NotImplemented
        other = CScalar.of(other)
        return CScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CScalar":
        other = CScalar.of(other)
        denom = other.re * other.re + other.im * other.im
        if not denom:
            raise ZeroDivisionError("division by zero CScalar")
        return CScalar(
            (self.re * other.re + self.im * other.im) / denom,
            (self.im * other.re - self.re * other.im) / denom,
        )

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


CS_ZERO = CScalar()
CS_ONE = CScalar(Fraction(1))
CS_I = CScalar(Fraction(0), Fraction(1))
