"""Integer helpers, discriminants, the Kronecker character and ball arithmetic.

Precision is always passed explicitly. Each precision level gets its own
private mpmath context, so nothing here touches ``mpmath.mp``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath.ctx_mp import MPContext

__all__ = [
    "BigFloat",
    "Discriminant",
    "as_discriminant",
    "context",
    "is_discriminant",
    "is_fundamental",
    "is_prime",
    "is_square_mod",
    "is_squarefree",
    "kronecker",
    "kronecker_chi",
    "primes_up_to",
]


def is_prime(n: int) -> bool:
    """Trial division; intended for the small moduli used throughout."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    f = 2
    while f * f <= m:
        if m % (f * f) == 0:
            return False
        if m % f == 0:
            m //= f
        f += 1
    return True


def is_discriminant(D: int) -> bool:
    return D != 0 and D % 4 in (0, 1)


def is_fundamental(D: int) -> bool:
    """True iff ``D`` is a fundamental discriminant.

    Total: any integer that is not 0 or 1 mod 4 (including 0) gives False.
    """
    if not is_discriminant(D):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    m = D // 4
    return m % 4 in (2, 3) and is_squarefree(m)


@dataclass(frozen=True)
class Discriminant:
    value: int
    fundamental: bool

    def __post_init__(self):
        if not is_discriminant(self.value):
            raise ValueError(f"{self.value} is not a discriminant (must be nonzero and 0 or 1 mod 4)")
        if self.fundamental != is_fundamental(self.value):
            raise ValueError(f"fundamental flag inconsistent for D={self.value}")

    @classmethod
    def of(cls, D: int) -> "Discriminant":
        return cls(int(D), is_fundamental(int(D)))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


def as_discriminant(D, *, negative: bool = True) -> Discriminant:
    """Coerce an int or `Discriminant` and validate it."""
    disc = D if isinstance(D, Discriminant) else Discriminant.of(int(D))
    if negative and disc.value >= 0:
        raise ValueError(f"expected a negative discriminant, got {disc.value}")
    return disc


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for any integer ``a`` and ``n``."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a|n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_chi(D, p: int) -> int:
    """The quadratic character chi_D evaluated at a prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return kronecker(int(D), p)


def is_square_mod(D: int, p: int) -> bool:
    """Whether ``D`` is congruent to a square modulo the prime ``p`` (0 counts)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = int(D) % p
    if r == 0 or p == 2:
        return True
    return pow(r, (p - 1) // 2, p) == 1


# ---------------------------------------------------------------------------
# Ball arithmetic
# ---------------------------------------------------------------------------

GUARD_BITS = 8


@lru_cache(maxsize=None)
def context(dps: int) -> MPContext:
    """A private mpmath context working at ``dps`` decimal digits."""
    if dps < 1:
        raise ValueError("precision must be at least one digit")
    ctx = MPContext()
    ctx.dps = dps
    return ctx


def _ulp_factor(ctx) -> object:
    # relative size of one rounding step, inflated by the guard
    return ctx.ldexp(ctx.one, GUARD_BITS - ctx.prec)


class BigFloat:
    """A midpoint-radius ball ``mid +- rad`` at a fixed decimal precision.

    ``mid`` may be real or complex; ``rad`` bounds the absolute error.
    Every operation widens the radius to cover propagated input error and
    the rounding of the new midpoint.
    """

    __slots__ = ("mid", "rad", "dps")

    def __init__(self, mid, rad=0, dps: int = 30):
        ctx = context(dps)
        self.dps = dps
        self.mid = ctx.convert(mid) if not isinstance(mid, Fraction) else ctx.mpf(mid.numerator) / mid.denominator
        self.rad = ctx.mpf(rad)
        if self.rad < 0:
            raise ValueError("error bound must be nonnegative")
        if isinstance(mid, Fraction) and mid.denominator != 1:
            self.rad += abs(self.mid) * _ulp_factor(ctx)
        elif isinstance(mid, int) and int(self.mid) != mid:
            self.rad += abs(self.mid) * _ulp_factor(ctx)

    @property
    def ctx(self) -> MPContext:
        return context(self.dps)

    @classmethod
    def exact(cls, value, dps: int = 30) -> "BigFloat":
        return cls(value, 0, dps)

    def _coerce(self, other) -> "BigFloat":
        if isinstance(other, BigFloat):
            return other
        if isinstance(other, (int, Fraction)):
            return BigFloat(other, 0, self.dps)
        return BigFloat(other, abs(self.ctx.convert(other)) * _ulp_factor(self.ctx), self.dps)

    def _finish(self, ctx, mid, rad) -> "BigFloat":
        rad = rad * (1 + _ulp_factor(ctx)) + abs(mid) * _ulp_factor(ctx)
        out = BigFloat.__new__(BigFloat)
        out.dps, out.mid, out.rad = ctx.dps, mid, rad
        return out

    def __add__(self, other):
        other = self._coerce(other)
        ctx = context(min(self.dps, other.dps))
        a, b = ctx.convert(self.mid), ctx.convert(other.mid)
        return self._finish(ctx, a + b, ctx.convert(self.rad) + ctx.convert(other.rad))

    __radd__ = __add__

    def __neg__(self):
        out = BigFloat.__new__(BigFloat)
        out.dps, out.mid, out.rad = self.dps, -self.mid, self.rad
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ctx = context(min(self.dps, other.dps))
        a, b = ctx.convert(self.mid), ctx.convert(other.mid)
        ra, rb = ctx.convert(self.rad), ctx.convert(other.rad)
        rad = abs(a) * rb + abs(b) * ra + ra * rb
        return self._finish(ctx, a * b, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        ctx = context(min(self.dps, other.dps))
        b, rb = ctx.convert(other.mid), ctx.convert(other.rad)
        if abs(b) <= rb:
            raise ZeroDivisionError("divisor ball contains zero")
        a, ra = ctx.convert(self.mid), ctx.convert(self.rad)
        mid = a / b
        # |a/b - (a+da)/(b+db)| <= (ra + |mid| rb) / (|b| - rb)
        rad = (ra + abs(mid) * rb) / (abs(b) - rb)
        return self._finish(ctx, mid, rad)

    def __reduce__(self):
        if hasattr(self.mid, "_mpc_"):
            return (_rebuild, (self.dps, "c", self.mid._mpc_, self.rad._mpf_))
        return (_rebuild, (self.dps, "r", self.mid._mpf_, self.rad._mpf_))

    def square(self) -> "BigFloat":
        return self * self

    @property
    def real(self) -> "BigFloat":
        out = BigFloat.__new__(BigFloat)
        out.dps, out.mid, out.rad = self.dps, self.ctx.re(self.mid), self.rad
        return out

    @property
    def imag(self) -> "BigFloat":
        out = BigFloat.__new__(BigFloat)
        out.dps, out.mid, out.rad = self.dps, self.ctx.im(self.mid), self.rad
        return out

    def contains(self, value) -> bool:
        return abs(self.ctx.convert(value) - self.mid) <= self.rad

    def overlaps(self, other: "BigFloat") -> bool:
        ctx = context(min(self.dps, other.dps))
        return abs(ctx.convert(self.mid) - ctx.convert(other.mid)) <= ctx.convert(self.rad) + ctx.convert(other.rad)

    def nearest_integer(self) -> int:
        return int(self.ctx.nint(self.ctx.re(self.mid)))

    def __float__(self):
        return float(self.ctx.re(self.mid))

    def __complex__(self):
        return complex(self.mid)

    def __repr__(self):
        return f"BigFloat({self.ctx.nstr(self.mid, 20)} +- {self.ctx.nstr(self.rad, 3)}, dps={self.dps})"


def _rebuild(dps, kind, mid, rad) -> BigFloat:
    ctx = context(dps)
    out = BigFloat.__new__(BigFloat)
    out.dps = dps
    out.mid = ctx.make_mpc(mid) if kind == "c" else ctx.make_mpf(mid)
    out.rad = ctx.make_mpf(rad)
    return out
