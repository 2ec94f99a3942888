"""Exact q-series for E4, E6, Delta and J = j - 744, plus certified evaluation
of J and theta at points of the upper half-plane."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .arith import BigFloat, context
from .qforms import CMPoint

__all__ = [
    "MAX_TERMS",
    "PowerSeries",
    "PrecisionError",
    "delta_series",
    "eisenstein_series",
    "evaluate_J",
    "J_onan",
    "j_coefficients",
    "theta",
    "write_coefficients_csv",
]

# longest J expansion evaluate_J is willing to use
MAX_TERMS = 4096
# c(n) <= SAFETY * exp(4 pi sqrt(n)) for n >= 1
SAFETY = 10
ONAN_SHIFT = 393768


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PowerSeries:
    """``sum coeffs[k] q^(valuation + k) + O(q^order)`` with exact integer
    coefficients."""

    coeffs: tuple
    valuation: int
    order: int

    def __post_init__(self):
        if self.valuation + len(self.coeffs) != self.order:
            raise ValueError("coefficient count does not match valuation and order")

    @classmethod
    def from_coefficients(cls, coeffs, valuation: int = 0, order: int | None = None):
        coeffs = [int(c) for c in coeffs]
        if order is None:
            order = valuation + len(coeffs)
        n = order - valuation
        coeffs = (coeffs + [0] * n)[:n]
        return cls(tuple(coeffs), valuation, order)

    @classmethod
    def one(cls, order: int):
        return cls.from_coefficients([1], 0, order)

    def __getitem__(self, n: int) -> int:
        if n >= self.order:
            raise IndexError(f"q^{n} is beyond the truncation order {self.order}")
        k = n - self.valuation
        return self.coeffs[k] if k >= 0 else 0

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        order = min(order, self.order)
        return PowerSeries(self.coeffs[: max(order - self.valuation, 0)], self.valuation, max(order, self.valuation))

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by q^k."""
        return PowerSeries(self.coeffs, self.valuation + k, self.order + k)

    def __add__(self, other):
        if isinstance(other, int):
            other = PowerSeries.from_coefficients([other], 0, self.order)
        v = min(self.valuation, other.valuation)
        order = min(self.order, other.order)
        return PowerSeries.from_coefficients([self[n] + other[n] for n in range(v, order)], v, order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.valuation, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries(tuple(other * c for c in self.coeffs), self.valuation, self.order)
        v = self.valuation + other.valuation
        order = min(self.order + other.valuation, other.order + self.valuation)
        n = order - v
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(min(n, len(a))):
            ai = a[i]
            if ai:
                for j in range(min(n - i, len(b))):
                    out[i + j] += ai * b[j]
        return PowerSeries(tuple(out), v, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return PowerSeries.one(self.order - self.valuation)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "PowerSeries":
        """Reciprocal; the leading coefficient must be +-1."""
        lead = self.coeffs[0] if self.coeffs else 0
        if lead not in (1, -1):
            raise ValueError("can only invert series with leading coefficient +-1")
        n = len(self.coeffs)
        a = self.coeffs
        out = [0] * n
        out[0] = lead
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                s += a[i] * out[k - i]
            out[k] = -lead * s
        return PowerSeries(tuple(out), -self.valuation, n - self.valuation)


def _divisor_power_sums(n_max: int, k: int) -> list[int]:
    sigma = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d**k
        for m in range(d, n_max + 1, d):
            sigma[m] += dk
    return sigma


def eisenstein_series(weight: int, order: int) -> PowerSeries:
    """E4 or E6 modulo q^order."""
    factor = {4: 240, 6: -504}[weight]
    sigma = _divisor_power_sums(order - 1, weight - 1)
    return PowerSeries.from_coefficients([1] + [factor * s for s in sigma[1:]], 0, order)


def _euler_product(order: int) -> PowerSeries:
    """prod_{n>=1} (1 - q^n) modulo q^order."""
    coeffs = [0] * order
    coeffs[0] = 1
    for n in range(1, order):
        for m in range(order - 1, n - 1, -1):
            coeffs[m] -= coeffs[m - n]
    return PowerSeries(tuple(coeffs), 0, order)


def delta_series(order: int) -> PowerSeries:
    """Delta = q prod (1 - q^n)^24 modulo q^order."""
    return (_euler_product(order - 1) ** 24).shift(1)


@lru_cache(maxsize=8)
def _j_table(n_max: int) -> tuple:
    order = n_max + 2
    e4 = eisenstein_series(4, order)
    # Delta^-1 = q^-1 (prod (1 - q^n))^-24
    inv_eta24 = _euler_product(order).inverse() ** 24
    j = (e4 * e4 * e4 * inv_eta24).shift(-1)
    return (j - 744).coeffs


def j_coefficients(n_max: int) -> PowerSeries:
    """J = j - 744 = q^-1 + 196884 q + ... through q^n_max, exactly."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return PowerSeries(_j_table(n_max), -1, n_max + 1)


def _cached_coefficients(n: int) -> tuple:
    size = 64
    while size < n:
        size *= 2
    # index k holds c(k - 1)
    return _j_table(size)


def write_coefficients_csv(path, n_max: int) -> Path:
    """Write the table (n, c(n)) for -1 <= n <= n_max."""
    path = Path(path)
    series = j_coefficients(n_max)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "c(n)"])
        for n in range(-1, n_max + 1):
            writer.writerow([n, series[n]])
    return path


def _log_tail(n: int, log_r: float) -> float:
    """log of SAFETY * exp(4 pi sqrt(n)) r^n."""
    return math.log(SAFETY) + 4 * math.pi * math.sqrt(n) + n * log_r


def evaluate_J(z: CMPoint, precision: int) -> BigFloat:
    """J(z) as a complex ball, accurate to about ``precision`` significant digits
    relative to max(1, |q|^-1).

    The truncation error is bounded by ``SAFETY * exp(4 pi sqrt(n)) |q|^n``
    summed geometrically; rounding error of the Horner scheme is added on top.
    """
    if 4 * z.radicand < 3 * z.denom * z.denom:
        raise ValueError("imaginary part must be at least sqrt(3)/2")
    ctx = context(precision + 10)
    y_float = math.sqrt(z.radicand) / z.denom
    log_r = -2 * math.pi * y_float
    # truncation target (natural log), relative to the q^-1 term
    log_target = -precision * math.log(10) + max(0.0, -log_r)
    N = 1
    while True:
        ratio_log = 2 * math.pi / math.sqrt(N + 1) + log_r
        if ratio_log < 0:
            log_tail = _log_tail(N + 1, log_r) - math.log1p(-math.exp(ratio_log))
            if log_tail < log_target:
                break
        N += 1
        if N > MAX_TERMS:
            raise PrecisionError(f"{precision} digits needs more than {MAX_TERMS} terms of J")

    coeffs = _cached_coefficients(N)
    y = z.imag(ctx.dps)
    r = ctx.exp(-2 * ctx.pi * y)
    x2 = 2 * z.real
    phase = ctx.mpc(ctx.cospi(ctx.mpf(x2.numerator) / x2.denominator), ctx.sinpi(ctx.mpf(x2.numerator) / x2.denominator))
    q = r * phase

    acc = ctx.mpc(coeffs[N + 1])
    for n in range(N - 1, 0, -1):
        acc = acc * q + coeffs[n + 1]
    value = acc * q + 1 / q

    # sum |n c(n)| r^n dominates both the Horner rounding and the error
    # inherited from q itself
    weight = 1 / r
    rn = ctx.one
    for n in range(1, N + 1):
        rn *= r
        weight += n * coeffs[n + 1] * rn
    rounding = weight * (N + 8) * ctx.ldexp(ctx.one, 8 - ctx.prec)
    tail = ctx.exp(_log_tail(N + 1, log_r)) / (1 - ctx.exp(ratio_log))
    return BigFloat(value, tail + rounding, ctx.dps)


def J_onan(j_value) -> BigFloat:
    """J^2 - J - 393768 on a ball (or an exact number)."""
    if not isinstance(j_value, BigFloat):
        j_value = BigFloat.exact(j_value)
    return j_value * j_value - j_value - ONAN_SHIFT


def theta(v, precision: int) -> BigFloat:
    """theta(iv) = sum_n exp(-pi v n^2) for real v >= 1e-3."""
    ctx = context(precision + 10)
    if isinstance(v, Fraction):
        v_mp = ctx.mpf(v.numerator) / v.denominator
    else:
        v_mp = ctx.convert(v)
    if v_mp < ctx.mpf("1e-3"):
        raise ValueError("v must be at least 1e-3")
    vf = float(v_mp)
    log_target = -(precision + 2) * math.log(10)
    N = 0
    while True:
        # tail sum_{n > N} exp(-pi v n^2) <= exp(-pi v (N+1)^2) / (1 - exp(-pi v (2N+3)))
        log_tail = -math.pi * vf * (N + 1) ** 2 - math.log1p(-math.exp(-math.pi * vf * (2 * N + 3)))
        if log_tail + math.log(2) < log_target:
            break
        N += 1
    total = ctx.one
    for n in range(1, N + 1):
        total += 2 * ctx.exp(-ctx.pi * v_mp * n * n)
    tail = 2 * ctx.exp(-ctx.pi * v_mp * (N + 1) ** 2) / (1 - ctx.exp(-ctx.pi * v_mp * (2 * N + 3)))
    rounding = total * (N + 4) * ctx.ldexp(ctx.one, 8 - ctx.prec)
    return BigFloat(total, tail + rounding, ctx.dps)
