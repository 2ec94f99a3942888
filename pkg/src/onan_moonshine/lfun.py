"""Dirichlet L(1, chi_D), the elliptic curves E_11, E_14, E_15, E_19 twisted by D,
their Frobenius traces, smoothed values of L_E(1) and the p = 11, 19
congruence indicator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import BigFloat, as_discriminant, context, is_prime, is_square_mod, kronecker, primes_up_to
from .traces import trace, weighted_class_term

__all__ = [
    "BASE_MODELS",
    "BSD_LABEL",
    "CurveSpec",
    "FAMILY_COEFFICIENTS",
    "IllConditionedError",
    "LSeriesData",
    "MAX_PRIME",
    "SelmerIndicator",
    "an_coefficients",
    "count_points",
    "curve",
    "dirichlet_L1",
    "local_data",
    "l_value_at_1",
    "selmer_indicator",
]

# y^2 = x^3 + c1 D^2 x + c2 D^3
FAMILY_COEFFICIENTS = {
    11: (-13392, -1080432),
    14: (5805, -285714),
    15: (-12987, -263466),
    19: (-12096, -544752),
}
# minimal models [a1, a2, a3, a4, a6] of the untwisted curves; each has
# c4 = -c1 / 27 and c6 = -c2 / 54 with the family coefficients above
BASE_MODELS = {
    11: (0, -1, 1, -10, -20),
    14: (1, 0, 1, 4, -6),
    15: (1, 1, 1, -10, -10),
    19: (0, 1, 1, -9, -15),
}
MAX_PRIME = 10**5
BSD_LABEL = "conditional on BSD"
SMOOTHING_POINTS = (1.0, 1.2)


class IllConditionedError(ArithmeticError):
    def __init__(self, message: str, data: "LSeriesData | None" = None):
        super().__init__(message)
        self.data = data


def dirichlet_L1(D, precision: int = 30) -> BigFloat:
    """L(1, chi_D) for a fundamental D < -4.

    The series sum chi(n)/n is resummed over residue classes mod |D|; pairing
    a with |D| - a collapses the digamma terms into cotangents:

        L(1, chi) = pi/|D| * sum_{0 < a < |D|/2} chi(a) cot(pi a / |D|)
    """
    disc = as_discriminant(D)
    if not disc.fundamental or disc.value >= -4:
        raise ValueError(f"need a fundamental discriminant below -4, got {disc.value}")
    k = -disc.value
    ctx = context(precision + 10)
    total = ctx.zero
    magnitude = ctx.zero
    step = ctx.pi / k
    for a in range(1, (k + 1) // 2):
        chi = kronecker(disc.value, a)
        if chi:
            c = ctx.cot(step * a)
            total += c if chi > 0 else -c
            magnitude += abs(c)
    value = step * total
    rad = step * magnitude * (k + 16) * ctx.ldexp(ctx.one, 8 - ctx.prec)
    return BigFloat(value, rad, ctx.dps)


@dataclass(frozen=True)
class CurveSpec:
    """y^2 = x^3 + a x + b, optionally a member of one of the twisted families."""

    a: int
    b: int
    family: int | None = None
    D: int | None = None
    conductor: int = 0
    conductor_heuristic: bool = False

    def __post_init__(self):
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")
        if self.conductor <= 0:
            raise ValueError("conductor must be a positive integer")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def base_model(self):
        return BASE_MODELS.get(self.family)


def curve(family: int, D) -> CurveSpec:
    """E_family(D). The conductor is family * D^2, exact when gcd(D, 6 family) = 1
    and flagged heuristic otherwise."""
    if family not in FAMILY_COEFFICIENTS:
        raise ValueError(f"family must be one of {sorted(FAMILY_COEFFICIENTS)}")
    disc = as_discriminant(D)
    if not disc.fundamental:
        raise ValueError(f"{disc.value} is not a fundamental discriminant")
    D = disc.value
    c1, c2 = FAMILY_COEFFICIENTS[family]
    return CurveSpec(
        a=c1 * D * D,
        b=c2 * D**3,
        family=family,
        D=D,
        conductor=family * D * D,
        conductor_heuristic=math.gcd(D, 6 * family) != 1,
    )


def _count_short(a: int, b: int, p: int) -> int:
    x = np.arange(p, dtype=np.int64)
    squares = np.bincount(x * x % p, minlength=p)
    rhs = ((x * x % p) * x + (a % p) * x + (b % p)) % p
    return int(squares[rhs].sum()) + 1


def _count_long(model, p: int) -> int:
    a1, a2, a3, a4, a6 = model
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n


def count_points(E: CurveSpec, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by counting on the reduction of the given model.

    On singular reduction the count includes the singular point, which gives
    1, -1 or 0 for split, non-split and additive reduction.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ValueError("the short Weierstrass model is only counted at p >= 5")
    if p > MAX_PRIME:
        raise ValueError(f"p > {MAX_PRIME} is outside the counting range")
    return p + 1 - _count_short(E.a, E.b, p)


def local_data(E: CurveSpec, p: int) -> tuple[int, int, bool]:
    """(a_p, eps(p), approximate) with eps(p) = 0 exactly when p divides the conductor.

    For p = 2, 3 the family curves use their minimal base model and the twist
    relation a_p(E_D) = chi_D(p) a_p(E). Without a base model those primes
    fall back to a_p = 0, eps = 0, marked approximate.
    """
    eps = 0 if E.conductor % p == 0 else 1
    if p >= 5:
        return count_points(E, p), eps, False
    if E.base_model is not None:
        if E.D % p == 0:
            return 0, 0, False
        ap = p + 1 - _count_long(E.base_model, p)
        return kronecker(E.D, p) * ap, eps, False
    if p == 3 and E.discriminant % 3 != 0:
        return p + 1 - _count_long((0, 0, 0, E.a, E.b), p), eps, False
    return 0, 0, True


def an_coefficients(E: CurveSpec, n_max: int) -> tuple[np.ndarray, dict, dict, bool]:
    """Dirichlet coefficients a_1..a_n_max (index 0 unused), extended from a_p by
    multiplicativity and the Hecke recursion at prime powers."""
    ap, eps = {}, {}
    approximate = False
    an = np.zeros(n_max + 1, dtype=np.int64)
    an[1] = 1
    for p in primes_up_to(n_max).tolist():
        a_p, e_p, approx = local_data(E, p)
        ap[p], eps[p] = a_p, e_p
        approximate |= approx
        # prime powers
        prev, cur, pk = 1, a_p, p
        while pk <= n_max:
            an[pk] = cur
            prev, cur = cur, a_p * cur - e_p * p * prev
            pk *= p
    # smallest prime factor sieve for the remaining composites
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(n_max)).tolist():
        block = spf[p * p :: p]
        block[block == 0] = p
    for n in range(2, n_max + 1):
        p = spf[n]
        if p == 0:
            continue
        m, pk = n, 1
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            an[n] = an[pk] * an[m]
    return an, ap, eps, approximate


@dataclass(frozen=True)
class LSeriesData:
    ap: dict
    epsilon: dict
    cutoff: int
    L1: BigFloat
    root_number_estimate: float
    conductor: int
    caveat: str = ""
    smoothed: dict = field(default_factory=dict)


def _caveat(E: CurveSpec, approximate: bool) -> str:
    notes = []
    if E.conductor_heuristic:
        notes.append("conductor family*D^2 is heuristic for this D")
    if approximate:
        notes.append("a_2/a_3 set to 0 (no minimal model at 2, 3)")
    if E.family is None:
        notes.append("conductor supplied by caller")
    else:
        notes.append("a_2, a_3 from the twisted minimal base model")
    return "; ".join(notes)


def l_value_at_1(E: CurveSpec, precision_target: float = 1e-8) -> LSeriesData:
    """L_E(1) from the exponentially smoothed series.

    With S(A) = sum a_n/n exp(-2 pi n A / sqrt N), the functional equation
    gives L(1) = S(A) + w S(1/A) for every A > 0. Evaluating at A = 1 and
    A = 1.2 determines both L(1) and the root number w.
    """
    if not 1e-14 <= precision_target < 1:
        raise ValueError("precision target must lie in [1e-14, 1)")
    N = E.conductor
    sqrt_n = math.sqrt(N)
    A0, A1 = SMOOTHING_POINTS
    decay = 2 * math.pi / (A1 * sqrt_n)
    # |a_n / n| <= d(n) / sqrt(n) <= 2
    goal = precision_target / 100
    cutoff = max(10, math.ceil(math.log(2 / (goal * -math.expm1(-decay))) / decay))
    if cutoff > MAX_PRIME:
        raise ValueError(f"conductor {N} needs {cutoff} terms, beyond the prime cap")
    an, ap, eps, approximate = an_coefficients(E, cutoff)
    n = np.arange(1, cutoff + 1, dtype=np.float64)
    weights = an[1:] / n

    def smoothed(A):
        terms = weights * np.exp(-2 * math.pi * n * A / sqrt_n)
        tail = 2 * math.exp(-2 * math.pi * (cutoff + 1) * A / sqrt_n) / -math.expm1(-2 * math.pi * A / sqrt_n)
        return float(terms.sum()), tail + 4e-16 * cutoff * float(np.abs(terms).sum())

    s1, e1 = smoothed(A0)
    s2, e2 = smoothed(A1)
    s3, e3 = smoothed(1 / A1)
    denom = s1 - s3
    values = {A0: s1, A1: s2, 1 / A1: s3}
    if abs(denom) < 1e-12:
        raise IllConditionedError(f"two-point system is singular (S(1) - S(1/A) = {denom:.3g})")
    w = (s2 - s1) / denom
    L = (1 + w) * s1
    dw = (e1 + e2) / abs(denom) + abs(s2 - s1) * (e1 + e3) / denom**2
    err = dw * abs(s1) + abs(1 + w) * e1
    data = LSeriesData(
        ap=ap,
        epsilon=eps,
        cutoff=cutoff,
        L1=BigFloat(L, err, 17),
        root_number_estimate=w,
        conductor=N,
        caveat=_caveat(E, approximate),
        smoothed=values,
    )
    if abs(abs(w) - 1) > 0.25:
        raise IllConditionedError(
            f"root number estimate {w:.4f} is far from +-1; conductor or bad-prime model is off", data
        )
    return data


@dataclass(frozen=True)
class SelmerIndicator:
    p: int
    D: int
    applicable: bool
    reason: str = ""
    a: int | None = None
    weighted_term: int | None = None
    a_mod_p: int | None = None
    term_mod_p: int | None = None
    congruent: bool | None = None
    label: str = BSD_LABEL
    curve: CurveSpec | None = None
    l_value: LSeriesData | None = None
    l_value_note: str = ""

    @property
    def prediction(self) -> str:
        if not self.applicable:
            return ""
        state = "non-trivial" if self.congruent else "trivial"
        return f"predicted Sel_{self.p} {state} ({self.label})"

    @property
    def summary(self) -> str:
        if not self.applicable:
            return f"not applicable: {self.reason}"
        verdict = "congruent" if self.congruent else "not congruent"
        return f"{verdict}; {self.prediction}"


def selmer_indicator(p: int, D, with_l_value: bool = True) -> SelmerIndicator:
    """Compare a(D) with -24 h(D) modulo p for p in {11, 19}.

    Congruence predicts a non-trivial p-Selmer group of E_p(D), assuming the
    strong form of BSD. Discriminants that are squares mod p are reported as
    not applicable.
    """
    if p not in (11, 19):
        raise ValueError("the indicator is defined for p = 11 and p = 19")
    disc = as_discriminant(D)
    if not disc.fundamental:
        raise ValueError(f"{disc.value} is not a fundamental discriminant")
    D = disc.value
    if is_square_mod(D, p):
        return SelmerIndicator(p=p, D=D, applicable=False, reason=f"{D} is a square mod {p}")
    a = trace(D).a
    t = weighted_class_term(D)
    E = curve(p, D)
    l_value, note = None, ""
    if with_l_value:
        try:
            l_value = l_value_at_1(E)
        except IllConditionedError as exc:
            l_value, note = exc.data, str(exc)
        if l_value is not None and not note:
            note = l_value.caveat
    return SelmerIndicator(
        p=p,
        D=D,
        applicable=True,
        a=a,
        weighted_term=t,
        a_mod_p=a % p,
        term_mod_p=t % p,
        congruent=(a - t) % p == 0,
        curve=E,
        l_value=l_value,
        l_value_note=note,
    )
