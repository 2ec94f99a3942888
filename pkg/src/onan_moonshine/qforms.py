"""Positive definite binary quadratic forms Ax^2 + Bxy + Cy^2.

Forms act on the right: ``Q . M`` is the form ``Q(M (x, y))``. Reduction
tracks the accumulated matrix so that level-p orbits can be canonicalised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .arith import as_discriminant, context, is_prime

__all__ = [
    "CMPoint",
    "QuadraticForm",
    "act",
    "class_number",
    "class_representatives",
    "cm_point",
    "gamma0_canonical",
    "gamma0_class_number",
    "gamma0_coset_representatives",
    "is_reduced",
    "reduce",
    "reduce_with_matrix",
    "weight",
]

Matrix = tuple  # ((a, b), (c, d)), integer entries, determinant 1


class QuadraticForm(NamedTuple):
    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def __call__(self, x, y):
        return self.A * x * x + self.B * x * y + self.C * y * y

    def __str__(self):
        return f"({self.A}, {self.B}, {self.C})"


def _check_definite(Q) -> QuadraticForm:
    Q = QuadraticForm(*Q)
    if Q.discriminant >= 0:
        raise ValueError(f"form {Q} has non-negative discriminant {Q.discriminant}")
    if Q.A <= 0:
        raise ValueError(f"form {Q} is not positive definite (A <= 0)")
    return Q


def act(Q, M: Matrix) -> QuadraticForm:
    """The form ``(x, y) -> Q(a x + b y, c x + d y)`` for ``M = ((a, b), (c, d))``."""
    A, B, C = Q
    (a, b), (c, d) = M
    return QuadraticForm(
        A * a * a + B * a * c + C * c * c,
        2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
        A * b * b + B * b * d + C * d * d,
    )


def _matmul(M, N) -> Matrix:
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def is_reduced(Q) -> bool:
    A, B, C = Q
    if not (abs(B) <= A <= C):
        return False
    if B < 0 and (-B == A or A == C):
        return False
    return True


def reduce_with_matrix(Q) -> tuple[QuadraticForm, Matrix]:
    """Reduced form ``R`` and ``M`` in SL2(Z) with ``act(Q, M) == R``."""
    A, B, C = _check_definite(Q)
    M = ((1, 0), (0, 1))
    while True:
        # translate B into (-A, A]
        k = (A - B) // (2 * A)
        if k:
            B, C = B + 2 * A * k, A * k * k + B * k + C
            M = _matmul(M, ((1, k), (0, 1)))
        if A > C or (A == C and B < 0):
            A, B, C = C, -B, A
            M = _matmul(M, ((0, -1), (1, 0)))
            continue
        return QuadraticForm(A, B, C), M


def reduce(Q) -> QuadraticForm:
    """Unique reduced representative of the SL2(Z)-class of ``Q``."""
    return reduce_with_matrix(Q)[0]


def class_representatives(D) -> list[QuadraticForm]:
    """All reduced forms of discriminant ``D`` (imprimitive ones included),
    ordered by A then B."""
    D = as_discriminant(D).value
    forms = []
    for A in range(1, math.isqrt(-D // 3) + 1):
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (B < 0 and A == C):
                continue
            forms.append(QuadraticForm(A, B, C))
    return forms


def class_number(D) -> int:
    disc = as_discriminant(D)
    if not disc.fundamental:
        raise ValueError(
            f"class_number needs a fundamental discriminant; {disc.value} is not "
            "(use class_representatives for the reduced forms)"
        )
    return len(class_representatives(disc))


def weight(Q) -> int:
    """Order of the stabiliser of ``Q`` in SL2(Z): 6, 4 or 2."""
    A, B, C = reduce(Q)
    if A == B == C:
        return 6
    if B == 0 and A == C:
        return 4
    return 2


@dataclass(frozen=True)
class CMPoint:
    """The root ``real + i sqrt(radicand) / denom`` of ``Q(z, 1) = 0``."""

    real: Fraction
    radicand: int
    denom: int

    @property
    def imag_squared(self) -> Fraction:
        return Fraction(self.radicand, self.denom * self.denom)

    def imag(self, dps: int = 30):
        ctx = context(dps)
        return ctx.sqrt(self.radicand) / self.denom

    def value(self, dps: int = 30):
        ctx = context(dps)
        return ctx.mpc(ctx.mpf(self.real.numerator) / self.real.denominator, self.imag(dps))

    def __complex__(self):
        return complex(float(self.real), math.sqrt(self.radicand) / self.denom)


def cm_point(Q) -> CMPoint:
    A, B, C = _check_definite(Q)
    return CMPoint(Fraction(-B, 2 * A), -(B * B - 4 * A * C), 2 * A)


# ---------------------------------------------------------------------------
# Level p: orbits under Gamma_0(p) = {((a, b), (c, d)) : p | c}
# ---------------------------------------------------------------------------


def _stabilizer(R: QuadraticForm) -> list[Matrix]:
    A, B, C = R
    identity = ((1, 0), (0, 1))
    if A == B == C:
        g = ((0, -1), (1, 1))
    elif B == 0 and A == C:
        g = ((0, -1), (1, 0))
    else:
        g = ((-1, 0), (0, -1))
    group, power = [identity], g
    while power != identity:
        group.append(power)
        power = _matmul(power, g)
    return group


def _projective(x: int, y: int, p: int) -> tuple[int, int]:
    x, y = x % p, y % p
    if y:
        return (x * pow(y, -1, p) % p, 1)
    return (1, 0)


def gamma0_coset_representatives(p: int) -> list[Matrix]:
    """p + 1 matrices g with the cosets g Gamma_0(p) covering SL2(Z)."""
    return [((1, 0), (0, 1))] + [((k, -1), (1, 0)) for k in range(p)]


def gamma0_canonical(Q, p: int) -> tuple[QuadraticForm, tuple[int, int]]:
    """Canonical key of the Gamma_0(p)-orbit of ``Q``.

    Writing ``Q = R . g`` with ``R`` reduced, the orbit is determined by ``R``
    together with the point ``g (1:0)`` of P^1(F_p) up to the stabiliser of
    ``R``.
    """
    R, M = reduce_with_matrix(Q)
    (a, b), (c, d) = M
    col = (d, -c)  # first column of M^-1
    best = min(
        _projective(s00 * col[0] + s01 * col[1], s10 * col[0] + s11 * col[1], p)
        for (s00, s01), (s10, s11) in _stabilizer(R)
    )
    return R, best


def gamma0_class_number(D, p: int) -> int:
    """Number of Gamma_0(p)-orbits of positive definite forms of discriminant D.

    All forms are counted, primitive or not, each orbit once.
    """
    disc = as_discriminant(D)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    keys = set()
    for R in class_representatives(disc):
        for g in gamma0_coset_representatives(p):
            keys.add(gamma0_canonical(act(R, g), p))
    return len(keys)
