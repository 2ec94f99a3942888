"""Dimensions a(D) of the O'Nan moonshine module as traces of singular moduli.

    a(D) = sum over classes Q of discriminant D of J_onan(z_Q) / w_Q

The sum is formed as ``sum (12 / w_Q) J_onan(z_Q)`` so that every term has an
integer multiplier, then rounded to the nearest integer and certified.
"""

from __future__ import annotations

import math
from functools import reduce as _fold
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .arith import BigFloat, Discriminant, as_discriminant, is_discriminant
from .modfun import J_onan, evaluate_J
from .qforms import class_number, class_representatives, cm_point, weight

__all__ = [
    "CERTIFICATION_THRESHOLD",
    "CertificationError",
    "MAX_RETRIES",
    "TraceError",
    "TraceResult",
    "default_precision",
    "discriminants_in_range",
    "trace",
    "trace_table",
    "trace_tagged",
    "weighted_class_term",
]

CERTIFICATION_THRESHOLD = 0.25
MAX_RETRIES = 3
WEIGHT_LCM = 12


class CertificationError(ArithmeticError):
    pass


class TraceError(RuntimeError):
    def __init__(self, D: int, cause: Exception):
        super().__init__(f"trace failed for D={D}: {cause}")
        self.D = D
        self.cause = cause


@dataclass(frozen=True)
class TraceResult:
    D: Discriminant
    a: int
    raw: BigFloat
    residual: float
    class_count: int
    precision: int
    attempts: int
    imprimitive_count: int = 0


def default_precision(D: int) -> int:
    """Digits needed so that the largest term, of size about exp(2 pi sqrt|D|),
    still carries 40 digits after the decimal point."""
    return math.ceil(2 * math.pi * math.sqrt(abs(int(D))) / math.log(10)) + 40


def _weighted_sum(forms, precision: int) -> BigFloat:
    total = BigFloat.exact(0, precision)
    for Q in forms:
        value = J_onan(evaluate_J(cm_point(Q), precision))
        total = total + (WEIGHT_LCM // weight(Q)) * value
    return total


def trace(D, precision: int | None = None) -> TraceResult:
    """Certified a(D) for a negative discriminant ``D``.

    On a failed certification the precision is doubled, at most
    ``MAX_RETRIES`` times, before `CertificationError` is raised.
    """
    disc = as_discriminant(D)
    forms = class_representatives(disc)
    precision = precision or default_precision(disc.value)
    for attempt in range(1, MAX_RETRIES + 2):
        total = _weighted_sum(forms, precision)
        ctx = total.ctx
        n = int(ctx.nint(ctx.re(total.mid)))
        distance = abs(total.mid - n)
        if distance + total.rad < CERTIFICATION_THRESHOLD and n % WEIGHT_LCM == 0:
            return TraceResult(
                D=disc,
                a=n // WEIGHT_LCM,
                raw=total / WEIGHT_LCM,
                residual=float(distance) / WEIGHT_LCM,
                class_count=len(forms),
                precision=precision,
                attempts=attempt,
                imprimitive_count=sum(_fold(math.gcd, Q) > 1 for Q in forms),
            )
        precision *= 2
    raise CertificationError(
        f"could not certify a({disc.value}) after {MAX_RETRIES} precision doublings"
    )


def weighted_class_term(D) -> int:
    """-24 h(D), with the weight-corrected values -8 at D = -3 and -12 at D = -4."""
    disc = as_discriminant(D)
    h = class_number(disc)
    return {-3: -8, -4: -12}.get(disc.value, -24 * h)


def discriminants_in_range(D_min: int, D_max: int) -> list[int]:
    """Valid discriminants in [D_min, D_max], descending."""
    D_min, D_max = int(D_min), int(D_max)
    if not D_min <= D_max < 0:
        raise ValueError(f"need D_min <= D_max < 0, got [{D_min}, {D_max}]")
    return [D for D in range(D_max, D_min - 1, -1) if is_discriminant(D)]


def trace_tagged(D: int) -> TraceResult:
    """`trace`, with any failure re-raised as `TraceError` naming D."""
    try:
        return trace(D)
    except Exception as exc:  # noqa: BLE001 - re-raised with the discriminant attached
        raise TraceError(D, exc) from exc


def trace_table(D_min, D_max, workers: int = 1) -> list[TraceResult]:
    """`trace` for every discriminant in range, ordered by descending D."""
    Ds = discriminants_in_range(int(D_min), int(D_max))
    if workers <= 1:
        return [trace_tagged(D) for D in Ds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(trace_tagged, Ds, chunksize=8))
