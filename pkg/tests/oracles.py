"""Slow brute-force oracles, deliberately unlike the library code paths."""

import math
from itertools import product


def oracle_class_count(D):
    """Count reduced forms of discriminant D, looping over B first."""
    bound = math.isqrt(-D // 3)
    count = 0
    for B in range(-bound, bound + 1):
        for A in range(max(abs(B), 1), bound + 1):
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A:
                continue
            # boundary cases keep B >= 0
            if B < 0 and (A == -B or A == C):
                continue
            count += 1
    return count


def oracle_point_count(a, b, p):
    """#E(F_p) for y^2 = x^3 + ax + b by a full double loop, plus infinity."""
    assert p <= 2000
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y - x * x * x - a * x - b) % p == 0:
                n += 1
    return n


def _gamma0_generators(p):
    gens = []
    rng = range(-p, p + 1)
    for a, b, d in product(rng, rng, rng):
        for c in range(-p, p + 1, p):
            if a * d - b * c == 1:
                gens.append(((a, b), (c, d)))
    return gens


def _forms_up_to(D, radius):
    forms = set()
    for A in range(1, radius + 1):
        top = math.isqrt(4 * A * radius + D)
        for B in range(-top, top + 1):
            num = B * B - D
            if num % (4 * A) == 0 and 1 <= num // (4 * A) <= radius:
                forms.add((A, B, num // (4 * A)))
    return forms


def _apply(Q, M):
    A, B, C = Q
    (a, b), (c, d) = M
    return (
        A * a * a + B * a * c + C * c * c,
        2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
        A * b * b + B * b * d + C * d * d,
    )


def _core_radius(D, p):
    # every Gamma_0(p)-orbit has a member with A, C at most this size
    return (p + 1) ** 2 * (-D + 3) // 4 + 1


def oracle_gamma0_orbits(D, p, radius):
    """Connected components of the graph of forms with A, C <= radius, joined
    by single Gamma_0(p) generators, that contain a small core form."""
    forms = _forms_up_to(D, radius)
    parent = {Q: Q for Q in forms}

    def find(Q):
        while parent[Q] != Q:
            parent[Q] = parent[parent[Q]]
            Q = parent[Q]
        return Q

    for Q in forms:
        for g in _gamma0_generators(p):
            R = _apply(Q, g)
            if R in parent:
                ra, rb = find(Q), find(R)
                if ra != rb:
                    parent[ra] = rb
    core = _core_radius(D, p)
    return len({find(Q) for Q in forms if Q[0] <= core and Q[2] <= core})


def stable_gamma0_orbits(D, p, radius=50, max_radius=3200):
    """oracle_gamma0_orbits with the radius doubled until the count repeats."""
    radius = max(radius, 2 * _core_radius(D, p))
    last = oracle_gamma0_orbits(D, p, radius)
    while radius < max_radius:
        radius *= 2
        count = oracle_gamma0_orbits(D, p, radius)
        if count == last:
            return count
        last = count
    raise RuntimeError(f"orbit count for D={D}, p={p} did not stabilise")
