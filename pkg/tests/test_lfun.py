import math
import random

import pytest

from oracles import oracle_point_count
from onan_moonshine.arith import context, is_fundamental, kronecker, primes_up_to
from onan_moonshine.lfun import (
    BASE_MODELS,
    BSD_LABEL,
    FAMILY_COEFFICIENTS,
    CurveSpec,
    IllConditionedError,
    an_coefficients,
    count_points,
    curve,
    dirichlet_L1,
    l_value_at_1,
    local_data,
    selmer_indicator,
)
from onan_moonshine.qforms import class_number


@pytest.mark.parametrize("D, h", [(-7, 1), (-20, 2), (-8, 1), (-23, 3), (-163, 1)])
def test_dirichlet_L1_examples(D, h):
    ctx = context(40)
    L = dirichlet_L1(D, 30)
    assert L.contains(h * ctx.pi / ctx.sqrt(-D))
    assert float(L.rad) < 1e-28


def test_dirichlet_L1_against_slow_series():
    # Cesaro mean of the partial sums of sum chi(n)/n over whole periods
    for D in (-15, -24, -31):
        k = -D
        s, total = 0.0, []
        for n in range(1, 200 * k + 1):
            s += kronecker(D, n) / n
            if n % k == 0:
                total.append(s)
        assert abs(sum(total[-k:]) / k - float(dirichlet_L1(D))) < 1e-3


def test_dirichlet_L1_closure_small_range():
    for D in range(-5, -400, -1):
        if is_fundamental(D):
            L = dirichlet_L1(D, 20)
            h = float(L) * math.sqrt(-D) / math.pi
            assert abs(h - class_number(D)) < 1e-10


def test_dirichlet_L1_rejects():
    for bad in (-3, -4, -12, -5):
        with pytest.raises(ValueError):
            dirichlet_L1(bad)


def test_curve_examples():
    E = curve(14, -15)
    assert (E.a, E.b) == (5805 * 225, -285714 * -3375)
    assert E.conductor == 14 * 225 and E.conductor_heuristic
    E = curve(11, -3)
    assert (E.a, E.b) == (-13392 * 9, -1080432 * -27)
    E = curve(15, -15)
    assert (E.a, E.b) == (-12987 * 225, -263466 * -3375)
    E = curve(19, -7)
    assert E.conductor == 19 * 49 and not E.conductor_heuristic


def test_curve_rejects():
    with pytest.raises(ValueError):
        curve(15, -14)  # -14 is 2 mod 4, not a discriminant
    with pytest.raises(ValueError):
        curve(13, -7)
    with pytest.raises(ValueError):
        curve(11, -12)
    with pytest.raises(ValueError):
        CurveSpec(0, 0, conductor=1)
    with pytest.raises(ValueError):
        CurveSpec(1, 1, conductor=0)


def _c4_c6(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return c4, c6


@pytest.mark.parametrize("family", sorted(FAMILY_COEFFICIENTS))
def test_family_is_twist_of_base_model(family):
    c4, c6 = _c4_c6(*BASE_MODELS[family])
    assert FAMILY_COEFFICIENTS[family] == (-27 * c4, -54 * c6)


@pytest.mark.parametrize("a, b, p, ap", [(1, 1, 5, -3), (-1, 0, 5, -2), (0, 1, 7, -4), (-1, 0, 13, 6)])
def test_count_points_examples(a, b, p, ap):
    assert count_points(CurveSpec(a, b, conductor=1), p) == ap


def test_count_points_against_oracle():
    rng = random.Random(7)
    primes = primes_up_to(300).tolist()[2:]
    for _ in range(60):
        p = rng.choice(primes)
        a, b = rng.randrange(-50, 50), rng.randrange(-50, 50)
        if (4 * a ** 3 + 27 * b ** 2) % p == 0:
            continue
        assert count_points(CurveSpec(a, b, conductor=1), p) == p + 1 - oracle_point_count(a, b, p)


def test_count_points_rejects():
    E = CurveSpec(1, 1, conductor=1)
    for p in (2, 3, 9, 100003):
        with pytest.raises(ValueError):
            count_points(E, p)


@pytest.mark.parametrize("family", sorted(FAMILY_COEFFICIENTS))
def test_base_model_a_p_agrees_with_family_at_good_primes(family):
    # the twist by D = -7 of the base curve has a_p = chi(p) a_p(base)
    E = curve(family, -7)
    base = CurveSpec(*FAMILY_COEFFICIENTS[family], conductor=family)
    for p in primes_up_to(200).tolist()[2:]:
        if (family * 7) % p:
            assert local_data(E, p)[0] == (1 if pow(-7 % p, (p - 1) // 2, p) == 1 else -1) * count_points(base, p)


def test_hasse_bound_and_multiplicativity():
    for family in FAMILY_COEFFICIENTS:
        E = curve(family, -23)
        an, ap, eps, approx = an_coefficients(E, 2000)
        assert not approx
        for p, a in ap.items():
            assert abs(a) <= 2 * math.sqrt(p)
        assert an[6] == an[2] * an[3]
        assert an[35] == an[5] * an[7]
        assert an[4] == ap[2] ** 2 - eps[2] * 2


def test_twisted_a_2_a_3():
    E = curve(14, -15)
    assert local_data(E, 2) == (-1, 0, False)
    assert local_data(E, 3) == (0, 0, False)
    assert local_data(E, 5) == (0, 0, False)


def test_L1_of_conductor_32():
    # y^2 = x^3 - x: L(1) is a quarter of the real period Gamma(1/4)^2 / (2 sqrt(2 pi))
    ctx = context(30)
    expected = ctx.gamma(ctx.mpf(1) / 4) ** 2 / (2 * ctx.sqrt(2 * ctx.pi)) / 4
    data = l_value_at_1(CurveSpec(-1, 0, conductor=32))
    assert abs(float(data.L1) - float(expected)) < 1e-7
    assert abs(data.root_number_estimate - 1) < 1e-6
    tighter = l_value_at_1(CurveSpec(-1, 0, conductor=32), 1e-12)
    assert tighter.cutoff > data.cutoff
    assert abs(float(tighter.L1) - float(data.L1)) < 1e-8


def test_root_numbers_are_signs():
    for family in FAMILY_COEFFICIENTS:
        for D in range(-5, -51, -1):
            if not is_fundamental(D) or math.gcd(D, 6 * family) != 1:
                continue
            data = l_value_at_1(curve(family, D), 1e-6)
            assert abs(abs(data.root_number_estimate) - 1) < 1e-3, (family, D)


def test_wrong_conductor_is_ill_conditioned():
    with pytest.raises(IllConditionedError) as info:
        l_value_at_1(CurveSpec(-1, 0, conductor=200))
    assert info.value.data is not None


def test_indicator_11_minus_3():
    ind = selmer_indicator(11, -3, with_l_value=False)
    assert ind.applicable
    assert (ind.a, ind.weighted_term) == (26752, -8)
    assert (ind.a_mod_p, ind.term_mod_p) == (0, 3)
    assert not ind.congruent
    assert ind.summary == f"not congruent; predicted Sel_11 trivial ({BSD_LABEL})"


def test_indicator_19_minus_4():
    ind = selmer_indicator(19, -4, with_l_value=False)
    assert (ind.a_mod_p, ind.term_mod_p) == (143376 % 19, -12 % 19) == (2, 7)
    assert not ind.congruent


def test_indicator_not_applicable():
    ind = selmer_indicator(11, -7)
    assert not ind.applicable
    assert ind.summary == "not applicable: -7 is a square mod 11"


def test_indicator_with_l_value():
    ind = selmer_indicator(19, -7)
    assert ind.l_value is not None
    assert abs(abs(ind.l_value.root_number_estimate) - 1) < 1e-3


def test_indicator_rejects():
    with pytest.raises(ValueError):
        selmer_indicator(14, -7)
    with pytest.raises(ValueError):
        selmer_indicator(11, -12)


def test_odd_root_number_forces_vanishing():
    target = 1e-8
    for family, D in [(11, -7), (11, -19), (14, -11), (15, -7), (19, -31)]:
        data = l_value_at_1(curve(family, D), target)
        assert -1.05 <= data.root_number_estimate <= -0.95
        assert abs(float(data.L1)) < 10 * target
