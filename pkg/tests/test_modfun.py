import csv
from fractions import Fraction

import pytest

from onan_moonshine.arith import BigFloat, context
from onan_moonshine.modfun import (
    ONAN_SHIFT,
    PowerSeries,
    PrecisionError,
    J_onan,
    delta_series,
    eisenstein_series,
    evaluate_J,
    j_coefficients,
    theta,
    write_coefficients_csv,
)
from onan_moonshine.qforms import class_representatives, cm_point

GOLDEN = {-1: 1, 0: 0, 1: 196884, 2: 21493760, 3: 864299970, 4: 20245856256, 5: 333202640600}


def test_golden_coefficients():
    j = j_coefficients(5)
    for n, c in GOLDEN.items():
        assert j[n] == c


def test_coefficients_by_second_route():
    # j (E4^3 - E6^2) = 1728 E4^3, an identity among integer series
    N = 120
    E4, E6 = eisenstein_series(4, N), eisenstein_series(6, N)
    cube = E4 ** 3
    j = j_coefficients(N) + 744
    lhs = j * (cube - E6 ** 2)
    rhs = cube * 1728
    for n in range(lhs.order):
        assert lhs[n] == rhs[n], n


def test_delta_is_ramanujan_tau():
    tau = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643]
    d = delta_series(10)
    assert [d[n] for n in range(1, 10)] == tau


def test_power_series_ops():
    x = PowerSeries.from_coefficients([1, 1], 0, 8)  # 1 + q
    inv = x.inverse()
    assert [inv[n] for n in range(8)] == [1, -1, 1, -1, 1, -1, 1, -1]
    assert [(x ** 3)[n] for n in range(5)] == [1, 3, 3, 1, 0]
    assert [(x ** -2)[n] for n in range(4)] == [1, -2, 3, -4]
    assert (x ** 0)[0] == 1
    y = x.shift(-1)
    assert y[-1] == 1 and y[0] == 1 and y.order == 7
    assert ((x * x) - (x ** 2))[3] == 0
    with pytest.raises(IndexError):
        x[8]
    with pytest.raises(ValueError):
        PowerSeries.from_coefficients([2, 1], 0, 4).inverse()


def test_csv_export(tmp_path):
    path = write_coefficients_csv(tmp_path / "c.csv", 10)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "c(n)"]
    assert rows[1] == ["-1", "1"]
    assert rows[2] == ["0", "0"]
    assert rows[3] == ["1", "196884"]
    assert len(rows) == 13


@pytest.mark.parametrize("Q, value", [((1, 0, 1), 984), ((1, 1, 1), -744), ((1, 0, 7), None), ((1, 1, 2), -4119)])
def test_evaluate_J_examples(Q, value):
    J = evaluate_J(cm_point(Q), 40)
    if value is None:
        # j(sqrt(-7)) = 255^3
        value = 255 ** 3 - 744
    assert J.contains(value)
    assert float(J.rad) < 1e-30


def test_J_rejects_points_below_fundamental_domain():
    with pytest.raises(ValueError):
        evaluate_J(cm_point((2, 0, 1)), 30)


def test_J_precision_limit():
    with pytest.raises(PrecisionError):
        evaluate_J(cm_point((1, 1, 1)), 12000)


def test_tail_bound_is_sound():
    # low-precision balls must contain the high-precision value
    for D in (-3, -4, -7, -23, -71, -163, -499, -1000):
        for Q in class_representatives(D):
            low = evaluate_J(cm_point(Q), 8)
            high = evaluate_J(cm_point(Q), 60)
            assert low.contains(high.mid), (D, Q)
            assert low.overlaps(high)


def _class_polynomial(D, dps):
    # elementary symmetric functions of j over the reduced forms
    coeffs = [BigFloat.exact(1, dps)]
    for Q in class_representatives(D):
        j = evaluate_J(cm_point(Q), dps) + 744
        new = [BigFloat.exact(0, dps)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] = new[i] + c
            new[i + 1] = new[i + 1] - c * j
        coeffs = new
    return coeffs


def test_class_polynomials_are_integral():
    for D in range(-3, -101, -1):
        if D % 4 not in (0, 1):
            continue
        dps = 40 + 3 * len(class_representatives(D))
        for c in _class_polynomial(D, dps):
            ctx = c.ctx
            assert abs(ctx.im(c.mid)) + c.rad < 1e-10, D
            n = c.nearest_integer()
            assert abs(ctx.re(c.mid) - n) + c.rad < 1e-10, D


def test_J_onan_examples():
    assert J_onan(984).contains(573504)
    assert J_onan(-744).contains(744 ** 2 + 744 - ONAN_SHIFT)
    assert J_onan(-4119).contains(16576512)
    assert J_onan(BigFloat.exact(0)).contains(-393768)


def test_theta_at_one():
    ctx = context(50)
    exact = ctx.power(ctx.pi, ctx.mpf(1) / 4) / ctx.gamma(ctx.mpf(3) / 4)
    value = theta(1, 40)
    assert value.contains(exact)
    assert float(value.rad) < 1e-38
    assert abs(float(value) - 1.0864348112133080146) < 1e-15


@pytest.mark.parametrize("v", [Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(3), Fraction(15, 2), Fraction(1, 50)])
def test_theta_functional_equation(v):
    ctx = context(40)
    lhs = theta(1 / v, 40)
    rhs = theta(v, 40) * BigFloat(ctx.sqrt(ctx.mpf(v.numerator) / v.denominator), ctx.ldexp(1, 4 - ctx.prec), 40)
    assert abs(lhs.mid - rhs.mid) < 1e-30
    assert lhs.overlaps(rhs)


def test_theta_large_v_is_one_plus_tiny():
    ctx = context(80)
    value = theta(50, 30)
    assert value.contains(1 + 2 * ctx.exp(-50 * ctx.pi))
    assert float(value.rad) < 1e-28


def test_theta_rejects_small_v():
    with pytest.raises(ValueError):
        theta(Fraction(1, 2000), 30)
