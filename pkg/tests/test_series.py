import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grunsky_lab.series import (
    BivariateSeries,
    BranchError,
    CompositionError,
    OrderMismatchError,
    ReversionError,
    SeriesError,
    TruncatedSeries as T,
    arith,
    bivariate_ops,
    compose,
    revert,
)

from conftest import complex_coeffs, normalized_series


def geometric(n):
    return T(np.ones(n + 1))


def test_mul_binomial():
    s = T([1, 1, 0, 0, 0])
    assert np.allclose((s * s).coeffs, [1, 2, 1, 0, 0])


def test_mul_zero_annihilates(koebe):
    assert np.all((koebe * T.zeros(12)).coeffs == 0)


def test_geometric_times_one_minus_z():
    # hand convolution at N = 4: (1+z+z^2+z^3+z^4)(1-z) = 1 - z^5 -> 1
    out = arith(geometric(4), T([1, -1, 0, 0, 0]), "mul")
    assert np.allclose(out.coeffs, [1, 0, 0, 0, 0])


def test_add_sub_scale():
    a, b = T([1, 2, 3]), T([0, 1j, 1])
    assert np.allclose(arith(a, b, "add").coeffs, [1, 2 + 1j, 4])
    assert np.allclose(arith(a, b, "sub").coeffs, [1, 2 - 1j, 2])
    assert np.allclose(arith(a, 2j, "scale").coeffs, [2j, 4j, 6j])
    with pytest.raises(SeriesError):
        arith(a, b, "pow")


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        T([1, 2]) * T([1, 2, 3])
    with pytest.raises(OrderMismatchError):
        arith(T([1, 2]), T([1, 2, 3]), "add")


def test_series_is_immutable(koebe):
    with pytest.raises(ValueError):
        koebe.coeffs[2] = 7


def test_compose_identity(koebe):
    assert koebe.compose(T.monomial(12, 1)).allclose(koebe)


def test_compose_koebe_with_z_squared():
    out = compose(T([0] + list(range(1, 7))), T.monomial(13, 2))
    expected = np.zeros(14)
    expected[2::2] = range(1, 7)
    assert out.order == 13
    assert np.allclose(out.coeffs, expected)


def test_compose_manual_expansion():
    p = T([0, 1, 1, 0, 0])
    # (z + z^2) + (z + z^2)^2 = z + 2z^2 + 2z^3 + z^4
    assert np.allclose(compose(p, p).coeffs, [0, 1, 2, 2, 1])


def test_compose_rejects_constant_inner():
    with pytest.raises(CompositionError):
        compose(T([0, 1, 0]), T([1, 1, 0]))


def test_log_unit_of_one():
    assert np.all(T([1, 0, 0, 0]).log_unit().coeffs == 0)


def test_log_unit_mercator():
    L = geometric(8).log_unit()
    expected = [0] + [1 / n for n in range(1, 9)]
    assert np.allclose(L.coeffs, expected, atol=1e-14)


def test_log_unit_koebe_over_z(koebe):
    gam = koebe.shift_down(1).log_unit().coeffs / 2
    assert np.allclose(gam[1:], [1 / n for n in range(1, 12)], atol=1e-13)


def test_log_unit_branch_error():
    with pytest.raises(BranchError):
        T([2, 1, 0]).log_unit()


def test_sqrt_perfect_square():
    assert np.allclose(T([1, 2, 1, 0, 0]).sqrt_unit().coeffs, [1, 1, 0, 0, 0])


def test_sqrt_of_koebe_z_squared_gives_odd_koebe():
    k_z2 = compose(T([0] + list(range(1, 8))), T.monomial(15, 2)).shift_down(2)
    r = k_z2.sqrt_unit()
    expected = [1 if k % 2 == 0 else 0 for k in range(14)]
    assert np.allclose(r.coeffs, expected, atol=1e-13)


def test_sqrt_round_trip():
    s = T([1, 1, 0, 0, 0, 0, 0])
    r = s.sqrt_unit()
    assert (r * r).allclose(s, atol=1e-14)


def test_sqrt_branch_error():
    with pytest.raises(BranchError):
        T([0, 1, 0]).sqrt_unit()


def test_revert_identity():
    assert revert(T.monomial(9, 1)).allclose(T.monomial(9, 1))


def test_revert_koebe_catalan(koebe):
    from math import factorial

    g = revert(koebe)
    closed = [(-1) ** (n + 1) * factorial(2 * n) / (factorial(n + 1) * factorial(n)) for n in range(2, 13)]
    assert np.allclose(g.coeffs[:5], [0, 1, -2, 5, -14])
    assert g[5] == pytest.approx(42)
    assert np.allclose(g.coeffs[2:], closed, rtol=1e-13)


def test_revert_requires_normalized():
    with pytest.raises(ReversionError):
        revert(T([0, 2, 1]))


def test_reciprocal_and_division():
    s = T([2, 1, 0, 0])
    assert (s * s.reciprocal()).allclose(T([1, 0, 0, 0]))
    assert (s / s).allclose(T([1, 0, 0, 0]))


def test_json_round_trip(koebe):
    back = T.from_json(koebe.to_json())
    assert back == koebe
    obj = koebe.to_json_obj()
    assert obj["order"] == 12 and obj["coeffs"][3] == [3.0, 0.0]


@pytest.mark.parametrize(
    "text",
    ["not json", '{"order": 2, "coeffs": [[0, 0], [1, 0]]}', '{"coeffs": []}', '{"order": 1, "coeffs": [[0], [1, 0]]}'],
)
def test_json_rejects_malformed(text):
    with pytest.raises(SeriesError):
        T.from_json(text)


# bivariate


def test_bivariate_mul_distributive():
    a = np.zeros((3, 3)); a[0, 0] = a[1, 0] = 1  # 1 + t
    b = np.zeros((3, 3)); b[0, 0] = b[0, 1] = 1  # 1 + z
    out = bivariate_ops(BivariateSeries(a), BivariateSeries(b), "mul").coeffs
    expected = np.zeros((3, 3)); expected[0, 0] = expected[1, 0] = expected[0, 1] = expected[1, 1] = 1
    assert np.allclose(out, expected)


def test_bivariate_log_one_minus_tz():
    n = 8
    d = np.zeros((n + 1, n + 1)); d[0, 0] = 1; d[1, 1] = -1
    L = bivariate_ops(BivariateSeries(d), None, "log_unit").coeffs
    expected = np.zeros_like(L)
    for k in range(1, n + 1):
        expected[k, k] = -1 / k
    assert np.allclose(L, expected, atol=1e-14)


def test_bivariate_log_of_one():
    assert np.all(BivariateSeries(np.eye(1)).log_unit().coeffs == 0)
    d = np.zeros((4, 4)); d[0, 0] = 1
    assert np.all(BivariateSeries(d).log_unit().coeffs == 0)


def test_bivariate_log_branch_error():
    with pytest.raises(BranchError):
        BivariateSeries(np.full((2, 2), 2.0)).log_unit()


def test_bivariate_log_matches_sympy():
    sympy = pytest.importorskip("sympy")
    t, z = sympy.symbols("t z")
    expr = 1 + t / 3 - z / 5 + t * z / 2 + t**2 / 7
    n = 4
    ser = sympy.series(sympy.series(sympy.log(expr), t, 0, n + 1).removeO(), z, 0, n + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser), t, z)
    d = np.zeros((n + 1, n + 1)); d[0, 0] = 1; d[1, 0] = 1 / 3; d[0, 1] = -1 / 5; d[1, 1] = 0.5; d[2, 0] = 1 / 7
    L = BivariateSeries(d).log_unit().coeffs
    for i in range(n + 1):
        for j in range(n + 1):
            assert L[i, j] == pytest.approx(float(poly.coeff_monomial(t**i * z**j)), abs=1e-14)


# properties


def _exp_log_residual(f):
    s = f.shift_down(1)
    return np.max(np.abs(s.log_unit().exp().coeffs - s.coeffs))


@settings(max_examples=60, deadline=None)
@given(normalized_series(order=10))
def test_round_trips(f):
    s = f.shift_down(1)
    assert _exp_log_residual(f) <= 1e-10
    r = s.sqrt_unit()
    assert np.max(np.abs((r * r).coeffs - s.coeffs)) <= 1e-10
    g = revert(f)
    assert np.max(np.abs(compose(f, g).coeffs - T.monomial(10, 1).coeffs)) <= 1e-10
    assert np.max(np.abs(revert(g).coeffs - f.coeffs)) <= 1e-10


def _reversion_errors(order, samples, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        a = np.exp(2j * np.pi * rng.random(order - 1))
        f = T.from_normalized(a, order=order)
        g = revert(f)
        err = max(
            np.max(np.abs(compose(f, g).coeffs - T.monomial(order, 1).coeffs)),
            np.max(np.abs(revert(g).coeffs - f.coeffs)),
        )
        out.append((err, np.max(np.abs(g.coeffs))))
    return out


def test_reversion_error_tracks_inverse_size_at_order_12():
    # |a_n| = 1 drives inverse coefficients to ~1e6; the error should stay
    # a small multiple of the rounding unit of the largest one
    eps = np.finfo(float).eps
    for err, gmax in _reversion_errors(12, 300, seed=11):
        assert err <= 64 * eps * gmax


@pytest.mark.xfail(strict=True, reason="absolute 1e-10 is below the double rounding floor of A_12 ~ 1e6")
def test_reversion_absolute_tolerance_at_order_12():
    worst = max(err for err, _ in _reversion_errors(12, 300, seed=11))
    assert worst <= 1e-10


@settings(max_examples=60, deadline=None)
@given(complex_coeffs(7), complex_coeffs(7), complex_coeffs(7))
def test_mul_commutative_associative(a, b, c):
    a, b, c = T(a), T(b), T(c)
    assert np.max(np.abs((a * b).coeffs - (b * a).coeffs)) <= 1e-12
    assert np.max(np.abs(((a * b) * c).coeffs - (a * (b * c)).coeffs)) <= 1e-12
