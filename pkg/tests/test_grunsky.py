import numpy as np
import pytest

from grunsky_lab import catalog
from grunsky_lab.grunsky import (
    GrunskyError,
    check_coefficient_relations,
    coefficient_chain,
    difference_quotient,
    grunsky_table,
    inequality_check,
    odd_grunsky_table,
    sqrt_transform,
)
from grunsky_lab.series import TruncatedSeries as T

from conftest import random_normalized


def test_difference_quotient_identity():
    d = difference_quotient(T.monomial(6, 1)).coeffs
    expected = np.zeros_like(d); expected[0, 0] = 1
    assert np.array_equal(d, expected)


def test_difference_quotient_koebe(koebe):
    d = difference_quotient(koebe).coeffs
    for i in range(d.shape[0]):
        for j in range(d.shape[0]):
            if i + j + 1 <= 12:
                assert d[i, j] == i + j + 1


def test_difference_quotient_quadratic():
    d = difference_quotient(T([0, 1, 1, 0, 0])).coeffs
    expected = np.zeros_like(d); expected[0, 0] = expected[1, 0] = expected[0, 1] = 1
    assert np.array_equal(d, expected)


def test_difference_quotient_requires_normalized():
    with pytest.raises(GrunskyError):
        difference_quotient(T([0, 2, 1]))


def test_koebe_full_table_closed_form():
    # log((k(t)-k(z))/(t-z)) = log(1 - tz) - 2 log(1 - t) - 2 log(1 - z)
    f = catalog.get("koebe", (0.0,), 17)
    table = grunsky_table(f)
    for p in range(9):
        for q in range(9):
            if p >= 1 and q >= 1:
                expected = -1 / p if p == q else 0
            elif p == q == 0:
                expected = 0
            else:
                expected = 2 / max(p, q)
            assert table.w(p, q) == pytest.approx(expected, abs=1e-10)


def test_full_table_matches_sympy_expansion():
    sympy = pytest.importorskip("sympy")
    t, z = sympy.symbols("t z")
    a2, a3, a4 = sympy.Rational(1, 3), sympy.Rational(-1, 5), sympy.Rational(1, 7)
    f = lambda w: w + a2 * w**2 + a3 * w**3 + a4 * w**4
    quotient = sympy.cancel((f(t) - f(z)) / (t - z))
    n = 3
    ser = sympy.series(sympy.series(sympy.log(quotient), t, 0, n + 1).removeO(), z, 0, n + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser), t, z)
    table = grunsky_table(T([0, 1, float(a2), float(a3), float(a4)]))
    for p in range(n + 1):
        for q in range(n + 1):
            if p + q <= 3:
                assert table.w(p, q) == pytest.approx(float(poly.coeff_monomial(t**p * z**q)), abs=1e-14)


def test_identity_table_zero():
    table = grunsky_table(T.monomial(10, 1))
    assert np.all(table.omega[table.known()] == 0)
    odd = odd_grunsky_table(T.monomial(10, 1))
    assert np.all(odd.omega[odd.known()] == 0)


def test_undetermined_entries_are_flagged(koebe):
    table = grunsky_table(koebe)
    assert table.known()[5, 6] and not table.known()[6, 6]
    with pytest.raises(GrunskyError):
        table.w(6, 6)


def test_symmetry_on_catalog():
    for member in catalog.enumerate_catalog(10, seed=3):
        f = member.series(12)
        assert grunsky_table(f).symmetry_defect() <= 1e-10
        assert odd_grunsky_table(f).symmetry_defect() <= 1e-10


def test_sqrt_transform_koebe(koebe, odd_koebe):
    f2 = sqrt_transform(koebe)
    assert f2.order == 24
    assert np.allclose(f2.coeffs[:13], odd_koebe.coeffs, atol=1e-13)


def test_koebe_odd_table():
    t = odd_grunsky_table(catalog.get("koebe", (0.0,), 12))
    expected = {(1, 1): 1, (1, 3): 0, (3, 3): 1 / 3, (1, 5): 0, (3, 5): 0, (1, 7): 0, (5, 5): 1 / 5}
    for (i, j), v in expected.items():
        assert t.w(i, j) == pytest.approx(v, abs=1e-10)
    assert t.parity == "odd"
    with pytest.raises(GrunskyError):
        t.w(2, 1)


def test_odd_table_parity_vanishing_for_odd_function(odd_koebe):
    # f odd => f_2(z) = sqrt(f(z^2)) has c_n = 0 unless n = 1 mod 4, so
    # omega_{i,j} of f_2 vanishes whenever i + j = 2 mod 4 (entry p + q even).
    for f in (odd_koebe, catalog.random_criterion_series(12, 7, "odd")):
        t = odd_grunsky_table(f)
        for p in range(1, t.order + 1):
            for q in range(1, t.order + 1):
                i, j = 2 * p - 1, 2 * q - 1
                if t.known()[p, q] and (i + j) % 4 == 2:
                    assert abs(t.omega[p, q]) <= 1e-12
        assert abs(t.w(1, 3)) > 0.01


def test_relations_koebe_and_identity(koebe):
    assert check_coefficient_relations(koebe).max() <= 1e-10
    assert np.all(check_coefficient_relations(T.monomial(8, 1)) == 0)


def test_relations_quadratic():
    f = T.from_normalized([0.3], order=12)
    assert check_coefficient_relations(f).max() <= 1e-10


def test_relations_hold_formally(rng):
    for _ in range(20):
        assert check_coefficient_relations(random_normalized(rng, 12, scale=2.0)).max() <= 1e-10


def test_relations_need_order_seven():
    with pytest.raises(GrunskyError):
        check_coefficient_relations(T.monomial(6, 1))


def test_koebe_sharp_in_weighted_forms(koebe):
    for table in (grunsky_table(koebe), odd_grunsky_table(koebe)):
        chk = inequality_check(table, [1, 0, 0])
        assert chk.lhs == pytest.approx(1, abs=1e-12)
        assert chk.margin == pytest.approx(0, abs=1e-10)
        assert chk.margin == chk.rhs - chk.lhs


def test_identity_margin_is_rhs():
    odd = odd_grunsky_table(T.monomial(12, 1))
    x = [1, 2j, -1]
    for form in ("weighted", "bilinear"):
        chk = inequality_check(odd, x, form)
        assert chk.lhs == 0
        assert chk.margin == pytest.approx(1 + 4 / 3 + 1 / 5)


def test_degenerate_weights():
    odd = odd_grunsky_table(T.monomial(12, 1))
    with pytest.raises(GrunskyError):
        inequality_check(odd, [0, 0])
    with pytest.raises(GrunskyError):
        inequality_check(odd, [1, 0], form="cubic")
    with pytest.raises(GrunskyError):
        inequality_check(odd, np.ones(40))


def test_bilinear_with_half_omega_weight(koebe):
    # x_1 = -omega_11 / 2, x_3 = 1 reduces the bilinear form to a three-term estimate
    for member in catalog.enumerate_catalog(20, seed=5):
        t = odd_grunsky_table(member.series(12))
        w11, w13, w33 = t.w(1, 1), t.w(1, 3), t.w(3, 3)
        chk = inequality_check(t, [-w11 / 2, 1], "bilinear")
        direct = abs(w11**3 / 4 - w11 * w13 + w33)
        assert chk.lhs == pytest.approx(direct, abs=1e-12)
        assert direct <= abs(w11) ** 2 / 4 + 1 / 3 + 1e-10


def test_inequalities_on_random_univalent(rng):
    members = [m for m in catalog.enumerate_catalog(20, seed=11)]
    for member in members:
        f = member.series(12)
        for table in (grunsky_table(f), odd_grunsky_table(f)):
            for _ in range(10):
                L = int(rng.integers(1, 5))
                x = rng.normal(size=L) + 1j * rng.normal(size=L)
                for form in ("weighted", "bilinear"):
                    assert inequality_check(table, x, form).margin >= -1e-10, member.label


def test_chain_holds_on_catalog():
    for member in catalog.enumerate_catalog(30, seed=2):
        margins = coefficient_chain(odd_grunsky_table(member.series(12)))
        assert min(margins.values()) >= -1e-10, member.label


def test_chain_rejects_full_table(koebe):
    with pytest.raises(GrunskyError):
        coefficient_chain(grunsky_table(koebe))


def test_table_json(koebe):
    obj = odd_grunsky_table(koebe).to_json_obj()
    assert obj["parity"] == "odd" and obj["order"] == 12
    assert obj["omega"][1][1] == [pytest.approx(1.0), pytest.approx(0.0)]
    assert obj["omega"][12][12] is None
