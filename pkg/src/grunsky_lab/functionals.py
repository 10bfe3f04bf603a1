"""Scalar coefficient functionals: logarithmic and inverse coefficients,
Hankel determinants, and the coefficient differences that are bounded over S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .series import SeriesError, TruncatedSeries

REPORT_ORDER = 12
GAMMA_COUNT = 8
INVERSE_MAX = 6


class FunctionalError(ValueError):
    pass


def _require(f: TruncatedSeries, min_order: int) -> None:
    if not f.is_normalized():
        raise FunctionalError("f must be normalized (c0 = 0, c1 = 1)")
    if f.order < min_order:
        raise FunctionalError(f"need order >= {min_order}, got {f.order}")


def log_coeffs(f: TruncatedSeries, n: int) -> np.ndarray:
    """gamma_1..gamma_n, where log(f(z)/z) = 2 sum gamma_k z^k.

    f/z loses one order, so n may be at most N - 1.
    """
    _require(f, 2)
    if n > f.order - 1:
        raise FunctionalError(f"gamma_{n} needs order >= {n + 1}, got {f.order}")
    L = f.shift_down(1).log_unit().coeffs
    return L[1 : n + 1] / 2


def log_coeffs_closed_form(f: TruncatedSeries) -> np.ndarray:
    """gamma_1..gamma_4 written out in a_2..a_5."""
    _require(f, 5)
    a2, a3, a4, a5 = f[2], f[3], f[4], f[5]
    return np.array(
        [
            a2 / 2,
            (a3 - a2**2 / 2) / 2,
            (a4 - a2 * a3 + a2**3 / 3) / 2,
            (a5 - a2 * a4 - a3**2 / 2 + a2**2 * a3 - a2**4 / 4) / 2,
        ]
    )


def inverse_coeffs(f: TruncatedSeries, n: int) -> np.ndarray:
    """A_2..A_n of the inverse function w + A_2 w^2 + ..."""
    _require(f, 2)
    if n > f.order:
        raise FunctionalError(f"A_{n} needs order >= {n}, got {f.order}")
    g = f.truncate(max(n, 2)).revert()
    return g.coeffs[2 : n + 1].copy()


def inverse_coeffs_closed_form(f: TruncatedSeries) -> np.ndarray:
    """A_2..A_5 from the coefficient comparison in f(f^{-1}(w)) = w."""
    _require(f, 5)
    a2, a3, a4, a5 = f[2], f[3], f[4], f[5]
    return np.array(
        [
            -a2,
            -a3 + 2 * a2**2,
            -a4 + 5 * a2 * a3 - 5 * a2**3,
            -a5 + 6 * a2 * a4 - 21 * a2**2 * a3 + 3 * a3**2 + 14 * a2**4,
        ]
    )


def _coeff_vector(c) -> np.ndarray:
    if isinstance(c, TruncatedSeries):
        return c.coeffs
    return np.asarray(c, dtype=complex)


def hankel(c, q: int, n: int) -> complex:
    """det [a_{n+i+j}]_{i,j<q}; c is indexed so that c[k] = a_k (c[1] = 1)."""
    v = _coeff_vector(c)
    if q < 1 or n < 1:
        raise FunctionalError("hankel needs q >= 1 and n >= 1")
    top = n + 2 * q - 2
    if top >= v.size:
        raise FunctionalError(f"H_{q},{n} needs a_{top}, series stops at a_{v.size - 1}")
    i, j = np.indices((q, q))
    m = v[n + i + j]
    if q == 1:
        return complex(m[0, 0])
    if q == 2:
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return complex(np.linalg.det(m))


def h22_expanded(a2, a3, a4) -> complex:
    return a2 * a4 - a3**2


def h31_expanded(a2, a3, a4, a5) -> complex:
    return a3 * (a2 * a4 - a3**2) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2**2)


def log_hankel21(f: TruncatedSeries) -> complex:
    g = log_coeffs(f, 3)
    return complex(g[0] * g[2] - g[1] ** 2)


def log_hankel21_closed_form(f: TruncatedSeries) -> complex:
    a2, a3, a4 = f[2], f[3], f[4]
    return (a2 * a4 - a3**2 + a2**4 / 12) / 4


@dataclass(frozen=True)
class FunctionalReport:
    a: tuple  # a_2..a_7
    gamma: tuple  # gamma_1..gamma_8
    A: tuple  # A_2..A_6
    h22: complex
    h31: complex
    h23: complex
    h22_inv: complex
    h31_inv: complex
    h32_inv: complex
    loghank21: complex
    diffs: dict = field(default_factory=dict)
    hankel_gaps: tuple = ()

    def coeff(self, k: int) -> complex:
        return self.a[k - 2]

    def gam(self, k: int) -> complex:
        return self.gamma[k - 1]

    def inv(self, k: int) -> complex:
        return self.A[k - 2]

    def scalar(self, name: str) -> float:
        """Real-valued functional by name (moduli, differences of moduli)."""
        try:
            return _SCALARS[name](self)
        except KeyError:
            raise FunctionalError(f"unknown functional {name!r}") from None

    def to_dict(self) -> dict:
        out: dict = {}
        for k, v in enumerate(self.a, start=2):
            out[f"a{k}"] = _pair(v)
        for k, v in enumerate(self.gamma, start=1):
            out[f"gamma{k}"] = _pair(v)
        for k, v in enumerate(self.A, start=2):
            out[f"A{k}"] = _pair(v)
        for name in ("h22", "h31", "h23", "h22_inv", "h31_inv", "h32_inv", "loghank21"):
            out[name] = _pair(getattr(self, name))
        out.update({k: float(v) for k, v in self.diffs.items()})
        out["hankel_gap22"] = _pair(self.hankel_gaps[0])
        out["hankel_gap31"] = _pair(self.hankel_gaps[1])
        return out

    def to_row(self) -> dict:
        row = {}
        for k, v in self.to_dict().items():
            if isinstance(v, list):
                row[f"{k}_re"], row[f"{k}_im"] = v
            else:
                row[k] = v
        return row


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _mod_diff(hi, lo):
    return lambda r: abs(hi(r)) - abs(lo(r))


_SCALARS: dict = {}
for _k in range(2, 8):
    _SCALARS[f"abs_a{_k}"] = lambda r, k=_k: abs(r.coeff(k))
for _k in range(1, GAMMA_COUNT + 1):
    _SCALARS[f"abs_gamma{_k}"] = lambda r, k=_k: abs(r.gam(k))
for _k in range(2, INVERSE_MAX + 1):
    _SCALARS[f"abs_A{_k}"] = lambda r, k=_k: abs(r.inv(k))
for _name in ("h22", "h31", "h23", "h22_inv", "h31_inv", "h32_inv", "loghank21"):
    _SCALARS[f"abs_{_name}"] = lambda r, n=_name: abs(getattr(r, n))
for _k in range(2, GAMMA_COUNT + 1):
    _SCALARS[f"gamma_diff_{_k}"] = lambda r, k=_k: r.diffs[f"gamma_diff_{k}"]
for _name in ("a4_minus_a3", "a5_minus_a4", "a5_minus_a3", "a3_minus_a2", "a2_minus_a3", "abs_a2a3_minus_a4"):
    _SCALARS[_name] = lambda r, n=_name: r.diffs[n]
_SCALARS["abs_hankel_gap22"] = lambda r: abs(r.hankel_gaps[0])
_SCALARS["abs_hankel_gap31"] = lambda r: abs(r.hankel_gaps[1])

FUNCTIONAL_NAMES = tuple(sorted(_SCALARS))


def functional_report(f: TruncatedSeries) -> FunctionalReport:
    _require(f, REPORT_ORDER)
    c = f.coeffs
    a = tuple(complex(c[k]) for k in range(2, 8))
    gamma = tuple(complex(g) for g in log_coeffs(f, GAMMA_COUNT))
    inv = f.truncate(INVERSE_MAX + 2).revert().coeffs
    A = tuple(complex(inv[k]) for k in range(2, INVERSE_MAX + 1))

    h22 = hankel(c, 2, 2)
    h31 = hankel(c, 3, 1)
    h23 = hankel(c, 2, 3)
    h22_inv = hankel(inv, 2, 2)
    h31_inv = hankel(inv, 3, 1)
    h32_inv = hankel(inv, 3, 2)
    loghank = gamma[0] * gamma[2] - gamma[1] ** 2

    a2, a3, a4, a5 = a[:4]
    diffs = {
        "a3_minus_a2": abs(a3) - abs(a2),
        "a2_minus_a3": abs(a2) - abs(a3),
        "a4_minus_a3": abs(a4) - abs(a3),
        "a5_minus_a4": abs(a5) - abs(a4),
        "a5_minus_a3": abs(a5) - abs(a3),
        "abs_a2a3_minus_a4": abs(a2 * a3 - a4),
    }
    for k in range(2, GAMMA_COUNT + 1):
        diffs[f"gamma_diff_{k}"] = abs(gamma[k - 1]) - abs(gamma[k - 2])

    return FunctionalReport(
        a=a,
        gamma=gamma,
        A=A,
        h22=h22,
        h31=h31,
        h23=h23,
        h22_inv=h22_inv,
        h31_inv=h31_inv,
        h32_inv=h32_inv,
        loghank21=loghank,
        diffs=diffs,
        hankel_gaps=(h22_inv - h22, h31_inv - h31),
    )


__all__ = [
    "FUNCTIONAL_NAMES",
    "FunctionalError",
    "FunctionalReport",
    "SeriesError",
    "functional_report",
    "hankel",
    "inverse_coeffs",
    "log_coeffs",
    "log_hankel21",
]
