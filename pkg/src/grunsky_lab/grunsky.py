"""Grunsky coefficients of a normalized series and of its odd square-root transform.

For f(z) = z + a_2 z^2 + ... the coefficients omega[p, q] come from

    log((f(t) - f(z)) / (t - z)) = sum omega[p, q] t^p z^q.

A series known to order N determines omega[p, q] exactly only for
p + q <= N - 1; entries outside that triangle are stored as NaN so that no
inequality ever sums over truncation garbage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .series import BivariateSeries, SeriesError, TruncatedSeries

IDENTITY_TOL = 1e-10


class GrunskyError(ValueError):
    pass


def _require_normalized(f: TruncatedSeries) -> None:
    if not f.is_normalized():
        raise GrunskyError("f must be normalized (c0 = 0, c1 = 1)")


def difference_quotient(f: TruncatedSeries) -> BivariateSeries:
    """(f(t) - f(z)) / (t - z) as a bivariate series with d[i, j] = a_{i+j+1}.

    The rectangle has size N - 1; entries with i + j + 1 > N are unknown and
    left at zero (they never feed an exact omega entry).
    """
    _require_normalized(f)
    n = f.order - 1
    c = f.coeffs
    i, j = np.indices((n + 1, n + 1))
    k = i + j + 1
    d = np.where(k <= f.order, c[np.minimum(k, f.order)], 0)
    return BivariateSeries(d)


@dataclass(frozen=True)
class GrunskyTable:
    """omega matrix plus its index convention.

    parity "full": omega[p, q] is the Grunsky coefficient of f.
    parity "odd":  omega[p, q] (p, q >= 1) is omega_{2p-1,2q-1} of the square-root
    transform f_2; row and column 0 are unused and zero.
    """

    order: int
    omega: np.ndarray
    parity: str

    def __post_init__(self):
        self.omega.setflags(write=False)

    def w(self, i: int, j: int) -> complex:
        """Coefficient by its underlying indices (odd i, j for parity 'odd')."""
        if self.parity == "odd":
            if i % 2 == 0 or j % 2 == 0:
                raise GrunskyError("odd tables hold odd indices only")
            i, j = (i + 1) // 2, (j + 1) // 2
        if max(i, j) > self.order:
            raise GrunskyError(f"index ({i}, {j}) beyond table order {self.order}")
        val = self.omega[i, j]
        if np.isnan(val.real):
            raise GrunskyError(f"index ({i}, {j}) is not determined at this truncation order")
        return complex(val)

    def weight(self, p: int) -> int:
        """Index weight of row p: p itself, or 2p - 1 in the odd table."""
        return 2 * p - 1 if self.parity == "odd" else p

    def known(self) -> np.ndarray:
        return ~np.isnan(self.omega.real)

    def symmetry_defect(self) -> float:
        m = self.known() & self.known().T
        diff = np.abs(self.omega - self.omega.T)
        return float(diff[m].max()) if m.any() else 0.0

    def to_json_obj(self) -> dict:
        rows = []
        for row in self.omega:
            rows.append([None if np.isnan(z.real) else [float(z.real), float(z.imag)] for z in row])
        return {"order": self.order, "parity": self.parity, "omega": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def grunsky_table(f: TruncatedSeries) -> GrunskyTable:
    logd = difference_quotient(f).log_unit().coeffs.copy()
    n = logd.shape[0] - 1
    i, j = np.indices(logd.shape)
    logd[i + j > n] = np.nan
    return GrunskyTable(order=n, omega=logd, parity="full")


def sqrt_transform(f: TruncatedSeries) -> TruncatedSeries:
    """f_2(z) = sqrt(f(z^2)), odd and normalized; order 2N for f of order N."""
    _require_normalized(f)
    n = f.order
    z2 = TruncatedSeries.monomial(2 * n + 1, 2)
    fz2 = f.compose(z2)  # exact through z^{2N+1}
    return fz2.shift_down(2).sqrt_unit().shift_up(1)


def odd_grunsky_table(f: TruncatedSeries) -> GrunskyTable:
    full = grunsky_table(sqrt_transform(f))
    m = (full.order + 1) // 2
    odd = np.zeros((m + 1, m + 1), dtype=complex)
    idx = np.arange(1, m + 1) * 2 - 1
    odd[1:, 1:] = full.omega[np.ix_(idx, idx)]
    return GrunskyTable(order=m, omega=odd, parity="odd")


def check_coefficient_relations(f: TruncatedSeries, table: GrunskyTable | None = None) -> np.ndarray:
    """Residual moduli of the six relations tying a_2..a_5 to the odd table."""
    if f.order < 7:
        raise GrunskyError("coefficient relations need order >= 7")
    _require_normalized(f)
    t = table if table is not None else odd_grunsky_table(f)
    w11, w13, w15, w17 = t.w(1, 1), t.w(1, 3), t.w(1, 5), t.w(1, 7)
    w33, w35 = t.w(3, 3), t.w(3, 5)
    a2, a3, a4, a5 = f[2], f[3], f[4], f[5]
    res = [
        a2 - 2 * w11,
        a3 - (2 * w13 + 3 * w11**2),
        a4 - (2 * w33 + 8 * w11 * w13 + 10 / 3 * w11**3),
        a5 - (2 * w35 + 8 * w11 * w33 + 5 * w13**2 + 18 * w11**2 * w13 + 7 / 3 * w11**4),
        3 * w15 - 3 * w11 * w13 + w11**3 - 3 * w33,
        w17 - w35 - w11 * w33 - w13**2 + w11**4 / 3,
    ]
    return np.abs(np.array(res))


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    margin: float
    weights_x: tuple
    form: str = "weighted"
    parity: str = "full"
    terms: int = 0


def inequality_check(table: GrunskyTable, x, form: str = "weighted") -> InequalityCheck:
    """Evaluate one Grunsky inequality for the finite weight vector x.

    x[k] multiplies row p = k + 1 (that is x_{2p-1} for an odd table).
    The weighted form keeps every column q whose entries are all determined,
    so its left side is a partial sum of the infinite one.
    """
    xv = np.asarray(x, dtype=complex).ravel()
    if xv.size == 0 or not np.all(np.isfinite(xv)):
        raise GrunskyError("weights must be a finite nonempty vector")
    if not np.any(xv):
        raise GrunskyError("degenerate input: all weights are zero")
    L = xv.size
    known = table.known()
    if L > table.order:
        raise GrunskyError(f"{L} weights exceed table order {table.order}")
    p = np.arange(1, L + 1)
    wp = np.array([table.weight(k) for k in p], dtype=float)
    rhs = float(np.sum(np.abs(xv) ** 2 / wp))
    block = table.omega[1 : L + 1, 1:]
    if form == "weighted":
        cols = [q for q in range(1, table.order + 1) if known[1 : L + 1, q].all()]
        if not cols:
            raise GrunskyError(f"{L} weights exceed what this table determines")
        s = xv @ table.omega[1 : L + 1][:, cols]
        wq = np.array([table.weight(q) for q in cols], dtype=float)
        lhs = float(np.sum(wq * np.abs(s) ** 2))
        nterms = len(cols)
    elif form == "bilinear":
        if not known[1 : L + 1, 1 : L + 1].all():
            raise GrunskyError(f"{L} weights exceed what this table determines")
        sub = block[:, :L]
        lhs = float(abs(xv @ sub @ xv))
        nterms = L
    else:
        raise GrunskyError(f"unknown inequality form {form!r}")
    return InequalityCheck(
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        weights_x=tuple(complex(v) for v in xv),
        form=form,
        parity=table.parity,
        terms=nterms,
    )


def coefficient_chain(table: GrunskyTable) -> dict:
    """Margins of the scalar bounds obtained with a single unit weight.

    Keys name the bound; each value is (right side - left side), so a
    non-negative margin means the bound holds.
    """
    if table.parity != "odd":
        raise GrunskyError("the chain is stated for the odd table")
    a11, a13, a15, a17 = (abs(table.w(1, k)) for k in (1, 3, 5, 7))
    a33, a35 = abs(table.w(3, 3)), abs(table.w(3, 5))
    r1 = 1 - a11**2
    r2 = max(r1 - 3 * a13**2, 0.0)
    r3 = max(r2 - 5 * a15**2, 0.0)
    return {
        "w11_sq+3w13_sq+5w15_sq<=1": 1 - (a11**2 + 3 * a13**2 + 5 * a15**2),
        "w13_sq+3w33_sq+5w35_sq<=1/3": 1 / 3 - (a13**2 + 3 * a33**2 + 5 * a35**2),
        "|w11|<=1": 1 - a11,
        "|w13|<=sqrt(1-|w11|^2)/sqrt3": float(np.sqrt(max(r1, 0.0)) / np.sqrt(3) - a13),
        "|w15|<=sqrt(1-|w11|^2-3|w13|^2)/sqrt5": float(np.sqrt(r2) / np.sqrt(5) - a15),
        "|w17|<=sqrt(1-|w11|^2-3|w13|^2-5|w15|^2)/sqrt7": float(np.sqrt(r3) / np.sqrt(7) - a17),
    }


__all__ = [
    "GrunskyError",
    "GrunskyTable",
    "InequalityCheck",
    "SeriesError",
    "check_coefficient_relations",
    "coefficient_chain",
    "difference_quotient",
    "grunsky_table",
    "inequality_check",
    "odd_grunsky_table",
    "sqrt_transform",
]
