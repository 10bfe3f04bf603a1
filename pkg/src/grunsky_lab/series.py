"""Truncated complex power series in one and two variables.

Coefficients are double-precision complex numbers stored in read-only numpy
arrays.  Every operation returns a new series; nothing is mutated in place.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

DEFAULT_ORDER = 12
_NORM_TOL = 1e-12


class SeriesError(ValueError):
    """Base class for invalid series operations."""


class OrderMismatchError(SeriesError):
    pass


class CompositionError(SeriesError):
    pass


class BranchError(SeriesError):
    pass


class ReversionError(SeriesError):
    pass


def _frozen(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if shape is not None and arr.shape != shape:
        raise SeriesError(f"expected coefficient shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def _conv(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[: n + 1]


class TruncatedSeries:
    """c_0 + c_1 z + ... + c_N z^N, with everything beyond z^N discarded."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[complex]):
        c = _frozen(coeffs)
        if c.ndim != 1 or c.size < 2:
            raise SeriesError("a truncated series needs order >= 1")
        self._c = c

    @classmethod
    def zeros(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def monomial(cls, order: int, power: int = 1, scale: complex = 1.0) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = scale
        return cls(c)

    @classmethod
    def from_normalized(cls, a: Sequence[complex], order: int | None = None) -> "TruncatedSeries":
        """Build z + a[0] z^2 + a[1] z^3 + ... (a holds a_2, a_3, ...)."""
        a = list(a)
        if order is None:
            order = len(a) + 1
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        m = min(len(a), order - 1)
        c[2 : 2 + m] = a[:m]
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self._c[n])

    def __len__(self) -> int:
        return self._c.size

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={np.round(self._c, 12).tolist()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and np.array_equal(self._c, other._c)

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        return self.order == other.order and bool(np.allclose(self._c, other._c, rtol=0, atol=atol))

    def is_normalized(self, tol: float = _NORM_TOL) -> bool:
        return abs(self._c[0]) <= tol and abs(self._c[1] - 1) <= tol

    def valuation(self) -> int | None:
        nz = np.flatnonzero(self._c)
        return int(nz[0]) if nz.size else None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    # arithmetic

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(self._c + other._c)
        c = self._c.copy()
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(_conv(self._c, other._c, self.order))
        return TruncatedSeries(self._c * complex(other))

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        c = self._c
        if c[0] == 0:
            raise SeriesError("reciprocal needs a nonzero constant term")
        n = self.order
        r = np.zeros(n + 1, dtype=complex)
        r[0] = 1 / c[0]
        for k in range(1, n + 1):
            r[k] = -np.dot(c[1 : k + 1], r[k - 1 :: -1][:k]) / c[0]
        return TruncatedSeries(r)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return TruncatedSeries(self._c / complex(other))

    def shift_down(self, k: int = 1) -> "TruncatedSeries":
        """Divide by z^k; the first k coefficients must vanish."""
        if np.any(np.abs(self._c[:k]) > _NORM_TOL):
            raise SeriesError(f"series is not divisible by z^{k}")
        return TruncatedSeries(self._c[k:])

    def shift_up(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by z^k, raising the order by k (no information is lost)."""
        return TruncatedSeries(np.concatenate([np.zeros(k, dtype=complex), self._c]))

    def derivative(self) -> np.ndarray:
        n = np.arange(1, self.order + 1)
        return n * self._c[1:]

    def __call__(self, z: complex) -> complex:
        return complex(np.polyval(self._c[::-1], z))

    # transcendental operations via coefficient recursions

    def log_unit(self) -> "TruncatedSeries":
        """log(s) for s(0) = 1, from s * L' = s'."""
        c = self._c
        if abs(c[0] - 1) > _NORM_TOL:
            raise BranchError("log_unit requires constant term 1")
        n = self.order
        out = np.zeros(n + 1, dtype=complex)
        kL = np.zeros(n + 1, dtype=complex)  # k * L_k
        for k in range(1, n + 1):
            kL[k] = k * c[k] - np.dot(kL[1:k], c[k - 1 : 0 : -1])
            out[k] = kL[k] / k
        return TruncatedSeries(out)

    def exp(self) -> "TruncatedSeries":
        """exp(s) for s(0) = 0, from E' = s' E."""
        c = self._c
        if abs(c[0]) > _NORM_TOL:
            raise BranchError("exp requires constant term 0")
        n = self.order
        ks = np.arange(n + 1) * c
        e = np.zeros(n + 1, dtype=complex)
        e[0] = 1.0
        for k in range(1, n + 1):
            e[k] = np.dot(ks[1 : k + 1], e[k - 1 :: -1][:k]) / k
        return TruncatedSeries(e)

    def sqrt_unit(self) -> "TruncatedSeries":
        """Square root with value 1 at the origin."""
        c = self._c
        if abs(c[0] - 1) > _NORM_TOL:
            raise BranchError("sqrt_unit requires constant term 1")
        n = self.order
        r = np.zeros(n + 1, dtype=complex)
        r[0] = 1.0
        for k in range(1, n + 1):
            r[k] = (c[k] - np.dot(r[1:k], r[k - 1 : 0 : -1])) / 2
        return TruncatedSeries(r)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)

    def revert(self) -> "TruncatedSeries":
        return revert(self)

    # serialization

    def to_json_obj(self) -> dict:
        return {"order": self.order, "coeffs": [[float(z.real), float(z.imag)] for z in self._c]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "TruncatedSeries":
        try:
            order = int(obj["order"])
            pairs = obj["coeffs"]
            c = [complex(float(re), float(im)) for re, im in pairs]
        except (KeyError, TypeError, ValueError) as exc:
            raise SeriesError(f"malformed series object: {exc}") from None
        if len(c) != order + 1:
            raise SeriesError(f"order {order} needs {order + 1} coefficients, got {len(c)}")
        if not all(np.isfinite(z.real) and np.isfinite(z.imag) for z in c):
            raise SeriesError("series coefficients must be finite")
        return cls(c)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SeriesError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)


def arith(a: TruncatedSeries, b, op: str) -> TruncatedSeries:
    """Dispatch add/sub/mul between series, or scale by a complex scalar."""
    if op == "scale":
        return a * complex(b)
    if not isinstance(b, TruncatedSeries):
        raise SeriesError(f"{op} needs two series")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise SeriesError(f"unknown operation {op!r}")


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(z)) by Horner's scheme on truncated powers.

    The result order is the inner order, capped where unknown coefficients of
    ``outer`` would start to contribute: with inner valuation v, outer terms
    beyond z^N_out only reach z^{(N_out+1)v} and above.
    """
    if abs(inner.coeffs[0]) > 0:
        raise CompositionError("inner series must vanish at the origin")
    v = inner.valuation()
    if v is None:
        return TruncatedSeries.zeros(inner.order) + outer[0]
    n = min(inner.order, (outer.order + 1) * v - 1)
    g = inner.coeffs[: n + 1]
    oc = outer.coeffs
    acc = np.zeros(n + 1, dtype=complex)
    for k in range(min(outer.order, n), -1, -1):
        acc = _conv(acc, g, n)
        acc[0] += oc[k]
    return TruncatedSeries(acc)


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g with f(g(w)) = w, one coefficient per pass.

    Because f'(0) = 1, changing g_n by delta changes the z^n coefficient of
    f(g) by exactly delta and leaves lower coefficients alone.
    """
    if not f.is_normalized():
        raise ReversionError("reversion requires c0 = 0 and c1 = 1")
    n = f.order
    g = np.zeros(n + 1, dtype=complex)
    g[1] = 1.0
    for k in range(2, n + 1):
        fg = compose(f, TruncatedSeries(g[: k + 1]))
        g[k] -= fg.coeffs[k]
    return TruncatedSeries(g)


class BivariateSeries:
    """Sum of d[i, j] t^i z^j over the rectangle 0 <= i, j <= N."""

    __slots__ = ("_d",)

    def __init__(self, coeffs):
        d = _frozen(coeffs)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
            raise SeriesError("bivariate coefficients must be a square matrix")
        self._d = d

    @property
    def coeffs(self) -> np.ndarray:
        return self._d

    @property
    def order(self) -> int:
        return self._d.shape[0] - 1

    def __getitem__(self, ij) -> complex:
        return complex(self._d[ij])

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._check(other)
        return BivariateSeries(self._d + other._d)

    def _check(self, other: "BivariateSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __mul__(self, other):
        if not isinstance(other, BivariateSeries):
            return BivariateSeries(self._d * complex(other))
        self._check(other)
        n = self.order
        a, b = self._d, other._d
        out = np.zeros_like(a)
        for i in range(n + 1):
            for k in range(i + 1):
                out[i] += _conv(a[k], b[i - k], n)
        return BivariateSeries(out)

    __rmul__ = __mul__

    def log_unit(self) -> "BivariateSeries":
        """Log of a two-variable series with d[0, 0] = 1.

        Rows are series in z.  Row 0 is a univariate log; for i >= 1 the
        relation i D_0 L_i = i D_i - sum_{k<i} k L_k D_{i-k} follows from
        t dL/dt = (t dD/dt) / D.
        """
        d = self._d
        if abs(d[0, 0] - 1) > _NORM_TOL:
            raise BranchError("log_unit requires constant term 1")
        n = self.order
        if n == 0:
            return BivariateSeries(np.zeros((1, 1)))
        out = np.zeros_like(d)
        out[0] = TruncatedSeries(d[0]).log_unit().coeffs
        inv0 = TruncatedSeries(d[0]).reciprocal().coeffs
        for i in range(1, n + 1):
            acc = i * d[i]
            for k in range(1, i):
                acc = acc - k * _conv(out[k], d[i - k], n)
            out[i] = _conv(acc, inv0, n) / i
        return BivariateSeries(out)

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[[float(z.real), float(z.imag)] for z in row] for row in self._d],
        }


def bivariate_ops(a: BivariateSeries, b: BivariateSeries | None, op: str) -> BivariateSeries:
    if op == "mul":
        if b is None:
            raise SeriesError("mul needs two series")
        return a * b
    if op == "log_unit":
        return a.log_unit()
    raise SeriesError(f"unknown operation {op!r}")
