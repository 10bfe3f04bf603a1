"""Named univalent functions used as sharpness witnesses and scan samples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .series import TruncatedSeries

# Random members are polynomials of this fixed degree, so their low
# coefficients do not depend on the truncation order requested.
RANDOM_DEGREE = 16
CRITERION_MASS = 0.95
RANDOM_KINDS = ("general", "general", "a2_zero", "a3_zero", "odd")
KOEBE_ROTATIONS = 8
M_KOEBE_FOLDS = (2, 3, 4, 5)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class NamedFunction:
    name: str
    params: tuple
    generator: Callable[[int], TruncatedSeries] = field(repr=False, compare=False)
    univalence_witness: str
    known: dict = field(default_factory=dict, compare=False)

    def series(self, order: int = 12) -> TruncatedSeries:
        return self.generator(order)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(_fmt_param(p) for p in self.params)
        return f"{self.name}({args})"

    def to_json_obj(self, order: int = 12) -> dict:
        return {
            "name": self.name,
            "params": [_json_param(p) for p in self.params],
            "label": self.label,
            "univalence_witness": self.univalence_witness,
            "coefficients": self.series(order).to_json_obj()["coeffs"],
        }


def _fmt_param(p) -> str:
    if isinstance(p, float):
        return f"{p:.6g}"
    return str(p)


def _json_param(p):
    if isinstance(p, complex):
        return [p.real, p.imag]
    return p


def koebe_series(order: int, theta: float = 0.0) -> TruncatedSeries:
    """z / (1 - e^{i theta} z)^2, a_n = n e^{i theta (n-1)}."""
    n = np.arange(order + 1)
    c = n * np.exp(1j * theta * (n - 1))
    c[0] = 0
    return TruncatedSeries(c)


def m_koebe_series(order: int, m: int) -> TruncatedSeries:
    """z (1 - z^m)^{-2/m}, expanded with binomial coefficients of exponent 2/m."""
    if m < 2:
        raise CatalogError("m-fold Koebe function needs m >= 2")
    alpha = 2.0 / m
    c = np.zeros(order + 1, dtype=complex)
    coef = 1.0
    k = 0
    while 1 + m * k <= order:
        c[1 + m * k] = coef
        k += 1
        coef *= (alpha + k - 1) / k
    return TruncatedSeries(c)


def half_plane_series(order: int) -> TruncatedSeries:
    c = np.ones(order + 1, dtype=complex)
    c[0] = 0
    return TruncatedSeries(c)


def identity_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(order, 1)


def random_criterion_coeffs(seed: int, kind: str = "general") -> np.ndarray:
    """Coefficients a_2..a_D with sum n|a_n| = 0.95 (Alexander's criterion).

    Magnitudes decay geometrically at a random rate so that mass sits on the
    low coefficients the functionals read; kind zeroes a_2, a_3, or every
    even-index coefficient.
    """
    if kind not in ("general", "a2_zero", "a3_zero", "odd"):
        raise CatalogError(f"unknown random kind {kind!r}")
    rng = np.random.default_rng(seed)
    n = np.arange(2, RANDOM_DEGREE + 1)
    ratio = rng.uniform(0.15, 0.9)
    mags = rng.uniform(0.0, 1.0, n.size) * ratio ** (n - 2)
    phases = rng.uniform(0.0, 2 * np.pi, n.size)
    a = mags * np.exp(1j * phases)
    if kind == "a2_zero":
        a[n == 2] = 0
    elif kind == "a3_zero":
        a[n == 3] = 0
    elif kind == "odd":
        a[n % 2 == 0] = 0
    mass = np.sum(n * np.abs(a))
    if mass == 0:
        a[n == 3] = 1.0
        mass = 3.0
    return a * (CRITERION_MASS / mass)


def random_criterion_series(order: int, seed: int, kind: str = "general") -> TruncatedSeries:
    a = random_criterion_coeffs(seed, kind)
    return TruncatedSeries.from_normalized(a, order=order)


def get(name: str, params=(), order: int = 12) -> TruncatedSeries:
    return named(name, params).series(order)


def named(name: str, params=()) -> NamedFunction:
    params = tuple(params)
    if name == "koebe":
        theta = float(params[0]) if params else 0.0
        return NamedFunction(
            "koebe",
            (theta,),
            lambda n: koebe_series(n, theta),
            "closed_form",
            {"a": lambda k: k * np.exp(1j * theta * (k - 1))},
        )
    if name == "m_koebe":
        if not params:
            raise CatalogError("m_koebe needs the fold m")
        m = int(params[0])
        if m < 2:
            raise CatalogError("m-fold Koebe function needs m >= 2")
        return NamedFunction("m_koebe", (m,), lambda n: m_koebe_series(n, m), "closed_form")
    if name == "half_plane":
        return NamedFunction("half_plane", (), half_plane_series, "closed_form", {"a": lambda k: 1.0})
    if name == "identity":
        return NamedFunction("identity", (), identity_series, "closed_form", {"a": lambda k: 0.0})
    if name == "random_criterion":
        if not params:
            raise CatalogError("random_criterion needs a seed")
        seed = int(params[0])
        kind = str(params[1]) if len(params) > 1 else "general"
        random_criterion_coeffs(seed, kind)  # validate eagerly
        return NamedFunction(
            "random_criterion",
            (seed, kind),
            lambda n: random_criterion_series(n, seed, kind),
            "coefficient_criterion",
        )
    raise CatalogError(f"unknown catalog function {name!r}")


def closed_form_members() -> list[NamedFunction]:
    out = [named("koebe", (2 * np.pi * k / KOEBE_ROTATIONS,)) for k in range(KOEBE_ROTATIONS)]
    out += [named("m_koebe", (m,)) for m in M_KOEBE_FOLDS]
    out += [named("half_plane"), named("identity")]
    return out


def enumerate_catalog(samples: int, seed: int = 0) -> list[NamedFunction]:
    """Closed-form members followed by `samples` criterion polynomials.

    Child seeds come from numpy's SeedSequence, so the list is a pure
    function of (samples, seed).
    """
    if samples < 0:
        raise CatalogError("samples must be non-negative")
    members = closed_form_members()
    if samples:
        child = np.random.SeedSequence(seed).generate_state(samples, dtype=np.uint32)
        for i, s in enumerate(child):
            kind = RANDOM_KINDS[i % len(RANDOM_KINDS)]
            members.append(named("random_criterion", (int(s), kind)))
    return members


def criterion_mass(f: TruncatedSeries) -> float:
    n = np.arange(2, f.order + 1)
    return float(np.sum(n * np.abs(f.coeffs[2:])))
