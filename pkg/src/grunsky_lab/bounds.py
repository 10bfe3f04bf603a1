"""Extremal computations behind the univalent-function bounds, and
statement-level scans of every bound over the function catalog.

Nothing here certifies a bound.  The optimizer is a deterministic grid scan
with compass polishing; scans only look for counterexamples.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .catalog import NamedFunction
from .functionals import FUNCTIONAL_NAMES, FunctionalReport, functional_report
from .grunsky import odd_grunsky_table
from .series import TruncatedSeries

SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
SQRT7 = math.sqrt(7.0)
VIOLATION_TOL = 1e-9
ZERO_COEFF_TOL = 1e-14
TIE_TOL = 1e-12


class BoundError(ValueError):
    pass


class StationarityError(AssertionError):
    pass


# regions


@dataclass(frozen=True)
class Region2D:
    box: tuple  # ((x_lo, x_hi), (y_lo, y_hi))
    membership: Callable = field(repr=False)
    boundary_curves: tuple = field(default=(), repr=False)  # (name, s -> (x, y)) on s in [0, 1]

    def contains(self, x, y) -> bool:
        return bool(self.membership(np.float64(x), np.float64(y)))


def _e1_member(x, y):
    return (x >= 0) & (x <= 1) & (y >= 0) & (3 * y * y <= 1 - x * x + 1e-15)


def _curved(s):
    s = np.asarray(s, dtype=float)
    return s, np.sqrt(np.maximum(1 - s * s, 0.0)) / SQRT3


def quarter_ellipse_region() -> Region2D:
    """0 <= x <= 1, 0 <= y <= sqrt(1 - x^2) / sqrt(3)."""
    return Region2D(
        box=((0.0, 1.0), (0.0, 1 / SQRT3)),
        membership=_e1_member,
        boundary_curves=(
            ("y=0", _segment((0.0, 0.0), (1.0, 0.0))),
            ("x=0", _segment((0.0, 0.0), (0.0, 1 / SQRT3))),
            ("curved", _curved),
        ),
    )


def _segment(p0, p1):
    def curve(s):
        s = np.asarray(s, dtype=float)
        return p0[0] + (p1[0] - p0[0]) * s, p0[1] + (p1[1] - p0[1]) * s

    return curve


def box_region(x_lo, x_hi, y_lo, y_hi) -> Region2D:
    def member(x, y):
        return (x >= x_lo) & (x <= x_hi) & (y >= y_lo) & (y <= y_hi)

    return Region2D(
        box=((x_lo, x_hi), (y_lo, y_hi)),
        membership=member,
        boundary_curves=(
            ("bottom", _segment((x_lo, y_lo), (x_hi, y_lo))),
            ("top", _segment((x_lo, y_hi), (x_hi, y_hi))),
            ("left", _segment((x_lo, y_lo), (x_lo, y_hi))),
            ("right", _segment((x_hi, y_lo), (x_hi, y_hi))),
        ),
    )


# objectives


def gamma3_objective(x, y):
    """x^3/3 + x y + sqrt(1 - x^2 - 3 y^2)/sqrt(5), root argument clamped at 0."""
    return x**3 / 3 + x * y + np.sqrt(np.maximum(1 - x * x - 3 * y * y, 0.0)) / SQRT5


def gamma3_gradient(x, y):
    r = SQRT5 * np.sqrt(1 - x * x - 3 * y * y)
    return x * x + y - x / r, x - 3 * y / r


def gamma_diff_objective(u, v):
    return np.sqrt(np.maximum(1 - u * u - 3 * v * v, 0.0)) / SQRT5 + u**3 / 6


PSI = (Fraction(4, 3), Fraction(4, 3), Fraction(-4, 3), Fraction(1), Fraction(2, 3))


def psi(t):
    """4/3 + 4/3 t - 4/3 t^2 + t^3 + 2/3 t^4; exact for Fraction input."""
    if isinstance(t, (Fraction, int)):
        return sum(c * Fraction(t) ** k for k, c in enumerate(PSI))
    t = np.asarray(t, dtype=float)
    return sum(float(c) * t**k for k, c in enumerate(PSI))


def psi_prime(t):
    t = np.asarray(t, dtype=float)
    return sum(k * float(c) * t ** (k - 1) for k, c in enumerate(PSI) if k)


def psi_prime_decomposition(t):
    """4/3 (1 - t)^2 + 5/3 t^2 + 8/3 t^3."""
    t = np.asarray(t, dtype=float)
    return 4 / 3 * (1 - t) ** 2 + 5 / 3 * t**2 + 8 / 3 * t**3


# optimizer


@dataclass(frozen=True)
class OptResult:
    argmax: tuple
    value: float
    grid_resolution: int
    refined: bool
    interior: bool
    source: str = "interior"
    edge_maxima: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "argmax": list(self.argmax),
            "value": self.value,
            "grid_resolution": self.grid_resolution,
            "refined": self.refined,
            "interior": self.interior,
            "source": self.source,
            "edge_maxima": {k: {"argmax": list(p), "value": v} for k, (p, v) in self.edge_maxima.items()},
        }


def _grid_best(objective, region, xs, ys):
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = region.membership(X, Y)
    if not inside.any():
        return None
    with np.errstate(invalid="ignore"):
        V = np.where(inside, objective(X, Y), -np.inf)
    V = np.where(np.isnan(V), -np.inf, V)
    # first occurrence in C order = smallest x, then smallest y
    k = int(np.argmax(V))
    i, j = np.unravel_index(k, V.shape)
    return float(xs[i]), float(ys[j]), float(V[i, j])


def compass_polish(objective, region: Region2D, start, step: float, tol: float):
    """Compass search restricted to the region; halves the step on failure."""
    x, y = map(float, start)
    best = float(objective(x, y))
    dirs = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1))
    while step > tol:
        moved = False
        for dx, dy in dirs:
            nx, ny = x + dx * step, y + dy * step
            if not region.contains(nx, ny):
                continue
            v = float(objective(nx, ny))
            if v > best:
                x, y, best = nx, ny, v
                moved = True
                break
        if not moved:
            step /= 2
    return (x, y), best


def _golden_max(g, lo, hi, tol):
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    return (a + b) / 2


def edge_maximum(objective, curve, samples: int, tol: float):
    """Dense 1-D scan of s -> objective(curve(s)) on [0, 1], then golden refinement."""
    s = np.linspace(0.0, 1.0, samples)
    x, y = curve(s)
    with np.errstate(invalid="ignore"):
        v = np.nan_to_num(objective(x, y), nan=-np.inf)
    k = int(np.argmax(v))
    ds = 1.0 / (samples - 1)
    lo, hi = max(0.0, s[k] - ds), min(1.0, s[k] + ds)

    def g(t):
        px, py = curve(np.array([t]))
        return float(objective(px[0], py[0]))

    st = _golden_max(g, lo, hi, max(tol, 1e-15))
    candidates = [(g(t), t) for t in (st, float(s[k]), lo, hi)]
    vbest, sbest = max(candidates, key=lambda c: (c[0], -c[1]))
    px, py = curve(np.array([sbest]))
    return (float(px[0]), float(py[0])), float(vbest)


def _is_interior(region: Region2D, x, y, h=1e-7) -> bool:
    return all(region.contains(x + dx, y + dy) for dx, dy in ((h, 0), (-h, 0), (0, h), (0, -h)))


def maximize_2d(objective, region: Region2D, grid_n: int = 512, tol: float = 1e-12,
                stages: int = 3, shrink: int = 10) -> OptResult:
    """Grid scan of box ∩ region, `stages` zoomed grids, compass polish, edge scans.

    Each zoom stage covers +-2 cells of the previous grid with a cell `shrink`
    times smaller.  Edges are scanned in 1-D separately; the overall best wins,
    boundary/interior attribution follows from where it sits.
    """
    if tol <= 0:
        raise BoundError("tol must be positive")
    if grid_n < 2:
        raise BoundError("grid_n must be at least 2")
    (x_lo, x_hi), (y_lo, y_hi) = region.box
    xs, ys = np.linspace(x_lo, x_hi, grid_n), np.linspace(y_lo, y_hi, grid_n)
    found = _grid_best(objective, region, xs, ys)
    if found is None:
        raise BoundError("region has no grid points inside its box")
    bx, by, bv = found
    hx, hy = (x_hi - x_lo) / (grid_n - 1), (y_hi - y_lo) / (grid_n - 1)
    m = 4 * shrink + 1
    for _ in range(stages):
        sub_x = np.clip(np.linspace(bx - 2 * hx, bx + 2 * hx, m), x_lo, x_hi)
        sub_y = np.clip(np.linspace(by - 2 * hy, by + 2 * hy, m), y_lo, y_hi)
        zoom = _grid_best(objective, region, sub_x, sub_y)
        if zoom is not None and zoom[2] > bv:
            bx, by, bv = zoom
        hx, hy = hx / shrink, hy / shrink
    (px, py), pv = compass_polish(objective, region, (bx, by), max(hx, hy), tol)

    edges = {}
    for name, curve in region.boundary_curves:
        edges[name] = edge_maximum(objective, curve, 8 * grid_n, tol)

    best_pt, best_v, source = (px, py), pv, "interior"
    for name in sorted(edges):
        pt, v = edges[name]
        if v > best_v + 1e-15:
            best_pt, best_v, source = pt, v, name
    interior = _is_interior(region, *best_pt)
    if not interior and source == "interior":
        source = "boundary"
    value = float(objective(*best_pt))
    return OptResult(
        argmax=(float(best_pt[0]), float(best_pt[1])),
        value=value,
        grid_resolution=grid_n,
        refined=stages > 0,
        interior=interior,
        source=source,
        edge_maxima=edges,
    )


def numerical_gradient(objective, x, y, h=1e-6):
    gx = (objective(x + h, y) - objective(x - h, y)) / (2 * h)
    gy = (objective(x, y + h) - objective(x, y - h)) / (2 * h)
    return float(gx), float(gy)


# reproductions


GAMMA3_STATED = 0.5566178
GAMMA3_STATED_ARGMAX = (0.81267, 0.243532)


def gamma3_bound(grid_n: int = 512, stationarity_tol: float = 1e-6) -> OptResult:
    res = maximize_2d(gamma3_objective, quarter_ellipse_region(), grid_n=grid_n)
    gx, gy = gamma3_gradient(*res.argmax)
    if not res.interior or max(abs(gx), abs(gy)) > stationarity_tol:
        raise StationarityError(f"maximizer {res.argmax} is not an interior critical point ({gx}, {gy})")
    return res


@dataclass(frozen=True)
class EdgeFinding:
    """Recomputed curved-edge maximum of the |gamma_3| objective."""

    argmax: tuple
    value: float
    stated_edge_bound: float
    global_max: float

    @property
    def exceeds_stated(self) -> bool:
        return self.value > self.stated_edge_bound

    @property
    def below_global(self) -> bool:
        return self.value < self.global_max

    def to_json_obj(self) -> dict:
        return {
            "argmax": list(self.argmax),
            "value": self.value,
            "stated_edge_bound": self.stated_edge_bound,
            "global_max": self.global_max,
            "exceeds_stated": self.exceeds_stated,
            "below_global": self.below_global,
        }


def gamma3_curved_edge(result: OptResult | None = None) -> EdgeFinding:
    res = result if result is not None else gamma3_bound()
    pt, v = res.edge_maxima["curved"]
    return EdgeFinding(argmax=pt, value=v, stated_edge_bound=1 / SQRT5, global_max=res.value)


def gamma_diff_bound(grid_n: int = 512) -> OptResult:
    return maximize_2d(gamma_diff_objective, quarter_ellipse_region(), grid_n=grid_n)


@dataclass(frozen=True)
class PsiCheck:
    psi_at_1: Fraction
    psi_at_0: Fraction
    grid_points: int
    min_decomposition: float
    max_expansion_gap: float

    @property
    def positive(self) -> bool:
        return self.min_decomposition > 0

    def to_json_obj(self) -> dict:
        return {
            "psi_at_1": str(self.psi_at_1),
            "psi_at_0": str(self.psi_at_0),
            "grid_points": self.grid_points,
            "min_decomposition": self.min_decomposition,
            "max_expansion_gap": self.max_expansion_gap,
            "positive": self.positive,
        }


def inverse_h22_bound(grid_points: int = 10_000) -> PsiCheck:
    """psi' > 0 on [0, 1] through its positive decomposition, so max psi = psi(1)."""
    t = np.linspace(0.0, 1.0, grid_points)
    dec = psi_prime_decomposition(t)
    gap = float(np.max(np.abs(dec - psi_prime(t))))
    check = PsiCheck(
        psi_at_1=psi(Fraction(1)),
        psi_at_0=psi(Fraction(0)),
        grid_points=grid_points,
        min_decomposition=float(dec.min()),
        max_expansion_gap=gap,
    )
    if not check.positive or gap > 1e-12:
        raise BoundError("psi' decomposition check failed")
    return check


def fekete_szego_constant(tol: float = 1e-13) -> tuple:
    """Root of e^lam = 4 lam in (0, 1) by bisection, and the sharp |a_3| - |a_2| bound."""
    g = lambda lam: math.exp(lam) - 4 * lam
    lo, hi = 0.0, 1.0
    if not (g(lo) > 0 > g(hi)):
        raise BoundError("no sign change of e^lam - 4 lam on (0, 1)")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    lam = (lo + hi) / 2
    e = math.exp(-lam)
    return lam, 0.75 + e * (2 * e - 1)


def sign_changes(func, lo: float, hi: float, step: float) -> int:
    t = np.arange(lo + step, hi, step)
    s = np.sign(func(t))
    return int(np.sum(s[1:] != s[:-1]))


def proof_chain_margins(f: TruncatedSeries) -> dict:
    """Check, for one function, the intermediate estimates of the three proofs.

    Each entry is (upper estimate - actual value); all should be >= 0 for a
    univalent f.
    """
    t = odd_grunsky_table(f)
    r = functional_report(f)
    u, v = abs(t.w(1, 1)), abs(t.w(1, 3))
    return {
        "gamma3": float(gamma3_objective(u, v)) - abs(r.gam(3)),
        "gamma3_minus_gamma2": float(gamma_diff_objective(u, v)) - r.scalar("gamma_diff_3"),
        "inverse_h22": float(psi(u)) - abs(r.h22_inv),
        "inverse_h22_intermediate": 4 * u * (u**3 / 6 + u**2 / 4 + 1 / 3) + 4 * v**2 - abs(r.h22_inv),
    }


# statements and scans


@dataclass(frozen=True)
class BoundStatement:
    id: str
    functional: str
    bound: float
    precondition: str = "none"
    status: str = "cited"
    anchor: str = ""
    lower_end: float | None = None  # known lower end of the optimal constant, when stated

    def __post_init__(self):
        if not (math.isfinite(self.bound) and self.bound > 0):
            raise BoundError(f"{self.id}: bound must be finite and positive")
        if self.precondition not in PRECONDITIONS:
            raise BoundError(f"{self.id}: unknown precondition {self.precondition!r}")
        if self.status not in ("proved_here", "cited", "conjecture"):
            raise BoundError(f"{self.id}: unknown status {self.status!r}")

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "functional": self.functional,
            "bound": self.bound,
            "precondition": self.precondition,
            "status": self.status,
            "anchor": self.anchor,
            "lower_end": self.lower_end,
        }


def _even_free(f: TruncatedSeries) -> bool:
    return bool(np.all(np.abs(f.coeffs[2::2]) <= ZERO_COEFF_TOL))


PRECONDITIONS = {
    "none": lambda f: True,
    "a2_zero": lambda f: abs(f[2]) <= ZERO_COEFF_TOL,
    "a3_zero": lambda f: abs(f[3]) <= ZERO_COEFF_TOL,
    "odd": _even_free,
}

_LAM0, _FS_BOUND = fekete_szego_constant()


def _statements() -> list[BoundStatement]:
    S = BoundStatement
    out = [
        S("log_gamma3", "abs_gamma3", 0.5566178, status="proved_here", anchor="|gamma_3| <= 0.5566178"),
        S("log_gamma4", "abs_gamma4", 0.51059, anchor="|gamma_4| <= 0.51059"),
        S("log_diff_gamma3_gamma2", "gamma_diff_3", 1 / SQRT5, status="proved_here",
          anchor="|gamma_3| - |gamma_2| <= 1/sqrt(5)"),
        S("log_diff_gamma4_gamma3", "gamma_diff_4", 1 / SQRT7, anchor="|gamma_4| - |gamma_3| <= 1/sqrt(7)"),
        S("hankel22_first_estimate", "abs_h22", 11 / 3, anchor="|H22(f)| <= A, 1 <= A <= 11/3", lower_end=1.0),
        S("hankel31_first_estimate", "abs_h31", (32 + math.sqrt(285)) / 15,
          anchor="|H31(f)| <= B, 4/9 <= B <= (32+sqrt(285))/15", lower_end=4 / 9),
        S("hankel22", "abs_h22", 1.3614, anchor="|H22(f)| <= 1.3614", lower_end=1.0),
        S("hankel31", "abs_h31", 1.6787, anchor="|H31(f)| <= 1.6787", lower_end=4 / 9),
        S("hankel23_a2_zero", "abs_h23", 2.02757, "a2_zero", anchor="|H23(f)| <= 2.02757 if a_2 = 0"),
        S("hankel23", "abs_h23", 4.8986977, anchor="|H23(f)| <= 4.8986977"),
        S("inverse_hankel22", "abs_h22_inv", 3.0, status="proved_here", anchor="|H22(f^-1)| <= 3 (sharp)"),
        S("inverse_hankel31", "abs_h31_inv", 2.36639, anchor="|H31(f^-1)| <= 2.36639"),
        S("hankel22_gap", "abs_hankel_gap22", 4.0, status="proved_here",
          anchor="|H22(f^-1) - H22(f)| <= 4 (sharp)"),
        S("hankel31_gap", "abs_hankel_gap31", 1.0, status="proved_here",
          anchor="|H31(f^-1) - H31(f)| <= 1 (sharp)"),
        S("inverse_hankel32_a2_zero", "abs_h32_inv", SQRT3 / (6 * SQRT7) + 2 * SQRT3, "a2_zero",
          anchor="|H32(f^-1)| <= sqrt3/(6 sqrt7) + 2 sqrt3 if a_2 = 0"),
        S("log_hankel21", "abs_loghank21", 1 / 3, anchor="|gamma_1 gamma_3 - gamma_2^2| <= 1/3"),
        S("a2_zero_a3", "abs_a3", 1.0, "a2_zero", anchor="|a_3| <= 1 if a_2 = 0"),
        S("a2_zero_a4", "abs_a4", 2 / 3, "a2_zero", anchor="|a_4| <= 2/3 if a_2 = 0"),
        S("a2_zero_a5", "abs_a5", 0.75 + 1 / SQRT7, "a2_zero", anchor="|a_5| <= 3/4 + 1/sqrt(7) if a_2 = 0"),
        S("a2_zero_hankel22", "abs_h22", 1.0, "a2_zero", anchor="|H22(f)| <= 1 if a_2 = 0"),
        S("a2_zero_hankel31", "abs_h31", 1.026, "a2_zero", anchor="|H31(f)| <= 1.026 if a_2 = 0"),
        S("a3_zero_a2", "abs_a2", 1.0, "a3_zero", anchor="|a_2| <= 1 if a_3 = 0"),
        S("a3_zero_a4", "abs_a4", math.sqrt(21 / 5) / 4 + 5 / 8, "a3_zero",
          anchor="|a_4| <= sqrt(21/5)/4 + 5/8 if a_3 = 0"),
        S("a3_zero_a5", "abs_a5", 1.674896577, "a3_zero", anchor="|a_5| <= 1.674896577 if a_3 = 0"),
        S("a3_zero_hankel22", "abs_h22", 1.1373, "a3_zero", anchor="|H22(f)| <= 1.1373 if a_3 = 0"),
        S("fekete_szego_upper", "a3_minus_a2", _FS_BOUND, anchor="|a_3| - |a_2| <= 3/4 + e^-l(2e^-l - 1), 4l = e^l"),
        S("fekete_szego_lower", "a2_minus_a3", 1.0, anchor="-1 <= |a_3| - |a_2|"),
        S("coeff_diff_a4_a3", "a4_minus_a3", 1.75185, anchor="|a_4| - |a_3| <= 1.75185"),
        S("coeff_diff_a5_a3_odd", "a5_minus_a3", 2 / SQRT7, "odd", anchor="|a_5| - |a_3| <= 2/sqrt(7), f odd"),
        S("coeff_a2a3_minus_a4", "abs_a2a3_minus_a4", 2.10064, anchor="|a_2 a_3 - a_4| <= 2.10064"),
        S("coeff_diff_a5_a4", "a5_minus_a4", 2.3297, anchor="|a_5| - |a_4| <= 2.3297"),
        S("remark_a2a3_minus_a4", "abs_a2a3_minus_a4", 2.0, status="conjecture",
          anchor="|a_2 a_3 - a_4| <= 2 (believed)"),
    ]
    for n in CONJECTURE_RANGE:
        out.append(S(f"conjecture_gamma_diff_{n}", f"gamma_diff_{n}", 1 / math.sqrt(2 * n - 1),
                     status="conjecture", anchor=f"|gamma_{n}| - |gamma_{n - 1}| <= 1/sqrt({2 * n - 1})"))
    return out


CONJECTURE_RANGE = range(3, 9)
STATEMENTS = tuple(_statements())
STATEMENT_IDS = tuple(s.id for s in STATEMENTS)


def statement(statement_id: str) -> BoundStatement:
    for s in STATEMENTS:
        if s.id == statement_id:
            return s
    raise BoundError(f"unknown statement id {statement_id!r}")


@dataclass(frozen=True)
class ScanReport:
    statement_id: str
    samples_tested: int
    max_observed: float
    bound: float
    margin: float
    witness: str
    violated: bool
    status: str = "cited"
    lower_end_attained: bool | None = None

    def to_json_obj(self) -> dict:
        def num(v):
            return None if v is None or (isinstance(v, float) and math.isnan(v)) else v

        return {
            "statement_id": self.statement_id,
            "samples_tested": self.samples_tested,
            "max_observed": num(self.max_observed),
            "bound": self.bound,
            "margin": num(self.margin),
            "witness": self.witness,
            "violated": self.violated,
            "status": self.status,
            "lower_end_attained": self.lower_end_attained,
        }


CSV_COLUMNS = ("statement_id", "samples", "max_observed", "bound", "margin", "witness_name")


def scan_csv_rows(reports: Sequence[ScanReport]) -> list[dict]:
    return [
        {
            "statement_id": r.statement_id,
            "samples": r.samples_tested,
            "max_observed": "" if math.isnan(r.max_observed) else repr(r.max_observed),
            "bound": repr(r.bound),
            "margin": "" if math.isnan(r.margin) else repr(r.margin),
            "witness_name": r.witness,
        }
        for r in reports
    ]


def evaluate_catalog(catalog: Sequence[NamedFunction], order: int = 12, threads: int = 1):
    """(member, series, FunctionalReport) triples in catalog order."""

    def one(member):
        f = member.series(order)
        return member, f, functional_report(f)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, catalog))
    return [one(m) for m in catalog]


def scan_statement(stmt: BoundStatement, evaluated) -> ScanReport:
    if stmt.functional not in FUNCTIONAL_NAMES:
        raise BoundError(f"{stmt.id}: unknown functional {stmt.functional!r}")
    cond = PRECONDITIONS[stmt.precondition]
    best, witness, tested = -math.inf, "", 0
    # values within TIE_TOL count as ties; ties keep the smallest witness label
    for member, f, report in sorted(evaluated, key=lambda e: e[0].label):
        if not cond(f):
            continue
        tested += 1
        val = report.scalar(stmt.functional)
        if val > best + TIE_TOL:
            best, witness = val, member.label
        elif val > best:
            best = val
    if tested == 0:
        return ScanReport(stmt.id, 0, math.nan, stmt.bound, math.nan, "", False, stmt.status,
                          None if stmt.lower_end is None else False)
    lower = None if stmt.lower_end is None else bool(best >= stmt.lower_end - VIOLATION_TOL)
    return ScanReport(
        statement_id=stmt.id,
        samples_tested=tested,
        max_observed=float(best),
        bound=stmt.bound,
        margin=float(stmt.bound - best),
        witness=witness,
        violated=bool(best > stmt.bound + VIOLATION_TOL),
        status=stmt.status,
        lower_end_attained=lower,
    )


def bound_scan(statements: Sequence[BoundStatement], catalog: Sequence[NamedFunction],
               order: int = 12, threads: int = 1) -> list[ScanReport]:
    """One ScanReport per statement, sorted by statement id."""
    if not catalog:
        raise BoundError("catalog is empty")
    for s in statements:
        if s.functional not in FUNCTIONAL_NAMES:
            raise BoundError(f"{s.id}: unknown functional {s.functional!r}")
    evaluated = evaluate_catalog(catalog, order=order, threads=threads)
    return sorted((scan_statement(s, evaluated) for s in statements), key=lambda r: r.statement_id)


def conjecture_table(reports: Sequence[ScanReport]) -> list[dict]:
    by_id = {r.statement_id: r for r in reports}
    rows = []
    for n in CONJECTURE_RANGE:
        r = by_id.get(f"conjecture_gamma_diff_{n}")
        if r is None:
            continue
        rows.append({"n": n, "bound": r.bound, "max_observed": r.max_observed, "margin": r.margin,
                     "witness": r.witness, "violated": r.violated})
    return rows


def proved_violations(reports: Sequence[ScanReport]) -> list[ScanReport]:
    return [r for r in reports if r.violated and r.status != "conjecture"]


def landscape(objective, region: Region2D, n: int = 101):
    """(x, y, value) triples on an n x n grid of the region's box, inside points only."""
    (x_lo, x_hi), (y_lo, y_hi) = region.box
    X, Y = np.meshgrid(np.linspace(x_lo, x_hi, n), np.linspace(y_lo, y_hi, n), indexing="ij")
    inside = region.membership(X, Y)
    V = objective(X, Y)
    return [(float(x), float(y), float(v)) for x, y, v in zip(X[inside], Y[inside], V[inside])]


__all__ = [
    "BoundStatement",
    "OptResult",
    "Region2D",
    "STATEMENTS",
    "ScanReport",
    "bound_scan",
    "fekete_szego_constant",
    "gamma3_bound",
    "gamma_diff_bound",
    "inverse_h22_bound",
    "maximize_2d",
]
