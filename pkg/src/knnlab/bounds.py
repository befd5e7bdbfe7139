"""Certified numerical bounds for the crossing and connectivity thresholds.

This module is the verification engine of the package.  It provides

* closed-form model constants (edge-length coefficients, blow-up roots,
  exponent coefficients) evaluated at full double precision;
* probability-bound building blocks (``full_empty_bound`` and friends)
  used by the exponent chains;
* one-dimensional exponent maximisations over area parameters;
* the root solve for the neighbour-capture ratio ``mu``;
* conservative grid certificates for the four crossing-frame area
  bounds (via :mod:`knnlab._census`), the crossing ratio derived from
  them, and the full connectivity-threshold certificate suite.

Every rigorous claim is emitted as a :class:`Certificate` — a
serialisable record holding the computed value, the target constant it
must beat, the comparison direction, and the extremal witness.  Strict
inequalities are slackened by an absolute guard of ``1e-12`` so that a
certificate never passes on rounding noise alone.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import _census
from .geom import Point, disk_lens_area, disks_intersection_area

__all__ = [
    "CRESCENT_AREA",
    "R_HAT",
    "ANNULUS_SCALE",
    "SPLIT_FRACTION",
    "TILE_AREA_CAP",
    "COMPONENT_AREA_CAP_INTERIOR",
    "COMPONENT_AREA_CAP_EDGE",
    "RESIDUAL_SPLIT_AREA",
    "CONNECTIVITY_LOWER_C",
    "CONNECTIVITY_THRESHOLD",
    "CROSSING_THRESHOLD",
    "RATIO_TARGET",
    "CENSUS_TARGETS",
    "GUARD",
    "ConditionNotMet",
    "ModelConstants",
    "model_constants",
    "full_empty_bound",
    "full_empty2_bound",
    "iso_blowup_lower",
    "solve_y_cap",
    "easy_connectivity_constant",
    "corner_exponent_coefficient",
    "edge_exponent_coefficient",
    "ExponentProblem",
    "maximize_exponent",
    "tile_density_problem",
    "component_size_problem",
    "cap_overflow_exponent",
    "solve_mu",
    "annulus_residual_area",
    "ring_occupancy_area",
    "far_point_exclusion_area",
    "far_region_areas",
    "capture_chain",
    "Certificate",
    "make_certificate",
    "SquareCandidate",
    "square_candidate_a1",
    "square_candidate_a2",
    "verify_L_plus",
    "verify_L_minus",
    "verify_H_plus",
    "verify_H_minus",
    "crossing_ratio",
    "threshold_suite",
]

#: Area of the crescent ``D_a(rho) \ D_b(rho)`` at unit radius when the two
#: centres are one radius apart: ``pi/3 + sqrt(3)/2``.
CRESCENT_AREA = math.pi / 3.0 + math.sqrt(3.0) / 2.0

#: Conservative inner-disk radius (relative to ``rho``) used throughout the
#: blow-up chains: ``1 - 1e-4``.
R_HAT = 1.0 - 1e-4

#: Annulus scale factor of the far-point argument.
ANNULUS_SCALE = 1.0767

#: Pigeonhole split fraction for small-component point counts.
SPLIT_FRACTION = 0.309

#: Upper range of the tile-density maximisation (maximal near-tile area).
TILE_AREA_CAP = CRESCENT_AREA + math.pi / 1000.0

#: Working caps on the tile-set area for the component-size maximisation.
#: The interior working cap 11.7 is deliberately far below the true
#: blow-up root ``pi*r^2*(1+sqrt(2))^2`` (about 18.31); any cap at or
#: below the true root keeps the chain conservative.
COMPONENT_AREA_CAP_INTERIOR = 11.7
COMPONENT_AREA_CAP_EDGE = 5.86

#: Area of the residual region in the split fallback branch.
RESIDUAL_SPLIT_AREA = 1.73

#: Coefficient at which the small-component exponent chains are evaluated
#: (the best previously-known lower bound on the connectivity constant).
CONNECTIVITY_LOWER_C = 0.7209

#: Connectivity threshold certified by the full suite.
CONNECTIVITY_THRESHOLD = 0.9684

#: Crossing threshold derived from the area-ratio certificate.
CROSSING_THRESHOLD = 0.7102

#: Target for the crossing area ratio (occupied / total).
RATIO_TARGET = 0.2446

#: Target constants and comparison directions for the four area censuses.
CENSUS_TARGETS: Dict[str, Tuple[float, str]] = {
    "lplus": (0.3411, ">="),
    "lminus": (0.3564, ">="),
    "hplus": (0.1300, "<="),
    "hminus": (0.0958, "<="),
}

#: Absolute slack applied to every strict certificate comparison.
GUARD = 1e-12


class ConditionNotMet(ValueError):
    """A bound's applicability condition failed for the given inputs."""


# ---------------------------------------------------------------------------
# model constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelConstants:
    """Closed-form constants of the model at neighbour count ``k = c log n``.

    ``c_minus`` and ``c_plus`` are the edge-length coefficients: with high
    probability every edge joins points within distance
    ``R = sqrt(c_plus log n / pi)`` and every pair within
    ``r = sqrt(c_minus log n / pi)`` in the same neighbourhood is joined.
    ``d`` scales the small-component diameter cutoff ``d sqrt(log n)``.
    """

    c: float
    c_minus: float
    c_plus: float
    d: float
    c_prime: float = 0.0
    n: Optional[float] = None
    r: Optional[float] = None
    R: Optional[float] = None

    @property
    def separation(self) -> Optional[float]:
        """Guaranteed separation ``r/5`` between distinct components."""
        return None if self.r is None else self.r / 5.0

    def to_json_dict(self) -> dict:
        return {
            "c": self.c,
            "c_minus": self.c_minus,
            "c_plus": self.c_plus,
            "d": self.d,
            "c_prime": self.c_prime,
            "n": self.n,
            "r": self.r,
            "R": self.R,
            "separation": self.separation,
        }


def model_constants(c: float, n: Optional[float] = None,
                    c_prime: float = 0.0) -> ModelConstants:
    """Evaluate the closed-form model constants at coefficient ``c``.

    Parameters
    ----------
    c : float
        Neighbour coefficient (``k = c log n``); must be positive.
    n : float, optional
        Window area; when given, the absolute radii ``r`` and ``R`` are
        included (``n > 1`` required so ``log n > 0``).
    c_prime : float, optional
        Extra competitor in the diameter coefficient ``d`` (defaults to 0;
        the remaining terms dominate for all coefficients of interest).
    """
    if c <= 0.0:
        raise ValueError("c must be positive")
    c_minus = c * math.exp(-1.0 - 1.0 / c)
    c_plus = 4.0 * math.e * (1.0 + c)
    d = max(c_prime, 4.0 * math.sqrt(c_plus / math.pi),
            1.0 / (4.0 * math.sqrt(c_minus / math.pi)), 1.0)
    r = R = None
    if n is not None:
        if n <= 1.0:
            raise ValueError("n must exceed 1")
        r = math.sqrt(c_minus * math.log(n) / math.pi)
        R = math.sqrt(c_plus * math.log(n) / math.pi)
    return ModelConstants(c=c, c_minus=c_minus, c_plus=c_plus, d=d,
                          c_prime=c_prime, n=n, r=r, R=R)


# ---------------------------------------------------------------------------
# probability-bound building blocks
# ---------------------------------------------------------------------------


def full_empty_bound(area_x: float, area_y: float, k: float) -> float:
    """Probability bound that a region of area ``area_x`` holds ``k``
    points while an adjacent region of area ``area_y`` holds none:
    ``(area_x / (area_x + area_y)) ** k``.
    """
    if area_x < 0.0 or area_y < 0.0 or k < 0.0:
        raise ValueError("areas and k must be non-negative")
    total = area_x + area_y
    if total == 0.0:
        return 1.0
    return (area_x / total) ** k


def full_empty2_bound(area_x: float, area_y: float, area_z: float,
                      m: float, k: float) -> float:
    """Two-region occupancy bound ``(2X/S)**(m*k) * (2Y/S)**k`` with
    ``S = X + Y + Z``.

    Requires ``X <= Y + Z`` and ``Y <= X + Z`` (each region no larger
    than the rest combined); raises :class:`ConditionNotMet` otherwise —
    callers branch on exactly this condition.
    """
    if min(area_x, area_y, area_z) < 0.0 or m < 0.0 or k < 0.0:
        raise ValueError("areas, m and k must be non-negative")
    if area_x > area_y + area_z:
        raise ConditionNotMet(
            "first area exceeds the sum of the other two")
    if area_y > area_x + area_z:
        raise ConditionNotMet(
            "second area exceeds the sum of the other two")
    total = area_x + area_y + area_z
    if total == 0.0:
        return 1.0
    return ((2.0 * area_x / total) ** (m * k)
            * (2.0 * area_y / total) ** k)


def iso_blowup_lower(area_y, r: float, boundary: bool = False):
    """Isoperimetric lower bound on the area of the ``r``-blow-up ring of
    a set of area ``area_y``: ``pi r^2 + 2 r sqrt(pi area_y)`` in the
    interior, halved appropriately against a straight window edge.
    Accepts scalars or numpy arrays for ``area_y``.
    """
    area_y = np.asarray(area_y, dtype=float)
    if np.any(area_y < 0.0) or r <= 0.0:
        raise ValueError("area must be non-negative and r positive")
    if boundary:
        out = math.pi * r * r / 2.0 + r * np.sqrt(math.pi * area_y)
    else:
        out = math.pi * r * r + 2.0 * r * np.sqrt(math.pi * area_y)
    return float(out) if out.ndim == 0 else out


def solve_y_cap(boundary: bool, r: float = R_HAT) -> float:
    """Positive root of ``area = iso_blowup_lower(area, r, boundary)``,
    in closed form via the quadratic in ``sqrt(area)``.

    Above this root a tile set would outgrow its own blow-up ring, so it
    is the natural cap for the component-size maximisation.  Interior:
    ``pi r^2 (1+sqrt(2))^2``; boundary: ``pi r^2 (1+sqrt(3))^2 / 4``.
    """
    if r <= 0.0:
        raise ValueError("r must be positive")
    if boundary:
        return math.pi * r * r * (1.0 + math.sqrt(3.0)) ** 2 / 4.0
    return math.pi * r * r * (1.0 + math.sqrt(2.0)) ** 2


def easy_connectivity_constant() -> float:
    """Coefficient above which the simple empty-crescent argument already
    forces connectivity: ``1 / log((8 pi + 3 sqrt 3)/(2 pi + 3 sqrt 3))``.
    """
    return 1.0 / math.log((8.0 * math.pi + 3.0 * math.sqrt(3.0))
                          / (2.0 * math.pi + 3.0 * math.sqrt(3.0)))


def corner_exponent_coefficient() -> float:
    """Per-``c`` exponent coefficient ruling out small components near a
    window corner: ``log((pi/4 + A)/A)`` with ``A`` the crescent area.
    """
    return math.log((math.pi / 4.0 + CRESCENT_AREA) / CRESCENT_AREA)


def edge_exponent_coefficient() -> float:
    """Per-``c`` exponent coefficient for components near a window edge:
    ``log((pi/2 + A)/A)``.
    """
    return math.log((math.pi / 2.0 + CRESCENT_AREA) / CRESCENT_AREA)


# ---------------------------------------------------------------------------
# exponent maximisations
# ---------------------------------------------------------------------------


@dataclass
class ExponentProblem:
    """A one-dimensional exponent maximisation over a closed interval.

    ``objective`` maps an area parameter to the coefficient of ``log n``
    in a probability bound; it must accept scalars and numpy arrays.
    """

    name: str
    objective: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    params: dict = field(default_factory=dict)


def maximize_exponent(problem: ExponentProblem) -> Tuple[float, float]:
    """Global maximum of ``problem.objective`` on ``[lo, hi]``.

    A dense grid scan (a million intervals, so the step never exceeds a
    millionth of the range) locates the best sample; an interior best is
    polished by golden-section search to ``1e-12``.  Endpoints are always
    evaluated, and an endpoint maximum is returned as-is.

    Returns ``(argmax, value)``.
    """
    lo, hi = float(problem.lo), float(problem.hi)
    if not hi > lo:
        raise ValueError("empty maximisation interval")
    xs = np.linspace(lo, hi, 1_000_001)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(problem.objective(xs), dtype=float)
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    i = int(np.argmax(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    if i == 0 or i == len(xs) - 1:
        return best_x, best_v
    a, b = float(xs[i - 1]), float(xs[i + 1])
    try:
        res = minimize_scalar(lambda t: -float(problem.objective(t)),
                              bracket=(a, best_x, b), method="golden",
                              options={"xtol": 1e-12})
        x = float(res.x)
        if lo <= x <= hi:
            v = float(problem.objective(x))
            if math.isfinite(v) and v > best_v:
                best_x, best_v = x, v
    except (ValueError, RuntimeError):
        pass  # flat bracket: the grid sample already is the maximum
    return best_x, best_v


def tile_density_problem(c: float = CONNECTIVITY_LOWER_C,
                         boundary: bool = False) -> ExponentProblem:
    """Exponent that the tiles near a small component hold ``k`` points
    while their empty blow-up ring holds none, maximised over the
    near-tile area ``A`` in ``(0, TILE_AREA_CAP]``:
    ``c * log(A / (A + blowup(A)))``.
    """
    def objective(A):
        A = np.asarray(A, dtype=float)
        blow = iso_blowup_lower(np.maximum(A, 0.0), R_HAT, boundary)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = c * np.log(A / (A + blow))
        return out

    side = "edge" if boundary else "interior"
    return ExponentProblem(name=f"tile-density-{side}", objective=objective,
                           lo=0.0, hi=TILE_AREA_CAP,
                           params={"c": c, "boundary": boundary})


def component_size_problem(c: float = CONNECTIVITY_LOWER_C,
                           boundary: bool = False) -> ExponentProblem:
    """Exponent that a small component keeps more than the split fraction
    of ``k`` points, maximised over the tile-set area ``A`` up to the
    working cap: the two-region occupancy bound with the crescent and the
    blow-up ring as competitors.
    """
    cap = COMPONENT_AREA_CAP_EDGE if boundary else COMPONENT_AREA_CAP_INTERIOR

    def objective(A):
        A = np.asarray(A, dtype=float)
        blow = iso_blowup_lower(np.maximum(A, 0.0), R_HAT, boundary)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = c * (SPLIT_FRACTION * np.log(2.0 * A)
                       + np.log(2.0 * CRESCENT_AREA)
                       - (1.0 + SPLIT_FRACTION)
                       * np.log(CRESCENT_AREA + A + blow))
        return out

    side = "edge" if boundary else "interior"
    return ExponentProblem(name=f"component-size-{side}", objective=objective,
                           lo=0.0, hi=cap,
                           params={"c": c, "boundary": boundary})


def cap_overflow_exponent(c: float = CONNECTIVITY_LOWER_C,
                          boundary: bool = False) -> float:
    """Exponent of the branch where the tile-set area exceeds its working
    cap: the crescent must then hold ``k`` points while the (huge)
    blow-up ring at the cap stays empty.
    """
    cap = COMPONENT_AREA_CAP_EDGE if boundary else COMPONENT_AREA_CAP_INTERIOR
    blow = iso_blowup_lower(cap, R_HAT, boundary)
    return c * math.log(CRESCENT_AREA / (CRESCENT_AREA + blow))


# ---------------------------------------------------------------------------
# the capture-ratio root solve and supporting areas
# ---------------------------------------------------------------------------


def solve_mu(a1: float, a2: float, a3: float, a4: float) -> float:
    """Solve ``mu*a2 + sqrt(4*mu*a1*a3) = a1+a2+a3+a4`` for ``mu > 0``.

    The left side is the guaranteed point count of the capture argument;
    the right side is the total area feeding it.  Applicability requires
    ``a1 <= a3 < 2*a1`` (raises :class:`ConditionNotMet` otherwise) and
    positive ``a1``, ``a3``.  The root is found by bracketed root solving
    on the monotone left side and validated by back-substitution.
    """
    if a1 <= 0.0 or a3 <= 0.0 or a2 < 0.0 or a4 < 0.0:
        raise ValueError("need a1, a3 > 0 and a2, a4 >= 0")
    if not (a1 <= a3 < 2.0 * a1):
        raise ConditionNotMet(
            "capture argument requires a1 <= a3 < 2*a1")
    total = a1 + a2 + a3 + a4
    if a2 == 0.0:
        mu = total * total / (4.0 * a1 * a3)
    else:
        def f(mu):
            return mu * a2 + math.sqrt(4.0 * mu * a1 * a3) - total

        hi = 1.0
        while f(hi) < 0.0:
            hi *= 2.0
        mu = float(brentq(f, 0.0, hi, xtol=1e-14, rtol=8.9e-16))
    resid = mu * a2 + math.sqrt(4.0 * mu * a1 * a3) - total
    if abs(resid) > 1e-8 * total:
        raise ArithmeticError("capture-ratio root failed back-substitution")
    return mu


def ring_occupancy_area(lam: float = ANNULUS_SCALE) -> float:
    """Area of the neighbour crescent that the ``lam``-annulus adds over
    the unit lens: ``lens(1, 1, lam) - lens(1, 1, 1)``.
    """
    return disk_lens_area(1.0, 1.0, lam) - disk_lens_area(1.0, 1.0, 1.0)


def annulus_residual_area(lam: float = ANNULUS_SCALE) -> float:
    """Area of the ``lam``-annulus outside both the unit disk and the
    neighbour crescent: ``pi lam^2 - pi - ring_occupancy_area(lam)``.
    """
    return math.pi * lam * lam - math.pi - ring_occupancy_area(lam)


def far_point_exclusion_area(lam: float = ANNULUS_SCALE,
                             r: float = R_HAT) -> float:
    """Area guaranteed point-free around a far annulus point:
    ``pi + annulus_residual_area(lam) - pi (lam - r)^2``.
    """
    return math.pi + annulus_residual_area(lam) - math.pi * (lam - r) ** 2


def far_region_areas(lam: float = ANNULUS_SCALE) -> Dict[str, float]:
    """Exact areas of the far-point capture construction at scale ``lam``.

    The far point ``beta`` sits on the intersection of the circle of
    radius ``lam`` about ``a = (0, 0)`` and the unit circle about
    ``b = (1, 0)`` — the extremal position.  Returns the area of the
    capture region (``region``), its overlap with the neighbour crescent
    (``overlap``), and the ``beta`` coordinates.
    """
    bx = lam * lam / 2.0
    by = math.sqrt(lam * lam - bx * bx)
    t_unit = disks_intersection_area(
        [(bx, by, lam), (1.0, 0.0, 1.0), (0.0, 0.0, 1.0)])
    t_lam = disks_intersection_area(
        [(bx, by, lam), (1.0, 0.0, 1.0), (0.0, 0.0, lam)])
    region = (math.pi * lam * lam - disk_lens_area(lam, lam, lam)
              - t_unit + t_lam)
    overlap = disk_lens_area(1.0, 1.0, lam) - t_unit
    return {"region": region, "overlap": overlap, "beta": (bx, by),
            "t_unit": t_unit, "t_lam": t_lam}


def capture_chain(c: float = CONNECTIVITY_THRESHOLD,
                  use_rounded_areas: bool = False) -> Dict[str, float]:
    """Evaluate the neighbour-capture ratio ``mu`` and its exponent margin.

    With ``use_rounded_areas`` the chain is run from the 4-decimal area
    constants (2.31 and 0.6515) instead of the exactly computed areas;
    both variants clear the 2.8087 floor.
    """
    areas = far_region_areas()
    if use_rounded_areas:
        region, overlap = 2.31, 0.6515
    else:
        region, overlap = areas["region"], areas["overlap"]
    a4 = math.pi * R_HAT * R_HAT
    mu = solve_mu(CRESCENT_AREA - overlap, overlap, region - overlap, a4)
    return {
        "region": areas["region"],
        "overlap": areas["overlap"],
        "mu": mu,
        "margin": c * math.log(mu),
        "margin_floor": c * math.log(2.8087),
    }


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A machine-checkable record of one rigorous bound.

    ``comparator`` is one of ``">="``, ``"<="`` (strict with the 1e-12
    guard) or ``"~="`` (agreement within ``step``, which then holds the
    tolerance instead of a grid step).  ``witness`` is the extremal
    location or derived scalar, or ``None``.
    """

    name: str
    step: float
    computed: float
    target: float
    comparator: str
    witness: object
    passed: bool
    config_hash: str

    def check(self) -> bool:
        """Recompute the pass verdict from the stored fields."""
        return _passes(self.computed, self.target, self.comparator, self.step)

    def to_json_dict(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {
            "name": self.name,
            "step": self.step,
            "computed": self.computed,
            "target": self.target,
            "comparator": self.comparator,
            "witness": w,
            "passed": self.passed,
            "config_hash": self.config_hash,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())

    @staticmethod
    def from_json_dict(d: Mapping) -> "Certificate":
        w = d["witness"]
        if isinstance(w, list):
            w = tuple(w)
        return Certificate(name=d["name"], step=d["step"],
                           computed=d["computed"], target=d["target"],
                           comparator=d["comparator"], witness=w,
                           passed=d["passed"], config_hash=d["config_hash"])

    @staticmethod
    def load(path) -> "Certificate":
        with open(path, "r", encoding="utf-8") as fh:
            return Certificate.from_json_dict(json.load(fh))


def _passes(computed: float, target: float, comparator: str,
            tolerance: float) -> bool:
    if comparator == ">=":
        return computed >= target + GUARD
    if comparator == "<=":
        return computed <= target - GUARD
    if comparator == "~=":
        return abs(computed - target) <= tolerance
    raise ValueError(f"unknown comparator: {comparator!r}")


def _config_hash(config: Mapping) -> str:
    blob = json.dumps(dict(config), sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def make_certificate(name: str, step: float, computed: float, target: float,
                     comparator: str, witness=None,
                     config: Optional[Mapping] = None) -> Certificate:
    """Build a certificate, deriving the verdict and the config hash."""
    cfg = {"name": name, "step": step, "target": target,
           "comparator": comparator}
    if config:
        cfg.update(config)
    return Certificate(name=name, step=step, computed=float(computed),
                       target=float(target), comparator=comparator,
                       witness=witness,
                       passed=_passes(float(computed), float(target),
                                      comparator, step),
                       config_hash=_config_hash(cfg))


# ---------------------------------------------------------------------------
# per-square data and the four census certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareCandidate:
    """Certified per-square data for one candidate grid square.

    ``sigma`` is the certified lower bound and ``rho_max`` the certified
    upper bound on the neighbourhood radius, valid wherever the free
    point sits inside the square; ``h1`` and ``h2`` are the forced
    boundary locations (for the upper-frame point) or the fixed anchor
    locations (for the lower-frame point) whose distances produce
    ``sigma``.
    """

    center: Point
    s: float
    sigma: float
    rho_max: float
    h1: Point
    h2: Point

    def __post_init__(self) -> None:
        if self.sigma > self.rho_max:
            raise ValueError("certified radii out of order "
                             "(sigma exceeds rho_max)")


def square_candidate_a1(center, s: float) -> SquareCandidate:
    """Per-square certified radii for an upper-frame (``a1``) square."""
    cx, cy = (center.x, center.y) if isinstance(center, Point) else center
    sigma, rho_max, h1, h2 = _census.candidate_data_a1(cx, cy, s)
    return SquareCandidate(center=Point(cx, cy), s=s, sigma=sigma,
                           rho_max=rho_max, h1=Point(*h1), h2=Point(*h2))


def square_candidate_a2(center, s: float) -> SquareCandidate:
    """Per-square certified radii for a lower-frame (``a2``) square."""
    cx, cy = (center.x, center.y) if isinstance(center, Point) else center
    sigma, rho_max, h1, h2 = _census.candidate_data_a2(cx, cy, s)
    return SquareCandidate(center=Point(cx, cy), s=s, sigma=sigma,
                           rho_max=rho_max, h1=Point(*h1), h2=Point(*h2))


def _census_certificate(name: str, outcome: _census.CensusOutcome,
                        extra_config: Optional[Mapping] = None) -> Certificate:
    target, comparator = CENSUS_TARGETS[name]
    cfg = {"engine": "grid-census"}
    if extra_config:
        cfg.update(extra_config)
    return make_certificate(name=name, step=outcome.step,
                            computed=outcome.area, target=target,
                            comparator=comparator, witness=outcome.witness,
                            config=cfg)


def verify_L_plus(s: float, *, threads: Optional[int] = None,
                  progress=None) -> Certificate:
    """Certified lower bound on the upper empty-region area (must clear
    0.3411)."""
    out = _census.census_L_plus(s, progress=progress, threads=threads)
    return _census_certificate("lplus", out)


def verify_L_minus(s: float, *, threads: Optional[int] = None,
                   progress=None) -> Certificate:
    """Certified lower bound on the lower empty-region area (must clear
    0.3564)."""
    out = _census.census_L_minus(s, progress=progress, threads=threads)
    return _census_certificate("lminus", out)


def verify_H_plus(s: float, *, exclusion: str = "either",
                  threads: Optional[int] = None, progress=None) -> Certificate:
    """Certified upper bound on the upper occupied-region area (must stay
    below 0.1300).  See :func:`knnlab._census.census_H_plus` for the
    ``exclusion`` variants."""
    out = _census.census_H_plus(s, exclusion=exclusion, progress=progress,
                                threads=threads)
    return _census_certificate("hplus", out, {"exclusion": exclusion})


def verify_H_minus(s: float, *, semantics: str = "universal",
                   threads: Optional[int] = None,
                   progress=None) -> Certificate:
    """Certified upper bound on the lower occupied-region area (must stay
    below 0.0958).  See :func:`knnlab._census.census_H_minus` for the
    ``semantics`` variants."""
    out = _census.census_H_minus(s, semantics=semantics, progress=progress,
                                 threads=threads)
    return _census_certificate("hminus", out, {"semantics": semantics})


def crossing_ratio(s: float, *,
                   components: Optional[Mapping[str, Certificate]] = None,
                   exclusion: str = "either",
                   threads: Optional[int] = None,
                   progress=None) -> Certificate:
    """Certified bound on the occupied/total area ratio of a crossing
    frame, combining upper bounds for the occupied families with lower
    bounds for the empty families.

    The certificate's ``witness`` carries the derived coefficient
    threshold ``-1 / log(ratio)`` (0 when the ratio degenerates to 0).
    Pass ``components`` to reuse previously computed census certificates
    at the same step instead of recomputing all four.
    """
    if components is None:
        components = {
            "lplus": verify_L_plus(s, threads=threads, progress=progress),
            "lminus": verify_L_minus(s, threads=threads, progress=progress),
            "hplus": verify_H_plus(s, exclusion=exclusion, threads=threads,
                                   progress=progress),
            "hminus": verify_H_minus(s, threads=threads, progress=progress),
        }
    for key in ("lplus", "lminus", "hplus", "hminus"):
        if key not in components:
            raise ValueError(f"missing component certificate: {key}")
        if components[key].step != s:
            raise ValueError(
                f"component certificate {key} was computed at step "
                f"{components[key].step}, not {s}")
    h = components["hplus"].computed + components["hminus"].computed
    total = h + components["lplus"].computed + components["lminus"].computed
    ratio = 0.0 if total == 0.0 else h / total
    if ratio <= 0.0:
        c_threshold = 0.0
    elif ratio >= 1.0:
        c_threshold = math.inf
    else:
        c_threshold = -1.0 / math.log(ratio)
    return make_certificate(name="ratio", step=s, computed=ratio,
                            target=RATIO_TARGET, comparator="<=",
                            witness=c_threshold,
                            config={"exclusion": exclusion})


# ---------------------------------------------------------------------------
# the connectivity-threshold certificate suite
# ---------------------------------------------------------------------------


def threshold_suite(c: float = CONNECTIVITY_THRESHOLD) -> List[Certificate]:
    """Evaluate every closed-form link of the connectivity chain at
    coefficient ``c`` and return one certificate per link.

    Includes the 4-decimal agreement checks for the closed-form
    constants, the four exponent maximisations (interior links must
    clear -1, edge links -1/2), the far-point capture areas, and the
    capture-ratio margin.  All certificates pass at the certified
    threshold coefficient; lowering ``c`` shows which links fail first.
    """
    if c <= 0.0:
        raise ValueError("c must be positive")
    cfg = {"c": c}
    certs: List[Certificate] = []

    certs.append(make_certificate(
        "easy-connectivity-constant", 1e-4, easy_connectivity_constant(),
        1.0293, "~=", config=cfg))
    certs.append(make_certificate(
        "corner-exponent-coefficient", 1e-4, corner_exponent_coefficient(),
        0.3439, "~=", config=cfg))
    certs.append(make_certificate(
        "edge-exponent-coefficient", 1e-4, edge_exponent_coefficient(),
        0.5993, "~=", config=cfg))
    certs.append(make_certificate(
        "edge-tile-cap-root", 1e-3, solve_y_cap(boundary=True),
        5.861, "~=", config=cfg))
    # The interior working cap must not exceed the true blow-up root,
    # otherwise capping the maximisation range would be unsound.
    certs.append(make_certificate(
        "interior-tile-cap-root", 0.0, solve_y_cap(boundary=False),
        COMPONENT_AREA_CAP_INTERIOR, ">=", config=cfg))

    for boundary, floor in ((False, -1.0), (True, -0.5)):
        side = "edge" if boundary else "interior"
        prob = tile_density_problem(c, boundary)
        arg, val = maximize_exponent(prob)
        certs.append(make_certificate(
            f"tile-density-{side}-exponent", 0.0, val, floor, "<=",
            witness=arg, config=cfg))
        prob = component_size_problem(c, boundary)
        arg, val = maximize_exponent(prob)
        certs.append(make_certificate(
            f"component-size-{side}-exponent", 0.0, val, floor, "<=",
            witness=arg, config=cfg))
        certs.append(make_certificate(
            f"cap-overflow-{side}-exponent", 0.0,
            cap_overflow_exponent(c, boundary), -1.0, "<=", config=cfg))

    exclusion = far_point_exclusion_area()
    certs.append(make_certificate(
        "far-point-exclusion-area", 0.0, exclusion, 3.4602, ">=",
        config=cfg))
    certs.append(make_certificate(
        "far-point-exponent", 0.0,
        c * math.log(CRESCENT_AREA / (CRESCENT_AREA + exclusion)),
        -1.0, "<=", config=cfg))

    ring = ring_occupancy_area()
    a4 = math.pi * R_HAT * R_HAT
    certs.append(make_certificate(
        "ring-occupancy-area", 0.0, ring, 0.1632, "<=", config=cfg))
    certs.append(make_certificate(
        "ring-occupancy-exponent", 0.0,
        (1.0 - SPLIT_FRACTION) * c * math.log(ring / (ring + a4)),
        -1.0, "<=", config=cfg))
    lam = ANNULUS_SCALE
    certs.append(make_certificate(
        "annulus-residual-exponent", 0.0,
        (1.0 - SPLIT_FRACTION) * c * math.log(
            (math.pi * (lam * lam - 1.0))
            / (math.pi * (R_HAT * R_HAT + lam * lam - 1.0))),
        -1.0, "<=", config=cfg))
    certs.append(make_certificate(
        "residual-split-exponent", 0.0,
        c * math.log(RESIDUAL_SPLIT_AREA / (RESIDUAL_SPLIT_AREA + a4)),
        -1.0, "<=", config=cfg))

    far = far_region_areas()
    certs.append(make_certificate(
        "far-region-area", 0.0, far["region"], 2.31, "<=",
        witness=far["beta"], config=cfg))
    certs.append(make_certificate(
        "far-region-overlap", 1e-4, far["overlap"], 0.6515, "~=",
        witness=far["beta"], config=cfg))

    chain = capture_chain(c)
    chain_rounded = capture_chain(c, use_rounded_areas=True)
    certs.append(make_certificate(
        "neighbour-capture-ratio", 0.0, chain["mu"], 2.8087, ">=",
        config=cfg))
    certs.append(make_certificate(
        "neighbour-capture-ratio-rounded-areas", 0.0, chain_rounded["mu"],
        2.8087, ">=", config=cfg))
    certs.append(make_certificate(
        "capture-exponent-margin", 0.0, chain["margin"], 1.0, ">=",
        config=cfg))
    certs.append(make_certificate(
        "capture-exponent-margin-floor", 0.0, chain["margin_floor"], 1.0,
        ">=", config=cfg))
    return certs
