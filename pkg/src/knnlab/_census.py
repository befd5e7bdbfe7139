"""Grid-census engines for the crossing-frame area certificates.

Internal module.  Each census scans every grid square that could contain
one of the two free points of a normalised crossing frame (``a1`` over a
quadrilateral hull, ``a2`` over a triangular hull) and, for each such
candidate square ``X``, counts universe squares that are *certified* to
lie in the relevant region family no matter where inside ``X`` the free
point actually is:

* ``L+`` / ``L-``: a certified **lower** bound on the area that must be
  empty of points (minimised over candidates);
* ``H+`` / ``H-``: a certified **upper** bound on the area allowed to
  hold points (maximised over candidates).

All tests are conservative tile-level certificates: corner distances,
separating-axis tests against convex hulls, and a sum-of-distances test
for the joining ellipses with margin ``1 - 3*(sqrt(2)/2)*s``.  Counts
are integers; areas are ``count * s**2``; ties between candidates keep
the first square in (column, row) scan order, so results are exactly
reproducible.

The public wrappers that turn these censuses into certificates live in
:mod:`knnlab.bounds`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

__all__ = [
    "CensusOutcome",
    "census_L_plus",
    "census_L_minus",
    "census_H_plus",
    "census_H_minus",
    "candidate_data_a1",
    "candidate_data_a2",
    "validate_step",
    "A1_QUAD",
    "A2_TRI",
]

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

_B1 = (0.0, 0.0)
_B2 = (1.0, 0.0)
_W_MINUS = (0.5, -0.5 / _SQRT3)
_Z = (0.5, -_SQRT3 / 2.0)
_U_MINUS = (0.25, -_SQRT3 / 4.0)
_V_MINUS = (0.75, -_SQRT3 / 4.0)
_A1_LOWEST = (0.5, 1.0 / (4.0 * math.sqrt(6.0)))

#: Convex hull of the admissible ``a1`` positions.
A1_QUAD = [(0.5, 0.0), (_SQRT3 / 4.0, 0.25), (0.5, 0.5 / _SQRT3),
           (1.0 - _SQRT3 / 4.0, 0.25)]
#: Convex hull of the admissible ``a2`` positions.
A2_TRI = [_V_MINUS, _U_MINUS, _W_MINUS]
#: Below-axis region with both base angles at least pi/6.
_KITE = [_W_MINUS, _V_MINUS, _Z, _U_MINUS]
#: Wedge of angle pi/6 at b1 (resp. b2) within the lower triangle.
_TRI_B1 = [_B1, _B2, _V_MINUS]
_TRI_B2 = [_B1, _B2, _U_MINUS]

ProgressFn = Optional[Callable[[int, int], None]]


@dataclass(frozen=True)
class CensusOutcome:
    """Result of one census run.

    Attributes
    ----------
    area : float
        The certified extremal area (``count * s**2``).
    witness : tuple of float
        Centre of the extremal candidate square (first in scan order
        among ties).
    count : int
        Number of universe squares counted at the witness.
    candidates : int
        Number of candidate squares scanned.
    step : float
        The grid side used.
    """

    area: float
    witness: Tuple[float, float]
    count: int
    candidates: int
    step: float


def validate_step(s: float) -> int:
    """Check the census grid side and return ``N = 1/s``.

    ``1/s`` must be an integer (within 1e-9) so that ``b1`` and ``b2``
    land on square corners, and ``s`` must be at most 0.02 for the
    tile-level certificates to have sane margins.
    """
    s = float(s)
    if not (0.0 < s <= 0.02):
        raise ValueError("census step must satisfy 0 < s <= 0.02")
    n = round(1.0 / s)
    if abs(n - 1.0 / s) > 1e-9:
        raise ValueError(
            "census step must evenly divide the unit edge (1/s integral)"
        )
    return int(n)


# ---------------------------------------------------------------------------
# tile-level certificates
# ---------------------------------------------------------------------------


def _edges_of(poly):
    """Outward half-plane form of a convex polygon: ``{p : n.p <= c}``."""
    n = len(poly)
    area2 = sum(
        poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]
        for i in range(n)
    )
    pts = poly if area2 > 0 else poly[::-1]
    out = []
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        nx, ny = (y2 - y1), -(x2 - x1)
        out.append((nx, ny, nx * x1 + ny * y1))
    return out


def _tiles_overlapping(poly, cx, cy, s):
    """Exact separating-axis test: closed tile meets closed convex polygon."""
    half = s / 2.0
    ok = np.ones(np.broadcast(cx, cy).shape, dtype=bool)
    for nx, ny, c in _edges_of(poly):
        m = nx * cx + ny * cy - (abs(nx) + abs(ny)) * half
        ok &= m <= c
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    ok &= (cx + half >= min(xs)) & (cx - half <= max(xs))
    ok &= (cy + half >= min(ys)) & (cy - half <= max(ys))
    return ok


def _tiles_inside(poly, cx, cy, s):
    """Exact test: closed tile entirely inside closed convex polygon."""
    half = s / 2.0
    ok = np.ones(np.broadcast(cx, cy).shape, dtype=bool)
    for nx, ny, c in _edges_of(poly):
        m = nx * cx + ny * cy + (abs(nx) + abs(ny)) * half
        ok &= m <= c
    return ok


def _maxcorner_dist2(cx, cy, px, py, s):
    """Squared distance from ``(px, py)`` to the farthest tile corner."""
    half = s / 2.0
    return (np.abs(cx - px) + half) ** 2 + (np.abs(cy - py) + half) ** 2


def _mincorner_dist2(cx, cy, px, py, s):
    """Squared distance from ``(px, py)`` to the nearest tile point."""
    half = s / 2.0
    dx = np.maximum(np.abs(cx - px) - half, 0.0)
    dy = np.maximum(np.abs(cy - py) - half, 0.0)
    return dx * dx + dy * dy


def _candidate_centers(s, poly):
    """Centres of all tiles meeting ``poly``, in (column, row) scan order."""
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    i0 = math.floor(min(xs) / s) - 1
    i1 = math.ceil(max(xs) / s) + 1
    j0 = math.floor(min(ys) / s) - 1
    j1 = math.ceil(max(ys) / s) + 1
    ii = np.arange(i0, i1)
    jj = np.arange(j0, j1)
    I, J = np.meshgrid(ii, jj, indexing="ij")
    I = I.ravel()
    J = J.ravel()
    cx = (I + 0.5) * s
    cy = (J + 0.5) * s
    m = _tiles_overlapping(poly, cx, cy, s)
    if not np.any(m):
        raise ValueError("census step too coarse: no candidate squares")
    order = np.lexsort((J[m], I[m]))
    return cx[m][order], cy[m][order]


def _h_points(xs, ys, eps1):
    """Certified distances from candidate centres to the two forced
    boundary locations of the upper empty-census (one on each unit
    circle), found by bisection on the sum-of-distances equations."""
    target = 1.0 - eps1
    # On the circle about b2: q(phi) = (1 + cos phi, sin phi).
    lo = np.full_like(xs, math.pi / 2)
    hi = np.full_like(xs, math.pi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        qx = 1.0 + np.cos(mid)
        qy = np.sin(mid)
        g = 2.0 * np.cos(mid / 2.0) + np.hypot(qx - xs, qy - ys) - target
        sel = g > 0.0
        lo = np.where(sel, mid, lo)
        hi = np.where(sel, hi, mid)
    phi1 = np.maximum(0.5 * (lo + hi), math.acos(-7.0 / 8.0))
    d1 = np.hypot(1.0 + np.cos(phi1) - xs, np.sin(phi1) - ys)
    # On the circle about b1: q(phi) = (cos phi, sin phi).
    lo = np.zeros_like(xs)
    hi = np.full_like(xs, math.pi / 2)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        qx = np.cos(mid)
        qy = np.sin(mid)
        g = 2.0 * np.sin(mid / 2.0) + np.hypot(qx - xs, qy - ys) - target
        sel = g > 0.0
        hi = np.where(sel, mid, hi)
        lo = np.where(sel, lo, mid)
    phi2 = np.minimum(0.5 * (lo + hi), math.acos(7.0 / 8.0))
    d2 = np.hypot(np.cos(phi2) - xs, np.sin(phi2) - ys)
    return d1, d2


def candidate_data_a1(x: float, y: float, s: float):
    """Certified radii and forced locations for an ``a1`` candidate square.

    Returns ``(sigma, rho_max, h1, h2)`` where ``sigma`` is the certified
    lower bound on the neighbourhood radius used by the empty census
    (distance to the forced locations ``h1``, ``h2`` on the unit circles
    and to the assumed ``a2`` anchor, minus the half-diagonal) and
    ``rho_max`` the certified upper bound (distance to the nearer ``b``
    plus the half-diagonal).
    """
    validate_step(s)
    eps1 = (_SQRT2 / 2.0) * s
    xa = np.array([float(x)])
    ya = np.array([float(y)])
    dh1, dh2 = _h_points(xa, ya, eps1)
    dw = math.hypot(x - _W_MINUS[0], y - _W_MINUS[1])
    sigma = max(float(dh1[0]), float(dh2[0]), dw) - eps1
    rho_max = min(math.hypot(x, y), math.hypot(x - 1.0, y)) + eps1
    # Recover the forced boundary locations themselves for reporting.
    target = 1.0 - eps1
    lo, hi = math.pi / 2, math.pi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        g = (2.0 * math.cos(mid / 2.0)
             + math.hypot(1.0 + math.cos(mid) - x, math.sin(mid) - y) - target)
        if g > 0.0:
            lo = mid
        else:
            hi = mid
    phi1 = max(0.5 * (lo + hi), math.acos(-7.0 / 8.0))
    h1 = (1.0 + math.cos(phi1), math.sin(phi1))
    lo, hi = 0.0, math.pi / 2
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        g = (2.0 * math.sin(mid / 2.0)
             + math.hypot(math.cos(mid) - x, math.sin(mid) - y) - target)
        if g > 0.0:
            hi = mid
        else:
            lo = mid
    phi2 = min(0.5 * (lo + hi), math.acos(7.0 / 8.0))
    h2 = (math.cos(phi2), math.sin(phi2))
    return sigma, rho_max, h1, h2


def candidate_data_a2(x: float, y: float, s: float):
    """Certified radii and anchor locations for an ``a2`` candidate square.

    Returns ``(sigma, rho_max, h1, h2)``; here ``h1`` is the lowest
    admissible ``a1`` anchor and ``h2`` the lower triangle apex, whose
    distances (minus the half-diagonal) certify the lower radius.
    """
    validate_step(s)
    eps1 = (_SQRT2 / 2.0) * s
    sigma = max(
        math.hypot(x - _A1_LOWEST[0], y - _A1_LOWEST[1]),
        math.hypot(x - _Z[0], y - _Z[1]),
    ) - eps1
    rho_max = min(math.hypot(x, y), math.hypot(x - 1.0, y)) + eps1
    return sigma, rho_max, _A1_LOWEST, _Z


# ---------------------------------------------------------------------------
# common scan machinery
# ---------------------------------------------------------------------------


def _universe(s, i0, i1, j0, j1):
    """1-D centre coordinate vectors for a universe of tiles."""
    ci = (np.arange(i0, i1) + 0.5) * s
    cj = (np.arange(j0, j1) + 0.5) * s
    return ci, cj


def _subwindow(ci, cj, x, y, reach):
    """Index slices covering every centre within ``reach`` of ``(x, y)``."""
    if reach <= 0.0:
        return None
    ia = int(np.searchsorted(ci, x - reach, side="left"))
    ib = int(np.searchsorted(ci, x + reach, side="right"))
    ja = int(np.searchsorted(cj, y - reach, side="left"))
    jb = int(np.searchsorted(cj, y + reach, side="right"))
    if ia >= ib or ja >= jb:
        return None
    return ia, ib, ja, jb


def _count_one(t, xs, ys, reach, ci, cj, count_window):
    win = _subwindow(ci, cj, xs[t], ys[t], reach[t])
    if win is None:
        return 0
    ia, ib, ja, jb = win
    dx = ci[ia:ib, None] - xs[t]
    dy = cj[None, ja:jb] - ys[t]
    dist2 = dx * dx + dy * dy
    return count_window(ia, ib, ja, jb, dist2, t)


def _scan_extremum(xs, ys, reach, ci, cj, count_window, minimise, progress,
                   threads=None):
    """Scan candidates, counting tiles with ``count_window`` per candidate.

    ``count_window(ia, ib, ja, jb, dist2, t)`` receives the subwindow
    slice bounds and the squared-distance array of the subwindow.  Ties
    keep the first candidate in scan order.  With ``threads > 1`` the
    candidate range is split into contiguous chunks processed by a
    thread pool; chunk results are merged in scan order, so the outcome
    is identical for every thread count.
    """
    total = xs.size
    nthreads = 1 if threads is None else max(1, int(threads))

    def run_range(t0, t1):
        best_count = None
        best_t = -1
        for t in range(t0, t1):
            cnt = _count_one(t, xs, ys, reach, ci, cj, count_window)
            if best_count is None or (cnt < best_count if minimise
                                      else cnt > best_count):
                best_count = cnt
                best_t = t
        return best_count, best_t

    if nthreads == 1:
        best_count = None
        best_t = -1
        for t in range(total):
            cnt = _count_one(t, xs, ys, reach, ci, cj, count_window)
            if best_count is None or (cnt < best_count if minimise
                                      else cnt > best_count):
                best_count = cnt
                best_t = t
            if progress is not None and (t + 1) % 1000 == 0:
                progress(t + 1, total)
        if progress is not None:
            progress(total, total)
        return best_count, best_t

    import concurrent.futures

    chunk = max(1, -(-total // (nthreads * 8)))
    ranges = [(t0, min(t0 + chunk, total)) for t0 in range(0, total, chunk)]
    best_count = None
    best_t = -1
    done = 0
    with concurrent.futures.ThreadPoolExecutor(nthreads) as pool:
        futures = [pool.submit(run_range, t0, t1) for t0, t1 in ranges]
        for (t0, t1), fut in zip(ranges, futures):
            cnt, t = fut.result()
            if cnt is not None and (
                    best_count is None
                    or (cnt < best_count if minimise else cnt > best_count)):
                best_count = cnt
                best_t = t
            done += t1 - t0
            if progress is not None:
                progress(done, total)
    return best_count, best_t


# ---------------------------------------------------------------------------
# the four censuses
# ---------------------------------------------------------------------------


def census_L_plus(s: float, progress: ProgressFn = None,
                  threads: Optional[int] = None) -> CensusOutcome:
    """Certified minimum area of the upper empty region family.

    For every candidate square of ``a1``, counts tiles above the axis
    whose centre lies within ``sigma - s*sqrt(2)`` of the candidate
    centre and which are certified inside a half-radius disk about a
    ``b`` point and inside the matching worst-case joining ellipse.
    The minimum over candidates (times ``s**2``) lower-bounds the area
    that must be empty, uniformly over the square.
    """
    validate_step(s)
    eps1 = (_SQRT2 / 2.0) * s
    C = 1.0 - 3.0 * eps1
    xs, ys = _candidate_centers(s, A1_QUAD)
    i0, i1 = math.floor(-0.35 / s), math.ceil(1.35 / s)
    j0, j1 = 0, math.ceil(0.95 / s)
    ci, cj = _universe(s, i0, i1, j0, j1)
    CX = ci[:, None]
    CY = cj[None, :]
    d1 = np.hypot(CX - _B1[0], CY - _B1[1])
    d2 = np.hypot(CX - _B2[0], CY - _B2[1])
    in_half1 = _maxcorner_dist2(CX, CY, *_B1, s) <= 0.25
    in_half2 = _maxcorner_dist2(CX, CY, *_B2, s) <= 0.25
    t1 = np.where(in_half1, C - d1, -1.0)
    t2 = np.where(in_half2, C - d2, -1.0)
    tl = np.maximum(t1, t2)
    tl2 = np.where(tl > 0.0, tl * tl, -1.0)

    dh1, dh2 = _h_points(xs, ys, eps1)
    dw = np.hypot(xs - _W_MINUS[0], ys - _W_MINUS[1])
    sigma = np.maximum(np.maximum(dh1, dh2), dw) - eps1
    reach = sigma - s * _SQRT2

    def count(ia, ib, ja, jb, dist2, t):
        r2 = reach[t] * reach[t]
        return int(np.count_nonzero((dist2 <= r2) & (dist2 <= tl2[ia:ib, ja:jb])))

    cnt, t = _scan_extremum(xs, ys, reach, ci, cj, count, True, progress,
                            threads)
    return CensusOutcome(cnt * s * s, (float(xs[t]), float(ys[t])), cnt,
                         xs.size, s)


def census_L_minus(s: float, progress: ProgressFn = None,
                   threads: Optional[int] = None) -> CensusOutcome:
    """Certified minimum area of the lower empty region family.

    Counts tiles below the axis within the certified radius of an ``a2``
    candidate that are certified inside a half-radius disk and its
    worst-case joining ellipse, or inside one of the two pi/6 wedges of
    the lower triangle.
    """
    validate_step(s)
    eps1 = (_SQRT2 / 2.0) * s
    C = 1.0 - 3.0 * eps1
    xs, ys = _candidate_centers(s, A2_TRI)
    i0, i1 = math.floor(-0.35 / s), math.ceil(1.35 / s)
    j0, j1 = -math.ceil(1.1 / s), 0
    ci, cj = _universe(s, i0, i1, j0, j1)
    CX = ci[:, None]
    CY = cj[None, :]
    d1 = np.hypot(CX - _B1[0], CY - _B1[1])
    d2 = np.hypot(CX - _B2[0], CY - _B2[1])
    in_half1 = _maxcorner_dist2(CX, CY, *_B1, s) <= 0.25
    in_half2 = _maxcorner_dist2(CX, CY, *_B2, s) <= 0.25
    t1 = np.where(in_half1, C - d1, -1.0)
    t2 = np.where(in_half2, C - d2, -1.0)
    tl = np.maximum(t1, t2)
    tl2 = np.where(tl > 0.0, tl * tl, -1.0)
    tri = (_tiles_inside(_TRI_B1, CX, CY, s) | _tiles_inside(_TRI_B2, CX, CY, s))

    da1 = np.hypot(xs - _A1_LOWEST[0], ys - _A1_LOWEST[1])
    dz = np.hypot(xs - _Z[0], ys - _Z[1])
    sigma = np.maximum(da1, dz) - eps1
    reach = sigma - s * _SQRT2

    def count(ia, ib, ja, jb, dist2, t):
        r2 = reach[t] * reach[t]
        inner = tri[ia:ib, ja:jb] | (dist2 <= tl2[ia:ib, ja:jb])
        return int(np.count_nonzero((dist2 <= r2) & inner))

    cnt, t = _scan_extremum(xs, ys, reach, ci, cj, count, True, progress,
                            threads)
    return CensusOutcome(cnt * s * s, (float(xs[t]), float(ys[t])), cnt,
                         xs.size, s)


def census_H_plus(s: float, exclusion: str = "either",
                  progress: ProgressFn = None,
                  threads: Optional[int] = None) -> CensusOutcome:
    """Certified maximum area of the upper point-holding region family.

    Counts tiles that could meet the two unit-circle crescents above the
    axis (excluding tiles certified inside the protecting sets) or the
    below-axis kite, within the certified maximal radius of an ``a1``
    candidate.

    Parameters
    ----------
    exclusion : {"either", "intersection"}
        ``"either"`` (default) drops a crescent tile when it is certified
        inside the worst-case joining ellipse *or* inside the half-radius
        disk; ``"intersection"`` drops it only when certified inside
        both.  ``"either"`` matches the reference census; the stricter
        variant yields a larger (still valid under the alternative
        reading, but weaker) bound.
    """
    validate_step(s)
    if exclusion not in ("either", "intersection"):
        raise ValueError("exclusion must be 'either' or 'intersection'")
    eps1 = (_SQRT2 / 2.0) * s
    C = 1.0 - 3.0 * eps1
    xs, ys = _candidate_centers(s, A1_QUAD)
    i0, i1 = math.floor(-0.35 / s), math.ceil(1.35 / s)
    j0, j1 = -math.ceil(0.95 / s), math.ceil(0.95 / s)
    ci, cj = _universe(s, i0, i1, j0, j1)
    CX = ci[:, None]
    CY = cj[None, :]
    d1 = np.hypot(CX - _B1[0], CY - _B1[1])
    d2 = np.hypot(CX - _B2[0], CY - _B2[1])
    minc1 = _mincorner_dist2(CX, CY, *_B1, s)
    maxc1 = _maxcorner_dist2(CX, CY, *_B1, s)
    minc2 = _mincorner_dist2(CX, CY, *_B2, s)
    maxc2 = _maxcorner_dist2(CX, CY, *_B2, s)
    jj = np.arange(j0, j1)
    can_above = (jj >= 0)[None, :]
    if exclusion == "either":
        cres1 = can_above & (minc1 <= 1.0) & (maxc2 >= 1.0) & (maxc1 >= 0.25)
        cres2 = can_above & (minc2 <= 1.0) & (maxc1 >= 1.0) & (maxc2 >= 0.25)
        a1 = np.maximum(C - d1, 0.0)
        a2 = np.maximum(C - d2, 0.0)
    else:
        cres1 = can_above & (minc1 <= 1.0) & (maxc2 >= 1.0)
        cres2 = can_above & (minc2 <= 1.0) & (maxc1 >= 1.0)
        out_half1 = maxc1 >= 0.25
        out_half2 = maxc2 >= 0.25
        a1 = np.where(out_half1, 0.0, np.maximum(C - d1, 0.0))
        a2 = np.where(out_half2, 0.0, np.maximum(C - d2, 0.0))
    a1sq = a1 * a1
    a2sq = a2 * a2
    kite = _tiles_overlapping(_KITE, CX, CY, s)

    tau = np.minimum(np.hypot(xs - _B1[0], ys - _B1[1]),
                     np.hypot(xs - _B2[0], ys - _B2[1])) + eps1
    reach = tau + s * _SQRT2

    def count(ia, ib, ja, jb, dist2, t):
        r2 = reach[t] * reach[t]
        inner = (
            kite[ia:ib, ja:jb]
            | (cres1[ia:ib, ja:jb] & (dist2 >= a1sq[ia:ib, ja:jb]))
            | (cres2[ia:ib, ja:jb] & (dist2 >= a2sq[ia:ib, ja:jb]))
        )
        return int(np.count_nonzero((dist2 <= r2) & inner))

    cnt, t = _scan_extremum(xs, ys, reach, ci, cj, count, False, progress,
                            threads)
    return CensusOutcome(cnt * s * s, (float(xs[t]), float(ys[t])), cnt,
                         xs.size, s)


def census_H_minus(s: float, semantics: str = "universal",
                   progress: ProgressFn = None,
                   threads: Optional[int] = None) -> CensusOutcome:
    """Certified maximum area of the lower point-holding region family.

    Counts tiles holding a point outside both unit disks, or an
    above-axis point outside both half-radius disks, within the
    certified maximal radius of an ``a2`` candidate.

    The two exclusion filters are applied per the ``semantics`` flag:

    ``"universal"`` (default)
        A square qualifies only when *every* point of it lies outside
        the excluded disks (nearest-corner tests).  This mirrors the
        certainty filters of the lower censuses and is the reading used
        by the reference counts; the result is a resolution-``s``
        census whose reach slack (three half-diagonals) dominates the
        boundary slivers it omits.
    ``"cover"``
        A square qualifies when *some* point of it could lie outside
        the excluded disks (farthest-corner tests).  Every square
        meeting the region is then counted, so ``area`` is a strict
        upper bound, at the cost of roughly one boundary band
        (about +0.001 at ``s = 0.001``).
    """
    validate_step(s)
    if semantics not in ("universal", "cover"):
        raise ValueError("semantics must be 'universal' or 'cover'")
    eps1 = (_SQRT2 / 2.0) * s
    xs, ys = _candidate_centers(s, A2_TRI)
    i0, i1 = math.floor(-0.35 / s), math.ceil(1.35 / s)
    j0, j1 = -math.ceil(1.15 / s), math.ceil(0.4 / s)
    ci, cj = _universe(s, i0, i1, j0, j1)
    CX = ci[:, None]
    CY = cj[None, :]
    jj = np.arange(j0, j1)
    can_above = (jj >= 0)[None, :]
    if semantics == "universal":
        minc1 = _mincorner_dist2(CX, CY, *_B1, s)
        minc2 = _mincorner_dist2(CX, CY, *_B2, s)
        h3 = (minc1 >= 1.0) & (minc2 >= 1.0)
        h4 = can_above & (minc1 >= 0.25) & (minc2 >= 0.25)
    else:
        maxc1 = _maxcorner_dist2(CX, CY, *_B1, s)
        maxc2 = _maxcorner_dist2(CX, CY, *_B2, s)
        can_below = (jj <= -1)[None, :]
        h3 = can_below & (maxc1 >= 1.0) & (maxc2 >= 1.0)
        h4 = can_above & (maxc1 >= 0.25) & (maxc2 >= 0.25)
    inner_static = h3 | h4

    ups = np.minimum(np.hypot(xs - _B1[0], ys - _B1[1]),
                     np.hypot(xs - _B2[0], ys - _B2[1])) + eps1
    reach = ups + s * _SQRT2

    def count(ia, ib, ja, jb, dist2, t):
        r2 = reach[t] * reach[t]
        return int(
            np.count_nonzero((dist2 <= r2) & inner_static[ia:ib, ja:jb])
        )

    cnt, t = _scan_extremum(xs, ys, reach, ci, cj, count, False, progress,
                            threads)
    return CensusOutcome(cnt * s * s, (float(xs[t]), float(ys[t])), cnt,
                         xs.size, s)
