"""Poisson sampling, nearest-neighbour graphs, and structural checks.

This module implements the experimental side of the package: sampling a
Poisson point process on a square window, building the mutual (and related)
``k``-nearest-neighbour graphs exactly, decomposing them into connected
components, finding cross-component edge crossings, and verifying on random
instances the deterministic structural facts that the certified bounds in
:mod:`knnlab.bounds` rely on (half-neighbourhood containment, the
four-disk containment implication, the separation of foreign points from
edges, and the six "goodness" conditions used to rule out pathological
configurations).

The graph builders are deliberately exact: :func:`build_graph` uses a
uniform-cell index with expanding search rings and certifies each
neighbour list (any unexamined point is provably farther than the
``k``-th neighbour), so its output is identical to the quadratic
reference :func:`brute_force_graph` down to tie-breaking.  Ties in
distance are always broken by lower point index.

All randomness flows through :class:`numpy.random.Generator` seeded
explicitly; trial seeds are derived with ``numpy.random.SeedSequence``
spawn keys so that every trial is reproducible in isolation.
"""

from __future__ import annotations

__all__ = [
    "MODELS",
    "FARAPART_RATIO",
    "SampleWindow",
    "PointSet",
    "sample_poisson",
    "NearestNeighborGraph",
    "build_graph",
    "brute_force_graph",
    "ComponentDecomposition",
    "components",
    "CrossingReport",
    "find_crossing_pairs",
    "check_half_disk_lemma",
    "check_intersect_union_lemma",
    "sample_intersect_union_quadruples",
    "check_farapart",
    "GoodnessReport",
    "check_goodness",
    "ComponentSetup",
    "find_component_setup",
    "TrialResult",
    "ConnectivityEstimate",
    "wilson_interval",
    "run_trial",
    "estimate_connectivity",
    "figure_one_pointset",
]

import math
import struct
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from .bounds import ModelConstants
from .geom import (
    Point,
    Segment,
    disk_lens_area,
    disks_intersection_area,
    point_segment_distance,
    segments_intersect,
)
from .regions import CrossingFrame, NormalizationMap, normalize_crossing_pair_with_map

#: Supported graph models.  ``mutual`` joins two points when each lies in the
#: other's ``k``-nearest list; ``either`` when at least one does; ``directed``
#: keeps the asymmetric lists but its undirected edge set (used for
#: components and crossings) coincides with ``either``; ``gilbert`` joins
#: every pair within a fixed radius.
MODELS = ("mutual", "either", "directed", "gilbert")

#: A point of a different component keeps distance at least
#: ``FARAPART_RATIO * |b1 b2|`` from any edge ``b1 b2`` (mutual model).
FARAPART_RATIO = 1.0 / (4.0 * math.sqrt(6.0))

_PS_MAGIC = b"KNNPTS01"
_PS_HEADER = struct.Struct("<dqQ")


# ---------------------------------------------------------------------------
# Point sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleWindow:
    """Square observation window ``[0, sqrt(n)]^2`` of unit intensity.

    Parameters
    ----------
    n : float
        Expected number of points; the window side is ``sqrt(n)`` so the
        Poisson process has intensity one.
    """

    n: float

    def __post_init__(self) -> None:
        if not (self.n > 0.0 and math.isfinite(self.n)):
            raise ValueError("window intensity n must be positive and finite")

    @property
    def side(self) -> float:
        """Side length ``sqrt(n)`` of the window."""
        return math.sqrt(self.n)

    @property
    def area(self) -> float:
        return self.n

    def contains(self, points: np.ndarray, slack: float = 1e-9) -> bool:
        """Whether every row of ``points`` lies inside the window."""
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            return True
        s = self.side
        return bool(np.all(pts >= -slack) and np.all(pts <= s + slack))

    @property
    def corners(self) -> Tuple[Tuple[float, float], ...]:
        s = self.side
        return ((0.0, 0.0), (s, 0.0), (0.0, s), (s, s))


@dataclass(frozen=True)
class PointSet:
    """Immutable planar point configuration with provenance.

    Attributes
    ----------
    points : numpy.ndarray
        ``(N, 2)`` float64 coordinates, all inside ``window``.
    seed : int
        Seed that produced the configuration (0 for hand-built sets).
    window : SampleWindow
        The observation window.
    """

    points: np.ndarray
    seed: int
    window: SampleWindow

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (N, 2)")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        if not self.window.contains(pts):
            raise ValueError("points must lie inside the window")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    # -- serialization ------------------------------------------------------

    def to_binary(self) -> bytes:
        """Serialize to a flat little-endian binary blob (lossless)."""
        header = _PS_MAGIC + _PS_HEADER.pack(self.window.n, int(self.seed),
                                             len(self))
        body = np.ascontiguousarray(self.points, dtype="<f8").tobytes()
        return header + body

    @classmethod
    def from_binary(cls, data: bytes) -> "PointSet":
        """Inverse of :meth:`to_binary`."""
        if data[: len(_PS_MAGIC)] != _PS_MAGIC:
            raise ValueError("not a point-set blob (bad magic)")
        off = len(_PS_MAGIC)
        n, seed, count = _PS_HEADER.unpack_from(data, off)
        off += _PS_HEADER.size
        expected = off + 16 * count
        if len(data) != expected:
            raise ValueError("truncated point-set blob")
        pts = np.frombuffer(data, dtype="<f8", count=2 * count, offset=off)
        pts = pts.astype(np.float64).reshape(count, 2)
        return cls(points=pts, seed=seed, window=SampleWindow(n))

    def to_csv(self) -> str:
        """Render the coordinates as CSV text with an ``x,y`` header.

        Floats are written with 17 significant digits so the text round-trips
        exactly; window and seed metadata are not part of the CSV.
        """
        lines = ["x,y"]
        for x, y in self.points:
            lines.append("%.17g,%.17g" % (x, y))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, seed: int, window: SampleWindow) -> "PointSet":
        """Parse :meth:`to_csv` output; metadata must be supplied."""
        rows = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not rows or rows[0].strip().lower() != "x,y":
            raise ValueError("expected an 'x,y' header row")
        if len(rows) == 1:
            pts = np.empty((0, 2), dtype=np.float64)
        else:
            pts = np.array([[float(v) for v in ln.split(",")] for ln in rows[1:]],
                           dtype=np.float64)
        return cls(points=pts, seed=seed, window=window)


def sample_poisson(n: float, seed: int) -> PointSet:
    """Sample a unit-intensity Poisson process on ``[0, sqrt(n)]^2``.

    The number of points is Poisson with mean ``n`` and the locations are
    independent uniforms, both drawn from ``numpy.random.default_rng(seed)``
    (count first, then coordinates), so equal seeds give equal point sets.

    Examples
    --------
    >>> ps = sample_poisson(100.0, seed=7)
    >>> ps.window.side
    10.0
    >>> ps2 = sample_poisson(100.0, seed=7)
    >>> bool(np.array_equal(ps.points, ps2.points))
    True
    """
    window = SampleWindow(n)
    rng = np.random.default_rng(seed)
    count = int(rng.poisson(n))
    pts = rng.uniform(0.0, window.side, size=(count, 2))
    return PointSet(points=pts, seed=int(seed), window=window)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclass
class NearestNeighborGraph:
    """A nearest-neighbour-type graph over a :class:`PointSet`.

    ``out_neighbors[i]`` lists the out-neighbours of point ``i`` ordered by
    (distance, index); ``out_dists[i]`` holds the matching distances.  For the
    ``k``-nearest models the list has ``min(k, N - 1)`` entries and its last
    distance is the ``k``-th-neighbour radius; for ``gilbert`` it lists every
    point within ``radius``.

    The undirected edge set, component structure, and crossing search all go
    through :meth:`edges`: mutual keeps reciprocated pairs, ``either`` and
    ``directed`` the union of directions (weak connectivity), ``gilbert`` the
    radius pairs.
    """

    pointset: PointSet
    k: int
    model: str
    out_neighbors: List[np.ndarray]
    out_dists: List[np.ndarray]
    radius: Optional[float] = None
    _edges: Optional[np.ndarray] = field(default=None, repr=False)
    _edge_keys: Optional[set] = field(default=None, repr=False)

    @property
    def points(self) -> np.ndarray:
        return self.pointset.points

    @property
    def n_points(self) -> int:
        return len(self.pointset)

    def neighbourhood_radius(self, i: int) -> float:
        """Radius of the closed ``k``-th-neighbour disk around point ``i``.

        Zero when the point has no out-neighbours (``k == 0`` or ``N == 1``).
        Undefined for the ``gilbert`` model, whose lists are not ``k``-based.
        """
        if self.model == "gilbert":
            raise ValueError("neighbourhood radius is k-NN specific; "
                             "the gilbert model has a global radius")
        d = self.out_dists[i]
        return float(d[-1]) if d.size else 0.0

    def edges(self) -> np.ndarray:
        """Undirected edge list, shape ``(E, 2)`` with ``lo < hi`` per row.

        Rows are sorted lexicographically; the array is cached.
        """
        if self._edges is None:
            n = self.n_points
            sizes = [a.size for a in self.out_neighbors]
            if n == 0 or sum(sizes) == 0:
                enc = np.empty(0, dtype=np.int64)
            else:
                src = np.repeat(np.arange(n, dtype=np.int64), sizes)
                dst = np.concatenate(self.out_neighbors).astype(np.int64)
                lo = np.minimum(src, dst)
                hi = np.maximum(src, dst)
                code = lo * n + hi
                if self.model == "mutual":
                    uniq, cnt = np.unique(code, return_counts=True)
                    enc = uniq[cnt == 2]
                else:
                    enc = np.unique(code)
            self._edges = np.column_stack((enc // max(n, 1), enc % max(n, 1)))
            self._edge_keys = set(int(c) for c in enc)
        return self._edges

    def has_edge(self, i: int, j: int) -> bool:
        """Whether the undirected edge ``{i, j}`` is present."""
        if i == j:
            return False
        self.edges()
        lo, hi = (i, j) if i < j else (j, i)
        return (lo * self.n_points + hi) in self._edge_keys

    def degree_histogram(self) -> Dict[int, int]:
        """Counts of undirected degrees."""
        e = self.edges()
        deg = np.zeros(self.n_points, dtype=np.int64)
        if e.size:
            np.add.at(deg, e[:, 0], 1)
            np.add.at(deg, e[:, 1], 1)
        vals, cnts = np.unique(deg, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, cnts)}


def _validate_model(model: str) -> None:
    if model not in MODELS:
        raise ValueError("unknown model %r; expected one of %s"
                         % (model, ", ".join(MODELS)))


def _sorted_take(cand: np.ndarray, d2: np.ndarray, self_idx: int,
                 kk: int) -> Tuple[np.ndarray, np.ndarray]:
    """First ``kk`` candidates by (squared distance, index), excluding self."""
    order = np.lexsort((cand, d2))
    cand = cand[order]
    d2 = d2[order]
    keep = cand != self_idx
    cand = cand[keep][:kk]
    d2 = d2[keep][:kk]
    return cand, np.sqrt(d2)


def _knn_lists(pts: np.ndarray, k: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Exact ``min(k, N-1)``-nearest lists for every point.

    Uses a uniform grid with cell side ``sqrt(k)`` (unit intensity makes a
    ``k``-neighbourhood about that big) and, per occupied cell, gathers
    candidate points from expanding square rings of cells.  A batch stops
    growing once every member's ``k``-th candidate distance is at most
    ``m * cell`` for ring count ``m`` — every unexamined point lies beyond
    that — so the result is certified exact, with ties broken by index.
    """
    n = pts.shape[0]
    kk = min(k, n - 1)
    empty_i = np.empty(0, dtype=np.int64)
    empty_d = np.empty(0, dtype=np.float64)
    if n == 0 or kk <= 0:
        return [empty_i] * n, [empty_d] * n

    cell = math.sqrt(max(k, 1))
    ij = np.floor(pts / cell).astype(np.int64)
    cells: Dict[Tuple[int, int], List[int]] = {}
    for idx in range(n):
        cells.setdefault((int(ij[idx, 0]), int(ij[idx, 1])), []).append(idx)
    occupied = {key: np.array(val, dtype=np.int64) for key, val in cells.items()}
    imin = int(ij[:, 0].min())
    imax = int(ij[:, 0].max())
    jmin = int(ij[:, 1].min())
    jmax = int(ij[:, 1].max())

    out_idx: List[np.ndarray] = [empty_i] * n
    out_d: List[np.ndarray] = [empty_d] * n

    for (ci, cj), members in occupied.items():
        pm = pts[members]
        m = 1
        while True:
            blocks = [occupied[(a, b)]
                      for a in range(ci - m, ci + m + 1)
                      for b in range(cj - m, cj + m + 1)
                      if (a, b) in occupied]
            cand = np.concatenate(blocks)
            full = (ci - m <= imin and ci + m >= imax
                    and cj - m <= jmin and cj + m >= jmax)
            if cand.size >= kk + 1:
                diff = pm[:, None, :] - pts[cand][None, :, :]
                d2 = np.einsum("ijk,ijk->ij", diff, diff)
                kth = np.partition(d2, kk, axis=1)[:, kk]
                if full or bool(np.all(kth <= (m * cell) ** 2)):
                    break
            elif full:
                diff = pm[:, None, :] - pts[cand][None, :, :]
                d2 = np.einsum("ijk,ijk->ij", diff, diff)
                kth = np.full(len(members), np.inf)
                break
            m += 1
        for row, i in enumerate(members):
            d2i = d2[row]
            thr = kth[row]
            if math.isinf(thr):
                sel = np.arange(cand.size)
            else:
                sel = np.flatnonzero(d2i <= thr)
            got_i, got_d = _sorted_take(cand[sel], d2i[sel], int(i), kk)
            out_idx[int(i)] = got_i
            out_d[int(i)] = got_d
    return out_idx, out_d


def _radius_lists(pts: np.ndarray, radius: float) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Per-point lists of all other points within ``radius`` (closed ball)."""
    n = pts.shape[0]
    empty_i = np.empty(0, dtype=np.int64)
    empty_d = np.empty(0, dtype=np.float64)
    out_idx: List[np.ndarray] = [empty_i] * n
    out_d: List[np.ndarray] = [empty_d] * n
    if n <= 1:
        return out_idx, out_d
    cell = radius
    ij = np.floor(pts / cell).astype(np.int64)
    cells: Dict[Tuple[int, int], List[int]] = {}
    for idx in range(n):
        cells.setdefault((int(ij[idx, 0]), int(ij[idx, 1])), []).append(idx)
    occupied = {key: np.array(val, dtype=np.int64) for key, val in cells.items()}
    r2 = radius * radius
    for (ci, cj), members in occupied.items():
        blocks = [occupied[(a, b)]
                  for a in range(ci - 1, ci + 2)
                  for b in range(cj - 1, cj + 2)
                  if (a, b) in occupied]
        cand = np.concatenate(blocks)
        diff = pts[members][:, None, :] - pts[cand][None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        for row, i in enumerate(members):
            sel = np.flatnonzero(d2[row] <= r2)
            got_i, got_d = _sorted_take(cand[sel], d2[row][sel], int(i),
                                        sel.size)
            out_idx[int(i)] = got_i
            out_d[int(i)] = got_d
    return out_idx, out_d


def build_graph(ps: PointSet, k: int, model: str = "mutual",
                radius: Optional[float] = None) -> NearestNeighborGraph:
    """Build the nearest-neighbour graph of ``ps`` exactly.

    Parameters
    ----------
    ps : PointSet
    k : int
        Neighbour count (``k`` is capped at ``N - 1``); ignored by the edge
        rule of the ``gilbert`` model but still recorded.
    model : str
        One of :data:`MODELS`.
    radius : float, optional
        Connection radius, required iff ``model == "gilbert"``.

    Returns
    -------
    NearestNeighborGraph
        Identical (lists, ordering, ties) to :func:`brute_force_graph`.

    Examples
    --------
    >>> ps = sample_poisson(200.0, seed=3)
    >>> g = build_graph(ps, k=4, model="mutual")
    >>> ref = brute_force_graph(ps, k=4, model="mutual")
    >>> bool(np.array_equal(g.edges(), ref.edges()))
    True
    """
    _validate_model(model)
    if k < 0:
        raise ValueError("k must be non-negative")
    if model == "gilbert":
        if radius is None or not radius > 0.0:
            raise ValueError("the gilbert model requires a positive radius")
        out_idx, out_d = _radius_lists(ps.points, radius)
    else:
        if radius is not None:
            raise ValueError("radius applies to the gilbert model only")
        out_idx, out_d = _knn_lists(ps.points, k)
    return NearestNeighborGraph(pointset=ps, k=int(k), model=model,
                                out_neighbors=out_idx, out_dists=out_d,
                                radius=radius)


def brute_force_graph(ps: PointSet, k: int, model: str = "mutual",
                      radius: Optional[float] = None) -> NearestNeighborGraph:
    """Quadratic reference implementation of :func:`build_graph`.

    Computes the full pairwise squared-distance matrix and sorts each row by
    (distance, index).  Intended for validation; memory grows as ``N**2``.
    """
    _validate_model(model)
    if k < 0:
        raise ValueError("k must be non-negative")
    pts = ps.points
    n = pts.shape[0]
    empty_i = np.empty(0, dtype=np.int64)
    empty_d = np.empty(0, dtype=np.float64)
    out_idx: List[np.ndarray] = [empty_i] * n
    out_d: List[np.ndarray] = [empty_d] * n
    if n >= 2:
        diff = pts[:, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        idx = np.arange(n, dtype=np.int64)
        if model == "gilbert":
            if radius is None or not radius > 0.0:
                raise ValueError("the gilbert model requires a positive radius")
            r2 = radius * radius
            for i in range(n):
                sel = np.flatnonzero(d2[i] <= r2)
                out_idx[i], out_d[i] = _sorted_take(sel.astype(np.int64),
                                                    d2[i][sel], i, sel.size)
        else:
            if radius is not None:
                raise ValueError("radius applies to the gilbert model only")
            kk = min(k, n - 1)
            for i in range(n):
                out_idx[i], out_d[i] = _sorted_take(idx, d2[i].copy(), i, kk)
    return NearestNeighborGraph(pointset=ps, k=int(k), model=model,
                                out_neighbors=out_idx, out_dists=out_d,
                                radius=radius)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of an undirected edge set.

    ``labels[i]`` is the smallest point index in the component of ``i``, so
    the labelling depends only on the partition.  ``sizes`` and ``diameters``
    map each label to the member count and the exact Euclidean diameter
    (0 for singletons).
    """

    labels: np.ndarray
    sizes: Dict[int, int]
    diameters: Dict[int, float]

    @property
    def num_components(self) -> int:
        return len(self.sizes)

    @property
    def component_ids(self) -> List[int]:
        return sorted(self.sizes)

    def members(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def largest_two_diameters(self) -> Tuple[float, float]:
        """The two largest component diameters (second is 0 if connected)."""
        vals = sorted(self.diameters.values(), reverse=True)
        first = vals[0] if vals else 0.0
        second = vals[1] if len(vals) > 1 else 0.0
        return (first, second)

    def sizes_sorted(self) -> List[int]:
        return sorted(self.sizes.values(), reverse=True)


def _pairwise_max_dist(pts: np.ndarray) -> float:
    """Exact diameter of a small point array (chunked to bound memory)."""
    m = pts.shape[0]
    if m <= 1:
        return 0.0
    best = 0.0
    step = max(1, int(2_000_000 // max(m, 1)))
    for a in range(0, m, step):
        diff = pts[a:a + step, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        best = max(best, float(d2.max()))
    return math.sqrt(best)


def _component_diameter(pts: np.ndarray) -> float:
    """Exact Euclidean diameter; convex hull shortcut for large components."""
    m = pts.shape[0]
    if m < 5000:
        return _pairwise_max_dist(pts)
    try:
        hull = ConvexHull(pts)
        return _pairwise_max_dist(pts[hull.vertices])
    except QhullError:
        return _pairwise_max_dist(pts)


def components(g: NearestNeighborGraph) -> ComponentDecomposition:
    """Decompose ``g`` into connected components with exact diameters.

    Uses union-find over :meth:`NearestNeighborGraph.edges`; for the
    ``directed`` model this is weak connectivity.  Components of fewer than
    5000 points get their diameter by direct pairwise maximisation, larger
    ones via their convex hull vertices (the diameter is attained at hull
    vertices).

    Examples
    --------
    >>> ps = sample_poisson(500.0, seed=11)
    >>> comps = components(build_graph(ps, k=12, model="mutual"))
    >>> int(comps.labels.min())
    0
    """
    n = g.n_points
    parent = np.arange(n, dtype=np.int64)

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for lo, hi in g.edges():
        ra, rb = find(int(lo)), find(int(hi))
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        labels[i] = find(i)
    # Union by smaller root keeps roots minimal, so labels are already the
    # smallest member index of each component.
    sizes: Dict[int, int] = {}
    diameters: Dict[int, float] = {}
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        sizes[int(label)] = int(members.size)
        diameters[int(label)] = _component_diameter(g.points[members])
    return ComponentDecomposition(labels=labels, sizes=sizes,
                                  diameters=diameters)


# ---------------------------------------------------------------------------
# Crossing pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReport:
    """Cross-component edge crossings of a graph.

    ``quadruples`` lists point indices ``(a1, a2, b1, b2)`` in canonical
    roles: segment ``a1 a2`` crosses segment ``b1 b2``, the two edges lie in
    different components, ``|a1 a2| <= |b1 b2|``, ``a1`` is at least as close
    to the ``b`` segment as ``a2``, and ``b1`` is the ``b`` endpoint nearer
    ``a1``.  ``frames`` holds the matching normalized coordinate frames
    (``b`` edge mapped to unit length; ``None`` when the normalized
    configuration falls outside the frame's validity checks, which cannot
    happen for crossings of the mutual model but can for artificial input).
    """

    quadruples: List[Tuple[int, int, int, int]]
    frames: List[Optional[CrossingFrame]]
    maps: List[Optional[NormalizationMap]]
    candidates_tested: int

    @property
    def num_crossings(self) -> int:
        return len(self.quadruples)


def find_crossing_pairs(g: NearestNeighborGraph,
                        comps: Optional[ComponentDecomposition] = None
                        ) -> CrossingReport:
    """Find every pair of crossing edges that lie in different components.

    Candidate edge pairs come from a uniform grid over edge bounding boxes
    (cell side = longest edge), so only nearby edges are compared; the
    crossing test itself is the exact closed-segment predicate
    :func:`knnlab.geom.segments_intersect`.  Each hit is normalized with
    :func:`knnlab.regions.normalize_crossing_pair_with_map`.

    Examples
    --------
    >>> ps, roles = figure_one_pointset()
    >>> g = build_graph(ps, k=20, model="mutual")
    >>> report = find_crossing_pairs(g)
    >>> report.num_crossings
    1
    """
    if comps is None:
        comps = components(g)
    edges = g.edges()
    pts = g.points
    labels = comps.labels
    quadruples: List[Tuple[int, int, int, int]] = []
    frames: List[Optional[CrossingFrame]] = []
    maps: List[Optional[NormalizationMap]] = []
    tested = 0
    if edges.shape[0] >= 2 and comps.num_components >= 2:
        a = pts[edges[:, 0]]
        b = pts[edges[:, 1]]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        lengths = np.hypot(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1])
        cell = max(float(lengths.max()), 1e-12)
        buckets: Dict[Tuple[int, int], List[int]] = {}
        lo_cells = np.floor(lo / cell).astype(np.int64)
        hi_cells = np.floor(hi / cell).astype(np.int64)
        for e in range(edges.shape[0]):
            for cx in range(lo_cells[e, 0], hi_cells[e, 0] + 1):
                for cy in range(lo_cells[e, 1], hi_cells[e, 1] + 1):
                    buckets.setdefault((cx, cy), []).append(e)
        seen: set = set()
        elab = labels[edges[:, 0]]
        for bucket in buckets.values():
            for ii in range(len(bucket)):
                e1 = bucket[ii]
                for jj in range(ii + 1, len(bucket)):
                    e2 = bucket[jj]
                    key = (e1, e2) if e1 < e2 else (e2, e1)
                    if key in seen:
                        continue
                    seen.add(key)
                    if elab[e1] == elab[e2]:
                        continue
                    if (lo[e1, 0] > hi[e2, 0] or lo[e2, 0] > hi[e1, 0]
                            or lo[e1, 1] > hi[e2, 1] or lo[e2, 1] > hi[e1, 1]):
                        continue
                    if lengths[e1] == 0.0 or lengths[e2] == 0.0:
                        continue
                    tested += 1
                    s1 = Segment(Point(*pts[edges[e1, 0]]),
                                 Point(*pts[edges[e1, 1]]))
                    s2 = Segment(Point(*pts[edges[e2, 0]]),
                                 Point(*pts[edges[e2, 1]]))
                    if not segments_intersect(s1, s2):
                        continue
                    inputs = (int(edges[e1, 0]), int(edges[e1, 1]),
                              int(edges[e2, 0]), int(edges[e2, 1]))
                    try:
                        frame, nmap = normalize_crossing_pair_with_map(
                            s1.a, s1.b, s2.a, s2.b)
                    except ValueError:
                        frame, nmap = None, None
                    if nmap is not None:
                        quad = tuple(inputs[nmap.roles[r]]
                                     for r in ("a1", "a2", "b1", "b2"))
                    else:
                        quad = inputs
                    quadruples.append(quad)  # type: ignore[arg-type]
                    frames.append(frame)
                    maps.append(nmap)
        order = sorted(range(len(quadruples)), key=lambda t: quadruples[t])
        quadruples = [quadruples[t] for t in order]
        frames = [frames[t] for t in order]
        maps = [maps[t] for t in order]
    return CrossingReport(quadruples=quadruples, frames=frames, maps=maps,
                          candidates_tested=tested)


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------


def check_half_disk_lemma(g: NearestNeighborGraph
                          ) -> List[Tuple[int, int, int]]:
    """Check half-neighbourhood containment on every edge of a mutual graph.

    For each edge ``x y`` of length ``L``, every point strictly inside the
    open disk of radius ``L / 2`` around ``x`` must be joined to ``x`` (and
    symmetrically for ``y``).  Returns violating triples ``(x, y, z)`` where
    ``z`` lies inside the half-disk of ``x`` but ``x z`` is not an edge; an
    empty list means the property holds.

    Examples
    --------
    >>> ps = sample_poisson(300.0, seed=5)
    >>> g = build_graph(ps, k=8, model="mutual")
    >>> check_half_disk_lemma(g)
    []
    """
    if g.model != "mutual":
        raise ValueError("half-neighbourhood containment holds for the "
                         "mutual model; got %r" % g.model)
    edges = g.edges()
    violations: List[Tuple[int, int, int]] = []
    if edges.size == 0:
        return violations
    pts = g.points
    tree = cKDTree(pts)
    a = pts[edges[:, 0]]
    b = pts[edges[:, 1]]
    lengths = np.hypot(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1])
    for x_pt, y_pt, (lo, hi), length in zip(a, b, edges, lengths):
        half = length / 2.0
        for x, centre in ((int(lo), x_pt), (int(hi), y_pt)):
            for z in tree.query_ball_point(centre, half):
                if z == lo or z == hi:
                    continue
                dz = math.hypot(pts[z, 0] - centre[0], pts[z, 1] - centre[1])
                if dz < half and not g.has_edge(x, int(z)):
                    other = int(hi) if x == int(lo) else int(lo)
                    violations.append((x, other, int(z)))
    return violations


def _disk_triples(g: NearestNeighborGraph, idx: int) -> Tuple[float, float, float]:
    p = g.points[idx]
    return (float(p[0]), float(p[1]), g.neighbourhood_radius(idx))


def _area_subset_union(a: Tuple[float, float, float],
                       c: Tuple[float, float, float],
                       d: Tuple[float, float, float],
                       rel_tol: float = 1e-9) -> bool:
    """Whether disk ``a`` is contained in the union of disks ``c`` and ``d``.

    Decided exactly (up to ``rel_tol``) through areas by inclusion-exclusion:
    ``|A| - |A∩C| - |A∩D| + |A∩C∩D| = |A \\ (C ∪ D)|`` must vanish.
    """
    area_a = math.pi * a[2] * a[2]
    if area_a == 0.0:
        return True
    ac = disk_lens_area(math.hypot(a[0] - c[0], a[1] - c[1]), a[2], c[2])
    ad = disk_lens_area(math.hypot(a[0] - d[0], a[1] - d[1]), a[2], d[2])
    acd = disks_intersection_area([a, c, d])
    residual = area_a - ac - ad + acd
    return residual <= rel_tol * area_a


def _lens_subset_disk(a: Tuple[float, float, float],
                      b: Tuple[float, float, float],
                      c: Tuple[float, float, float],
                      rel_tol: float = 1e-9) -> bool:
    """Whether the lens ``a ∩ b`` is contained in disk ``c`` (by areas)."""
    lens = disk_lens_area(math.hypot(a[0] - b[0], a[1] - b[1]), a[2], b[2])
    if lens <= 0.0:
        return True
    triple = disks_intersection_area([a, b, c])
    return lens - triple <= rel_tol * max(lens, 1e-300)


def check_intersect_union_lemma(g: NearestNeighborGraph,
                                quadruple: Tuple[int, int, int, int]
                                ) -> Optional[bool]:
    """Test the four-disk containment implication on one quadruple.

    For points ``(w, x, y, z)`` with ``k``-th-neighbour disks ``D(.)``: if
    ``D(w) ∪ D(x) ⊆ D(y) ∪ D(z)`` and ``D(w) ∩ D(x) ⊆ D(y) ∩ D(z)``, then at
    least one of ``w y``, ``w z``, ``x y``, ``x z`` must be an edge of the
    mutual graph.  Containments are decided through exact lens/triple-overlap
    areas (inclusion-exclusion), not sampling.

    Returns
    -------
    bool or None
        ``None`` when the hypotheses do not hold (nothing to check); ``True``
        when they hold and one of the four pairs is an edge (or the pair sets
        ``{w, x}`` and ``{y, z}`` coincide, a trivially true case); ``False``
        on a genuine violation.
    """
    if g.model != "mutual":
        raise ValueError("the containment implication applies to the mutual "
                         "model; got %r" % g.model)
    w, x, y, z = (int(v) for v in quadruple)
    if {w, x} == {y, z}:
        return True
    dw, dx, dy, dz = (_disk_triples(g, v) for v in (w, x, y, z))
    if min(dw[2], dx[2], dy[2], dz[2]) <= 0.0:
        return None
    if not (_area_subset_union(dw, dy, dz) and _area_subset_union(dx, dy, dz)):
        return None
    if not (_lens_subset_disk(dw, dx, dy) and _lens_subset_disk(dw, dx, dz)):
        return None
    pairs = ((w, y), (w, z), (x, y), (x, z))
    return any(g.has_edge(p, q) for p, q in pairs if p != q)


def sample_intersect_union_quadruples(g: NearestNeighborGraph, samples: int,
                                      seed: int
                                      ) -> Tuple[List[Tuple[Tuple[int, int, int, int], bool]], int]:
    """Sample quadruples and evaluate :func:`check_intersect_union_lemma`.

    Quadruples mix three recipes — an edge ``(y, z)`` with ``w, x`` drawn
    from the two endpoints' neighbour lists (most likely to satisfy the
    containment hypotheses), two random edges, and four random points — and
    only those meeting the hypotheses are returned.

    Returns
    -------
    (results, tested)
        ``results`` pairs each qualifying quadruple with the lemma verdict;
        ``tested`` counts all sampled quadruples.
    """
    rng = np.random.default_rng(seed)
    n = g.n_points
    edges = g.edges()
    results: List[Tuple[Tuple[int, int, int, int], bool]] = []
    if n < 2:
        return results, 0
    tested = 0
    for _ in range(samples):
        mode = int(rng.integers(3)) if edges.shape[0] else 2
        if mode == 0:
            e = edges[int(rng.integers(edges.shape[0]))]
            y, z = int(e[0]), int(e[1])
            pool = np.unique(np.concatenate((
                g.out_neighbors[y], g.out_neighbors[z],
                np.array([y, z], dtype=np.int64))))
            w, x = (int(v) for v in rng.choice(pool, size=2, replace=True))
        elif mode == 1:
            e1 = edges[int(rng.integers(edges.shape[0]))]
            e2 = edges[int(rng.integers(edges.shape[0]))]
            w, x, y, z = int(e1[0]), int(e1[1]), int(e2[0]), int(e2[1])
        else:
            w, x, y, z = (int(v) for v in rng.integers(n, size=4))
        tested += 1
        verdict = check_intersect_union_lemma(g, (w, x, y, z))
        if verdict is not None:
            results.append(((w, x, y, z), bool(verdict)))
    return results, tested


def check_farapart(g: NearestNeighborGraph,
                   comps: Optional[ComponentDecomposition] = None
                   ) -> List[Tuple[int, int, int, float, float]]:
    """Check the separation of foreign points from edges (mutual model).

    Every point ``a`` whose component differs from that of an edge
    ``b1 b2`` of length ``rho`` must satisfy
    ``dist(a, segment b1 b2) >= rho * FARAPART_RATIO``.  Returns violations
    ``(a, b1, b2, dist, rho)``; empty means the property holds.  Distances
    are exact point-to-closed-segment distances; the comparison allows a
    ``1e-12`` relative slack so boundary cases are not reported spuriously.
    """
    if g.model != "mutual":
        raise ValueError("the separation property applies to the mutual "
                         "model; got %r" % g.model)
    if comps is None:
        comps = components(g)
    edges = g.edges()
    violations: List[Tuple[int, int, int, float, float]] = []
    if edges.size == 0 or comps.num_components < 2:
        return violations
    pts = g.points
    labels = comps.labels
    tree = cKDTree(pts)
    a = pts[edges[:, 0]]
    b = pts[edges[:, 1]]
    mid = (a + b) / 2.0
    rho = np.hypot(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1])
    # Any point within FARAPART_RATIO * rho of the segment lies within
    # rho * (1/2 + FARAPART_RATIO) of the midpoint; pad slightly.
    search = rho * (0.5 + FARAPART_RATIO) * (1.0 + 1e-9)
    for e in range(edges.shape[0]):
        if rho[e] == 0.0:
            continue
        b1, b2 = int(edges[e, 0]), int(edges[e, 1])
        lab = labels[b1]
        seg = Segment(Point(*pts[b1]), Point(*pts[b2]))
        cutoff = rho[e] * FARAPART_RATIO
        for cand in tree.query_ball_point(mid[e], search[e]):
            if labels[cand] == lab:
                continue
            dist = point_segment_distance(Point(*pts[cand]), seg)
            if dist < cutoff - 1e-12 * rho[e]:
                violations.append((int(cand), b1, b2, float(dist),
                                   float(rho[e])))
    return violations


# ---------------------------------------------------------------------------
# Goodness conditions
# ---------------------------------------------------------------------------


def _cos_extremes(lo: float, hi: float) -> Tuple[float, float]:
    """Range of ``cos`` over the angle interval ``[lo, hi]``."""
    vals = [math.cos(lo), math.cos(hi)]
    two_pi = 2.0 * math.pi
    k_lo = math.ceil(lo / two_pi)
    if lo <= k_lo * two_pi <= hi:
        vals.append(1.0)
    k_lo = math.ceil((lo - math.pi) / two_pi)
    if lo <= k_lo * two_pi + math.pi <= hi:
        vals.append(-1.0)
    return min(vals), max(vals)


def _half_disk_bbox(px: float, py: float, u: float, radius: float
                    ) -> Tuple[float, float, float, float]:
    """Axis-aligned bounding box of the closed half-disk at ``p``.

    The half-disk is ``{p + t v : |t| <= radius, v in unit directions within
    pi/2 of u}`` — centre on the boundary diameter, bulge towards ``u``.
    """
    lo_c, hi_c = _cos_extremes(u - math.pi / 2.0, u + math.pi / 2.0)
    lo_s, hi_s = _cos_extremes(u - math.pi, u)  # sin t = cos(t - pi/2)
    return (px + radius * min(lo_c, 0.0), py + radius * min(lo_s, 0.0),
            px + radius * max(hi_c, 0.0), py + radius * max(hi_s, 0.0))


def _empty_half_disk(pts: np.ndarray, tree: cKDTree, idx: int, radius: float,
                     side: float) -> Optional[float]:
    """Direction ``u`` of an empty half-disk at point ``idx``, if one exists.

    The half-disk of direction ``u`` is empty of other points iff no
    neighbour within ``radius`` has direction within ``pi/2`` of ``u``; such
    ``u`` exist iff the sorted neighbour directions leave an angular gap
    greater than ``pi``.  Candidate directions from each gap are then tested
    for window containment through the exact half-disk bounding box.
    Returns a valid direction or ``None``.
    """
    p = pts[idx]
    ids = [j for j in tree.query_ball_point(p, radius * (1.0 + 1e-12))
           if j != idx]
    if ids:
        rel = pts[ids] - p
        keep = np.hypot(rel[:, 0], rel[:, 1]) <= radius
        rel = rel[keep]
    else:
        rel = np.empty((0, 2))
    if rel.shape[0] == 0:
        gaps = [(0.0, 2.0 * math.pi)]
    else:
        ang = np.sort(np.arctan2(rel[:, 1], rel[:, 0]))
        gaps = []
        for t in range(ang.size):
            start = float(ang[t])
            end = float(ang[(t + 1) % ang.size])
            width = (end - start) % (2.0 * math.pi)
            if t == ang.size - 1 and ang.size == 1:
                width = 2.0 * math.pi
            if width > math.pi:
                gaps.append((start, width))
    for start, width in gaps:
        # u must keep all neighbour directions out of (u - pi/2, u + pi/2):
        # any u in [start + pi/2, start + width - pi/2] does.
        span = width - math.pi
        for frac in (0.5, 0.0, 1.0, 0.25, 0.75):
            u = start + math.pi / 2.0 + span * frac
            x0, y0, x1, y1 = _half_disk_bbox(float(p[0]), float(p[1]), u,
                                             radius)
            if x0 >= 0.0 and y0 >= 0.0 and x1 <= side and y1 <= side:
                return u % (2.0 * math.pi)
    return None


@dataclass(frozen=True)
class GoodnessReport:
    """Outcome of the six badness conditions on one graph.

    ``bad[i]`` is ``True`` when condition ``i + 1`` fails (the configuration
    is bad in that sense); ``witnesses`` maps the 1-based condition number of
    each failure to a witness object.  ``good`` means all six passed.

    The conditions, with ``D = d * sqrt(log n)`` and tile side
    ``sqrt(log n) / (20000 d)``:

    1. some edge joins points whose tiles are farther than ``2 D`` apart;
    2. some pair within ``D / d**2 = (1/d) sqrt(log n)`` is not an edge;
    3. some point has an empty half-disk of radius ``D`` inside the window;
    4. two or more components have diameter at least ``D``;
    5. some component of diameter at most ``D`` has a point within ``2 D``
       of a window corner;
    6. some two edges in different components cross.
    """

    bad: Tuple[bool, bool, bool, bool, bool, bool]
    witnesses: Dict[int, object]

    @property
    def good(self) -> bool:
        return not any(self.bad)


def check_goodness(g: NearestNeighborGraph, consts: ModelConstants,
                   comps: Optional[ComponentDecomposition] = None
                   ) -> GoodnessReport:
    """Evaluate the six badness conditions of :class:`GoodnessReport`.

    ``consts`` supplies the diameter scale ``d``; the intensity ``n`` comes
    from the graph's window.  Every test is deterministic, and conditions 1,
    2, 4, 5 and 6 are exact.  Condition 3 reports bad only on an exactly
    verified empty half-disk (direction-gap argument plus exact bounding-box
    containment), so a bad verdict is always genuine.

    Examples
    --------
    >>> ps = sample_poisson(2000.0, seed=2)
    >>> consts = ModelConstants(c=1.2, c_minus=0.5, c_plus=23.9, d=11.0)
    >>> g = build_graph(ps, k=10, model="mutual")
    >>> isinstance(check_goodness(g, consts).good, bool)
    True
    """
    if comps is None:
        comps = components(g)
    n_int = g.pointset.window.n
    if n_int <= 1.0:
        raise ValueError("goodness conditions need window intensity n > 1")
    log_n = math.log(n_int)
    root = math.sqrt(log_n)
    d = consts.d
    big_d = d * root
    side = g.pointset.window.side
    pts = g.points
    edges = g.edges()
    bad = [False] * 6
    witnesses: Dict[int, object] = {}

    # Condition 1: edge endpoints in tiles with centres > 2 D apart.
    tile = root / (20000.0 * d)
    if edges.size:
        ca = (np.floor(pts[edges[:, 0]] / tile) + 0.5) * tile
        cb = (np.floor(pts[edges[:, 1]] / tile) + 0.5) * tile
        gap = np.hypot(cb[:, 0] - ca[:, 0], cb[:, 1] - ca[:, 1])
        far = np.flatnonzero(gap > 2.0 * big_d)
        if far.size:
            e = int(far[0])
            bad[0] = True
            witnesses[1] = (int(edges[e, 0]), int(edges[e, 1]),
                            float(gap[e]))

    # Condition 2: near pair that is not an edge.
    tree = cKDTree(pts)
    near = root / d
    close_pairs = tree.query_pairs(near, output_type="ndarray")
    for i, j in close_pairs:
        if not g.has_edge(int(i), int(j)):
            bad[1] = True
            witnesses[2] = (int(i), int(j),
                            float(math.hypot(*(pts[j] - pts[i]))))
            break

    # Condition 3: empty half-disk of radius D fully inside the window.
    for i in range(pts.shape[0]):
        u = _empty_half_disk(pts, tree, i, big_d, side)
        if u is not None:
            bad[2] = True
            witnesses[3] = (i, float(u))
            break

    # Condition 4: two components of diameter >= D.
    wide = [c for c, diam in comps.diameters.items() if diam >= big_d]
    if len(wide) >= 2:
        bad[3] = True
        witnesses[4] = sorted(wide)[:2]

    # Condition 5: small component within 2 D of a corner.
    corners = np.array(g.pointset.window.corners)
    for c, diam in comps.diameters.items():
        if diam > big_d:
            continue
        members = comps.members(c)
        dmin = np.hypot(pts[members, None, 0] - corners[None, :, 0],
                        pts[members, None, 1] - corners[None, :, 1]).min()
        if dmin <= 2.0 * big_d:
            bad[4] = True
            witnesses[5] = (int(c), float(dmin))
            break

    # Condition 6: cross-component edge crossing.
    report = find_crossing_pairs(g, comps)
    if report.num_crossings:
        bad[5] = True
        witnesses[6] = report.quadruples[0]

    return GoodnessReport(bad=tuple(bad), witnesses=witnesses)


# ---------------------------------------------------------------------------
# Component set-up
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentSetup:
    """Canonical quadruple attached to one small component.

    ``a`` is the member of the component closest to its complement, ``b``
    that closest outside point, ``x_l``/``x_r`` the leftmost/rightmost
    members (ties to the lower index), and ``rho = |a b|``.  ``count_a``,
    ``count_b`` and ``count_c`` count the remaining points (quadruple
    excluded) in the disk around ``a`` minus the ``b`` disk and moat, the
    disk around ``b`` minus the ``a`` disk and moat, and the moat itself —
    the union of the left half-disk at ``x_l`` and the right half-disk at
    ``x_r``, both of radius ``rho``, intersected with the window.

    The set-up holds (``is_setup``) when the quadruple is within
    ``d sqrt(log n)`` of ``a``, the moat is empty, and one of the two side
    regions holds at least ``k`` points.
    """

    component: int
    a: int
    b: int
    x_l: int
    x_r: int
    rho: float
    count_a: int
    count_b: int
    count_c: int
    close: bool
    moat_empty: bool
    dense: bool

    @property
    def is_setup(self) -> bool:
        return self.close and self.moat_empty and self.dense


def find_component_setup(g: NearestNeighborGraph,
                         comps: Optional[ComponentDecomposition] = None,
                         consts: Optional[ModelConstants] = None
                         ) -> List[ComponentSetup]:
    """Extract the canonical quadruple of every small component.

    A component qualifies when its diameter is at most ``d sqrt(log n)`` and
    it is not the whole vertex set.  Returns one :class:`ComponentSetup` per
    qualifying component (sorted by component label); connected graphs yield
    an empty list.
    """
    if comps is None:
        comps = components(g)
    if consts is None:
        raise ValueError("model constants (for the diameter cutoff d) are "
                         "required")
    n_int = g.pointset.window.n
    if n_int <= 1.0:
        raise ValueError("component set-up needs window intensity n > 1")
    big_d = consts.d * math.sqrt(math.log(n_int))
    pts = g.points
    n = g.n_points
    results: List[ComponentSetup] = []
    for label in comps.component_ids:
        if comps.diameters[label] > big_d or comps.sizes[label] >= n:
            continue
        members = comps.members(label)
        outside_mask = np.ones(n, dtype=bool)
        outside_mask[members] = False
        outside = np.flatnonzero(outside_mask)
        tree = cKDTree(pts[outside])
        dists, nearest = tree.query(pts[members])
        best = int(np.argmin(dists))
        a = int(members[best])
        b = int(outside[nearest[best]])
        rho = float(dists[best])
        xs = pts[members, 0]
        x_l = int(members[np.lexsort((members, xs))[0]])
        x_r = int(members[np.lexsort((members, -xs))[0]])
        quad = {a, b, x_l, x_r}

        pa = pts[a]
        pb = pts[b]
        pl = pts[x_l]
        pr = pts[x_r]
        close = max(math.hypot(*(pb - pa)), math.hypot(*(pl - pa)),
                    math.hypot(*(pr - pa))) <= big_d

        others = np.array([i for i in range(n) if i not in quad],
                          dtype=np.int64)
        q = pts[others]
        in_da = np.hypot(q[:, 0] - pa[0], q[:, 1] - pa[1]) <= rho
        in_db = np.hypot(q[:, 0] - pb[0], q[:, 1] - pb[1]) <= rho
        in_left = (np.hypot(q[:, 0] - pl[0], q[:, 1] - pl[1]) <= rho) \
            & (q[:, 0] <= pl[0])
        in_right = (np.hypot(q[:, 0] - pr[0], q[:, 1] - pr[1]) <= rho) \
            & (q[:, 0] >= pr[0])
        in_moat = in_left | in_right
        count_c = int(np.count_nonzero(in_moat))
        count_a = int(np.count_nonzero(in_da & ~in_db & ~in_moat))
        count_b = int(np.count_nonzero(in_db & ~in_da & ~in_moat))
        kk = min(g.k, n - 1)
        results.append(ComponentSetup(
            component=int(label), a=a, b=b, x_l=x_l, x_r=x_r, rho=rho,
            count_a=count_a, count_b=count_b, count_c=count_c,
            close=bool(close), moat_empty=(count_c == 0),
            dense=(count_a >= kk or count_b >= kk)))
    return results


# ---------------------------------------------------------------------------
# Connectivity experiments
# ---------------------------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = 1.96
                    ) -> Tuple[float, float]:
    """Wilson score confidence interval for a binomial proportion."""
    if trials <= 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2.0 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1.0 - p) / trials
                                   + z * z / (4.0 * trials * trials))
    return (max(0.0, centre - half), min(1.0, centre + half))


@dataclass(frozen=True)
class TrialResult:
    """Outcome of a single sampled-graph trial.

    ``largest_two_diameters`` is (largest, second largest) component
    diameter, the second being 0 when connected.  ``num_crossing_pairs`` is
    0 for connected graphs without running the crossing search.
    ``smallest_component_size`` is the size of the smallest component.
    """

    n: float
    k: int
    c: float
    seed: int
    connected: bool
    num_components: int
    largest_two_diameters: Tuple[float, float]
    num_crossing_pairs: int
    smallest_component_size: int


@dataclass(frozen=True)
class ConnectivityEstimate:
    """Aggregate over the trials at one coefficient ``c``.

    ``connected_frac`` comes with a 95% Wilson interval.
    ``max_small_component`` is the largest size, over the trials, of the
    second-largest component (0 when every trial was connected) — the
    natural size of the worst non-giant part.  ``crossing_pairs_total``
    sums cross-component crossings over all trials.
    """

    n: float
    k: int
    c: float
    model: str
    trials: int
    connected_frac: float
    wilson_lo: float
    wilson_hi: float
    mean_components: float
    max_small_component: int
    crossing_pairs_total: int
    seed: int
    results: Tuple[TrialResult, ...] = ()


def _trial_seed(master_seed: int, c_index: int, trial_index: int) -> int:
    """Deterministic per-trial seed from counter-based key splitting."""
    seq = np.random.SeedSequence(master_seed,
                                 spawn_key=(c_index, trial_index))
    return int(seq.generate_state(1, np.uint64)[0])


def run_trial(n: float, c: float, seed: int, model: str = "mutual"
              ) -> TrialResult:
    """Sample one Poisson configuration and measure its graph.

    ``k = ceil(c log n)``; for the ``gilbert`` model the connection radius
    is ``sqrt(c log n / pi)`` (disk area ``c log n``), the analogue of the
    same coefficient scale.
    """
    _validate_model(model)
    k = int(math.ceil(c * math.log(n)))
    ps = sample_poisson(n, seed)
    radius = math.sqrt(c * math.log(n) / math.pi) if model == "gilbert" else None
    if len(ps) == 0:
        return TrialResult(n=n, k=k, c=c, seed=seed, connected=True,
                           num_components=0, largest_two_diameters=(0.0, 0.0),
                           num_crossing_pairs=0, smallest_component_size=0)
    g = build_graph(ps, k, model=model, radius=radius)
    comps = components(g)
    connected = comps.num_components <= 1
    if connected:
        crossings = 0
    else:
        crossings = find_crossing_pairs(g, comps).num_crossings
    sizes = comps.sizes_sorted()
    return TrialResult(
        n=n, k=k, c=c, seed=seed, connected=connected,
        num_components=comps.num_components,
        largest_two_diameters=comps.largest_two_diameters(),
        num_crossing_pairs=crossings,
        smallest_component_size=sizes[-1] if sizes else 0)


def estimate_connectivity(n: float, c_values: Sequence[float], trials: int,
                          master_seed: int, model: str = "mutual"
                          ) -> List[ConnectivityEstimate]:
    """Estimate the connectivity probability across coefficients ``c``.

    Runs ``trials`` independent trials per coefficient.  Per-trial seeds are
    ``SeedSequence(master_seed, spawn_key=(c_index, trial_index))``, so any
    single trial can be reproduced without rerunning the sweep, and results
    do not depend on execution order.

    Examples
    --------
    >>> out = estimate_connectivity(400.0, [1.5], trials=3, master_seed=9)
    >>> out[0].trials
    3
    """
    _validate_model(model)
    if trials <= 0:
        raise ValueError("trials must be positive")
    estimates: List[ConnectivityEstimate] = []
    for ci, c in enumerate(c_values):
        results = [run_trial(n, c, _trial_seed(master_seed, ci, t), model)
                   for t in range(trials)]
        connected = sum(1 for r in results if r.connected)
        lo, hi = wilson_interval(connected, trials)
        estimates.append(ConnectivityEstimate(
            n=n, k=results[0].k, c=float(c), model=model, trials=trials,
            connected_frac=connected / trials, wilson_lo=lo, wilson_hi=hi,
            mean_components=sum(r.num_components for r in results) / trials,
            max_small_component=_max_second_component(n, c, model, results),
            crossing_pairs_total=sum(r.num_crossing_pairs for r in results),
            seed=master_seed, results=tuple(results)))
    return estimates


def _max_second_component(n: float, c: float, model: str,
                          results: Sequence[TrialResult]) -> int:
    """Largest second-largest-component size over trials.

    For trials with exactly two components the second-largest size is
    ``smallest_component_size``; trials with more components are re-derived
    from their recorded seed (rare in the regimes of interest).
    """
    best = 0
    for r in results:
        if r.connected or r.num_components == 0:
            continue
        if r.num_components == 2:
            second = r.smallest_component_size
        else:
            ps = sample_poisson(n, r.seed)
            radius = (math.sqrt(c * math.log(n) / math.pi)
                      if model == "gilbert" else None)
            g = build_graph(ps, r.k, model=model, radius=radius)
            sizes = components(g).sizes_sorted()
            second = sizes[1] if len(sizes) > 1 else 0
        best = max(best, second)
    return best


# ---------------------------------------------------------------------------
# Deterministic showcase configuration
# ---------------------------------------------------------------------------


def figure_one_pointset(seed: int = 20) -> Tuple[PointSet, Dict[str, object]]:
    """Hand-built configuration with exactly one cross-component crossing.

    At ``k = 20`` the mutual graph on this set splits into several
    components; the edge between the two axis points ``b1 b2`` and the edge
    between the two straddling points ``a1 a2`` lie in different components
    yet cross.  Returns the point set (window intensity 25) and a role map
    with the indices of ``a1``, ``a2``, ``b1``, ``b2`` and the suggested
    ``k``.

    Examples
    --------
    >>> ps, roles = figure_one_pointset()
    >>> g = build_graph(ps, roles["k"], model="mutual")
    >>> find_crossing_pairs(g).num_crossings
    1
    """
    rng = np.random.default_rng(seed)

    def jitter_box(centre: Tuple[float, float], half: float, count: int
                   ) -> np.ndarray:
        return np.array(centre) + rng.uniform(-half, half, size=(count, 2))

    base = [
        (0.0, 0.0),      # b1
        (1.0, 0.0),      # b2
        (0.4995, 0.19),  # a1
        (0.5, -0.31),    # a2
    ]
    clusters = [
        jitter_box((0.09, 0.52), 0.001, 10),   # flank near b1
        jitter_box((0.91, 0.52), 0.001, 9),    # flank near b2
        jitter_box((0.172, 0.993), 0.001, 21),  # upper-left pack
        jitter_box((0.828, 0.993), 0.001, 21),  # upper-right pack
        jitter_box((0.5, -0.875), 0.002, 20),  # anchor pack below a2
    ]
    local = np.vstack([np.array(base, dtype=float)] + clusters)
    local += np.array([2.0, 2.0])
    fillers = np.array([
        [0.5, 0.5], [4.5, 0.5], [0.5, 4.5], [4.5, 4.5],
        [4.5, 2.5], [0.3, 4.0],
    ])
    pts = np.vstack([local, fillers])
    ps = PointSet(points=pts, seed=seed, window=SampleWindow(25.0))
    roles: Dict[str, object] = {"b1": 0, "b2": 1, "a1": 2, "a2": 3, "k": 20}
    return ps, roles
