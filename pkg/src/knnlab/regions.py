"""Normalised crossing-pair frames and their derived region systems.

A *crossing configuration* consists of two graph edges ``a1 a2`` and
``b1 b2`` that intersect while their endpoint pairs lie in different graph
components.  Any such configuration can be brought, by relabelling and a
similarity transformation, into a canonical frame in which

* ``b1 = (0, 0)`` and ``b2 = (1, 0)``,
* the ``a`` edge is no longer than the ``b`` edge,
* ``a1`` is the ``a`` endpoint closer to the segment ``b1 b2``, placed on
  or above the axis (``a1.y >= 0 >= a2.y``), and
* ``b1`` is the ``b`` endpoint closer to ``a1`` (hence ``a1.x <= 1/2``).

This module builds that frame (:func:`normalize_crossing_pair`), the
named families of regions attached to it (:func:`build_named_regions`),
and the auxiliary frames used by the connectivity analysis
(:func:`build_component_setup`, :func:`build_tile_frame`,
:func:`build_beta_frame`).

Region names follow a fixed vocabulary.  ``H``-regions must collectively
hold many points (the disk around ``a1`` or ``a2`` is forced to capture
them) while ``L``-regions must be empty of points; the certified area
censuses in :mod:`knnlab.bounds` turn this dichotomy into a bound on the
probability that a crossing configuration occurs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import numpy as np

from .geom import (
    EMPTY,
    AngularSector,
    ConvexPolygon,
    Difference,
    Disk,
    Ellipse,
    HalfDisk,
    HalfPlane,
    Intersection,
    Point,
    PointLike,
    Primitive,
    Region,
    RegionLike,
    Segment,
    Union,
    as_point,
    as_region,
    distance,
    membership,
    point_segment_distance,
    segments_intersect,
)

__all__ = [
    "SQRT3",
    "W_PLUS",
    "W_MINUS",
    "Z_MINUS",
    "Z_PLUS",
    "Q_POINT",
    "U_MINUS",
    "V_MINUS",
    "U_PLUS",
    "V_PLUS",
    "Q_LEFT",
    "Q_RIGHT",
    "A1_LOWEST",
    "CrossingFrame",
    "NormalizationMap",
    "normalize_crossing_pair",
    "normalize_crossing_pair_with_map",
    "NamedRegionSet",
    "build_named_regions",
    "s1_polygon",
    "s2_triangle",
    "ComponentSetupFrame",
    "build_component_setup",
    "TileFrame",
    "build_tile_frame",
    "BetaFrame",
    "build_beta_frame",
    "region_to_json_dict",
    "region_from_json_dict",
]

SQRT3 = math.sqrt(3.0)

#: Apex of the upper triangle ``T`` (circumradius-1 corner above the axis).
W_PLUS = Point(0.5, 1.0 / (2.0 * SQRT3))
#: Mirror image of ``W_PLUS`` below the axis.
W_MINUS = Point(0.5, -1.0 / (2.0 * SQRT3))
#: Apex of the lower triangle ``T2`` (equilateral corner below the axis).
Z_MINUS = Point(0.5, -SQRT3 / 2.0)
#: Mirror image of ``Z_MINUS`` above the axis.
Z_PLUS = Point(0.5, SQRT3 / 2.0)
#: Extremal location at distance 1 from ``b1`` and ``1/sqrt(6)`` from ``b2``.
Q_POINT = Point(11.0 / 12.0, math.sqrt(23.0) / 12.0)
#: Left corner of the bounding triangle for ``a2`` placements.
U_MINUS = Point(0.25, -SQRT3 / 4.0)
#: Right corner of the bounding triangle for ``a2`` placements.
V_MINUS = Point(0.75, -SQRT3 / 4.0)
#: Upper mirror images of ``U_MINUS`` / ``V_MINUS``.
U_PLUS = Point(0.25, SQRT3 / 4.0)
V_PLUS = Point(0.75, SQRT3 / 4.0)
#: Corners of the quadrilateral bounding the upper lens region.
Q_LEFT = Point(1.0 / 6.0, 1.0 / (2.0 * SQRT3))
Q_RIGHT = Point(5.0 / 6.0, 1.0 / (2.0 * SQRT3))
#: Lowest admissible location of ``a1`` (height ``1/(4*sqrt(6))``).
A1_LOWEST = Point(0.5, 1.0 / (4.0 * math.sqrt(6.0)))

_B1 = Point(0.0, 0.0)
_B2 = Point(1.0, 0.0)

#: Closed upper / lower half-planes about the ``b1 b2`` axis.
_UPPER = HalfPlane(Point(0.0, 0.0), Point(0.0, -1.0))
_LOWER = HalfPlane(Point(0.0, 0.0), Point(0.0, 1.0))

_RHO_SLACK = 1e-12


# ---------------------------------------------------------------------------
# the canonical frame
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingFrame:
    """A normalised crossing configuration.

    Coordinates are expressed in the frame where ``b1 = (0, 0)`` and
    ``b2 = (1, 0)``.  ``rho1`` and ``rho2`` are the radii of the smallest
    disks about ``a1`` and ``a2`` containing their outgoing
    neighbourhoods; they default to the largest admissible values
    ``r1`` and ``r2`` (the distance from each ``a`` point to the nearer
    ``b`` point).

    Raises
    ------
    ValueError
        If the coordinates violate the frame invariants:
        ``0 < a1.x < 1`` and ``0 < a2.x < 1``, ``a1.y >= 0 >= a2.y``, or
        ``rho_i`` outside ``(0, r_i]`` (up to a relative slack of 1e-12).
    """

    a1: Point
    a2: Point
    rho1: Optional[float] = None
    rho2: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", as_point(self.a1))
        object.__setattr__(self, "a2", as_point(self.a2))
        if not (0.0 < self.a1.x < 1.0 and 0.0 < self.a2.x < 1.0):
            raise ValueError(
                "frame invariant violated: both a points need x strictly in (0, 1)"
            )
        if not (self.a1.y >= 0.0 >= self.a2.y):
            raise ValueError(
                "frame invariant violated: need a1.y >= 0 >= a2.y"
            )
        r1, r2 = self.r1, self.r2
        rho1 = r1 if self.rho1 is None else float(self.rho1)
        rho2 = r2 if self.rho2 is None else float(self.rho2)
        if not (0.0 < rho1 <= r1 + _RHO_SLACK and 0.0 < rho2 <= r2 + _RHO_SLACK):
            raise ValueError(
                "frame invariant violated: rho_i must lie in (0, r_i] "
                f"(got rho1={rho1}, r1={r1}, rho2={rho2}, r2={r2})"
            )
        object.__setattr__(self, "rho1", min(rho1, r1))
        object.__setattr__(self, "rho2", min(rho2, r2))

    @property
    def b1(self) -> Point:
        return _B1

    @property
    def b2(self) -> Point:
        return _B2

    @property
    def r1(self) -> float:
        """Distance from ``a1`` to the nearer of ``b1`` and ``b2``."""
        return min(distance(self.a1, _B1), distance(self.a1, _B2))

    @property
    def r2(self) -> float:
        """Distance from ``a2`` to the nearer of ``b1`` and ``b2``."""
        return min(distance(self.a2, _B1), distance(self.a2, _B2))

    def with_radii(self, rho1: float, rho2: float) -> "CrossingFrame":
        """A copy of the frame with explicit neighbourhood radii."""
        return CrossingFrame(self.a1, self.a2, rho1, rho2)


@dataclass(frozen=True)
class NormalizationMap:
    """Bookkeeping for :func:`normalize_crossing_pair_with_map`.

    ``roles`` maps each role name (``"a1"``, ``"a2"``, ``"b1"``, ``"b2"``)
    to the position (0-3) of the input point that took that role, in the
    argument order ``(a1, a2, b1, b2)``.  ``scale`` is the length of the
    original ``b`` edge after relabelling (the similarity divisor), and
    ``reflected`` records whether the frame was mirrored about the axis.
    """

    roles: Dict[str, int]
    scale: float
    reflected: bool


def _similarity(p: Point, origin: Point, ex: float, ey: float, scale: float) -> Point:
    dx, dy = p.x - origin.x, p.y - origin.y
    return Point((dx * ex + dy * ey) / scale, (-dx * ey + dy * ex) / scale)


def normalize_crossing_pair_with_map(
    a1: PointLike, a2: PointLike, b1: PointLike, b2: PointLike
) -> Tuple[CrossingFrame, NormalizationMap]:
    """Normalise a crossing configuration and report the relabelling used.

    See :func:`normalize_crossing_pair` for the geometric conventions.
    """
    pts = [as_point(a1), as_point(a2), as_point(b1), as_point(b2)]
    if not segments_intersect(Segment(pts[0], pts[1]), Segment(pts[2], pts[3])):
        raise ValueError("the two edges do not intersect")

    idx = [0, 1, 2, 3]  # positions of current (a1, a2, b1, b2) in the input
    # The a edge must be the shorter of the two (ties keep the labelling).
    if distance(pts[idx[0]], pts[idx[1]]) > distance(pts[idx[2]], pts[idx[3]]):
        idx = [idx[2], idx[3], idx[0], idx[1]]
    # a1 is the a endpoint closer to the segment b1 b2.
    bseg = Segment(pts[idx[2]], pts[idx[3]])
    if point_segment_distance(pts[idx[0]], bseg) > point_segment_distance(
        pts[idx[1]], bseg
    ):
        idx = [idx[1], idx[0], idx[2], idx[3]]
    # b1 is the b endpoint closer to a1.
    if distance(pts[idx[0]], pts[idx[3]]) < distance(pts[idx[0]], pts[idx[2]]):
        idx = [idx[0], idx[1], idx[3], idx[2]]

    o = pts[idx[2]]
    t = pts[idx[3]]
    scale = distance(o, t)
    ex, ey = (t.x - o.x) / scale, (t.y - o.y) / scale
    na1 = _similarity(pts[idx[0]], o, ex, ey, scale)
    na2 = _similarity(pts[idx[1]], o, ex, ey, scale)
    reflected = na1.y < 0.0 or na2.y > 0.0
    if reflected:
        na1 = Point(na1.x, -na1.y)
        na2 = Point(na2.x, -na2.y)
    frame = CrossingFrame(na1, na2)
    roles = {"a1": idx[0], "a2": idx[1], "b1": idx[2], "b2": idx[3]}
    return frame, NormalizationMap(roles=roles, scale=scale, reflected=reflected)


def normalize_crossing_pair(
    a1: PointLike, a2: PointLike, b1: PointLike, b2: PointLike
) -> CrossingFrame:
    """Bring a crossing configuration into the canonical frame.

    The two closed segments must intersect.  Endpoint pairs are
    relabelled so that the ``a`` edge is the shorter one, ``a1`` is the
    ``a`` endpoint nearer the ``b`` segment and ``b1`` the ``b`` endpoint
    nearer ``a1``; a similarity transformation then places ``b1`` at the
    origin and ``b2`` at ``(1, 0)``, and a final reflection (if needed)
    puts ``a1`` on or above the axis.  All ties keep the input labelling.

    Returns
    -------
    CrossingFrame
        The normalised frame with default radii ``rho_i = r_i``.

    Raises
    ------
    ValueError
        If the segments do not intersect, or the normalised coordinates
        violate the frame invariants (which cannot happen for a genuine
        crossing pair of a mutual nearest-neighbour graph).
    """
    frame, _ = normalize_crossing_pair_with_map(a1, a2, b1, b2)
    return frame


# ---------------------------------------------------------------------------
# named regions of a frame
# ---------------------------------------------------------------------------


def _wedge_at_b1() -> AngularSector:
    """Closed wedge of half-angle pi/6 at ``b1`` about the direction of ``b2``."""
    c, s = math.cos(math.pi / 6.0), math.sin(math.pi / 6.0)
    return AngularSector(_B1, Point(c, -s), Point(c, s))


def _wedge_at_b2() -> AngularSector:
    """Closed wedge of half-angle pi/6 at ``b2`` about the direction of ``b1``."""
    c, s = math.cos(math.pi / 6.0), math.sin(math.pi / 6.0)
    return AngularSector(_B2, Point(-c, s), Point(-c, -s))


def s1_polygon() -> ConvexPolygon:
    """Convex quadrilateral certified to contain every admissible ``a1``."""
    return ConvexPolygon(
        [Point(0.5, 0.0), Point(SQRT3 / 4.0, 0.25), W_PLUS,
         Point(1.0 - SQRT3 / 4.0, 0.25)]
    )


def s2_triangle() -> ConvexPolygon:
    """Triangle certified to contain every admissible ``a2``."""
    return ConvexPolygon([U_MINUS, V_MINUS, W_MINUS])


@dataclass(frozen=True, eq=False)
class NamedRegionSet:
    """The named regions derived from a crossing frame.

    Attributes
    ----------
    frame : CrossingFrame
    variant : str
        ``"restricted"`` (default region system) or ``"unrestricted"`` (the
        definitions of ``S1``, ``L1``, ``L3``, ``L5`` and ``H3`` without
        the half-plane restrictions and with the alternative ``L3``
        intersection).
    regions : dict
        Mapping from region name to ``Region``.
    points : dict
        Named reference points (``w``, ``z``, ``q``, corner locations,
        and the frame points themselves).
    """

    frame: CrossingFrame
    variant: str
    regions: Dict[str, Region]
    points: Dict[str, Point]

    def __getitem__(self, name: str) -> Region:
        return self.regions[name]

    def names(self) -> Tuple[str, ...]:
        return tuple(self.regions)

    def half(self, name: str, sign: str) -> Region:
        """The part of region ``name`` on or above (``"+"``) / below (``"-"``)
        the axis through ``b1`` and ``b2``."""
        if sign == "+":
            return Intersection((self.regions[name], Primitive(_UPPER)))
        if sign == "-":
            return Intersection((self.regions[name], Primitive(_LOWER)))
        raise ValueError("sign must be '+' or '-'")

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "frame": {
                "a1": [self.frame.a1.x, self.frame.a1.y],
                "a2": [self.frame.a2.x, self.frame.a2.y],
                "rho1": self.frame.rho1,
                "rho2": self.frame.rho2,
            },
            "points": {k: [p.x, p.y] for k, p in self.points.items()},
            "regions": {k: region_to_json_dict(r) for k, r in self.regions.items()},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def build_named_regions(f: CrossingFrame,
                        variant: str = "restricted") -> NamedRegionSet:
    """Construct the named region system of a crossing frame.

    The system contains the bounding triangles ``T`` and ``T2``, the
    admissible placement regions ``S1`` and ``S2``, the joining ellipses
    ``E1``/``E2`` (foci ``a1`` and a ``b`` point, string length 1) and
    ``F1``/``F2`` (foci ``a2`` and a ``b`` point), the lens ``M`` of the
    two neighbourhood disks, the crescents ``R1``/``R2``, the
    point-free regions ``L1``..``L6`` with their union ``L``, and the
    point-forcing regions ``H1``..``H5`` with their union ``H``
    (``H5`` coincides with ``S2`` by construction).

    Parameters
    ----------
    f : CrossingFrame
    variant : {"restricted", "unrestricted"}
        Which definition to use for the regions that come in two forms
        (``S1``, ``L1``, ``L3``, ``L5``, ``H3``); ``"restricted"``
        keeps the half-plane clamps and is the system used by the
        certified censuses.

    Raises
    ------
    ValueError
        For an unknown variant, or when an ellipse degenerates because an
        ``a`` point is at distance 1 or more from a ``b`` focus (cannot
        happen for admissible frames).
    """
    if variant not in ("restricted", "unrestricted"):
        raise ValueError("variant must be 'restricted' or 'unrestricted'")

    a1, a2 = f.a1, f.a2
    r1, r2 = f.r1, f.r2
    for p, tag in ((a1, "a1"), (a2, "a2")):
        for b in (_B1, _B2):
            if distance(p, b) >= 1.0:
                raise ValueError(
                    f"{tag} is at distance >= 1 from a b point; the joining "
                    "ellipses degenerate and the region system is undefined"
                )

    A1 = Primitive(Disk(a1, r1))
    A2 = Primitive(Disk(a2, r2))
    B1 = Primitive(Disk(_B1, 1.0))
    B2 = Primitive(Disk(_B2, 1.0))
    Dk1 = Primitive(Disk(a1, f.rho1))
    Dk2 = Primitive(Disk(a2, f.rho2))
    Dh1 = Primitive(Disk(_B1, 0.5))
    Dh2 = Primitive(Disk(_B2, 0.5))
    E1 = Primitive(Ellipse(a1, _B1, 1.0))
    E2 = Primitive(Ellipse(a1, _B2, 1.0))
    F1 = Primitive(Ellipse(a2, _B1, 1.0))
    F2 = Primitive(Ellipse(a2, _B2, 1.0))
    upper = Primitive(_UPPER)
    lower = Primitive(_LOWER)
    wedge1 = Primitive(_wedge_at_b1())
    wedge2 = Primitive(_wedge_at_b2())

    T = Primitive(ConvexPolygon([_B1, _B2, W_PLUS]))
    T2 = Primitive(ConvexPolygon([_B1, _B2, Z_MINUS]))

    if variant == "restricted":
        S1 = Difference(
            Intersection((T, Primitive(HalfPlane(Point(0.5, 0.0), Point(1.0, 0.0))))),
            Dh1,
        )
    else:
        S1 = Difference(T, Union((Dh1, Dh2)))

    S2 = Difference(Intersection((T2, A1)), Union((wedge1, wedge2)))

    M = Intersection((Dk1, Dk2))
    M_plus = Intersection((M, upper))
    R1 = Intersection((Dk1, Difference(B1, B2)))
    R2 = Intersection((Dk1, Difference(B2, B1)))

    if variant == "restricted":
        L1 = Difference(Intersection((Dk1, upper, E1, Dh1)), M)
        L2 = Difference(Intersection((Dk1, upper, E2, Dh2)), M)
        L3 = Intersection((M_plus, Union((Dh1, Dh2))))
        L5 = Difference(Intersection((Dk2, lower, F1, Dh1)), T2)
        L6 = Difference(Intersection((Dk2, lower, F2, Dh2)), T2)
        H3 = Difference(Intersection((A2, lower)), Union((B1, B2)))
    else:
        L1 = Difference(Intersection((Dk1, E1, Dh1)), M)
        L2 = Difference(Intersection((Dk1, E2, Dh2)), M)
        L3 = Intersection((M_plus, Dh1, Dh2))
        L5 = Difference(Intersection((Dk2, F1, Dh1)), T2)
        L6 = Difference(Intersection((Dk2, F2, Dh2)), T2)
        H3 = Difference(A2, Union((B1, B2)))

    L4 = Intersection((T2, Dk2, Union((wedge1, wedge2))))
    H1 = Difference(R1, L1)
    H2 = Difference(R2, L2)
    H4 = Difference(M_plus, L3)
    H5 = S2
    H = Union((S2, H1, H2, H3, H4))
    L = Union((L1, L2, L3, L4, L5, L6))

    regions: Dict[str, Region] = {
        "T": T,
        "T2": T2,
        "S1": S1,
        "S2": S2,
        "A1": A1,
        "A2": A2,
        "B1": B1,
        "B2": B2,
        "Dk1": Dk1,
        "Dk2": Dk2,
        "Db1_half": Dh1,
        "Db2_half": Dh2,
        "E1": E1,
        "E2": E2,
        "F1": F1,
        "F2": F2,
        "M": M,
        "M_plus": M_plus,
        "R1": R1,
        "R2": R2,
        "L1": L1,
        "L2": L2,
        "L3": L3,
        "L4": L4,
        "L5": L5,
        "L6": L6,
        "H1": H1,
        "H2": H2,
        "H3": H3,
        "H4": H4,
        "H5": H5,
        "H": H,
        "L": L,
    }
    points: Dict[str, Point] = {
        "a1": a1,
        "a2": a2,
        "b1": _B1,
        "b2": _B2,
        "w": W_PLUS,
        "w_minus": W_MINUS,
        "z": Z_MINUS,
        "z_plus": Z_PLUS,
        "q": Q_POINT,
        "u_minus": U_MINUS,
        "v_minus": V_MINUS,
        "u_plus": U_PLUS,
        "v_plus": V_PLUS,
        "q_left": Q_LEFT,
        "q_right": Q_RIGHT,
        "a1_lowest": A1_LOWEST,
    }
    return NamedRegionSet(frame=f, variant=variant, regions=regions, points=points)


# ---------------------------------------------------------------------------
# component set-up frame
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComponentSetupFrame:
    """The two-sided emptiness configuration around a candidate edge gap.

    ``C`` is the union of the left half-disk at ``xl`` and the right
    half-disk at ``xr`` (both of radius ``rho = |ab|``) clipped to the
    window; ``A`` and ``B`` are the two leftover lune regions around
    ``a`` and ``b``.
    """

    a: Point
    b: Point
    xl: Point
    xr: Point
    rho: float
    window: Region
    C: Region
    A: Region
    B: Region


def build_component_setup(
    a: PointLike,
    b: PointLike,
    xl: PointLike,
    xr: PointLike,
    window: RegionLike,
) -> ComponentSetupFrame:
    """Build the emptiness configuration for points ``a`` and ``b``.

    Parameters
    ----------
    a, b : Point
        Two distinct points; ``rho`` is their distance.
    xl, xr : Point
        Centres of the left and right half-disks forming ``C``.
    window : Region
        The sampling window; all three regions are clipped to it.
    """
    a, b = as_point(a), as_point(b)
    xl, xr = as_point(xl), as_point(xr)
    if a.x == b.x and a.y == b.y:
        raise ValueError("a and b must be distinct")
    rho = distance(a, b)
    win = as_region(window)
    C = Intersection(
        (Union((Primitive(HalfDisk(xl, rho, "left")),
                Primitive(HalfDisk(xr, rho, "right")))), win)
    )
    A = Intersection(
        (Difference(Primitive(Disk(a, rho)), Union((Primitive(Disk(b, rho)), C))),
         win)
    )
    B = Intersection(
        (Difference(Primitive(Disk(b, rho)), Union((Primitive(Disk(a, rho)), C))),
         win)
    )
    return ComponentSetupFrame(a=a, b=b, xl=xl, xr=xr, rho=rho, window=win,
                               C=C, A=A, B=B)


# ---------------------------------------------------------------------------
# tile frames
# ---------------------------------------------------------------------------


def _tile_polygon(i: int, j: int, s: float) -> ConvexPolygon:
    return ConvexPolygon(
        [Point(i * s, j * s), Point((i + 1) * s, j * s),
         Point((i + 1) * s, (j + 1) * s), Point(i * s, (j + 1) * s)]
    )


def _tiles_region(tiles: Iterable[Tuple[int, int]], s: float) -> Region:
    polys = [Primitive(_tile_polygon(i, j, s)) for (i, j) in tiles]
    if not polys:
        return EMPTY
    return Union(tuple(polys))


def _containing_tiles(p: Point, s: float) -> Tuple[Tuple[int, int], ...]:
    """All tile indices whose closed tile contains ``p`` (1, 2 or 4 tiles)."""
    qx = p.x / s
    qy = p.y / s
    ix = [math.floor(qx)]
    if qx == math.floor(qx):
        ix.append(math.floor(qx) - 1)
    iy = [math.floor(qy)]
    if qy == math.floor(qy):
        iy.append(math.floor(qy) - 1)
    return tuple((i, j) for i in ix for j in iy)


@dataclass(frozen=True, eq=False)
class TileFrame:
    """A tile-set configuration around a point ``a`` and its witness ``b``.

    ``Y`` is a set of grid tiles (side ``s``, anchored at the origin)
    containing ``a`` but not ``b``.  Derived data:

    * ``r = rho - sqrt(2) * s`` where ``rho = |ab|``;
    * ``Z``: tiles outside ``Y`` whose centre lies within ``r`` of some
      ``Y``-tile centre;
    * ``Y_prime``: tiles of ``Y`` whose centre lies within
      ``rho + sqrt(2) * s`` of ``a``;
    * ``B_prime``: the disk about ``b`` of radius ``rho`` minus the disk
      about ``a``, the ``Y`` tiles and the ``Z`` tiles.
    """

    a: Point
    b: Point
    s: float
    Y: FrozenSet[Tuple[int, int]]
    rho: float
    r: float
    Z: FrozenSet[Tuple[int, int]]
    Y_prime: FrozenSet[Tuple[int, int]]
    Y_region: Region
    Z_region: Region
    Yprime_region: Region
    Bprime_region: Region


def build_tile_frame(
    a: PointLike, b: PointLike, Y: Iterable[Tuple[int, int]], s: float
) -> TileFrame:
    """Build a tile frame.

    Parameters
    ----------
    a, b : Point
        ``a`` must lie in the closed union of the ``Y`` tiles and ``b``
        must not.
    Y : iterable of (int, int)
        Tile indices; tile ``(i, j)`` is the square
        ``[i*s, (i+1)*s] x [j*s, (j+1)*s]``.
    s : float
        Tile side, positive and small enough that
        ``r = |ab| - sqrt(2)*s`` is positive.

    Raises
    ------
    ValueError
        If ``a`` lies outside ``Y``, ``b`` lies inside ``Y``, or ``s`` is
        not in the admissible range.
    """
    a, b = as_point(a), as_point(b)
    s = float(s)
    if not (s > 0.0 and math.isfinite(s)):
        raise ValueError("tile side must be positive and finite")
    Yset = frozenset((int(i), int(j)) for (i, j) in Y)
    if not Yset:
        raise ValueError("Y must contain at least one tile")
    if not any(t in Yset for t in _containing_tiles(a, s)):
        raise ValueError("a must lie inside the tile set Y")
    if any(t in Yset for t in _containing_tiles(b, s)):
        raise ValueError("b lies inside the tile set Y")
    rho = distance(a, b)
    r = rho - math.sqrt(2.0) * s
    if r <= 0.0:
        raise ValueError("tile side too large: rho - sqrt(2)*s must be positive")

    yc = np.array([((i + 0.5) * s, (j + 0.5) * s) for (i, j) in Yset])
    lo_i = math.floor((yc[:, 0].min() - r) / s) - 1
    hi_i = math.floor((yc[:, 0].max() + r) / s) + 1
    lo_j = math.floor((yc[:, 1].min() - r) / s) - 1
    hi_j = math.floor((yc[:, 1].max() + r) / s) + 1
    ii, jj = np.meshgrid(
        np.arange(lo_i, hi_i + 1), np.arange(lo_j, hi_j + 1), indexing="ij"
    )
    ii = ii.ravel()
    jj = jj.ravel()
    cx = (ii + 0.5) * s
    cy = (jj + 0.5) * s
    near = np.zeros(cx.shape, dtype=bool)
    for k in range(yc.shape[0]):
        near |= (cx - yc[k, 0]) ** 2 + (cy - yc[k, 1]) ** 2 <= r * r
    Zset = frozenset(
        (int(i), int(j))
        for i, j, flag in zip(ii, jj, near)
        if flag and (int(i), int(j)) not in Yset
    )
    reach = rho + math.sqrt(2.0) * s
    Yp = frozenset(
        (i, j)
        for (i, j) in Yset
        if math.hypot((i + 0.5) * s - a.x, (j + 0.5) * s - a.y) <= reach
    )
    Y_region = _tiles_region(sorted(Yset), s)
    Z_region = _tiles_region(sorted(Zset), s)
    Yp_region = _tiles_region(sorted(Yp), s)
    Bprime = Difference(
        Primitive(Disk(b, rho)),
        Union((Primitive(Disk(a, rho)), Y_region, Z_region)),
    )
    return TileFrame(
        a=a, b=b, s=s, Y=Yset, rho=rho, r=r, Z=Zset, Y_prime=Yp,
        Y_region=Y_region, Z_region=Z_region, Yprime_region=Yp_region,
        Bprime_region=Bprime,
    )


# ---------------------------------------------------------------------------
# beta frames
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BetaFrame:
    """The auxiliary disk system about a competitor point ``beta``.

    Given a tile frame and a point ``beta`` outside ``Y`` and ``B'``,
    with ``lam > rho``:

    * ``B_star``: the disk about ``beta`` of radius ``|a beta|``,
      restricted to ``B'`` inside the matching disk about ``a`` and
      unrestricted outside it, minus the ``Y`` and ``Z`` tiles;
    * ``B_lambda = B' intersected with the disk about a of radius lam``;
    * ``A_lambda``: the annulus ``lam``-disk minus ``rho``-disk about
      ``a``, minus ``B'``.
    """

    base: TileFrame
    beta: Point
    lam: float
    a_beta: float
    Bstar_region: Region
    Blambda_region: Region
    Alambda_region: Region


def build_beta_frame(t: TileFrame, beta: PointLike, lam: float) -> BetaFrame:
    """Build the competitor-disk frame over a tile frame.

    Raises
    ------
    ValueError
        If ``lam <= rho``, or ``beta`` lies inside ``Y`` or ``B'``.
    """
    beta = as_point(beta)
    lam = float(lam)
    if not (lam > t.rho):
        raise ValueError("lam must exceed rho")
    if membership(t.Y_region, beta) or membership(t.Bprime_region, beta):
        raise ValueError("beta must lie outside Y and B'")
    a_beta = distance(t.a, beta)
    if a_beta == 0.0:
        raise ValueError("beta must differ from a")
    Dbeta = Primitive(Disk(beta, a_beta))
    Da = Primitive(Disk(t.a, a_beta))
    excluded = Union((t.Y_region, t.Z_region))
    Bstar = Difference(
        Union((Intersection((Dbeta, t.Bprime_region)), Difference(Dbeta, Da))),
        excluded,
    )
    Blam = Intersection((t.Bprime_region, Primitive(Disk(t.a, lam))))
    Alam = Difference(
        Primitive(Disk(t.a, lam)),
        Union((Primitive(Disk(t.a, t.rho)), t.Bprime_region)),
    )
    return BetaFrame(
        base=t, beta=beta, lam=lam, a_beta=a_beta,
        Bstar_region=Bstar, Blambda_region=Blam, Alambda_region=Alam,
    )


# ---------------------------------------------------------------------------
# JSON serialisation of region trees
# ---------------------------------------------------------------------------


def region_to_json_dict(r: RegionLike) -> dict:
    """Serialise a region tree to a JSON-compatible dictionary."""
    r = as_region(r)
    if isinstance(r, Primitive):
        s = r.shape
        if isinstance(s, Disk):
            return {"type": "disk", "center": [s.center.x, s.center.y],
                    "radius": s.radius}
        if isinstance(s, HalfDisk):
            return {"type": "half_disk", "center": [s.center.x, s.center.y],
                    "radius": s.radius, "side": s.side}
        if isinstance(s, Ellipse):
            return {"type": "ellipse", "focus1": [s.focus1.x, s.focus1.y],
                    "focus2": [s.focus2.x, s.focus2.y],
                    "distance_sum": s.distance_sum}
        if isinstance(s, HalfPlane):
            return {"type": "half_plane", "anchor": [s.anchor.x, s.anchor.y],
                    "normal": [s.normal.x, s.normal.y]}
        if isinstance(s, AngularSector):
            return {"type": "angular_sector", "apex": [s.apex.x, s.apex.y],
                    "ray1": [s.ray1.x, s.ray1.y], "ray2": [s.ray2.x, s.ray2.y]}
        if isinstance(s, ConvexPolygon):
            return {"type": "convex_polygon",
                    "vertices": [[v.x, v.y] for v in s.vertices]}
        raise TypeError(f"unknown primitive shape {type(s).__name__}")
    if isinstance(r, Union):
        return {"type": "union",
                "children": [region_to_json_dict(c) for c in r.children]}
    if isinstance(r, Intersection):
        return {"type": "intersection",
                "children": [region_to_json_dict(c) for c in r.children]}
    if isinstance(r, Difference):
        return {"type": "difference", "left": region_to_json_dict(r.left),
                "right": region_to_json_dict(r.right)}
    if r is EMPTY:
        return {"type": "empty"}
    raise TypeError(f"unknown region node {type(r).__name__}")


def region_from_json_dict(d: dict) -> Region:
    """Rebuild a region tree from its JSON dictionary form."""
    t = d["type"]
    if t == "disk":
        return Primitive(Disk(Point(*d["center"]), d["radius"]))
    if t == "half_disk":
        return Primitive(HalfDisk(Point(*d["center"]), d["radius"], d["side"]))
    if t == "ellipse":
        return Primitive(
            Ellipse(Point(*d["focus1"]), Point(*d["focus2"]), d["distance_sum"])
        )
    if t == "half_plane":
        return Primitive(HalfPlane(Point(*d["anchor"]), Point(*d["normal"])))
    if t == "angular_sector":
        return Primitive(
            AngularSector(Point(*d["apex"]), Point(*d["ray1"]), Point(*d["ray2"]))
        )
    if t == "convex_polygon":
        return Primitive(ConvexPolygon([Point(*v) for v in d["vertices"]]))
    if t == "union":
        return Union(tuple(region_from_json_dict(c) for c in d["children"]))
    if t == "intersection":
        return Intersection(tuple(region_from_json_dict(c) for c in d["children"]))
    if t == "difference":
        return Difference(region_from_json_dict(d["left"]),
                          region_from_json_dict(d["right"]))
    if t == "empty":
        return EMPTY
    raise ValueError(f"unknown region type {t!r}")
