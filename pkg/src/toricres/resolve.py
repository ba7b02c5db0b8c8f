"""Crepant resolutions as basic lattice triangulations of the slice polytope."""

from dataclasses import dataclass
from itertools import combinations
from math import gcd, isqrt

from . import exactlin as el
from .errors import (
    DimensionUnsupported,
    InvalidParameters,
    NotBasic,
    NotFanoCompatible,
    NotFlippable,
)
from .fan import Fan, gorenstein_vector, is_nonsingular, slice_polytope


@dataclass(frozen=True)
class Triangulation:
    """Simplices are sorted tuples of indices into ``points`` (slice coordinates)."""

    points: tuple
    simplices: tuple
    polytope: object = None

    def walls(self):
        """Map each codimension-one face to the simplices containing it."""
        out = {}
        for k, s in enumerate(self.simplices):
            for face in combinations(s, len(s) - 1):
                out.setdefault(face, []).append(k)
        return {w: tuple(v) for w, v in sorted(out.items())}

    def interior_walls(self):
        return [w for w, v in self.walls().items() if len(v) == 2]

    def simplex_volumes(self):
        """Normalized volumes (``|det|`` of the edge vectors) per simplex."""
        out = []
        for s in self.simplices:
            p0 = self.points[s[0]]
            out.append(abs(el.det([[a - b for a, b in zip(self.points[i], p0)]
                                   for i in s[1:]])))
        return out

    def is_basic(self):
        return all(v == 1 for v in self.simplex_volumes())


@dataclass(frozen=True)
class RefinedFan:
    """A simplicial refinement of a single Gorenstein cone.

    ``boundary[j]`` records whether ray ``j`` lies on the boundary of the
    original cone.
    """

    fan: Fan
    original: Fan
    gamma: tuple
    boundary: tuple
    triangulation: Triangulation = None

    @classmethod
    def build(cls, original, rays, cones, triangulation=None):
        gamma = gorenstein_vector(original).integral
        normals = el.dual_cone(list(original.rays), original.dim)
        boundary = tuple(any(el.dot(w, r) == 0 for w in normals) for r in rays)
        fan = Fan(original.dim, tuple(rays), tuple(cones), original.name)
        return cls(fan, original, gamma, boundary, triangulation)

    @property
    def rays(self):
        return self.fan.rays

    @property
    def cones(self):
        return self.fan.cones

    def interior_rays(self):
        return [j for j, b in enumerate(self.boundary) if not b]

    def walls(self):
        """Interior walls as ``(face, cone_a, cone_b)`` with sorted ray indices."""
        faces = {}
        for k, c in enumerate(self.cones):
            for face in combinations(sorted(c), len(c) - 1):
                faces.setdefault(face, []).append(k)
        return [(f, *v) for f, v in sorted(faces.items()) if len(v) == 2]

    def check(self):
        """Return a list of violated invariants (empty when all hold)."""
        problems = []
        for k, c in enumerate(self.cones):
            if not is_nonsingular(self.fan.cone(k)):
                problems.append(f"cone {k} is singular")
        for j, r in enumerate(self.rays):
            if el.dot(self.gamma, r) != -1:
                problems.append(f"ray {j} is not on the gamma = -1 plane")
            if not el.cone_contains(list(self.original.rays), r):
                problems.append(f"ray {j} lies outside the original cone")
        total = sum(abs(el.det([self.rays[i] for i in c])) for c in self.cones)
        expected = sum(abs(el.det([self.original.rays[i] for i in s]))
                       for s in el.pulling_triangulation(list(self.original.rays)))
        if total != expected:
            problems.append(f"cone volumes sum to {total}, original cone has {expected}")
        return problems


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _lifted_det(pts, heights):
    return el.det([[p[0], p[1], h, 1] for p, h in zip(pts, heights)])


def _in_circle(a, b, c, d, tiebreak):
    """``d`` strictly inside the circumcircle of ccw ``abc``, symbolically perturbed.

    Lifted heights are ``|p|^2 - eps*[p interior] + eps^2 * eps'**rank(p)``:
    on exact cocircularity the diagonal through an interior point wins, and
    remaining ties go to the lexicographically smallest point with a
    nonzero cofactor.
    """
    pts = (a, b, c, d)
    base = _lifted_det(pts, [p[0] ** 2 + p[1] ** 2 for p in pts])
    if base:
        return base > 0
    interior, rank = tiebreak
    lowered = _lifted_det(pts, [-int(p in interior) for p in pts])
    if lowered:
        return lowered > 0
    for k in sorted(range(4), key=lambda k: rank[pts[k]]):
        cof = _lifted_det(pts, [int(i == k) for i in range(4)])
        if cof:
            return cof > 0
    return False


def _delaunay(points, interior=()):
    """Lawson-flip Delaunay triangulation using every point as a vertex."""
    tiebreak = (set(interior), {p: i for i, p in enumerate(sorted(points))})
    hull = el.convex_hull_2d(points)
    tris = [(hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1)]
    for p in sorted(set(points) - set(hull)):
        for t in tris:
            o = [_orient(t[0], t[1], p), _orient(t[1], t[2], p), _orient(t[2], t[0], p)]
            if min(o) >= 0:
                break
        else:
            raise AssertionError(f"point {p} not located")
        tris.remove(t)
        zero = [k for k in range(3) if o[k] == 0]
        if not zero:
            tris += [(t[0], t[1], p), (t[1], t[2], p), (t[2], t[0], p)]
            continue
        k = zero[0]
        a, b, c = t[k], t[(k + 1) % 3], t[(k + 2) % 3]
        tris += [(a, p, c), (p, b, c)]
        other = next((s for s in tris if a in s and b in s and c not in s), None)
        if other is not None:
            tris.remove(other)
            d = next(v for v in other if v not in (a, b))
            tris += [(b, p, d), (p, a, d)]
    while True:
        edges = {}
        for t in tris:
            for k in range(3):
                edges.setdefault(frozenset((t[k], t[(k + 1) % 3])), []).append(t)
        for e in sorted(edges, key=sorted):
            pair = edges[e]
            if len(pair) != 2:
                continue
            t1, t2 = pair
            d = next(v for v in t2 if v not in e)
            if _in_circle(*t1, d, tiebreak):
                c = next(v for v in t1 if v not in e)
                a, b = sorted(e)
                tris.remove(t1)
                tris.remove(t2)
                tris += [_ccw(a, c, d), _ccw(b, c, d)]
                break
        else:
            return tris


def _ccw(a, b, c):
    return (a, b, c) if _orient(a, b, c) > 0 else (a, c, b)


def _ordered_points(p):
    verts = list(dict.fromkeys(p.vertices))
    rest_b = sorted(set(p.boundary) - set(verts))
    return tuple(verts + rest_b + sorted(p.interior_points))


def triangulate_basic(p):
    """Canonical basic lattice triangulation of a slice polytope.

    Slice dimension 2 uses the Delaunay triangulation of all lattice points,
    with cocircular ties broken symbolically (see ``_in_circle``).  Slice
    dimension 1 is the subdivision into unit segments.
    """
    m = p.n - 1
    points = _ordered_points(p)
    index = {q: i for i, q in enumerate(points)}
    if m == 1:
        order = sorted(points)
        simplices = [tuple(sorted((index[a], index[b]))) for a, b in zip(order, order[1:])]
    elif m == 2:
        tris = _delaunay(list(points), p.interior_points)
        simplices = [tuple(sorted(index[v] for v in t)) for t in tris]
    else:
        raise DimensionUnsupported(f"slice dimension {m} is not supported")
    t = Triangulation(points, tuple(sorted(simplices)), p)
    if not t.is_basic():
        raise NotBasic("triangulation has a non-unimodular simplex")
    return t


def refine_fan(f, t, polytope=None):
    """Cone over each simplex of ``t``; asserts nonsingularity and crepancy."""
    polytope = polytope or t.polytope or slice_polytope(f, gorenstein_vector(f))
    rays = [polytope.lift(q) for q in t.points]
    r = RefinedFan.build(f, rays, t.simplices, t)
    problems = r.check()
    if problems:
        raise NotBasic("; ".join(problems))
    return r


def flop(t, wall):
    """Swap the diagonal of the quadrilateral formed by the two triangles at ``wall``.

    ``wall`` is either a pair of point indices or an index into
    ``t.interior_walls()``.
    """
    if len(t.points[0]) != 2:
        raise DimensionUnsupported("flops are defined for planar triangulations")
    walls = t.walls()
    if isinstance(wall, int):
        interior = t.interior_walls()
        if not 0 <= wall < len(interior):
            raise NotFlippable(f"no interior wall with index {wall}")
        wall = interior[wall]
    wall = tuple(sorted(wall))
    if len(walls.get(wall, ())) != 2:
        raise NotFlippable(f"{wall} is not an interior wall")
    s1, s2 = (t.simplices[k] for k in walls[wall])
    i, j = wall
    k = next(v for v in s1 if v not in wall)
    l = next(v for v in s2 if v not in wall)
    P = t.points
    if _orient(P[k], P[l], P[i]) * _orient(P[k], P[l], P[j]) >= 0:
        raise NotFlippable(f"triangles at {wall} do not form a strictly convex quadrilateral")
    new = [s for s in t.simplices if s not in (s1, s2)]
    new += [tuple(sorted((k, l, i))), tuple(sorted((k, l, j)))]
    out = Triangulation(t.points, tuple(sorted(new)), t.polytope)
    if not out.is_basic():
        raise NotBasic("flop produced a non-unimodular triangle")
    return out


def ypq_fan(p, q):
    """Cone over the quadrilateral of ``Y^{p,q}``."""
    if not (isinstance(p, int) and isinstance(q, int)) or not p > q > 0 or gcd(p, q) != 1:
        raise InvalidParameters(f"need coprime p > q > 0, got p={p}, q={q}")
    rays = [(0, 0, 1), (1, 0, 1), (p, p, 1), (p - q - 1, p - q, 1)]
    return Fan.from_cone(rays, name=f"Y^{{{p},{q}}}")


def ypq_is_quasiregular(p, q):
    """``(True, r)`` when ``4p^2 - 3q^2 = r^2`` has an integer solution."""
    if not p > q > 0 or gcd(p, q) != 1:
        raise InvalidParameters(f"need coprime p > q > 0, got p={p}, q={q}")
    d = 4 * p * p - 3 * q * q
    r = isqrt(d)
    return (True, r) if r * r == d else (False, None)


def _check_complete_nonsingular(fano):
    m = fano.dim
    for k, c in enumerate(fano.cones):
        if len(c) != m or not is_nonsingular(fano.cone(k)):
            raise NotFanoCompatible(f"cone {k} is not unimodular")
    faces = {}
    for k, c in enumerate(fano.cones):
        for face in combinations(sorted(c), m - 1):
            opposite = next(i for i in c if i not in face)
            faces.setdefault(face, []).append(opposite)
    for face, opp in faces.items():
        if len(opp) != 2:
            raise NotFanoCompatible(f"wall {face} lies in {len(opp)} maximal cones")
        normal = el.integer_kernel([list(fano.rays[i]) for i in face], ncols=m)[0]
        a, b = (el.dot(normal, fano.rays[i]) for i in opp)
        if a * b >= 0:
            raise NotFanoCompatible(f"cones at wall {face} overlap")


def canonical_bundle_fan(fano):
    """Cone of the canonical bundle's total space and its star resolution.

    Rays ``u`` of the Fano fan become ``(u, 1)``; the resolution cones each
    maximal cone with the ray ``e_n``.
    """
    _check_complete_nonsingular(fano)
    n = fano.dim + 1
    lifted = [tuple(u) + (1,) for u in fano.rays]
    name = f"K({fano.name})" if fano.name else None
    cone = Fan.from_cone(lifted, name=name)
    apex = len(lifted)
    rays = lifted + [(0,) * (n - 1) + (1,)]
    cones = [tuple(sorted(c)) + (apex,) for c in fano.cones]
    resolution = RefinedFan.build(cone, rays, cones)
    problems = resolution.check()
    if problems:
        raise NotFanoCompatible("; ".join(problems))
    return cone, resolution
