"""Polyhedral primitives over the integers: dual cones and lattice points."""

from collections import namedtuple
from itertools import combinations, product
from math import lcm

from ..errors import NotFullDimensional, NotStronglyConvex
from .matrix import det, dot, primitive, rank, solve, transpose

LatticePoint = namedtuple("LatticePoint", ["coords", "interior"])


def _clean_generators(generators):
    gens = []
    seen = set()
    for g in generators:
        g = tuple(int(x) for x in g)
        if not any(g):
            continue
        p = primitive(g)
        if p not in seen:
            seen.add(p)
            gens.append(p)
    return gens


def _normal(rows, n):
    """Primitive vector orthogonal to ``n - 1`` independent rows, else None."""
    if n == 1:
        return (1,)
    w = []
    for k in range(n):
        minor = [r[:k] + r[k + 1:] for r in rows]
        w.append((-1) ** k * det(minor))
    if not any(w):
        return None
    return primitive(w)


def dual_cone(generators, n=None):
    """Primitive inward facet normals of ``cone(generators)``.

    The normals are exactly the generators of the dual cone.  They come back
    sorted lexicographically.  Facets are found by enumerating
    ``(n-1)``-subsets of generators, so this is only meant for small inputs.
    """
    gens = _clean_generators(generators)
    if n is None:
        if not gens:
            raise NotFullDimensional("no nonzero generators")
        n = len(gens[0])
    if not gens or rank(gens) < n:
        raise NotFullDimensional("generators span a proper subspace")
    normals = set()
    for subset in combinations(gens, n - 1):
        w = _normal(subset, n)
        if w is None:
            continue
        vals = [dot(w, g) for g in gens]
        if all(v >= 0 for v in vals):
            normals.add(w)
        elif all(v <= 0 for v in vals):
            normals.add(tuple(-x for x in w))
    if not normals or rank(list(normals)) < n:
        raise NotStronglyConvex("cone contains a line")
    return sorted(normals)


def cone_facets(generators):
    """Map each facet normal to the sorted indices of generators on it."""
    n = len(generators[0])
    normals = dual_cone(generators, n)
    return {w: tuple(i for i, g in enumerate(generators) if dot(w, g) == 0)
            for w in normals}


def polytope_inequalities(vertices):
    """Facet inequalities ``(a, b)`` meaning ``<a, x> + b >= 0``."""
    lifted = [tuple(v) + (1,) for v in vertices]
    try:
        normals = dual_cone(lifted, len(lifted[0]))
    except NotFullDimensional:
        raise NotFullDimensional("polytope is not full-dimensional") from None
    return [(w[:-1], w[-1]) for w in normals]


def lattice_points_in_polytope(vertices):
    """All lattice points of ``conv(vertices)``, tagged interior or boundary.

    Scans the bounding box over all but the last coordinate; along the last
    one the exact facet inequalities give the integer range directly.  The
    result is sorted lexicographically.
    """
    vertices = [tuple(int(x) for x in v) for v in vertices]
    if not vertices:
        raise NotFullDimensional("empty vertex list")
    ineqs = polytope_inequalities(vertices)
    dim = len(vertices[0])
    ranges = [range(min(v[i] for v in vertices), max(v[i] for v in vertices) + 1)
              for i in range(dim - 1)]
    last_lo = min(v[-1] for v in vertices)
    last_hi = max(v[-1] for v in vertices)
    points = []
    for head in product(*ranges):
        lo, hi = last_lo, last_hi
        # Facet k evaluates to offsets[k] + a_k[-1] * t on this column.
        offsets = [sum(x * y for x, y in zip(a, head)) + b for a, b in ineqs]
        for (a, _), c in zip(ineqs, offsets):
            if a[-1] > 0:
                lo = max(lo, -(c // a[-1]))
            elif a[-1] < 0:
                hi = min(hi, c // -a[-1])
            elif c < 0:
                lo, hi = 1, 0
        slopes = [a[-1] for a, _ in ineqs]
        for t in range(lo, hi + 1):
            inner = all(c + m * t > 0 for c, m in zip(offsets, slopes))
            points.append(LatticePoint(head + (t,), inner))
    return points


def convex_hull_2d(points):
    """Strict convex hull (no collinear points), counter-clockwise."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def span_coordinates(sub):
    """Integer coordinates of vectors in a basis of their rational span.

    Each coordinate vector is scaled by a positive integer, which leaves the
    spanned cone unchanged.
    """
    k = rank(sub)
    basis = []
    for g in sub:
        if rank(basis + [g]) > len(basis):
            basis.append(g)
        if len(basis) == k:
            break
    coords = []
    for g in sub:
        sol = solve(transpose(basis), g)
        scale = lcm(*(s.denominator for s in sol))
        coords.append(tuple(int(s * scale) for s in sol))
    return coords, k


def _span_facets(gens, idx):
    """Facets of ``cone(gens[i] for i in idx)`` inside its own linear span."""
    coords, k = span_coordinates([gens[i] for i in idx])
    facets = []
    for w in dual_cone(coords, k):
        facets.append(tuple(i for i, c in zip(idx, coords) if dot(w, c) == 0))
    return facets


def pulling_triangulation(generators, apex=0):
    """Split a pointed cone into simplicial cones without adding rays.

    Cones from generator ``apex`` over every facet not containing it, and
    recurses into the facets.  Returns sorted tuples of generator indices.
    """
    gens = [tuple(int(x) for x in g) for g in generators]

    def pull(idx, first):
        if rank([gens[i] for i in idx]) == len(idx):
            return [tuple(idx)]
        out = []
        for facet in _span_facets(gens, idx):
            if first in facet:
                continue
            for s in pull(facet, facet[0]):
                out.append((first,) + s)
        return out

    idx = tuple(range(len(gens)))
    return sorted(tuple(sorted(s)) for s in pull(idx, apex))
