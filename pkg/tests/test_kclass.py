import math
from functools import lru_cache
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CP2_TWO
from toricres import exactlin as el
from toricres.cli import FANO
from toricres.errors import NoneExists, NotCompact
from toricres.fan import Fan, gorenstein_vector, slice_polytope
from toricres.kclass import (
    find_compact_support,
    is_compact,
    is_convex,
    is_strictly_convex,
    kahler_class,
    support_from_heights,
    wall_slacks,
)
from toricres.resolve import canonical_bundle_fan, refine_fan, triangulate_basic, ypq_fan

CONIFOLD = Fan.from_cone([(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)])


def refined(f):
    p = slice_polytope(f, gorenstein_vector(f))
    return refine_fan(f, triangulate_basic(p), p)


@lru_cache(maxsize=None)
def ypq53_with_support():
    r = refined(ypq_fan(5, 3))
    return r, find_compact_support(r)[0]


@pytest.fixture(scope="module")
def kcp2():
    return canonical_bundle_fan(FANO["cp2"])[1]


def apex_heights(r, lam):
    return [lam if not b else 0 for b in r.boundary]


def test_zero_heights(kcp2):
    h = support_from_heights(kcp2, [0] * len(kcp2.rays))
    assert all(not any(c) for c in h.covectors)
    r = refined(CONIFOLD)
    h = support_from_heights(r, [0, 0, 0, 0])
    assert all(not any(c) for c in h.covectors)


@pytest.mark.parametrize("lam", [-1, 1, Fraction(2, 3)])
def test_covectors_pair_to_height_on_apex(kcp2, lam):
    h = support_from_heights(kcp2, apex_heights(kcp2, lam))
    apex = kcp2.rays.index((0, 0, 1))
    for cone, l in zip(kcp2.cones, h.covectors):
        assert apex in cone
        assert el.dot(l, (0, 0, 1)) == lam
        for j in cone:
            assert el.dot(l, kcp2.rays[j]) == h.heights[j]


def test_evaluation_matches_heights_and_linearity(kcp2):
    h = support_from_heights(kcp2, apex_heights(kcp2, 1))
    for j, r in enumerate(kcp2.rays):
        assert h(r) == h.heights[j]
    # Linear on each cone.
    a, b = (1, 0, 1), (0, 0, 1)
    assert h(tuple(x + y for x, y in zip(a, b))) == h(a) + h(b)


def test_strict_convexity_examples(kcp2):
    assert not is_strictly_convex(support_from_heights(refined(CONIFOLD), [0] * 4))
    assert is_strictly_convex(support_from_heights(kcp2, apex_heights(kcp2, 1)))
    assert not is_strictly_convex(support_from_heights(kcp2, apex_heights(kcp2, -1)))
    assert not is_convex(support_from_heights(kcp2, apex_heights(kcp2, -1)))


def test_compactness_examples(kcp2):
    assert is_compact(support_from_heights(kcp2, apex_heights(kcp2, 1)))
    heights = apex_heights(kcp2, 1)
    heights[kcp2.boundary.index(True)] = -1
    assert not is_compact(support_from_heights(kcp2, heights))
    assert is_compact(support_from_heights(kcp2, [0] * len(kcp2.rays)))


def test_compactness_includes_non_vertex_boundary_points():
    # A boundary lattice point that is not a vertex: (1,0) on the edge (0,0)-(2,0).
    f = Fan.from_cone([(0, 0, 1), (2, 0, 1), (0, 2, 1)])
    r = refined(f)
    mid = [j for j, ray in enumerate(r.rays) if ray == (1, 0, 1)][0]
    assert r.boundary[mid]
    heights = [0] * len(r.rays)
    heights[mid] = 1
    assert not is_compact(support_from_heights(r, heights))


def test_find_support_conifold():
    with pytest.raises(NoneExists, match="interior lattice points"):
        find_compact_support(refined(CONIFOLD))


@pytest.mark.parametrize("make", [
    lambda: canonical_bundle_fan(FANO["cp1"])[1],
    lambda: canonical_bundle_fan(FANO["cp2"])[1],
    lambda: refined(Fan.from_cone(CP2_TWO)),
    lambda: refined(ypq_fan(2, 1)),
    lambda: refined(ypq_fan(5, 3)),
    lambda: refined(ypq_fan(7, 3)),
])
def test_find_support_examples(make):
    r = make()
    h, margin = find_compact_support(r)
    assert margin > 0
    assert is_compact(h) and is_strictly_convex(h)
    assert min(wall_slacks(h)) >= margin
    # One LP variable per interior ray: the compact-class dimension.
    assert len(r.interior_rays()) == sum(not b for b in r.boundary)


def test_compact_dimension_is_interior_count():
    for f in (Fan.from_cone(CP2_TWO), ypq_fan(5, 3), ypq_fan(7, 3)):
        p = slice_polytope(f, gorenstein_vector(f))
        assert len(refined(f).interior_rays()) == len(p.interior_points)


def test_kahler_class_formula(kcp2):
    k = kahler_class(support_from_heights(kcp2, apex_heights(kcp2, -1)))
    assert list(k.coefficients.values()) == [pytest.approx(2 * math.pi)]
    k = kahler_class(support_from_heights(kcp2, [0] * len(kcp2.rays)))
    assert all(v == 0 for v in k.coefficients.values())
    r = refined(ypq_fan(5, 3))
    k = kahler_class(support_from_heights(r, apex_heights(r, -1)))
    assert len(k.coefficients) == 4
    assert all(v == pytest.approx(2 * math.pi) for v in k.coefficients.values())


def test_kahler_class_requires_compact(kcp2):
    heights = [1] * len(kcp2.rays)
    with pytest.raises(NotCompact):
        kahler_class(support_from_heights(kcp2, heights))


@given(st.fractions(min_value=Fraction(1, 50), max_value=10, max_denominator=50))
def test_margin_scales(t):
    r = refined(Fan.from_cone(CP2_TWO))
    h, margin = find_compact_support(r)
    ht = support_from_heights(r, [t * x for x in h.heights])
    assert is_strictly_convex(ht)
    assert min(wall_slacks(ht)) == t * min(wall_slacks(h))


def _random_point(r, rng):
    c = r.cones[int(rng.integers(len(r.cones)))]
    w = [Fraction(int(rng.integers(0, 7)), int(rng.integers(1, 5))) for _ in c]
    return tuple(sum(wi * r.rays[j][k] for wi, j in zip(w, c)) for k in range(len(r.rays[0])))


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(0, 10 ** 6))
def test_convexity_sampling_agrees_with_walls(vals, seed):
    r, h0 = ypq53_with_support()
    interior = r.interior_rays()
    # Perturb a convex solution so both outcomes occur.
    heights = list(h0.heights)
    for j, v in zip(interior, vals):
        heights[j] += Fraction(v, 3)
    h = support_from_heights(r, heights)
    rng = np.random.default_rng(seed)
    violated = False
    for _ in range(100):
        x, y = _random_point(r, rng), _random_point(r, rng)
        s = tuple(a + b for a, b in zip(x, y))
        if h(s) < h(x) + h(y):
            violated = True
            break
    if is_convex(h):
        assert not violated
    # Opposite vertices of a failing wall always witness non-convexity.
    if not is_convex(h):
        for face, a, b in r.walls():
            va = next(j for j in r.cones[a] if j not in face)
            vb = next(j for j in r.cones[b] if j not in face)
            x, y = r.rays[va], r.rays[vb]
            s = tuple(p + q for p, q in zip(x, y))
            if h(s) < h(x) + h(y):
                break
        else:
            pytest.fail("no wall pair witnesses the non-convexity")
