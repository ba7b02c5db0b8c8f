from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CP2_TWO, REEB_CP2_TWO
from toricres.cli import FANO
from toricres.errors import OutsideCone, OutsideDomain, OutsideReebCone
from toricres.fan import Fan, gorenstein_vector, slice_polytope
from toricres.kclass import find_compact_support, support_from_heights
from toricres.potential import (
    CanonicalPotential,
    ConePotentialData,
    GuilleminPotential,
    ResolvedPotentialData,
    canonical_gradient,
    canonical_hessian,
    canonical_potential,
    cone_property_suite,
    det_structure_check,
    finite_difference_hessian,
    guillemin_potential,
    hessian_fd_check,
    homogeneity_check,
    legendre_check,
    legendre_dual,
    positive_definite,
    reeb_identity_residual,
    resolved_metric_check,
    resolved_property_suite,
    sample_cone_interior,
)
from toricres.resolve import canonical_bundle_fan, refine_fan, triangulate_basic, ypq_fan

C3 = Fan.from_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture(scope="module")
def c3():
    return ConePotentialData.from_fan(C3, (1, 1, 1))


@pytest.fixture(scope="module")
def two_point():
    return ConePotentialData.from_fan(Fan.from_cone(CP2_TWO), (REEB_CP2_TWO, REEB_CP2_TWO, 3))


def test_affine_space_closed_forms(c3):
    e = np.e
    assert canonical_potential(c3, (e, 1, 1)) == pytest.approx(e / 2, abs=1e-14)
    y = np.array([0.3, 1.7, 2.2])
    assert np.allclose(canonical_hessian(c3, y), np.diag(1 / (2 * y)), atol=1e-14)
    assert np.linalg.det(canonical_hessian(c3, y)) * np.prod(y) == pytest.approx(1 / 8, rel=1e-12)
    assert np.allclose(canonical_gradient(c3, y), 0.5 * (np.log(y) + 1), atol=1e-14)


def _mp_potential(normals, xi):
    normals = [[mpmath.mpf(x) for x in u] for u in normals]
    xi = [mpmath.mpf(x) for x in xi]
    s = [sum(u[i] for u in normals) for i in range(3)]

    def dot(a, b):
        return sum(p * q for p, q in zip(a, b))

    def G(*yy):
        ls = [dot(u, yy) for u in normals]
        lx, li = dot(xi, yy), dot(s, yy)
        return (sum(l * mpmath.log(l) for l in ls) + lx * mpmath.log(lx) - li * mpmath.log(li)) / 2
    return G


def test_two_point_against_high_precision(two_point):
    y = (Fraction(1, 5), Fraction(1, 7), Fraction(2))
    with mpmath.workdps(50):
        xi = [mpmath.mpf(9) / 16 * (-1 + mpmath.sqrt(33))] * 2 + [3]
        G = _mp_potential(CP2_TWO, xi)
        yy = [mpmath.mpf(c.numerator) / c.denominator for c in y]
        ref = G(*yy)
        hess = [[mpmath.diff(G, yy, tuple(int(k == i) + int(k == j) for k in range(3)))
                 for j in range(3)] for i in range(3)]
    yf = np.array([float(c) for c in y])
    assert canonical_potential(two_point, yf) == pytest.approx(float(ref), rel=1e-13)
    H = canonical_hessian(two_point, yf)
    assert np.allclose(H, np.array(hess, dtype=float), rtol=1e-12, atol=1e-14)


def test_generators_are_moment_cone(two_point):
    # Every generator sits on at least two facets of the moment cone.
    on = (np.abs(two_point.generators @ two_point.normals.T) < 1e-12).sum(axis=1)
    assert np.all(on >= 2)


def test_outside_reeb_cone():
    with pytest.raises(OutsideReebCone):
        ConePotentialData.from_fan(C3, (1, -1, 1))


def test_outside_cone(c3):
    with pytest.raises(OutsideCone):
        canonical_potential(c3, (1, 0, 1))
    with pytest.raises(OutsideCone):
        canonical_hessian(c3, (1, -1, 1))


def _examples():
    return {
        "c3": (C3, (1, 1, 1)),
        "two_point": (Fan.from_cone(CP2_TWO), (REEB_CP2_TWO, REEB_CP2_TWO, 3)),
        "kcp2": (canonical_bundle_fan(FANO["cp2"])[0], (0, 0, 3)),
        "conifold": (Fan.from_cone([(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]), (1.5, 1.5, 3)),
        "ypq53": (ypq_fan(5, 3), (6.28667, 6.28667, 3)),
    }


@pytest.mark.parametrize("name", sorted(_examples()))
def test_pointwise_checks(name):
    fan, xi = _examples()[name]
    d = ConePotentialData.from_fan(fan, xi)
    ys = sample_cone_interior(d.generators, d.normals, 20, np.random.default_rng(3))
    for y in ys:
        assert reeb_identity_residual(d, y) < 1e-9
        assert hessian_fd_check(d, y).passed
        assert all(c.passed for c in homogeneity_check(d, y))
        assert positive_definite(canonical_hessian(d, y))
    for c in legendre_check(d, ys[0]):
        assert c.passed, c


@given(st.lists(st.floats(0.05, 5.0), min_size=3, max_size=3),
       st.floats(0.2, 4.0), st.floats(0.2, 4.0))
def test_reeb_identity_any_xi(y, a, b):
    # The identity 2 G_ij y_j = xi^i holds for every xi in the Reeb cone.
    d = ConePotentialData.from_fan(C3, (a, b, 1.0))
    assert reeb_identity_residual(d, np.array(y)) < 1e-9 * max(1.0, max(y) / min(y))


def test_det_structure(two_point):
    ys = sample_cone_interior(two_point.generators, two_point.normals, 1, np.random.default_rng(0))
    for facet in range(len(two_point.normals)):
        c = det_structure_check(two_point, ys[0], facet=facet)
        assert c.passed, c.details
        assert c.details["limit_estimate"] > 0


def test_det_structure_affine_space(c3):
    # det G * prod y is exactly 1/8 for the flat cone.
    c = det_structure_check(c3, (1.0, 2.0, 3.0))
    assert c.passed
    assert c.details["limit_estimate"] == pytest.approx(1 / 8, rel=1e-9)


def test_legendre_affine_space(c3):
    pot = CanonicalPotential(c3)
    y = np.array([0.5, 1.0, 2.0])
    x = pot.gradient(y)
    assert legendre_dual(pot, x, np.ones(3)) == pytest.approx(y.sum() / 2, rel=1e-12)
    checks = {c.name: c for c in legendre_check(c3, y)}
    assert checks["legendre_identity"].details["F_kahler"] == pytest.approx(y.sum(), rel=1e-12)


def test_finite_difference_hessian_quadratic():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    H = finite_difference_hessian(lambda v: 0.5 * v @ A @ v, np.array([0.3, -0.2]), 1e-3)
    assert np.allclose(H, A, atol=1e-8)


def test_cone_property_suite_reports_worst(two_point):
    results = {c.name: c for c in cone_property_suite(two_point, count=30, seed=1)}
    assert set(results) == {
        "reeb_identity", "hessian_vs_finite_differences", "hessian_homogeneity",
        "determinant_homogeneity", "legendre_identity", "hessian_inverse_duality",
        "hessian_positive_definite", "det_structure"}
    assert all(c.passed for c in results.values())
    assert results["hessian_positive_definite"].value > 0


def _refined(f):
    p = slice_polytope(f, gorenstein_vector(f))
    return refine_fan(f, triangulate_basic(p), p)


@pytest.fixture(scope="module")
def kcp2():
    return canonical_bundle_fan(FANO["cp2"])[1]


def _resolved(r, lam):
    return ResolvedPotentialData.from_support(
        support_from_heights(r, [lam if not b else 0 for b in r.boundary]))


def test_guillemin_zero_heights_is_l_inf(kcp2):
    r = ResolvedPotentialData.from_support(support_from_heights(kcp2, [0] * len(kcp2.rays)))
    y = np.array([0.1, 0.2, 1.0])
    assert guillemin_potential(r, y) == pytest.approx(r.l_inf(y), abs=1e-15)


def test_guillemin_closed_form(kcp2):
    r = _resolved(kcp2, -1)
    y = np.array([0.1, 0.2, 1.0])
    expected = -np.log(y[2] + 1) + r.l_inf(y)
    assert guillemin_potential(r, y) == pytest.approx(expected, rel=1e-14)


def test_guillemin_monotone_along_rays(kcp2):
    r = _resolved(kcp2, 1)
    y = np.array([0.1, 0.2, 1.0])
    ts = np.linspace(1.5, 100, 400)
    vals = [guillemin_potential(r, t * y) for t in ts]
    assert np.all(np.diff(vals) > 0)


def test_guillemin_outside_domain(kcp2):
    r = _resolved(kcp2, 1)
    with pytest.raises(OutsideDomain):
        guillemin_potential(r, (0.1, 0.1, 0.5))
    with pytest.raises(OutsideDomain):
        GuilleminPotential(r).hessian((0.1, 0.1, 0.5))


def test_guillemin_hessian_fd(kcp2):
    r = _resolved(kcp2, 1)
    pot = GuilleminPotential(r)
    y = np.array([0.3, 0.4, 2.0])
    fd = finite_difference_hessian(pot.value, y, 1e-4)
    assert np.allclose(fd, pot.hessian(y), rtol=1e-5, atol=1e-6)


@pytest.mark.parametrize("make", [
    lambda: canonical_bundle_fan(FANO["cp2"])[1],
    lambda: _refined(ypq_fan(5, 3)),
    lambda: _refined(Fan.from_cone(CP2_TWO)),
])
def test_resolved_metric(make):
    r = make()
    h, _ = find_compact_support(r)
    data = ResolvedPotentialData.from_support(h)
    results = {c.name: c for c in resolved_property_suite(data, count=10, seed=0)}
    assert results["resolved_hessian_positive_definite"].value > 0
    assert all(c.passed for c in results.values())


def test_resolved_metric_pointwise(kcp2):
    r = _resolved(kcp2, 1)
    for c in resolved_metric_check(r, np.array([0.3, 0.4, 2.0])):
        assert c.passed
