"""Symplectic and Kähler potentials on moment cones, with property checks.

All evaluation here is double precision.  Inputs come from the exact
modules (fan rays, heights) and are converted once.
"""

from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .errors import OutsideCone, OutsideDomain, OutsideReebCone


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


def _check(name, value, tolerance, **details):
    value = float(value)
    return CheckResult(name, value, tolerance, bool(value < tolerance), details)


@dataclass(frozen=True, eq=False)
class ConePotentialData:
    """Facet normals ``u_k`` of the moment cone, its generators, and a Reeb vector."""

    normals: np.ndarray
    generators: np.ndarray
    xi: np.ndarray

    @classmethod
    def from_fan(cls, fan, xi):
        rays = [fan.rays[j] for j in sorted({j for c in fan.cones for j in c})]
        gens = el.dual_cone(rays, fan.dim)
        data = cls(np.array(rays, dtype=float), np.array(gens, dtype=float),
                   np.asarray(xi, dtype=float))
        if np.any(data.generators @ data.xi <= 0):
            raise OutsideReebCone(f"xi={xi} is not inside the dual of the moment cone")
        return data

    @property
    def n(self):
        return self.normals.shape[1]

    def l(self, y):
        return self.normals @ y

    def l_xi(self, y):
        return float(self.xi @ y)

    def l_inf(self, y):
        return float(self.normals.sum(axis=0) @ y)


class CanonicalPotential:
    """``G = 1/2 sum l_k log l_k + 1/2 l_xi log l_xi - 1/2 l_inf log l_inf``."""

    def __init__(self, data):
        self.data = data
        self.s = data.normals.sum(axis=0)

    def _terms(self, y):
        y = np.asarray(y, dtype=float)
        l = self.data.l(y)
        lx = float(self.data.xi @ y)
        li = float(self.s @ y)
        if np.any(l <= 0) or lx <= 0:
            raise OutsideCone(f"y={y} is not strictly inside the moment cone")
        return y, l, lx, li

    def value(self, y):
        _, l, lx, li = self._terms(y)
        return 0.5 * float(l @ np.log(l)) + 0.5 * lx * np.log(lx) - 0.5 * li * np.log(li)

    def gradient(self, y):
        _, l, lx, li = self._terms(y)
        u = self.data.normals
        return 0.5 * (u.T @ (np.log(l) + 1) + self.data.xi * (np.log(lx) + 1)
                      - self.s * (np.log(li) + 1))

    def hessian(self, y):
        _, l, lx, li = self._terms(y)
        u = self.data.normals
        xi = self.data.xi
        return 0.5 * ((u.T / l) @ u + np.outer(xi, xi) / lx - np.outer(self.s, self.s) / li)

    def inside(self, y):
        return bool(np.all(self.data.l(y) > 0) and self.data.xi @ y > 0)


@dataclass(frozen=True, eq=False)
class ResolvedPotentialData:
    """Rays ``u_j`` of a refined fan with heights; ``l_j(y) = <u_j, y> - lambda_j``."""

    rays: np.ndarray
    heights: np.ndarray
    boundary: tuple
    generators: np.ndarray

    @classmethod
    def from_support(cls, h):
        f = h.fan
        gens = el.dual_cone(list(f.original.rays), f.original.dim)
        return cls(np.array(f.rays, dtype=float),
                   np.array([float(x) for x in h.heights]),
                   tuple(f.boundary), np.array(gens, dtype=float))

    def l(self, y):
        return self.rays @ y - self.heights

    def l_inf(self, y):
        return float(self.rays.sum(axis=0) @ y)


class GuilleminPotential:
    """``G_h = 1/2 sum_j l_j log l_j`` over all rays of the refined fan."""

    def __init__(self, data):
        self.data = data

    def _l(self, y):
        l = self.data.l(np.asarray(y, dtype=float))
        if np.any(l <= 0):
            raise OutsideDomain(f"y={y} is not strictly inside C_h")
        return l

    def value(self, y):
        l = self._l(y)
        return 0.5 * float(l @ np.log(l))

    def gradient(self, y):
        l = self._l(y)
        return 0.5 * self.data.rays.T @ (np.log(l) + 1)

    def hessian(self, y):
        l = self._l(y)
        u = self.data.rays
        return 0.5 * (u.T / l) @ u

    def inside(self, y):
        return bool(np.all(self.data.l(y) > 0))


def canonical_potential(d, y):
    return CanonicalPotential(d).value(y)


def canonical_gradient(d, y):
    return CanonicalPotential(d).gradient(y)


def canonical_hessian(d, y):
    return CanonicalPotential(d).hessian(y)


def finite_difference_hessian(f, y, step):
    """Second-order central differences of a scalar function."""
    y = np.asarray(y, dtype=float)
    n = len(y)
    H = np.empty((n, n))
    e = np.eye(n) * step
    for i in range(n):
        for j in range(i, n):
            if i == j:
                v = (f(y + e[i]) - 2 * f(y) + f(y - e[i])) / step ** 2
            else:
                v = (f(y + e[i] + e[j]) - f(y + e[i] - e[j])
                     - f(y - e[i] + e[j]) + f(y - e[i] - e[j])) / (4 * step ** 2)
            H[i, j] = H[j, i] = v
    return H


def _rel_fro(a, b):
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def _fd_step(data, y):
    l = data.l(y)
    scale = l / np.linalg.norm(data.normals, axis=1)
    return 1e-3 * float(scale.min())


def hessian_fd_check(d, y, tolerance=1e-5):
    pot = CanonicalPotential(d)
    fd = finite_difference_hessian(pot.value, y, _fd_step(d, y))
    return _check("hessian_vs_finite_differences", _rel_fro(fd, pot.hessian(y)), tolerance)


def reeb_identity_residual(d, y):
    """``max_i |2 sum_j G_ij y_j - xi^i|``."""
    y = np.asarray(y, dtype=float)
    return float(np.max(np.abs(2 * canonical_hessian(d, y) @ y - d.xi)))


def homogeneity_check(d, y, tolerance=1e-10):
    """``G_ij`` has degree -1 and ``det G_ij`` degree -n."""
    pot = CanonicalPotential(d)
    y = np.asarray(y, dtype=float)
    H = pot.hessian(y)
    D = np.linalg.det(H)
    err_h, err_d = 0.0, 0.0
    for t in (2.0, 10.0):
        Ht = pot.hessian(t * y)
        err_h = max(err_h, float(np.max(np.abs(Ht * t - H)) / np.max(np.abs(H))))
        err_d = max(err_d, abs(np.linalg.det(Ht) * t ** d.n - D) / abs(D))
    return [_check("hessian_homogeneity", err_h, tolerance),
            _check("determinant_homogeneity", err_d, tolerance)]


def det_structure_check(d, y0, facet=0, steps=8, tolerance=1e-10):
    """Homogeneity of ``det G`` and boundedness of ``det G * prod l_k`` near a facet.

    The path runs from ``y0`` towards the barycentre of the moment-cone
    generators lying on facet ``facet``.
    """
    pot = CanonicalPotential(d)
    y0 = np.asarray(y0, dtype=float)
    homog = homogeneity_check(d, y0, tolerance)[1]
    on = [v for v in d.generators if abs(d.normals[facet] @ v) < 1e-12]
    target = np.mean(on, axis=0)
    products = []
    for k in range(1, steps + 1):
        t = 1 - 10.0 ** (-k)
        y = y0 + t * (target - y0)
        products.append(float(np.linalg.det(pot.hessian(y)) * np.prod(d.l(y))))
    products = np.array(products)
    positive = bool(np.all(products > 0) and np.all(np.isfinite(products)))
    spread = float(products.max() / products.min()) if positive else float("inf")
    settle = float(abs(products[-1] - products[-2]) / abs(products[-1])) if positive else float("inf")
    passed = homog.passed and positive and settle < 1e-5
    return CheckResult("det_structure", settle, 1e-5, passed, {
        "determinant_homogeneity": homog.value,
        "products": products.tolist(),
        "limit_estimate": float(products[-1]),
        "spread": spread,
    })


def _inverse_gradient(pot, x, y_start, tol=1e-13, max_iter=100):
    """Solve ``grad G(y) = x`` by damped Newton, staying in the domain."""
    y = np.array(y_start, dtype=float)
    for _ in range(max_iter):
        r = pot.gradient(y) - x
        if np.max(np.abs(r)) < tol * max(1.0, np.max(np.abs(x))):
            return y
        step = np.linalg.solve(pot.hessian(y), r)
        a = 1.0
        while not pot.inside(y - a * step):
            a /= 2
        y = y - a * step
    return y


def legendre_dual(pot, x, y_hint):
    """Legendre transform ``<x, y> - G(y)`` at the ``y`` with ``grad G(y) = x``."""
    y = _inverse_gradient(pot, x, y_hint)
    return float(x @ y - pot.value(y))


def _duality(pot, y, x_step):
    y = np.asarray(y, dtype=float)
    x = pot.gradient(y)
    fd = finite_difference_hessian(lambda xx: legendre_dual(pot, xx, y), x, x_step)
    inv = np.linalg.inv(pot.hessian(y))
    return _rel_fro(fd, inv)


def legendre_check(d, y, identity_tol=1e-9, duality_tol=1e-4):
    """Legendre identities at ``y``.

    The transform ``F_L = <x, y> - G(y)`` with ``x = grad G`` equals
    ``l_xi / 2``; the Kähler potential normalized so that
    ``omega = i ddbar F`` is ``F = 2 F_L`` and equals ``l_xi``.  The Hessian
    of ``F_L`` in ``x`` is the inverse of the Hessian of ``G``.
    """
    pot = CanonicalPotential(d)
    y = np.asarray(y, dtype=float)
    x = pot.gradient(y)
    f_legendre = float(x @ y - pot.value(y))
    lx = d.l_xi(y)
    identity = abs(2 * f_legendre - lx) / abs(lx)
    duality = _duality(pot, y, 1e-3)
    return [_check("legendre_identity", identity, identity_tol,
                   F_legendre=f_legendre, F_kahler=2 * f_legendre, l_xi=lx),
            _check("hessian_inverse_duality", duality, duality_tol)]


def positive_definite(H):
    try:
        np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        return False
    return True


def guillemin_potential(r, y):
    """``sum_j lambda_j log l_j(y) + l_inf(y)``."""
    y = np.asarray(y, dtype=float)
    l = r.l(y)
    if np.any(l <= 0):
        raise OutsideDomain(f"y={y} is not strictly inside C_h")
    mask = r.heights != 0
    return float(r.heights[mask] @ np.log(l[mask])) + r.l_inf(y)


def resolved_metric_check(r, y, duality_tol=1e-4):
    pot = GuilleminPotential(r)
    y = np.asarray(y, dtype=float)
    H = pot.hessian(y)
    pd = positive_definite(H)
    duality = _duality(pot, y, 1e-3)
    return [CheckResult("resolved_hessian_positive_definite",
                        float(np.linalg.eigvalsh(H).min()), 0.0, pd),
            _check("resolved_hessian_inverse_duality", duality, duality_tol)]


def sample_cone_interior(generators, normals, count, rng, min_weight=0.05):
    """Convex combinations of cone generators with every weight >= ``min_weight``.

    Points closer than ``1e-3`` to a facet are pushed inwards along the
    barycentre.
    """
    gens = np.asarray(generators, dtype=float)
    m = len(gens)
    free = 1 - min_weight * m
    if free <= 0:
        min_weight = 0.5 / m
        free = 0.5
    centre = gens.mean(axis=0)
    unit = normals / np.linalg.norm(normals, axis=1)[:, None]
    out = []
    for _ in range(count):
        w = min_weight + free * rng.dirichlet(np.ones(m))
        y = w @ gens
        gap = (unit @ y).min()
        if gap < 1e-3:
            y = y + (1e-3 - gap) / (unit @ centre).min() * centre
        out.append(y)
    return np.array(out)


def sample_resolved_interior(r, count, rng, margin=0.05):
    """Points of ``C_h`` at distance >= ``margin``-ish from every facet."""
    dirs = sample_cone_interior(r.generators, r.rays, count, rng)
    out = []
    for y in dirs:
        ly = r.rays @ y
        t = max(1.0, float(np.max((r.heights + margin) / ly)))
        out.append(y * t * (1 + rng.random()))
    return np.array(out)


def cone_property_suite(d, count=100, seed=0):
    """Every cone-potential property at ``count`` sampled interior points."""
    rng = np.random.default_rng(seed)
    ys = sample_cone_interior(d.generators, d.normals, count, rng)
    worst = {}
    min_eig = np.inf

    def record(c):
        prev = worst.get(c.name)
        if prev is None or c.value > prev.value or not c.passed:
            worst[c.name] = c

    for y in ys:
        record(_check("reeb_identity", reeb_identity_residual(d, y), 1e-9))
        record(hessian_fd_check(d, y))
        for c in homogeneity_check(d, y):
            record(c)
        for c in legendre_check(d, y):
            record(c)
        H = canonical_hessian(d, y)
        if positive_definite(H):
            min_eig = min(min_eig, float(np.linalg.eigvalsh(H).min()))
        else:
            min_eig = -np.inf
    worst["hessian_positive_definite"] = CheckResult(
        "hessian_positive_definite", min_eig, 0.0, bool(min_eig > 0))
    worst["det_structure"] = det_structure_check(d, ys[0])
    return list(worst.values())


def resolved_property_suite(r, count=10, seed=0):
    """Positive definiteness (smallest eigenvalue) and duality (largest error)."""
    rng = np.random.default_rng(seed)
    out = {}
    for y in sample_resolved_interior(r, count, rng):
        for c in resolved_metric_check(r, y):
            prev = out.get(c.name)
            lower_is_worse = c.name.endswith("definite")
            if prev is None or (c.value < prev.value if lower_is_worse else c.value > prev.value):
                out[c.name] = c
    return list(out.values())
