"""Reeb vector of the Ricci-flat cone metric by volume minimization.

The volume of ``{y in C(mu) : <xi, y> <= 1/2}`` is a rational function of
``xi`` on the open Reeb cone.  It is minimized over the plane
``<gamma, xi> = -n`` by projected Newton iteration.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import exactlin as el
from .errors import DidNotConverge, OutsideReebCone
from .fan import gorenstein_vector


@dataclass(frozen=True, eq=False)
class ReebProblem:
    """Moment-cone generators ``v_k`` and a simplicial decomposition of ``C(mu)``."""

    generators: tuple
    simplices: tuple
    gamma: tuple
    n: int
    normals: tuple = ()

    @classmethod
    def from_fan(cls, fan, apex=0):
        rays = [fan.rays[j] for j in sorted({j for c in fan.cones for j in c})]
        gens = el.dual_cone(rays, fan.dim)
        simplices = el.pulling_triangulation(gens, apex=apex)
        gamma = gorenstein_vector(fan).gamma
        return cls(tuple(gens), tuple(simplices), tuple(gamma), fan.dim, tuple(rays))

    def __post_init__(self):
        V = np.array(self.generators, dtype=float)
        dets = [abs(float(el.det([self.generators[i] for i in s]))) for s in self.simplices]
        object.__setattr__(self, "_V", V)
        object.__setattr__(self, "_dets", np.array(dets))
        object.__setattr__(self, "_idx", [list(s) for s in self.simplices])

    def pairings(self, xi):
        xi = np.asarray(xi, dtype=float)
        w = self._V @ xi
        if np.any(w <= 0):
            raise OutsideReebCone(f"xi={xi.tolist()} is not inside the Reeb cone")
        return w

    def inside(self, xi):
        return bool(np.all(self._V @ np.asarray(xi, dtype=float) > 0))


def _simplex_volumes(p, w):
    scale = factorial(p.n) * 2.0 ** p.n
    return np.array([d / (scale * np.prod(w[s])) for d, s in zip(p._dets, p._idx)])


def volume(p, xi):
    """``sum_s |det V_s| / (n! prod_k 2 <xi, v_k>)``."""
    return float(_simplex_volumes(p, p.pairings(xi)).sum())


def volume_gradient(p, xi):
    w = p.pairings(xi)
    vols = _simplex_volumes(p, w)
    g = np.zeros(p.n)
    for vol, s in zip(vols, p._idx):
        g -= vol * (p._V[s] / w[s][:, None]).sum(axis=0)
    return g


def volume_hessian(p, xi):
    w = p.pairings(xi)
    vols = _simplex_volumes(p, w)
    H = np.zeros((p.n, p.n))
    for vol, s in zip(vols, p._idx):
        scaled = p._V[s] / w[s][:, None]
        a = scaled.sum(axis=0)
        H += vol * (np.outer(a, a) + scaled.T @ scaled)
    return H


@dataclass
class ReebSolution:
    xi: np.ndarray
    volume: float
    gradient_norm: float
    iterations: int
    hessian_min_eigenvalue: float
    margin: float


def constraint_frame(p):
    """Initial point ``xi_0`` on the constraint plane and a basis ``T`` of ``ker gamma``.

    ``xi_0`` is the multiple of the sum of the fan's rays satisfying the
    constraint; the rays span the Reeb cone, so this point is interior.
    """
    T = np.array(el.integer_kernel([list(p.gamma)], ncols=p.n), dtype=float).T
    c = np.array(p.normals, dtype=float).sum(axis=0)
    g = np.array([float(x) for x in p.gamma])
    return -p.n / float(g @ c) * c, T


def _polish(p, xi0, T, t, gnorm, steps=2):
    # Flat minima leave xi loose at the gradient tolerance; a few plain
    # Newton steps pin it down to rounding level.
    for _ in range(steps):
        xi = xi0 + T @ t
        g = T.T @ volume_gradient(p, xi)
        cand = t - np.linalg.solve(T.T @ volume_hessian(p, xi) @ T, g)
        xc = xi0 + T @ cand
        if not p.inside(xc):
            break
        gc = float(np.linalg.norm(T.T @ volume_gradient(p, xc)))
        if gc > gnorm:
            break
        t, gnorm = cand, gc
    return t, gnorm


def _newton(p, xi0, T, tol, max_iter):
    t = np.zeros(T.shape[1])
    xi = xi0.copy()
    vol = volume(p, xi)
    for it in range(max_iter + 1):
        g = T.T @ volume_gradient(p, xi)
        gnorm = float(np.linalg.norm(g))
        if gnorm < tol:
            t, gnorm = _polish(p, xi0, T, t, gnorm)
            return t, it, gnorm
        if it == max_iter:
            break
        H = T.T @ volume_hessian(p, xi) @ T
        step = -np.linalg.solve(H, g)
        if g @ step >= 0:
            step = -g
        a = 1.0
        for _ in range(80):
            cand = xi0 + T @ (t + a * step)
            if p.inside(cand):
                new = volume(p, cand)
                if new <= vol + 1e-4 * a * (g @ step):
                    break
                # Volume differences at rounding level: judge by the gradient.
                if (abs(new - vol) <= 1e-14 * vol
                        and np.linalg.norm(T.T @ volume_gradient(p, cand)) < gnorm):
                    break
            a /= 2
        else:
            break
        t = t + a * step
        xi = xi0 + T @ t
        vol = volume(p, xi)
    raise DidNotConverge(
        f"projected gradient norm {gnorm:.3e} after {it} iterations",
        {"xi": xi.tolist(), "gradient_norm": gnorm, "iterations": it},
    )


def minimize_volume(p, tol=1e-12, max_iter=200, restarts=5, seed=0, agreement=1e-9):
    """Projected Newton descent of the volume on ``<gamma, xi> = -n``.

    The run from the canonical initial point is returned after ``restarts``
    runs from perturbed initial points agree with it to ``agreement``.
    """
    xi0, T = constraint_frame(p)
    t, iters, gnorm = _newton(p, xi0, T, tol, max_iter)
    xi = xi0 + T @ t
    rng = np.random.default_rng(seed)
    for k in range(restarts):
        d = rng.standard_normal(T.shape[1])
        scale = 0.25 * np.linalg.norm(xi0) / np.linalg.norm(T @ d)
        while not p.inside(xi0 + scale * (T @ d)):
            scale /= 2
        start = xi0 + scale * (T @ d)
        t2, _, _ = _newton(p, start, T, tol, max_iter)
        other = start + T @ t2
        if np.max(np.abs(other - xi)) > agreement:
            raise DidNotConverge(
                f"restart {k} reached {other.tolist()} instead of {xi.tolist()}",
                {"xi": xi.tolist(), "restart": other.tolist()},
            )
    H = T.T @ volume_hessian(p, xi) @ T
    w = p.pairings(xi) / np.linalg.norm(p._V, axis=1)
    return ReebSolution(xi, volume(p, xi), gnorm, iters,
                        float(np.linalg.eigvalsh(H).min()), float(w.min()))
