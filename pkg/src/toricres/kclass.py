"""Support functions on refined fans and compact Kähler classes.

Convexity follows the upper convention ``h(x + y) >= h(x) + h(y)``: each
linear piece ``l_sigma`` dominates ``h`` everywhere, with equality exactly on
``sigma`` when ``h`` is strictly convex.  With zero heights on the boundary
rays this makes the interior heights nonnegative.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exactlin as el
from .errors import Inconsistent, NoneExists, NotCompact


@dataclass(frozen=True)
class SupportFunction:
    fan: object
    heights: tuple
    covectors: tuple

    def __call__(self, x):
        """Evaluate at a point of the support (exact)."""
        for c, l in zip(self.fan.cones, self.covectors):
            coef = el.solve(el.transpose([self.fan.rays[j] for j in c]), x)
            if coef is not None and all(a >= 0 for a in coef):
                return el.dot(l, x)
        raise ValueError(f"{x} is outside the support of the fan")


@dataclass(frozen=True)
class KahlerClass:
    """Coefficients of ``[omega]`` on the duals of the compact divisors."""

    coefficients: dict


def _cone_covector(rays, cone, heights):
    m = [rays[j] for j in cone]
    sol = el.solve(m, [heights[j] for j in cone])
    if sol is None:
        raise Inconsistent("heights admit no linear function on a cone")
    return tuple(sol)


def support_from_heights(f, heights):
    """Piecewise-linear function on ``f`` taking value ``heights[j]`` on ray ``j``."""
    heights = tuple(Fraction(h) for h in heights)
    if len(heights) != len(f.rays):
        raise ValueError("need one height per ray")
    covs = tuple(_cone_covector(f.rays, c, heights) for c in f.cones)
    for face, a, b in f.walls():
        for j in face:
            if el.dot(covs[a], f.rays[j]) != el.dot(covs[b], f.rays[j]):
                raise Inconsistent(f"pieces disagree on wall {face}")
    return SupportFunction(f, heights, covs)


def wall_slacks(h):
    """``<l_sigma, v'> - h(v')`` for every interior wall, in wall order."""
    f = h.fan
    out = []
    for face, a, b in f.walls():
        for mine, other in ((a, b), (b, a)):
            v = next(j for j in f.cones[other] if j not in face)
            out.append(el.dot(h.covectors[mine], f.rays[v]) - h.heights[v])
    return out


def is_strictly_convex(h):
    return all(s > 0 for s in wall_slacks(h))


def is_convex(h):
    return all(s >= 0 for s in wall_slacks(h))


def is_compact(h, f=None):
    f = f or h.fan
    return all(lam == 0 for lam, b in zip(h.heights, f.boundary) if b)


def find_compact_support(f):
    """Maximize the convexity margin over compact support functions.

    Variables are the heights of the interior rays (boxed to ``[0, 1]``) and
    a margin ``s <= 1``.  Returns ``(h, s)`` for the optimum, or raises
    :class:`NoneExists` when the best margin is not positive.
    """
    free = f.interior_rays()
    col = {j: k for k, j in enumerate(free)}
    nvar = len(free) + 1
    cons = []
    for face, a, b in f.walls():
        for mine, other in ((a, b), (b, a)):
            cone = f.cones[mine]
            v = next(j for j in f.cones[other] if j not in face)
            # <l_sigma, v> = sum_i c_i h(u_i) with v = sum_i c_i u_i over sigma's rays.
            c = el.solve(el.transpose([f.rays[j] for j in cone]), f.rays[v])
            row = [Fraction(0)] * nvar
            for ci, j in zip(c, cone):
                if j in col:
                    row[col[j]] += ci
            if v in col:
                row[col[v]] -= 1
            row[-1] = Fraction(-1)
            cons.append(el.Constraint(row, ">=", 0))
    bounds = ((0, 1),) * len(free) + ((None, 1),)
    lp = el.LinearProgram([0] * len(free) + [1], cons, bounds)
    res = el.lp_solve(lp)
    if res.status is not el.Status.OPTIMAL or res.value <= 0:
        margin = res.value if res.status is el.Status.OPTIMAL else None
        raise NoneExists(_none_message(f, margin))
    heights = [Fraction(0)] * len(f.rays)
    for j, k in col.items():
        heights[j] = res.point[k]
    return support_from_heights(f, heights), res.value


def _none_message(f, margin):
    if not f.interior_rays():
        return ("no compact strictly convex support function: the slice polytope "
                "has no interior lattice points")
    return f"no compact strictly convex support function (best margin {margin})"


def kahler_class(h):
    """``-2 pi lambda_j`` for each ray off the boundary of the original cone."""
    if not is_compact(h):
        raise NotCompact("support function is nonzero on a boundary ray")
    return KahlerClass({j: -2 * math.pi * float(h.heights[j])
                        for j in h.fan.interior_rays()})
