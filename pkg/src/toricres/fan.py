"""Fans, cones, Gorenstein data, slice polytopes and Delzant matrices."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from . import exactlin as el
from .errors import InvalidFan, NonIntegralGamma, NotGorenstein, NotStronglyConvex


@dataclass(frozen=True)
class Cone:
    """Cone spanned by integer generators in ``Z^n``."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self):
        return len(self.generators[0])

    def matrix(self):
        return [list(g) for g in self.generators]


@dataclass(frozen=True)
class Fan:
    """A fan stored by its maximal cones (index tuples into ``rays``)."""

    dim: int
    rays: tuple
    cones: tuple
    name: str = None

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(int(i) for i in c) for c in self.cones)
        if any(len(r) != self.dim for r in rays):
            raise InvalidFan("ray dimension mismatch")
        if any(i < 0 or i >= len(rays) for c in cones for i in c):
            raise InvalidFan("cone index out of range")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", cones)

    @classmethod
    def from_cone(cls, generators, name=None):
        gens = [tuple(int(x) for x in g) for g in generators]
        return cls(len(gens[0]), tuple(gens), (tuple(range(len(gens))),), name)

    def cone(self, i):
        return Cone(tuple(self.rays[j] for j in self.cones[i]))

    def shared_faces(self):
        """Ray indices common to each pair of maximal cones."""
        return {(i, j): tuple(sorted(set(a) & set(b)))
                for (i, a), (j, b) in combinations(enumerate(self.cones), 2)}

    def is_single_cone(self):
        return len(self.cones) == 1 and el.rank(self.cone(0).matrix()) == self.dim


@dataclass(frozen=True)
class GorensteinData:
    gamma: tuple
    index: int

    @property
    def integral(self):
        return tuple(int(g) for g in self.gamma) if self.index == 1 else None


@dataclass
class FanReport:
    valid: bool
    violations: list = field(default_factory=list)


@dataclass(frozen=True)
class SlicePolytope:
    """Lattice polytope cut out of the fan's support by ``<gamma, x> = -1``.

    Slice coordinates ``c`` correspond to the lattice point
    ``base + sum(c_i * basis[i])`` of ``Z^n``.
    """

    n: int
    gamma: GorensteinData
    base: tuple
    basis: tuple
    vertices: tuple
    points: tuple
    interior: tuple

    def lift(self, c):
        return tuple(b + sum(ci * row[k] for ci, row in zip(c, self.basis))
                     for k, b in enumerate(self.base))

    def coords(self, x):
        # The basis rows are in echelon form, so back-substitute on pivots.
        rest = [xi - bi for xi, bi in zip(x, self.base)]
        out = []
        for row in self.basis:
            piv = next(k for k, v in enumerate(row) if v)
            c, r = divmod(rest[piv], row[piv])
            if r:
                break
            out.append(c)
            rest = [a - c * b for a, b in zip(rest, row)]
        if len(out) == len(self.basis) and not any(rest):
            return tuple(out)
        # Non-echelon basis (or a point off the lattice): solve exactly.
        diff = [xi - bi for xi, bi in zip(x, self.base)]
        sol = el.solve(el.transpose(self.basis), diff)
        if sol is None or any(s.denominator != 1 for s in sol):
            raise ValueError(f"{x} is not a lattice point of the slice hyperplane")
        return tuple(int(s) for s in sol)

    @property
    def boundary(self):
        return tuple(p for p, inner in zip(self.points, self.interior) if not inner)

    @property
    def interior_points(self):
        return tuple(p for p, inner in zip(self.points, self.interior) if inner)

    def normalized_volume(self):
        """``(n-1)!`` times the Euclidean volume, in slice coordinates."""
        m = self.n - 1
        if m == 1:
            xs = [v[0] for v in self.vertices]
            return max(xs) - min(xs)
        if m == 2:
            hull = el.convex_hull_2d(self.vertices)
            twice = 0
            for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
                twice += x0 * y1 - x1 * y0
            return abs(twice)
        # Cone over the polytope from the origin of a lifted copy.
        return _cone_normalized_volume([tuple(v) + (1,) for v in self.vertices])


def _cone_normalized_volume(gens):
    return sum(abs(el.det([gens[i] for i in s]))
               for s in el.pulling_triangulation(gens))


def _pointed(gens):
    """True when ``cone(gens)`` contains no line (checked in its own span)."""
    gens = [g for g in gens if any(g)]
    if not gens:
        return True
    coords, k = el.span_coordinates(gens)
    try:
        el.dual_cone(coords, k)
    except NotStronglyConvex:
        return False
    return True


def _relint_separator(a, b, n):
    """A functional >= 0 on cone(a), <= 0 on cone(b), strict wherever possible."""
    cons = [el.Constraint(g, ">=", 0) for g in a] + [el.Constraint(g, "<=", 0) for g in b]
    bounds = ((-1, 1),) * n
    total = [Fraction(0)] * n
    for g, sign in [(g, 1) for g in a] + [(g, -1) for g in b]:
        res = el.lp_solve(el.LinearProgram([sign * x for x in g], cons, bounds))
        if res.status is el.Status.OPTIMAL and res.value > 0:
            total = [t + x for t, x in zip(total, res.point)]
    return total


def _same_cone(a, b):
    return (all(el.cone_contains(b, g) for g in a)
            and all(el.cone_contains(a, g) for g in b))


def validate_fan(f):
    """Check primitivity, strong convexity, minimality and face intersections."""
    violations = []
    for j, r in enumerate(f.rays):
        if not any(r):
            violations.append(f"ray {j} is zero")
        elif not el.is_primitive(r):
            violations.append(f"ray {j} {r} is not primitive")
    for i, c in enumerate(f.cones):
        gens = [f.rays[j] for j in c]
        if not _pointed(gens):
            violations.append(f"cone {i} is not strongly convex")
            continue
        for j in c:
            others = [f.rays[k] for k in c if k != j]
            if el.cone_contains(others, f.rays[j]):
                violations.append(f"cone {i}: generator {j} is redundant")
    if violations:
        return FanReport(False, violations)
    for (i, a), (j, b) in combinations(enumerate(f.cones), 2):
        ga = [f.rays[k] for k in a]
        gb = [f.rays[k] for k in b]
        m = _relint_separator(ga, gb, f.dim)
        za = [g for g in ga if el.dot(m, g) == 0]
        zb = [g for g in gb if el.dot(m, g) == 0]
        if not _same_cone(za, zb):
            violations.append(f"cones {i} and {j} meet in a non-face")
    return FanReport(not violations, violations)


def is_nonsingular(c):
    """Generators are independent and extend to a basis of the lattice."""
    m = c.matrix()
    if el.rank(m) != len(m):
        return False
    return all(d == 1 for d in el.smith_normal_form(m))


def _all_rays(f):
    used = sorted({j for c in f.cones for j in c})
    return [f.rays[j] for j in used]


def gorenstein_vector(f):
    """Solve ``<gamma, u_j> = -1`` for every ray; raise NotGorenstein if impossible."""
    rays = _all_rays(f)
    if el.rank(rays) < f.dim:
        raise NotGorenstein("rays do not span; gamma is not unique")
    # Cramer's rule on n independent rays, then check the rest exactly.
    basis = []
    for r in rays:
        if el.rank(basis + [list(r)]) > len(basis):
            basis.append(list(r))
    d = el.det(basis)
    gamma = []
    for k in range(f.dim):
        m = [row[:k] + [-1] + row[k + 1:] for row in basis]
        gamma.append(Fraction(el.det(m), d))
    if any(el.dot(gamma, r) != -1 for r in rays):
        raise NotGorenstein("no covector pairs to -1 with every ray")
    index = lcm(*(g.denominator for g in gamma))
    return GorensteinData(tuple(gamma), index)


def _slice_frame(gamma):
    """Canonical lattice basis of ``ker gamma`` and base point on ``gamma = -1``."""
    n = len(gamma)
    basis = el.integer_kernel([list(gamma)])
    h, u = el.hermite_normal_form([[g] for g in gamma])
    # u @ gamma^T = (g, 0, ...) with g = gcd(gamma) = 1 for a Gorenstein cone.
    if h[0][0] != 1:
        raise NonIntegralGamma("gamma is not primitive")
    base = [-x for x in u[0]]
    for row in basis:
        piv = next(k for k in range(n) if row[k])
        q = base[piv] // row[piv]
        base = [x - q * y for x, y in zip(base, row)]
    return tuple(base), tuple(tuple(r) for r in basis)


def slice_polytope(f, g, basis=None):
    """Lattice polytope ``P`` of the cone at height ``<gamma, x> = -1``.

    ``basis`` may override the canonical lattice basis of ``ker gamma``
    (rows); it must be a lattice basis.
    """
    gamma = g.integral
    if gamma is None:
        raise NonIntegralGamma(f"Gorenstein index {g.index} > 1")
    base, canon = _slice_frame(gamma)
    if basis is not None:
        basis = tuple(tuple(int(x) for x in r) for r in basis)
        if el.hermite_normal_form(basis)[0] != el.hermite_normal_form(canon)[0]:
            raise ValueError("basis does not generate the slice lattice")
    else:
        basis = canon
    frame = SlicePolytope(f.dim, g, base, basis, (), (), ())
    vertices = tuple(frame.coords(r) for r in _all_rays(f))
    pts = el.lattice_points_in_polytope(vertices)
    return SlicePolytope(f.dim, g, base, basis, vertices,
                         tuple(p.coords for p in pts), tuple(p.interior for p in pts))


def moment_cone(f):
    """The moment cone: the dual of the fan's single maximal cone."""
    return Cone(tuple(el.dual_cone(_all_rays(f), f.dim)))


@dataclass(frozen=True)
class DelzantData:
    A: tuple
    B: tuple

    def product(self):
        if not self.B or not self.B[0]:
            return [[0] for _ in self.A]
        return el.matmul(self.A, self.B)


def delzant_matrices(f):
    """``A`` has the rays as columns; ``B``'s columns are a lattice basis of ker A."""
    rays = _all_rays(f)
    A = el.transpose(rays)
    ker = el.integer_kernel(A)
    B = el.transpose(ker) if ker else [[] for _ in rays]
    return DelzantData(tuple(map(tuple, A)), tuple(map(tuple, B)))
