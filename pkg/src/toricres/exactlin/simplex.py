"""Two-phase simplex method over the rationals with Bland's pivoting rule."""

import enum
from dataclasses import dataclass, field
from fractions import Fraction


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


RELATIONS = ("<=", "=", ">=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    bound: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "bound", Fraction(self.bound))


@dataclass(frozen=True)
class LinearProgram:
    """``objective`` is maximized unless ``maximize`` is False.

    ``bounds`` holds one ``(lo, hi)`` pair per variable, either end ``None``.
    Variables without bounds are free.
    """

    objective: tuple
    constraints: tuple = ()
    bounds: tuple = None
    maximize: bool = True

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c)
                     for c in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if any(len(c.coeffs) != n for c in cons):
            raise ValueError("constraint width does not match objective")
        if self.bounds is not None:
            if len(self.bounds) != n:
                raise ValueError("bounds length does not match objective")
            object.__setattr__(self, "bounds", tuple(
                (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
                for lo, hi in self.bounds))


@dataclass
class LPResult:
    status: Status
    point: list = field(default=None)
    value: Fraction = None


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [x - f * y for x, y in zip(r, tab[row])]
    basis[row] = col


def _run(tab, basis, cost, allowed):
    """Maximize ``cost . x`` over the tableau; returns False if unbounded.

    ``tab`` rows are ``[a_1 .. a_m | b]`` with ``basis`` giving the basic
    column of each row.  Bland: lowest-index improving column enters, ties
    in the ratio test go to the lowest basic index.
    """
    ncols = len(tab[0]) - 1
    while True:
        reduced = []
        for j in range(ncols):
            if j in basis or not allowed[j]:
                reduced.append(Fraction(0))
                continue
            reduced.append(cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(len(tab))))
        enter = next((j for j in range(ncols) if reduced[j] > 0), None)
        if enter is None:
            return True
        best = None
        for i, r in enumerate(tab):
            if r[enter] > 0:
                key = (r[-1] / r[enter], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], enter)


def lp_solve(p):
    """Solve a :class:`LinearProgram` exactly.

    Returns an :class:`LPResult`; infeasibility and unboundedness are
    reported through ``status`` rather than raised.
    """
    n = len(p.objective)
    bounds = p.bounds or ((None, None),) * n
    # Substitute x_j = shift_j + sum(sign * y) with y >= 0.
    columns = []  # (original var, sign)
    shift = [Fraction(0)] * n
    rows = []  # (coeff dict over y-columns, relation, rhs)
    for j, (lo, hi) in enumerate(bounds):
        if lo is not None:
            shift[j] = lo
            columns.append((j, 1))
            if hi is not None:
                rows.append(({len(columns) - 1: Fraction(1)}, "<=", hi - lo))
        elif hi is not None:
            shift[j] = hi
            columns.append((j, -1))
        else:
            columns.append((j, 1))
            columns.append((j, -1))
    for c in p.constraints:
        coeff = {}
        for k, (j, s) in enumerate(columns):
            if c.coeffs[j]:
                coeff[k] = s * c.coeffs[j]
        rhs = c.bound - sum(a * s for a, s in zip(c.coeffs, shift))
        rows.append((coeff, c.relation, rhs))

    ny = len(columns)
    nslack = sum(1 for _, rel, _ in rows if rel != "=")
    m = len(rows)
    width = ny + nslack + m
    tab, basis = [], []
    art_cols = []
    slack_at = ny
    for i, (coeff, rel, rhs) in enumerate(rows):
        r = [Fraction(0)] * (width + 1)
        for k, v in coeff.items():
            r[k] = v
        if rel != "=":
            r[slack_at] = Fraction(1 if rel == "<=" else -1)
            slack_at += 1
        r[-1] = rhs
        if rhs < 0:
            r = [-x for x in r]
        art = ny + nslack + i
        r[art] = Fraction(1)
        art_cols.append(art)
        tab.append(r)
        basis.append(art)

    if not tab:
        cost = [(1 if p.maximize else -1) * s * p.objective[j] for j, s in columns]
        if any(c > 0 for c in cost):
            return LPResult(Status.UNBOUNDED)
        return LPResult(Status.OPTIMAL, list(shift),
                        sum(c * x for c, x in zip(p.objective, shift)))

    allowed = [True] * width
    phase1 = [Fraction(0)] * width
    for a in art_cols:
        phase1[a] = Fraction(-1)
    _run(tab, basis, phase1, allowed)
    if sum(tab[i][-1] for i, b in enumerate(basis) if b in art_cols) > 0:
        return LPResult(Status.INFEASIBLE)
    # Drive zero-valued artificials out of the basis; drop redundant rows.
    for a in art_cols:
        allowed[a] = False
    i = 0
    while i < len(tab):
        if basis[i] in art_cols:
            col = next((j for j in range(ny + nslack) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, col)
        i += 1

    sense = 1 if p.maximize else -1
    cost = [Fraction(0)] * width
    for k, (j, s) in enumerate(columns):
        cost[k] = sense * s * p.objective[j]
    if not _run(tab, basis, cost, allowed):
        return LPResult(Status.UNBOUNDED)
    y = [Fraction(0)] * width
    for i, b in enumerate(basis):
        y[b] = tab[i][-1]
    x = list(shift)
    for k, (j, s) in enumerate(columns):
        x[j] += s * y[k]
    value = sum(c * xi for c, xi in zip(p.objective, x))
    return LPResult(Status.OPTIMAL, x, value)


def cone_contains(generators, x):
    """Exact test whether ``x`` lies in the cone spanned by ``generators``."""
    k = len(generators)
    if k == 0:
        return not any(x)
    n = len(x)
    cons = [Constraint([g[i] for g in generators], "=", x[i]) for i in range(n)]
    lp = LinearProgram([0] * k, cons, ((0, None),) * k)
    return lp_solve(lp).status is Status.OPTIMAL
