"""Integer and rational matrix routines.

Matrices are plain lists of rows.  Integer entries are Python ``int`` (so
arbitrary precision); rational entries are :class:`fractions.Fraction`.
Nothing here ever touches floating point.
"""

from fractions import Fraction
from math import gcd

Rational = Fraction


def as_int_matrix(m):
    rows = [[int(x) for x in row] for row in m]
    if not rows or not rows[0]:
        raise ValueError("matrix must be nonempty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def is_primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def det(m):
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m):
    """Rank over the rationals."""
    if not m:
        return 0
    if all(isinstance(x, int) for r in m for x in r):
        return _int_rank(m)
    rows = [[Fraction(x) for x in r] for r in m]
    return len(_row_echelon(rows)[1])


def _int_rank(m):
    # Fraction-free elimination; rows are divided by their content.
    rows = [list(r) for r in m if any(r)]
    r = 0
    for c in range(len(m[0])):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                row = [piv[c] * x - f * y for x, y in zip(rows[i], piv)]
                g = gcd(*row)
                rows[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(rows):
            break
    return r


def _row_echelon(rows):
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve(a, b):
    """Solve ``a x = b`` over the rationals.

    Returns the unique solution as a list of Fractions, or ``None`` when the
    system is inconsistent.  Raises ``ValueError`` if the solution is not
    unique.
    """
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    ncols = len(a[0])
    aug, pivots = _row_echelon(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise ValueError("system is underdetermined")
    x = [Fraction(0)] * ncols
    for row, c in zip(aug, pivots):
        x[c] = row[-1]
    return x


def hermite_normal_form(m):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  ``h`` is in
    row echelon form with positive pivots, zero rows at the bottom, and
    entries above each pivot reduced into ``[0, pivot)``.
    """
    h = as_int_matrix(m)
    nrows, ncols = len(h), len(h[0])
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Euclid on column c among rows r.. until a single nonzero remains.
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(h[i][c]), i))
            if p != r:
                h[r], h[p] = h[p], h[r]
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def smith_normal_form(m):
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix.

    The returned list has ``min(rows, cols)`` entries; trailing zeros mark
    rank deficiency.
    """
    a = as_int_matrix(m)
    nrows, ncols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows)
              for j in range(t, ncols) if a[i][j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, nrows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    clean = False
            for j in range(t + 1, ncols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, nrows)
                            for j in range(t + 1, ncols) if a[i][j] % piv), None)
                if bad is None:
                    break
                # Fold the offending row in; the next pass shrinks the pivot.
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                clean = False
            # Move the smallest entry of row/column t onto the diagonal.
            cand = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t] != 0]
            cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j] != 0]
            _, pi, pj = min(cand)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(nrows, ncols) - len(diag))
    return diag


def integer_kernel(m, ncols=None):
    """Lattice basis (as rows, in Hermite form) of ``{x in Z^n : m x = 0}``."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols)
    m = as_int_matrix(m)
    n = len(m[0])
    h, u = hermite_normal_form(transpose(m))
    basis = [u[i] for i in range(n) if not any(h[i])]
    if not basis:
        return []
    return [row for row in hermite_normal_form(basis)[0] if any(row)]


def inverse(m):
    """Exact inverse of a square rational matrix, or ``None`` if singular."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    aug, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in aug]
