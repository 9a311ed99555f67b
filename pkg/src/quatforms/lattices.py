"""Rational lattices of full rank: HNF bases, duals, intersections, and
exact enumeration of vectors of prescribed norm (Fincke-Pohst).

A lattice is represented by a list of basis rows with Fraction entries.
HNF output is canonical, so lattice equality is row-by-row comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction


def hnf_int(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix; zero rows dropped.

    Upper triangular shape with positive pivots; entries above each pivot
    reduced to [0, pivot).
    """
    m = [row[:] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        # euclidean elimination below pivot_row in this column
        while True:
            nz = [i for i in range(pivot_row, len(m)) if m[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i][col]))
            m[pivot_row], m[i0] = m[i0], m[pivot_row]
            done = True
            for i in range(pivot_row + 1, len(m)):
                if m[i][col] != 0:
                    q = m[i][col] // m[pivot_row][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[pivot_row])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if pivot_row < len(m) and m[pivot_row][col] != 0:
            if m[pivot_row][col] < 0:
                m[pivot_row] = [-a for a in m[pivot_row]]
            piv = m[pivot_row][col]
            for i in range(pivot_row):
                q = m[i][col] // piv
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[pivot_row])]
            pivot_row += 1
    return [row for row in m[:pivot_row]]


def hnf_rational(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Canonical basis of the lattice spanned by rational rows."""
    rows = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not rows:
        return []
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    int_rows = [[int(x * den) for x in row] for row in rows]
    h = hnf_int(int_rows)
    return [[Fraction(a, den) for a in row] for row in h]


def lattice_dual(basis: list[list[Fraction]]) -> list[list[Fraction]]:
    """Dual basis rows w.r.t. the standard dot product: (B^-1)^T."""
    inv = mat_inv_rational(basis)
    return [list(col) for col in zip(*inv)]


def lattice_sum(a, b) -> list[list[Fraction]]:
    return hnf_rational([list(r) for r in a] + [list(r) for r in b])


def lattice_intersection(a, b) -> list[list[Fraction]]:
    da, db = lattice_dual(a), lattice_dual(b)
    return lattice_dual(lattice_sum(da, db))


def mat_inv_rational(mat) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        sel = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if sel is None:
            raise ValueError("singular matrix")
        aug[c], aug[sel] = aug[sel], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def solve_rational(mat, rhs) -> list[Fraction] | None:
    """Solve mat^T-free system mat * x = rhs exactly; None if inconsistent."""
    rows = len(mat)
    n = len(mat[0]) if rows else 0
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(n):
        sel = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    for i in range(r, rows):
        if aug[i][n] != 0:
            return None
    return x


def coords_in_basis(vec, basis) -> list[Fraction] | None:
    """Coordinates c with c * basis = vec (rows), or None."""
    mat = [[basis[j][i] for j in range(len(basis))] for i in range(len(vec))]
    return solve_rational(mat, list(vec))


def in_lattice(vec, basis) -> bool:
    c = coords_in_basis(vec, basis)
    return c is not None and all(x.denominator == 1 for x in c)


def det_rational(mat) -> Fraction:
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _cholesky(gram) -> list[list[Fraction]]:
    """Coefficients q with Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    return q


def vectors_of_norm(gram, target) -> list[tuple[int, ...]]:
    """All integer x (up to sign, first nonzero coordinate > 0) with
    x^T gram x == target; gram positive definite, target >= 0 rational."""
    n = len(gram)
    target = Fraction(target)
    if target == 0:
        return []
    q = _cholesky(gram)
    results: list[tuple[int, ...]] = []
    x = [0] * n

    def recurse(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0:
                vec = tuple(x)
                nz = next((v for v in vec if v != 0), 0)
                results.append(vec if nz > 0 else tuple(-v for v in vec))
            return
        center = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        bound = remaining / q[i][i]
        # float guess for the window, exact check per candidate
        approx = math.sqrt(float(bound)) if bound > 0 else 0.0
        lo = math.floor(-float(center) - approx) - 1
        hi = math.ceil(-float(center) + approx) + 1
        for xi in range(lo, hi + 1):
            val = q[i][i] * (xi + center) ** 2
            if val <= remaining:
                x[i] = xi
                recurse(i - 1, remaining - val)
        x[i] = 0

    recurse(n - 1, target)
    return sorted(set(results))
