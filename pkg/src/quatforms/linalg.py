"""Dense exact linear algebra over a FiniteField.

Matrices are lists of lists of FFElem.  Everything here is plain Gaussian
elimination at desk scale; no pivoting strategies beyond "first nonzero".
"""

from __future__ import annotations

from .fields import FiniteField, FFElem, Poly


def mat_identity(field: FiniteField, n: int):
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_zero(field: FiniteField, rows: int, cols: int):
    z = field.zero()
    return [[z] * cols for _ in range(rows)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(m):
            acc = row_a[0] * b[0][j]
            for t in range(1, k):
                acc = acc + row_a[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c: FFElem):
    return [[x * c for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_apply(a, fn):
    return [[fn(x) for x in row] for row in a]


def rref(mat, ncols: int | None = None):
    """Row-reduce a copy of mat; returns (reduced rows, pivot column list)."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = ncols if ncols is not None else (len(m[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    if not mat:
        return 0
    return len(rref(mat)[1])


def kernel_basis(mat, field: FiniteField):
    """Basis of the right kernel {v : mat v = 0}, as a list of column vectors."""
    if not mat:
        return []
    n = len(mat[0])
    red, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    z, o = field.zero(), field.one()
    for fcol in free:
        v = [z] * n
        v[fcol] = o
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fcol]
        basis.append(v)
    return basis


def solve(mat, rhs, field: FiniteField):
    """One solution of mat x = rhs (columns rhs), or None if inconsistent."""
    rows = len(mat)
    n = len(mat[0]) if rows else 0
    aug = [mat[i][:] + [rhs[i]] for i in range(rows)]
    red, pivots = rref(aug, ncols=n)
    z = field.zero()
    x = [z] * n
    for i, pc in enumerate(pivots):
        x[pc] = red[i][n]
    for i in range(len(pivots), rows):
        if not red[i][n].is_zero():
            return None
    return x


def mat_inv(mat, field: FiniteField):
    n = len(mat)
    aug = [mat[i][:] + mat_identity(field, n)[i] for i in range(n)]
    red, pivots = rref(aug, ncols=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def mat_pow(mat, e: int, field: FiniteField):
    n = len(mat)
    result = mat_identity(field, n)
    base = mat
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def charpoly(mat, field: FiniteField) -> Poly:
    """Characteristic polynomial det(xI - M) via Hessenberg reduction."""
    n = len(mat)
    if n == 0:
        return Poly(field, [field.one()])
    h = [row[:] for row in mat]
    for c in range(n - 2):
        sel = next((i for i in range(c + 1, n) if not h[i][c].is_zero()), None)
        if sel is None:
            continue
        if sel != c + 1:
            h[c + 1], h[sel] = h[sel], h[c + 1]
            for row in h:
                row[c + 1], row[sel] = row[sel], row[c + 1]
        inv = h[c + 1][c].inv()
        for i in range(c + 2, n):
            if not h[i][c].is_zero():
                f = h[i][c] * inv
                h[i] = [x - f * y for x, y in zip(h[i], h[c + 1])]
                for row in h:
                    row[c + 1] = row[c + 1] + f * row[i]
    # recurrence on leading principal minors of xI - H
    one = field.one()
    polys = [Poly(field, [one])]
    for k in range(1, n + 1):
        # p_k = (x - h[k-1][k-1]) p_{k-1} - sum_j (prod of subdiagonals) h[j][k-1] p_j
        xm = Poly(field, [-h[k - 1][k - 1], one])
        pk = xm * polys[k - 1]
        prod = one
        for j in range(k - 2, -1, -1):
            prod = prod * h[j + 1][j]
            term = polys[j] * (h[j][k - 1] * prod)
            pk = pk - term
        polys.append(pk)
    return polys[n]


def charpoly_naive(mat, field: FiniteField) -> Poly:
    """Cofactor expansion of det(xI - M); test oracle for small n."""
    n = len(mat)
    x = Poly.x(field)
    entries = [[(x if i == j else Poly.zero(field)) - Poly(field, [mat[i][j]])
                for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(cols) == 1:
            return entries[rows[0]][cols[0]]
        acc = Poly.zero(field)
        sign = 1
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = entries[rows[0]][c] * minor
            acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return det(list(range(n)), list(range(n)))
