"""Exact linear algebra over any field descriptor.

Vectors are tuples of raw field elements, matrices are lists (or tuples) of
row tuples.  Everything routes scalar work through the field descriptor's
methods, so the same code runs over Q, Q(zeta8), GF(p) and GF(p^2).
"""

from __future__ import annotations


def zero_vector(F, n):
    return (F.zero,) * n


def unit_vector(F, n, i):
    return tuple(F.one if j == i else F.zero for j in range(n))


def vec_add(F, u, v):
    add = F.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    sub = F.sub
    return tuple(sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, u):
    mul = F.mul
    return tuple(mul(c, a) for a in u)

def vec_neg(F, u):
    neg = F.neg
    return tuple(neg(a) for a in u)


def vec_is_zero(F, u):
    zero = F.is_zero
    return all(zero(a) for a in u)


def identity_matrix(F, n):
    return [unit_vector(F, n, i) for i in range(n)]


def zero_matrix(F, m, n):
    return [zero_vector(F, n) for _ in range(m)]


def transpose(A):
    return [tuple(col) for col in zip(*A)]


def mat_vec(F, A, v):
    add, mul, zero = F.add, F.mul, F.zero
    iszero = F.is_zero
    out = []
    for row in A:
        acc = zero
        for a, x in zip(row, v):
            if not iszero(a) and not iszero(x):
                acc = add(acc, mul(a, x))
        out.append(acc)
    return tuple(out)


def mat_mul(F, A, B):
    add, mul, zero = F.add, F.mul, F.zero
    iszero = F.is_zero
    Bt = list(zip(*B))
    out = []
    for row in A:
        nz = [(j, a) for j, a in enumerate(row) if not iszero(a)]
        new_row = []
        for col in Bt:
            acc = zero
            for j, a in nz:
                b = col[j]
                if not iszero(b):
                    acc = add(acc, mul(a, b))
            new_row.append(acc)
        out.append(tuple(new_row))
    return out


def mat_add(F, A, B):
    return [vec_add(F, r, s) for r, s in zip(A, B)]


def mat_sub(F, A, B):
    return [vec_sub(F, r, s) for r, s in zip(A, B)]


def mat_scale(F, c, A):
    return [vec_scale(F, c, r) for r in A]


def mat_eq(F, A, B):
    if len(A) != len(B):
        return False
    for r, s in zip(A, B):
        if len(r) != len(s):
            return False
        for a, b in zip(r, s):
            if not F.is_zero(F.sub(a, b)):
                return False
    return True


def rref(F, rows):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns); zero rows are dropped, pivots are
    scaled to 1 and cleared above and below, so the result is the canonical
    basis of the row space.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return [], []
    reduced: list[tuple] = []
    pivots: list[int] = []
    for row in rows:
        for p, j in zip(reduced, pivots):
            c = row[j]
            if not F.is_zero(c):
                row = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(row, p))
        j = next((k for k, a in enumerate(row) if not F.is_zero(a)), None)
        if j is None:
            continue
        inv = F.inv(row[j])
        row = tuple(F.mul(inv, a) for a in row)
        for idx, (p, pj) in enumerate(zip(reduced, pivots)):
            c = p[j]
            if not F.is_zero(c):
                reduced[idx] = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(p, row))
        reduced.append(row)
        pivots.append(j)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [reduced[i] for i in order], [pivots[i] for i in order]


def rank(F, rows):
    return len(rref(F, rows)[0])


def in_span(F, reduced, pivots, v):
    """Coefficients of v over the echelon rows, or None if v is outside the span."""
    coeffs = []
    v = tuple(v)
    for row, j in zip(reduced, pivots):
        c = v[j]
        coeffs.append(c)
        if not F.is_zero(c):
            v = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(v, row))
    if not vec_is_zero(F, v):
        return None
    return coeffs


def span_contains(F, reduced, pivots, v):
    return in_span(F, reduced, pivots, v) is not None


def spans_equal(F, rows_a, rows_b):
    ra, pa = rref(F, rows_a)
    rb, pb = rref(F, rows_b)
    return ra == rb and pa == pb


def kernel(F, A, ncols=None):
    """Basis of the right kernel {v : A v = 0}."""
    if not A:
        return [] if ncols is None else identity_matrix(F, ncols)
    n = len(A[0])
    reduced, pivots = rref(F, A)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for j in free:
        v = [F.zero] * n
        v[j] = F.one
        for row, pj in zip(reduced, pivots):
            v[pj] = F.neg(row[j])
        basis.append(tuple(v))
    return basis


def solve(F, A, b):
    """One solution of A x = b, or None if inconsistent."""
    if not A:
        return None
    n = len(A[0])
    aug = [tuple(row) + (bi,) for row, bi in zip(A, b)]
    reduced, pivots = rref(F, aug)
    x = [F.zero] * n
    for row, j in zip(reduced, pivots):
        if j == n:
            return None
        x[j] = row[n]
    return tuple(x)


def invert(F, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    aug = [tuple(A[i]) + unit_vector(F, n, i) for i in range(n)]
    reduced, pivots = rref(F, aug)
    if len(reduced) != n or pivots != list(range(n)):
        return None
    return [row[n:] for row in reduced]


def trace(F, A):
    acc = F.zero
    for i, row in enumerate(A):
        acc = F.add(acc, row[i])
    return acc
