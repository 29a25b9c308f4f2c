"""Smith normal form over the integers and linear solving built on it.

The normal form is computed with exact arbitrary-precision arithmetic.  The
pivot at each stage is chosen as a nonzero entry of minimal absolute value in
the remaining block, which keeps intermediate entries small and makes the
computation deterministic.
"""

from __future__ import annotations


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, c):
    row_s = M[src]
    row_d = M[dst]
    for k in range(len(row_d)):
        row_d[k] += c * row_s[k]


def _add_col(M, dst, src, c):
    for row in M:
        row[dst] += c * row[src]


def smith_normal_form(M):
    """Return (U, S, V) with U*M*V = S, U and V unimodular.

    S is diagonal with nonnegative entries d_1 | d_2 | ... | d_r followed by
    zeros.  M is any list of equal-length integer rows (possibly empty).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = [list(map(int, row)) for row in M]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def pivot_at(t):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                a = row[j]
                if a != 0 and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        return best
        return best

    t = 0
    while t < min(m, n):
        best = pivot_at(t)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(S, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(S, t, pj)
            _swap_cols(V, t, pj)

        while True:
            # Clear column t with row operations.
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    if q:
                        _add_row(S, i, t, -q)
                        _add_row(U, i, t, -q)
                    if S[i][t] != 0:
                        _swap_rows(S, t, i)
                        _swap_rows(U, t, i)
                        dirty = True
            if dirty:
                continue
            # Clear row t with column operations.
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    if q:
                        _add_col(S, j, t, -q)
                        _add_col(V, j, t, -q)
                    if S[t][j] != 0:
                        _swap_cols(S, t, j)
                        _swap_cols(V, t, j)
                        dirty = True
            if not dirty and all(S[i][t] == 0 for i in range(t + 1, m)):
                break

        # Enforce divisibility: fold any non-multiple into the pivot block.
        d = S[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_row(S, t, offender, 1)
            _add_row(U, t, offender, 1)
            continue

        if d < 0:
            for j in range(n):
                S[t][j] = -S[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    return U, S, V


def diagonal(S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def solve_integer(A, b):
    """One integer solution x of A x = b, or None.

    A is a list of integer rows, b a list of integers of matching length.
    """
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    U, S, V = smith_normal_form(A)
    # A x = b  <=>  S (V^-1 x) = U b; solve S y = U b, then x = V y.
    Ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    r = min(m, n)
    for i in range(r):
        d = S[i][i]
        if d == 0:
            if Ub[i] != 0:
                return None
        else:
            if Ub[i] % d != 0:
                return None
            y[i] = Ub[i] // d
    for i in range(r, m):
        if Ub[i] != 0:
            return None
    return [sum(V[i][k] * y[k] for k in range(n)) for i in range(n)]


def solve_mod(A, b, modulus):
    """One solution x of A x = b (mod modulus), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(row) + [modulus if j == i else 0 for j in range(m)] for i, row in enumerate(A)]
    x = solve_integer(aug, b)
    if x is None:
        return None
    return [v % modulus for v in x[:n]]
