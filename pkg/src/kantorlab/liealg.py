"""The 5-graded Lie algebra built from a Kantor pair, and computations on it.

An ambient element is a pair (M, u) with M a block operator on V- ⊕ V+ and u
a vector of V- ⊕ V+.  Each graded piece is stored in its own coordinate
system: degree -2 is the Hom(V+, V-) block, degree 0 the two diagonal
blocks, degree +2 the Hom(V-, V+) block, and degrees +-1 the carrier.  The
basis of every piece is obtained by echelon reduction of the spanning
operators, grouped by degree when an abelian-group grading on the pair is
supplied, which realizes the extension of the grading to the whole algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg as la
from .errors import (
    GradingMissing,
    NotAnAutomorphism,
    NotDiagonalizable,
    PreconditionViolated,
)
from .kantor import KantorPair, IdentityReport, sp_to_dense


@dataclass
class LieBasisVector:
    z: int
    data: tuple
    label: str
    g: tuple | None = None


class GradedLieAlgebra:
    """Lie algebra with antisymmetric sparse bracket table and a 5-grading."""

    def __init__(self, field, basis, bracket_table, pair=None, g_group=None):
        self.field = field
        self.basis = basis
        self.dim = len(basis)
        self.table = bracket_table
        self.pair = pair
        self.g_group = g_group

    @property
    def z_degrees(self):
        return [b.z for b in self.basis]

    @property
    def g_degrees(self):
        if self.g_group is None:
            return None
        return [b.g for b in self.basis]

    def piece_indices(self, z):
        return [i for i, b in enumerate(self.basis) if b.z == z]

    def bracket_basis(self, i, j):
        return self.table[i][j]

    def bracket_coords(self, u, v):
        """Bracket of two coordinate tuples, returned as a dense tuple."""
        F = self.field
        out = [F.zero] * self.dim
        nz_u = [(i, c) for i, c in enumerate(u) if not F.is_zero(c)]
        nz_v = [(j, c) for j, c in enumerate(v) if not F.is_zero(c)]
        for i, ci in nz_u:
            row = self.table[i]
            for j, cj in nz_v:
                coeff = F.mul(ci, cj)
                for l, c in row[j].items():
                    out[l] = F.add(out[l], F.mul(coeff, c))
        return tuple(out)

    def main_component_dims(self):
        dims = {}
        for b in self.basis:
            dims[b.z] = dims.get(b.z, 0) + 1
        return dims

    def structure_constants_json(self):
        rows = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for l, c in self.table[i][j].items():
                    rows.append({"i": i, "j": j, "k": l, "c": repr(c)})
        return {
            "dim": self.dim,
            "labels": [b.label for b in self.basis],
            "z_degrees": self.z_degrees,
            "brackets": rows,
        }


# -- ambient block arithmetic -------------------------------------------------


def _flatten(M):
    return tuple(c for row in M for c in row)


def _reshape(F, flat, n):
    return [tuple(flat[r * n + c] for c in range(n)) for r in range(n)]


def _zero(F, n):
    return la.zero_matrix(F, n, n)


class _Builder:
    def __init__(self, pair: KantorPair, grading=None):
        self.pair = pair
        self.F = pair.field
        self.n = pair.dim
        ts = pair.system
        self.Vd = [
            [sp_to_dense(self.F, ts.v_table()[i][j], self.n) for j in range(self.n)]
            for i in range(self.n)
        ]
        self.Kd = [
            [sp_to_dense(self.F, ts.k_table()[i][j], self.n) for j in range(self.n)]
            for i in range(self.n)
        ]
        self.grading = grading

    def _deg(self, sign, i):
        if self.grading is None:
            return None
        return self.grading.degrees[(sign, i)]

    def _deg_sum(self, a, b):
        if a is None:
            return None
        return self.grading.group.add(a, b)

    def build(self):
        F, n = self.F, self.n
        basis: list[LieBasisVector] = []
        groups = {z: [] for z in (-2, -1, 0, 1, 2)}

        def add_group(z, g, rows, label):
            reduced, pivots = la.rref(F, rows)
            start = None
            vecs = []
            for k, row in enumerate(reduced):
                vecs.append(LieBasisVector(z, row, f"{label}[{k}]", g))
            groups[z].append({"g": g, "rows": reduced, "pivots": pivots, "vectors": vecs})

        def grouped_spans(z, items, label):
            # items: list of (g_degree_or_None, flat_row)
            by_deg = {}
            order = []
            for g, row in items:
                if g not in by_deg:
                    by_deg[g] = []
                    order.append(g)
            # deterministic ordering of degree classes
            if self.grading is not None:
                order = sorted(set(g for g, _ in items))
            for g, row in items:
                by_deg[g].append(row)
            for g in order:
                add_group(z, g, by_deg[g], f"{label}{'' if g is None else g}")

        neg = F.neg
        # degree -2: K operators of the minus side, in the Hom(V+, V-) slot
        items = []
        for i in range(n):
            for j in range(i + 1, n):
                g = self._deg_sum(self._deg(-1, i), self._deg(-1, j))
                items.append((g, _flatten(self.Kd[i][j])))
        grouped_spans(-2, items, "Kminus")
        # degree 0: inner derivations nu(b_i-, b_j+)
        items = []
        for i in range(n):
            for j in range(n):
                g = self._deg_sum(self._deg(-1, i), self._deg(1, j))
                A11 = self.Vd[i][j]
                A22 = [tuple(neg(c) for c in row) for row in self.Vd[j][i]]
                items.append((g, _flatten(A11) + _flatten(A22)))
        grouped_spans(0, items, "inner")
        # degree +2: K operators of the plus side
        items = []
        for i in range(n):
            for j in range(i + 1, n):
                g = self._deg_sum(self._deg(1, i), self._deg(1, j))
                items.append((g, _flatten(self.Kd[i][j])))
        grouped_spans(2, items, "Kplus")

        # assemble global basis in degree order -2, -1, 0, 1, 2
        offsets = {}
        for z in (-2, -1, 0, 1, 2):
            if z in (-1, 1):
                sign = z
                for i in range(n):
                    basis.append(
                        LieBasisVector(
                            z,
                            la.unit_vector(F, n, i),
                            f"{'Vplus' if z > 0 else 'Vminus'}[{i}]",
                            self._deg(sign, i),
                        )
                    )
                continue
            for grp in groups[z]:
                grp["offset"] = len(basis)
                basis.extend(grp["vectors"])

        self.basis = basis
        self.groups = groups
        self._index_of_carrier = {
            z: [i for i, b in enumerate(basis) if b.z == z] for z in (-1, 1)
        }
        table = [[None] * len(basis) for _ in range(len(basis))]
        for i in range(len(basis)):
            table[i][i] = {}
            for j in range(i + 1, len(basis)):
                out = self._express(self._bracket(basis[i], basis[j]))
                table[i][j] = out
                table[j][i] = {l: F.neg(c) for l, c in out.items()}
        return GradedLieAlgebra(
            F,
            basis,
            table,
            pair=self.pair,
            g_group=None if self.grading is None else self.grading.group,
        )

    # bracket of two basis vectors: returns (z_out, g_out, flat data) or None
    def _bracket(self, p: LieBasisVector, q: LieBasisVector):
        z = p.z + q.z
        if abs(z) > 2:
            return None
        F, n = self.F, self.n
        g = None
        if self.grading is not None and p.g is not None and q.g is not None:
            g = self.grading.group.add(p.g, q.g)

        def vop(x, y):
            terms = []
            out = _zero(F, n)
            for i, xi in enumerate(x):
                if F.is_zero(xi):
                    continue
                for j, yj in enumerate(y):
                    if F.is_zero(yj):
                        continue
                    c = F.mul(xi, yj)
                    M = self.Vd[i][j]
                    out = [
                        tuple(F.add(a, F.mul(c, b)) for a, b in zip(row_o, row_m))
                        for row_o, row_m in zip(out, M)
                    ]
            return out

        def kop(x, y):
            out = _zero(F, n)
            for i, xi in enumerate(x):
                if F.is_zero(xi):
                    continue
                for j, yj in enumerate(y):
                    if F.is_zero(yj) or i == j:
                        continue
                    c = F.mul(xi, yj)
                    M = self.Kd[i][j] if i < j else self.Kd[j][i]
                    if i > j:
                        c = F.neg(c)
                    out = [
                        tuple(F.add(a, F.mul(c, b)) for a, b in zip(row_o, row_m))
                        for row_o, row_m in zip(out, M)
                    ]
            return out

        zi, zj = p.z, q.z
        if (zi, zj) == (1, -1):
            A11 = _neg_mat(F, vop(q.data, p.data))
            A22 = vop(p.data, q.data)
            return (0, g, _flatten(A11) + _flatten(A22))
        if (zi, zj) == (-1, 1):
            A11 = vop(p.data, q.data)
            A22 = _neg_mat(F, vop(q.data, p.data))
            return (0, g, _flatten(A11) + _flatten(A22))
        if (zi, zj) == (1, 1):
            return (2, g, _flatten(kop(p.data, q.data)))
        if (zi, zj) == (-1, -1):
            return (-2, g, _flatten(kop(p.data, q.data)))
        if zi == 0:
            A11 = _reshape(F, p.data[: n * n], n)
            A22 = _reshape(F, p.data[n * n:], n)
            if zj == -1:
                return (-1, g, la.mat_vec(F, A11, q.data))
            if zj == 1:
                return (1, g, la.mat_vec(F, A22, q.data))
            if zj == 0:
                B11 = _reshape(F, q.data[: n * n], n)
                B22 = _reshape(F, q.data[n * n:], n)
                C11 = la.mat_sub(F, la.mat_mul(F, A11, B11), la.mat_mul(F, B11, A11))
                C22 = la.mat_sub(F, la.mat_mul(F, A22, B22), la.mat_mul(F, B22, A22))
                return (0, g, _flatten(C11) + _flatten(C22))
            if zj == 2:
                P = _reshape(F, q.data, n)
                out = la.mat_sub(F, la.mat_mul(F, A22, P), la.mat_mul(F, P, A11))
                return (2, g, _flatten(out))
            if zj == -2:
                Q = _reshape(F, q.data, n)
                out = la.mat_sub(F, la.mat_mul(F, A11, Q), la.mat_mul(F, Q, A22))
                return (-2, g, _flatten(out))
        if (zi, zj) == (2, -2):
            P = _reshape(F, p.data, n)
            Q = _reshape(F, q.data, n)
            A11 = _neg_mat(F, la.mat_mul(F, Q, P))
            A22 = la.mat_mul(F, P, Q)
            return (0, g, _flatten(A11) + _flatten(A22))
        if (zi, zj) == (2, -1):
            P = _reshape(F, p.data, n)
            return (1, g, la.mat_vec(F, P, q.data))
        if (zi, zj) == (-2, 1):
            Q = _reshape(F, p.data, n)
            return (-1, g, la.mat_vec(F, Q, q.data))
        if (zi, zj) in ((2, 2), (-2, -2), (2, 1), (-2, -1)):
            return None
        # fall back to antisymmetry
        res = self._bracket(q, p)
        if res is None:
            return None
        z_out, g_out, data = res
        return (z_out, g_out, tuple(self.F.neg(c) for c in data))

    def _express(self, res):
        if res is None:
            return {}
        z, g, data = res
        F = self.F
        if la.vec_is_zero(F, data):
            return {}
        if z in (-1, 1):
            idx = self._index_of_carrier[z]
            return {
                idx[i]: c for i, c in enumerate(data) if not F.is_zero(c)
            }
        for grp in self.groups[z]:
            if self.grading is not None and grp["g"] != g:
                continue
            coeffs = la.in_span(F, grp["rows"], grp["pivots"], data)
            if coeffs is None:
                if self.grading is not None:
                    break
                continue
            return {
                grp["offset"] + k: c for k, c in enumerate(coeffs) if not F.is_zero(c)
            }
        raise AssertionError("bracket result falls outside the graded component")


def _neg_mat(F, M):
    return [tuple(F.neg(c) for c in row) for row in M]


def kantor_construct(pair: KantorPair, grading=None) -> GradedLieAlgebra:
    """Build the 5-graded Lie algebra of a Kantor pair.

    When a grading on the pair is supplied, the basis of every graded piece
    is adapted to it and each basis vector carries the extended degree.
    """
    return _Builder(pair, grading).build()


# -- verification and structure ----------------------------------------------


def verify_antisymmetry(L: GradedLieAlgebra) -> IdentityReport:
    F = L.field
    rep = IdentityReport("bracket-antisymmetry")
    for i in range(L.dim):
        for j in range(L.dim):
            rep.cases += 1
            a = L.table[i][j]
            b = L.table[j][i]
            keys = set(a) | set(b)
            if any(not F.is_zero(F.add(a.get(k, F.zero), b.get(k, F.zero))) for k in keys):
                rep.record({"i": i, "j": j})
    return rep


def verify_jacobi(L: GradedLieAlgebra, sample: int | None = None, seed: int = 0) -> IdentityReport:
    """Check the Jacobi identity on basis triples.

    With sample=None every triple i < j < k is checked (complete, given
    antisymmetry); otherwise `sample` random triples are drawn.
    """
    F = L.field
    n = L.dim
    table = L.table
    rep = IdentityReport("jacobi" if sample is None else f"jacobi-sampled-{sample}")

    def check(i, j, k):
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            ab = table[a][b]
            for l, cl in ab.items():
                row = table[l][c]
                for m, cm in row.items():
                    v = F.add(acc.get(m, F.zero), F.mul(cl, cm))
                    if F.is_zero(v):
                        acc.pop(m, None)
                    else:
                        acc[m] = v
        return not acc

    if sample is None:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    rep.cases += 1
                    if not check(i, j, k):
                        rep.record({"i": i, "j": j, "k": k})
    else:
        rng = random.Random(seed)
        for _ in range(sample):
            i, j, k = (rng.randrange(n) for _ in range(3))
            rep.cases += 1
            if not check(i, j, k):
                rep.record({"i": i, "j": j, "k": k})
    return rep


def is_simple(L: GradedLieAlgebra) -> bool:
    """Ideal closure from every basis vector must be the whole algebra.

    False is definitive.  True certifies that no proper ideal contains any
    basis vector, which settles simplicity for the algebras built here.
    """
    F = L.field
    n = L.dim
    if n <= 1:
        return False
    for seed in range(n):
        reduced: list[tuple] = []
        pivots: list[int] = []

        def insert(v):
            for row, pj in zip(reduced, pivots):
                c = v[pj]
                if not F.is_zero(c):
                    v = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(v, row))
            j = next((k for k, a in enumerate(v) if not F.is_zero(a)), None)
            if j is None:
                return False
            inv = F.inv(v[j])
            reduced.append(tuple(F.mul(inv, a) for a in v))
            pivots.append(j)
            return True

        insert(la.unit_vector(F, n, seed))
        queue = [reduced[0]]
        full = False
        while queue and not full:
            v = queue.pop()
            for k in range(n):
                w = [F.zero] * n
                nonzero = False
                for l, cl in enumerate(v):
                    if F.is_zero(cl):
                        continue
                    for m, cm in L.table[l][k].items():
                        w[m] = F.add(w[m], F.mul(cl, cm))
                        nonzero = True
                if nonzero and insert(tuple(w)):
                    queue.append(reduced[-1])
                    if len(reduced) == n:
                        full = True
                        break
        if len(reduced) != n:
            return False
    return True


def killing_form_full(L: GradedLieAlgebra):
    """The full Killing form matrix kappa(b_i, b_j) = tr(ad b_i ad b_j)."""
    F = L.field
    n = L.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero
            for k in range(n):
                jk = L.table[j][k]
                for l, c in jk.items():
                    c2 = L.table[i][l].get(k)
                    if c2 is not None:
                        acc = F.add(acc, F.mul(c, c2))
            row.append(acc)
        out.append(tuple(row))
    return out


class FiveGradedPair:
    """The Kantor pair read off a 5-graded Lie algebra: {x,y,z} = [[x,y],z]."""

    def __init__(self, L: GradedLieAlgebra):
        if not any(b.z != 0 for b in L.basis) and L.dim > 0:
            raise GradingMissing("algebra carries no 5-grading")
        self.L = L
        self.field = L.field
        self.plus = L.piece_indices(1)
        self.minus = L.piece_indices(-1)

    def _embed(self, sign, x):
        idx = self.plus if sign > 0 else self.minus
        F = self.field
        out = [F.zero] * self.L.dim
        for i, c in zip(idx, x):
            out[i] = c
        return tuple(out)

    def _project(self, sign, v):
        idx = self.plus if sign > 0 else self.minus
        F = self.field
        keep = set(idx)
        for i, c in enumerate(v):
            if i not in keep and not F.is_zero(c):
                raise AssertionError("triple product leaves the degree +-1 pieces")
        return tuple(v[i] for i in idx)

    def triple(self, sign, x, y, z):
        """x, z live in the `sign` piece, y in the opposite piece."""
        L = self.L
        inner = L.bracket_coords(self._embed(sign, x), self._embed(-sign, y))
        return self._project(sign, L.bracket_coords(inner, self._embed(sign, z)))


def jordan_pair_top_check(L: GradedLieAlgebra) -> dict:
    """The pair carried by the extreme pieces is a Jordan pair of quadric type.

    Verifies on the pieces of degree +-2: the K operators vanish, the halved
    U-operator identity for left multiplications by skew elements, and the
    match with the quadric-form pair on the skew subspace.  Returns a summary
    including k = dim of the extreme piece.
    """
    pair = L.pair
    if pair is None:
        raise PreconditionViolated("need the originating Kantor pair")
    F = L.field
    if F.characteristic != 0:
        raise PreconditionViolated("requires characteristic 0")
    if pair.dim < 2:
        raise PreconditionViolated("requires carrier dimension > 1")
    i_el = F.sqrt_minus_one()
    n = pair.dim
    algebra = pair.algebra
    plus2 = L.piece_indices(2)
    minus2 = L.piece_indices(-2)
    k = len(plus2)

    def embed(indices, coords):
        out = [F.zero] * L.dim
        for i, c in zip(indices, coords):
            out[i] = c
        return tuple(out)

    def triple22(x, y, z):
        return L.bracket_coords(L.bracket_coords(x, y), z)

    failures = []
    # (i) K vanishes on the extreme pair: {x, z, y} = {y, z, x}.
    cases = 0
    for a in plus2:
        ea = la.unit_vector(F, L.dim, a)
        for b in minus2:
            eb = la.unit_vector(F, L.dim, b)
            for c in plus2:
                ec = la.unit_vector(F, L.dim, c)
                cases += 1
                lhs = triple22(ea, eb, ec)
                rhs = triple22(ec, eb, ea)
                if lhs != rhs:
                    failures.append({"check": "K-zero", "witness": (a, b, c)})
    # Embed left multiplications by skew vectors into the extreme pieces.
    from .kantor import hermitian_skew_split

    _, skew = hermitian_skew_split(algebra)
    solver_p = piece_solver(L, 2)
    solver_m = piece_solver(L, -2)

    def iota(zpiece, solver, x):
        M = algebra.left_mult_matrix(tuple(x))
        coeffs = solver.express(_flatten(M))
        if coeffs is None:
            raise AssertionError("left multiplication is not in the K span")
        idx = plus2 if zpiece == 2 else minus2
        return embed(idx, coeffs)

    # (ii) half-U identity for skew basis pairs.
    for x in skew:
        ix = iota(2, solver_p, x)
        for y in skew:
            iy = iota(-2, solver_m, y)
            cases += 1
            lhs = triple22(ix, iy, ix)
            nx = algebra.norm_of(x)
            nxy = algebra.polar_of(x, y)
            target = la.vec_sub(
                F, la.vec_scale(F, nx, y), la.vec_scale(F, nxy, tuple(x))
            )
            rhs = la.vec_scale(F, F.from_int(2), iota(2, solver_p, target))
            if lhs != rhs:
                failures.append({"check": "half-U", "witness": "skew pair"})
    # (iii) the map x -> i * iota(L_x) intertwines with the quadric pair.
    for x in skew:
        px = la.vec_scale(F, i_el, iota(2, solver_p, x))
        for y in skew:
            py = la.vec_scale(F, i_el, iota(-2, solver_m, y))
            cases += 1
            lhs = la.vec_scale(F, F.half(), triple22(px, py, px))
            qxy = algebra.polar_of(x, y)
            qx = algebra.norm_of(x)
            target = la.vec_sub(F, la.vec_scale(F, qxy, tuple(x)), la.vec_scale(F, qx, y))
            rhs = la.vec_scale(F, i_el, iota(2, solver_p, target))
            if lhs != rhs:
                failures.append({"check": "quadric-map", "witness": "skew pair"})
    return {
        "k": k,
        "skew_dim": len(skew),
        "cases": cases,
        "failures": failures,
        "passed": not failures and k == len(skew),
    }


class PieceSolver:
    """Express ambient vectors of one graded piece in its stored basis."""

    def __init__(self, F, rows):
        self.F = F
        self.k = len(rows)
        if not self.k:
            self.reduced, self.pivots = [], []
            return
        width = len(rows[0])
        aug = [tuple(r) + la.unit_vector(F, self.k, i) for i, r in enumerate(rows)]
        reduced, pivots = la.rref(F, aug)
        if len(reduced) != self.k or any(p >= width for p in pivots):
            raise ValueError("piece basis rows are dependent")
        self.width = width
        self.reduced = reduced
        self.pivots = pivots

    def express(self, v):
        """Coefficients over the original rows, or None if outside the span."""
        F = self.F
        v = tuple(v)
        coeffs = [F.zero] * self.k
        for row, j in zip(self.reduced, self.pivots):
            c = v[j]
            if F.is_zero(c):
                continue
            v = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(v, row[: self.width]))
            for t in range(self.k):
                coeffs[t] = F.add(coeffs[t], F.mul(c, row[self.width + t]))
        if not la.vec_is_zero(F, v):
            return None
        return coeffs


def piece_solver(L: GradedLieAlgebra, z) -> PieceSolver:
    return PieceSolver(L.field, [b.data for b in L.basis if b.z == z])


def extend_automorphism(L: GradedLieAlgebra, phi_plus, phi_minus, verify: bool = True):
    """Lift a pair automorphism to the Lie algebra; columns returned sparse.

    The lift acts by (phi-, phi+) on the vector pieces and by conjugation on
    the operator pieces.  With verify=True the bracket is checked on all
    basis pairs and the restriction to the vector pieces is confirmed.
    """
    F = L.field
    n = len(phi_plus)
    inv_p = la.invert(F, phi_plus)
    inv_m = la.invert(F, phi_minus)
    if inv_p is None or inv_m is None:
        raise NotAnAutomorphism("components are not invertible")
    solvers = {z: piece_solver(L, z) for z in (-2, 0, 2)}
    idx_of = {z: L.piece_indices(z) for z in (-2, -1, 0, 1, 2)}

    cols = []
    for b in L.basis:
        if b.z == 1:
            img = la.mat_vec(F, phi_plus, b.data)
            col = {idx_of[1][i]: c for i, c in enumerate(img) if not F.is_zero(c)}
        elif b.z == -1:
            img = la.mat_vec(F, phi_minus, b.data)
            col = {idx_of[-1][i]: c for i, c in enumerate(img) if not F.is_zero(c)}
        else:
            if b.z == 0:
                A11 = _reshape(F, b.data[: n * n], n)
                A22 = _reshape(F, b.data[n * n:], n)
                B11 = la.mat_mul(F, la.mat_mul(F, phi_minus, A11), inv_m)
                B22 = la.mat_mul(F, la.mat_mul(F, phi_plus, A22), inv_p)
                flat = _flatten(B11) + _flatten(B22)
            elif b.z == 2:
                P = _reshape(F, b.data, n)
                flat = _flatten(la.mat_mul(F, la.mat_mul(F, phi_plus, P), inv_m))
            else:
                Q = _reshape(F, b.data, n)
                flat = _flatten(la.mat_mul(F, la.mat_mul(F, phi_minus, Q), inv_p))
            coeffs = solvers[b.z].express(flat)
            if coeffs is None:
                raise NotAnAutomorphism("image leaves the graded piece")
            col = {
                idx_of[b.z][k]: c for k, c in enumerate(coeffs) if not F.is_zero(c)
            }
        cols.append(col)

    if verify:
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = {}
                for l, c in L.table[i][j].items():
                    for m, cm in cols[l].items():
                        v = F.add(lhs.get(m, F.zero), F.mul(c, cm))
                        if F.is_zero(v):
                            lhs.pop(m, None)
                        else:
                            lhs[m] = v
                rhs = {}
                for a, ca in cols[i].items():
                    for b2, cb in cols[j].items():
                        coeff = F.mul(ca, cb)
                        for m, cm in L.table[a][b2].items():
                            v = F.add(rhs.get(m, F.zero), F.mul(coeff, cm))
                            if F.is_zero(v):
                                rhs.pop(m, None)
                            else:
                                rhs[m] = v
                keys = set(lhs) | set(rhs)
                if any(not F.is_zero(F.sub(lhs.get(k, F.zero), rhs.get(k, F.zero))) for k in keys):
                    raise NotAnAutomorphism(f"bracket not preserved at pair ({i},{j})")
    return cols


@dataclass
class RootDatum:
    h_indices: list
    roots: list
    basis_root: dict
    killing_h: list
    pairing_matrix: list = field(default_factory=list)

    def pairing(self, alpha, beta, field):
        """(alpha | beta) via the inverse Killing form on the subalgebra."""
        v = la.mat_vec(field, self.pairing_matrix, beta)
        acc = field.zero
        for a, b in zip(alpha, v):
            acc = field.add(acc, field.mul(a, b))
        return acc


def cartan_subalgebra_and_roots(L: GradedLieAlgebra) -> RootDatum:
    """Roots of the degree-zero component of a fine group grading.

    Requires the algebra to have been built with an extended grading whose
    zero component is a Cartan subalgebra; every nonzero-degree component
    must be a simultaneous eigenspace of its adjoint action.
    """
    if L.g_group is None:
        raise GradingMissing("algebra carries no group grading")
    F = L.field
    if F.characteristic != 0:
        raise PreconditionViolated("root extraction requires characteristic 0")
    zero = L.g_group.zero()
    h_idx = [i for i, b in enumerate(L.basis) if b.g == zero]
    # H must be abelian.
    for i in h_idx:
        for j in h_idx:
            if L.table[i][j]:
                raise NotDiagonalizable("degree-zero component is not abelian")
    roots = []
    basis_root = {}
    for i, b in enumerate(L.basis):
        if b.g == zero:
            continue
        alpha = []
        for h in h_idx:
            col = L.table[h][i]
            extra = [l for l in col if l != i]
            if extra:
                raise NotDiagonalizable(f"ad H does not act diagonally on basis vector {i}")
            alpha.append(col.get(i, F.zero))
        alpha = tuple(alpha)
        basis_root[i] = alpha
        roots.append(alpha)
    m = len(h_idx)
    killing = [[F.zero] * m for _ in range(m)]
    for alpha in roots:
        for a in range(m):
            if F.is_zero(alpha[a]):
                continue
            for b in range(m):
                killing[a][b] = F.add(killing[a][b], F.mul(alpha[a], alpha[b]))
    killing = [tuple(row) for row in killing]
    inv = la.invert(F, killing)
    if inv is None:
        raise NotDiagonalizable("Killing form degenerate on the zero component")
    return RootDatum(h_idx, roots, basis_root, killing, inv)
