"""Triple products on Hurwitz algebras and the V/U/K operator calculus.

The triple product of basis vectors is always a scalar multiple of a single
basis vector for the bases used here, so operators are stored column-sparse:
a matrix is a tuple of columns, each column a dict {row: coeff}.  All axiom
sweeps then run in time proportional to the number of nonzero entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .errors import MixedAlgebras, PreconditionViolated
from .hurwitz import AlgebraElement, HurwitzAlgebra

# -- column-sparse operators -------------------------------------------------


def sp_zero(n):
    return tuple({} for _ in range(n))


def sp_identity(F, n):
    return tuple({j: F.one} for j in range(n))


def sp_from_dense(F, M):
    n = len(M)
    return tuple(
        {i: M[i][j] for i in range(n) if not F.is_zero(M[i][j])} for j in range(len(M[0]))
    )


def sp_to_dense(F, A, n):
    return [tuple(col.get(i, F.zero) for col in A) for i in range(n)]


def sp_compose(F, A, B):
    """A after B, both column-sparse."""
    out = []
    for col in B:
        acc = {}
        for r, c in col.items():
            for r2, c2 in A[r].items():
                v = F.add(acc.get(r2, F.zero), F.mul(c2, c))
                if F.is_zero(v):
                    acc.pop(r2, None)
                else:
                    acc[r2] = v
        out.append(acc)
    return tuple(out)


def sp_lincomb(F, terms, n):
    """Sum of coeff * matrix over (coeff, matrix) pairs."""
    out = [dict() for _ in range(n)]
    for coeff, M in terms:
        if F.is_zero(coeff):
            continue
        for j, col in enumerate(M):
            acc = out[j]
            for r, c in col.items():
                v = F.add(acc.get(r, F.zero), F.mul(coeff, c))
                if F.is_zero(v):
                    acc.pop(r, None)
                else:
                    acc[r] = v
    return tuple(out)


def sp_sub(F, A, B):
    return sp_lincomb(F, ((F.one, A), (F.from_int(-1), B)), len(A))


def sp_apply(F, A, x):
    """Apply to a coordinate tuple, returning a coordinate tuple."""
    n = len(A)
    out = [F.zero] * n
    for j, xj in enumerate(x):
        if F.is_zero(xj):
            continue
        for r, c in A[j].items():
            out[r] = F.add(out[r], F.mul(c, xj))
    return tuple(out)


def sp_eq(F, A, B):
    for ca, cb in zip(A, B):
        keys = set(ca) | set(cb)
        for k in keys:
            if not F.is_zero(F.sub(ca.get(k, F.zero), cb.get(k, F.zero))):
                return False
    return True


def sp_is_zero(A):
    return all(not col for col in A)


# -- triple systems ----------------------------------------------------------


class TripleSystem:
    """A Hurwitz algebra viewed as a triple system.

    kind "standard" uses {x,y,z} = (x conj(y)) z + (z conj(y)) x - (z conj(x)) y;
    kind "prime" uses {x,y,z}' = (x conj(y)) z.
    """

    def __init__(self, algebra: HurwitzAlgebra, kind: str = "standard"):
        if kind not in ("standard", "prime"):
            raise ValueError(f"unknown triple system kind {kind!r}")
        self.algebra = algebra
        self.kind = kind
        self.field = algebra.field
        self.dim = algebra.dim
        self._v_table = None
        self._k_table = None

    def triple_coords(self, x, y, z):
        A = self.algebra
        yc = A.conj_coords(y)
        xy_z = A.multiply_coords(A.multiply_coords(x, yc), z)
        if self.kind == "prime":
            return xy_z
        F = self.field
        zy_x = A.multiply_coords(A.multiply_coords(z, yc), x)
        zx_y = A.multiply_coords(A.multiply_coords(z, A.conj_coords(x)), y)
        return tuple(F.sub(F.add(a, b), c) for a, b, c in zip(xy_z, zy_x, zx_y))

    def triple(self, x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
        for el in (x, y, z):
            if el.algebra is not self.algebra:
                raise MixedAlgebras("triple product of elements from another algebra")
        return self.algebra.element(self.triple_coords(x.coords, y.coords, z.coords))

    # -- operator tables, built once per system ---------------------------

    def v_table(self):
        """v_table[i][j] is the operator z -> {b_i, b_j, z}, column-sparse."""
        if self._v_table is None:
            F = self.field
            n = self.dim
            table = []
            for i in range(n):
                bi = la.unit_vector(F, n, i)
                row = []
                for j in range(n):
                    bj = la.unit_vector(F, n, j)
                    cols = []
                    for k in range(n):
                        bk = la.unit_vector(F, n, k)
                        w = self.triple_coords(bi, bj, bk)
                        cols.append({r: c for r, c in enumerate(w) if not F.is_zero(c)})
                    row.append(tuple(cols))
                table.append(row)
            self._v_table = table
        return self._v_table

    def k_table(self):
        """k_table[i][j] is the operator z -> {b_i, z, b_j} - {b_j, z, b_i}."""
        if self._k_table is None:
            F = self.field
            n = self.dim
            vt = self.v_table()
            table = []
            for i in range(n):
                row = []
                for j in range(n):
                    cols = []
                    for k in range(n):
                        col = {}
                        # {b_i, b_k, b_j} = column j of V[i][k]; likewise swapped.
                        for r, c in vt[i][k][j].items():
                            col[r] = c
                        for r, c in vt[j][k][i].items():
                            v = F.sub(col.get(r, F.zero), c)
                            if F.is_zero(v):
                                col.pop(r, None)
                            else:
                                col[r] = v
                        cols.append(col)
                    row.append(tuple(cols))
                table.append(row)
            self._k_table = table
        return self._k_table

    def v_op(self, x, y):
        """Operator z -> {x, y, z} for coordinate tuples x, y."""
        F = self.field
        vt = self.v_table()
        terms = []
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if not F.is_zero(yj):
                    terms.append((F.mul(xi, yj), vt[i][j]))
        return sp_lincomb(F, terms, self.dim)

    def u_op(self, x, z=None):
        """Operator y -> {x, y, z}; z defaults to x."""
        if z is None:
            z = x
        F = self.field
        n = self.dim
        cols = []
        for b in range(n):
            w = self.triple_coords(x, la.unit_vector(F, n, b), z)
            cols.append({r: c for r, c in enumerate(w) if not F.is_zero(c)})
        return tuple(cols)

    def k_op(self, x, y):
        F = self.field
        kt = self.k_table()
        terms = []
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if not F.is_zero(yj):
                    terms.append((F.mul(xi, yj), kt[i][j]))
        return sp_lincomb(F, terms, self.dim)

    def left_mult_op(self, a):
        return sp_from_dense(self.field, self.algebra.left_mult_matrix(tuple(a)))

    def psi_coords(self, x, y):
        """x conj(y) - y conj(x), always a skew element."""
        A = self.algebra
        return la.vec_sub(
            self.field,
            A.multiply_coords(x, A.conj_coords(y)),
            A.multiply_coords(y, A.conj_coords(x)),
        )


class PairElement:
    __slots__ = ("pair", "sign", "coords")

    def __init__(self, pair, sign, coords):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.pair = pair
        self.sign = sign
        self.coords = tuple(coords)

    def __eq__(self, other):
        return (
            isinstance(other, PairElement)
            and self.pair is other.pair
            and self.sign == other.sign
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.sign, self.coords))

    def __repr__(self):
        return f"PairElement({'+' if self.sign > 0 else '-'}, {self.coords})"


class KantorPair:
    """Two copies of a Hurwitz triple system with sign bookkeeping."""

    def __init__(self, algebra: HurwitzAlgebra):
        self.algebra = algebra
        self.system = TripleSystem(algebra, "standard")
        self.field = algebra.field
        self.dim = algebra.dim

    def element(self, sign, coords) -> PairElement:
        return PairElement(self, sign, coords)

    def basis_element(self, sign, i) -> PairElement:
        return PairElement(self, sign, la.unit_vector(self.field, self.dim, i))

    def unit(self, sign) -> PairElement:
        return PairElement(self, sign, self.algebra.unit_coords)

    def triple(self, x: PairElement, y: PairElement, z: PairElement) -> PairElement:
        if not (x.pair is self and y.pair is self and z.pair is self):
            raise MixedAlgebras("pair elements from another pair")
        if not (x.sign == z.sign == -y.sign):
            raise ValueError("pair triple product needs signs (s, -s, s)")
        return PairElement(self, x.sign, self.system.triple_coords(x.coords, y.coords, z.coords))

    def nu(self, x_minus, x_plus):
        """The inner derivation attached to (x-, x+): a (minus, plus) operator pair."""
        return (
            self.system.v_op(tuple(x_minus), tuple(x_plus)),
            sp_lincomb(
                self.field,
                ((self.field.from_int(-1), self.system.v_op(tuple(x_plus), tuple(x_minus))),),
                self.dim,
            ),
        )


# -- reports and axiom sweeps -------------------------------------------------


@dataclass
class IdentityReport:
    identity: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, witness):
        if len(self.failures) < 32:
            self.failures.append(witness)
        else:
            self.failures_truncated = True

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "cases_checked": self.cases,
            "failures": list(self.failures),
            "status": "pass" if self.passed else "fail",
        }


def verify_structurable(algebra: HurwitzAlgebra) -> IdentityReport:
    """Operator identity [V_{x,y}, V_{z,w}] = V_{V_{x,y}z, w} - V_{z, V_{y,x}w}
    on all basis quadruples."""
    ts = TripleSystem(algebra, "standard")
    return _v_commutator_sweep(ts, "structurable")


def _v_commutator_sweep(ts: TripleSystem, name: str) -> IdentityReport:
    F = ts.field
    n = ts.dim
    vt = ts.v_table()
    report = IdentityReport(name)
    minus_one = F.from_int(-1)
    for i in range(n):
        for j in range(n):
            Vij = vt[i][j]
            Vji = vt[j][i]
            for k in range(n):
                # V_{x,y} z for basis z is column k of Vij.
                vz = list(Vij[k].items())
                for l in range(n):
                    Vkl = vt[k][l]
                    lhs = sp_sub(F, sp_compose(F, Vij, Vkl), sp_compose(F, Vkl, Vij))
                    rhs_terms = [(c, vt[r][l]) for r, c in vz]
                    rhs_terms.extend(
                        (F.mul(minus_one, c), vt[k][r]) for r, c in Vji[l].items()
                    )
                    rhs = sp_lincomb(F, rhs_terms, n)
                    report.cases += 1
                    if not sp_eq(F, lhs, rhs):
                        report.record({"x": i, "y": j, "z": k, "w": l})
    return report


def verify_kantor_axioms(system, pair_mode: bool = False) -> list[IdentityReport]:
    """Both defining operator identities, checked on all basis quadruples.

    For pairs the two sign variants of each identity coincide entry by entry
    because both products are the same trilinear map; the sweep is therefore
    run once and labelled accordingly.
    """
    ts = system.system if isinstance(system, KantorPair) else system
    tag = "pair" if (pair_mode or isinstance(system, KantorPair)) else "triple"
    rep1 = _v_commutator_sweep(ts, f"kantor-{tag}-V-identity")
    F = ts.field
    n = ts.dim
    vt = ts.v_table()
    kt = ts.k_table()
    rep2 = IdentityReport(f"kantor-{tag}-K-identity")
    minus_one = F.from_int(-1)
    for i in range(n):
        for j in range(n):
            Kij = kt[i][j]
            for k in range(n):
                # K_{K_{x,y} z, w} is linear in K_{x,y} z = column k of Kij.
                kz = Kij[k]
                for l in range(n):
                    lhs = sp_lincomb(F, [(c, kt[r][l]) for r, c in kz.items()], n)
                    rhs = sp_lincomb(
                        F,
                        (
                            (F.one, sp_compose(F, Kij, vt[k][l])),
                            (F.one, sp_compose(F, vt[l][k], Kij)),
                        ),
                        n,
                    )
                    rep2.cases += 1
                    if not sp_eq(F, lhs, rhs):
                        rep2.record({"x": i, "y": j, "z": k, "w": l})
    return [rep1, rep2]


def k_operator_vanishes(system: TripleSystem) -> bool:
    """True when the system is Jordan, i.e. every K operator is zero."""
    kt = system.k_table()
    return all(sp_is_zero(kt[i][j]) for i in range(system.dim) for j in range(system.dim))


@dataclass
class ConjugateInverseResult:
    kind: str  # "none" | "unique" | "affine"
    point: tuple | None = None
    direction_basis: list = field(default_factory=list)


def conjugate_inverse(system: TripleSystem, x) -> ConjugateInverseResult:
    """Solution set of V_{x, y} = identity in y."""
    if system.kind != "standard":
        raise ValueError("conjugate inverses are defined for the standard product")
    F = system.field
    n = system.dim
    x = tuple(x)
    vt = system.v_table()
    # Row (r, c) of the linearized problem: sum_b y_b * V_{x, e_b}[r][c].
    ops = []
    for b in range(n):
        terms = [(xi, vt[i][b]) for i, xi in enumerate(x) if not F.is_zero(xi)]
        ops.append(sp_lincomb(F, terms, n))
    rows = []
    target = []
    for c in range(n):
        for r in range(n):
            rows.append(tuple(ops[b][c].get(r, F.zero) for b in range(n)))
            target.append(F.one if r == c else F.zero)
    point = la.solve(F, rows, target)
    if point is None:
        return ConjugateInverseResult("none")
    directions = la.kernel(F, rows, ncols=n)
    if directions:
        return ConjugateInverseResult("affine", point, directions)
    return ConjugateInverseResult("unique", point)


def ternary_left_identity(algebra: HurwitzAlgebra, x, a, b, c) -> bool:
    """((x a)(conj(x b)))(x c) = n(x) x((a conj(b)) c); needs t(x) = 0."""
    F = algebra.field
    x, a, b, c = tuple(x), tuple(a), tuple(b), tuple(c)
    if not F.is_zero(algebra.trace_of(x)):
        raise PreconditionViolated("left factor must be traceless")
    mul = algebra.multiply_coords
    lhs = mul(mul(mul(x, a), algebra.conj_coords(mul(x, b))), mul(x, c))
    rhs = la.vec_scale(
        F, algebra.norm_of(x), mul(x, mul(mul(a, algebra.conj_coords(b)), c))
    )
    return lhs == rhs


def hermitian_skew_split(algebra: HurwitzAlgebra):
    """Bases of the fixed and anti-fixed spaces of the involution."""
    F = algebra.field
    n = algebra.dim
    C = algebra.conj_matrix
    I = la.identity_matrix(F, n)
    herm = la.kernel(F, la.mat_sub(F, C, I), ncols=n)
    skew = la.kernel(F, la.mat_add(F, C, I), ncols=n)
    return herm, skew
