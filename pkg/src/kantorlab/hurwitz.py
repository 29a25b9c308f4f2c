"""Hurwitz algebras of dimensions 1, 2, 4, 8 in their two standard bases.

Each algebra stores its multiplication table plus data derived from it: the
trace of every basis vector, the involution, and the Gram matrix of the polar
norm form.  The derivation only uses the generic quadratic relation
x^2 - t(x) x + n(x) 1 = 0, so transcription mistakes in a table surface as
construction errors rather than silent bad data.
"""

from __future__ import annotations

from . import linalg as la
from .errors import BadDimension, MixedAlgebras, NotAvailable

HURWITZ_DIMS = (1, 2, 4, 8)

CARTAN_LABELS_8 = ("e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3")
# Which positions of the 8-dimensional Cartan basis survive in each dimension.
CARTAN_SUBBASIS = {1: (0,), 2: (0, 1), 4: (0, 1, 2, 5), 8: tuple(range(8))}


def cd_sign_exponent(g: int, h: int) -> int:
    """Exponent of the Cayley-Dickson structure sign for bitmask indices g, h.

    Bit k of an index is the coefficient of the k-th group generator; the
    generators enter the sign recipe in the order (second, first, third).
    """
    g1, g2, g3 = (g >> 1) & 1, g & 1, (g >> 2) & 1
    h1, h2, h3 = (h >> 1) & 1, h & 1, (h >> 2) & 1
    psi = h1 * g2 * g3 + g1 * h2 * g3 + g1 * g2 * h3
    psi += g1 * (h1 + h2 + h3) + g2 * (h2 + h3) + g3 * h3
    return psi % 2


def cd_sign(g: int, h: int) -> int:
    """The structure sign: x_g x_h = cd_sign(g, h) x_{g xor h}."""
    return -1 if cd_sign_exponent(g, h) else 1


def parity(g: int) -> int:
    """ord(g) - 1 for an element of an elementary abelian 2-group: 0 iff g = 0."""
    return 0 if g == 0 else 1


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise MixedAlgebras("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, la.vec_add(self.algebra.field, self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, la.vec_sub(self.algebra.field, self.coords, other.coords))

    def __neg__(self):
        return AlgebraElement(self.algebra, la.vec_neg(self.algebra.field, self.coords))

    def __mul__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.algebra.multiply_coords(self.coords, other.coords))

    def scale(self, c):
        return AlgebraElement(self.algebra, la.vec_scale(self.algebra.field, c, self.coords))

    def conj(self):
        return AlgebraElement(self.algebra, self.algebra.conj_coords(self.coords))

    def norm(self):
        return self.algebra.norm_of(self.coords)

    def trace(self):
        return self.algebra.trace_of(self.coords)

    def polar(self, other):
        self._check(other)
        return self.algebra.polar_of(self.coords, other.coords)

    def is_zero(self):
        return la.vec_is_zero(self.algebra.field, self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        A = self.algebra
        terms = [f"({c!r})*{lbl}" for c, lbl in zip(self.coords, A.labels) if not A.field.is_zero(c)]
        return " + ".join(terms) if terms else "0"


class HurwitzAlgebra:
    """A unital composition algebra given by structure constants in a fixed basis."""

    def __init__(self, field, basis_kind, labels, table, unit_coords):
        self.field = field
        self.basis_kind = basis_kind
        self.labels = tuple(labels)
        self.dim = len(labels)
        self.table = [[tuple(v) for v in row] for row in table]
        self.unit_coords = tuple(unit_coords)
        self.sparse_table = [
            [
                tuple((l, c) for l, c in enumerate(v) if not field.is_zero(c))
                for v in row
            ]
            for row in self.table
        ]
        self._derive_quadratic_data()
        self._left_cache = {}

    # -- construction-time derivations -------------------------------------

    def _derive_quadratic_data(self):
        F = self.field
        n = self.dim
        unit = self.unit_coords
        for i in range(n):
            e_i = la.unit_vector(F, n, i)
            if self.multiply_coords(unit, e_i) != e_i or self.multiply_coords(e_i, unit) != e_i:
                raise ValueError("unit vector does not act as identity")
        traces = []
        norms = []
        for i in range(n):
            b = la.unit_vector(F, n, i)
            sq = self.multiply_coords(b, b)
            # Solve b^2 = t*b - n*1 exactly; a multiple of the unit needs the
            # special form t = 2c, n = c^2.
            scal = self._as_unit_multiple(b)
            if scal is not None:
                traces.append(F.mul(F.from_int(2), scal))
                norms.append(F.mul(scal, scal))
                continue
            A = [(b[k], F.neg(unit[k])) for k in range(n)]
            sol = la.solve(F, A, sq)
            if sol is None:
                raise ValueError(f"basis vector {self.labels[i]} fails the quadratic relation")
            traces.append(sol[0])
            norms.append(sol[1])
        self.basis_traces = tuple(traces)
        self.basis_norms = tuple(norms)
        self.conj_matrix = [
            tuple(
                F.sub(F.mul(traces[i], unit[k]), F.one if k == i else F.zero)
                for i in range(n)
            )
            for k in range(n)
        ]
        gram = []
        for i in range(n):
            row = []
            bi = la.unit_vector(F, n, i)
            for j in range(n):
                bj = la.unit_vector(F, n, j)
                w = la.vec_add(
                    F,
                    self.multiply_coords(bi, self.conj_coords(bj)),
                    self.multiply_coords(bj, self.conj_coords(bi)),
                )
                c = self._as_unit_multiple(w)
                if c is None:
                    raise ValueError("polar form is not scalar on basis pair "
                                     f"({self.labels[i]}, {self.labels[j]})")
                row.append(c)
            gram.append(tuple(row))
        self.polar_gram = gram

    def _as_unit_multiple(self, v):
        F = self.field
        unit = self.unit_coords
        c = None
        for uk, vk in zip(unit, v):
            if not F.is_zero(uk):
                c = F.div(vk, uk)
                break
        if c is None:
            return None
        for uk, vk in zip(unit, v):
            if not F.is_zero(F.sub(vk, F.mul(c, uk))):
                return None
        return c

    # -- elements -----------------------------------------------------------

    def element(self, coords) -> AlgebraElement:
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return AlgebraElement(self, coords)

    def basis_element(self, i) -> AlgebraElement:
        return AlgebraElement(self, la.unit_vector(self.field, self.dim, i))

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit_coords)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, la.zero_vector(self.field, self.dim))

    def from_label(self, label) -> AlgebraElement:
        return self.basis_element(self.labels.index(label))

    def random_element(self, rng) -> AlgebraElement:
        return self.element(self.field.random(rng) for _ in range(self.dim))

    # -- coordinate-level operations ----------------------------------------

    def multiply_coords(self, x, y):
        F = self.field
        add, mul, iszero = F.add, F.mul, F.is_zero
        out = [F.zero] * self.dim
        sparse = self.sparse_table
        for i, xi in enumerate(x):
            if iszero(xi):
                continue
            row = sparse[i]
            for j, yj in enumerate(y):
                if iszero(yj):
                    continue
                for l, c in row[j]:
                    out[l] = add(out[l], mul(mul(xi, yj), c))
        return tuple(out)

    def conj_coords(self, x):
        return la.mat_vec(self.field, self.conj_matrix, x)

    def trace_of(self, x):
        F = self.field
        acc = F.zero
        for t, c in zip(self.basis_traces, x):
            if not F.is_zero(c):
                acc = F.add(acc, F.mul(t, c))
        return acc

    def polar_of(self, x, y):
        F = self.field
        acc = F.zero
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            row = self.polar_gram[i]
            for j, yj in enumerate(y):
                if not F.is_zero(yj) and not F.is_zero(row[j]):
                    acc = F.add(acc, F.mul(F.mul(xi, yj), row[j]))
        return acc

    def norm_of(self, x):
        return self.field.mul(self.field.half(), self.polar_of(x, x))

    def left_mult_matrix(self, x):
        x = tuple(x)
        cached = self._left_cache.get(x)
        if cached is not None:
            return cached
        F = self.field
        cols = [self.multiply_coords(x, la.unit_vector(F, self.dim, i)) for i in range(self.dim)]
        M = [tuple(col[k] for col in cols) for k in range(self.dim)]
        if len(self._left_cache) < 4096:
            self._left_cache[x] = M
        return M

    def right_mult_matrix(self, x):
        F = self.field
        cols = [self.multiply_coords(la.unit_vector(F, self.dim, i), x) for i in range(self.dim)]
        return [tuple(col[k] for col in cols) for k in range(self.dim)]

    def describe(self) -> dict:
        return {"dim": self.dim, "field": self.field.describe(), "basis": self.basis_kind}

    def __repr__(self):
        return f"HurwitzAlgebra(dim={self.dim}, basis={self.basis_kind}, field={self.field!r})"


def _check_dim(dim):
    if dim not in HURWITZ_DIMS:
        raise BadDimension(f"Hurwitz algebras exist only in dimensions {HURWITZ_DIMS}, not {dim}")


def cayley_dickson(dim, field) -> HurwitzAlgebra:
    """The split Hurwitz algebra on the group-indexed orthonormal basis."""
    _check_dim(dim)
    F = field
    table = []
    for g in range(dim):
        row = []
        for h in range(dim):
            coeff = F.from_int(cd_sign(g, h))
            row.append(tuple(coeff if l == g ^ h else F.zero for l in range(dim)))
        table.append(row)
    labels = [f"x{g}" for g in range(dim)]
    unit = la.unit_vector(F, dim, 0)
    return HurwitzAlgebra(field, "cayley_dickson", labels, table, unit)


def _cartan_table_entry(i, j):
    """Product of 8-dimensional Cartan basis vectors as a list of (index, sign)."""
    E1, E2, U1, U2, U3, V1, V2, V3 = range(8)
    us = (U1, U2, U3)
    vs = (V1, V2, V3)
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (0, 2, 1): -1, (2, 1, 0): -1}
    if i == E1:
        if j == E1:
            return [(E1, 1)]
        if j in us:
            return [(j, 1)]
        return []
    if i == E2:
        if j == E2:
            return [(E2, 1)]
        if j in vs:
            return [(j, 1)]
        return []
    if i in us:
        a = us.index(i)
        if j == E2:
            return [(i, 1)]
        if j in us:
            b = us.index(j)
            if a == b:
                return []
            c = 3 - a - b
            return [(vs[c], eps[(a, b, c)])]
        if j in vs:
            return [(E1, -1)] if us.index(i) == vs.index(j) else []
        return []
    # i is one of the v's
    a = vs.index(i)
    if j == E1:
        return [(i, 1)]
    if j in vs:
        b = vs.index(j)
        if a == b:
            return []
        c = 3 - a - b
        return [(us[c], eps[(a, b, c)])]
    if j in us:
        return [(E2, -1)] if vs.index(i) == us.index(j) else []
    return []


def cartan(dim, field) -> HurwitzAlgebra:
    """The split Hurwitz algebra on the Cartan basis (e's, u's and v's)."""
    _check_dim(dim)
    F = field
    keep = CARTAN_SUBBASIS[dim]
    pos = {k: idx for idx, k in enumerate(keep)}
    table = []
    for i in keep:
        row = []
        for j in keep:
            entry = _cartan_table_entry(i, j)
            coords = [F.zero] * dim
            for l, s in entry:
                if l not in pos:
                    raise AssertionError("sub-basis is not closed under multiplication")
                coords[pos[l]] = F.from_int(s)
            row.append(tuple(coords))
        table.append(row)
    labels = [CARTAN_LABELS_8[k] for k in keep]
    if dim == 1:
        unit = (F.one,)
    else:
        unit = tuple(F.one if k < 2 else F.zero for k in range(dim))
    return HurwitzAlgebra(field, "cartan", labels, table, unit)


# -- basis conversions ------------------------------------------------------

def _conversion_columns(dim, field):
    """CD coordinates of each Cartan basis vector, as columns."""
    F = field
    i = F.sqrt_minus_one()
    h = F.half()
    ih = F.mul(i, h)
    nih = F.neg(ih)
    nh = F.neg(h)
    # Full 8-dimensional recipe; columns indexed by Cartan position 0..7.
    full = {
        0: {0: h, 1: ih},          # e1 = (x0 + i x1)/2
        1: {0: h, 1: nih},         # e2 = (x0 - i x1)/2
        2: {2: h, 3: ih},          # u1 = (x2 + i x3)/2
        3: {4: h, 5: nih},         # u2 = (x4 - i x5)/2
        4: {6: nh, 7: ih},         # u3 = -(x6 - i x7)/2
        5: {2: h, 3: nih},         # v1 = (x2 - i x3)/2
        6: {4: h, 5: ih},          # v2 = (x4 + i x5)/2
        7: {6: nh, 7: nih},        # v3 = -(x6 + i x7)/2
    }
    keep = CARTAN_SUBBASIS[dim]
    cols = []
    for k in keep:
        col = [F.zero] * dim
        for g, c in full[k].items():
            if g >= dim:
                raise AssertionError("conversion leaves the subalgebra")
            col[g] = c
        cols.append(tuple(col))
    return cols


def cartan_to_cd_matrix(dim, field):
    """Matrix sending Cartan coordinates to CD coordinates."""
    _check_dim(dim)
    if dim == 1:
        return la.identity_matrix(field, 1)
    cols = _conversion_columns(dim, field)
    return [tuple(col[k] for col in cols) for k in range(dim)]


def cd_to_cartan_matrix(dim, field):
    """Matrix sending CD coordinates to Cartan coordinates."""
    M = cartan_to_cd_matrix(dim, field)
    inv = la.invert(field, M)
    if inv is None:
        raise AssertionError("conversion matrix is singular")
    return inv


def convert_element(x: AlgebraElement, target: HurwitzAlgebra) -> AlgebraElement:
    """Carry an element across the CD/Cartan basis change."""
    src = x.algebra
    if src.dim != target.dim or src.field != target.field:
        raise MixedAlgebras("conversion requires matching dimension and field")
    if src.basis_kind == target.basis_kind:
        return target.element(x.coords)
    if src.basis_kind == "cartan" and target.basis_kind == "cayley_dickson":
        M = cartan_to_cd_matrix(src.dim, src.field)
    elif src.basis_kind == "cayley_dickson" and target.basis_kind == "cartan":
        M = cd_to_cartan_matrix(src.dim, src.field)
    else:
        raise MixedAlgebras(f"no conversion from {src.basis_kind} to {target.basis_kind}")
    return target.element(la.mat_vec(src.field, M, x.coords))


# -- the diagonalizing basis derived from the CD basis ----------------------

def v_basis_coords(algebra: HurwitzAlgebra, g: int, alpha: int):
    """CD coordinates of the vector v(g, alpha).

    g indexes the subgroup complementary to the distinguished order-2 factor,
    alpha is 0 for the trivial character and 1 for the sign character.
    """
    if algebra.basis_kind != "cayley_dickson":
        raise ValueError("v-basis is defined from a CD basis")
    if algebra.dim < 2:
        raise BadDimension("v-basis needs dimension at least 2")
    F = algebra.field
    i = F.sqrt_minus_one()
    s2 = F.sqrt_two()
    quarter = F.mul(F.half(), F.half())
    scale = F.mul(s2, quarter)
    coords = [F.zero] * algebra.dim
    for a in (0, 1):
        sign = F.from_int((-1) ** (alpha * a) * cd_sign(a, g << 1))
        coeff = F.mul(scale, sign)
        if a == 1:
            coeff = F.mul(coeff, i)
        coords[(g << 1) | a] = coeff
    return tuple(coords)


def v_basis_element(algebra, g, alpha) -> AlgebraElement:
    return algebra.element(v_basis_coords(algebra, g, alpha))


def v_basis_matrix(algebra):
    """Columns v(g, alpha) in CD coordinates, ordered g-major then alpha."""
    half = algebra.dim // 2
    cols = [v_basis_coords(algebra, g, alpha) for g in range(half) for alpha in (0, 1)]
    return [tuple(col[k] for col in cols) for k in range(algebra.dim)]


def v_labels(dim):
    return [f"v({g},{a})" for g in range(dim // 2) for a in (0, 1)]


def change_basis(algebra: HurwitzAlgebra, matrix, new_kind, labels) -> HurwitzAlgebra:
    """Rewrite the algebra on the basis whose vectors are the matrix columns."""
    F = algebra.field
    n = algebra.dim
    inv = la.invert(F, matrix)
    if inv is None:
        raise ValueError("basis matrix is singular")
    cols = la.transpose(matrix)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = algebra.multiply_coords(cols[i], cols[j])
            row.append(la.mat_vec(F, inv, prod))
        table.append(row)
    unit = la.mat_vec(F, inv, algebra.unit_coords)
    return HurwitzAlgebra(F, new_kind, labels, table, unit)


def v_basis_algebra(cd_algebra: HurwitzAlgebra) -> HurwitzAlgebra:
    return change_basis(
        cd_algebra, v_basis_matrix(cd_algebra), "cartan_v", v_labels(cd_algebra.dim)
    )


def char_twist_matrix(algebra):
    """The character-twist automorphism x_g -> (-1)^(g_1) x_g of a CD basis."""
    if algebra.basis_kind != "cayley_dickson":
        raise ValueError("character twist is defined on a CD basis")
    F = algebra.field
    n = algebra.dim
    return [
        tuple((F.from_int(-1) if (k & 1) else F.one) if k == j else F.zero for j in range(n))
        for k in range(n)
    ]


def commutative_center(algebra: HurwitzAlgebra):
    """Basis of {z : zx = xz for all x}, via the joint commutator kernel."""
    F = algebra.field
    rows = []
    for k in range(algebra.dim):
        b = la.unit_vector(F, algebra.dim, k)
        L = algebra.left_mult_matrix(b)
        R = algebra.right_mult_matrix(b)
        rows.extend(la.mat_sub(F, L, R))
    return la.kernel(F, rows, ncols=algebra.dim)


def traceless_unit_norm_basis_indices(algebra):
    """Indices of basis vectors with trace 0 and norm 1."""
    F = algebra.field
    out = []
    for idx in range(algebra.dim):
        if F.is_zero(algebra.basis_traces[idx]) and algebra.basis_norms[idx] == F.one:
            out.append(idx)
    return out
