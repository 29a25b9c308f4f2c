"""Finitely generated abelian groups: ambient grading groups and universal groups.

A group is Z^rank x Z_{m_1} x ... x Z_{m_s}; elements are flat integer tuples
with the free coordinates first and each torsion coordinate reduced modulo
its modulus.  Canonical (invariant factor) form additionally demands the
divisibility chain m_1 | m_2 | ... with every m_i >= 2, which is what the
universal-group computation in :mod:`kantorlab.gradings` produces.
"""

from __future__ import annotations

from .snf import diagonal, smith_normal_form


class AbelianGroup:
    def __init__(self, rank: int, torsion=()):
        self.rank = rank
        self.torsion = tuple(int(m) for m in torsion)
        if any(m < 2 for m in self.torsion):
            raise ValueError("torsion moduli must be >= 2")

    @property
    def ncoords(self) -> int:
        return self.rank + len(self.torsion)

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.ncoords:
            raise ValueError("wrong number of coordinates")
        free = coords[: self.rank]
        tors = tuple(c % m for c, m in zip(coords[self.rank:], self.torsion))
        return free + tors

    def zero(self):
        return (0,) * self.ncoords

    def add(self, a, b):
        return self.element(x + y for x, y in zip(a, b))

    def neg(self, a):
        return self.element(-x for x in a)

    def sub(self, a, b):
        return self.element(x - y for x, y in zip(a, b))

    def scale(self, n, a):
        return self.element(n * x for x in a)

    def is_identity(self, a) -> bool:
        return all(x == 0 for x in self.element(a))

    def has_order_dividing_two(self, a) -> bool:
        return self.is_identity(self.add(a, a))

    def is_canonical(self) -> bool:
        chain = self.torsion
        return all(chain[i + 1] % chain[i] == 0 for i in range(len(chain) - 1))

    def invariants(self):
        return (self.rank, self.torsion)

    def describe(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def short_name(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        i = 0
        tors = self.torsion
        while i < len(tors):
            j = i
            while j < len(tors) and tors[j] == tors[i]:
                j += 1
            count = j - i
            parts.append(f"Z{tors[i]}" + (f"^{count}" if count > 1 else ""))
            i = j
        return " x ".join(parts) if parts else "0"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.invariants() == other.invariants()

    def __hash__(self):
        return hash(self.invariants())

    def __repr__(self):
        return self.short_name()


def free_group(rank: int) -> AbelianGroup:
    return AbelianGroup(rank)


def elementary_two_group(m: int) -> AbelianGroup:
    return AbelianGroup(0, (2,) * m)


def z_cross_two(m: int) -> AbelianGroup:
    """Z x Z_2^m."""
    return AbelianGroup(1, (2,) * m)


def quotient_by_relations(n: int, relations):
    """Z^n modulo the lattice spanned by the given relation vectors.

    Returns (group, images) where group is in canonical invariant-factor form
    and images[j] is the class of the j-th standard generator.
    """
    rel_rows = [list(r) for r in relations]
    if not rel_rows:
        group = AbelianGroup(n)
        return group, [group.element(tuple(1 if k == j else 0 for k in range(n))) for j in range(n)]
    # Columns of A are the relations; U*A*V = S diagonalizes the relation
    # lattice, so in the coordinates y = U x the lattice is spanned by d_i e_i.
    A = [[rel_rows[k][i] for k in range(len(rel_rows))] for i in range(n)]
    U, S, _ = smith_normal_form(A)
    diag = diagonal(S)
    r = sum(1 for d in diag if d != 0)
    torsion_idx = [i for i in range(r) if diag[i] > 1]
    free_idx = list(range(r, n))
    group = AbelianGroup(len(free_idx), tuple(diag[i] for i in torsion_idx))
    images = []
    for j in range(n):
        y = [U[i][j] for i in range(n)]
        coords = [y[i] for i in free_idx] + [y[i] for i in torsion_idx]
        images.append(group.element(coords))
    return group, images
