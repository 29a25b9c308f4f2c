"""Abelian-group gradings on algebras, Kantor systems, and Lie algebras.

A grading assigns a group element to every basis vector (with a sign for
pairs).  All gradings here are basis-aligned: homogeneous components are
spans of basis vectors, so checking the grading condition and harvesting
universal-group relations reduce to sweeps over nonzero structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup, quotient_by_relations
from .errors import (
    BadDimension,
    ExcludedCase,
    InconsistentGrading,
    NotKantorCompatible,
    OrderViolation,
)
from .hurwitz import CARTAN_SUBBASIS, CARTAN_LABELS_8, HurwitzAlgebra
from .kantor import IdentityReport, KantorPair, TripleSystem
from .liealg import GradedLieAlgebra, kantor_construct


@dataclass
class Grading:
    kind: str  # "algebra" | "triple" | "pair" | "lie"
    system: object
    group: AbelianGroup
    degrees: dict
    name: str = ""

    def degree(self, key):
        return self.degrees[key]

    def support(self) -> dict:
        """Map degree -> dimension of the homogeneous component."""
        out = {}
        for g in self.degrees.values():
            out[g] = out.get(g, 0) + 1
        return out

    def basis_keys(self):
        return list(self.degrees)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "group": self.group.describe(),
            "support": [
                {"degree": list(g), "dimension": d} for g, d in sorted(self.support().items())
            ],
        }


def _products(grading: Grading):
    """Yield (summed_degree, sparse_output, out_key_fn) over nonzero products."""
    kind = grading.kind
    deg = grading.degrees
    add = grading.group.add
    if kind == "algebra":
        A: HurwitzAlgebra = grading.system
        for i in range(A.dim):
            for j in range(A.dim):
                out = A.sparse_table[i][j]
                if out:
                    yield add(deg[i], deg[j]), out, lambda l: l
    elif kind == "triple":
        ts: TripleSystem = grading.system
        vt = ts.v_table()
        n = ts.dim
        for i in range(n):
            for j in range(n):
                row = vt[i][j]
                dij = add(deg[i], deg[j])
                for k in range(n):
                    col = row[k]
                    if col:
                        yield add(dij, deg[k]), tuple(col.items()), lambda l: l
    elif kind == "pair":
        pair: KantorPair = grading.system
        vt = pair.system.v_table()
        n = pair.dim
        for sign in (1, -1):
            for i in range(n):
                for j in range(n):
                    row = vt[i][j]
                    dij = add(deg[(sign, i)], deg[(-sign, j)])
                    for k in range(n):
                        col = row[k]
                        if col:
                            yield (
                                add(dij, deg[(sign, k)]),
                                tuple(col.items()),
                                lambda l, s=sign: (s, l),
                            )
    elif kind == "lie":
        L: GradedLieAlgebra = grading.system
        for i in range(L.dim):
            row = L.table[i]
            for j in range(i + 1, L.dim):
                if row[j]:
                    yield add(deg[i], deg[j]), tuple(row[j].items()), lambda l: l
    else:
        raise ValueError(f"unknown grading kind {kind!r}")


def is_grading(grading: Grading) -> IdentityReport:
    """Every nonzero product must land in the component of the summed degree."""
    rep = IdentityReport(f"grading-condition[{grading.name or grading.kind}]")
    deg = grading.degrees
    for target, out, key_fn in _products(grading):
        rep.cases += 1
        for l, _c in out:
            if deg[key_fn(l)] != target:
                rep.record(
                    {"expected": list(target), "got": list(deg[key_fn(l)]), "coord": key_fn(l)}
                )
                break
    return rep


def grading_type(grading: Grading) -> tuple:
    """The tuple (n_1, ..., n_k): n_i components of dimension i."""
    dims = list(grading.support().values())
    k = max(dims)
    counts = [0] * k
    for d in dims:
        counts[d - 1] += 1
    return tuple(counts)


def universal_group(grading: Grading):
    """Universal abelian group of the grading, by Smith normal form.

    Returns (group, canonical_grading) where the canonical grading realizes
    the same components over the universal group in invariant-factor form.
    Also certifies that the input degrees factor through the result.
    """
    supp = sorted(grading.support())
    index = {g: i for i, g in enumerate(supp)}
    n = len(supp)
    relations = set()
    deg = grading.degrees
    add = grading.group.add
    kind = grading.kind

    def add_relation(inputs, out_deg):
        vec = [0] * n
        for g in inputs:
            vec[index[g]] += 1
        vec[index[out_deg]] -= 1
        if any(vec):
            relations.add(tuple(vec))

    if kind == "algebra":
        A = grading.system
        for i in range(A.dim):
            for j in range(A.dim):
                if A.sparse_table[i][j]:
                    l = A.sparse_table[i][j][0][0]
                    add_relation((deg[i], deg[j]), deg[l])
    elif kind == "triple":
        ts = grading.system
        vt = ts.v_table()
        for i in range(ts.dim):
            for j in range(ts.dim):
                for k in range(ts.dim):
                    col = vt[i][j][k]
                    if col:
                        l = next(iter(col))
                        add_relation((deg[i], deg[j], deg[k]), deg[l])
    elif kind == "pair":
        pair = grading.system
        vt = pair.system.v_table()
        for sign in (1, -1):
            for i in range(pair.dim):
                for j in range(pair.dim):
                    for k in range(pair.dim):
                        col = vt[i][j][k]
                        if col:
                            l = next(iter(col))
                            add_relation(
                                (deg[(sign, i)], deg[(-sign, j)], deg[(sign, k)]),
                                deg[(sign, l)],
                            )
    elif kind == "lie":
        L = grading.system
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                if L.table[i][j]:
                    l = next(iter(L.table[i][j]))
                    add_relation((deg[i], deg[j]), deg[l])

    rel_list = sorted(relations)
    group, images = quotient_by_relations(n, rel_list)
    # The input degrees must satisfy every harvested relation.
    for vec in rel_list:
        acc = grading.group.zero()
        for slot, coeff in enumerate(vec):
            for _ in range(abs(coeff)):
                term = supp[slot] if coeff > 0 else grading.group.neg(supp[slot])
                acc = add(acc, term)
        if not grading.group.is_identity(acc):
            raise InconsistentGrading("input degrees violate a harvested relation")
    mapping = {g: images[index[g]] for g in supp}
    canonical = Grading(
        kind=grading.kind,
        system=grading.system,
        group=group,
        degrees={k: mapping[v] for k, v in grading.degrees.items()},
        name=(grading.name + "/universal") if grading.name else "universal",
    )
    return group, canonical


def shift(grading: Grading, g) -> Grading:
    """The g-shift: pairs move +g on the plus side and -g on the minus side;
    triples require g of order dividing 2."""
    G = grading.group
    g = G.element(g)
    if grading.kind == "pair":
        new = {
            key: (G.add(d, g) if key[0] > 0 else G.sub(d, g))
            for key, d in grading.degrees.items()
        }
    elif grading.kind == "triple":
        if not G.has_order_dividing_two(g):
            raise OrderViolation("triple shifts need an element of order 1 or 2")
        new = {key: G.add(d, g) for key, d in grading.degrees.items()}
    else:
        raise ValueError("shifts are defined for pair and triple gradings")
    return Grading(grading.kind, grading.system, G, new, name=f"{grading.name}-shift")


def coarsen(grading: Grading, target_group: AbelianGroup, hom) -> Grading:
    """Push the degree map through a homomorphism given as a callable."""
    return Grading(
        grading.kind,
        grading.system,
        target_group,
        {k: target_group.element(hom(v)) for k, v in grading.degrees.items()},
        name=f"{grading.name}-coarsened",
    )


# -- the two fine gradings ----------------------------------------------------


def _require_basis(system, expected_kind):
    algebra = system.algebra if not isinstance(system, HurwitzAlgebra) else system
    if algebra.basis_kind != expected_kind:
        raise ValueError(f"grading needs a {expected_kind} basis, got {algebra.basis_kind}")
    return algebra


def algebra_group_grading(algebra: HurwitzAlgebra) -> Grading:
    """The fine elementary 2-group grading of a CD basis: deg(x_g) = g."""
    _require_basis(algebra, "cayley_dickson")
    m = algebra.dim.bit_length() - 1
    G = AbelianGroup(0, (2,) * m) if m else AbelianGroup(0)
    degs = {g: G.element(tuple((g >> b) & 1 for b in range(m))) for g in range(algebra.dim)}
    return Grading("algebra", algebra, G, degs, name="cd-algebra")


def cayley_dickson_grading(system, kind: str) -> Grading:
    """deg(x_g^s) = (s*1, g) for pairs, deg(x_g) = (1 mod 2, g) for triples."""
    algebra = _require_basis(system, "cayley_dickson")
    if algebra.dim == 1:
        raise BadDimension("the CD grading is defined for dimensions 2, 4, 8")
    m = algebra.dim.bit_length() - 1
    if kind == "pair":
        if algebra.field.characteristic == 3 and algebra.dim == 2:
            raise ExcludedCase(
                "the 2-dimensional pair in characteristic 3 has no CD grading "
                "by its universal group"
            )
        G = AbelianGroup(1, (2,) * m)
        degs = {}
        for sign in (1, -1):
            for g in range(algebra.dim):
                degs[(sign, g)] = G.element((sign,) + tuple((g >> b) & 1 for b in range(m)))
        return Grading("pair", system, G, degs, name="cd-pair")
    if kind == "triple":
        G = AbelianGroup(0, (2,) * (m + 1))
        degs = {
            g: G.element((1,) + tuple((g >> b) & 1 for b in range(m)))
            for g in range(algebra.dim)
        }
        return Grading("triple", system, G, degs, name="cd-triple")
    raise ValueError(f"unknown system kind {kind!r}")


# Degree vectors of the plus part of the rank-4 grading on the Cartan basis.
_CARTAN_PLUS_8 = {
    "e1": (1, 0, 0, 0),
    "e2": (0, 1, 0, 0),
    "u1": (0, 0, 1, 0),
    "u2": (0, 0, 0, 1),
    "u3": (1, 2, -1, -1),
    "v1": (1, 1, -1, 0),
    "v2": (1, 1, 0, -1),
    "v3": (0, -1, 1, 1),
}
# The minus degree of a basis vector is minus the plus degree of its partner.
_CARTAN_PARTNER = {
    "e1": "e2",
    "e2": "e1",
    "u1": "v1",
    "u2": "v2",
    "u3": "v3",
    "v1": "u1",
    "v2": "u2",
    "v3": "u3",
}
# Coordinates of the rank-4 lattice that survive in each dimension.
_CARTAN_COORDS = {2: (0, 1), 4: (0, 1, 2), 8: (0, 1, 2, 3)}


def _cartan_plus_degree(label, dim):
    full = _CARTAN_PLUS_8[label]
    keep = _CARTAN_COORDS[dim]
    dropped = [full[c] for c in range(4) if c not in keep]
    if any(dropped):
        raise AssertionError("restricted degree uses a dropped coordinate")
    return tuple(full[c] for c in keep)


def cartan_grading(system, kind: str) -> Grading:
    """The free fine grading on a Cartan basis (rank m+1 for pairs, m for triples)."""
    algebra = _require_basis(system, "cartan")
    dim = algebra.dim
    if kind == "pair":
        if dim == 1:
            G = AbelianGroup(1)
            return Grading(
                "pair", system, G, {(1, 0): (1,), (-1, 0): (-1,)}, name="cartan-pair"
            )
        G = AbelianGroup(len(_CARTAN_COORDS[dim]))
        degs = {}
        for idx, lbl in enumerate(algebra.labels):
            plus = _cartan_plus_degree(lbl, dim)
            degs[(1, idx)] = G.element(plus)
            degs[(-1, idx)] = G.neg(G.element(_cartan_plus_degree(_CARTAN_PARTNER[lbl], dim)))
        return Grading("pair", system, G, degs, name="cartan-pair")
    if kind == "triple":
        if dim == 1:
            G = AbelianGroup(0, (2,))
            return Grading("triple", system, G, {0: G.element((1,))}, name="cartan-triple")
        # Forcing equal degrees on the two copies collapses the first two
        # coordinates to their difference.
        G = AbelianGroup(len(_CARTAN_COORDS[dim]) - 1)
        degs = {}
        for idx, lbl in enumerate(algebra.labels):
            a_b = _cartan_plus_degree(lbl, dim)
            degs[idx] = G.element((a_b[0] - a_b[1],) + a_b[2:])
        return Grading("triple", system, G, degs, name="cartan-triple")
    raise ValueError(f"unknown system kind {kind!r}")


# v-basis labels correspond line by line to Cartan basis vectors.
V_TO_CARTAN = {
    (0, 0): "e1",
    (0, 1): "e2",
    (1, 0): "u1",
    (1, 1): "v1",
    (2, 0): "u2",
    (2, 1): "v2",
    (3, 0): "u3",
    (3, 1): "v3",
}


def cartan_grading_vbasis(system, kind: str) -> Grading:
    """The Cartan grading carried to the diagonalizing v-basis."""
    algebra = system.algebra if not isinstance(system, HurwitzAlgebra) else system
    if algebra.basis_kind != "cartan_v":
        raise ValueError("needs a v-basis system")
    dim = algebra.dim
    if kind == "pair":
        G = AbelianGroup(len(_CARTAN_COORDS[dim]))
    else:
        G = AbelianGroup(len(_CARTAN_COORDS[dim]) - 1)
    degs = {}
    for idx in range(dim):
        g, alpha = idx >> 1, idx & 1
        lbl = V_TO_CARTAN[(g, alpha)]
        plus = _cartan_plus_degree(lbl, dim)
        if kind == "pair":
            degs[(1, idx)] = G.element(plus)
            degs[(-1, idx)] = G.neg(G.element(_cartan_plus_degree(_CARTAN_PARTNER[lbl], dim)))
        else:
            degs[idx] = G.element((plus[0] - plus[1],) + plus[2:])
    return Grading(kind, system, G, degs, name=f"cartan-{kind}-vbasis")


# -- extension to and restriction from the Lie algebra -------------------------


def extend_to_lie(pair: KantorPair, grading: Grading):
    """Extend a pair grading through the Kantor construction.

    Returns (L, lie_grading) where L is built on a basis adapted to the
    grading and the lie grading reads the degrees off that basis.
    """
    if grading.kind != "pair":
        raise ValueError("extension starts from a pair grading")
    L = kantor_construct(pair, grading)
    degs = {i: b.g for i, b in enumerate(L.basis)}
    return L, Grading("lie", L, grading.group, degs, name=f"{grading.name}-extended")


def restrict_from_lie(L: GradedLieAlgebra, lie_grading: Grading) -> Grading:
    """Restrict a Kantor-compatible Lie grading to the pair."""
    if L.pair is None:
        raise NotKantorCompatible("algebra was not built from a pair")
    degs = {}
    plus = L.piece_indices(1)
    minus = L.piece_indices(-1)
    if len(plus) != L.pair.dim or len(minus) != L.pair.dim:
        raise NotKantorCompatible("degree +-1 pieces do not match the carrier")
    for carrier_idx, i in enumerate(plus):
        degs[(1, carrier_idx)] = lie_grading.degrees[i]
    for carrier_idx, i in enumerate(minus):
        degs[(-1, carrier_idx)] = lie_grading.degrees[i]
    return Grading("pair", L.pair, lie_grading.group, degs, name="restricted")


def main_grading(L: GradedLieAlgebra) -> Grading:
    """The 5-grading of the Kantor construction as a rank-1 group grading."""
    G = AbelianGroup(1)
    return Grading("lie", L, G, {i: G.element((b.z,)) for i, b in enumerate(L.basis)},
                   name="main")


def verify_extension_spans(L: GradedLieAlgebra, grading: Grading) -> IdentityReport:
    """Recompute the graded component spans of the operator pieces.

    Certifies that extending the restriction reproduces the stored grading:
    for every degree, the span of the generating operators with that degree
    sum equals the span of the stored basis vectors.
    """
    from . import linalg as la
    from .liealg import _flatten
    from .kantor import sp_to_dense

    rep = IdentityReport("extension-spans")
    F = L.field
    pair = L.pair
    n = pair.dim
    ts = pair.system
    vt, kt = ts.v_table(), ts.k_table()
    deg = grading.degrees
    add = grading.group.add

    spans = {}  # (z, g) -> rows
    for i in range(n):
        for j in range(i + 1, n):
            K = _flatten(sp_to_dense(F, kt[i][j], n))
            spans.setdefault((-2, add(deg[(-1, i)], deg[(-1, j)])), []).append(K)
            spans.setdefault((2, add(deg[(1, i)], deg[(1, j)])), []).append(K)
    for i in range(n):
        for j in range(n):
            A11 = _flatten(sp_to_dense(F, vt[i][j], n))
            A22 = tuple(F.neg(c) for c in _flatten(sp_to_dense(F, vt[j][i], n)))
            spans.setdefault((0, add(deg[(-1, i)], deg[(1, j)])), []).append(A11 + A22)

    stored = {}
    for b in L.basis:
        if b.z in (-2, 0, 2):
            stored.setdefault((b.z, b.g), []).append(b.data)
    for key, rows in spans.items():
        rep.cases += 1
        got = stored.get(key, [])
        if not la.spans_equal(F, rows, got):
            if la.rank(F, rows) == 0 and not got:
                continue
            rep.record({"z": key[0], "degree": list(key[1])})
    for key in stored:
        if key not in spans:
            rep.cases += 1
            rep.record({"z": key[0], "degree": list(key[1]), "reason": "extra component"})
    return rep


def fineness_certificate(grading: Grading) -> bool:
    """Sufficient condition used throughout: all components are 1-dimensional."""
    return all(d == 1 for d in grading.support().values())
