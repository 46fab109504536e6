"""Quiver representations over an exact field.

A representation attaches a space ``k^dims[v]`` to every vertex and a
``dims[tgt] x dims[src]`` matrix to every arrow.  Paths act by composing
matrices in path order; linear combinations of parallel paths act linearly.
For acyclic quivers the path algebra is finite-dimensional and the module
decides whether the induced algebra action is injective.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import CyclicQuiver, MixedEndpoints, PathQuiverMismatch, QuiverMismatch, ShapeMismatch
from .linalg import QQ, Matrix, block_diag, field_from_json, nullspace, rank_of_vectors
from .paths import Path, all_paths, compose_paths, path_in_quiver
from .quiver import Quiver, is_acyclic


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dims: Mapping[str, int]
    mats: Mapping[str, Matrix]
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "dims", dict(self.dims))
        object.__setattr__(self, "mats", dict(self.mats))

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.mats == other.mats
        )

    @property
    def total_dim(self) -> int:
        return sum(self.dims[v] for v in self.quiver.vertex_ids)


def representation(q: Quiver, dims: Mapping[str, int], mats: Mapping[str, Sequence], field=QQ) -> Representation:
    """Convenience constructor: matrices given as nested lists, shapes taken from ``dims``."""
    built = {}
    for a in q.arrows:
        data = mats[a.id]
        if isinstance(data, Matrix):
            built[a.id] = data
        else:
            rows = len(data)
            cols = len(data[0]) if rows else dims[a.src]
            built[a.id] = Matrix.from_rows(field, data, cols) if rows else Matrix.zero(field, 0, cols)
    return Representation(q, dims, built, field)


def zero_representation(q: Quiver, field=QQ) -> Representation:
    return Representation(
        q, {v: 0 for v in q.vertex_ids}, {a.id: Matrix.zero(field, 0, 0) for a in q.arrows}, field
    )


def validate_representation(m: Representation) -> bool:
    """Coverage is total and every arrow matrix has shape ``dims[tgt] x dims[src]``."""
    q = m.quiver
    if set(m.dims) != set(q.vertex_ids) or set(m.mats) != set(q.arrow_ids):
        return False
    if any(not isinstance(d, int) or d < 0 for d in m.dims.values()):
        return False
    for a in q.arrows:
        mat = m.mats[a.id]
        if mat.field != m.field or mat.shape != (m.dims[a.tgt], m.dims[a.src]):
            return False
    return True


def eval_path(m: Representation, p: Path) -> Matrix:
    """``M(a_n) ··· M(a_1)`` for ``p = [a_1, ..., a_n]``; the identity for empty paths."""
    if not path_in_quiver(m.quiver, p):
        raise PathQuiverMismatch(f"path {p} is not a path of the representation's quiver")
    out = Matrix.identity(m.field, m.dims[p.source])
    for a in p.arrows:
        out = m.mats[a] @ out
    return out


@dataclass(frozen=True)
class LinComb:
    """Formal combination ``Σ c_i p_i`` of parallel paths ``source -> target``."""

    source: str
    target: str
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((c, p) for c, p in self.terms))


def eval_lincomb(m: Representation, lc: LinComb) -> Matrix:
    m.quiver.vertex(lc.source)
    m.quiver.vertex(lc.target)
    out = Matrix.zero(m.field, m.dims[lc.target], m.dims[lc.source])
    for c, p in lc.terms:
        if (p.source, p.target) != (lc.source, lc.target):
            raise MixedEndpoints(f"path {p} is not parallel to {lc.source} -> {lc.target}")
        out = out + eval_path(m, p).scale(c)
    return out


@dataclass(frozen=True, eq=False)
class RepMorphism:
    """A family of matrices ``f_v: M1(v) -> M2(v)``."""

    maps: Mapping[str, Matrix] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return dict(self.maps) == dict(other.maps)

    def __add__(self, other: RepMorphism) -> RepMorphism:
        return RepMorphism({v: f + other.maps[v] for v, f in self.maps.items()})

    def scale(self, c) -> RepMorphism:
        return RepMorphism({v: f.scale(c) for v, f in self.maps.items()})


def _require_same_quiver(m1: Representation, m2: Representation):
    if m1.quiver != m2.quiver:
        raise QuiverMismatch("representations live on different quivers")
    if m1.field != m2.field:
        raise QuiverMismatch(f"representations are over different fields ({m1.field}, {m2.field})")


def check_rep_morphism(f: RepMorphism, m1: Representation, m2: Representation) -> bool:
    """True iff ``f_tgt · M1(a) == M2(a) · f_src`` for every arrow ``a``."""
    _require_same_quiver(m1, m2)
    q = m1.quiver
    for v in q.vertex_ids:
        if v not in f.maps:
            raise ShapeMismatch(f"morphism has no component at {v!r}")
        if f.maps[v].shape != (m2.dims[v], m1.dims[v]):
            raise ShapeMismatch(f"component at {v!r} has shape {f.maps[v].shape}")
    for a in q.arrows:
        if f.maps[a.tgt] @ m1.mats[a.id] != m2.mats[a.id] @ f.maps[a.src]:
            return False
    return True


def identity_rep_morphism(m: Representation) -> RepMorphism:
    return RepMorphism({v: Matrix.identity(m.field, m.dims[v]) for v in m.quiver.vertex_ids})


def compose_rep_morphisms(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    """``g ∘ f`` componentwise."""
    return RepMorphism({v: g.maps[v] @ fv for v, fv in f.maps.items()})


class HomSpace(NamedTuple):
    dimension: int
    basis: list


def hom_space(m1: Representation, m2: Representation) -> HomSpace:
    """Basis of Hom(M1, M2) by exact elimination on the commuting-square equations.

    Unknowns are the entries of every ``f_v`` (vertices in id order, each
    component row-major); every arrow contributes ``dims2[tgt] * dims1[src]``
    equations.
    """
    _require_same_quiver(m1, m2)
    q, k = m1.quiver, m1.field
    offset = {}
    n = 0
    for v in q.vertex_ids:
        offset[v] = n
        n += m2.dims[v] * m1.dims[v]

    def var(v, r, c):
        return offset[v] + r * m1.dims[v] + c

    rows = []
    for a in q.arrows:
        i, j = a.src, a.tgt
        A1, A2 = m1.mats[a.id], m2.mats[a.id]
        # (f_j A1 - A2 f_i)[r, c] = 0
        for r in range(m2.dims[j]):
            for c in range(m1.dims[i]):
                row = [k.zero] * n
                for t in range(m1.dims[j]):
                    row[var(j, r, t)] = row[var(j, r, t)] + A1[t, c]
                for t in range(m2.dims[i]):
                    row[var(i, t, c)] = row[var(i, t, c)] - A2[r, t]
                rows.append(row)
    basis = []
    for vec in nullspace(k, rows, n):
        maps = {}
        for v in q.vertex_ids:
            r, c = m2.dims[v], m1.dims[v]
            maps[v] = Matrix(k, r, c, vec[offset[v]:offset[v] + r * c])
        basis.append(RepMorphism(maps))
    return HomSpace(len(basis), basis)


def direct_sum(m1: Representation, m2: Representation) -> Representation:
    _require_same_quiver(m1, m2)
    return Representation(
        m1.quiver,
        {v: m1.dims[v] + m2.dims[v] for v in m1.quiver.vertex_ids},
        {a: block_diag(m1.field, [m1.mats[a], m2.mats[a]]) for a in m1.quiver.arrow_ids},
        m1.field,
    )


def direct_sum_maps(m1: Representation, m2: Representation):
    """Canonical ``(inj1, inj2, proj1, proj2)`` for ``m1 ⊕ m2``."""
    k = m1.field
    inj1, inj2, pr1, pr2 = {}, {}, {}, {}
    for v in m1.quiver.vertex_ids:
        d1, d2 = m1.dims[v], m2.dims[v]
        i1 = block_diag(k, [Matrix.identity(k, d1), Matrix.zero(k, d2, 0)])
        i2 = block_diag(k, [Matrix.zero(k, d1, 0), Matrix.identity(k, d2)])
        inj1[v], inj2[v] = i1, i2
        pr1[v], pr2[v] = i1.transpose(), i2.transpose()
    return RepMorphism(inj1), RepMorphism(inj2), RepMorphism(pr1), RepMorphism(pr2)


# -- path algebra ----------------------------------------------------------------


def path_algebra_basis(q: Quiver) -> list[Path]:
    """All paths (identities first), a basis of the path algebra of an acyclic quiver."""
    if not is_acyclic(q):
        raise CyclicQuiver("the path algebra of a cyclic quiver is infinite-dimensional")
    return all_paths(q, len(q.arrows))


def path_algebra_product(p2: Path, p1: Path) -> Path | None:
    """``p2 · p1`` in the path algebra: the composite, or None (zero) when not composable."""
    if p1.target != p2.source:
        return None
    return compose_paths(p2, p1)


def algebra_action(q: Quiver, m: Representation) -> dict[Path, Matrix]:
    """Each basis path as an operator on ``⊕ M(v)``, blocks in vertex-id order."""
    if m.quiver != q:
        raise QuiverMismatch("representation is over a different quiver")
    basis = path_algebra_basis(q)
    k = m.field
    offset = {}
    total = 0
    for v in q.vertex_ids:
        offset[v] = total
        total += m.dims[v]
    out = {}
    for p in basis:
        block = eval_path(m, p)
        rows = [[k.zero] * total for _ in range(total)]
        r0, c0 = offset[p.target], offset[p.source]
        for i in range(block.rows):
            for j in range(block.cols):
                rows[r0 + i][c0 + j] = block[i, j]
        out[p] = Matrix(k, total, total, [x for r in rows for x in r])
    return out


def is_exact_representation(q: Quiver, m: Representation) -> bool:
    """Whether the path-algebra action is injective (basis images linearly independent)."""
    action = algebra_action(q, m)
    vectors = [list(mat.entries) for mat in action.values()]
    length = m.total_dim ** 2
    return rank_of_vectors(m.field, vectors, length) == len(vectors)


# -- JSON ---------------------------------------------------------------------


def representation_to_dict(m: Representation) -> dict:
    out = m.field.to_json()
    out["dims"] = {v: m.dims[v] for v in sorted(m.dims)}
    out["mats"] = {a: m.mats[a].to_json() for a in sorted(m.mats)}
    return out


def representation_from_dict(q: Quiver, data: Mapping) -> Representation:
    """Read the JSON form; 0-row matrices take their column count from ``dims``."""
    k = field_from_json(data)
    dims = {v: int(d) for v, d in data["dims"].items()}
    mats = {}
    for aid, rows in data["mats"].items():
        if rows:
            mats[aid] = Matrix.from_rows(k, rows)
        else:
            a = q.arrow(aid) if q.has_arrow(aid) else None
            cols = dims.get(a.src, 0) if a else 0
            mats[aid] = Matrix.zero(k, 0, cols)
    return Representation(q, dims, mats, k)


def rep_morphism_to_dict(f: RepMorphism) -> dict:
    return {v: f.maps[v].to_json() for v in sorted(f.maps)}


def dumps_representation(m: Representation) -> str:
    return json.dumps(representation_to_dict(m), indent=2, sort_keys=True) + "\n"
