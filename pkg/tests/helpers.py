"""Random generators and deliberately naive oracles shared by the test modules.

The oracles below do not call into the library's checking code; they
re-derive the answer from the raw data so that a bug in a checker cannot
hide itself.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ontoquiver.fincat import FinCategory
from ontoquiver.linalg import QQ, Matrix, PrimeField
from ontoquiver.linrep import Representation
from ontoquiver.paths import Path
from ontoquiver.quiver import Arrow, GraphMorphism, Quiver, Vertex

# -- random structures --------------------------------------------------------


def random_quiver(rng: random.Random, max_vertices=6, max_arrows=10, acyclic=False, min_vertices=1) -> Quiver:
    n = rng.randint(min_vertices, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    arrows = []
    if n:
        for k in range(rng.randint(0, max_arrows)):
            s, t = rng.randrange(n), rng.randrange(n)
            if acyclic:
                if s == t:
                    continue
                s, t = min(s, t), max(s, t)
            arrows.append(Arrow(f"a{k}", vs[s], vs[t], rng.choice(["is_a", "part_of", "x"])))
    return Quiver(tuple(Vertex(v, v) for v in vs), tuple(arrows))


def random_walk(rng: random.Random, q: Quiver, start: str, max_len: int) -> Path:
    arrows, here = [], start
    for _ in range(rng.randint(0, max_len)):
        out = [a for a in q.arrows if a.src == here]
        if not out:
            break
        a = rng.choice(out)
        arrows.append(a.id)
        here = a.tgt
    return Path(start, here, tuple(arrows))


def random_scalar(rng: random.Random, field):
    if field == QQ:
        return Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
    return field(rng.randrange(field.p))


def random_matrix(rng, field, rows, cols) -> Matrix:
    return Matrix(field, rows, cols, [random_scalar(rng, field) for _ in range(rows * cols)])


def random_representation(rng, q: Quiver, field=QQ, max_dim=3, min_dim=0) -> Representation:
    dims = {v: rng.randint(min_dim, max_dim) for v in q.vertex_ids}
    mats = {a.id: random_matrix(rng, field, dims[a.tgt], dims[a.src]) for a in q.arrows}
    return Representation(q, dims, mats, field)


F2, F5 = PrimeField(2), PrimeField(5)


# -- naive oracles --------------------------------------------------------------


def oracle_is_category(c: FinCategory) -> bool:
    """Direct transcription of the category axioms over the raw tables."""
    src = {m.id: m.src for m in c.morphisms}
    tgt = {m.id: m.tgt for m in c.morphisms}
    if len(src) != len(c.morphisms):
        return False
    if any(m.src not in c.objects or m.tgt not in c.objects for m in c.morphisms):
        return False
    if set(c.identity) != set(c.objects):
        return False
    for x, i in c.identity.items():
        if src.get(i) != x or tgt.get(i) != x:
            return False
    composable = {(g, f) for f in src for g in src if tgt[f] == src[g]}
    if set(c.compose) != composable:
        return False
    for (g, f), h in c.compose.items():
        if h not in src or src[h] != src[f] or tgt[h] != tgt[g]:
            return False
    for f in src:
        if c.compose[f, c.identity[src[f]]] != f or c.compose[c.identity[tgt[f]], f] != f:
            return False
    for f, g, h in itertools.product(src, repeat=3):
        if (g, f) in composable and (h, g) in composable:
            if c.compose[h, c.compose[g, f]] != c.compose[c.compose[h, g], f]:
                return False
    return True


def oracle_is_bifunctor(E, ci: FinCategory, cj: FinCategory) -> bool:
    """Functor laws for ``ci^op x cj -> Set`` written out via the product category."""
    obj_pairs = [(x, y) for x in ci.objects for y in cj.objects]
    if set(E.sets) != set(obj_pairs):
        return False
    if any(len(set(E.sets[p])) != len(E.sets[p]) for p in obj_pairs):
        return False
    # a morphism (u, v): (x, y) -> (x', y') of ci^op x cj has u: x' -> x, v: y -> y'
    arrows = {(u.id, v.id): ((u.tgt, v.src), (u.src, v.tgt)) for u in ci.morphisms for v in cj.morphisms}
    if set(E.maps) != set(arrows):
        return False
    for key, (dom, cod) in arrows.items():
        table = E.maps[key]
        if set(table) != set(E.sets[dom]) or not set(table.values()) <= set(E.sets[cod]):
            return False
    for x, y in obj_pairs:
        t = E.maps[ci.identity[x], cj.identity[y]]
        if any(t[e] != e for e in E.sets[x, y]):
            return False
    for (k1, (d1, c1)), (k2, (d2, c2)) in itertools.product(arrows.items(), repeat=2):
        if c1 != d2:
            continue
        # composite in ci^op x cj: first k1 then k2
        u = ci.compose[k1[0], k2[0]]
        v = cj.compose[k2[1], k1[1]]
        for e in E.sets[d1]:
            if E.maps[k2][E.maps[k1][e]] != E.maps[u, v][e]:
                return False
    return True


def oracle_paths(q: Quiver, i: str, j: str, max_len: int) -> list[tuple[str, ...]]:
    """All arrow sequences from i to j of length <= max_len, by plain DFS."""
    out = []

    def go(here, seq):
        if here == j:
            out.append(tuple(seq))
        if len(seq) == max_len:
            return
        for a in q.arrows:
            if a.src == here:
                go(a.tgt, seq + [a.id])

    go(i, [])
    return sorted(out, key=lambda s: (len(s), s))


def oracle_graph_morphisms(g: Quiver, h: Quiver):
    """Every valid graph morphism g -> h as (vertex_map, arrow_map) dicts."""
    gv, ga = g.vertex_ids, g.arrows
    for images in itertools.product(h.vertex_ids, repeat=len(gv)):
        vm = dict(zip(gv, images))
        options = [[b.id for b in h.arrows if b.src == vm[a.src] and b.tgt == vm[a.tgt]] for a in ga]
        for choice in itertools.product(*options):
            yield vm, dict(zip((a.id for a in ga), choice))


def as_morphism(g: Quiver, h: Quiver, vm, am) -> GraphMorphism:
    return GraphMorphism(g, h, dict(vm), dict(am))


def naive_matmul(a, b, n, inner, m, p):
    """(n x inner) times (inner x m) for integer nested lists, reduced mod p."""
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) % p for j in range(m)] for i in range(n)]


def matrix_to_ints(m: Matrix):
    return [[int(x) for x in row] for row in m.row_lists()]
