"""Shared test corpus: every table algebra plus seeded random posets and quivers."""
from __future__ import annotations

import math
import random
from functools import lru_cache

from coxeterlab import algebras as alg
from coxeterlab.tables import load_data

SEED = 20240917


def dynkin_algebras():
    out = {}
    for row in load_data("dynkin")["rows"]:
        out[row["type"]] = alg.from_hereditary_quiver(alg.dynkin_quiver(row["type"]))
    return out


def extended_dynkin_algebras():
    out = {}
    for row in load_data("extended_dynkin")["rows"]:
        t = row["type"]
        if t.startswith("A~"):
            p, q = row["weights"]
            q_ = alg.affine_a_quiver([True] * p + [False] * q)
        else:
            q_ = alg.extended_dynkin_quiver(t.replace("~", ""))
        out[t] = alg.from_hereditary_quiver(q_)
    return out


def weight_algebras():
    return {tuple(r["weights"]): alg.extended_canonical(r["weights"]) for r in load_data("weights")["rows"]}


def random_poset(rng: random.Random, n: int) -> alg.PosetSpec:
    els = [f"p{i}" for i in range(n)]
    covers = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    perm = els[:]
    rng.shuffle(perm)
    return alg.PosetSpec(perm, covers)


def random_quiver(rng: random.Random, n: int) -> alg.QuiverSpec:
    verts = [f"q{i}" for i in range(n)]
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            r = rng.random()
            if r < 0.25:
                arrows.append((verts[i], verts[j]))
            elif r < 0.3:
                arrows += [(verts[i], verts[j])] * 2
    return alg.QuiverSpec(verts, arrows)


@lru_cache(maxsize=None)
def random_algebras(count: int = 200) -> tuple[tuple[str, alg.CartanAlgebra], ...]:
    rng = random.Random(SEED)
    out = []
    for k in range(count):
        n = rng.randint(1, 8)
        if k % 2:
            out.append((f"poset{k}", alg.from_poset(random_poset(rng, n))))
        else:
            out.append((f"quiver{k}", alg.from_hereditary_quiver(random_quiver(rng, n))))
    return tuple(out)


@lru_cache(maxsize=None)
def full_corpus() -> tuple[tuple[str, alg.CartanAlgebra], ...]:
    items = [(k, a) for k, a in dynkin_algebras().items()]
    items += [(k, a) for k, a in extended_dynkin_algebras().items()]
    items += [(str(k), a) for k, a in weight_algebras().items()]
    items += [(f"canonical{w}", alg.canonical(list(w))) for w in [(2, 3), (2, 3, 7), (2, 2, 2, 3), (3, 3, 3)]]
    items += list(random_algebras())
    return tuple(items)


def shift_action(a: alg.CartanAlgebra, N: int, step: int) -> alg.GroupAction:
    """i_g -> i_{g+step}, j_g -> j_{g+step} on a bipartite cover or crown."""
    mapping = {}
    for g in range(N):
        for side in "ij":
            mapping[f"{side}{g}"] = f"{side}{(g + step) % N}"
    return alg.GroupAction([alg.vertex_permutation(a, mapping)])


def copies(q: alg.QuiverSpec, k: int) -> alg.QuiverSpec:
    verts = [f"{c}/{v}" for c in range(k) for v in q.vertices]
    arrows = [(f"{c}/{s}", f"{c}/{t}") for c in range(k) for s, t in q.arrows]
    return alg.QuiverSpec(verts, arrows)


def rotate_copies(a: alg.CartanAlgebra, q: alg.QuiverSpec, k: int) -> alg.GroupAction:
    mapping = {f"{c}/{v}": f"{(c + 1) % k}/{v}" for c in range(k) for v in q.vertices}
    return alg.GroupAction([alg.vertex_permutation(a, mapping)])


def galois_cases():
    """Ten hand-built free actions: (name, cover algebra, action, expected quotient Coxeter polynomial or None)."""
    from coxeterlab.polyengine import T

    out = []
    for N, m, step in [(3, 2, 1), (4, 3, 1), (5, 2, 1), (4, 2, 2), (6, 3, 2)]:
        a = alg.from_hereditary_quiver(alg.bipartite_cover_quiver(N, m))
        order = N // math.gcd(N, step)
        expected = T ** 2 - (m * m - 2) * T + 1 if order == N else None
        out.append((f"cover{N},{m}/shift{step}", a, shift_action(a, N, step), expected))
    a = alg.from_hereditary_quiver(alg.crown_quiver(2))
    out.append(("crown2/rotate", a, shift_action(a, 3, 1), T ** 2 - 2 * T + 1))
    for name, k in [("E6", 2), ("D4", 2), ("A3", 3)]:
        q = copies(alg.dynkin_quiver(name), k)
        a = alg.from_hereditary_quiver(q)
        expected = alg.from_hereditary_quiver(alg.dynkin_quiver(name))
        from coxeterlab.coxeter import coxeter_polynomial
        out.append((f"{k}x{name}/permute", a, rotate_copies(a, alg.dynkin_quiver(name), k),
                    coxeter_polynomial(expected)))
    q = alg.affine_a_quiver([True, False] * 3)
    a = alg.from_hereditary_quiver(q)
    mapping = {str(i): str((i + 2) % 6) for i in range(6)}
    out.append(("cycle6/rotate2", a, alg.GroupAction([alg.vertex_permutation(a, mapping)]), T ** 2 - 2 * T + 1))
    return out
