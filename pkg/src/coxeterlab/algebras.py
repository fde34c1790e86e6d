"""Cartan matrices of triangular algebras from structural descriptions.

Convention: ``cartan[i][j]`` counts (independent) paths from vertex i to vertex j,
so column j is the dimension vector of the indecomposable projective at j and
constructors list vertices in an order that makes the matrix upper triangular.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import linalg


class ConstructionError(ValueError):
    """Raised when a structural description does not define a valid algebra."""


def _freeze(M: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


def _topological_order(n: int, edges: Iterable[tuple[int, int]]) -> list[int] | None:
    succ: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for s, t in edges:
        if t not in succ[s]:
            succ[s].add(t)
            indeg[t] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == n else None


@dataclass(frozen=True)
class CartanAlgebra:
    """Unimodular integer Cartan matrix with vertex labels and a provenance record."""

    cartan: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    provenance: Any = None

    def __post_init__(self):
        C = _freeze(self.cartan)
        object.__setattr__(self, "cartan", C)
        n = len(C)
        if any(len(row) != n for row in C):
            raise ConstructionError("Cartan matrix must be square")
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise ConstructionError("one label per vertex required")
        object.__setattr__(self, "labels", labels)
        if any(C[i][i] != 1 for i in range(n)):
            raise ConstructionError("Cartan diagonal must be all ones")
        if self.triangular_order() is None:
            raise ConstructionError("Cartan matrix is not triangularizable (oriented cycle)")
        if abs(linalg.det(C)) != 1:
            raise ConstructionError("Cartan matrix is not unimodular")

    @property
    def n(self) -> int:
        return len(self.cartan)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.cartan]

    def triangular_order(self) -> list[int] | None:
        C = self.cartan
        n = len(C)
        return _topological_order(n, ((i, j) for i in range(n) for j in range(n) if i != j and C[i][j]))

    def relabel(self, order: Sequence[int]) -> "CartanAlgebra":
        """Same algebra with vertices listed in ``order``."""
        C = self.cartan
        return CartanAlgebra(
            [[C[i][j] for j in order] for i in order],
            [self.labels[i] for i in order],
            self.provenance,
        )

    def delete_vertex(self, v: int) -> "CartanAlgebra":
        keep = [i for i in range(self.n) if i != v]
        C = self.cartan
        return CartanAlgebra(
            [[C[i][j] for j in keep] for i in keep],
            [self.labels[i] for i in keep],
            {"op": "delete_vertex", "vertex": self.labels[v], "of": self.provenance},
        )

    # serialization
    def to_json(self) -> dict:
        return {
            "cartan": [[str(x) for x in row] for row in self.cartan],
            "labels": list(self.labels),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data) -> "CartanAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        prov = data.get("provenance")
        return cls([[int(x) for x in row] for row in data["cartan"]], data.get("labels") or (), prov)


# --- structural inputs


@dataclass(frozen=True)
class QuiverSpec:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...]

    def __init__(self, vertices: Iterable, arrows: Iterable[Sequence]):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise ConstructionError("duplicate vertex labels")
        arr = tuple((str(s), str(t)) for s, t in arrows)
        known = set(verts)
        for s, t in arr:
            if s not in known or t not in known:
                raise ConstructionError(f"arrow ({s}, {t}) uses an unknown vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arr)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data) -> "QuiverSpec":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data["arrows"])


@dataclass(frozen=True)
class PosetSpec:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def __init__(self, elements: Iterable, covers: Iterable[Sequence] = ()):
        els = tuple(str(v) for v in elements)
        if len(set(els)) != len(els):
            raise ConstructionError("duplicate poset elements")
        cov = tuple((str(a), str(b)) for a, b in covers)
        known = set(els)
        for a, b in cov:
            if a not in known or b not in known:
                raise ConstructionError(f"cover ({a}, {b}) uses an unknown element")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "covers", cov)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data) -> "PosetSpec":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["elements"], data.get("covers", []))

    def leq(self) -> list[list[bool]]:
        """Reflexive-transitive closure of the cover relation (elements in given order)."""
        idx = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        edges = [(idx[a], idx[b]) for a, b in self.covers]
        order = _topological_order(n, edges)
        if order is None or any(a == b for a, b in edges):
            raise ConstructionError("cover relation has a cycle")
        succ = [[] for _ in range(n)]
        for a, b in edges:
            succ[a].append(b)
        R = [[i == j for j in range(n)] for i in range(n)]
        for v in reversed(order):
            for w in succ[v]:
                R[v] = [x or y for x, y in zip(R[v], R[w])]
        return R


@dataclass(frozen=True)
class GroupAction:
    """Permutation group on vertex indices, given by generators (image lists)."""

    generators: tuple[tuple[int, ...], ...]

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        for g in gens:
            if sorted(g) != list(range(len(g))):
                raise ConstructionError(f"{list(g)} is not a permutation")
        if len({len(g) for g in gens}) > 1:
            raise ConstructionError("generators act on different vertex counts")
        object.__setattr__(self, "generators", gens)

    def elements(self, n: int) -> list[tuple[int, ...]]:
        ident = tuple(range(n))
        for g in self.generators:
            if len(g) != n:
                raise ConstructionError(f"generator acts on {len(g)} vertices, algebra has {n}")
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    gh = tuple(g[h[i]] for i in range(n))
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
        return sorted(seen)

    def orbits(self, n: int) -> list[list[int]]:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data) -> "GroupAction":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["generators"])


def check_automorphisms(a: CartanAlgebra, g: GroupAction) -> None:
    C = a.cartan
    for gen in g.generators:
        if len(gen) != a.n:
            raise ConstructionError("group acts on a different number of vertices")
        for i in range(a.n):
            for j in range(a.n):
                if C[gen[i]][gen[j]] != C[i][j]:
                    raise ConstructionError(
                        f"permutation {list(gen)} does not preserve the Cartan structure"
                    )


# --- constructors


def from_hereditary_quiver(q: QuiverSpec) -> CartanAlgebra:
    """Path algebra of an acyclic quiver; parallel arrows multiply path counts."""
    idx = {v: i for i, v in enumerate(q.vertices)}
    n = len(q.vertices)
    edges = [(idx[s], idx[t]) for s, t in q.arrows]
    if any(s == t for s, t in edges):
        raise ConstructionError("quiver has a loop")
    order = _topological_order(n, edges)
    if order is None:
        raise ConstructionError("quiver has an oriented cycle")
    mult = [[0] * n for _ in range(n)]
    for s, t in edges:
        mult[s][t] += 1
    pos = {v: k for k, v in enumerate(order)}
    # paths[i][j]: in topological positions
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(n - 1, -1, -1):
        v = order[k]
        for w in range(n):
            if mult[v][w]:
                kw = pos[w]
                for j in range(n):
                    if P[kw][j]:
                        P[k][j] += mult[v][w] * P[kw][j]
    return CartanAlgebra(P, [q.vertices[v] for v in order], {"kind": "quiver", **q.to_json()})


def from_poset(p: PosetSpec) -> CartanAlgebra:
    """Incidence algebra: ``cartan[i][j] = 1`` iff i <= j."""
    R = p.leq()
    n = len(p.elements)
    idx = {e: i for i, e in enumerate(p.elements)}
    order = _topological_order(n, [(idx[a], idx[b]) for a, b in p.covers])
    C = [[int(R[i][j]) for j in order] for i in order]
    return CartanAlgebra(C, [p.elements[i] for i in order], {"kind": "poset", **p.to_json()})


def truncated_linear(n: int, r: int) -> CartanAlgebra:
    """Linear quiver 1 -> 2 -> ... -> n with all paths of length r set to zero."""
    if n < 1:
        raise ConstructionError("need at least one vertex")
    if r < 2:
        raise ConstructionError("nilpotency index must be at least 2")
    C = [[int(0 <= j - i < r) for j in range(n)] for i in range(n)]
    return CartanAlgebra(C, [str(i + 1) for i in range(n)], {"kind": "truncated", "n": n, "r": r})


def tensor(a: CartanAlgebra, b: CartanAlgebra) -> CartanAlgebra:
    C = linalg.kron(a.cartan, b.cartan)
    labels = [f"{x}*{y}" for x in a.labels for y in b.labels]
    return CartanAlgebra(C, labels, {"op": "tensor", "left": a.provenance, "right": b.provenance})


def one_point_extension(a: CartanAlgebra, d: Sequence[int], label: str = "+") -> CartanAlgebra:
    """Adjoin a vertex whose projective has class [d; 1]."""
    d = [int(x) for x in d]
    if len(d) != a.n:
        raise ConstructionError(f"extension vector has length {len(d)}, algebra has {a.n} vertices")
    if any(x < 0 for x in d):
        raise ConstructionError("extension vector must be non-negative")
    C = [list(row) + [x] for row, x in zip(a.cartan, d)] + [[0] * a.n + [1]]
    lab = label
    while lab in a.labels:
        lab += "'"
    return CartanAlgebra(C, list(a.labels) + [lab], {"op": "one_point_extension", "by": d, "of": a.provenance})


def double_repetitive(a: CartanAlgebra) -> CartanAlgebra:
    """Block matrix [[C, C^T], [0, C]]."""
    C = a.matrix()
    Z = linalg.zeros(a.n)
    M = linalg.block([[C, linalg.transpose(C)], [Z, C]])
    labels = [f"{x}" for x in a.labels] + [f"{x}'" for x in a.labels]
    return CartanAlgebra(M, labels, {"op": "double_repetitive", "of": a.provenance})


def galois_quotient(a: CartanAlgebra, g: GroupAction) -> CartanAlgebra:
    """Orbit algebra of a free action: ``C_B[s][t] = sum_{j in orbit t} C_A[i][j]``."""
    check_automorphisms(a, g)
    n = a.n
    for h in g.elements(n):
        if h != tuple(range(n)) and any(h[i] == i for i in range(n)):
            fixed = [a.labels[i] for i in range(n) if h[i] == i]
            raise ConstructionError(f"action is not free: a group element fixes {fixed}")
    orbits = g.orbits(n)
    C = a.cartan
    B = []
    for s in orbits:
        rows = {tuple(sum(C[i][j] for j in t) for t in orbits) for i in s}
        if len(rows) != 1:
            raise ConstructionError("orbit sums depend on the chosen representative")
        B.append(list(rows.pop()))
    labels = ["{" + ",".join(a.labels[i] for i in s) + "}" for s in orbits]
    quotient = CartanAlgebra(B, labels, {"op": "galois_quotient", "group": g.to_json(), "of": a.provenance})
    order = quotient.triangular_order()
    return quotient.relabel(order)


def canonical(weights: Sequence[int]) -> CartanAlgebra:
    """Canonical algebra of weight type (p_1, ..., p_t)."""
    weights = [int(p) for p in weights]
    if len(weights) < 2:
        raise ConstructionError("canonical algebras need at least two weights")
    if any(p < 2 for p in weights):
        raise ConstructionError("weights must be at least 2")
    chains = [PosetSpec([f"{k}.{j}" for j in range(1, p)],
                        [(f"{k}.{j}", f"{k}.{j + 1}") for j in range(1, p - 1)])
              for k, p in enumerate(weights, 1)]
    a = supercanonical(chains)
    return CartanAlgebra(a.cartan, a.labels, {"kind": "canonical", "weights": weights})


def supercanonical(posets: Sequence[PosetSpec]) -> CartanAlgebra:
    """Glue the double cones of the posets at a common source and sink.

    The t paths from source to sink satisfy t-2 linear relations, leaving a
    two-dimensional space, so ``cartan[source][sink] = 2``.
    """
    if len(posets) < 2:
        raise ConstructionError("need at least two posets")
    labels = ["a"]
    blocks = []
    for k, p in enumerate(posets, 1):
        if not p.elements:
            raise ConstructionError("posets must be non-empty")
        inc = from_poset(p)
        blocks.append(inc)
        labels += [f"{k}:{x}" for x in inc.labels]
    labels.append("w")
    n = len(labels)
    C = linalg.identity(n)
    C[0][n - 1] = 2
    off = 1
    for inc in blocks:
        m = inc.n
        for i in range(m):
            C[0][off + i] = 1
            C[off + i][n - 1] = 1
            for j in range(m):
                C[off + i][off + j] = inc.cartan[i][j]
        off += m
    return CartanAlgebra(C, labels, {"kind": "supercanonical", "posets": [p.to_json() for p in posets]})


def supercanonical_poly(posets: Sequence[PosetSpec]):
    """(T-1)^2 times the product of the Coxeter polynomials of the poset algebras."""
    from .coxeter import coxeter_polynomial
    from .polyengine import T, poly_prod

    if len(posets) < 2:
        raise ConstructionError("need at least two posets")
    return (T - 1) ** 2 * poly_prod(coxeter_polynomial(from_poset(p)) for p in posets)


def extended_canonical(weights: Sequence[int], projective: str = "source") -> CartanAlgebra:
    """One-point extension of the canonical algebra by an indecomposable projective."""
    c = canonical(weights)
    col = {"source": 0, "sink": c.n - 1}.get(projective)
    if col is None:
        raise ConstructionError("projective must be 'source' or 'sink'")
    ext = one_point_extension(c, [row[col] for row in c.cartan], label="e")
    return CartanAlgebra(ext.cartan, ext.labels,
                         {"kind": "extended-canonical", "weights": list(weights), "projective": projective})


# --- named quiver families


def linear_quiver(n: int) -> QuiverSpec:
    return QuiverSpec([str(i) for i in range(1, n + 1)], [(str(i), str(i + 1)) for i in range(1, n)])


def star_quiver(weights: Sequence[int]) -> QuiverSpec:
    """Star [p_1, ..., p_t]: a centre with arms of p_i - 1 vertices, arrows pointing outward."""
    if any(p < 1 for p in weights):
        raise ConstructionError("star arm lengths must be positive")
    verts = ["c"]
    arrows = []
    for k, p in enumerate(weights, 1):
        prev = "c"
        for j in range(1, p):
            v = f"{k}.{j}"
            verts.append(v)
            arrows.append((prev, v))
            prev = v
    return QuiverSpec(verts, arrows)


def reorient(q: QuiverSpec, flips: Sequence[bool]) -> QuiverSpec:
    """Reverse the arrows whose flag is set."""
    if len(flips) != len(q.arrows):
        raise ConstructionError("one flip flag per arrow")
    arrows = [(t, s) if f else (s, t) for (s, t), f in zip(q.arrows, flips)]
    return QuiverSpec(q.vertices, arrows)


def dynkin_quiver(kind: str) -> QuiverSpec:
    """A_n, D_n (n >= 4), E_6, E_7, E_8 as stars with the standard orientation."""
    kind = kind.strip().upper()
    letter, num = kind[0], int(kind[1:])
    if letter == "A" and num >= 1:
        return star_quiver([num])
    if letter == "D" and num >= 4:
        return star_quiver([2, 2, num - 2])
    if letter == "E" and num in (6, 7, 8):
        return star_quiver([2, 3, num - 3])
    raise ConstructionError(f"unknown Dynkin type {kind!r}")


def affine_a_quiver(orientation: Sequence[bool]) -> QuiverSpec:
    """Cycle on len(orientation) vertices; edge i joins i and i+1, True = clockwise (i -> i+1)."""
    m = len(orientation)
    if m < 2:
        raise ConstructionError("extended A needs at least two vertices")
    if all(orientation) or not any(orientation):
        raise ConstructionError("orientation has an oriented cycle")
    verts = [str(i) for i in range(m)]
    arrows = []
    for i, cw in enumerate(orientation):
        a, b = str(i), str((i + 1) % m)
        arrows.append((a, b) if cw else (b, a))
    return QuiverSpec(verts, arrows)


def extended_dynkin_quiver(kind: str) -> QuiverSpec:
    """D~_n (n >= 4, n+1 vertices), E~_6 = [3,3,3], E~_7 = [2,4,4], E~_8 = [2,3,6]."""
    kind = kind.strip().upper().replace("~", "")
    letter, num = kind[0], int(kind[1:])
    if letter == "D" and num >= 4:
        if num == 4:
            return star_quiver([2, 2, 2, 2])
        # spine 1 .. n-1 with two extra leaves at each end vertex of the spine's interior
        verts = [f"s{i}" for i in range(1, num)] + ["x1", "x2"]
        arrows = [(f"s{i}", f"s{i + 1}") for i in range(1, num - 1)]
        arrows += [("s2", "x1"), (f"s{num - 2}", "x2")]
        return QuiverSpec(verts, arrows)
    if letter == "E" and num == 6:
        return star_quiver([3, 3, 3])
    if letter == "E" and num == 7:
        return star_quiver([2, 4, 4])
    if letter == "E" and num == 8:
        return star_quiver([2, 3, 6])
    raise ConstructionError(f"unknown extended Dynkin type {kind!r}")


def kronecker_quiver(m: int) -> QuiverSpec:
    return QuiverSpec(["a", "b"], [("a", "b")] * m)


def subspace_star_quiver(m: int) -> QuiverSpec:
    """One source with m sink neighbours (the star [2, ..., 2] with m arms)."""
    return QuiverSpec(["i0"] + [f"j{k}" for k in range(1, m + 1)], [("i0", f"j{k}") for k in range(1, m + 1)])


def crown_quiver(s: int) -> QuiverSpec:
    """Alternating 2(s+1)-cycle: sources i_k, sinks j_k with i_k -> j_k and i_k -> j_{k-1}."""
    r = s + 1
    verts = [f"i{k}" for k in range(r)] + [f"j{k}" for k in range(r)]
    arrows = [(f"i{k}", f"j{k}") for k in range(r)] + [(f"i{k}", f"j{(k - 1) % r}") for k in range(r)]
    return QuiverSpec(verts, arrows)


def bipartite_cover_quiver(N: int, m: int) -> QuiverSpec:
    """Sources i_g and sinks j_g (g in Z/N) with arrows i_g -> j_{g+k}, k < m.

    The cyclic shift acts freely; the quotient is the m-arrow Kronecker quiver.
    """
    if m > N:
        raise ConstructionError("need m <= N")
    verts = [f"i{g}" for g in range(N)] + [f"j{g}" for g in range(N)]
    arrows = [(f"i{g}", f"j{(g + k) % N}") for g in range(N) for k in range(m)]
    return QuiverSpec(verts, arrows)


def vertex_permutation(a: CartanAlgebra, mapping: dict[str, str]) -> tuple[int, ...]:
    """Translate a label -> label map into an index permutation of ``a``."""
    idx = {lab: i for i, lab in enumerate(a.labels)}
    perm = list(range(a.n))
    for src, dst in mapping.items():
        perm[idx[src]] = idx[dst]
    if sorted(perm) != list(range(a.n)):
        raise ConstructionError("mapping is not a permutation of the vertices")
    return tuple(perm)


# --- posets used as supercanonical arms


def chain_poset(length: int, prefix: str = "") -> PosetSpec:
    els = [f"{prefix}{i}" for i in range(1, length + 1)]
    return PosetSpec(els, list(zip(els, els[1:])))


def pg_critical_poset(n: int) -> PosetSpec:
    """D_n: 1 < 3 and 2 < 3 followed by the chain 3 < 4 < ... < n."""
    if n < 3:
        raise ConstructionError("D_n needs n >= 3")
    els = [str(i) for i in range(1, n + 1)]
    covers = [("1", "3"), ("2", "3")] + [(str(i), str(i + 1)) for i in range(3, n)]
    return PosetSpec(els, covers)


def semichain_poset(n: int, m: int) -> PosetSpec:
    """D(n, m): two chains 1..m and 1'..m' with cross covers k < (k+1)', k' < k+1,
    both tops below 2m+1 < ... < n (the tail is the chain 2m+1..n)."""
    if m < 1 or n < 2 * m:
        raise ConstructionError("need m >= 1 and n >= 2m")
    top = [str(k) for k in range(1, m + 1)]
    bot = [f"{k}'" for k in range(1, m + 1)]
    tail = [str(k) for k in range(2 * m + 1, n + 1)]
    covers = list(zip(top, top[1:])) + list(zip(bot, bot[1:]))
    covers += [(top[k], bot[k + 1]) for k in range(m - 1)] + [(bot[k], top[k + 1]) for k in range(m - 1)]
    if tail:
        covers += [(top[-1], tail[0]), (bot[-1], tail[0])] + list(zip(tail, tail[1:]))
    return PosetSpec(top + bot + tail, covers)


def load_spec(path: str | Path) -> tuple[str, Any]:
    """Read a JSON input file and return ``(kind, spec)``."""
    with open(path) as fh:
        data = json.load(fh)
    return parse_spec(data)


def parse_spec(data: dict) -> tuple[str, Any]:
    if not isinstance(data, dict):
        raise ConstructionError("spec must be a JSON object")
    if "arrows" in data:
        return "quiver", QuiverSpec.from_json(data)
    if "covers" in data or "elements" in data:
        return "poset", PosetSpec.from_json(data)
    if "generators" in data:
        return "action", GroupAction.from_json(data)
    if "cartan" in data:
        return "cartan", CartanAlgebra.from_json(data)
    if "weights" in data:
        return "weights", [int(p) for p in data["weights"]]
    raise ConstructionError("unrecognized spec: expected arrows, covers, generators, cartan or weights")


def all_orientations(q: QuiverSpec) -> Iterable[QuiverSpec]:
    for flips in itertools.product([False, True], repeat=len(q.arrows)):
        yield reorient(q, flips)
