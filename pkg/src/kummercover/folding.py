"""Stallings graphs for finitely generated subgroups of free groups: folding,
membership, rank, free bases, fiber-product intersections and DOT export.

Edges carry a positive generator label; an edge (u, g, v) is traversed forward
as x_g and backward as its inverse.  Folded graphs are deterministic and
co-deterministic, and all constructors return the canonical BFS-relabeled
form, so equal values mean isomorphic basepointed labeled graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .cover import CurveParams, alpha_mod_n
from .freegroup import Word


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class StallingsGraph:
    rank: int
    num_vertices: int
    basepoint: int
    edges: tuple[tuple[int, int, int], ...]   # (src, label, dst), label in [1, rank]

    def out_map(self) -> dict[tuple[int, int], int]:
        return {(u, g): v for u, g, v in self.edges}

    def in_map(self) -> dict[tuple[int, int], int]:
        return {(v, g): u for u, g, v in self.edges}

    def degree(self, v: int) -> int:
        return sum(1 for u, _, w in self.edges for x in (u, w) if x == v)


def _canonicalize(rank: int, basepoint: int, edges: Iterable[tuple[int, int, int]],
                  ) -> StallingsGraph:
    """BFS from the basepoint with label-sorted traversal; assumes the graph is
    folded and connected."""
    edges = list(edges)
    out: dict[tuple[int, int], int] = {}
    inc: dict[tuple[int, int], int] = {}
    for u, g, v in edges:
        out[(u, g)] = v
        inc[(v, g)] = u
    order: dict[int, int] = {basepoint: 0}
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for g in range(1, rank + 1):
            for nbr_map in (out, inc):
                w = nbr_map.get((v, g))
                if w is not None and w not in order:
                    order[w] = len(order)
                    queue.append(w)
    new_edges = sorted((order[u], g, order[v]) for u, g, v in edges
                       if u in order and v in order)
    return StallingsGraph(rank=rank, num_vertices=len(order), basepoint=0,
                          edges=tuple(new_edges))


def _fold_edges(n_vertices: int, basepoint: int,
                edges: list[tuple[int, int, int]]) -> tuple[int, list[tuple[int, int, int]]]:
    """Worklist union-find folding; returns (basepoint root, folded edge list)
    with vertices renamed to roots (not yet canonical).  Near-linear: each
    merge moves the smaller adjacency dict into the larger one."""
    parent = list(range(n_vertices))
    outm: list[dict[int, int]] = [{} for _ in range(n_vertices)]
    inm: list[dict[int, int]] = [{} for _ in range(n_vertices)]
    stack = list(edges)

    def merge(x: int, y: int) -> None:
        # x, y distinct roots; loser's adjacency is re-queued as plain edges
        if len(outm[x]) + len(inm[x]) < len(outm[y]) + len(inm[y]):
            x, y = y, x
        parent[y] = x
        moved_out, moved_in = outm[y], inm[y]
        outm[y], inm[y] = {}, {}
        push = stack.append
        for g, t in moved_out.items():
            push((y, g, t))
        for g, s in moved_in.items():
            push((s, g, y))

    while stack:
        u, g, v = stack.pop()
        ru = u
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rv = v
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        t = outm[ru].get(g)
        if t is not None:
            rt = t
            while parent[rt] != rt:
                parent[rt] = parent[parent[rt]]
                rt = parent[rt]
            outm[ru][g] = rt
            if rt != rv:
                merge(rt, rv)
                stack.append((ru, g, rv))
                continue
        else:
            outm[ru][g] = rv
        s = inm[rv].get(g)
        if s is not None:
            rs = s
            while parent[rs] != rs:
                parent[rs] = parent[parent[rs]]
                rs = parent[rs]
            inm[rv][g] = rs
            if rs != ru:
                merge(rs, ru)
                stack.append((rs, g, rv))
        else:
            inm[rv][g] = ru

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    folded = set()
    for r in range(n_vertices):
        if find(r) == r:
            for g, t in outm[r].items():
                folded.add((r, g, find(t)))
    return find(basepoint), sorted(folded)


def _core_prune(basepoint: int, edges: list[tuple[int, int, int]]
                ) -> list[tuple[int, int, int]]:
    """Drop hanging trees: repeatedly remove degree-1 vertices other than the
    basepoint (loops count twice)."""
    edges = list(edges)
    while True:
        deg: dict[int, int] = {}
        for u, _, v in edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        hanging = {v for v, k in deg.items() if k == 1 and v != basepoint}
        if not hanging:
            return edges
        edges = [(u, g, v) for u, g, v in edges if u not in hanging and v not in hanging]


def _finish(rank: int, basepoint: int, n_vertices: int,
            edges: list[tuple[int, int, int]]) -> StallingsGraph:
    bp, folded = _fold_edges(n_vertices, basepoint, edges)
    pruned = _core_prune(bp, folded)
    return _canonicalize(rank, bp, pruned)


def graph_from_words(rank: int, words: Sequence[Word]) -> StallingsGraph:
    """Folded core graph of the subgroup generated by the given reduced words."""
    edges: list[tuple[int, int, int]] = []
    out: dict[tuple[int, int], int] = {}
    inc: dict[tuple[int, int], int] = {}
    next_vertex = 1  # 0 is the basepoint
    for w in words:
        if w.rank != rank:
            raise GraphError("word rank mismatch")
        cur = 0
        remaining = len(w)
        for g, e in w.syllables:
            pos = e > 0
            for _ in range(abs(e)):
                remaining -= 1
                # follow an existing edge when one is already there (shared
                # prefixes then cost nothing in the folding pass)
                follow = out.get((cur, g)) if pos else inc.get((cur, g))
                if follow is not None and remaining > 0:
                    cur = follow
                    continue
                nxt = 0 if remaining == 0 else next_vertex
                if nxt != 0:
                    next_vertex += 1
                if pos:
                    edges.append((cur, g, nxt))
                    out.setdefault((cur, g), nxt)
                    inc.setdefault((nxt, g), cur)
                else:
                    edges.append((nxt, g, cur))
                    out.setdefault((nxt, g), cur)
                    inc.setdefault((cur, g), nxt)
                cur = nxt
    return _finish(rank, 0, next_vertex, edges)


def fold(g: StallingsGraph) -> StallingsGraph:
    """Idempotent folding + core pruning + canonical relabeling."""
    return _finish(g.rank, g.basepoint, g.num_vertices, list(g.edges))


def rank(g: StallingsGraph) -> int:
    """First Betti number E - V + 1 of the connected core."""
    verts = {g.basepoint}
    for u, _, v in g.edges:
        verts.add(u)
        verts.add(v)
    # connectivity check (undirected)
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for u, _, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {g.basepoint}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if seen != verts:
        raise GraphError("graph is disconnected")
    return len(g.edges) - len(verts) + 1


def membership_graph(g: StallingsGraph, w: Word) -> bool:
    """True iff w traces a closed path at the basepoint."""
    if w.rank != g.rank:
        raise GraphError("word rank mismatch")
    out = g.out_map()
    inc = g.in_map()
    v = g.basepoint
    for letter in w.letters():
        nxt = out.get((v, letter)) if letter > 0 else inc.get((v, -letter))
        if nxt is None:
            return False
        v = nxt
    return v == g.basepoint


def product_graph(g1: StallingsGraph, g2: StallingsGraph) -> StallingsGraph:
    """Basepoint component of the label-matched fiber product; realizes the
    intersection of the two subgroups."""
    if g1.rank != g2.rank:
        raise GraphError("rank mismatch")
    out1, in1 = g1.out_map(), g1.in_map()
    out2, in2 = g2.out_map(), g2.in_map()
    start = (g1.basepoint, g2.basepoint)
    index = {start: 0}
    queue = deque([start])
    edges: list[tuple[int, int, int]] = []
    while queue:
        pair = queue.popleft()
        v1, v2 = pair
        for g in range(1, g1.rank + 1):
            w1, w2 = out1.get((v1, g)), out2.get((v2, g))
            if w1 is not None and w2 is not None:
                tgt = (w1, w2)
                if tgt not in index:
                    index[tgt] = len(index)
                    queue.append(tgt)
                edges.append((index[pair], g, index[tgt]))
            u1, u2 = in1.get((v1, g)), in2.get((v2, g))
            if u1 is not None and u2 is not None:
                src = (u1, u2)
                if src not in index:
                    index[src] = len(index)
                    queue.append(src)
                e = (index[src], g, index[pair])
                edges.append(e)
    edges = sorted(set(edges))
    pruned = _core_prune(0, edges)
    return _canonicalize(g1.rank, 0, pruned)


def free_basis(g: StallingsGraph) -> tuple[Word, ...]:
    """One word per non-tree edge relative to a BFS spanning tree at the basepoint."""
    out = g.out_map()
    inc = g.in_map()
    # path[v] = reduced word reading the tree path basepoint -> v
    path: dict[int, Word] = {g.basepoint: Word.identity(g.rank)}
    tree: set[tuple[int, int, int]] = set()
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for lab in range(1, g.rank + 1):
            w = out.get((v, lab))
            if w is not None and w not in path:
                path[w] = path[v] * Word.generator(g.rank, lab)
                tree.add((v, lab, w))
                queue.append(w)
            u = inc.get((v, lab))
            if u is not None and u not in path:
                path[u] = path[v] * Word.generator(g.rank, lab, -1)
                tree.add((u, lab, v))
                queue.append(u)
    basis = []
    for u, lab, v in g.edges:
        if (u, lab, v) not in tree:
            basis.append(path[u] * Word.generator(g.rank, lab) * path[v].inverse())
    return tuple(basis)


def export_dot(g: StallingsGraph) -> str:
    """Deterministic DOT rendering; identical graphs give byte-identical text."""
    c = _canonicalize(g.rank, g.basepoint, g.edges)
    lines = ["digraph stallings {"]
    verts = {c.basepoint}
    for u, _, v in c.edges:
        verts.add(u)
        verts.add(v)
    for v in sorted(verts):
        shape = "doublecircle" if v == c.basepoint else "circle"
        lines.append(f'  v{v} [shape={shape}];')
    for u, lab, v in c.edges:
        lines.append(f'  v{u} -> v{v} [label="x{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- named graphs ------------------------------------------------------------

def winding_kernel_generators(n: int, rank: int) -> tuple[Word, ...]:
    """Generators x_1^i x_j x_1^{-i-1} (0 <= i <= n-2, j >= 2) and x_1^{n-1} x_j
    of the mod-n winding kernel for the all-ones exponent vector."""
    gens = []
    for i in range(n - 1):
        for j in range(2, rank + 1):
            gens.append(Word.make(rank, [(1, i), (j, 1), (1, -i - 1)]))
    for j in range(1, rank + 1):
        gens.append(Word.make(rank, [(1, n - 1), (j, 1)]))
    return tuple(gens)


def winding_cycle_graph(n: int, rank: int) -> StallingsGraph:
    """Direct construction of the mod-n winding kernel graph: an n-cycle with
    all generators in parallel between consecutive vertices."""
    edges = [(i, g, (i + 1) % n) for i in range(n) for g in range(1, rank + 1)]
    return _canonicalize(rank, 0, edges)


def powers_graph(d: Sequence[int]) -> StallingsGraph:
    """Graph of <x_1^{d_1}, ..., x_m^{d_m}>: a bouquet of subdivided loops."""
    rank = len(d)
    edges: list[tuple[int, int, int]] = []
    nxt = 1
    for j, dj in enumerate(d, start=1):
        cur = 0
        for k in range(dj):
            tgt = 0 if k == dj - 1 else nxt
            if tgt != 0:
                nxt += 1
            edges.append((cur, j, tgt))
            cur = tgt
    return _canonicalize(rank, 0, edges)


def full_bouquet(rank: int) -> StallingsGraph:
    """Single-vertex graph accepting the whole free group."""
    return StallingsGraph(rank=rank, num_vertices=1, basepoint=0,
                          edges=tuple((0, g, 0) for g in range(1, rank + 1)))


def phi_substitute(w: Word, d: Sequence[int]) -> Word:
    """Substitution x_j -> x_j^{d_j} (stays reduced for positive d_j)."""
    return Word.make(w.rank, [(g, e * d[g - 1]) for g, e in w.syllables])


@lru_cache(maxsize=64)
def _intersection_graph(n: int, d: tuple[int, ...]) -> StallingsGraph:
    return product_graph(winding_cycle_graph(n, len(d)), powers_graph(d))


def pullback_check(p: CurveParams, w: Word) -> bool:
    """Agreement bit between the graph-theoretic membership of phi(w) in the
    intersection graph and the direct winding oracle; must always be true."""
    prod = _intersection_graph(p.n, p.d[:p.rank])
    graph_side = membership_graph(prod, phi_substitute(w, p.d[:p.rank]))
    oracle_side = alpha_mod_n(p, w) == 0
    return graph_side == oracle_side
