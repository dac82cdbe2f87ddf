"""Layered spanning trees.

A tree is stored as parent links over a host embedding's arcs (synthetic arcs
allowed: they only ever carry tree structure, never label paths); each tree
edge records its direction relative to the root walk ('down' = arc points
away from the root, 'up' = toward it).  A root-to-v walk then decomposes into
maximal same-direction runs of real arcs, each a directed path of the host.

Reachability trees use alternating forward/backward BFS layers; scale trees
use alternating Dijkstra balls of radius r.  The verifier measures the worst
number of runs and the heaviest run; it is the empirical check behind the
"O(1) directed paths" / (3,r)-layered contracts.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .embed import EmbeddedDigraph
from .errors import Disconnected


@dataclass
class SpanningTree:
    root: int
    parent: dict[int, int | None]          # vertex -> parent vertex
    parent_arc: dict[int, int | None]      # vertex -> arc id of tree edge to parent
    orient: dict[int, str]                 # 'down' if arc parent->v, 'up' if v->parent
    phase: dict[int, int]

    def members(self):
        return self.parent.keys()

    def root_walk(self, v: int) -> list[int]:
        walk = [v]
        while self.parent[walk[-1]] is not None:
            walk.append(self.parent[walk[-1]])
        walk.reverse()
        return walk

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertex walk u..v through the tree (via the LCA)."""
        au, av = self.root_walk(u), self.root_walk(v)
        i = 0
        while i < len(au) and i < len(av) and au[i] == av[i]:
            i += 1
        up = au[i - 1:]
        return up[::-1] + av[i:]

    def edge_set(self) -> set[int]:
        return {a for a in self.parent_arc.values() if a is not None}


def build_layered_spanning_tree(emb: EmbeddedDigraph, root: int | None = None,
                                r: int | None = None,
                                members: frozenset[int] | None = None) -> SpanningTree:
    """Alternating in/out BFS layers (r=None) or alternating r-balls."""
    verts = sorted(members) if members is not None else list(range(emb.n))
    if not verts:
        raise Disconnected("empty graph")
    vset = set(verts)
    if root is None:
        root = verts[0]
    tree = SpanningTree(root, {root: None}, {root: None}, {root: "down"}, {root: 0})
    covered: dict[int, int] = {root: 0}
    phase_no = 0
    forward = True
    stall = 0
    while len(covered) < len(verts):
        phase_no += 1
        if r is None:
            added = _phase_bfs(emb, vset, covered, forward, tree, phase_no)
        else:
            added = _phase_ball(emb, vset, covered, forward, tree, phase_no, r)
        if not added:
            stall += 1
            if stall > 2:
                raise Disconnected("alternating layers cannot cover the graph")
        else:
            stall = 0
        forward = not forward
    return tree


def _neighbors(emb: EmbeddedDigraph, v: int, forward: bool):
    pool = emb.out_arcs[v] if forward else emb.in_arcs[v]
    for a in pool:
        arc = emb.arcs[a]
        nb = arc.head if forward else arc.tail
        yield nb, arc.weight, a


def _phase_bfs(emb, vset, covered, forward, tree, phase_no) -> list[int]:
    pref = "down" if forward else "up"
    queue = sorted(covered, key=lambda v: (tree.orient[v] != pref, v))
    added = []
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for nb, _, a in sorted(_neighbors(emb, u, forward)):
            if nb in covered or nb not in vset:
                continue
            covered[nb] = phase_no
            tree.parent[nb] = u
            tree.parent_arc[nb] = a
            tree.orient[nb] = "down" if forward else "up"
            tree.phase[nb] = phase_no
            added.append(nb)
            queue.append(nb)
    return added


def _phase_ball(emb, vset, covered, forward, tree, phase_no, r) -> list[int]:
    dist = {v: 0 for v in covered}
    pq = [(0, v) for v in sorted(covered)]
    heapq.heapify(pq)
    while pq:
        d, u = heapq.heappop(pq)
        if d > dist.get(u, float("inf")):
            continue
        for nb, w, a in sorted(_neighbors(emb, u, forward)):
            if nb in covered or nb not in vset:
                continue
            if emb.arcs[a].synthetic:
                w = 0  # synthetic arcs carry tree structure, not length
            nd = d + w
            if nd > r or nd >= dist.get(nb, float("inf")):
                continue
            dist[nb] = nd
            tree.parent[nb] = u
            tree.parent_arc[nb] = a
            tree.orient[nb] = "down" if forward else "up"
            tree.phase[nb] = phase_no
            heapq.heappush(pq, (nd, nb))
    added = [v for v in dist if v not in covered]
    for v in added:
        covered[v] = phase_no
    return added


def root_path_segments(emb: EmbeddedDigraph, tree: SpanningTree, v: int
                       ) -> list[tuple[str, int]]:
    """Maximal directed runs of real arcs along the root-to-v walk.

    Synthetic tree arcs close the current run without starting one.
    """
    walk = tree.root_walk(v)
    runs: list[tuple[str, int]] = []
    cur_dir = None
    cur_len = 0
    for w in walk[1:]:
        a = tree.parent_arc[w]
        o = tree.orient[w]
        if emb.arcs[a].synthetic:
            if cur_dir is not None:
                runs.append((cur_dir, cur_len))
                cur_dir, cur_len = None, 0
            continue
        wt = emb.arcs[a].weight
        if o == cur_dir:
            cur_len += wt
        else:
            if cur_dir is not None:
                runs.append((cur_dir, cur_len))
            cur_dir, cur_len = o, wt
    if cur_dir is not None:
        runs.append((cur_dir, cur_len))
    return runs


def verify_layered(emb: EmbeddedDigraph, tree: SpanningTree, c_max: int,
                   r: int | None = None) -> tuple[int, int]:
    """Check every root walk is a concatenation of <= c_max directed paths of
    length <= r each (a run longer than r counts as ceil(len/r) paths)."""
    worst_c, worst_len = 0, 0
    for v in tree.members():
        runs = root_path_segments(emb, tree, v)
        count = 0
        for _, ln in runs:
            worst_len = max(worst_len, ln)
            count += 1 if r is None or ln == 0 else -(-ln // r)
        worst_c = max(worst_c, count)
    if worst_c > c_max:
        raise AssertionError(f"root walk splits into {worst_c} > {c_max} directed paths")
    return worst_c, worst_len
