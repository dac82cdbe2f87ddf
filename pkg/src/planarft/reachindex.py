"""Bitset reachability over graph views.

Closure rows are Python ints used as n-bit sets.  Full closures run a Tarjan
SCC condensation followed by a reverse-topological OR sweep, so one closure
costs O(m) big-int ORs.  Single-source searches are plain BFS.
"""

from __future__ import annotations

from .views import GraphView


def closure_rows(view: GraphView) -> dict[int, int]:
    """reach[v] = bitmask of vertices reachable from v (v included)."""
    verts = [v for v in view.vertices()]
    vset = set(verts)
    adj = {v: [nb for nb, _, _ in view.out(v) if nb in vset] for v in verts}

    # iterative Tarjan
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    counter = 0
    for root in verts:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    comp_of[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)

    # comps are produced in reverse topological order (sinks first)
    comp_mask = []
    comp_succ: list[set[int]] = []
    for ci, comp in enumerate(comps):
        m = 0
        for v in comp:
            m |= 1 << v
        comp_mask.append(m)
        comp_succ.append(set())
    for v in verts:
        cv = comp_of[v]
        for w in adj[v]:
            cw = comp_of[w]
            if cw != cv:
                comp_succ[cv].add(cw)
    reach_c = [0] * len(comps)
    for ci in range(len(comps)):  # sinks first
        m = comp_mask[ci]
        for cj in comp_succ[ci]:
            m |= reach_c[cj]
        reach_c[ci] = m
    return {v: reach_c[comp_of[v]] for v in verts}


def _condense(view: GraphView):
    """Tarjan condensation: (comp_of, comps in reverse topological order, adj)."""
    verts = [v for v in view.vertices()]
    vset = set(verts)
    adj = {v: [nb for nb, _, _ in view.out(v) if nb in vset] for v in verts}
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    counter = 0
    for root in verts:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    comp_of[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comp_of, comps, adj


class CondensedView:
    """A view's SCC condensation, reusable across many position sweeps."""

    def __init__(self, view: GraphView):
        self.comp_of, self.comps, self.adj = _condense(view)
        self.comp_succ: list[list[int]] = [[] for _ in self.comps]
        for v, outs in self.adj.items():
            cv = self.comp_of[v]
            for w in outs:
                cw = self.comp_of[w]
                if cw != cv:
                    self.comp_succ[cv].append(cw)

    def min_pos(self, pos_of: dict[int, int]) -> dict[int, int]:
        INFTY = 1 << 60
        best = [INFTY] * len(self.comps)
        for v, p in pos_of.items():
            cv = self.comp_of.get(v)
            if cv is not None and p < best[cv]:
                best[cv] = p
        for ci in range(len(self.comps)):  # sinks first
            b = best[ci]
            for cj in self.comp_succ[ci]:
                if best[cj] < b:
                    b = best[cj]
            best[ci] = b
        return {v: best[c] for v, c in self.comp_of.items() if best[c] < INFTY}


def min_pos_dp(view: GraphView, pos_of: dict[int, int]) -> dict[int, int]:
    """For every vertex v: min pos_of[x] over x reachable from v (x=v allowed).

    One O(m) sweep over the SCC condensation; vertices that reach no
    position-carrying vertex are absent from the result.
    """
    return CondensedView(view).min_pos(pos_of)


def max_pos_dp(view: GraphView, pos_of: dict[int, int]) -> dict[int, int]:
    """For every vertex v: max pos_of[x] over x that REACH v (x=v allowed)."""
    got = min_pos_dp(view.reverse(), {v: -p for v, p in pos_of.items()})
    return {v: -p for v, p in got.items()}


def bfs_reach(view: GraphView, source: int) -> set[int]:
    if not view.alive(source):
        return set()
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for nb, _, _ in view.out(v):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def bfs_coreach(view: GraphView, target: int) -> set[int]:
    if not view.alive(target):
        return set()
    seen = {target}
    stack = [target]
    while stack:
        v = stack.pop()
        for nb, _, _ in view.inc(v):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def first_on_path(reach_set_or_mask, path_vertices) -> int | None:
    """Earliest path position whose vertex is in the reach set; None if none."""
    if isinstance(reach_set_or_mask, int):
        for i, v in enumerate(path_vertices):
            if (reach_set_or_mask >> v) & 1:
                return i
        return None
    for i, v in enumerate(path_vertices):
        if v in reach_set_or_mask:
            return i
    return None


def last_on_path(coreach_set, path_vertices) -> int | None:
    """Latest path position whose vertex can reach the target set."""
    for i in range(len(path_vertices) - 1, -1, -1):
        if path_vertices[i] in coreach_set:
            return i
    return None
