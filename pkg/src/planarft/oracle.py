"""Brute-force ground truth: replacement-path reachability, distances,
budgeted firsts, and the delta-first contract checker.

Everything here is deliberately simple (DFS / binary-heap Dijkstra per query)
and used only at desk scale as the reference for every derived test value.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .views import GraphView

INF = float("inf")


@dataclass
class OracleResult:
    reachable: bool
    distance: int | float
    witness: list[int] | None


def _faulted(view: GraphView, f: int | None) -> GraphView:
    return view if f is None else view.delete_vertices([f])


def oracle_reach(view: GraphView, s: int, t: int, f: int | None = None) -> bool:
    v = _faulted(view, f)
    if not (v.alive(s) and v.alive(t)):
        return False
    if s == t:
        return True
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for nb, _, _ in v.out(x):
            if nb == t:
                return True
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return False


def dijkstra(view: GraphView, s: int, forbidden=frozenset()):
    """Exact integer distances from s; deterministic tie-break by vertex id."""
    dist: dict[int, int] = {}
    parent: dict[int, int] = {}
    if not view.alive(s) or s in forbidden:
        return dist, parent
    pq = [(0, s, -1)]
    while pq:
        d, v, par = heapq.heappop(pq)
        if v in dist:
            continue
        dist[v] = d
        parent[v] = par
        for nb, w, _ in view.out(v):
            if nb not in dist and nb not in forbidden:
                heapq.heappush(pq, (d + w, nb, v))
    return dist, parent


def oracle_dist(view: GraphView, s: int, t: int, f: int | None = None) -> int | float:
    v = _faulted(view, f)
    if not (v.alive(s) and v.alive(t)):
        return INF
    dist, _ = dijkstra(v, s)
    return dist.get(t, INF)


def oracle_result(view: GraphView, s: int, t: int, f: int | None = None) -> OracleResult:
    v = _faulted(view, f)
    if not (v.alive(s) and v.alive(t)):
        return OracleResult(False, INF, None)
    dist, parent = dijkstra(v, s)
    if t not in dist:
        return OracleResult(False, INF, None)
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return OracleResult(True, dist[t], path)


def oracle_first(view: GraphView, s: int, path_vertices, f: int | None = None) -> int | None:
    """Index on the path of the first vertex reachable from s (None if none)."""
    v = _faulted(view, f)
    if not v.alive(s):
        return None
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for nb, _, _ in v.out(x):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    for i, p in enumerate(path_vertices):
        if p in seen:
            return i
    return None


def oracle_last(view: GraphView, t: int, path_vertices, f: int | None = None) -> int | None:
    """Index of the last path vertex that can reach t."""
    v = _faulted(view, f)
    if not v.alive(t):
        return None
    seen = {t}
    stack = [t]
    while stack:
        x = stack.pop()
        for nb, _, _ in v.inc(x):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    for i in range(len(path_vertices) - 1, -1, -1):
        if path_vertices[i] in seen:
            return i
    return None


def oracle_dfirst(view: GraphView, s: int, path_vertices, alpha,
                  forbidden=frozenset()) -> int | None:
    """Index of the minimum-index path vertex with dist(s, v) <= alpha."""
    dist, _ = dijkstra(view, s, frozenset(forbidden))
    for i, p in enumerate(path_vertices):
        if p in dist and dist[p] <= alpha:
            return i
    return None


def check_delta_first(view: GraphView, s: int, path_vertices, alpha, delta,
                      candidate_index: int | None,
                      forbidden=frozenset()) -> bool:
    """Def. of delta-first: candidate <=_P dfirst and dist(s,candidate) <= alpha+delta.

    A null candidate is valid iff dfirst itself is null.  A non-null candidate
    with a null dfirst only needs the budget clause.
    """
    df = oracle_dfirst(view, s, path_vertices, alpha, forbidden)
    if candidate_index is None:
        return df is None
    if df is not None and candidate_index > df:
        return False
    dist, _ = dijkstra(view, s, frozenset(forbidden))
    v = path_vertices[candidate_index]
    limit = alpha + delta
    if isinstance(limit, Fraction) and limit.denominator == 1:
        limit = int(limit)
    return v in dist and dist[v] <= limit
