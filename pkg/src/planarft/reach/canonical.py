"""Canonical interval labels: first vertex on a target path B reachable from
a vertex of a source path P', under one failed vertex off both paths
(the L^{P' -f-> P} scheme).

P' is partitioned into maximal intervals with a common non-faulty first
vertex on B; each interval fixes one canonical connecting path.  Canonical
paths of one instance are pairwise disjoint, so a failed vertex stores data
for at most one interval per instance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from ..reachindex import min_pos_dp
from ..views import GraphView


@dataclass
class SourceSideLabel:
    idx: int                    # index on P'
    first: int | None           # first position on B reachable in the host
    first_avoid: int | None     # ... avoiding this vertex's canonical path

    def to_obj(self):
        return [self.idx, self.first, self.first_avoid]

    @staticmethod
    def from_obj(o):
        return SourceSideLabel(*o) if o is not None else None


@dataclass
class FaultSideLabel:
    lo: int                     # interval of P' using the canonical path
    hi: int
    target: int                 # the interval's common first position on B
    prefix_reach: int | None    # last P' index of the interval prefix that
                                # still reaches the target with this vertex out
    first_u_avoid: int | None   # first position on B reachable from the
                                # interval's last vertex with this vertex out

    def to_obj(self):
        return [self.lo, self.hi, self.target, self.prefix_reach,
                self.first_u_avoid]

    @staticmethod
    def from_obj(o):
        return FaultSideLabel(*o) if o is not None else None


def _bfs_tree_path(view: GraphView, src: int, dst: int) -> list[int]:
    """Deterministic shortest (by hops, then ids) src->dst vertex path."""
    parent = {src: None}
    pq = [(0, src)]
    dist = {src: 0}
    while pq:
        d, v = heapq.heappop(pq)
        if v == dst:
            break
        if d > dist.get(v, 1 << 60):
            continue
        for nb, _, _ in sorted(view.out(v)):
            if d + 1 < dist.get(nb, 1 << 60):
                dist[nb] = d + 1
                parent[nb] = v
                heapq.heappush(pq, (d + 1, nb))
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


@dataclass
class CanonicalInstance:
    pprime: tuple[int, ...]
    target_path: tuple[int, ...]
    a_side: dict[int, SourceSideLabel]
    f_side: dict[int, FaultSideLabel]
    canonical_paths: list[list[int]]     # for structural audits


def build_canonical_instance(view: GraphView, pprime, target_path
                             ) -> CanonicalInstance:
    pprime = tuple(pprime)
    target_path = tuple(target_path)
    bpos = {v: i for i, v in enumerate(target_path)}
    firsts = min_pos_dp(view, bpos)

    a_side: dict[int, SourceSideLabel] = {}
    f_side: dict[int, FaultSideLabel] = {}
    fv = [firsts.get(v) for v in pprime]

    # monotone along P' (asserted structurally; see tests)
    intervals: list[tuple[int, int, int]] = []
    i = 0
    while i < len(pprime):
        if fv[i] is None:
            a_side[pprime[i]] = SourceSideLabel(i, None, None)
            i += 1
            continue
        j = i
        while j + 1 < len(pprime) and fv[j + 1] == fv[i]:
            j += 1
        intervals.append((i, j, fv[i]))
        i = j + 1

    paths: list[list[int]] = []
    for (lo, hi, tgt) in intervals:
        u = pprime[hi]
        s_path = _bfs_tree_path(view, u, target_path[tgt])
        paths.append(s_path)
        s_set = set(s_path)
        # first on B avoiding the canonical path, for every interval member
        avoid_view = view.delete_vertices(s_set)
        avoid_firsts = min_pos_dp(avoid_view, bpos)
        for x in range(lo, hi + 1):
            a = pprime[x]
            fa = avoid_firsts.get(a) if a not in s_set else None
            a_side[a] = SourceSideLabel(x, fv[lo], fa)
        # fault-side data for every internal canonical vertex
        e_vertex = target_path[tgt]
        for w in s_path:
            if w in bpos or w in set(pprime):
                continue
            wview = view.delete_vertices([w])
            # last interval prefix vertex that reaches the target without w
            reach_e = _coreach(wview, e_vertex)
            pr = None
            for x in range(lo, hi + 1):
                if pprime[x] in reach_e:
                    pr = x
                else:
                    break
            fu = min_pos_dp(wview, bpos).get(u)
            f_side[w] = FaultSideLabel(lo, hi, fv[lo], pr, fu)
    return CanonicalInstance(pprime, target_path, a_side, f_side, paths)


def _coreach(view: GraphView, t: int) -> set[int]:
    seen = {t}
    stack = [t]
    while stack:
        x = stack.pop()
        for nb, _, _ in view.inc(x):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def decode_canonical(a_lab: SourceSideLabel, f_lab: FaultSideLabel | None
                     ) -> int | None:
    """Exact first position on B reachable from a in host minus f.

    f must not lie on P' or B; f_lab is f's record for this instance (None
    when f is on no canonical path here).
    """
    if f_lab is None or not (f_lab.lo <= a_lab.idx <= f_lab.hi):
        return a_lab.first
    cands = []
    if f_lab.prefix_reach is not None and a_lab.idx <= f_lab.prefix_reach:
        cands.append(f_lab.target)
    if a_lab.first_avoid is not None:
        cands.append(a_lab.first_avoid)
    if f_lab.first_u_avoid is not None:
        cands.append(f_lab.first_u_avoid)
    return min(cands) if cands else None


# -- same-path continuation records ------------------------------------------
# When the failed vertex lies on the source path itself, the canonical
# machinery does not apply.  The fault vertex then carries, per (path P'
# containing it, ancestor target path B), the monotone step function
# p -> first_{G-f}(P'[p], B), split at f into its two sides and compressed.


@dataclass
class ContinuationRecord:
    f_pos: int
    # breakpoints [(pos, value)] with positions ascending; value = first on B
    side1: list[tuple[int, int]] = field(default_factory=list)
    side2: list[tuple[int, int]] = field(default_factory=list)

    def to_obj(self):
        return [self.f_pos, [list(t) for t in self.side1],
                [list(t) for t in self.side2]]

    @staticmethod
    def from_obj(o):
        return ContinuationRecord(o[0], [tuple(t) for t in o[1]],
                                  [tuple(t) for t in o[2]])

    def lookup(self, pos: int) -> int | None:
        """first_{G-f}(P'[pos], B); pos must not equal f_pos.

        Values are monotone along each side, so the record keeps one entry
        per value change and the answer is the entry at the greatest
        breakpoint <= pos.
        """
        table = self.side1 if pos < self.f_pos else self.side2
        ans = None
        for p, val in table:
            if p <= pos:
                ans = val
            else:
                break
        return ans


def build_continuation_record(view: GraphView, path_vertices, f_pos: int,
                              target_path) -> ContinuationRecord:
    bpos = {v: i for i, v in enumerate(target_path)}
    fview = view.delete_vertices([path_vertices[f_pos]])
    firsts = min_pos_dp(fview, bpos)

    def compress(rng) -> list[tuple[int, int | None]]:
        out: list[tuple[int, int | None]] = []
        prev = object()
        for p in rng:
            val = firsts.get(path_vertices[p])
            if val != prev:
                out.append((p, val))
                prev = val
        return out

    side1 = compress(range(0, f_pos))
    side2 = compress(range(f_pos + 1, len(path_vertices)))
    return ContinuationRecord(f_pos, side1, side2)
