"""The auxiliary detour procedure: nested detour labels on a path.

Positions are indices on a fixed path P of a host graph.  A forward-system
detour (u, v) with u > v means: some u-to-v path in the host avoids every
P-vertex before v, and u is the last such tail for head v.  The backward
system flips the maximality (per tail u, the earliest reachable head).
Containment is endpoint-inclusive: (u, v) contains x iff v <= x <= u.

Every position stores a halving chain of containing detours plus, per chain
entry, the largest detour strictly inside it avoiding the position.  Two such
labels answer "first position after f reachable from b while avoiding all of
P[..f]" (and the mirrored variant) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..views import GraphView

Detour = tuple[int, int]  # (head position v, tail position u), u > v


def detour_tables(view: GraphView, path_locals: list[int]
                  ) -> tuple[dict[int, int], list[int], list[set[int]]]:
    """(forward detours head->tail, backward minheads, g table).

    g[v] = set of tail positions u > v such that P[u] reaches P[v] in the
    view minus all P-vertices before v (forward system).  minhead[u] = least
    position reachable from P[u] via paths whose P-touches all sit at
    positions <= u (backward system).
    """
    k = len(path_locals)
    g: list[set[int]] = [set() for _ in range(k)]
    for v in range(k):
        forbidden = set(path_locals[:v])
        target = path_locals[v]
        seen = {target}
        stack = [target]
        while stack:
            x = stack.pop()
            for nb, _, _ in view.inc(x):
                if nb in forbidden or nb in seen:
                    continue
                seen.add(nb)
                stack.append(nb)
        for u in range(v + 1, k):
            if path_locals[u] in seen:
                g[v].add(u)
    fwd: dict[int, int] = {}
    for v in range(k):
        if g[v]:
            fwd[v] = max(g[v])

    pos_of = {x: i for i, x in enumerate(path_locals)}
    minhead = list(range(k))
    for u in range(k):
        forbidden = set(path_locals[u + 1:])
        src = path_locals[u]
        seen = {src}
        stack = [src]
        best = u
        while stack:
            x = stack.pop()
            for nb, _, _ in view.out(x):
                if nb in forbidden or nb in seen:
                    continue
                seen.add(nb)
                stack.append(nb)
                p = pos_of.get(nb)
                if p is not None and p < best:
                    best = p
        minhead[u] = best
    return fwd, minhead, g


def check_laminar(detours: list[Detour]) -> None:
    """Claim: no two detours cross strictly (v < x < u < w)."""
    ds = sorted(detours)
    for i, (v1, u1) in enumerate(ds):
        for (v2, u2) in ds[i + 1:]:
            if v1 < v2 < u1 < u2:
                raise AssertionError(f"crossing detours {(u1, v1)} and {(u2, v2)}")


@dataclass
class AuxLabel:
    """Per-position nested detour chain for one detour system."""
    pos: int
    chain: list[Detour] = field(default_factory=list)
    companions: list[Detour | None] = field(default_factory=list)

    def to_obj(self):
        return [self.pos, [list(d) for d in self.chain],
                [list(d) if d else None for d in self.companions]]

    @staticmethod
    def from_obj(o):
        return AuxLabel(o[0], [tuple(d) for d in o[1]],
                        [tuple(d) if d else None for d in o[2]])


def _span(d: Detour) -> int:
    return d[1] - d[0]


def build_aux_labels(detour_map: dict[int, int], k: int) -> list[AuxLabel]:
    """Nested chains for all k positions over detours {head: tail}."""
    detours: list[Detour] = sorted((v, u) for v, u in detour_map.items())
    labels = []
    for x in range(k):
        containing = [d for d in detours if d[0] <= x <= d[1]]
        containing.sort(key=lambda d: (-_span(d), d[0]))
        chain: list[Detour] = []
        cur = None
        for d in containing:
            if cur is None or 2 * _span(d) <= _span(cur):
                chain.append(d)
                cur = d
        companions: list[Detour | None] = []
        for d in chain:
            best = None
            for d2 in detours:
                if d2 == d:
                    continue
                if d[0] <= d2[0] and d2[1] <= d[1] and d2 != d \
                        and not (d2[0] <= x <= d2[1]):
                    if best is None or _span(d2) > _span(best) \
                            or (_span(d2) == _span(best) and d2 < best):
                        best = d2
            companions.append(best)
        labels.append(AuxLabel(x, chain, companions))
    return labels


def _largest_containing_avoiding(lb: AuxLabel, lf: AuxLabel,
                                 pb: int, pf: int) -> Detour | None:
    """Largest detour containing pb but not pf, from the two labels alone."""
    common = None
    set_f = {tuple(d) for d in lf.chain}
    for d in lb.chain:
        if tuple(d) in set_f:
            common = d  # chains are ordered by decreasing span: keep smallest
    if common is None:
        if lb.chain:
            d = lb.chain[0]
            if not (d[0] <= pf <= d[1]):
                return d
        return None
    j = lf.chain.index(common)
    i = lb.chain.index(common)
    cands: list[Detour] = []
    if j < len(lf.companions) and lf.companions[j] is not None:
        d = lf.companions[j]
        if d[0] <= pb <= d[1] and not (d[0] <= pf <= d[1]):
            cands.append(d)
    if i + 1 < len(lb.chain):
        d = lb.chain[i + 1]
        if not (d[0] <= pf <= d[1]):
            cands.append(d)
    if not cands:
        return None
    return max(cands, key=_span)


def aux_first_after(lb: AuxLabel, lf: AuxLabel) -> int:
    """First position > pf reachable from pb avoiding P[..pf] (fwd system).

    Requires pf < pb; the answer is pb itself when no detour helps.
    """
    pb, pf = lb.pos, lf.pos
    d = _largest_containing_avoiding(lb, lf, pb, pf)
    return d[0] if d is not None else pb


@dataclass
class BwdLabel:
    """Distributed range-minimum row over the backward minhead array.

    suffix[j] = min minhead over positions [pos, pos + 2^j); prefix[j] = min
    over [pos - 2^j, pos).  Two rows answer min over any [b, f) exactly.
    """
    pos: int
    suffix: list[int] = field(default_factory=list)
    prefix: list[int] = field(default_factory=list)

    def to_obj(self):
        return [self.pos, self.suffix, self.prefix]

    @staticmethod
    def from_obj(o):
        return BwdLabel(o[0], o[1], o[2])


def build_bwd_labels(minhead: list[int]) -> list[BwdLabel]:
    k = len(minhead)
    jmax = max(1, k).bit_length()
    out = []
    for x in range(k):
        suf, pre = [], []
        for j in range(jmax):
            w = 1 << j
            lo, hi = x, min(k, x + w)
            suf.append(min(minhead[lo:hi]) if lo < hi else x)
            lo, hi = max(0, x - w), x
            pre.append(min(minhead[lo:hi]) if lo < hi else x)
        out.append(BwdLabel(x, suf, pre))
    return out


def aux_first_before(lb: BwdLabel, lf: BwdLabel) -> int:
    """First position < pf reachable from pb avoiding P[pf..].

    Requires pb < pf.  Exact: the answer is the minimum backward minhead over
    tails in [pb, pf), or pb itself.
    """
    pb, pf = lb.pos, lf.pos
    assert pb < pf
    width = pf - pb
    j = width.bit_length() - 1
    best = min(lb.suffix[j] if j < len(lb.suffix) else pb,
               lf.prefix[j] if j < len(lf.prefix) else pb)
    return min(pb, best)


def brute_first_after(view: GraphView, path_locals: list[int],
                      pb: int, pf: int) -> int:
    """Oracle for aux_first_after: direct search in the host view."""
    forbidden = set(path_locals[:pf + 1])
    best = pb
    seen = {path_locals[pb]}
    stack = [path_locals[pb]]
    pos_of = {x: i for i, x in enumerate(path_locals)}
    while stack:
        x = stack.pop()
        if x in pos_of and pos_of[x] < best:
            best = pos_of[x]
        for nb, _, _ in view.out(x):
            if nb in forbidden or nb in seen:
                continue
            seen.add(nb)
            stack.append(nb)
    return best


def brute_first_before(view: GraphView, path_locals: list[int],
                       pb: int, pf: int) -> int:
    forbidden = set(path_locals[pf:])
    best = pb
    seen = {path_locals[pb]}
    stack = [path_locals[pb]]
    pos_of = {x: i for i, x in enumerate(path_locals)}
    while stack:
        x = stack.pop()
        if x in pos_of and pos_of[x] < best:
            best = pos_of[x]
        for nb, _, _ in view.out(x):
            if nb in forbidden or nb in seen:
                continue
            seen.add(nb)
            stack.append(nb)
    return best
