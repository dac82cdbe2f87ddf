"""Entry-interval labels: first vertex on both sides of a failed path vertex,
reached from a *different* path (the L^{P' -> P minus f} scheme).

Instance graph: all arcs leaving P are removed, so paths stop at their first
P-touch and the reachable set on P is a set of entry points.  Entry sets of
later P' vertices nest inside the entry set of P''s first vertex z; each
vertex of P' stores its entry set as intervals of consecutive z-entries, and
each vertex of P stores its successor among z's entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..views import GraphView


@dataclass
class EntrySideLabel:
    idx: int                                   # index on P'
    first: int | None                          # min entry position on P
    intervals: list[tuple[int, int]] = field(default_factory=list)

    def to_obj(self):
        return [self.idx, self.first, [list(t) for t in self.intervals]]

    @staticmethod
    def from_obj(o):
        return EntrySideLabel(o[0], o[1], [tuple(t) for t in o[2]])


@dataclass
class EntryFaultLabel:
    pos: int
    successor: int | None                      # next z-entry after this position

    def to_obj(self):
        return [self.pos, self.successor]

    @staticmethod
    def from_obj(o):
        return EntryFaultLabel(*o)


@dataclass
class EntryInstance:
    a_side: dict[int, EntrySideLabel]          # keyed by P' vertex
    f_side: list[EntryFaultLabel]              # indexed by P position
    z_entries: list[int]                       # positions, ascending


def _entry_set(view0: GraphView, src: int, pos_of: dict[int, int]) -> set[int]:
    out: set[int] = set()
    if not view0.alive(src):
        return out
    if src in pos_of:
        out.add(pos_of[src])
        return out  # on P: no arcs leave it in this instance graph
    seen = {src}
    stack = [src]
    while stack:
        x = stack.pop()
        for nb, _, _ in view0.out(x):
            if nb in seen:
                continue
            seen.add(nb)
            p = pos_of.get(nb)
            if p is not None:
                out.add(p)
            else:
                stack.append(nb)
    return out


def build_entry_instance(view0: GraphView, pprime: list[int], p_vertices: list[int]
                         ) -> EntryInstance:
    """view0 must already have every arc leaving P removed."""
    pos_of = {v: i for i, v in enumerate(p_vertices)}
    z_set = _entry_set(view0, pprime[0], pos_of)
    z_entries = sorted(z_set)
    rank = {p: i for i, p in enumerate(z_entries)}

    a_side: dict[int, EntrySideLabel] = {}
    for idx, a in enumerate(pprime):
        ent = sorted(_entry_set(view0, a, pos_of))
        assert all(p in rank for p in ent), "entry set not nested in z's"
        intervals: list[tuple[int, int]] = []
        for p in ent:
            if intervals and rank[p] == rank[intervals[-1][1]] + 1:
                intervals[-1] = (intervals[-1][0], p)
            else:
                intervals.append((p, p))
        a_side[a] = EntrySideLabel(idx, ent[0] if ent else None, intervals)

    f_side = []
    for fp in range(len(p_vertices)):
        nxt = next((p for p in z_entries if p > fp), None)
        f_side.append(EntryFaultLabel(fp, nxt))
    return EntryInstance(a_side, f_side, z_entries)


def decode_entry(a_lab: EntrySideLabel, f_lab: EntryFaultLabel
                 ) -> tuple[int | None, int | None]:
    """(first entry before f, first entry after f) for a with f removed. Exact."""
    fp = f_lab.pos
    b1 = a_lab.first if (a_lab.first is not None and a_lab.first < fp) else None
    b2 = None
    u = f_lab.successor
    if u is not None and any(lo <= u <= hi for lo, hi in a_lab.intervals):
        b2 = u
    else:
        starts = [lo for lo, _ in a_lab.intervals if lo > fp]
        b2 = min(starts) if starts else None
    return b1, b2
