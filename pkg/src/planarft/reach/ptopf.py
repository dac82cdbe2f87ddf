"""Single-path fault labels: first reachable vertex on both sides of a failed
path vertex (the L^{P -> P minus f} scheme).

Built per (host embedding, path) where the path's endpoints share a face.
Each path position stores two nested-detour labels (forward and backward
auxiliary systems) plus its extremal bypass and byway records per side of the
path.  Two labels decode to the exact first vertex before f / after f
reachable from b with f removed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..decomp import cycle_sides
from ..embed import Arc, EmbeddedDigraph, dart_arc, head_dart, tail_dart
from ..views import GraphView
from .aux_detours import (AuxLabel, BwdLabel, aux_first_after,
                          aux_first_before, build_aux_labels, build_bwd_labels,
                          check_laminar, detour_tables)


@dataclass
class HopRecord:
    """A stored extremal bypass or byway for a failed position."""
    start: int          # position the hop leaves P at
    end: int            # position it returns to P at
    first_before: int | None   # first position < f reachable from the far end
    first_after: int | None    # first position > f reachable from the far end

    def to_obj(self):
        return [self.start, self.end, self.first_before, self.first_after]

    @staticmethod
    def from_obj(o):
        return HopRecord(*o) if o is not None else None


@dataclass
class PathFaultLabel:
    pos: int
    aux_fwd: AuxLabel
    aux_bwd: BwdLabel
    bypasses: list[HopRecord | None] = field(default_factory=lambda: [None, None])
    byways: list[HopRecord | None] = field(default_factory=lambda: [None, None])

    def to_obj(self):
        return [self.pos, self.aux_fwd.to_obj(), self.aux_bwd.to_obj(),
                [b.to_obj() if b else None for b in self.bypasses],
                [b.to_obj() if b else None for b in self.byways]]

    @staticmethod
    def from_obj(o):
        return PathFaultLabel(
            o[0], AuxLabel.from_obj(o[1]), BwdLabel.from_obj(o[2]),
            [HopRecord(*b) if b else None for b in o[3]],
            [HopRecord(*b) if b else None for b in o[4]])


def path_sides(emb: EmbeddedDigraph, path_locals: list[int]):
    """Classify vertices/darts left/right of the path.

    Closes the path into a cycle with a virtual edge through a face shared by
    its endpoints (which must exist), then reuses the cycle side machinery.
    Returns (side_of_vertex, side_of_dart) in the *original* dart numbering.
    """
    k = len(path_locals)
    assert k >= 2
    a, b = path_locals[0], path_locals[-1]
    faces = emb.faces()
    target = None
    for f in faces:
        vs = [emb.dart_vertex(d) for d in f]
        if a in vs and b in vs:
            target = f
            break
    assert target is not None, "path endpoints are not co-facial"
    d_a = next(d for d in target if emb.dart_vertex(d) == a)
    d_b = next(d for d in target if emb.dart_vertex(d) == b)

    arcs = list(emb.arcs)
    virt = len(arcs)
    arcs.append(Arc(a, b, 0, True))
    rotation = [list(r) for r in emb.rotation]
    rotation[a].insert(rotation[a].index(d_a), tail_dart(virt))
    rotation[b].insert(rotation[b].index(d_b), head_dart(virt))
    emb2 = EmbeddedDigraph(emb.n, arcs, rotation,
                           synthetic_vertices=emb.synthetic_vertices,
                           validate=False)

    path_arcs = []
    for u, v in zip(path_locals, path_locals[1:]):
        aid = None
        for i in emb.out_arcs[u]:
            if emb.arcs[i].head == v and not emb.arcs[i].synthetic:
                aid = i
                break
        assert aid is not None, "path arc missing"
        path_arcs.append(aid)
    cyc = list(path_locals)
    cyc_arcs = path_arcs + [virt]
    side_v, side_d = cycle_sides(emb2.emb if hasattr(emb2, "emb") else emb2,
                                 cyc, cyc_arcs, want_darts=True)
    return side_v, side_d


def _region_entries(view: GraphView, path_locals: list[int],
                    side_v: dict[int, int], side_d: dict[int, int],
                    emb: EmbeddedDigraph) -> list[set[tuple[int, int]]]:
    """Per side: the set of (start, end) position pairs joined by a path
    internally disjoint from P that leaves and enters on that side."""
    k = len(path_locals)
    pos_of = {x: i for i, x in enumerate(path_locals)}
    on_p = set(path_locals)
    pairs: list[set[tuple[int, int]]] = [set(), set()]
    for s in (0, 1):
        region = {v for v, sv in side_v.items() if sv == s}
        for i in range(k):
            src = path_locals[i]
            seen: set[int] = set()
            stack = []
            for nb, _, aid in view.out(src):
                if nb in on_p:
                    d = tail_dart(aid)
                    if side_d.get(d) == s:
                        pairs[s].add((i, pos_of[nb]))
                elif nb in region:
                    seen.add(nb)
                    stack.append(nb)
            while stack:
                x = stack.pop()
                for nb, _, _ in view.out(x):
                    if nb in on_p:
                        pairs[s].add((i, pos_of[nb]))
                    elif nb in region and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
    return pairs


def _first_both_sides(view: GraphView, path_locals: list[int], src_pos: int,
                      f_pos: int) -> tuple[int | None, int | None]:
    """(first pos < f, first pos > f) reachable from P[src_pos] in view minus f."""
    pos_of = {x: i for i, x in enumerate(path_locals)}
    fv = path_locals[f_pos]
    src = path_locals[src_pos]
    if src == fv:
        return None, None
    before, after = None, None
    seen = {src}
    stack = [src]
    if src in pos_of:
        p = pos_of[src]
        if p < f_pos:
            before = p
        elif p > f_pos:
            after = p
    while stack:
        x = stack.pop()
        for nb, _, _ in view.out(x):
            if nb == fv or nb in seen:
                continue
            seen.add(nb)
            stack.append(nb)
            if nb in pos_of:
                p = pos_of[nb]
                if p < f_pos and (before is None or p < before):
                    before = p
                elif p > f_pos and (after is None or p < after):
                    after = p
    return before, after


def build_path_fault_labels(emb: EmbeddedDigraph, path_locals: list[int],
                            check: bool = False) -> list[PathFaultLabel]:
    """All labels of the L^{P -> P minus f} scheme for one instance."""
    k = len(path_locals)
    view = GraphView(emb)
    fwd, minhead, _g = detour_tables(view, path_locals)
    if check:
        check_laminar(sorted((v, u) for v, u in fwd.items()))
    aux_f = build_aux_labels(fwd, k)
    aux_b = build_bwd_labels(minhead)

    if k >= 2:
        side_v, side_d = path_sides(emb, path_locals)
        pairs = _region_entries(view, path_locals, side_v, side_d, emb)
    else:
        pairs = [set(), set()]

    labels = []
    for f in range(k):
        rec = PathFaultLabel(f, aux_f[f], aux_b[f])
        for s in (0, 1):
            bp = [(st, en) for (st, en) in pairs[s] if en < f < st]
            if bp:
                st, en = max(bp, key=lambda p: (p[0] - p[1], -p[1]))
                fb, fa = _first_both_sides(view, path_locals, st, f)
                rec.bypasses[s] = HopRecord(st, en, fb, fa)
            bw = [(st, en) for (st, en) in pairs[s] if st < f < en]
            if bw:
                st, en = min(bw, key=lambda p: (p[1] - p[0], p[0]))
                fb, fa = _first_both_sides(view, path_locals, en, f)
                rec.byways[s] = HopRecord(st, en, fb, fa)
        labels.append(rec)
    return labels


def decode_path_fault(rec_b: PathFaultLabel, rec_f: PathFaultLabel
                      ) -> tuple[int | None, int | None]:
    """(first position before f, first position after f) reachable from b
    in the instance graph minus the vertex at f's position.  Exact."""
    pb, pf = rec_b.pos, rec_f.pos
    assert pb != pf
    before: list[int] = []
    after: list[int] = []
    if pf < pb:
        p1 = aux_first_after(rec_b.aux_fwd, rec_f.aux_fwd)
        after.append(p1)
        for s in (0, 1):
            hop = rec_f.bypasses[s]
            if hop is not None and p1 <= hop.start:
                if hop.first_before is not None:
                    before.append(hop.first_before)
                if hop.first_after is not None:
                    after.append(hop.first_after)
    else:
        p1 = aux_first_before(rec_b.aux_bwd, rec_f.aux_bwd)
        before.append(p1)
        for s in (0, 1):
            hop = rec_f.byways[s]
            if hop is not None and p1 <= hop.start:
                if hop.first_after is not None:
                    after.append(hop.first_after)
                if hop.first_before is not None:
                    before.append(hop.first_before)
    return (min(before) if before else None, min(after) if after else None)
