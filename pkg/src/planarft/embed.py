"""Embedded directed planar multigraphs.

A graph is a list of weighted arcs plus a rotation system: for every vertex,
the cyclic order of its incident arc ends ("darts").  Dart ids follow the
file format convention: dart 2*a is the tail end of arc a, dart 2*a+1 its
head end.  Faces are the orbits of next_dart = rotation_successor(twin(d)),
and the Euler check V - E + F = 2 (per connected component) validates that
the rotation system is a planar embedding.

Arcs carry a ``synthetic`` flag.  Synthetic arcs (triangulation chords,
artificial tree arcs, contraction stubs) exist only in the embedding and in
spanning trees; every reachability or distance computation ignores them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MalformedRotation, NonPlanarEmbedding, NotACycle


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    weight: int
    synthetic: bool = False


def tail_dart(arc_index: int) -> int:
    return 2 * arc_index


def head_dart(arc_index: int) -> int:
    return 2 * arc_index + 1


def dart_arc(dart: int) -> int:
    return dart // 2


def twin(dart: int) -> int:
    return dart ^ 1


class EmbeddedDigraph:
    """Immutable embedded digraph. ``rotation[v]`` lists incident darts in cyclic order."""

    def __init__(self, n: int, arcs: list[Arc], rotation: list[list[int]],
                 synthetic_vertices: frozenset[int] = frozenset(),
                 validate: bool = True):
        self.n = n
        self.arcs = arcs
        self.rotation = rotation
        self.synthetic_vertices = synthetic_vertices
        self._dart_pos: dict[int, tuple[int, int]] = {}
        for v, rot in enumerate(rotation):
            for i, d in enumerate(rot):
                if d in self._dart_pos:
                    raise MalformedRotation(f"dart {d} appears twice")
                self._dart_pos[d] = (v, i)
        if validate:
            self._validate()
        self.out_arcs: list[list[int]] = [[] for _ in range(n)]
        self.in_arcs: list[list[int]] = [[] for _ in range(n)]
        for i, a in enumerate(arcs):
            self.out_arcs[a.tail].append(i)
            self.in_arcs[a.head].append(i)

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        n, arcs = self.n, self.arcs
        for a in arcs:
            if not (0 <= a.tail < n and 0 <= a.head < n):
                raise MalformedRotation("arc references missing vertex")
            if a.weight < 0:
                raise ValueError("negative arc weight")
        expect = set()
        for i, a in enumerate(arcs):
            expect.add(tail_dart(i))
            expect.add(head_dart(i))
        seen = set(self._dart_pos)
        if seen != expect:
            raise MalformedRotation("rotation does not list exactly the incident arc ends")
        for d, (v, _) in self._dart_pos.items():
            a = self.arcs[dart_arc(d)]
            end = a.tail if d % 2 == 0 else a.head
            if end != v:
                raise MalformedRotation(f"dart {d} listed at wrong vertex")
        self._euler_check()

    def dart_vertex(self, d: int) -> int:
        return self._dart_pos[d][0]

    def rot_next(self, d: int) -> int:
        v, i = self._dart_pos[d]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def rot_prev(self, d: int) -> int:
        v, i = self._dart_pos[d]
        rot = self.rotation[v]
        return rot[(i - 1) % len(rot)]

    def next_in_face(self, d: int) -> int:
        return self.rot_next(twin(d))

    def faces(self) -> list[list[int]]:
        """Face orbits as dart lists."""
        seen: set[int] = set()
        out = []
        for start in self._dart_pos:
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self.next_in_face(d)
            out.append(face)
        return out

    def _components(self) -> list[set[int]]:
        comp: list[set[int]] = []
        unseen = set(range(self.n))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a in self.arcs:
            adj[a.tail].append(a.head)
            adj[a.head].append(a.tail)
        while unseen:
            root = unseen.pop()
            cur = {root}
            stack = [root]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w in unseen:
                        unseen.remove(w)
                        cur.add(w)
                        stack.append(w)
            comp.append(cur)
        return comp

    def _euler_check(self) -> None:
        faces = self.faces()
        comps = self._components()
        v_of = {}
        for ci, comp in enumerate(comps):
            for v in comp:
                v_of[v] = ci
        f_cnt = [0] * len(comps)
        e_cnt = [0] * len(comps)
        n_cnt = [len(c) for c in comps]
        for face in faces:
            f_cnt[v_of[self.dart_vertex(face[0])]] += 1
        for a in self.arcs:
            e_cnt[v_of[a.tail]] += 1
        for ci in range(len(comps)):
            f = f_cnt[ci]
            if n_cnt[ci] == 1 and e_cnt[ci] == 0:
                f = 1  # isolated vertex: one face by convention
            if n_cnt[ci] - e_cnt[ci] + f != 2:
                raise NonPlanarEmbedding(
                    f"component {ci}: V={n_cnt[ci]} E={e_cnt[ci]} F={f}")

    # -- real-arc adjacency (synthetic excluded) ----------------------------

    def real_out(self, v: int):
        for i in self.out_arcs[v]:
            if not self.arcs[i].synthetic:
                yield i

    def real_in(self, v: int):
        for i in self.in_arcs[v]:
            if not self.arcs[i].synthetic:
                yield i

    def real_vertices(self) -> list[int]:
        return [v for v in range(self.n) if v not in self.synthetic_vertices]

    # -- operations ---------------------------------------------------------

    def reverse(self) -> "EmbeddedDigraph":
        """Reverse every arc; rotation (as darts) is preserved by swapping dart roles."""
        arcs = [Arc(a.head, a.tail, a.weight, a.synthetic) for a in self.arcs]
        rot = [[twin(d) for d in r] for r in self.rotation]
        return EmbeddedDigraph(self.n, arcs, rot,
                               synthetic_vertices=self.synthetic_vertices,
                               validate=False)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "arcs": [[a.tail, a.head, a.weight] for a in self.arcs
                     if not a.synthetic],
            "rotation": self._real_rotation(),
        }, separators=(",", ":"))

    def _real_rotation(self) -> list[list[int]]:
        # renumber darts to real-arc indices
        real = [i for i, a in enumerate(self.arcs) if not a.synthetic]
        remap = {old: new for new, old in enumerate(real)}
        rot = []
        for r in self.rotation:
            row = []
            for d in r:
                a = dart_arc(d)
                if self.arcs[a].synthetic:
                    continue
                row.append(2 * remap[a] + (d % 2))
            rot.append(row)
        return rot


def build_graph(vertex_count: int, arcs: list[tuple[int, int, int]],
                rotation: list[list[int]]) -> EmbeddedDigraph:
    """Validate and wrap a raw (n, arcs, rotation) description."""
    return EmbeddedDigraph(vertex_count,
                           [Arc(t, h, w) for (t, h, w) in arcs],
                           rotation)


def graph_from_json(text: str) -> EmbeddedDigraph:
    data = json.loads(text)
    return build_graph(data["n"], [tuple(a) for a in data["arcs"]], data["rotation"])


def reverse(graph: EmbeddedDigraph) -> EmbeddedDigraph:
    return graph.reverse()


# -- contraction ---------------------------------------------------------------

def contract_region(graph: EmbeddedDigraph, region: set[int]
                    ) -> tuple[EmbeddedDigraph, dict[int, int]]:
    """Contract a connected vertex set to one vertex, splicing rotations.

    Standard planar edge contraction applied along a spanning structure of
    the region; self-loops are dropped, parallel arcs kept.  The merged
    vertex (minimum id of the region) becomes synthetic, as do its incident
    arcs.  Returns (new graph, old vertex -> new vertex map).
    """
    if len(region) <= 1:
        mapping = {v: v for v in range(graph.n)}
        return graph, mapping
    rep = min(region)
    arcs = [Arc(a.tail, a.head, a.weight, a.synthetic) for a in graph.arcs]
    rot = [list(r) for r in graph.rotation]
    alive = [True] * len(arcs)
    where = {v: v for v in range(graph.n)}  # current holder of each vertex

    def dart_at(a_id: int, end: int) -> int:
        return 2 * a_id + end

    merged = {rep}
    pending = set(region) - merged
    progress = True
    while pending and progress:
        progress = False
        for a_id, a in enumerate(arcs):
            if not alive[a_id]:
                continue
            x, y = a.tail, a.head
            if x in merged and y in pending:
                inner, outer = x, y
            elif y in merged and x in pending:
                inner, outer = y, x
            else:
                continue
            d_in = dart_at(a_id, 0 if a.tail == inner else 1)
            d_out = dart_at(a_id, 0 if a.tail == outer else 1)
            # re-point all arcs at `outer` to `inner`
            for b_id, b in enumerate(arcs):
                if not alive[b_id]:
                    continue
                nt = inner if b.tail == outer else b.tail
                nh = inner if b.head == outer else b.head
                if nt != b.tail or nh != b.head:
                    arcs[b_id] = Arc(nt, nh, b.weight, b.synthetic)
            i = rot[inner].index(d_in)
            j = rot[outer].index(d_out)
            seq = rot[outer][j + 1:] + rot[outer][:j]
            rot[inner] = rot[inner][:i] + seq + rot[inner][i + 1:]
            rot[outer] = []
            alive[a_id] = False
            # drop self-loops at inner (old parallels of the contracted arc)
            loops = [b_id for b_id, b in enumerate(arcs)
                     if alive[b_id] and b.tail == inner and b.head == inner]
            for b_id in loops:
                alive[b_id] = False
                rot[inner] = [d for d in rot[inner] if dart_arc(d) != b_id]
            pending.discard(outer)
            merged.add(outer)
            progress = True
            break
    if pending:
        raise NotACycle("contraction region is not connected")

    live_v = [v for v in range(graph.n) if v == rep or v not in region]
    vmap = {v: i for i, v in enumerate(live_v)}
    arc_remap: dict[int, int] = {}
    new_arcs: list[Arc] = []
    for a_id, a in enumerate(arcs):
        if not alive[a_id]:
            continue
        arc_remap[a_id] = len(new_arcs)
        syn = a.synthetic or a.tail == rep or a.head == rep
        new_arcs.append(Arc(vmap[a.tail], vmap[a.head], a.weight, syn))
    new_rot: list[list[int]] = [[] for _ in live_v]
    for v in live_v:
        new_rot[vmap[v]] = [2 * arc_remap[dart_arc(d)] + (d % 2)
                            for d in rot[v] if dart_arc(d) in arc_remap]
    syn_v = frozenset({vmap[v] for v in graph.synthetic_vertices
                       if v in vmap} | {vmap[rep]})
    g = EmbeddedDigraph(len(live_v), new_arcs, new_rot,
                        synthetic_vertices=syn_v, validate=False)
    out_map = {v: vmap[rep if v in region else v] for v in range(graph.n)}
    return g, out_map


# -- incision ----------------------------------------------------------------

def _closed_walk_of(graph: EmbeddedDigraph, arc_set: list[int]) -> list[int]:
    """Order arc ids of a closed walk; raise NotACycle otherwise."""
    if not arc_set:
        return []
    remaining = set(arc_set)
    ends: dict[int, list[int]] = {}
    for a in arc_set:
        arc = graph.arcs[a]
        ends.setdefault(arc.tail, []).append(a)
        ends.setdefault(arc.head, []).append(a)
    for v, lst in ends.items():
        if len(lst) != 2:
            raise NotACycle(f"vertex {v} has degree {len(lst)} on the walk")
    first = next(iter(remaining))
    order = [first]
    remaining.remove(first)
    cur_v = graph.arcs[first].head
    start_v = graph.arcs[first].tail
    while cur_v != start_v:
        nxt = None
        for a in ends[cur_v]:
            if a in remaining:
                nxt = a
                break
        if nxt is None:
            raise NotACycle("walk is not closed")
        remaining.remove(nxt)
        order.append(nxt)
        arc = graph.arcs[nxt]
        cur_v = arc.head if arc.tail == cur_v else arc.tail
    if remaining:
        raise NotACycle("arc set is not a single closed walk")
    return order


def _order_walk(graph: EmbeddedDigraph, cut_arcs: list[int],
                hinge: int | None = None) -> tuple[list[int], list[int]]:
    """Order arcs into a walk; closed walks start and end at the hinge."""
    deg: dict[int, list[int]] = {}
    for a in cut_arcs:
        arc = graph.arcs[a]
        deg.setdefault(arc.tail, []).append(a)
        deg.setdefault(arc.head, []).append(a)
    endpoints = [v for v, lst in deg.items() if len(lst) == 1]
    if any(len(l) > 2 for l in deg.values()):
        raise NotACycle("cut arc set is not a simple walk")
    if len(endpoints) == 2:
        start = endpoints[0]
    elif not endpoints:
        if hinge is None or hinge not in deg:
            raise NotACycle("closed cut walk needs a hinge on the walk")
        start = hinge
    else:
        raise NotACycle("cut arc set is not a single walk")
    walk_v = [start]
    walk_a: list[int] = []
    used: set[int] = set()
    cur = start
    while True:
        nxt = None
        for a in deg[cur]:
            if a not in used:
                nxt = a
                break
        if nxt is None:
            break
        used.add(nxt)
        walk_a.append(nxt)
        arc = graph.arcs[nxt]
        cur = arc.head if arc.tail == cur else arc.tail
        walk_v.append(cur)
    if len(used) != len(cut_arcs):
        raise NotACycle("cut arc set is not a single walk")
    return walk_v, walk_a


def incise_open_path(graph: EmbeddedDigraph, cut_arcs: list[int],
                     hinge: int | None = None
                     ) -> tuple[EmbeddedDigraph, dict[int, tuple[int, int]], list[int]]:
    """Cut the embedding along a walk of arcs.

    Internal vertices of the walk are split into two copies (the two sides of
    the cut); the cut arcs are duplicated so each side keeps a copy.  Returns
    (new graph, split map old_vertex -> (left_copy, right_copy), arc map).
    Walk endpoints (or the hinge of a closed walk) are not split.
    """
    if not cut_arcs:
        return graph, {}, list(range(len(graph.arcs)))
    walk_v, walk_a = _order_walk(graph, cut_arcs, hinge)

    internal = [v for v in walk_v[1:-1] if v != walk_v[0]]
    n_new = graph.n
    split: dict[int, tuple[int, int]] = {}
    for v in internal:
        split[v] = (v, n_new)  # left keeps old id, right gets a fresh id
        n_new += 1

    cut_set = set(cut_arcs)

    # For each internal vertex: walk its rotation starting after the dart of
    # the walk-arc towards the previous walk vertex, collecting side-1 darts
    # until the dart of the next walk-arc; the rest is side 2.
    def dart_at(v: int, a: int) -> int:
        arc = graph.arcs[a]
        return tail_dart(a) if arc.tail == v else head_dart(a)

    side_of_dart: dict[int, int] = {}  # non-cut darts at internal vertices
    for idx, v in enumerate(walk_v):
        if v not in split:
            continue
        d_prev = dart_at(v, walk_a[idx - 1])
        d_next = dart_at(v, walk_a[idx])
        rot = graph.rotation[v]
        pos = {d: i for i, d in enumerate(rot)}
        i = pos[d_prev]
        side = 0
        while True:
            i = (i + 1) % len(rot)
            d = rot[i]
            if d == d_next:
                side = 1
                continue
            if d == d_prev:
                break
            side_of_dart[d] = side

    # duplicate cut arcs: old id stays on side 0 ("left"), a new copy per arc
    # on side 1.  Copies are synthetic iff the original is.
    new_arcs = list(graph.arcs)
    copy_of: dict[int, int] = {}
    for a in walk_a:
        copy_of[a] = len(new_arcs)
        new_arcs.append(graph.arcs[a])

    def mapped_end(v: int, side: int) -> int:
        if v in split:
            return split[v][side]
        return v

    # rebuild arcs with mapped endpoints
    final_arcs: list[Arc] = []
    for i, arc in enumerate(new_arcs):
        if i < len(graph.arcs) and i in cut_set:
            t2, h2 = mapped_end(arc.tail, 0), mapped_end(arc.head, 0)
        elif i >= len(graph.arcs):
            t2, h2 = mapped_end(arc.tail, 1), mapped_end(arc.head, 1)
        else:
            td, hd = tail_dart(i), head_dart(i)
            t2 = split[arc.tail][side_of_dart[td]] if arc.tail in split else arc.tail
            h2 = split[arc.head][side_of_dart[hd]] if arc.head in split else arc.head
        final_arcs.append(Arc(t2, h2, arc.weight, arc.synthetic))

    # rotations
    rotation: list[list[int]] = [[] for _ in range(n_new)]
    for v in range(graph.n):
        if v in split:
            continue
        row = []
        for d in graph.rotation[v]:
            a = dart_arc(d)
            if a in cut_set and v in (walk_v[0], walk_v[-1]):
                # hinge vertex: the slit face turns from the copy chain back
                # onto the originals at the walk start, and the other way
                # around at the walk end
                cd = 2 * copy_of[a] + (d % 2)
                if a == walk_a[0] and v == walk_v[0]:
                    row.append(d)
                    row.append(cd)
                else:
                    row.append(cd)
                    row.append(d)
            else:
                row.append(d)
        rotation[v] = row
    for idx, v in enumerate(walk_v):
        if v not in split:
            continue
        d_prev = dart_at(v, walk_a[idx - 1])
        d_next = dart_at(v, walk_a[idx])
        rot = graph.rotation[v]
        pos = {d: i for i, d in enumerate(rot)}
        left_row = [d_prev]
        right_row = [2 * copy_of[dart_arc(d_prev)] + (d_prev % 2)]
        i = pos[d_prev]
        side = 0
        while True:
            i = (i + 1) % len(rot)
            d = rot[i]
            if d == d_prev:
                break
            if d == d_next:
                left_row.append(d)
                right_row.append(2 * copy_of[dart_arc(d)] + (d % 2))
                side = 1
                continue
            if side == 0:
                left_row.append(d)
            else:
                right_row.append(d)
        vl, vr = split[v]
        rotation[vl] = left_row
        rotation[vr] = right_row

    g = EmbeddedDigraph(n_new, final_arcs, rotation,
                        synthetic_vertices=graph.synthetic_vertices,
                        validate=False)
    arc_map = list(range(len(graph.arcs)))
    return g, split, arc_map


def incise(graph: EmbeddedDigraph, cut_arc_set: list[int]
           ) -> tuple[EmbeddedDigraph, dict[int, tuple[int, int]]]:
    """Cut the embedding along the given arcs of a (closed or open) walk.

    Internal vertices of the cut are split into two side copies; walk
    endpoints act as hinges and stay whole.  Cutting a full closed walk keeps
    one hinge arc uncut (the two sides then share just that arc's endpoints).
    """
    if not cut_arc_set:
        return graph, {}
    deg: dict[int, int] = {}
    for a in cut_arc_set:
        arc = graph.arcs[a]
        deg[arc.tail] = deg.get(arc.tail, 0) + 1
        deg[arc.head] = deg.get(arc.head, 0) + 1
    odd = [v for v, c in deg.items() if c == 1]
    if any(c > 2 for c in deg.values()):
        raise NotACycle("cut arcs do not form a walk")
    if len(odd) == 2:
        g, split, _ = incise_open_path(graph, list(cut_arc_set))
        return g, split
    if not odd:
        order = _closed_walk_of(graph, list(cut_arc_set))
        g, split, _ = incise_open_path(graph, order[:-1])
        return g, split
    raise NotACycle("cut arcs do not form a single walk")
