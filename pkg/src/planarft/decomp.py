"""Recursive decomposition into pieces via balanced fundamental cycle separators.

Each piece is a connected induced subgraph of its parent, carried with a
local embedding (plus ephemeral triangulation chords, kept for incisions),
an alternating-layer spanning tree, its boundary runs (restrictions of
ancestor separator paths), new separator paths, and apices.

Both children of a piece receive *all* vertices of the chosen cycle C (the
enclosed side plus C, and the other side plus C).  Non-cycle vertices are
partitioned.  This keeps every piece connected and ensures arcs never leave a
piece's interior without touching its boundary -- the containment facts the
label decoders rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .embed import Arc, EmbeddedDigraph, dart_arc, head_dart, tail_dart
from .errors import NoSeparator, VertexNotInPiece
from .paths import PathRef
from .sptree import SpanningTree, build_layered_spanning_tree

LEAF_CAP = 8
BALANCE_NUM, BALANCE_DEN = 2, 3
EXACT_MIN_LIMIT = 257  # pieces at most this big get the exact min-max tie-break


# ---------------------------------------------------------------------------
# local embeddings


class LocalEmbedding:
    """A piece's private embedded copy; vertices renumbered locally."""

    def __init__(self, emb: EmbeddedDigraph, l2g: list[int],
                 ephemeral_from: int | None = None):
        self.emb = emb
        self.l2g = l2g
        self.g2l = {g: i for i, g in enumerate(l2g)}
        self.ephemeral_from = ephemeral_from if ephemeral_from is not None \
            else len(emb.arcs)


def induce(parent: LocalEmbedding, global_vs: frozenset[int],
           keep_ephemeral: bool = False, want_arc_map: bool = False):
    """Induced sub-embedding on a vertex subset; ephemeral chords dropped
    unless keep_ephemeral."""
    emb = parent.emb
    locs = sorted(parent.g2l[g] for g in global_vs)
    l2g = [parent.l2g[x] for x in locs]
    remap = {x: i for i, x in enumerate(locs)}
    keep = set(locs)
    arcs: list[Arc] = []
    arc_remap: dict[int, int] = {}
    limit = len(emb.arcs) if keep_ephemeral else parent.ephemeral_from
    for i in range(limit):
        a = emb.arcs[i]
        if a.tail in keep and a.head in keep:
            arc_remap[i] = len(arcs)
            arcs.append(Arc(remap[a.tail], remap[a.head], a.weight, a.synthetic))
    rotation: list[list[int]] = [[] for _ in locs]
    for x in locs:
        row = []
        for d in emb.rotation[x]:
            ai = dart_arc(d)
            if ai in arc_remap:
                row.append(2 * arc_remap[ai] + (d % 2))
        rotation[remap[x]] = row
    syn_g = {parent.l2g[v] for v in emb.synthetic_vertices}
    syn = frozenset(remap[parent.g2l[g]] for g in global_vs if g in syn_g)
    new = EmbeddedDigraph(len(locs), arcs, rotation,
                          synthetic_vertices=syn, validate=False)
    le = LocalEmbedding(new, l2g)
    if want_arc_map:
        return le, arc_remap
    return le


# ---------------------------------------------------------------------------
# triangulation (ephemeral chords, all synthetic, weight 0)


def triangulate(emb: EmbeddedDigraph) -> EmbeddedDigraph:
    arcs = list(emb.arcs)
    rotation = [list(r) for r in emb.rotation]

    def dart_v(d: int) -> int:
        a = arcs[dart_arc(d)]
        return a.tail if d % 2 == 0 else a.head

    def nxt(d: int) -> int:
        t = d ^ 1
        v = dart_v(t)
        row = rotation[v]
        return row[(row.index(t) + 1) % len(row)]

    seen: set[int] = set()
    stack: list[list[int]] = []
    for v in range(emb.n):
        for d in rotation[v]:
            if d in seen:
                continue
            face = []
            x = d
            while x not in seen:
                seen.add(x)
                face.append(x)
                x = nxt(x)
            stack.append(face)

    while stack:
        face = stack.pop()
        if len(face) <= 3:
            continue
        k = len(face)
        placed = False
        for off in range(k):
            d0, d1, d2 = face[off], face[(off + 1) % k], face[(off + 2) % k]
            a_v, c_v = dart_v(d0), dart_v(d2)
            if a_v == c_v:
                continue
            ai = len(arcs)
            arcs.append(Arc(a_v, c_v, 0, True))
            e_a, e_c = tail_dart(ai), head_dart(ai)
            rotation[a_v].insert(rotation[a_v].index(d0), e_a)
            rotation[c_v].insert(rotation[c_v].index(d2), e_c)
            rest = [e_a] + [face[(off + 2 + j) % k] for j in range(k - 2)]
            stack.append(rest)
            placed = True
            break
        if not placed:
            continue  # fully degenerate face; leave as is
    return EmbeddedDigraph(emb.n, arcs, rotation,
                           synthetic_vertices=emb.synthetic_vertices,
                           validate=False)


# ---------------------------------------------------------------------------
# fundamental cycle separators


def _cycle_record(emb: EmbeddedDigraph, tree: SpanningTree, a: int):
    """Closed walk (vertices + arc ids) of the fundamental cycle of arc a."""
    arc = emb.arcs[a]
    if arc.tail == arc.head:
        return None
    walk = tree.tree_path(arc.tail, arc.head)
    if len(walk) < 3 or len(set(walk)) != len(walk):
        return None
    cyc_arcs = []
    for u, v in zip(walk, walk[1:]):
        child = v if tree.parent.get(v) == u else u
        cyc_arcs.append(tree.parent_arc[child])
    cyc_arcs.append(a)
    return walk, cyc_arcs


def cycle_sides(emb: EmbeddedDigraph, cyc: list[int], cyc_arcs: list[int],
                want_darts: bool = False):
    """Side (0/1) of every non-cycle vertex relative to the closed walk."""
    on_c = set(cyc)

    def dart_at(v: int, a: int) -> int:
        arc = emb.arcs[a]
        return tail_dart(a) if arc.tail == v else head_dart(a)

    cyc_arc_set = set(cyc_arcs)
    side_of_dart: dict[int, int] = {}
    for i, v in enumerate(cyc):
        d_prev = dart_at(v, cyc_arcs[i - 1])
        d_next = dart_at(v, cyc_arcs[i])
        row = emb.rotation[v]
        pos = {d: j for j, d in enumerate(row)}
        j = pos[d_next]
        while True:
            j = (j + 1) % len(row)
            d = row[j]
            if d == d_prev:
                break
            if dart_arc(d) not in cyc_arc_set:
                side_of_dart[d] = 0
        j = pos[d_prev]
        while True:
            j = (j + 1) % len(row)
            d = row[j]
            if d == d_next:
                break
            if dart_arc(d) not in cyc_arc_set:
                side_of_dart[d] = 1

    adj: list[list[tuple[int, int]]] = [[] for _ in range(emb.n)]
    for i, arc in enumerate(emb.arcs):
        adj[arc.tail].append((arc.head, i))
        adj[arc.head].append((arc.tail, i))

    side_of: dict[int, int] = {}
    for w in range(emb.n):
        if w in on_c or w in side_of:
            continue
        comp = [w]
        compset = {w}
        votes: set[int] = set()
        qi = 0
        while qi < len(comp):
            x = comp[qi]
            qi += 1
            for nb, a in adj[x]:
                if nb in on_c:
                    d = dart_at(nb, a)
                    if d in side_of_dart:
                        votes.add(side_of_dart[d])
                elif nb not in compset:
                    compset.add(nb)
                    comp.append(nb)
        s = min(votes) if votes else 0
        for x in comp:
            side_of[x] = s
    if want_darts:
        return side_of, side_of_dart
    return side_of


def fundamental_cycle_separator(emb: EmbeddedDigraph, tree: SpanningTree,
                                weight_of, total_weight: int):
    """Best balanced fundamental cycle: (walk, cyc_arcs, side_of, score).

    Exact min-max tie-break up to EXACT_MIN_LIMIT vertices; beyond that the
    scan (in arc-id order, still deterministic) stops at the first cycle with
    both sides within the 2/3 balance bound.
    """
    tree_arcs = tree.edge_set()
    best = None
    exact = emb.n <= EXACT_MIN_LIMIT
    for a in range(len(emb.arcs)):
        if a in tree_arcs:
            continue
        rec = _cycle_record(emb, tree, a)
        if rec is None:
            continue
        walk, cyc_arcs = rec
        side_of = cycle_sides(emb, walk, cyc_arcs)
        w0 = sum(weight_of(v) for v, s in side_of.items() if s == 0)
        w1 = sum(weight_of(v) for v, s in side_of.items() if s == 1)
        score = max(w0, w1)
        if best is None or score < best[0]:
            best = (score, a, walk, cyc_arcs, side_of)
        if not exact and score * BALANCE_DEN <= BALANCE_NUM * total_weight:
            break
    if best is None:
        raise NoSeparator("no fundamental cycle available")
    return best[2], best[3], best[4], best[0]


# ---------------------------------------------------------------------------
# pieces and the tree


@dataclass
class BoundaryRun:
    path_id: int
    start: int                      # offset inside the origin path
    vertices: tuple[int, ...]       # global ids, in path order


@dataclass
class SepPath:
    id: int
    piece_id: int
    vertices: tuple[int, ...]       # global ids, directed order
    kind: str                       # 'sep' or 'leaf'

    def ref(self) -> PathRef:
        return PathRef(self.vertices)


@dataclass
class Piece:
    id: int
    depth: int
    parent: int | None
    vertices: frozenset[int]
    boundary_runs: list[BoundaryRun]
    boundary_set: frozenset[int]
    children: list[int] = field(default_factory=list)
    sep_path_ids: list[int] = field(default_factory=list)
    apices: tuple[int, ...] = ()
    atomic: bool = False
    cycle_vertices: tuple[int, ...] | None = None    # global ids, closed walk
    cycle_arcs_local: tuple[int, ...] | None = None  # arc ids in self.le.emb
    sep_vertex_set: frozenset[int] = frozenset()
    child_of: dict[int, int] = field(default_factory=dict)  # 0/1/2 (2 = cycle)
    le: LocalEmbedding | None = None
    interior: frozenset[int] = frozenset()


class DecompTree:
    def __init__(self, graph: EmbeddedDigraph):
        self.graph = graph
        self.pieces: list[Piece] = []
        self.paths: list[SepPath] = []
        self.root_id = 0
        self.anc_pieces: list[list[int]] = []
        self.anc_paths: list[list[int]] = []
        self.anc_apices: list[set[int]] = []
        self.on_path: list[dict[int, int]] = []
        self.apex_of: list[set[int]] = []

    def piece(self, pid: int) -> Piece:
        return self.pieces[pid]

    def path(self, pid: int) -> SepPath:
        return self.paths[pid]

    def separates(self, piece_id: int, u: int, v: int) -> bool:
        p = self.pieces[piece_id]
        if u not in p.vertices or v not in p.vertices:
            raise VertexNotInPiece(f"{u} or {v} not in piece {piece_id}")
        if u in p.sep_vertex_set or u in p.apices:
            return True
        if v in p.sep_vertex_set or v in p.apices:
            return True
        if p.atomic:
            return False
        return {p.child_of.get(u), p.child_of.get(v)} == {0, 1}

    def depth(self) -> int:
        return max(p.depth for p in self.pieces)

    def dot_dump(self) -> str:
        lines = ["digraph decomposition {"]
        for p in self.pieces:
            seps = sum(len(self.paths[i].vertices) for i in p.sep_path_ids)
            lines.append(
                f'  p{p.id} [label="#{p.id} n={len(p.vertices)} '
                f'b={len(p.boundary_set)} sep={seps}{" atomic" if p.atomic else ""}"];')
            if p.parent is not None:
                lines.append(f"  p{p.parent} -> p{p.id};")
        lines.append("}")
        return "\n".join(lines)


def _directed_segments(run: list[int], arc_dirs: list[str | None]
                       ) -> list[tuple[int, ...]]:
    """Split a vertex run into maximal directed real segments.

    A direction change shares its breakpoint vertex between the two segments
    (so every real arc of the run lies on some segment); a synthetic hop is a
    hard break.  Segments are emitted in arc direction.
    """
    segs: list[list[int]] = []
    cur = [run[0]]
    cur_dir: str | None = None
    for i, d in enumerate(arc_dirs):
        nxt = run[i + 1]
        if d is None:
            segs.append(cur)
            cur = [nxt]
            cur_dir = None
            continue
        if cur_dir is None or d == cur_dir:
            cur_dir = d
            cur.append(nxt)
        else:
            segs.append(cur)
            cur = [run[i], nxt]
            cur_dir = d
    segs.append(cur)
    out: list[tuple[int, ...]] = []
    pos = {v: i for i, v in enumerate(run)}
    for seg in segs:
        if not seg:
            continue
        if len(seg) == 1:
            out.append(tuple(seg))
            continue
        d = arc_dirs[pos[seg[0]]]
        out.append(tuple(seg) if d == "fwd" else tuple(reversed(seg)))
    return out


def build_decomposition_tree(graph: EmbeddedDigraph, leaf_cap: int = LEAF_CAP
                             ) -> DecompTree:
    tree = DecompTree(graph)
    root_le = LocalEmbedding(graph, list(range(graph.n)))
    all_vs = frozenset(range(graph.n))
    root = Piece(0, 0, None, all_vs, [], frozenset())
    tree.pieces.append(root)
    stack: list[tuple[int, LocalEmbedding | None]] = [(0, None)]
    syn_vs = set(graph.synthetic_vertices)

    while stack:
        pid, parent_le = stack.pop()
        piece = tree.pieces[pid]
        interior = piece.vertices - piece.boundary_set
        piece.interior = frozenset(interior)
        real_interior = sorted(v for v in interior if v not in syn_vs)

        sub = root_le if parent_le is None else induce(parent_le, piece.vertices)

        if len(real_interior) <= leaf_cap:
            piece.atomic = True
            for v in real_interior:
                sp = SepPath(len(tree.paths), pid, (v,), "leaf")
                tree.paths.append(sp)
                piece.sep_path_ids.append(sp.id)
            piece.sep_vertex_set = frozenset(real_interior)
            piece.le = sub
            continue

        sp_tree = build_layered_spanning_tree(sub.emb)
        tri = triangulate(sub.emb)
        tri_le = LocalEmbedding(tri, sub.l2g, ephemeral_from=len(sub.emb.arcs))
        bset = piece.boundary_set

        def wt(lv: int) -> int:
            g = sub.l2g[lv]
            return 1 if (g not in bset and g not in syn_vs) else 0

        total = sum(wt(lv) for lv in range(sub.emb.n))
        walk_l, cyc_arcs, side_of_l, _score = fundamental_cycle_separator(
            tri, sp_tree, wt, total)
        piece.le = tri_le
        piece.cycle_arcs_local = tuple(cyc_arcs)
        walk_g = tuple(sub.l2g[x] for x in walk_l)
        piece.cycle_vertices = walk_g
        k = len(walk_g)

        # maximal cyclic runs of C outside the boundary -> separator paths
        non_b = [v not in bset for v in walk_g]
        idx_runs: list[list[int]] = []
        apices: list[int] = []
        if all(non_b):
            idx_runs.append(list(range(k)))
        else:
            start = next(i for i in range(k) if not non_b[i])
            cur: list[int] = []
            for step in range(1, k + 1):
                p2 = (start + step) % k
                if non_b[p2]:
                    cur.append(p2)
                elif cur:
                    idx_runs.append(cur)
                    cur = []
            if cur:
                idx_runs.append(cur)
            for run in idx_runs:
                for b in (walk_g[(run[0] - 1) % k], walk_g[(run[-1] + 1) % k]):
                    if b not in apices:
                        apices.append(b)
        piece.apices = tuple(sorted(apices))

        sep_vs: set[int] = set()
        for run in idx_runs:
            verts = [walk_g[i] for i in run]
            dirs = [_arc_dir(tri, cyc_arcs[run[t]], walk_l[run[t]],
                             walk_l[(run[t] + 1) % k])
                    for t in range(len(run) - 1)]
            for seg in _directed_segments(verts, dirs):
                seg = tuple(v for v in seg if v not in syn_vs)
                if not seg:
                    continue
                sp = SepPath(len(tree.paths), pid, seg, "sep")
                tree.paths.append(sp)
                piece.sep_path_ids.append(sp.id)
                sep_vs.update(seg)
        piece.sep_vertex_set = frozenset(sep_vs)

        # children: both get all of C
        cyc_set = set(walk_g)
        side0 = {sub.l2g[x] for x, s in side_of_l.items() if s == 0}
        child_sets = []
        s0, s1 = set(), set()
        for v in piece.vertices:
            if v in cyc_set:
                piece.child_of[v] = 2
            elif v in side0:
                piece.child_of[v] = 0
                s0.add(v)
            else:
                piece.child_of[v] = 1
                s1.add(v)
        child_sets = [frozenset(s0 | cyc_set), frozenset(s1 | cyc_set)]

        for cset in child_sets:
            runs_c: list[BoundaryRun] = []
            for br in piece.boundary_runs:
                cur_vs: list[int] = []
                cur_start = 0
                for off, v in enumerate(br.vertices):
                    if v in cset:
                        if not cur_vs:
                            cur_start = br.start + off
                        cur_vs.append(v)
                    else:
                        if cur_vs:
                            runs_c.append(BoundaryRun(br.path_id, cur_start,
                                                      tuple(cur_vs)))
                            cur_vs = []
                if cur_vs:
                    runs_c.append(BoundaryRun(br.path_id, cur_start, tuple(cur_vs)))
            for spid in piece.sep_path_ids:
                sp = tree.paths[spid]
                runs_c.append(BoundaryRun(spid, 0, sp.vertices))
            bset_c = frozenset(v for r in runs_c for v in r.vertices)
            if len(cset - bset_c) >= len(interior) and len(cset) >= len(piece.vertices):
                raise NoSeparator(
                    f"no progress splitting piece {pid}: degenerate separator")
            child = Piece(len(tree.pieces), piece.depth + 1, pid, cset,
                          runs_c, bset_c)
            tree.pieces.append(child)
            piece.children.append(child.id)
            stack.append((child.id, tri_le))

    _finalize(tree)
    return tree


def _arc_dir(emb: EmbeddedDigraph, a: int, lu: int, lv: int) -> str | None:
    """'fwd' if real arc lu->lv, 'bwd' if real lv->lu, None if synthetic."""
    arc = emb.arcs[a]
    if arc.synthetic:
        return None
    if arc.tail == lu and arc.head == lv:
        return "fwd"
    if arc.tail == lv and arc.head == lu:
        return "bwd"
    return None


def _finalize(tree: DecompTree) -> None:
    n = tree.graph.n
    tree.on_path = [dict() for _ in range(n)]
    for sp in tree.paths:
        for i, v in enumerate(sp.vertices):
            tree.on_path[v][sp.id] = i
    tree.apex_of = [set() for _ in range(n)]
    for p in tree.pieces:
        for a in p.apices:
            tree.apex_of[a].add(p.id)

    tree.anc_pieces = [[] for _ in range(n)]
    tree.anc_paths = [[] for _ in range(n)]
    tree.anc_apices = [set() for _ in range(n)]

    # ancestor pieces of v: pieces containing v where v is not an apex of any
    # strict ancestor (weak ancestors of the rootmost apex pieces of v).
    order = sorted(range(len(tree.pieces)), key=lambda i: tree.pieces[i].depth)
    blocked: list[set[int]] = [set() for _ in range(len(tree.pieces))]
    for pid in order:
        p = tree.pieces[pid]
        blk = blocked[pid]
        for v in sorted(p.vertices):
            if v in blk or v in tree.graph.synthetic_vertices:
                continue
            tree.anc_pieces[v].append(pid)
            tree.anc_paths[v].extend(p.sep_path_ids)
            for a in p.apices:
                tree.anc_apices[v].add(a)
        child_block = blk | set(p.apices)
        for c in p.children:
            blocked[c] = child_block


def split_separator(path: PathRef, weights: list[int], eps, r) -> list[PathRef]:
    """Split into consecutive subpaths of length <= eps*r (greedy, junctions shared)."""
    limit = eps * r
    parts: list[list[int]] = []
    cur = [path.vertices[0]]
    acc = 0
    for i, w in enumerate(weights):
        if acc + w > limit and len(cur) > 1:
            parts.append(cur)
            cur = [path.vertices[i]]
            acc = 0
        cur.append(path.vertices[i + 1])
        acc += w
    parts.append(cur)
    return [PathRef(tuple(p)) for p in parts]
