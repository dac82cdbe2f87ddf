"""Incised piece instances: the graph H x P per (piece, separator path).

The incision runs on the full piece embedding (boundary vertices included),
cutting along every cycle edge except P's own; the result is then restricted
to the piece interior.  Cutting before restricting extends the slit through
boundary holes, so the two sides of the cycle share only P and P's endpoints
end up on a single face.  Sub-pieces map into the instance with the correct
side copies.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..decomp import DecompTree
from ..embed import Arc, EmbeddedDigraph, dart_arc, incise_open_path
from ..views import GraphView


@dataclass
class IncisedInstance:
    piece_id: int
    path_id: int
    emb: EmbeddedDigraph
    l2g: list[int]
    g2l_unsplit: dict[int, int]
    copies: dict[int, tuple[int, int]]     # global -> (side0 local, side1 local)
    p_locals: tuple[int, ...]

    def view(self) -> GraphView:
        return GraphView(self.emb)

    def locals_of(self, g: int, side: int | None) -> list[int]:
        if g in self.copies:
            c = self.copies[g]
            if side is None:
                return [c[0], c[1]]
            return [c[side]]
        if g in self.g2l_unsplit:
            return [self.g2l_unsplit[g]]
        return []


def incised_instance(tree: DecompTree, piece_id: int, path_id: int
                     ) -> IncisedInstance:
    piece = tree.pieces[piece_id]
    sp = tree.paths[path_id]
    assert sp.piece_id == piece_id and not piece.atomic
    le = piece.le
    emb0 = le.emb
    walk_g = piece.cycle_vertices
    k = len(walk_g)
    p_pairs = {frozenset((a, b)) for a, b in zip(sp.vertices, sp.vertices[1:])}

    cut_arcs = []
    for i in range(k):
        u, v = walk_g[i], walk_g[(i + 1) % k]
        if frozenset((u, v)) in p_pairs:
            continue
        cut_arcs.append(piece.cycle_arcs_local[i])

    cut_emb, split0, _ = incise_open_path(emb0, cut_arcs)

    # local (pre-cut) -> globals; copies extend past emb0.n
    pre_l2g = list(le.l2g) + [-1] * (cut_emb.n - emb0.n)
    for lv, (l0, l1) in split0.items():
        pre_l2g[l1] = le.l2g[lv]

    interior_g = piece.vertices - piece.boundary_set
    keep = [x for x in range(cut_emb.n) if pre_l2g[x] in interior_g]
    remap = {x: i for i, x in enumerate(keep)}
    keep_set = set(keep)
    arcs: list[Arc] = []
    arc_remap: dict[int, int] = {}
    for i, a in enumerate(cut_emb.arcs):
        if a.tail in keep_set and a.head in keep_set:
            arc_remap[i] = len(arcs)
            arcs.append(Arc(remap[a.tail], remap[a.head], a.weight, a.synthetic))
    rotation: list[list[int]] = [[] for _ in keep]
    for x in keep:
        rotation[remap[x]] = [2 * arc_remap[dart_arc(d)] + (d % 2)
                              for d in cut_emb.rotation[x]
                              if dart_arc(d) in arc_remap]
    syn_g = set(tree.graph.synthetic_vertices)
    syn_local = frozenset(remap[x] for x in keep if pre_l2g[x] in syn_g)
    emb = EmbeddedDigraph(len(keep), arcs, rotation,
                          synthetic_vertices=syn_local, validate=False)
    l2g = [pre_l2g[x] for x in keep]

    copies_g: dict[int, tuple[int, int]] = {}
    for lv, (l0, l1) in split0.items():
        g = le.l2g[lv]
        if g in interior_g and l0 in remap and l1 in remap:
            copies_g[g] = (remap[l0], remap[l1])
    g2l_unsplit: dict[int, int] = {}
    for x in keep:
        g = pre_l2g[x]
        if g not in copies_g:
            g2l_unsplit[g] = remap[x]

    # match incision sides to decomposition child sides
    side_of_local: dict[int, int] = {}
    for i, g in enumerate(l2g):
        if g in copies_g:
            continue
        cm = piece.child_of.get(g)
        if cm in (0, 1):
            side_of_local[i] = cm
    pending = {l for pair in copies_g.values() for l in pair}
    adj: list[set[int]] = [set() for _ in range(emb.n)]
    for a in emb.arcs:
        adj[a.tail].add(a.head)
        adj[a.head].add(a.tail)
    changed = True
    while changed and pending:
        changed = False
        for l in sorted(pending):
            votes = {side_of_local[nb] for nb in adj[l] if nb in side_of_local}
            if votes:
                side_of_local[l] = min(votes)
                pending.discard(l)
                changed = True
    oriented: dict[int, tuple[int, int]] = {}
    for g, (a, b) in copies_g.items():
        sa, sb = side_of_local.get(a), side_of_local.get(b)
        if sa == 1 or sb == 0:
            a, b = b, a
        oriented[g] = (a, b)

    p_locals = tuple(g2l_unsplit[v] for v in sp.vertices if v in g2l_unsplit)
    return IncisedInstance(piece_id, path_id, emb, l2g, g2l_unsplit,
                           oriented, p_locals)


def child_branch_of(tree: DecompTree, host_pid: int, sub_pid: int) -> int | None:
    cur = sub_pid
    while cur != host_pid:
        par = tree.pieces[cur].parent
        if par is None:
            return None
        if par == host_pid:
            return tree.pieces[host_pid].children.index(cur)
        cur = par
    return None


def descendant_pieces(tree: DecompTree, piece_id: int) -> list[int]:
    out = []
    stack = [piece_id]
    while stack:
        pid = stack.pop()
        out.append(pid)
        stack.extend(tree.pieces[pid].children)
    return out


def map_piece_into(tree: DecompTree, inst: IncisedInstance, sub_pid: int
                   ) -> frozenset[int]:
    p = tree.pieces[sub_pid]
    side = child_branch_of(tree, inst.piece_id, sub_pid)
    out: set[int] = set()
    for g in p.vertices:
        for l in inst.locals_of(g, side if g in inst.copies else None):
            out.add(l)
    return frozenset(out)
