"""Fault-tolerant reachability bundles: per-vertex label construction.

A bundle is a JSON-able dict per vertex with a forward and a reverse section
(the reverse section is the same construction on the reversed graph, path
positions flipped).  See decode.ft_reach_query for the query side.
"""

from __future__ import annotations

from ..decomp import DecompTree
from ..reachindex import CondensedView, max_pos_dp, min_pos_dp
from ..views import GraphView
from .canonical import ContinuationRecord, build_canonical_instance
from .instances import child_branch_of, incised_instance
from .ptopf import build_path_fault_labels
from .twointervals import build_entry_instance


class Side:
    """One direction of the build: graph view and path coordinates."""

    def __init__(self, tree: DecompTree, rev: bool):
        self.tree = tree
        self.rev = rev
        self.view = GraphView(tree.graph, reversed_=rev)

    def path_vertices(self, pid: int) -> tuple[int, ...]:
        vs = self.tree.paths[pid].vertices
        return tuple(reversed(vs)) if self.rev else vs

    def pos_on(self, pid: int, v: int) -> int | None:
        raw = self.tree.on_path[v].get(pid)
        if raw is None:
            return None
        if self.rev:
            return len(self.tree.paths[pid].vertices) - 1 - raw
        return raw

    def run_coords(self, br) -> tuple[int, int]:
        ln = len(self.tree.paths[br.path_id].vertices)
        s, e = br.start, br.start + len(br.vertices) - 1
        if self.rev:
            s, e = ln - 1 - e, ln - 1 - s
        return s, e


def build_reach_labels(tree: DecompTree, audit: bool = False) -> list[dict]:
    n = tree.graph.n
    bundles: list[dict] = [{"v": v} for v in range(n)]
    for rev in (False, True):
        side = Side(tree, rev)
        sec = _build_side(side, audit)
        key = "r" if rev else "f"
        for v in range(n):
            bundles[v][key] = sec[v]
    return bundles


def _build_side(side: Side, audit: bool) -> list[dict]:
    tree = side.tree
    n = tree.graph.n
    view = side.view
    syn = set(tree.graph.synthetic_vertices)

    sec: list[dict] = [{
        "pieces": {}, "sp": {}, "paths": {}, "apexanc": sorted(tree.anc_apices[v]),
        "aprec": {}, "aprecR": {}, "coleaf": {}, "thorup": {},
        "l42": {}, "l42f": {}, "cont": {}, "l43": {}, "l43f": {},
    } for v in range(n)]

    # topology
    for pid, p in enumerate(tree.pieces):
        sp_meta = [[q, len(tree.paths[q].vertices)] for q in p.sep_path_ids]
        for v in p.vertices:
            if v in syn or pid not in tree.anc_pieces[v]:
                continue
            sec[v]["pieces"][str(pid)] = [
                p.depth, 1 if v in p.interior else 0, 1 if p.atomic else 0,
                -1 if p.parent is None else p.parent, list(p.children),
                p.child_of.get(v, -1)]
            sec[v]["sp"][str(pid)] = sp_meta
    for v in range(n):
        if v in syn:
            continue
        for pid_path in tree.on_path[v]:
            sec[v]["paths"][str(pid_path)] = [
                side.pos_on(pid_path, v), len(tree.paths[pid_path].vertices)]

    _build_thorup(side, sec)
    _build_point_records(side, sec)
    _build_l42(side, sec)
    _build_l43(side, sec, audit)
    return sec


def _build_thorup(side: Side, sec: list[dict]) -> None:
    """Per-piece non-faulty first/last on interior sub-separator paths."""
    tree = side.tree
    view = side.view
    syn = set(tree.graph.synthetic_vertices)
    for pid, p in enumerate(tree.pieces):
        interior = sorted(x for x in p.interior if x not in syn)
        if not interior:
            continue
        iview = view.restrict(frozenset(interior))
        inner = set(interior)
        stack = [pid]
        while stack:
            d = stack.pop()
            dp = tree.pieces[d]
            stack.extend(dp.children)
            for path_id in dp.sep_path_ids:
                pv = side.path_vertices(path_id)
                if not all(x in inner for x in pv):
                    continue
                pos = {x: i for i, x in enumerate(pv)}
                firsts = min_pos_dp(iview, pos)
                lasts = max_pos_dp(iview, pos)
                for v in interior:
                    if pid not in tree.anc_pieces[v] or d not in tree.anc_pieces[v]:
                        continue
                    f1, l1 = firsts.get(v), lasts.get(v)
                    if f1 is None and l1 is None:
                        continue
                    sec[v]["thorup"].setdefault(str(pid), {})[str(path_id)] = [f1, l1]


def _build_point_records(side: Side, sec: list[dict]) -> None:
    """Shared-leaf records, apex records, continuation records."""
    tree = side.tree
    view = side.view
    n = tree.graph.n
    syn = set(tree.graph.synthetic_vertices)

    pair_want: set[tuple[int, int]] = set()
    leaf_members: dict[int, list[int]] = {}
    for pid, p in enumerate(tree.pieces):
        if not p.atomic:
            continue
        mem = sorted(x for x in p.vertices if x not in syn)
        leaf_members[pid] = mem
        for v in mem:
            if pid not in tree.anc_pieces[v]:
                continue
            for x in mem:
                if x != v:
                    for bid in tree.anc_paths[v]:
                        pair_want.add((x, bid))
    for v in range(n):
        if v in syn:
            continue
        for a in tree.anc_apices[v]:
            for bid in tree.anc_paths[v]:
                pair_want.add((a, bid))
                pair_want.add((v, bid))
        for bid in tree.anc_paths[v]:
            if tree.on_path[v]:
                pair_want.add((v, bid))

    first_del: dict[tuple[int, int], dict[int, int]] = {}
    after_del: dict[tuple[int, int], dict[int, int]] = {}
    by_x: dict[int, list[int]] = {}
    for (x, bid) in pair_want:
        by_x.setdefault(x, []).append(bid)
    for x in sorted(by_x):
        cond = CondensedView(view.delete_vertices([x]))
        for bid in sorted(set(by_x[x])):
            pv = side.path_vertices(bid)
            pos = {u: i for i, u in enumerate(pv)}
            first_del[(x, bid)] = cond.min_pos(pos)
            px = side.pos_on(bid, x)
            if px is not None:
                tail = {u: i for i, u in enumerate(pv) if i > px}
                after_del[(x, bid)] = cond.min_pos(tail)

    def recs(x, bid, v):
        g = first_del.get((x, bid), {}).get(v)
        aft = after_del.get((x, bid), {}).get(v)
        return [g, aft]

    for pid, mem in leaf_members.items():
        for v in mem:
            if pid not in tree.anc_pieces[v]:
                continue
            for x in mem:
                if x == v:
                    continue
                for bid in tree.anc_paths[v]:
                    sec[v]["coleaf"][f"{x}:{bid}"] = recs(x, bid, v)

    for v in range(n):
        if v in syn:
            continue
        for a in tree.anc_apices[v]:
            for bid in tree.anc_paths[v]:
                sec[v]["aprec"][f"{a}:{bid}"] = recs(a, bid, v)
                sec[v]["aprecR"][f"{a}:{bid}"] = recs(v, bid, a)
        for pprime_id in tree.on_path[v]:
            ppv = list(side.path_vertices(pprime_id))
            fpos = side.pos_on(pprime_id, v)
            for bid in tree.anc_paths[v]:
                if bid == pprime_id:
                    continue
                rec = _cont_from_dp(first_del[(v, bid)], ppv, fpos)
                sec[v]["cont"][f"{pprime_id}:{bid}"] = rec.to_obj()


def _cont_from_dp(firsts: dict[int, int], path_vertices: list[int], f_pos: int
                  ) -> ContinuationRecord:
    def compress(rng):
        out = []
        prev = -2
        for p in rng:
            val = firsts.get(path_vertices[p])
            if val != prev:
                out.append((p, val))
                prev = val
        return out

    return ContinuationRecord(f_pos, compress(range(0, f_pos)),
                              compress(range(f_pos + 1, len(path_vertices))))


def _anc_pieces_chain(tree: DecompTree, pid: int) -> list[int]:
    chain = []
    cur: int | None = pid
    while cur is not None:
        chain.append(cur)
        cur = tree.pieces[cur].parent
    return chain


def _build_l42(side: Side, sec: list[dict]) -> None:
    tree = side.tree
    view = side.view
    syn = set(tree.graph.synthetic_vertices)

    anc_chain = {pid: _anc_pieces_chain(tree, pid)
                 for pid in range(len(tree.pieces))}

    # instance pairs exactly as the run-entry loop consumes them
    pairs: set[tuple[int, int]] = set()
    jobs: list[tuple[int, list[int]]] = []  # (piece id, target path ids)
    for hid, hp in enumerate(tree.pieces):
        if hp.parent is None:
            continue
        targets: list[int] = []
        for anc in anc_chain[hp.parent]:
            targets.extend(tree.pieces[anc].sep_path_ids)
        jobs.append((hid, targets))
        for br in hp.boundary_runs:
            for bid in targets:
                if br.path_id != bid:
                    pairs.add((br.path_id, bid))

    insts: dict[tuple[int, int], object] = {}
    for (ppid, bid) in sorted(pairs):
        ppv = list(side.path_vertices(ppid))
        bv = list(side.path_vertices(bid))
        inst = build_canonical_instance(view, ppv, bv)
        insts[(ppid, bid)] = inst
        for w, flab in inst.f_side.items():
            if w not in syn:
                sec[w]["l42f"][f"{ppid}:{bid}"] = flab.to_obj()

    run_first_cache: dict[tuple[int, int, int], dict[int, int]] = {}
    piece_cond: dict[int, CondensedView] = {}

    def run_first(hid: int, ppid: int, s0: int, e0: int) -> dict[int, int]:
        key = (hid, ppid, s0)
        if key not in run_first_cache:
            if hid not in piece_cond:
                piece_cond[hid] = CondensedView(
                    view.restrict(tree.pieces[hid].vertices))
            ppv = side.path_vertices(ppid)
            pos = {ppv[i]: i for i in range(s0, e0 + 1)}
            run_first_cache[key] = piece_cond[hid].min_pos(pos)
        return run_first_cache[key]

    for (hid, targets) in jobs:
        hp = tree.pieces[hid]
        members = [v for v in hp.vertices
                   if v not in syn and hid in tree.anc_pieces[v]]
        for br in hp.boundary_runs:
            ppid = br.path_id
            s0, e0 = side.run_coords(br)
            firsts = run_first(hid, ppid, s0, e0)
            for bid in targets:
                inst = insts.get((ppid, bid))
                for v in members:
                    apos = firsts.get(v)
                    if apos is None:
                        continue
                    ent = sec[v]["l42"].setdefault(str(bid), {}) \
                        .setdefault(str(hid), [])
                    if ppid == bid:
                        item = [ppid, apos, None]
                    else:
                        avx = side.path_vertices(ppid)[apos]
                        a44 = inst.a_side.get(avx) if inst else None
                        item = [ppid, apos, a44.to_obj() if a44 else None]
                    if item not in ent:
                        ent.append(item)


def _build_l43(side: Side, sec: list[dict], audit: bool) -> None:
    tree = side.tree
    for pid, piece in enumerate(tree.pieces):
        if piece.atomic:
            continue
        for path_id in piece.sep_path_ids:
            if len(tree.paths[path_id].vertices) < 2:
                continue
            _build_l43_instance(side, sec, pid, path_id, audit)


def _build_l43_instance(side: Side, sec: list[dict], pid: int, path_id: int,
                        audit: bool) -> None:
    tree = side.tree
    syn = set(tree.graph.synthetic_vertices)
    inst = incised_instance(tree, pid, path_id)
    emb = inst.emb.reverse() if side.rev else inst.emb
    pverts_g = side.path_vertices(path_id)
    p_locals = [inst.g2l_unsplit[v] for v in pverts_g]
    key = f"{pid}:{path_id}"
    xview = GraphView(emb)

    labels47 = build_path_fault_labels(emb, p_locals, check=audit)
    pset = set(pverts_g)
    for i, v in enumerate(pverts_g):
        sec[v]["l43f"].setdefault(key, {})["f47"] = labels47[i].to_obj()

    x0 = xview.delete_out_arcs_of(p_locals)
    p_pos_local = {l: i for i, l in enumerate(p_locals)}

    sub_pids = _subtree(tree, pid)
    pprime_keys: list[tuple[int, int | None]] = []
    for d in sub_pids:
        dp = tree.pieces[d]
        for q in dp.sep_path_ids:
            if d == pid:
                if q != path_id:
                    pprime_keys.append((q, 0))
                    pprime_keys.append((q, 1))
            else:
                pprime_keys.append((q, None))

    inst46: dict[tuple[int, int | None], tuple] = {}
    for (q, s) in pprime_keys:
        qlocs = []
        for v in side.path_vertices(q):
            if v in pset:
                continue
            ls = inst.locals_of(v, s)
            if ls:
                qlocs.append(ls[0])
        if not qlocs:
            continue
        e_inst = build_entry_instance(x0, qlocs, p_locals)
        inst46[(q, s)] = (e_inst, qlocs)
        for i, v in enumerate(pverts_g):
            flab = e_inst.f_side[i]
            succ47 = labels47[flab.successor].to_obj() \
                if flab.successor is not None else None
            sec[v]["l43f"].setdefault(key, {}).setdefault("f46", {})[
                f"{q}:{s}"] = [flab.to_obj(), succ47]

    for d in sub_pids:
        dp = tree.pieces[d]
        if d == pid:
            continue
        branch = child_branch_of(tree, pid, d)
        dset = frozenset(
            l for v in dp.vertices
            for l in inst.locals_of(v, branch if v in inst.copies else None))
        dview = x0.restrict(dset)
        members = [v for v in dp.vertices if v not in syn
                   and d in tree.anc_pieces[v] and v in inst.g2l_unsplit
                   and pid in tree.anc_pieces[v]]
        for br in dp.boundary_runs:
            q = br.path_id
            if q == path_id:
                pos = {}
                for v in br.vertices:
                    l = inst.g2l_unsplit.get(v)
                    if l in p_pos_local:
                        pos[l] = p_pos_local[l]
                skey = None
            else:
                origin_is_host = tree.paths[q].piece_id == pid
                skey = branch if origin_is_host else None
                if (q, skey) not in inst46:
                    continue
                e_inst, qlocs = inst46[(q, skey)]
                qpos = {l: i for i, l in enumerate(qlocs)}
                pos = {}
                for v in br.vertices:
                    if v in pset:
                        continue
                    ls = inst.locals_of(v, skey if v in inst.copies else None)
                    if ls and ls[0] in qpos:
                        pos[ls[0]] = qpos[ls[0]]
            if not pos:
                continue
            firsts = min_pos_dp(dview, pos)
            for v in members:
                lv = inst.g2l_unsplit.get(v)
                apos = firsts.get(lv)
                if apos is None:
                    continue
                store = sec[v]["l43"].setdefault(key, {}).setdefault(str(d), [])
                if q == path_id:
                    item = ["P", None, apos, labels47[apos].to_obj()]
                else:
                    e_inst, qlocs = inst46[(q, skey)]
                    alab = e_inst.a_side[qlocs[apos]]
                    first47 = labels47[alab.first].to_obj() \
                        if alab.first is not None else None
                    starts47 = [labels47[lo].to_obj() for lo, _ in alab.intervals]
                    item = [f"{q}:{skey}", None, apos,
                            [alab.to_obj(), first47, starts47]]
                if not any(e[0] == item[0] and e[2] == item[2] for e in store):
                    store.append(item)


def _subtree(tree: DecompTree, pid: int) -> list[int]:
    out = []
    stack = [pid]
    while stack:
        d = stack.pop()
        out.append(d)
        stack.extend(tree.pieces[d].children)
    return out
