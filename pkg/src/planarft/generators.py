"""Deterministic graph generators: spec fixtures and fuzz corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .embed import Arc, EmbeddedDigraph, head_dart, tail_dart
from .errors import InvalidSpec


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str                 # grid | grid-random-weights | grid-with-deletions | chordal-path-gadget
    size: int
    weight_cap: int = 1
    deletion_p: float = 0.0
    seed: int = 0


def line3() -> EmbeddedDigraph:
    arcs = [Arc(0, 1, 1), Arc(1, 2, 1)]
    rot = [[tail_dart(0)], [head_dart(0), tail_dart(1)], [head_dart(1)]]
    return EmbeddedDigraph(3, arcs, rot)


def diamond() -> EmbeddedDigraph:
    # s=0, u=1, v=2, t=3;  s->u(1), u->t(1), s->v(2), v->t(2)
    arcs = [Arc(0, 1, 1), Arc(1, 3, 1), Arc(0, 2, 2), Arc(2, 3, 2)]
    rot = [
        [tail_dart(0), tail_dart(2)],
        [head_dart(0), tail_dart(1)],
        [head_dart(2), tail_dart(3)],
        [head_dart(1), head_dart(3)],
    ]
    return EmbeddedDigraph(4, arcs, rot)


def grid(k: int, weight_fn=None) -> EmbeddedDigraph:
    """k x k grid, right/down arcs; rotation N,E,S,W (clockwise)."""
    if k < 1:
        raise InvalidSpec("grid size must be >= 1")
    if weight_fn is None:
        weight_fn = lambda u, v: 1
    vid = lambda r, c: r * k + c
    arcs: list[Arc] = []
    right: dict[tuple[int, int], int] = {}
    down: dict[tuple[int, int], int] = {}
    for r in range(k):
        for c in range(k):
            if c + 1 < k:
                right[(r, c)] = len(arcs)
                arcs.append(Arc(vid(r, c), vid(r, c + 1), weight_fn(vid(r, c), vid(r, c + 1))))
            if r + 1 < k:
                down[(r, c)] = len(arcs)
                arcs.append(Arc(vid(r, c), vid(r + 1, c), weight_fn(vid(r, c), vid(r + 1, c))))
    rot: list[list[int]] = []
    for r in range(k):
        for c in range(k):
            row = []
            if (r - 1, c) in down:
                row.append(head_dart(down[(r - 1, c)]))   # N (incoming from above)
            if (r, c) in right:
                row.append(tail_dart(right[(r, c)]))      # E
            if (r, c) in down:
                row.append(tail_dart(down[(r, c)]))       # S
            if (r, c - 1) in right:
                row.append(head_dart(right[(r, c - 1)]))  # W
            rot.append(row)
    return EmbeddedDigraph(k * k, arcs, rot)


def grid_random_weights(k: int, cap: int, seed: int) -> EmbeddedDigraph:
    rng = random.Random(seed)
    weights = {}

    def wf(u, v):
        if (u, v) not in weights:
            weights[(u, v)] = rng.randint(1, max(1, cap))
        return weights[(u, v)]

    return grid(k, wf)


def grid_with_deletions(k: int, p: float, seed: int, cap: int = 1) -> EmbeddedDigraph:
    """Grid with arcs deleted independently; largest weak component kept."""
    base = grid_random_weights(k, cap, seed) if cap > 1 else grid(k)
    rng = random.Random(seed ^ 0x5EED)
    kept = [i for i in range(len(base.arcs)) if rng.random() >= p]
    return _restrict_arcs(base, kept)


def _restrict_arcs(base: EmbeddedDigraph, kept_arcs: list[int]) -> EmbeddedDigraph:
    kept_set = set(kept_arcs)
    # weak components over kept arcs
    adj: list[list[int]] = [[] for _ in range(base.n)]
    for a in kept_set:
        arc = base.arcs[a]
        adj[arc.tail].append(arc.head)
        adj[arc.head].append(arc.tail)
    best: list[int] = []
    seen: set[int] = set()
    for v in range(base.n):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        qi = 0
        while qi < len(comp):
            x = comp[qi]
            qi += 1
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        if len(comp) > len(best):
            best = comp
    keep_vs = set(best)
    vmap = {g: i for i, g in enumerate(sorted(keep_vs))}
    arcs: list[Arc] = []
    amap: dict[int, int] = {}
    for a in sorted(kept_set):
        arc = base.arcs[a]
        if arc.tail in keep_vs and arc.head in keep_vs:
            amap[a] = len(arcs)
            arcs.append(Arc(vmap[arc.tail], vmap[arc.head], arc.weight, arc.synthetic))
    rot: list[list[int]] = [[] for _ in vmap]
    for g in sorted(keep_vs):
        row = []
        for d in base.rotation[g]:
            a = d // 2
            if a in amap:
                row.append(2 * amap[a] + (d % 2))
        rot[vmap[g]] = row
    return EmbeddedDigraph(len(vmap), arcs, rot)


def chordal_path_gadget(m: int, n_chords: int, cap: int, seed: int,
                        forward_only: bool = False) -> EmbeddedDigraph:
    """Directed path 0..m-1 plus random non-crossing chords above/below.

    Chord families per side are laminar, so the rotation system is planar by
    the nesting order.  Used by the detour / bypass / window machinery tests.
    """
    rng = random.Random(seed)
    path_w = [rng.randint(1, max(1, cap)) for _ in range(m - 1)]
    chords: list[tuple[int, int, int, bool, int]] = []  # (lo, hi, side, fwd, w)
    per_side: dict[int, list[tuple[int, int]]] = {0: [], 1: []}
    attempts = 0
    while len(chords) < n_chords and attempts < n_chords * 40:
        attempts += 1
        lo = rng.randrange(0, m - 2)
        hi = rng.randrange(lo + 2, m)
        side = rng.randrange(2)
        ok = True
        for (a, b) in per_side[side]:
            crossing = (a < lo < b < hi) or (lo < a < hi < b)
            if crossing or (a, b) == (lo, hi):
                ok = False
                break
        if not ok:
            continue
        fwd = True if forward_only else rng.random() < 0.5
        per_side[side].append((lo, hi))
        chords.append((lo, hi, side, fwd, rng.randint(1, max(1, cap))))

    arcs: list[Arc] = [Arc(i, i + 1, path_w[i]) for i in range(m - 1)]
    chord_ids = []
    for (lo, hi, side, fwd, w) in chords:
        chord_ids.append(len(arcs))
        arcs.append(Arc(lo, hi, w) if fwd else Arc(hi, lo, w))

    # rotation: clockwise [W] + above(left far->..no: see derivation) + [E] + below
    rot: list[list[int]] = []
    for v in range(m):
        above_left = []   # chords above, other endpoint < v: sorted near-first (desc u)
        above_right = []  # above, endpoint > v: far-first (desc w)
        below_right = []  # below, endpoint > v: near-first (asc w)
        below_left = []   # below, endpoint < v: far-first (asc u)
        for ci, (lo, hi, side, fwd, _w) in enumerate(chords):
            if v not in (lo, hi):
                continue
            other = hi if v == lo else lo
            aid = chord_ids[ci]
            arc = arcs[aid]
            dart = tail_dart(aid) if arc.tail == v else head_dart(aid)
            if side == 0:  # above
                if other < v:
                    above_left.append((other, dart))
                else:
                    above_right.append((other, dart))
            else:
                if other > v:
                    below_right.append((other, dart))
                else:
                    below_left.append((other, dart))
        row = []
        if v > 0:
            row.append(head_dart(v - 1))                       # W (path arc in)
        row += [d for _, d in sorted(above_left, reverse=True)]
        row += [d for _, d in sorted(above_right, reverse=True)]
        if v < m - 1:
            row.append(tail_dart(v))                           # E (path arc out)
        row += [d for _, d in sorted(below_right)]
        row += [d for _, d in sorted(below_left)]
        rot.append(row)
    return EmbeddedDigraph(m, arcs, rot)


def gen_from_spec(spec: GeneratorSpec) -> EmbeddedDigraph:
    if spec.kind == "grid":
        return grid(spec.size)
    if spec.kind == "grid-random-weights":
        return grid_random_weights(spec.size, spec.weight_cap, spec.seed)
    if spec.kind == "grid-with-deletions":
        return grid_with_deletions(spec.size, spec.deletion_p, spec.seed,
                                   cap=spec.weight_cap)
    if spec.kind == "chordal-path-gadget":
        return chordal_path_gadget(spec.size, max(1, spec.size // 2),
                                   spec.weight_cap, spec.seed)
    raise InvalidSpec(f"unknown generator kind {spec.kind!r}")
