"""Scale layering: per scale r, a family of graphs that together cover every
path of length at most r, each admitting a layered spanning tree of radius r.

Bands are by undirected distance from a root vertex (Lipschitz along any
arc, so a path of length <= r spans at most two adjacent band boundaries and
sits inside one three-band window).  Graph i keeps bands i-2..i: earlier
bands contract to one synthetic root (planarity-preserving rotation splice),
later bands are dropped, and arcs heavier than r turn synthetic (they lie on
no path of length <= r).  Synthetic vertices/arcs never appear in labels or
distance computations, so every label-certified path is a real path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .embed import Arc, EmbeddedDigraph, contract_region, dart_arc
from .sptree import SpanningTree, build_layered_spanning_tree


@dataclass
class ScaleGraph:
    index: int
    emb: EmbeddedDigraph
    l2g: list[int]                      # local -> base vertex (-1 = synthetic)
    g2l: dict[int, int]
    root_local: int | None
    tree: SpanningTree | None = None


@dataclass
class ScaleFamily:
    r: int
    graphs: list[ScaleGraph] = field(default_factory=list)
    home: dict[int, int] = field(default_factory=dict)   # vertex -> band

    def graphs_of(self, v: int) -> list[int]:
        return [i for i, sg in enumerate(self.graphs) if v in sg.g2l]


def _undirected_bands(graph: EmbeddedDigraph, r: int) -> dict[int, int]:
    dist: dict[int, int] = {}
    adj: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
    for a in graph.arcs:
        if a.synthetic:
            continue
        adj[a.tail].append((a.head, a.weight))
        adj[a.head].append((a.tail, a.weight))
    pq = [(0, 0)]
    while pq:
        d, v = heapq.heappop(pq)
        if v in dist:
            continue
        dist[v] = d
        for nb, w in adj[v]:
            if nb not in dist:
                heapq.heappush(pq, (d + w, nb))
    return {v: d // r for v, d in dist.items()}


def _induced(graph: EmbeddedDigraph, keep: set[int], heavy: int
             ) -> tuple[EmbeddedDigraph, dict[int, int]]:
    """Induced sub-embedding; arcs heavier than `heavy` become synthetic."""
    live = sorted(keep)
    vmap = {v: i for i, v in enumerate(live)}
    arcs: list[Arc] = []
    arc_remap: dict[int, int] = {}
    for i, a in enumerate(graph.arcs):
        if a.synthetic:
            continue
        if a.tail in keep and a.head in keep:
            arc_remap[i] = len(arcs)
            arcs.append(Arc(vmap[a.tail], vmap[a.head], a.weight,
                            a.weight > heavy))
    rot: list[list[int]] = [[] for _ in live]
    for v in live:
        rot[vmap[v]] = [2 * arc_remap[dart_arc(d)] + (d % 2)
                        for d in graph.rotation[v] if dart_arc(d) in arc_remap]
    emb = EmbeddedDigraph(len(live), arcs, rot, validate=False)
    return emb, vmap


def build_scale_family(graph: EmbeddedDigraph, r: int) -> ScaleFamily:
    assert r >= 1 and (r & (r - 1)) == 0, "scale must be a positive power of 2"
    band = _undirected_bands(graph, r)
    fam = ScaleFamily(r=r, home=dict(band))
    if not band:
        return fam
    top = max(band.values())

    for i in range(top + 1):
        window = {v for v, b in band.items() if i - 2 <= b <= i}
        region = {v for v, b in band.items() if b < i - 2}
        if not window:
            continue
        keep = window | region
        emb, vmap = _induced(graph, keep, heavy=r)
        root_local = None
        if region:
            reg_local = {vmap[v] for v in region}
            emb, cmap = contract_region(emb, reg_local)
            root_local = cmap[min(reg_local)]
            vmap = {g: cmap[l] for g, l in vmap.items()}
        l2g = [-1] * emb.n
        g2l: dict[int, int] = {}
        for gvert in window:
            l2g[vmap[gvert]] = gvert
            g2l[gvert] = vmap[gvert]
        sg = ScaleGraph(i, emb, l2g, g2l, root_local)
        root = root_local if root_local is not None else min(g2l.values(), default=0)
        sg.tree = build_layered_spanning_tree(emb, root=root, r=r)
        fam.graphs.append(sg)
    return fam


def scales_for(graph: EmbeddedDigraph, max_weight: int | None = None) -> list[int]:
    """All powers of two up to 2 n M."""
    if max_weight is None:
        max_weight = max((a.weight for a in graph.arcs if not a.synthetic),
                         default=1)
    limit = 2 * graph.n * max(1, max_weight)
    out = []
    r = 1
    while r <= limit:
        out.append(r)
        r *= 2
    return out


def covers_path(fam: ScaleFamily, path_vertices: list[int]) -> bool:
    """Is the whole path present in one family graph containing its start?"""
    v0 = path_vertices[0]
    for sg in fam.graphs:
        if v0 not in sg.g2l:
            continue
        if all(v in sg.g2l for v in path_vertices):
            return True
    return False
