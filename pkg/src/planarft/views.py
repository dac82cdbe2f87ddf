"""Graph views: stacked edits over an EmbeddedDigraph without materializing.

Supported edits: delete vertices, delete arcs, zero arc weights (e.g. a whole
path), restrict to a vertex subset, reverse.  Synthetic arcs and vertices of
the base graph are never visible through a view.  Views are immutable; every
edit returns a new view.
"""

from __future__ import annotations

from .embed import Arc, EmbeddedDigraph
from .errors import DanglingReference


class GraphView:
    def __init__(self, base: EmbeddedDigraph,
                 deleted_vertices: frozenset[int] = frozenset(),
                 deleted_arcs: frozenset[int] = frozenset(),
                 zeroed_arcs: frozenset[int] = frozenset(),
                 keep_vertices: frozenset[int] | None = None,
                 reversed_: bool = False):
        self.base = base
        self.deleted_vertices = deleted_vertices | frozenset(base.synthetic_vertices)
        self.deleted_arcs = deleted_arcs
        self.zeroed_arcs = zeroed_arcs
        self.keep_vertices = keep_vertices
        self.reversed_ = reversed_
        self._adj_cache: tuple[list, list] | None = None

    # -- derivation ----------------------------------------------------------

    def _check_vertices(self, vs) -> None:
        for v in vs:
            if not (0 <= v < self.base.n):
                raise DanglingReference(f"vertex {v}")

    def delete_vertices(self, vs) -> "GraphView":
        vs = frozenset(vs)
        self._check_vertices(vs)
        return GraphView(self.base, self.deleted_vertices | vs, self.deleted_arcs,
                         self.zeroed_arcs, self.keep_vertices, self.reversed_)

    def delete_arcs(self, arc_ids) -> "GraphView":
        arc_ids = frozenset(arc_ids)
        for a in arc_ids:
            if not (0 <= a < len(self.base.arcs)):
                raise DanglingReference(f"arc {a}")
        return GraphView(self.base, self.deleted_vertices, self.deleted_arcs | arc_ids,
                         self.zeroed_arcs, self.keep_vertices, self.reversed_)

    def zero_arcs(self, arc_ids) -> "GraphView":
        arc_ids = frozenset(arc_ids)
        for a in arc_ids:
            if not (0 <= a < len(self.base.arcs)):
                raise DanglingReference(f"arc {a}")
        return GraphView(self.base, self.deleted_vertices, self.deleted_arcs,
                         self.zeroed_arcs | arc_ids, self.keep_vertices, self.reversed_)

    def zero_path(self, path_vertices) -> "GraphView":
        """Zero the weight of every arc joining consecutive path vertices."""
        ids = []
        verts = list(path_vertices)
        for u, v in zip(verts, verts[1:]):
            found = False
            for a in self.base.out_arcs[u]:
                arc = self.base.arcs[a]
                if arc.head == v and not arc.synthetic:
                    ids.append(a)
                    found = True
            if not found:
                raise DanglingReference(f"no arc {u}->{v} to zero")
        return self.zero_arcs(ids)

    def restrict(self, vs) -> "GraphView":
        vs = frozenset(vs)
        self._check_vertices(vs)
        keep = vs if self.keep_vertices is None else (self.keep_vertices & vs)
        return GraphView(self.base, self.deleted_vertices, self.deleted_arcs,
                         self.zeroed_arcs, keep, self.reversed_)

    def reverse(self) -> "GraphView":
        return GraphView(self.base, self.deleted_vertices, self.deleted_arcs,
                         self.zeroed_arcs, self.keep_vertices, not self.reversed_)

    def delete_out_arcs_of(self, vs) -> "GraphView":
        """Delete every (real) arc leaving any vertex of vs (direction = view)."""
        vs = set(vs)
        ids = set()
        for v in vs:
            pool = self.base.in_arcs[v] if self.reversed_ else self.base.out_arcs[v]
            for a in pool:
                ids.add(a)
        return self.delete_arcs(ids)

    def delete_in_arcs_of(self, vs, except_from=None) -> "GraphView":
        """Delete (real) arcs entering vs, optionally keeping those from except_from."""
        vs = set(vs)
        keep_tails = set(except_from or ())
        ids = set()
        for v in vs:
            pool = self.base.out_arcs[v] if self.reversed_ else self.base.in_arcs[v]
            for a in pool:
                arc = self.base.arcs[a]
                tail = arc.head if self.reversed_ else arc.tail
                if tail not in keep_tails:
                    ids.add(a)
        return self.delete_arcs(ids)

    # -- queries -------------------------------------------------------------

    def alive(self, v: int) -> bool:
        if v in self.deleted_vertices:
            return False
        if self.keep_vertices is not None and v not in self.keep_vertices:
            return False
        return 0 <= v < self.base.n

    def vertices(self):
        for v in range(self.base.n):
            if self.alive(v):
                yield v

    def _arc_alive(self, a: int) -> bool:
        if a in self.deleted_arcs:
            return False
        arc = self.base.arcs[a]
        if arc.synthetic:
            return False
        return self.alive(arc.tail) and self.alive(arc.head)

    def arc_weight_of(self, a: int) -> int:
        return 0 if a in self.zeroed_arcs else self.base.arcs[a].weight

    def out(self, v: int):
        """Yield (neighbor, weight, arc_id) for live out-arcs of v."""
        pool = self.base.in_arcs[v] if self.reversed_ else self.base.out_arcs[v]
        for a in pool:
            if self._arc_alive(a):
                arc = self.base.arcs[a]
                nb = arc.tail if self.reversed_ else arc.head
                yield nb, self.arc_weight_of(a), a

    def inc(self, v: int):
        pool = self.base.out_arcs[v] if self.reversed_ else self.base.in_arcs[v]
        for a in pool:
            if self._arc_alive(a):
                arc = self.base.arcs[a]
                nb = arc.head if self.reversed_ else arc.tail
                yield nb, self.arc_weight_of(a), a

    def has_arc(self, u: int, v: int) -> bool:
        return any(nb == v for nb, _, _ in self.out(u))

    def arc_weight(self, u: int, v: int) -> int:
        best = None
        for nb, w, _ in self.out(u):
            if nb == v and (best is None or w < best):
                best = w
        if best is None:
            raise DanglingReference(f"no arc {u}->{v}")
        return best

    def materialize(self) -> tuple[int, list[Arc]]:
        """Plain arc list of the edited graph (for cross-checks in tests)."""
        arcs = []
        for a, arc in enumerate(self.base.arcs):
            if self._arc_alive(a):
                t, h = (arc.head, arc.tail) if self.reversed_ else (arc.tail, arc.head)
                arcs.append(Arc(t, h, self.arc_weight_of(a)))
        return self.base.n, arcs


def derive(graph: EmbeddedDigraph, edits: dict) -> GraphView:
    """Build a view from an edit description (spec: composable edit sets)."""
    view = GraphView(graph)
    if edits.get("delete_vertices"):
        view = view.delete_vertices(edits["delete_vertices"])
    if edits.get("delete_arcs"):
        view = view.delete_arcs(edits["delete_arcs"])
    if edits.get("zero_paths"):
        for p in edits["zero_paths"]:
            view = view.zero_path(p)
    if edits.get("restrict"):
        view = view.restrict(edits["restrict"])
    if edits.get("reverse"):
        view = view.reverse()
    return view
