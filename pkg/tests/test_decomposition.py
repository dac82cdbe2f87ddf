import itertools
import math

import pytest

from planarft.decomp import (LEAF_CAP, build_decomposition_tree, split_separator)
from planarft.generators import chordal_path_gadget, grid, grid_with_deletions, line3
from planarft.oracle import oracle_reach
from planarft.paths import PathRef
from planarft.sptree import build_layered_spanning_tree, root_path_segments
from planarft.views import GraphView

D_MAX = 4.0   # calibrated on the generator suite, then frozen
A_MAX = 3.0


def audit(tree):
    g = tree.graph
    for p in tree.pieces:
        # separator paths are vertex-disjoint from the boundary
        assert not (p.sep_vertex_set & p.boundary_set)
        if not p.atomic:
            c0, c1 = [tree.pieces[c] for c in p.children]
            cyc = set(p.cycle_vertices)
            # children overlap exactly on the cycle; the rest is partitioned
            assert c0.vertices & c1.vertices == cyc & p.vertices
            assert c0.vertices | c1.vertices == p.vertices
            # balance on non-boundary weight
            w = len(p.vertices - p.boundary_set - set(g.synthetic_vertices))
            for c in (c0, c1):
                inner = len((c.vertices - cyc) - p.boundary_set
                            - set(g.synthetic_vertices))
                assert 3 * inner <= 2 * w + 3
        else:
            assert len(p.interior - set(g.synthetic_vertices)) <= LEAF_CAP
    # every vertex on the separator of at most one piece
    owner = {}
    for p in tree.pieces:
        for v in p.sep_vertex_set:
            assert v not in owner, f"{v} on separators of {owner[v]} and {p.id}"
            owner[v] = p.id


@pytest.mark.parametrize("k", [3, 4, 6])
def test_grid_decomposition_structure(k):
    tree = build_decomposition_tree(grid(k))
    audit(tree)
    n = k * k
    assert tree.depth() <= max(1, D_MAX * math.log2(max(2, n)))
    for v in range(n):
        assert len(tree.anc_pieces[v]) <= max(2, A_MAX * math.log2(max(2, n)))


def test_line3_atomic():
    tree = build_decomposition_tree(line3())
    assert tree.pieces[0].atomic
    assert tree.depth() == 0
    # every vertex is its own leaf separator path
    assert sorted(p.vertices for p in tree.paths) == [(0,), (1,), (2,)]


def test_deleted_grid_decomposition():
    for seed in (1, 2, 3):
        g = grid_with_deletions(6, 0.15, seed=seed)
        tree = build_decomposition_tree(g)
        audit(tree)


def test_gadget_decomposition():
    g = chordal_path_gadget(30, 12, 3, seed=5)
    tree = build_decomposition_tree(g)
    audit(tree)


def test_boundary_runs_reference_origin_paths():
    tree = build_decomposition_tree(grid(6))
    for p in tree.pieces:
        for br in p.boundary_runs:
            sp = tree.paths[br.path_id]
            assert sp.vertices[br.start:br.start + len(br.vertices)] == br.vertices


def test_separates_conditions():
    tree = build_decomposition_tree(grid(4))
    g = tree.graph
    view = GraphView(g)
    # for every piece and every separated pair, every path between them in
    # the full graph touches separator or boundary of the piece
    for p in tree.pieces:
        block = p.sep_vertex_set | set(p.apices) | p.boundary_set
        vs = sorted(p.vertices)
        for u, v in itertools.product(vs, repeat=2):
            if u == v or not tree.separates(p.id, u, v):
                continue
            if u in block or v in block:
                continue
            # u,v in distinct children: no path may avoid block
            sub = view.restrict(p.vertices - (block - {u, v}))
            assert not oracle_reach(sub, u, v)


def test_separates_trivial_cases():
    tree = build_decomposition_tree(grid(4))
    for p in tree.pieces:
        if p.atomic:
            continue
        q = next(iter(p.sep_vertex_set))
        other = next(iter(p.vertices - {q}))
        assert tree.separates(p.id, q, other)          # condition (1)
        c0 = [v for v in p.vertices
              if p.child_of.get(v) == 0 and v not in p.sep_vertex_set]
        if len(c0) >= 2:
            assert not tree.separates(p.id, c0[0], c0[1])


@pytest.mark.parametrize("build", [
    lambda: grid(5),
    lambda: grid_with_deletions(6, 0.15, seed=2),
    lambda: chordal_path_gadget(30, 12, 3, seed=5),
])
def test_incised_separator_path_endpoints_cofacial(build):
    # the property the sub-schemes rely on: inside the incised piece H x P,
    # the endpoints of the preserved separator path P share a face
    from planarft.reach.instances import incised_instance
    tree = build_decomposition_tree(build())
    checked = 0
    for p in tree.pieces:
        if p.atomic:
            continue
        for spid in p.sep_path_ids:
            if len(tree.paths[spid].vertices) < 2:
                continue
            inst = incised_instance(tree, p.id, spid)
            emb = inst.emb
            if not inst.p_locals:
                continue
            faces = emb.faces()
            face_of_vertex = {}
            for fi, f in enumerate(faces):
                for d in f:
                    face_of_vertex.setdefault(emb.dart_vertex(d), set()).add(fi)
            a, b = inst.p_locals[0], inst.p_locals[-1]
            assert a == b or (face_of_vertex.get(a, set()) &
                              face_of_vertex.get(b, set())), \
                f"path {spid} endpoints not co-facial in incised piece {p.id}"
            checked += 1
    assert checked


def test_layered_tree_grid_segments():
    g = grid(4)
    tree = build_layered_spanning_tree(g)
    worst = max(len(root_path_segments(g, tree, v)) for v in tree.members())
    assert worst <= 2


def test_layered_tree_deleted_grids():
    for seed in range(5):
        g = grid_with_deletions(6, 0.2, seed=seed)
        t = build_layered_spanning_tree(g)
        worst = max(len(root_path_segments(g, t, v)) for v in t.members())
        assert worst <= 3


def test_split_separator_examples():
    p = PathRef(tuple(range(11)))
    parts = split_separator(p, [1] * 10, 1, 3)  # eps*r = 3
    assert len(parts) == 4
    for part in parts:
        assert sum(1 for _ in part.vertices[1:]) <= 3 + 1
    # coverage with shared junctions
    for a, b in zip(parts, parts[1:]):
        assert a.vertices[-1] == b.vertices[0]
    assert parts[0].vertices[0] == 0 and parts[-1].vertices[-1] == 10
    # zero-length path stays single
    assert len(split_separator(PathRef((0, 1)), [0], 1, 4)) == 1
    # exact fit
    assert len(split_separator(PathRef((0, 1, 2, 3)), [1, 1, 1], 1, 3)) == 1
