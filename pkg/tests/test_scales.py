import random

import pytest

from planarft.generators import grid, grid_random_weights, line3
from planarft.oracle import dijkstra
from planarft.scales import build_scale_family, covers_path, scales_for
from planarft.sptree import root_path_segments, verify_layered
from planarft.views import GraphView


def sample_short_paths(g, r, trials, seed):
    """Random real paths of length <= r, as vertex lists."""
    rng = random.Random(seed)
    view = GraphView(g)
    out = []
    verts = list(view.vertices())
    for _ in range(trials):
        v = rng.choice(verts)
        path = [v]
        budget = r
        while True:
            nbrs = [(nb, w) for nb, w, _ in view.out(path[-1])
                    if w <= budget and nb not in path]
            if not nbrs or rng.random() < 0.25:
                break
            nb, w = rng.choice(nbrs)
            path.append(nb)
            budget -= w
        out.append(path)
    return out


def test_single_scale_when_r_huge():
    g = line3()
    fam = build_scale_family(g, 8)
    assert len(fam.graphs) == 1
    sg = fam.graphs[0]
    assert sorted(sg.g2l) == [0, 1, 2]
    assert sg.root_local is None


def test_line3_r1_coverage():
    g = line3()
    fam = build_scale_family(g, 1)
    for a in g.arcs:
        assert covers_path(fam, [a.tail, a.head]), (a, fam.home)


@pytest.mark.parametrize("r", [1, 2, 4, 8])
def test_grid5_coverage_and_layering(r):
    g = grid_random_weights(5, 4, seed=3)
    fam = build_scale_family(g, r)
    # membership: each vertex in at most 3 graphs
    for v in range(g.n):
        assert 1 <= len(fam.graphs_of(v)) <= 3
    # size bound: sum of sizes <= 6 (n + m)
    total = sum(sg.emb.n + len(sg.emb.arcs) for sg in fam.graphs)
    assert total <= 6 * (g.n + len(g.arcs))
    # sampled path coverage
    for path in sample_short_paths(g, r, 300, seed=r):
        assert covers_path(fam, path), path
    # layered tree: run segments of real arcs each of length <= r
    for sg in fam.graphs:
        verify_layered(sg.emb, sg.tree, c_max=8, r=r)


def test_scale_graphs_are_minors():
    g = grid_random_weights(4, 3, seed=1)
    fam = build_scale_family(g, 2)
    for sg in fam.graphs:
        # every real arc of the scale graph has a preimage in g
        base_arcs = {(a.tail, a.head, a.weight) for a in g.arcs}
        for a in sg.emb.arcs:
            if a.synthetic:
                continue
            t, h = sg.l2g[a.tail], sg.l2g[a.head]
            assert t >= 0 and h >= 0
            assert (t, h, a.weight) in base_arcs
        # embedding of the scale graph is planar
        sg.emb._validate()


def test_scales_for_covers_diameter():
    g = grid_random_weights(5, 4, seed=9)
    rs = scales_for(g)
    view = GraphView(g)
    dist, _ = dijkstra(view, 0)
    dmax = max(dist.values())
    assert rs[-1] >= dmax
