import itertools

import pytest

from planarft.decomp import build_decomposition_tree
from planarft.generators import (chordal_path_gadget, diamond, grid,
                                 grid_with_deletions, line3)
from planarft.oracle import oracle_reach
from planarft.reach.bundle import build_reach_labels
from planarft.reach.decode import ft_reach_query
from planarft.views import GraphView


def exhaustive_check(g, audit=False):
    tree = build_decomposition_tree(g)
    bundles = build_reach_labels(tree, audit=audit)
    view = GraphView(g)
    bad = []
    for s, t, f in itertools.product(range(g.n), repeat=3):
        if f == s or f == t:
            continue
        want = oracle_reach(view, s, t, f)
        got = ft_reach_query(bundles[s], bundles[t], bundles[f])
        if got != want:
            bad.append((s, t, f, got, want))
    assert not bad, f"{len(bad)} mismatches, first 10: {bad[:10]}"


def test_line3():
    exhaustive_check(line3(), audit=True)


def test_diamond():
    exhaustive_check(diamond(), audit=True)


def test_grid3():
    exhaustive_check(grid(3), audit=True)


def test_grid4():
    exhaustive_check(grid(4), audit=True)


@pytest.mark.parametrize("seed", range(3))
def test_deleted_grid4(seed):
    exhaustive_check(grid_with_deletions(4, 0.2, seed=seed))


@pytest.mark.parametrize("seed", range(3))
def test_gadget(seed):
    exhaustive_check(chordal_path_gadget(14, 8, 1, seed=seed))
