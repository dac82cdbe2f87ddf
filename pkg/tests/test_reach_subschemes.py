import itertools

import pytest

from planarft.generators import chordal_path_gadget, grid, grid_with_deletions
from planarft.oracle import oracle_first, oracle_reach
from planarft.reach.canonical import (build_canonical_instance,
                                      build_continuation_record,
                                      decode_canonical)
from planarft.reach.twointervals import build_entry_instance, decode_entry
from planarft.views import GraphView


def column_path(k, c):
    return [r * k + c for r in range(k)]


@pytest.mark.parametrize("c1,c2", [(0, 2), (0, 3), (1, 3)])
def test_canonical_grid_columns(c1, c2):
    k = 4
    g = grid(k)
    view = GraphView(g)
    pprime, b = column_path(k, c1), column_path(k, c2)
    inst = build_canonical_instance(view, pprime, b)
    # canonical paths of one instance are pairwise vertex disjoint
    for i, p1 in enumerate(inst.canonical_paths):
        for p2 in inst.canonical_paths[i + 1:]:
            assert not (set(p1) & set(p2))
    # monotone firsts along P'
    fs = [inst.a_side[v].first for v in pprime]
    defined = [f for f in fs if f is not None]
    assert defined == sorted(defined)
    for a in pprime:
        for f in range(k * k):
            if f in pprime or f in b:
                continue
            got = decode_canonical(inst.a_side[a], inst.f_side.get(f))
            want = oracle_first(view, a, b, f=f)
            assert got == want, (a, f, got, want)


@pytest.mark.parametrize("seed", range(6))
def test_canonical_gadget_segments(seed):
    g = chordal_path_gadget(18, 10, 1, seed=seed)
    view = GraphView(g)
    pprime = list(range(0, 6))
    b = list(range(8, 16))
    inst = build_canonical_instance(view, pprime, b)
    for a in pprime:
        for f in range(18):
            if f in pprime or f in b:
                continue
            got = decode_canonical(inst.a_side[a], inst.f_side.get(f))
            want = oracle_first(view, a, b, f=f)
            assert got == want, (seed, a, f, got, want)


def test_continuation_record_exact():
    for seed in range(5):
        g = chordal_path_gadget(16, 9, 1, seed=seed)
        view = GraphView(g)
        path = list(range(0, 10))
        b = list(range(11, 16))
        for f_pos in range(1, 9):
            rec = build_continuation_record(view, path, f_pos, b)
            for pos in range(10):
                if pos == f_pos:
                    continue
                got = rec.lookup(pos)
                want = oracle_first(view, path[pos], b, f=path[f_pos])
                assert got == want, (seed, f_pos, pos, got, want)


@pytest.mark.parametrize("seed", range(8))
def test_entry_instance_exact(seed):
    g = chordal_path_gadget(20, 12, 1, seed=seed)
    view = GraphView(g)
    p = list(range(10, 20))
    pprime = list(range(0, 8))
    view0 = view.delete_out_arcs_of(p)
    inst = build_entry_instance(view0, pprime, p)
    for a in pprime:
        for fp in range(len(p)):
            b1, b2 = decode_entry(inst.a_side[a], inst.f_side[fp])
            want1 = oracle_first(view0, a, p[:fp], f=p[fp])
            aft = oracle_first(view0, a, p[fp + 1:], f=p[fp])
            want2 = None if aft is None else aft + fp + 1
            assert b1 == want1, (seed, a, fp, b1, want1)
            assert b2 == want2, (seed, a, fp, b2, want2)
