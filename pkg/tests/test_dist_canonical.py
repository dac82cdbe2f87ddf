from fractions import Fraction

import pytest

from planarft.dist.asquig import build_squig_label, decode_squig
from planarft.dist.canonical import (build_legit_set, build_offpath_scheme,
                                     decode_offpath, max_f_bad_set)
from planarft.generators import chordal_path_gadget
from planarft.oracle import check_delta_first, dijkstra, oracle_dfirst
from planarft.views import GraphView

EPSES = [Fraction(1), Fraction(1, 2), Fraction(1, 4)]


def make_instance(seed, m=18, chords=11, cap=3):
    g = chordal_path_gadget(m, chords, cap, seed=seed)
    pprime = list(range(0, 6))
    p = list(range(8, m - 1))
    view = GraphView(g).zero_path(pprime).zero_path(p)
    return g, pprime, p, view


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("eps", EPSES)
def test_squig_contract(seed, eps):
    g, pprime, p, view = make_instance(seed)
    alpha = Fraction(6)
    # connector: a shortest path from last of P' to first of P, if any
    u, up = pprime[-1], p[0]
    dist, parent = dijkstra(view, u)
    if up not in dist or dist[up] > (1 + eps) * alpha:
        pytest.skip("no connector in this instance")
    path = [up]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    split = len(path) - 1
    for a in pprime:
        lab = build_squig_label(view, a, pprime, path, split, p, alpha, eps)
        assert len(lab.F) <= 1 / eps + 7
        for fpos in range(1, len(path)):
            f = path[fpos]
            if f in pprime:
                continue
            got, concluded_null = decode_squig(lab, fpos)
            dele = [x for x in path[:fpos + 1] if x != a]
            want = None if a in path[:fpos + 1] else \
                oracle_dfirst(view.delete_vertices(dele), a, p, alpha)
            if concluded_null:
                assert want is None, (seed, eps, a, fpos)
            else:
                assert got is not None
                assert want is None or got <= want, (seed, eps, a, fpos)
                # budget clause: reachable within (1+eps) alpha avoiding f
                assert check_delta_first(view, a, p, alpha, eps * alpha, got,
                                         {f}) or got <= (want if want is not None else 10**9), \
                    (seed, eps, a, fpos)
                d2, _ = dijkstra(view.delete_vertices([f]), a)
                assert p[got] in d2 and d2[p[got]] <= (1 + eps) * alpha


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("eps", EPSES)
def test_offpath_scheme_contract(seed, eps):
    g, pprime, p, view = make_instance(seed)
    alpha = Fraction(6)
    scheme = build_offpath_scheme(view, pprime, p, alpha, eps)
    # membership bound per gamma-set (cross parameter is eps/2)
    bound = 5 / (eps / 2) + 5
    for (_gi, _w), cnt in scheme.membership.items():
        assert cnt <= bound
    # f-bad sets bounded
    for gi, ls in scheme.sets.items():
        for f in range(g.n):
            if f in pprime or f in p:
                continue
            assert max_f_bad_set(view, ls, pprime, p, f, eps / 2) \
                <= 1 / (eps / 2) + 1
    for a in pprime:
        if a not in scheme.a_side:
            continue
        for f in range(g.n):
            if f in pprime or f in p:
                continue
            got = decode_offpath(scheme.a_side[a], scheme.f_side.get(f))
            assert check_delta_first(view, a, p, alpha, eps * alpha, got,
                                     {f}), (seed, eps, a, f, got)
