import itertools
from fractions import Fraction

import pytest

from planarft.dist.atopf import build_band_instance, decode_band
from planarft.dist.easy import build_easy_label, decode_easy
from planarft.dist.windows import build_window_scheme, decode_window
from planarft.generators import chordal_path_gadget
from planarft.oracle import check_delta_first, oracle_dfirst
from planarft.views import GraphView

EPSES = [Fraction(1), Fraction(1, 2), Fraction(1, 4)]


def gadget_instance(m, chords, cap, seed):
    g = chordal_path_gadget(m, chords, cap, seed=seed)
    path = list(range(m))
    view = GraphView(g).zero_path(path)
    return g, path, view


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(4))
def test_window_scheme_suffix(eps, seed):
    g, path, view = gadget_instance(14, 9, 4, seed)
    beta = Fraction(5)
    scheme = build_window_scheme(view, path, beta, eps, suffix_side=True)
    for f in range(len(path)):
        for b in range(f + 1, len(path)):
            got = decode_window(scheme.labels[b], scheme.labels[f], True,
                                len(path))
            forbidden = set(path[:f + 1])
            tgt = path[f + 1:]
            cand = None if got is None else got - f - 1
            assert check_delta_first(view, path[b], tgt, beta, eps * beta,
                                     cand, forbidden), (seed, eps, b, f, got)


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(4))
def test_window_scheme_prefix(eps, seed):
    g, path, view = gadget_instance(14, 9, 4, seed)
    beta = Fraction(5)
    scheme = build_window_scheme(view, path, beta, eps, suffix_side=False)
    for f in range(len(path)):
        for b in range(0, f):
            got = decode_window(scheme.labels[b], scheme.labels[f], False,
                                len(path))
            forbidden = set(path[f:])
            tgt = path[:f]
            assert check_delta_first(view, path[b], tgt, beta, eps * beta,
                                     got, forbidden), (seed, eps, b, f, got)


def test_window_partition_bound():
    for seed in range(6):
        g, path, view = gadget_instance(16, 10, 3, seed)
        for eps in EPSES:
            scheme = build_window_scheme(view, path, Fraction(4), eps, True)
            bound = (2 * (1 / eps + 1)) ** 4
            for wkey, subsets in scheme.partitions.items():
                assert len(subsets) <= bound


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(4))
def test_easy_scheme(eps, seed):
    g, path, view = gadget_instance(13, 8, 3, seed)
    beta, gamma = Fraction(4), Fraction(6)
    emb = g
    for f in range(1, len(path) - 1):
        lab = build_easy_label(view, emb, path, f, beta, gamma, eps,
                               mirror=False)
        assert len(lab.seq_b) <= 2 * (1 / eps + 1) + 2
        fv = path[f]
        src = path[f + 1:]
        tgt = path[:f]
        g1 = view.delete_vertices([fv]) \
            .delete_in_arcs_of(src, except_from=src) \
            .delete_out_arcs_of(tgt)
        for b in range(f + 1, len(path)):
            x, (c1, c2) = decode_easy(lab, b)
            assert check_delta_first(g1, path[b], tgt, beta, eps * beta, x), \
                (seed, eps, f, b, x)
            if x is not None:
                fless = view.delete_vertices([fv])
                want1 = oracle_dfirst(fless, path[x], path[:f], gamma)
                aft = oracle_dfirst(fless, path[x], path[f + 1:], gamma)
                want2 = None if aft is None else aft + f + 1
                assert c1 == want1 and c2 == want2, (seed, eps, f, b)


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(4))
def test_easy_scheme_mirror(eps, seed):
    g, path, view = gadget_instance(13, 8, 3, seed)
    beta, gamma = Fraction(4), Fraction(6)
    for f in range(1, len(path) - 1):
        lab = build_easy_label(view, g, path, f, beta, gamma, eps, mirror=True)
        fv = path[f]
        src = path[:f]
        tgt = path[f + 1:]
        g2 = view.delete_vertices([fv]) \
            .delete_in_arcs_of(src, except_from=src) \
            .delete_out_arcs_of(tgt)
        for b in range(0, f):
            x, _ = decode_easy(lab, b)
            cand = None if x is None else x - f - 1
            assert check_delta_first(g2, path[b], tgt, beta, eps * beta,
                                     cand), (seed, eps, f, b, x)


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(5))
def test_band_scheme(eps, seed):
    g = chordal_path_gadget(18, 11, 3, seed=seed)
    pprime = list(range(0, 6))
    p = list(range(8, 17))
    view = GraphView(g).zero_path(pprime).zero_path(p)
    # drop arcs leaving P except its own
    drop = []
    pset = set(p)
    for u in p:
        for nb, _, aid in view.out(u):
            if nb not in pset or abs(nb - u) != 1:
                drop.append(aid)
    view = view.delete_arcs(drop)
    alpha = Fraction(7)
    inst = build_band_instance(view, pprime, p, alpha, eps)
    for a in pprime:
        for fp in range(len(p)):
            b1, b2 = decode_band(inst.a_side[a], inst.f_side[fp])
            fv = p[fp]
            c1 = b1
            assert check_delta_first(view, a, p[:fp], alpha, eps * alpha, c1,
                                     {fv}), (seed, eps, a, fp, b1)
            c2 = None if b2 is None else b2 - fp - 1
            assert check_delta_first(view, a, p[fp + 1:], alpha, eps * alpha,
                                     c2, {fv}), (seed, eps, a, fp, b2)
