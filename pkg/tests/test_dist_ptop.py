from fractions import Fraction

import pytest

from planarft.dist.ptop import build_ptop_labels, decode_ptop
from planarft.generators import chordal_path_gadget
from planarft.oracle import check_delta_first
from planarft.views import GraphView

EPSES = [Fraction(1), Fraction(1, 2)]


@pytest.mark.parametrize("eps", EPSES)
@pytest.mark.parametrize("seed", range(4))
def test_ptop_contract(eps, seed):
    g = chordal_path_gadget(12, 8, 3, seed=seed)
    path = list(range(12))
    view = GraphView(g).zero_path(path)
    alpha = Fraction(5)
    labels = build_ptop_labels(view, g, path, alpha, eps)
    for f in range(len(path)):
        for b in range(len(path)):
            if b == f:
                continue
            b1, b2 = decode_ptop(labels[b], labels[f], alpha, eps)
            fv = path[f]
            assert check_delta_first(view, path[b], path[:f], alpha,
                                     eps * alpha, b1, {fv}), \
                (seed, eps, b, f, "b1", b1)
            c2 = None if b2 is None else b2 - f - 1
            assert check_delta_first(view, path[b], path[f + 1:], alpha,
                                     eps * alpha, c2, {fv}), \
                (seed, eps, b, f, "b2", b2)


def test_ptop_straight_path():
    g = chordal_path_gadget(8, 0, 1, seed=0)
    path = list(range(8))
    view = GraphView(g).zero_path(path)
    labels = build_ptop_labels(view, g, path, Fraction(4), Fraction(1))
    b1, b2 = decode_ptop(labels[2], labels[4], Fraction(4), Fraction(1))
    assert b1 == 2 and b2 is None          # before f: itself; after: blocked
    b1, b2 = decode_ptop(labels[5], labels[3], Fraction(4), Fraction(1))
    assert b1 is None and b2 == 5
