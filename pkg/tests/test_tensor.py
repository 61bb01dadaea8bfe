import copy
from math import gcd

import numpy as np
import pytest

from crossedsq.catalog import cyclic, named
from crossedsq.errors import ConstructionError
from crossedsq.groups import Action, Group, Hom
from crossedsq.snf import abelian_invariants_from_relations
from crossedsq.square import CrossedSquare, inclusion_square
from crossedsq.tensor import (
    Corner, FreeSquareData, corner_universality, ellis_free_square,
    ellis_presentation, free_crossed_module, tensor_product, tensor_square_completion,
    totally_free_universality,
)
from crossedsq.xmod import CrossedModule

ABELIAN_8 = ["C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C2xC4", "C2xC2xC2"]


def self_corner(name):
    g = named(name)
    x = CrossedModule.identity(g)
    return Corner(x, x)


def trivial_corner(m, n):
    p = Group.trivial()
    return Corner(CrossedModule.trivial_map(m, p), CrossedModule.trivial_map(n, p))


def z_tensor_invariants(a, b):
    """Invariants of A (x)_Z B for finite abelian A, B, from the cyclic decompositions."""
    rows = []
    k = 0
    for x in a:
        for y in b:
            row = [0] * (len(a) * len(b))
            row[k] = gcd(x, y)
            rows.append(row)
            k += 1
    return abelian_invariants_from_relations(rows, len(a) * len(b))


def test_trivial_corner():
    t = Group.trivial()
    sq = tensor_square_completion(trivial_corner(t, t))
    assert sq.L.order == 1 and sq.check().ok


def test_c2_trivial_actions():
    c2 = cyclic(2)
    x = CrossedModule(c2, c2, Hom.identity(c2), Action.trivial(c2, c2))
    tp = tensor_product(Corner(x, x))
    assert tp.group.order == 2 and tp.group.is_abelian
    assert tp.group.abelian_invariants() == tp.presentation.abelian_invariants() == [2]
    assert tensor_square_completion(Corner(x, x)).check(mode="exhaustive").ok


def test_m_trivial_gives_trivial_top():
    s3 = named("S3")
    t = CrossedModule.trivial_map(Group.trivial(), s3)
    sq = tensor_square_completion(Corner(t, CrossedModule.identity(s3)))
    assert sq.L.order == 1 and sq.check().ok


@pytest.mark.parametrize("name, order, inv", [
    ("S3", 6, [6]), ("Q8", 64, [2, 2, 4, 4]), ("D8", 32, [2, 2, 2, 4]), ("A4", 24, [2, 6]),
])
def test_tensor_squares(name, order, inv):
    c = self_corner(name)
    tp = tensor_product(c)
    assert tp.group.order == order and tp.group.abelian_invariants() == inv
    assert tp.relation_report().ok
    # images of lambda generate the commutator subgroup
    g = c.P
    assert tp.lam.image().key == g.derived_subgroup.key


@pytest.mark.parametrize("a", ABELIAN_8[:6])
@pytest.mark.parametrize("b", ["C2", "C4", "C2xC2", "C6"])
def test_trivial_action_tensor_matches_oracles(a, b):
    m, n = named(a), named(b)
    tp = tensor_product(trivial_corner(m, n))
    inv = tp.group.abelian_invariants()
    assert tp.group.is_abelian
    assert inv == tp.presentation.abelian_invariants()
    assert inv == z_tensor_invariants(m.abelian_invariants(), n.abelian_invariants())


def test_relation_report_catches_tampering():
    tp = tensor_product(self_corner("S3"))
    bad = copy.copy(tp)
    bad.h = tp.h.copy()
    bad.h[1, 1] = tp.group.table[bad.h[1, 1], tp.h[1, 2]] if tp.h[1, 2] else 1
    assert not bad.relation_report().ok


@pytest.mark.parametrize("name", ["S3", "Q8", "D8", "A4"])
def test_corner_universality_into_inclusion_square(name):
    c = self_corner(name)
    sq = tensor_square_completion(c)
    g = c.P
    inc = inclusion_square(g, g.whole(), g.whole())
    res = corner_universality(sq, inc)
    assert res.ok
    # the L-component is the commutator map m (x) n -> [m, n]
    comm = g.comm(np.arange(g.order)[:, None], np.arange(g.order)[None, :])
    assert np.array_equal(res.morphism.fL.images[sq.h], comm)


def test_corner_universality_identity():
    sq = tensor_square_completion(self_corner("S3"))
    res = corner_universality(sq, sq)
    assert res.ok and np.array_equal(res.morphism.fL.images, np.arange(sq.L.order))


def test_corner_universality_corrupted_h():
    g = named("S3")
    sq = tensor_square_completion(self_corner("S3"))
    inc = inclusion_square(g, g.whole(), g.whole())
    bad = copy.copy(inc)
    bad.__dict__.pop("_h_cache", None)
    bad.h = inc.h.copy()
    bad.h[1, 2] = 0 if bad.h[1, 2] else 1
    res = corner_universality(sq, bad)
    assert not res.ok and res.violations


def test_corner_universality_needs_same_corner():
    sq = tensor_square_completion(self_corner("S3"))
    g = named("C6")
    with pytest.raises(ConstructionError):
        corner_universality(sq, inclusion_square(g, g.whole(), g.whole()))


def test_free_square_data_rejects_bad_f3():
    x = CrossedModule.identity(cyclic(2))
    with pytest.raises(ConstructionError):
        FreeSquareData(x, {"b": 1})


def test_free_crossed_module_is_crossed():
    p = named("S3")
    x, basis = free_crossed_module(p, [1], exponent=2)
    assert x.check_crossed().ok and len(basis) == 1
    assert x.d.images[basis[0]] == 1


@pytest.mark.parametrize("name", ["C2", "C3", "S3", "C2xC2"])
def test_ellis_empty_basis_is_tensor(name):
    x = CrossedModule.identity(named(name))
    e = ellis_free_square(FreeSquareData(x, {}))
    assert e.square.check().ok
    assert e.i.is_isomorphism
    assert np.array_equal(e.i.images[e.tensor.h], e.square.h)


def test_ellis_trivial_m():
    f = cyclic(3)
    x = CrossedModule.trivial_map(Group.trivial(), f)
    e = ellis_free_square(FreeSquareData(x, {"b": 0}))
    c, _ = free_crossed_module(f, [0])
    assert e.square.L.order == c.M.order == 27


FREE_CASES = {
    "c2-identity": lambda: FreeSquareData(CrossedModule.identity(cyclic(2)), {"b": 0}),
    "c2-trivial": lambda: FreeSquareData(CrossedModule.trivial_map(cyclic(2), cyclic(2)), {"b": 1}),
}


@pytest.mark.parametrize("case", sorted(FREE_CASES))
def test_ellis_matches_direct_presentation(case):
    data = FREE_CASES[case]()
    e = ellis_free_square(data)
    assert e.square.check(mode="exhaustive").ok
    direct = ellis_presentation(data).enumerate().group
    assert direct.order == e.square.L.order
    assert direct.abelian_invariants() == e.square.L.abelian_invariants()


@pytest.mark.parametrize("case", sorted(FREE_CASES))
def test_totally_free_universality(case):
    e = ellis_free_square(FREE_CASES[case]())
    sq = e.square
    assert totally_free_universality(e, sq, e.basis).ok
    inc = inclusion_square(sq.P, e.bar, e.hat)
    to_p = list(inc.to_P(3).images)
    nu = [to_p.index(v) for v in e.free.d.images[e.free.basis_elements]]
    res = totally_free_universality(e, inc, nu)
    assert res.ok and res.unique


def test_totally_free_rejects_bad_lift():
    e = ellis_free_square(FREE_CASES["c2-trivial"]())
    with pytest.raises(ConstructionError):
        totally_free_universality(e, e.square, [0])


def test_totally_free_trivial_candidate():
    e = ellis_free_square(FREE_CASES["c2-identity"]())
    sq = e.square
    t = Group.trivial()
    cand = CrossedSquare(t, sq.M, sq.N, sq.P, Hom.trivial(t, sq.M), Hom.trivial(t, sq.N),
                         sq.mu, sq.mup, Action.trivial(sq.P, t), sq.act_M, sq.act_N,
                         np.zeros((sq.M.order, sq.N.order), dtype=np.int64))
    assert cand.check().ok
    res = totally_free_universality(e, cand, [0])
    assert res.ok and not res.morphism.fL.images.any()
