import copy

import numpy as np
import pytest

from crossedsq.catalog import cyclic, named
from crossedsq.corpus import (
    chain_from_maps, constant, default_corpus, dold_kan, nerve, product_of, trivial,
    twisted_xmod,
)
from crossedsq.errors import ConstructionError, GroupTooLarge, SpecError
from crossedsq.groups import Group, Hom
from crossedsq.simplicial import SimplicialMap, tuple_group
from crossedsq.xmod import CrossedModule

CORPUS = default_corpus()

EXPECTED = {
    "const-S3": ([6, 6, 6, 6], [(6, [2]), (1, []), (1, [])]),
    "nerve-C2-trivial": ([2, 4, 8, 16], [(2, [2]), (2, [2]), (1, [])]),
    "nerve-C3-S3-twisted": ([6, 18, 54, 162], [(6, [2]), (3, [3]), (1, [])]),
    "gamma-C2-deg2": ([1, 1, 2, 8], [(1, []), (1, []), (2, [2])]),
    "cosk-nerve-S3": ([6, 36, 216, 1296], [(1, []), (1, []), (1, [])]),
    "cosk-gamma-C2": ([2, 4, 8, 16], [(2, [2]), (2, [2]), (1, [])]),
    "nerve-A3-S3-x-gamma": ([6, 18, 108, 1296], [(2, [2]), (1, []), (2, [2])]),
}


@pytest.fixture(scope="module")
def corpus():
    return {name: build() for name, build in CORPUS.items()}


def test_corpus_names_match_expectations():
    assert sorted(CORPUS) == sorted(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_identities(corpus, name):
    t = corpus[name]
    assert t.check().ok
    assert t.orders() == EXPECTED[name][0]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_homotopy(corpus, name):
    got = [(d["order"], d["abelian_invariants"]) for d in corpus[name].homotopy_groups()]
    assert got == EXPECTED[name][1]


def test_corrupted_face_is_reported(corpus):
    t = copy.copy(corpus["nerve-C2-trivial"])
    t.faces = [list(f) for f in t.faces]
    f = t.faces[2][1]
    bad = f.images.copy()
    bad[[1, 2]] = bad[[2, 1]]
    t.faces[2][1] = Hom(f.source, f.target, bad, check=False)
    rep = t.check()
    assert not rep.ok
    assert "d_i d_j = d_{j-1} d_i" in rep.failed() or "faces are homs" in rep.failed()


def test_corrupted_degeneracy_is_reported(corpus):
    t = copy.copy(corpus["const-S3"])
    t.degens = [list(s) for s in t.degens]
    g = t.levels[1]
    t.degens[1][0] = Hom(g, g, np.zeros(g.order, dtype=np.int64), check=False)
    assert "d_i s_j" in t.check().failed()


def test_level_counts_validated():
    g = cyclic(2)
    i = Hom.identity(g)
    from crossedsq.simplicial import SimplicialGroup
    with pytest.raises(SpecError):
        SimplicialGroup([g, g], [[], [i]], [[i]])


def test_moore_of_nerve_is_the_crossed_module():
    x = twisted_xmod(3)
    t = nerve(x, 2)
    assert t.moore(1).order == x.M.order
    d = t.moore_boundary(1)
    assert d.image().order == 1  # trivial boundary
    assert t.moore(2).order == 1


def test_pi1_needs_truncation_flag_at_top():
    t = nerve(CrossedModule.identity(cyclic(2)), 1)
    with pytest.raises(SpecError):
        t.homotopy_group(1)
    g, _ = t.homotopy_group(1, truncated=True)
    assert g.order == 1
    top = t.homotopy_groups(truncated=True)[-1]
    assert top["truncation_relative"]


def test_homotopy_level_out_of_range():
    with pytest.raises(SpecError):
        trivial(2).homotopy_group(5)


def test_dold_kan_recovers_chain():
    c2, c4 = cyclic(2), cyclic(4)
    # C4 -> C2 onto in degree 1 over a trivial degree 0
    chain = chain_from_maps([Group.trivial(), c4, c2], [[0] * 4, [0, 2]])
    t = dold_kan(chain, 3)
    assert t.check().ok
    assert [t.moore(n).order for n in range(3)] == [1, 4, 2]
    pis = [(d["order"], d["abelian_invariants"]) for d in t.homotopy_groups()]
    assert pis == [(1, []), (2, [2]), (1, [])]


def test_dold_kan_rejects_nonzero_square():
    c2 = cyclic(2)
    chain = chain_from_maps([c2, c2, c2], [[0, 1], [0, 1]])
    with pytest.raises(ConstructionError):
        dold_kan(chain, 2)


def test_dold_kan_rejects_nonabelian():
    s3 = named("S3")
    with pytest.raises(ConstructionError):
        dold_kan([(s3, None)], 1)


def test_product_homotopy_is_product(corpus):
    a = nerve(CrossedModule.trivial_map(cyclic(2), cyclic(2)), 2)
    b = constant(cyclic(3), 2)
    p = product_of(a, b)
    assert p.check().ok
    orders = [d["order"] for d in p.homotopy_groups()]
    assert orders == [2 * 3, 2]


def test_coskeleton_kills_top_homotopy():
    base = nerve(CrossedModule.trivial_map(cyclic(2), cyclic(2)), 1)
    t = base.coskeleton_level()
    assert t.check().ok
    assert t.homotopy_groups()[1]["order"] == 1
    t3 = base.extend_to(3)
    assert t3.k == 3 and t3.check().ok


def test_degenerate_subgroup_of_constant_is_everything():
    t = constant(named("S3"), 2)
    assert t.degenerate_subgroup(1).order == 6
    with pytest.raises(SpecError):
        t.degenerate_subgroup(0)


def test_truncate():
    t = constant(cyclic(3), 3).truncate(1)
    assert t.k == 1 and t.check().ok
    with pytest.raises(SpecError):
        t.truncate(2)


def test_face_word():
    t = nerve(CrossedModule.identity(cyclic(2)), 2)
    x = np.arange(t.levels[2].order)
    assert np.array_equal(t.apply_face_word(2, [2, 1], x), t.apply_face_word(2, [1, 1], x))


def test_simplicial_map_identity_and_fault():
    t = nerve(CrossedModule.identity(cyclic(3)), 2)
    ident = [Hom.identity(g) for g in t.levels]
    assert SimplicialMap(t, t, ident).check().ok
    bad = list(ident)
    bad[1] = Hom(t.levels[1], t.levels[1], np.zeros(t.levels[1].order, dtype=np.int64),
                 check=False)
    assert not SimplicialMap(t, t, bad).check().ok


def test_tuple_group_guards():
    c2 = cyclic(2)
    with pytest.raises(ConstructionError):
        tuple_group([c2], [[1]])
    with pytest.raises(ConstructionError):
        tuple_group([c2], [[0, 1]])
    big = cyclic(100)
    rows = np.array([(a, b) for a in range(100) for b in range(100)])
    with pytest.raises(GroupTooLarge):
        tuple_group([big, big], rows)
