import numpy as np
import pytest

from crossedsq.catalog import inclusion_triples, named
from crossedsq.groups import direct_product
from crossedsq.square import CrossedSquareMorphism, inclusion_square, trivial_square
from crossedsq.groups import Hom
from crossedsq.xmod import kernel_cokernel
from square_fixtures import FIXTURES


def test_inclusion_s3_a3_a3():
    s3 = named("S3")
    sq = inclusion_square(s3, s3.derived_subgroup, s3.derived_subgroup)
    assert sq.L.order == 3
    rep = sq.check()
    assert rep.ok and rep.mode == "exhaustive"
    assert [f"axiom {k}" in rep for k in range(1, 12)] == [True] * 11


def test_trivial_square():
    assert trivial_square().check().ok
    g = named("A4")
    t = g.identity_subgroup()
    assert inclusion_square(g, t, t).L.order == 1


def test_klein_factors():
    v = direct_product(named("C2"), named("C2"))
    a, b = v.subgroup([2]), v.subgroup([1])
    sq = inclusion_square(v, a, b)
    assert sq.L.order == 1 and (sq.h == 0).all() and sq.check().ok


def test_inclusion_h_is_commutator():
    g = named("S4")
    for n1 in g.normal_subgroups():
        for n2 in g.normal_subgroups():
            sq = inclusion_square(g, n1, n2)
            _, eL = n1.intersection(n2).as_group()
            _, eM = n2.as_group()
            _, eN = n1.as_group()
            for m in range(sq.M.order):
                for n in range(sq.N.order):
                    a, b = eM.images[m], eN.images[n]
                    assert eL.images[sq.h[m, n]] == g.table[g.table[a, b], g.table[g.inv[a], g.inv[b]]]


def test_catalog_triples_slice():
    triples = [t for t in inclusion_triples() if t[0].name in ("D8", "Q8", "A4")]
    assert len(triples) >= 20
    for g, a, b in triples:
        assert inclusion_square(g, a, b).check().ok


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_corrupted_fixture_fails_expected_axioms(name):
    build, expected = FIXTURES[name]
    rep = build().check()
    assert frozenset(rep.failed()) == expected
    for k in expected:
        assert rep[k].witness is not None


def test_every_axiom_has_a_fixture():
    covered = set().union(*(e for _, e in FIXTURES.values()))
    assert {f"axiom {k}" for k in range(1, 12)} <= covered


def test_vertical_morphism_of_inclusion_square():
    s3 = named("S3")
    sq = inclusion_square(s3, s3.derived_subgroup, s3.derived_subgroup)
    f = sq.vertical_morphism()
    assert f.report().ok
    k, c = kernel_cokernel(f)
    assert k.M.order == 1
    assert c.M.order == 1 and c.P.order == 2


def test_vertical_morphism_trivial():
    f = trivial_square().vertical_morphism()
    assert f.report().ok
    k, c = kernel_cokernel(f)
    assert k.M.order == c.M.order == 1


def test_identity_square_morphism():
    s3 = named("S3")
    sq = inclusion_square(s3, s3.whole(), s3.derived_subgroup)
    ids = [Hom.identity(g) for g in (sq.L, sq.M, sq.N, sq.P)]
    assert CrossedSquareMorphism(sq, sq, *ids).report().ok


def test_sampled_mode_reports_itself():
    s3 = named("S3")
    sq = inclusion_square(s3, s3.whole(), s3.whole())
    rep = sq.check(mode="sampled")
    assert rep.mode == "sampled" and rep.ok
