import numpy as np
import pytest

from crossedsq.catalog import cyclic, named
from crossedsq.corpus import chain_from_maps, dold_kan, product_of
from crossedsq.errors import ConstructionError, SpecError
from crossedsq.freeskel import (
    PEIFFER, FreeTwoSkeleton, degeneracy_ops, peiffer_word, random_pairs,
    skeleton_from_document, surjections, validate_cw_basis,
)
from crossedsq.groups import Group
from crossedsq.mg import mg0, mg1, mg2
from crossedsq.models import codiscrete, finite_quotient_model
from crossedsq.words import inverse, mul


@pytest.fixture(scope="module")
def rich():
    return FreeTwoSkeleton(["x", "w"], ["y", "v"], ["z"], {"y": "x^2", "v": "xw"},
                           {"z": "y*x^2*y^-1*x^-2"})


@pytest.fixture(scope="module")
def c4_skeleton():
    return FreeTwoSkeleton(["x"], ["y"], [], {"y": "x^2"})


def test_surjection_counts():
    assert [len(surjections(3, m)) for m in range(4)] == [1, 3, 3, 1]
    assert degeneracy_ops((0, 0, 0)) == [1, 0]
    assert degeneracy_ops((0, 1, 1, 2)) == [1]


def test_zero_skeleton_levels_are_degeneracies_of_b1():
    sk = FreeTwoSkeleton(["x"])
    assert [len(g) for g in sk.gens] == [1, 1, 1, 1]
    assert sk.names(3) == ["s2s1s0x"]
    assert sk.check().ok


def test_one_skeleton_level_one_basis(c4_skeleton):
    assert sorted(c4_skeleton.names(1)) == ["s0x", "y"]
    assert c4_skeleton.names(2) == ["s1s0x", "s1y", "s0y"]


def test_basic_faces(rich):
    y, z = rich.basic("y"), rich.basic("z")
    assert rich.face(1, y, 0) == ()
    assert rich.format(0, rich.face(1, y, 1)) == "x^2"
    assert rich.face(2, z, 0) == () and rich.face(2, z, 1) == ()
    assert rich.face(2, z, 2) == rich.f3["z"]


def test_simplicial_identities_hold(rich):
    rep = rich.check()
    assert rep.ok, rep.failed()


def test_f3_must_be_a_cycle():
    with pytest.raises(ConstructionError):
        FreeTwoSkeleton(["x"], ["y"], ["z"], {"y": "x"}, {"z": "y"})
    with pytest.raises(ConstructionError):
        FreeTwoSkeleton(["x"], ["y"], ["z"], {"y": "x"}, {"z": "x"})


def test_spec_errors():
    with pytest.raises(SpecError):
        FreeTwoSkeleton(["x"], ["x"], [], {"x": "x"})
    with pytest.raises(SpecError):
        FreeTwoSkeleton(["x"], ["y"], [], {})
    with pytest.raises(SpecError):
        skeleton_from_document({"B2": []})


def test_document_round_trip():
    sk = skeleton_from_document({"B1": ["x"], "B2": ["y"], "f2": {"y": "x^2"}})
    assert sk.format(0, sk.f2["y"]) == "x^2"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_moore_projection(rich, n):
    rng = np.random.default_rng(n)
    for _ in range(25):
        assert rich.in_moore(n, rich.random_moore(n, 10, rng))


def test_z_words_are_in_ker_d1(rich):
    for w in rich.z_words().values():
        assert rich.face(2, w, 1) == ()


@pytest.mark.parametrize("tag", sorted(PEIFFER))
def test_peiffer_words_lie_in_nf3(rich, tag):
    for x, y in random_pairs(rich, tag, 30, 6, seed=7):
        assert rich.in_moore(3, peiffer_word(rich, tag, x, y))


def test_peiffer_with_identity_is_empty(rich):
    y = rich.moore_project(2, rich.basic("z"))
    assert peiffer_word(rich, "(0)(2)", (), y) == ()


def test_peiffer_displayed_form(rich):
    x = rich.basic("z")
    y = rich.basic("z")
    s0x = rich.s(2, x, 0)
    s2y = rich.s(2, y, 2)
    expect = mul(s0x, s2y, inverse(s0x), inverse(s2y))
    assert peiffer_word(rich, "(0)(2)", x, y) == expect


def test_peiffer_rejects_non_moore(rich):
    with pytest.raises(ConstructionError):
        peiffer_word(rich, "(0)(2)", rich.s(1, rich.basic("y"), 0), rich.basic("z"))
    with pytest.raises(SpecError):
        peiffer_word(rich, "(9)(9)", (), ())


def test_cw_basis_passes(rich):
    assert validate_cw_basis(rich).ok


def test_cw_basis_missing_degeneracy(c4_skeleton):
    basis = c4_skeleton.default_basis()
    s0x = c4_skeleton.letter(1, "x", (0,))
    basis[1] = [w for w in basis[1] if w != s0x]
    failed = validate_cw_basis(c4_skeleton, basis).failed()
    assert "(b) degeneracy closed" in failed


def test_cw_basis_face_fault(rich):
    basis = rich.default_basis()
    z = rich.basic("z")
    bad = mul(z, rich.s(1, rich.basic("y"), 0))
    basis[2] = [bad if w == z else w for w in basis[2]]
    failed = validate_cw_basis(rich, basis).failed()
    assert "(c) lower faces trivial" in failed
    assert "(a) free basis" not in failed  # still a basis after a Nielsen move


def test_cw_basis_not_free(c4_skeleton):
    basis = c4_skeleton.default_basis()
    basis[1] = [mul(w, w) for w in basis[1]]
    assert "(a) free basis" in validate_cw_basis(c4_skeleton, basis).failed()


# -- finite quotient models -----------------------------------------------------

def test_codiscrete_orders():
    t = codiscrete(cyclic(3))
    assert t.orders() == [3, 9, 27, 81] and t.check().ok


def test_trivial_assignment_gives_trivial_model(c4_skeleton):
    m = finite_quotient_model(c4_skeleton, cyclic(4), {"x": 0})
    assert m.group.orders() == [1, 1, 1, 1]


def test_c4_model(c4_skeleton):
    m = finite_quotient_model(c4_skeleton, cyclic(4), {"x": 1})
    t = m.group
    assert t.check().ok
    pi0, _ = t.homotopy_group(0)
    assert pi0.order == 2 and mg0(t).order == 2
    assert mg1(t).check_crossed().ok
    assert mg2(t).check().ok


def test_c4_model_coskeleton_invariance(c4_skeleton):
    t = finite_quotient_model(c4_skeleton, cyclic(4), {"x": 1}).group
    t2 = t.truncate(2).coskeleton_level()
    assert t2.check().ok
    assert t2.homotopy_groups()[:2] == t.homotopy_groups()[:2]


def test_incompatible_assignment_names_the_relator(c4_skeleton):
    with pytest.raises(ConstructionError, match="f2"):
        finite_quotient_model(c4_skeleton, cyclic(4), {"x": 1}, {"y": 1})


def test_model_of_zero_skeleton_over_s3():
    sk = FreeTwoSkeleton(["x", "w"])
    m = finite_quotient_model(sk, named("S3"), {"x": 1, "w": 2})
    t = m.group
    assert t.check().ok
    assert [t.moore(n).order for n in (1, 2, 3)] == [1, 1, 1]
    x = mg1(t)
    assert x.M.order == 1 and x.P.order == t.levels[0].order


def test_words_evaluate_into_model(rich):
    m = finite_quotient_model(rich, cyclic(4), {"x": 1, "w": 1})
    t = m.group
    for tag in PEIFFER:
        for x, y in random_pairs(rich, tag, 5, 5, seed=11):
            v = m.evaluate(3, peiffer_word(rich, tag, x, y))
            assert all(t.faces[3][i].images[v] == 0 for i in range(3))


def _gamma2():
    c2 = cyclic(2)
    return dold_kan(chain_from_maps([Group.trivial(), Group.trivial(), c2], [[0], [0, 0]]), 3)


def test_b3_assignment_checked():
    sk = FreeTwoSkeleton(["x"], ["y"], ["z"], {"y": "x^2"}, {"z": "1"})
    target = product_of(codiscrete(cyclic(4)), _gamma2())
    with pytest.raises(ConstructionError, match="relator d_0"):
        finite_quotient_model(sk, target, {"x": 1}, b3={"z": target.degens[1][0].images[
            target.degens[0][0].images[1]]})


def test_skeletal_models_nest():
    sk1 = FreeTwoSkeleton(["x"], ["y"], [], {"y": "x^2"})
    sk2 = FreeTwoSkeleton(["x"], ["y"], ["z"], {"y": "x^2"}, {"z": "1"})
    target = product_of(codiscrete(cyclic(4)), _gamma2())
    cyc = target.cycles(2)
    z = int(cyc.elements[cyc.elements != 0][0])
    a = finite_quotient_model(sk1, target, {"x": 1})
    b = finite_quotient_model(sk2, target, {"x": 1}, b3={"z": z})
    assert a.inclusion_into(b).check().ok
    assert mg2(a.group).L.order < mg2(b.group).L.order
