import itertools

import numpy as np
import pytest

from crossedsq.catalog import cyclic, named
from crossedsq.errors import ConstructionError, NotNormalError
from crossedsq.groups import Action, Group, Hom, all_homs
from crossedsq.xmod import CrossedModule, CrossedModuleMorphism, coproduct, kernel_cokernel


def test_normal_inclusion_is_crossed():
    s3 = named("S3")
    x = CrossedModule.inclusion(s3, s3.derived_subgroup)
    assert x.check_precrossed().ok and x.check_crossed().ok
    for g in (named("S4"), named("D8"), named("Q8")):
        for n in g.normal_subgroups():
            assert CrossedModule.inclusion(g, n).check_crossed().ok


def test_identity_c2_trivial_action_passes():
    c2 = cyclic(2)
    x = CrossedModule(c2, c2, Hom.identity(c2), Action.trivial(c2, c2))
    assert x.check_precrossed().ok


def test_precrossed_violation_witness():
    s3 = named("S3")
    a3, emb = s3.derived_subgroup.as_group()
    x = CrossedModule(a3, s3, emb, Action.trivial(s3, a3))
    rep = x.check_precrossed()
    assert not rep.ok and rep["equivariance"].witness is not None


def test_peiffer_failures():
    c4 = cyclic(4)
    assert CrossedModule.trivial_map(c4, Group.trivial()).check_crossed().ok
    rep = CrossedModule.trivial_map(named("S3"), Group.trivial()).check_crossed()
    assert not rep.ok and rep.failed() == ["peiffer"]
    assert rep["peiffer"].failures == 18  # ordered non-commuting pairs in S3


def test_crossed_implies_precrossed():
    for g in (named("S3"), named("A4")):
        for n in g.normal_subgroups():
            x = CrossedModule.inclusion(g, n)
            if x.check_crossed().ok:
                assert x.check_precrossed().ok


def test_kernel_cokernel_identity():
    s3 = named("S3")
    x = CrossedModule.inclusion(s3, s3.derived_subgroup)
    f = CrossedModuleMorphism(x, x, Hom.identity(x.M), Hom.identity(s3))
    assert f.report().ok
    k, c = kernel_cokernel(f)
    assert (k.M.order, k.P.order, c.M.order, c.P.order) == (1, 1, 1, 1)


def test_kernel_cokernel_trivial_source():
    s3 = named("S3")
    t = Group.trivial()
    src = CrossedModule.identity(t)
    tgt = CrossedModule.inclusion(s3, s3.derived_subgroup)
    f = CrossedModuleMorphism(src, tgt, Hom.trivial(t, tgt.M), Hom.trivial(t, s3))
    k, c = kernel_cokernel(f)
    assert k.M.order == 1 and c.M.order == 3 and c.P.order == 6
    assert c.check_crossed().ok


def test_cokernel_requires_normal_image():
    s3 = named("S3")
    c2 = cyclic(2)
    emb = Hom.from_images(c2, s3, [1])
    src = CrossedModule.trivial_map(c2, c2)
    tgt = CrossedModule.trivial_map(s3, s3, Action.trivial(s3, s3))
    f = CrossedModuleMorphism(src, tgt, emb, Hom.trivial(c2, s3))
    with pytest.raises(NotNormalError):
        kernel_cokernel(f)


def test_coproduct_trivial_actions():
    c2 = cyclic(2)
    x1 = CrossedModule(c2, c2, Hom.identity(c2), Action.trivial(c2, c2))
    x2 = CrossedModule.trivial_map(c2, c2)
    cp = coproduct(x1, x2)
    assert cp.xmod.M.order == 4 and cp.xmod.M.abelian_invariants() == [2, 2]
    assert cp.peiffer.order == 1


def test_coproduct_with_trivial_factor():
    s3 = named("S3")
    x = CrossedModule.inclusion(s3, s3.derived_subgroup)
    t = CrossedModule.trivial_map(Group.trivial(), s3)
    cp = coproduct(t, x)
    assert cp.xmod.M.order == 3 and cp.j.is_isomorphism


def test_coproduct_a3_a3_bruteforce():
    s3 = named("S3")
    x = CrossedModule.inclusion(s3, s3.derived_subgroup)
    cp = coproduct(x, x)
    assert cp.xmod.check_crossed().ok
    # oracle: normal closure in the order-9 semidirect product by brute force
    sd = cp.semidirect
    n = 3
    gens = set()
    for m, k in itertools.product(range(3), repeat=2):
        nm = x.act.table[x.d.images[k], m]
        mn = x.act.table[x.d.images[m], k]
        gens.add(int(x.M.table[m, x.M.inv[nm]]) * n + int(x.M.table[mn, x.M.inv[k]]))
    closure = {0} | gens
    while True:
        new = {int(sd.table[a, b]) for a in closure for b in closure}
        new |= {int(sd.conj(g, a)) for g in range(sd.order) for a in closure}
        if new <= closure:
            break
        closure |= new
    assert cp.xmod.M.order == sd.order // len(closure) == 9


def test_coproduct_mismatched_base():
    with pytest.raises(ConstructionError):
        coproduct(CrossedModule.identity(cyclic(2)), CrossedModule.identity(cyclic(3)))


def _xmod_morphisms(x, t):
    """All crossed-module morphisms x -> t over the identity of the common P."""
    out = []
    for f in all_homs(x.M, t.M):
        if (t.d.images[f.images] == x.d.images).all():
            if (f.images[x.act.table] == t.act.table[:, f.images]).all():
                out.append(f)
    return out


@pytest.mark.parametrize("case", ["s3_inclusions", "c2_mixed"])
def test_coproduct_universal_property(case):
    if case == "s3_inclusions":
        s3 = named("S3")
        x1 = x2 = CrossedModule.inclusion(s3, s3.derived_subgroup)
        targets = [CrossedModule.inclusion(s3, n) for n in s3.normal_subgroups()] + [CrossedModule.identity(s3)]
    else:
        c2 = cyclic(2)
        x1 = CrossedModule(c2, c2, Hom.identity(c2), Action.trivial(c2, c2))
        x2 = CrossedModule.trivial_map(c2, c2)
        from crossedsq.groups import direct_product
        v = direct_product(c2, c2)
        targets = [CrossedModule(v, c2, Hom.from_images(v, c2, [1, 0]), Action.trivial(c2, v)),
                   x1, x2]
    cp = coproduct(x1, x2)
    assert cp.xmod.M.order <= 64
    for t in targets:
        assert t.M.order <= 24
        for f1 in _xmod_morphisms(x1, t):
            for f2 in _xmod_morphisms(x2, t):
                us = [u for u in _xmod_morphisms(cp.xmod, t)
                      if (u.images[cp.i.images] == f1.images).all()
                      and (u.images[cp.j.images] == f2.images).all()]
                assert len(us) == 1
