"""Nonabelian tensor products of crossed modules and free crossed squares.

For crossed modules mu: M -> P and nu: N -> P, M acts on N and N on M
through P.  The tensor product M (x) N is presented on one symbol per pair
(m, n) subject to

    mm' (x) n = (m.m' (x) m.n)(m (x) n)
    m (x) nn' = (m (x) n)(n.m (x) n.n')

and is enumerated to a concrete group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coset import DEFAULT_MAX_COSETS
from .errors import ConstructionError, HomError
from .groups import Action, Group, Hom, quotient, semidirect_product
from .report import Report
from .square import CrossedSquare, CrossedSquareMorphism
from .words import Presentation
from .xmod import CrossedModule, coproduct, induced_action, induced_hom


@dataclass(eq=False)
class Corner:
    """Two crossed modules x: M -> P and y: N -> P over the same P."""

    x: CrossedModule
    y: CrossedModule

    def __post_init__(self):
        if self.x.P is not self.y.P and self.x.P != self.y.P:
            raise ConstructionError("corner needs crossed modules over the same group")

    @property
    def P(self):
        return self.x.P

    @property
    def M(self):
        return self.x.M

    @property
    def N(self):
        return self.y.M

    def self_actions(self):
        """(M on M, N on N) through P."""
        return self.x.act.table[self.x.d.images], self.y.act.table[self.y.d.images]

    def cross_actions(self):
        """(M on N, N on M) through P."""
        return self.y.act.table[self.x.d.images], self.x.act.table[self.y.d.images]


@dataclass(eq=False)
class TensorProduct:
    corner: Corner
    group: Group
    lam: Hom        # m (x) n -> m (n.m)^-1
    lamp: Hom       # m (x) n -> (m.n) n^-1
    act: Action     # p.(m (x) n) = p.m (x) p.n
    h: np.ndarray   # [m, n] -> element m (x) n
    presentation: Presentation

    def relation_report(self):
        """Both defining relations and the structure maps, on every element triple."""
        c = self.corner
        M, N = c.M, c.N
        mm, nn = c.self_actions()
        mn, nm = c.cross_actions()
        T, h = self.group.table, self.h
        rep = Report("tensor product")
        m = np.arange(M.order)[:, None, None]
        m2 = np.arange(M.order)[None, :, None]
        n = np.arange(N.order)[None, None, :]
        lhs = h[M.table[m, m2], n]
        rhs = T[h[mm[m, m2], mn[m, n]], h[m, n]]
        rep.record("mm' (x) n", lhs != rhs, lambda i: np.unravel_index(i, lhs.shape))
        n = np.arange(N.order)[None, :, None]
        n2 = np.arange(N.order)[None, None, :]
        lhs = h[m, N.table[n, n2]]
        rhs = T[h[m, n], h[nm[n, m], nn[n, n2]]]
        rep.record("m (x) nn'", lhs != rhs, lambda i: np.unravel_index(i, lhs.shape))
        m = np.arange(M.order)[:, None]
        n = np.arange(N.order)[None, :]
        rep.record("lambda", self.lam.images[h] != M.table[m, M.inv[nm[n, m]]],
                   lambda i: divmod(i, N.order))
        rep.record("lambda'", self.lamp.images[h] != N.table[mn[m, n], N.inv[n]],
                   lambda i: divmod(i, N.order))
        P = c.P
        p = np.arange(P.order)[:, None, None]
        lhs = self.act.table[p, h[None, :, :]]
        rhs = h[c.x.act.table[p, m[None]], c.y.act.table[p, n[None]]]
        rep.record("action", lhs != rhs, lambda i: np.unravel_index(i, lhs.shape))
        commute = c.x.d.images[self.lam.images] != c.y.d.images[self.lamp.images]
        rep.record("square commutes", commute, lambda i: (i,))
        return rep


def tensor_presentation(corner):
    """One generator per pair (m, n) and one relator per relation instance."""
    M, N = corner.M, corner.N
    mm, nn = corner.self_actions()
    mn, nm = corner.cross_actions()
    nN = N.order

    def g(m, n):
        return int(m) * nN + int(n) + 1

    rels = []
    for m in range(M.order):
        for m2 in range(M.order):
            mm2 = M.table[m, m2]
            for n in range(nN):
                rels.append((-g(mm2, n), g(mm[m, m2], mn[m, n]), g(m, n)))
    for m in range(M.order):
        for n in range(nN):
            for n2 in range(nN):
                rels.append((-g(m, N.table[n, n2]), g(m, n), g(nm[n, m], nn[n, n2])))
    names = [f"t{m}_{n}" for m in range(M.order) for n in range(nN)]
    return Presentation(names, rels)


def tensor_product(corner, max_cosets=DEFAULT_MAX_COSETS, backend=None):
    """Enumerate M (x) N and attach its structure maps."""
    M, N, P = corner.M, corner.N, corner.P
    pres = tensor_presentation(corner)
    res = pres.enumerate(max_cosets=max_cosets, backend=backend)
    T = res.group
    gens = list(res.gen_elements)
    h = np.array(gens, dtype=np.int64).reshape(M.order, N.order)
    mn, nm = corner.cross_actions()
    mi = np.repeat(np.arange(M.order), N.order)
    ni = np.tile(np.arange(N.order), M.order)
    lam = Hom.from_images(T, M, M.table[mi, M.inv[nm[ni, mi]]], gens=gens)
    lamp = Hom.from_images(T, N, N.table[mn[mi, ni], N.inv[ni]], gens=gens)
    rows = []
    for p in range(P.order):
        img = h[corner.x.act.table[p, mi], corner.y.act.table[p, ni]]
        rows.append(Hom.from_images(T, T, img, gens=gens).images)
    act = Action(P, T, np.array(rows), check=False)
    T.name = f"{M.name or 'M'}(x){N.name or 'N'}"
    tp = TensorProduct(corner, T, lam, lamp, act, h, pres)
    rep = tp.relation_report()
    if not rep.ok:
        raise ConstructionError(f"tensor product failed its own checks: {rep.failed()}")
    return tp


def tensor_square_completion(corner, max_cosets=DEFAULT_MAX_COSETS):
    """The crossed square (M (x) N ; M, N ; P)."""
    tp = tensor_product(corner, max_cosets=max_cosets)
    sq = CrossedSquare(tp.group, corner.M, corner.N, corner.P, tp.lam, tp.lamp,
                       corner.x.d, corner.y.d, tp.act, corner.x.act, corner.y.act, tp.h,
                       name=f"tensor({tp.group.name})")
    sq.tensor = tp
    return sq


def corner_of(sq):
    """The corner (M -> P, N -> P) of a crossed square."""
    return Corner(CrossedModule(sq.M, sq.P, sq.mu, sq.act_M),
                  CrossedModule(sq.N, sq.P, sq.mup, sq.act_N))


@dataclass
class UniversalityResult:
    morphism: CrossedSquareMorphism | None
    unique: bool
    violations: list

    @property
    def ok(self):
        return self.morphism is not None and self.unique and not self.violations


def corner_universality(sq, target):
    """The morphism sq -> target fixing M, N, P and sending m (x) n to h_t(m, n).

    ``sq`` must come from tensor_square_completion.  Uniqueness holds because
    the symbols m (x) n generate the tensor product, which is verified.
    """
    _same_corner(sq, target)
    tp = sq.tensor
    gens = tp.h.ravel()
    images = target.h.ravel()
    # relator failures are reported as content; other defects raise
    violations = _relator_violations(tp.presentation, target.L, images)
    if violations:
        return UniversalityResult(None, False, violations)
    tcheck = target.check()
    if not tcheck.ok:
        raise ConstructionError(f"target is not a crossed square: {tcheck.failed()}")
    phi = Hom.from_images(tp.group, target.L, images, gens=gens)
    generated = tp.group.subgroup(gens.tolist()).order == tp.group.order
    mor = CrossedSquareMorphism(sq, target, phi, *(Hom.identity(g) for g in (sq.M, sq.N, sq.P)))
    rep = mor.report()
    return UniversalityResult(mor, generated, [] if rep.ok else rep.failed())


def _same_corner(a, b):
    for x, y in ((a.M, b.M), (a.N, b.N), (a.P, b.P)):
        if x.order != y.order or not np.array_equal(x.table, y.table):
            raise ConstructionError("squares do not share the corner groups")
    for f, g in ((a.mu, b.mu), (a.mup, b.mup)):
        if not np.array_equal(f.images, g.images):
            raise ConstructionError("squares do not share the corner maps")


def _relator_violations(pres, group, images):
    """Relators of ``pres`` that fail under generator i -> images[i]."""
    t, inv = group.table, group.inv
    bad = []
    for r in pres.relators:
        x = 0
        for a in r:
            x = t[x, images[a - 1]] if a > 0 else t[x, inv[images[-a - 1]]]
        if x != 0:
            bad.append(tuple(int(a) for a in r))
            if len(bad) >= 10:
                break
    return bad


# -- free crossed squares --------------------------------------------------------

@dataclass(eq=False)
class FreeSquareData:
    """A finite precrossed module M -> F with a function f3: B3 -> ker(d)."""

    xmod: CrossedModule
    f3: dict            # basis name -> element of M

    def __post_init__(self):
        bad = [b for b, m in self.f3.items() if self.xmod.d.images[m] != 0]
        if bad:
            raise ConstructionError(f"f3({bad[0]}) is not in the kernel of the boundary")
        rep = self.xmod.check_precrossed()
        if not rep.ok:
            raise ConstructionError(f"not a precrossed module: {rep.failed()}")

    @property
    def basis(self):
        return list(self.f3)


def free_crossed_module(P, images, exponent=None, max_cosets=DEFAULT_MAX_COSETS):
    """Free crossed module of exponent ``exponent`` on basis -> P, made finite.

    Generators (b, p) stand for p.c_b.  Relators: the Peiffer identity
    x y x^-1 = d(x).y on generators and (b, p)^exponent.
    Returns (CrossedModule, element of each basis generator).
    """
    nb = len(images)
    nP = P.order
    e = P.exponent if exponent is None else exponent
    if nb == 0:
        t = Group.trivial()
        return CrossedModule(t, P, Hom.trivial(t, P), Action.trivial(P, t)), []

    def g(b, p):
        return b * nP + int(p) + 1

    # d(b, p) = p f(b) p^-1
    dgen = [[int(P.conj(p, images[b])) for p in range(nP)] for b in range(nb)]
    rels = []
    for b in range(nb):
        for p in range(nP):
            rels.append((g(b, p),) * e)
            for b2 in range(nb):
                for q in range(nP):
                    rels.append((g(b, p), g(b2, q), -g(b, p), -g(b2, P.table[dgen[b][p], q])))
    names = [f"c{b}_{p}" for b in range(nb) for p in range(nP)]
    res = Presentation(names, rels).enumerate(max_cosets=max_cosets)
    C = res.group
    gens = res.gen_elements
    flat_d = [dgen[b][p] for b in range(nb) for p in range(nP)]
    d = Hom.from_images(C, P, flat_d, gens=gens)
    rows = []
    for p in range(nP):
        img = [gens[b * nP + int(P.table[p, q])] for b in range(nb) for q in range(nP)]
        rows.append(Hom.from_images(C, C, img, gens=gens).images)
    act = Action(P, C, np.array(rows), check=False)
    x = CrossedModule(C, P, d, act)
    x.basis_elements = [gens[b * nP] for b in range(nb)]
    x.presentation = res.presentation
    return x, x.basis_elements


@dataclass(eq=False)
class EllisSquare:
    square: CrossedSquare
    tensor: TensorProduct
    free: CrossedModule
    i: Hom          # tensor -> L
    j: Hom          # C -> L
    basis: list     # element of L for each basis symbol
    hat: object     # subgroup M^ of P
    bar: object     # subgroup M- of P


def ellis_corner(xmod):
    """P = M x| F with the subgroups M^ = {(m, 1)} and M- = {(m, d(m)^-1)}."""
    M, F = xmod.M, xmod.P
    P, i, _ = semidirect_product(M, F, xmod.act)
    nF = F.order
    hat_el = np.arange(M.order) * nF
    bar_el = np.arange(M.order) * nF + F.inv[xmod.d.images]
    hat = P.subgroup(hat_el.tolist())
    bar = P.subgroup(bar_el.tolist())
    if hat.order != M.order or bar.order != M.order:
        raise ConstructionError("M^ or M- is not a subgroup of the semidirect product")
    return P, hat, bar


def ellis_free_square(data, max_cosets=DEFAULT_MAX_COSETS, exponent=None):
    """The top group L of the free crossed square on (M -> F, f3), made finite."""
    P, hat, bar = ellis_corner(data.xmod)
    x = CrossedModule.inclusion(P, hat)
    y = CrossedModule.inclusion(P, bar)
    corner = Corner(x, y)
    tp = tensor_product(corner, max_cosets=max_cosets)
    T = tp.group
    t_to_P = tp.lam.then(x.d)
    tx = CrossedModule(T, P, t_to_P, tp.act)
    nF = data.xmod.P.order
    f_images = [int(m) * nF for m in data.f3.values()]
    C, basis_c = free_crossed_module(P, f_images, exponent=exponent, max_cosets=max_cosets)
    cp = coproduct(tx, C)
    Q = cp.xmod.M
    # relations 1) i(dc (x) mb) = j(c) j(mb.c^-1) and 2) i(m (x) dc) = j(m.c) j(c^-1)
    hat_pos, bar_pos = hat.position, bar.position
    hat_grp, hat_emb = hat.as_group()
    bar_grp, bar_emb = bar.as_group()
    rel = []
    ci = cp.j.images
    ti = cp.i.images
    for c in range(C.M.order):
        dc = C.d.images[c]
        cinv = C.M.inv[c]
        for k in range(bar.order):
            mb = bar_emb.images[k]
            lhs = ti[tp.h[hat_pos[dc], k]]
            rhs = Q.table[ci[c], ci[C.act.table[mb, cinv]]]
            rel.append(Q.table[Q.inv[lhs], rhs])
        for k in range(hat.order):
            m = hat_emb.images[k]
            lhs = ti[tp.h[k, bar_pos[dc]]]
            rhs = Q.table[ci[C.act.table[m, c]], ci[cinv]]
            rel.append(Q.table[Q.inv[lhs], rhs])
    if (hat_pos[C.d.images] < 0).any() or (bar_pos[C.d.images] < 0).any():
        raise ConstructionError("boundary of C does not land in M^ cap M-")
    R = Q.normal_closure(sorted(set(int(r) for r in rel)))
    L, q = quotient(Q, R)
    dL = induced_hom(cp.xmod.d, q, Hom.identity(P))
    actL = induced_action(cp.xmod.act, Hom.identity(P), q)
    lam = dL.corestrict(hat)
    lamp = dL.corestrict(bar)
    i = Hom(T, L, q.images[ti], check=False)
    j = Hom(C.M, L, q.images[ci], check=False)
    h = i.images[tp.h]
    sq = CrossedSquare(L, hat_grp, bar_grp, P, lam, lamp, x.d, y.d, actL, x.act, y.act, h,
                       name="ellis")
    basis = [int(j.images[b]) for b in basis_c]
    return EllisSquare(sq, tp, C, i, j, basis, hat, bar)


def ellis_presentation(data, exponent=None):
    """A direct presentation of L on tensor symbols and free-module symbols.

    Independent of the coproduct and quotient code; used as a cross-check.
    """
    P, hat, bar = ellis_corner(data.xmod)
    x = CrossedModule.inclusion(P, hat)
    y = CrossedModule.inclusion(P, bar)
    corner = Corner(x, y)
    tpres = tensor_presentation(corner)
    nT = tpres.ngens
    M, N = corner.M, corner.N
    nN = N.order
    hat_grp, hat_emb = hat.as_group()
    bar_grp, bar_emb = bar.as_group()
    nF = data.xmod.P.order
    f_images = [int(m) * nF for m in data.f3.values()]
    nb, nP = len(f_images), P.order
    e = P.exponent if exponent is None else exponent

    def t(m, n):
        return int(m) * nN + int(n) + 1

    def c(b, p):
        return nT + b * nP + int(p) + 1

    dgen = [[int(P.conj(p, f_images[b])) for p in range(nP)] for b in range(nb)]
    rels = list(tpres.relators)
    for b in range(nb):
        for p in range(nP):
            rels.append((c(b, p),) * e)
            for b2 in range(nb):
                for q in range(nP):
                    rels.append((c(b, p), c(b2, q), -c(b, p), -c(b2, P.table[dgen[b][p], q])))
    # cross relations: conjugation of each kind of generator by the other
    hat_pos, bar_pos = hat.position, bar.position
    for b in range(nb):
        for p in range(nP):
            dp = dgen[b][p]
            for m in range(M.order):
                for n in range(nN):
                    mp = hat_pos[P.conj(dp, hat_emb.images[m])]
                    np_ = bar_pos[P.conj(dp, bar_emb.images[n])]
                    rels.append((c(b, p), t(m, n), -c(b, p), -t(mp, np_)))
                    tm = P.comm(hat_emb.images[m], bar_emb.images[n])
                    rels.append((t(m, n), c(b, p), -t(m, n), -c(b, P.table[tm, p])))
    # relations 1) and 2) for each free generator
    for b in range(nb):
        for p in range(nP):
            dc = dgen[b][p]
            for k in range(nN):
                mb = bar_emb.images[k]
                # i(dc (x) mb) = c(b,p) (mb.c(b,p))^-1
                rels.append((-t(hat_pos[dc], k), c(b, p), -c(b, P.table[mb, p])))
            for k in range(M.order):
                m = hat_emb.images[k]
                rels.append((-t(k, bar_pos[dc]), c(b, P.table[m, p]), -c(b, p)))
    names = tpres.names + [f"c{b}_{p}" for b in range(nb) for p in range(nP)]
    return Presentation(names, rels)


def totally_free_universality(ellis, candidate, nu):
    """The unique (phi, 1, 1, 1): ellis.square -> candidate with phi(basis_b) = nu[b].

    ``nu`` lists one element of candidate.L per basis symbol and must satisfy
    d(nu_b) = f3(b) in P.
    """
    sq = ellis.square
    _same_corner(sq, candidate)
    to_P = candidate.to_P(3).images
    C = ellis.free
    f_images = C.d.images[C.basis_elements]
    if any(to_P[v] != f for v, f in zip(nu, f_images)):
        raise ConstructionError("the candidate map does not lift f3")
    # generators of L: i(m (x) n) and j(p.c_b)
    gens, images = [], []
    for m in range(sq.M.order):
        for n in range(sq.N.order):
            gens.append(int(sq.h[m, n]))
            images.append(int(candidate.h[m, n]))
    P = sq.P
    for b, cb in enumerate(C.basis_elements):
        for p in range(P.order):
            gens.append(int(ellis.j.images[C.act.table[p, cb]]))
            images.append(int(candidate.act_L.table[p, nu[b]]))
    try:
        phi = Hom.from_images(sq.L, candidate.L, images, gens=gens)
    except HomError as exc:
        return UniversalityResult(None, False, [str(exc)])
    generated = sq.L.subgroup(gens).order == sq.L.order
    mor = CrossedSquareMorphism(sq, candidate, phi, *(Hom.identity(g) for g in (sq.M, sq.N, sq.P)))
    rep = mor.report()
    return UniversalityResult(mor, generated, [] if rep.ok else rep.failed())
