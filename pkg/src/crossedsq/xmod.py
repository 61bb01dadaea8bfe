"""Crossed modules, their morphisms, kernels, cokernels and coproducts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ActionError, ConstructionError, NotNormalError
from .groups import Action, Group, Hom, quotient, semidirect_product
from .report import Report


@dataclass(eq=False)
class CrossedModule:
    """d: M -> P with a left action of P on M."""

    M: Group
    P: Group
    d: Hom
    act: Action

    @classmethod
    def inclusion(cls, g, n):
        """A normal subgroup N of G with the conjugation action."""
        if not n.is_normal():
            raise NotNormalError("inclusion crossed module needs a normal subgroup")
        grp, emb = n.as_group()
        return cls(grp, g, emb, n.conjugation_action(g.whole()))

    @classmethod
    def identity(cls, g):
        return cls(g, g, Hom.identity(g), Action.conjugation(g))

    @classmethod
    def trivial_map(cls, m, p, act=None):
        return cls(m, p, Hom.trivial(m, p), act or Action.trivial(p, m))

    def report(self, crossed=True):
        rep = Report("crossed module" if crossed else "precrossed module")
        bad = self.act.violations()
        rep.add("action", len(bad), 1, next(iter(bad.items()), None))
        if bad:
            return rep
        M, P, d, a = self.M, self.P, self.d.images, self.act.table
        # d(p.m) = p d(m) p^-1
        lhs = d[a]
        rhs = P.conj(np.arange(P.order)[:, None], d[None, :])
        rep.record("equivariance", lhs != rhs,
                   lambda i: ("p", i // M.order, "m", i % M.order))
        if crossed:
            # d(m).m' = m m' m^-1
            lhs = a[d]
            rhs = M.conj(np.arange(M.order)[:, None], np.arange(M.order)[None, :])
            rep.record("peiffer", lhs != rhs,
                       lambda i: ("m", i // M.order, "m'", i % M.order))
        return rep

    def check_precrossed(self):
        return self.report(crossed=False)

    def check_crossed(self):
        return self.report(crossed=True)

    def orders(self):
        return {"M": self.M.order, "P": self.P.order}


@dataclass(eq=False)
class CrossedModuleMorphism:
    """(fM, fP): (M -> P) => (M' -> P')."""

    source: CrossedModule
    target: CrossedModule
    fM: Hom
    fP: Hom

    def report(self):
        rep = Report("crossed module morphism")
        s, t = self.source, self.target
        rep.record("commutes", t.d.images[self.fM.images] != self.fP.images[s.d.images],
                   lambda i: ("m", i))
        lhs = self.fM.images[s.act.table]
        rhs = t.act.table[self.fP.images[:, None], self.fM.images[None, :]]
        rep.record("equivariant", lhs != rhs,
                   lambda i: ("p", i // s.M.order, "m", i % s.M.order))
        return rep


def induced_action(act, q_acting, q_acted):
    """Action of P/K on M/N induced by ``act``; errors if it is not well defined."""
    QP, QM = q_acting.target, q_acted.target
    rep_p = np.full(QP.order, -1, dtype=np.int64)
    rep_p[q_acting.images[::-1]] = np.arange(act.acting.order)[::-1]
    rep_m = np.full(QM.order, -1, dtype=np.int64)
    rep_m[q_acted.images[::-1]] = np.arange(act.acted.order)[::-1]
    table = q_acted.images[act.table[np.ix_(rep_p, rep_m)]]
    full = q_acted.images[act.table]
    expect = table[q_acting.images[:, None], q_acted.images[None, :]]
    if (full != expect).any():
        raise ActionError("action does not descend to the quotients")
    return Action(QP, QM, table, check=False)


def induced_hom(f, q_source, q_target):
    """f: A -> B descended to A/K -> B/N; errors if f(K) is not inside N."""
    QA, QB = q_source.target, q_target.target
    rep = np.full(QA.order, -1, dtype=np.int64)
    rep[q_source.images[::-1]] = np.arange(f.source.order)[::-1]
    img = q_target.images[f.images[rep]]
    if (img[q_source.images] != q_target.images[f.images]).any():
        raise ConstructionError("hom does not descend to the quotients")
    return Hom(QA, QB, img, check=False)


def kernel_cokernel(f):
    """(kernel, cokernel) of a crossed-module morphism, computed componentwise."""
    s, t = f.source, f.target
    kM, kP = f.fM.kernel(), f.fP.kernel()
    KM, embM = kM.as_group()
    KP, embP = kP.as_group()
    dk = Hom(KM, KP, kP.position[s.d.images[embM.images]], check=False)
    if (dk.images < 0).any():
        raise ConstructionError("boundary does not map the kernel into the kernel")
    ak = kM.position[s.act.table[np.ix_(embP.images, embM.images)]]
    kernel = CrossedModule(KM, KP, dk, Action(KP, KM, ak, check=False))

    imM, imP = f.fM.image(), f.fP.image()
    if not imM.is_normal():
        raise NotNormalError("image of the M-component is not normal in the target")
    if not imP.is_normal():
        raise NotNormalError("image of the P-component is not normal in the target")
    QM, qM = quotient(t.M, imM)
    QP, qP = quotient(t.P, imP)
    dq = induced_hom(t.d, qM, qP)
    aq = induced_action(t.act, qP, qM)
    cokernel = CrossedModule(QM, QP, dq, aq)
    return kernel, cokernel


@dataclass(eq=False)
class Coproduct:
    xmod: CrossedModule
    i: Hom
    j: Hom
    semidirect: Group
    peiffer: object  # normal subgroup {M, N}


def coproduct(x1, x2):
    """The coproduct M o N of two crossed modules over the same P.

    Built as (M x| N)/{M, N}, with N acting on M through P and
    {M, N} the normal closure of the elements (m (n.m)^-1, (m.n) n^-1).
    """
    if x1.P is not x2.P and x1.P != x2.P:
        raise ConstructionError("coproduct needs crossed modules over the same group")
    P, M, N = x1.P, x1.M, x2.M
    act_nm = x1.act.pullback(x2.d)
    sd, i0, j0 = semidirect_product(M, N, act_nm)
    nN = N.order
    mm = np.repeat(np.arange(M.order), nN)
    nn = np.tile(np.arange(nN), M.order)
    n_dot_m = x1.act.table[x2.d.images[nn], mm]
    m_dot_n = x2.act.table[x1.d.images[mm], nn]
    first = M.table[mm, M.inv[n_dot_m]]
    second = N.table[m_dot_n, N.inv[nn]]
    gens = np.unique(first * nN + second)
    curly = sd.normal_closure(gens.tolist())
    Q, q = quotient(sd, curly)
    # boundary and P-action on the semidirect product, then descend
    a_idx, b_idx = np.divmod(np.arange(sd.order), nN)
    d_sd = Hom(sd, P, P.table[x1.d.images[a_idx], x2.d.images[b_idx]])
    act_sd = x1.act.table[:, a_idx] * nN + x2.act.table[:, b_idx]
    act_sd = Action(P, sd, act_sd, check=False)
    dq = induced_hom(d_sd, q, Hom.identity(P))
    aq = induced_action(act_sd, Hom.identity(P), q)
    x = CrossedModule(Q, P, dq, aq)
    return Coproduct(x, i0.then(q), j0.then(q), sd, curly)
