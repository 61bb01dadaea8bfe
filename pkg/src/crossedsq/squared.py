"""Squared complexes: a crossed square with a tail of abelian groups.

    ... -> C_4 -> C_3 -> L -> M x| N -> P -> 1

with d_2(l) = (lam(l)^-1, lam'(l)) and d_1(m, n) = mu(m) mu'(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, SpecError
from .groups import Action, Hom, quotient, semidirect_product
from .mg import SubQuotient
from .report import Report
from .square import CrossedSquare


@dataclass(eq=False)
class SquaredComplex:
    """``chain[i]`` is (C_{i+3}, boundary, P-action); the first boundary lands in L.

    ``truncated`` marks a top chain term computed without its incoming boundary.
    """

    square: CrossedSquare
    chain: list = field(default_factory=list)
    truncated: bool = False

    @property
    def groups(self):
        return [c for c, _, _ in self.chain]

    def check(self):
        sq = self.square
        rep = Report("squared complex")
        sqrep = sq.check()
        rep.add("(i) crossed square", len(sqrep.failed()), 1,
                tuple(sqrep.failed()) or None)
        for n, (c, d, act) in enumerate(self.chain, start=3):
            rep.add("(ii) abelian", 0 if c.is_abelian else 1, 1, None if c.is_abelian else (n,))
            bad = act.violations()
            rep.add("actions", len(bad), 1, next(iter(bad.items()), None))
        # (iii) boundaries
        if self.chain:
            d3 = self.chain[0][1]
            bad = (sq.lam.images[d3.images] != 0) | (sq.lamp.images[d3.images] != 0)
            rep.record("(iii) d_3 into ker lam cap ker lam'", bad, lambda i: ("C3", i))
            for n in range(1, len(self.chain)):
                dn, dprev = self.chain[n][1], self.chain[n - 1][1]
                rep.record("(iii) dd = 1", dprev.images[dn.images] != 0, lambda i, n=n: (n + 3, i))
        # (iv) mu M and mu' N act trivially
        image = sq.mu.image().join(sq.mup.image())
        for n, (c, _, act) in enumerate(self.chain, start=3):
            rows = act.table[image.elements]
            rep.record("(iv) trivial on mu M mu' N", rows != np.arange(c.order)[None, :],
                       lambda i, n=n: (n, i))
        # (v) equivariance
        targets = [sq.act_L] + [a for _, _, a in self.chain[:-1]]
        for n, ((c, d, act), tact) in enumerate(zip(self.chain, targets), start=3):
            lhs = d.images[act.table]
            rhs = tact.table[:, d.images]
            rep.record("(v) equivariant", lhs != rhs, lambda i, n=n: (n, i))
        return rep

    # -- homotopy -------------------------------------------------------------

    def boundary_maps(self):
        """(M x| N, d_1, d_2) as homs."""
        sq = self.square
        M, N, P = sq.M, sq.N, sq.P
        act = Action(N, M, sq.act_M.table[sq.mup.images], check=False)
        sd, _, _ = semidirect_product(M, N, act)
        a, b = np.divmod(np.arange(sd.order), N.order)
        d1 = Hom(sd, P, P.table[sq.mu.images[a], sq.mup.images[b]], check=False)
        lam, lamp = sq.lam.images, sq.lamp.images
        d2 = Hom(sq.L, sd, M.inv[lam] * N.order + lamp, check=False)
        return sd, d1, d2

    def homotopy(self):
        """pi_0, pi_1, ... of the complex.

        When the chain is not truncated the term after the last one is zero,
        so the kernel of the last boundary is reported as well.
        """
        sq = self.square
        sd, d1, d2 = self.boundary_maps()
        maps = [d1, d2] + [d for _, d, _ in self.chain]
        out = []
        P = sq.P
        im1 = d1.image()
        if not im1.is_normal():
            raise ConstructionError("d_1(M x| N) is not normal in P")
        out.append(quotient(P, im1)[0])
        for i in range(1, len(maps)):
            ker = maps[i - 1].kernel()
            im = maps[i].image()
            if not im.is_subgroup_of(ker):
                raise ConstructionError(f"image of d_{i + 1} is not inside ker d_{i}")
            kg, _ = ker.as_group()
            inner = kg.subgroup(ker.position[im.elements].tolist())
            if not inner.is_normal():
                raise ConstructionError(f"image of d_{i + 1} is not normal in ker d_{i}")
            out.append(quotient(kg, inner)[0])
        if not self.truncated:
            out.append(maps[-1].kernel().as_group()[0])
        return out

    def homotopy_summary(self):
        out = []
        for n, g in enumerate(self.homotopy()):
            out.append({"n": n, "order": g.order, "abelian_invariants": g.abelian_invariants()})
        return out


def trivial_complex():
    from .square import trivial_square
    return SquaredComplex(trivial_square())


# -- C(G, 2) ------------------------------------------------------------------

def degenerate_moore(t, n):
    """NG_n cap D_n."""
    return t.moore(n).intersection(t.degenerate_subgroup(n))


def _lift(t, n):
    """G_1 -> G_n by iterated last degeneracies."""
    img = np.arange(t.levels[1].order)
    for m in range(1, n):
        img = t.degens[m][m].images[img]
    return img


def cg2(t):
    """The squared complex C(G, 2) of a finite simplicial group.

    Square: NG_2/d_3(NG_3 cap D_3) over Ker d_0, Ker d_1, G_1 with the same
    structure as M(G, 2).  Tail: C_n = NG_n/(NG_n cap D_n) d_{n+1}(NG_{n+1} cap D_{n+1})
    for 3 <= n <= k, the top term without the boundary factor (flagged truncated).
    """
    from .mg import _image, mg2

    if t.k < 3:
        raise SpecError("C(G, 2) needs a 3-truncated simplicial group")
    base = mg2(t)
    g2 = t.levels[2]
    L = SubQuotient.build(g2, t.moore(2), _image(t.faces[3][3], degenerate_moore(t, 3)))
    d2 = t.faces[2][2].images
    m_sub, n_sub = base.parts["M"], base.parts["N"]
    lam = Hom(L.group, base.M, m_sub.position[d2[L.rep]], check=False)
    lamp = Hom(L.group, base.N, n_sub.position[d2[L.rep]], check=False)
    s0, s1 = t.degens[1][0].images, t.degens[1][1].images
    P = base.P
    act_L = Action(P, L.group, L.conj_action(P, s1), check=False)
    x = m_sub.elements[:, None]
    y = n_sub.elements[None, :]
    h = L.cls[g2.comm(s1[x], g2.table[s1[y], g2.inv[s0[y]]])]
    sq = CrossedSquare(L.group, base.M, base.N, P, lam, lamp, base.mu, base.mup,
                       act_L, base.act_M, base.act_N, h, name="C(G,2)")
    chain = []
    prev = L
    for n in range(3, t.k + 1):
        num = t.moore(n)
        den = degenerate_moore(t, n)
        if n + 1 <= t.k:
            den = den.join(_image(t.faces[n + 1][n + 1], degenerate_moore(t, n + 1)))
        c = SubQuotient.build(t.levels[n], num, den)
        d = c.induced(t.faces[n][n].images, prev)
        act = Action(P, c.group, c.conj_action(P, _lift(t, n)), check=False)
        chain.append((c.group, d, act))
        prev = c
    return SquaredComplex(sq, chain, truncated=True)
