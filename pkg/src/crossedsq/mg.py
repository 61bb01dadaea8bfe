"""Crossed modules and squares attached to a finite simplicial group.

``mg0``, ``mg1`` and ``mg2`` are the low-dimensional cases of the crossed
n-cube functor; ``mg2_theorem`` builds the n = 2 cube from the general
quotient formula and ``mg2_iso`` identifies the two.  ``pi0_square`` is the
square of pi_0's of a simplicial normal pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, NotNormalError, SpecError
from .groups import Action, Group, Hom, Subgroup, quotient
from .square import CrossedSquare, CrossedSquareMorphism
from .xmod import CrossedModule, CrossedModuleMorphism, kernel_cokernel


@dataclass(eq=False)
class SubQuotient:
    """num/den for subgroups den <= num of a parent group.

    ``cls[x]`` is the class of parent element x (-1 outside num) and
    ``rep[c]`` a parent element in class c.
    """

    parent: Group
    num: Subgroup
    den: Subgroup
    group: Group
    cls: np.ndarray
    rep: np.ndarray

    @classmethod
    def build(cls, parent, num, den, name=None):
        if not den.is_subgroup_of(num):
            raise ConstructionError("denominator is not contained in the numerator")
        ng, emb = num.as_group()
        inner = ng.subgroup(num.position[den.elements].tolist())
        if not inner.is_normal():
            raise NotNormalError("denominator is not normal in the numerator")
        q, proj = quotient(ng, inner)
        q.name = name
        c = np.full(parent.order, -1, dtype=np.int64)
        c[emb.images] = proj.images
        rep = np.full(q.order, -1, dtype=np.int64)
        rep[proj.images[::-1]] = emb.images[::-1]
        return cls(parent, num, den, q, c, rep)

    @property
    def order(self):
        return self.group.order

    def induced(self, f, target):
        """The map num/den -> target.num/target.den induced by f on parents."""
        img = target.cls[f[self.num.elements]]
        if (img < 0).any():
            raise ConstructionError("map does not send the numerator into the target numerator")
        out = np.empty(self.order, dtype=np.int64)
        out[self.cls[self.num.elements]] = img
        if not np.array_equal(out[self.cls[self.num.elements]], img):
            raise ConstructionError("map does not descend to the quotients")
        return Hom(self.group, target.group, out, check=False)

    def conj_action(self, by, lift):
        """Action of ``by`` on this quotient via conjugation by ``lift[b]`` in the parent."""
        par = self.parent
        el = self.num.elements
        full = self.cls[par.conj(lift[:, None], el[None, :])]
        if (full < 0).any():
            raise NotNormalError("numerator is not normalized by the acting elements")
        table = np.empty((by.order, self.order), dtype=np.int64)
        table[:, self.cls[el]] = full
        if not np.array_equal(table[:, self.cls[el]], full):
            raise ConstructionError("conjugation does not descend to the quotient")
        return table


def _image(hom, sub):
    """hom(sub) as a subgroup of the target."""
    mask = np.zeros(hom.target.order, dtype=bool)
    mask[hom.images[sub.elements]] = True
    return Subgroup(hom.target, mask)


# -- the general formula ---------------------------------------------------------

def theorem_corner(t, n, A, literal=False):
    """The corner M(G, n)_A as a SubQuotient of G_n.

    A is a set of indices in 1..n.  The denominator is
    d_{n+1}(Ker d_n cap Ker d_{j-1}, j in A); with ``literal`` it is
    d_{n+1}(Ker d_0 cap Ker d_j, j in A).
    """
    if n + 1 > t.k:
        raise SpecError(f"M(G, {n}) needs level {n + 1}")
    num = t.kernel_of_faces(n, [j - 1 for j in A])
    idx = [0] + [j for j in A] if literal else [n] + [j - 1 for j in A]
    src = t.kernel_of_faces(n + 1, sorted(set(idx)))
    den = _image(t.faces[n + 1][n + 1], src)
    return SubQuotient.build(t.levels[n], num, den)


def _bits(A):
    return {i for i in (1, 2) if A & i}


def mg0(t):
    """G_0 / d_1(Ker d_0), which is pi_0."""
    return theorem_corner(t, 0, set()).group


def mg1_parts(t):
    top = theorem_corner(t, 1, {1})
    base = theorem_corner(t, 1, set())
    return top, base


def mg1(t):
    """Ker d_0 / d_2(NG_2) -> G_1 / d_2(Ker d_1), with conjugation action."""
    top, base = mg1_parts(t)
    d = top.induced(np.arange(t.levels[1].order), base)
    act = Action(base.group, top.group, top.conj_action(base.group, base.rep), check=False)
    return CrossedModule(top.group, base.group, d, act)


def mg2_theorem(t, literal=False):
    """M(G, 2) from the quotient formula, with commutator h."""
    corners = {A: theorem_corner(t, 2, _bits(A), literal) for A in (0, 1, 2, 3)}
    ident = np.arange(t.levels[2].order)
    L, M, N, P = corners[3], corners[1], corners[2], corners[0]
    lam = L.induced(ident, M)
    lamp = L.induced(ident, N)
    mu = M.induced(ident, P)
    mup = N.induced(ident, P)
    acts = [Action(P.group, c.group, c.conj_action(P.group, P.rep), check=False) for c in (L, M, N)]
    g = t.levels[2]
    comm = g.comm(M.rep[:, None], N.rep[None, :])
    h = L.cls[comm]
    full = L.cls[g.comm(M.num.elements[:, None], N.num.elements[None, :])]
    if (h < 0).any() or not np.array_equal(h[np.ix_(M.cls[M.num.elements], N.cls[N.num.elements])], full):
        raise ConstructionError("commutator h is not well defined on the quotients")
    sq = CrossedSquare(L.group, M.group, N.group, P.group, lam, lamp, mu, mup, *acts, h,
                       name="M(G,2) literal" if literal else "M(G,2)")
    sq.corners = corners
    return sq


# -- the simplified square -------------------------------------------------------

def mg2(t):
    """NG_2/d_3 NG_3 -> Ker d_0 ; Ker d_1 -> G_1 with h(x, y) = [s_1 x, s_1 y s_0 y^-1]."""
    if t.k < 3:
        raise SpecError("M(G, 2) needs a 3-truncated simplicial group")
    g1, g2 = t.levels[1], t.levels[2]
    s0, s1 = t.degens[1][0].images, t.degens[1][1].images
    L = SubQuotient.build(g2, t.moore(2), t.boundaries(2))
    m_sub = t.kernel_of_faces(1, [0])
    n_sub = t.kernel_of_faces(1, [1])
    M, eM = m_sub.as_group()
    N, eN = n_sub.as_group()
    d2 = t.faces[2][2].images
    lam = Hom(L.group, M, m_sub.position[d2[L.rep]], check=False)
    lamp = Hom(L.group, N, n_sub.position[d2[L.rep]], check=False)
    P = g1
    ident = np.arange(P.order)
    act_L = Action(P, L.group, L.conj_action(P, s1[ident]), check=False)
    act_M = m_sub.conjugation_action(g1.whole())
    act_N = n_sub.conjugation_action(g1.whole())
    x = eM.images[:, None]
    y = eN.images[None, :]
    right = g2.table[s1[y], g2.inv[s0[y]]]
    h = L.cls[g2.comm(s1[x], right)]
    if (h < 0).any():
        raise ConstructionError("h lands outside NG_2")
    sq = CrossedSquare(L.group, M, N, P, lam, lamp, eM, eN, act_L, act_M, act_N, h, name="M(G,2)")
    sq.parts = {"L": L, "M": m_sub, "N": n_sub}
    return sq


def mg2_iso(t, theorem=None, example=None):
    """The morphism M(G,2) (formula) -> M(G,2) (simplified) induced by d_2.

    On the top corner both are NG_2/d_3 NG_3 and the map is the identity.
    Returns (morphism, report, bijective).
    """
    th = theorem or mg2_theorem(t)
    ex = example or mg2(t)
    c = th.corners
    d2 = t.faces[2][2].images
    L_ex = ex.parts["L"]
    fL = c[3].induced(np.arange(t.levels[2].order), L_ex)

    def via_d2(corner, sub):
        img = sub.position[d2[corner.rep]]
        # well defined: d_2 kills the denominator
        full = sub.position[d2[corner.num.elements]]
        if (img < 0).any() or not np.array_equal(img[corner.cls[corner.num.elements]], full):
            raise ConstructionError("d_2 does not induce a map on this corner")
        return Hom(corner.group, sub.as_group()[0], img, check=False)

    fM = via_d2(c[1], ex.parts["M"])
    fN = via_d2(c[2], ex.parts["N"])
    fP = via_d2(c[0], t.levels[1].whole())
    mor = CrossedSquareMorphism(th, ex, fL, fM, fN, fP)
    bij = all(f.is_isomorphism for f in (fL, fM, fN, fP))
    return mor, mor.report(), bij


def mg2_sections(t, theorem, example):
    """Inverse maps x -> s_1 x, y -> s_0 y^-1 s_1 y, g -> s_1 g on the three lower corners."""
    c = theorem.corners
    g2 = t.levels[2]
    s0, s1 = t.degens[1][0].images, t.degens[1][1].images
    eM = example.parts["M"].elements
    eN = example.parts["N"].elements
    out = {
        "M": Hom(example.M, c[1].group, c[1].cls[s1[eM]], check=False),
        "N": Hom(example.N, c[2].group, c[2].cls[g2.table[g2.inv[s0[eN]], s1[eN]]], check=False),
        "P": Hom(example.P, c[0].group, c[0].cls[s1], check=False),
    }
    for name, f in out.items():
        if (f.images < 0).any():
            raise ConstructionError(f"section on {name} leaves the numerator")
    return out


# -- kernel and cokernel of the vertical morphism -------------------------------

def vertical_kernel_cokernel(t, sq=None):
    """(kernel, cokernel, pi_2 group, iso report) for the vertical morphism of mg2.

    The cokernel (Ker d_1/d_2 NG_2 -> G_1/Ker d_0) is compared with mg1 by
    y -> s_0 d_0 y y^-1 and g -> s_0 d_0 g.
    """
    sq = sq or mg2(t)
    kernel, coker = kernel_cokernel(sq.vertical_morphism())
    pi2, _ = t.homotopy_group(2)
    target = mg1(t)
    top, base = mg1_parts(t)
    g1 = t.levels[1]
    s0 = t.degens[0][0].images
    d0 = t.faces[1][0].images
    n_el = sq.parts["N"].elements
    # lift cokernel classes to elements of N and P = G_1
    qN = coker.M
    rep_n = _class_reps(coker_projection(sq, "M"), qN.order)
    rep_p = _class_reps(coker_projection(sq, "P"), coker.P.order)
    y = n_el[rep_n]
    fM = Hom(qN, target.M, top.cls[g1.table[s0[d0[y]], g1.inv[y]]], check=False)
    fP = Hom(coker.P, target.P, base.cls[s0[d0[rep_p]]], check=False)
    mor = CrossedModuleMorphism(coker, target, fM, fP)
    return kernel, coker, pi2, mor


def coker_projection(sq, part):
    """Projections N -> N/lam'(L) and P -> P/mu(M) matching kernel_cokernel numbering."""
    if part == "M":
        _, q = quotient(sq.N, sq.lamp.image())
    else:
        _, q = quotient(sq.P, sq.mu.image())
    return q


def _class_reps(q, size):
    rep = np.full(size, -1, dtype=np.int64)
    rep[q.images[::-1]] = np.arange(q.source.order)[::-1]
    return rep


# -- pi_0 of simplicial normal pairs ---------------------------------------------

def check_simplicial_subgroup(t, chain):
    """Each level normal, closed under all faces and degeneracies."""
    if len(chain) != t.k + 1:
        raise SpecError("subgroup chain must have one subgroup per level")
    for n, sub in enumerate(chain):
        if sub.parent is not t.levels[n]:
            raise SpecError(f"level {n} subgroup has the wrong parent")
        if not sub.is_normal():
            raise NotNormalError(f"level {n} subgroup is not normal")
        if n >= 1:
            for f in t.faces[n]:
                if not chain[n - 1].mask[f.images[sub.elements]].all():
                    raise ConstructionError(f"level {n} subgroup is not closed under faces")
        if n < t.k:
            for s in t.degens[n]:
                if not chain[n + 1].mask[s.images[sub.elements]].all():
                    raise ConstructionError(f"level {n} subgroup is not closed under degeneracies")


def pi0_of(t, chain):
    """pi_0 of a simplicial subgroup: H_0 / d_1(H_1 cap Ker d_0), as a SubQuotient of G_0."""
    k0 = t.kernel_of_faces(1, [0]).intersection(chain[1])
    return SubQuotient.build(t.levels[0], chain[0], _image(t.faces[1][1], k0))


def pi0_square(t, n1, n2):
    """The square of pi_0's of (N1 cap N2; N2, N1; G) with commutator h."""
    check_simplicial_subgroup(t, n1)
    check_simplicial_subgroup(t, n2)
    both = [a.intersection(b) for a, b in zip(n1, n2)]
    whole = [g.whole() for g in t.levels]
    L, M, N, P = (pi0_of(t, c) for c in (both, n2, n1, whole))
    ident = np.arange(t.levels[0].order)
    lam, lamp = L.induced(ident, M), L.induced(ident, N)
    mu, mup = M.induced(ident, P), N.induced(ident, P)
    acts = [Action(P.group, c.group, c.conj_action(P.group, P.rep), check=False) for c in (L, M, N)]
    g = t.levels[0]
    h = L.cls[g.comm(M.rep[:, None], N.rep[None, :])]
    full = L.cls[g.comm(M.num.elements[:, None], N.num.elements[None, :])]
    if not np.array_equal(h[np.ix_(M.cls[M.num.elements], N.cls[N.num.elements])], full):
        raise ConstructionError("commutator h is not well defined on pi_0")
    return CrossedSquare(L.group, M.group, N.group, P.group, lam, lamp, mu, mup, *acts, h,
                         name="pi0 square")
