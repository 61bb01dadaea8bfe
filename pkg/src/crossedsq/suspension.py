"""The suspension of K(pi, 1) through the crossed square (pi (x) pi; pi, pi; pi).

Levels of the bar-wedge construction with the circle are free products of
copies of pi, one per non-basepoint simplex; they are infinite from level 2
on, so pi_3 comes from the tensor square and the word model is only used for
spot checks through finite quotients.

Homotopy groups here use the space's indexing: pi_{n+1} of the suspension is
pi_n of the squared complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import named
from .coset import DEFAULT_MAX_COSETS
from .errors import ConstructionError, SpecError
from .freeskel import FreeTwoSkeleton, degeneracy_map, face_map, surjections
from .groups import Action, Group, Hom
from .mg import mg2
from .models import apply_degeneracies, finite_quotient_model
from .report import Report
from .simplicial import SimplicialGroup
from .square import CrossedSquare
from .squared import SquaredComplex
from .tensor import Corner, corner_universality, tensor_square_completion
from .xmod import CrossedModule

MAX_BAR_LEVEL = 3


class BarWedgeLevel:
    """Level n: words in letters (j, g), g in pi, j a non-basepoint n-simplex of S^1.

    The n-simplices other than the basepoint are the surjections [n] -> [1],
    indexed by position in ``simplices``.
    """

    def __init__(self, pi, n):
        if not 0 <= n <= MAX_BAR_LEVEL:
            raise SpecError(f"bar-wedge levels are supported up to {MAX_BAR_LEVEL}")
        self.pi, self.n = pi, n
        self.simplices = surjections(n, 1) if n else []
        self._index = {s: j for j, s in enumerate(self.simplices)}

    def reduce(self, letters):
        out = []
        t = self.pi.table
        for j, g in letters:
            if g == 0:
                continue
            if out and out[-1][0] == j:
                h = int(t[out[-1][1], g])
                out.pop()
                if h:
                    out.append((j, h))
            else:
                out.append((j, int(g)))
        return tuple(out)

    def random_reduce(self, letters, rng):
        """Apply delete/merge moves at random positions until none applies."""
        w = [(j, int(g)) for j, g in letters]
        t = self.pi.table
        while True:
            moves = [("del", i) for i, (_, g) in enumerate(w) if g == 0]
            moves += [("merge", i) for i in range(len(w) - 1) if w[i][0] == w[i + 1][0]]
            if not moves:
                return tuple(w)
            kind, i = moves[rng.integers(len(moves))]
            if kind == "del":
                del w[i]
            else:
                w[i:i + 2] = [(w[i][0], int(t[w[i][1], w[i + 1][1]]))]

    def mul(self, *ws):
        return self.reduce([x for w in ws for x in w])

    def inverse(self, w):
        inv = self.pi.inv
        return tuple((j, int(inv[g])) for j, g in reversed(w))

    def comm(self, u, v):
        return self.mul(u, v, self.inverse(u), self.inverse(v))

    def letter(self, simplex, g):
        return self.reduce([(self._index[tuple(simplex)], g)])

    def _operator(self, w, theta, target):
        out = []
        for j, g in w:
            comp = tuple(self.simplices[j][t] for t in theta)
            if len(set(comp)) == 2:
                out.append((target._index[comp], g))
        return target.reduce(out)

    def face(self, i, w):
        """d_i; letters whose simplex collapses to the basepoint vanish."""
        if self.n < 1 or not 0 <= i <= self.n:
            raise SpecError(f"no face d_{i} at level {self.n}")
        return self._operator(w, face_map(self.n, i), BarWedgeLevel(self.pi, self.n - 1))

    def degen(self, i, w):
        if not 0 <= i <= self.n or self.n >= MAX_BAR_LEVEL:
            raise SpecError(f"no degeneracy s_{i} at level {self.n}")
        return self._operator(w, degeneracy_map(self.n, i), BarWedgeLevel(self.pi, self.n + 1))

    def random_word(self, length, rng, raw=False):
        if not self.simplices:
            return ()
        js = rng.integers(len(self.simplices), size=length)
        gs = rng.integers(self.pi.order, size=length)
        w = tuple((int(j), int(g)) for j, g in zip(js, gs))
        return w if raw else self.reduce(w)


# -- the square and its homotopy -------------------------------------------------

def suspension_square(pi, max_cosets=DEFAULT_MAX_COSETS):
    """(pi (x) pi; pi, pi; pi) with commutator maps and identity mu, mu'."""
    x = CrossedModule.identity(pi)
    sq = tensor_square_completion(Corner(x, x), max_cosets=max_cosets)
    sq.name = f"suspension({pi.name})"
    return sq


def _describe(g):
    return {"order": g.order, "abelian_invariants": g.abelian_invariants()}


def commutator_kernel(tp, pi):
    """ker(m (x) n -> [m, n]) recomputed from the tensor group and pi alone."""
    m, n = np.divmod(np.arange(pi.order * pi.order), pi.order)
    images = pi.comm(m, n)
    kappa = Hom.from_images(tp.group, pi, images, gens=tp.h.ravel())
    src = tp.group
    lhs = kappa.images[src.table]
    rhs = pi.table[kappa.images[:, None], kappa.images[None, :]]
    if not np.array_equal(lhs, rhs):
        raise ConstructionError("the commutator map is not a homomorphism")
    return kappa.kernel().as_group()[0]


@dataclass
class SuspensionHomotopy:
    square: CrossedSquare
    pi1: Group
    pi2: Group
    pi3: Group
    kernel: Group

    @property
    def consistent(self):
        return (self.pi3.order == self.kernel.order
                and self.pi3.abelian_invariants() == self.kernel.abelian_invariants())

    def as_dict(self):
        return {"pi1": _describe(self.pi1), "pi2": _describe(self.pi2),
                "pi3": _describe(self.pi3), "tensor_order": self.square.L.order,
                "kernel_cross_check": _describe(self.kernel),
                "consistent": self.consistent}


def pi3_suspension(pi, max_cosets=DEFAULT_MAX_COSETS):
    """pi_1, pi_2, pi_3 of the suspension of K(pi, 1) from its squared complex."""
    sq = suspension_square(pi, max_cosets)
    pis = SquaredComplex(sq).homotopy()
    if pis[0].order != 1:
        raise ConstructionError("pi_1 of a suspension must vanish")
    return SuspensionHomotopy(sq, pis[0], pis[1], pis[2], commutator_kernel(sq.tensor, pi))


# -- spot check through a finite model --------------------------------------------

def _circle_target(pi):
    """2-truncated: T_0 = 1, T_1 = pi with trivial faces, T_2 the simplicial kernel."""
    one = Group.trivial()
    t = SimplicialGroup([one, pi], [[], [Hom.trivial(pi, one), Hom.trivial(pi, one)]],
                        [[Hom.trivial(one, pi)]], name=f"circle({pi.name})")
    return t.coskeleton_level()


def bar_wedge_model(pi):
    """A finite quotient of the bar-wedge levels 0..3 through a free skeleton.

    B2 has one symbol per non-identity element of pi, each with trivial f2 and
    sent to itself in T_1 = pi; the words y_g y_h y_gh^-1 then vanish, so the
    model is a quotient of the bar-wedge construction.
    """
    names = [f"g{g}" for g in range(1, pi.order)]
    sk = FreeTwoSkeleton([], names, [], {y: "1" for y in names})
    return finite_quotient_model(sk, _circle_target(pi), {},
                                 {f"g{g}": g for g in range(1, pi.order)})


def _bar_evaluator(model, pi):
    t = model.group
    pos = model.subgroups[1].position

    def ev(n, w):
        g = t.levels[n]
        x = 0
        for j, v in w:
            sigma = surjections(n, 1)[j]
            x = int(g.table[x, apply_degeneracies(t, sigma, int(pos[v]))])
        return x
    return ev


def _transport(sq, m_of, n_of, p_of, M, N, P):
    """sq with M, N, P relabelled: new element a is old element m_of[a], etc."""
    def inv(a):
        out = np.empty_like(a)
        out[a] = np.arange(len(a))
        return out
    mi, ni, pi_ = inv(m_of), inv(n_of), inv(p_of)
    lam = Hom(sq.L, M, mi[sq.lam.images], check=False)
    lamp = Hom(sq.L, N, ni[sq.lamp.images], check=False)
    mu = Hom(M, P, pi_[sq.mu.images[m_of]], check=False)
    mup = Hom(N, P, pi_[sq.mup.images[n_of]], check=False)
    act_L = Action(P, sq.L, sq.act_L.table[p_of], check=False)
    act_M = Action(P, M, mi[sq.act_M.table[np.ix_(p_of, m_of)]], check=False)
    act_N = Action(P, N, ni[sq.act_N.table[np.ix_(p_of, n_of)]], check=False)
    h = sq.h[np.ix_(m_of, n_of)]
    return CrossedSquare(sq.L, M, N, P, lam, lamp, mu, mup, act_L, act_M, act_N, h,
                         name=sq.name)


def spot_check(pi, square=None, seed=0, samples=40):
    """Compare the tensor square with mG2 of a finite model of the bar-wedge levels.

    The model's level 2 sits in a simplicial kernel, so its L is the image of
    the commutator map: the identity is checked modulo that kernel.  Level 3
    of the model can outgrow the table limit (S3 does), raising GroupTooLarge.
    """
    rep = Report(f"spot check {pi.name}".strip())
    sq = square or suspension_square(pi)
    model = bar_wedge_model(pi)
    t = model.group
    ev = _bar_evaluator(model, pi)
    rng = np.random.default_rng(seed)

    # the word levels map simplicially onto the model
    for n in (1, 2, 3):
        lvl = BarWedgeLevel(pi, n)
        bad = 0
        for _ in range(samples):
            w = lvl.random_word(6, rng)
            for i in range(n + 1):
                bad += ev(n - 1, lvl.face(i, w)) != t.faces[n][i].images[ev(n, w)]
            if n < MAX_BAR_LEVEL:
                for i in range(n + 1):
                    bad += ev(n + 1, lvl.degen(i, w)) != t.degens[n][i].images[ev(n, w)]
        rep.add("word model is simplicial", int(bad), samples, None if not bad else ("level", n))

    moore2 = t.moore(2)
    ok = moore2.is_subgroup_of(t.degenerate_subgroup(2))
    rep.add("NG_2 inside D_2", int(not ok), 1, None if ok else ("order", moore2.order))

    # h(x, y) = [s1 x, s1 y s0 y^-1] evaluated from words in the bar-wedge level 2
    m2 = mg2(t)
    L = m2.parts["L"]
    lvl1, lvl2 = BarWedgeLevel(pi, 1), BarWedgeLevel(pi, 2)
    pos1 = model.subgroups[1].position
    m_of = m2.parts["M"].position[pos1]
    n_of = m2.parts["N"].position[pos1]
    p_of = pos1
    if (m_of < 0).any() or (n_of < 0).any():
        raise ConstructionError("the model's level 1 does not carry pi")
    moved = _transport(m2, m_of, n_of, p_of, sq.M, sq.N, sq.P)
    res = corner_universality(sq, moved)
    rep.add("universal map to mG2 of the model", int(not res.ok), 1,
            tuple(res.violations[:1]) or None)
    if res.morphism is not None:
        fL = res.morphism.fL.images
        bad = []
        for x in range(pi.order):
            sx = lvl1.degen(1, lvl1.letter((0, 1), x))
            for y in range(pi.order):
                wy = lvl1.letter((0, 1), y)
                right = lvl2.mul(lvl1.degen(1, wy), lvl2.inverse(lvl1.degen(0, wy)))
                word = lvl2.comm(sx, right)
                if L.cls[ev(2, word)] != fL[sq.h[x, y]]:
                    bad.append((x, y))
        rep.add("x (x) y = [s1 x, s1 y s0 y^-1]", len(bad), pi.order ** 2,
                bad[0] if bad else None)
    rep.model_L_order = L.order
    return rep


def default_groups():
    return {name: named(name) for name in ("C1", "C2", "C3", "C4", "C2xC2", "S3")}
