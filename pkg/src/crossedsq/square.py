"""Crossed squares (crossed 2-cubes) and the eleven-axiom checker.

Corners are indexed by subsets of {1, 2} written as bitmasks::

    3 = {1,2}: L  --lam-->  M : 1 = {1}
        |                   |
       lam'                 mu
        v                   v
    2 = {2}:   N  --mu'-->  P : 0 = {}

mu_1 clears bit 1 (L -> N, M -> P) and mu_2 clears bit 2 (L -> M, N -> P).
For i not in A the map mu_i on corner A is stored explicitly (normally the
identity), so a corrupted square can violate axiom 1.

h is given on M x N.  The other pairs are derived: for A a subset of B,
h(a, b) = (a.b) b^-1 with a acting through P; h(b, a) = h(a, b)^-1.
In particular h(a, a') on one corner is the Peiffer commutator, which is what
axiom 5 compares with [a, a'].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .groups import Action, Group, Hom
from .report import Report
from .xmod import CrossedModule, CrossedModuleMorphism

CORNERS = (0, 1, 2, 3)
CORNER_NAME = {0: "P", 1: "M", 2: "N", 3: "L"}
EXHAUSTIVE_LIMIT = 10 ** 6
CHUNK = 1 << 20
SAMPLE = 20000


@dataclass(eq=False)
class CrossedSquare:
    L: Group
    M: Group
    N: Group
    P: Group
    lam: Hom        # L -> M
    lamp: Hom       # L -> N
    mu: Hom         # M -> P
    mup: Hom        # N -> P
    act_L: Action   # P on L
    act_M: Action   # P on M
    act_N: Action   # P on N
    h: np.ndarray   # |M| x |N| -> L
    name: str = ""
    # mu_i on corners not containing i; identity unless deliberately corrupted
    off_maps: dict = field(default_factory=dict)

    def __post_init__(self):
        self.h = np.asarray(self.h, dtype=np.int64)
        for key in ((1, 2), (1, 0), (2, 1), (2, 0)):
            if key not in self.off_maps:
                g = self.group(key[1])
                self.off_maps[key] = Hom.identity(g)

    # -- cube view -----------------------------------------------------------

    def group(self, A):
        return (self.P, self.M, self.N, self.L)[A]

    def mu_i(self, i, A):
        """mu_i on corner A (a hom to corner A minus {i})."""
        if A & i:
            return {(1, 3): self.lamp, (2, 3): self.lam, (1, 1): self.mu, (2, 2): self.mup}[(i, A)]
        return self.off_maps[(i, A)]

    def to_P(self, A):
        if A == 0:
            return Hom.identity(self.P)
        if A == 1:
            return self.mu
        if A == 2:
            return self.mup
        return self.lam.then(self.mu)

    def p_action(self, B):
        if B == 0:
            return Action.conjugation(self.P)
        return (None, self.act_M, self.act_N, self.act_L)[B]

    def orders(self):
        return {"L": self.L.order, "M": self.M.order, "N": self.N.order, "P": self.P.order}

    # -- derived h ---------------------------------------------------------------

    def h_table(self, A, B):
        cache = self.__dict__.setdefault("_h_cache", {})
        if (A, B) not in cache:
            cache[(A, B)] = self._h_table(A, B)
        return cache[(A, B)]

    def _h_table(self, A, B):
        GA, GB = self.group(A), self.group(B)
        if A & ~B == 0:
            acted = self.p_action(B).table[self.to_P(A).images]      # [a, b] -> a.b
            return GB.table[acted, GB.inv[np.arange(GB.order)][None, :]]
        if B & ~A == 0:
            acted = self.p_action(A).table[self.to_P(B).images]      # [b, a] -> b.a
            return GA.table[np.arange(GA.order)[:, None], GA.inv[acted.T]]
        if (A, B) == (1, 2):
            return self.h
        L = self.L
        return L.inv[self.h.T]

    def act(self, A, B):
        """^a b = h(a, b) b for A a subset of B."""
        GB = self.group(B)
        return GB.table[self.h_table(A, B), np.arange(GB.order)[None, :]]

    # -- checks ------------------------------------------------------------------

    def check(self, mode="auto", seed=0):
        """Per-axiom report over every corner combination."""
        if mode == "auto":
            mode = "sampled" if self.M.order * self.N.order > EXHAUSTIVE_LIMIT else "exhaustive"
        rep = Report("crossed square", mode=mode)
        rng = np.random.default_rng(seed)
        bad_actions = {}
        for B in (1, 2, 3):
            v = self.p_action(B).violations()
            if v:
                bad_actions[CORNER_NAME[B]] = next(iter(v.items()))
        rep.add("actions", len(bad_actions), 3, next(iter(bad_actions.items()), None))
        if bad_actions:
            return rep
        _check_axioms(self, rep, mode, rng)
        for label, x in self.side_xmods().items():
            sub = x.check_crossed()
            rep.add(f"xmod {label}", len(sub.failed()), 1,
                    (sub.failed()[0], sub[sub.failed()[0]].witness) if sub.failed() else None)
        return rep

    def side_xmods(self):
        """The four sides and the diagonal as crossed modules."""
        act_ML = Action(self.M, self.L, self.act(1, 3), check=False)
        act_NL = Action(self.N, self.L, self.act(2, 3), check=False)
        return {
            "L->M": CrossedModule(self.L, self.M, self.lam, act_ML),
            "L->N": CrossedModule(self.L, self.N, self.lamp, act_NL),
            "M->P": CrossedModule(self.M, self.P, self.mu, self.act_M),
            "N->P": CrossedModule(self.N, self.P, self.mup, self.act_N),
            "L->P": CrossedModule(self.L, self.P, self.to_P(3), self.act_L),
        }

    def vertical_morphism(self):
        """(lam', mu): (L -> M) => (N -> P), a morphism of crossed modules."""
        sides = self.side_xmods()
        return CrossedModuleMorphism(sides["L->M"], sides["N->P"], self.lamp, self.mu)


# -- axiom engine ------------------------------------------------------------------

def _tuples(sizes, mode, rng):
    """Index arrays covering the product of ``sizes`` (chunked) or a random sample."""
    total = int(np.prod(sizes))
    if mode == "sampled" and total > SAMPLE:
        yield tuple(rng.integers(0, s, SAMPLE) for s in sizes)
        return
    step = max(1, CHUNK // max(1, total // sizes[0]))
    for start in range(0, sizes[0], step):
        first = np.arange(start, min(sizes[0], start + step))
        grids = np.meshgrid(first, *[np.arange(s) for s in sizes[1:]], indexing="ij")
        yield tuple(g.ravel() for g in grids)


def _record(rep, name, bad, corners, idx):
    hit = np.flatnonzero(bad)
    wit = None
    if hit.size:
        k = int(hit[0])
        wit = tuple(f"{CORNER_NAME[c]}:{int(x[k])}" for c, x in zip(corners, idx))
    rep.add(name, int(hit.size), int(np.size(bad)), wit)


def _check_axioms(sq, rep, mode, rng):
    G = sq.group
    H = sq.h_table
    n = {A: G(A).order for A in CORNERS}
    for k in range(1, 12):
        rep.add(f"axiom {k}", 0, 0)

    # 1) mu_i a = a if i not in A
    for A, i in product(CORNERS, (1, 2)):
        if not A & i:
            a = np.arange(n[A])
            _record(rep, "axiom 1", sq.mu_i(i, A).images != a, (A,), (a,))
    # 2) mu_i mu_j = mu_j mu_i
    for A in CORNERS:
        a = np.arange(n[A])
        lhs = sq.mu_i(1, A & ~2).images[sq.mu_i(2, A).images]
        rhs = sq.mu_i(2, A & ~1).images[sq.mu_i(1, A).images]
        _record(rep, "axiom 2", lhs != rhs, (A,), (a,))
    for A, B in product(CORNERS, CORNERS):
        U = A | B
        for a, b in _tuples((n[A], n[B]), mode, rng):
            hab = H(A, B)[a, b]
            # 3) mu_i h(a, b) = h(mu_i a, mu_i b)
            for i in (1, 2):
                lhs = sq.mu_i(i, U).images[hab]
                rhs = H(A & ~i, B & ~i)[sq.mu_i(i, A).images[a], sq.mu_i(i, B).images[b]]
                _record(rep, "axiom 3", lhs != rhs, (A, B), (a, b))
            # 4) h(a, b) = h(mu_i a, b) = h(a, mu_i b) if i in A and B
            for i in (1, 2):
                if A & B & i:
                    l1 = H(A & ~i, B)[sq.mu_i(i, A).images[a], b]
                    l2 = H(A, B & ~i)[a, sq.mu_i(i, B).images[b]]
                    _record(rep, "axiom 4", (hab != l1) | (hab != l2), (A, B), (a, b))
            # 5) h(a, a') = [a, a']
            if A == B:
                _record(rep, "axiom 5", hab != G(A).comm(a, b), (A, A), (a, b))
            # 6) h(a, b) = h(b, a)^-1
            _record(rep, "axiom 6", hab != G(U).inv[H(B, A)[b, a]], (A, B), (a, b))
            # 7) h(1, b) = h(a, 1) = 1
            _record(rep, "axiom 7", ((a == 0) | (b == 0)) & (hab != 0), (A, B), (a, b))
    for A, B in product(CORNERS, CORNERS):
        U = A | B
        TU = G(U).table
        # 8) h(aa', b) = ^a h(a', b) h(a, b)
        actAU = sq.act(A, U)
        for a, a2, b in _tuples((n[A], n[A], n[B]), mode, rng):
            lhs = H(A, B)[G(A).table[a, a2], b]
            rhs = TU[actAU[a, H(A, B)[a2, b]], H(A, B)[a, b]]
            _record(rep, "axiom 8", lhs != rhs, (A, A, B), (a, a2, b))
        # 9) h(a, bb') = h(a, b) ^b h(a, b')
        actBU = sq.act(B, U)
        for a, b, b2 in _tuples((n[A], n[B], n[B]), mode, rng):
            lhs = H(A, B)[a, G(B).table[b, b2]]
            rhs = TU[H(A, B)[a, b], actBU[b, H(A, B)[a, b2]]]
            _record(rep, "axiom 9", lhs != rhs, (A, B, B), (a, b, b2))
    for A, B, C in product(CORNERS, CORNERS, CORNERS):
        U = A | B | C
        actAU = sq.act(A, U)
        # 10) ^a h(b, c) = h(^a b, ^a c) if A is inside B and C
        if A & ~(B & C) == 0:
            actAB, actAC = sq.act(A, B), sq.act(A, C)
            for a, b, c in _tuples((n[A], n[B], n[C]), mode, rng):
                lhs = actAU[a, H(B, C)[b, c]]
                rhs = H(B, C)[actAB[a, b], actAC[a, c]]
                _record(rep, "axiom 10", lhs != rhs, (A, B, C), (a, b, c))
        # 11) Hall-Witt type identity
        actBU, actCU = sq.act(B, U), sq.act(C, U)
        TU = G(U).table
        for a, b, c in _tuples((n[A], n[B], n[C]), mode, rng):
            ia, ib, ic = G(A).inv[a], G(B).inv[b], G(C).inv[c]
            t1 = actAU[a, H(A | B, C)[H(A, B)[ia, b], c]]
            t2 = actCU[c, H(C | A, B)[H(C, A)[ic, a], b]]
            t3 = actBU[b, H(B | C, A)[H(B, C)[ib, c], a]]
            _record(rep, "axiom 11", TU[TU[t1, t2], t3] != 0, (A, B, C), (a, b, c))


# -- constructions -----------------------------------------------------------------

def _conj_action(g, acted_sub):
    """g acting on a normal subgroup by conjugation, on as_group indices."""
    return acted_sub.conjugation_action(g.whole())


def inclusion_square(g, n1, n2, name=""):
    """(N1 cap N2 ; N2, N1 ; G) with inclusions, conjugation and h(m, n) = [m, n]."""
    from .errors import NotNormalError

    if not (n1.is_normal() and n2.is_normal()):
        raise NotNormalError("inclusion square needs normal subgroups")
    lsub = n1.intersection(n2)
    L, eL = lsub.as_group()
    M, eM = n2.as_group()
    N, eN = n1.as_group()
    lam = Hom(L, M, n2.position[eL.images], check=False)
    lamp = Hom(L, N, n1.position[eL.images], check=False)
    comm = g.comm(eM.images[:, None], eN.images[None, :])
    h = lsub.position[comm]
    return CrossedSquare(L, M, N, g, lam, lamp, eM, eN,
                         _conj_action(g, lsub), _conj_action(g, n2), _conj_action(g, n1),
                         h, name=name or f"incl({g.name}; {n1.order}, {n2.order})")


def trivial_square():
    t = Group.trivial()
    i = Hom.identity(t)
    a = Action.trivial(t, t)
    return CrossedSquare(t, t, t, t, i, i, i, i, a, a, a, np.zeros((1, 1), dtype=np.int64),
                         name="trivial")


@dataclass(eq=False)
class CrossedSquareMorphism:
    source: CrossedSquare
    target: CrossedSquare
    fL: Hom
    fM: Hom
    fN: Hom
    fP: Hom

    def report(self):
        s, t = self.source, self.target
        rep = Report("crossed square morphism")
        pairs = (("lam", s.lam, t.lam, self.fL, self.fM), ("lam'", s.lamp, t.lamp, self.fL, self.fN),
                 ("mu", s.mu, t.mu, self.fM, self.fP), ("mu'", s.mup, t.mup, self.fN, self.fP))
        for name, a, b, f_src, f_tgt in pairs:
            rep.record(f"commutes {name}", b.images[f_src.images] != f_tgt.images[a.images],
                       lambda i: (i,))
        lhs = self.fL.images[s.h]
        rhs = t.h[self.fM.images[:, None], self.fN.images[None, :]]
        rep.record("h", lhs != rhs, lambda i: ("m", i // s.N.order, "n", i % s.N.order))
        for name, f, sa, ta in (("L", self.fL, s.act_L, t.act_L), ("M", self.fM, s.act_M, t.act_M),
                                ("N", self.fN, s.act_N, t.act_N)):
            lhs = f.images[sa.table]
            rhs = ta.table[self.fP.images[:, None], f.images[None, :]]
            rep.record(f"equivariant {name}", lhs != rhs, lambda i: (i,))
        return rep
