"""Free simplicial groups generated up to dimension 2, at word level.

A generator of level n is a pair (sigma, b): a basis symbol b of dimension m
(B1 in dimension 0, B2 in 1, B3 in 2) and a nondecreasing surjection
sigma: [n] -> [m], read as the degeneracy operator sigma^* applied to b.
Words at level n are signed-int tuples over the level's generator list.

Faces of basis symbols:

    d_0 y = 1,  d_1 y = f2(y)                  y in B2
    d_0 z = d_1 z = 1,  d_2 z = f3(z)          z in B3

Every other face and degeneracy is forced; ``operator`` computes the one
induced by any monotone map.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import ConstructionError, SpecError
from .report import Report
from .words import comm, format_word, inverse, mul, parse_word, reduce

TOP = 3

# (tag, family, levels of x and y)
PEIFFER = {
    "(1,0)(2)": ("i", 1, 2),
    "(2,0)(1)": ("i", 1, 2),
    "(0)(2,1)": ("ii", 2, 1),
    "(0)(1)": ("iii", 2, 2),
    "(0)(2)": ("iii", 2, 2),
    "(1)(2)": ("iii", 2, 2),
}


def surjections(n, m):
    """Nondecreasing surjections [n] -> [m] as tuples of length n+1."""
    out = []
    for cuts in combinations(range(1, n + 1), m):
        c, v, s = set(cuts), 0, []
        for i in range(n + 1):
            v += i in c
            s.append(v)
        out.append(tuple(s))
    return out


def degeneracy_ops(sigma):
    """sigma^* as a list of degeneracy indices, outermost first (s1s0 -> [1, 0])."""
    ops = []
    sigma = tuple(sigma)
    while len(set(sigma)) < len(sigma):
        i = max(j for j in range(len(sigma) - 1) if sigma[j] == sigma[j + 1])
        ops.append(i)
        sigma = sigma[:i + 1] + sigma[i + 2:]
    return ops


def face_map(n, i):
    """The coface [n-1] -> [n] skipping i."""
    return tuple(t for t in range(n + 1) if t != i)


def degeneracy_map(n, i):
    """The codegeneracy [n+1] -> [n] hitting i twice."""
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


class FreeTwoSkeleton:
    """Levels 0..3 of the free simplicial group on (B1, B2, B3, f2, f3).

    ``f2`` maps B2 symbols to words (text or tuples) over B1.  ``f3`` maps B3
    symbols to words over B2 and B1, where a B1 symbol x stands for s_0 x;
    each f3(z) must have both faces trivial.
    """

    def __init__(self, b1, b2=(), b3=(), f2=None, f3=None):
        b1, b2, b3 = list(b1), list(b2), list(b3)
        allsym = b1 + b2 + b3
        if len(set(allsym)) != len(allsym):
            raise SpecError("basis symbols must be distinct")
        f2, f3 = dict(f2 or {}), dict(f3 or {})
        if set(f2) != set(b2):
            raise SpecError("f2 must be given on exactly the B2 symbols")
        if set(f3) != set(b3):
            raise SpecError("f3 must be given on exactly the B3 symbols")
        self.b1, self.b2, self.b3 = b1, b2, b3
        self.dim = {**{x: 0 for x in b1}, **{y: 1 for y in b2}, **{z: 2 for z in b3}}
        self.gens = []
        self.index = []
        for n in range(TOP + 1):
            g = [(s, b) for b in allsym if self.dim[b] <= n for s in surjections(n, self.dim[b])]
            self.gens.append(g)
            self.index.append({x: i for i, x in enumerate(g)})
        self.f2 = {y: self._parse(f2[y], b1, lambda x: ((0,), x), 0) for y in b2}
        self.f3 = {z: self._parse(f3[z], b2 + b1,
                                  lambda s: ((0, 1), s) if self.dim[s] == 1 else ((0, 0), s), 1)
                   for z in b3}
        self._bface = {y: [(), self.f2[y]] for y in b2}
        self._bface.update({z: [(), (), self.f3[z]] for z in b3})
        self._cache = {}
        for z in b3:
            for i in (0, 1):
                if self.face(1, self.f3[z], i):
                    what = "the normal closure of B2" if i == 0 else "the kernel of d_1"
                    raise ConstructionError(f"f3({z}) = {self.format(1, self.f3[z])} "
                                            f"is not in {what}")

    def _parse(self, w, names, letter, level):
        if isinstance(w, str):
            w = parse_word(w, names)
        w = reduce(tuple(int(a) for a in w))
        if any(abs(a) > len(names) for a in w):
            raise SpecError("word uses an unknown symbol")
        idx = self.index[level]
        return tuple((idx[letter(names[abs(a) - 1])] + 1) * (1 if a > 0 else -1) for a in w)

    # -- names ------------------------------------------------------------------

    def names(self, n):
        return ["".join(f"s{i}" for i in degeneracy_ops(s)) + b for s, b in self.gens[n]]

    def format(self, n, w):
        return format_word(w, self.names(n))

    def letter(self, n, symbol, ops=()):
        """The generator s_{ops[0]} ... s_{ops[-1]} symbol at level n, as a word."""
        m = self.dim[symbol]
        w = self.basic(symbol)
        for i in reversed(ops):
            w = self.degen(m, w, i)
            m += 1
        if m != n:
            raise SpecError(f"{len(ops)} degeneracies on {symbol} do not reach level {n}")
        return w

    def basic(self, symbol):
        m = self.dim[symbol]
        return (self.index[m][(tuple(range(m + 1)), symbol)] + 1,)

    # -- simplicial operators ---------------------------------------------------

    def operator(self, n, w, theta):
        """theta^* on a level-n word, for monotone theta: [n2] -> [n]."""
        theta = tuple(theta)
        out = []
        for a in w:
            piece = self._letter_op(n, abs(a) - 1, theta)
            out.append(piece if a > 0 else inverse(piece))
        return mul(*out)

    def _letter_op(self, n, g, theta):
        key = (n, g, theta)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        sigma, b = self.gens[n][g]
        comp = tuple(sigma[t] for t in theta)
        m = self.dim[b]
        missing = sorted(set(range(m + 1)) - set(comp))
        if not missing:
            res = (self.index[len(theta) - 1][(comp, b)] + 1,)
        else:
            j = missing[-1]
            adj = tuple(v - (v > j) for v in comp)
            res = self.operator(m - 1, self._bface[b][j], adj)
        self._cache[key] = res
        return res

    def face(self, n, w, i):
        if not 0 <= i <= n or n < 1:
            raise SpecError(f"no face d_{i} at level {n}")
        return self.operator(n, w, face_map(n, i))

    def degen(self, n, w, i):
        if not 0 <= i <= n or n >= TOP:
            raise SpecError(f"no degeneracy s_{i} at level {n}")
        return self.operator(n, w, degeneracy_map(n, i))

    def s(self, n, w, *ops):
        """Apply degeneracies written left to right as in s_2 s_0 (w)."""
        for i in reversed(ops):
            w = self.degen(n, w, i)
            n += 1
        return w

    # -- Moore complex ----------------------------------------------------------

    def in_moore(self, n, w):
        return all(not self.face(n, w, i) for i in range(n))

    def moore_project(self, n, w):
        """A word in NF_n: successively w -> w s_i d_i(w)^-1 for i < n."""
        for i in range(n):
            w = mul(w, self.degen(n - 1, self.face(n, inverse(w), i), i))
        return w

    def random_word(self, n, length, rng):
        k = len(self.gens[n])
        if k == 0:
            return ()
        letters = rng.integers(1, k + 1, size=length) * rng.choice([-1, 1], size=length)
        return reduce(tuple(int(a) for a in letters))

    def random_moore(self, n, length, rng):
        return self.moore_project(n, self.random_word(n, length, rng))

    def z_words(self):
        """s_1(y)^-1 s_0(y) for y in B2, at level 2."""
        return {y: mul(inverse(self.s(1, self.basic(y), 1)), self.s(1, self.basic(y), 0))
                for y in self.b2}

    # -- checks -----------------------------------------------------------------

    def check(self):
        """Simplicial identities on every generator of every level."""
        rep = Report("free 2-skeleton")
        for n in range(TOP + 1):
            for g in range(len(self.gens[n])):
                w = (g + 1,)
                for j in range(n + 1 if n >= 2 else 0):
                    for i in range(j):
                        lhs = self.face(n - 1, self.face(n, w, j), i)
                        rhs = self.face(n - 1, self.face(n, w, i), j - 1)
                        rep.add("d_i d_j = d_{j-1} d_i", int(lhs != rhs), 1,
                                None if lhs == rhs else (n, self.names(n)[g], i, j))
                if n < TOP:
                    for j in range(n + 1):
                        sw = self.degen(n, w, j)
                        for i in range(n + 2):
                            lhs = self.face(n + 1, sw, i)
                            if i < j:
                                rhs = self.degen(n - 1, self.face(n, w, i), j - 1)
                            elif i in (j, j + 1):
                                rhs = w
                            else:
                                rhs = self.degen(n - 1, self.face(n, w, i - 1), j)
                            rep.add("d_i s_j", int(lhs != rhs), 1,
                                    None if lhs == rhs else (n, self.names(n)[g], i, j))
                if n < TOP - 1:
                    for j in range(n + 1):
                        for i in range(j + 1):
                            lhs = self.degen(n + 1, self.degen(n, w, j), i)
                            rhs = self.degen(n + 1, self.degen(n, w, i), j + 1)
                            rep.add("s_i s_j = s_{j+1} s_i", int(lhs != rhs), 1,
                                    None if lhs == rhs else (n, self.names(n)[g], i, j))
        return rep

    def default_basis(self):
        return {n: [(g + 1,) for g in range(len(self.gens[n]))] for n in range(TOP + 1)}


def peiffer_word(sk, tag, x, y):
    """The Peiffer element f_tag(x, y) at level 3, freely reduced.

    Families (i): x in NF_1, y in NF_2; (ii): x in NF_2, y in NF_1;
    (iii): x, y in NF_2.
    """
    if tag not in PEIFFER:
        raise SpecError(f"unknown Peiffer family {tag!r}")
    _, nx, ny = PEIFFER[tag]
    for name, w, n in (("x", x, nx), ("y", y, ny)):
        if not sk.in_moore(n, w):
            raise ConstructionError(f"{name} is not in NF_{n}")

    def sx(*ops):
        return sk.s(nx, x, *ops)

    def sy(*ops):
        return sk.s(ny, y, *ops)

    if tag == "(1,0)(2)":
        return mul(comm(sx(1, 0), sy(2)), comm(sy(2), sx(2, 0)))
    if tag == "(2,0)(1)":
        return mul(comm(sx(2, 0), sy(1)), comm(sy(1), sx(2, 1)),
                   comm(sx(2, 1), sy(2)), comm(sy(2), sx(2, 0)))
    if tag == "(0)(2,1)":
        return mul(comm(sx(0), sy(2, 1)), comm(sy(2, 1), sx(1)), comm(sx(2), sy(2, 1)))
    if tag == "(0)(1)":
        return mul(comm(sx(0), sy(1)), comm(sy(1), sx(1)), comm(sx(2), sy(2)))
    if tag == "(0)(2)":
        return comm(sx(0), sy(2))
    return mul(comm(sx(1), sy(2)), comm(sy(2), sx(2)))


def _nielsen_letters(words):
    """Greedy length reduction; True when it ends at distinct single letters."""
    ws = [reduce(w) for w in words]
    changed = True
    while changed:
        changed = False
        for a in range(len(ws)):
            for b in range(len(ws)):
                if a == b or not ws[b]:
                    continue
                for cand in (mul(ws[a], ws[b]), mul(ws[a], inverse(ws[b])),
                             mul(ws[b], ws[a]), mul(inverse(ws[b]), ws[a])):
                    if len(cand) < len(ws[a]):
                        ws[a] = cand
                        changed = True
    return all(len(w) == 1 for w in ws) and len({abs(w[0]) for w in ws}) == len(ws)


def validate_cw_basis(sk, basis=None):
    """Conditions (a) free basis, (b) closed under degeneracies, (c) faces.

    ``basis[n]`` lists level-n words.  Freeness is tested by greedy Nielsen
    length reduction to single letters, which may reject an exotic basis.
    """
    basis = basis or sk.default_basis()
    rep = Report("CW basis")
    for n in range(TOP + 1):
        marked = [reduce(w) for w in basis.get(n, [])]
        ok = len(marked) == len(sk.gens[n]) and _nielsen_letters(marked)
        rep.add("(a) free basis", int(not ok), 1, None if ok else ("level", n))
        degenerate = set()
        if n >= 1:
            for w in (reduce(v) for v in basis.get(n - 1, [])):
                for i in range(n):
                    degenerate.add(sk.degen(n - 1, w, i))
        if n < TOP:
            nxt = {reduce(v) for v in basis.get(n + 1, [])}
            for w in marked:
                for i in range(n + 1):
                    sw = sk.degen(n, w, i)
                    rep.add("(b) degeneracy closed", int(sw not in nxt), 1,
                            None if sw in nxt else (n, sk.format(n, w), i))
        for w in marked:
            if n == 0 or w in degenerate:
                continue
            bad = [i for i in range(n) if sk.face(n, w, i)]
            rep.add("(c) lower faces trivial", int(bool(bad)), 1,
                    (n, sk.format(n, w), bad[0]) if bad else None)
    return rep


def skeleton_from_document(doc):
    """{"B1": [...], "B2": [...], "B3": [...], "f2": {...}, "f3": {...}}."""
    try:
        return FreeTwoSkeleton(doc["B1"], doc.get("B2", []), doc.get("B3", []),
                               doc.get("f2", {}), doc.get("f3", {}))
    except KeyError as exc:
        raise SpecError(f"skeleton document lacks {exc}") from None


def random_pairs(sk, tag, count, length, seed=0, tries=1000):
    """``count`` random (x, y) pairs of nonempty words in the Moore groups a family needs."""
    rng = np.random.default_rng(seed)
    _, nx, ny = PEIFFER[tag]

    def draw(n):
        for _ in range(tries):
            w = sk.random_moore(n, length, rng)
            if w:
                return w
        raise ConstructionError(f"NF_{n} looks trivial; no nonempty sample found")

    return [(draw(nx), draw(ny)) for _ in range(count)]
