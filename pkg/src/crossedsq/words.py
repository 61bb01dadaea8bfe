"""Free-group words and finite presentations.

A word is a tuple of nonzero ints: ``i + 1`` for generator ``i`` and
``-(i + 1)`` for its inverse.  The empty tuple is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .coset import DEFAULT_MAX_COSETS, enumerate_cosets
from .errors import SpecError
from .groups import Group, Hom
from .snf import abelian_invariants_from_relations


def reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w):
    return tuple(-x for x in reversed(w))


def mul(*ws):
    return reduce(tuple(x for w in ws for x in w))


def power(w, k):
    if k < 0:
        w, k = inverse(w), -k
    return reduce(tuple(w) * k)


def comm(u, v):
    """[u, v] = u v u^-1 v^-1."""
    return mul(u, v, inverse(u), inverse(v))


def conj(u, w):
    """u w u^-1."""
    return mul(u, w, inverse(u))


def gen(i, e=1):
    return (i + 1,) if e > 0 else (-(i + 1),)


def cyclic_reduce(w):
    w = reduce(w)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def substitute(w, images):
    """Replace generator i by the word ``images[i]``."""
    return mul(*((images[x - 1] if x > 0 else inverse(images[-x - 1])) for x in w))


def exponent_sums(w, ngens):
    v = [0] * ngens
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def evaluate(w, group, gen_elems):
    """Image of w in a concrete group under generator i -> gen_elems[i]."""
    x = 0
    t, inv = group.table, group.inv
    for a in w:
        x = t[x, gen_elems[a - 1]] if a > 0 else t[x, inv[gen_elems[-a - 1]]]
    return int(x)


def evaluate_many(words, group, gen_elems):
    return np.array([evaluate(w, group, gen_elems) for w in words], dtype=np.int64)


def to_coset_letters(w):
    return [2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in w]


# -- text form -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\[|\]|\(|\)|,|\*|\^\s*-?\d+|1(?![A-Za-z0-9_])|[A-Za-z_][A-Za-z0-9_']*|\S)")


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.by_len = sorted(self.names, key=len, reverse=True)
        self.toks = [m.group(1) for m in _TOKEN.finditer(text)]
        self.pos = 0

    def error(self, msg):
        raise SpecError(f"cannot parse word {self.text!r}: {msg}")

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def word(self):
        parts = []
        while True:
            t = self.peek()
            if t is None or t in ")],":
                return mul(*parts)
            if t == "*":
                self.take()
                continue
            parts.append(self.factor())

    def factor(self):
        t = self.take()
        if t == "(":
            w = self.word()
            if self.take() != ")":
                self.error("missing ')'")
        elif t == "[":
            u = self.word()
            if self.take() != ",":
                self.error("commutator needs ','")
            v = self.word()
            if self.take() != "]":
                self.error("missing ']'")
            w = comm(u, v)
        elif t == "1":
            w = ()
        elif t and (t[0].isalpha() or t[0] == "_"):
            w = self.name_run(t)
        else:
            self.error(f"unexpected token {t!r}")
        while self.peek() and self.peek().startswith("^"):
            w = power(w, int(self.take()[1:].replace(" ", "")))
        return w

    def name_run(self, tok):
        """Split a run such as ``abab`` into generator names, longest match first."""
        if tok in self.index:
            return gen(self.index[tok])
        out = []
        rest = tok
        while rest:
            for n in self.by_len:
                if rest.startswith(n):
                    out.append(gen(self.index[n]))
                    rest = rest[len(n):]
                    break
            else:
                self.error(f"unknown generator in {tok!r}")
        # a trailing exponent binds to the last letter only
        if self.peek() and self.peek().startswith("^") and len(out) > 1:
            e = int(self.take()[1:].replace(" ", ""))
            out[-1] = power(out[-1], e)
        return mul(*out)


def parse_word(text, names):
    """Parse ``a^2``, ``abab``, ``(ab)^3``, ``[a,b]``, ``a*b^-1``, ``1``."""
    p = _Parser(str(text), names)
    w = p.word()
    if p.peek() is not None:
        p.error(f"trailing {p.peek()!r}")
    return w


def format_word(w, names):
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = names[abs(w[i]) - 1]
        e = (j - i) * (1 if w[i] > 0 else -1)
        out.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(out)


# -- presentations -------------------------------------------------------------

@dataclass
class Presentation:
    """Generators (names) and relator words."""

    names: list
    relators: list = field(default_factory=list)

    def __post_init__(self):
        self.names = list(self.names)
        n = len(self.names)
        rels = []
        for r in self.relators:
            r = reduce(tuple(r))
            if any(abs(x) > n or x == 0 for x in r):
                raise SpecError("relator uses an undeclared generator")
            rels.append(r)
        self.relators = rels

    @classmethod
    def parse(cls, names, rel_texts):
        return cls(names, [parse_word(t, names) for t in rel_texts])

    @property
    def ngens(self):
        return len(self.names)

    def abelian_invariants(self):
        """Invariants of the abelianization from the exponent-sum matrix."""
        rows = [exponent_sums(r, self.ngens) for r in self.relators]
        return abelian_invariants_from_relations(rows, self.ngens)

    def simplify(self):
        """Drop generators that a short relator makes trivial or equal to another.

        Returns (generator words over the kept generators, kept relator words, kept indices).
        """
        n = self.ngens
        images = [gen(i) for i in range(n)]
        alive = [True] * n
        rels = [cyclic_reduce(r) for r in self.relators]
        changed = True
        while changed:
            changed = False
            for r in rels:
                if len(r) == 1 or (len(r) == 2 and abs(r[0]) != abs(r[1])):
                    g = abs(r[-1]) - 1
                    # r = u x^e  =>  x = u^-e
                    u = r[:-1]
                    val = inverse(u) if r[-1] > 0 else u
                    sub = [gen(i) for i in range(n)]
                    sub[g] = val
                    rels = [cyclic_reduce(substitute(s, sub)) for s in rels]
                    images = [substitute(w, sub) for w in images]
                    alive[g] = False
                    changed = True
                    break
            rels = _dedupe(rels)
        keep = [i for i in range(n) if alive[i]]
        renum = {i + 1: k + 1 for k, i in enumerate(keep)}

        def ren(w):
            return tuple(renum[x] if x > 0 else -renum[-x] for x in w)

        return [ren(w) for w in images], [ren(r) for r in rels], keep

    def enumerate(self, max_cosets=DEFAULT_MAX_COSETS, backend=None, simplify=True):
        """Concrete group together with the images of the generators."""
        if simplify:
            images, rels, keep = self.simplify()
        else:
            images = [gen(i) for i in range(self.ngens)]
            rels, keep = self.relators, list(range(self.ngens))
        if not keep:
            g = Group.trivial()
            return FPResult(self, g, [0] * self.ngens)
        table = enumerate_cosets(len(keep), [to_coset_letters(r) for r in rels],
                                 max_cosets=max_cosets, backend=backend)
        g = Group.from_right_regular(table[:, 0::2])
        base = [int(table[0, 2 * k]) for k in range(len(keep))]
        gen_elems = [evaluate(w, g, base) for w in images]
        return FPResult(self, g, gen_elems)


def _dedupe(rels):
    seen = set()
    out = []
    for r in rels:
        if not r:
            continue
        key = _cyclic_key(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _cyclic_key(r):
    rots = [r[i:] + r[:i] for i in range(len(r))]
    ri = inverse(r)
    rots += [ri[i:] + ri[:i] for i in range(len(ri))]
    return min(rots)


@dataclass
class FPResult:
    """An enumerated presentation: the concrete group and each generator's element."""

    presentation: Presentation
    group: Group
    gen_elements: list

    def evaluate(self, w):
        return evaluate(w, self.group, self.gen_elements)

    def check_relators(self):
        return all(self.evaluate(r) == 0 for r in self.presentation.relators)

    def hom_to(self, target, images):
        """The hom sending generator i to ``images[i]`` in ``target``."""
        return Hom.from_images(self.group, target, list(images), gens=list(self.gen_elements))
