"""Concrete finite groups as multiplication tables.

Every concrete group stores its full Cayley table with the identity at
index 0.  Elements are plain integers; optional labels keep a readable name
(a permutation tuple, a pair, a word) for each index.
"""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from math import gcd, prod

import numpy as np

from .errors import GroupAxiomError, GroupTooLarge, HomError, NotNormalError

MAX_ORDER = 5000
_IDX = np.int32


def _as_idx(a):
    return np.ascontiguousarray(a, dtype=_IDX)


class Group:
    """A finite group given by its multiplication table."""

    __slots__ = ("table", "inv", "labels", "name", "_gens", "__dict__")

    def __init__(self, table, labels=None, gens=None, name=None, check=True):
        table = _as_idx(table)
        n = table.shape[0]
        if table.ndim != 2 or table.shape[1] != n or n == 0:
            raise GroupAxiomError("multiplication table must be square and non-empty")
        if n > MAX_ORDER:
            raise GroupTooLarge(f"group of order {n} exceeds the {MAX_ORDER}-element table limit")
        if check:
            _check_table(table)
        self.table = table
        rows, cols = np.nonzero(table == 0)
        inv = np.empty(n, dtype=_IDX)
        inv[rows] = cols
        self.inv = inv
        self.labels = None if labels is None else tuple(labels)
        self.name = name
        self._gens = None if gens is None else tuple(int(g) for g in gens)

    # -- construction ---------------------------------------------------

    @classmethod
    def trivial(cls, name="1"):
        return cls(np.zeros((1, 1), dtype=_IDX), labels=("e",), gens=(), name=name, check=False)

    @classmethod
    def from_right_regular(cls, columns, labels=None, gens=None, name=None):
        """Build a group from right multiplication by generators.

        ``columns[:, s]`` sends element x to x*g_s, with element 0 the
        identity.  Elements must all be reachable from 0.
        """
        columns = np.asarray(columns, dtype=np.int64)
        n, k = columns.shape
        if n > MAX_ORDER:
            raise GroupTooLarge(f"group of order {n} exceeds the {MAX_ORDER}-element table limit")
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        parent[0] = 0
        order = [0]
        for x in order:
            for s in range(k):
                y = columns[x, s]
                if parent[y] < 0:
                    parent[y] = x
                    via[y] = s
                    order.append(int(y))
        if len(order) != n:
            raise GroupAxiomError("right-regular data does not act transitively")
        table = np.empty((n, n), dtype=_IDX)
        table[:, 0] = np.arange(n)
        for y in order[1:]:
            table[:, y] = columns[table[:, parent[y]], via[y]]
        if gens is None:
            gens = [int(columns[0, s]) for s in range(k)]
        return cls(table, labels=labels, gens=gens, name=name, check=False)

    @classmethod
    def generated(cls, gens, mul, identity, name=None):
        """Close ``gens`` under ``mul``; elements must be hashable."""
        index = {identity: 0}
        elems = [identity]
        cols = []
        i = 0
        while i < len(elems):
            x = elems[i]
            row = []
            for g in gens:
                y = mul(x, g)
                j = index.get(y)
                if j is None:
                    j = len(elems)
                    if j >= MAX_ORDER:
                        raise GroupTooLarge(f"closure exceeds {MAX_ORDER} elements")
                    index[y] = j
                    elems.append(y)
                row.append(j)
            cols.append(row)
            i += 1
        columns = np.array(cols, dtype=np.int64).reshape(len(elems), len(gens))
        gen_idx = [index[g] for g in gens]
        return cls.from_right_regular(columns, labels=elems, gens=gen_idx, name=name)

    @classmethod
    def from_permutations(cls, degree, perms, name=None):
        """Group generated by permutations of ``range(degree)`` (image tuples).

        Products compose right to left: (p*q)(i) = p(q(i)).
        """
        perms = [tuple(int(v) for v in p) for p in perms]
        for p in perms:
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise GroupAxiomError(f"{p} is not a permutation of degree {degree}")
        return cls.generated(perms, lambda x, s: tuple(x[i] for i in s),
                             tuple(range(degree)), name=name)

    # -- basic arithmetic ------------------------------------------------

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<Group {self.name or '?'} of order {self.order}>"

    def mul(self, a, b):
        return self.table[a, b]

    def prod(self, elems):
        x = 0
        for e in elems:
            x = self.table[x, e]
        return int(x)

    def conj(self, g, x):
        """g x g^-1 (vectorized in both arguments)."""
        return self.table[self.table[g, x], self.inv[g]]

    def comm(self, a, b):
        """[a, b] = a b a^-1 b^-1."""
        t = self.table
        return t[t[a, b], t[self.inv[a], self.inv[b]]]

    def power(self, a, k):
        if k < 0:
            a, k = self.inv[a], -k
        x, base = 0, int(a)
        while k:
            if k & 1:
                x = self.table[x, base]
            base = self.table[base, base]
            k >>= 1
        return int(x)

    def label(self, a):
        return self.labels[a] if self.labels is not None else int(a)

    def index_of(self, label):
        return self._label_index[label]

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    # -- structure ---------------------------------------------------------

    @property
    def gens(self):
        if self._gens is None:
            self._gens = self._greedy_gens()
        return self._gens

    def _greedy_gens(self):
        gens = []
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for x in range(self.order):
            if not mask[x]:
                gens.append(x)
                mask = self._closure_mask(gens)
        return tuple(gens)

    def _closure_mask(self, gens):
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=_IDX)
        gens = np.asarray(list(gens), dtype=_IDX)
        while frontier.size and gens.size:
            nxt = np.unique(self.table[np.ix_(frontier, gens)])
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def element_orders(self):
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=_IDX)
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.table[cur, np.arange(n)]
            k += 1

    def order_histogram(self):
        return dict(sorted(Counter(self.element_orders.tolist()).items()))

    @cached_property
    def exponent(self):
        e = 1
        for o in set(self.element_orders.tolist()):
            e = e * o // gcd(e, o)
        return e

    def whole(self):
        return Subgroup(self, np.ones(self.order, dtype=bool))

    def identity_subgroup(self):
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        return Subgroup(self, mask)

    def subgroup(self, gens):
        gens = self._validate_elements(gens)
        return Subgroup(self, self._closure_mask(gens), gens=gens)

    def normal_closure(self, elems):
        elems = self._validate_elements(elems)
        mask = self._closure_mask(elems)
        while True:
            members = np.nonzero(mask)[0]
            conj = np.unique(self.conj(np.array(self.gens, dtype=np.int64)[:, None], members[None, :]))
            new = conj[~mask[conj]]
            if new.size == 0:
                return Subgroup(self, mask)
            mask = self._closure_mask(np.concatenate([members, new]))

    def _validate_elements(self, elems):
        elems = [int(e) for e in elems]
        for e in elems:
            if not 0 <= e < self.order:
                raise GroupAxiomError(f"element {e} is not in a group of order {self.order}")
        return elems

    @cached_property
    def derived_subgroup(self):
        n = self.order
        a = np.repeat(np.arange(n), n)
        b = np.tile(np.arange(n), n)
        return self.normal_closure(np.unique(self.comm(a, b)))

    @cached_property
    def center(self):
        t = self.table
        mask = (t == t.T).all(axis=0)
        return Subgroup(self, mask)

    def conjugacy_classes(self):
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for x in range(self.order):
            if not seen[x]:
                cls = np.unique(self.conj(np.arange(self.order), x))
                seen[cls] = True
                classes.append(cls)
        return classes

    def normal_subgroups(self):
        """All normal subgroups, as joins of normal closures of classes."""
        found = {}
        for cls in self.conjugacy_classes():
            ncl = self.normal_closure([int(cls[0])])
            found.setdefault(ncl.key, ncl)
        frontier = list(found.values())
        base = list(found.values())
        while frontier:
            nxt = []
            for a in frontier:
                for b in base:
                    j = a.join(b)
                    if j.key not in found:
                        found[j.key] = j
                        nxt.append(j)
            frontier = nxt
        triv = self.identity_subgroup()
        found.setdefault(triv.key, triv)
        return sorted(found.values(), key=lambda s: (s.order, s.key))

    def abelian_invariants(self):
        """Invariant factors of G/[G,G], ascending."""
        ab, _ = quotient(self, self.derived_subgroup)
        return abelian_group_invariants(ab)

    # -- representations ---------------------------------------------------

    def permutation_images(self, elems=None):
        """Right-regular permutations x -> x*g for the given elements."""
        elems = self.gens if elems is None else elems
        return [tuple(int(v) for v in self.table[:, g]) for g in elems]

    def is_isomorphic_invariants(self, other):
        """Cheap invariant comparison (order, abelian invariants, order histogram)."""
        return (self.order == other.order
                and self.abelian_invariants() == other.abelian_invariants()
                and self.order_histogram() == other.order_histogram())

    def __eq__(self, other):
        return self is other or (isinstance(other, Group)
                                 and np.array_equal(self.table, other.table))

    __hash__ = object.__hash__


def _check_table(table):
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupAxiomError("multiplication table is not closed")
    ids = [e for e in range(n)
           if np.array_equal(table[e], np.arange(n)) and np.array_equal(table[:, e], np.arange(n))]
    if ids != [0]:
        raise GroupAxiomError("element 0 must be the two-sided identity"
                              if not ids else f"identity is element {ids[0]}, expected 0")
    srt = np.sort(table, axis=1)
    if not (srt == np.arange(n)).all() or not (np.sort(table, axis=0) == np.arange(n)[:, None]).all():
        raise GroupAxiomError("multiplication table is not a Latin square (inverses fail)")
    if n <= 128:
        lhs = table[table]  # [a, b, c] -> (ab)c
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
    else:
        # Light's test over a generating set is equivalent to the full test
        g = Group(table, check=False)
        bad = None
        for s in g.gens:
            lhs = table[table, s]
            rhs = table[np.arange(n)[:, None], table[:, s][None, :]]
            hit = np.argwhere(lhs != rhs)
            if hit.size:
                bad = np.array([[hit[0, 0], hit[0, 1], s]])
                break
        bad = np.zeros((0, 3), dtype=int) if bad is None else bad
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise GroupAxiomError(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


class Subgroup:
    """A subgroup of a concrete group, stored as a membership mask."""

    __slots__ = ("parent", "mask", "elements", "_gens", "__dict__")

    def __init__(self, parent, mask, gens=None):
        self.parent = parent
        self.mask = np.asarray(mask, dtype=bool)
        self.elements = np.nonzero(self.mask)[0].astype(_IDX)
        self._gens = gens

    @property
    def order(self):
        return int(self.elements.size)

    def __len__(self):
        return self.order

    def __contains__(self, x):
        return bool(self.mask[int(x)])

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    @property
    def key(self):
        return self.mask.tobytes()

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and np.array_equal(self.mask, other.mask))

    __hash__ = None

    @property
    def gens(self):
        if self._gens is None:
            gens = []
            mask = np.zeros(self.parent.order, dtype=bool)
            mask[0] = True
            for x in self.elements:
                if not mask[x]:
                    gens.append(int(x))
                    mask = self.parent._closure_mask(gens)
            self._gens = gens
        return self._gens

    def contains_all(self, elems):
        return bool(self.mask[np.asarray(elems, dtype=np.int64)].all())

    def is_subgroup_of(self, other):
        return bool((~self.mask | other.mask).all())

    def is_normal(self, ambient=None):
        """Normal in the parent, or normalized by the subgroup ``ambient``."""
        gens = self.parent.gens if ambient is None else ambient.gens
        if len(gens) == 0:
            return True
        c = self.parent.conj(np.array(gens, dtype=np.int64)[:, None], self.elements[None, :])
        return bool(self.mask[c].all())

    def intersection(self, other):
        return Subgroup(self.parent, self.mask & other.mask)

    def join(self, other):
        return Subgroup(self.parent, self.parent._closure_mask(list(self.gens) + list(other.gens)))

    def product_set(self, other):
        """The set HK; a subgroup when one factor normalizes the other."""
        prods = np.unique(self.parent.table[np.ix_(self.elements, other.elements)])
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[prods] = True
        return Subgroup(self.parent, mask)

    def conjugation_action(self, by):
        """Action of subgroup ``by`` on self by conjugation, on as_group indices."""
        grp_self, emb_self = self.as_group()
        grp_by, emb_by = by.as_group()
        pos = self.position
        c = self.parent.conj(emb_by.images[:, None], emb_self.images[None, :])
        if (pos[c] < 0).any():
            raise NotNormalError("subgroup is not normalized by the acting subgroup")
        return Action(grp_by, grp_self, pos[c])

    @cached_property
    def position(self):
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[self.elements] = np.arange(self.order)
        return pos

    def as_group(self, name=None):
        """(H, embedding) with H a standalone table group."""
        return self._as_group

    @cached_property
    def _as_group(self):
        el = self.elements
        pos = self.position
        table = pos[self.parent.table[np.ix_(el, el)]]
        labels = None
        if self.parent.labels is not None:
            labels = [self.parent.labels[e] for e in el]
        grp = Group(table, labels=labels, gens=[pos[g] for g in self.gens], check=False)
        emb = Hom(grp, self.parent, el, check=False)
        return grp, emb


class Hom:
    """A homomorphism between concrete groups, stored as an image array."""

    __slots__ = ("source", "target", "images", "__dict__")

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int64)
        if self.images.shape != (source.order,):
            raise HomError("image array length must equal the source order")
        if check:
            self.verify()

    @classmethod
    def from_images(cls, source, target, gen_images, gens=None):
        """Extend generator images to a homomorphism, verifying well-definedness."""
        gens = list(source.gens if gens is None else gens)
        gen_images = [int(x) for x in gen_images]
        if len(gens) != len(gen_images):
            raise HomError("one image per source generator is required")
        img = np.full(source.order, -1, dtype=np.int64)
        img[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, gen_images):
                    y = source.table[x, g]
                    v = target.table[img[x], gi]
                    if img[y] < 0:
                        img[y] = v
                        nxt.append(y)
                    elif img[y] != v:
                        raise HomError("generator images do not define a homomorphism")
            frontier = nxt
        if (img < 0).any():
            raise HomError("listed generators do not generate the source")
        return cls(source, target, img, check=True)

    @classmethod
    def identity(cls, g):
        return cls(g, g, np.arange(g.order), check=False)

    @classmethod
    def trivial(cls, source, target):
        return cls(source, target, np.zeros(source.order, dtype=np.int64), check=False)

    def verify(self):
        """Check the homomorphism property on generators (sufficient by induction)."""
        s, t, img = self.source, self.target, self.images
        if img.size and (img.min() < 0 or img.max() >= t.order):
            raise HomError("image outside target")
        if img[0] != 0:
            raise HomError("identity is not sent to identity")
        for g in s.gens:
            lhs = img[s.table[:, g]]
            rhs = t.table[img, img[g]]
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                raise HomError(f"not a homomorphism: f({int(bad[0])}*{g}) != f({int(bad[0])})*f({g})")
        return self

    def __call__(self, x):
        return self.images[x]

    def __repr__(self):
        return f"<Hom {self.source!r} -> {self.target!r}>"

    def then(self, other):
        """Composite other o self."""
        if other.source is not self.target and other.source != self.target:
            raise HomError("composition of non-composable homs")
        return Hom(self.source, other.target, other.images[self.images], check=False)

    def kernel(self):
        return Subgroup(self.source, self.images == 0)

    def image(self):
        mask = np.zeros(self.target.order, dtype=bool)
        mask[self.images] = True
        return Subgroup(self.target, mask)

    def preimage(self, sub):
        return Subgroup(self.source, sub.mask[self.images])

    @property
    def is_injective(self):
        return bool(np.unique(self.images).size == self.source.order)

    @property
    def is_surjective(self):
        return bool(np.unique(self.images).size == self.target.order)

    @property
    def is_isomorphism(self):
        return self.is_injective and self.is_surjective

    def inverse(self):
        if not self.is_isomorphism:
            raise HomError("only isomorphisms can be inverted")
        inv = np.empty(self.target.order, dtype=np.int64)
        inv[self.images] = np.arange(self.source.order)
        return Hom(self.target, self.source, inv, check=False)

    def restrict(self, sub):
        """Restriction to a subgroup, with the subgroup as standalone source."""
        grp, emb = sub.as_group()
        return Hom(grp, self.target, self.images[emb.images], check=False)

    def corestrict(self, sub):
        """Same map with target the standalone copy of ``sub`` (must contain the image)."""
        pos = sub.position[self.images]
        if (pos < 0).any():
            raise HomError("image is not contained in the given subgroup")
        grp, _ = sub.as_group()
        return Hom(self.source, grp, pos, check=False)

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.source == other.source
                and self.target == other.target and np.array_equal(self.images, other.images))

    __hash__ = None


class Action:
    """A left action of P on M by automorphisms: ``table[p, m] = p.m``."""

    __slots__ = ("acting", "acted", "table")

    def __init__(self, acting, acted, table, check=True):
        self.acting = acting
        self.acted = acted
        self.table = np.asarray(table, dtype=np.int64)
        if check:
            self.verify()

    def violations(self):
        """First witness for each failed action law, keyed by law name."""
        P, M, a = self.acting, self.acted, self.table
        out = {}
        if a.shape != (P.order, M.order):
            out["shape"] = a.shape
            return out
        if a.min() < 0 or a.max() >= M.order:
            out["range"] = ()
            return out
        if not np.array_equal(a[0], np.arange(M.order)):
            m = int(np.nonzero(a[0] != np.arange(M.order))[0][0])
            out["identity"] = (m,)
        for q in P.gens:
            lhs = a[:, a[q]]                       # p.(q.m)
            rhs = a[P.table[:, q]]                 # (pq).m
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                out["composition"] = (int(bad[0, 0]), int(q), int(bad[0, 1]))
                break
        for p in P.gens:
            row = a[p]
            if np.unique(row).size != M.order:
                out["bijective"] = (int(p),)
                break
            bad = np.argwhere(row[M.table] != M.table[row[:, None], row[None, :]])
            if bad.size:
                out["automorphism"] = (int(p), int(bad[0, 0]), int(bad[0, 1]))
                break
        return out

    def verify(self):
        bad = self.violations()
        if bad:
            from .errors import ActionError
            law, wit = next(iter(bad.items()))
            raise ActionError(f"invalid action: {law} law fails at {wit}")
        return self

    def __call__(self, p, m):
        return self.table[p, m]

    @classmethod
    def trivial(cls, acting, acted):
        return cls(acting, acted, np.tile(np.arange(acted.order), (acting.order, 1)), check=False)

    @classmethod
    def conjugation(cls, g):
        n = g.order
        return cls(g, g, g.conj(np.arange(n)[:, None], np.arange(n)[None, :]), check=False)

    def pullback(self, f):
        """The action of Q on M through f: Q -> P."""
        return Action(f.source, self.acted, self.table[f.images], check=False)

    def is_trivial(self):
        return bool((self.table == np.arange(self.acted.order)).all())


def quotient(g, n):
    """(G/N, projection).  Cosets are numbered in order of first appearance."""
    if not n.is_normal():
        raise NotNormalError("quotient by a subgroup that is not normal")
    rep = g.table[:, n.elements].min(axis=1)
    reps, coset = np.unique(rep, return_inverse=True)
    # order so that the identity coset is 0 (rep of N is 0, smallest)
    table = coset[g.table[np.ix_(reps, reps)]]
    gens = sorted({int(coset[x]) for x in g.gens} - {0})
    q = Group(table, gens=gens, check=False)
    return q, Hom(g, q, coset, check=False)


def direct_product(g, h, name=None):
    """G x H with element (a, b) at index a*|H| + b."""
    m, n = g.order, h.order
    a = np.repeat(np.arange(m), n)
    b = np.tile(np.arange(n), m)
    table = g.table[a[:, None], a[None, :]] * n + h.table[b[:, None], b[None, :]]
    labels = [(g.label(x), h.label(y)) for x in range(m) for y in range(n)]
    gens = [x * n for x in g.gens] + list(h.gens)
    return Group(table, labels=labels, gens=gens, name=name, check=False)


def semidirect_product(m, n, act, name=None):
    """M x| N for a left action of N on M.

    Element (a, b) sits at index a*|N| + b and
    (a, b)(a', b') = (a * b.a', b b').  Returns (group, i: M -> MxN, j: N -> MxN).
    """
    if act.acting.order != n.order or act.acted.order != m.order:
        from .errors import ActionError
        raise ActionError("action does not match the factors")
    act.verify()
    M, N = m.order, n.order
    a = np.repeat(np.arange(M), N)
    b = np.tile(np.arange(N), M)
    first = m.table[a[:, None], act.table[b[:, None], a[None, :]]]
    second = n.table[b[:, None], b[None, :]]
    table = first * N + second
    labels = [(m.label(x), n.label(y)) for x in range(M) for y in range(N)]
    gens = [x * N for x in m.gens] + list(n.gens)
    sd = Group(table, labels=labels, gens=gens, name=name, check=False)
    i = Hom(m, sd, np.arange(M) * N, check=False)
    j = Hom(n, sd, np.arange(N), check=False)
    return sd, i, j


def abelian_group_invariants(a):
    """Invariant factors of a finite abelian group, from p-torsion counts."""
    if not a.is_abelian:
        raise GroupAxiomError("abelian invariants requested for a nonabelian group")
    orders = a.element_orders
    n = a.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    factors = []  # list of prime-power lists
    for p in primes:
        # |A[p^k]| = number of elements with order dividing p^k
        counts = [1]
        k = 1
        while True:
            c = int(np.count_nonzero(p ** k % orders == 0))
            counts.append(c)
            if c == counts[-2]:
                break
            k += 1
        # ranks r_k = log_p(|A[p^k]| / |A[p^(k-1)]|) = number of cyclic factors of order >= p^k
        ranks = [_ilog(counts[i] // counts[i - 1], p) for i in range(1, len(counts) - 1)]
        powers = []
        for k, r in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            powers += [p ** k] * (r - nxt)
        factors.append(sorted(powers, reverse=True))
    width = max((len(f) for f in factors), default=0)
    inv = []
    for i in range(width):
        inv.append(prod(f[i] for f in factors if i < len(f)))
    return sorted(inv)


def _ilog(x, p):
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def all_homs(source, target, gens=None, limit=None):
    """Every homomorphism source -> target, by backtracking over generator images."""
    gens = list(source.gens if gens is None else gens)
    orders = source.element_orders
    tord = target.element_orders
    cands = [np.nonzero(orders[g] % tord == 0)[0] for g in gens]
    out = []

    def rec(i, chosen):
        if limit is not None and len(out) >= limit:
            return
        if i == len(gens):
            try:
                out.append(Hom.from_images(source, target, chosen, gens=gens))
            except HomError:
                pass
            return
        for c in cands[i]:
            rec(i + 1, chosen + [int(c)])

    rec(0, [])
    return out
