"""Pure-Python HLT coset enumeration over the trivial subgroup.

Letters are encoded as ``2*i`` for generator ``i`` and ``2*i + 1`` for its
inverse, so ``x ^ 1`` is the inverse letter.  This module mirrors
``_coset.pyx`` line for line; keep the two in sync.
"""

import numpy as np

from .errors import CosetOverflow

UNDEF = -1


class _Enumerator:
    def __init__(self, ngens, relators, max_cosets):
        self.ncols = 2 * ngens
        self.relators = [list(r) for r in relators if len(r)]
        self.max_cosets = max_cosets
        self.table = [[UNDEF] * self.ncols]
        self.p = [0]
        self.nlive = 1
        self.queue = []
        self.cursor = 0
        self.cursor_dead = False

    # union-find with path compression
    def rep(self, k):
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k, l):
        a = self.rep(k)
        b = self.rep(l)
        if a != b:
            if b < a:
                a, b = b, a
            self.p[b] = a
            self.queue.append(b)
            self.nlive -= 1

    def coincidence(self, a, b):
        table = self.table
        self.queue = []
        self.merge(a, b)
        qi = 0
        while qi < len(self.queue):
            g = self.queue[qi]
            qi += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d == UNDEF:
                    continue
                table[d][x ^ 1] = UNDEF
                mu = self.rep(g)
                nu = self.rep(d)
                if table[mu][x] != UNDEF:
                    self.merge(nu, table[mu][x])
                elif table[nu][x ^ 1] != UNDEF:
                    self.merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
        self.queue = []

    def define(self, a, x):
        table = self.table
        b = len(table)
        table.append([UNDEF] * self.ncols)
        self.p.append(b)
        self.nlive += 1
        table[a][x] = b
        table[b][x ^ 1] = a

    def scan(self, a, w, fill):
        """Scan relator ``w`` from coset ``a``; define cosets only if ``fill``."""
        table = self.table
        f = a
        b = a
        i = 0
        j = len(w) - 1
        while True:
            while i <= j and table[f][w[i]] != UNDEF:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and table[b][w[j] ^ 1] != UNDEF:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self):
        a = 0
        while a < len(self.table):
            if self.p[a] == a:
                for w in self.relators:
                    self.scan(a, w, False)
                    if self.p[a] != a:
                        break
            a += 1

    def ensure_room(self, k):
        """Guarantee ``k`` free rows; only called between scans."""
        if len(self.table) + k <= self.max_cosets:
            return
        self.lookahead()
        self.compact()
        if len(self.table) + k > self.max_cosets:
            raise CosetOverflow(self.max_cosets)

    def compact(self):
        """Drop dead cosets, keeping live ones in their original order."""
        live = [a for a in range(len(self.table)) if self.p[a] == a]
        newid = {a: k for k, a in enumerate(live)}
        self.table = [
            [UNDEF if y == UNDEF else newid[self.rep(y)] for y in self.table[a]]
            for a in live
        ]
        self.p = list(range(len(live)))
        if self.cursor in newid:
            self.cursor = newid[self.cursor]
        else:
            # current coset collapsed into an earlier, already processed one
            self.cursor = sum(1 for a in live if a < self.cursor) - 1
            self.cursor_dead = True
        return newid

    def run(self):
        self.cursor = 0
        while self.cursor < len(self.table):
            self.cursor_dead = False
            if self.p[self.cursor] == self.cursor:
                self.process_current()
            self.cursor += 1
        self.compact_final()
        return standardize(np.array(self.table, dtype=np.int64).reshape(-1, self.ncols))

    def process_current(self):
        for w in self.relators:
            self.ensure_room(len(w))
            if self.cursor_dead:
                return
            self.scan(self.cursor, w, True)
            if self.p[self.cursor] != self.cursor:
                return
        for x in range(self.ncols):
            if self.table[self.cursor][x] == UNDEF:
                self.ensure_room(1)
                if self.cursor_dead:
                    return
                self.define(self.cursor, x)

    def compact_final(self):
        self.cursor = 0
        self.compact()


def standardize(table):
    """Renumber cosets in breadth-first order from coset 0 (deterministic)."""
    n, ncols = table.shape
    order = [0]
    newid = np.full(n, -1, dtype=np.int64)
    newid[0] = 0
    k = 0
    while k < len(order):
        c = order[k]
        k += 1
        for x in range(ncols):
            d = table[c, x]
            if newid[d] < 0:
                newid[d] = len(order)
                order.append(d)
    out = np.empty_like(table)
    out[newid[np.arange(n)]] = newid[table]
    return out


def enumerate_cosets(ngens, relators, max_cosets):
    """Return the standardized coset table of the trivial subgroup.

    Row ``c`` column ``2*i`` is ``c . g_i``; column ``2*i+1`` is ``c . g_i^-1``.
    """
    if ngens == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return _Enumerator(ngens, relators, max_cosets).run()
