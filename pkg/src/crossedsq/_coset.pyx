# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled HLT coset enumeration over the trivial subgroup.

Same algorithm and letter encoding as ``_coset_py``; results are identical
after standardization.
"""

from itertools import accumulate

import numpy as np
cimport numpy as cnp

from .errors import CosetOverflow
from ._coset_py import standardize

ctypedef cnp.int64_t idx_t

cdef idx_t UNDEF = -1


cdef class _Enumerator:
    cdef int ncols
    cdef idx_t max_cosets
    cdef idx_t nrows
    cdef idx_t capacity
    cdef object table_arr
    cdef object p_arr
    cdef idx_t[:, ::1] table
    cdef idx_t[::1] p
    cdef object rel_arr
    cdef object off_arr
    cdef idx_t[::1] rel
    cdef idx_t[::1] off
    cdef int nrel
    cdef object queue_arr
    cdef idx_t[::1] queue
    cdef idx_t qlen
    cdef idx_t cursor
    cdef bint cursor_dead

    def __init__(self, int ngens, relators, idx_t max_cosets):
        rels = [list(r) for r in relators if len(r)]
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.nrel = len(rels)
        flat = [x for r in rels for x in r]
        offs = [0, *accumulate(len(r) for r in rels)]
        self.rel_arr = np.array(flat, dtype=np.int64)
        self.off_arr = np.array(offs, dtype=np.int64)
        self.rel = self.rel_arr
        self.off = self.off_arr
        self.capacity = 0
        self.nrows = 0
        self._grow(64)
        self.nrows = 1
        self.queue_arr = np.zeros(64, dtype=np.int64)
        self.queue = self.queue_arr
        self.qlen = 0
        self.cursor = 0
        self.cursor_dead = False

    cdef void _grow(self, idx_t need):
        cdef idx_t cap = self.capacity if self.capacity > 0 else 64
        while cap < need:
            cap *= 2
        if cap == self.capacity:
            return
        t = np.full((cap, self.ncols), UNDEF, dtype=np.int64)
        q = np.arange(cap, dtype=np.int64)
        if self.capacity:
            t[: self.nrows] = self.table_arr[: self.nrows]
            q[: self.nrows] = self.p_arr[: self.nrows]
        self.table_arr = t
        self.p_arr = q
        self.table = t
        self.p = q
        self.capacity = cap

    cdef inline idx_t rep(self, idx_t k):
        cdef idx_t root = k
        cdef idx_t nxt
        while self.p[root] != root:
            root = self.p[root]
        while self.p[k] != root:
            nxt = self.p[k]
            self.p[k] = root
            k = nxt
        return root

    cdef void push(self, idx_t v):
        if self.qlen == self.queue.shape[0]:
            q = np.zeros(2 * self.qlen, dtype=np.int64)
            q[: self.qlen] = self.queue_arr
            self.queue_arr = q
            self.queue = q
        self.queue[self.qlen] = v
        self.qlen += 1

    cdef void merge(self, idx_t k, idx_t l):
        cdef idx_t a = self.rep(k)
        cdef idx_t b = self.rep(l)
        cdef idx_t t
        if a != b:
            if b < a:
                t = a
                a = b
                b = t
            self.p[b] = a
            self.push(b)

    cdef void coincidence(self, idx_t a, idx_t b):
        cdef idx_t qi = 0
        cdef idx_t g, d, mu, nu
        cdef int x
        self.qlen = 0
        self.merge(a, b)
        while qi < self.qlen:
            g = self.queue[qi]
            qi += 1
            for x in range(self.ncols):
                d = self.table[g, x]
                if d == UNDEF:
                    continue
                self.table[d, x ^ 1] = UNDEF
                mu = self.rep(g)
                nu = self.rep(d)
                if self.table[mu, x] != UNDEF:
                    self.merge(nu, self.table[mu, x])
                elif self.table[nu, x ^ 1] != UNDEF:
                    self.merge(mu, self.table[nu, x ^ 1])
                else:
                    self.table[mu, x] = nu
                    self.table[nu, x ^ 1] = mu
        self.qlen = 0

    cdef void define(self, idx_t a, int x):
        cdef idx_t b = self.nrows
        if b >= self.capacity:
            self._grow(b + 1)
        self.nrows += 1
        self.p[b] = b
        self.table[a, x] = b
        self.table[b, x ^ 1] = a

    cdef void scan(self, idx_t a, int r, bint fill):
        cdef idx_t f = a
        cdef idx_t b = a
        cdef idx_t i = self.off[r]
        cdef idx_t j = self.off[r + 1] - 1
        while True:
            while i <= j and self.table[f, self.rel[i]] != UNDEF:
                f = self.table[f, self.rel[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and self.table[b, self.rel[j] ^ 1] != UNDEF:
                b = self.table[b, self.rel[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f, self.rel[i]] = b
                self.table[b, self.rel[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, self.rel[i])

    cdef void lookahead(self):
        cdef idx_t a = 0
        cdef int r
        while a < self.nrows:
            if self.p[a] == a:
                for r in range(self.nrel):
                    self.scan(a, r, False)
                    if self.p[a] != a:
                        break
            a += 1

    cdef void compact(self):
        cdef idx_t n = self.nrows
        cdef idx_t a, k, y
        cdef int x
        newid = np.full(n, -1, dtype=np.int64)
        cdef idx_t[::1] nid = newid
        k = 0
        for a in range(n):
            if self.p[a] == a:
                nid[a] = k
                k += 1
        cdef idx_t below = 0
        for a in range(min(self.cursor, n)):
            if self.p[a] == a:
                below += 1
        for a in range(n):
            if self.p[a] == a:
                for x in range(self.ncols):
                    y = self.table[a, x]
                    if y != UNDEF:
                        y = nid[self.rep(y)]
                    self.table[nid[a], x] = y
        if self.cursor < n and self.p[self.cursor] == self.cursor:
            self.cursor = nid[self.cursor]
        else:
            self.cursor = below - 1
            self.cursor_dead = True
        for a in range(k):
            self.p[a] = a
        for a in range(k, n):
            self.p[a] = a
            for x in range(self.ncols):
                self.table[a, x] = UNDEF
        self.nrows = k

    cdef int ensure_room(self, idx_t k) except -1:
        if self.nrows + k <= self.max_cosets:
            return 0
        self.lookahead()
        self.compact()
        if self.nrows + k > self.max_cosets:
            raise CosetOverflow(self.max_cosets)
        return 0

    cdef int process_current(self) except -1:
        cdef int r, x
        for r in range(self.nrel):
            self.ensure_room(self.off[r + 1] - self.off[r])
            if self.cursor_dead:
                return 0
            self.scan(self.cursor, r, True)
            if self.p[self.cursor] != self.cursor:
                return 0
        for x in range(self.ncols):
            if self.table[self.cursor, x] == UNDEF:
                self.ensure_room(1)
                if self.cursor_dead:
                    return 0
                self.define(self.cursor, x)
        return 0

    def run(self):
        self.cursor = 0
        while self.cursor < self.nrows:
            self.cursor_dead = False
            if self.p[self.cursor] == self.cursor:
                self.process_current()
            self.cursor += 1
        self.cursor = 0
        self.compact()
        return standardize(np.array(self.table_arr[: self.nrows], dtype=np.int64))


def enumerate_cosets(ngens, relators, max_cosets):
    """Return the standardized coset table of the trivial subgroup."""
    if ngens == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return _Enumerator(ngens, relators, max_cosets).run()
