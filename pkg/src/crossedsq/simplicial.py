"""Truncated simplicial groups over concrete finite groups.

Levels G_0..G_k with faces d_i: G_n -> G_{n-1} and degeneracies
s_i: G_n -> G_{n+1}.  The Moore complex uses the last face as boundary:
NG_n is the intersection of Ker d_i for i < n, with boundary d_n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, GroupTooLarge, SpecError
from .groups import MAX_ORDER, Group, Hom, Subgroup, quotient
from .report import Report

CHUNK_ROWS = 512


def tuple_group(components, rows, name=None):
    """The subgroup of a direct product listed by ``rows`` (one column per factor).

    Returns (group, encode) where ``encode(rows)`` gives group indices.  The
    rows must be closed under componentwise multiplication.
    """
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2 or rows.shape[1] != len(components):
        raise ConstructionError("tuple rows do not match the component list")
    radix = np.ones(len(components), dtype=np.int64)
    for c in range(len(components) - 2, -1, -1):
        radix[c] = radix[c + 1] * components[c + 1].order
    if len(components) and radix[0] * components[0].order >= 2**62:
        raise ConstructionError("tuple encoding overflows")
    codes = rows @ radix if len(components) else np.zeros(len(rows), dtype=np.int64)
    order = np.argsort(codes, kind="stable")
    codes, rows = codes[order], rows[order]
    if len(codes) and codes[0] != 0:
        raise ConstructionError("tuple set does not contain the identity")
    if np.any(codes[1:] == codes[:-1]):
        raise ConstructionError("duplicate tuples")

    def encode(r):
        r = np.asarray(r, dtype=np.int64)
        c = r @ radix if len(components) else np.zeros(r.shape[:-1], dtype=np.int64)
        idx = np.searchsorted(codes, c)
        idx = np.minimum(idx, len(codes) - 1)
        if not np.array_equal(codes[idx], c):
            raise ConstructionError("tuple is not in the group")
        return idx

    n = len(rows)
    if n > MAX_ORDER:
        raise GroupTooLarge(f"level of order {n} exceeds the {MAX_ORDER}-element table limit")
    table = np.empty((n, n), dtype=np.int64)
    for lo in range(0, n, CHUNK_ROWS):
        a = rows[lo:lo + CHUNK_ROWS]
        prod = np.stack([components[c].table[a[:, None, c], rows[None, :, c]]
                         for c in range(len(components))], axis=-1)
        table[lo:lo + CHUNK_ROWS] = encode(prod)
    grp = Group(table, name=name, check=False)
    grp.rows = rows
    return grp, encode


@dataclass(eq=False)
class SimplicialGroup:
    """A k-truncated simplicial group.

    ``faces[n][i]`` is d_i: G_n -> G_{n-1} (n >= 1) and ``degens[n][i]`` is
    s_i: G_n -> G_{n+1} (n < k).  ``faces[0]`` is empty.
    """

    levels: list
    faces: list
    degens: list
    name: str = ""

    def __post_init__(self):
        k = len(self.levels) - 1
        if k < 0:
            raise SpecError("a simplicial group needs at least one level")
        if len(self.faces) != k + 1 or len(self.degens) != k:
            raise SpecError("face/degeneracy lists do not match the truncation level")
        for n in range(1, k + 1):
            if len(self.faces[n]) != n + 1:
                raise SpecError(f"level {n} needs {n + 1} face maps")
        for n in range(k):
            if len(self.degens[n]) != n + 1:
                raise SpecError(f"level {n} needs {n + 1} degeneracies")

    @property
    def k(self):
        return len(self.levels) - 1

    def d(self, n, i):
        return self.faces[n][i]

    def s(self, n, i):
        return self.degens[n][i]

    def orders(self):
        return [g.order for g in self.levels]

    # -- identities ------------------------------------------------------

    def check(self):
        """Every simplicial identity on every element."""
        rep = Report(f"simplicial group {self.name}".strip())
        k = self.k
        F, S = self.faces, self.degens

        def cmp(name, lhs, rhs, n):
            rep.record(name, lhs != rhs, lambda x: ("level", n, "element", x))

        for n in range(1, k + 1):
            for i, f in enumerate(F[n]):
                rep.add("faces are homs", 0 if _is_hom(f) else 1, 1,
                        None if _is_hom(f) else ("d", n, i))
        for n in range(k):
            for i, s in enumerate(S[n]):
                rep.add("degeneracies are homs", 0 if _is_hom(s) else 1, 1,
                        None if _is_hom(s) else ("s", n, i))
        for n in range(2, k + 1):
            for j in range(n + 1):
                for i in range(j):
                    cmp("d_i d_j = d_{j-1} d_i",
                        F[n - 1][i].images[F[n][j].images],
                        F[n - 1][j - 1].images[F[n][i].images], n)
        for n in range(k):
            ident = np.arange(self.levels[n].order)
            for j in range(n + 1):
                s = S[n][j].images
                for i in range(n + 2):
                    lhs = F[n + 1][i].images[s]
                    if i < j:
                        rhs = S[n - 1][j - 1].images[F[n][i].images]
                    elif i in (j, j + 1):
                        rhs = ident
                    else:
                        rhs = S[n - 1][j].images[F[n][i - 1].images]
                    cmp("d_i s_j", lhs, rhs, n)
        for n in range(k - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    cmp("s_i s_j = s_{j+1} s_i",
                        S[n + 1][i].images[S[n][j].images],
                        S[n + 1][j + 1].images[S[n][i].images], n)
        return rep

    # -- Moore complex and homotopy --------------------------------------

    def kernel_of_faces(self, n, indices):
        g = self.levels[n]
        mask = np.ones(g.order, dtype=bool)
        for i in indices:
            mask &= self.faces[n][i].images == 0
        return Subgroup(g, mask)

    def moore(self, n):
        """NG_n = intersection of Ker d_i for i < n."""
        if n == 0:
            return self.levels[0].whole()
        return self.kernel_of_faces(n, range(n))

    def moore_boundary(self, n):
        """d_n restricted to NG_n, as a hom NG_n -> G_{n-1}."""
        return self.faces[n][n].restrict(self.moore(n))

    def cycles(self, n):
        """Intersection of Ker d_i for i <= n (all of G_0 when n = 0)."""
        if n == 0:
            return self.levels[0].whole()
        return self.kernel_of_faces(n, range(n + 1))

    def boundaries(self, n):
        """d_{n+1}(NG_{n+1}) inside G_n."""
        b = self.moore_boundary(n + 1)
        mask = np.zeros(self.levels[n].order, dtype=bool)
        mask[b.images] = True
        return Subgroup(self.levels[n], mask)

    def homotopy_group(self, n, truncated=False):
        """(pi_n, projection from the cycle group).

        For n = k no boundaries exist; pass ``truncated=True`` to get the
        cycle group itself, which is only a truncation-relative value.
        """
        if n < 0 or n > self.k:
            raise SpecError(f"no level {n} in a {self.k}-truncated simplicial group")
        if n == self.k and not truncated:
            raise SpecError(f"pi_{n} of a {self.k}-truncated group needs truncated=True")
        z = self.cycles(n)
        zg, _ = z.as_group()
        if n == self.k:
            return zg, Hom.identity(zg)
        b = self.boundaries(n)
        return quotient(zg, zg.subgroup(z.position[b.elements].tolist()))

    def homotopy_groups(self, truncated=False):
        """Descriptions of pi_0..pi_{k-1} (and pi_k flagged when ``truncated``)."""
        out = []
        top = self.k if truncated else self.k - 1
        for n in range(top + 1):
            g, _ = self.homotopy_group(n, truncated=truncated)
            d = {"n": n, "order": g.order, "abelian_invariants": g.abelian_invariants(),
                 "abelian": g.is_abelian}
            if n == self.k:
                d["truncation_relative"] = True
            out.append(d)
        return out

    def degenerate_subgroup(self, n):
        """D_n: generated by the images of all degeneracies into level n."""
        if n < 1 or n > self.k:
            raise SpecError("degenerate subgroups exist for 1 <= n <= k")
        g = self.levels[n]
        gens = np.unique(np.concatenate([s.images for s in self.degens[n - 1]]))
        return g.subgroup(gens.tolist())

    # -- truncation and extension ----------------------------------------

    def truncate(self, k):
        if k > self.k:
            raise SpecError("cannot truncate above the top level")
        return SimplicialGroup(self.levels[:k + 1], self.faces[:k + 1], self.degens[:k],
                               name=self.name)

    def coskeleton_level(self):
        """Extend by the simplicial kernel: compatible face tuples in G_k."""
        k = self.k
        G = self.levels[k]
        F = self.faces
        width = k + 2
        if k == 0:
            n0 = G.order
            rows = np.array([(a, b) for a in range(n0) for b in range(n0)], dtype=np.int64)
        else:
            rows = np.arange(G.order, dtype=np.int64)[:, None]
            base = self.levels[k - 1].order
            for j in range(1, width):
                # x_j must satisfy d_i x_j = d_{j-1} x_i for all i < j
                key_x = np.zeros(G.order, dtype=np.int64)
                for i in range(j):
                    key_x = key_x * base + F[k][i].images
                need = np.zeros(len(rows), dtype=np.int64)
                for i in range(j):
                    need = need * base + F[k][j - 1].images[rows[:, i]]
                order = np.argsort(key_x, kind="stable")
                sk = key_x[order]
                lo = np.searchsorted(sk, need, "left")
                hi = np.searchsorted(sk, need, "right")
                counts = hi - lo
                rep_rows = np.repeat(rows, counts, axis=0)
                starts = np.repeat(lo, counts)
                offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
                xs = order[starts + offs]
                rows = np.concatenate([rep_rows, xs[:, None]], axis=1)
        top, enc = tuple_group([G] * width, rows, name=f"{self.name}~{k + 1}".strip("~"))
        return self._extension(top, enc)

    def degenerate_extension(self):
        """Extend by the subgroup of the simplicial kernel generated by degenerate tuples.

        Avoids tabulating the whole kernel; agrees with any extension whose
        top level is generated by degeneracies, up to elements with all faces
        trivial.
        """
        k = self.k
        if k < 1:
            raise SpecError("degenerate extensions need k >= 1")
        G = self.levels[k]
        gens = np.array(G.gens, dtype=np.int64)
        seeds = np.concatenate([self._degenerate_columns(j)[gens] for j in range(k + 1)])
        rows = generated_rows([G] * (k + 2), seeds)
        top, enc = tuple_group([G] * (k + 2), rows, name=f"{self.name}~{k + 1}".strip("~"))
        return self._extension(top, enc)

    def _degenerate_columns(self, j):
        """Face tuples of s_j x for every x in G_k, as rows."""
        k = self.k
        F = self.faces
        ident = np.arange(self.levels[k].order)
        cols = []
        for i in range(k + 2):
            if i < j:
                col = self.degens[k - 1][j - 1].images[F[k][i].images]
            elif i in (j, j + 1):
                col = ident
            else:
                col = self.degens[k - 1][j].images[F[k][i - 1].images]
            cols.append(col)
        return np.stack(cols, axis=1)

    def _extension(self, top, enc):
        k = self.k
        G = self.levels[k]
        faces_new = [Hom(top, G, top.rows[:, i], check=False) for i in range(k + 2)]
        degens_new = [Hom(G, top, enc(self._degenerate_columns(j)), check=False)
                      for j in range(k + 1)]
        return SimplicialGroup(self.levels + [top], self.faces + [faces_new],
                               self.degens + [degens_new], name=self.name)

    def extend_to(self, k):
        """Add coskeleton levels until the truncation level is ``k``."""
        t = self
        while t.k < k:
            t = t.coskeleton_level()
        return t

    # -- maps of levels --------------------------------------------------

    def apply_face_word(self, n, ops, x):
        """Apply faces listed innermost first: ops = [i1, i2, ...] means d_i2 d_i1 x."""
        for i in ops:
            x = self.faces[n][i].images[x]
            n -= 1
        return x


def generated_rows(components, seeds):
    """Rows of the subgroup of a direct product generated by ``seeds``."""
    seeds = np.unique(np.asarray(seeds, dtype=np.int64), axis=0)
    width = len(components)
    radix = np.ones(width, dtype=np.int64)
    for c in range(width - 2, -1, -1):
        radix[c] = radix[c + 1] * components[c + 1].order
    known = np.zeros((1, width), dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    frontier = known
    while len(frontier):
        prod = np.stack([components[c].table[frontier[:, None, c], seeds[None, :, c]]
                         for c in range(width)], axis=-1).reshape(-1, width)
        pc = prod @ radix
        pc, first = np.unique(pc, return_index=True)
        fresh = ~np.isin(pc, codes)
        frontier = prod[first[fresh]]
        if len(codes) + len(frontier) > MAX_ORDER:
            raise GroupTooLarge(f"generated subgroup exceeds {MAX_ORDER} elements")
        known = np.concatenate([known, frontier])
        codes = np.concatenate([codes, pc[fresh]])
    return known


def _is_hom(f):
    s = f.source
    return bool(np.array_equal(f.images[s.table], f.target.table[f.images[:, None], f.images[None, :]]))


@dataclass(eq=False)
class SimplicialMap:
    """A levelwise family of homs commuting with faces and degeneracies."""

    source: SimplicialGroup
    target: SimplicialGroup
    maps: list

    def check(self):
        rep = Report("simplicial map")
        s, t = self.source, self.target
        for n in range(1, min(s.k, t.k) + 1):
            for i in range(n + 1):
                lhs = t.faces[n][i].images[self.maps[n].images]
                rhs = self.maps[n - 1].images[s.faces[n][i].images]
                rep.record("faces", lhs != rhs, lambda x, n=n, i=i: ("d", n, i, x))
        for n in range(min(s.k, t.k)):
            for i in range(n + 1):
                lhs = t.degens[n][i].images[self.maps[n].images]
                rhs = self.maps[n + 1].images[s.degens[n][i].images]
                rep.record("degeneracies", lhs != rhs, lambda x, n=n, i=i: ("s", n, i, x))
        return rep
