"""Finite simplicial groups as images of a free 2-skeleton.

An assignment sends B1 into T_0, B2 into T_1 and B3 into T_2 for a finite
3-truncated simplicial group T, compatibly with the faces of the basis.  It
extends to a simplicial map from the free skeleton, and the model is its
levelwise image.  With a plain group H the target is the codiscrete
simplicial group H^{n+1}, where every simplex is determined by its vertices.

A 2-truncated target is allowed: level 3 of the model is then generated by
degenerate face tuples of its level 2.  Every level-3 generator of the
skeleton is degenerate, so this changes nothing below level 3 and leaves
d_3 of the Moore group unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import constant
from .errors import ConstructionError, SpecError
from .freeskel import TOP, degeneracy_ops
from .groups import Group, Hom
from .simplicial import SimplicialGroup, SimplicialMap
from .words import evaluate


def codiscrete(h, k=TOP):
    """Level n is H^{n+1}; faces drop a vertex, degeneracies repeat one."""
    t = constant(h, 0, name=f"cosk0({h.name})").extend_to(k)
    t.name = f"cosk0({h.name})"
    return t


def apply_degeneracies(t, sigma, v):
    """sigma^* v in T for a surjection sigma: [n] -> [m] and v in T_m."""
    m = max(sigma)
    for i in reversed(degeneracy_ops(sigma)):
        v = t.degens[m][i].images[v]
        m += 1
    return v


@dataclass(eq=False)
class QuotientModel:
    skeleton: object
    target: SimplicialGroup
    assignment: dict
    gen_images: list
    subgroups: list
    group: SimplicialGroup

    def value(self, n, w):
        """Image of a level-n word in T_n (in the model when T stops below n)."""
        g = self.target.levels[n] if n <= self.target.k else self.group.levels[n]
        return evaluate(w, g, self.gen_images[n])

    def evaluate(self, n, w):
        """Image of a level-n word as an element of the model's level n."""
        if n > self.target.k:
            return self.value(n, w)
        return int(self.subgroups[n].position[self.value(n, w)])

    def inclusion_into(self, other):
        """The levelwise inclusion into a model over the same target."""
        if other.target is not self.target:
            raise ConstructionError("models live in different targets")
        if len(self.subgroups) <= TOP:
            raise ConstructionError("inclusions need models with all levels inside the target")
        maps = []
        for n, (a, b) in enumerate(zip(self.subgroups, other.subgroups)):
            if not a.is_subgroup_of(b):
                raise ConstructionError(f"level {n} of the model is not contained in the other")
            maps.append(Hom(self.group.levels[n], other.group.levels[n],
                            b.position[a.elements], check=False))
        return SimplicialMap(self.group, other.group, maps)


def _solve(t, n, faces, what):
    """Lowest-index element of T_n with the prescribed faces."""
    mask = np.ones(t.levels[n].order, dtype=bool)
    for i, v in enumerate(faces):
        mask &= t.faces[n][i].images == v
    hits = np.flatnonzero(mask)
    if not len(hits):
        raise ConstructionError(f"no element of T_{n} has the faces required for {what}")
    return int(hits[0])


def finite_quotient_model(sk, target, b1, b2=None, b3=None):
    """The image of the free skeleton under an assignment of its basis.

    Missing B2 or B3 values are filled by the lowest-index element of T with
    the required faces.  Incompatible values raise with the failing relator.
    """
    if isinstance(target, Group):
        target = codiscrete(target)
    if target.k < TOP - 1:
        raise SpecError(f"the target needs levels up to {TOP - 1}")
    b2, b3 = dict(b2 or {}), dict(b3 or {})
    if set(b1) != set(sk.b1):
        raise SpecError("the assignment must cover exactly the B1 symbols")
    extra = (set(b2) - set(sk.b2)) | (set(b3) - set(sk.b3))
    if extra:
        raise SpecError(f"unknown symbols in the assignment: {sorted(extra)}")
    T = target.levels
    for x, v in b1.items():
        if not 0 <= int(v) < T[0].order:
            raise SpecError(f"{x} is sent outside T_0")
    base = {x: int(v) for x, v in b1.items()}

    def gen_images(n):
        return np.array([apply_degeneracies(target, s, base[b]) for s, b in sk.gens[n]],
                        dtype=np.int64)

    imgs = [gen_images(0)]
    for y in sk.b2:
        need = evaluate(sk.f2[y], T[0], imgs[0])
        if y not in b2:
            b2[y] = _solve(target, 1, [0, need], y)
        v = int(b2[y])
        got = (int(target.faces[1][0].images[v]), int(target.faces[1][1].images[v]))
        if got != (0, need):
            rel = "d_0(y) = 1" if got[0] else f"d_1(y) = f2(y) = {sk.format(0, sk.f2[y])}"
            raise ConstructionError(f"assignment breaks the relator {rel} at y = {y}")
        base[y] = v
    imgs.append(gen_images(1))
    for z in sk.b3:
        need = evaluate(sk.f3[z], T[1], imgs[1])
        if z not in b3:
            b3[z] = _solve(target, 2, [0, 0, need], z)
        v = int(b3[z])
        got = tuple(int(target.faces[2][i].images[v]) for i in range(3))
        if got != (0, 0, need):
            i = next(i for i in range(3) if got[i] != (0, 0, need)[i])
            rel = f"d_{i}(z) = 1" if i < 2 else f"d_2(z) = f3(z) = {sk.format(1, sk.f3[z])}"
            raise ConstructionError(f"assignment breaks the relator {rel} at z = {z}")
        base[z] = v
    top = min(TOP, target.k)
    imgs += [gen_images(n) for n in range(2, top + 1)]

    subs = [T[n].subgroup(sorted(set(imgs[n].tolist()))) for n in range(top + 1)]
    levels, embs = [], []
    for s in subs:
        g, e = s.as_group()
        levels.append(g)
        embs.append(e.images)

    def restrict(f, n_from, n_to, kind):
        img = subs[n_to].position[f.images[embs[n_from]]]
        if (img < 0).any():
            raise ConstructionError(f"the image is not closed under a {kind}")
        return Hom(levels[n_from], levels[n_to], img, check=False)

    faces = [[]] + [[restrict(f, n, n - 1, "face") for f in target.faces[n]]
                    for n in range(1, top + 1)]
    degens = [[restrict(s, n, n + 1, "degeneracy") for s in target.degens[n]]
              for n in range(top)]
    model = SimplicialGroup(levels, faces, degens, name=f"model({target.name})")
    if top < TOP:
        model = model.degenerate_extension()
        pos = {b: int(subs[sk.dim[b]].position[v]) for b, v in base.items()}
        imgs.append(np.array([apply_degeneracies(model, s, pos[b]) for s, b in sk.gens[TOP]],
                             dtype=np.int64))
    return QuotientModel(sk, target, {**base}, imgs, subs, model)
