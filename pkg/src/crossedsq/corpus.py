"""Small finite simplicial groups: constants, nerves, Dold-Kan, products."""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .catalog import cyclic, named
from .errors import ConstructionError
from .groups import Action, Group, Hom, direct_product, quotient, semidirect_product
from .simplicial import SimplicialGroup, tuple_group
from .xmod import CrossedModule


def constant(g, k=3, name=None):
    """Every level g, every map the identity."""
    i = Hom.identity(g)
    return SimplicialGroup([g] * (k + 1), [[]] + [[i] * (n + 1) for n in range(1, k + 1)],
                           [[i] * (n + 1) for n in range(k)], name=name or f"const({g.name})")


def trivial(k=3):
    return constant(Group.trivial(), k, name="trivial")


def nerve(x, k=3, name=None):
    """The nerve of a crossed module d: M -> P, truncated at level k.

    An n-simplex is a string of n composable arrows of the groupoid with
    objects P and arrows (m, p): d(m)p -> p.  It is stored as (m_1, ..., m_n, p)
    where p is the final object; arrow i runs into d(m_{i+1}...m_n) p.
    """
    M, P, d = x.M, x.P, x.d.images
    if not x.check_crossed().ok:
        raise ConstructionError("nerve needs a crossed module")
    G1, _, _ = semidirect_product(M, P, x.act)
    nP = P.order

    def arrow(m, p):
        return m * nP + p

    levels, encoders, rows_of = [P], [None], [np.arange(nP)[:, None]]
    for n in range(1, k + 1):
        rows = []
        for ms in product(range(M.order), repeat=n):
            for p in range(nP):
                # arrows listed first to last; target of arrow i is the source of i+1
                arr, tgt = [], p
                for m in reversed(ms):
                    arr.append(arrow(m, tgt))
                    tgt = P.table[d[m], tgt]
                rows.append(arr[::-1])
        grp, enc = tuple_group([G1] * n, np.array(rows, dtype=np.int64))
        levels.append(grp)
        encoders.append(enc)
        rows_of.append(grp.rows)

    def target(a):
        return a % nP

    def source(a):
        m, p = np.divmod(a, nP)
        return P.table[d[m], p]

    def compose(a, b):
        # a then b: (m, p) then (m', p') gives (m m', p')
        return M.table[a // nP, b // nP] * nP + b % nP

    faces = [[]]
    for n in range(1, k + 1):
        rows = rows_of[n]
        fs = []
        for i in range(n + 1):
            if n == 1:
                img = target(rows[:, 0]) if i == 0 else source(rows[:, 0])
            elif i == 0:
                img = encoders[n - 1](rows[:, 1:])
            elif i == n:
                img = encoders[n - 1](rows[:, :-1])
            else:
                mid = compose(rows[:, i - 1], rows[:, i])[:, None]
                img = encoders[n - 1](np.concatenate([rows[:, :i - 1], mid, rows[:, i + 1:]], axis=1))
            fs.append(Hom(levels[n], levels[n - 1], img, check=False))
        faces.append(fs)
    degens = []
    for n in range(k):
        rows = rows_of[n]
        ss = []
        for i in range(n + 1):
            if n == 0:
                ident = arrow(0, rows[:, 0])[:, None]
                img = encoders[1](ident)
            else:
                # object i of the string: source of arrow i, or target of the last
                obj = source(rows[:, i]) if i < n else target(rows[:, n - 1])
                ident = arrow(0, obj)[:, None]
                img = encoders[n + 1](np.concatenate([rows[:, :i], ident, rows[:, i:]], axis=1))
            ss.append(Hom(levels[n], levels[n + 1], img, check=False))
        degens.append(ss)
    return SimplicialGroup(levels, faces, degens,
                           name=name or f"nerve({M.name}->{P.name})")


def _surjections(n, m):
    """Nondecreasing surjections [n] -> [m] as tuples of length n+1."""
    out = []
    for cuts in combinations(range(1, n + 1), m):
        s, v, c = [], 0, set(cuts)
        for i in range(n + 1):
            if i in c:
                v += 1
            s.append(v)
        out.append(tuple(s))
    return out


def dold_kan(chain, k=3, name=None):
    """Gamma of a complex of finite abelian groups A_0 <- A_1 <- ... .

    ``chain`` is a list of (A_m, boundary A_m -> A_{m-1}) with boundary None
    for m = 0.  Level n is the sum over surjections [n] -> [m] of A_m.  The
    normalized complex recovers ``chain`` with the last face as boundary.
    """
    groups = [a for a, _ in chain]
    bounds = [b for _, b in chain]
    for m in range(2, len(chain)):
        if (bounds[m - 1].images[bounds[m].images] != 0).any():
            raise ConstructionError(f"boundary squared is nonzero at degree {m}")
    for a in groups:
        if not a.is_abelian:
            raise ConstructionError("Dold-Kan needs abelian groups")
    summands, levels, encoders = [], [], []
    for n in range(k + 1):
        summ = [(s, m) for m in range(min(n, len(groups) - 1) + 1) for s in _surjections(n, m)]
        comps = [groups[m] for _, m in summ]
        rows = np.array(list(product(*[range(c.order) for c in comps])), dtype=np.int64)
        rows = rows.reshape(-1, len(comps))
        grp, enc = tuple_group(comps, rows)
        summands.append(summ)
        levels.append(grp)
        encoders.append(enc)

    def operator(n, theta, n2):
        """The map G_n -> G_n2 induced by theta: [n2] -> [n]."""
        src, tgt = summands[n], summands[n2]
        pos = {s: j for j, s in enumerate(tgt)}
        rows = levels[n].rows
        out = np.zeros((len(rows), len(tgt)), dtype=np.int64)
        for j, (sig, m) in enumerate(src):
            comp = [sig[t] for t in theta]
            image = sorted(set(comp))
            if image == list(range(m + 1)):
                key, val = (tuple(comp), m), rows[:, j]
            elif image == list(range(m)):
                key, val = (tuple(comp), m - 1), bounds[m].images[rows[:, j]]
            else:
                continue
            t = pos[key]
            a = groups[key[1]]
            out[:, t] = a.table[out[:, t], val]
        return Hom(levels[n], levels[n2], encoders[n2](out), check=False)

    faces = [[]] + [[operator(n, [t for t in range(n + 1) if t != i], n - 1)
                     for i in range(n + 1)] for n in range(1, k + 1)]
    degens = [[operator(n, [t if t <= i else t - 1 for t in range(n + 2)], n + 1)
               for i in range(n + 1)] for n in range(k)]
    return SimplicialGroup(levels, faces, degens, name=name or "dold-kan")


def product_of(a, b, name=None):
    """Levelwise direct product."""
    if a.k != b.k:
        raise ConstructionError("products need equal truncation levels")
    levels = [direct_product(x, y) for x, y in zip(a.levels, b.levels)]

    def pair(f, g, s, t):
        img = f.images[np.repeat(np.arange(f.source.order), g.source.order)] * g.target.order \
            + g.images[np.tile(np.arange(g.source.order), f.source.order)]
        return Hom(s, t, img, check=False)

    faces = [[]] + [[pair(a.faces[n][i], b.faces[n][i], levels[n], levels[n - 1])
                     for i in range(n + 1)] for n in range(1, a.k + 1)]
    degens = [[pair(a.degens[n][i], b.degens[n][i], levels[n], levels[n + 1])
               for i in range(n + 1)] for n in range(a.k)]
    return SimplicialGroup(levels, faces, degens, name=name or f"{a.name}x{b.name}")


def chain_from_maps(groups, maps):
    """Convenience: groups A_0.. and images of the boundaries A_m -> A_{m-1}."""
    chain = [(groups[0], None)]
    for m in range(1, len(groups)):
        chain.append((groups[m], Hom(groups[m], groups[m - 1], maps[m - 1])))
    return chain


def twisted_xmod(n=3):
    """C_n -> S3 with trivial boundary and S3 acting through its sign by inversion."""
    s3, cn = named("S3"), cyclic(n)
    _, sign = quotient(s3, s3.derived_subgroup)
    table = np.where(sign.images[:, None] == 0, np.arange(n)[None, :], cn.inv[None, :])
    return CrossedModule(cn, s3, Hom.trivial(cn, s3), Action(s3, cn, table))


def default_corpus():
    """Named 3-truncated simplicial groups used by the acceptance checks."""
    c2 = cyclic(2)
    s3 = named("S3")
    a3 = s3.derived_subgroup

    def c2_deg2(k=3):
        return dold_kan(chain_from_maps([Group.trivial(), Group.trivial(), c2], [[0], [0, 0]]),
                        k, name="gamma(C2[2])")

    return {
        "const-S3": lambda: constant(s3, 3),
        "nerve-C2-trivial": lambda: nerve(CrossedModule.trivial_map(c2, c2), 3),
        "nerve-C3-S3-twisted": lambda: nerve(twisted_xmod(3), 3),
        "gamma-C2-deg2": c2_deg2,
        "cosk-nerve-S3": lambda: nerve(CrossedModule.identity(s3), 2).coskeleton_level(),
        "cosk-gamma-C2": lambda: dold_kan(chain_from_maps(
            [c2, c2], [[0, 0]]), 2, name="gamma(C2->C2)").coskeleton_level(),
        "nerve-A3-S3-x-gamma": lambda: product_of(
            nerve(CrossedModule.inclusion(s3, a3), 3), c2_deg2()),
    }
