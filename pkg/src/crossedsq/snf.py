"""Smith normal form over the integers (diagonal only)."""

from __future__ import annotations


def smith_diagonal(rows, ncols=None):
    """Nonzero diagonal of the Smith normal form, each dividing the next.

    ``rows`` is a list of integer lists; Python ints keep the arithmetic exact.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if ncols is None:
        ncols = max((len(r) for r in a), default=0)
    diag = []
    while a and ncols:
        # pivot: smallest nonzero absolute entry
        best = None
        for i, r in enumerate(a):
            for j, v in enumerate(r):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        for r in a:
            r[0], r[pj] = r[pj], r[0]
        while True:
            p = a[0][0]
            done = True
            for i in range(1, len(a)):
                q = a[i][0] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                if a[i][0]:
                    done = False
            for j in range(1, ncols):
                q = a[0][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[0]
                if a[0][j]:
                    done = False
            if done:
                # the pivot must also divide the rest of the matrix
                bad = next(((i, j) for i in range(1, len(a)) for j in range(1, ncols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                a[0] = [x + y for x, y in zip(a[0], a[i])]
                continue
            # move the smallest remaining entry of the pivot row/column into place
            cand = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
            cand += [(abs(a[0][j]), 0, j) for j in range(ncols) if a[0][j]]
            _, i, j = min(cand)
            a[0], a[i] = a[i], a[0]
            for r in a:
                r[0], r[j] = r[j], r[0]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:] if any(r[1:])]
        ncols -= 1
    return diag


def abelian_invariants_from_relations(rows, ngens):
    """Invariant factors of Z^ngens / rowspace; free factors reported as 0.

    Ascending, with 0s (infinite cyclic factors) last; trivial factors dropped.
    """
    diag = smith_diagonal(rows, ngens)
    torsion = sorted(d for d in diag if d > 1)
    return torsion + [0] * (ngens - len(diag))
