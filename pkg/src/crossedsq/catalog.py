"""Small named groups used by tests, fixtures and the CLI."""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import SpecError
from .groups import Group, direct_product
from .words import Presentation


def cyclic(n):
    return Group.from_permutations(n, [tuple((i + 1) % n for i in range(n))] if n > 1 else [],
                                   name=f"C{n}")


def symmetric(n):
    if n < 2:
        return Group.trivial(name=f"S{n}")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return Group.from_permutations(n, gens, name=f"S{n}")


def alternating(n):
    if n < 3:
        return Group.trivial(name=f"A{n}")
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return Group.from_permutations(n, gens, name=f"A{n}")


def dihedral(order):
    """Dihedral group with ``order`` elements (symmetries of an order/2-gon)."""
    k = order // 2
    if order % 2 or k < 1:
        raise SpecError("dihedral order must be even and positive")
    if k == 1:
        return cyclic(2)
    if k == 2:
        return elementary_abelian(2, 2)
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return Group.from_permutations(k, [rot, ref], name=f"D{order}")


def elementary_abelian(p, r):
    g = cyclic(p)
    for _ in range(r - 1):
        g = direct_product(g, cyclic(p))
    g.name = f"C{p}^{r}"
    return g


def _presented(name, gens, rels):
    g = Presentation.parse(gens, rels).enumerate().group
    g.name = name
    return g


def quaternion():
    return _presented("Q8", ["i", "j"], ["i^4", "i^2j^-2", "j^-1iji"])


def dicyclic12():
    return _presented("Dic3", ["a", "x"], ["a^6", "a^3x^-2", "x^-1axa"])


def sl23():
    return _presented("SL(2,3)", ["a", "b"], ["a^3", "b^3", "(ab)^2(ba)^-2", "(ab)^4"])


_NAMED = {
    "1": lambda: Group.trivial(),
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "A5": lambda: alternating(5),
    "Q8": quaternion,
    "Dic3": dicyclic12,
    "SL(2,3)": sl23,
    "C2xC2": lambda: _named_product(cyclic(2), cyclic(2), "C2xC2"),
    "C2xC4": lambda: _named_product(cyclic(2), cyclic(4), "C2xC4"),
    "C2xS3": lambda: _named_product(cyclic(2), symmetric(3), "C2xS3"),
    "C3xS3": lambda: _named_product(cyclic(3), symmetric(3), "C3xS3"),
    "C2xC2xC2": lambda: elementary_abelian(2, 3),
    "C3xC3": lambda: _named_product(cyclic(3), cyclic(3), "C3xC3"),
    "C2xA4": lambda: _named_product(cyclic(2), alternating(4), "C2xA4"),
    "C2xQ8": lambda: _named_product(cyclic(2), quaternion(), "C2xQ8"),
}


def _named_product(a, b, name):
    g = direct_product(a, b)
    g.name = name
    return g


@lru_cache(maxsize=None)
def named(name):
    """Look up a group by name: C<n>, D<2n>, S<n>, A<n> or a fixed catalog name."""
    name = name.strip()
    if name in _NAMED:
        g = _NAMED[name]()
    elif m := re.fullmatch(r"C(\d+)", name):
        g = cyclic(int(m.group(1)))
    elif m := re.fullmatch(r"D(\d+)", name):
        g = dihedral(int(m.group(1)))
    elif m := re.fullmatch(r"S(\d)", name):
        g = symmetric(int(m.group(1)))
    elif m := re.fullmatch(r"A(\d)", name):
        g = alternating(int(m.group(1)))
    else:
        raise SpecError(f"unknown catalog group {name!r}")
    g.name = name
    return g


CATALOG_24 = ("1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4",
              "C2xC2xC2", "D8", "Q8", "C9", "C3xC3", "D10", "D12", "A4", "Dic3", "C2xS3",
              "D14", "D16", "C3xS3", "C2xQ8", "S4", "SL(2,3)", "C2xA4", "D24")


def catalog(max_order=24):
    """The built-in catalog of groups up to ``max_order``."""
    return [g for g in (named(n) for n in CATALOG_24) if g.order <= max_order]


def inclusion_triples(max_order=24):
    """(G, N1, N2) for every catalog G and unordered pair of normal subgroups."""
    out = []
    for g in catalog(max_order):
        subs = g.normal_subgroups()
        for i, a in enumerate(subs):
            for b in subs[i:]:
                out.append((g, a, b))
    return out
