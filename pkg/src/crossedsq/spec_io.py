"""Reading and writing JSON spec documents.

Group documents::

    {"kind": "table", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}
    {"kind": "perm", "degree": 3, "gens": ["(1,2)", [[1,2,3]]]}
    {"kind": "fp", "gens": ["a","b"], "rels": ["a^2","b^3","abab"]}
    {"kind": "named", "name": "S3"}

Cycles are 1-based.  A bare string is shorthand for a named group.

Homomorphisms are a full image list, or {"gens": [...], "images": [...]}
with generator elements (default: the source's own generators).  Actions
are a |P| x |M| table or one of "trivial", "conjugation" (P on itself or,
through an injective boundary, on M).

Crossed modules: {"M": group, "P": group, "d": hom, "action": action}.
Crossed squares: {"L","M","N","P": groups, "lam","lamp","mu","mup": homs,
"act_L","act_M","act_N": actions, "h": |M| x |N| table}, or
{"inclusion": group, "n1": [elements], "n2": [elements]}.
Corners: {"x": xmod, "y": xmod}, or {"group": group} for the identity corner.
Free squares: {"xmod": xmod, "f3": {name: element}}.
Simplicial groups: {"corpus": name}, {"kind": "constant", "group": g},
{"kind": "nerve", "xmod": x} or {"kind": "model", "skeleton": {...},
"target": group or simplicial document, "B1": {...}, "B2": {...}, "B3": {...}}.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .catalog import named
from .coset import DEFAULT_MAX_COSETS
from .errors import CrossedSqError, SpecError
from .groups import Action, Group, Hom
from .words import Presentation


def load_document(source):
    """A dict from a path, a JSON string, or an already-parsed document."""
    if isinstance(source, (dict, list)):
        return source
    text = str(source)
    p = Path(text)
    if not text.lstrip().startswith(("{", "[", '"')) and p.exists():
        text = p.read_text()
    elif re.fullmatch(r"\w+", text.strip()):
        return text.strip()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed spec document: {exc}") from None


def parse_cycles(spec, degree):
    """A permutation (0-based image tuple) from 1-based cycle notation."""
    if isinstance(spec, str):
        cycles = [[int(x) for x in c.split(",") if x.strip()]
                  for c in re.findall(r"\(([^()]*)\)", spec)]
        if not cycles and spec.strip() not in ("", "()"):
            raise SpecError(f"bad cycle notation {spec!r}")
    else:
        cycles = [list(c) for c in spec]
        if cycles and not isinstance(cycles[0], list):
            cycles = [cycles]
    img = list(range(degree))
    seen = set()
    for c in cycles:
        for x in c:
            if not 1 <= x <= degree or x in seen:
                raise SpecError(f"cycle {c} is not a bijection of degree {degree}")
            seen.add(x)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def parse_presentation(doc):
    gens = doc.get("gens")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise SpecError("fp group needs a list of generator names")
    return Presentation.parse(gens, doc.get("rels", []))


def parse_group(doc, max_cosets=DEFAULT_MAX_COSETS):
    """A concrete Group from a group-spec document (presented groups are enumerated)."""
    doc = load_document(doc)
    if isinstance(doc, str):
        return named(doc)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SpecError("group spec must be an object with a 'kind'")
    kind = doc["kind"]
    name = doc.get("name")
    if kind == "table":
        table = np.asarray(doc.get("table"), dtype=np.int64)
        n = doc.get("order", len(table))
        if table.shape != (n, n):
            raise SpecError("table shape does not match the stated order")
        try:
            return Group(table, name=name, labels=doc.get("labels"))
        except CrossedSqError as exc:
            raise SpecError(str(exc)) from None
    if kind == "perm":
        degree = int(doc["degree"])
        perms = [parse_cycles(c, degree) for c in doc.get("gens", [])]
        return Group.from_permutations(degree, perms, name=name)
    if kind == "fp":
        g = parse_presentation(doc).enumerate(max_cosets=max_cosets).group
        g.name = name
        return g
    if kind == "named":
        return named(doc["name"])
    raise SpecError(f"unknown group kind {kind!r}")


def group_document(g):
    """Table-kind document for a concrete group."""
    return {"kind": "table", "order": g.order, "table": g.table.tolist(),
            **({"name": g.name} if g.name else {})}


def dump_report(report, path=None):
    text = json.dumps(report, sort_keys=True, indent=2, default=_jsonable)
    if path:
        Path(path).write_text(text + "\n")
    return text


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


# -- structured documents ------------------------------------------------------

def _field(doc, key, what):
    if not isinstance(doc, dict) or key not in doc:
        raise SpecError(f"{what} document lacks {key!r}")
    return doc[key]


def _checked(fn, *args):
    try:
        return fn(*args)
    except SpecError:
        raise
    except CrossedSqError as exc:
        raise SpecError(str(exc)) from None


def parse_hom(doc, source, target):
    if isinstance(doc, dict):
        gens = doc.get("gens", source.gens)
        return _checked(Hom.from_images, source, target, _field(doc, "images", "hom"), gens)
    return _checked(Hom, source, target, doc)


def parse_action(doc, acting, acted, d=None):
    if doc == "trivial":
        return Action.trivial(acting, acted)
    if doc == "conjugation":
        if d is None and acting.order == acted.order:
            d = Hom.identity(acting)
        if d is None or not d.is_injective:
            raise SpecError("conjugation action needs an injective boundary")
        pos = np.full(acting.order, -1, dtype=np.int64)
        pos[d.images] = np.arange(acted.order)
        p = np.arange(acting.order)[:, None]
        table = pos[acting.conj(p, d.images[None, :])]
        if (table < 0).any():
            raise SpecError("the image of the boundary is not normal")
        return _checked(Action, acting, acted, table)
    return _checked(Action, acting, acted, doc)


def parse_xmod(doc, max_cosets=DEFAULT_MAX_COSETS):
    from .xmod import CrossedModule

    doc = load_document(doc)
    M = parse_group(_field(doc, "M", "crossed module"), max_cosets)
    P = parse_group(_field(doc, "P", "crossed module"), max_cosets)
    d = parse_hom(_field(doc, "d", "crossed module"), M, P)
    act = parse_action(doc.get("action", "conjugation"), P, M, d)
    return CrossedModule(M, P, d, act)


def parse_square(doc, max_cosets=DEFAULT_MAX_COSETS):
    """A crossed square, unchecked: call ``check`` on the result."""
    from .square import CrossedSquare, inclusion_square

    doc = load_document(doc)
    if "inclusion" in doc:
        g = parse_group(doc["inclusion"], max_cosets)
        subs = [g.normal_closure([int(x) for x in _field(doc, k, "square")]) for k in ("n1", "n2")]
        return _checked(inclusion_square, g, *subs)
    L, M, N, P = (parse_group(_field(doc, k, "square"), max_cosets) for k in "LMNP")
    lam = parse_hom(_field(doc, "lam", "square"), L, M)
    lamp = parse_hom(_field(doc, "lamp", "square"), L, N)
    mu = parse_hom(_field(doc, "mu", "square"), M, P)
    mup = parse_hom(_field(doc, "mup", "square"), N, P)
    acts = []
    for key, grp, d in (("act_L", L, lam.then(mu)), ("act_M", M, mu), ("act_N", N, mup)):
        spec = doc.get(key, "conjugation")
        acts.append(Action(P, grp, spec, check=False) if not isinstance(spec, str)
                    else parse_action(spec, P, grp, d))
    h = np.asarray(_field(doc, "h", "square"), dtype=np.int64)
    if h.shape != (M.order, N.order) or h.min(initial=0) < 0 or h.max(initial=0) >= L.order:
        raise SpecError("h must be an |M| x |N| table of elements of L")
    return CrossedSquare(L, M, N, P, lam, lamp, mu, mup, *acts, h, name=doc.get("name", ""))


def parse_corner(doc, max_cosets=DEFAULT_MAX_COSETS):
    from .tensor import Corner
    from .xmod import CrossedModule

    doc = load_document(doc)
    if "group" in doc:
        x = CrossedModule.identity(parse_group(doc["group"], max_cosets))
        return Corner(x, x)
    x = parse_xmod(_field(doc, "x", "corner"), max_cosets)
    y = parse_xmod(_field(doc, "y", "corner"), max_cosets)
    if y.P != x.P:
        raise SpecError("the two crossed modules of a corner need the same P")
    return Corner(x, CrossedModule(y.M, x.P, Hom(y.M, x.P, y.d.images, check=False),
                                   Action(x.P, y.M, y.act.table, check=False)))


def parse_free_square(doc, max_cosets=DEFAULT_MAX_COSETS):
    from .tensor import FreeSquareData

    doc = load_document(doc)
    x = parse_xmod(_field(doc, "xmod", "free square"), max_cosets)
    f3 = {str(k): int(v) for k, v in doc.get("f3", {}).items()}
    return _checked(FreeSquareData, x, f3)


def parse_simplicial(doc, max_cosets=DEFAULT_MAX_COSETS):
    """A finite simplicial group, or a QuotientModel for "model" documents."""
    from . import corpus
    from .freeskel import skeleton_from_document
    from .models import finite_quotient_model

    doc = load_document(doc)
    if isinstance(doc, str) or "corpus" in doc:
        name = doc if isinstance(doc, str) else doc["corpus"]
        table = corpus.default_corpus()
        if name not in table:
            raise SpecError(f"unknown corpus member {name!r}; known: {sorted(table)}")
        return table[name]()
    kind = _field(doc, "kind", "simplicial")
    k = int(doc.get("k", 3))
    if kind == "constant":
        return corpus.constant(parse_group(_field(doc, "group", "constant"), max_cosets), k)
    if kind == "nerve":
        return corpus.nerve(parse_xmod(_field(doc, "xmod", "nerve"), max_cosets), k)
    if kind == "model":
        sk = skeleton_from_document(_field(doc, "skeleton", "model"))
        tdoc = _field(doc, "target", "model")
        if isinstance(tdoc, dict) and ("corpus" in tdoc or tdoc.get("kind") in
                                       ("constant", "nerve", "model")):
            target = parse_simplicial(tdoc, max_cosets)
            target = getattr(target, "group", target)
        else:
            target = parse_group(tdoc, max_cosets)
        return _checked(finite_quotient_model, sk, target, doc.get("B1", {}),
                        doc.get("B2"), doc.get("B3"))
    raise SpecError(f"unknown simplicial kind {kind!r}")
