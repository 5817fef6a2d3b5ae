"""Versioned JSON workspace documents.

A workspace declares finite categories, strict 2-categories, bisieves,
bitopologies, category-valued presheaves, 2-category-valued homomorphism
data, and named check requests.  Composition tables are explicit arrays of
``[argument ids..., result id]``; 2-cells carry explicit boundary fields.
Loading validates cross-references (DanglingReference) and JSON shape
(ParseError); structural validity is checked by the named validators when
a check runs.
"""

import json

from .errors import DanglingReference, ParseError
from .fincat import FinCat
from .two_cat import Fin2Cat, from_fincat
from .sieves import Bisieve, Bitopology, representable
from .bicat3 import PsTwoFunctor, PsTwoNatTrans, representable_trihom, \
    strict_trihom

SCHEMA = "bistack-workspace/1"

_SECTIONS = ("cats", "two_cats", "bisieves", "bitopologies",
             "presheaves", "trihoms", "checks")


class WorkspaceDoc:
    """Parsed workspace: named structures plus the raw normalized document."""

    def __init__(self, raw, cats, two_cats, bisieves, bitopologies,
                 presheaves, trihoms, checks):
        self.raw = raw
        self.cats = cats
        self.two_cats = two_cats
        self.bisieves = bisieves
        self.bitopologies = bitopologies
        self.presheaves = presheaves
        self.trihoms = trihoms
        self.checks = checks


def _pairs_to_dict(rows, arity, where):
    out = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != arity + 1:
            raise ParseError("%s: expected [%d ids..., result], got %r"
                             % (where, arity, row))
        out[tuple(row[:-1]) if arity > 1 else row[0]] = row[-1]
    return out


def _dict_to_pairs(table):
    rows = []
    for key in sorted(table):
        args = list(key) if isinstance(key, tuple) else [key]
        rows.append(args + [table[key]])
    return rows


def _decode_cat(body, where):
    try:
        morphisms = body["morphisms"]
        return FinCat(body["objects"],
                      {m: st[0] for m, st in morphisms.items()},
                      {m: st[1] for m, st in morphisms.items()},
                      body["identity"],
                      _pairs_to_dict(body["comp"], 2, where + ".comp"))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError("%s: %s" % (where, exc))


def _encode_cat(c):
    return {"objects": sorted(c.objects),
            "morphisms": {m: [c.src[m], c.tgt[m]] for m in c.morphisms},
            "identity": dict(sorted(c.identity.items())),
            "comp": _dict_to_pairs(c.comp)}


def _decode_two_cat(body, where):
    try:
        ones = body["onecells"]
        twos = body["twocells"]
        return Fin2Cat(body["objects"],
                       {f: tuple(st) for f, st in ones.items()},
                       {a: tuple(st) for a, st in twos.items()},
                       body["identity1"], body["identity2"],
                       _pairs_to_dict(body["vcomp"], 2, where + ".vcomp"),
                       _pairs_to_dict(body["hcomp1"], 2, where + ".hcomp1"),
                       _pairs_to_dict(body["hcomp2"], 2, where + ".hcomp2"))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError("%s: %s" % (where, exc))


def _encode_two_cat(k):
    return {"objects": sorted(k.objects),
            "onecells": {f: list(st) for f, st in sorted(k.onecells.items())},
            "twocells": {a: list(st) for a, st in sorted(k.twocells.items())},
            "identity1": dict(sorted(k.identity1.items())),
            "identity2": dict(sorted(k.identity2.items())),
            "vcomp": _dict_to_pairs(k.vcomp),
            "hcomp1": _dict_to_pairs(k.hcomp1),
            "hcomp2": _dict_to_pairs(k.hcomp2)}


def _ref(pool, name, kind, where):
    if name not in pool:
        raise DanglingReference("%s: unknown %s %r" % (where, kind, name))
    return pool[name]


def _decode_bisieve(body, two_cats, where):
    k = _ref(two_cats, body.get("two_cat"), "two-category", where)
    try:
        return Bisieve(k, body["target"],
                       {d: set(fs) for d, fs in body["members"].items()},
                       _pairs_to_dict(body["tilde"], 2, where + ".tilde"),
                       _pairs_to_dict(body["sigma"], 2, where + ".sigma"))
    except (KeyError, TypeError) as exc:
        raise ParseError("%s: %s" % (where, exc))


def _encode_bisieve(name_of_two_cat, s):
    return {"two_cat": name_of_two_cat,
            "target": s.target,
            "members": {d: sorted(ms) for d, ms in sorted(s.members.items())},
            "tilde": _dict_to_pairs(s.tilde),
            "sigma": _dict_to_pairs(s.sigma)}


def _decode_trihom(body, two_cats, where):
    kind = body.get("kind")
    k = _ref(two_cats, body.get("two_cat"), "two-category", where)
    if kind == "representable":
        if body.get("at") not in k.objects:
            raise DanglingReference("%s: unknown object %r"
                                    % (where, body.get("at")))
        return representable_trihom(k, body["at"])
    if kind != "tables":
        raise ParseError("%s: unknown trihom kind %r" % (where, kind))
    try:
        values = {c: _decode_two_cat(v, "%s.values[%s]" % (where, c))
                  for c, v in body["values"].items()}
        for c in k.objects:
            if c not in values:
                raise DanglingReference("%s: no value at object %r"
                                        % (where, c))
        on1 = {}
        for f, tab in body["on1"].items():
            if f not in k.onecells:
                raise DanglingReference("%s: unknown 1-cell %r" % (where, f))
            e, d = k.onecells[f]
            on1[f] = PsTwoFunctor(values[d], values[e], tab["ob"],
                                  tab["on1"], tab["on2"])
        for f in k.onecells:
            if f not in on1:
                raise DanglingReference("%s: no action at 1-cell %r"
                                        % (where, f))
        on2 = {}
        for x, tab in body.get("on2", {}).items():
            if x not in k.twocells:
                raise DanglingReference("%s: unknown 2-cell %r" % (where, x))
            g, g2 = k.twocells[x]
            on2[x] = PsTwoNatTrans(on1[g], on1[g2], tab["comp"],
                                   tab.get("cell"))
        return strict_trihom(k, values, on1, on2)
    except (KeyError, TypeError) as exc:
        raise ParseError("%s: %s" % (where, exc))


def load_data(raw):
    """Build a WorkspaceDoc from already-parsed JSON data."""
    if not isinstance(raw, dict):
        raise ParseError("workspace root must be an object")
    if raw.get("schema") != SCHEMA:
        raise ParseError("unsupported schema %r (expected %r)"
                         % (raw.get("schema"), SCHEMA))
    for section in raw:
        if section not in _SECTIONS and section not in ("schema",
                                                        "mutation"):
            raise ParseError("unknown section %r" % section)
    cats = {n: _decode_cat(b, "cats.%s" % n)
            for n, b in raw.get("cats", {}).items()}
    two_cats = {n: _decode_two_cat(b, "two_cats.%s" % n)
                for n, b in raw.get("two_cats", {}).items()}
    bisieves = {n: _decode_bisieve(b, two_cats, "bisieves.%s" % n)
                for n, b in raw.get("bisieves", {}).items()}
    bitopologies = {}
    for n, b in raw.get("bitopologies", {}).items():
        where = "bitopologies.%s" % n
        k = _ref(two_cats, b.get("two_cat"), "two-category", where)
        covering = {}
        for c, names in b.get("covering", {}).items():
            covering[c] = [ _ref(bisieves, sn, "bisieve", where)
                            for sn in names ]
        bitopologies[n] = Bitopology(k, covering)
    presheaves = {}
    for n, b in raw.get("presheaves", {}).items():
        where = "presheaves.%s" % n
        if b.get("kind") != "representable":
            raise ParseError("%s: unknown presheaf kind %r"
                             % (where, b.get("kind")))
        k = _ref(two_cats, b.get("two_cat"), "two-category", where)
        if b.get("at") not in k.objects:
            raise DanglingReference("%s: unknown object %r"
                                    % (where, b.get("at")))
        presheaves[n] = representable(k, b["at"])
    trihoms = {n: _decode_trihom(b, two_cats, "trihoms.%s" % n)
               for n, b in raw.get("trihoms", {}).items()}
    checks = {}
    for n, b in raw.get("checks", {}).items():
        if not isinstance(b, dict) or "op" not in b:
            raise ParseError("checks.%s: missing op" % n)
        checks[n] = dict(b)
    doc = WorkspaceDoc(raw, cats, two_cats, bisieves, bitopologies,
                       presheaves, trihoms, checks)
    _validate_check_refs(doc)
    return doc


def _validate_check_refs(doc):
    pools = {"two_cat": doc.two_cats, "cat": doc.cats,
             "bisieve": doc.bisieves, "bitopology": doc.bitopologies,
             "presheaf": doc.presheaves, "trihom": doc.trihoms}
    for name, body in doc.checks.items():
        for field, pool in pools.items():
            ref = body.get(field)
            if ref is not None and ref not in pool:
                raise DanglingReference(
                    "checks.%s: unknown %s %r" % (name, field, ref))


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError("%s: line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg))
    return load_data(raw)


def save(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc.raw, fh, indent=2, sort_keys=True)
        fh.write("\n")


def normalize(raw):
    """The canonical byte form used for round-trip comparisons."""
    return json.dumps(raw, indent=2, sort_keys=True) + "\n"


def corpus_path(name):
    """Filesystem path of a bundled corpus document."""
    from importlib import resources
    return str(resources.files("bistack") / "corpus" / name)


def corpus_names():
    from importlib import resources
    folder = resources.files("bistack") / "corpus"
    return sorted(p.name for p in folder.iterdir()
                  if p.name.endswith(".site"))
