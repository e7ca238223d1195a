"""JSON workspaces: named monoids, acts, presentations, generating sets and
certificates, each optionally carrying the recipe that built it.

Loading re-validates every table, re-executes every recipe and compares the
result with the stored table, and replays every stored certificate.  Saving
is canonical (sections and entries sorted by name, tables row-major, one
table row per line) so ``save(load(doc))`` reproduces a canonical document
byte for byte.
"""

from __future__ import annotations

import json

from . import families
from .act import (
    DerivationCertificate,
    FiniteAct,
    direct_product_act,
    free_act,
    is_generating_set,
    replay_certificate,
    right_regular_act,
    trivial_act,
    validate_act,
)
from .diagonal import diagonal_act
from .errors import ActForgeError, DanglingReference, ParseError, SizeLimitExceeded, ValidationError
from .monoid import (
    FiniteMonoid,
    adjoin_zero,
    attach_act_monoid,
    chain_semilattice,
    cyclic_group,
    direct_product_monoid,
    full_transformation_monoid,
    left_zero_monoid,
    semilattice2,
    symmetric_group,
    trivial_monoid,
    validate_monoid,
)
from .presentation import ActPresentation, ActRelation, FreeActElem, build_free_act, is_presentation_of
from .wreath import ConnectednessCertificate, replay_connectedness, wreath_act, wreath_monoid

FORMAT = "actforge-workspace"
VERSION = 1
SECTIONS = ("monoids", "acts", "presentations", "generating_sets", "certificates")


def _wreath_monoid(M, N, A):
    return wreath_monoid(M, N, A).monoid


def _wreath_act(A, B):
    return wreath_act(A, B)[1]


# op name -> builder; string arguments of the form {"ref": name} are resolved first
RECIPES = {
    "trivial_monoid": trivial_monoid,
    "cyclic_group": cyclic_group,
    "chain_semilattice": chain_semilattice,
    "semilattice2": semilattice2,
    "left_zero_monoid": left_zero_monoid,
    "full_transformation_monoid": full_transformation_monoid,
    "symmetric_group": symmetric_group,
    "family_monoid": families.family_monoid,
    "direct_product_monoid": direct_product_monoid,
    "adjoin_zero": adjoin_zero,
    "attach_act_monoid": attach_act_monoid,
    "wreath_monoid": _wreath_monoid,
    "right_regular_act": right_regular_act,
    "trivial_act": trivial_act,
    "free_act": lambda M, k: free_act(range(k), M),
    "natural_act": families.natural_act,
    "direct_product_act": direct_product_act,
    "diagonal_act": diagonal_act,
    "wreath_act": _wreath_act,
}


def _tuplify(x):
    return tuple(_tuplify(v) for v in x) if isinstance(x, list) else x


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, (list, tuple)) else x


def _refs(recipe):
    return [a["ref"] for a in recipe.get("args", []) if isinstance(a, dict)] if recipe else []


def monoid_entry(M, recipe=None):
    e = {"order": M.order, "identity": M.identity, "table": [list(r) for r in M.table]}
    if M.labels is not None:
        e["labels"] = [M.label(i) for i in range(M.order)]
    if recipe:
        e["recipe"] = recipe
    return e


def act_entry(A, monoid_name, recipe=None):
    e = {"monoid": monoid_name, "size": A.size, "action": [list(r) for r in A.action]}
    if A.labels is not None:
        e["labels"] = [A.label(a) for a in range(A.size)]
    if recipe:
        e["recipe"] = recipe
    return e


def elem_json(w):
    return {"gen": w.gen, "elem": w.elem}


def presentation_entry(P, monoid_name, act_name=None, assign=None, act=None):
    """Presentation entry; with an act and assignment the verdict is embedded."""
    e = {
        "monoid": monoid_name,
        "generators": _listify(P.gen_labels),
        "relations": [[elem_json(r.lhs), elem_json(r.rhs)] for r in P.relations],
    }
    if act_name is not None:
        e["act"] = act_name
        e["assign"] = list(assign)
        if act is not None:
            e["verdict"] = is_presentation_of(P, act, assign).to_json()
    return e


class Workspace:
    """Resolved objects plus the raw entries they came from."""

    def __init__(self):
        self.entries = {s: {} for s in SECTIONS}
        self.monoids = {}
        self.acts = {}
        self.presentations = {}
        self.generating_sets = {}
        self.certificates = {}

    # -- building -------------------------------------------------------

    def add_monoid(self, name, M, recipe=None):
        self._claim(name)
        self.entries["monoids"][name] = monoid_entry(M, recipe)
        self.monoids[name] = M
        return name

    def add_act(self, name, A, monoid_name, recipe=None):
        self._claim(name)
        self.entries["acts"][name] = act_entry(A, monoid_name, recipe)
        self.acts[name] = A
        return name

    def add_presentation(self, name, P, monoid_name, act_name=None, assign=None):
        self._claim(name)
        act = self.acts.get(act_name)
        self.entries["presentations"][name] = presentation_entry(P, monoid_name, act_name, assign, act)
        self.presentations[name] = (P, None if assign is None else tuple(assign))
        return name

    def add_generating_set(self, name, act_name, elems):
        self._claim(name)
        A = self.acts[act_name]
        self.entries["generating_sets"][name] = {"act": act_name, "elements": list(elems),
                                                 "generates": is_generating_set(A, elems)}
        self.generating_sets[name] = tuple(elems)
        return name

    def add_certificate(self, name, entry):
        self._claim(name)
        self.entries["certificates"][name] = entry
        self.certificates[name] = entry
        return name

    def _claim(self, name):
        if any(name in self.entries[s] for s in SECTIONS):
            raise ValidationError(f"duplicate entry name {name!r}", entry=name)

    def monoid_name_of(self, A):
        for name, M in self.monoids.items():
            if M is A.base or M == A.base:
                return name
        return None

    def to_document(self):
        doc = {"format": FORMAT, "version": VERSION}
        for s in SECTIONS:
            if self.entries[s]:
                doc[s] = {k: self.entries[s][k] for k in sorted(self.entries[s])}
        return doc


# --- canonical JSON --------------------------------------------------------


def _is_flat(x):
    return isinstance(x, list) and all(isinstance(v, (int, float, str, bool)) or v is None for v in x)


def _small(x):
    """Dicts/lists short enough to sit on one line (relation sides, steps)."""
    text = json.dumps(x, sort_keys=True, ensure_ascii=False)
    return len(text) <= 100 and "\n" not in text


def _dump(x, indent):
    pad = "  " * indent
    if isinstance(x, dict):
        if not x:
            return "{}"
        if _small(x) and all(not isinstance(v, (dict, list)) for v in x.values()):
            return json.dumps(x, sort_keys=True, ensure_ascii=False)
        items = [f'{pad}  {json.dumps(k, ensure_ascii=False)}: {_dump(x[k], indent + 1)}' for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if _is_flat(x) or (_small(x) and all(isinstance(v, (dict, list)) and _small(v) for v in x) and len(x) <= 2):
            return json.dumps(x, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))
        if not x:
            return "[]"
        items = [f"{pad}  {_dump(v, indent + 1)}" for v in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(doc):
    return _dump(doc, 0) + "\n"


def save_workspace(ws, path):
    text = dumps(ws.to_document() if isinstance(ws, Workspace) else ws)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return text


# --- loading ---------------------------------------------------------------


def parse_document(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1)
    if doc.get("format", FORMAT) != FORMAT:
        raise ParseError(f"unknown format {doc.get('format')!r}", line=1, column=1)
    for s in SECTIONS:
        if s in doc and not isinstance(doc[s], dict):
            raise ParseError(f"section {s!r} must be an object", line=1, column=1)
    return doc


def _need(entry, name, *keys):
    for k in keys:
        if k not in entry:
            raise ValidationError(f"{name}: missing field {k!r}", entry=name)


def _deps(section, entry):
    if section == "monoids":
        return _refs(entry.get("recipe"))
    if section == "acts":
        return [entry.get("monoid")] + _refs(entry.get("recipe"))
    if section == "presentations":
        return [entry.get("monoid")] + ([entry["act"]] if "act" in entry else [])
    if section == "generating_sets":
        return [entry.get("act")]
    if section == "certificates":
        return [entry[k] for k in ("presentation", "monoid", "act") if k in entry]
    return []


def _first_difference(t1, t2):
    if len(t1) != len(t2):
        return {"rows": [len(t1), len(t2)]}
    for i, (r1, r2) in enumerate(zip(t1, t2)):
        if tuple(r1) != tuple(r2):
            for j, (a, b) in enumerate(zip(r1, r2)):
                if a != b:
                    return {"cell": [i, j], "stored": a, "recomputed": b}
            return {"row": i}
    return None


def _run_recipe(ws, name, recipe):
    op = recipe.get("op")
    if op not in RECIPES:
        raise ValidationError(f"{name}: unknown recipe {op!r}", entry=name)
    args = []
    for a in recipe.get("args", []):
        if isinstance(a, dict):
            ref = a["ref"]
            args.append(ws.monoids.get(ref) or ws.acts.get(ref))
        else:
            args.append(a)
    try:
        return RECIPES[op](*args)
    except SizeLimitExceeded:
        raise
    except ActForgeError as e:
        raise ValidationError(f"{name}: recipe {op} failed: {e}", entry=name, **e.witness) from None
    except TypeError as e:
        raise ValidationError(f"{name}: recipe {op} has bad arguments: {e}", entry=name) from None


def _load_monoid(ws, name, e):
    _need(e, name, "order", "identity", "table")
    try:
        M = validate_monoid(int(e["order"]), e["table"], int(e["identity"]), e.get("labels"))
    except ActForgeError as err:
        raise ValidationError(f"monoid {name}: {err}", entry=name, **err.witness) from None
    if "recipe" in e:
        R = _run_recipe(ws, name, e["recipe"])
        if not isinstance(R, FiniteMonoid) or R.identity != M.identity or R.table != M.table:
            diff = _first_difference(M.table, R.table) if isinstance(R, FiniteMonoid) else None
            raise ValidationError(f"monoid {name}: recipe does not reproduce the table", entry=name, diff=diff)
    ws.monoids[name] = M


def _load_act(ws, name, e):
    _need(e, name, "monoid", "size", "action")
    M = ws.monoids[e["monoid"]]
    try:
        A = validate_act(M, int(e["size"]), e["action"], e.get("labels"))
    except ActForgeError as err:
        raise ValidationError(f"act {name}: {err}", entry=name, **err.witness) from None
    if "recipe" in e:
        R = _run_recipe(ws, name, e["recipe"])
        if not isinstance(R, FiniteAct) or R.action != A.action or R.base != M:
            diff = _first_difference(A.action, R.action) if isinstance(R, FiniteAct) else None
            raise ValidationError(f"act {name}: recipe does not reproduce the action", entry=name, diff=diff)
    ws.acts[name] = A


def _elem(d):
    return FreeActElem(int(d["gen"]), int(d["elem"]))


def _load_presentation(ws, name, e):
    _need(e, name, "monoid", "generators", "relations")
    M = ws.monoids[e["monoid"]]
    try:
        rels = [ActRelation(_elem(l), _elem(r)) for l, r in e["relations"]]
        P = ActPresentation(_tuplify(e["generators"]), M, rels)
    except (KeyError, TypeError, ValueError) as err:
        raise ValidationError(f"presentation {name}: malformed relation ({err})", entry=name) from None
    except ActForgeError as err:
        raise ValidationError(f"presentation {name}: {err}", entry=name) from None
    assign = tuple(e["assign"]) if "assign" in e else None
    if "act" in e:
        A = ws.acts[e["act"]]
        if assign is None or len(assign) != P.num_gens or any(not 0 <= a < A.size for a in assign):
            raise ValidationError(f"presentation {name}: assignment does not match the generators", entry=name)
        if not (A.base is M or A.base == M):
            raise ValidationError(f"presentation {name}: act and presentation use different monoids", entry=name)
    ws.presentations[name] = (P, assign)


def _load_generating_set(ws, name, e):
    _need(e, name, "act", "elements")
    A = ws.acts[e["act"]]
    elems = tuple(int(v) for v in e["elements"])
    if any(not 0 <= v < A.size for v in elems):
        raise ValidationError(f"generating set {name}: element out of range", entry=name)
    ws.generating_sets[name] = elems


def _load_certificate(ws, name, e):
    _need(e, name, "kind", "steps")
    try:
        ok = replay_entry(ws, e)
    except (KeyError, TypeError, ValueError, IndexError) as err:
        raise ValidationError(f"certificate {name}: malformed ({err})", entry=name) from None
    if not ok:
        raise ValidationError(f"certificate {name}: replay failed", entry=name)
    ws.certificates[name] = e


def replay_entry(ws, e):
    """Replay a stored derivation or connectedness certificate."""
    if e["kind"] == "derivation":
        P, _ = ws.presentations[e["presentation"]]
        F = build_free_act(P)
        a = P.free_index(_elem(e["lhs"]))
        b = P.free_index(_elem(e["rhs"]))
        return replay_certificate(F, P.index_pairs(), a, b, DerivationCertificate.from_json(e["steps"]))
    if e["kind"] == "connectedness":
        N = ws.monoids[e["monoid"]]
        U = [tuple(u) for u in e["U"]]
        cert = ConnectednessCertificate.from_json(e["steps"])
        return replay_connectedness(N, U, int(e["at"]), tuple(e["theta"]), tuple(e["phi"]), cert)
    raise ValueError(f"unknown certificate kind {e['kind']!r}")


_LOADERS = {
    "monoids": _load_monoid,
    "acts": _load_act,
    "presentations": _load_presentation,
    "generating_sets": _load_generating_set,
    "certificates": _load_certificate,
}


def load_document(doc):
    ws = Workspace()
    where = {}
    for s in SECTIONS:
        for name, entry in doc.get(s, {}).items():
            if not isinstance(entry, dict):
                raise ValidationError(f"{name}: entry must be an object", entry=name)
            if name in where:
                raise ValidationError(f"duplicate entry name {name!r}", entry=name)
            where[name] = s
            ws.entries[s][name] = entry
    state = {}

    def visit(name, trail):
        if state.get(name) == "done":
            return
        if state.get(name) == "active":
            raise ValidationError(f"cyclic reference through {name!r}", entry=name, cycle=trail + [name])
        state[name] = "active"
        s = where[name]
        entry = ws.entries[s][name]
        for dep in _deps(s, entry):
            if dep not in where:
                raise DanglingReference(f"{name} refers to undefined {dep!r}", entry=name, reference=dep)
            visit(dep, trail + [name])
        try:
            _LOADERS[s](ws, name, entry)
        except KeyError as e:
            raise ValidationError(f"{name}: reference {e.args[0]!r} has the wrong kind", entry=name) from None
        state[name] = "done"

    for s in SECTIONS:
        for name in sorted(ws.entries[s]):
            visit(name, [])
    return ws


def loads(text):
    return load_document(parse_document(text))


def load_workspace(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", line=0, column=0) from None
    return loads(text)
