"""Command line interface: ``alr <command> [args] --input FILE``.

The input is a JSON workspace (see ``schemas/workspace-1.0.schema.json``).
Every command produces a JSON report whose text rendering is derived from it.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import jsonschema

from . import almost, cohom, oracle, seq
from .fgab import INFINITE, FGGroup, GroupHom, IntMatrix, Subgroup, index
from .liering import (InvalidLieRing, InvalidModule, LieModule, LieRing, NotAnIdeal,
                      adjoint_module, center, characteristic, is_cartan, is_ideal, is_subring,
                      iterated_center, lower_central_series, normaliser)
from .phom import PHomClass

SCHEMA_VERSION = "1.0"
WORKSPACE_SCHEMA = f"workspace-{SCHEMA_VERSION}.schema.json"
REPORT_SCHEMA = f"report-{SCHEMA_VERSION}.schema.json"

EXIT_OK, EXIT_FAILED, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 3

KINDS = ("groups", "rings", "modules", "subgroups", "maps", "sequences")


def load_schema(filename: str) -> dict:
    return json.loads(resources.files("alr").joinpath("schemas", filename).read_text("utf-8"))


class WorkspaceError(Exception):
    """Input could not be turned into a validated workspace."""

    def __init__(self, errors: list):
        super().__init__("; ".join(e["message"] for e in errors))
        self.errors = errors


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """A verdict the caller asked for came out negative or a hypothesis is missing."""


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Workspace:
    groups: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)   # name -> (owner name, Subgroup)
    maps: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    names: dict = field(default_factory=dict)       # object name -> generator names

    def kind_of(self, name: str):
        for kind in KINDS:
            if name in getattr(self, kind):
                return kind
        return None

    def carrier_of(self, name: str) -> FGGroup:
        kind = self.kind_of(name)
        if kind == "groups":
            return self.groups[name]
        if kind in ("rings", "modules"):
            return getattr(self, kind)[name].carrier
        raise UsageError(f"{name!r} is not a group, ring or module")

    def get(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            found = self.kind_of(name)
            if found:
                raise UsageError(f"{name!r} is a {found[:-1]}, expected a {kind[:-1]}")
            raise UsageError(f"unknown {kind[:-1]} {name!r}")
        return table[name]

    def subgroup(self, name: str) -> Subgroup:
        return self.get("subgroups", name)[1]

    def counts(self) -> dict:
        return {kind: len(getattr(self, kind)) for kind in KINDS}


def _line_of(text: str, name: str, occurrence: int = 0):
    found = list(re.finditer(r'"name"\s*:\s*"' + re.escape(name) + '"', text))
    if not found:
        return None
    m = found[min(occurrence, len(found) - 1)]
    return text.count("\n", 0, m.start()) + 1


def _gen_names(entry: dict) -> list:
    gens = entry["generators"]
    return [f"e{i}" for i in range(gens)] if isinstance(gens, int) else list(gens)


def _index_of(ref, names: list, what: str) -> int:
    if isinstance(ref, int):
        if ref >= len(names):
            raise ValueError(f"{what} index {ref} out of range")
        return ref
    if ref not in names:
        raise ValueError(f"unknown {what} {ref!r}")
    return names.index(ref)


def _vector(v, n: int, what: str) -> tuple:
    if len(v) != n:
        raise ValueError(f"{what} {v} has length {len(v)}, expected {n}")
    return tuple(v)


def _carrier(entry: dict, names: list) -> FGGroup:
    n = len(names)
    rels = [_vector(r, n, "relation") for r in entry.get("relations", [])]
    return FGGroup.from_relations(n, rels)


def _build_ring(entry: dict, names: list) -> LieRing:
    carrier = _carrier(entry, names)
    n = len(names)
    table = [[None] * n for _ in range(n)]
    for b in entry.get("bracket", []):
        i = _index_of(b["left"], names, "generator")
        j = _index_of(b["right"], names, "generator")
        if table[i][j] is not None:
            raise ValueError(f"bracket [{names[i]}, {names[j]}] given twice")
        table[i][j] = _vector(b["value"], n, "bracket value")
    entries = [(i, j, table[i][j]) for i in range(n) for j in range(n) if table[i][j] is not None]
    return LieRing.from_sparse(carrier, entries)


def _build_module(entry: dict, ring: LieRing, ring_names: list, names: list) -> LieModule:
    carrier = _carrier(entry, names)
    m = len(names)
    action = [[(0,) * m for _ in range(m)] for _ in range(ring.rank)]
    seen = set()
    for a in entry.get("action", []):
        i = _index_of(a["ring_generator"], ring_names, "ring generator")
        k = _index_of(a["module_generator"], names, "module generator")
        if (i, k) in seen:
            raise ValueError(f"action of {ring_names[i]} on {names[k]} given twice")
        seen.add((i, k))
        action[i][k] = _vector(a["value"], m, "action value")
    return LieModule(ring, carrier, action)


def _error(message: str, obj=None, line=None, path: str = "", axiom=None, witness=None) -> dict:
    return {"message": message, "object": obj, "line": line, "path": path, "axiom": axiom,
            "witness": witness}


def parse(text: str) -> Workspace:
    """Validate a JSON document and build every object in it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError([_error(f"syntax error: {exc.msg}", line=exc.lineno,
                                     path=f"column {exc.colno}")]) from None
    validator = jsonschema.Draft202012Validator(load_schema(WORKSPACE_SCHEMA))
    errs = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errs:
        out = []
        for e in errs:
            path = "/".join(str(p) for p in e.absolute_path)
            obj = None
            if len(e.absolute_path) >= 2 and isinstance(doc, dict):
                try:
                    obj = doc[e.absolute_path[0]][e.absolute_path[1]].get("name")
                except (KeyError, IndexError, TypeError, AttributeError):
                    obj = None
            out.append(_error(f"schema: {e.message}", obj, _line_of(text, obj) if obj else None,
                              path))
        raise WorkspaceError(out)

    ws = Workspace()
    errors = []
    seen = {}
    for kind in KINDS:
        for pos, entry in enumerate(doc.get(kind, [])):
            name = entry["name"]
            if name in seen:
                errors.append(_error(f"duplicate name {name!r} (also a {seen[name][0][:-1]})",
                                     name, _line_of(text, name, seen[name][1]), f"{kind}/{pos}"))
                seen[name] = (seen[name][0], seen[name][1] + 1)
            else:
                seen[name] = (kind, 1)
    if errors:
        raise WorkspaceError(errors)

    def fail(exc, kind, pos, name):
        path = f"{kind}/{pos}"
        line = _line_of(text, name)
        if isinstance(exc, (InvalidLieRing, InvalidModule)):
            for c in exc.report.failures():
                errors.append(_error(f"{c.axiom} fails", name, line, path, c.axiom,
                                     {"at": list(c.witness), "value": list(c.value)}))
        else:
            errors.append(_error(str(exc), name, line, path))

    def ref(kind, name, pos, target_kind):
        table = getattr(ws, target_kind)
        if name not in table:
            raise ValueError(f"dangling reference to {target_kind[:-1]} {name!r}")
        return table[name]

    for pos, entry in enumerate(doc.get("groups", [])):
        name = entry["name"]
        try:
            names = _gen_names(entry)
            ws.groups[name] = _carrier(entry, names)
            ws.names[name] = names
        except Exception as exc:  # noqa: BLE001 - collected as located errors
            fail(exc, "groups", pos, name)
    for pos, entry in enumerate(doc.get("rings", [])):
        name = entry["name"]
        try:
            names = _gen_names(entry)
            ws.rings[name] = _build_ring(entry, names)
            ws.names[name] = names
        except Exception as exc:  # noqa: BLE001
            fail(exc, "rings", pos, name)
    for pos, entry in enumerate(doc.get("modules", [])):
        name = entry["name"]
        try:
            ring = ref("modules", entry["ring"], pos, "rings")
            if entry.get("adjoint"):
                if "generators" in entry or "action" in entry or "relations" in entry:
                    raise ValueError("an adjoint module takes no generators, relations or action")
                ws.modules[name] = adjoint_module(ring)
                ws.names[name] = list(ws.names[entry["ring"]])
            else:
                if "generators" not in entry:
                    raise ValueError("a module needs generators unless it is adjoint")
                names = _gen_names(entry)
                ws.modules[name] = _build_module(entry, ring, ws.names[entry["ring"]], names)
                ws.names[name] = names
        except Exception as exc:  # noqa: BLE001
            fail(exc, "modules", pos, name)
    for pos, entry in enumerate(doc.get("subgroups", [])):
        name = entry["name"]
        try:
            owner = entry["of"]
            if ws.kind_of(owner) not in ("groups", "rings", "modules"):
                raise ValueError(f"dangling reference to {owner!r}")
            g = ws.carrier_of(owner)
            gens = [_vector(v, g.ambient_rank, "generator") for v in entry["generators"]]
            ws.subgroups[name] = (owner, g.subgroup(gens).canonical())
        except Exception as exc:  # noqa: BLE001
            fail(exc, "subgroups", pos, name)
    for pos, entry in enumerate(doc.get("maps", [])):
        name = entry["name"]
        try:
            src = ref("maps", entry["source"], pos, "modules")
            tgt = ref("maps", entry["target"], pos, "modules")
            cols = [_vector(v, tgt.dim, "image") for v in entry["images"]]
            if len(cols) != src.dim:
                raise ValueError(f"need {src.dim} images, got {len(cols)}")
            hom = GroupHom(src.carrier, tgt.carrier, IntMatrix.from_columns(cols, tgt.dim))
            ws.maps[name] = seq.ModuleMap(src, tgt, hom)
        except Exception as exc:  # noqa: BLE001
            fail(exc, "maps", pos, name)
    for pos, entry in enumerate(doc.get("sequences", [])):
        name = entry["name"]
        try:
            if "module" in entry:
                module = ref("sequences", entry["module"], pos, "modules")
                owner, w = ref("sequences", entry["submodule"], pos, "subgroups")
                if owner != entry["module"]:
                    raise ValueError(f"subgroup {entry['submodule']!r} is not in {owner!r}")
                ws.sequences[name] = seq.ShortExactSeq.from_submodule(module, w)
            else:
                i = ref("sequences", entry["i"], pos, "maps")
                p = ref("sequences", entry["p"], pos, "maps")
                ws.sequences[name] = seq.ShortExactSeq(i, p)
        except Exception as exc:  # noqa: BLE001
            fail(exc, "sequences", pos, name)
    if errors:
        raise WorkspaceError(errors)
    ws.source = doc
    return ws


def dump(ws: Workspace) -> dict:
    """A document that parses back to an equivalent workspace."""
    doc = {"schema_version": SCHEMA_VERSION}

    def rels(g: FGGroup) -> list:
        return [list(v) for v in g.relation_basis]

    doc["groups"] = [{"name": n, "generators": ws.names[n], "relations": rels(g)}
                     for n, g in ws.groups.items()]
    rings = []
    for n, r in ws.rings.items():
        names = ws.names[n]
        br = [{"left": names[i], "right": names[j], "value": list(r.bracket[i][j])}
              for i in range(r.rank) for j in range(i + 1, r.rank) if any(r.bracket[i][j])]
        rings.append({"name": n, "generators": names, "relations": rels(r.carrier),
                      "bracket": br})
    doc["rings"] = rings
    ring_names = {id(r): n for n, r in ws.rings.items()}
    modules = []
    for n, m in ws.modules.items():
        rn = ring_names[id(m.ring)]
        names, gnames = ws.names[n], ws.names[rn]
        act = [{"ring_generator": gnames[i], "module_generator": names[k],
                "value": list(m.action[i][k])}
               for i in range(m.ring.rank) for k in range(m.dim) if any(m.action[i][k])]
        modules.append({"name": n, "ring": rn, "generators": names,
                        "relations": rels(m.carrier), "action": act})
    doc["modules"] = modules
    doc["subgroups"] = [{"name": n, "of": owner, "generators": [list(v) for v in s.gens()]}
                        for n, (owner, s) in ws.subgroups.items()]
    module_names = {id(m): n for n, m in ws.modules.items()}
    doc["maps"] = [{"name": n, "source": module_names[id(f.source)],
                    "target": module_names[id(f.target)],
                    "images": [list(c) for c in f.hom.matrix.columns()]}
                   for n, f in ws.maps.items()]
    seqs = []
    for n, entry in ((e["name"], e) for e in ws.source.get("sequences", [])):
        seqs.append({k: entry[k] for k in ("name", "i", "p", "module", "submodule") if k in entry})
    doc["sequences"] = seqs
    return doc


def dumps(ws: Workspace) -> str:
    return json.dumps(dump(ws), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# report values


def _num(x):
    if x == INFINITE:
        return "infinite"
    return x


def _subgroup_json(s: Subgroup) -> dict:
    s = s.canonical()
    return {"generators": [list(v) for v in s.gens()], "rank": s.rank,
            "order": _num(s.order), "index": _num(index(s.ambient, s))}


def _class_json(c: PHomClass) -> list:
    return [[str(x) for x in row] for row in c.matrix]


def jsonable(x):
    """Convert computation results to plain JSON values, keeping field order."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return "infinite" if math.isinf(x) else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Subgroup):
        return _subgroup_json(x)
    if isinstance(x, PHomClass):
        return _class_json(x)
    if isinstance(x, FGGroup):
        return _group_json(x)
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return str(x)


def _group_json(g: FGGroup) -> dict:
    return {"description": g.describe(), "free_rank": g.free_rank,
            "torsion": list(g.divisors), "order": _num(g.order)}


def render_text(report: dict) -> str:
    lines = []

    def walk(value, indent, key):
        pad = "  " * indent
        label = f"{key}: " if key is not None else ""
        if isinstance(value, dict):
            if key is not None:
                lines.append(f"{pad}{key}:")
                indent += 1
            for k, v in value.items():
                walk(v, indent, k)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value) \
                and not all(isinstance(v, list) and not any(isinstance(w, (dict, list)) for w in v)
                            for v in value):
            lines.append(f"{pad}{label.rstrip()}")
            for v in value:
                if isinstance(v, dict):
                    lines.append(f"{pad}  -")
                    walk(v, indent + 2, None)
                else:
                    walk(v, indent + 1, "-")
        else:
            lines.append(f"{pad}{label}{json.dumps(value, ensure_ascii=False)}")

    walk(report, 0, None)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _need(args: list, count: int, usage: str) -> list:
    if len(args) != count:
        raise UsageError(f"usage: {usage}")
    return args


def _owner_ring(ws: Workspace, sub_name: str) -> tuple:
    owner, s = ws.get("subgroups", sub_name)
    if owner not in ws.rings:
        raise UsageError(f"subgroup {sub_name!r} does not live in a ring")
    return owner, ws.rings[owner], s


def _module_subgroup(ws: Workspace, module_name: str, sub_name: str) -> Subgroup:
    module = ws.get("modules", module_name)
    owner, s = ws.get("subgroups", sub_name)
    if s.ambient != module.carrier:
        raise UsageError(f"subgroup {sub_name!r} does not live in module {module_name!r}")
    return s


def _ring_subgroup(ws: Workspace, module_name: str, sub_name: str) -> Subgroup:
    module = ws.get("modules", module_name)
    owner, s = ws.get("subgroups", sub_name)
    if s.ambient != module.ring.carrier:
        raise UsageError(f"subgroup {sub_name!r} does not live in the ring of {module_name!r}")
    return s


def cmd_validate(ws: Workspace, args: list, opts) -> dict:
    _need(args, 0, "alr validate --input FILE")
    return {"valid": True, "objects": ws.counts()}


def cmd_invariants(ws: Workspace, args: list, opts) -> dict:
    (name,) = _need(args, 1, "alr invariants RING")
    ring = ws.get("rings", name)
    lcs = lower_central_series(ring)
    centers = [center(ring)]
    for n in range(2, ring.rank + 2):
        nxt = iterated_center(ring, n)
        if nxt == centers[-1]:
            break
        centers.append(nxt)
    subrings = []
    for sname, (owner, s) in ws.subgroups.items():
        if owner != name:
            continue
        sub = is_subring(ring, s)
        subrings.append({"name": sname, "subring": sub, "ideal": is_ideal(ring, s),
                         "normaliser": normaliser(ring, s),
                         "almost_normaliser": almost.almost_normaliser(ring, s),
                         "cartan": is_cartan(ring, s) if sub else False,
                         "almost_cartan": almost.is_almost_cartan(ring, s) if sub else False})
    return {"ring": name, "carrier": ring.carrier, "characteristic": characteristic(ring),
            "lower_central_series": {"verdict": lcs.verdict,
                                     "nilpotency_class": lcs.nilpotency_class,
                                     "rational_ranks": list(lcs.rational_ranks),
                                     "terms": list(lcs.terms)},
            "center": centers[0], "upper_central_series": centers,
            "almost_center": almost.almost_center(ring), "subgroups": subrings}


ALMOST_USAGE = ("alr almost contained H K | commensurable H K | centraliser MODULE B A | "
                "fixed MODULE H A | normaliser H | stabiliser MODULE W | center RING | chain MODULE")


def cmd_almost(ws: Workspace, args: list, opts) -> dict:
    if not args:
        raise UsageError(f"usage: {ALMOST_USAGE}")
    query, rest = args[0], args[1:]
    if query == "contained":
        h, k = _need(rest, 2, "alr almost contained H K")
        v = almost.almost_contained(ws.subgroup(h), ws.subgroup(k))
        return {"query": query, "holds": v.holds, "intersection": v.intersection,
                "index": _num(v.index), "counterexample": v.counterexample}
    if query == "commensurable":
        h, k = _need(rest, 2, "alr almost commensurable H K")
        return {"query": query, "holds": almost.commensurable(ws.subgroup(h), ws.subgroup(k))}
    if query == "centraliser":
        m, b, a = _need(rest, 3, "alr almost centraliser MODULE B A")
        res = almost.almost_centraliser_ring(ws.get("modules", m), _module_subgroup(ws, m, b),
                                             _module_subgroup(ws, m, a))
        return {"query": query, "result": res}
    if query == "fixed":
        m, h, a = _need(rest, 3, "alr almost fixed MODULE H A")
        res = almost.almost_centraliser_module(ws.get("modules", m), _ring_subgroup(ws, m, h),
                                               _module_subgroup(ws, m, a))
        return {"query": query, "result": res}
    if query == "normaliser":
        (h,) = _need(rest, 1, "alr almost normaliser H")
        _, ring, s = _owner_ring(ws, h)
        return {"query": query, "result": almost.almost_normaliser(ring, s)}
    if query == "stabiliser":
        m, w = _need(rest, 2, "alr almost stabiliser MODULE W")
        res = almost.almost_stabiliser(ws.get("modules", m), _module_subgroup(ws, m, w))
        return {"query": query, "result": res}
    if query == "center":
        (r,) = _need(rest, 1, "alr almost center RING")
        return {"query": query, "result": almost.almost_center(ws.get("rings", r))}
    if query == "chain":
        (m,) = _need(rest, 1, "alr almost chain MODULE")
        chain = almost.iterated_almost_centraliser(ws.get("modules", m))
        return {"query": query, "terms": list(chain.terms), "ranks": list(chain.ranks),
                "stabilized_at": chain.stabilized_at}
    raise UsageError(f"unknown almost query {query!r}; usage: {ALMOST_USAGE}")


def cmd_cohomology(ws: Workspace, args: list, opts) -> dict:
    (name,) = _need(args, 1, "alr cohomology MODULE")
    module = ws.get("modules", name)
    c, finite = cohom.h0(module)
    classical = {"Q": [cohom.classical_h(module, i) for i in range(3)]}
    p = characteristic(module.ring)
    if p and module.carrier.is_finite and module.carrier.exponent == p:
        classical[f"F_{p}"] = [cohom.classical_h(module, i, p) for i in range(3)]
    return {"module": name, "h0": {"subgroup": c, "finite": finite},
            "h1": cohom.h1(module).as_dict(), "classical": classical}


def cmd_sequence(ws: Workspace, args: list, opts) -> dict:
    (name,) = _need(args, 1, "alr sequence SEQUENCE")
    s = ws.get("sequences", name)
    t = seq.six_term(s)
    report = seq.verify_exactness(t)
    h1s = t.h1()
    out = {"sequence": name,
           "h0": {"sub": t.h0_sub, "mid": t.h0_mid, "quo": t.h0_quo},
           "h1": {"sub": h1s[0].as_dict(), "mid": h1s[1].as_dict(), "quo": h1s[2].as_dict()},
           "delta1": [{"generator": list(g), "class": c} for g, c in t.delta_images],
           "junctions": [{"name": j.name, "verdict": "EXACT" if j.exact else "NOT_EXACT",
                          "kind": j.kind, "witness": j.witness} for j in report.junctions],
           "exact": report.ok}
    return out


CHECKS = {
    "finite_index_isogeny": ("module", seq.finite_index_isogeny),
    "finite_quotient_embedding": ("module", seq.finite_quotient_embedding),
    "quo_almost_central": ("ring", seq.quo_almost_central),
    "res_injective": ("ring", seq.res_injective),
    "res_image_central": ("ring", seq.res_image_central),
}


def cmd_check(ws: Workspace, args: list, opts) -> dict:
    names = sorted(CHECKS) + ["cartan_supplement", "five_term"]
    if not args:
        raise UsageError("usage: alr check NAME ... with NAME one of " + ", ".join(names))
    name, rest = args[0], args[1:]
    if name == "cartan_supplement":
        r, i, c = _need(rest, 3, "alr check cartan_supplement RING IDEAL SUBRING")
        ring = ws.get("rings", r)
        subs = []
        for s in (i, c):
            owner, sub = ws.get("subgroups", s)
            if sub.ambient != ring.carrier:
                raise UsageError(f"subgroup {s!r} does not live in ring {r!r}")
            subs.append(sub)
        res = seq.cartan_supplement(ring, *subs)
    elif name == "five_term":
        m, s = _need(rest, 2, "alr check five_term MODULE SUBGROUP")
        try:
            rep = seq.five_term(ws.get("modules", m), _ring_subgroup(ws, m, s))
        except (seq.HypothesisViolated, NotAnIdeal) as exc:
            raise CheckFailed({"check": "five_term", "verdict": "HYPOTHESIS_VIOLATED",
                               "passed": False, "hypotheses": False, "details": {},
                               "note": str(exc)}) from None
        out = {"check": "five_term", "verdict": "PASS" if rep.ok else "FAIL",
               "passed": rep.ok, "hypotheses": True,
               "details": {"ideal": rep.ideal, "fixed": rep.fixed, "dims": rep.dims,
                           "inf_injective": rep.inf_injective,
                           "exact_middle": rep.exact_middle}, "note": ""}
        if not rep.ok:
            raise CheckFailed(out)
        return out
    elif name in CHECKS:
        where, fn = CHECKS[name]
        m, s = _need(rest, 2, f"alr check {name} MODULE SUBGROUP")
        sub = _module_subgroup(ws, m, s) if where == "module" else _ring_subgroup(ws, m, s)
        res = fn(ws.get("modules", m), sub)
    else:
        raise UsageError(f"unknown check {name!r}; one of " + ", ".join(names))
    out = {"check": res.name, "verdict": res.verdict, "passed": res.passed,
           "hypotheses": res.hypotheses, "details": res.details, "note": res.note}
    if res.verdict != "PASS":
        raise CheckFailed(out)
    return out


ORACLE_USAGE = ("alr oracle derivations MODULE | enumerate RING center|nilpotent|normaliser [H] "
                "| classical MODULE DEGREE PRIME | fields PRIME DEGREE "
                "| sample contained|commensurable H K [TRIALS]")


def _int(s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {s!r}") from None


def _elements(g: FGGroup, s: Subgroup, bound: int) -> frozenset:
    table = oracle.FiniteGroupTable(g, (), bound)
    return table.span(s.gens())


def cmd_oracle(ws: Workspace, args: list, opts) -> dict:
    if not args:
        raise UsageError(f"usage: {ORACLE_USAGE}")
    query, rest = args[0], args[1:]
    bound = opts.oracle_bound
    if query == "derivations":
        (m,) = _need(rest, 1, "alr oracle derivations MODULE")
        module = ws.get("modules", m)
        r, t = oracle.derivation_numbers(module)
        main = cohom.h1(module)
        out = {"query": query, "oracle": {"r": r, "t": t}, "main": {"r": main.r, "t": main.t},
               "agree": (r, t) == (main.r, main.t)}
    elif query == "enumerate":
        if len(rest) not in (2, 3):
            raise UsageError("usage: alr oracle enumerate RING center|nilpotent|normaliser [H]")
        ring = ws.get("rings", rest[0])
        what = rest[1]
        if what == "center":
            found = oracle.enumerate_and_check(ring, "CENTER", bound=bound)
            main = _elements(ring.carrier, center(ring), bound)
            out = {"oracle_size": len(found), "main_size": len(main), "agree": found == main}
        elif what == "nilpotent":
            found = oracle.enumerate_and_check(ring, "NILPOTENT", bound=bound)
            main = lower_central_series(ring).nilpotency_class
            out = {"oracle": found, "main": main, "agree": found == main}
        elif what == "normaliser" and len(rest) == 3:
            owner, s = ws.get("subgroups", rest[2])
            if s.ambient != ring.carrier:
                raise UsageError(f"subgroup {rest[2]!r} does not live in ring {rest[0]!r}")
            found = oracle.enumerate_and_check(ring, "NORMALISER", s.gens(), bound=bound)
            main = _elements(ring.carrier, normaliser(ring, s), bound)
            out = {"oracle_size": len(found), "main_size": len(main), "agree": found == main}
        else:
            raise UsageError("usage: alr oracle enumerate RING center|nilpotent|normaliser [H]")
        out = {"query": query, "ring": rest[0], "what": what, **out}
    elif query == "classical":
        m, i, p = _need(rest, 3, "alr oracle classical MODULE DEGREE PRIME")
        module = ws.get("modules", m)
        i, p = _int(i, "DEGREE"), _int(p, "PRIME")
        if i not in (0, 1):
            raise UsageError("enumeration covers degrees 0 and 1")
        found = oracle.enumerate_and_check(module.ring, "CLASSICAL_H", module, i, p, bound=bound)
        main = cohom.classical_h(module, i, p)
        out = {"query": query, "degree": i, "prime": p, "oracle": found, "main": main,
               "agree": found == main}
    elif query == "fields":
        p, n = _need(rest, 2, "alr oracle fields PRIME DEGREE")
        p, n = _int(p, "PRIME"), _int(n, "DEGREE")
        dim = oracle.field_derivations(p, n, bound=bound)
        out = {"query": query, "prime": p, "degree": n,
               "polynomial": oracle.find_irreducible(p, n), "derivations": dim,
               "agree": dim == 0}
    elif query == "sample":
        if len(rest) not in (3, 4):
            raise UsageError("usage: alr oracle sample contained|commensurable H K [TRIALS]")
        claim, h, k = rest[:3]
        trials = _int(rest[3], "TRIALS") if len(rest) == 4 else 200
        hs, ks = ws.subgroup(h), ws.subgroup(k)
        if claim == "contained":
            v = almost.almost_contained(hs, ks)
            rep = oracle.falsification_sampler(oracle.ALMOST_CONTAINED, trials, opts.seed, hs, ks,
                                               v.holds, v.index if v.holds else None)
        elif claim == "commensurable":
            rep = oracle.falsification_sampler(oracle.COMMENSURABLE, trials, opts.seed, hs, ks,
                                               almost.commensurable(hs, ks))
        else:
            raise UsageError("sample claims: contained, commensurable")
        out = {"query": query, **rep.as_dict(), "agree": rep.consistent}
    else:
        raise UsageError(f"unknown oracle query {query!r}; usage: {ORACLE_USAGE}")
    if not out["agree"]:
        raise CheckFailed(out)
    return out


COMMANDS = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "almost": cmd_almost,
    "cohomology": cmd_cohomology,
    "sequence": cmd_sequence,
    "check": cmd_check,
    "oracle": cmd_oracle,
}

_FAILURES = (seq.HypothesisViolated, seq.NotInH0, seq.NoPreimage, oracle.SizeBoundExceeded,
             oracle.ReduciblePolynomial, cohom.UnsupportedCoefficients)


def _report(command: str, args: list, code: int, result: dict, errors=None) -> dict:
    status = {EXIT_OK: "ok", EXIT_FAILED: "failed", EXIT_INTERNAL: "error",
              EXIT_USAGE: "usage"}[code]
    out = {"schema_version": SCHEMA_VERSION, "command": command, "arguments": list(args),
           "status": status, "exit_code": code, "result": jsonable(result)}
    if errors:
        out["errors"] = jsonable(errors)
    return out


def run(command: str, args: list, ws: Workspace, opts) -> dict:
    """Run a command on a parsed workspace and return the report."""
    if command not in COMMANDS:
        return _report(command, args, EXIT_USAGE, {}, [_error(f"unknown command {command!r}")])
    try:
        result = COMMANDS[command](ws, list(args), opts)
    except UsageError as exc:
        return _report(command, args, EXIT_USAGE, {}, [_error(str(exc))])
    except CheckFailed as exc:
        return _report(command, args, EXIT_FAILED, exc.args[0])
    except _FAILURES as exc:
        return _report(command, args, EXIT_FAILED, {},
                       [_error(f"{type(exc).__name__}: {exc}")])
    except Exception as exc:  # noqa: BLE001 - surfaced as an internal error report
        return _report(command, args, EXIT_INTERNAL, {},
                       [_error(f"{type(exc).__name__}: {exc}")])
    code = EXIT_FAILED if command == "sequence" and not result["exact"] else EXIT_OK
    return _report(command, args, code, result)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="alr", description="Almost cohomology of Lie rings over f.g. abelian groups.")
    ap.add_argument("command", help=", ".join(COMMANDS) + ", or dump")
    ap.add_argument("args", nargs="*", help="command arguments (object names, queries)")
    ap.add_argument("--input", "-i", help="workspace JSON file (default: stdin)")
    ap.add_argument("--object", "-o", help="object the command applies to")
    ap.add_argument("--format", "-f", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--oracle-bound", type=int, default=oracle.DEFAULT_BOUND)
    return ap


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "text":
        stream.write(render_text(report))
    else:
        stream.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        opts = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args = list(opts.args)
    if opts.object:
        # the object is the first operand; for query commands it follows the query word
        pos = 1 if opts.command in ("almost", "check", "oracle") else 0
        args.insert(min(pos, len(args)), opts.object)
    try:
        if opts.input:
            with open(opts.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        _emit(_report(opts.command, args, EXIT_USAGE, {}, [_error(str(exc))]), opts.format,
              sys.stdout)
        return EXIT_USAGE
    try:
        ws = parse(text)
    except WorkspaceError as exc:
        _emit(_report(opts.command, args, EXIT_FAILED, {"valid": False}, exc.errors),
              opts.format, sys.stdout)
        return EXIT_FAILED
    if opts.command == "dump":
        sys.stdout.write(dumps(ws))
        return EXIT_OK
    report = run(opts.command, args, ws, opts)
    _emit(report, opts.format, sys.stdout)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
