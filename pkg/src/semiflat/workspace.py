"""Workspace files: JSON documents naming semirings, modules, maps and the analyses to run.

Example::

    {
      "semirings": ["zmod:4", {"id": "C3", "catalog": "chain:3"}],
      "semimodules": [
        {"id": "Z4", "semiring": "zmod:4", "regular": "left"},
        {"id": "half", "submodule_of": "Z4", "members": ["0", "2"]},
        {"id": "Z2", "quotient_of": "Z4", "by": ["0", "2"], "side": "right"}
      ],
      "morphisms": [{"id": "twice", "dom": "Z4", "cod": "Z4", "map": [0, 2, 0, 2]}],
      "analyses": [{"op": "flatness", "subject": "Z2", "target": "Z4"}],
      "caps": {"tensor_cap": 20}
    }

Semiring entries are catalog ids or objects with explicit ``add``/``mul``
tables.  A submodule ``L`` also registers the map ``L.incl``; a quotient
``Q`` registers ``Q.proj``.  Elements may be given by label or index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

from .errors import BadCaps, BadParams, ParseError, SemiflatError, UnknownReference
from .semimodule import (
    LEFT,
    RIGHT,
    FiniteSemimodule,
    SubSemimodule,
    bourne_quotient,
    direct_sum,
    free_semimodule,
    regular_module,
    validate_morphism,
    validate_semimodule,
)
from .semiring import DEFAULT_ELEMENT_CAP, FiniteSemiring, parse_semiring_id, validate_semiring
from .tensor import DEFAULT_SLACK, DEFAULT_TENSOR_CAP

OPS = ("regularity", "matrix_scan", "tensor", "flatness", "s_flatness", "survey",
       "exactness", "sflatvon", "bez_neumann")


@dataclass(frozen=True)
class Caps:
    tensor_cap: int = DEFAULT_TENSOR_CAP
    slack: int = DEFAULT_SLACK
    enum_cap: int = 10
    module_size_bound: int = 4
    element_cap: int = DEFAULT_ELEMENT_CAP

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise BadCaps(f"{f.name} must be an integer, got {v!r}")
            minimum = 0 if f.name == "slack" else 1
            if v < minimum:
                raise BadCaps(f"{f.name} must be >= {minimum}, got {v}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Analysis:
    op: str
    params: dict
    name: str


@dataclass
class WorkspaceConfig:
    semirings: dict[str, FiniteSemiring] = field(default_factory=dict)
    semimodules: dict[str, FiniteSemimodule] = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    analyses: list[Analysis] = field(default_factory=list)
    caps: Caps = field(default_factory=Caps)

    def semiring(self, ident: str) -> FiniteSemiring:
        if ident in self.semirings:
            return self.semirings[ident]
        try:
            S = parse_semiring_id(ident, self.caps.element_cap)
        except (BadParams, KeyError, ValueError):
            raise UnknownReference(ident) from None
        self.semirings[ident] = S
        return S

    def module(self, ident: str) -> FiniteSemimodule:
        if ident not in self.semimodules:
            raise UnknownReference(ident)
        return self.semimodules[ident]

    def morphism(self, ident: str):
        if ident not in self.morphisms:
            raise UnknownReference(ident)
        return self.morphisms[ident]


def _element(M, x) -> int:
    if isinstance(x, bool):
        raise ParseError(f"bad element {x!r}")
    if isinstance(x, int):
        if not 0 <= x < M.size:
            raise ParseError(f"element index {x} out of range for {M.name}")
        return x
    try:
        return M.labels.index(str(x))
    except ValueError:
        raise ParseError(f"{M.name} has no element {x!r}") from None


def _require(entry: dict, *keys):
    for k in keys:
        if k not in entry:
            raise ParseError(f"entry {entry.get('id', entry)!r} is missing {k!r}")


def _add_semiring(cfg: WorkspaceConfig, entry):
    if isinstance(entry, str):
        cfg.semiring(entry)
        return
    _require(entry, "id")
    ident = entry["id"]
    if "catalog" in entry:
        S = cfg.semiring(entry["catalog"])
    else:
        _require(entry, "add", "mul")
        S = validate_semiring(entry["add"], entry["mul"], entry.get("zero", 0), entry.get("one", 1),
                              name=ident, labels=entry.get("labels"))
    cfg.semirings[ident] = S


def _retag(M, side: str, name: str):
    if M.side == side:
        return FiniteSemimodule(add=M.add, action=M.action, base=M.base, side=side, name=name, labels=M.labels)
    if not M.base.is_commutative():
        raise ParseError(f"{name}: cannot switch sides over non-commutative {M.base.name}")
    return FiniteSemimodule(add=M.add, action=M.action, base=M.base, side=side, name=name, labels=M.labels)


def _add_module(cfg: WorkspaceConfig, entry: dict):
    _require(entry, "id")
    ident = entry["id"]
    if ident in cfg.semimodules:
        raise ParseError(f"duplicate module id {ident!r}")
    side = entry.get("side")
    if side not in (None, LEFT, RIGHT):
        raise ParseError(f"{ident}: side must be 'left' or 'right'")
    if "regular" in entry:
        _require(entry, "semiring")
        M = regular_module(cfg.semiring(entry["semiring"]), entry["regular"])
    elif "free" in entry:
        _require(entry, "semiring")
        M = free_semimodule(cfg.semiring(entry["semiring"]), int(entry["free"]), side or LEFT,
                            cap=cfg.caps.element_cap)
    elif "submodule_of" in entry:
        parent = cfg.module(entry["submodule_of"])
        members = frozenset(_element(parent, x) for x in entry.get("members", []))
        sub = SubSemimodule(parent, members)
        try:
            inc = sub.inclusion()
        except SemiflatError as exc:
            raise ParseError(f"{ident}: {exc}") from None
        M = inc.dom
        cfg.morphisms[f"{ident}.incl"] = inc
    elif "quotient_of" in entry:
        parent = cfg.module(entry["quotient_of"])
        members = frozenset(_element(parent, x) for x in entry.get("by", []))
        M, pi = bourne_quotient(parent, members)
        cfg.morphisms[f"{ident}.proj"] = pi
    elif "sum" in entry:
        M = direct_sum(*[cfg.module(x) for x in entry["sum"]], cap=cfg.caps.element_cap).module
    else:
        _require(entry, "semiring", "add", "action")
        M = validate_semimodule(cfg.semiring(entry["semiring"]), side or LEFT, entry["add"], entry["action"],
                                name=ident, labels=entry.get("labels"))
    M = _retag(M, side or M.side, ident)
    cfg.semimodules[ident] = M
    # keep registered maps pointing at the renamed module
    for key in (f"{ident}.incl", f"{ident}.proj"):
        if key in cfg.morphisms:
            f = cfg.morphisms[key]
            dom = M if key.endswith(".incl") else f.dom
            cod = M if key.endswith(".proj") else f.cod
            cfg.morphisms[key] = type(f)(dom, cod, f.map)


def _add_morphism(cfg: WorkspaceConfig, entry: dict):
    _require(entry, "id", "dom", "cod", "map")
    dom, cod = cfg.module(entry["dom"]), cfg.module(entry["cod"])
    fmap = [_element(cod, x) for x in entry["map"]]
    if len(fmap) != dom.size:
        raise ParseError(f"{entry['id']}: map has {len(fmap)} entries, {dom.name} has {dom.size} elements")
    cfg.morphisms[entry["id"]] = validate_morphism(dom, cod, tuple(fmap))


_REFS = {
    "regularity": {"semiring": "semiring"},
    "matrix_scan": {"semiring": "semiring"},
    "tensor": {"right": "module", "left": "module"},
    "flatness": {"subject": "module", "target": "module"},
    "s_flatness": {"subject": "module"},
    "survey": {"semiring": "semiring"},
    "sflatvon": {"semiring": "semiring"},
    "bez_neumann": {"semiring": "semiring"},
    "exactness": {},
}


def _add_analysis(cfg: WorkspaceConfig, entry: dict, k: int):
    _require(entry, "op")
    op = entry["op"]
    if op not in OPS:
        raise ParseError(f"unknown analysis op {op!r}")
    params = {key: v for key, v in entry.items() if key not in ("op", "name")}
    for key, kind in _REFS[op].items():
        if key in params:
            getattr(cfg, kind)(params[key])
        elif not (op == "flatness" and key == "target" and "target_all" in params):
            raise ParseError(f"analysis {op!r} needs {key!r}")
    if op == "exactness":
        for ident in params.get("maps", []):
            cfg.morphism(ident)
    cfg.analyses.append(Analysis(op, params, entry.get("name", f"{k:02d}-{op}")))


def config_from_dict(doc: dict, caps_override: dict | None = None) -> WorkspaceConfig:
    if not isinstance(doc, dict):
        raise ParseError("workspace must be a JSON object")
    raw_caps = dict(doc.get("caps", {}))
    raw_caps.update(caps_override or {})
    unknown = set(raw_caps) - {f.name for f in fields(Caps)}
    if unknown:
        raise BadCaps(f"unknown caps {sorted(unknown)}")
    cfg = WorkspaceConfig(caps=Caps(**raw_caps))
    for entry in doc.get("semirings", []):
        _add_semiring(cfg, entry)
    for entry in doc.get("semimodules", []):
        _add_module(cfg, entry)
    for entry in doc.get("morphisms", []):
        _add_morphism(cfg, entry)
    for k, entry in enumerate(doc.get("analyses", [])):
        _add_analysis(cfg, entry, k)
    return cfg


def parse_workspace(path, caps_override: dict | None = None) -> WorkspaceConfig:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    return config_from_dict(doc, caps_override)
