"""Reading presentations and modules from JSON/TOML, and writing reports.

Presentation schema (JSON shown; TOML uses the same keys)::

    {
      "name": "dihedral8",                        # optional
      "field": {"p": 2, "e": 1, "modulus": [..]},  # e, modulus optional
      "generators": ["x", "y"],
      "relations": [
        [{"coeff": 1, "word": [0, 0]}],           # x^2 as a term list
        "y^2",                                    # or as an expression
        "xyxy - yxyx"
      ],
      "central": ["xy-yx"],                       # optional
      "degree_bound": 8
    }

A coefficient is an integer (read mod p) or a list of e integers, the
polynomial coefficients low to high.  Words are lists of generator indices.

Module schema::

    {
      "algebra_ref": "corpus:kleinfour",           # or "file:path/to/pres.json"
      "field": {"p": 2, "e": 2},                   # optional base change
      "dim": 2,
      "actions": {"x": [[0, 1], [0, 0]], "y": [[0, 1], [0, 0]]}
    }

Matrix entries are field codes (integers 0..q-1) or coefficient lists.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from . import noncomm as nc
from .algebra import Presentation
from .errors import InputError, ReptypeError
from .field import FieldSpec
from .module import ModuleRep


class SchemaError(InputError):
    pass


def _line_of(text: str, key: str) -> int | None:
    pat = re.compile(rf'^\s*"?{re.escape(key)}"?\s*[:=]|"{re.escape(key)}"\s*:', re.M)
    m = pat.search(text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _fail(source: str, text: str, path: str, key: str, msg: str):
    line = _line_of(text, key) if text else None
    where = f"{source}:{line}" if line else source
    raise SchemaError(f"{where}: field '{path}': {msg}")


def parse_document(text: str, source: str = "<input>", fmt: str | None = None) -> dict:
    """Decode JSON or TOML; errors cite the line."""
    if fmt is None:
        fmt = "toml" if source.endswith(".toml") else "json"
    if fmt == "toml":
        import tomli
        try:
            return tomli.loads(text)
        except tomli.TOMLDecodeError as exc:
            raise SchemaError(f"{source}: TOML syntax error: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}:{exc.lineno}: JSON syntax error: {exc.msg} "
                          f"(column {exc.colno})") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{source}:1: top level must be an object")
    return data


def parse_field(obj, source="<input>", text="") -> FieldSpec:
    if not isinstance(obj, dict) or "p" not in obj:
        _fail(source, text, "field", "field", "expected an object with at least 'p'")
    try:
        return FieldSpec(int(obj["p"]), int(obj.get("e", 1)), tuple(obj.get("modulus", ())))
    except (TypeError, ValueError) as exc:
        _fail(source, text, "field", "field", str(exc))


def _coeff(F: FieldSpec, c, path, source, text) -> int:
    if isinstance(c, bool):
        _fail(source, text, path, "coeff", "coefficient must be an integer or a list")
    if isinstance(c, int):
        return F.from_int(c)
    if isinstance(c, list) and all(isinstance(x, int) for x in c):
        if len(c) > F.e:
            _fail(source, text, path, "coeff", f"at most {F.e} polynomial coefficients")
        return F.from_poly(c)
    _fail(source, text, path, "coeff", "coefficient must be an integer or a list")


def presentation_from_dict(data: dict, source: str = "<input>", text: str = "") -> Presentation:
    for key in ("field", "generators", "relations", "degree_bound"):
        if key not in data:
            raise SchemaError(f"{source}:1: missing required field '{key}'")
    F = parse_field(data["field"], source, text)
    gens = data["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, str) and g for g in gens):
        _fail(source, text, "generators", "generators", "expected a list of names")
    rels = data["relations"]
    if not isinstance(rels, list):
        _fail(source, text, "relations", "relations", "expected a list")
    parsed = []
    for i, rel in enumerate(rels):
        path = f"relations[{i}]"
        if isinstance(rel, str):
            parsed.append(rel)
            continue
        if not isinstance(rel, list):
            _fail(source, text, path, "relations", "expected a term list or an expression")
        poly: dict = {}
        for j, term in enumerate(rel):
            tpath = f"{path}[{j}]"
            if not isinstance(term, dict) or "word" not in term:
                _fail(source, text, tpath, "relations", "term needs 'coeff' and 'word'")
            word = term["word"]
            if not isinstance(word, list) or not all(isinstance(w, int) for w in word):
                _fail(source, text, tpath + ".word", "word", "word must be a list of indices")
            if any(not 0 <= w < len(gens) for w in word):
                _fail(source, text, tpath + ".word", "word",
                      f"generator index out of range 0..{len(gens) - 1}")
            c = _coeff(F, term.get("coeff", 1), tpath + ".coeff", source, text)
            key = tuple(word)
            poly[key] = F.add(poly.get(key, 0), c)
        parsed.append({w: c for w, c in poly.items() if c})
    central = data.get("central", [])
    if not isinstance(central, list) or not all(isinstance(z, str) for z in central):
        _fail(source, text, "central", "central", "expected a list of expressions")
    bound = data["degree_bound"]
    if not isinstance(bound, int) or isinstance(bound, bool) or bound < 1:
        _fail(source, text, "degree_bound", "degree_bound", "expected a positive integer")
    try:
        return Presentation(F, tuple(gens), tuple(parsed), bound, tuple(central),
                            str(data.get("name", Path(source).stem)))
    except ReptypeError as exc:
        _fail(source, text, "relations", "relations", str(exc))


def load_presentation(path: str) -> Presentation:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    return presentation_from_dict(parse_document(text, str(p)), str(p), text)


def presentation_to_dict(pres: Presentation) -> dict:
    F = pres.field
    rels = [[{"coeff": list(F.to_poly(c)) if F.e > 1 else int(c), "word": list(w)}
             for w, c in sorted(r.items())] for r in pres.relations]
    out = {"name": pres.name,
           "field": {"p": F.p, "e": F.e, "modulus": list(F.modulus)},
           "generators": list(pres.generators), "relations": rels,
           "degree_bound": pres.degree_bound}
    if pres.central:
        out["central"] = [nc.format_poly(F, z, pres.generators) for z in pres.central]
    return out


def module_from_dict(data: dict, resolve, source: str = "<input>", text: str = "") -> ModuleRep:
    """Build a module; ``resolve`` maps an algebra_ref to an AlgebraTable."""
    for key in ("algebra_ref", "dim", "actions"):
        if key not in data:
            raise SchemaError(f"{source}:1: missing required field '{key}'")
    a = resolve(data["algebra_ref"])
    if "field" in data:
        a = a.base_change(parse_field(data["field"], source, text))
    F = a.field
    dim = data["dim"]
    acts = data["actions"]
    if not isinstance(acts, dict):
        _fail(source, text, "actions", "actions", "expected an object keyed by generator")
    missing = [g for g in a.generators if g not in acts]
    if missing:
        _fail(source, text, "actions", "actions", f"no matrix for generator(s) {missing}")
    mats = []
    for g in a.generators:
        rows = acts[g]
        path = f"actions.{g}"
        if not isinstance(rows, list) or len(rows) != dim or any(
                not isinstance(r, list) or len(r) != dim for r in rows):
            _fail(source, text, path, g, f"expected a {dim}x{dim} matrix")
        mats.append(np.array([[_coeff(F, c, path, source, text) for c in r] for r in rows],
                             dtype=np.int64).reshape(dim, dim))
    return ModuleRep(a, mats, name=str(data.get("name", Path(source).stem)))


def load_module(path: str, resolve) -> ModuleRep:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    return module_from_dict(parse_document(text, str(p)), resolve, str(p), text)


def module_to_dict(m: ModuleRep, algebra_ref: str) -> dict:
    F = m.field
    return {"algebra_ref": algebra_ref, "field": {"p": F.p, "e": F.e}, "dim": m.dim,
            "actions": {g: a.tolist() for g, a in zip(m.algebra.generators, m.actions)}}


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")
