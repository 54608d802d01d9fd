"""Bundled algebras, one-parameter families, and representation-type certificates."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg as la
from .algebra import (AlgebraTable, Presentation, canonical_key, close_presentation,
                      quotient_by_ideal)
from .errors import (FactorRuleRefused, InputError, NoFormFound, QuotientMismatch,
                     RelationViolation, ReptypeError, Unstable, UnsupportedClass)
from .field import FieldSpec
from .frobenius import ar_translate_omega, find_frobenius_form
from .module import ModuleRep, is_indecomposable, is_isomorphic
from .resolution import (DEFAULT_CUTOFF, DEFAULT_DMAX, complexity_estimate, hilbert_growth,
                         minimal_resolution, periodicity, trivial_resolution)

# -- corpus ---------------------------------------------------------------------

_COMMUTE = "xy-yx"


# degree bounds: longest normal word plus slack for the completion overlaps
_C_BOUNDS = {("c5", 2): 8, ("c5", 3): 12, ("c6", 2): 8, ("c6", 3): 14}


def _c5(p: int) -> Presentation:
    return Presentation(FieldSpec(p), ("x", "y"), (f"x^{p}", f"y^{p}", f"({_COMMUTE})^{p}"),
                        degree_bound=_C_BOUNDS[("c5", p)], central=(_COMMUTE,),
                        name=f"c5_{p}")


def _c6(p: int) -> Presentation:
    return Presentation(FieldSpec(p), ("x", "y"),
                        (f"y^{p}", f"x^{p}-({_COMMUTE})", f"({_COMMUTE})^{p}"),
                        degree_bound=_C_BOUNDS[("c6", p)], central=(_COMMUTE,),
                        name=f"c6_{p}")


def _elab(p: int, rank: int, name: str) -> Presentation:
    names = ("x", "y", "z")[:rank]
    rels = [f"{g}^{p}" for g in names]
    rels += [f"{a}{b}-{b}{a}" for i, a in enumerate(names) for b in names[i + 1:]]
    return Presentation(FieldSpec(p), names, tuple(rels), degree_bound=rank * (p - 1) + 1,
                        name=name)


def _trunc(p: int) -> Presentation:
    return Presentation(FieldSpec(p), ("x",), (f"x^{p}",), degree_bound=p, name=f"poly_trunc_{p}")


_BUILDERS = {
    "kleinfour": lambda: _elab(2, 2, "kleinfour"),
    "elab_3_2": lambda: _elab(3, 2, "elab_3_2"),
    "elab_2_3": lambda: _elab(2, 3, "elab_2_3"),
    "dihedral8": lambda: Presentation(FieldSpec(2), ("x", "y"), ("x^2", "y^2", "xyxy-yxyx"),
                                      degree_bound=8, name="dihedral8"),
    "c5_2": lambda: _c5(2),
    "c5_3": lambda: _c5(3),
    "c6_2": lambda: _c6(2),
    "c6_3": lambda: _c6(3),
    "nfam_host": lambda: Presentation(FieldSpec(2), ("x", "y"), ("x^4", "y^2", "xy-yx"),
                                      degree_bound=8, name="nfam_host"),
    "poly_trunc_2": lambda: _trunc(2),
    "poly_trunc_3": lambda: _trunc(3),
    "poly_trunc_5": lambda: _trunc(5),
    # non-symmetric Frobenius algebra: its Nakayama automorphism has order 6
    "qci_7": lambda: Presentation(FieldSpec(7), ("x", "y"), ("x^2", "y^2", "xy-3yx"),
                                  degree_bound=4, name="qci_7"),
}
ALIASES = {"elab_2_2": "kleinfour"}


def corpus_names() -> list[str]:
    return list(_BUILDERS)


def corpus() -> list[Presentation]:
    return [build() for build in _BUILDERS.values()]


def corpus_presentation(name: str) -> Presentation:
    key = ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise InputError(f"unknown corpus algebra {name!r}; known: {', '.join(_BUILDERS)}")
    return _BUILDERS[key]()


@lru_cache(maxsize=None)
def corpus_algebra(name: str) -> AlgebraTable:
    return close_presentation(corpus_presentation(name))


def default_scan_fields(a: AlgebraTable) -> list[FieldSpec]:
    p = a.field.p
    return [FieldSpec(p, e) for e in (1, 2, 3)]


# -- families -------------------------------------------------------------------

FAMILY_KINDS = ("M", "N")


def _designated(a: AlgebraTable) -> None:
    if a.ngens < 2:
        raise RelationViolation(f"{a.name}: families need two designated generators x, y")
    eps = a.radical_data.augmentation
    vals = la.matmul(a.field, a.gen_vectors[:2], eps.reshape(-1, 1))
    if np.any(vals):
        raise RelationViolation(f"{a.name}: x and y must lie in the radical")


def _family_actions(a: AlgebraTable, x, y):
    n = x.shape[0]
    acts = [x, y] + [np.zeros((n, n), dtype=np.int64)] * (a.ngens - 2)
    return acts


def family_M(a: AlgebraTable, lam: int) -> ModuleRep:
    """x -> lam e12, y -> e12; further generators act by zero."""
    _designated(a)
    lam = int(lam)
    x = np.array([[0, lam], [0, 0]], dtype=np.int64)
    y = np.array([[0, 1], [0, 0]], dtype=np.int64)
    return ModuleRep(a, _family_actions(a, x, y), name=f"M[{a.field.format(lam)}]")


def family_N(a: AlgebraTable, lam: int) -> ModuleRep:
    """x -> lam (e12 + e23), y -> e13; further generators act by zero."""
    _designated(a)
    lam = int(lam)
    x = np.array([[0, lam, 0], [0, 0, lam], [0, 0, 0]], dtype=np.int64)
    y = np.array([[0, 0, 1], [0, 0, 0], [0, 0, 0]], dtype=np.int64)
    return ModuleRep(a, _family_actions(a, x, y), name=f"N[{a.field.format(lam)}]")


def family_member(a: AlgebraTable, kind: str, lam: int) -> ModuleRep:
    if kind == "M":
        return family_M(a, lam)
    if kind == "N":
        return family_N(a, lam)
    raise InputError(f"unknown family {kind!r}; expected one of {FAMILY_KINDS}")


def member_flag(kind: str, lam: int) -> str:
    """Reason a member is excluded from evidence, or ''."""
    if lam != 0:
        return ""
    if kind == "N":
        return "lambda = 0: x acts by zero, so the restriction to k[x] decomposes"
    return "lambda = 0: x acts by zero, so the module is inflated from A/(x)"


# -- scanning -------------------------------------------------------------------

@dataclass
class MemberRecord:
    field: str
    field_pe: tuple
    lam: int
    lam_label: str
    flagged: str = ""
    error: str = ""
    dim: int = 0
    module_hash: str = ""
    indecomposable: str = ""
    iso_class: int = -1
    period: int | None = None
    betti: list = field(default_factory=list)
    c_hat: int | None = None
    evidence_lower: int | None = None
    tau_fixed: bool | None = None


@dataclass
class FamilyReport:
    algebra_ref: str
    algebra_name: str
    algebra_hash: str
    canonical_key: str
    kind: str
    fields: list
    cutoff: int
    dmax: int
    seed: int
    trials: int
    members: list
    distinct_per_field: dict
    frobenius: dict

    def to_dict(self) -> dict:
        return asdict(self)


def scan_family(a: AlgebraTable, kind: str, fields=None, cutoff: int = DEFAULT_CUTOFF,
                dmax: int = DEFAULT_DMAX, seed: int = 0, trials: int = 64,
                algebra_ref: str = "") -> FamilyReport:
    """Build and analyse every family member over every listed field."""
    if kind not in FAMILY_KINDS:
        raise InputError(f"unknown family {kind!r}")
    _designated(a)
    fields = list(fields) if fields else default_scan_fields(a)
    members: list[MemberRecord] = []
    distinct: dict = {}
    frob: dict = {}
    depth = max(cutoff, dmax)
    for F in fields:
        af = a.base_change(F)
        try:
            fd = find_frobenius_form(af, seed=seed)
            frob[F.name] = fd.to_dict()
        except NoFormFound as exc:
            fd = None
            frob[F.name] = {"error": str(exc)}
        mods = []
        for lam in F.elements():
            rec = MemberRecord(F.name, (F.p, F.e), int(lam), F.format(lam),
                               flagged=member_flag(kind, int(lam)))
            members.append(rec)
            try:
                m = family_member(af, kind, lam)
            except ReptypeError as exc:
                rec.error = f"{type(exc).__name__}: {exc}"
                continue
            rec.dim = m.dim
            rec.module_hash = m.content_hash()
            rec.indecomposable = is_indecomposable(m, seed=seed).tag
            table = minimal_resolution(m, depth)
            per = periodicity(table, dmax, seed=seed, trials=trials)
            est = complexity_estimate(table, per)
            rec.period = per.period
            rec.betti = list(table.betti[:cutoff + 1])
            rec.c_hat = est.c_hat
            rec.evidence_lower = est.evidence_lower
            if fd is not None:
                tau = ar_translate_omega(m, fd)
                rec.tau_fixed = is_isomorphic(tau, m, seed=seed, trials=trials).verdict == "Yes"
            mods.append((rec, m))
        # iso classes by pairwise tests; class id = index of first member in the class
        reps: list = []
        for rec, m in mods:
            for cls, rm in reps:
                if is_isomorphic(m, rm, seed=seed, trials=trials).verdict == "Yes":
                    rec.iso_class = cls
                    break
            else:
                rec.iso_class = rec.lam
                reps.append((rec.lam, m))
        distinct[F.name] = len(reps)
    return FamilyReport(algebra_ref or a.name, a.name, a.content_hash(), canonical_key(a), kind,
                        [F.name for F in fields], cutoff, dmax, seed, trials, members,
                        distinct, frob)


# -- certificates -----------------------------------------------------------------

VERDICTS = ("WildEvidence", "WildAssumingFg", "TameConsistent", "Inconclusive")


@dataclass
class Certificate:
    verdict: str
    strategy: str
    algebra_ref: str
    algebra_hash: str
    canonical_key: str
    evidence: list
    hypotheses: list
    notes: list = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        try:
            return cls(**{k: data[k] for k in ("verdict", "strategy", "algebra_ref",
                                               "algebra_hash", "canonical_key", "evidence",
                                               "hypotheses")},
                       notes=data.get("notes", []), settings=data.get("settings", {}))
        except KeyError as exc:
            raise InputError(f"certificate is missing field {exc.args[0]!r}") from exc

    @property
    def is_wild(self) -> bool:
        return self.verdict in ("WildEvidence", "WildAssumingFg")


SPECIAL_BISERIAL_NOTE = "special-biserial algebras are tame (literature rule, not checked here)"


def _member_items(r: FamilyReport, rec: MemberRecord) -> list[dict]:
    base = {"algebra_ref": r.algebra_ref, "algebra_hash": r.algebra_hash,
            "field": list(rec.field_pe), "family": r.kind, "lambda": rec.lam,
            "module_hash": rec.module_hash}
    items = [
        {**base, "check": "indecomposable", "expected": rec.indecomposable},
        {**base, "check": "betti", "cutoff": r.cutoff, "expected": rec.betti},
        {**base, "check": "period", "dmax": r.dmax, "expected": rec.period},
    ]
    if rec.tau_fixed is not None:
        items.append({**base, "check": "tau_fixed", "expected": rec.tau_fixed})
    return items


def certify_wild_lemma(r: FamilyReport) -> Certificate:
    """Verdict from a family scan, following the fixed-length wildness criterion."""
    used = [m for m in r.members if not m.flagged and not m.error]
    notes = []
    skipped = [m for m in r.members if m.flagged or m.error]
    for m in skipped:
        notes.append(f"{m.field} lambda={m.lam_label} excluded: {m.flagged or m.error}")
    settings = {"cutoff": r.cutoff, "dmax": r.dmax, "seed": r.seed, "trials": r.trials,
                "fields": r.fields, "family": r.kind}

    def cert(verdict, evidence, hyps):
        return Certificate(verdict, "lemma-family", r.algebra_ref, r.algebra_hash,
                           r.canonical_key, evidence, hyps, notes, settings)

    if not used:
        return cert("Inconclusive", [], [])
    evidence = []
    for rec in used:
        evidence.extend(_member_items(r, rec))
    for fname in r.fields:
        count = sum(1 for m in used if m.field == fname)
        fpe = next(m.field_pe for m in used if m.field == fname) if count else None
        if count:
            evidence.append({"check": "distinct_classes", "algebra_ref": r.algebra_ref,
                             "algebra_hash": r.algebra_hash, "field": list(fpe),
                             "family": r.kind,
                             "lambdas": [m.lam for m in used if m.field == fname],
                             "expected": len({m.iso_class for m in used if m.field == fname})})
    dims = {m.dim for m in used}
    indec = all(m.indecomposable in ("AbsolutelyIndecomposable", "IndecomposableOverBaseField")
                for m in used)
    distinct = all(
        len({m.iso_class for m in used if m.field == f}) == sum(1 for m in used if m.field == f)
        for f in r.fields)
    growth = all(m.evidence_lower == 2 for m in used)
    tau_moves = all(m.tau_fixed is False for m in used)
    if indec and distinct and len(dims) == 1 and growth and tau_moves:
        n = len(used)
        hyps = [f"infinitude extrapolated from {n} members over finite fields "
                f"{', '.join(r.fields)}",
                "base field is finite, not algebraically closed",
                f"complexity >= 2 inferred from non-periodicity up to d={r.dmax} and a "
                f"strictly growing Betti tail up to n={max(r.cutoff, r.dmax)}"]
        return cert("WildEvidence", evidence, hyps)
    if all(m.period is not None for m in used):
        notes.append(SPECIAL_BISERIAL_NOTE)
        hyps = [f"periodicity observed on {len(used)} sampled members only; tameness is "
                f"not certified"]
        return cert("TameConsistent", evidence, hyps)
    failed = []
    if not indec:
        failed.append("some member decomposes")
    if not distinct:
        failed.append("isomorphic members within a field")
    if len(dims) != 1:
        failed.append("members of different dimension")
    if not growth:
        failed.append("complexity evidence >= 2 missing for some member")
    if not tau_moves:
        failed.append("tau fixes some member (or no Frobenius form)")
    notes.extend(failed)
    return cert("Inconclusive", evidence, [])


def certify_wild_theorem(a: AlgebraTable, cutoff: int = DEFAULT_CUTOFF,
                         algebra_ref: str = "") -> Certificate:
    """Growth of Ext(k, k) as a Krull-dimension proxy; wild (assuming Fg) when >= 3."""
    ref = algebra_ref or a.name
    table = trivial_resolution(a, cutoff)
    base = {"algebra_ref": ref, "algebra_hash": a.content_hash(), "field": [a.field.p, a.field.e]}
    evidence = [{**base, "check": "trivial_betti", "cutoff": cutoff, "expected": table.betti}]
    settings = {"cutoff": cutoff}
    key = canonical_key(a)
    try:
        degree, proxy = hilbert_growth(table.betti)
    except Unstable as exc:
        return Certificate("Inconclusive", "theorem-growth", ref, a.content_hash(), key,
                           evidence, [], [f"growth unstable: {exc}"], settings)
    evidence.append({**base, "check": "growth_degree", "cutoff": cutoff, "expected": degree})
    notes = [f"growth degree {degree}, Krull dimension proxy {proxy}"]
    if proxy >= 3:
        hyps = ["Fg assumed", f"growth degree from finite table (n <= {cutoff})"]
        return Certificate("WildAssumingFg", "theorem-growth", ref, a.content_hash(), key,
                           evidence, hyps, notes, settings)
    notes.append("proxy below 3: the growth criterion does not apply")
    return Certificate("Inconclusive", "theorem-growth", ref, a.content_hash(), key,
                       evidence, [f"growth degree from finite table (n <= {cutoff})"], notes,
                       settings)


def certify_factor_rule(a: AlgebraTable, ideal_gens, known: Certificate,
                        algebra_ref: str = "") -> Certificate:
    """Lift a wild verdict from A/(ideal_gens) to A."""
    if not known.is_wild:
        raise FactorRuleRefused(f"factor rule only propagates wildness, got {known.verdict}")
    gens = [g if isinstance(g, str) else None for g in ideal_gens]
    if any(g is None for g in gens):
        raise InputError("ideal generators must be given as expressions in the generators")
    quot = quotient_by_ideal(a, [a.element(g) for g in gens])
    qkey = canonical_key(quot) if not quot.is_zero else ""
    if qkey != known.canonical_key:
        raise QuotientMismatch(
            f"A/({', '.join(gens)}) has dimension {quot.dim}; its normalised structure constants "
            f"differ from those of {known.algebra_ref}")
    ref = algebra_ref or a.name
    item = {"check": "factor_quotient", "algebra_ref": ref, "algebra_hash": a.content_hash(),
            "field": [a.field.p, a.field.e], "ideal": gens, "quotient_ref": known.algebra_ref,
            "expected": qkey}
    notes = [f"factor-algebra rule via ideal <{', '.join(gens)}>: a wild factor algebra makes "
             f"the algebra wild"] + list(known.notes)
    return Certificate(known.verdict, "factor", ref, a.content_hash(), canonical_key(a),
                       [item] + list(known.evidence), list(known.hypotheses), notes,
                       {"quotient_strategy": known.strategy, **known.settings})


# -- reproducing a trail ----------------------------------------------------------

def resolve_algebra(ref: str) -> AlgebraTable:
    """Algebra named by ``corpus:NAME`` or ``file:PATH``."""
    if ref.startswith("corpus:"):
        return corpus_algebra(ALIASES.get(ref[7:], ref[7:]))
    if ref.startswith("file:"):
        from .io import load_presentation
        return close_presentation(load_presentation(ref[5:]))
    if ref in _BUILDERS or ref in ALIASES:
        return corpus_algebra(ALIASES.get(ref, ref))
    raise InputError(f"cannot resolve algebra reference {ref!r}")


def _recheck(item: dict, settings: dict, cache: dict):
    a = resolve_algebra(item["algebra_ref"])
    F = FieldSpec(*item["field"])
    af = a.base_change(F)
    # the hash may be recorded before or after a base change
    if item["algebra_hash"] not in (a.content_hash(), af.content_hash()):
        return None, "algebra hash differs"
    seed, trials = settings.get("seed", 0), settings.get("trials", 64)
    check = item["check"]
    if check == "trivial_betti":
        return trivial_resolution(af, item["cutoff"]).betti, ""
    if check == "growth_degree":
        return hilbert_growth(trivial_resolution(af, item["cutoff"]).betti)[0], ""
    if check == "factor_quotient":
        quot = quotient_by_ideal(af, [af.element(g) for g in item["ideal"]])
        return canonical_key(quot), ""
    if check == "distinct_classes":
        mods = [family_member(af, item["family"], lam) for lam in item["lambdas"]]
        reps = []
        for m in mods:
            if not any(is_isomorphic(m, r, seed=seed, trials=trials).verdict == "Yes"
                       for r in reps):
                reps.append(m)
        return len(reps), ""
    m = family_member(af, item["family"], item["lambda"])
    if m.content_hash() != item["module_hash"]:
        return None, "module hash differs"
    if check == "indecomposable":
        return is_indecomposable(m, seed=seed).tag, ""
    if check == "betti":
        key = ("res", item["algebra_ref"], tuple(item["field"]), item["family"], item["lambda"])
        depth = max(item["cutoff"], settings.get("dmax", 0))
        if key not in cache:
            cache[key] = minimal_resolution(m, depth)
        return cache[key].betti[:item["cutoff"] + 1], ""
    if check == "period":
        key = ("res", item["algebra_ref"], tuple(item["field"]), item["family"], item["lambda"])
        if key not in cache:
            cache[key] = minimal_resolution(m, max(item["dmax"], settings.get("cutoff", 0)))
        return periodicity(cache[key], item["dmax"], seed=seed, trials=trials).period, ""
    if check == "tau_fixed":
        fd = find_frobenius_form(af, seed=seed)
        tau = ar_translate_omega(m, fd)
        return is_isomorphic(tau, m, seed=seed, trials=trials).verdict == "Yes", ""
    raise InputError(f"unknown evidence check {check!r}")


def verify_trail(cert: Certificate) -> list[dict]:
    """Recompute every evidence item; one result dict per item."""
    results = []
    cache: dict = {}
    for item in cert.evidence:
        settings = cert.settings
        try:
            got, why = _recheck(item, settings, cache)
        except (ReptypeError, UnsupportedClass) as exc:
            got, why = None, f"{type(exc).__name__}: {exc}"
        ok = not why and _jsonable(got) == _jsonable(item["expected"])
        results.append({"check": item["check"], "ok": ok, "expected": item["expected"],
                        "got": _jsonable(got), "detail": why})
    return results


def _jsonable(x):
    def default(o):
        return o.tolist() if hasattr(o, "tolist") else str(o)
    return json.loads(json.dumps(x, default=default))


def certificate_digest(cert: Certificate) -> str:
    blob = json.dumps(cert.to_dict(), sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
