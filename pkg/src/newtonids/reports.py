"""Build, render and re-read reports.

Reports are plain dicts in which every number is an exact rational string
("3", "-1", "1/6").  Floating-point values may only appear below a
``diagnostics`` key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .invariants import (
    ASSERTED,
    PROBED,
    REFUTED,
    UNCHECKED,
    VERIFIED,
    DeterminantalGerm,
    HypothesisEntry,
    InvariantReport,
    PreconditionError,
    Term,
    chi_milnor_terms,
    euler_obstruction_from_polar,
    euler_obstruction_simplex,
    multiplicity,
)
from .newton import (
    NewtonPolyhedron,
    complement_volume,
    has_bounded_complement,
    linear_polyhedron,
    newton_of_matrix,
    newton_of_polynomial,
    positive_normals,
    restrict,
)
from .polynomial import PolyMatrix, format_polynomial
from .position import (
    INCONCLUSIVE,
    EquivalenceWitness,
    FamilyReport,
    PositionVerdict,
    equisingularity_report,
    normalize,
    position_probe,
)

ASSERTIONS = (
    "good-position",
    "strong-position",
    "function-position",
    "isolated-singularity",
    "determinantal-fiber",
    "prepolar",
)


@dataclass(frozen=True)
class Options:
    assertions: frozenset = frozenset()
    seed: int = 0
    truncation: int | None = None
    breakdown: bool = False


# ---------------------------------------------------------------------------
# hypothesis ledgers

def _structural(g: DeterminantalGerm) -> list[HypothesisEntry]:
    g.require_formula_range()
    return [
        HypothesisEntry("maximal-minors", VERIFIED, f"s = n = {g.n}"),
        HypothesisEntry("bounded-complement", VERIFIED, "Delta_A meets every coordinate axis"),
    ]


def _position_entry(g: DeterminantalGerm, mode: str, opts: Options, strict: bool) -> HypothesisEntry:
    name = f"{mode}-position"
    if name in opts.assertions:
        return HypothesisEntry(name, ASSERTED, "asserted by the user")
    v = position_probe(g.matrix, mode, opts.seed, samples=0)
    if v.refuted:
        ev = v.evidence[0]
        detail = f"weight {list(ev.weight)}, rows {list(ev.rows)}: {ev.detail}"
        if strict:
            raise PreconditionError(name, f"structural obstruction at {detail} (pass --assert {name} to override)")
        return HypothesisEntry(name, REFUTED, detail)
    if v.status == INCONCLUSIVE:
        return HypothesisEntry(name, UNCHECKED, "no clean equivalent matrix found by random search")
    return HypothesisEntry(name, PROBED, f"no structural obstruction on {v.faces_checked} compact facet(s)")


def _function_entry(opts: Options, generic_linear: bool) -> HypothesisEntry:
    if generic_linear:
        return HypothesisEntry("function-position", VERIFIED, "generic linear form by construction")
    if "function-position" in opts.assertions:
        return HypothesisEntry("function-position", ASSERTED, "asserted by the user")
    return HypothesisEntry("function-position", UNCHECKED, "not decidable here; pass --assert function-position")


# ---------------------------------------------------------------------------
# invariant reports

def germ_info(g: DeterminantalGerm) -> dict:
    return {"m": g.m, "n": g.n, "k": g.k, "s": g.s, "d": g.d, "delta_vertices": [list(v) for v in g.delta.vertices]}


def mult_report(g: DeterminantalGerm, opts: Options = Options()) -> InvariantReport:
    hyps = _structural(g)
    hyps.append(_position_entry(g, "good", opts, strict=False))
    value = multiplicity(g, opts.truncation)
    return InvariantReport("mult", {"multiplicity": value}, {}, hyps, {"germ": germ_info(g)})


def chi_report(g: DeterminantalGerm, delta_f: NewtonPolyhedron, opts: Options = Options(), command="chi", generic_linear=False) -> InvariantReport:
    hyps = _structural(g)
    hyps.append(HypothesisEntry("function-axes", VERIFIED if has_bounded_complement(delta_f) else REFUTED, "Delta_f meets every coordinate axis"))
    hyps.append(_position_entry(g, "strong", opts, strict=True))
    hyps.append(_function_entry(opts, generic_linear))
    terms = chi_milnor_terms(g, delta_f, opts.truncation)
    total = sum((t.value for t in terms), Fraction(0))
    key = "euler_obstruction" if command == "eu" else "chi_milnor"
    if total.denominator != 1:
        raise ArithmeticError(f"{key} = {total} is not an integer")
    rep = InvariantReport(command, {key: int(total)}, {key: terms}, hyps, {"germ": germ_info(g)})
    rep.check_totals()
    return rep


def eu_report(g: DeterminantalGerm, opts: Options = Options()) -> InvariantReport:
    return chi_report(g, linear_polyhedron(g.m), opts, "eu", generic_linear=True)


def nreg_report(
    g: DeterminantalGerm,
    delta_f: NewtonPolyhedron,
    fiber: DeterminantalGerm,
    opts: Options = Options(),
    fiber_coordinate: int | None = None,
) -> InvariantReport:
    if fiber.m != g.m - 1 or fiber.d != g.d - 1:
        raise ValueError(f"fiber germ must have m={g.m - 1}, d={g.d - 1}; got m={fiber.m}, d={fiber.d}")
    c = g.m - 1 if fiber_coordinate is None else fiber_coordinate
    f_fiber = restrict(delta_f, [i for i in range(g.m) if i != c])
    main = chi_report(g, delta_f, opts)
    sub = chi_report(fiber, f_fiber, opts)
    chi_x = main.values["chi_milnor"]
    chi_g = sub.values["chi_milnor"]
    d = g.d
    nu_x = (-1) ** (d - 1) * (chi_x - 1)
    nu_g = (-1) ** (d - 2) * (chi_g - 1)
    hyps = list(main.hypotheses) + [HypothesisEntry("fiber:" + h.name, h.status, h.detail) for h in sub.hypotheses]
    for name in ("determinantal-fiber", "prepolar"):
        status = ASSERTED if name in opts.assertions else UNCHECKED
        hyps.append(HypothesisEntry(name, status, "asserted by the user" if status == ASSERTED else "not decidable here"))
    values = {"chi_milnor": chi_x, "chi_milnor_fiber": chi_g, "nu": nu_x, "nu_fiber": nu_g, "n_reg": nu_x + nu_g}
    breakdown = {"chi_milnor": main.breakdown["chi_milnor"], "chi_milnor_fiber": sub.breakdown["chi_milnor"]}
    diag = {"germ": germ_info(g), "fiber_germ": germ_info(fiber), "fiber_coordinate": c + 1}
    return InvariantReport("nreg", values, breakdown, hyps, diag)


def eu_simplex_report(m: int, n: int, k: int) -> InvariantReport:
    hyps = [HypothesisEntry("simplex-complement", ASSERTED, "complement of Delta_A taken to be L")]
    return InvariantReport("eu-simplex", {"euler_obstruction": euler_obstruction_simplex(m, n, k)}, {}, hyps, {"m": m, "n": n, "k": k})


def eu_polar_report(polar: Sequence[int]) -> InvariantReport:
    return InvariantReport(
        "eu-polar",
        {"euler_obstruction": euler_obstruction_from_polar(polar)},
        {},
        [],
        {"polar_multiplicities": list(polar)},
    )


# ---------------------------------------------------------------------------
# dict conversion

def q(x) -> str:
    """Canonical rational string."""
    return str(Fraction(x))


def _numbers(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (int, Fraction)):
        return q(obj)
    if isinstance(obj, dict):
        return {k: _numbers(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_numbers(v) for v in obj]
    return obj


def term_dict(t: Term, full: bool) -> dict:
    d = {"q": q(t.q), "I": [q(i) for i in t.I], "a": q(t.a), "term": q(t.value)}
    if full:
        d["coefficient"] = q(t.coefficient)
        d["mixed_volume"] = q(t.mixed_volume)
    return d


def invariant_dict(rep: InvariantReport, full: bool = False) -> dict:
    diag = dict(rep.diagnostics)
    out = {
        "command": rep.command,
        "values": _numbers(rep.values),
        "breakdown": {k: [term_dict(t, full) for t in ts] for k, ts in rep.breakdown.items()},
        "hypotheses": [{"name": h.name, "status": h.status, "detail": h.detail} for h in rep.hypotheses],
    }
    for key in ("germ", "fiber_germ"):
        if key in diag:
            out[key] = _numbers(diag.pop(key))
    if diag:
        out["parameters"] = _numbers(diag)
    return out


def verdict_dict(v: PositionVerdict) -> dict:
    out = {
        "command": "position-probe",
        "mode": v.mode,
        "status": v.status,
        "faces_checked": q(v.faces_checked),
        "evidence": [
            {"weight": [q(w) for w in e.weight], "rows": [q(r) for r in e.rows], "reason": e.reason, "detail": e.detail}
            for e in v.evidence
        ],
    }
    if v.witness is not None:
        out["witness"] = witness_dict(v.witness)
    if v.diagnostics:
        out["diagnostics"] = {"float": v.diagnostics}
    return out


def witness_dict(w: EquivalenceWitness) -> dict:
    return {
        "P": [[q(x) for x in r] for r in w.P],
        "Q": [[q(x) for x in r] for r in w.Q],
        "matrix": [[format_polynomial(e) for e in r] for r in w.matrix.entries],
    }


def family_dict(r: FamilyReport) -> dict:
    return {
        "command": "family-check",
        "conclusion": r.conclusion,
        "delta_constant": r.delta.constant,
        "delta_witness": r.delta.witness,
        "generic_delta_vertices": _numbers([list(v) for v in r.delta.generic or ()]),
        "bounded": dict(r.bounded),
        "conditions": {k: {"status": s, "detail": d} for k, (s, d) in r.conditions.items()},
        "position": {t: {"status": v.status, "evidence": [e.detail for e in v.evidence]} for t, v in r.verdicts.items()},
    }


def newton_dict(a: PolyMatrix) -> dict:
    delta = newton_of_matrix(a)
    out = {
        "command": "newton",
        "dimension": q(delta.dim),
        "vertices": _numbers([list(v) for v in delta.vertices]),
        "bounded_complement": has_bounded_complement(delta),
    }
    if out["bounded_complement"]:
        out["complement_volume"] = q(complement_volume(delta))
        out["compact_facets"] = [
            {"vertices": _numbers([list(p) for p in f.vertices]), "weight": _numbers(list(f.weight)), "level": q(f.level)}
            for f in positive_normals(delta, facets_only=True)
        ]
    out["entries"] = [
        [_numbers([list(v) for v in newton_of_polynomial(e, a.nvars).vertices]) if not e.is_zero() else [] for e in row]
        for row in a.entries
    ]
    return out


def normalize_dict(a: PolyMatrix, seed: int) -> dict:
    return {"command": "normalize", "seed": q(seed), "witness": witness_dict(normalize(a, seed))}


def mixed_volume_dict(dim: int, slots: list[str], value: Fraction) -> dict:
    return {
        "command": "mixed-volume",
        "dimension": q(dim),
        "slots": list(slots),
        "mixed_volume": q(value),
        "normalized": q(value * factorial(dim)),
    }


# ---------------------------------------------------------------------------
# rendering

def render_json(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


def rational(s: str) -> Fraction:
    return Fraction(s)


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join("{:>%d}" % w for w in widths)
    return [fmt.format(*header)] + [fmt.format(*r) for r in rows]


def render_text(d: dict) -> str:
    lines = [f"command: {d.get('command', '?')}"]
    for key in ("status", "mode", "conclusion", "delta_constant"):
        if key in d:
            lines.append(f"{key}: {d[key]}")
    if "germ" in d:
        g = d["germ"]
        lines.append(f"germ: m={g['m']} n={g['n']} k={g['k']} s={g['s']} d={g['d']}")
    for k, v in sorted(d.get("values", {}).items()):
        lines.append(f"{k} = {v}")
    for key in ("mixed_volume", "normalized", "complement_volume"):
        if key in d:
            lines.append(f"{key} = {d[key]}")
    if "vertices" in d:
        lines.append("vertices: " + " ".join("(" + ",".join(v) + ")" for v in d["vertices"]))
    for f in d.get("compact_facets", []):
        pts = " ".join("(" + ",".join(v) + ")" for v in f["vertices"])
        lines.append(f"compact facet: weight ({','.join(f['weight'])}) level {f['level']}: {pts}")
    if "witness" in d:
        w = d["witness"]
        lines.append("P = " + str(w["P"]).replace("'", ""))
        lines.append("Q = " + str(w["Q"]).replace("'", ""))
        for row in w["matrix"]:
            lines.append("  " + " | ".join(row))
    for name, terms in sorted(d.get("breakdown", {}).items()):
        lines.append(f"breakdown {name}:")
        if not terms:
            lines.append("  []")
            continue
        full = "coefficient" in terms[0]
        header = ["q", "I", "a", "term"] + (["coefficient", "mixed_volume"] if full else [])
        rows = []
        for t in terms:
            row = [t["q"], "{" + ",".join(t["I"]) + "}", t["a"], t["term"]]
            if full:
                row += [t["coefficient"], t["mixed_volume"]]
            rows.append(row)
        lines += ["  " + r for r in _table(rows, header)]
    for e in d.get("evidence", []):
        lines.append(f"obstruction: weight ({','.join(e['weight'])}) rows {{{','.join(e['rows'])}}} {e['reason']}: {e['detail']}")
    for k, c in sorted(d.get("conditions", {}).items()):
        lines.append(f"condition {k}: {c['status']} ({c['detail']})")
    for h in d.get("hypotheses", []):
        lines.append(f"hypothesis {h['name']}: {h['status']} ({h['detail']})")
    return "\n".join(lines) + "\n"


def render(d: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(d)
    if fmt == "text":
        return render_text(d)
    raise ValueError(f"unknown format {fmt!r}")
