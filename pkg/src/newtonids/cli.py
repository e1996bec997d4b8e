"""Command-line front end.

Exit status: 0 on success, 1 when a hypothesis or precondition fails,
2 when an input cannot be parsed.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import reports
from .germfile import GermFile, GermFileError, load_germ
from .invariants import ConventionError, DeterminantalGerm, PreconditionError
from .mixed_volume import MVQuery, mixed_volume_coconvex
from .newton import FiberHypothesisError, UnboundedComplementError, linear_polyhedron, newton_of_matrix, newton_of_polynomial
from .polynomial import PolynomialParseError
from .position import NormalizationError, equisingularity_report, position_probe

COMMANDS = (
    "newton",
    "normalize",
    "mixed-volume",
    "mult",
    "chi",
    "eu",
    "eu-simplex",
    "eu-polar",
    "nreg",
    "position-probe",
    "family-check",
)


class UsageError(ValueError):
    """Bad command-line values; reported with exit status 2."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="newtonids", description="Invariants of determinantal singularities from Newton polyhedra.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*", help="positional values for eu-simplex (m n k) and eu-polar (m_0 m_1 ...)")
    p.add_argument("--input", help="germ file with the matrix")
    p.add_argument("--function-input", help="germ file holding the function (defaults to --input)")
    p.add_argument("--fiber-input", help="germ file with the determinantal fiber matrix (nreg)")
    p.add_argument("--fiber-coordinate", type=int, help="1-based coordinate eliminated in the fiber (default: last)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--truncation", type=int, help="truncation bound T for complement volumes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--assert", dest="assertions", action="append", default=[], choices=reports.ASSERTIONS, help="treat a hypothesis as given (repeatable)")
    p.add_argument("--breakdown", action="store_true", help="include coefficients and mixed volumes of every term")
    p.add_argument("--mode", choices=("general", "strong", "good"), default="general", help="position-probe mode")
    p.add_argument("--slots", help="comma separated slots for mixed-volume: A, f, L or polyhedron names; NAME^p repeats")
    return p


def _germ(gf: GermFile) -> DeterminantalGerm:
    a = gf.require_matrix()
    if a.param:
        raise UsageError(f"{gf.source}: this command takes a single germ, not a family (drop the param line)")
    return DeterminantalGerm(a, gf.rank)


def _need(path: str | None, flag: str) -> str:
    if not path:
        raise UsageError(f"{flag} is required for this command")
    return path


def _ints(values: list[str]) -> list[int]:
    out = []
    for v in values:
        for tok in re.split(r"[\s,\[\]]+", v):
            if tok:
                try:
                    out.append(int(tok))
                except ValueError:
                    raise UsageError(f"expected an integer, got {tok!r}") from None
    return out


def _slot_body(name: str, gf: GermFile, m: int | None):
    if name == "A":
        return newton_of_matrix(gf.require_matrix())
    if name == "f":
        return newton_of_polynomial(gf.require_function())
    if name in gf.polyhedra:
        return gf.polyhedra[name]
    if name == "L":
        if m is None:
            raise UsageError("cannot infer the dimension of L; give another slot first")
        return linear_polyhedron(m)
    raise UsageError(f"unknown slot {name!r}")


def _mixed_volume(ns, gf: GermFile) -> dict:
    if not ns.slots:
        raise UsageError("--slots is required for mixed-volume")
    parsed = []
    for tok in ns.slots.split(","):
        tok = tok.strip()
        name, _, power = tok.partition("^")
        if power and not power.isdigit():
            raise UsageError(f"bad power in slot {tok!r}")
        parsed.append((name, int(power) if power else 1))
    dims = [_slot_body(n, gf, None).dim for n, _ in parsed if n != "L"]
    m = dims[0] if dims else (len(gf.variables) or None)
    slots = [(_slot_body(n, gf, m), p) for n, p in parsed]
    value = mixed_volume_coconvex(MVQuery.build(slots, ns.truncation))
    return reports.mixed_volume_dict(slots[0][0].dim, [f"{n}^{p}" if p > 1 else n for n, p in parsed], value)


def run(ns: argparse.Namespace) -> dict:
    opts = reports.Options(frozenset(ns.assertions), ns.seed, ns.truncation, ns.breakdown)
    cmd = ns.command
    if cmd == "eu-simplex":
        vals = _ints(ns.args)
        if len(vals) != 3:
            raise UsageError("eu-simplex needs three integers m n k")
        return reports.invariant_dict(reports.eu_simplex_report(*vals))
    if cmd == "eu-polar":
        vals = _ints(ns.args)
        if not vals:
            raise UsageError("eu-polar needs at least one polar multiplicity")
        return reports.invariant_dict(reports.eu_polar_report(vals))
    if ns.args:
        raise UsageError(f"{cmd} takes no positional arguments")

    gf = load_germ(_need(ns.input, "--input"))
    if cmd == "mixed-volume":
        return _mixed_volume(ns, gf)
    if cmd == "newton":
        return reports.newton_dict(gf.require_matrix())
    if cmd == "normalize":
        return reports.normalize_dict(gf.require_matrix(), ns.seed)
    if cmd == "family-check":
        return reports.family_dict(equisingularity_report(gf.require_matrix(), ns.assertions, ns.seed))
    if cmd == "position-probe":
        return reports.verdict_dict(position_probe(_germ(gf).matrix, ns.mode, ns.seed))
    g = _germ(gf)
    if cmd == "mult":
        return reports.invariant_dict(reports.mult_report(g, opts), ns.breakdown)
    if cmd == "eu":
        return reports.invariant_dict(reports.eu_report(g, opts), ns.breakdown)
    fgf = load_germ(ns.function_input) if ns.function_input else gf
    f = newton_of_polynomial(fgf.require_function())
    if f.dim != g.m:
        raise UsageError(f"function has {f.dim} variables, matrix has {g.m}")
    if cmd == "chi":
        return reports.invariant_dict(reports.chi_report(g, f, opts), ns.breakdown)
    if cmd == "nreg":
        fiber = _germ(load_germ(_need(ns.fiber_input, "--fiber-input")))
        c = None if ns.fiber_coordinate is None else ns.fiber_coordinate - 1
        return reports.invariant_dict(reports.nreg_report(g, f, fiber, opts, c), ns.breakdown)
    raise AssertionError(cmd)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_intermixed_args(argv)
    try:
        out = run(ns)
    except (GermFileError, PolynomialParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed [{exc.hypothesis}]: {exc}", file=sys.stderr)
        return 1
    except (UnboundedComplementError, FiberHypothesisError, NormalizationError, ConventionError, ValueError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(reports.render(out, ns.format))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
