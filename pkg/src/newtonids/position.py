"""Matrix equivalence, structural general-position probes and family checks.

Position conditions quantify over dimensions of algebraic sets, which we do
not compute.  The probes only look for obstructions that can be read off the
shape of the lowest-order matrices a^lambda:

* a row of a^lambda that vanishes identically;
* all maximal minors of a row block vanishing identically (degenerate set is
  the whole torus);
* a maximal minor that is a single non-zero monomial, which makes the
  degenerate set empty in the torus even though it should have positive
  dimension.

Anything else yields ``NoObstructionFound``, never a positive certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from ._linalg import det
from .newton import (
    UnboundedComplementError,
    has_bounded_complement,
    newton_of_matrix,
    newton_of_polynomial,
    newton_polyhedron,
    positive_normals,
)
from .polynomial import PolyMatrix, matrix_lowest_order, matrix_support, minor, specialize_parameter, triple_product

REFUTED = "Refuted"
NO_OBSTRUCTION = "NoObstructionFound"
ASSERTED = "Asserted"
INCONCLUSIVE = "Inconclusive"

SAMPLE_POINTS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(7))


class NormalizationError(RuntimeError):
    """No Delta-normal equivalent matrix was found within the attempt budget."""


# ---------------------------------------------------------------------------
# equivalence

def _identity(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class EquivalenceWitness:
    P: tuple[tuple[Fraction, ...], ...]
    Q: tuple[tuple[Fraction, ...], ...]
    matrix: PolyMatrix

    def __post_init__(self):
        P = tuple(tuple(Fraction(x) for x in r) for r in self.P)
        Q = tuple(tuple(Fraction(x) for x in r) for r in self.Q)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        if det(P) == 0 or det(Q) == 0:
            raise ValueError("equivalence needs invertible P and Q")

    def check(self, a: PolyMatrix) -> bool:
        return triple_product(self.P, a, self.Q) == self.matrix


def is_delta_normal(a: PolyMatrix) -> bool:
    """True iff every non-zero entry has the Newton polyhedron of the whole matrix."""
    target = newton_of_matrix(a)
    m = a.nvars
    return all(
        newton_of_polynomial(e, m) == target
        for row in a.entries
        for e in row
        if not e.is_zero()
    )


def _random_invertible(rng: random.Random, n: int, lo: int = -3, hi: int = 3):
    while True:
        mat = tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(n))
        if det(mat) != 0:
            return mat


def normalize(a: PolyMatrix, seed: int = 0, budget: int = 1000, accept=None) -> EquivalenceWitness:
    """Search for small-integer P, Q with P*A*Q Delta_A-equivalent to A.

    ``accept`` optionally adds a further test on the candidate matrix.
    """
    if a.is_zero():
        raise ValueError("cannot normalise the zero matrix")
    n, k = a.shape
    accept = accept or (lambda _m: True)
    if is_delta_normal(a) and accept(a):
        return EquivalenceWitness(_identity(n), _identity(k), a)
    rng = random.Random(seed)
    for _ in range(budget):
        P = _random_invertible(rng, n)
        Q = _random_invertible(rng, k)
        cand = triple_product(P, a, Q)
        if is_delta_normal(cand) and accept(cand):
            return EquivalenceWitness(P, Q, cand)
    raise NormalizationError(f"no Delta-normal equivalent found in {budget} attempts (seed {seed})")


# ---------------------------------------------------------------------------
# probes

@dataclass(frozen=True)
class Obstruction:
    weight: tuple[int, ...]
    rows: tuple[int, ...]  # 1-based
    reason: str
    detail: str = ""


@dataclass
class PositionVerdict:
    status: str
    mode: str
    evidence: list[Obstruction] = field(default_factory=list)
    faces_checked: int = 0
    witness: EquivalenceWitness | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


def _row_block_obstruction(al: PolyMatrix, rows: Sequence[int], m: int, check_monomial: bool) -> tuple[str, str] | None:
    k = al.shape[1]
    r = len(rows)
    for i in rows:
        if all(e.is_zero() for e in al.entries[i]):
            return "zero-row", f"row {i + 1} of the lowest-order matrix vanishes"
    minors = [(cols, minor(al, list(rows), list(cols))) for cols in combinations(range(k), r)]
    if all(mi.is_zero() for _, mi in minors):
        return "vanishing-minors", f"all {r}-minors vanish identically"
    if check_monomial and m - (k - r + 1) >= 1:
        for cols, mi in minors:
            if mi.is_monomial():
                return "monomial-minor", f"minor on columns {[c + 1 for c in cols]} is the monomial {mi}; no degenerate points in the torus"
    return None


def _sample_ranks(al: PolyMatrix, rng: np.random.Generator, samples: int) -> dict:
    n, k = al.shape
    ranks = []
    for _ in range(samples):
        pt = np.exp(1j * rng.uniform(0, 2 * np.pi, al.nvars)) * rng.uniform(0.5, 2.0, al.nvars)
        vals = np.array([[complex(e.evaluate(pt)) for e in row] for row in al.entries])
        ranks.append(int(np.linalg.matrix_rank(vals, tol=1e-9)))
    return {"min_rank": min(ranks), "max_rank": max(ranks), "samples": samples}


def _probe(a: PolyMatrix, mode: str, seed: int, samples: int) -> PositionVerdict:
    if a.param:
        raise ValueError("specialise the family parameter before probing")
    delta = newton_of_matrix(a)
    if not has_bounded_complement(delta):
        raise UnboundedComplementError("position probes need a Newton polyhedron with bounded complement")
    n, _ = a.shape
    m = a.nvars
    faces = positive_normals(delta, facets_only=True)
    rng = np.random.default_rng(seed)
    verdict = PositionVerdict(NO_OBSTRUCTION, mode, faces_checked=len(faces))
    sampled = []
    for face in faces:
        al = matrix_lowest_order(a, face.weight)
        if mode == "general":
            blocks = [rows for r in range(1, n + 1) for rows in combinations(range(n), r)]
            check_monomial = True
        else:
            blocks = [tuple(range(n))]
            check_monomial = mode == "invariant"
        for rows in blocks:
            hit = _row_block_obstruction(al, rows, m, check_monomial)
            if hit:
                verdict.evidence.append(Obstruction(face.weight, tuple(i + 1 for i in rows), *hit))
        if samples:
            sampled.append({"weight": list(face.weight), **_sample_ranks(al, rng, samples)})
    if verdict.evidence:
        verdict.status = REFUTED
    if sampled:
        verdict.diagnostics["float_torus_rank_samples"] = sampled
    return verdict


def position_probe(a: PolyMatrix, mode: str = "general", seed: int = 0, samples: int = 8, budget: int = 200) -> PositionVerdict:
    """Structural probe for general, strong or good general position.

    Only the weights of compact facets are enumerated.
    """
    if mode in ("general", "strong"):
        return _probe(a, mode, seed, samples)
    if mode != "good":
        raise ValueError(f"unknown mode {mode!r}")
    # obstructions of the full row block survive every equivalence
    inv = _probe(a, "invariant", seed, samples)
    if inv.refuted:
        inv.mode = "good"
        return inv
    direct = _probe(a, "general", seed, samples)
    if not direct.refuted and is_delta_normal(a):
        direct.mode = "good"
        return direct

    def clean(cand):
        return not _probe(cand, "general", seed, 0).refuted

    try:
        wit = normalize(a, seed, budget=budget, accept=clean)
    except NormalizationError as exc:
        out = PositionVerdict(INCONCLUSIVE, "good", direct.evidence, direct.faces_checked)
        out.diagnostics = {"search": str(exc)}
        return out
    out = _probe(wit.matrix, "general", seed, samples)
    out.mode = "good"
    out.witness = wit
    return out


# ---------------------------------------------------------------------------
# families

@dataclass
class DeltaConstancy:
    constant: bool
    generic: tuple
    samples: dict  # str(t) -> vertices or None
    witness: str = ""


def _delta_vertices(a: PolyMatrix):
    supp = matrix_support(a)
    if not supp:
        return None
    return newton_polyhedron(supp, a.nvars).vertices


def family_delta_constancy(a: PolyMatrix, points: Sequence = SAMPLE_POINTS) -> DeltaConstancy:
    """Compare Delta at sampled parameter values with the generic Delta."""
    generic = _delta_vertices(a)
    if not a.param:
        return DeltaConstancy(True, generic, {})
    samples = {}
    witness = ""
    for t in points:
        v = _delta_vertices(specialize_parameter(a, t))
        samples[str(t)] = v
        if v != generic and not witness:
            witness = f"Delta at t={t} has vertices {list(v) if v else []}, generic Delta has {list(generic)}"
    return DeltaConstancy(not witness, generic, samples, witness)


@dataclass
class FamilyReport:
    delta: DeltaConstancy
    bounded: dict  # str(t) -> bool
    verdicts: dict  # str(t) -> PositionVerdict
    conditions: dict  # name -> (status, detail)
    conclusion: str

    @property
    def delta_constant(self) -> bool:
        return self.delta.constant


def equisingularity_report(a: PolyMatrix, assertions: Sequence[str] = (), seed: int = 0, points: Sequence = SAMPLE_POINTS) -> FamilyReport:
    """Check the three Newton-polyhedral conditions for Whitney equisingularity of a family."""
    asserted = set(assertions)
    delta = family_delta_constancy(a, points)
    bounded = {}
    verdicts = {}
    values = points if a.param else (None,)
    for t in values:
        at = specialize_parameter(a, t) if t is not None else a
        key = str(t) if t is not None else "-"
        ok = not at.is_zero() and has_bounded_complement(newton_of_matrix(at))
        bounded[key] = ok
        if ok:
            verdicts[key] = position_probe(at, "strong", seed, samples=0)

    conditions = {}
    if "isolated-singularity" in asserted:
        conditions["isolated-singularity"] = (ASSERTED, "asserted by the user")
    elif "strong-position" in asserted:
        conditions["isolated-singularity"] = (ASSERTED, "follows from asserted strong general position")
    else:
        conditions["isolated-singularity"] = ("Unchecked", "not asserted")

    if delta.constant and all(bounded.values()):
        conditions["delta-constant"] = ("Verified", "Delta agrees at every sample and has bounded complement")
    elif not delta.constant:
        conditions["delta-constant"] = ("Failed", delta.witness)
    else:
        bad = [t for t, ok in bounded.items() if not ok]
        conditions["delta-constant"] = ("Failed", f"unbounded complement at t in {bad}")

    refuted = [t for t, v in verdicts.items() if v.refuted]
    if refuted:
        ev = verdicts[refuted[0]].evidence[0]
        conditions["strong-position"] = (REFUTED, f"t={refuted[0]}: weight {ev.weight}, {ev.detail}")
    elif "strong-position" in asserted:
        conditions["strong-position"] = (ASSERTED, "asserted; probes found no obstruction")
    else:
        conditions["strong-position"] = ("Probed", "no obstruction found; not asserted")

    good = all(st in ("Verified", ASSERTED) for st, _ in conditions.values())
    return FamilyReport(delta, bounded, verdicts, conditions, "Equisingular" if good else "NotConcluded")
