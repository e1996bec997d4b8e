"""Invariants of isolated determinantal singularities from Newton polyhedra.

Every quantity reduces to co-convex mixed volumes of the matrix polyhedron
Delta_A, the function polyhedron Delta_f and the simplex L, restricted to
coordinate planes R^I.  Totals are exact; a non-integral total means a
convention is broken and raises instead of being rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .mixed_volume import MVQuery, mixed_volume_coconvex
from .newton import (
    NewtonPolyhedron,
    has_bounded_complement,
    linear_polyhedron,
    newton_of_matrix,
    newton_of_polynomial,
    restrict,
)
from .polynomial import PolyMatrix


class PreconditionError(ValueError):
    """A hypothesis of a formula fails; ``hypothesis`` names it."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class ConventionError(ArithmeticError):
    """A result that must be an integer came out fractional."""


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever k lies outside 0..n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _integral(value: Fraction, what: str, terms=()) -> int:
    if value.denominator != 1:
        dump = "\n".join(f"  {t}" for t in terms)
        raise ConventionError(f"{what} = {value} is not an integer{(chr(10) + dump) if dump else ''}")
    return int(value)


# ---------------------------------------------------------------------------
# germs

@dataclass(frozen=True)
class DeterminantalGerm:
    """X_A^s = {x : rank A(x) < s} for an n x k matrix A over m variables."""

    matrix: PolyMatrix
    s: int | None = None

    def __post_init__(self):
        if self.matrix.param:
            raise ValueError("a germ cannot carry a family parameter; specialise it first")
        n, k = self.matrix.shape
        s = n if self.s is None else self.s
        if not 0 < s <= n:
            raise ValueError(f"rank bound s={s} outside 1..{n}")
        object.__setattr__(self, "s", s)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def m(self) -> int:
        return self.matrix.nvars

    @property
    def d(self) -> int:
        return self.m - (self.n - self.s + 1) * (self.k - self.s + 1)

    @property
    def delta(self) -> NewtonPolyhedron:
        return newton_of_matrix(self.matrix)

    def require_formula_range(self):
        if self.s != self.n:
            raise PreconditionError("maximal-minors", f"formulas need s = n, got s={self.s}, n={self.n}")
        if self.d < 0:
            raise PreconditionError("dimension", f"expected dimension m-(k-n+1) = {self.d} is negative")
        if not has_bounded_complement(self.delta):
            raise PreconditionError("bounded-complement", f"Delta_A = {self.delta} does not meet every coordinate axis")


# ---------------------------------------------------------------------------
# multiplicity

def multiplicity(g: DeterminantalGerm, truncation: int | None = None) -> int:
    g.require_formula_range()
    n, k, m = g.n, g.k, g.m
    slots = [(g.delta, k - n + 1)]
    if m - k + n - 1 > 0:
        slots.append((linear_polyhedron(m), m - k + n - 1))
    mv = mixed_volume_coconvex(MVQuery.build(slots, truncation))
    return _integral(binom(k, k - n + 1) * factorial(m) * mv, "multiplicity")


def column_polyhedra(a: PolyMatrix, row: int = 0) -> list[NewtonPolyhedron]:
    """Newton polyhedra of the entries of one row, one per column."""
    out = []
    for j, e in enumerate(a.entries[row]):
        if e.is_zero():
            raise PreconditionError("bounded-complement", f"entry ({row + 1},{j + 1}) is zero")
        out.append(newton_of_polynomial(e, a.nvars))
    return out


def multiplicity_esterov(columns: Sequence[NewtonPolyhedron], m: int, n: int, k: int, truncation: int | None = None) -> int:
    """Sum over (k-n+1)-subsets of columns of m! * MV(Delta_j0, ..., Delta_j(k-n), L, ..., L)."""
    if len(columns) != k:
        raise ValueError(f"expected {k} column polyhedra, got {len(columns)}")
    if not 0 < n <= k or m - k + n - 1 < 0:
        raise ValueError(f"invalid sizes m={m}, n={n}, k={k}")
    for j, c in enumerate(columns):
        if c.dim != m:
            raise ValueError(f"column {j + 1} lives in dimension {c.dim}, expected {m}")
        if not has_bounded_complement(c):
            raise PreconditionError("bounded-complement", f"column {j + 1} polyhedron {c} has unbounded complement")
    lin = linear_polyhedron(m)
    memo: dict = {}
    total = Fraction(0)
    for subset in combinations(range(k), k - n + 1):
        slots = [(columns[j], 1) for j in subset]
        if m - k + n - 1:
            slots.append((lin, m - k + n - 1))
        q = MVQuery.build(slots, truncation)
        key = tuple(sorted((p.vertices, e) for p, e in q.slots))
        if key not in memo:
            memo[key] = mixed_volume_coconvex(q)
        total += factorial(m) * memo[key]
    return _integral(total, "multiplicity")


# ---------------------------------------------------------------------------
# Euler characteristic of the Milnor fiber

@dataclass(frozen=True)
class Term:
    q: int
    I: tuple[int, ...]  # 1-based coordinates
    a: int
    coefficient: int  # sign * binomials * |I|!
    mixed_volume: Fraction
    value: Fraction


def chi_coefficient(size: int, q: int, a: int, n: int, k: int) -> int:
    """Signed binomial weight of one (q, I, a) term, without the |I|! factor."""
    return (
        (-1) ** (size + k - n)
        * binom(size + q - a - 2, n + q - k - 1)
        * binom(size - a - 1, q - 1)
        * binom(k, q)
    )


def chi_milnor_terms(g: DeterminantalGerm, delta_f: NewtonPolyhedron, truncation: int | None = None) -> list[Term]:
    """Non-zero terms of the triple sum for chi(F_0); zero-weight terms are skipped unevaluated."""
    g.require_formula_range()
    n, k, m = g.n, g.k, g.m
    if delta_f.dim != m:
        raise ValueError(f"Delta_f lives in dimension {delta_f.dim}, expected {m}")
    if not has_bounded_complement(delta_f):
        raise PreconditionError("function-axes", f"Delta_f = {delta_f} does not meet every coordinate axis")
    delta_a = g.delta
    mvs: dict = {}
    terms = []
    for q in range(k - n + 1, k + 1):
        for size in range(q + 1, m + 1):
            for I in combinations(range(m), size):
                for a in range(1, size - q + 1):
                    c = chi_coefficient(size, q, a, n, k)
                    if c == 0:
                        continue
                    mv = _restricted_mv(delta_f, delta_a, I, a, truncation, mvs)
                    coef = c * factorial(size)
                    terms.append(Term(q, tuple(i + 1 for i in I), a, coef, mv, coef * mv))
    return terms


def _restricted_mv(delta_f, delta_a, I, a, truncation, memo) -> Fraction:
    f_i = restrict(delta_f, I)
    a_i = restrict(delta_a, I)
    # many coordinate planes carry identical restrictions
    key = (f_i.vertices, a_i.vertices, len(I), a)
    if key in memo:
        return memo[key]
    label = [i + 1 for i in I]
    for name, p in (("Delta_f", f_i), ("Delta_A", a_i)):
        if p.is_empty or not has_bounded_complement(p):
            raise PreconditionError("bounded-restriction", f"{name} restricted to I={label} has unbounded complement")
    slots = [(f_i, a)]
    if len(I) - a:
        slots.append((a_i, len(I) - a))
    memo[key] = mixed_volume_coconvex(MVQuery.build(slots, truncation))
    return memo[key]


def chi_milnor_fiber(g: DeterminantalGerm, delta_f: NewtonPolyhedron, truncation: int | None = None) -> int:
    terms = chi_milnor_terms(g, delta_f, truncation)
    return _integral(sum((t.value for t in terms), Fraction(0)), "chi", terms)


def euler_obstruction(g: DeterminantalGerm, truncation: int | None = None) -> int:
    """Eu at the origin: chi of the fiber of a generic linear form."""
    return chi_milnor_fiber(g, linear_polyhedron(g.m), truncation)


def euler_obstruction_simplex(m: int, n: int, k: int) -> int:
    """The closed binomial sum for Eu when the complement of Delta_A is the simplex L."""
    if m < 1 or not 0 < n <= k:
        raise ValueError(f"invalid sizes m={m}, n={n}, k={k}")
    total = 0
    for q in range(k - n + 1, k + 1):
        for size in range(q + 1, m + 1):
            for a in range(1, size - q + 1):
                total += chi_coefficient(size, q, a, n, k) * binom(m, size)
    return total


def euler_obstruction_from_polar(polar: Sequence[int]) -> int:
    """Alternating sum m_0 - m_1 + m_2 - ... of polar multiplicities."""
    if not polar:
        raise ValueError("need at least one polar multiplicity")
    return sum((-1) ** i * int(v) for i, v in enumerate(polar))


def vanishing_euler_of_fiber(g: DeterminantalGerm, delta_f: NewtonPolyhedron, d: int | None = None, truncation: int | None = None) -> int:
    d = g.d if d is None else d
    return (-1) ** (d - 1) * (chi_milnor_fiber(g, delta_f, truncation) - 1)


def morse_points(
    g: DeterminantalGerm,
    delta_f: NewtonPolyhedron,
    fiber: DeterminantalGerm,
    fiber_coordinate: int | None = None,
    truncation: int | None = None,
) -> int:
    """n_reg as the sum of the vanishing Euler characteristics of f on X_A and on the fiber germ.

    ``fiber_coordinate`` (0-based, default the last one) is the coordinate
    eliminated when passing to the fiber; Delta_f is restricted accordingly.
    """
    if fiber.m != g.m - 1 or fiber.d != g.d - 1:
        raise ValueError(
            f"fiber germ must have one variable and one dimension less: got m={fiber.m}, d={fiber.d} for m={g.m}, d={g.d}"
        )
    c = g.m - 1 if fiber_coordinate is None else fiber_coordinate
    f_restricted = restrict(delta_f, [i for i in range(g.m) if i != c])
    return vanishing_euler_of_fiber(g, delta_f, g.d, truncation) + vanishing_euler_of_fiber(fiber, f_restricted, g.d - 1, truncation)


# ---------------------------------------------------------------------------
# reports

VERIFIED = "Verified"
PROBED = "Probed"
ASSERTED = "Asserted"
UNCHECKED = "Unchecked"
REFUTED = "Refuted"


@dataclass(frozen=True)
class HypothesisEntry:
    name: str
    status: str
    detail: str = ""


@dataclass
class InvariantReport:
    """Named exact values, per-sum term breakdowns and the hypothesis ledger."""

    command: str
    values: dict = field(default_factory=dict)
    breakdown: dict[str, list[Term]] = field(default_factory=dict)
    hypotheses: list[HypothesisEntry] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def check_totals(self):
        for key, terms in self.breakdown.items():
            total = sum((t.value for t in terms), Fraction(0))
            if self.values.get(key) != total:
                raise AssertionError(f"{key} = {self.values.get(key)} differs from its breakdown sum {total}")
