"""Mixed volumes of convex polytopes and of co-convex bodies.

Both are computed by polarization: with Vol (resp. the complement volume
CVol of a Newton polyhedron) as the diagonal,

    MV(B_1, ..., B_d) = 1/d! * sum_{S nonempty} (-1)^(d-|S|) Vol(sum_{i in S} B_i).

For co-convex bodies the Minkowski sums are taken of the defining Newton
polyhedra.  Repeated slots are grouped, so a query like Delta^a L^(d-a) only
visits the (a+1)(d-a+1) distinct partial sums.

``mv_interpolation_oracle`` recovers the same number independently by fitting
the homogeneous polynomial t -> Vol(t_1 B_1 + ... + t_r B_r) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod
from typing import Sequence, Union

from ._linalg import solve
from .newton import (
    CoConvexBody,
    NewtonPolyhedron,
    UnboundedComplementError,
    _prune_dominated,
    _truncation_points,
    has_bounded_complement,
    linear_polyhedron,
)
from .polytope import VPolytope, convex_hull, minkowski_sum, standard_simplex_polytope

Body = Union[VPolytope, CoConvexBody, NewtonPolyhedron]


# ---------------------------------------------------------------------------
# bounded convex polytopes

def mixed_volume_convex(polytopes: Sequence[VPolytope]) -> Fraction:
    """Mixed volume of d polytopes in R^d, normalised so that MV(P, ..., P) = Vol(P)."""
    d = len(polytopes)
    if d == 0:
        raise ValueError("need at least one polytope")
    if any(p.dim != d for p in polytopes):
        raise ValueError(f"need {d} polytopes in dimension {d}")
    groups = _group(list(polytopes))
    memo: dict[tuple[int, ...], VPolytope] = {}

    def summed(counts):
        if counts in memo:
            return memo[counts]
        b = next(i for i, c in enumerate(counts) if c)
        prev = tuple(c - (i == b) for i, c in enumerate(counts))
        body = groups[b][0] if not any(prev) else minkowski_sum(summed(prev), groups[b][0])
        memo[counts] = body
        return body

    return _polarize([c for _, c in groups], lambda counts: summed(counts).volume)


def _group(bodies: list) -> list[tuple[object, int]]:
    out: list[list] = []
    for b in bodies:
        for g in out:
            if g[0] == b:
                g[1] += 1
                break
        else:
            out.append([b, 1])
    return [(b, c) for b, c in out]


def _polarize(multiplicities: Sequence[int], vol) -> Fraction:
    d = sum(multiplicities)
    total = Fraction(0)
    for counts in product(*(range(c + 1) for c in multiplicities)):
        size = sum(counts)
        if size == 0:
            continue
        weight = prod(comb(c, j) for c, j in zip(multiplicities, counts))
        total += (-1) ** (d - size) * weight * vol(tuple(counts))
    return total / factorial(d)


# ---------------------------------------------------------------------------
# co-convex bodies

@dataclass(frozen=True)
class MVQuery:
    """A mixed-volume query: slots given as (body, power) pairs with powers summing to the dimension."""

    dim: int
    slots: tuple[tuple[NewtonPolyhedron, int], ...]
    truncation: int | None = None

    @classmethod
    def build(cls, slots: Sequence, truncation: int | None = None) -> "MVQuery":
        """Accepts bodies or (body, power) pairs; bodies may be Newton polyhedra, co-convex bodies,
        or the standard simplex as a VPolytope."""
        pairs = []
        for s in slots:
            body, power = s if isinstance(s, tuple) and len(s) == 2 and isinstance(s[1], int) else (s, 1)
            pairs.append((_as_polyhedron(body), power))
        if not pairs:
            raise ValueError("empty query")
        dim = pairs[0][0].dim
        if any(p.dim != dim for p, _ in pairs):
            raise ValueError("slots live in different dimensions")
        if any(k <= 0 for _, k in pairs):
            raise ValueError("powers must be positive")
        if sum(k for _, k in pairs) != dim:
            raise ValueError(f"powers sum to {sum(k for _, k in pairs)}, expected {dim}")
        for p, _ in pairs:
            if not has_bounded_complement(p):
                raise UnboundedComplementError(f"slot {p} has unbounded complement")
        merged: list[list] = []
        for p, k in pairs:
            for g in merged:
                if g[0] == p:
                    g[1] += k
                    break
            else:
                merged.append([p, k])
        return cls(dim, tuple((p, k) for p, k in merged), truncation)

    def max_vertex_sum(self) -> int:
        return max(sum(v) for p, _ in self.slots for v in p.vertices)


def _as_polyhedron(body: Body) -> NewtonPolyhedron:
    if isinstance(body, NewtonPolyhedron):
        return body
    if isinstance(body, CoConvexBody):
        return body.defining
    if isinstance(body, VPolytope):
        if body == standard_simplex_polytope(body.dim):
            return linear_polyhedron(body.dim)
        raise TypeError("a bare polytope slot is only admitted for the standard simplex")
    raise TypeError(f"unsupported slot type {type(body).__name__}")


class _CovolumeTable:
    """Complement volumes of integer combinations of the query's polyhedra."""

    def __init__(self, query: MVQuery):
        self.q = query
        self.m = query.dim
        self.vertices: dict[tuple[int, ...], tuple] = {}
        self.values: dict[tuple[int, ...], Fraction] = {}
        if query.truncation is not None and query.truncation <= query.max_vertex_sum():
            raise ValueError(f"truncation {query.truncation} must exceed every vertex coordinate sum")

    def _hull(self, counts, points):
        size = sum(counts)
        if self.q.truncation is not None:
            t = size * self.q.truncation
        else:
            t = 1 + max(sum(p) for p in points)
        return t, convex_hull(_truncation_points(points, self.m, t, True))

    def covolume(self, counts: tuple[int, ...]) -> Fraction:
        if counts in self.values:
            return self.values[counts]
        size = sum(counts)
        if size == 0:
            return Fraction(0)
        b = next(i for i, c in enumerate(counts) if c)
        prev = tuple(c - (i == b) for i, c in enumerate(counts))
        base = self.q.slots[b][0].vertices
        if any(prev):
            self.covolume(prev)
            pts = {tuple(x + y for x, y in zip(u, v)) for u in self.vertices[prev] for v in base}
        else:
            pts = set(base)
        pts = _prune_dominated(pts)
        t, hull = self._hull(counts, pts)
        self.vertices[counts] = tuple(tuple(int(a) for a in v) for v in hull.vertices if sum(v) < t)
        value = Fraction(t**self.m, factorial(self.m)) - hull.volume
        self.values[counts] = value
        return value

    def dilated_covolume(self, factors: Sequence[int]) -> Fraction:
        """CVol(f_1 D_1 + ... + f_r D_r) computed directly from dilated vertex sets."""
        pts = {(0,) * self.m}
        for (p, _), f in zip(self.q.slots, factors):
            pts = _prune_dominated({tuple(x + f * y for x, y in zip(u, v)) for u in pts for v in p.vertices})
        if self.q.truncation is not None:
            t = sum(factors) * self.q.truncation
        else:
            t = 1 + max(sum(p) for p in pts)
        hull = convex_hull(_truncation_points(sorted(pts), self.m, t, True))
        return Fraction(t**self.m, factorial(self.m)) - hull.volume


def mixed_volume_coconvex(query: MVQuery | Sequence, truncation: int | None = None) -> Fraction:
    """Mixed volume of co-convex bodies by polarization over complement volumes."""
    if not isinstance(query, MVQuery):
        query = MVQuery.build(query, truncation)
    table = _CovolumeTable(query)
    return _polarize([k for _, k in query.slots], table.covolume)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _interpolate(mults: Sequence[int], evaluate) -> Fraction:
    """Fit the degree-d homogeneous polynomial in r variables and extract the mixed coefficient."""
    r = len(mults)
    d = sum(mults)
    monomials = list(_compositions(d, r))
    # principal lattice on the affine slice sum(t) = d + r; all nodes in {1..d+1}^r
    nodes = [tuple(c + 1 for c in comp) for comp in _compositions(d, r)]
    rows = [[prod(t**e for t, e in zip(node, mono)) for mono in monomials] for node in nodes]
    rhs = [evaluate(node) for node in nodes]
    try:
        coeffs = solve(rows, rhs)
    except ZeroDivisionError as exc:  # cannot happen for this node set
        raise AssertionError("interpolation system is singular") from exc
    target = tuple(mults)
    c = coeffs[monomials.index(target)]
    # coefficient of prod t_b^{k_b} is d!/prod(k_b!) * MV
    return c * prod(factorial(k) for k in mults) / factorial(d)


def mv_interpolation_oracle(query, convex: bool = False, truncation: int | None = None) -> Fraction:
    """Independent mixed volume via exact polynomial interpolation of dilated volumes.

    ``convex=True`` treats the slots as bounded polytopes (using Vol), otherwise
    as co-convex bodies (using the complement volume).
    """
    if convex:
        groups = _group(list(query))
        d = sum(c for _, c in groups)

        def vol(factors):
            acc = None
            for (p, _), f in zip(groups, factors):
                scaled = convex_hull(tuple(f * x for x in v) for v in p.vertices)
                acc = scaled if acc is None else minkowski_sum(acc, scaled)
            return acc.volume

        return _interpolate([c for _, c in groups], vol)
    if not isinstance(query, MVQuery):
        query = MVQuery.build(query, truncation)
    table = _CovolumeTable(query)
    return _interpolate([k for _, k in query.slots], table.dilated_covolume)
