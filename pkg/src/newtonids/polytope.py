"""Exact convex polytopes over Q in low dimension.

Hulls are built incrementally (beneath-beyond) on integer-scaled coordinates.
The boundary is kept as a set of oriented (d-1)-simplices; each inserted point
is coned to the boundary simplices it sees, which yields a placing
triangulation whose simplex determinants sum to the volume.  Coplanar boundary
simplices are merged into true facets at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Sequence

from ._linalg import IntEchelon, int_det, int_rank, lcm_of_denominators, nullspace, primitive, rank, row_echelon

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Halfspace:
    """The set {x : <normal, x> >= offset}."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("halfspace normal must be non-zero")

    def value(self, x: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) - self.offset

    def contains(self, x: Sequence) -> bool:
        return self.value(x) >= 0


def _pt(x: Iterable) -> Point:
    return tuple(Fraction(c) for c in x)


@dataclass(frozen=True, eq=False)
class VPolytope:
    """A bounded convex polytope given by its vertices, with facet data computed up front.

    ``facets`` together with ``equations`` describe the polytope exactly; for a
    full-dimensional polytope ``equations`` is empty.  The empty polytope has
    no vertices and ``affine_dim == -1``.
    """

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Halfspace, ...]
    equations: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    affine_dim: int
    volume: Fraction
    facet_vertices: tuple[frozenset[int], ...] = ()

    @classmethod
    def empty(cls, dim: int) -> "VPolytope":
        return cls(dim, (), (), (), -1, Fraction(0))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def __eq__(self, other):
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.dim == other.dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.dim, frozenset(self.vertices)))

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = _pt(x)
        for normal, rhs in self.equations:
            if sum(a * b for a, b in zip(normal, x)) != rhs:
                return False
        return all(h.contains(x) for h in self.facets)

    def edges(self) -> list[tuple[int, int]]:
        """Vertex index pairs spanning an edge (1-dimensional face)."""
        if self.affine_dim < 1:
            return []
        if self.affine_dim == 1:
            return [(0, 1)]
        out = []
        incid = self.facet_vertices
        for u, v in combinations(range(len(self.vertices)), 2):
            common = [self.facets[f].normal for f, vs in enumerate(incid) if u in vs and v in vs]
            if len(common) >= self.affine_dim - 1 and rank(common) == self.affine_dim - 1:
                out.append((u, v))
        return out


# ---------------------------------------------------------------------------
# full-dimensional integer hull

class _Hull:
    """Beneath-beyond hull of integer points that affinely span Z^d (d >= 2)."""

    def __init__(self, pts: list[tuple[int, ...]]):
        self.pts = pts
        self.d = d = len(pts[0])
        base = _affine_basis_indices(pts)
        assert len(base) == d + 1
        self.interior = [sum(pts[i][c] for i in base) for c in range(d)]
        self.iscale = d + 1
        # facet id -> (vertex index tuple, normal, offset); normal is inner
        self.facets: dict[int, tuple[tuple[int, ...], tuple[int, ...], int]] = {}
        self.ridges: dict[frozenset, set[int]] = {}
        self.next_id = 0
        self.det_total = 0
        self.placed = list(base)

        simplex_det = int_det([[pts[i][c] - pts[base[0]][c] for c in range(d)] for i in base[1:]])
        self.det_total += abs(simplex_det)
        for drop in range(d + 1):
            verts = tuple(base[:drop] + base[drop + 1:])
            normal, offset = self._plane_through(verts)
            self._add_facet(verts, normal, offset)

        in_base = set(base)
        for i in range(len(pts)):
            if i not in in_base:
                self._insert(i)

    def _plane_through(self, verts) -> tuple[tuple[int, ...], int]:
        pts, d = self.pts, self.d
        p0 = pts[verts[0]]
        rows = [[pts[v][c] - p0[c] for c in range(d)] for v in verts[1:]]
        normal = []
        for c in range(d):
            sub = [r[:c] + r[c + 1:] for r in rows]
            normal.append((-1) ** c * int_det(sub))
        offset = sum(a * b for a, b in zip(normal, p0))
        return self._orient(normal, offset)

    def _orient(self, normal, offset):
        side = sum(a * b for a, b in zip(normal, self.interior)) - self.iscale * offset
        assert side != 0, "degenerate facet"
        if side < 0:
            normal = [-a for a in normal]
            offset = -offset
        vec = primitive(list(normal) + [offset])
        return tuple(vec[:-1]), vec[-1]

    def _add_facet(self, verts, normal, offset):
        fid = self.next_id
        self.next_id += 1
        verts = tuple(sorted(verts))
        self.facets[fid] = (verts, normal, offset)
        for r in combinations(verts, self.d - 1):
            self.ridges.setdefault(frozenset(r), set()).add(fid)
        return fid

    def _remove_facet(self, fid):
        verts, _, _ = self.facets.pop(fid)
        for r in combinations(verts, self.d - 1):
            key = frozenset(r)
            s = self.ridges[key]
            s.discard(fid)
            if not s:
                del self.ridges[key]

    def _insert(self, i):
        p = self.pts[i]
        d = self.d
        visible = {}
        for fid, (verts, normal, offset) in self.facets.items():
            s = sum(a * b for a, b in zip(normal, p)) - offset
            if s < 0:
                visible[fid] = s
        if not visible:
            return
        self.placed.append(i)
        new = []
        for fid, s1 in visible.items():
            verts, n1, o1 = self.facets[fid]
            rows = [[self.pts[v][c] - p[c] for c in range(d)] for v in verts]
            self.det_total += abs(int_det(rows))
            for r in combinations(verts, d - 1):
                key = frozenset(r)
                (other,) = self.ridges[key] - {fid}
                if other in visible:
                    continue
                _, n2, o2 = self.facets[other]
                s2 = sum(a * b for a, b in zip(n2, p)) - o2
                # combination vanishing on the ridge and at p, nonnegative on the old hull
                normal = [s2 * a - s1 * b for a, b in zip(n1, n2)]
                offset = s2 * o1 - s1 * o2
                vec = primitive(normal + [offset])
                new.append((r + (i,), tuple(vec[:-1]), vec[-1]))
        for fid in visible:
            self._remove_facet(fid)
        for verts, normal, offset in new:
            self._add_facet(verts, normal, offset)

    def true_facets(self) -> dict[tuple[tuple[int, ...], int], None]:
        out = {}
        for _, normal, offset in self.facets.values():
            out[(normal, offset)] = None
        return out


def _affine_basis_indices(pts) -> list[int]:
    """Greedy indices of affinely independent points (first point always included)."""
    base = [0]
    ech = IntEchelon()
    p0 = pts[0]
    for i in range(1, len(pts)):
        if ech.add([a - b for a, b in zip(pts[i], p0)]):
            base.append(i)
            if len(base) == len(p0) + 1:
                break
    return base


def _hull_full(pts: list[tuple[int, ...]]):
    """Returns (vertex indices, facets[(normal, offset)], incidence, det_total) for integer points spanning Z^d."""
    d = len(pts[0])
    if d == 1:
        xs = [p[0] for p in pts]
        lo = xs.index(min(xs))
        hi = xs.index(max(xs))
        facets = [((1,), min(xs)), ((-1,), -max(xs))]
        return [lo, hi], facets, [frozenset([0]), frozenset([1])], max(xs) - min(xs)
    h = _Hull(pts)
    facets = list(h.true_facets())
    verts = []
    for i in h.placed:
        p = pts[i]
        tight = [n for n, o in facets if sum(a * b for a, b in zip(n, p)) == o]
        if len(tight) >= d and int_rank(tight, d) == d:
            verts.append(i)
    verts.sort(key=lambda i: pts[i])
    pos = {v: j for j, v in enumerate(verts)}
    incidence = []
    for n, o in facets:
        incidence.append(frozenset(pos[v] for v in verts if sum(a * b for a, b in zip(n, pts[v])) == o))
    return verts, facets, incidence, h.det_total


def convex_hull(points: Iterable[Sequence]) -> VPolytope:
    """Convex hull of a non-empty finite point set in Q^d."""
    pts = sorted(set(_pt(p) for p in points))
    if not pts:
        raise ValueError("convex hull of an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    if d == 0:
        return VPolytope(0, (pts[0],), (), (), 0, Fraction(1))

    p0 = pts[0]
    denom = lcm_of_denominators(x for p in pts for x in p)
    ech = IntEchelon()
    for p in pts[1:]:
        ech.add([int((a - b) * denom) for a, b in zip(p, p0)])
        if len(ech.basis) == d:
            break
    pivots = sorted(ech.pivots)
    r = len(pivots)
    equations = []
    if r < d:
        diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
        red, _ = row_echelon(diffs) if diffs else ([], [])
        for w in nullspace(red, d) if red else [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]:
            scale = lcm_of_denominators(w)
            w = tuple(Fraction(x * scale) for x in w)
            equations.append((w, sum((a * b for a, b in zip(w, p0)), Fraction(0))))
    if r == 0:
        return VPolytope(d, (p0,), (), tuple(equations), 0, Fraction(0))

    # project injectively onto the pivot coordinates and scale to integers
    proj = [tuple(int(p[c] * denom) for c in pivots) for p in pts]
    vidx, facets, incidence, det_total = _hull_full(proj)
    vertices = tuple(pts[i] for i in vidx)

    halfspaces = []
    for normal, offset in facets:
        k = 0
        for a in normal:
            k = gcd(k, a)
        g = [a // k for a in normal]
        lifted = [Fraction(0)] * d
        for c, a in zip(pivots, g):
            lifted[c] = Fraction(a)
        halfspaces.append(Halfspace(tuple(lifted), Fraction(offset, k * denom)))
    volume = Fraction(det_total, factorial(d) * denom**d) if r == d else Fraction(0)
    return VPolytope(d, vertices, tuple(halfspaces), tuple(equations), r, volume, tuple(incidence))


def volume(p: VPolytope) -> Fraction:
    """d-dimensional Lebesgue volume (0 for lower-dimensional or empty polytopes)."""
    return p.volume


def minkowski_sum(p: VPolytope, q: VPolytope) -> VPolytope:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if p.is_empty or q.is_empty:
        return VPolytope.empty(p.dim)
    return convex_hull({tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices})


def dilate(p: VPolytope, factor) -> VPolytope:
    factor = Fraction(factor)
    if factor < 0:
        raise ValueError("dilation factor must be non-negative")
    if p.is_empty:
        return p
    return convex_hull(tuple(factor * c for c in v) for v in p.vertices)


def intersect_halfspaces(p: VPolytope, halfspaces: Sequence[Halfspace]) -> VPolytope:
    """P intersected with each halfspace in turn; may return the empty polytope."""
    for h in halfspaces:
        if p.is_empty:
            return p
        vals = [h.value(v) for v in p.vertices]
        if all(s >= 0 for s in vals):
            continue
        if all(s < 0 for s in vals):
            return VPolytope.empty(p.dim)
        keep = [v for v, s in zip(p.vertices, vals) if s >= 0]
        for u, w in p.edges():
            su, sw = vals[u], vals[w]
            if (su > 0 > sw) or (sw > 0 > su):
                t = su / (su - sw)
                a, b = p.vertices[u], p.vertices[w]
                keep.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
        p = convex_hull(keep)
    return p


def standard_simplex_polytope(d: int, scale=1) -> VPolytope:
    """conv(0, scale*e_1, ..., scale*e_d)."""
    scale = Fraction(scale)
    pts = [tuple(Fraction(0) for _ in range(d))]
    for i in range(d):
        pts.append(tuple(scale if j == i else Fraction(0) for j in range(d)))
    return convex_hull(pts)
