"""Newton polyhedra conv(S + R^m_+), their complements, faces and restrictions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from ._linalg import primitive
from .polynomial import Exponent, PolyMatrix, Polynomial, matrix_support
from .polytope import VPolytope, convex_hull


class UnboundedComplementError(ValueError):
    """The region R^m_+ minus the polyhedron is not bounded."""


class FiberHypothesisError(ValueError):
    """The support-level fiber construction does not apply to the given data."""


def _prune_dominated(points: Iterable[Exponent]) -> list[Exponent]:
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    keep: list[Exponent] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in keep):
            keep.append(p)
    return keep


def _axis_hits(points: Iterable[Exponent], m: int) -> bool:
    hit = [False] * m
    for p in points:
        nz = [i for i, a in enumerate(p) if a]
        if not nz:
            return True
        if len(nz) == 1:
            hit[nz[0]] = True
    return all(hit)


def _truncation_points(vertices: Sequence[Exponent], m: int, t: int, bounded: bool) -> list[tuple[int, ...]]:
    """Points whose hull is the polyhedron cut by sum(x) <= t (t above every vertex sum)."""
    pts = [tuple(v) for v in vertices]
    if bounded:
        # the whole face sum(x) = t lies inside the polyhedron
        pts += [tuple(t if j == i else 0 for j in range(m)) for i in range(m)]
    else:
        for v in vertices:
            rest = t - sum(v)
            pts += [tuple(a + (rest if j == i else 0) for j, a in enumerate(v)) for i in range(m)]
    return pts


@dataclass(frozen=True, eq=False)
class NewtonPolyhedron:
    """conv(generators + R^m_+), with its minimal generators (vertices) precomputed.

    An empty generator set is allowed only as the result of :func:`restrict`;
    it stands for the empty polyhedron, whose complement is the whole orthant.
    """

    dim: int
    generators: frozenset[Exponent]
    vertices: tuple[Exponent, ...] = field(init=False)

    def __post_init__(self):
        gens = frozenset(tuple(int(a) for a in g) for g in self.generators)
        if any(len(g) != self.dim or min(g, default=0) < 0 for g in gens):
            raise ValueError("generators must be non-negative integer vectors of the ambient dimension")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "vertices", tuple(sorted(_minimal_generators(gens, self.dim))))

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, NewtonPolyhedron):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"NewtonPolyhedron(dim={self.dim}, vertices={list(self.vertices)})"

    def default_truncation(self) -> int:
        return 1 + max((sum(v) for v in self.vertices), default=0)

    def truncated(self, t: int | None = None) -> VPolytope:
        """The polytope Delta intersected with t*L."""
        if self.is_empty:
            raise ValueError("empty polyhedron has no truncation")
        t = self.default_truncation() if t is None else t
        if t <= max(sum(v) for v in self.vertices):
            raise ValueError(f"truncation {t} does not exceed every vertex sum")
        bounded = has_bounded_complement(self)
        return convex_hull(_truncation_points(self.vertices, self.dim, t, bounded))

    def contains(self, x: Sequence) -> bool:
        """Membership test via the truncated polytope."""
        x = tuple(Fraction(a) for a in x)
        if any(a < 0 for a in x) or self.is_empty:
            return False
        t = max(self.default_truncation(), int(sum(x)) + 1)
        return self.truncated(t).contains(x)


def _minimal_generators(gens: frozenset[Exponent], m: int) -> list[Exponent]:
    cand = _prune_dominated(gens)
    if len(cand) <= 1:
        return cand
    if m == 1:
        return [min(cand)]
    t = 1 + max(sum(p) for p in cand)
    hull = convex_hull(_truncation_points(cand, m, t, _axis_hits(cand, m)))
    return [tuple(int(a) for a in v) for v in hull.vertices if sum(v) < t]


def newton_polyhedron(points: Iterable[Sequence[int]], dim: int | None = None) -> NewtonPolyhedron:
    pts = [tuple(int(a) for a in p) for p in points]
    if not pts:
        raise ValueError("Newton polyhedron of an empty support")
    if dim is None:
        dim = len(pts[0])
    return NewtonPolyhedron(dim, frozenset(pts))


def newton_of_polynomial(p: Polynomial, dim: int | None = None) -> NewtonPolyhedron:
    """Newton polyhedron of the support of p; ``dim`` truncates trailing parameter coordinates."""
    dim = p.nvars if dim is None else dim
    return newton_polyhedron({e[:dim] for e in p.terms}, dim)


def newton_of_matrix(a: PolyMatrix) -> NewtonPolyhedron:
    return newton_polyhedron(matrix_support(a), a.nvars)


def has_bounded_complement(delta: NewtonPolyhedron) -> bool:
    """True iff every coordinate axis carries a generator (or the origin is one)."""
    return not delta.is_empty and _axis_hits(delta.vertices, delta.dim)


def intersects_all_axes(delta: NewtonPolyhedron) -> bool:
    return has_bounded_complement(delta)


# ---------------------------------------------------------------------------
# co-convex bodies

@dataclass(frozen=True)
class CoConvexBody:
    """The bounded region R^m_+ minus a Newton polyhedron, with a truncation bound."""

    defining: NewtonPolyhedron
    truncation: int = 0

    def __post_init__(self):
        if not has_bounded_complement(self.defining):
            raise UnboundedComplementError(f"complement of {self.defining} is unbounded")
        t = self.truncation or self.defining.default_truncation()
        if t <= max(sum(v) for v in self.defining.vertices):
            raise ValueError(f"truncation {t} must exceed every vertex coordinate sum")
        object.__setattr__(self, "truncation", t)

    @property
    def dim(self) -> int:
        return self.defining.dim


def complement_volume(body: CoConvexBody | NewtonPolyhedron, truncation: int | None = None) -> Fraction:
    """Volume of R^m_+ minus the polyhedron, as vol(T*L) - vol(Delta within T*L)."""
    if isinstance(body, NewtonPolyhedron):
        body = CoConvexBody(body, truncation or 0)
    elif truncation:
        body = CoConvexBody(body.defining, truncation)
    t, m = body.truncation, body.dim
    return Fraction(t**m, factorial(m)) - body.defining.truncated(t).volume


def standard_simplex(m: int) -> CoConvexBody:
    """The co-convex body whose complement region is the unit simplex L."""
    if m < 1:
        raise ValueError("dimension must be positive")
    return CoConvexBody(linear_polyhedron(m))


def linear_polyhedron(m: int) -> NewtonPolyhedron:
    return NewtonPolyhedron(m, frozenset(tuple(int(i == j) for j in range(m)) for i in range(m)))


def restrict(delta: NewtonPolyhedron, coords: Iterable[int]) -> NewtonPolyhedron:
    """Delta intersected with the coordinate plane R^I, in |I| coordinates (I is 0-based)."""
    idx = sorted(set(coords))
    if not idx:
        raise ValueError("coordinate subset must be non-empty")
    if idx[0] < 0 or idx[-1] >= delta.dim:
        raise ValueError(f"coordinate subset {idx} out of range for dimension {delta.dim}")
    outside = [i for i in range(delta.dim) if i not in idx]
    gens = frozenset(tuple(g[i] for i in idx) for g in delta.generators if all(g[i] == 0 for i in outside))
    return NewtonPolyhedron(len(idx), gens)


# ---------------------------------------------------------------------------
# compact faces

@dataclass(frozen=True)
class CompactFace:
    """A bounded face of a Newton polyhedron and one positive integer weight selecting it."""

    vertices: tuple[Exponent, ...]
    weight: tuple[int, ...]
    level: int
    dim: int


def _face_lattice(poly: VPolytope) -> set[frozenset[int]]:
    """All non-empty proper faces, as vertex index sets (closure under intersection)."""
    faces = {f for f in poly.facet_vertices if f}
    frontier = set(faces)
    while frontier:
        new = set()
        for a in frontier:
            for b in faces:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    faces |= {frozenset([i]) for i in range(len(poly.vertices))}
    return faces


def positive_normals(delta: NewtonPolyhedron, facets_only: bool = False) -> list[CompactFace]:
    """Every compact face of Delta with a strictly positive primitive weight selecting it.

    With ``facets_only`` just the compact faces of dimension m-1 are returned.
    """
    if not has_bounded_complement(delta):
        raise UnboundedComplementError("compact faces need a bounded complement")
    m = delta.dim
    if delta.vertices == ((0,) * m,):
        return [CompactFace(delta.vertices, (1,) * m, 0, 0)]
    t = delta.default_truncation()
    poly = delta.truncated(t)
    verts = poly.vertices
    normals = [tuple(int(x) for x in h.normal) for h in poly.facets]
    faces = [frozenset(s) for s in poly.facet_vertices] if facets_only else _face_lattice(poly)
    out = []
    for face in faces:
        if any(sum(verts[i]) >= t for i in face):
            continue
        containing = [n for n, inc in zip(normals, poly.facet_vertices) if face <= inc]
        weight = primitive([sum(col) for col in zip(*containing)])
        assert all(w > 0 for w in weight), (face, weight)
        pts = tuple(sorted(tuple(int(a) for a in verts[i]) for i in face))
        level = sum(w * a for w, a in zip(weight, pts[0]))
        fdim = _affine_dim(pts)
        if facets_only and fdim != m - 1:
            continue
        out.append(CompactFace(pts, weight, level, fdim))
    out.sort(key=lambda f: (-f.dim, f.vertices))
    return out


def _affine_dim(pts) -> int:
    from ._linalg import int_rank

    p0 = pts[0]
    return int_rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


# ---------------------------------------------------------------------------
# determinantal fibers (support level)

def fiber_support(a: PolyMatrix, f: Polynomial, i: int) -> frozenset[Exponent]:
    """Support of the fiber matrix A^f obtained by eliminating coordinate ``i`` (0-based).

    Requires ``f = c*x_i^p + g`` with ``g`` free of ``x_i``, and every exponent of
    A either free of ``x_i`` or equal to ``p*e_i``; the substitution
    ``x_i^p -> -g/c`` then yields the support below.
    """
    m = a.nvars
    if not 0 <= i < m:
        raise ValueError(f"coordinate {i} out of range")
    f_supp = {e[:m] for e in f.terms}
    pure = [e for e in f_supp if e[i] > 0 and all(x == 0 for j, x in enumerate(e) if j != i)]
    if len(pure) != 1:
        raise FiberHypothesisError(f"f has no unique pure power of coordinate {i}")
    (power,) = pure
    rest = [e for e in f_supp if e != power]
    if any(e[i] for e in rest):
        raise FiberHypothesisError(f"f has mixed terms in coordinate {i}; only c*x_i^p + g(other coordinates) is supported")
    a_supp = matrix_support(a)
    bad = [q for q in a_supp if q[i] and q != power]
    if bad:
        raise FiberHypothesisError(f"matrix exponents {sorted(bad)} use coordinate {i} outside the pure power {power}")

    def hat(e):
        return e[:i] + e[i + 1:]

    out = {hat(q) for q in a_supp if q != power}
    if power in a_supp:
        out |= {hat(e) for e in rest}
    return frozenset(out)
