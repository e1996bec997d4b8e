from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from newtonids.newton import (
    CoConvexBody,
    FiberHypothesisError,
    UnboundedComplementError,
    complement_volume,
    fiber_support,
    has_bounded_complement,
    linear_polyhedron,
    newton_of_matrix,
    newton_polyhedron,
    positive_normals,
    restrict,
    standard_simplex,
)
from newtonids.polynomial import PolyMatrix, parse_polynomial


def axis_polyhedra(m, hi=6):
    axes = st.tuples(*[st.integers(1, hi)] * m)
    extra = st.lists(st.tuples(*[st.integers(0, hi)] * m), max_size=4)

    def build(a, e):
        pts = [tuple(a[i] if j == i else 0 for j in range(m)) for i in range(m)]
        return newton_polyhedron(pts + e, m)

    return st.builds(build, axes, extra)


def test_generators_are_minimal():
    p = newton_polyhedron([(2, 0), (0, 6), (3, 0), (2, 1), (1, 3), (1, 2)])
    assert set(p.vertices) == {(2, 0), (0, 6), (1, 2)}


def test_complement_of_axis_segment_polygon():
    p = newton_polyhedron([(2, 0), (0, 6)])
    assert complement_volume(p) == 6
    assert complement_volume(p, truncation=50) == 6


@pytest.mark.parametrize("m", range(1, 6))
def test_standard_simplex(m):
    from math import factorial

    assert complement_volume(standard_simplex(m)) == Fraction(1, factorial(m))


@given(st.integers(2, 4).flatmap(axis_polyhedra), st.integers(0, 5))
def test_complement_volume_independent_of_truncation(p, extra):
    t = p.default_truncation()
    assert complement_volume(p, t + extra) == complement_volume(p)


@given(st.integers(2, 3).flatmap(axis_polyhedra))
def test_complement_volume_within_bounding_box(p):
    # the complement lies in the box spanned by the axis intercepts
    box = 1
    for i in range(p.dim):
        box *= max(v[i] for v in p.vertices)
    vol = complement_volume(p)
    assert 0 <= vol <= box
    assert (vol == 0) == (p.vertices == ((0,) * p.dim,))


def test_unbounded_complement():
    p = newton_polyhedron([(1, 0)], 2)
    assert not has_bounded_complement(p)
    with pytest.raises(UnboundedComplementError):
        complement_volume(p)
    with pytest.raises(UnboundedComplementError):
        CoConvexBody(p)


def test_truncation_too_small():
    with pytest.raises(ValueError):
        CoConvexBody(newton_polyhedron([(2, 0), (0, 6)]), truncation=6)


def test_restrict():
    p = newton_polyhedron([(2, 0, 0), (0, 6, 0), (0, 0, 2), (1, 1, 1)])
    assert restrict(p, [0, 1]) == newton_polyhedron([(2, 0), (0, 6)])
    assert restrict(p, [2]) == newton_polyhedron([(2,)])
    assert restrict(newton_polyhedron([(1, 1)]), [0]).is_empty
    with pytest.raises(ValueError):
        restrict(p, [])
    with pytest.raises(ValueError):
        restrict(p, [3])


def test_positive_normals_of_polygon():
    p = newton_polyhedron([(2, 0), (0, 6), (1, 2)])
    facets = positive_normals(p, facets_only=True)
    assert sorted(f.weight for f in facets) == [(2, 1), (4, 1)]
    for f in facets:
        assert all(w > 0 for w in f.weight)
        assert all(sum(w * a for w, a in zip(f.weight, v)) == f.level for v in f.vertices)
        assert all(sum(w * a for w, a in zip(f.weight, v)) >= f.level for v in p.vertices)
    faces = positive_normals(p)
    assert len(faces) == 5  # 2 edges and 3 vertices


def test_positive_normals_linear():
    (face,) = positive_normals(linear_polyhedron(4), facets_only=True)
    assert face.weight == (1, 1, 1, 1)
    assert face.dim == 3


def test_matrix_newton():
    v = ("x", "y", "z")
    a = PolyMatrix.parse([["z", "-y^2", "-x^3"], ["0", "x", "y"]], v)
    assert newton_of_matrix(a) == linear_polyhedron(3)


def test_fiber_support_example():
    v = ("x", "y", "z", "w")
    a = PolyMatrix.parse([["w", "y + y^2", "x"], ["z", "w", "y"]], v)
    f = parse_polynomial("x + y + y^3 + z - w", v)
    assert fiber_support(a, f, 3) == {(1, 0, 0), (0, 1, 0), (0, 2, 0), (0, 0, 1), (0, 3, 0)}


def test_fiber_support_hypotheses():
    v = ("x", "y", "z")
    a = PolyMatrix.parse([["x", "z*y"]], v)
    with pytest.raises(FiberHypothesisError):
        fiber_support(a, parse_polynomial("x + y", v), 2)
    with pytest.raises(FiberHypothesisError):
        fiber_support(a, parse_polynomial("z + x*z", v), 2)
    b = PolyMatrix.parse([["x", "z^2"]], v)
    with pytest.raises(FiberHypothesisError):
        fiber_support(b, parse_polynomial("z + x", v), 2)
