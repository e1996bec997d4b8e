from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from newtonids.polytope import (
    Halfspace,
    convex_hull,
    dilate,
    intersect_halfspaces,
    minkowski_sum,
    standard_simplex_polytope,
)


def point_sets(d, lo=0, hi=6, min_size=None, max_size=12):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * d), min_size=min_size or d + 1, max_size=max_size, unique=True)


def scipy_hull(pts):
    try:
        return ConvexHull(np.array(pts, dtype=float))
    except Exception:
        return None


def test_quadrilateral():
    p = convex_hull([(0, 0), (3, 0), (1, 6), (0, 7), (1, 1)])
    assert p.volume == Fraction(25, 2)
    assert set(p.vertices) == {(0, 0), (3, 0), (1, 6), (0, 7)}
    assert len(p.facets) == 4


@pytest.mark.parametrize("d", range(1, 7))
def test_unit_simplex(d):
    s = standard_simplex_polytope(d)
    assert s.volume == Fraction(1, factorial(d))
    assert len(s.vertices) == d + 1
    assert len(s.facets) == d + 1


def test_cube_counts():
    cube = convex_hull(product((0, 1), repeat=4))
    assert cube.volume == 1
    assert len(cube.vertices) == 16
    assert len(cube.facets) == 8
    assert len(cube.edges()) == 32


def test_lower_dimensional_input():
    seg = convex_hull([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    assert seg.affine_dim == 1
    assert seg.volume == 0
    assert set(seg.vertices) == {(0, 0, 0), (2, 2, 2)}
    assert len(seg.equations) == 2
    assert seg.contains((1, 1, 1)) and not seg.contains((1, 1, 0))


def test_rational_points():
    p = convex_hull([(0, 0), (Fraction(1, 2), 0), (0, Fraction(1, 3))])
    assert p.volume == Fraction(1, 12)


def test_empty_input():
    with pytest.raises(ValueError):
        convex_hull([])


@settings(max_examples=40)
@given(st.integers(2, 5).flatmap(lambda d: point_sets(d, max_size=3 * d + 4)))
def test_volume_and_vertices_match_scipy(pts):
    ours = convex_hull(pts)
    ref = scipy_hull(pts)
    if ref is None:
        assert ours.volume == 0 or ours.affine_dim < len(pts[0])
        return
    assert abs(float(ours.volume) - ref.volume) < 1e-9 * max(1.0, ref.volume)
    ref_vertices = {pts[i] for i in ref.vertices}
    assert {tuple(int(x) for x in v) for v in ours.vertices} == ref_vertices


@given(point_sets(3))
def test_points_inside_and_facets_tight(pts):
    p = convex_hull(pts)
    assert all(p.contains(x) for x in pts)
    for h, inc in zip(p.facets, p.facet_vertices):
        assert all(h.value(p.vertices[i]) == 0 for i in inc)
        assert all(h.value(v) >= 0 for v in p.vertices)


@given(point_sets(2), point_sets(2))
def test_minkowski_volume_brunn_minkowski_2d(a, b):
    pa, pb = convex_hull(a), convex_hull(b)
    s = minkowski_sum(pa, pb)
    # mixed area is non-negative, so area is superadditive
    assert s.volume >= pa.volume + pb.volume


@given(point_sets(3), st.integers(0, 3))
def test_dilation_scales_volume(pts, c):
    p = convex_hull(pts)
    assert dilate(p, c).volume == c**3 * p.volume


def test_dilate_negative():
    with pytest.raises(ValueError):
        dilate(standard_simplex_polytope(2), -1)


def test_intersect_halfspaces():
    sq = convex_hull(product((0, 2), repeat=2))
    cut = intersect_halfspaces(sq, [Halfspace((Fraction(-1), Fraction(-1)), Fraction(-2))])
    assert cut.volume == 2
    assert intersect_halfspaces(standard_simplex_polytope(2), [Halfspace((Fraction(1), Fraction(0)), Fraction(2))]).is_empty


@given(point_sets(3), st.tuples(*[st.integers(-2, 2)] * 3), st.integers(-3, 6))
def test_intersection_contains_only_feasible_points(pts, normal, offset):
    if not any(normal):
        return
    h = Halfspace(tuple(Fraction(x) for x in normal), Fraction(offset))
    p = convex_hull(pts)
    cut = intersect_halfspaces(p, [h])
    for v in cut.vertices:
        assert h.contains(v) and p.contains(v)
    for x in pts:
        if h.contains(x):
            assert cut.contains(x)
