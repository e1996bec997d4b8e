from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from newtonids.mixed_volume import MVQuery, mixed_volume_coconvex, mixed_volume_convex, mv_interpolation_oracle
from newtonids.newton import UnboundedComplementError, complement_volume, linear_polyhedron, newton_polyhedron
from newtonids.polytope import convex_hull, dilate, standard_simplex_polytope

L2 = linear_polyhedron(2)
D = newton_polyhedron([(2, 0), (0, 6)])


def axis_polyhedron(m, hi):
    axes = st.tuples(*[st.integers(1, hi)] * m)
    extra = st.lists(st.tuples(*[st.integers(0, hi)] * m), max_size=2)
    return st.builds(lambda a, e: newton_polyhedron([tuple(a[i] if j == i else 0 for j in range(m)) for i in range(m)] + e, m), axes, extra)


def test_coconvex_small_example():
    # complement of D is the triangle (0,0),(2,0),(0,6); L + D has generators (3,0),(1,1),(0,7)
    # CVol(L+D) = 21/2 - 6 - 1/2 - ... evaluated by hand: polarization gives 1
    assert mixed_volume_coconvex([L2, D]) == 1
    assert mv_interpolation_oracle(MVQuery.build([L2, D])) == 1


def test_convex_mv_of_complement_regions():
    tri = convex_hull([(0, 0), (2, 0), (0, 6)])
    assert mixed_volume_convex([standard_simplex_polytope(2), tri]) == 3


def test_diagonal_is_complement_volume():
    assert mixed_volume_coconvex([(D, 2)]) == complement_volume(D)


def test_query_validation():
    with pytest.raises(ValueError):
        MVQuery.build([(L2, 3)])
    with pytest.raises(ValueError):
        MVQuery.build([L2, linear_polyhedron(3)])
    with pytest.raises(UnboundedComplementError):
        MVQuery.build([L2, newton_polyhedron([(1, 0)], 2)])
    q = MVQuery.build([L2, L2])
    assert q.slots == ((L2, 2),)


def test_convex_validation():
    with pytest.raises(ValueError):
        mixed_volume_convex([])
    with pytest.raises(ValueError):
        mixed_volume_convex([standard_simplex_polytope(3)])


def test_truncation_override():
    h = newton_polyhedron([(2, 0, 0), (3, 0, 0), (0, 6, 0), (0, 0, 2)])
    l3 = linear_polyhedron(3)
    for t in (None, 20, 40):
        assert 6 * mixed_volume_coconvex([l3, (h, 2)], t) == 4
        assert 6 * mixed_volume_coconvex([(l3, 2), h], t) == 2


def test_convex_bkk_count():
    # two generic conics meet in 4 points
    tri = dilate(standard_simplex_polytope(2), 2)
    assert 2 * mixed_volume_convex([tri, tri]) == 4


@settings(max_examples=25)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(axis_polyhedron(d, 4), min_size=d, max_size=d)))
def test_symmetry(bodies):
    assert mixed_volume_coconvex(bodies) == mixed_volume_coconvex(bodies[::-1])


@settings(max_examples=25)
@given(st.integers(2, 4).flatmap(lambda d: axis_polyhedron(d, 4)))
def test_diagonal(p):
    assert mixed_volume_coconvex([(p, p.dim)]) == complement_volume(p)


@settings(max_examples=20)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(axis_polyhedron(d, 3), min_size=d, max_size=d)), st.integers(2, 3))
def test_dilation_homogeneity(bodies, c):
    scaled = newton_polyhedron([tuple(c * x for x in v) for v in bodies[0].vertices], bodies[0].dim)
    assert mixed_volume_coconvex([scaled] + bodies[1:]) == c * mixed_volume_coconvex(bodies)


@settings(max_examples=20)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(axis_polyhedron(d, 3), min_size=d, max_size=d)))
def test_truncation_independence(bodies):
    q = MVQuery.build(bodies)
    assert mixed_volume_coconvex(q, q.max_vertex_sum() + 3) == mixed_volume_coconvex(q)


@settings(max_examples=20)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(axis_polyhedron(d, 3), min_size=d, max_size=d)))
def test_interpolation_oracle(bodies):
    q = MVQuery.build(bodies)
    assert mv_interpolation_oracle(q) == mixed_volume_coconvex(q)


@settings(max_examples=20)
@given(
    st.integers(2, 3).flatmap(
        lambda d: st.lists(st.lists(st.tuples(*[st.integers(0, 3)] * d), min_size=d + 1, max_size=d + 4), min_size=d, max_size=d)
    )
)
def test_convex_oracle_and_positivity(pointsets):
    polys = [convex_hull(p) for p in pointsets]
    mv = mixed_volume_convex(polys)
    assert mv >= 0
    assert mv_interpolation_oracle(polys, convex=True) == mv


def test_monotone_in_each_slot():
    # the co-convex MV grows when one complement grows
    small = newton_polyhedron([(1, 0), (0, 2)])
    big = newton_polyhedron([(2, 0), (0, 4)])
    assert mixed_volume_coconvex([small, D]) <= mixed_volume_coconvex([big, D])


def test_scaling_normalisation():
    # MV(L, ..., L) = 1/d!
    for d in range(2, 6):
        assert mixed_volume_coconvex([(linear_polyhedron(d), d)]) == Fraction(1, factorial(d))
