from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cevian.scalar import Scalar
from cevian.projective import (
    AffineMap,
    AffineReflection,
    CENTROID,
    CoincidentArguments,
    DependentSources,
    GeneralMap,
    Homothety,
    Identity,
    InfiniteInput,
    InfinitePoint,
    LINE_AT_INFINITY,
    Line,
    MID_AB,
    MID_BC,
    MID_CA,
    NotCollinear,
    OnSideline,
    Point,
    SIDE_AB,
    SIDE_BC,
    SIDE_CA,
    Translation,
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    anticomplement,
    anticomplement_map,
    cevian_map,
    cevian_traces,
    collinear_ratio,
    complement,
    complement_map,
    direction_of,
    incident,
    iso_reflection_map,
    isotomic,
    join,
    meet,
    midpoint,
    parallel,
    parallel_through,
    perspector,
    point_reflection,
    reflect_through,
)

coords = st.integers(min_value=-20, max_value=20)


def points_off_sidelines():
    # clear of the sidelines of both the reference triangle and its
    # anticomplementary triangle, so cevian traces stay ordinary
    return st.tuples(
        coords.filter(lambda v: v != 0),
        coords.filter(lambda v: v != 0),
        coords.filter(lambda v: v != 0),
    ).filter(
        lambda t: t[0] + t[1] != 0 and t[1] + t[2] != 0 and t[2] + t[0] != 0
    ).map(lambda t: Point(*t))


def test_join_of_vertices_is_sideline():
    assert join(VERTEX_A, VERTEX_B) == SIDE_AB
    assert join(VERTEX_B, VERTEX_C) == SIDE_BC


def test_meet_of_sidelines_is_vertex():
    assert meet(SIDE_AB, SIDE_CA) == VERTEX_A


def test_join_coincident_raises():
    with pytest.raises(CoincidentArguments):
        join(Point(2, 4, 6), Point(1, 2, 3))


def test_median_infinite_point():
    median_a = join(CENTROID, MID_BC)
    at_inf = meet(median_a, LINE_AT_INFINITY)
    assert at_inf.is_infinite()
    assert incident(at_inf, median_a)


def test_projective_equality_up_to_scale():
    assert Point(2, 4, 6) == Point(1, 2, 3)
    s = Scalar(0, 1, 2)
    assert Point(s, 2 * s, 3 * s) == Point(1, 2, 3)
    assert Point(1, 2, 3) != Point(1, 2, 4)


def test_point_parse_round_trip():
    for p in (Point(2, 3, 6), Point(Scalar(1), Scalar(1, 1, 2), Scalar(1, -1, 2))):
        assert Point.parse(str(p)) == p
    line = Line(-2, 1, 1)
    assert Line.parse(str(line)) == line


def test_midpoint_of_side():
    assert midpoint(VERTEX_B, VERTEX_C) == MID_BC


def test_midpoint_needs_ordinary_points():
    with pytest.raises(InfiniteInput):
        midpoint(VERTEX_A, Point(0, 1, -1))


def test_two_medians_are_not_parallel():
    assert not parallel(join(VERTEX_A, MID_BC), join(VERTEX_B, MID_CA))
    l_g = parallel_through(CENTROID, SIDE_BC)
    assert parallel(l_g, SIDE_BC)
    assert l_g == Line(-2, 1, 1)


def test_collinear_ratio_midpoint():
    assert collinear_ratio(MID_BC, VERTEX_B, VERTEX_C) == Scalar(-1)


def test_collinear_ratio_requires_collinearity():
    with pytest.raises(NotCollinear):
        collinear_ratio(VERTEX_A, VERTEX_B, CENTROID)


def test_reflection_fixes_infinite_points():
    d = Point(0, 1, -1)
    assert reflect_through(CENTROID, d) == d
    assert reflect_through(MID_BC, VERTEX_B) == VERTEX_C


# -- the complement map ------------------------------------------------------


def test_complement_map_basics():
    k = complement_map()
    assert k(CENTROID) == CENTROID
    assert k(VERTEX_A) == MID_BC
    assert k @ anticomplement_map() == AffineMap.identity()


@given(points_off_sidelines())
@settings(max_examples=100, deadline=None)
def test_complement_closed_form(p):
    x, y, z = p.coords
    assert complement(p) == Point(y + z, z + x, x + y)


def test_classify_complement_map():
    kind = complement_map().classify()
    assert kind == Homothety(CENTROID, Scalar(Fraction(-1, 2)))


def test_classify_identity():
    assert AffineMap.identity().classify() == Identity()


def test_classify_halfturn_composition():
    # complement after a point reflection is the homothety with ratio 1/2
    # centered at the anticomplement of the reflection center
    o = Point(2, 5, 7)
    kind = (complement_map() @ point_reflection(o)).classify()
    assert kind == Homothety(anticomplement(o), Scalar(Fraction(1, 2)))


def test_classify_point_reflection():
    o = Point(1, 2, 4)
    assert point_reflection(o).classify() == Homothety(o, Scalar(-1))


def test_classify_translation():
    # column-sum-one matrix acting as identity at infinity with no fixed point
    t = AffineMap(((1, 0, 0), (1, 2, 1), (-1, -1, 0)))
    kind = t.classify()
    assert isinstance(kind, Translation)
    assert kind.direction.is_infinite()


def test_classify_general():
    m = AffineMap.from_pairs(
        ((VERTEX_A, VERTEX_B), (VERTEX_B, VERTEX_C), (VERTEX_C, VERTEX_A))
    )
    assert isinstance(m.classify(), GeneralMap)


# -- cevian maps ---------------------------------------------------------------


def test_cevian_map_fixed_point():
    p = Point(2, 3, 6)
    t = cevian_map(p)
    d, e, f = cevian_traces(p)
    assert (t(VERTEX_A), t(VERTEX_B), t(VERTEX_C)) == (d, e, f)
    q = complement(isotomic(p))
    assert t(q) == q


def test_from_pairs_rejects_dependent_sources():
    with pytest.raises(DependentSources):
        AffineMap.from_pairs(
            ((VERTEX_A, VERTEX_A), (VERTEX_B, VERTEX_B), (MID_AB, CENTROID))
        )


def test_from_pairs_rejects_infinite_targets():
    with pytest.raises(InfinitePoint):
        AffineMap.from_pairs(
            ((VERTEX_A, Point(0, 1, -1)), (VERTEX_B, VERTEX_B), (VERTEX_C, VERTEX_C))
        )


def test_degenerate_targets_allowed_but_flagged():
    m = AffineMap.from_pairs(
        ((VERTEX_A, CENTROID), (VERTEX_B, CENTROID), (VERTEX_C, MID_AB))
    )
    assert m.is_degenerate()


@given(points_off_sidelines(), points_off_sidelines())
@settings(max_examples=500, deadline=None)
def test_map_round_trip(p, x):
    t = cevian_map(p)
    assert t.inverse()(t(x)) == x


@given(points_off_sidelines(), points_off_sidelines())
@settings(max_examples=60, deadline=None)
def test_composition_keeps_column_sums_equal(p1, p2):
    m = (cevian_map(p1) @ cevian_map(p2)).matrix
    sums = [m[0][j] + m[1][j] + m[2][j] for j in range(3)]
    assert sums[0] == sums[1] == sums[2]
    assert not sums[0].is_zero()


def test_classification_scale_invariant():
    k = complement_map()
    doubled = AffineMap([[x * 2 for x in row] for row in k.matrix])
    assert doubled.classify() == k.classify()


# -- isotomic conjugation --------------------------------------------------------


def test_isotomic_examples():
    assert isotomic(CENTROID) == CENTROID
    assert isotomic(Point(2, 3, 6)) == Point(3, 2, 1)
    assert isotomic(isotomic(Point(5, 7, 11))) == Point(5, 7, 11)


def test_isotomic_on_sideline_rejected():
    with pytest.raises(OnSideline):
        isotomic(Point(0, 1, 2))


@given(points_off_sidelines())
@settings(max_examples=100, deadline=None)
def test_isotomic_involution(p):
    assert isotomic(isotomic(p)) == p


def test_isotomic_matches_trace_reflection():
    # reflecting each cevian trace in the corresponding side midpoint and
    # intersecting the new cevians reproduces the conjugate
    p = Point(3, 5, 7)
    d, e, f = cevian_traces(p)
    d2 = reflect_through(MID_BC, d)
    e2 = reflect_through(MID_CA, e)
    target = meet(join(VERTEX_A, d2), join(VERTEX_B, e2))
    assert target == isotomic(p)
    assert incident(target, join(VERTEX_C, reflect_through(MID_AB, f)))


# -- the iso-reflection ------------------------------------------------------------


def _standard_quadruple(p):
    p_iso = isotomic(p)
    return p, p_iso, complement(p_iso), complement(p)


def test_iso_reflection_swaps_pairs():
    p, p_iso, q, q_iso = _standard_quadruple(Point(2, 3, 6))
    eta = iso_reflection_map(p, p_iso, q, q_iso)
    assert eta(p) == p_iso
    assert eta(q) == q_iso
    assert eta @ eta == AffineMap.identity()
    kind = eta.classify()
    assert isinstance(kind, AffineReflection)
    v = meet(join(p, q), join(p_iso, q_iso))
    assert kind.axis == join(CENTROID, v)
    assert kind.direction == direction_of(join(p, p_iso))
    assert kind.direction.is_infinite()


def test_iso_reflection_commutes_with_complement():
    p, p_iso, q, q_iso = _standard_quadruple(Point(5, 2, 9))
    eta = iso_reflection_map(p, p_iso, q, q_iso)
    k = complement_map()
    assert eta @ k == k @ eta


def test_perspector_of_cevian_triangle():
    p = Point(4, 9, 2)
    assert perspector((VERTEX_A, VERTEX_B, VERTEX_C), cevian_traces(p)) == p


def test_perspector_none_when_not_perspective():
    tri2 = (Point(0, 1, 1), Point(1, 0, 1), Point(2, 1, 0))
    assert perspector((VERTEX_A, VERTEX_B, VERTEX_C), tri2) is None
