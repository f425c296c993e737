import pytest
from hypothesis import given, settings, strategies as st

from cevian.scalar import NeedsExtension, Scalar
from cevian.projective import (
    CENTROID,
    LINE_AT_INFINITY,
    Line,
    MID_AB,
    MID_BC,
    MID_CA,
    Point,
    SIDE_BC,
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    anticomplement,
    cevian_traces,
    complement,
    complement_map,
    direction_of,
    incident,
    isotomic,
    join,
    midpoint,
)
from cevian.conics import (
    Conic,
    DegenerateConic,
    DegenerateQuadrangle,
    InfinityInvolution,
    NoRealIntersection,
    NoSuchConic,
    NotIncident,
    NotPerspective,
    RankDeficient,
    SelfConjugate,
    TangentAt,
    TwoPoints,
    circumconic_with_center,
    conic_through_five,
    infinity_intersection_count,
    inconic_with_contacts,
    isotomic_image_of_line,
    line_conic_intersections,
    nine_point_conic,
    second_intersection,
    steiner_circumellipse,
    tangent_conics_at,
    transform_conic,
)

VERTICES = (VERTEX_A, VERTEX_B, VERTEX_C)

interior = st.integers(min_value=1, max_value=15)
nonzero = st.integers(min_value=-15, max_value=15).filter(lambda v: v != 0)


def test_circumconics_have_zero_diagonal():
    conic = conic_through_five((*VERTICES, CENTROID, Point(1, 2, 3)))
    assert all(conic.matrix[i][i].is_zero() for i in range(3))
    for p in (*VERTICES, CENTROID, Point(1, 2, 3)):
        assert conic.contains(p)


def test_cevian_conic_contains_isotomic_conjugate():
    p = Point(2, 3, 6)
    q = complement(isotomic(p))
    conic = conic_through_five((*VERTICES, p, q))
    assert conic.contains(Point(3, 2, 1))


def test_three_collinear_gives_degenerate_flag():
    conic = conic_through_five(
        (VERTEX_A, VERTEX_B, Point(1, 1, 0), CENTROID, Point(1, 2, 3))
    )
    assert conic.is_degenerate()
    assert conic.determinant().is_zero()


def test_four_collinear_rank_deficient():
    with pytest.raises(RankDeficient):
        conic_through_five(
            (VERTEX_A, VERTEX_B, Point(1, 1, 0), Point(1, 2, 0), CENTROID)
        )


def test_duplicate_points_rank_deficient():
    with pytest.raises(RankDeficient):
        conic_through_five((*VERTICES, CENTROID, Point(2, 2, 2)))


@given(st.tuples(interior, interior, interior), st.tuples(nonzero, nonzero, nonzero))
@settings(max_examples=40, deadline=None)
def test_five_point_conic_contains_inputs(t1, t2):
    p1, p2 = Point(*t1), Point(*t2)
    pts = (*VERTICES, p1, p2)
    try:
        conic = conic_through_five(pts)
    except RankDeficient:
        return
    for p in pts:
        assert conic.contains(p)


def test_steiner_circumellipse():
    conic = steiner_circumellipse()
    assert conic == Conic.from_coefficients(0, 0, 0, 1, 1, 1)
    assert conic.center() == CENTROID
    assert infinity_intersection_count(conic) == 0


def test_polar_pole_involution():
    conic = steiner_circumellipse()
    p = Point(2, 5, 3)
    assert conic.pole(conic.polar(p)) == p


def test_polar_of_point_on_conic_is_tangent():
    conic = circumconic_with_center(Point(1, 2, 4))
    tangent = conic.tangent_at(VERTEX_A)
    assert incident_count(conic, tangent) == 1


def incident_count(conic, line):
    out = line_conic_intersections(line, conic)
    if isinstance(out, TangentAt):
        return 1
    if isinstance(out, TwoPoints):
        return 2
    if isinstance(out, NeedsExtension):
        return 2
    return 0


@given(st.tuples(nonzero, nonzero, nonzero))
@settings(max_examples=60, deadline=None)
def test_circumconic_center_round_trip(t):
    o = Point(*t)
    if o.is_infinite() or o in VERTICES:
        return
    try:
        conic = circumconic_with_center(o)
    except NoSuchConic:
        return
    assert conic.center() == o
    for v in VERTICES:
        assert conic.contains(v)


def test_circumconic_centered_at_centroid_is_steiner():
    assert circumconic_with_center(CENTROID) == steiner_circumellipse()


def test_circumconic_center_at_side_midpoint():
    conic = circumconic_with_center(MID_BC)
    assert conic.center() == MID_BC
    for v in VERTICES:
        assert conic.contains(v)
    # the chosen pencil member is the isotomic image of the line through the
    # anticomplement of A parallel to BC
    assert conic == Conic.circumconic(2, 1, 1)


def test_circumconic_center_on_sideline_fails():
    with pytest.raises(NoSuchConic):
        circumconic_with_center(Point(0, 1, 2))


def test_circumconic_center_on_medial_sideline_fails():
    # (1:2:3) satisfies x + y = z: only a degenerate line pair qualifies
    with pytest.raises(NoSuchConic):
        circumconic_with_center(Point(1, 2, 3))


def test_circumconic_center_at_vertex_fails():
    with pytest.raises(NoSuchConic):
        circumconic_with_center(VERTEX_A)


def test_inconic_at_midpoints_is_steiner_inellipse():
    conic = inconic_with_contacts(MID_BC, MID_CA, MID_AB)
    assert conic.center() == CENTROID
    for m in (MID_BC, MID_CA, MID_AB):
        assert conic.contains(m)
        assert conic.polar(m) in (SIDE_BC, Line(0, 1, 0), Line(0, 0, 1))


def test_inconic_center_is_isotom_complement():
    p = Point(2, 3, 6)
    conic = inconic_with_contacts(*cevian_traces(p))
    assert conic.center() == complement(isotomic(p)) == Point(3, 4, 5)


def test_inconic_rejects_non_perspective_contacts():
    with pytest.raises(NotPerspective):
        inconic_with_contacts(MID_BC, MID_CA, Point(2, 1, 0))


def test_inconic_rejects_vertex_contact():
    with pytest.raises(NotPerspective):
        inconic_with_contacts(VERTEX_B, MID_CA, MID_AB)


def test_nine_point_conic_of_centroidal_quadrangle():
    conic = nine_point_conic((*VERTICES, CENTROID))
    for p in (MID_BC, MID_CA, MID_AB):
        assert conic.contains(p)
    for v in VERTICES:
        assert conic.contains(midpoint(v, CENTROID))


def test_nine_point_conic_center():
    p = Point(2, 3, 6)
    p_iso = isotomic(p)
    conic = nine_point_conic((*VERTICES, p_iso))
    q = complement(p_iso)
    assert conic.center() == complement(q)


def test_nine_point_conic_all_nine_points():
    quad = (*VERTICES, Point(3, 5, 7))
    conic = nine_point_conic(quad)
    sides = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    for i, j in sides:
        assert conic.contains(midpoint(quad[i], quad[j]))
    diag = (
        meet_sides(quad, 0, 1, 2, 3),
        meet_sides(quad, 0, 2, 1, 3),
        meet_sides(quad, 0, 3, 1, 2),
    )
    for d in diag:
        assert conic.contains(d)


def meet_sides(quad, i, j, k, l):
    from cevian.projective import meet

    return meet(join(quad[i], quad[j]), join(quad[k], quad[l]))


def test_nine_point_conic_with_infinite_vertex():
    inf = Point(3, 6, -9)  # 3+6-9 = 0
    conic = nine_point_conic((*VERTICES, inf))
    assert conic.contains(inf)
    for m in (MID_BC, MID_CA, MID_AB):
        assert conic.contains(m)


def test_nine_point_conic_degenerate_quadrangle():
    with pytest.raises(DegenerateQuadrangle):
        nine_point_conic((VERTEX_A, VERTEX_B, Point(1, 1, 0), CENTROID))
    with pytest.raises(DegenerateQuadrangle):
        nine_point_conic((VERTEX_A, VERTEX_B, Point(0, 1, -1), Point(1, 0, -1)))


def test_second_intersection_tangent_returns_known():
    conic = circumconic_with_center(Point(1, 2, 4))
    tangent = conic.tangent_at(VERTEX_A)
    assert second_intersection(tangent, conic, VERTEX_A) == VERTEX_A


def test_second_intersection_along_sideline():
    conic = circumconic_with_center(Point(1, 2, 4))
    assert second_intersection(SIDE_BC, conic, VERTEX_B) == VERTEX_C


def test_second_intersection_requires_incidence():
    conic = steiner_circumellipse()
    with pytest.raises(NotIncident):
        second_intersection(SIDE_BC, conic, CENTROID)


@given(st.tuples(nonzero, nonzero, nonzero))
@settings(max_examples=80, deadline=None)
def test_second_intersection_lands_on_both(t):
    # secants through a vertex of a fixed circumconic
    conic = circumconic_with_center(Point(1, 2, 4))
    other = Point(*t)
    if other == VERTEX_A:
        return
    line = join(VERTEX_A, other)
    residual = second_intersection(line, conic, VERTEX_A)
    assert conic.contains(residual)
    assert incident(residual, line)


def test_line_conic_two_points():
    conic = circumconic_with_center(Point(1, 2, 4))
    out = line_conic_intersections(SIDE_BC, conic)
    assert isinstance(out, TwoPoints)
    assert {out.p1, out.p2} == {VERTEX_B, VERTEX_C}


def test_line_conic_none():
    inellipse = inconic_with_contacts(MID_BC, MID_CA, MID_AB)
    assert line_conic_intersections(LINE_AT_INFINITY, inellipse) == NoRealIntersection()


def test_line_conic_tangent():
    conic = circumconic_with_center(Point(1, 2, 4))
    out = line_conic_intersections(conic.tangent_at(VERTEX_A), conic)
    assert out == TangentAt(VERTEX_A)


def test_line_conic_needs_extension_then_lift():
    locus = Conic.from_coefficients(-1, 0, 0, 1, 1, 1)
    l_g = Line(-2, 1, 1)
    assert line_conic_intersections(l_g, locus) == NeedsExtension(2)
    out = line_conic_intersections(l_g, locus, field_d=2)
    assert isinstance(out, TwoPoints)
    assert {out.p1, out.p2} == {
        Point(Scalar(1), Scalar(1, 1, 2), Scalar(1, -1, 2)),
        Point(Scalar(1), Scalar(1, -1, 2), Scalar(1, 1, 2)),
    }
    for p in (out.p1, out.p2):
        assert locus.contains(p)


def test_tangent_conics_at():
    conic = steiner_circumellipse()
    assert tangent_conics_at(conic, conic, VERTEX_A)
    inellipse = inconic_with_contacts(MID_BC, MID_CA, MID_AB)
    # the inellipse touches the sidelines, not the circumellipse, at D0
    assert not tangent_conics_at(inellipse, conic, MID_BC)


def test_conic_transform_push_forward():
    p = Point(2, 3, 6)
    q = complement(isotomic(p))
    conic = conic_through_five((*VERTICES, p, q))
    k = complement_map()
    image = transform_conic(k, conic)
    assert image.contains(complement(p))
    assert image.contains(complement(VERTEX_A))
    assert not image.contains(p) or conic.contains(anticomplement(p))


@given(st.tuples(nonzero, nonzero, nonzero))
@settings(max_examples=100, deadline=None)
def test_transform_preserves_incidence(t):
    x = Point(*t)
    conic = steiner_circumellipse()
    k = complement_map()
    image = transform_conic(k, conic)
    assert image.contains(complement(x)) == conic.contains(x)


def test_center_commutes_with_complement():
    conic = circumconic_with_center(Point(2, 3, 7))
    image = transform_conic(complement_map(), conic)
    assert image.center() == complement(conic.center())


def test_conjugate_involution_is_involutive():
    p = Point(2, 3, 6)
    inconic = inconic_with_contacts(*cevian_traces(p))
    psi = InfinityInvolution(inconic)
    x = Point(1, 1, -2)
    assert psi(psi(x)) == x


def test_conjugate_involution_contact_direction():
    # the direction conjugate to a contact cevian is the touched side
    p = Point(2, 3, 6)
    d, e, f = cevian_traces(p)
    q = complement(isotomic(p))
    psi = InfinityInvolution(inconic_with_contacts(d, e, f))
    assert psi(direction_of(join(q, d))) == direction_of(SIDE_BC)


def test_conjugate_involution_rejects_asymptotic_direction():
    # 2yz + 2zx + 9xy factors over the rationals on the infinity line
    hyperbola = Conic.circumconic(2, 2, 9)
    assert infinity_intersection_count(hyperbola) == 2
    psi = InfinityInvolution(hyperbola)
    with pytest.raises(SelfConjugate):
        psi(Point(1, 2, -3))
    with pytest.raises(NotIncident):
        psi(CENTROID)


def test_involution_needs_ordinary_center():
    p = Point(3, 6, -2)  # the inconic here is a parabola
    parabola = inconic_with_contacts(*cevian_traces(p))
    assert infinity_intersection_count(parabola) == 1
    with pytest.raises(DegenerateConic):
        InfinityInvolution(parabola)


def test_isotomic_image_of_line():
    line = Line(2, 1, 1)
    conic = isotomic_image_of_line(line)
    assert conic == Conic.circumconic(2, 1, 1)
    # the image of a generic line point under the isotomic map is on the conic
    p = Point(1, 3, -5)  # 2*1 + 3 - 5 = 0
    assert conic.contains(isotomic(p))


def test_conic_parse_round_trip():
    conic = circumconic_with_center(Point(1, 2, 4))
    assert Conic.parse(str(conic)) == conic
