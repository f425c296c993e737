"""Exact conics: construction, polarity, tangency, and line intersection.

A conic is a symmetric 3x3 Scalar matrix up to scale; a point X lies on it
iff X^T C X = 0.  Degenerate conics (line pairs) are representable and
flagged, but polarity-based operations reject them explicitly.  All
constructions here are solved as exact null spaces of incidence systems, and
every result contains its defining points with zero residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Union

from .scalar import (
    DoubleRoot,
    NeedsExtension,
    NoRealRoots,
    Scalar,
    ScalarLike,
    TwoRoots,
    ZERO,
    as_scalar,
    solve_quadratic,
)
from .projective import (
    AffineMap,
    CoincidentArguments,
    GeometryError,
    LINE_AT_INFINITY,
    Line,
    Mat3,
    Point,
    SIDE_AB,
    SIDE_BC,
    SIDE_CA,
    VERTEX_A,
    VERTEX_B,
    VERTEX_C,
    adjugate3,
    are_collinear,
    canonical_tuple,
    det3,
    dot,
    incident,
    join,
    mat_mul,
    mat_vec,
    meet,
    midpoint,
    null_space,
    perspector,
    transpose,
)


class RankDeficient(GeometryError):
    """The incidence system admits infinitely many conics."""


class DegenerateConic(GeometryError):
    pass


class NotPerspective(GeometryError):
    pass


class NoSuchConic(GeometryError):
    pass


class NotIncident(GeometryError):
    pass


class SelfConjugate(GeometryError):
    pass


class DegenerateQuadrangle(GeometryError):
    pass


class Conic:
    """Symmetric matrix conic; equality up to nonzero scale."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence[ScalarLike]]):
        rows = [tuple(as_scalar(x) for x in row) for row in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("3x3 matrix required")
        for i in range(3):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("conic matrix must be symmetric")
        flat = canonical_tuple([x for row in rows for x in row])
        self.matrix: Mat3 = (flat[0:3], flat[3:6], flat[6:9])  # type: ignore[assignment]

    @classmethod
    def from_coefficients(
        cls,
        xx: ScalarLike,
        yy: ScalarLike,
        zz: ScalarLike,
        xy: ScalarLike,
        xz: ScalarLike,
        yz: ScalarLike,
    ) -> Conic:
        """Conic of the form xx*x^2 + ... + xy*x*y + xz*x*z + yz*y*z = 0."""
        a, b, c = as_scalar(xx), as_scalar(yy), as_scalar(zz)
        d, e, f = as_scalar(xy) / 2, as_scalar(xz) / 2, as_scalar(yz) / 2
        return cls(((a, d, e), (d, b, f), (e, f, c)))

    @classmethod
    def circumconic(cls, a: ScalarLike, b: ScalarLike, c: ScalarLike) -> Conic:
        """The circumconic a*yz + b*zx + c*xy = 0."""
        return cls.from_coefficients(0, 0, 0, c, b, a)

    def evaluate(self, p: Point) -> Scalar:
        return dot(p.coords, mat_vec(self.matrix, p.coords))

    def contains(self, p: Point) -> bool:
        return self.evaluate(p).is_zero()

    def determinant(self) -> Scalar:
        return det3(self.matrix)

    def is_degenerate(self) -> bool:
        return self.determinant().is_zero()

    def polar(self, p: Point) -> Line:
        coeffs = mat_vec(self.matrix, p.coords)
        if all(x.is_zero() for x in coeffs):
            raise DegenerateConic(f"{p} is a singular point; polar undefined")
        return Line.from_triple(coeffs)

    def tangent_at(self, p: Point) -> Line:
        if not self.contains(p):
            raise NotIncident(f"{p} is not on the conic")
        return self.polar(p)

    def pole(self, l: Line) -> Point:
        if self.is_degenerate():
            raise DegenerateConic("pole needs a nondegenerate conic")
        return Point.from_triple(mat_vec(adjugate3(self.matrix), l.coeffs))

    def center(self) -> Point:
        """Pole of the line at infinity; infinite exactly for parabolas."""
        return self.pole(LINE_AT_INFINITY)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Conic):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(("conic", self.matrix))

    def __repr__(self) -> str:
        return f"Conic({str(self)!r})"

    def __str__(self) -> str:
        rows = ", ".join(
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.matrix
        )
        return f"[{rows}]"

    @classmethod
    def parse(cls, text: str) -> Conic:
        inner = text.strip()
        if not (inner.startswith("[[") and inner.endswith("]]")):
            raise ValueError(f"malformed conic {text!r}")
        rows = inner[1:-1].split("],")
        entries = [
            [Scalar.parse(x) for x in row.strip().lstrip("[").rstrip("]").split(",")]
            for row in rows
        ]
        return cls(entries)


# ---------------------------------------------------------------------------
# constructions


def _conic_row(p: Point) -> tuple[Scalar, ...]:
    x, y, z = p.coords
    return (x * x, y * y, z * z, 2 * x * y, 2 * x * z, 2 * y * z)


def _conic_from_vector(v: Sequence[Scalar]) -> Conic:
    a, b, c, d, e, f = v
    return Conic(((a, d, e), (d, b, f), (e, f, c)))


def conic_through_five(points: Sequence[Point]) -> Conic:
    """The unique conic on five points; degenerate (three collinear) conics
    are returned flagged, but four collinear points or duplicates leave a
    whole pencil and raise RankDeficient."""
    if len(points) != 5:
        raise ValueError("exactly five points required")
    for p, q in combinations(points, 2):
        if p == q:
            raise RankDeficient(f"duplicate point {p}")
    basis = null_space([_conic_row(p) for p in points], 6)
    if len(basis) != 1:
        raise RankDeficient("five points do not determine a unique conic")
    return _conic_from_vector(basis[0])


def circumconic_with_center(o: Point) -> Conic:
    """The circumconic of ABC with the given ordinary center.

    Solved from the linear conditions making o the pole of the line at
    infinity.  For generic o the conic is unique; when o is the midpoint of a
    side the conditions drop rank and the mirror-symmetric member of the
    resulting pencil is returned (the one that is the isotomic image of a
    line parallel to that side).  For other points of a sideline only a
    degenerate line pair qualifies, which is an error.
    """
    if o.is_infinite():
        raise NoSuchConic("center must be ordinary")
    if o in (VERTEX_A, VERTEX_B, VERTEX_C):
        raise NoSuchConic("no circumconic is centered at a vertex")
    u, v, w = o.coords
    rows = [
        (w - v, -u, u),
        (v, u - w, -v),
        (-w, w, v - u),
    ]
    basis = null_space(rows, 3)
    if len(basis) == 2:
        # o is a side midpoint; impose the mirror symmetry of that side
        if u.is_zero():
            rows.append((ZERO, Scalar(1), Scalar(-1)))
        elif v.is_zero():
            rows.append((Scalar(1), ZERO, Scalar(-1)))
        else:
            rows.append((Scalar(1), Scalar(-1), ZERO))
        basis = null_space(rows, 3)
    if len(basis) != 1:
        raise NoSuchConic(f"no circumconic has center {o}")
    conic = Conic.circumconic(*basis[0])
    if conic.is_degenerate() or conic.center() != o:
        raise NoSuchConic(f"only a degenerate conic is centered at {o}")
    return conic


_SIDELINES = (SIDE_BC, SIDE_CA, SIDE_AB)
_OPPOSITE_VERTICES = ((VERTEX_B, VERTEX_C), (VERTEX_C, VERTEX_A), (VERTEX_A, VERTEX_B))


def inconic_with_contacts(d: Point, e: Point, f: Point) -> Conic:
    """The conic tangent to the sidelines at three cevian traces.

    The contacts must be the traces of a single point (checked first); the
    six polar conditions are then consistent and determine the conic.
    """
    contacts = (d, e, f)
    for contact, side, (v1, v2) in zip(contacts, _SIDELINES, _OPPOSITE_VERTICES):
        if not incident(contact, side):
            raise NotIncident(f"{contact} is not on {side}")
        if contact == v1 or contact == v2:
            raise NotPerspective(f"contact {contact} is a vertex")
    p = perspector((VERTEX_A, VERTEX_B, VERTEX_C), contacts)
    if p is None:
        raise NotPerspective("contacts are not the cevian traces of one point")
    rows = []
    for contact, kept in zip(contacts, (0, 1, 2)):
        x, y, z = contact.coords
        component_rows = {
            0: (x, ZERO, ZERO, y, z, ZERO),
            1: (ZERO, y, ZERO, x, ZERO, z),
            2: (ZERO, ZERO, z, ZERO, x, y),
        }
        for idx in range(3):
            if idx != kept:
                rows.append(component_rows[idx])
    basis = null_space(rows, 6)
    if len(basis) != 1:
        raise NotPerspective("contact conditions do not pin down one conic")
    conic = _conic_from_vector(basis[0])
    for contact in contacts:
        if not conic.contains(contact):
            raise NotPerspective("solved conic misses a contact")  # pragma: no cover
    return conic


def nine_point_conic(quadrangle: Sequence[Point]) -> Conic:
    """The nine-point conic of a quadrangle with respect to the line at
    infinity: through the three diagonal points and the six side midpoints.

    With exactly one infinite vertex the midpoints of the sides through it
    degenerate to that vertex itself (the harmonic conjugate of the vertex
    with respect to the side's endpoints), and the conic passes through it.
    """
    if len(quadrangle) != 4:
        raise ValueError("exactly four points required")
    infinite = [p for p in quadrangle if p.is_infinite()]
    if len(infinite) > 1:
        raise DegenerateQuadrangle("at most one vertex may be infinite")
    for trio in combinations(quadrangle, 3):
        if are_collinear(*trio):
            raise DegenerateQuadrangle(f"collinear vertices {trio}")
    indices = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))
    nine: list[Point] = []
    for i, j, k, l in indices:
        nine.append(meet(join(quadrangle[i], quadrangle[j]), join(quadrangle[k], quadrangle[l])))
    for i, j in combinations(range(4), 2):
        p, q = quadrangle[i], quadrangle[j]
        if p.is_infinite():
            nine.append(p)
        elif q.is_infinite():
            nine.append(q)
        else:
            nine.append(midpoint(p, q))
    basis = null_space([_conic_row(p) for p in nine], 6)
    if len(basis) != 1:
        raise DegenerateQuadrangle("nine-point system is rank-deficient")
    conic = _conic_from_vector(basis[0])
    return conic


def second_intersection(l: Line, conic: Conic, known: Point) -> Point:
    """The residual intersection of a line with a conic through a known
    point of both; equals the known point exactly when l is tangent there.
    Rational in the working field because one root is already known."""
    if conic.is_degenerate():
        raise DegenerateConic("second_intersection needs a nondegenerate conic")
    if not incident(known, l) or not conic.contains(known):
        raise NotIncident(f"{known} must lie on both the line and the conic")
    other = _second_point_on(l, avoid=known)
    cy = mat_vec(conic.matrix, other.coords)
    u = dot(other.coords, cy)
    v = dot(known.coords, cy)
    coords = tuple(u * k - 2 * v * y for k, y in zip(known.coords, other.coords))
    if all(x.is_zero() for x in coords):  # pragma: no cover
        raise DegenerateConic("line lies on the conic")
    return Point.from_triple(coords)


def _points_on_line(l: Line) -> list[Point]:
    a, b, c = l.coeffs
    candidates = ((ZERO, c, -b), (-c, ZERO, a), (b, -a, ZERO))
    points = []
    for cand in candidates:
        if all(x.is_zero() for x in cand):
            continue
        p = Point.from_triple(cand)
        if p not in points:
            points.append(p)
    return points


def _second_point_on(l: Line, avoid: Point) -> Point:
    for p in _points_on_line(l):
        if p != avoid:
            return p
    raise CoincidentArguments("line has no second point")  # pragma: no cover


@dataclass(frozen=True)
class TwoPoints:
    p1: Point
    p2: Point


@dataclass(frozen=True)
class TangentAt:
    p: Point


@dataclass(frozen=True)
class NoRealIntersection:
    pass


LineConicResult = Union[TwoPoints, TangentAt, NoRealIntersection, NeedsExtension]


def line_conic_intersections(
    l: Line, conic: Conic, field_d: Optional[int] = None
) -> LineConicResult:
    """All intersections of a line with a nondegenerate conic.

    Reduces to one exact quadratic; a positive non-square discriminant
    surfaces as NeedsExtension(d) so the caller can lift the coordinates to
    Q(sqrt(d)) and pass field_d=d to retry.
    """
    if conic.is_degenerate():
        raise DegenerateConic("intersection needs a nondegenerate conic")
    pts = _points_on_line(l)
    x, y = pts[0], pts[1]
    cy = mat_vec(conic.matrix, y.coords)
    a2 = conic.evaluate(x)
    b2 = dot(x.coords, cy)
    c2 = conic.evaluate(y)
    if a2.is_zero() and c2.is_zero():
        return TwoPoints(x, y)
    if a2.is_zero():
        if b2.is_zero():
            return TangentAt(x)
        residual = Point.from_triple(
            tuple(c2 * xi - 2 * b2 * yi for xi, yi in zip(x.coords, y.coords))
        )
        return TwoPoints(x, residual)
    if c2.is_zero():
        if b2.is_zero():
            return TangentAt(y)
        residual = Point.from_triple(
            tuple(a2 * yi - 2 * b2 * xi for xi, yi in zip(x.coords, y.coords))
        )
        return TwoPoints(y, residual)
    outcome = solve_quadratic(a2, 2 * b2, c2, field_d=field_d)
    if isinstance(outcome, TwoRoots):
        return TwoPoints(
            _combine(x, y, outcome.r1),
            _combine(x, y, outcome.r2),
        )
    if isinstance(outcome, DoubleRoot):
        return TangentAt(_combine(x, y, outcome.r))
    if isinstance(outcome, NoRealRoots):
        return NoRealIntersection()
    assert isinstance(outcome, NeedsExtension)
    return outcome


def _combine(x: Point, y: Point, t: Scalar) -> Point:
    return Point.from_triple(
        tuple(t * xi + yi for xi, yi in zip(x.coords, y.coords))
    )


def tangent_conics_at(c1: Conic, c2: Conic, z: Point) -> bool:
    """Whether two nondegenerate conics touch at z: z on both with one shared
    polar line (for infinite z on hyperbolas this is a shared asymptote)."""
    if c1.is_degenerate() or c2.is_degenerate():
        raise DegenerateConic("tangency test needs nondegenerate conics")
    if not (c1.contains(z) and c2.contains(z)):
        return False
    return c1.polar(z) == c2.polar(z)


class InfinityInvolution:
    """The conjugate-direction involution a central conic induces on the
    line at infinity: X -> polar(X) . l_inf."""

    __slots__ = ("conic",)

    def __init__(self, conic: Conic):
        if conic.is_degenerate():
            raise DegenerateConic("involution needs a nondegenerate conic")
        if conic.center().is_infinite():
            raise DegenerateConic("parabolas induce no involution at infinity")
        self.conic = conic

    def __call__(self, x: Point) -> Point:
        if not x.is_infinite():
            raise NotIncident(f"{x} is not at infinity")
        if self.conic.contains(x):
            raise SelfConjugate(f"{x} is an asymptotic direction")
        return meet(self.conic.polar(x), LINE_AT_INFINITY)


def conjugate_involution(conic: Conic, x: Point) -> Point:
    return InfinityInvolution(conic)(x)


def transform_conic(mapping: AffineMap, conic: Conic) -> Conic:
    """Push-forward of a conic: contains mapping(X) iff the original contains X."""
    if mapping.is_degenerate():
        raise DegenerateConic("cannot push a conic through a degenerate map")
    adj = adjugate3(mapping.matrix)
    return Conic(mat_mul(transpose(adj), mat_mul(conic.matrix, adj)))


def isotomic_image_of_line(l: Line) -> Conic:
    """The circumconic swept by the isotomic conjugates of a line's points."""
    a, b, c = l.coeffs
    return Conic.circumconic(a, b, c)


def steiner_circumellipse() -> Conic:
    """xy + yz + zx = 0: the centroid-centered circumconic."""
    return isotomic_image_of_line(LINE_AT_INFINITY)


def infinity_intersection_count(conic: Conic) -> int:
    """0, 1, or 2 meets with the line at infinity (ellipse/parabola/hyperbola
    in the rendering triangle); no theorem check depends on this label."""
    outcome = line_conic_intersections(LINE_AT_INFINITY, conic)
    if isinstance(outcome, TwoPoints) or isinstance(outcome, NeedsExtension):
        return 2
    if isinstance(outcome, TangentAt):
        return 1
    return 0
