"""Newton polyhedra in two and three variables.

Facets of Gamma_+(f) are found by testing candidate primitive normals built
from pairs and triples of support points (and coordinate directions); the
supports we meet are small, so the cubic scan is cheaper than a general hull.
Lower-dimensional compact faces are intersections of facets.  A face is
compact exactly when the sum of the normals of the facets through it is a
strictly positive covector, and that sum is the face's witness covector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import univariate as up
from .errors import InputError
from .poly import Exponent, Polynomial

Vector = Tuple[int, ...]


def _primitive(v: Sequence[int]) -> Optional[Vector]:
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        return None
    return tuple(x // g for x in v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b) -> Vector:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[mpq(x) for x in v] for v in vectors if any(v)]
    rank = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def remove_dominated(points: Iterable[Exponent]) -> List[Exponent]:
    """Points not lying in q + R^n_+ for another support point q."""
    pts = sorted(set(points))
    keep = []
    for p in pts:
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts):
            keep.append(p)
    return keep


def _hull_2d(points: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Convex hull vertices, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Face:
    """A compact face of the Newton boundary.

    ``covector`` is the primitive normal for top-dimensional faces and the
    sum of the incident facet normals otherwise; either way its minimum over
    Gamma_+ is attained exactly on this face.
    """

    dim: int
    vertices: Tuple[Exponent, ...]
    covector: Vector
    d_value: int
    lattice_volume: mpq
    points: Tuple[Exponent, ...] = field(default=(), compare=False)
    normals: Tuple[Vector, ...] = field(default=(), compare=False)

    def contains(self, exp: Sequence[int]) -> bool:
        return _dot(self.covector, exp) == self.d_value

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "covector": list(self.covector),
            "d_value": self.d_value,
            "lattice_volume": _rational_str(self.lattice_volume),
        }


def _rational_str(q: mpq):
    q = mpq(q)
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Facet:
    """A facet of Gamma_+ (compact or not): normal >= 0, min value, support points on it."""

    normal: Vector
    value: int
    points: Tuple[Exponent, ...]


@dataclass(frozen=True)
class NewtonPolyhedron:
    arity: int
    vertices: Tuple[Exponent, ...]
    faces: Tuple[Face, ...]
    facets: Tuple[Facet, ...]
    support: Tuple[Exponent, ...]

    def faces_of_dim(self, dim: int) -> List[Face]:
        return [f for f in self.faces if f.dim == dim]

    @property
    def top_faces(self) -> List[Face]:
        return self.faces_of_dim(self.arity - 1)

    def face_with_covector(self, covector: Sequence[int]) -> Optional[Face]:
        w = _primitive(covector)
        for f in self.top_faces:
            if f.covector == w:
                return f
        return None

    def contains(self, point: Sequence[int]) -> bool:
        """Membership of a lattice point in Gamma_+."""
        return all(_dot(ft.normal, point) >= ft.value for ft in self.facets)

    def boundary_key(self):
        """Hashable description of the compact boundary, for equality tests."""
        return tuple(sorted((f.dim, f.vertices) for f in self.faces))

    def same_boundary(self, other: "NewtonPolyhedron") -> bool:
        return self.arity == other.arity and self.boundary_key() == other.boundary_key()

    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "vertices": [list(v) for v in self.vertices],
            "faces": [f.to_dict() for f in self.faces],
        }


def _candidate_normals(points: Sequence[Exponent], n: int) -> set:
    units = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    cands = set(units)

    def push(v):
        w = _primitive(v)
        if w is None:
            return
        if all(x <= 0 for x in w):
            w = tuple(-x for x in w)
        if all(x >= 0 for x in w):
            cands.add(w)

    if n == 2:
        for p, q in combinations(points, 2):
            d = _sub(q, p)
            push((d[1], -d[0]))
        return cands
    for p, q in combinations(points, 2):
        d = _sub(q, p)
        for e in units:
            push(_cross(d, e))
    for p, q, r in combinations(points, 3):
        push(_cross(_sub(q, p), _sub(r, p)))
    return cands


def _facets(points: Sequence[Exponent], n: int) -> List[Facet]:
    out = []
    for w in sorted(_candidate_normals(points, n)):
        vals = [_dot(w, p) for p in points]
        m = min(vals)
        on = tuple(p for p, v in zip(points, vals) if v == m)
        dirs = [_sub(p, on[0]) for p in on[1:]]
        dirs += [tuple(1 if i == j else 0 for i in range(n)) for j in range(n) if w[j] == 0]
        if _rank(dirs) == n - 1:
            out.append(Facet(w, m, on))
    return out


def _lattice_area(poly_vertices: Sequence[Exponent], normal: Vector) -> mpq:
    """Normalized area of a planar lattice polygon in R^3 given in cyclic order."""
    a = poly_vertices[0]
    twice = 0
    for b, c in zip(poly_vertices[1:], poly_vertices[2:]):
        cr = _cross(_sub(b, a), _sub(c, a))
        k = next(x // y for x, y in zip(cr, normal) if y != 0)
        twice += abs(k)
    return mpq(twice, 2)


def _order_polygon(points: Sequence[Exponent], normal: Vector) -> Tuple[Exponent, ...]:
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    proj = {(p[keep[0]], p[keep[1]]): p for p in points}
    hull = _hull_2d(list(proj))
    return tuple(proj[h] for h in hull)


def _segment_ends(points: Sequence[Exponent]) -> Tuple[Exponent, Exponent]:
    pts = sorted(points)
    return pts[0], pts[-1]


def newton_polyhedron(f: Polynomial) -> NewtonPolyhedron:
    """Vertices, facets and all compact faces of Gamma_+(f)."""
    if f.is_zero():
        raise InputError("Newton polyhedron of the zero polynomial")
    n = f.arity
    if n not in (2, 3):
        raise InputError("Newton polyhedra are supported in two or three variables")
    pts = remove_dominated(f.support())
    facets = _facets(pts, n)
    incident: Dict[Exponent, List[Facet]] = {p: [ft for ft in facets if p in ft.points] for p in pts}

    faces: List[Face] = []
    vertices = []
    for p in pts:
        normals = [ft.normal for ft in incident[p]]
        if _rank(normals) == n:
            vertices.append(p)
            w = _primitive([sum(c) for c in zip(*normals)])
            faces.append(Face(0, (p,), w, _dot(w, p), mpq(1), (p,), tuple(normals)))

    if n == 2:
        for ft in facets:
            if all(x > 0 for x in ft.normal) and len(ft.points) >= 2:
                a, b = _segment_ends(ft.points)
                length = gcd(*(abs(x) for x in _sub(b, a)))
                faces.append(Face(1, (a, b), ft.normal, ft.value, mpq(length), ft.points, (ft.normal,)))
    else:
        seen = set()
        for f1, f2 in combinations(facets, 2):
            common = tuple(p for p in f1.points if p in f2.points)
            if len(common) < 2:
                continue
            a, b = _segment_ends(common)
            if (a, b) in seen:
                continue
            if _rank([_sub(p, a) for p in common]) != 1:
                continue
            seen.add((a, b))
            through = [ft for ft in facets if a in ft.points and b in ft.points]
            w = _primitive([sum(c) for c in zip(*(ft.normal for ft in through))])
            if all(x > 0 for x in w):
                length = gcd(*(abs(x) for x in _sub(b, a)))
                on = tuple(p for p in pts if _dot(w, p) == _dot(w, a))
                faces.append(
                    Face(1, (a, b), w, _dot(w, a), mpq(length), on, tuple(ft.normal for ft in through))
                )
        for ft in facets:
            if all(x > 0 for x in ft.normal):
                poly = _order_polygon(ft.points, ft.normal)
                area = _lattice_area(poly, ft.normal)
                faces.append(Face(2, poly, ft.normal, ft.value, area, ft.points, (ft.normal,)))

    faces.sort(key=lambda fc: (fc.dim, sorted(fc.vertices)))
    return NewtonPolyhedron(n, tuple(sorted(vertices)), tuple(faces), tuple(facets), tuple(pts))


def face_function(f: Polynomial, face: Face) -> Polynomial:
    """Sum of the terms of ``f`` whose exponents lie on ``face``."""
    out = {e: c for e, c in f.items() if face.contains(e)}
    if not all(face.contains(e) for e in face.vertices) or any(v not in out for v in face.vertices):
        raise InputError("face is not a face of this polynomial")
    return Polynomial(out, f.arity, f.names)


def is_convenient(f: Polynomial) -> bool:
    """Gamma_+(f) meets every coordinate axis."""
    if f.is_zero():
        return False
    n = f.arity
    for i in range(n):
        if not any(all(e[j] == 0 for j in range(n) if j != i) for e in f.support()):
            return False
    return True


def _axis_intercept(f: Polynomial, i: int) -> int:
    n = f.arity
    vals = [e[i] for e in f.support() if all(e[j] == 0 for j in range(n) if j != i)]
    return min(vals)


def _area_under_2d(f: Polynomial) -> mpq:
    """Area of the region between the axes and Gamma(f), f convenient in two variables."""
    poly = newton_polyhedron(f)
    verts = sorted(poly.vertices, key=lambda v: (v[0], -v[1]))
    a = _axis_intercept(f, 0)
    b = _axis_intercept(f, 1)
    ring = [(0, 0), (a, 0)] + list(reversed(verts)) + [(0, b)]
    dedup = []
    for p in ring:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if dedup[0] == dedup[-1]:
        dedup.pop()
    s = 0
    for (x1, y1), (x2, y2) in zip(dedup, dedup[1:] + dedup[:1]):
        s += x1 * y2 - x2 * y1
    return mpq(abs(s), 2)


def _require_convenient(f: Polynomial):
    if f.is_zero():
        raise InputError("zero polynomial")
    if f.constant_term() != 0:
        raise InputError("polynomial does not vanish at the origin")
    if not is_convenient(f):
        raise InputError("polynomial is not convenient")


def newton_number_2d(f: Polynomial) -> int:
    """Kouchnirenko number 2V - a - b + 1 of a convenient polynomial in two variables."""
    if f.arity != 2:
        raise InputError("newton_number_2d expects two variables")
    _require_convenient(f)
    v = _area_under_2d(f)
    nu = 2 * v - _axis_intercept(f, 0) - _axis_intercept(f, 1) + 1
    return int(nu)


def newton_number_3d(f: Polynomial) -> int:
    """Kouchnirenko number 6V3 - 2V2 + V1 - 1 of a convenient polynomial in three variables."""
    if f.arity != 3:
        raise InputError("newton_number_3d expects three variables")
    _require_convenient(f)
    poly = newton_polyhedron(f)
    six_v3 = sum(2 * face.d_value * face.lattice_volume for face in poly.top_faces)
    v2 = mpq(0)
    for pair in ((0, 1), (0, 2), (1, 2)):
        v2 += _area_under_2d(f.drop_variables(pair))
    v1 = sum(_axis_intercept(f, i) for i in range(3))
    return int(six_v3 - 2 * v2 + v1 - 1)


def newton_number(f: Polynomial) -> int:
    return newton_number_2d(f) if f.arity == 2 else newton_number_3d(f)


DEFAULT_N_CAP = 200


def newton_number_stabilized(f: Polynomial, n_cap: int = DEFAULT_N_CAP, step: int = 5) -> int:
    """nu(f + sum x_i^N) for growing N, returned once two consecutive values agree."""
    from .errors import ResourceCapExceeded

    if f.is_zero() or f.constant_term() != 0:
        raise InputError("polynomial must vanish at the origin")
    start = 2 * max(max(e) for e in f.support()) + 3
    previous = None
    N = start
    while N <= n_cap:
        g = f
        for i in range(f.arity):
            e = [0] * f.arity
            e[i] = N
            g = g + Polynomial.monomial(e, 1, f.names)
        value = newton_number(g)
        if value == previous:
            return value
        previous = value
        N += step
    raise ResourceCapExceeded(f"Newton number did not stabilize below N={n_cap}")


def edge_polynomial(f: Polynomial, edge: Face) -> up.UPoly:
    """Face function along an edge as a polynomial in the edge parameter.

    With endpoints a, b and primitive step s = (b - a)/len, the term at a + j*s
    becomes the coefficient of t^j.
    """
    if edge.dim != 1:
        raise InputError("not an edge")
    a, b = edge.vertices
    length = int(edge.lattice_volume)
    step = tuple(x // length for x in _sub(b, a))
    coeffs = []
    for j in range(length + 1):
        e = tuple(x + j * s for x, s in zip(a, step))
        coeffs.append(f.coefficient(e))
    return up.trim(coeffs)


def nd_check_edge(f: Polynomial, edge: Face) -> bool:
    """Edge non-degeneracy: the edge polynomial has distinct nonzero roots."""
    p = edge_polynomial(f, edge)
    if not p or p[0] == 0:
        return False
    return up.degree(up.gcd(p, up.deriv(p))) <= 0


def nd_check_2face(f: Polynomial, face: Face) -> bool:
    """No critical point of the face function in the torus.

    By the Euler relation the torus critical points of a quasi-homogeneous
    face function are the torus singular points of its dehomogenization at
    z = 1.  The partials may share a factor off the curve, so we ask the
    torus solver for common zeros of F, F_u, F_v rather than enumerate
    singular points.
    """
    from .errors import NonIsolatedError
    from .poly import partial_derivative
    from .torus import torus_system_solve

    if face.dim != 2 or f.arity != 3:
        raise InputError("nd_check_2face expects a 2-face of a polynomial in three variables")
    chart = _chart_z1(face_function(f, face))
    try:
        sol = torus_system_solve([chart, partial_derivative(chart, 0), partial_derivative(chart, 1)])
    except NonIsolatedError:
        return False
    return sol.empty


def _chart_z1(f: Polynomial) -> Polynomial:
    from .poly import substitute_value

    return substitute_value(f, 2, 1)


def nd_check_face(f: Polynomial, face: Face) -> bool:
    if face.dim == 0:
        return True
    if face.dim == 1:
        return nd_check_edge(f, face)
    return nd_check_2face(f, face)


def is_newton_nondegenerate(f: Polynomial, proper_only_of: Optional[Face] = None) -> bool:
    """ND on every compact face (or, with ``proper_only_of``, on every face except that one)."""
    poly = newton_polyhedron(f)
    for face in poly.faces:
        if proper_only_of is not None and face.dim == 2 and face.vertices == proper_only_of.vertices:
            continue
        if not nd_check_face(f, face):
            return False
    return True
