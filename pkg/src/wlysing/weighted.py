"""Weight vectors, weighted homogenization, the branched-cover pullback and
membership tests for the W, W' and W'' spaces.

Torus computations on the weighted plane V_P(f) go through a smooth chart:
when p3 = 1 the chart z = 1 of P(p1, p2, 1) is already C^2; otherwise we pull
back along [x:y:z] -> [x^p1 : y^p2 : z^p3], which is unramified of degree
p1*p2*p3 over the torus, and divide counts by that degree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq


from . import univariate as up
from .errors import DegenerateError, InputError, NonIsolatedError
from .newton import Face, nd_check_face, newton_polyhedron
from .poly import Polynomial, evaluate, parse, partial_derivative, substitute_power, substitute_value
from .torus import SingularLocus, singular_points

DEFAULT_ORACLE_BUDGET = 150


@dataclass(frozen=True)
class WeightVector:
    p1: int
    p2: int
    p3: int

    def __post_init__(self):
        p = (self.p1, self.p2, self.p3)
        if any(not isinstance(x, int) or x < 1 for x in p):
            raise InputError(f"weights must be positive integers (got {p})")
        if not self.p1 >= self.p2 >= self.p3:
            raise InputError(f"weights must satisfy p1 >= p2 >= p3 (got {p})")
        if gcd(gcd(self.p1, self.p2), self.p3) != 1:
            raise InputError(f"weights must be coprime (got {p})")

    @classmethod
    def of(cls, value) -> "WeightVector":
        if isinstance(value, WeightVector):
            return value
        if isinstance(value, str):
            value = [int(x) for x in value.replace("(", "").replace(")", "").split(",")]
        return cls(*[int(x) for x in value])

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.p1, self.p2, self.p3)

    def __iter__(self):
        return iter(self.as_tuple())

    @property
    def cover_degree(self) -> int:
        return self.p1 * self.p2 * self.p3

    @property
    def case_tag(self) -> str:
        if self.p1 == self.p2 == self.p3:
            return "equal-weights"
        if self.p2 > self.p3:
            return "p2-greater-p3"
        return "p2-equals-p3"


def p_degree(f: Polynomial, P) -> Tuple[int, int]:
    """(min, max) of the weighted degree over the support."""
    if f.is_zero():
        raise InputError("weighted degree of the zero polynomial")
    return f.weighted_degrees(tuple(P))


def is_weighted_homogeneous(f: Polynomial, P, d: Optional[int] = None) -> bool:
    if f.is_zero():
        return False
    lo, hi = p_degree(f, P)
    return lo == hi and (d is None or lo == d)


def initial_form(g: Polynomial, P) -> Polynomial:
    """Terms of minimal weighted degree."""
    lo, _ = p_degree(g, P)
    return g.homogeneous_part(lo, tuple(P))


def weighted_homogenize(F: Polynomial, P) -> Polynomial:
    """z^d * F(x / z^p1, y / z^p2) with d the top (p1, p2)-degree of F; needs p3 = 1."""
    P = WeightVector.of(P)
    if P.p3 != 1:
        raise InputError("weighted homogenization needs p3 = 1")
    if F.arity != 2:
        raise InputError("weighted homogenization expects a polynomial in two variables")
    if F.is_zero():
        raise InputError("weighted homogenization of the zero polynomial")
    _, d = F.weighted_degrees((P.p1, P.p2))
    out = {(a, b, d - P.p1 * a - P.p2 * b): c for (a, b), c in F.items()}
    return Polynomial(out, 3)


def cover_pullback(f: Polynomial, P) -> Polynomial:
    """f(x^p1, y^p2, z^p3)."""
    P = WeightVector.of(P)
    out = f
    for i, p in enumerate(P):
        if p != 1:
            out = substitute_power(out, i, p)
    return out


def multiplicity(g: Polynomial) -> int:
    """Order of g at the origin."""
    if g.is_zero():
        raise InputError("multiplicity of the zero polynomial")
    if g.constant_term() != 0:
        raise InputError("polynomial does not vanish at the origin")
    return g.min_total_degree()


def delta_face(f: Polynomial, P) -> Optional[Face]:
    """The 2-face of Gamma(f) with covector P, if there is one."""
    return newton_polyhedron(f).face_with_covector(tuple(P))


@dataclass
class Diagnostics:
    ok: bool
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def fail(self, message: str) -> "Diagnostics":
        self.ok = False
        self.failures.append(message)
        return self

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self) -> Optional[str]:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures), "notes": list(self.notes)}


def check_W_prime(f: Polynomial, P, delta: Optional[Face] = None) -> Diagnostics:
    """Membership in W'_{P,d}(Delta): weighted homogeneous with Newton boundary
    exactly Delta, critical at the origin and ND on every proper face of Delta."""
    P = WeightVector.of(P)
    diag = Diagnostics(True)
    if f.arity != 3 or f.is_zero():
        return diag.fail("f must be a nonzero polynomial in three variables")
    if not is_weighted_homogeneous(f, P):
        return diag.fail(f"f is not weighted homogeneous for P={P.as_tuple()}")
    if f.constant_term() != 0 or any(partial_derivative(f, i).constant_term() != 0 for i in range(3)):
        return diag.fail("origin is not a critical point of f")
    poly = newton_polyhedron(f)
    top = poly.top_faces
    if len(top) != 1 or top[0].covector != P.as_tuple():
        return diag.fail("Newton boundary of f is not a single 2-face with covector P")
    face = top[0]
    if delta is not None and face.vertices != delta.vertices:
        return diag.fail(f"Newton boundary {list(face.vertices)} differs from the given face")
    for sub in poly.faces:
        if sub.dim == 2:
            continue
        if not nd_check_face(f, sub):
            return diag.fail(f"degenerate on the {'edge' if sub.dim == 1 else 'vertex'} {list(sub.vertices)}")
    where = coordinate_singularity(f)
    if where is not None:
        return diag.fail(f"V(f) is singular away from the origin on {where}")
    return diag


def coordinate_singularity(f: Polynomial) -> Optional[str]:
    """Where Sing V(f) meets {xyz = 0} outside the origin, or None.

    Members of W' have Sing V(f) inside the torus plus the origin whenever
    the ND stratum W is nonempty, so this is a necessary condition.  f is
    assumed weighted homogeneous with positive weights, so every orbit in a
    coordinate plane meets an axis or the line where the last free
    coordinate is 1.
    """
    polys = [f] + [partial_derivative(f, i) for i in range(3)]
    names = f.names
    for j in range(3):
        unit = [0, 0, 0]
        unit[j] = 1
        if all(evaluate(p, unit) == 0 for p in polys):
            return f"the {names[j]}-axis"
    for i in range(3):
        j, k = [v for v in range(3) if v != i]
        g: up.UPoly = []
        for p in polys:
            # restrict to x_i = 0, x_k = 1 as a polynomial in x_j
            line: Dict[int, mpq] = {}
            for e, c in p.items():
                if e[i] == 0:
                    line[e[j]] = line.get(e[j], 0) + c
            g = up.gcd(g, up.make([line.get(n, 0) for n in range(max(line, default=-1) + 1)]))
        while g and g[0] == 0:
            g = g[1:]
        if not g or up.degree(g) > 0:
            return f"the plane {names[i]}=0"
    return None


def check_W(f: Polynomial, P) -> Diagnostics:
    """W_{P,d}(Delta): W' plus non-degeneracy on Delta itself (isolated singularity)."""
    diag = check_W_prime(f, P)
    if not diag:
        return diag
    face = newton_polyhedron(f).top_faces[0]
    if not nd_check_face(f, face):
        diag.fail("degenerate on the 2-face Delta")
    return diag


# ---------------------------------------------------------------------------
# singular points of V_P(f) in the torus


def torus_chart(f: Polynomial, P) -> Tuple[Polynomial, int]:
    """Affine chart polynomial in (x, y) and the number of chart points per point of V_P(f)."""
    P = WeightVector.of(P)
    if P.p3 == 1:
        return substitute_value(f, 2, 1), 1
    return substitute_value(cover_pullback(f, P), 2, 1), P.cover_degree


def chart_tail(h: Polynomial, P) -> Polynomial:
    P = WeightVector.of(P)
    if P.p3 == 1:
        return substitute_value(h, 2, 1)
    return substitute_value(cover_pullback(h, P), 2, 1)


@dataclass(frozen=True)
class SingularityProfile:
    """k torus singular points of V_P(f) with their Milnor numbers.

    ``types`` pairs each local mu with the corank of the Hessian (0 for a
    node, 1 for A_k, 2 otherwise), one entry per point.
    """

    k: int
    local_mu: Tuple[int, ...]
    mu_tot: int
    types: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.mu_tot != sum(self.local_mu) or self.k != len(self.local_mu):
            raise InputError("inconsistent singularity profile")

    @classmethod
    def from_local_mu(cls, mus: Sequence[int], types=()) -> "SingularityProfile":
        mus = tuple(sorted(int(m) for m in mus))
        return cls(len(mus), mus, sum(mus), tuple(sorted(types)))

    def same_combinatorics(self, other: "SingularityProfile") -> bool:
        return self.k == other.k and self.local_mu == other.local_mu

    def duplicated(self, times: int) -> "SingularityProfile":
        return SingularityProfile.from_local_mu(list(self.local_mu) * times, list(self.types) * times)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "local_mu": list(self.local_mu),
            "mu_tot": self.mu_tot,
            "types": [list(t) for t in self.types],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SingularityProfile":
        return cls.from_local_mu(data.get("local_mu", []), [tuple(t) for t in data.get("types", [])])


def _locus(f: Polynomial, P) -> Tuple[SingularLocus, int]:
    return _cached_locus(f, WeightVector.of(P))


@lru_cache(maxsize=64)
def _cached_locus(f: Polynomial, P: "WeightVector") -> Tuple[SingularLocus, int]:
    # the same chart is solved by the W'' check, the profile and the report
    chart, sheets = torus_chart(f, P)
    return singular_points(chart), sheets


def singularity_profile(f: Polynomial, P) -> SingularityProfile:
    """Torus singular points of V_P(f) with exact local Milnor numbers.

    Points with irrational coordinates are handled as conjugate clusters; a
    cluster's Milnor number is the root multiplicity of the eliminant, which
    is the same for all of its members.
    """
    P = WeightVector.of(P)
    try:
        locus, sheets = _locus(f, P)
    except NonIsolatedError as exc:
        raise NonIsolatedError(f"torus singular locus of V_P(f) is not finite: {exc}") from exc
    counts = Counter()
    for cl in locus.clusters:
        counts[(cl.multiplicity, cl.corank)] += cl.size
    mus, types = [], []
    for (mu, corank), n in sorted(counts.items()):
        if n % sheets:
            raise DegenerateError("cover point count is not divisible by p1*p2*p3")
        mus.extend([mu] * (n // sheets))
        types.extend([(mu, corank)] * (n // sheets))
    return SingularityProfile.from_local_mu(mus, types)


# ---------------------------------------------------------------------------
# weighted Le-Yomdin triples


@dataclass(frozen=True)
class WLYTriple:
    f: Polynomial
    h: Polynomial
    P: WeightVector
    d: int
    m: int
    cap_M: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "P", WeightVector.of(self.P))
        if self.d < 1 or self.m < 1:
            raise InputError("d and m must be positive")
        if self.cap_M is None:
            object.__setattr__(self, "cap_M", 4 * (self.d + self.m))
        if self.cap_M < self.d + self.m:
            raise InputError("cap_M must be at least d + m")
        if self.f.arity != 3 or self.h.arity != 3:
            raise InputError("f and h must be polynomials in x, y, z")

    @property
    def g(self) -> Polynomial:
        return self.f + self.h

    @property
    def h_P(self) -> Polynomial:
        return initial_form(self.h, self.P)

    @classmethod
    def from_g(cls, g: Polynomial, P, m: Optional[int] = None) -> "WLYTriple":
        P = WeightVector.of(P)
        f = initial_form(g, P)
        h = g - f
        d = p_degree(f, P)[0]
        if h.is_zero():
            raise InputError("g has no tail beyond its weighted initial form")
        m_actual = p_degree(h, P)[0] - d
        return cls(f, h, P, d, m if m is not None else m_actual)

    def to_dict(self) -> dict:
        return {
            "f": str(self.f),
            "h": str(self.h),
            "P": list(self.P.as_tuple()),
            "d": self.d,
            "m": self.m,
            "cap_M": self.cap_M,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WLYTriple":
        try:
            f = parse(str(data["f"]))
            h = parse(str(data["h"]))
            P = WeightVector.of(data["P"])
        except KeyError as exc:
            raise InputError(f"missing field {exc.args[0]!r}") from None
        if "d" in data:
            d = int(data["d"])
        else:
            d = p_degree(f, P)[0]
        if "m" in data:
            m = int(data["m"])
        else:
            m = p_degree(h, P)[0] - d
        return cls(f, h, P, d, m, data.get("cap_M"))


def in_newton_polyhedron(h: Polynomial, f: Polynomial) -> bool:
    """Gamma_+(h) contained in Gamma_+(f)."""
    poly = newton_polyhedron(f)
    return all(poly.contains(e) for e in h.support())


def tail_avoids_singular_points(t: WLYTriple, locus: Optional[SingularLocus] = None) -> Tuple[bool, int]:
    """Condition (3'): h_P is nonzero at every torus singular point of V_P(f).

    Returns the verdict and the number of chart points where h_P vanishes.
    """
    if locus is None:
        locus, _ = _locus(t.f, t.P)
    hp = chart_tail(t.h_P, t.P)
    bad = 0
    for cl in locus.clusters:
        zero, _ = cl.vanishes(hp)
        bad += len(zero) - 1
    return bad == 0, bad


def check_W_doubleprime(
    t: WLYTriple,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    run_oracle: Optional[bool] = None,
) -> Diagnostics:
    """Weak Newton weighted-Le-Yomdin membership of g = f + h.

    Checks W' membership of f, (1) Gamma_+(h) in Gamma_+(f), (2) d(P, h) = d + m
    and the degree cap, and (3') in the torus.  When the predicted Milnor
    number is at most ``oracle_budget`` (or ``run_oracle`` is forced) the
    rank oracle confirms that g is isolated with that Milnor number.
    """
    from .invariants import milnor_weighted_homogeneous

    diag = Diagnostics(True)
    P = t.P
    if not is_weighted_homogeneous(t.f, P, t.d):
        return diag.fail(f"(0) f is not weighted homogeneous of P-degree {t.d}")
    wp = check_W_prime(t.f, P)
    if not wp:
        return diag.fail(f"(0) f not in W': {wp.first_failure}")
    if t.h.is_zero():
        return diag.fail("(2) tail h is zero")
    if not in_newton_polyhedron(t.h, t.f):
        return diag.fail("(1) Gamma_+(h) is not contained in Gamma_+(f)")
    lo, hi = p_degree(t.h, P)
    if lo != t.d + t.m:
        return diag.fail(f"(2) d(P,h) = {lo} but d + m = {t.d + t.m}")
    if hi > t.cap_M:
        return diag.fail(f"(2) P-degree of h is {hi} > cap {t.cap_M}")
    try:
        locus, sheets = _locus(t.f, P)
    except NonIsolatedError as exc:
        return diag.fail(f"(3') torus singular locus not finite: {exc}")
    ok, bad = tail_avoids_singular_points(t, locus)
    if not ok:
        return diag.fail(f"(3') h_P vanishes at {bad // sheets} singular point(s) of V_P(f)")
    mus = [c.multiplicity for c in locus.clusters for _ in range(c.size)]
    predicted = milnor_weighted_homogeneous(P, t.d) + t.m * sum(mus) // sheets
    diag.notes.append(f"predicted mu = {predicted}")
    if run_oracle is None:
        run_oracle = predicted <= oracle_budget
    if run_oracle:
        from .local_algebra import milnor_rank_oracle

        res = milnor_rank_oracle(t.g)
        if not res.finite:
            return diag.fail("g does not have an isolated singularity at the origin (rank oracle)")
        if res.colength != predicted:
            return diag.fail(f"rank oracle mu = {res.colength} differs from predicted {predicted}")
        diag.notes.append(f"rank oracle confirms mu = {res.colength} (delta {res.delta_used})")
    else:
        diag.notes.append(f"rank-oracle isolation check skipped (predicted mu {predicted} > budget {oracle_budget})")
    return diag
