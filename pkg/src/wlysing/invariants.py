"""Closed-form Milnor numbers, generic plane sections and the mu*-triple."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import InputError
from .newton import (
    is_convenient,
    nd_check_edge,
    newton_number_2d,
    newton_number_stabilized,
    newton_polyhedron,
)
from .poly import Polynomial, substitute_linear
from .weighted import (
    SingularityProfile,
    WeightVector,
    WLYTriple,
    initial_form,
    multiplicity,
    singularity_profile,
)

Point2 = Tuple[int, int]


def milnor_weighted_homogeneous(P: Sequence[int], d: int) -> int:
    """prod(d / p_i - 1), required to be a non-negative integer."""
    value = mpq(1)
    for p in P:
        value *= mpq(d, p) - 1
    if value.denominator != 1 or value < 0:
        raise InputError(f"no isolated weighted homogeneous singularity of degree {d} for weights {tuple(P)}")
    return int(value)


def milnor_wly(t: WLYTriple, profile: SingularityProfile) -> int:
    """mu(f + h) = prod(d/p_i - 1) + m * mu_tot."""
    return milnor_weighted_homogeneous(t.P, t.d) + t.m * profile.mu_tot


def mu_tot_reverse(t: WLYTriple, delta_cap: Optional[int] = None) -> int:
    """Recover mu_tot from the rank-oracle Milnor number of g."""
    from .local_algebra import milnor_number

    mu = milnor_number(t.g, delta_cap)
    num = mu - milnor_weighted_homogeneous(t.P, t.d)
    if num < 0 or num % t.m:
        raise InputError(f"(mu(g) - base) / m = {num}/{t.m} is not a non-negative integer")
    return num // t.m


@dataclass(frozen=True)
class MuStar:
    mu: int
    mu2: int
    mult: int

    def to_dict(self) -> dict:
        return {"mu": self.mu, "mu2": self.mu2, "mult": self.mult}

    def chain_holds(self) -> bool:
        return self.mu >= self.mu2 >= self.mult - 1 >= 0


# ---------------------------------------------------------------------------
# the Newton boundary of a generic plane section


def boundary_vertices(points) -> Tuple[Point2, ...]:
    """Vertices of the Newton boundary of a finite set of lattice points, by increasing x."""
    pts = {tuple(p) for p in points}
    if not pts:
        return ()
    poly = newton_polyhedron(Polynomial({p: 1 for p in pts}, 2))
    return tuple(sorted(poly.vertices))


def _newton_number_of_points(points) -> int:
    g = Polynomial({tuple(p): 1 for p in points}, 2)
    if is_convenient(g):
        return newton_number_2d(g)
    return newton_number_stabilized(g)


def shadow_support(g: Polynomial) -> List[Point2]:
    """Support of g(x, y, a x + b y) for generic (a, b).

    x^i y^j z^k spreads to x^(i+s) y^(j+k-s), s = 0..k; distinct source
    terms give distinct monomials in (a, b), so nothing cancels generically.
    """
    out = set()
    for (i, j, k), _ in g.items():
        for s in range(k + 1):
            out.add((i + s, j + k - s))
    return sorted(out)


@dataclass(frozen=True)
class SectionPrediction:
    predicted_boundary: Tuple[Point2, ...]
    case_tag: str
    special_points: Dict[str, dict]
    nd_predicted: bool
    flags: Tuple[str, ...] = ()

    @property
    def predicted_nu(self) -> int:
        return _newton_number_of_points(self.predicted_boundary)

    def to_dict(self) -> dict:
        return {
            "predicted_boundary": [list(p) for p in self.predicted_boundary],
            "case_tag": self.case_tag,
            "special_points": self.special_points,
            "nd_predicted": self.nd_predicted,
            "flags": list(self.flags),
            "predicted_nu": self.predicted_nu,
        }


def _side_points(f: Polynomial, P: WeightVector, end: Point2, side: int, specials: dict, flags: list):
    """Extra points of the section boundary near the segment end on axis ``side``.

    side 0 is the x side (end A), side 1 the y side (end B); coordinates are
    written for side 0 and mirrored for side 1.
    """
    other = 1 - side
    label = "A" if side == 0 else "B"
    weights = (P.p1, P.p2)
    if end[other] == 0:
        specials[label] = {"point": list(end), "rule": "on the axis"}
        return []
    extra = []
    # D: from the lowest z-power of f restricted to the coordinate plane {other = 0}
    plane_terms = [e for e in f.support() if e[other] == 0]
    if plane_terms:
        e_lo = min(plane_terms, key=lambda e: e[2])
        beta = e_lo[side] + e_lo[2]
        D = [0, 0]
        D[side] = beta
        extra.append(tuple(D))
        specials["D" if side == 0 else "D_y"] = {
            "point": list(D),
            "rule": "lowest z-power on the coordinate plane",
            "from": list(e_lo),
        }
    else:
        flags.append(f"f vanishes on the coordinate plane through the {label} side")
    if end[other] == 1:
        specials[label] = {"point": list(end), "rule": f"of the form x^a y ({'x' if side == 0 else 'y'} side)"}
        return extra
    specials[label] = {"point": list(end), "rule": "interior to the axis (claim term needed)"}
    d = f.weighted_degrees(tuple(P))[0]
    p_side = weights[side]
    if (d - P.p3) % p_side:
        flags.append(f"no lattice point for the claim term on the {label} side")
        return extra
    alpha = (d - P.p3) // p_side
    claim = [0, 0, 1]
    claim[side] = alpha
    if f.coefficient(tuple(claim)) == 0:
        flags.append(f"claim term missing on the {label} side")
        return extra
    C = [0, 0]
    C[side], C[other] = alpha, 1
    Cp = [0, 0]
    Cp[side] = alpha + 1
    extra += [tuple(C), tuple(Cp)]
    names = ("C", "C'") if side == 0 else ("C_y", "C'_y")
    specials[names[0]] = {"point": list(C), "rule": "from the claim term", "from": claim}
    specials[names[1]] = {"point": list(Cp), "rule": "from the claim term", "from": claim}
    if plane_terms:
        # position of D relative to the line through the end point and C
        ax, ay = end[side], end[other]
        cx, cy = alpha, 1
        dx, dy = beta, 0
        cross = (cx - ax) * (dy - ay) - (cy - ay) * (dx - ax)
        position = "on" if cross == 0 else ("below" if cross < 0 else "above")
        specials["D" if side == 0 else "D_y"]["position"] = position
    return extra


def predict_section_boundary(f: Polynomial, P) -> SectionPrediction:
    """Newton boundary of f(x, y, a x + b y) for generic (a, b), from Delta alone."""
    P = WeightVector.of(P)
    lo, hi = f.weighted_degrees(P.as_tuple())
    if lo != hi:
        raise InputError("f must be weighted homogeneous")
    d = lo
    tag = P.case_tag
    specials: Dict[str, dict] = {}
    flags: List[str] = []
    if tag == "equal-weights":
        pts = [(d, 0), (0, d)]
        specials["A"] = {"point": [d, 0], "rule": "degree-d line"}
        specials["B"] = {"point": [0, d], "rule": "degree-d line"}
        return SectionPrediction(boundary_vertices(pts), tag, specials, True, ())
    f0 = [(e[0], e[1]) for e in f.support() if e[2] == 0]
    if not f0:
        raise InputError("f(x, y, 0) vanishes identically")
    A = max(f0)
    B = min(f0)
    points = list(f0)
    if tag == "p2-greater-p3":
        points += _side_points(f, P, A, 0, specials, flags)
        points += _side_points(f, P, B, 1, specials, flags)
        if A[1] >= 2 and B[0] >= 2:
            flags.append("both segment ends are interior; union of both constructions")
        nd = not any("missing" in fl or "vanishes" in fl for fl in flags)
    else:
        specials["A"] = {"point": list(A), "rule": "end of Gamma(f(x,y,0))"}
        specials["B"] = {"point": list(B), "rule": "end of Gamma(f(x,y,0))"}
        convenient = A[1] == 0 and B[0] == 0
        flags.append(
            "extra hypothesis Gamma(f^H) = Gamma(f(x,y,0)) "
            + ("holds: f(x,y,0) is convenient" if convenient else "must be verified")
        )
        nd = convenient
    return SectionPrediction(boundary_vertices(points), tag, specials, nd, tuple(flags))


@dataclass(frozen=True)
class SectionResult:
    nu: int
    boundary: Tuple[Point2, ...]
    consistency: bool
    agree: bool
    matches_prediction: Optional[bool]
    trials: Tuple[dict, ...] = field(default=())
    prediction: Optional[SectionPrediction] = None

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "boundary": [list(p) for p in self.boundary],
            "consistency": self.consistency,
            "agree": self.agree,
            "matches_prediction": self.matches_prediction,
            "trials": list(self.trials),
            "prediction": self.prediction.to_dict() if self.prediction else None,
        }


def section_nu(gH: Polynomial) -> int:
    if is_convenient(gH):
        return newton_number_2d(gH)
    return newton_number_stabilized(gH)


def section_is_nd(gH: Polynomial) -> bool:
    poly = newton_polyhedron(gH)
    return all(nd_check_edge(gH, e) for e in poly.faces_of_dim(1))


def generic_section(
    g: Polynomial,
    P=None,
    trials: int = 5,
    seed: int = 0,
    box: int = 10**4,
) -> SectionResult:
    """Newton data of g(x, y, a x + b y) over seeded random (a, b).

    Every trial's boundary and Newton number are reported; disagreement is
    surfaced through ``agree`` rather than resolved.
    """
    if g.arity != 3:
        raise InputError("generic_section expects a polynomial in three variables")
    if trials < 1:
        raise InputError("at least one trial is required")
    prediction = None
    if P is not None:
        P = WeightVector.of(P)
        prediction = predict_section_boundary(initial_form(g, P), P)
    rows = []
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        a = rng.randint(-box, box)
        b = rng.randint(-box, box)
        gH = substitute_linear(g, a, b)
        bnd = tuple(sorted(newton_polyhedron(gH).vertices))
        rows.append({"a": a, "b": b, "nu": section_nu(gH), "boundary": bnd, "nd": section_is_nd(gH)})
    nus = {r["nu"] for r in rows}
    bnds = {r["boundary"] for r in rows}
    agree = len(nus) == 1 and len(bnds) == 1
    matches = None
    if prediction is not None:
        matches = all(r["boundary"] == prediction.predicted_boundary for r in rows)
    consistency = agree and matches is not False and all(r["nd"] for r in rows)
    out_rows = tuple({**r, "boundary": [list(p) for p in r["boundary"]]} for r in rows)
    return SectionResult(rows[0]["nu"], rows[0]["boundary"], consistency, agree, matches, out_rows, prediction)


def mu_star_triple(
    t: WLYTriple,
    profile: Optional[SingularityProfile] = None,
    trials: int = 5,
    seed: int = 0,
) -> MuStar:
    """(mu, mu of a generic plane section, multiplicity) of g = f + h."""
    if profile is None:
        profile = singularity_profile(t.f, t.P)
    section = generic_section(t.g, t.P, trials, seed)
    if not section.agree:
        raise InputError("generic plane sections disagree across trials")
    return MuStar(milnor_wly(t, profile), section.nu, multiplicity(t.g))
