"""From plane projective curves to candidate mu-Zariski pairs of surface singularities.

The pipeline: a homogeneous curve h of degree D with its singularities off
the coordinate triangle becomes f(x, y, z) = h(x, y^p1, z^p1)... written in
the weighted chart form z^(p1 D) * H(x / z^p1, y / z) with P = (p1, 1, 1);
a tail of P-degree p1*D + m turns f into a weighted Le-Yomdin germ g = f + h.
Whether the input curves form a Zariski pair is a topological fact we
cannot compute; it is carried through as a recorded assertion.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from . import univariate as up
from .errors import DegenerateError, InputError, NonIsolatedError
from .invariants import (
    MuStar,
    generic_section,
    milnor_weighted_homogeneous,
    milnor_wly,
)
from .newton import newton_polyhedron
from .poly import (
    Polynomial,
    as_rational,
    gcd_multivariate,
    parse,
    partial_derivative,
    substitute_power,
    substitute_value,
)
from .torus import singular_points
from .weighted import (
    DEFAULT_ORACLE_BUDGET,
    Diagnostics,
    SingularityProfile,
    WeightVector,
    WLYTriple,
    check_W_doubleprime,
    check_W_prime,
    multiplicity,
    singularity_profile,
    weighted_homogenize,
)
from .zeta import ZetaDivisor, oka_wly_zeta, wly_local_factors, zeta_degree

# ---------------------------------------------------------------------------
# curve inputs


@dataclass(frozen=True)
class CurveInput:
    h: Polynomial
    degree: int
    claimed_profile: SingularityProfile
    zariski_role: str = ""
    name: str = ""

    def to_text(self) -> str:
        mus = ",".join(str(m) for m in self.claimed_profile.local_mu) or "none"
        lines = [f"name: {self.name}"] if self.name else []
        lines += [f"degree: {self.degree}", f"profile: {mus}"]
        if self.zariski_role:
            lines.append(f"role: {self.zariski_role}")
        lines.append(f"poly: {self.h}")
        return "\n".join(lines) + "\n"


CURVE_KEYS = {"name", "degree", "profile", "role", "poly"}


def parse_curve(text: str, name: str = "") -> CurveInput:
    """Read the ``.curve`` format: ``key: value`` lines, ``#`` comments.

    Keys: degree, profile (comma-separated local Milnor numbers or ``none``),
    role (free text), poly (the homogeneous polynomial), name (optional).
    """
    fields: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise InputError(f"line {lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key not in CURVE_KEYS:
            raise InputError(f"line {lineno}: unknown key {key!r}")
        fields[key] = value.strip()
    for key in ("degree", "poly"):
        if key not in fields:
            raise InputError(f"missing key {key!r}")
    h = parse(fields["poly"])
    degree = int(fields["degree"])
    prof_text = fields.get("profile", "none").strip().lower()
    mus = [] if prof_text in ("", "none") else [int(x) for x in prof_text.split(",")]
    return CurveInput(h, degree, SingularityProfile.from_local_mu(mus), fields.get("role", ""), fields.get("name", name))


def load_curve(path) -> CurveInput:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_curve(text, name=str(path))


def _binary_form_coeffs(h: Polynomial, keep: Tuple[int, int], degree: int) -> up.UPoly:
    """h restricted to the coordinate line {other = 0}, as c_j for keep[0]^j keep[1]^(D-j)."""
    r = h.drop_variables(keep)
    return [r.coefficient((j, degree - j)) for j in range(degree + 1)]


def curve_profile(h: Polynomial) -> SingularityProfile:
    """Singular points of the projective curve in the torus, in the chart z = 1."""
    locus = singular_points(substitute_value(h, 2, 1))
    types = []
    for cl in locus.clusters:
        types += [(cl.multiplicity, cl.corank)] * cl.size
    return SingularityProfile.from_local_mu(locus.local_mu, types)


def precondition_check(curve: CurveInput, check_profile: bool = True) -> Diagnostics:
    """Conditions a curve must meet before entering the pipeline."""
    diag = Diagnostics(True)
    h, D = curve.h, curve.degree
    if h.arity != 3 or h.is_zero():
        return diag.fail("h must be a nonzero polynomial in x, y, z")
    if h.min_total_degree() != D or h.total_degree() != D:
        return diag.fail(f"h is not homogeneous of degree {D}")
    partials = [partial_derivative(h, i) for i in range(3)]
    g = h
    for p in partials:
        g = gcd_multivariate(g, p)
    if g.total_degree() > 0:
        return diag.fail(f"h is not reduced (common factor {g} with its partials)")
    names = ("x", "y", "z")
    for zero, keep in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
        coeffs = _binary_form_coeffs(h, keep, D)
        label = f"h restricted to {names[zero]}=0"
        if coeffs[0] == 0 or coeffs[-1] == 0:
            return diag.fail(f"{label} is not convenient")
        p = up.trim(list(coeffs))
        if up.degree(up.gcd(p, up.deriv(p))) > 0:
            return diag.fail(f"{label} has a repeated root (degenerate)")
    # a singular point on a coordinate line would be a repeated root of the
    # restriction, so square-freeness also keeps Sing V(h) off xyz = 0
    diag.notes.append("no singular point on xyz=0 (implied by square-free restrictions)")
    diag.notes.append("line y=0 meets the curve transversally (square-free restriction)")
    if check_profile:
        try:
            prof = curve_profile(h)
        except NonIsolatedError as exc:
            return diag.fail(f"torus singular locus not finite: {exc}")
        if not prof.same_combinatorics(curve.claimed_profile):
            return diag.fail(
                f"computed profile {list(prof.local_mu)} differs from claimed {list(curve.claimed_profile.local_mu)}"
            )
        diag.notes.append(f"torus singular points verified: {list(prof.local_mu)}")
    return diag


def torus_type_sextic(seed: int, coefficient_range: int = 5, max_tries: int = 50) -> CurveInput:
    """A sextic f2^3 + f3^2 with random integer conic f2 and cubic f3.

    The six intersection points of f2 = f3 = 0 become cusps; the draw is
    repeated until the preconditions hold and exactly six cusps are found.
    """
    rng = random.Random(seed)

    def form(deg):
        return Polynomial(
            {
                (a, b, deg - a - b): rng.randint(-coefficient_range, coefficient_range) or 1
                for a in range(deg + 1)
                for b in range(deg + 1 - a)
            },
            3,
        )

    for _ in range(max_tries):
        f2, f3 = form(2), form(3)
        h = f2**3 + f3**2
        curve = CurveInput(
            h,
            6,
            SingularityProfile.from_local_mu([2] * 6, [(2, 1)] * 6),
            f"torus-type sextic f2^3 + f3^2 (seed {seed})",
            f"torus-sextic-{seed}",
        )
        if precondition_check(curve):
            return curve
    raise InputError("could not draw a valid torus-type sextic")


# ---------------------------------------------------------------------------
# building weighted pairs


def transport(curve: CurveInput, p1: int) -> Polynomial:
    """f = z^(p1 D) F(x / z^p1, y / z) with F(x, y) = h(x, y^p1, 1)."""
    if p1 < 1:
        raise InputError("p1 must be positive")
    H = substitute_value(curve.h, 2, 1)
    F = substitute_power(H, 1, p1)
    return weighted_homogenize(F, (p1, 1, 1))


def make_tail(tail: Union[str, Polynomial], P: WeightVector, d: int, m: int) -> Polynomial:
    """A tail of P-degree d + m: a variable name means that variable's pure power."""
    if isinstance(tail, Polynomial):
        return tail
    text = str(tail).strip()
    if text in ("x", "y", "z"):
        i = "xyz".index(text)
        w = P.as_tuple()[i]
        if (d + m) % w:
            raise InputError(f"{text}^k cannot have P-degree {d + m}")
        e = [0, 0, 0]
        e[i] = (d + m) // w
        return Polynomial.monomial(e)
    return parse(text)


def default_tail(f: Polynomial, P: WeightVector, d: int, m: int) -> Polynomial:
    """z^(d+m) if admissible, else x^(d+m)/p1."""
    for name in ("z", "x", "y"):
        try:
            h = make_tail(name, P, d, m)
        except InputError:
            continue
        t = WLYTriple(f, h, P, d, m)
        if check_W_doubleprime(t, run_oracle=False):
            return h
    raise InputError("no admissible monomial tail; supply one")


def build_weighted_pair(
    h0: CurveInput,
    h1: CurveInput,
    p1: int,
    tail: Union[str, Polynomial, None] = None,
    m: int = 1,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> Tuple[WLYTriple, WLYTriple]:
    """Transport both curves to P = (p1, 1, 1) and attach the tail."""
    if h0.degree != h1.degree:
        raise InputError("the two curves must have the same degree")
    out = []
    for label, curve in (("h0", h0), ("h1", h1)):
        diag = precondition_check(curve)
        if not diag:
            raise DegenerateError(f"{label}: {diag.first_failure}")
        P = WeightVector(p1, 1, 1)
        f = transport(curve, p1)
        d = p1 * curve.degree
        h = default_tail(f, P, d, m) if tail is None else make_tail(tail, P, d, m)
        t = WLYTriple(f, h, P, d, m)
        check = check_W_doubleprime(t, oracle_budget)
        if not check:
            raise DegenerateError(f"{label}: {check.first_failure}")
        expected = curve.claimed_profile.duplicated(p1)
        got = singularity_profile(f, P)
        if not got.same_combinatorics(expected):
            raise DegenerateError(f"{label}: transported profile {list(got.local_mu)} != {list(expected.local_mu)}")
        out.append(t)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# certification


@dataclass
class MemberReport:
    triple: WLYTriple
    w_doubleprime: Diagnostics
    w_prime: Diagnostics
    profile: Optional[SingularityProfile] = None
    mu_star: Optional[MuStar] = None
    zeta: Optional[ZetaDivisor] = None
    section: Optional[dict] = None
    newton_boundary: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "triple": self.triple.to_dict(),
            "w_doubleprime": self.w_doubleprime.to_dict(),
            "nd_on_proper_faces": self.w_prime.to_dict(),
            "profile": self.profile.to_dict() if self.profile else None,
            "mu_star": self.mu_star.to_dict() if self.mu_star else None,
            "zeta": self.zeta.to_list() if self.zeta is not None else None,
            "zeta_degree": zeta_degree(self.zeta) if self.zeta is not None else None,
            "section": self.section,
            "newton_boundary": self.newton_boundary,
        }


@dataclass
class CertificateReport:
    pair: Tuple[str, str]
    P: Tuple[int, int, int]
    d: int
    m: int
    members: Tuple[MemberReport, MemberReport]
    newton_boundary_equal: bool
    profiles_equal: bool
    mu_star_equal: bool
    zeta_equal: bool
    case_tag: str
    extra_hypothesis: Optional[bool]
    verdict: str
    degenerate_pair: bool
    zariski_assertion: dict
    scope: str = (
        "Zariski-pair-ness of the input curves is a user assertion; path non-existence in W'' "
        "is not decided, and the homological injectivity condition is recorded, not verified."
    )
    reasons: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-candidate"

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "P": list(self.P),
            "d": self.d,
            "m": self.m,
            "members": [m.to_dict() for m in self.members],
            "newton_boundary_equal": self.newton_boundary_equal,
            "profiles_equal": self.profiles_equal,
            "mu_star_equal": self.mu_star_equal,
            "zeta_equal": self.zeta_equal,
            "case_tag": self.case_tag,
            "extra_hypothesis": self.extra_hypothesis,
            "verdict": self.verdict,
            "degenerate_pair": self.degenerate_pair,
            "zariski_assertion": self.zariski_assertion,
            "scope": self.scope,
            "reasons": list(self.reasons),
        }


def _member(
    t: WLYTriple,
    trials: int,
    seed: int,
    oracle_budget: int,
    phis: Optional[Sequence[Polynomial]],
    needs: List[str],
) -> MemberReport:
    w2 = check_W_doubleprime(t, oracle_budget)
    w1 = check_W_prime(t.f, t.P)
    rep = MemberReport(t, w2, w1)
    rep.newton_boundary = newton_polyhedron(t.g).to_dict()
    if not w2:
        return rep
    rep.profile = singularity_profile(t.f, t.P)
    section = generic_section(t.g, t.P, trials, seed)
    rep.section = section.to_dict()
    rep.mu_star = MuStar(milnor_wly(t, rep.profile), section.nu, multiplicity(t.g))
    try:
        factors = wly_local_factors(t, rep.profile, phis)
    except InputError as exc:
        needs.append(str(exc))
        return rep
    rep.zeta = oka_wly_zeta(t, rep.profile, factors)
    return rep


def certify_pair(
    t0: WLYTriple,
    t1: WLYTriple,
    zariski_assertion: Optional[dict] = None,
    names: Tuple[str, str] = ("g0", "g1"),
    trials: int = 5,
    seed: int = 0,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    phis: Tuple[Optional[Sequence[Polynomial]], Optional[Sequence[Polynomial]]] = (None, None),
) -> CertificateReport:
    """Compare every invariant the mu-Zariski criterion needs, exactly."""
    reasons: List[str] = []
    needs: List[str] = []
    if (t0.P, t0.d, t0.m) != (t1.P, t1.d, t1.m):
        reasons.append("weights-or-degrees-mismatch")
    m0 = _member(t0, trials, seed, oracle_budget, phis[0], needs)
    m1 = _member(t1, trials, seed, oracle_budget, phis[1], needs)
    for label, mem in ((names[0], m0), (names[1], m1)):
        if not mem.w_doubleprime:
            reasons.append(f"{label}-not-in-W'': {mem.w_doubleprime.first_failure}")
    nb_equal = newton_polyhedron(t0.g).same_boundary(newton_polyhedron(t1.g))
    if not nb_equal:
        reasons.append("newton-boundary-mismatch")
    prof_equal = bool(m0.profile and m1.profile and m0.profile.same_combinatorics(m1.profile))
    if m0.profile and m1.profile and not prof_equal:
        reasons.append("singularity-profile-mismatch")
    ms_equal = bool(m0.mu_star and m1.mu_star and m0.mu_star == m1.mu_star)
    if m0.mu_star and m1.mu_star and not ms_equal:
        reasons.append("mu-star-mismatch")
    for label, mem in ((names[0], m0), (names[1], m1)):
        if mem.mu_star and not mem.mu_star.chain_holds():
            reasons.append(f"{label}-teissier-chain-violated")
        if mem.section and not mem.section["agree"]:
            reasons.append(f"{label}-section-trials-disagree")
        if mem.zeta is not None and mem.mu_star and zeta_degree(mem.zeta) != -mem.mu_star.mu - 1:
            reasons.append(f"{label}-zeta-degree-inconsistent")
    z_equal = m0.zeta is not None and m1.zeta is not None and m0.zeta == m1.zeta
    if m0.zeta is not None and m1.zeta is not None and not z_equal:
        reasons.append("zeta-mismatch")
    case = t0.P.case_tag
    extra = None
    if case == "p2-equals-p3":
        extra = all(mem.section and mem.section["matches_prediction"] for mem in (m0, m1))
        if not extra:
            reasons.append("section-hypothesis-not-verified")
    elif all(mem.section for mem in (m0, m1)):
        if not all(mem.section["matches_prediction"] for mem in (m0, m1)):
            reasons.append("section-boundary-differs-from-prediction")
    if reasons:
        verdict = f"failed({'; '.join(reasons)})"
    elif needs:
        verdict = f"needs-user-assertion({'; '.join(needs)})"
    else:
        verdict = "certified-candidate"
    degenerate = t0.g == t1.g
    assertion = dict(zariski_assertion or {})
    assertion.setdefault("status", "user assertion, not computed")
    return CertificateReport(
        names,
        t0.P.as_tuple(),
        t0.d,
        t0.m,
        (m0, m1),
        nb_equal,
        prof_equal,
        ms_equal,
        z_equal,
        case,
        extra,
        verdict,
        degenerate,
        assertion,
        reasons=reasons + needs,
    )


# ---------------------------------------------------------------------------
# family scanning


@dataclass(frozen=True)
class FamilySpec:
    f: str
    h: str
    P: WeightVector
    d: int
    m: int
    samples: Tuple[mpq, ...]
    parameter: str = "s"
    refine: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        try:
            P = WeightVector.of(data["P"])
            f, h = str(data["f"]), str(data["h"])
        except KeyError as exc:
            raise InputError(f"missing field {exc.args[0]!r}") from None
        samples = data.get("samples", 17)
        if isinstance(samples, int):
            if samples < 2:
                raise InputError("need at least two samples")
            samples = [mpq(i, samples - 1) for i in range(samples)]
        else:
            samples = [as_rational(s) for s in samples]
        fam = cls(f, h, P, int(data["d"]), int(data["m"]), tuple(samples), data.get("parameter", "s"),
                  int(data.get("refine", 0)))
        return fam

    def instantiate(self, s) -> WLYTriple:
        consts = {self.parameter: as_rational(s)}
        return WLYTriple(parse(self.f, constants=consts), parse(self.h, constants=consts), self.P, self.d, self.m)


@dataclass
class ScanResult:
    rows: List[dict]
    verdict: str
    bracket: Optional[Tuple[str, str]] = None

    @property
    def stable(self) -> bool:
        return self.verdict == "stable"

    def to_dict(self) -> dict:
        return {"rows": self.rows, "verdict": self.verdict, "bracket": list(self.bracket) if self.bracket else None}


def _rational_text(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scan_sample(spec: FamilySpec, s, oracle_budget: int = DEFAULT_ORACLE_BUDGET) -> dict:
    row = {"s": _rational_text(s)}
    try:
        t = spec.instantiate(s)
    except InputError as exc:
        row.update(valid=False, reason=str(exc))
        return row
    w1 = check_W_prime(t.f, t.P)
    if not w1:
        row.update(valid=False, reason=w1.first_failure)
        return row
    try:
        prof = singularity_profile(t.f, t.P)
    except (NonIsolatedError, DegenerateError) as exc:
        row.update(valid=False, reason=str(exc))
        return row
    mu_plus = milnor_weighted_homogeneous(t.P, t.d) + t.m * prof.mu_tot
    row.update(valid=True, k=prof.k, local_mu=list(prof.local_mu), mu_tot=prof.mu_tot, mu_plus=mu_plus)
    if mu_plus <= oracle_budget:
        from .local_algebra import milnor_rank_oracle

        res = milnor_rank_oracle(t.g)
        row["mu_oracle"] = res.colength
        if res.colength != mu_plus:
            raise DegenerateError(
                f"sample s={row['s']}: rank oracle mu {res.colength} != mu_plus {mu_plus}; precondition violated"
            )
    return row


def _signature(row: dict):
    return (row.get("k"), tuple(row.get("local_mu", ()))) if row.get("valid") else None


def scan_family(spec: FamilySpec, oracle_budget: int = DEFAULT_ORACLE_BUDGET, workers: int = 1) -> ScanResult:
    """Exact profile at each sample; 'stable' or the first bracket where it changes.

    With ``workers > 1`` the samples run in a process pool; rows come back in
    sample order either way.
    """
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(scan_sample, repeat(spec), spec.samples, repeat(oracle_budget)))
    else:
        rows = [scan_sample(spec, s, oracle_budget) for s in spec.samples]
    valid = [(s, r) for s, r in zip(spec.samples, rows) if r.get("valid")]
    for (s0, r0), (s1, r1) in zip(valid, valid[1:]):
        if _signature(r0) != _signature(r1):
            lo, hi = s0, s1
            sig_lo = _signature(r0)
            for _ in range(spec.refine):
                mid = (lo + hi) / 2
                rm = scan_sample(spec, mid, oracle_budget)
                rows.append({**rm, "refinement": True})
                if not rm.get("valid"):
                    break
                if _signature(rm) == sig_lo:
                    lo = mid
                else:
                    hi = mid
            bracket = (_rational_text(lo), _rational_text(hi))
            return ScanResult(rows, f"bifurcation in [{bracket[0]}, {bracket[1]}]", bracket)
    if len(valid) < len(rows):
        return ScanResult(rows, "stable on valid samples")
    return ScanResult(rows, "stable")


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
