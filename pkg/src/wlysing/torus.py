"""Exact torus zeros and singular points of plane affine curves.

Points with irrational coordinates are never approximated.  After a generic
shear u = s - c*v the s-coordinates of the points we want are roots of a
univariate eliminant; each square-free factor r of it is treated as the
algebra Q[s]/(r), and gcds over that algebra are computed by dynamic
evaluation: whenever a leading coefficient is a zero divisor, r splits and
both branches continue.  A cluster is the set of conjugate points sharing one
such factor, so its size is deg r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import univariate as up
from .errors import DegenerateError, InputError, NonIsolatedError
from .poly import Polynomial, compose, partial_derivative, resultant

UPoly = up.UPoly

SHEARS = [mpq(c) for c in (0, 1, -1, 2, -2, 3, 5, -3, 7, mpq(1, 2), -5, 11, mpq(-1, 3), 13)]


# ---------------------------------------------------------------------------
# arithmetic in Q[s]/(r)


def _rmod(a: UPoly, r: UPoly) -> UPoly:
    return up.rem(a, r) if len(a) >= len(r) else up.trim(list(a))


def _mulmod(a: UPoly, b: UPoly, r: UPoly) -> UPoly:
    return _rmod(up.mul(a, b), r)


def _ext_gcd(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    """Return (g, x) with g = gcd(a, b) monic and x*a = g mod b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [mpq(1)], []
    while r1:
        q, r = up.divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, up.sub(s0, up.mul(q, s1))
    if not r0:
        return [], []
    inv = 1 / r0[-1]
    return up.scale(r0, inv), up.scale(s0, inv)


def _invmod(a: UPoly, r: UPoly) -> UPoly:
    g, x = _ext_gcd(_rmod(a, r), r)
    if up.degree(g) != 0:
        raise ZeroDivisionError("not invertible")
    return _rmod(x, r)


def split(r: UPoly, value: UPoly) -> Tuple[UPoly, UPoly]:
    """Split the square-free ``r`` into (part where value vanishes, part where it does not)."""
    value = _rmod(value, r)
    if not value:
        return list(r), [mpq(1)]
    g = up.gcd(value, r)
    if up.degree(g) <= 0:
        return [mpq(1)], list(r)
    return g, up.exact_div(r, g)


def _nontrivial(r: UPoly) -> bool:
    return up.degree(r) > 0


# polynomials in v with coefficients in Q[s]/(r): lists of UPoly, lowest degree first


def _vtrim(p: List[UPoly]) -> List[UPoly]:
    while p and not p[-1]:
        p.pop()
    return p


def _vreduce(p: Sequence[UPoly], r: UPoly) -> List[UPoly]:
    return _vtrim([_rmod(c, r) for c in p])


def _make_monic(r: UPoly, p: List[UPoly]) -> List[Tuple[UPoly, List[UPoly]]]:
    """Branches (r_i, p_i) with p_i monic or empty modulo r_i."""
    out = []
    work = [(r, _vreduce(p, r))]
    while work:
        r, p = work.pop()
        while p:
            lead = p[-1]
            zero, nonzero = split(r, lead)
            if not _nontrivial(zero):
                inv = _invmod(lead, r)
                out.append((r, [_mulmod(c, inv, r) for c in p]))
                break
            if not _nontrivial(nonzero):
                p = _vtrim(p[:-1])
                continue
            work.append((nonzero, _vreduce(p, nonzero)))
            r, p = zero, _vreduce(p[:-1], zero)
        else:
            out.append((r, []))
    return out


def _vrem_monic(a: List[UPoly], b: List[UPoly], r: UPoly) -> List[UPoly]:
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = _rmod(up.sub(a[shift + i], up.mul(c, b[i])), r)
        a = _vtrim(a)
    return a


def d5_gcd(r: UPoly, polys: Sequence[List[UPoly]]) -> List[Tuple[UPoly, List[UPoly]]]:
    """Monic gcd of several polynomials in v over Q[s]/(r), with splitting of r."""
    results: List[Tuple[UPoly, List[UPoly]]] = []
    work = [(r, [_vreduce(p, r) for p in polys])]
    while work:
        r, ps = work.pop()
        ps = [p for p in ps if p]
        if not ps:
            results.append((r, []))
            continue
        if len(ps) == 1:
            for ri, mi in _make_monic(r, ps[0]):
                results.append((ri, mi))
            continue
        ps.sort(key=len)
        b, rest = ps[0], ps[1:]
        for ri, bm in _make_monic(r, b):
            if not bm:
                work.append((ri, [_vreduce(p, ri) for p in rest]))
                continue
            reduced = [_vrem_monic(_vreduce(p, ri), bm, ri) for p in rest]
            work.append((ri, [bm] + reduced))
    return results


# ---------------------------------------------------------------------------
# evaluation at algebraic points


def eval_at(f: Polynomial, coords: Sequence[UPoly], r: UPoly) -> UPoly:
    """f(u(s), v(s)) reduced modulo r; coordinates are residues mod r."""
    powers = [dict() for _ in coords]

    def pw(i, e):
        if e not in powers[i]:
            if e == 0:
                powers[i][e] = [mpq(1)]
            else:
                powers[i][e] = _mulmod(pw(i, e - 1), coords[i], r)
        return powers[i][e]

    acc: UPoly = []
    for exp, c in f.items():
        term = [c]
        for i, e in enumerate(exp):
            if e:
                term = _mulmod(term, pw(i, e), r)
        acc = up.add(acc, term)
    return _rmod(acc, r)


@dataclass(frozen=True)
class PointCluster:
    """Conjugate points (u, v) = (coords[0](s), coords[1](s)) over the roots s of ``minpoly``."""

    minpoly: Tuple[mpq, ...]
    coords: Tuple[Tuple[mpq, ...], Tuple[mpq, ...]]
    multiplicity: int = 1
    corank: int = 0

    @property
    def size(self) -> int:
        return len(self.minpoly) - 1

    @property
    def r(self) -> UPoly:
        return list(self.minpoly)

    def evaluate(self, f: Polynomial) -> UPoly:
        return eval_at(f, [list(c) for c in self.coords], self.r)

    def vanishes(self, f: Polynomial) -> Tuple[UPoly, UPoly]:
        """(sub-minpoly where f vanishes, sub-minpoly where it does not)."""
        return split(self.r, self.evaluate(f))

    def restrict(self, r: UPoly) -> "PointCluster":
        return PointCluster(
            tuple(up.monic(r)),
            tuple(tuple(_rmod(list(c), r)) for c in self.coords),
            self.multiplicity,
            self.corank,
        )

    def rational_points(self) -> List[Tuple[mpq, mpq]]:
        if self.size != 1:
            return []
        root = -self.minpoly[0] / self.minpoly[1]
        return [tuple(up.evaluate(list(c), root) for c in self.coords)]

    def to_dict(self) -> dict:
        return {
            "minpoly": [str(c) for c in self.minpoly],
            "u": [str(c) for c in self.coords[0]],
            "v": [str(c) for c in self.coords[1]],
            "size": self.size,
            "multiplicity": self.multiplicity,
            "corank": self.corank,
        }


@dataclass(frozen=True)
class SingularLocus:
    """Torus singular points of an affine plane curve, grouped in conjugate clusters."""

    clusters: Tuple[PointCluster, ...]

    @property
    def count(self) -> int:
        return sum(c.size for c in self.clusters)

    @property
    def mu_total(self) -> int:
        return sum(c.size * c.multiplicity for c in self.clusters)

    @property
    def local_mu(self) -> List[int]:
        out = []
        for c in self.clusters:
            out.extend([c.multiplicity] * c.size)
        return sorted(out)


class _ShearRejected(Exception):
    pass


def _constant_lc(p: Polynomial, var: int) -> bool:
    if p.is_zero():
        return False
    coeffs = p.coefficients_in(var)
    return p.degree_in(var) == p.total_degree() and coeffs[-1].total_degree() == 0


def _shear(f: Polynomial, c: mpq) -> Polynomial:
    names = f.names
    s = Polynomial.variable(0, 2, names)
    v = Polynomial.variable(1, 2, names)
    return compose(f, [s - v * c, v])


def _as_vpoly(f: Polynomial) -> List[UPoly]:
    return [c.to_univariate() for c in f.coefficients_in(1)]


def _torus_filter(r: UPoly, coords: Sequence[UPoly]) -> UPoly:
    for c in coords:
        _, r = split(r, c)
        if not _nontrivial(r):
            break
    return r


def _perfect_power_root(r: UPoly, g: List[UPoly]) -> Optional[UPoly]:
    """If g = (v - beta)^e over Q[s]/(r), return beta."""
    e = len(g) - 1
    beta = up.scale(g[e - 1], mpq(-1, e))
    power: List[UPoly] = [[mpq(1)]]
    lin = [up.scale(beta, -1), [mpq(1)]]
    for _ in range(e):
        nxt: List[UPoly] = [[] for _ in range(len(power) + 1)]
        for i, c in enumerate(power):
            for j, d in enumerate(lin):
                nxt[i + j] = up.add(nxt[i + j], _mulmod(c, d, r))
        power = nxt
    if all(_rmod(up.sub(a, b), r) == [] for a, b in zip(power, g)):
        return _rmod(beta, r)
    return None


def _hessian_corank(f: Polynomial, coords: Sequence[UPoly], r: UPoly) -> List[Tuple[UPoly, int]]:
    fu = partial_derivative(f, 0)
    fv = partial_derivative(f, 1)
    huu = eval_at(partial_derivative(fu, 0), coords, r)
    huv = eval_at(partial_derivative(fu, 1), coords, r)
    hvv = eval_at(partial_derivative(fv, 1), coords, r)
    det = up.sub(_mulmod(huu, hvv, r), _mulmod(huv, huv, r))
    out = []
    degenerate, regular = split(r, det)
    if _nontrivial(regular):
        out.append((regular, 0))
    if _nontrivial(degenerate):
        rest = degenerate
        for entry in (huu, huv, hvv):
            _, nz = split(rest, entry)
            if _nontrivial(nz):
                out.append((nz, 1))
            rest, _ = split(rest, entry)
            if not _nontrivial(rest):
                break
        if _nontrivial(rest):
            out.append((rest, 2))
    return out


def _squarefree_nonconst(p: Polynomial) -> Polynomial:
    """Squarefree part of a bivariate polynomial with monomial factors removed."""
    import sympy

    from .poly import to_sympy_expr

    syms = sympy.symbols(" ".join(p.names))
    expr = sympy.Poly(to_sympy_expr(p, syms), *syms, domain="QQ")
    _, factors = expr.sqf_list()
    out = None
    for fac, _ in factors:
        terms = {tuple(int(e) for e in m): mpq(int(c.p), int(c.q)) for m, c in fac.terms()}
        q = Polynomial(terms, p.arity, p.names)
        if len(q) == 1:
            continue
        out = q if out is None else out * q
    return out


def _check_common_component(polys: Sequence[Polynomial]) -> None:
    """Raise when the polynomials share a factor with zeros in the torus."""
    from .poly import gcd_multivariate

    g = polys[0]
    for p in polys[1:]:
        g = gcd_multivariate(g, p)
    if g.total_degree() > 0 and _squarefree_nonconst(g) is not None:
        raise NonIsolatedError(f"common curve component {g} meets the torus")


def _strip_monomial_content(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    low = [min(e[i] for e in p.support()) for i in range(p.arity)]
    return Polynomial({tuple(a - b for a, b in zip(e, low)): c for e, c in p.items()}, p.arity, p.names)


def _solve_once(
    polys: Sequence[Polynomial],
    c: mpq,
    multiplicity_pair: Optional[Tuple[int, int]],
    prefilter: Sequence[int],
    torus: bool,
) -> List[PointCluster]:
    sheared = [_shear(p, c) for p in polys]
    i, j = multiplicity_pair if multiplicity_pair else (0, 1)
    a, b = sheared[i], sheared[j]
    if not _constant_lc(a, 1):
        if _constant_lc(b, 1):
            a, b = b, a
        else:
            raise _ShearRejected
    for k in prefilter:
        if not _constant_lc(sheared[k], 1):
            raise _ShearRejected
    ra = resultant(a, b, 1).to_univariate()
    if not ra:
        raise _NeedsGcd
    candidates = up.squarefree_part(ra)
    for k in prefilter:
        rb = resultant(sheared[k], partial_derivative(sheared[k], 1), 1).to_univariate()
        if not rb:
            raise _NeedsGcd
        candidates = up.gcd(candidates, rb)
    if up.degree(candidates) <= 0:
        return []
    pieces = up.multiplicity_split(candidates, ra)
    clusters: List[PointCluster] = []
    s_coord = [mpq(0), mpq(1)]
    for r, mult in pieces:
        if mult == 0:
            continue
        crit = d5_gcd(r, [_as_vpoly(a), _as_vpoly(b)])
        for ri, g in crit:
            if not g:
                raise _NeedsGcd
            if len(g) == 1:
                continue
            beta = _perfect_power_root(ri, g)
            if beta is None:
                raise _ShearRejected
            s_val = _rmod(s_coord, ri)
            coords = [_rmod(up.sub(s_val, up.scale(beta, c)), ri), beta]
            rest = ri
            for p in polys:
                zero, _ = split(rest, eval_at(p, coords, rest))
                rest = zero
                if not _nontrivial(rest):
                    break
            if not _nontrivial(rest):
                continue
            if torus:
                rest = _torus_filter(rest, coords)
                if not _nontrivial(rest):
                    continue
            coords = [_rmod(x, rest) for x in coords]
            clusters.append(
                PointCluster(tuple(up.monic(rest)), (tuple(coords[0]), tuple(coords[1])), mult)
            )
    return clusters


class _NeedsGcd(Exception):
    pass


def _run(polys, multiplicity_pair, prefilter, torus) -> List[PointCluster]:
    for c in SHEARS:
        try:
            return _solve_once(polys, c, multiplicity_pair, prefilter, torus)
        except _ShearRejected:
            continue
    raise InputError("no admissible shear found")


def singular_points(f: Polynomial, torus: bool = True) -> SingularLocus:
    """Singular points of the affine curve f = 0 (in the torus by default).

    Each cluster's ``multiplicity`` is the local Milnor number, read off as
    the root multiplicity of the discriminant-like eliminant Res_v(f_s, f_v),
    and ``corank`` is the corank of the Hessian there.
    """
    if f.arity != 2:
        raise InputError("singular_points expects a polynomial in two variables")
    if f.total_degree() <= 1:
        return SingularLocus(())
    fu, fv = partial_derivative(f, 0), partial_derivative(f, 1)
    if fu.is_zero() or fv.is_zero():
        _check_common_component([f, fu, fv])
        return SingularLocus(())
    try:
        clusters = _run([f, fu, fv], (1, 2), (0,), torus)
    except _NeedsGcd:
        _check_common_component([f, fu, fv])
        raise DegenerateError("the partial derivatives share a factor along which f does not vanish")
    refined = []
    for cl in clusters:
        for r, corank in _hessian_corank(f, [list(x) for x in cl.coords], cl.r):
            base = cl.restrict(r)
            refined.append(PointCluster(base.minpoly, base.coords, cl.multiplicity, corank))
    refined.sort(key=lambda k: (k.multiplicity, k.size, k.minpoly))
    return SingularLocus(tuple(refined))


@dataclass(frozen=True)
class TorusSolution:
    clusters: Tuple[PointCluster, ...]

    @property
    def count(self) -> int:
        return sum(c.size for c in self.clusters)

    @property
    def empty(self) -> bool:
        return self.count == 0

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "empty": self.empty,
            "clusters": [{"size": c.size, "multiplicity": c.multiplicity} for c in self.clusters],
        }


def torus_system_solve(system: Sequence[Polynomial], seed: int = 7) -> TorusSolution:
    """Common zeros with u*v != 0 of polynomials in two variables.

    The first polynomial is paired with a random combination of the others;
    the eliminant of that pair bounds the candidates and every equation is
    re-imposed in the gcd step.  Multiplicities are the root multiplicities
    in that eliminant.
    """
    import random

    polys = [p for p in system if not p.is_zero()]
    if not polys:
        raise NonIsolatedError("the zero system has a positive-dimensional solution set")
    if any(p.arity != 2 for p in polys):
        raise InputError("torus_system_solve expects polynomials in two variables")
    polys = [_strip_monomial_content(p) for p in polys]
    if any(p.total_degree() == 0 for p in polys):
        return TorusSolution(())
    if len(polys) == 1:
        raise NonIsolatedError("a single equation defines a curve")
    rng = random.Random(seed)
    for _ in range(8):
        combo = polys[1]
        for p in polys[2:]:
            combo = combo + p * rng.randint(1, 97)
        try:
            clusters = _run([polys[0], combo] + polys[1:], (0, 1), (), True)
            return TorusSolution(tuple(sorted(clusters, key=lambda k: (k.size, k.minpoly))))
        except _NeedsGcd:
            _check_common_component(polys)
    raise NonIsolatedError("could not separate the equations")
