"""Monodromy zeta functions as exact divisors.

Convention: zeta(t) = prod_q det(I - t h_q)^((-1)^(q+1)), written as
prod_k (1 - t^k)^(e_k); the divisor is the map k -> e_k.  With this
convention an isolated singularity in n variables has degree (-1)^n mu - 1.
"""

from __future__ import annotations

from itertools import combinations
from math import factorial, gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from gmpy2 import mpq

from .errors import DegenerateError, InputError
from .newton import newton_polyhedron
from .poly import Polynomial, parse


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class LambdaExpr:
    """Formal sum of symbols Lambda_a with rational coefficients.

    Lambda_a stands for the divisor of t^a - 1; products follow
    Lambda_a * Lambda_b = gcd(a, b) Lambda_lcm(a, b).
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Optional[Mapping[int, object]] = None):
        clean: Dict[int, mpq] = {}
        for a, c in (coefficients or {}).items():
            a = int(a)
            if a < 1:
                raise InputError("Lambda indices must be positive")
            c = mpq(c)
            if c:
                clean[a] = clean.get(a, mpq(0)) + c
                if not clean[a]:
                    del clean[a]
        self.coefficients = clean

    @classmethod
    def symbol(cls, index) -> "LambdaExpr":
        """Lambda_u for a positive rational u = a/c in lowest terms, i.e. (1/c) Lambda_a."""
        u = mpq(index)
        if u <= 0:
            raise InputError("Lambda index must be positive")
        return cls({int(u.numerator): mpq(1, int(u.denominator))})

    def __add__(self, other: "LambdaExpr") -> "LambdaExpr":
        out = dict(self.coefficients)
        for a, c in other.coefficients.items():
            out[a] = out.get(a, mpq(0)) + c
        return LambdaExpr(out)

    def __neg__(self) -> "LambdaExpr":
        return LambdaExpr({a: -c for a, c in self.coefficients.items()})

    def __sub__(self, other: "LambdaExpr") -> "LambdaExpr":
        return self + (-other)

    def scale(self, c) -> "LambdaExpr":
        c = mpq(c)
        return LambdaExpr({a: v * c for a, v in self.coefficients.items()})

    def __mul__(self, other):
        if not isinstance(other, LambdaExpr):
            return self.scale(other)
        return lambda_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaExpr) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*L{a}" for a, c in sorted(self.coefficients.items()))
        return f"LambdaExpr({terms or '0'})"


def lambda_mul(x: LambdaExpr, y: LambdaExpr) -> LambdaExpr:
    out: Dict[int, mpq] = {}
    for a, c in x.coefficients.items():
        for b, e in y.coefficients.items():
            k = _lcm(a, b)
            out[k] = out.get(k, mpq(0)) + c * e * gcd(a, b)
    return LambdaExpr(out)


ONE = LambdaExpr({1: 1})


class ZetaDivisor:
    """prod_k (1 - t^k)^(e_k) with integer exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for k, e in (exponents or {}).items():
            k, e = int(k), int(e)
            if k < 1:
                raise InputError("divisor indices must be positive")
            if e:
                clean[k] = clean.get(k, 0) + e
                if not clean[k]:
                    del clean[k]
        self.exponents = dict(sorted(clean.items()))

    @classmethod
    def from_lambda(cls, expr: LambdaExpr) -> "ZetaDivisor":
        bad = [c for c in expr.coefficients.values() if c.denominator != 1]
        if bad:
            raise DegenerateError(f"non-integral divisor coefficients {expr!r}")
        return cls({a: int(c) for a, c in expr.coefficients.items()})

    def to_lambda(self) -> LambdaExpr:
        return LambdaExpr(self.exponents)

    def __add__(self, other: "ZetaDivisor") -> "ZetaDivisor":
        """Divisor of the product of the two zeta functions."""
        out = dict(self.exponents)
        for k, e in other.exponents.items():
            out[k] = out.get(k, 0) + e
        return ZetaDivisor(out)

    def __neg__(self) -> "ZetaDivisor":
        return ZetaDivisor({k: -e for k, e in self.exponents.items()})

    def __sub__(self, other: "ZetaDivisor") -> "ZetaDivisor":
        return self + (-other)

    def __mul__(self, n: int) -> "ZetaDivisor":
        return ZetaDivisor({k: e * n for k, e in self.exponents.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, ZetaDivisor):
            return self.exponents == other.exponents
        if isinstance(other, Mapping):
            return self == ZetaDivisor(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.exponents.items()))

    def __repr__(self) -> str:
        return f"ZetaDivisor({self.exponents})"

    def __str__(self) -> str:
        return pretty(self)

    @property
    def degree(self) -> int:
        return zeta_degree(self)

    def indices(self) -> List[int]:
        return list(self.exponents)

    def to_list(self) -> List[List[int]]:
        return [[k, e] for k, e in self.exponents.items()]

    @classmethod
    def from_list(cls, pairs: Iterable[Sequence[int]]) -> "ZetaDivisor":
        return cls({int(k): int(e) for k, e in pairs})


def zeta_degree(z: ZetaDivisor) -> int:
    return sum(k * e for k, e in z.exponents.items())


def pretty(z: ZetaDivisor) -> str:
    """Rational-function form, e.g. (1-t^6) / ((1-t^2)(1-t^3))."""

    def factor(k, e):
        base = "(1-t)" if k == 1 else f"(1-t^{k})"
        return base if e == 1 else f"{base}^{e}"

    num = [factor(k, e) for k, e in z.exponents.items() if e > 0]
    den = [factor(k, -e) for k, e in z.exponents.items() if e < 0]
    top = "".join(num) or "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "".join(den) + ")"
    return f"{top} / {bottom}"


# ---------------------------------------------------------------------------
# Milnor-Orlik


def mo_lambda(P: Sequence[int], d: int) -> LambdaExpr:
    n = len(P)
    prod = ONE
    for p in P:
        prod = prod * (LambdaExpr.symbol(mpq(d, p)) - ONE)
    return prod.scale((-1) ** n) - ONE


def mo_zeta(P: Sequence[int], d: int) -> ZetaDivisor:
    """Zeta function of a weighted homogeneous isolated singularity of degree d."""
    from .invariants import milnor_weighted_homogeneous

    P = tuple(int(p) for p in P)
    if len(P) not in (2, 3) or any(p < 1 for p in P) or d < 1:
        raise InputError("mo_zeta expects two or three positive weights and a positive degree")
    milnor_weighted_homogeneous(P, d)
    return ZetaDivisor.from_lambda(mo_lambda(P, d))


# ---------------------------------------------------------------------------
# Varchenko face sums


def varchenko_lambda(f: Polynomial) -> LambdaExpr:
    """Divisor of 1/zeta as a sum over coordinate subspaces and their facets."""
    n = f.arity
    total = LambdaExpr()
    for size in range(1, n + 1):
        sign = (-1) ** (size - 1) * factorial(size - 1)
        for I in combinations(range(n), size):
            fI = f.drop_variables(I)
            if fI.is_zero():
                continue
            if size == 1:
                a = min(e[0] for e in fI.support())
                if a > 0:
                    total = total + LambdaExpr({a: sign})
                continue
            poly = newton_polyhedron(fI)
            for face in poly.top_faces:
                total = total + LambdaExpr({face.d_value: sign * face.lattice_volume})
    return total


def varchenko_zeta(f: Polynomial) -> ZetaDivisor:
    """Zeta function of a Newton non-degenerate germ at the origin."""
    if f.arity not in (2, 3):
        raise InputError("varchenko_zeta expects two or three variables")
    if f.is_zero() or f.constant_term() != 0:
        raise InputError("polynomial must vanish at the origin")
    return -ZetaDivisor.from_lambda(varchenko_lambda(f))


# ---------------------------------------------------------------------------
# local factors and the weighted Le-Yomdin composition

LOCAL_NAMES = ("u", "v", "w")


def phi_template(mu: int, corank: int = 1) -> Polynomial:
    """Normal form v^2 + w^(mu+1) of an A_mu point."""
    if corank > 1:
        raise InputError("no template for corank-2 points; supply phi explicitly")
    if mu < 1:
        raise InputError("local Milnor number must be positive")
    return parse(f"v^2 + w^{mu + 1}", ("v", "w"))


def local_model(d: int, m: int, phi: Polynomial) -> Polynomial:
    """u^d (phi(v, w) + u^m) in the variables (u, v, w)."""
    if phi.arity != 2:
        raise InputError("phi must be a polynomial in two variables")
    lifted = Polynomial({(0,) + e: c for e, c in phi.items()}, 3, LOCAL_NAMES)
    u = Polynomial.variable(0, 3, LOCAL_NAMES)
    return u**d * (lifted + u**m)


def local_factor(d: int, m: int, phi: Polynomial) -> ZetaDivisor:
    return varchenko_zeta(local_model(d, m, phi))


def oka_wly_zeta(
    t,
    profile,
    local_factors: Sequence[ZetaDivisor],
    mu_tot_check: Optional[int] = None,
) -> ZetaDivisor:
    """mo_zeta(P, d) * (1 - t^d)^mu_tot * product of the local factors."""
    if len(local_factors) != profile.k:
        raise InputError(f"expected {profile.k} local factors, got {len(local_factors)}")
    if mu_tot_check is not None and mu_tot_check != profile.mu_tot:
        raise DegenerateError(f"profile mu_tot {profile.mu_tot} disagrees with {mu_tot_check}")
    for z in local_factors:
        low = [k for k in z.indices() if k <= t.d]
        if low:
            raise DegenerateError(f"local factor {z.exponents} has indices {low} not exceeding d={t.d}")
    total = mo_zeta(t.P.as_tuple(), t.d) + ZetaDivisor({t.d: profile.mu_tot})
    for z in local_factors:
        total = total + z
    return total


def wly_local_factors(t, profile, phis: Optional[Sequence[Polynomial]] = None) -> List[ZetaDivisor]:
    """One local factor per torus singular point, from templates or explicit phis."""
    if phis is not None:
        if len(phis) != profile.k:
            raise InputError(f"expected {profile.k} local equations, got {len(phis)}")
        return [local_factor(t.d, t.m, phi) for phi in phis]
    types = profile.types or tuple((mu, 1) for mu in profile.local_mu)
    if any(corank > 1 for _, corank in types):
        raise InputError("corank-2 singular points need explicit local equations")
    return [local_factor(t.d, t.m, phi_template(mu)) for mu, _ in types]
