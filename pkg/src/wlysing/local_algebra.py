"""Truncated Jacobian colengths and the Milnor number oracle.

``truncated_colength(f, delta)`` is N - rank B_delta(f), i.e. the dimension of
O / (J(f) + m^(delta+1)).  It never decreases as delta grows and is bounded by
mu; when two consecutive values agree, Nakayama's lemma gives
m^(delta+1) contained in J(f) locally, so the common value is mu itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import InputError, ResourceCapExceeded
from .linalg import EchelonBasis
from .poly import Exponent, Polynomial, as_rational, partial_derivative, shift
from .torus import TorusSolution, torus_system_solve  # noqa: F401  (public re-export)

INFINITE = "infinite"
DEFAULT_DELTA_CAP = {1: 200, 2: 60, 3: 22}


def monomials_up_to(n: int, delta: int) -> List[Exponent]:
    """All exponent vectors of total degree <= delta, ordered by degree then lex."""
    out = []
    for deg in range(delta + 1):
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))


@dataclass(frozen=True)
class TruncatedJacobian:
    """The matrix B_delta(f), stored column-wise as sparse vectors."""

    n: int
    delta: int
    basis: Tuple[Exponent, ...]
    columns: Tuple[Dict[Exponent, mpq], ...]

    @property
    def N(self) -> int:
        return len(self.basis)

    def dense(self) -> List[List[mpq]]:
        index = {m: i for i, m in enumerate(self.basis)}
        rows = [[mpq(0)] * len(self.columns) for _ in self.basis]
        for j, col in enumerate(self.columns):
            for m, c in col.items():
                rows[index[m]][j] = c
        return rows


def truncated_jacobian(f: Polynomial, delta: int) -> TruncatedJacobian:
    n = f.arity
    basis = monomials_up_to(n, delta)
    partials = [[(e, c) for e, c in partial_derivative(f, j).items() if sum(e) <= delta] for j in range(n)]
    cols = []
    for j in range(n):
        for m in basis:
            dm = delta - sum(m)
            col = {}
            for e, c in partials[j]:
                if sum(e) <= dm:
                    col[tuple(a + b for a, b in zip(e, m))] = c
            cols.append(col)
    return TruncatedJacobian(n, delta, tuple(basis), tuple(cols))


def _degree_key(e: Exponent):
    return (sum(e), e)


def truncated_colength(f: Polynomial, delta: int) -> int:
    """N - rank B_delta(f) by exact sparse elimination."""
    if delta < 0:
        raise InputError("delta must be non-negative")
    if f.constant_term() != 0:
        raise InputError("polynomial must vanish at the origin")
    jac = truncated_jacobian(f, delta)
    basis = EchelonBasis(key=_degree_key)
    for col in sorted(jac.columns, key=lambda c: min(map(_degree_key, c)) if c else (0, ())):
        if col:
            basis.add(col)
    return jac.N - basis.rank


@dataclass(frozen=True)
class ColengthResult:
    colength: Union[int, str]
    delta_used: int
    stabilized: bool

    @property
    def finite(self) -> bool:
        return self.colength != INFINITE

    def to_dict(self) -> dict:
        return {"colength": self.colength, "delta_used": self.delta_used, "stabilized": self.stabilized}


def milnor_rank_oracle(
    f: Polynomial,
    delta_cap: Optional[int] = None,
    delta_start: Optional[int] = None,
    raise_on_cap: bool = False,
) -> ColengthResult:
    """Milnor number at the origin as the stabilized truncated colength.

    The scan starts at the lowest delta that can possibly certify (the
    order of f) unless ``delta_start`` is given, and stops at the first delta
    where the colengths at delta and delta + 1 agree.  Hitting ``delta_cap``
    reports ``"infinite"`` (or raises with ``raise_on_cap``).
    """
    if f.is_zero():
        return ColengthResult(INFINITE, 0, False)
    if f.constant_term() != 0:
        raise InputError("polynomial must vanish at the origin")
    if any(partial_derivative(f, j).constant_term() != 0 for j in range(f.arity)):
        return ColengthResult(0, 0, True)
    cap = delta_cap if delta_cap is not None else DEFAULT_DELTA_CAP[f.arity]
    delta = delta_start if delta_start is not None else max(1, f.min_total_degree() - 1)
    previous = truncated_colength(f, delta)
    while delta < cap:
        current = truncated_colength(f, delta + 1)
        if current == previous:
            return ColengthResult(current, delta, True)
        delta += 1
        previous = current
    if raise_on_cap:
        raise ResourceCapExceeded(f"colength did not stabilize up to delta={cap}")
    return ColengthResult(INFINITE, cap, False)


def milnor_number(f: Polynomial, delta_cap: Optional[int] = None) -> int:
    """Finite Milnor number or ResourceCapExceeded."""
    result = milnor_rank_oracle(f, delta_cap, raise_on_cap=True)
    return int(result.colength)


def local_milnor_at_rational_point(f: Polynomial, point: Sequence, delta_cap: Optional[int] = None) -> int:
    """Milnor number of the germ of ``f`` at a rational singular point."""
    from .poly import evaluate

    point = [as_rational(x) for x in point]
    if len(point) != f.arity:
        raise InputError("point dimension does not match arity")
    if evaluate(f, point) != 0 or any(evaluate(partial_derivative(f, j), point) != 0 for j in range(f.arity)):
        raise InputError("point is not a singular point of f")
    return milnor_number(shift(f, point), delta_cap)
