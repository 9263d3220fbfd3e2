"""Seeded random inputs shared by the test modules and the acceptance run."""

import random
from math import lcm

from wlysing.newton import is_convenient, is_newton_nondegenerate
from wlysing.poly import Polynomial
from wlysing.weighted import check_W_prime

COEFFS = [1, -1, 2, 3, -5, 7, -4, 9]


def _unit(n, i, a):
    e = [0] * n
    e[i] = a
    return tuple(e)


def convenient_nd(rng: random.Random, n: int, max_power: int):
    """A convenient Newton non-degenerate polynomial in n variables, or None."""
    terms = {}
    for i in range(n):
        terms[_unit(n, i, rng.randint(2, max_power))] = rng.choice(COEFFS)
    for _ in range(rng.randint(0, 3)):
        e = tuple(rng.randint(0, max_power - 1) for _ in range(n))
        if sum(e) >= 2:
            terms[e] = rng.choice(COEFFS)
    f = Polynomial(terms, n)
    if not is_convenient(f) or not is_newton_nondegenerate(f):
        return None
    return f


WH_CASES_2 = [((3, 2), 6), ((3, 2), 12), ((2, 1), 6), ((1, 1), 4), ((5, 2), 10), ((5, 3), 15), ((4, 1), 8)]
WH_CASES_3 = [((1, 1, 1), 3), ((3, 2, 1), 6), ((2, 1, 1), 4), ((3, 3, 2), 6), ((2, 2, 1), 4), ((6, 3, 2), 12)]


def _weighted_monomials(P, d):
    n = len(P)
    out = []

    def rec(i, rest, acc):
        if i == n - 1:
            if rest % P[i] == 0:
                out.append(tuple(acc + [rest // P[i]]))
            return
        for a in range(rest // P[i] + 1):
            rec(i + 1, rest - a * P[i], acc + [a])

    rec(0, d, [])
    return out


def weighted_homogeneous_nd(rng: random.Random):
    """(P, d, f): convenient ND weighted homogeneous, or None."""
    P, d = rng.choice(WH_CASES_2 + WH_CASES_3)
    n = len(P)
    ms = _weighted_monomials(P, d)
    terms = {_unit(n, i, d // P[i]): rng.choice(COEFFS) for i in range(n)}
    for e in rng.sample(ms, min(len(ms), rng.randint(0, 3))):
        terms[e] = rng.choice(COEFFS)
    f = Polynomial(terms, n)
    if not is_newton_nondegenerate(f):
        return None
    return P, d, f


SECTION_CASES = [
    ((3, 2, 1), 12), ((3, 2, 1), 13), ((5, 4, 2), 20), ((6, 5, 2), 30), ((4, 3, 1), 12),
    ((5, 3, 2), 15), ((1, 1, 1), 4), ((1, 1, 1), 5), ((3, 2, 1), 18), ((5, 2, 1), 20),
    ((4, 3, 1), 13), ((3, 2, 1), 11), ((7, 4, 1), 29),
]


def w_prime_member(rng: random.Random):
    """(P, f) with f in W' and p2 > p3 or equal weights, or None.

    Each axis gets either a pure power or a monomial one step off the axis,
    which is what keeps V(f) smooth along the axes and exercises the
    interior-end constructions of the section predictor.
    """
    P, d = rng.choice(SECTION_CASES)
    ms = _weighted_monomials(P, d)
    support = set()
    for i in range(3):
        opts = [e for e in ms if e[i] > 0 and sum(e) - e[i] <= 1]
        if not opts:
            return None
        support.add(rng.choice(opts))
    for _ in range(rng.randint(0, 3)):
        support.add(rng.choice(ms))
    f = Polynomial({e: rng.choice(COEFFS) for e in support}, 3)
    if f.set_zero([2]).is_zero() or not check_W_prime(f, P):
        return None
    return P, f


def draw(gen, seed, count, *args, attempts=10000):
    rng = random.Random(seed)
    out = []
    for _ in range(attempts):
        item = gen(rng, *args)
        if item is not None:
            out.append(item)
            if len(out) == count:
                return out
    raise RuntimeError("generator rejected too many draws")


__all__ = ["convenient_nd", "weighted_homogeneous_nd", "w_prime_member", "draw", "lcm"]
