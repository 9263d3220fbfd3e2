"""Dense univariate polynomials over Q.

A polynomial is a list of ``mpq`` coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  These helpers back the
resultant, gcd and algebraic-point code and are deliberately bare: plain
lists in, plain lists out.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from gmpy2 import mpq

UPoly = List[mpq]

ZERO = mpq(0)
ONE = mpq(1)


def trim(p: List[mpq]) -> UPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def make(coeffs: Iterable) -> UPoly:
    return trim([mpq(c) for c in coeffs])


def degree(p: Sequence) -> int:
    return len(p) - 1


def add(p: Sequence, q: Sequence) -> UPoly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p: Sequence, q: Sequence) -> UPoly:
    out = list(p) + [ZERO] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    return trim(out)


def scale(p: Sequence, c) -> UPoly:
    if c == 0:
        return []
    return [a * c for a in p]


def mul(p: Sequence, q: Sequence) -> UPoly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p: Sequence, e: int) -> UPoly:
    result: UPoly = [ONE]
    base = list(p)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def divmod_(p: Sequence, q: Sequence) -> Tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], trim(r)
    inv = ONE / q[-1]
    quot = [ZERO] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = c * inv
        quot[k - dq] = c
        for i in range(dq + 1):
            r[k - dq + i] -= c * q[i]
    return trim(quot), trim(r[:dq])


def rem(p: Sequence, q: Sequence) -> UPoly:
    return divmod_(p, q)[1]


def exact_div(p: Sequence, q: Sequence) -> UPoly:
    quot, r = divmod_(p, q)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return quot


def monic(p: Sequence) -> UPoly:
    if not p:
        return []
    inv = ONE / p[-1]
    return [c * inv for c in p]


def _primitive(p: Sequence) -> UPoly:
    """Scale to coprime integer coefficients with positive leading term."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = _gcd_int(g, c)
    if ints[-1] < 0:
        g = -g
    return [mpq(c // g) for c in ints]


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def gcd(p: Sequence, q: Sequence) -> UPoly:
    """Monic gcd; ``gcd([], []) == []``.

    Remainders are kept primitive (integer content removed) which keeps the
    Euclidean sequence from blowing up on the degree-100+ resultants.
    """
    a, b = _primitive(p), _primitive(q)
    while b:
        a, b = b, _primitive(rem(a, b))
    return monic(a)


def deriv(p: Sequence) -> UPoly:
    return trim([p[i] * i for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: Sequence, q: Sequence) -> UPoly:
    acc: UPoly = []
    for c in reversed(p):
        acc = add(mul(acc, q), [c] if c else [])
    return acc


def squarefree_decomposition(p: Sequence) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime square-free ``(a_i, i)`` with
    ``p = lc * prod a_i**i``; constant factors are omitted."""
    if not p:
        raise ValueError("square-free decomposition of the zero polynomial")
    out: List[Tuple[UPoly, int]] = []
    f = monic(p)
    if degree(f) == 0:
        return out
    fp = deriv(f)
    a0 = gcd(f, fp)
    b = exact_div(f, a0)
    c = exact_div(fp, a0)
    d = sub(c, deriv(b))
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((a, i))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, deriv(b))
        i += 1
    return out


def squarefree_part(p: Sequence) -> UPoly:
    if not p:
        return []
    g = gcd(p, deriv(p))
    return monic(exact_div(p, g))


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Newton divided differences, exact."""
    n = len(xs)
    coef = [mpq(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result: UPoly = []
    for i in range(n - 1, -1, -1):
        result = add(mul(result, [-mpq(xs[i]), ONE]), [coef[i]] if coef[i] else [])
    return result


def multiplicity_split(factor: Sequence, target: Sequence) -> List[Tuple[UPoly, int]]:
    """Split the square-free ``factor`` by the root multiplicity of each of
    its roots in ``target``; pairs ``(piece, multiplicity)``, multiplicity
    0 included."""
    pieces: List[Tuple[UPoly, int]] = []
    current = monic(factor)
    rest = list(target)
    k = 0
    while degree(current) > 0:
        nxt = gcd(current, rest)
        dropped = exact_div(current, nxt)
        if degree(dropped) > 0:
            pieces.append((dropped, k))
        if degree(nxt) <= 0:
            break
        rest = exact_div(rest, nxt)
        current = nxt
        k += 1
    return pieces
