"""Sparse polynomials over Q in at most three variables.

Coefficients are ``gmpy2.mpq`` so every computation downstream is exact.  A
:class:`Polynomial` is immutable once built; all operations return new
objects.
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import univariate as up
from .errors import InputError, PolynomialSyntaxError
from .linalg import rational_det

Exponent = Tuple[int, ...]

DEFAULT_NAMES = {1: ("t",), 2: ("x", "y"), 3: ("x", "y", "z")}


def _default_names(arity: int) -> Tuple[str, ...]:
    if arity not in DEFAULT_NAMES:
        raise InputError(f"arity must be 1, 2 or 3 (got {arity})")
    return DEFAULT_NAMES[arity]


def as_rational(value) -> mpq:
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


class Polynomial:
    """Exact sparse polynomial: a map from exponent tuples to nonzero rationals.

    ``names`` only affects printing; equality and hashing look at arity and
    terms alone.
    """

    __slots__ = ("arity", "_terms", "names", "_hash")

    def __init__(
        self,
        terms: Optional[Mapping[Exponent, object]] = None,
        arity: Optional[int] = None,
        names: Optional[Sequence[str]] = None,
    ):
        clean: Dict[Exponent, mpq] = {}
        if terms:
            for exp, c in terms.items():
                c = as_rational(c)
                if c:
                    exp = tuple(int(e) for e in exp)
                    if any(e < 0 for e in exp):
                        raise InputError(f"negative exponent {exp}")
                    clean[exp] = clean.get(exp, mpq(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        if arity is None:
            if names is not None:
                arity = len(names)
            elif clean:
                arity = len(next(iter(clean)))
            else:
                raise InputError("arity required for the zero polynomial")
        if not 1 <= arity <= 3:
            raise InputError(f"arity must be 1, 2 or 3 (got {arity})")
        for exp in clean:
            if len(exp) != arity:
                raise InputError(f"exponent {exp} does not match arity {arity}")
        self.arity = arity
        self._terms = clean
        self.names = tuple(names) if names is not None else _default_names(arity)
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, arity: int, names=None) -> "Polynomial":
        return cls({}, arity, names)

    @classmethod
    def constant(cls, c, arity: int, names=None) -> "Polynomial":
        return cls({(0,) * arity: c}, arity, names)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1, names=None) -> "Polynomial":
        return cls({tuple(exp): c}, len(exp), names)

    @classmethod
    def variable(cls, index: int, arity: int, names=None) -> "Polynomial":
        exp = [0] * arity
        exp[index] = 1
        return cls({tuple(exp): 1}, arity, names)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, names=None) -> "Polynomial":
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, 1, names)

    def with_names(self, names: Sequence[str]) -> "Polynomial":
        return Polynomial(self._terms, self.arity, names)

    # basic protocol -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, mpq]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, mpq]]:
        return iter(self._terms.items())

    def support(self) -> List[Exponent]:
        return sorted(self._terms)

    def coefficient(self, exp: Sequence[int]) -> mpq:
        return self._terms.get(tuple(exp), mpq(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, mpq)) or type(other).__name__ == "Fraction":
            return self == Polynomial.constant(other, self.arity)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, arity={self.arity})"

    def __str__(self) -> str:
        return to_string(self)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise InputError("arity mismatch")
            return other
        return Polynomial.constant(other, self.arity)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, self.arity, self.names)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.arity, self.names)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            return Polynomial({e: v * c for e, v in self._terms.items()}, self.arity, self.names)
        other = self._coerce(other)
        out: Dict[Exponent, mpq] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, self.arity, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.arity, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # degrees --------------------------------------------------------------
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_total_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def degree_in(self, var: int) -> int:
        if not self._terms:
            return -1
        return max(e[var] for e in self._terms)

    def weighted_degrees(self, weights: Sequence[int]) -> Tuple[int, int]:
        if not self._terms:
            raise InputError("weighted degree of the zero polynomial")
        vals = [sum(w * a for w, a in zip(weights, e)) for e in self._terms]
        return min(vals), max(vals)

    def constant_term(self) -> mpq:
        return self._terms.get((0,) * self.arity, mpq(0))

    # evaluation and substitution -----------------------------------------
    def __call__(self, *point):
        return evaluate(self, point)

    def homogeneous_part(self, degree: int, weights: Optional[Sequence[int]] = None) -> "Polynomial":
        w = weights or (1,) * self.arity
        return Polynomial(
            {e: c for e, c in self._terms.items() if sum(a * b for a, b in zip(w, e)) == degree},
            self.arity,
            self.names,
        )

    def set_zero(self, variables: Iterable[int]) -> "Polynomial":
        """Restriction to the coordinate subspace where ``variables`` vanish."""
        vs = set(variables)
        return Polynomial(
            {e: c for e, c in self._terms.items() if all(e[i] == 0 for i in vs)},
            self.arity,
            self.names,
        )

    def drop_variables(self, keep: Sequence[int]) -> "Polynomial":
        """Project onto the variables in ``keep``; terms involving others are discarded."""
        keep = list(keep)
        others = [i for i in range(self.arity) if i not in keep]
        return Polynomial(
            {tuple(e[i] for i in keep): c for e, c in self._terms.items() if all(e[j] == 0 for j in others)},
            len(keep),
            tuple(self.names[i] for i in keep),
        )

    def to_univariate(self) -> up.UPoly:
        if self.arity != 1:
            raise InputError("not a univariate polynomial")
        deg = self.degree_in(0)
        coeffs = [mpq(0)] * (deg + 1)
        for (e,), c in self._terms.items():
            coeffs[e] = c
        return up.trim(coeffs)

    def coefficients_in(self, var: int) -> List["Polynomial"]:
        """Coefficients with respect to ``var``, as polynomials in the remaining variables."""
        if self.arity == 1:
            raise InputError("coefficients_in needs at least two variables")
        rest = [i for i in range(self.arity) if i != var]
        deg = max(self.degree_in(var), 0)
        buckets: List[Dict[Exponent, mpq]] = [dict() for _ in range(deg + 1)]
        for e, c in self._terms.items():
            buckets[e[var]][tuple(e[i] for i in rest)] = c
        names = tuple(self.names[i] for i in rest)
        return [Polynomial(b, len(rest), names) for b in buckets]


# ---------------------------------------------------------------------------
# printing and parsing


def _format_rational(c: mpq) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def term_order_key(exp: Exponent):
    return (sum(exp), tuple(-e for e in exp))


def to_string(f: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Canonical form: increasing total degree, lexicographically larger first within a degree."""
    names = names or f.names
    if f.is_zero():
        return "0"
    parts: List[str] = []
    for exp in sorted(f._terms, key=term_order_key):
        c = f._terms[exp]
        factors = []
        for n, e in zip(names, exp):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append(f"{n}^{e}")
        mono = "*".join(factors)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_format_rational(a)}*{mono}"
        else:
            body = _format_rational(a)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str], constants: Mapping[str, mpq]):
        self.text = text
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.constants = dict(constants)
        self.arity = len(self.names)
        self.tokens = self._tokenize()
        self.pos = 0

    def _tokenize(self):
        toks = []
        i = 0
        text = self.text
        while i < len(text):
            m = _TOKEN.match(text, i)
            if m is None:
                break
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            if m.group(1) is not None:
                toks.append(("num", int(m.group(1)), start))
            elif m.group(2) is not None:
                toks.append(("name", m.group(2), start))
            else:
                toks.append(("op", m.group(3), start))
            i = m.end()
        toks.append(("end", None, len(text)))
        return toks

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.pos]
        raise PolynomialSyntaxError(msg, tok[2], self.text)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "/":
                self.error("division is not part of the polynomial grammar")
            self.error(f"unexpected token {tok[1]!r}")
        return result

    def expr(self) -> Polynomial:
        node = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                node = node + rhs if tok[1] == "+" else node - rhs
            else:
                return node

    def term(self) -> Polynomial:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                node = node * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.error("division is not part of the polynomial grammar")
            else:
                return node

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "num":
                self.error("exponent must be a positive integer literal", etok)
            if etok[1] < 1:
                self.error("exponent must be positive", etok)
            return base ** etok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("division is not part of the polynomial grammar", nxt)
                if den[1] == 0:
                    self.error("zero denominator", den)
                return Polynomial.constant(mpq(value, den[1]), self.arity, self.names)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == ".":
                self.error("floating-point literals are not allowed", nxt)
            return Polynomial.constant(value, self.arity, self.names)
        if kind == "name":
            if value in self.index:
                return Polynomial.variable(self.index[value], self.arity, self.names)
            if value in self.constants:
                return Polynomial.constant(self.constants[value], self.arity, self.names)
            self.error(f"unknown variable {value!r}", tok)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected token {value!r}", tok)


def parse(
    text: str,
    variables: Sequence[str] = ("x", "y", "z"),
    constants: Optional[Mapping[str, object]] = None,
) -> Polynomial:
    """Parse ``text`` over the ordered ``variables``.

    ``constants`` binds extra names to rational values (used to instantiate
    one-parameter families).

    >>> str(parse("x^2 + y^3", ("x", "y")))
    'x^2 + y^3'
    """
    variables = tuple(variables)
    if not 1 <= len(variables) <= 3:
        raise InputError(f"at most three variables are supported (got {len(variables)})")
    consts = {k: as_rational(v) for k, v in (constants or {}).items()}
    return _Parser(text, variables, consts).parse()


# ---------------------------------------------------------------------------
# substitutions and calculus


def evaluate(f: Polynomial, point: Sequence):
    """Evaluate at a point whose coordinates are rationals (or anything with ring ops)."""
    if len(point) != f.arity:
        raise InputError("point dimension does not match arity")
    total = mpq(0)
    for exp, c in f.items():
        term = c
        for x, e in zip(point, exp):
            if e:
                term = term * x**e
        total = total + term
    return total


def compose(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[i]`` for variable ``i`` of ``f``; all images share one arity."""
    if len(images) != f.arity:
        raise InputError("need one image per variable")
    arity = images[0].arity
    names = images[0].names
    cache: List[Dict[int, Polynomial]] = [dict() for _ in images]

    def pw(i, e):
        if e not in cache[i]:
            cache[i][e] = images[i] ** e
        return cache[i][e]

    out: Dict[Exponent, mpq] = {}
    for exp, c in f.items():
        prod = Polynomial.constant(c, arity, names)
        for i, e in enumerate(exp):
            if e:
                prod = prod * pw(i, e)
        for e2, c2 in prod.items():
            out[e2] = out.get(e2, 0) + c2
    return Polynomial(out, arity, names)


def substitute_linear(f: Polynomial, a, b) -> Polynomial:
    """``f(x, y, a*x + b*y)`` as a polynomial in ``(x, y)``.

    >>> str(substitute_linear(parse("x*z"), 2, 3))
    '2*x^2 + 3*x*y'
    """
    if f.arity != 3:
        raise InputError("substitute_linear expects a polynomial in three variables")
    names = f.names[:2]
    x = Polynomial.variable(0, 2, names)
    y = Polynomial.variable(1, 2, names)
    return compose(f, [x, y, x * as_rational(a) + y * as_rational(b)])


def substitute_power(f: Polynomial, var: int, p: int) -> Polynomial:
    """Replace ``var`` by ``var**p`` (multiply that exponent by ``p``)."""
    if p < 1:
        raise InputError("power must be positive")
    out = {}
    for exp, c in f.items():
        e = list(exp)
        e[var] *= p
        out[tuple(e)] = c
    return Polynomial(out, f.arity, f.names)


def substitute_value(f: Polynomial, var: int, value) -> Polynomial:
    """Set ``var`` to a rational value, dropping it from the variable list."""
    value = as_rational(value)
    keep = [i for i in range(f.arity) if i != var]
    out: Dict[Exponent, mpq] = {}
    for exp, c in f.items():
        e = tuple(exp[i] for i in keep)
        out[e] = out.get(e, 0) + c * value ** exp[var]
    return Polynomial(out, len(keep), tuple(f.names[i] for i in keep))


def partial_derivative(f: Polynomial, var: int) -> Polynomial:
    out = {}
    for exp, c in f.items():
        if exp[var]:
            e = list(exp)
            e[var] -= 1
            out[tuple(e)] = c * exp[var]
    return Polynomial(out, f.arity, f.names)


def gradient(f: Polynomial) -> List[Polynomial]:
    return [partial_derivative(f, i) for i in range(f.arity)]


def shift(f: Polynomial, point: Sequence) -> Polynomial:
    """``f(x + point)``: moves ``point`` to the origin."""
    images = [
        Polynomial.variable(i, f.arity, f.names) + as_rational(point[i]) for i in range(f.arity)
    ]
    return compose(f, images)


# ---------------------------------------------------------------------------
# elimination


def _sylvester_rows(p: Sequence, q: Sequence) -> List[List]:
    """Sylvester matrix of two coefficient lists (lowest degree first, formal degrees)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def univariate_resultant(p: Sequence, q: Sequence) -> mpq:
    """Resultant of two univariate coefficient lists with their formal degrees."""
    if len(p) <= 1 and len(q) <= 1:
        return mpq(1)
    if len(p) == 1:
        return mpq(p[0]) ** (len(q) - 1)
    if len(q) == 1:
        return mpq(q[0]) ** (len(p) - 1)
    return rational_det(_sylvester_rows(p, q))


def resultant(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """Sylvester resultant of two bivariate polynomials eliminating ``var``.

    The Sylvester determinant is evaluated at integer points of the surviving
    variable and interpolated; the degree bound makes this exact.
    """
    if f.arity != 2 or g.arity != 2:
        raise InputError("resultant expects bivariate polynomials")
    if f.is_zero() or g.is_zero():
        raise InputError("resultant of a zero polynomial")
    other = 1 - var
    names = (f.names[other],)
    fc = [c.to_univariate() for c in f.coefficients_in(var)]
    gc = [c.to_univariate() for c in g.coefficients_in(var)]
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return Polynomial.constant(1, 1, names)
    if m == 0:
        return Polynomial.from_univariate(up.power(fc[0], n), names) if fc[0] else Polynomial.zero(1, names)
    if n == 0:
        return Polynomial.from_univariate(up.power(gc[0], m), names)
    fdeg = max(len(c) - 1 for c in fc)
    gdeg = max(len(c) - 1 for c in gc)
    bound = min(n * fdeg + m * gdeg, f.total_degree() * g.total_degree())
    xs = [mpq(i) for i in range(bound + 1)]
    ys = []
    for x in xs:
        pv = [up.evaluate(c, x) for c in fc]
        qv = [up.evaluate(c, x) for c in gc]
        ys.append(rational_det(_sylvester_rows(pv, qv)))
    return Polynomial.from_univariate(up.interpolate(xs, ys), names)


def squarefree_check(f: Polynomial) -> Tuple[bool, Polynomial]:
    """Square-freeness of a univariate polynomial.

    Returns ``(True, 1)`` or ``(False, gcd(f, f'))`` where the monic gcd
    witnesses the repeated factors.
    """
    if f.arity != 1:
        raise InputError("squarefree_check expects a univariate polynomial")
    if f.is_zero():
        raise InputError("squarefree_check of the zero polynomial")
    p = f.to_univariate()
    g = up.gcd(p, up.deriv(p))
    witness = Polynomial.from_univariate(g, f.names)
    return up.degree(g) <= 0, witness


def univariate_polynomial(coeffs: Sequence, name: str = "t") -> Polynomial:
    return Polynomial.from_univariate([as_rational(c) for c in coeffs], (name,))


def product(polys: Iterable[Polynomial]) -> Polynomial:
    return reduce(lambda a, b: a * b, polys)


def gcd_multivariate(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd over Q (monic in the printer's leading term).

    Only used on degenerate fall-back paths; delegates to sympy.
    """
    import sympy

    syms = sympy.symbols(" ".join(f.names))
    fs = sympy.Poly(to_sympy_expr(f, syms), *syms, domain="QQ")
    gs = sympy.Poly(to_sympy_expr(g, syms), *syms, domain="QQ")
    h = fs.gcd(gs)
    out = {tuple(int(e) for e in monom): mpq(int(c.p), int(c.q)) for monom, c in h.terms()}
    return Polynomial(out, f.arity, f.names)


def to_sympy_expr(f: Polynomial, syms):
    import sympy

    expr = sympy.Integer(0)
    for exp, c in f.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, exp):
            term *= s**e
        expr += term
    return expr
