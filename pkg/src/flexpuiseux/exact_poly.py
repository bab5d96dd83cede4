"""Sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; a monomial is an exponent tuple
aligned with the polynomial's variable order. Terms are kept canonical (no
zero coefficients) so equal polynomials compare equal structurally.

The text grammar accepted by :func:`parse_polynomial` and produced by
``str(p)``::

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*        # '/' only by constants
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')' | '-' factor
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Polynomial",
    "PolynomialSyntaxError",
    "UnboundVariableError",
    "parse_polynomial",
    "evaluate",
    "shift",
    "partial_derivative",
    "resultant",
]

Monomial = tuple


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariableError(KeyError):
    pass


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c).limit_denominator(10**12)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    Parameters
    ----------
    terms : mapping
        Exponent tuple -> coefficient. Zero coefficients are dropped.
    variables : sequence of str
        Variable order; exponent tuples are aligned with it.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], variables: Sequence[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        clean = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != len(variables):
                raise ValueError("monomial length does not match variable count")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent")
            c = _to_fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.variables = variables
        self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls({}, variables)

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "Polynomial":
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnboundVariableError(name)
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls({mono: 1}, variables)

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self._index(var)
        return max(m[i] for m in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the order at the origin)."""
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def free_variables(self) -> tuple:
        """Variables that actually occur, in declaration order."""
        used = [False] * len(self.variables)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def max_coefficient(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise UnboundVariableError(var) from None

    # -- variable handling ---------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into another variable order (must cover free variables)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        idx = []
        for i, v in enumerate(self.variables):
            if v in pos:
                idx.append((i, pos[v]))
            elif any(m[i] for m in self.terms):
                raise UnboundVariableError(v)
        n = len(variables)
        terms = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, j in idx:
                new[j] = m[i]
            terms[tuple(new)] = c
        return Polynomial._raw(terms, variables)

    def _coerce(self, other) -> tuple["Polynomial", "Polynomial"]:
        if not isinstance(other, Polynomial):
            return self, Polynomial.constant(other, self.variables)
        if other.variables == self.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged)

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.variables)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, a.variables)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = _to_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial.zero(self.variables)
            return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.variables)
        a, b = self._coerce(other)
        terms: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial._raw(terms, a.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants; use exact_divide")
            other = other.constant_term()
        c = _to_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            a, b = self._coerce(other)
            return a.terms == b.terms
        try:
            return self == Polynomial.constant(other, self.variables)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            free = tuple(sorted(self.free_variables()))
            p = self.with_variables(free)
            self._hash = hash((free, frozenset(p.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        a, b = self._coerce(divisor)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_b, lc_b = max(b.terms.items(), key=lambda kv: _grlex_key(kv[0]))
        rem = dict(a.terms)
        quot: dict = {}
        bterms = list(b.terms.items())
        while rem:
            lead_r = max(rem, key=_grlex_key)
            diff = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(e < 0 for e in diff):
                raise ArithmeticError("polynomial division is not exact")
            coef = rem[lead_r] / lc_b
            quot[diff] = coef
            for m, c in bterms:
                mm = tuple(x + y for x, y in zip(m, diff))
                s = rem.get(mm, 0) - coef * c
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(quot, a.variables)

    # -- calculus and evaluation ---------------------------------------
    def diff(self, var: str) -> "Polynomial":
        i = self._index(var)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                terms[mm] = c * m[i]
        return Polynomial._raw(terms, self.variables)

    def evaluate(self, point: Mapping[str, object]):
        """Value at ``point``; exact when the bound values are rational."""
        values = []
        for i, v in enumerate(self.variables):
            if v in point:
                values.append(point[v])
            elif any(m[i] for m in self.terms):
                raise UnboundVariableError(v)
            else:
                values.append(0)
        values = [_to_fraction(x) if isinstance(x, (int, str)) else x for x in values]
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(values, m):
                if e:
                    t = t * x**e
            total = total + t
        if isinstance(total, int):
            total = Fraction(total)
        return total

    def substitute(self, values: Mapping[str, "Polynomial | object"]) -> "Polynomial":
        """Replace variables by polynomials (or constants); others are kept."""
        result = Polynomial.zero(self.variables)
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                v = self.variables[i]
                base = values[v] if v in values else Polynomial.var(v, self.variables)
                if not isinstance(base, Polynomial):
                    base = Polynomial.constant(base, self.variables)
                cache[key] = base**e
            return cache[key]

        for m, c in self.terms.items():
            t = Polynomial.constant(c, self.variables)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def coefficients_in(self, var: str) -> dict:
        """Map ``k -> coefficient of var^k`` (polynomials in the same variables)."""
        i = self._index(var)
        out: dict = {}
        for m, c in self.terms.items():
            k = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            out.setdefault(k, {})[mm] = c
        return {k: Polynomial._raw(t, self.variables) for k, t in out.items()}

    # -- printing ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            factors = []
            for v, e in zip(self.variables, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, variables={list(self.variables)!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise PolynomialSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("name", "int") or tok[1] == "(":
                raise PolynomialSyntaxError("implicit multiplication is not allowed; use '*'", tok[2])
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        tok = self.peek()
        if tok[1] in ("+", "-"):
            self.take()
            p = self.term()
            if tok[1] == "-":
                p = -p
        else:
            p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise PolynomialSyntaxError("division by a non-constant", pos)
                if q.is_zero():
                    raise PolynomialSyntaxError("division by zero", pos)
                p = p / q.constant_term()
        return p

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[1] == "-":
                raise PolynomialSyntaxError("negative exponent", tok[2])
            if tok[0] != "int":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        kind, value, pos = self.take()
        if kind == "int":
            return Polynomial.constant(int(value), self.variables)
        if kind == "name":
            if value not in self.variables:
                raise UnboundVariableError(f"unknown variable {value!r} at position {pos}")
            return Polynomial.var(value, self.variables)
        if value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if value == "-":
            return -self.factor()
        raise PolynomialSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` into a polynomial over ``variables``.

    >>> str(parse_polynomial("(x-1)*(x+1)", ["x"]))
    'x^2 - 1'
    """
    return _Parser(text, tuple(variables)).parse()


# ---------------------------------------------------------------------------
# functional interface


def evaluate(p: Polynomial, point: Mapping[str, object]):
    return p.evaluate(point)


def shift(p: Polynomial, offset: Mapping[str, object]) -> Polynomial:
    """Return q with q(u) = p(u + offset)."""
    for v in p.free_variables():
        if v not in offset:
            raise UnboundVariableError(v)
    values = {}
    for v in p.variables:
        if v in offset and _to_fraction(offset[v]):
            values[v] = Polynomial.var(v, p.variables) + _to_fraction(offset[v])
    if not values:
        return p
    return p.substitute(values)


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


def _bareiss_det(matrix: list) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    variables = a[0][0].variables
    sign = 1
    prev = Polynomial.constant(1, variables)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(variables)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num.exact_divide(prev) if not num.is_zero() else num
            a[i][k] = Polynomial.zero(variables)
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``var``.

    The result lives in the merged variable order of the inputs and no
    longer involves ``var``.
    """
    p, q = p._coerce(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("both polynomials are identically zero")
    m, n = p.degree(var), q.degree(var)
    if m <= 0 or n <= 0:
        raise ValueError(f"resultant needs positive degree in {var!r} (got {m}, {n})")
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    zero = Polynomial.zero(p.variables)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = qc.get(k, zero)
        rows.append(row)
    return _bareiss_det(rows)


def lcm_denominator(polys: Iterable[Polynomial]) -> int:
    from math import lcm

    out = 1
    for p in polys:
        for c in p.terms.values():
            out = lcm(out, c.denominator)
    return out
