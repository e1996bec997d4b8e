"""Sparse multivariate polynomials over Q and matrices of them.

A :class:`Polynomial` is a map from exponent vectors to non-zero ``Fraction``
coefficients over an ordered tuple of variable names.  A :class:`PolyMatrix`
is an ``n x k`` grid of polynomials sharing one variable list; a family matrix
additionally carries a parameter name, which is stored as one extra trailing
variable of every entry and never counts as an ambient coordinate.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._linalg import det

Exponent = tuple[int, ...]


class PolynomialParseError(ValueError):
    """Raised for malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class UnknownVariableError(PolynomialParseError):
    pass


class NegativeExponentError(PolynomialParseError):
    pass


def _grlex_key(e: Exponent):
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        m = len(variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != m:
                raise ValueError(f"exponent {exp} does not match {m} variables")
            if any(a < 0 for a in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda t: _grlex_key(t[0]), reverse=True)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise KeyError(name)
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, c=1) -> "Polynomial":
        return cls(variables, {tuple(exp): c})

    # basic queries --------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.variables})"

    def __str__(self):
        return format_polynomial(self)

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.variables, Fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point; works for Fractions, floats or complex numbers."""
        total = 0
        for e, c in self.terms.items():
            t = c if not isinstance(point[0], (float, complex)) else complex(c)
            for x, a in zip(point, e):
                if a:
                    t = t * x**a
            total = total + t
        return total

    def substitute_last(self, value) -> "Polynomial":
        """Set the last variable to a rational value and drop it."""
        value = Fraction(value)
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            head = e[:-1]
            terms[head] = terms.get(head, 0) + c * value ** e[-1]
        return Polynomial(self.variables[:-1], terms)


# ---------------------------------------------------------------------------
# printing and parsing

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(variables: Sequence[str], exp: Exponent) -> str:
    parts = []
    for v, a in zip(variables, exp):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.terms.items()):
        mono = _format_monomial(p.variables, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolynomialParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None, cls=PolynomialParseError):
        tok = tok or self.peek()
        return cls(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        result = Polynomial.zero(self.variables)
        sign = 1
        tok = self.peek()
        if tok == ("op", "+", tok[2]) or tok == ("op", "-", tok[2]):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        result = result + self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            result = result + self.term() * sign
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "-":
                raise self.error("negative exponent", tok, NegativeExponentError)
            if tok[0] != "num":
                raise self.error("expected integer exponent", tok)
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise self.error("expected integer denominator", den)
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                c = c / int(den[1])
            return Polynomial.constant(self.variables, c)
        if kind == "name":
            if val not in self.variables:
                raise self.error(f"unknown variable {val!r}", tok, UnknownVariableError)
            return Polynomial.variable(self.variables, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse e.g. ``"x^2 + 3/2*x*y - z"`` over the given variable names."""
    return _Parser(text, variables).parse()


# ---------------------------------------------------------------------------
# supports and weighted parts

def support(p: Polynomial) -> frozenset[Exponent]:
    return p.support()


def lowest_order_part(p: Polynomial, weights: Sequence) -> Polynomial:
    """Terms of ``p`` minimising the weighted degree <weights, exponent>."""
    if p.is_zero():
        raise ValueError("lowest-order part of the zero polynomial is undefined")
    weights = _check_weights(weights, p.nvars)
    degs = {e: sum(w * a for w, a in zip(weights, e)) for e in p.terms}
    low = min(degs.values())
    return Polynomial(p.variables, {e: c for e, c in p.terms.items() if degs[e] == low})


def _check_weights(weights, m) -> tuple[Fraction, ...]:
    weights = tuple(Fraction(w) for w in weights)
    if len(weights) != m:
        raise ValueError(f"weight vector has length {len(weights)}, expected {m}")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be strictly positive")
    return weights


# ---------------------------------------------------------------------------
# matrices

class PolyMatrix:
    """An ``n x k`` matrix of polynomials, optionally depending on a parameter.

    With ``param`` set, each entry is a polynomial in ``variables + (param,)``;
    the parameter only ever enters coefficients.
    """

    __slots__ = ("variables", "param", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]], variables: Sequence[str], param: str | None = None):
        variables = tuple(variables)
        rows = tuple(tuple(r) for r in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        if len(rows) > ncols:
            raise ValueError(f"need rows <= columns, got {len(rows)}x{ncols}")
        full = variables + ((param,) if param else ())
        if param and param in variables:
            raise ValueError(f"parameter {param!r} is also an ambient variable")
        for r in rows:
            for e in r:
                if e.variables != full:
                    raise ValueError(f"entry over {e.variables}, expected {full}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], variables: Sequence[str], param: str | None = None) -> "PolyMatrix":
        full = tuple(variables) + ((param,) if param else ())
        return cls([[parse_polynomial(t, full) for t in r] for r in rows], variables, param)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.variables, self.param, self.entries) == (other.variables, other.param, other.entries)

    def __hash__(self):
        return hash((self.variables, self.param, self.entries))

    def __repr__(self):
        rows = " ; ".join(" | ".join(str(e) for e in r) for r in self.entries)
        return f"PolyMatrix([{rows}], {self.variables}, param={self.param!r})"

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def rows(self, indices: Iterable[int]) -> "PolyMatrix":
        return PolyMatrix([self.entries[i] for i in indices], self.variables, self.param)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.entries], self.variables, self.param)

    def entry_support(self, i: int, j: int) -> frozenset[Exponent]:
        """Ambient support of one entry (parameter exponent projected away)."""
        m = self.nvars
        return frozenset(e[:m] for e in self.entries[i][j].terms)


def matrix_support(a: PolyMatrix) -> frozenset[Exponent]:
    """Union of the entry supports; for families the generic support in the ambient variables."""
    out: set[Exponent] = set()
    n, k = a.shape
    for i in range(n):
        for j in range(k):
            out |= a.entry_support(i, j)
    return frozenset(out)


def support_polynomial(a: PolyMatrix) -> Polynomial:
    """The polynomial sum of x^p over supp(A), all coefficients 1."""
    return Polynomial(a.variables, {p: 1 for p in matrix_support(a)})


def matrix_lowest_order(a: PolyMatrix, weights: Sequence) -> PolyMatrix:
    """Keep in each entry exactly the terms whose exponent lies on the weighted-lowest face of supp(A)."""
    if a.param:
        raise ValueError("specialise the parameter before taking lowest-order parts")
    if a.is_zero():
        raise ValueError("lowest-order part of the zero matrix is undefined")
    face = support(lowest_order_part(support_polynomial(a), weights))
    return a.map(lambda e: Polynomial(e.variables, {x: c for x, c in e.terms.items() if x in face}))


def _as_square(m, name: str) -> tuple[tuple[Fraction, ...], ...]:
    rows = tuple(tuple(Fraction(x) for x in r) for r in m)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError(f"{name} must be square")
    return rows


def triple_product(p, a: PolyMatrix, q) -> PolyMatrix:
    """Exact product P * A * Q for invertible constant matrices P (n x n) and Q (k x k)."""
    p = _as_square(p, "P")
    q = _as_square(q, "Q")
    n, k = a.shape
    if len(p) != n or len(q) != k:
        raise ValueError(f"dimension mismatch: P is {len(p)}x{len(p)}, A is {n}x{k}, Q is {len(q)}x{len(q)}")
    if det(p) == 0:
        raise ValueError("P is singular")
    if det(q) == 0:
        raise ValueError("Q is singular")
    full = a.entries[0][0].variables
    zero = Polynomial.zero(full)
    pa = [[sum((a.entries[b][j] * p[i][b] for b in range(n) if p[i][b]), zero) for j in range(k)] for i in range(n)]
    paq = [[sum((pa[i][b] * q[b][j] for b in range(k) if q[b][j]), zero) for j in range(k)] for i in range(n)]
    return PolyMatrix(paq, a.variables, a.param)


def specialize_parameter(a: PolyMatrix, value) -> PolyMatrix:
    """Evaluate a family matrix at a rational parameter value."""
    if not a.param:
        return a
    entries = [[e.substitute_last(value) for e in r] for r in a.entries]
    return PolyMatrix(entries, a.variables)


def minor(a: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Determinant of a square submatrix, by Laplace expansion (sizes here are tiny)."""
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    if len(rows) == 1:
        return a.entries[rows[0]][cols[0]]
    r0, rest = rows[0], rows[1:]
    total = None
    for idx, c in enumerate(cols):
        entry = a.entries[r0][c]
        if entry.is_zero():
            continue
        sub = minor(a, rest, cols[:idx] + cols[idx + 1:])
        term = entry * sub
        if idx % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(a.entries[0][0].variables)
