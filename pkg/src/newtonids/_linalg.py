"""Small exact linear algebra over Z and Q.

Everything here works on plain Python ints and ``Fraction`` objects; matrix
sizes in this package never exceed 8x8 (or a few hundred rows for the
interpolation oracle), so textbook elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - a * rk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix."""
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            f = m[r][c] / p
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return result


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


class IntEchelon:
    """Incremental fraction-free row reduction of integer vectors."""

    def __init__(self):
        self.basis: list[tuple[int, list[int]]] = []  # (pivot column, row)

    def reduce(self, row: Sequence[int]) -> list[int]:
        v = list(row)
        for col, b in self.basis:
            if v[col]:
                f, g = v[col], b[col]
                v = [x * g - y * f for x, y in zip(v, b)]
        return v

    def add(self, row: Sequence[int]) -> bool:
        """Add a row; returns False if it was dependent on the rows so far."""
        v = self.reduce(row)
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is None:
            return False
        self.basis.append((piv, primitive_list(v)))
        return True

    @property
    def pivots(self) -> list[int]:
        return [c for c, _ in self.basis]


def int_rank(rows: Sequence[Sequence[int]], stop_at: int | None = None) -> int:
    """Rank of an integer matrix by fraction-free elimination, optionally stopping early."""
    ech = IntEchelon()
    for row in rows:
        ech.add(row)
        if stop_at is not None and len(ech.basis) >= stop_at:
            break
    return len(ech.basis)


def primitive_list(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return v if g in (0, 1) else [x // g for x in v]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system a @ x = b exactly; raises on singular input."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular linear system")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g in (0, 1):
        return tuple(vec)
    return tuple(x // g for x in vec)


def lcm_of_denominators(values) -> int:
    d = 1
    for v in values:
        q = Fraction(v).denominator
        d = d * q // gcd(d, q)
    return d
