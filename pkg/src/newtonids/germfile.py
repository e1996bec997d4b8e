"""Line-oriented germ description files.

    # comment (anywhere on a line)
    vars x y z w
    param t                       optional family parameter
    rank 2                        optional rank bound s (default n)
    matrix 2 3
    w | y | x
    z | w | y
    function 3*x + 4*y - z + w    optional
    polyhedron D : (2,0) (0,6)    optional named Newton polyhedra
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .newton import NewtonPolyhedron, newton_polyhedron
from .polynomial import PolyMatrix, Polynomial, PolynomialParseError, parse_polynomial

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_POINT = re.compile(r"\(([^()]*)\)")


class GermFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(where + message)
        self.line = line
        self.source = source


@dataclass
class GermFile:
    variables: tuple[str, ...] = ()
    param: str | None = None
    rank: int | None = None
    matrix: PolyMatrix | None = None
    function: Polynomial | None = None
    polyhedra: dict[str, NewtonPolyhedron] = field(default_factory=dict)
    source: str = "<input>"

    def require_matrix(self) -> PolyMatrix:
        if self.matrix is None:
            raise GermFileError("no matrix block", source=self.source)
        return self.matrix

    def require_function(self) -> Polynomial:
        if self.function is None:
            raise GermFileError("no function line", source=self.source)
        return self.function


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_germ(text: str, source: str = "<input>") -> GermFile:
    out = GermFile(source=source)
    lines = text.splitlines()
    i = 0

    def fail(msg, lineno):
        raise GermFileError(msg, lineno, source)

    def poly(expr, lineno, names):
        try:
            return parse_polynomial(expr, names)
        except PolynomialParseError as exc:
            fail(f"{exc} in {expr!r}", lineno)

    while i < len(lines):
        lineno = i + 1
        line = _strip(lines[i])
        i += 1
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vars":
            names = rest.split()
            if not names:
                fail("vars needs at least one name", lineno)
            for n in names:
                if not _NAME.match(n):
                    fail(f"bad variable name {n!r}", lineno)
            if len(set(names)) != len(names):
                fail("repeated variable name", lineno)
            out.variables = tuple(names)
        elif head == "param":
            if not _NAME.match(rest) or rest in out.variables:
                fail(f"bad parameter name {rest!r}", lineno)
            out.param = rest
        elif head == "rank":
            if not rest.isdigit() or int(rest) < 1:
                fail(f"rank must be a positive integer, got {rest!r}", lineno)
            out.rank = int(rest)
        elif head == "matrix":
            if not out.variables:
                fail("matrix before vars", lineno)
            dims = rest.split()
            if len(dims) != 2 or not all(d.isdigit() and int(d) > 0 for d in dims):
                fail("matrix needs two positive sizes", lineno)
            n, k = map(int, dims)
            names = out.variables + ((out.param,) if out.param else ())
            rows = []
            while len(rows) < n:
                if i >= len(lines):
                    fail(f"matrix expects {n} rows, file ended after {len(rows)}", lineno)
                rl = _strip(lines[i])
                i += 1
                if not rl:
                    continue
                cells = [c.strip() for c in rl.split("|")]
                if len(cells) != k:
                    fail(f"row has {len(cells)} entries, expected {k}", i)
                rows.append([poly(c, i, names) for c in cells])
            try:
                out.matrix = PolyMatrix(rows, out.variables, out.param)
            except ValueError as exc:
                fail(str(exc), lineno)
        elif head == "function":
            if not out.variables:
                fail("function before vars", lineno)
            out.function = poly(rest, lineno, out.variables)
        elif head == "polyhedron":
            name, sep, pts = rest.partition(":")
            name = name.strip()
            if not sep or not _NAME.match(name):
                fail("expected 'polyhedron NAME : (a,b,...) ...'", lineno)
            points = []
            leftover = _POINT.sub("", pts).strip()
            if leftover:
                fail(f"unexpected text {leftover!r} in point list", lineno)
            for body in _POINT.findall(pts):
                try:
                    points.append(tuple(int(x) for x in body.split(",")))
                except ValueError:
                    fail(f"bad point ({body})", lineno)
            if not points:
                fail("polyhedron needs at least one point", lineno)
            dims = {len(p) for p in points}
            if len(dims) != 1 or any(x < 0 for p in points for x in p):
                fail("points must be non-negative and of equal length", lineno)
            out.polyhedra[name] = newton_polyhedron(points)
        else:
            fail(f"unknown directive {head!r}", lineno)
    return out


def load_germ(path: str | Path) -> GermFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GermFileError(f"cannot read: {exc.strerror}", source=str(path)) from exc
    return parse_germ(text, str(path))
