"""Multivariate polynomials and rational functions with CycNum coefficients."""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Mapping, Sequence

from .cyclotomic import ONE, CycNum, cyc
from .errors import ParseError

Exp = tuple[int, ...]


class MPoly:
    """Polynomial in ``nvars`` variables; immutable, canonical (no zero terms)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None):
        self.nvars = nvars
        clean: dict[Exp, CycNum] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(t) for t in e)
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            c = cyc(c)
            if e in clean:
                c = clean[e] + c
            clean[e] = c
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MPoly":
        return cls(len(exp), {tuple(exp): c})

    # ring ops ---------------------------------------------------------
    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return MPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t: dict[Exp, CycNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return MPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == MPoly.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exp: Sequence[int]) -> CycNum:
        return self.terms.get(tuple(exp), cyc(0))

    def diff(self, i: int) -> "MPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MPoly(self.nvars, t)

    def evaluate(self, point: Sequence) -> CycNum:
        point = [cyc(p) for p in point]
        total = cyc(0)
        powers: dict[tuple[int, int], CycNum] = {}
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = point[i] ** k
                    t = t * powers[key]
            total = total + t
        return total

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable i by images[i] (all images share one variable count)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        out = MPoly(nv)
        cache: dict[tuple[int, int], MPoly] = {}
        for e, c in self.terms.items():
            t = MPoly.const(nv, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def linear_change(self, a: Sequence[Sequence]) -> "MPoly":
        """F(A x): variable i becomes sum_j A[i][j] x_j."""
        n = self.nvars
        images = [MPoly(n, {tuple(int(k == j) for k in range(n)): a[i][j] for j in range(n)}) for i in range(n)]
        return self.substitute(images)

    def scale_to_monic(self) -> "MPoly":
        """Divide by the leading (lexicographically largest exponent) coefficient."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        inv = lead.inverse()
        return MPoly(self.nvars, {e: c * inv for e, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Exp, CycNum]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __repr__(self):
        return f"MPoly({self})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_string


class RatFunc:
    """Quotient num/den of polynomials, compared by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.const(num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den * other.den)
        return RatFunc(self.num * other, self.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            if other.num.is_zero():
                raise ZeroDivisionError("division by zero function")
            return RatFunc(self.num * other.den, self.den * other.num)
        return RatFunc(self.num, self.den * other)

    def inverse(self) -> "RatFunc":
        return RatFunc(self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(MPoly.const(self.num.nvars, other))
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable")

    def substitute(self, images: Sequence[MPoly]) -> "RatFunc":
        return RatFunc(self.num.substitute(images), self.den.substitute(images))

    def is_constant(self) -> tuple[bool, CycNum | None]:
        """(True, c) when num == c * den."""
        if self.num.is_zero():
            return True, cyc(0)
        e, d = max(self.den.terms.items())
        c = self.num.coeff(e) / d
        return (self.num == self.den * c), c

    def __repr__(self):
        return f"RatFunc(({self.num})/({self.den}))"


# parsing --------------------------------------------------------------

_ZETA = re.compile(r"^(?:z|zeta)(\d+)$")


def parse_poly(text: str, variables: Sequence[str] = ("x0", "x1", "x2")) -> MPoly:
    """Parse an arithmetic expression over the given variables and roots of unity.

    ``z3`` (or ``zeta3``) stands for exp(2 pi i / 3); ``^`` and ``**`` both mean power.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty polynomial literal")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    def ev(node) -> MPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MPoly.const(n, node.value)
        if isinstance(node, ast.Name):
            if node.id in index:
                return MPoly.var(n, index[node.id])
            m = _ZETA.match(node.id)
            if m and int(m.group(1)) >= 1:
                return MPoly.const(n, CycNum.zeta(int(m.group(1))))
            raise ParseError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _int_literal(node.right)
                base = ev(node.left)
                if k < 0:
                    if base.degree() > 0:
                        raise ParseError("negative power of a non-constant")
                    return MPoly.const(n, base.coeff((0,) * n) ** k)
                return base**k
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.degree() > 0 or b.is_zero():
                    raise ParseError("division only by nonzero constants")
                return a * b.coeff((0,) * n).inverse()
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise ParseError("exponents must be integer literals")


def parse_rational_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(p.strip()) for p in text.split(",") if p.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational vector {text!r}") from None


def parse_int_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse "a,b;c,d" into an integer matrix."""
    try:
        rows = tuple(tuple(int(x) for x in r.split(",")) for r in text.strip().split(";"))
    except ValueError:
        raise ParseError(f"bad integer matrix literal {text!r}") from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise ParseError(f"ragged matrix literal {text!r}")
    return rows


def monomials(nvars: int, deg: int) -> list[Exp]:
    """All exponent vectors of total degree ``deg``, in a fixed order."""
    if nvars == 1:
        return [(deg,)]
    out = []
    for k in range(deg, -1, -1):
        out.extend((k,) + rest for rest in monomials(nvars - 1, deg - k))
    return out


def ideal_hilbert_function(gens: Sequence[MPoly], degree: int) -> int:
    """dim of the degree-``degree`` part of S/I for homogeneous generators of I."""
    from .linalg import sparse_nullspace

    gens = [g for g in gens if g]
    if not gens:
        return len(monomials(3 if not gens else gens[0].nvars, degree))
    n = gens[0].nvars
    target = monomials(n, degree)
    index = {e: i for i, e in enumerate(target)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > degree:
            continue
        for m in monomials(n, degree - dg):
            rows.append({index[tuple(a + b for a, b in zip(e, m))]: c for e, c in g.terms.items()})
    # rank of the span of rows = number of columns minus nullity of the transpose system
    ncols = len(rows)
    cols: dict[int, dict] = {}
    for j, r in enumerate(rows):
        for i, c in r.items():
            cols.setdefault(i, {})[j] = c
    rank = ncols - len(sparse_nullspace(list(cols.values()), ncols)) if ncols else 0
    return len(target) - rank


def hessian(f: MPoly) -> MPoly:
    """Determinant of the matrix of second partials (three variables)."""
    if f.nvars != 3:
        raise ValueError("hessian is implemented for three variables")
    h = [[f.diff(i).diff(j) for j in range(3)] for i in range(3)]
    return (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
            - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
            + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))
