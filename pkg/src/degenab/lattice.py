"""Integral quadratic forms on Z^g and finite-index sublattices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, gcd
from typing import Sequence

from . import linalg as la
from .errors import InfiniteIndex, NotEvenForm, NotPositiveDefinite, UserInputError

Vec = tuple[int, ...]


def ldl(gram: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact G = L diag(d) L^T with L unit lower triangular.

    Raises NotPositiveDefinite unless every pivot is positive.
    """
    g = len(gram)
    L = [[Fraction(int(i == j)) for j in range(g)] for i in range(g)]
    d = [Fraction(0)] * g
    for j in range(g):
        s = Fraction(gram[j][j]) - sum(L[j][k] ** 2 * d[k] for k in range(j))
        if s <= 0:
            raise NotPositiveDefinite(f"form is not positive definite (pivot {j} = {s})")
        d[j] = s
        for i in range(j + 1, g):
            L[i][j] = (Fraction(gram[i][j]) - sum(L[i][k] * L[j][k] * d[k] for k in range(j))) / s
    return L, d


@dataclass(frozen=True)
class Form:
    """Even positive-definite integral form B(x, y) = x^T gram y."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        g = len(gram)
        if g == 0 or any(len(r) != g for r in gram):
            raise UserInputError("gram matrix must be square and nonempty")
        if any(gram[i][j] != gram[j][i] for i in range(g) for j in range(g)):
            raise UserInputError("gram matrix must be symmetric")
        ldl(gram)
        if any(gram[i][i] % 2 for i in range(g)):
            raise NotEvenForm("B(x, x) must be even: diagonal entries must be even")

    @classmethod
    def parse(cls, text: str) -> "Form":
        from .polynomial import parse_int_matrix

        return cls(parse_int_matrix(text))

    @property
    def g(self) -> int:
        return len(self.gram)

    def B(self, x, y):
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.g) for j in range(self.g) if x[i] and y[j])

    def Q(self, x):
        return self.B(x, x)

    def Gx(self, x):
        return tuple(sum(self.gram[i][j] * x[j] for j in range(self.g)) for i in range(self.g))

    def F(self, lam, x):
        """F_lambda(x) = B(x, x) - 2 B(lambda, x)."""
        return self.B(x, x) - 2 * self.B(lam, x)

    @cached_property
    def ldl(self):
        return ldl(self.gram)

    @cached_property
    def det(self) -> int:
        return la.det(self.gram)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return la.inverse(la.frac_matrix(self.gram), Fraction(1), Fraction(0))

    @cached_property
    def adjugate(self) -> tuple[tuple[int, ...], ...]:
        d = self.det
        return tuple(tuple(int(x * d) for x in row) for row in self.inverse)

    def transformed(self, u: Sequence[Sequence[int]]) -> "Form":
        """The form U^T G U."""
        ut = la.transpose(u)
        return Form(la.matmul(la.matmul(ut, self.gram), u))

    def to_json(self):
        return [list(r) for r in self.gram]

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.gram)


def elementary_divisors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer square matrix via minor gcds."""
    g = len(m)
    prev = 1
    out = []
    for k in range(1, g + 1):
        cur = 0
        for rows in itertools.combinations(range(g), k):
            for cols in itertools.combinations(range(g), k):
                cur = gcd(cur, la.det([[m[i][j] for j in cols] for i in rows]))
        if cur == 0:
            out.append(0)
            prev = 0
            continue
        out.append(cur // prev)
        prev = cur
    return tuple(out)


@dataclass(frozen=True)
class Sublattice:
    """Y = column span of an integer g x g matrix of nonzero determinant."""

    basis: tuple[tuple[int, ...], ...]
    _inv: tuple = field(init=False, repr=False, compare=False)
    _identity: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in r) for r in self.basis)
        object.__setattr__(self, "basis", b)
        g = len(b)
        if g == 0 or any(len(r) != g for r in b):
            raise UserInputError("sublattice matrix must be square")
        if la.det(b) == 0:
            raise InfiniteIndex("sublattice has infinite index (determinant 0)")
        object.__setattr__(self, "_inv", la.inverse(la.frac_matrix(b), Fraction(1), Fraction(0)))
        object.__setattr__(self, "_identity", all(b[i][j] == (i == j) for i in range(g) for j in range(g)))

    @classmethod
    def full(cls, g: int) -> "Sublattice":
        return cls(tuple(tuple(int(i == j) for j in range(g)) for i in range(g)))

    @classmethod
    def diagonal(cls, divs: Sequence[int]) -> "Sublattice":
        g = len(divs)
        return cls(tuple(tuple(divs[i] if i == j else 0 for j in range(g)) for i in range(g)))

    @classmethod
    def parse(cls, text: str, g: int) -> "Sublattice":
        if text.strip().upper() == "X":
            return cls.full(g)
        from .polynomial import parse_int_matrix

        m = parse_int_matrix(text)
        if len(m) == 1 and len(m[0]) == 1 and g > 1:
            return cls.diagonal([m[0][0]] * g)
        if len(m) != g:
            raise UserInputError(f"sublattice has rank {len(m)}, form has rank {g}")
        return cls(m)

    @property
    def g(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> int:
        return abs(la.det(self.basis))

    @property
    def is_full(self) -> bool:
        return self.index == 1

    @cached_property
    def divisors(self) -> tuple[int, ...]:
        """Elementary divisors of X/Y."""
        return elementary_divisors(self.basis)

    @property
    def e_min(self) -> int:
        nontrivial = [d for d in self.divisors if d != 1]
        return min(nontrivial) if nontrivial else 1

    def generators(self) -> list[Vec]:
        return [tuple(self.basis[i][j] for i in range(self.g)) for j in range(self.g)]

    def coords(self, x) -> tuple[Fraction, ...]:
        return tuple(sum(self._inv[i][j] * x[j] for j in range(self.g)) for i in range(self.g))

    def contains(self, x) -> bool:
        if self._identity:
            return True
        return all(c.denominator == 1 for c in self.coords(x))

    def point(self, k) -> Vec:
        return tuple(sum(self.basis[i][j] * k[j] for j in range(self.g)) for i in range(self.g))

    def reduce(self, x) -> Vec:
        """Representative of x + Y in the half-open fundamental parallelepiped."""
        if self._identity:
            return (0,) * len(x)
        k = tuple(floor(c) for c in self.coords(x))
        y = self.point(k)
        return tuple(a - b for a, b in zip(x, y))

    @cached_property
    def coset_reps(self) -> tuple[Vec, ...]:
        # integer points of the parallelepiped, via its bounding box
        lo = [sum(min(0, self.basis[i][j]) for j in range(self.g)) for i in range(self.g)]
        hi = [sum(max(0, self.basis[i][j]) for j in range(self.g)) for i in range(self.g)]
        reps = []
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if all(0 <= c < 1 for c in self.coords(x)):
                reps.append(tuple(x))
        reps.sort()
        if len(reps) != self.index:
            raise ArithmeticError("coset enumeration failed")
        return tuple(reps)

    def to_json(self):
        return [list(r) for r in self.basis]


def int_bounds(center: Fraction, r2: Fraction) -> tuple[int, int]:
    """Integers k with (k - center)^2 <= r2, as an inclusive range [lo, hi]."""
    center, r2 = Fraction(center), Fraction(r2)
    if r2 < 0:
        return 1, 0
    approx = r2.numerator * 1.0 / r2.denominator
    r = approx**0.5
    hi = floor(center + r)
    lo = -floor(-(center - r))

    def within(k):
        return (k - center) ** 2 <= r2

    def ok_hi(k):
        return k <= center or within(k)

    def ok_lo(k):
        return k >= center or within(k)

    while not ok_hi(hi):
        hi -= 1
    while ok_hi(hi + 1):
        hi += 1
    while not ok_lo(lo):
        lo += 1
    while ok_lo(lo - 1):
        lo -= 1
    return lo, hi


def ellipsoid_box(form: Form, center, value) -> list[tuple[int, int]]:
    """Integer box containing {x : (x - c)^T G (x - c) <= value}."""
    inv = form.inverse
    return [int_bounds(Fraction(center[i]), Fraction(value) * inv[i][i]) for i in range(form.g)]


def common_denominator(vec) -> int:
    d = 1
    for v in vec:
        v = Fraction(v)
        d = d * v.denominator // gcd(d, v.denominator)
    return d
