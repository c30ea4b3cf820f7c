"""Exact arithmetic in the cyclotomic rings Z[zeta_N, 1/N] (inside Q(zeta_N)).

An element is stored in the power basis 1, z, ..., z^(phi(N)-1) of Q(zeta_N)
as a tuple of integer numerators over one positive common denominator.
Products are reduced by the N-th cyclotomic polynomial, so every value has a
single canonical representation for its conductor.  Values of different
conductors are combined inside Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by every Phi_d with d | n, d < n
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int, top: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the power-basis coordinates of z^e for 0 <= e <= top."""
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    for e in range(top + 1):
        if e < phi:
            cur = [0] * phi
            cur[e] = 1
        else:
            # multiply previous row by z and reduce z^phi = -sum poly[i] z^i
            carry = cur[-1]
            nxt = [0] + cur[:-1]
            if carry:
                for i in range(phi):
                    nxt[i] -= carry * poly[i]
            cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce(n: int, coeffs: list[int]) -> list[int]:
    """Reduce an integer coefficient list of exponents 0..len-1 modulo Phi_n."""
    phi = euler_phi(n)
    if len(coeffs) <= phi:
        return coeffs + [0] * (phi - len(coeffs))
    table = _reduction_table(n, max(len(coeffs) - 1, n))
    out = coeffs[:phi]
    for e in range(phi, len(coeffs)):
        c = coeffs[e]
        if c:
            row = table[e]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = den
    for a in nums:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        nums = [a // g for a in nums]
        den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


class CycNum:
    """An element of Q(zeta_N) in canonical power-basis form.

    Immutable.  ``CycNum.zeta(3)`` is a primitive cube root of unity,
    ``CycNum.from_rational(Fraction(1, 3))`` a rational constant.
    """

    __slots__ = ("conductor", "nums", "den", "_key")

    def __init__(self, conductor: int, nums, den: int = 1, *, _canonical: bool = False):
        if _canonical:
            self.conductor = conductor
            self.nums = nums
            self.den = den
        else:
            if conductor < 1:
                raise ValueError("conductor must be positive")
            nums = _reduce(conductor, [int(a) for a in nums])
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            self.conductor = conductor
            self.nums, self.den = _normalize(nums, int(den))
        self._key = None

    # construction -----------------------------------------------------
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        """zeta_n ** k with zeta_n = exp(2 pi i / n)."""
        k %= n
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(n, coeffs)

    @classmethod
    def from_rational(cls, r, conductor: int = 1) -> "CycNum":
        r = Fraction(r)
        return cls(conductor, [r.numerator], r.denominator)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs) -> "CycNum":
        """Build sum coeffs[e] * zeta^e from rational coefficients."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(conductor, [int(c * den) for c in fr], den)

    @classmethod
    def coerce(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Rational)):
            return cls.from_rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to CycNum")

    # inspection -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(a * z**e for e, a in enumerate(self.nums)) / self.den

    def embed(self, n: int) -> "CycNum":
        """The same value written with conductor n (a multiple of the current one)."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        step = n // self.conductor
        coeffs = [0] * ((len(self.nums) - 1) * step + 1)
        for e, a in enumerate(self.nums):
            coeffs[e * step] = a
        return CycNum(n, coeffs, self.den)

    def minimal_conductor(self) -> "CycNum":
        """Same value with the smallest conductor that contains it."""
        n = self.conductor
        if self.is_rational():
            return CycNum(1, (self.nums[0],), self.den, _canonical=True)
        for m in sorted(d for d in range(1, n) if n % d == 0):
            cand = _descend(self, m)
            if cand is not None:
                return cand
        return self

    def order(self) -> int | None:
        """Multiplicative order if this is a root of unity, else None."""
        base = self.minimal_conductor()
        n = base.conductor
        m = 2 * n if n % 2 else n
        for k in range(m):
            if CycNum.zeta(m, k) == base:
                return m // gcd(m, k)
        return None

    def root_exponent(self, n: int) -> int | None:
        """k with self == zeta_n**k, or None."""
        for k in range(n):
            if CycNum.zeta(n, k) == self:
                return k
        return None

    # arithmetic -------------------------------------------------------
    def _align(self, other) -> tuple["CycNum", "CycNum"]:
        other = CycNum.coerce(other)
        if other.conductor == self.conductor:
            return self, other
        if other.conductor == 1 and self.conductor != 1:
            return self, other.embed(self.conductor)
        if self.conductor == 1:
            return self.embed(other.conductor), other
        n = lcm(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        nums, d = _normalize([x * fa + y * fb for x, y in zip(a.nums, b.nums)], den)
        return CycNum(a.conductor, nums, d, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-a for a in self.nums), self.den, _canonical=True)

    def __sub__(self, other):
        try:
            return self + (-CycNum.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return CycNum.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if len(b.nums) == 1 or not any(b.nums[1:]):
            c = b.nums[0]
            nums, d = _normalize([x * c for x in a.nums], a.den * b.den)
            return CycNum(a.conductor, nums, d, _canonical=True)
        if not any(a.nums[1:]):
            c = a.nums[0]
            nums, d = _normalize([x * c for x in b.nums], a.den * b.den)
            return CycNum(a.conductor, nums, d, _canonical=True)
        prod = [0] * (len(a.nums) + len(b.nums) - 1)
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        prod[i + j] += x * y
        nums, d = _normalize(_reduce(a.conductor, prod), a.den * b.den)
        return CycNum(a.conductor, nums, d, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum(self.conductor, [self.den] + [0] * (len(self.nums) - 1), self.nums[0])
        # extended Euclid of the element polynomial against Phi_N over Q
        n = self.conductor
        r0 = [Fraction(c) for c in cyclotomic_poly(n)]
        r1 = [Fraction(a, self.den) for a in self.nums]
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        r1 = _ptrim(r1)
        while len(r1) > 1 or r1[0] == 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r1 is a nonzero constant
        c = r1[0]
        return CycNum.from_coeffs(n, [x / c for x in s1])

    def __truediv__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum(self.conductor, (1,) + (0,) * (len(self.nums) - 1), 1, _canonical=True)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugate (zeta -> zeta^-1)."""
        n = self.conductor
        coeffs = [0] * n
        for e, a in enumerate(self.nums):
            coeffs[(-e) % n] += a
        return CycNum(n, coeffs, self.den)

    def galois(self, k: int) -> "CycNum":
        """Image under zeta -> zeta^k (k coprime to the conductor)."""
        n = self.conductor
        coeffs = [0] * n
        for e, a in enumerate(self.nums):
            coeffs[(e * k) % n] += a
        return CycNum(n, coeffs, self.den)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a.nums == b.nums and a.den == b.den

    def __hash__(self):
        if self._key is None:
            m = self.minimal_conductor()
            self._key = hash((m.conductor, m.nums, m.den)) if m.conductor != 1 else hash(Fraction(m.nums[0], m.den))
        return self._key

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNum({self})"

    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.nums[0], self.den))
        parts = []
        for e, a in enumerate(self.nums):
            if not a:
                continue
            c = Fraction(a, self.den)
            mono = "" if e == 0 else (f"z{self.conductor}" if e == 1 else f"z{self.conductor}^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = "+".join(parts).replace("+-", "-")
        return s

    def to_json(self):
        """Stable JSON form: conductor and string coefficients."""
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycNum":
        return cls.from_coeffs(obj["conductor"], [Fraction(c) for c in obj["coeffs"]])


def _descend(x: CycNum, m: int) -> CycNum | None:
    """Return x written with conductor m if it lies in Q(zeta_m)."""
    phi_m = euler_phi(m)
    # images of the power basis of Q(zeta_m) inside Q(zeta_n)
    cols = [CycNum.zeta(m, i).embed(x.conductor).coeffs for i in range(phi_m)]
    target = x.coeffs
    sol = _solve_rational(cols, target)
    if sol is None:
        return None
    return CycNum.from_coeffs(m, sol)


def _solve_rational(cols, target):
    """Solve sum_i c_i cols[i] = target over Q (overdetermined); None if inconsistent."""
    rows = len(target)
    k = len(cols)
    mat = [[cols[j][i] for j in range(k)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    if any(mat[i][k] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][k]
    return sol


def _ptrim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _ptrim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            r[i + j] -= c * bj
    r = _ptrim(r[: len(b) - 1] or [Fraction(0)])
    return _ptrim(q), r


ZERO = CycNum(1, (0,), 1, _canonical=True)
ONE = CycNum(1, (1,), 1, _canonical=True)


def cyc(x) -> CycNum:
    """Shorthand coercion."""
    return CycNum.coerce(x)
