"""Dense exact linear algebra over Fraction or CycNum entries.

Matrices are tuples of row tuples.  All routines are field-agnostic: they only
use +, -, *, / and equality with zero, so they work for Fraction and CycNum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import ONE, ZERO, CycNum

Matrix = tuple[tuple, ...]


def _is_zero(x) -> bool:
    return x == 0


def zeros(r: int, c: int, zero=ZERO) -> Matrix:
    return tuple(tuple(zero for _ in range(c)) for _ in range(r))


def identity(n: int, one=ONE, zero=ZERO) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, m = len(a), len(b[0]) if b else 0
    inner = len(b)
    out = []
    for i in range(n):
        row_a = a[i]
        nz = [(k, row_a[k]) for k in range(inner) if not _is_zero(row_a[k])]
        row = []
        for j in range(m):
            s = None
            for k, x in nz:
                y = b[k][j]
                if not _is_zero(y):
                    s = x * y if s is None else s + x * y
            row.append(_zero_like(a, b) if s is None else s)
        out.append(tuple(row))
    return tuple(out)


def _zero_like(a, b):
    x = a[0][0] * b[0][0]
    return x - x


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    z = a[0][0] * v[0]
    z = z - z
    return tuple(sum((x * y for x, y in zip(row, v) if not _is_zero(x)), z) for row in a)


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def scalar_mul(c, a: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def add(a, b) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b))


def is_scalar_matrix(a) -> tuple[bool, object]:
    """(True, c) if a == c * identity."""
    n = len(a)
    c = a[0][0] if n else ONE
    for i in range(n):
        for j in range(n):
            if (a[i][j] == c) if i == j else _is_zero(a[i][j]):
                continue
            return False, None
    return True, c


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv if not _is_zero(x) else x for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y if not _is_zero(y) else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero=ZERO, one=ONE) -> list[tuple]:
    """Basis of {v : rows * v = 0}."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, piv):
            if not _is_zero(r[f]):
                v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def inverse(a: Sequence[Sequence], one=ONE, zero=ZERO) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def solve(a: Sequence[Sequence], b: Sequence) -> tuple | None:
    """One solution of a x = b or None."""
    n = len(a[0])
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    z = b[0] - b[0]
    x = [z] * n
    for r, p in zip(red, piv):
        x[p] = r[n]
    return tuple(x)


def det(a: Sequence[Sequence]):
    """Determinant by fraction-free elimination (Bareiss) for integers, else Gauss."""
    n = len(a)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in a for x in row):
        m = [list(r) for r in a]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if p is None:
                    return 0
                m[k], m[p] = m[p], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]
    m = [list(r) for r in a]
    d = m[0][0] - m[0][0] + 1
    for k in range(n):
        p = next((i for i in range(k, n) if not _is_zero(m[i][k])), None)
        if p is None:
            return d - d
        if p != k:
            m[k], m[p] = m[p], m[k]
            d = -d
        d = d * m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            if not _is_zero(m[i][k]):
                f = m[i][k] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return d


def int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in rows)


def frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def to_cyc_matrix(rows) -> Matrix:
    return tuple(tuple(CycNum.coerce(x) for x in r) for r in rows)


def sparse_nullspace(rows: Sequence[dict], ncols: int, zero=ZERO, one=ONE) -> list[tuple]:
    """Nullspace basis for equations given as sparse {column: coefficient} rows."""
    pivots: dict[int, dict] = {}  # pivot column -> normalized row (fully reduced later)
    for row in rows:
        r = {c: v for c, v in row.items() if not _is_zero(v)}
        # eliminate existing pivots
        changed = True
        while changed and r:
            changed = False
            for c in [c for c in r if c in pivots]:
                f = r.get(c)
                if f is None:
                    continue
                for k, v in pivots[c].items():
                    nv = r.get(k, zero) - f * v
                    if _is_zero(nv):
                        r.pop(k, None)
                    else:
                        r[k] = nv
                changed = True
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        # back-substitute into existing pivot rows
        for q, prow in pivots.items():
            f = prow.get(p)
            if f is not None:
                for k, v in r.items():
                    nv = prow.get(k, zero) - f * v
                    if _is_zero(nv):
                        prow.pop(k, None)
                    else:
                        prow[k] = nv
        pivots[p] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for p, prow in pivots.items():
            if f in prow:
                v[p] = -prow[f]
        basis.append(tuple(v))
    return basis
