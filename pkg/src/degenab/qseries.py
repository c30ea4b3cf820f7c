"""Finite formal sums  sum c * q^v * w^x  with rational v and x in Z^g."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .cyclotomic import ONE, CycNum, cyc
from .errors import EmptySeries

Key = tuple[Fraction, tuple[int, ...]]


class QLaurent:
    """Immutable finite q-Laurent sum with lattice monomials.

    >>> s = QLaurent.monomial(1, 0, (0,)) + QLaurent.monomial(1, 9, (3,))
    >>> s.leading()
    (Fraction(0, 1), {((0,), CycNum(1))})
    """

    __slots__ = ("rank", "_terms", "_sorted")

    def __init__(self, rank: int, terms: Mapping[Key, CycNum] | Iterable[tuple[CycNum, object, tuple]] = ()):
        self.rank = rank
        acc: dict[Key, CycNum] = {}
        items = terms.items() if isinstance(terms, Mapping) else (((Fraction(v), tuple(x)), c) for c, v, x in terms)
        for (v, x), c in items:
            x = tuple(int(t) for t in x)
            if len(x) != rank:
                raise ValueError(f"monomial {x} has wrong rank (expected {rank})")
            key = (Fraction(v), x)
            c = cyc(c)
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
        self._terms = {k: c for k, c in acc.items() if not c.is_zero()}
        self._sorted = None

    @classmethod
    def monomial(cls, coeff, qval, mono) -> "QLaurent":
        mono = tuple(mono)
        return cls(len(mono), [(cyc(coeff), qval, mono)])

    @classmethod
    def zero(cls, rank: int) -> "QLaurent":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "QLaurent":
        return cls(rank, [(ONE, 0, (0,) * rank)])

    # views ------------------------------------------------------------
    def terms(self) -> list[tuple[CycNum, Fraction, tuple[int, ...]]]:
        """Terms as (coeff, qval, mono), sorted by (qval, mono)."""
        if self._sorted is None:
            self._sorted = tuple((self._terms[k], k[0], k[1]) for k in sorted(self._terms))
        return list(self._sorted)

    def coefficient(self, qval, mono) -> CycNum:
        return self._terms.get((Fraction(qval), tuple(mono)), CycNum.from_rational(0))

    def coefficient_of_mono(self, mono) -> dict[Fraction, CycNum]:
        mono = tuple(mono)
        return {v: c for (v, x), c in self._terms.items() if x == mono}

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.terms())

    # arithmetic -------------------------------------------------------
    def _check(self, other: "QLaurent"):
        if not isinstance(other, QLaurent):
            return NotImplemented
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged[k] + c if k in merged else c
        return QLaurent(self.rank, merged)

    def __neg__(self):
        return QLaurent(self.rank, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            c0 = cyc(other)
            return QLaurent(self.rank, {k: c * c0 for k, c in self._terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc: dict[Key, CycNum] = {}
        for (v1, x1), c1 in self._terms.items():
            for (v2, x2), c2 in other._terms.items():
                k = (v1 + v2, tuple(a + b for a, b in zip(x1, x2)))
                p = c1 * c2
                acc[k] = acc[k] + p if k in acc else p
        return QLaurent(self.rank, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    # operations -------------------------------------------------------
    def leading(self) -> tuple[Fraction, set[tuple[tuple[int, ...], CycNum]]]:
        """Minimal q-valuation and the (mono, coeff) pairs attaining it."""
        if not self._terms:
            raise EmptySeries("leading part of an empty series")
        vmin = min(v for v, _ in self._terms)
        return vmin, {(x, c) for (v, x), c in self._terms.items() if v == vmin}

    def substitute(self, shift, scale=None) -> "QLaurent":
        """Apply w_i -> q^shift_i * scale_i * u_i."""
        shift = [Fraction(s) for s in shift]
        if len(shift) != self.rank:
            raise ValueError("shift has wrong length")
        scale = [cyc(s) for s in scale] if scale is not None else None
        if scale is not None and any(s.is_zero() for s in scale):
            raise ValueError("scale entries must be nonzero")
        acc: dict[Key, CycNum] = {}
        for (v, x), c in self._terms.items():
            nv = v + sum(s * xi for s, xi in zip(shift, x))
            if scale is not None:
                for s, xi in zip(scale, x):
                    if xi:
                        c = c * s**xi
            k = (nv, x)
            acc[k] = acc[k] + c if k in acc else c
        return QLaurent(self.rank, acc)

    def truncate(self, cutoff) -> "QLaurent":
        cutoff = Fraction(cutoff)
        return QLaurent(self.rank, {k: c for k, c in self._terms.items() if k[0] <= cutoff})

    def qval_denominator(self) -> int:
        from math import lcm

        d = 1
        for v, _ in self._terms:
            d = lcm(d, v.denominator)
        return d

    def evaluate(self, q: complex, u=None) -> complex:
        """Floating-point evaluation at q (complex) and u (vector, default all 1)."""
        total = 0j
        for (v, x), c in self._terms.items():
            t = c.to_complex() * (q ** float(v))
            if u is not None:
                for ui, xi in zip(u, x):
                    t *= ui**xi
            total += t
        return total

    # display ----------------------------------------------------------
    def __repr__(self):
        return f"QLaurent({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for c, v, x in self.terms():
            mono = "*".join(f"w{i + 1}^{e}" if self.rank > 1 else f"w^{e}" for i, e in enumerate(x) if e)
            qs = f"q^{v}" if v else ""
            body = "*".join(p for p in (qs, mono) if p)
            cs = str(c)
            if not body:
                out.append(cs)
            elif cs == "1":
                out.append(body)
            elif cs == "-1":
                out.append("-" + body)
            else:
                out.append(f"({cs})*{body}")
        return " + ".join(out)

    def to_json(self):
        return {
            "rank": self.rank,
            "terms": [{"coeff": c.to_json(), "qval": str(v), "mono": list(x)} for c, v, x in self.terms()],
        }

    @classmethod
    def from_json(cls, obj) -> "QLaurent":
        return cls(obj["rank"], [(CycNum.from_json(t["coeff"]), Fraction(t["qval"]), tuple(t["mono"])) for t in obj["terms"]])
