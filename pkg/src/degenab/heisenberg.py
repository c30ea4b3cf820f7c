"""Finite Heisenberg groups and their Schrödinger representations.

For H = Z/e_1 + ... + Z/e_g (e_1 | e_2 | ...) with N = e_1 * ... * e_g, the dual
group is identified with H through the pairing

    alpha(z) = zeta_N ** sum(alpha_i * z_i * N / e_i).

Group elements are triples (a, z, alpha) with the law
(a, z, alpha)(b, w, beta) = (a b beta(z), z + w, alpha + beta).  The weight-d
Schrödinger action on the free module with basis v(mu), mu in the dual, is
U(a, z, alpha) v(beta) = a^d beta(z)^d v(alpha + beta).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from . import linalg as la
from .cyclotomic import ONE, ZERO, CycNum
from .errors import ChartMismatch, NotFree, NotWeightD, UserInputError
from .polynomial import MPoly, RatFunc


@dataclass(frozen=True)
class AbelianH:
    divisors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(int(e) for e in self.divisors))
        for e in self.divisors:
            if e < 1:
                raise UserInputError("elementary divisors must be positive")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a:
                raise UserInputError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def parse(cls, text: str) -> "AbelianH":
        text = text.strip()
        if text in ("", "1", "0"):
            return cls(())
        try:
            divs = tuple(int(p) for p in text.replace("x", ",").split(","))
        except ValueError:
            raise UserInputError(f"bad group literal {text!r}") from None
        return cls(tuple(e for e in divs if e != 1))

    @property
    def g(self) -> int:
        return len(self.divisors)

    @property
    def order(self) -> int:
        n = 1
        for e in self.divisors:
            n *= e
        return n

    N = order

    @property
    def e_min(self) -> int:
        return self.divisors[0] if self.divisors else 1

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(e) for e in self.divisors)))

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {z: i for i, z in enumerate(self.elements)}

    def index(self, z) -> int:
        return self._index[self.reduce(z)]

    def reduce(self, z) -> tuple[int, ...]:
        return tuple(int(a) % e for a, e in zip(z, self.divisors))

    def add(self, z, w) -> tuple[int, ...]:
        return self.reduce(tuple(a + b for a, b in zip(z, w)))

    def neg(self, z) -> tuple[int, ...]:
        return self.reduce(tuple(-a for a in z))

    def unit(self, i: int) -> tuple[int, ...]:
        return tuple(int(k == i) for k in range(self.g))

    def pairing_exponent(self, alpha, z) -> int:
        """k with alpha(z) = zeta_N ** k."""
        n = self.order
        return sum(a * b * (n // e) for a, b, e in zip(alpha, z, self.divisors)) % n

    def character(self, alpha, z) -> CycNum:
        return CycNum.zeta(self.order, self.pairing_exponent(alpha, z))

    def __str__(self):
        return "+".join(f"Z/{e}" for e in self.divisors) or "0"


@dataclass(frozen=True)
class HeisElem:
    a: CycNum
    z: tuple[int, ...]
    alpha: tuple[int, ...]


class HeisenbergGroup:
    """G_H with its multiplication and standard generators."""

    def __init__(self, h: AbelianH):
        self.h = h

    def elem(self, a, z, alpha) -> HeisElem:
        return HeisElem(CycNum.coerce(a), self.h.reduce(z), self.h.reduce(alpha))

    def identity(self) -> HeisElem:
        return self.elem(1, (0,) * self.h.g, (0,) * self.h.g)

    def mul(self, x: HeisElem, y: HeisElem) -> HeisElem:
        return HeisElem(x.a * y.a * self.h.character(y.alpha, x.z), self.h.add(x.z, y.z), self.h.add(x.alpha, y.alpha))

    def inv(self, x: HeisElem) -> HeisElem:
        # (a,z,al)^-1 = (a^-1 al(z), -z, -al)
        return HeisElem(x.a.inverse() * self.h.character(x.alpha, x.z), self.h.neg(x.z), self.h.neg(x.alpha))

    def generators(self) -> list[HeisElem]:
        """Center generator, then (1, e_i, 0), then (1, 0, e_i)."""
        h = self.h
        zero = (0,) * h.g
        gens = [self.elem(CycNum.zeta(h.order), zero, zero)]
        gens += [self.elem(1, h.unit(i), zero) for i in range(h.g)]
        gens += [self.elem(1, zero, h.unit(i)) for i in range(h.g)]
        return gens

    def random_element(self, rng: random.Random) -> HeisElem:
        h = self.h
        z = tuple(rng.randrange(e) for e in h.divisors)
        al = tuple(rng.randrange(e) for e in h.divisors)
        return self.elem(CycNum.zeta(h.order, rng.randrange(h.order)), z, al)


def schrodinger(h: AbelianH, g: HeisElem, d: int = 1) -> la.Matrix:
    """Matrix of U_{d,H}(g) on the basis v(mu), mu in the dual of H (order of h.elements)."""
    if d < 1:
        raise UserInputError("weight must be positive")
    n = h.order
    rows = [[ZERO] * n for _ in range(n)]
    ad = g.a**d
    for col, beta in enumerate(h.elements):
        row = h.index(h.add(g.alpha, beta))
        rows[row][col] = ad * CycNum.zeta(n, d * h.pairing_exponent(beta, g.z))
    return la.mat(rows)


def _lift(h: AbelianH, x) -> HeisElem:
    z, alpha = x
    return HeisElem(ONE, h.reduce(z), h.reduce(alpha))


def commutator_pairing(h: AbelianH, x, y) -> CycNum:
    """e_K(x, y) = [gamma_x, gamma_y] for x = (z, alpha), y = (w, beta) in H + dual."""
    gx, gy = _lift(h, x), _lift(h, y)
    ux, uy = schrodinger(h, gx), schrodinger(h, gy)
    prod = la.matmul(la.matmul(ux, uy), la.matmul(la.inverse(ux), la.inverse(uy)))
    ok, c = la.is_scalar_matrix(prod)
    if not ok:
        raise ArithmeticError("commutator is not scalar")
    return c


def commutator_formula(h: AbelianH, x, y) -> CycNum:
    """Closed form beta(z) * alpha(w)^-1."""
    (z, alpha), (w, beta) = x, y
    return CycNum.zeta(h.order, h.pairing_exponent(beta, z) - h.pairing_exponent(alpha, w))


def pairing_matrix(h: AbelianH) -> list[list[CycNum]]:
    """Values of e_K on the standard basis (e_1..e_g, e_1^v..e_g^v) of K."""
    zero = (0,) * h.g
    basis = [(h.unit(i), zero) for i in range(h.g)] + [(zero, h.unit(i)) for i in range(h.g)]
    return [[commutator_pairing(h, x, y) for y in basis] for x in basis]


def _mono_key(m: la.Matrix):
    n = len(m)
    key = []
    for j in range(n):
        for i in range(n):
            if not m[i][j].is_zero():
                key.append((i, m[i][j]))
                break
    return tuple(key)


def group_order(h: AbelianH) -> int:
    """Order of U_H(G_H) by closure of the generator matrices."""
    if h.order == 1:
        return 1
    G = HeisenbergGroup(h)
    gens = [schrodinger(h, g) for g in G.generators()]
    start = la.identity(h.order)
    seen = {_mono_key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for s in gens:
                p = la.matmul(s, m)
                k = _mono_key(p)
                if k not in seen:
                    seen.add(k)
                    nxt.append(p)
        frontier = nxt
    return len(seen)


def commutant(mats: Sequence[la.Matrix]) -> list[la.Matrix]:
    """Basis of {M : M A = A M for all A in mats}."""
    n = len(mats[0])
    rows = []
    for a in mats:
        nz_cols = [[(k, a[k][j]) for k in range(n) if not a[k][j].is_zero()] for j in range(n)]
        nz_rows = [[(k, a[i][k]) for k in range(n) if not a[i][k].is_zero()] for i in range(n)]
        for i in range(n):
            for j in range(n):
                eq: dict[int, CycNum] = {}
                # (M A)_ij = sum_k M_ik A_kj ; (A M)_ij = sum_k A_ik M_kj
                for k, v in nz_cols[j]:
                    c = i * n + k
                    eq[c] = eq.get(c, ZERO) + v
                for k, v in nz_rows[i]:
                    c = k * n + j
                    eq[c] = eq.get(c, ZERO) - v
                eq = {c: v for c, v in eq.items() if not v.is_zero()}
                if eq:
                    rows.append(eq)
    basis = la.sparse_nullspace(rows, n * n)
    return [tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)) for v in basis]


@dataclass
class CommutantResult:
    is_scalar: bool
    dimension: int
    basis: list


def commutant_is_scalar(h: AbelianH, d: int = 1, rep: Sequence[la.Matrix] | None = None) -> CommutantResult:
    """Schur test: is the commutant of the generator images one-dimensional?

    ``rep`` overrides the generator matrices (default: U_{d,H} of the standard
    generators).
    """
    if rep is None:
        G = HeisenbergGroup(h)
        rep = [schrodinger(h, g, d) for g in G.generators()]
    basis = commutant(rep)
    return CommutantResult(len(basis) == 1, len(basis), basis)


def direct_sum(*mats: la.Matrix) -> la.Matrix:
    n = sum(len(m) for m in mats)
    rows = [[ZERO] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, r in enumerate(m):
            for j, v in enumerate(r):
                rows[off + i][off + j] = v
        off += len(m)
    return la.mat(rows)


def standard_rep(h: AbelianH, d: int = 1) -> list[la.Matrix]:
    return [schrodinger(h, g, d) for g in HeisenbergGroup(h).generators()]


def isotypic_decompose(h: AbelianH, d: int, rep: Sequence[la.Matrix]):
    """Split a weight-d module W as W(0) (x) V_H.

    ``rep`` lists the matrices of the standard generators (center, (1,e_i,0),
    (1,0,e_i)).  Returns (basis of W(0), F) where the columns of F are
    U(1,0,chi) w for w in the W(0) basis (outer) and chi in the dual (inner),
    and F (id (x) U_{d,H}(g)) = rep(g) F holds for every generator.
    """
    g = h.g
    center, sig, tau = rep[0], rep[1:1 + g], rep[1 + g:1 + 2 * g]
    if len(tau) != g:
        raise UserInputError(f"expected {1 + 2 * g} generator matrices")
    n = h.order
    rank = len(center)
    ok, c = la.is_scalar_matrix(center)
    if not ok or c != CycNum.zeta(n, d):
        raise NotWeightD(f"the center does not act by zeta_{n}^{d}")
    eye = la.identity(rank)
    eqs = [r for s in sig for r in la.sub(s, eye)]
    w0 = la.nullspace(eqs, rank) if eqs else [tuple(r) for r in eye]
    if len(w0) * n != rank:
        raise NotFree(f"rank W(0) * N = {len(w0) * n} differs from rank W = {rank}")
    cols = []
    for w in w0:
        for chi in h.elements:
            v = w
            for i, k in enumerate(chi):
                for _ in range(k):
                    v = la.matvec(tau[i], v)
            cols.append(v)
    F = la.transpose(cols)
    if la.rank(F) != rank:
        raise NotFree("the translates of W(0) do not span W")
    model = standard_rep(h, d)
    for r, u in zip(rep, model):
        big = direct_sum(*([u] * len(w0)))
        if not la.mat_eq(la.matmul(F, big), la.matmul(r, F)):
            raise ArithmeticError("intertwining identity failed")
    return w0, F


# linearization of O(1) on P(V_H) -------------------------------------


class ProjectiveCharts:
    """Affine charts {x_j != 0} of P^{n-1} with a linear group action on points.

    ``action(g)`` returns the point matrix P_g (so g.p = P_g p).
    """

    def __init__(self, n: int, action: Callable[[object], la.Matrix], compose: Callable, inverse: Callable):
        self.n = n
        self.action = action
        self.compose = compose
        self.inverse = inverse

    @property
    def charts(self) -> range:
        return range(self.n)

    def coord(self, j: int) -> MPoly:
        return MPoly.var(self.n, j)

    def moved(self, f: MPoly, g) -> MPoly:
        """x -> f(P_g x)."""
        return f.linear_change(self.action(g))

    def transition(self, j: int, k: int) -> RatFunc:
        return RatFunc(self.coord(j), self.coord(k))


def schrodinger_charts(h: AbelianH, d: int = 1) -> ProjectiveCharts:
    G = HeisenbergGroup(h)

    def action(g):
        return la.transpose(la.inverse(schrodinger(h, g, d)))

    return ProjectiveCharts(h.order, action, G.mul, G.inv)


def schrodinger_cocycle(charts: ProjectiveCharts):
    """psi_j(g, x) = x_j(g x) / x_j(x)."""

    def psi(g, j: int) -> RatFunc:
        return RatFunc(charts.moved(charts.coord(j), g), charts.coord(j))

    return psi


def induced_section_action(charts: ProjectiveCharts, g) -> la.Matrix:
    """Matrix of rho(g): f -> f o g^-1 on linear forms, in the basis x_0..x_{n-1}."""
    ginv = charts.inverse(g)
    n = charts.n
    cols = []
    for k in range(n):
        f = charts.moved(charts.coord(k), ginv)
        cols.append(tuple(f.coeff(tuple(int(i == m) for i in range(n))) for m in range(n)))
    return la.transpose(cols)


def linearization_cocycle_check(cocycle, charts: ProjectiveCharts, elements: Sequence | None = None) -> bool:
    """Check the cocycle identity, chart compatibility and the section action.

    Returns False if psi_j(gh, x) = psi_j(g, hx) psi_j(h, x) fails for some pair
    of elements and chart.  Raises ChartMismatch if the identity holds but the
    transition rule psi_j = (A_jk(gx)/A_jk(x)) psi_k fails.
    """
    elems = list(elements) if elements is not None else []
    pairs = [(a, b) for a in elems for b in elems]
    for g, hh in pairs:
        gh = charts.compose(g, hh)
        hmat = charts.action(hh)
        for j in charts.charts:
            lhs = cocycle(gh, j)
            rhs = cocycle(g, j).substitute(_images(hmat)) * cocycle(hh, j)
            if not lhs == rhs:
                return False
    for g in elems:
        gmat = charts.action(g)
        for j in charts.charts:
            for k in charts.charts:
                if j == k:
                    continue
                a = charts.transition(j, k)
                lhs = cocycle(g, j)
                rhs = a.substitute(_images(gmat)) / a * cocycle(g, k)
                if not lhs == rhs:
                    raise ChartMismatch(f"transition rule fails between charts {j} and {k}")
    # section action two ways: globally, and through the local cocycle
    for g, hh in pairs:
        lhs = induced_section_action(charts, charts.compose(g, hh))
        rhs = la.matmul(induced_section_action(charts, g), induced_section_action(charts, hh))
        if not la.mat_eq(lhs, rhs):
            return False
    for g in elems:
        glob = induced_section_action(charts, g)
        ginv = charts.inverse(g)
        for j in charts.charts:
            xj = charts.coord(j)
            for k in range(charts.n):
                fj = RatFunc(charts.coord(k), xj)
                local = fj.substitute(_images(charts.action(ginv))) * cocycle(ginv, j)
                col = [glob[m][k] for m in range(charts.n)]
                global_f = sum((MPoly.var(charts.n, m) * col[m] for m in range(charts.n)), MPoly(charts.n))
                if not local == RatFunc(global_f, xj):
                    return False
    return True


def _images(pmat: la.Matrix) -> list[MPoly]:
    n = len(pmat)
    return [MPoly(n, {tuple(int(k == j) for k in range(n)): pmat[i][j] for j in range(n)}) for i in range(n)]


def default_check_elements(h: AbelianH) -> list[HeisElem]:
    G = HeisenbergGroup(h)
    gens = G.generators()
    return gens + [G.inv(g) for g in gens[1:]]


def trivial_charts(n: int) -> ProjectiveCharts:
    eye = la.identity(n)
    return ProjectiveCharts(n, lambda g: eye, lambda a, b: 0, lambda a: 0)


def trivial_cocycle(n: int):
    one = RatFunc(MPoly.const(n, 1))
    return lambda g, j: one


def perturbed_cocycle(cocycle, target, chart: int, factor: CycNum):
    """psi with psi_chart(target, .) multiplied by factor."""

    def psi(g, j):
        base = cocycle(g, j)
        if j == chart and g == target:
            return base * factor
        return base

    return psi
