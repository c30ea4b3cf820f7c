"""Independent Delaunay oracle: lower faces of the lifted point set by gift wrapping.

Lattice points x of a box are lifted to (x, B(x, x)).  A lower facet of the
lifted hull is the graph of an affine function touching the lift exactly on a
maximal Delaunay cell; its slope encodes the circumcenter.  Starting from the
vertex {0} the walk pivots across facets by moving the circumcenter along the
B-orthogonal direction of each facet until a new lattice point ties.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from . import kernels
from . import polytope
from .delaunay import DelaunayCell, DelaunayComplex, _as_form, assemble, canonical_position
from .errors import BoxTooSmall, UserInputError
from .lattice import Form, Sublattice, common_denominator, ellipsoid_box

Vec = tuple[int, ...]


class _Walker:
    def __init__(self, form: Form, radius: int):
        self.form = form
        self.g = form.g
        self.radius = radius
        self.gram = [list(r) for r in form.gram]

    def window(self, center):
        """The search box: radius ``self.radius`` around the rounded center."""
        mid = [round(c) for c in center]
        return [m - self.radius for m in mid], [m + self.radius for m in mid]

    def _check_box(self, center, r0, window=None):
        lo_w, hi_w = window or self.window(center)
        y = [Fraction(a) - c for a, c in zip(r0, center)]
        q = sum(y[i] * self.form.gram[i][j] * y[j] for i in range(self.g) for j in range(self.g))
        for (lo, hi), a, b in zip(ellipsoid_box(self.form, center, q), lo_w, hi_w):
            if lo <= a or hi >= b:
                raise BoxTooSmall(f"cell around {tuple(map(str, center))} reaches the box boundary (radius {self.radius})")

    def shoot(self, center, r0, normal):
        """Move center along G^-1 normal until a new point ties with the current minimizers."""
        D = common_denominator(center)
        p = [int(c * D) for c in center]
        lo, hi = self.window(center)
        res = kernels.ray_shoot(self.gram, p, D, list(r0), list(normal), lo, hi)
        if res is None:
            raise BoxTooSmall("no lattice point ahead of the ray inside the box")
        num, den, pts = res
        t = Fraction(num, den)
        inv = self.form.inverse
        delta = [sum(inv[i][j] * normal[j] for j in range(self.g)) for i in range(self.g)]
        new_center = tuple(c + t * dl for c, dl in zip(center, delta))
        # the tie must be certified inside the same window
        self._check_box(new_center, r0, (lo, hi))
        return new_center, [tuple(x) for x in pts]

    def brute(self, center) -> tuple[Vec, ...]:
        """Minimizers of the distance to center over the whole box."""
        D = common_denominator(center)
        p = [int(Fraction(c) * D) for c in center]
        lo, hi = self.window(center)
        _, pts = kernels.box_argmin(self.gram, p, D, lo, hi)
        pts = tuple(sorted(tuple(x) for x in pts))
        self._check_box(center, pts[0])
        return pts

    def raise_to_full(self, verts: list[Vec], center):
        while polytope.affine_dim(verts) < self.g:
            base, basis = polytope.affine_basis(verts)
            normal = _orthogonal_integer(basis, self.g)
            center, new = self.shoot(center, base, normal)
            verts = sorted(set(verts) | set(new))
        return verts, center


def _orthogonal_integer(basis, g) -> Vec:
    from . import linalg as la

    rows = [[Fraction(x) for x in v] for v in basis]
    ns = la.nullspace(rows, g, Fraction(0), Fraction(1)) if rows else [tuple(Fraction(int(i == 0)) for i in range(g))]
    n = ns[0]
    den = common_denominator(n)
    return tuple(int(x * den) for x in n)


def delaunay_oracle(B, box_radius: int = 3, Y="X") -> DelaunayComplex:
    """Delaunay complex by exact gift wrapping of the lifted box points."""
    form = _as_form(B)
    if form.g > 3:
        raise UserInputError("the oracle handles rank at most 3")
    if box_radius < 2:
        raise UserInputError("box radius must be at least 2")
    w = _Walker(form, box_radius)
    X = Sublattice.full(form.g)
    origin = (0,) * form.g
    zero = tuple(Fraction(0) for _ in range(form.g))
    if w.brute(zero) != (origin,):
        raise ArithmeticError("D(0) is not {0}")
    verts, center = w.raise_to_full([origin], zero)
    found: dict[tuple[Vec, ...], DelaunayCell] = {}
    queue: deque[DelaunayCell] = deque()

    def register(vs, c):
        key, t = canonical_position(vs, X)
        if key in found:
            return
        cell = DelaunayCell(key, tuple(ci - ti for ci, ti in zip(c, t)), form.g)
        if w.brute(cell.center) != key:
            raise ArithmeticError(f"oracle cell {key} is not D(center)")
        found[key] = cell
        queue.append(cell)

    register(verts, center)
    while queue:
        cell = queue.popleft()
        for facet in polytope.facets(cell.vertices):
            normal = polytope.outward_normal(cell.vertices, facet)
            r0 = min(facet)
            c2, new = w.shoot(cell.center, r0, normal)
            nv = sorted(set(facet) | set(new))
            if polytope.affine_dim(nv) != form.g:
                raise ArithmeticError("pivot produced a degenerate cell")
            register(nv, c2)
    Yl = Sublattice.full(form.g) if isinstance(Y, str) else (Y if isinstance(Y, Sublattice) else Sublattice(Y))
    return assemble(form, list(found.values()), Yl, w.brute)


def delaunay_oracle_escalating(B, start: int = 3, limit: int = 12, Y="X") -> tuple[DelaunayComplex, int]:
    """Run the oracle with growing box radius until no boundary effect remains.

    Returns the complex and the radius that sufficed.
    """
    r = start
    while True:
        try:
            return delaunay_oracle(B, r, Y), r
        except BoxTooSmall:
            if r >= limit:
                raise
            r += 1
