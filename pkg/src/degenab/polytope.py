"""Face lattices of small lattice polytopes, exactly."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg as la

Vec = tuple[int, ...]


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def affine_basis(points: Sequence[Vec]) -> tuple[Vec, list[Vec]]:
    """Base point and a basis (chosen among difference vectors) of the affine hull."""
    pts = sorted(points)
    base = pts[0]
    basis: list[Vec] = []
    for p in pts[1:]:
        d = sub(p, base)
        if la.rank([list(map(Fraction, v)) for v in basis + [d]]) > len(basis):
            basis.append(d)
    return base, basis


def affine_dim(points: Iterable[Vec]) -> int:
    pts = list(points)
    if not pts:
        return -1
    return len(affine_basis(pts)[1])


def affine_coords(points: Sequence[Vec]) -> tuple[dict[Vec, tuple[Fraction, ...]], int]:
    """Coordinates of each point in the affine hull with respect to affine_basis."""
    base, basis = affine_basis(points)
    k = len(basis)
    out = {}
    if k == 0:
        return {p: () for p in points}, 0
    cols = la.transpose([list(map(Fraction, v)) for v in basis])
    for p in points:
        sol = la.solve(cols, [Fraction(x) for x in sub(p, base)])
        if sol is None:
            raise ArithmeticError("point outside its own affine hull")
        out[p] = tuple(sol)
    return out, k


def _hyperplane(pts: Sequence[tuple[Fraction, ...]], k: int):
    """Normal n and offset c with n.x = c through k affinely independent points in Q^k."""
    base = pts[0]
    rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    ns = la.nullspace(rows, k, Fraction(0), Fraction(1)) if rows else [tuple(Fraction(int(i == 0)) for i in range(k))]
    if len(ns) != 1:
        return None
    n = ns[0]
    return n, sum(a * b for a, b in zip(n, base))


def facets(points: Iterable[Vec]) -> list[frozenset]:
    """Facets (as vertex-point subsets) of the convex hull of the given lattice points."""
    pts = sorted(set(points))
    coords, k = affine_coords(pts)
    if k == 0:
        return []
    if k == 1:
        vals = sorted(pts, key=lambda p: coords[p][0])
        return [frozenset([vals[0]]), frozenset([vals[-1]])]
    found = set()
    cpts = [coords[p] for p in pts]
    for combo in itertools.combinations(range(len(pts)), k):
        sel = [cpts[i] for i in combo]
        if la.rank([[a - b for a, b in zip(p, sel[0])] for p in sel[1:]]) != k - 1:
            continue
        hp = _hyperplane(sel, k)
        if hp is None:
            continue
        n, c = hp
        vals = [sum(a * b for a, b in zip(n, q)) - c for q in cpts]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            found.add(frozenset(p for p, v in zip(pts, vals) if v == 0))
    return sorted(found, key=lambda f: sorted(f))


def vertices(points: Iterable[Vec]) -> list[Vec]:
    """Extreme points of the hull."""
    return sorted(p for f in all_faces(points) if len(f) == 1 for p in f)


def all_faces(points: Iterable[Vec]) -> set[frozenset]:
    """Every nonempty face, including the polytope itself."""
    top = frozenset(points)
    out = {top}
    stack = [top]
    while stack:
        cur = stack.pop()
        for f in facets(cur):
            if f not in out:
                out.add(f)
                stack.append(f)
    return out


def outward_normal(cell: Iterable[Vec], facet: Iterable[Vec]) -> Vec:
    """Primitive integer normal n of a facet of a full-dimensional cell, n.(s - r) < 0 inside."""
    cell = sorted(set(cell))
    facet = sorted(set(facet))
    g = len(cell[0])
    r0 = facet[0]
    rows = [list(map(Fraction, sub(r, r0))) for r in facet[1:]]
    ns = la.nullspace(rows, g, Fraction(0), Fraction(1))
    if len(ns) != 1:
        raise ValueError("not a facet of a full-dimensional cell")
    n = ns[0]
    den = 1
    for x in n:
        den = den * x.denominator // gcd(den, x.denominator)
    ni = [int(x * den) for x in n]
    gg = 0
    for x in ni:
        gg = gcd(gg, x)
    ni = [x // gg for x in ni]
    inside = [s for s in cell if s not in set(facet)]
    side = sum(a * b for a, b in zip(ni, sub(inside[0], r0)))
    if side > 0:
        ni = [-x for x in ni]
    return tuple(ni)
