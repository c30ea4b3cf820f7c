"""Delaunay cells and decompositions of Z^g for an even positive-definite form.

A Delaunay cell D(lambda) is the set of lattice points minimizing
F_lambda(x) = B(x, x) - 2 B(lambda, x), i.e. the lattice points closest to
lambda in the metric of B.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import kernels
from . import linalg as la
from . import polytope
from .lattice import Form, Sublattice, common_denominator, ellipsoid_box, int_bounds
from .polytope import add, sub

SCHEMA = "degenab/1"
Vec = tuple[int, ...]


@dataclass(frozen=True)
class DelaunayCell:
    vertices: tuple[Vec, ...]
    center: tuple[Fraction, ...]
    dim: int
    minimum: Fraction | None = None

    def translate(self, t: Vec) -> "DelaunayCell":
        return DelaunayCell(
            tuple(sorted(add(v, t) for v in self.vertices)),
            tuple(c + s for c, s in zip(self.center, t)),
            self.dim,
            None,
        )

    def contains(self, other: "DelaunayCell | Iterable[Vec]") -> bool:
        verts = other.vertices if isinstance(other, DelaunayCell) else other
        return set(verts) <= set(self.vertices)

    def to_json(self):
        return {
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "center": [str(c) for c in self.center],
        }

    @classmethod
    def from_json(cls, obj) -> "DelaunayCell":
        return cls(
            tuple(tuple(v) for v in obj["vertices"]),
            tuple(Fraction(c) for c in obj["center"]),
            obj["dim"],
        )


def _as_form(B) -> Form:
    return B if isinstance(B, Form) else Form(B)


def closest_points(form: Form, lam: Sequence[Fraction]) -> tuple[Fraction, list[Vec]]:
    """All x in Z^g minimizing (x - lam)^T G (x - lam), by Fincke-Pohst enumeration.

    Returns the minimal value and the sorted list of minimizers.
    """
    g = form.g
    L, d = form.ldl
    lam = [Fraction(v) for v in lam]

    def partial_center(k, x):
        # term k is d_k (x_k - lam_k + sum_{i>k} L[i][k] (x_i - lam_i))^2
        t = sum(L[i][k] * (x[i] - lam[i]) for i in range(k + 1, g))
        return lam[k] - t

    # Babai-style rounding for an initial bound
    x0 = [0] * g
    for k in range(g - 1, -1, -1):
        c = partial_center(k, x0)
        x0[k] = round(c)
    bound = _qdist(form, x0, lam)
    best = bound
    found: list[Vec] = []
    x = [0] * g

    def rec(k, partial):
        nonlocal best, found
        c = partial_center(k, x)
        rem = best - partial
        lo, hi = int_bounds(c, rem / d[k])
        # visit in order of distance from the center to tighten the bound early
        order = sorted(range(lo, hi + 1), key=lambda v: abs(v - c))
        for v in order:
            val = partial + d[k] * (v - c) ** 2
            if val > best:
                continue
            x[k] = v
            if k == 0:
                if val < best:
                    best = val
                    found = [tuple(x)]
                else:
                    found.append(tuple(x))
            else:
                rec(k - 1, val)
        x[k] = 0

    rec(g - 1, Fraction(0))
    return best, sorted(set(found))


def _qdist(form: Form, x, lam) -> Fraction:
    y = [Fraction(a) - b for a, b in zip(x, lam)]
    return sum(y[i] * form.gram[i][j] * y[j] for i in range(form.g) for j in range(form.g))


def certify_minimizers(form: Form, lam, qmin: Fraction, points: Sequence[Vec]) -> None:
    """Exhaust the box around the ellipsoid (x - lam)^T G (x - lam) <= qmin."""
    D = common_denominator(lam)
    p = [int(Fraction(v) * D) for v in lam]
    box = ellipsoid_box(form, lam, qmin)
    best, pts = kernels.box_argmin([list(r) for r in form.gram], p, D, [a for a, _ in box], [b for _, b in box])
    if best != qmin * D * D or sorted(map(tuple, pts)) != sorted(points):
        raise ArithmeticError(f"minimizer certification failed at {lam}")


def delaunay_cell(B, lam, certify: bool = True) -> DelaunayCell:
    """D(lambda): all lattice minimizers of F_lambda, with its affine dimension."""
    form = _as_form(B)
    lam = tuple(Fraction(v) for v in lam)
    if len(lam) != form.g:
        raise ValueError(f"lambda has length {len(lam)}, form has rank {form.g}")
    qmin, pts = closest_points(form, lam)
    if certify:
        certify_minimizers(form, lam, qmin, pts)
    fmin = qmin - _qdist(form, [0] * form.g, lam)
    return DelaunayCell(tuple(pts), lam, polytope.affine_dim(pts), fmin)


# canonical forms -------------------------------------------------------


def canonical_position(vertices: Iterable[Vec], Y: Sublattice) -> tuple[tuple[Vec, ...], Vec]:
    """Lexicographically least translate by Y with a vertex in the fundamental domain.

    Returns (canonical vertex tuple, t) with canonical = vertices - t.
    """
    verts = list(vertices)
    best = None
    for v in verts:
        t = sub(v, Y.reduce(v))
        cand = tuple(sorted(sub(x, t) for x in verts))
        if best is None or cand < best[0]:
            best = (cand, t)
    return best


def relevant_vectors(form: Form) -> list[Vec]:
    """Voronoi-relevant vectors: unique (up to sign) shortest vectors of the classes of Z^g / 2Z^g."""
    g = form.g
    out = []
    for c in itertools.product((0, 1), repeat=g):
        if not any(c):
            continue
        lam = tuple(Fraction(-ci, 2) for ci in c)
        _, ks = closest_points(form, lam)
        if len(ks) == 2:
            out.extend(tuple(ci + 2 * ki for ci, ki in zip(c, k)) for k in ks)
    return sorted(out)


def voronoi_vertices(form: Form) -> list[tuple[Fraction, ...]]:
    """Vertices of the Voronoi cell of 0: {lam : 2 B(lam, v) <= B(v, v)}."""
    rel = relevant_vectors(form)
    g = form.g
    normals = [tuple(Fraction(2 * x) for x in form.Gx(v)) for v in rel]
    rhs = [Fraction(form.Q(v)) for v in rel]
    verts = set()
    for combo in itertools.combinations(range(len(rel)), g):
        a = [normals[i] for i in combo]
        if la.rank(a) < g:
            continue
        lam = la.solve(a, [rhs[i] for i in combo])
        if all(sum(n * l for n, l in zip(normals[i], lam)) <= rhs[i] for i in range(len(rel))):
            verts.add(tuple(lam))
    return sorted(verts)


# assembling a complex from its maximal cells ---------------------------


@dataclass
class DelaunayComplex:
    form: Form
    quotient: Sublattice
    cells: list[DelaunayCell]
    faces: list[tuple[int, int]]
    witnesses: list[tuple[Vec, ...]]

    def counts(self) -> tuple[int, ...]:
        c = [0] * (self.form.g + 1)
        for cell in self.cells:
            c[cell.dim] += 1
        return tuple(c)

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts()))

    def maximal(self) -> list[DelaunayCell]:
        return [c for c in self.cells if c.dim == self.form.g]

    def index_of(self, vertices: Iterable[Vec]) -> int:
        key, _ = canonical_position(vertices, self.quotient)
        for i, c in enumerate(self.cells):
            if c.vertices == key:
                return i
        raise KeyError("cell not in complex")

    def poset(self):
        """Hashable description of cells and face incidences (centers excluded)."""
        return (
            tuple((c.dim, c.vertices) for c in self.cells),
            tuple((i, j, w) for (i, j), w in zip(self.faces, self.witnesses)),
        )

    def cofaces(self, i: int) -> list[tuple[int, Vec]]:
        """(j, t) with cells[i] + t a facet of cells[j]."""
        return [(j, t) for (a, j), ws in zip(self.faces, self.witnesses) if a == i for t in ws]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "delaunay_complex",
            "rank": self.form.g,
            "gram": self.form.to_json(),
            "quotient": self.quotient.to_json(),
            "counts": list(self.counts()),
            "euler": self.euler(),
            "cells": [c.to_json() for c in self.cells],
            "faces": [[i, j] for i, j in self.faces],
            "face_witnesses": [[list(t) for t in w] for w in self.witnesses],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, obj) -> "DelaunayComplex":
        return cls(
            Form(obj["gram"]),
            Sublattice(obj["quotient"]),
            [DelaunayCell.from_json(c) for c in obj["cells"]],
            [tuple(f) for f in obj["faces"]],
            [tuple(tuple(t) for t in w) for w in obj["face_witnesses"]],
        )

    def __eq__(self, other):
        if not isinstance(other, DelaunayComplex):
            return NotImplemented
        return (
            self.form == other.form
            and self.quotient == other.quotient
            and self.cells == other.cells
            and self.faces == other.faces
            and self.witnesses == other.witnesses
        )


def _average(vecs):
    vecs = list(vecs)
    return tuple(sum(v[i] for v in vecs) / len(vecs) for i in range(len(vecs[0])))


def assemble(
    form: Form,
    maximal: Sequence[DelaunayCell],
    Y: Sublattice,
    verify: Callable[[tuple[Fraction, ...]], tuple[Vec, ...]],
) -> DelaunayComplex:
    """Close maximal cells (mod X) under faces, attach centers, then pass to classes mod Y.

    ``verify(lam)`` must return the vertex set of D(lam); it certifies each
    computed center.
    """
    g = form.g
    X = Sublattice.full(g)
    max_reps: dict[tuple[Vec, ...], DelaunayCell] = {}
    for cell in maximal:
        key, t = canonical_position(cell.vertices, X)
        max_reps.setdefault(key, cell.translate(tuple(-x for x in t)))
    classes: dict[tuple[Vec, ...], int] = {}
    for cell in max_reps.values():
        for f in polytope.all_faces(cell.vertices):
            key, _ = canonical_position(f, X)
            classes[key] = polytope.affine_dim(key)
    cells_x: dict[tuple[Vec, ...], DelaunayCell] = {}
    for key, dim in classes.items():
        if dim == g:
            cells_x[key] = max_reps[key]
            continue
        centers = {}
        kset = set(key)
        for top in max_reps.values():
            for u in key[:1]:
                for v in top.vertices:
                    t = sub(u, v)
                    if kset <= {add(x, t) for x in top.vertices}:
                        centers[(top.vertices, t)] = tuple(c + s for c, s in zip(top.center, t))
        lam = _average(centers.values())
        got = verify(lam)
        if tuple(sorted(got)) != key:
            raise ArithmeticError(f"center {lam} does not certify cell {key}")
        cells_x[key] = DelaunayCell(key, lam, dim)
    # classes mod Y
    cells_y: dict[tuple[Vec, ...], DelaunayCell] = {}
    for cell in cells_x.values():
        for r in Y.coset_reps:
            moved = cell.translate(r)
            key, t = canonical_position(moved.vertices, Y)
            if key not in cells_y:
                cells_y[key] = moved.translate(tuple(-x for x in t))
    cells = sorted(cells_y.values(), key=lambda c: (c.dim, c.vertices))
    faces = []
    witnesses = []
    by_dim: dict[int, list[int]] = {}
    for i, c in enumerate(cells):
        by_dim.setdefault(c.dim, []).append(i)
    for i, lo in enumerate(cells):
        for j in by_dim.get(lo.dim + 1, []):
            hi = cells[j]
            hset = set(hi.vertices)
            ws = set()
            for u in hi.vertices:
                t = sub(u, lo.vertices[0])
                if Y.contains(t) and all(add(x, t) in hset for x in lo.vertices):
                    ws.add(t)
            if ws:
                faces.append((i, j))
                witnesses.append(tuple(sorted(ws)))
    return DelaunayComplex(form, Y, cells, faces, witnesses)


def _resolve_quotient(form: Form, Y) -> Sublattice:
    if Y is None or (isinstance(Y, str) and Y.upper() == "X"):
        return Sublattice.full(form.g)
    if isinstance(Y, Sublattice):
        if Y.g != form.g:
            raise ValueError("sublattice rank differs from form rank")
        return Y
    return Sublattice(Y)


def delaunay_complex(B, Y="X") -> DelaunayComplex:
    """All Delaunay cells up to translation by Y, with the face poset.

    Maximal cells are found as D(v) for the vertices v of the Voronoi cell of 0.
    """
    form = _as_form(B)
    Yl = _resolve_quotient(form, Y)
    maximal = []
    for v in voronoi_vertices(form):
        cell = delaunay_cell(form, v)
        if cell.dim != form.g:
            raise ArithmeticError(f"Voronoi vertex {v} gives a lower-dimensional cell")
        maximal.append(cell)

    def verify(lam):
        return delaunay_cell(form, lam).vertices

    return assemble(form, maximal, Yl, verify)


def unimodular_image(cx: DelaunayComplex, u) -> set:
    """Canonical vertex sets (mod X) of U(cell) for every cell."""
    X = Sublattice.full(cx.form.g)
    out = set()
    for c in cx.cells:
        img = [tuple(sum(u[i][j] * v[j] for j in range(len(v))) for i in range(len(v))) for v in c.vertices]
        out.add(canonical_position(img, X)[0])
    return out


# drawing --------------------------------------------------------------


def _embed(form: Form, x) -> tuple[float, float]:
    # Euclidean coordinates with y^T y = x^T G x, via LDL
    L, d = form.ldl
    g = form.g
    return tuple(float(d[k]) ** 0.5 * sum(float(L[i][k]) * x[i] for i in range(g)) for k in range(g))


def to_svg(cx: DelaunayComplex, window: int = 2, scale: float = 60.0) -> str:
    """Plain SVG 1.1 drawing of the maximal cells near the origin (rank 2 only)."""
    form = cx.form
    if form.g != 2:
        raise ValueError("SVG output is only available for rank 2")
    polys = []
    seen = set()
    for cell in cx.cells:
        if cell.dim != 2:
            continue
        for t in itertools.product(range(-window, window + 1), repeat=2):
            verts = [add(v, t) for v in cell.vertices]
            key = tuple(sorted(verts))
            if key in seen:
                continue
            seen.add(key)
            pts = [_embed(form, v) for v in verts]
            cx0 = sum(p[0] for p in pts) / len(pts)
            cy0 = sum(p[1] for p in pts) / len(pts)
            pts.sort(key=lambda p: math.atan2(p[1] - cy0, p[0] - cx0))
            polys.append(pts)
    xs = [p[0] for poly in polys for p in poly]
    ys = [p[1] for poly in polys for p in poly]
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    w = (maxx - minx) * scale + 20
    h = (maxy - miny) * scale + 20
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1f}" height="{h:.1f}">',
        f"<title>Delaunay decomposition for gram {form}</title>",
    ]
    for poly in polys:
        pts = " ".join(f"{(p[0] - minx) * scale + 10:.2f},{(maxy - p[1]) * scale + 10:.2f}" for p in poly)
        lines.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1"/>')
    for t in itertools.product(range(-window, window + 2), repeat=2):
        x, y = _embed(form, t)
        if minx - 1e-9 <= x <= maxx + 1e-9 and miny - 1e-9 <= y <= maxy + 1e-9:
            lines.append(f'<circle cx="{(x - minx) * scale + 10:.2f}" cy="{(maxy - y) * scale + 10:.2f}" r="2.5" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
