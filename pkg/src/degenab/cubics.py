"""Plane cubics: singularity class, GIT verdict and stabilizer dimension.

Classes are separated by projective invariants computed by exact linear
algebra over the coefficient field, so no field extension is ever needed:

* tau, the length of the singular scheme, read off the Hilbert function of the
  Jacobian ideal (it grows without bound when the curve is non-reduced);
* the dimension of the Lie algebra of the stabilizer in PGL(3);
* whether the Hessian cubic is reduced, which splits the cusp from a conic
  meeting a line twice (tau = 2) and the triangle from a conic with a
  tangent line (tau = 3);
* the rank of the span of the second partials (3 unless F is a cone).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import linalg as la
from .cyclotomic import CycNum, cyc
from .errors import UserInputError
from .polynomial import MPoly, hessian, ideal_hilbert_function, monomials, parse_poly

SCHEMA = "degenab/1"


class CubicClass(str, Enum):
    SMOOTH_ELLIPTIC = "SmoothElliptic"
    TRIANGLE = "Triangle"
    LINE_CONIC_TRANSVERSE = "LineConicTransverse"
    IRREDUCIBLE_NODE = "IrreducibleNode"
    THREE_LINES_CONCURRENT = "ThreeLinesConcurrent"
    LINE_CONIC_TANGENT = "LineConicTangent"
    IRREDUCIBLE_CUSP = "IrreducibleCusp"
    DOUBLE_LINE_PLUS_LINE = "DoubleLinePlusLine"
    TRIPLE_LINE = "TripleLine"


class Stability(str, Enum):
    GIT_STABLE = "GITStable"
    SEMISTABLE = "SemistableNotGITStable"
    NOT_SEMISTABLE = "NotSemistable"


# (stability, stabilizer) as tabulated; the last two rows are extensions
TABLE: dict[CubicClass, tuple[Stability, str | int]] = {
    CubicClass.SMOOTH_ELLIPTIC: (Stability.GIT_STABLE, "finite"),
    CubicClass.TRIANGLE: (Stability.GIT_STABLE, 2),
    CubicClass.LINE_CONIC_TRANSVERSE: (Stability.SEMISTABLE, 1),
    CubicClass.IRREDUCIBLE_NODE: (Stability.SEMISTABLE, "Z/2Z"),
    CubicClass.THREE_LINES_CONCURRENT: (Stability.NOT_SEMISTABLE, 1),
    CubicClass.LINE_CONIC_TANGENT: (Stability.NOT_SEMISTABLE, 1),
    CubicClass.IRREDUCIBLE_CUSP: (Stability.NOT_SEMISTABLE, 1),
}
EXTENSION_ROWS = (CubicClass.DOUBLE_LINE_PLUS_LINE, CubicClass.TRIPLE_LINE)

REPRESENTATIVES: dict[CubicClass, str] = {
    CubicClass.SMOOTH_ELLIPTIC: "x0^3+x1^3+x2^3",
    CubicClass.TRIANGLE: "x0*x1*x2",
    CubicClass.IRREDUCIBLE_NODE: "x2*x1^2 - x0^2*(x0+x2)",
    CubicClass.IRREDUCIBLE_CUSP: "x2*x1^2 - x0^3",
    CubicClass.LINE_CONIC_TRANSVERSE: "x0*(x1*x2 - x0^2)",
    CubicClass.LINE_CONIC_TANGENT: "x2*(x1*x2 - x0^2)",
    CubicClass.THREE_LINES_CONCURRENT: "x0*x1*(x0+x1)",
    CubicClass.DOUBLE_LINE_PLUS_LINE: "x0^2*x1",
    CubicClass.TRIPLE_LINE: "x0^3",
}


def as_cubic(f) -> MPoly:
    """Accept an MPoly, a polynomial literal, or 10 coefficients in monomial order."""
    if isinstance(f, str):
        f = parse_poly(f)
    elif not isinstance(f, MPoly):
        coeffs = list(f)
        mons = monomials(3, 3)
        if len(coeffs) != len(mons):
            raise UserInputError(f"a ternary cubic has {len(mons)} coefficients, got {len(coeffs)}")
        f = MPoly(3, dict(zip(mons, coeffs)))
    if f.nvars != 3:
        raise UserInputError("cubic must be in x0, x1, x2")
    if not f:
        raise UserInputError("the zero polynomial is not a curve")
    if not f.is_homogeneous() or f.degree() != 3:
        raise UserInputError("input is not a homogeneous cubic")
    return f


def jacobian_hilbert(f: MPoly, upto: int = 6) -> list[int]:
    jac = [f.diff(i) for i in range(3)]
    return [ideal_hilbert_function(jac, k) for k in range(upto + 1)]


def lie_stabilizer_dim(f: MPoly) -> int:
    """dim of {X in gl(3) : X.F in k F} minus the scalars."""
    mons = monomials(3, 3)
    cols = []
    for i, j in itertools.product(range(3), repeat=2):
        # derivation x_i -> x_j applied to F
        img = f.diff(i) * MPoly.var(3, j)
        cols.append(img)
    cols.append(-f)
    rows = [[c.coeff(e) for c in cols] for e in mons]
    ns = la.nullspace(rows, len(cols))
    return len(ns) - 1


def polar_rank(f: MPoly) -> int:
    """Number of independent linear forms among the second partials."""
    forms = [f.diff(i).diff(j) for i in range(3) for j in range(i, 3)]
    lin = monomials(3, 1)
    return la.rank([[p.coeff(e) for e in lin] for p in forms])


def is_reduced_cubic(h: MPoly) -> bool:
    """A nonzero cubic has no repeated component iff its singular scheme is finite."""
    hf = jacobian_hilbert(h, 5)
    return hf[4] == hf[5]


@dataclass
class CubicVerdict:
    cls: CubicClass
    stability: Stability
    stabilizer: str | int
    certificates: dict = field(default_factory=dict)
    extension: bool = False

    def row(self) -> tuple[str, str, str | int]:
        return (self.cls.value, self.stability.value, self.stabilizer)

    def to_json(self):
        out = {
            "schema": SCHEMA,
            "kind": "cubic_verdict",
            "class": self.cls.value,
            "stability": self.stability.value,
            "stabilizer_dim": self.stabilizer,
            "certificates": self.certificates,
        }
        if self.extension:
            out["note"] = "extension beyond the tabulated classes"
        return out

    @classmethod
    def from_json(cls, obj) -> "CubicVerdict":
        return cls(CubicClass(obj["class"]), Stability(obj["stability"]), obj["stabilizer_dim"],
                   dict(obj["certificates"]), "note" in obj)


def classify(f) -> CubicVerdict:
    f = as_cubic(f)
    hf = jacobian_hilbert(f, 5)
    lie = lie_stabilizer_dim(f)
    prank = polar_rank(f)
    cert: dict = {"jacobian_hilbert_function": hf, "lie_stabilizer_dim": lie, "polar_rank": prank}
    isolated = hf[4] == hf[5]
    if not isolated:
        cls = CubicClass.TRIPLE_LINE if prank == 1 else CubicClass.DOUBLE_LINE_PLUS_LINE
        cert["tjurina"] = None
        return CubicVerdict(cls, Stability.NOT_SEMISTABLE, lie, cert, extension=True)
    tau = hf[5]
    cert["tjurina"] = tau
    if tau == 0:
        cls = CubicClass.SMOOTH_ELLIPTIC
    elif tau == 1:
        cls = CubicClass.IRREDUCIBLE_NODE
    elif tau in (2, 3):
        h = hessian(f)
        reduced = bool(h) and is_reduced_cubic(h)
        cert["hessian_reduced"] = reduced
        if tau == 2:
            cls = CubicClass.LINE_CONIC_TRANSVERSE if reduced else CubicClass.IRREDUCIBLE_CUSP
        else:
            cls = CubicClass.TRIANGLE if reduced else CubicClass.LINE_CONIC_TANGENT
    elif tau == 4 and prank == 2:
        cls = CubicClass.THREE_LINES_CONCURRENT
    else:
        raise ArithmeticError(f"no reduced plane cubic has this invariant set {cert}")
    stab, group = TABLE[cls]
    return CubicVerdict(cls, stab, group, cert)


# Hilbert-Mumford ------------------------------------------------------


def default_weights(r: int = 3) -> list[tuple[int, int, int]]:
    """Nonzero integer weight vectors with entries in [-r, r] summing to zero."""
    out = []
    for a, b in itertools.product(range(-r, r + 1), repeat=2):
        c = -a - b
        if abs(c) <= r and (a, b, c) != (0, 0, 0):
            out.append((a, b, c))
    return out


def default_frames() -> list[tuple[tuple[int, ...], ...]]:
    """The six coordinate permutations."""
    frames = []
    for p in itertools.permutations(range(3)):
        frames.append(tuple(tuple(int(p[i] == j) for j in range(3)) for i in range(3)))
    return frames


@dataclass
class HMReport:
    destabilizing: list[tuple[tuple[int, ...], int]]   # (weight, frame index)
    checked: int

    @property
    def destabilized(self) -> bool:
        return bool(self.destabilizing)

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "hilbert_mumford",
            "checked": self.checked,
            "destabilized": self.destabilized,
            "destabilizing_1ps": [{"weight": list(w), "frame": k} for w, k in self.destabilizing],
        }


def hilbert_mumford_check(f, weights: Sequence[Sequence[int]] | None = None, frames=None) -> HMReport:
    """One-sided test: a 1-PS destabilizes F when every monomial of F has negative weight."""
    f = as_cubic(f)
    weights = [tuple(w) for w in (weights if weights is not None else default_weights())]
    for w in weights:
        if sum(w) != 0:
            raise UserInputError(f"weight vector {w} does not sum to zero")
    frames = frames if frames is not None else default_frames()
    hits = []
    for k, a in enumerate(frames):
        g = f.linear_change(a)
        for w in weights:
            if max(sum(wi * ei for wi, ei in zip(w, e)) for e in g.terms) < 0:
                hits.append((w, k))
    return HMReport(hits, len(frames) * len(weights))


# random coordinate changes --------------------------------------------


def random_pgl3(rng: random.Random, conductor: int = 3, size: int = 2) -> list[list[CycNum]]:
    """An invertible 3x3 matrix with small entries in Q(zeta_conductor)."""
    z = CycNum.zeta(conductor)
    while True:
        a = [[cyc(rng.randint(-size, size)) + cyc(rng.randint(-1, 1)) * z for _ in range(3)] for _ in range(3)]
        if not la.det(a).is_zero():
            return a


# Hesse pencil ---------------------------------------------------------


def hesse_cubic(mu0, mu1) -> MPoly:
    """mu0 (x0^3 + x1^3 + x2^3) - 3 mu1 x0 x1 x2."""
    x = [MPoly.var(3, i) for i in range(3)]
    return (x[0] ** 3 + x[1] ** 3 + x[2] ** 3) * cyc(mu0) - x[0] * x[1] * x[2] * (cyc(mu1) * 3)


def hesse_pencil_scan(samples: Sequence | None = None) -> list[dict]:
    """Classify C(mu) on a grid of parameters together with the four singular members."""
    z = CycNum.zeta(3)
    singular = [("inf", (cyc(0), cyc(1))), ("1", (cyc(1), cyc(1))), ("z3", (cyc(1), z)), ("z3^2", (cyc(1), z * z))]
    if samples is None:
        samples = [0, 2, -1, 3, "1/2", "-2/3", 5, "7/3"]
        samples = [cyc(s) if not isinstance(s, str) else CycNum.from_rational(_frac(s)) for s in samples]
        samples += [z + 1, z - 1, 2 * z, -z, z * z + 2]
    rows = []
    for label, (m0, m1) in singular + [(str(s), (cyc(1), cyc(s))) for s in samples]:
        v = classify(hesse_cubic(m0, m1))
        rows.append({"mu": label, "singular_value": label in {"inf", "1", "z3", "z3^2"},
                     "class": v.cls.value, "stability": v.stability.value})
    return rows


def _frac(s: str):
    from fractions import Fraction

    return Fraction(s)
