"""The Hesse pencil mu0 (x0^3 + x1^3 + x2^3) - 3 mu1 x0 x1 x2 over Q(zeta_3).

Points are projective triples of CycNum.  A linear map g of the coordinate
functions (x_k -> sum_j M[j][k] x_j) moves points by p -> M^T p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .cubics import classify, hesse_cubic, jacobian_hilbert
from .cyclotomic import ONE, ZERO, CycNum, cyc
from .errors import UserInputError
from .heisenberg import AbelianH, commutator_pairing
from .polynomial import MPoly

SCHEMA = "degenab/1"
Z3 = CycNum.zeta(3)
Label = tuple[int, int]


def normalize(p: Sequence) -> tuple[CycNum, ...]:
    """Scale so that the first nonzero coordinate is 1."""
    p = [cyc(v) for v in p]
    for v in p:
        if not v.is_zero():
            inv = v.inverse()
            return tuple(x * inv for x in p)
    raise UserInputError("the zero vector is not a projective point")


def same_point(p, q) -> bool:
    return normalize(p) == normalize(q)


def point_str(p) -> str:
    return "[" + ",".join(str(v) for v in normalize(p)) + "]"


@dataclass(frozen=True)
class HessePoint:
    """Parameter [mu0 : mu1] of the pencil."""

    mu0: CycNum
    mu1: CycNum

    def __post_init__(self):
        object.__setattr__(self, "mu0", cyc(self.mu0))
        object.__setattr__(self, "mu1", cyc(self.mu1))
        if self.mu0.is_zero() and self.mu1.is_zero():
            raise UserInputError("[0:0] is not a point of P^1")

    @classmethod
    def affine(cls, mu) -> "HessePoint":
        return cls(ONE, cyc(mu))

    @classmethod
    def infinity(cls) -> "HessePoint":
        return cls(ZERO, ONE)

    @classmethod
    def parse(cls, text: str) -> "HessePoint":
        from .polynomial import parse_poly

        t = text.strip()
        if t.lower() in {"inf", "infinity", "oo"}:
            return cls.infinity()
        parts = t.strip("[]").split(":")
        vals = [parse_poly(s, ()).coeff(()) for s in parts]
        if len(vals) == 1:
            return cls.affine(vals[0])
        if len(vals) != 2:
            raise UserInputError(f"cannot read a pencil parameter from {text!r}")
        return cls(vals[0], vals[1])

    def curve(self) -> MPoly:
        return hesse_cubic(self.mu0, self.mu1)

    def label(self) -> str:
        if self.mu0.is_zero():
            return "inf"
        return str(self.mu1 / self.mu0)


def is_smooth(mu: HessePoint) -> bool:
    """C(mu) is smooth unless mu0 = 0 or (mu1/mu0)^3 = 1."""
    if mu.mu0.is_zero():
        return False
    t = mu.mu1 / mu.mu0
    return t**3 != ONE


def is_smooth_jacobian(mu: HessePoint) -> bool:
    """Independent check: the Jacobian ideal has finite colength zero."""
    hf = jacobian_hilbert(mu.curve(), 5)
    return hf[4] == hf[5] == 0


# the nine base points ---------------------------------------------------

O_POINT = (ZERO, ONE, -ONE)
E1_POINT = (ZERO, ONE, -Z3)
E2_POINT = (ONE, -ONE, ZERO)


def k_point_list() -> list[tuple[CycNum, ...]]:
    """[0,1,-z^k], [-z^k,0,1], [1,-z^k,0] for k = 0, 1, 2."""
    out = []
    for k in range(3):
        zk = Z3**k
        out += [(ZERO, ONE, -zk), (-zk, ZERO, ONE), (ONE, -zk, ZERO)]
    return out


def on_all_members(p) -> bool:
    """Both x0^3 + x1^3 + x2^3 and x0 x1 x2 vanish, so p lies on C(mu) for every mu."""
    x0, x1, x2 = (cyc(v) for v in p)
    return (x0**3 + x1**3 + x2**3).is_zero() and (x0 * x1 * x2).is_zero()


def _line_restriction(f: MPoly, p, q) -> tuple[CycNum, CycNum, CycNum, CycNum]:
    """Coefficients (s^3, s^2 t, s t^2, t^3) of f(s p + t q)."""
    s, t = MPoly.var(2, 0), MPoly.var(2, 1)
    images = [s * cyc(a) + t * cyc(b) for a, b in zip(p, q)]
    g = f.substitute(images)
    return g.coeff((3, 0)), g.coeff((2, 1)), g.coeff((1, 2)), g.coeff((0, 3))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def third_point(f: MPoly, p, q) -> tuple[CycNum, ...]:
    """Third intersection of the line pq (the tangent when p = q) with the cubic f."""
    p, q = normalize(p), normalize(q)
    if p != q:
        c30, c21, c12, c03 = _line_restriction(f, p, q)
        if c21.is_zero() and c12.is_zero():
            raise ArithmeticError("the line lies on the curve")
        return normalize(tuple(c12 * a - c21 * b for a, b in zip(p, q)))
    grad = [f.diff(i).evaluate(p) for i in range(3)]
    if all(g.is_zero() for g in grad):
        raise ArithmeticError("tangent taken at a singular point")
    for k in range(3):
        e = tuple(ONE if i == k else ZERO for i in range(3))
        r = _cross(grad, e)
        if not all(v.is_zero() for v in r) and normalize(r) != p:
            break
    c30, c21, c12, c03 = _line_restriction(f, p, r)
    if c12.is_zero() and c03.is_zero():
        raise ArithmeticError("the tangent line lies on the curve")
    return normalize(tuple(c03 * a - c12 * b for a, b in zip(p, r)))


class HesseGroupLaw:
    """Chord-tangent addition on a smooth C(mu) with zero O = [0,1,-1]."""

    def __init__(self, mu: HessePoint = HessePoint(ONE, ZERO)):
        if not is_smooth(mu):
            raise UserInputError("the group law needs a smooth member")
        self.mu = mu
        self.f = mu.curve()
        self.zero = normalize(O_POINT)

    def add(self, p, q):
        r = third_point(self.f, p, q)
        return third_point(self.f, self.zero, r)

    def neg(self, p):
        return third_point(self.f, self.zero, p)

    def multiple(self, k: int, p):
        out = self.zero
        base = p if k >= 0 else self.neg(p)
        for _ in range(abs(k)):
            out = self.add(out, base)
        return out

    def labelled(self) -> dict[Label, tuple[CycNum, ...]]:
        """a e1 + b e2 for (a, b) in (Z/3)^2."""
        return {(a, b): self.add(self.multiple(a, E1_POINT), self.multiple(b, E2_POINT))
                for a in range(3) for b in range(3)}


@dataclass(frozen=True)
class KPoint:
    coords: tuple[CycNum, ...]
    label: Label

    def to_json(self):
        return {"coords": [str(c) for c in self.coords], "label": list(self.label)}


def k_points(mu: HessePoint = HessePoint(ONE, ZERO)) -> list[KPoint]:
    """The nine base points with their (Z/3)^2 labels from the group law on C(mu)."""
    law = HesseGroupLaw(mu)
    labels = law.labelled()
    listed = [normalize(p) for p in k_point_list()]
    out = []
    for lab, p in sorted(labels.items()):
        if p not in listed:
            raise ArithmeticError(f"{point_str(p)} is not a base point")
        out.append(KPoint(p, lab))
    if len({k.coords for k in out}) != 9:
        raise ArithmeticError("labels are not injective")
    return out


def label_map_is_homomorphism(mu: HessePoint = HessePoint(ONE, ZERO)) -> bool:
    law = HesseGroupLaw(mu)
    pts = {k.label: k.coords for k in k_points(mu)}
    for x, y in itertools.product(pts, repeat=2):
        s = ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)
        if law.add(pts[x], pts[y]) != pts[s]:
            return False
    return True


@dataclass(frozen=True)
class KLine:
    points: tuple[KPoint, KPoint, KPoint]
    form: tuple[CycNum, ...]   # linear form l with l(p) = 0 on the line

    def label_sum(self) -> Label:
        a = sum(p.label[0] for p in self.points) % 3
        b = sum(p.label[1] for p in self.points) % 3
        return (a, b)


def collinear(p, q, r) -> bool:
    return la.det([list(p), list(q), list(r)]).is_zero()


def collinear_triples(points: Sequence[KPoint] | None = None) -> list[KLine]:
    points = list(points) if points is not None else k_points()
    lines = []
    for a, b, c in itertools.combinations(points, 3):
        if collinear(a.coords, b.coords, c.coords):
            lines.append(KLine((a, b, c), normalize(_cross(a.coords, b.coords))))
    return lines


SINGULAR_PARAMETERS = (
    ("inf", HessePoint(ZERO, ONE)),
    ("1", HessePoint(ONE, ONE)),
    ("z3", HessePoint(ONE, Z3)),
    ("z3^2", HessePoint(ONE, Z3 * Z3)),
)


def line_in_member(line: KLine, mu: HessePoint) -> bool:
    """The cubic vanishes identically on the line."""
    p, q = line.points[0].coords, line.points[1].coords
    return all(c.is_zero() for c in _line_restriction(mu.curve(), p, q))


def singular_members_lines() -> dict[str, list[int]]:
    """For each singular member, the indices of the K-lines it contains."""
    lines = collinear_triples()
    return {name: [i for i, ln in enumerate(lines) if line_in_member(ln, mu)] for name, mu in SINGULAR_PARAMETERS}


# Heisenberg action --------------------------------------------------------

SIGMA = ((ONE, ZERO, ZERO), (ZERO, Z3, ZERO), (ZERO, ZERO, Z3 * Z3))
TAU = ((ZERO, ZERO, ONE), (ONE, ZERO, ZERO), (ZERO, ONE, ZERO))


def act_on_point(m, p) -> tuple[CycNum, ...]:
    """Point map of a coordinate substitution with matrix m: p -> m^T p."""
    return normalize(la.matvec(la.transpose(m), [cyc(v) for v in p]))


def heisenberg_action_check() -> dict:
    x = [MPoly.var(3, i) for i in range(3)]
    fermat = x[0] ** 3 + x[1] ** 3 + x[2] ** 3
    xyz = x[0] * x[1] * x[2]
    # (a) both parts of the pencil are invariant, so every C(mu) is preserved
    preserves = {}
    for name, m in (("sigma", SIGMA), ("tau", TAU)):
        mt = la.transpose(m)
        preserves[name] = fermat.linear_change(mt) == fermat and xyz.linear_change(mt) == xyz
    # (b) the commutator
    st = la.matmul(SIGMA, TAU)
    ts = la.matmul(TAU, SIGMA)
    st_eq = la.mat_eq(st, la.scalar_mul(Z3, ts))
    comm = la.matmul(la.matmul(SIGMA, TAU), la.matmul(la.inverse(SIGMA, ONE, ZERO), la.inverse(TAU, ONE, ZERO)))
    is_scalar, c = la.is_scalar_matrix(comm)
    # (c) translations on labels
    pts = {k.label: k.coords for k in k_points()}
    back = {v: k for k, v in pts.items()}

    def translation(m):
        shifts = {tuple((a - b) % 3 for a, b in zip(back[act_on_point(m, p)], lab)) for lab, p in pts.items()}
        return shifts.pop() if len(shifts) == 1 else None

    h = AbelianH((3,))
    weil = commutator_pairing(h, ((1,), (0,)), ((0,), (1,)))
    out = {
        "schema": SCHEMA,
        "kind": "hesse_heisenberg",
        "preserves_pencil": preserves,
        "sigma_tau_eq_zeta_tau_sigma": st_eq,
        "commutator": str(c) if is_scalar else None,
        "sigma_translation": translation(SIGMA),
        "tau_translation": translation(TAU),
        "sigma_O": point_str(act_on_point(SIGMA, O_POINT)),
        "tau_O": point_str(act_on_point(TAU, O_POINT)),
        "weil_pairing_e1_e2": str(weil),
    }
    out["ok"] = (all(preserves.values()) and st_eq and is_scalar and c == Z3
                 and out["sigma_translation"] == (1, 0) and out["tau_translation"] == (0, 1) and weil == Z3)
    return out


def hesse_report(mu: HessePoint) -> dict:
    v = classify(mu.curve())
    return {
        "schema": SCHEMA,
        "kind": "hesse_member",
        "mu": mu.label(),
        "smooth": is_smooth(mu),
        "smooth_jacobian": is_smooth_jacobian(mu),
        "class": v.cls.value,
        "stability": v.stability.value,
        "contains_K": all(mu.curve().evaluate(p).is_zero() for p in k_point_list()),
    }
