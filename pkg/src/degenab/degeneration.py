"""Degeneration data, truncated theta series, tropical limits and Mumford charts.

Degeneration data on X = Z^g consist of a sublattice Y of finite index and a
function a(x) = q^{v(x)} u(x) (u a unit).  For the canonical data attached to
an even form B, v(x) = B(x, x)/2 and u(x) = alpha^(x^T E x) for an optional
integer matrix E and unit alpha.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from . import linalg as la
from .cyclotomic import ONE, CycNum, cyc
from .delaunay import delaunay_cell, voronoi_vertices
from .errors import InconclusiveTruncation, NotPositiveDefinite, RankTooLarge, UserInputError
from .lattice import Form, Sublattice, ellipsoid_box, ldl
from .qseries import QLaurent

SCHEMA = "degenab/1"
Vec = tuple[int, ...]
AValue = tuple[Fraction, CycNum]


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(c, a):
    return tuple(c * x for x in a)


class DegenerationData:
    """X = Z^g, Y, and a(x) given as a callable returning (q-valuation, unit)."""

    def __init__(self, g: int, a: Callable[[Vec], AValue], Y: Sublattice | None = None, form: Form | None = None,
                 unit_matrix=None, alpha: CycNum | None = None, label: str = ""):
        self.g = g
        self._a = a
        self.Y = Y if Y is not None else Sublattice.full(g)
        self.form = form
        self.unit_matrix = unit_matrix
        self.alpha = alpha
        self.label = label

    @classmethod
    def canonical(cls, form, Y=None, unit_matrix=None, alpha=None, label: str = "") -> "DegenerationData":
        form = form if isinstance(form, Form) else Form(form)
        g = form.g
        if Y is None:
            Y = Sublattice.full(g)
        elif not isinstance(Y, Sublattice):
            Y = Sublattice(Y)
        if (unit_matrix is None) != (alpha is None):
            raise UserInputError("unit part needs both a matrix and a unit")
        E = tuple(tuple(int(v) for v in r) for r in unit_matrix) if unit_matrix is not None else None
        al = cyc(alpha) if alpha is not None else None

        def a(x):
            v = Fraction(form.Q(x), 2)
            if E is None:
                return v, ONE
            k = sum(x[i] * E[i][j] * x[j] for i in range(g) for j in range(g))
            return v, al**k

        return cls(g, a, Y, form, E, al, label)

    def a(self, x) -> AValue:
        return self._a(tuple(x))

    def unit(self, x) -> CycNum:
        return self.a(x)[1]

    def b(self, x, y) -> AValue:
        """b(x, y) = a(x + y) a(x)^-1 a(y)^-1."""
        vxy, uxy = self.a(_vadd(x, y))
        vx, ux = self.a(x)
        vy, uy = self.a(y)
        return vxy - vx - vy, uxy / (ux * uy)

    def a_series(self, x) -> QLaurent:
        v, u = self.a(x)
        return QLaurent.monomial(u, v, x)

    def require_form(self) -> Form:
        if self.form is None:
            raise UserInputError("these data carry no positive-definite form")
        return self.form


# validation ------------------------------------------------------------


@dataclass
class ConditionResult:
    passed: bool
    witness: tuple | None = None
    message: str = ""

    def to_json(self):
        return {"passed": self.passed, "witness": _jsonable(self.witness), "message": self.message}


@dataclass
class ValidationReport:
    conditions: dict[str, ConditionResult] = field(default_factory=dict)
    gram: tuple | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.conditions.items() if not c.passed]

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "degeneration_validation",
            "ok": self.ok,
            "gram": [list(r) for r in self.gram] if self.gram else None,
            "conditions": {k: c.to_json() for k, c in self.conditions.items()},
        }


def _jsonable(obj):
    if obj is None:
        return None
    if isinstance(obj, (tuple, list)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _sample_vec(rng: random.Random, g: int, r: int = 4) -> Vec:
    return tuple(rng.randint(-r, r) for _ in range(g))


def validate_degeneration_data(d: DegenerationData, samples: int = 50, seed: int = 0) -> ValidationReport:
    """Check a(0) = 1, bilinearity/symmetry of b, positivity and evenness of B.

    Conditions are named "i", "ii", "iii", "iv*".  Each failing condition
    carries a witness.
    """
    g = d.g
    rng = random.Random(seed)
    rep = ValidationReport()
    zero = (0,) * g
    v0, u0 = d.a(zero)
    rep.conditions["i"] = ConditionResult(v0 == 0 and u0 == ONE, None if (v0 == 0 and u0 == ONE) else (zero,),
                                          "" if v0 == 0 and u0 == ONE else f"a(0) = q^{v0} * {u0}")
    gens = [tuple(int(i == j) for j in range(g)) for i in range(g)]
    # (ii): symmetry and additivity in the first slot, generators first
    pairs = [(x, y) for x in gens for y in gens]
    pairs += [(_sample_vec(rng, g), _sample_vec(rng, g)) for _ in range(samples)]
    bad = None
    for x, y in pairs:
        bxy, byx = d.b(x, y), d.b(y, x)
        if bxy != byx:
            bad = ((x, y), f"b(x,y) != b(y,x) at x={x}, y={y}")
            break
        b2 = d.b(_vscale(2, x), y)
        if b2 != (2 * bxy[0], bxy[1] ** 2):
            bad = ((x, y), f"b(2x,y) != b(x,y)^2 at x={x}, y={y}")
            break
        z = _sample_vec(rng, g)
        bz = d.b(_vadd(x, z), y)
        bzy = d.b(z, y)
        if bz != (bxy[0] + bzy[0], bxy[1] * bzy[1]):
            bad = ((x, y), f"b(x+z,y) != b(x,y) b(z,y) at x={x}, z={z}, y={y}")
            break
    rep.conditions["ii"] = ConditionResult(bad is None, bad[0] if bad else None, bad[1] if bad else "")
    # (iii): B(x, y) = val b(x, y) positive definite
    gram = tuple(tuple(d.b(x, y)[0] for y in gens) for x in gens)
    rep.gram = tuple(tuple(int(v) if v.denominator == 1 else v for v in r) for r in gram)
    try:
        ldl(gram)
        rep.conditions["iii"] = ConditionResult(True)
    except NotPositiveDefinite:
        w = _nonpositive_witness(gram)
        rep.conditions["iii"] = ConditionResult(False, (w,), f"B(x,x) = {_quad(gram, w)} <= 0 at x={w}")
    # (iv)*: B even and val a(x) = B(x, x)/2
    bad = None
    if any(v.denominator != 1 for r in gram for v in r) or any(gram[i][i] % 2 for i in range(g)):
        bad = (None, "B is not an even integral form")
    else:
        for x in gens + [_sample_vec(rng, g) for _ in range(samples)]:
            if d.a(x)[0] != Fraction(_quad(gram, x), 2):
                bad = ((x,), f"val a(x) != B(x,x)/2 at x={x}")
                break
    rep.conditions["iv*"] = ConditionResult(bad is None, bad[0] if bad else None, bad[1] if bad else "")
    return rep


def _quad(gram, x):
    return sum(x[i] * gram[i][j] * x[j] for i in range(len(x)) for j in range(len(x)))


def _nonpositive_witness(gram) -> Vec:
    g = len(gram)
    for i in range(g):
        if gram[i][i] <= 0:
            return tuple(int(i == j) for j in range(g))
    for r in range(1, 6):
        for x in itertools.product(range(-r, r + 1), repeat=g):
            if any(x) and _quad(gram, x) <= 0:
                return tuple(x)
    raise ArithmeticError("no small witness of non-positivity")


# theta series ----------------------------------------------------------


def theta_truncated(d: DegenerationData, n: int, x, cutoff) -> QLaurent:
    """sum over y in Y of a(y)^(n-1) a(x + y) w^(x + n y), all terms of q-valuation <= cutoff.

    x is the chosen representative of its class in X / nY.
    """
    if n < 1:
        raise UserInputError("level must be positive")
    cutoff = Fraction(cutoff)
    form = d.require_form()
    x = tuple(x)
    Ymat = d.Y.basis
    g = d.g
    # valuation as a function of k (y = Y k): n/2 k^T M k + (Y^T G x)^T k + B(x,x)/2
    M = la.matmul(la.matmul(la.transpose(Ymat), form.gram), Ymat)
    mform = Form(M)
    lin = [sum(Ymat[i][j] * gx for i, gx in enumerate(form.Gx(x))) for j in range(g)]
    minv = mform.inverse
    k0 = tuple(-sum(minv[i][j] * lin[j] for j in range(g)) / n for i in range(g))
    c0 = Fraction(form.Q(x), 2) - Fraction(n, 2) * sum(k0[i] * M[i][j] * k0[j] for i in range(g) for j in range(g))
    budget = 2 * (cutoff - c0) / n
    terms = []
    if budget >= 0:
        for k in itertools.product(*(range(lo, hi + 1) for lo, hi in ellipsoid_box(mform, k0, budget))):
            y = d.Y.point(k)
            vy, uy = d.a(y)
            vxy, uxy = d.a(_vadd(x, y))
            val = (n - 1) * vy + vxy
            if val <= cutoff:
                terms.append((uy ** (n - 1) * uxy, val, _vadd(x, _vscale(n, y))))
    return QLaurent(g, terms)


@dataclass
class ThetaLimit:
    lam: tuple[Fraction, ...]
    cell: tuple[Vec, ...]
    residues: list[Vec]
    support: dict[Vec, list[tuple[Vec, CycNum]]]

    def normalized(self) -> dict[Vec, list[tuple[Vec, CycNum]]]:
        """Divide every coordinate by the lexicographically least monomial of the support."""
        monos = [m for r in self.residues for m, _ in self.support[r]]
        if not monos:
            return dict(self.support)
        base = min(monos)
        return {r: [(_vsub(m, base), c) for m, c in self.support[r]] for r in self.residues}

    def display(self) -> list[str]:
        """Projective coordinates as strings, e.g. ['1', 'u', '0'] (rank 1) or monomials in u1, u2."""
        out = []
        for r in self.residues:
            terms = self.normalized()[r]
            if not terms:
                out.append("0")
                continue
            parts = []
            for m, c in terms:
                mono = _umono(m)
                cs = str(c)
                if mono == "1":
                    parts.append(cs)
                elif cs == "1":
                    parts.append(mono)
                else:
                    parts.append(f"({cs})*{mono}")
            out.append("+".join(parts))
        return out

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "theta_limit",
            "lambda": [str(v) for v in self.lam],
            "cell": [list(v) for v in self.cell],
            "residues": {
                ",".join(map(str, r)): [{"mono": list(m), "coeff": c.to_json()} for m, c in self.support[r]]
                for r in self.residues
            },
            "projective": self.display(),
        }

    @classmethod
    def from_json(cls, obj) -> "ThetaLimit":
        residues = [tuple(int(v) for v in k.split(",")) for k in obj["residues"]]
        support = {
            r: [(tuple(t["mono"]), CycNum.from_json(t["coeff"])) for t in obj["residues"][k]]
            for r, k in zip(residues, obj["residues"])
        }
        return cls(tuple(Fraction(v) for v in obj["lambda"]), tuple(tuple(v) for v in obj["cell"]), residues, support)


def _umono(m) -> str:
    if not any(m):
        return "1"
    if len(m) == 1:
        return "ū" if m[0] == 1 else f"ū^{m[0]}"
    parts = []
    for i, e in enumerate(m):
        if e:
            parts.append(f"ū{i + 1}" if e == 1 else f"ū{i + 1}^{e}")
    return "*".join(parts)


def theta_limit(d: DegenerationData, lam) -> ThetaLimit:
    """Projective q -> 0 limit of the level-one theta coordinates after w = q^(-B(lam, .)) u."""
    form = d.require_form()
    lam = tuple(Fraction(v) for v in lam)
    if len(lam) != d.g:
        raise UserInputError(f"lambda has {len(lam)} entries, rank is {d.g}")
    cell = delaunay_cell(form, lam)
    residues = list(d.Y.coset_reps)
    support = {r: [] for r in residues}
    for j in cell.vertices:
        support[d.Y.reduce(j)].append((j, d.unit(j)))
    return ThetaLimit(lam, cell.vertices, residues, support)


def theta_limit_from_series(d: DegenerationData, lam, cutoff=None) -> dict[Vec, list[tuple[Vec, CycNum]]]:
    """Same limit read off from truncated series via their common leading part."""
    form = d.require_form()
    lam = tuple(Fraction(v) for v in lam)
    shift = [-sum(lam[i] * form.gram[i][j] for i in range(d.g)) for j in range(d.g)]
    # F_lam(x)/2 >= min over the cell; a cutoff covering D(lam) with margin
    if cutoff is None:
        cell = delaunay_cell(form, lam)
        cutoff = max(Fraction(form.Q(v), 2) for v in cell.vertices) + 1
    series = {r: theta_truncated(d, 1, r, cutoff + _shift_margin(form, lam, d)).substitute(shift) for r in d.Y.coset_reps}
    vmin = min(s.leading()[0] for s in series.values() if s)
    out = {}
    for r, s in series.items():
        out[r] = sorted((x, c) for c, v, x in s.terms() if v == vmin)
    return out


def _shift_margin(form: Form, lam, d) -> Fraction:
    # the substitution lowers valuations by at most B(lam, x); bound it on the box the minimizers live in
    return Fraction(form.Q([abs(v) for v in lam]), 1) + 2 * max([abs(v) for v in lam] + [1]) * max(abs(e) for r in form.gram for e in r) * d.g


@dataclass
class NumericReport:
    lam: tuple[Fraction, ...]
    q0: Fraction
    predicted: dict[Vec, complex]
    values: dict[Vec, complex]
    dominant_predicted: list[Vec]
    dominant_numeric: list[Vec]
    separation: float
    tail_bound: float
    error_bound: float
    ratios_ok: bool

    @property
    def agrees(self) -> bool:
        return self.dominant_predicted == self.dominant_numeric and self.ratios_ok

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "theta_limit_numeric_check",
            "lambda": [str(v) for v in self.lam],
            "q0": str(self.q0),
            "dominant_predicted": [list(r) for r in self.dominant_predicted],
            "dominant_numeric": [list(r) for r in self.dominant_numeric],
            "separation": self.separation,
            "tail_bound": self.tail_bound,
            "error_bound": self.error_bound,
            "agrees": self.agrees,
        }


def _box_count(form: Form, value) -> int:
    n = 1
    for lo, hi in ellipsoid_box(form, [Fraction(0)] * form.g, value):
        n *= max(0, hi - lo + 1)
    return n


def theta_limit_numeric_check(d: DegenerationData, lam, q0=Fraction(1, 10), cutoff=20, dps: int = 60) -> NumericReport:
    """Evaluate the substituted theta coordinates at q = q0, u = 1 and compare with theta_limit.

    Each coordinate is divided by q0^(m/2) where m = min F_lam; the leading
    term then has size O(1) and the remainder is bounded explicitly.
    """
    q0 = Fraction(q0)
    if not 0 < q0 < Fraction(1, 4):
        raise UserInputError("q0 must lie in (0, 1/4)")
    form = d.require_form()
    lam = tuple(Fraction(v) for v in lam)
    cutoff = Fraction(cutoff)
    lim = theta_limit(d, lam)
    g = d.g
    with mpmath.workdps(dps):
        qm = mpmath.mpf(q0.numerator) / q0.denominator
        # relative exponent (F(j) - m*)/2 = ((j-lam)^T G (j-lam) - qmin)/2
        qmin = sum((v - l) * form.gram[i][k] * (lim.cell[0][k] - lam[k])
                   for i, (v, l) in enumerate(zip(lim.cell[0], lam)) for k in range(g))
        budget = qmin + 2 * cutoff
        box = ellipsoid_box(form, lam, budget)
        values = {r: mpmath.mpc(0) for r in lim.residues}
        nonlead = {r: mpmath.mpf(0) for r in lim.residues}
        for j in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
            y = [a - b for a, b in zip(j, lam)]
            qd = sum(y[i] * form.gram[i][k] * y[k] for i in range(g) for k in range(g))
            e = (qd - qmin) / 2
            if e > cutoff:
                continue
            u = d.unit(j).to_complex()
            term = mpmath.mpc(u.real, u.imag) * mpmath.power(qm, mpmath.mpf(e.numerator) / e.denominator)
            r = d.Y.reduce(j)
            values[r] += term
            if e > 0:
                nonlead[r] += abs(term)
        # tail: lattice points with relative exponent e > cutoff, counted shell by shell
        tail = mpmath.mpf(0)
        t = 0
        while True:
            lo_e = cutoff + t
            cnt = _box_count(form, qmin + 2 * (lo_e + 1) + 1)
            term = cnt * mpmath.power(qm, lo_e)
            tail += term
            t += 1
            if term < mpmath.mpf(10) ** (-dps // 2) or t > 2000:
                break
        predicted = {r: sum((c.to_complex() for _, c in lim.support[r]), 0j) for r in lim.residues}
        err = {r: nonlead[r] + tail for r in lim.residues}
        dom_pred = sorted(r for r in lim.residues if lim.support[r])
        absval = {r: abs(values[r]) for r in lim.residues}
        max_err = max(err.values())
        # dominant numerically: coordinates whose size exceeds every error-only coordinate
        nondom_pred = [r for r in lim.residues if r not in dom_pred]
        min_dom = min(absval[r] for r in dom_pred)
        max_nondom = max((absval[r] for r in nondom_pred), default=mpmath.mpf(0))
        separation = min_dom - max_nondom
        if tail >= separation / 2:
            raise InconclusiveTruncation(
                f"tail bound {mpmath.nstr(tail, 5)} not below half the separation {mpmath.nstr(separation, 5)}")
        threshold = (min_dom + max_nondom) / 2
        dom_num = sorted(r for r in lim.residues if absval[r] > threshold)
        ratios_ok = all(abs(values[r] - predicted[r]) <= err[r] * (1 + mpmath.mpf(10) ** (-dps // 3)) for r in lim.residues)
        return NumericReport(lam, q0, predicted, {r: complex(values[r]) for r in lim.residues}, dom_pred, dom_num,
                             float(separation), float(tail), float(max_err), ratios_ok)


def hesse_theta_identities(bound: int = 7) -> dict:
    """Exact cancellations of the modified level-3 theta functions at 3-division points.

    The series are truncated symmetrically for the pairing that makes each
    identity hold term by term.
    """
    z3 = CycNum.zeta(3)
    out = {"bound": bound, "at_l_over_3": {}, "at_omega_over_3": {}}

    def series(pairs):
        return QLaurent(0, [(c, v, ()) for c, v in pairs])

    for l in range(3):
        w = z3**l
        # theta_0: pairing m <-> 1 - m on [-bound+1, bound]
        t0 = series([((-w) ** (3 * m), 9 * m * m - 9 * m) for m in range(-bound + 1, bound + 1)])
        rng = range(-bound, bound + 1)
        t1 = series([((-w) ** (3 * m + 1), 9 * m * m - 3 * m - 2) for m in rng])
        t2 = series([((-w) ** (3 * m + 2), 9 * m * m + 3 * m - 2) for m in rng])
        ratio_ok = (t2 + t1 * (z3**l)) == QLaurent.zero(0)
        out["at_l_over_3"][l] = {
            "theta0_zero": t0 == QLaurent.zero(0),
            "theta2_eq_minus_zeta_theta1": ratio_ok,
            "theta1_nonzero": bool(t1),
            "point": [cyc(0), ONE, -(z3**l)] if ratio_ok and t0 == QLaurent.zero(0) else None,
        }
    # z = omega/3: w = q^2
    rng = range(-bound, bound + 1)
    def sign(k):
        return -1 if k % 2 else 1

    s0 = series([(sign(3 * m), 9 * m * m - 9 * m + 6 * m) for m in rng])
    s1 = series([(sign(3 * m + 1), 9 * m * m - 3 * m - 2 + 2 * (3 * m + 1)) for m in rng])
    s2 = series([(sign(3 * m + 2), 9 * m * m + 3 * m - 2 + 2 * (3 * m + 2)) for m in range(-bound - 1, bound + 1)])
    out["at_omega_over_3"] = {
        "theta1_eq_minus_theta0": (s1 + s0) == QLaurent.zero(0),
        "theta2_zero": s2 == QLaurent.zero(0),
        "point": [ONE, -ONE, cyc(0)] if (s1 + s0) == QLaurent.zero(0) and s2 == QLaurent.zero(0) else None,
    }
    out["ok"] = all(v["theta0_zero"] and v["theta2_eq_minus_zeta_theta1"] for v in out["at_l_over_3"].values()) and \
        out["at_omega_over_3"]["theta1_eq_minus_theta0"] and out["at_omega_over_3"]["theta2_zero"]
    return out


# Mumford charts --------------------------------------------------------


@dataclass(frozen=True)
class ChartGenerator:
    name: str
    mono: Vec          # w-exponent x - n
    qval: Fraction     # relative valuation B(x - n, x - n)/2
    abs_qval: Fraction  # valuation of a(x)/a(n)
    unit: CycNum

    def series(self) -> QLaurent:
        return QLaurent.monomial(self.unit, self.abs_qval, self.mono)


@dataclass(frozen=True)
class ChartRelation:
    lhs: tuple[int, ...]     # exponent vector over generators
    rhs: tuple[int, ...]
    qpower: Fraction         # lhs = q^qpower * unit * rhs
    unit: CycNum

    def render(self, names: Sequence[str]) -> str:
        def mono(e):
            s = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            return s or "1"

        coeff = ""
        if self.qpower:
            coeff = "q" if self.qpower == 1 else f"q^{self.qpower}"
        if self.unit != ONE:
            coeff = f"({self.unit})" + ("*" + coeff if coeff else "")
        r = mono(self.rhs)
        right = coeff if r == "1" and coeff else (f"{coeff}*{r}" if coeff else r)
        return f"{mono(self.lhs)} - {right}"


@dataclass
class MumfordChart:
    n: Vec
    generators: list[ChartGenerator]
    relations: list[ChartRelation]

    @property
    def names(self) -> list[str]:
        return [gen.name for gen in self.generators]

    def special_fiber(self) -> list[str]:
        """Relations at q = 0: positive q-power relations become monomials."""
        out = []
        for r in self.relations:
            if r.qpower > 0:
                out.append(ChartRelation(r.lhs, tuple(0 for _ in r.lhs), Fraction(0), ONE).render(self.names).split(" - ")[0])
            else:
                out.append(r.render(self.names))
        return out

    def verify(self) -> bool:
        """Every relation holds identically among the generator series."""
        series = [gen.series() for gen in self.generators]

        def ev(e):
            out = QLaurent.one(len(self.n))
            for s, k in zip(series, e):
                for _ in range(k):
                    out = out * s
            return out

        return all(ev(r.lhs) == ev(r.rhs) * QLaurent.monomial(r.unit, r.qpower, (0,) * len(self.n))
                   for r in self.relations)

    def relative_presentation(self):
        """Presentation independent of n: generator data and relations."""
        return (tuple((gen.name, gen.mono, gen.qval) for gen in self.generators),
                tuple((r.lhs, r.rhs, r.qpower) for r in self.relations))

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "mumford_chart",
            "n": list(self.n),
            "generators": [{"name": gen.name, "mono": list(gen.mono), "qval": str(gen.qval),
                            "abs_qval": str(gen.abs_qval)} for gen in self.generators],
            "relations": [r.render(self.names) for r in self.relations],
            "special_fiber": self.special_fiber(),
        }


def delaunay_star(form: Form) -> list[Vec]:
    """Lattice points of all maximal Delaunay cells containing 0."""
    pts = set()
    for v in voronoi_vertices(form):
        pts.update(delaunay_cell(form, v).vertices)
    return sorted(pts)


def _name_generators(monos: list[Vec]) -> list[str]:
    g = len(monos[0])
    if g == 1:
        return ["x" if m[0] > 0 else "y" for m in monos]
    axes = {tuple(int(i == j) for j in range(g)) for i in range(g)}
    if set(monos) == axes | {tuple(-x for x in a) for a in axes}:
        names = []
        for m in monos:
            i = next(k for k, v in enumerate(m) if v)
            names.append(f"u{i + 1}" if m[i] > 0 else f"v{i + 1}")
        return names
    return [f"u{i}" for i in range(len(monos))]


def _order_generators(form: Form, monos: list[Vec]) -> list[Vec]:
    g = form.g
    if g == 1:
        return sorted(monos, reverse=True)
    if g == 2:
        import math

        L, dd = form.ldl

        def angle(m):
            y = [float(dd[k]) ** 0.5 * sum(float(L[i][k]) * m[i] for i in range(g)) for k in range(g)]
            return math.atan2(y[1], y[0]) % (2 * math.pi)

        axes = {(1, 0), (-1, 0), (0, 1), (0, -1)}
        if set(monos) == axes:
            return [(1, 0), (0, 1), (-1, 0), (0, -1)]
        return sorted(monos, key=angle)
    return sorted(monos)


def _monomials(k: int, max_deg: int):
    for deg in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(k), deg):
            e = [0] * k
            for c in combo:
                e[c] += 1
            yield tuple(e)


def mumford_chart(d: DegenerationData, n=None, max_degree: int = 4) -> MumfordChart:
    """Generators (a(x)/a(n)) w^(x-n) over the Delaunay star of n, and their binomial relations."""
    form = d.require_form()
    g = d.g
    if g > 2:
        raise RankTooLarge("chart presentations are computed for rank at most 2")
    n = tuple(n) if n is not None else (0,) * g
    star = [s for s in delaunay_star(form) if any(s)]
    keep = []
    sset = set(star)
    for s in star:
        redundant = False
        for s1 in star:
            s2 = _vsub(s, s1)
            if s2 in sset and any(s1) and any(s2) and form.B(s1, s2) >= 0:
                redundant = True
                break
        if not redundant:
            keep.append(s)
    keep = _order_generators(form, keep)
    names = _name_generators(keep)
    vn, un = d.a(n)
    gens = []
    for name, s in zip(names, keep):
        x = _vadd(n, s)
        vx, ux = d.a(x)
        gens.append(ChartGenerator(name, s, Fraction(form.Q(s), 2), vx - vn, ux / un))
    k = len(gens)
    # group monomials in the generators by their w-exponent
    buckets: dict[Vec, list[tuple[int, ...]]] = {}
    for e in _monomials(k, max_degree):
        w = tuple(sum(e[i] * gens[i].mono[c] for i in range(k)) for c in range(g))
        buckets.setdefault(w, []).append(e)

    def val(e):
        return sum(e[i] * gens[i].abs_qval for i in range(k))

    def unit(e):
        u = ONE
        for i in range(k):
            if e[i]:
                u = u * gens[i].unit ** e[i]
        return u

    cands = []
    for w, es in buckets.items():
        for a, b in itertools.combinations(es, 2):
            if any(x and y for x, y in zip(a, b)) or sum(a) + sum(b) > max_degree:
                continue
            c = val(a) - val(b)
            if c < 0 or (c == 0 and a < b):
                a, b, c = b, a, -c
            cands.append((sum(a) + sum(b), c, a, b))
    cands.sort()
    kept: list[ChartRelation] = []
    for _, c, a, b in cands:
        if _implied(a, b, c, kept, val, max_degree):
            continue
        kept.append(ChartRelation(a, b, c, unit(a) / unit(b)))
    kept.sort(key=lambda r: (sum(r.lhs) + sum(r.rhs), r.qpower, [-v for v in r.lhs]))
    return MumfordChart(n, gens, kept)


def _implied(a, b, c, rels, val, max_deg) -> bool:
    """Is x^a = q^c x^b a consequence of the kept binomials (within the degree bound)?"""
    cap = c + sum(r.qpower for r in rels)
    start = (a, Fraction(0))
    seen = {start}
    stack = [start]
    while stack:
        mono, acc = stack.pop()
        if mono == b and acc == c:
            return True
        for r in rels:
            for src, dst, step in ((r.lhs, r.rhs, r.qpower), (r.rhs, r.lhs, -r.qpower)):
                if all(m >= s for m, s in zip(mono, src)):
                    nm = tuple(m - s + t for m, s, t in zip(mono, src, dst))
                    nacc = acc + step
                    if nacc < 0 or nacc > cap or sum(nm) > max_deg:
                        continue
                    st = (nm, nacc)
                    if st not in seen:
                        seen.add(st)
                        stack.append(st)
    return False


def rank1_gluing_check(d: DegenerationData, ns=range(-3, 4)) -> dict:
    """x_{n+1} = x_n^2 y_n, y_{n+1} = x_n^-1 in R[w, 1/w], and the relation maps to itself."""
    if d.g != 1:
        raise UserInputError("rank-1 data required")
    results = {}
    for n in ns:
        c0 = mumford_chart(d, (n,))
        c1 = mumford_chart(d, (n + 1,))
        x0, y0 = (g.series() for g in c0.generators)
        x1, y1 = (g.series() for g in c1.generators)
        inv_x0 = QLaurent.monomial(c0.generators[0].unit.inverse(), -c0.generators[0].abs_qval, (-c0.generators[0].mono[0],))
        glue = (x1 == x0 * x0 * y0) and (y1 == inv_x0)
        # relation x y - q^2: pull back x1 y1 -> x0^2 y0 x0^-1 = x0 y0
        rel_ok = all(r.qpower == 2 and r.lhs == (1, 1) and r.rhs == (0, 0) for r in c0.relations + c1.relations)
        pulled = x0 * x0 * y0 * inv_x0
        results[n] = {"gluing": glue, "relation": rel_ok and pulled == x0 * y0 == QLaurent.monomial(c0.generators[0].unit * c0.generators[1].unit, 2, (0,))}
    return results
