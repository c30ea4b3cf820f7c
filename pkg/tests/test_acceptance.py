"""End-to-end acceptance checks, one per criterion, all at exact tolerance."""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from degenab import heisenberg as hz
from degenab import linalg as la
from degenab.cubics import REPRESENTATIVES, TABLE, CubicClass, as_cubic, classify, hesse_pencil_scan, random_pgl3
from degenab.cyclotomic import ONE, ZERO, CycNum
from degenab.degeneration import (
    DegenerationData,
    hesse_theta_identities,
    mumford_chart,
    rank1_gluing_check,
    theta_limit,
    theta_limit_numeric_check,
    validate_degeneration_data,
)
from degenab.delaunay import delaunay_complex
from degenab.errors import NotPositiveDefinite
from degenab.hesse import collinear_triples, k_point_list, k_points, on_all_members
from degenab.lattice import Form, Sublattice
from degenab.oracle import delaunay_oracle_escalating
from degenab.strata import build_strata

Z3 = CycNum.zeta(3)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


def rank1(y=3):
    return DegenerationData.canonical([[2]], Sublattice([[y]]))


def test_rank1_theta_limit_table(report):
    t0 = time.perf_counter()
    d = rank1()
    rows = [
        ([F(0), F(1, 4), F(-2, 5), F(49, 100)], ["1", "0", "0"]),
        ([F(1, 2)], ["1", "ū", "0"]),
        ([F(1), F(3, 4), F(7, 5)], ["0", "1", "0"]),
        ([F(3, 2)], ["0", "1", "ū"]),
        ([F(2), F(8, 5), F(12, 5)], ["0", "0", "1"]),
        ([F(5, 2)], ["ū", "0", "1"]),
    ]
    table_ok = all(theta_limit(d, (lam,)).display() == want for lams, want in rows for lam in lams)
    periodic = True
    for j in range(-12, 13):
        lam = F(j, 2)
        a, b = theta_limit(d, (lam,)), theta_limit(d, (lam + 3,))
        shifted = {r: [((m[0] + 3,), c) for m, c in a.support[r]] for r in a.residues}
        periodic &= shifted == b.support and a.display() == b.display()
    elapsed = time.perf_counter() - t0
    ok = table_ok and periodic and elapsed < 1
    report(1, ok, f"table={table_ok} periodic={periodic} {elapsed:.2f}s")
    assert ok


def _even_forms():
    vals = range(-2, 5)
    for g in (1, 2, 3):
        for entries in itertools.product(vals, repeat=g * (g + 1) // 2):
            m = [[0] * g for _ in range(g)]
            it = iter(entries)
            for i in range(g):
                for j in range(i, g):
                    m[i][j] = m[j][i] = next(it)
            if any(m[i][i] % 2 or m[i][i] <= 0 for i in range(g)):
                continue
            try:
                yield Form(m)
            except NotPositiveDefinite:
                continue


def test_delaunay_oracle_equivalence(report):
    t0 = time.perf_counter()
    forms = list(_even_forms())
    bad = []
    for form in forms:
        fast = delaunay_complex(form)
        slow, _ = delaunay_oracle_escalating(form)
        if fast.poset() != slow.poset():
            bad.append(str(form))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    report(2, ok, f"{len(forms)} forms, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 300


def test_square_and_hexagonal_census(report):
    sq = delaunay_complex([[2, 0], [0, 2]])
    hx = delaunay_complex([[2, -1], [-1, 2]])
    ok = sq.counts() == (1, 2, 1) and hx.counts() == (1, 3, 2) and sq.euler() == 0 and hx.euler() == 0
    report(3, ok, f"square {sq.counts()} hexagonal {hx.counts()}")
    assert ok


def test_square_strata_with_unit(report):
    alpha = CycNum.zeta(7)
    ok = True
    for l, m in [(1, 1), (2, 3), (3, 3)]:
        d = DegenerationData.canonical([[2, 0], [0, 2]], Sublattice([[l, 0], [0, m]]),
                                       unit_matrix=[[0, 1], [1, 0]], alpha=alpha)
        r = build_strata(d)
        ok &= len(r.components) == l * m and r.component_types() == {"P1xP1": l * m}
        shifts = {(gl.generator, gl.character): gl.shift for gl in r.gluings}
        ok &= shifts[((0, m), 0)] == alpha ** (2 * m)
        ok &= shifts[((l, 0), 1)] == alpha ** (2 * l)
        ok &= shifts[((l, 0), 0)] == ONE and shifts[((0, m), 1)] == ONE
    report(4, ok)
    assert ok


def test_rank1_mumford_chart(report):
    d = rank1(1)
    ok = True
    for n in range(-3, 4):
        ch = mumford_chart(d, (n,))
        x, y = ch.generators
        ok &= ch.names == ["x", "y"] and x.mono == (1,) and y.mono == (-1,)
        ok &= x.abs_qval == 2 * n + 1 and y.abs_qval == -2 * n + 1
        ok &= [r.render(ch.names) for r in ch.relations] == ["x*y - q^2"] and ch.special_fiber() == ["x*y"]
        ok &= ch.verify()
    glue = rank1_gluing_check(d, range(-3, 4))
    ok &= all(v["gluing"] and v["relation"] for v in glue.values())
    r = build_strata(rank1(3))
    ok &= r.counts == (3, 3) and r.component_types() == {"P1": 3}
    # the closure graph is a single 3-cycle
    deg = {}
    for a, b in r.closure:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    ok &= len(r.closure) == 6 and set(deg.values()) == {2}
    ok &= all(len(mdl.branches) == 2 for mdl in r.local_models)
    report(5, ok)
    assert ok


def test_hesse_identities(report):
    rep = hesse_theta_identities(7)
    ok = rep["ok"]
    for l in range(3):
        ok &= rep["at_l_over_3"][l]["point"] == [ZERO, ONE, -(Z3**l)]
    ok &= rep["at_omega_over_3"]["point"] == [ONE, -ONE, ZERO]
    ok &= len(k_point_list()) == 9 and all(on_all_members(p) for p in k_point_list())
    lines = collinear_triples(k_points())
    ok &= len(lines) == 12 and all(ln.label_sum() == (0, 0) for ln in lines)
    report(6, ok, f"lines={len(lines)}")
    assert ok


def test_heisenberg_suite(report):
    t0 = time.perf_counter()
    h3 = hz.AbelianH((3,))
    ok_order = hz.group_order(h3) == 27
    ok_pair = hz.commutator_pairing(h3, ((1,), (0,)), ((0,), (1,))) == Z3
    failures = []
    for divs in [(3,), (4,), (2, 2), (3, 3), (5,)]:
        for d in (1, 2):
            res = hz.commutant_is_scalar(hz.AbelianH(divs), d)
            if not res.is_scalar:
                failures.append((divs, d, res.dimension))
    rng = random.Random(7)
    recovered = 0
    for _ in range(10):
        while True:
            a = [[CycNum.from_rational(rng.randint(-3, 3)) + rng.randint(-1, 1) * Z3 for _ in range(3)] for _ in range(3)]
            if not la.det(a).is_zero():
                break
        ainv = la.inverse(a, ONE, ZERO)
        rep = [la.matmul(la.matmul(a, u), ainv) for u in hz.standard_rep(h3, 1)]
        w0, fmat = hz.isotypic_decompose(h3, 1, rep)
        scalar, _ = la.is_scalar_matrix(la.matmul(fmat, la.inverse(la.mat(a), ONE, ZERO)))
        recovered += len(w0) == 1 and scalar
    elapsed = time.perf_counter() - t0
    ok = ok_order and ok_pair and not failures and recovered == 10 and elapsed < 30
    report(7, ok, f"order={ok_order} pairing={ok_pair} non-scalar commutants={failures} "
                  f"conjugators={recovered}/10 {elapsed:.1f}s")
    assert ok_order and ok_pair and recovered == 10 and elapsed < 30
    assert not failures, f"commutant not scalar for (H, d, dim) = {failures}"


def test_cubic_classification_rows(report):
    expected = {
        CubicClass.SMOOTH_ELLIPTIC: ("GITStable", "finite"),
        CubicClass.TRIANGLE: ("GITStable", 2),
        CubicClass.LINE_CONIC_TRANSVERSE: ("SemistableNotGITStable", 1),
        CubicClass.IRREDUCIBLE_NODE: ("SemistableNotGITStable", "Z/2Z"),
        CubicClass.THREE_LINES_CONCURRENT: ("NotSemistable", 1),
        CubicClass.LINE_CONIC_TANGENT: ("NotSemistable", 1),
        CubicClass.IRREDUCIBLE_CUSP: ("NotSemistable", 1),
    }
    rng = random.Random(2024)
    ok = len(TABLE) == 7
    for cls, (stab, group) in expected.items():
        f = as_cubic(REPRESENTATIVES[cls])
        row = (cls.value, stab, group)
        ok &= classify(f).row() == row
        for _ in range(20):
            ok &= classify(f.linear_change(random_pgl3(rng))).row() == row
    report(8, ok)
    assert ok


def test_hesse_pencil_scan(report):
    rows = hesse_pencil_scan()
    stable = all(r["stability"] == "GITStable" for r in rows)
    triangles = {r["mu"] for r in rows if r["class"] == "Triangle"}
    smooth_rest = all(r["class"] == "SmoothElliptic" for r in rows if not r["singular_value"])
    ok = stable and triangles == {"inf", "1", "z3", "z3^2"} and smooth_rest
    report(9, ok, f"{len(rows)} members")
    assert ok


def test_numeric_limit_oracle(report):
    t0 = time.perf_counter()
    d1 = rank1()
    ok = all(theta_limit_numeric_check(d1, (F(j, 2),), F(1, 10)).agrees for j in range(-6, 7))
    rng = random.Random(11)
    d2 = DegenerationData.canonical([[2, 0], [0, 2]], Sublattice([[2, 0], [0, 2]]))
    for _ in range(20):
        lam = tuple(F(rng.randint(-8, 8), rng.choice([1, 2, 3, 4])) for _ in range(2))
        rep = theta_limit_numeric_check(d2, lam, F(1, 10))
        ok &= rep.agrees and rep.tail_bound < rep.separation / 2
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    report(10, ok, f"{elapsed:.1f}s")
    assert ok


def test_degeneration_validator(report):
    ok = validate_degeneration_data(rank1()).ok
    ok &= validate_degeneration_data(DegenerationData.canonical(
        [[2, 0], [0, 2]], unit_matrix=[[0, 1], [1, 0]], alpha=CycNum.zeta(5))).ok
    ok &= validate_degeneration_data(DegenerationData.canonical([[2, -1], [-1, 2]])).ok
    cube = validate_degeneration_data(DegenerationData(1, lambda x: (F(x[0] ** 3), ONE)))
    ok &= "ii" in cube.failed() and cube.conditions["ii"].witness == ((1,), (1,))
    ok &= cube.conditions["i"].passed
    indef = validate_degeneration_data(DegenerationData(2, lambda x: (F(x[0] ** 2 - x[1] ** 2), ONE)))
    w = indef.conditions["iii"].witness
    ok &= indef.failed() == ["iii"] and w == ((0, 1),) and indef.gram == ((2, 0), (0, -2))
    report(11, ok)
    assert ok
