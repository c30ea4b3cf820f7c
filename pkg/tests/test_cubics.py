import json
import random

import pytest
import sympy

from degenab.cubics import (
    EXTENSION_ROWS,
    REPRESENTATIVES,
    CubicClass,
    CubicVerdict,
    Stability,
    as_cubic,
    classify,
    hesse_cubic,
    hilbert_mumford_check,
    jacobian_hilbert,
    lie_stabilizer_dim,
    polar_rank,
    random_pgl3,
)
from degenab.cyclotomic import CycNum
from degenab.errors import UserInputError
from degenab.polynomial import monomials

X = sympy.symbols("x0 x1 x2")


def sympy_singular_points(text):
    """Projective singular points, found chart by chart."""
    f = sympy.sympify(text.replace("^", "**"), locals=dict(zip(("x0", "x1", "x2"), X)))
    eqs = [f] + [sympy.diff(f, v) for v in X]
    pts = set()
    for fixed in [{X[2]: 1}, {X[2]: 0, X[1]: 1}, {X[2]: 0, X[1]: 0, X[0]: 1}]:
        sub = [sympy.expand(e.subs(fixed)) for e in eqs]
        free = [v for v in X if v not in fixed]
        sub = [e for e in sub if e != 0]
        if not free:
            if not sub:
                pts.add(tuple(fixed.get(v) for v in X))
            continue
        for sol in sympy.solve(sub, free, dict=True):
            pts.add(tuple(sol.get(v, fixed.get(v)) for v in X))
    return pts


SINGULAR_COUNT = {
    CubicClass.SMOOTH_ELLIPTIC: 0,
    CubicClass.TRIANGLE: 3,
    CubicClass.IRREDUCIBLE_NODE: 1,
    CubicClass.IRREDUCIBLE_CUSP: 1,
    CubicClass.LINE_CONIC_TRANSVERSE: 2,
    CubicClass.LINE_CONIC_TANGENT: 1,
    CubicClass.THREE_LINES_CONCURRENT: 1,
}


@pytest.mark.parametrize("cls", list(SINGULAR_COUNT))
def test_representatives_against_sympy(cls):
    text = REPRESENTATIVES[cls]
    assert len(sympy_singular_points(text)) == SINGULAR_COUNT[cls]
    assert classify(text).cls is cls


# Jacobian Hilbert function, Lie stabilizer dimension, polar rank
INVARIANTS = {
    CubicClass.SMOOTH_ELLIPTIC: ([1, 3, 3, 1, 0, 0], 0, 3),
    CubicClass.TRIANGLE: ([1, 3, 3, 3, 3, 3], 2, 3),
    CubicClass.IRREDUCIBLE_NODE: ([1, 3, 3, 1, 1, 1], 0, 3),
    CubicClass.IRREDUCIBLE_CUSP: ([1, 3, 3, 2, 2, 2], 1, 3),
    CubicClass.LINE_CONIC_TRANSVERSE: ([1, 3, 3, 2, 2, 2], 1, 3),
    CubicClass.LINE_CONIC_TANGENT: ([1, 3, 3, 3, 3, 3], 2, 3),
    CubicClass.THREE_LINES_CONCURRENT: ([1, 3, 4, 4, 4, 4], 3, 2),
    CubicClass.DOUBLE_LINE_PLUS_LINE: ([1, 3, 4, 5, 6, 7], 4, 2),
    CubicClass.TRIPLE_LINE: ([1, 3, 5, 7, 9, 11], 6, 1),
}


@pytest.mark.parametrize("cls", list(INVARIANTS))
def test_frozen_invariants(cls):
    f = as_cubic(REPRESENTATIVES[cls])
    hf, lie, prank = INVARIANTS[cls]
    assert jacobian_hilbert(f, 5) == hf
    assert lie_stabilizer_dim(f) == lie
    assert polar_rank(f) == prank


@pytest.mark.parametrize("cls", list(INVARIANTS))
def test_invariance_under_coordinate_change(cls):
    rng = random.Random(hash(cls.value) % 1000)
    f = as_cubic(REPRESENTATIVES[cls])
    want = classify(f)
    for _ in range(3):
        got = classify(f.linear_change(random_pgl3(rng)))
        assert got.row() == want.row()
        assert got.certificates["lie_stabilizer_dim"] == want.certificates["lie_stabilizer_dim"]


def test_extension_rows_are_flagged():
    for cls in EXTENSION_ROWS:
        v = classify(REPRESENTATIVES[cls])
        assert v.cls is cls and v.extension and v.stability is Stability.NOT_SEMISTABLE
        assert "note" in v.to_json()


def test_verdict_json_round_trip():
    v = classify("x2*x1^2 - x0^3")
    back = CubicVerdict.from_json(json.loads(json.dumps(v.to_json())))
    assert back == v


def test_coefficient_vector_input():
    coeffs = [0] * 10
    mons = monomials(3, 3)
    coeffs[mons.index((1, 1, 1))] = 1
    assert classify(coeffs).cls is CubicClass.TRIANGLE
    with pytest.raises(UserInputError):
        as_cubic([1, 2, 3])


@pytest.mark.parametrize("bad", ["x0^2", "x0^3 + x1", "0", "x0*x1*x2*x0"])
def test_rejects_non_cubics(bad):
    with pytest.raises(UserInputError):
        as_cubic(bad)


@pytest.mark.parametrize("cls,destabilized", [
    (CubicClass.SMOOTH_ELLIPTIC, False),
    (CubicClass.TRIANGLE, False),
    (CubicClass.IRREDUCIBLE_NODE, False),
    (CubicClass.LINE_CONIC_TRANSVERSE, False),
    (CubicClass.IRREDUCIBLE_CUSP, True),
    (CubicClass.LINE_CONIC_TANGENT, True),
    (CubicClass.THREE_LINES_CONCURRENT, True),
    (CubicClass.TRIPLE_LINE, True),
])
def test_hilbert_mumford(cls, destabilized):
    rep = hilbert_mumford_check(REPRESENTATIVES[cls])
    assert rep.destabilized is destabilized
    assert rep.checked > 0


def test_hilbert_mumford_rejects_bad_weights():
    with pytest.raises(UserInputError):
        hilbert_mumford_check("x0^3", weights=[(1, 1, 1)])


def test_hesse_members():
    z = CycNum.zeta(3)
    assert classify(hesse_cubic(1, 0)).cls is CubicClass.SMOOTH_ELLIPTIC
    for mu1 in (1, z, z * z):
        assert classify(hesse_cubic(1, mu1)).cls is CubicClass.TRIANGLE
    assert classify(hesse_cubic(0, 1)).cls is CubicClass.TRIANGLE
