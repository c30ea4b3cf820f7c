import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenab.cyclotomic import ONE, CycNum
from degenab.degeneration import (
    DegenerationData,
    ThetaLimit,
    delaunay_star,
    hesse_theta_identities,
    mumford_chart,
    theta_limit,
    theta_limit_from_series,
    theta_limit_numeric_check,
    theta_truncated,
    validate_degeneration_data,
)
from degenab.errors import RankTooLarge, UserInputError
from degenab.lattice import Form, Sublattice
from degenab.qseries import QLaurent

Z5 = CycNum.zeta(5)


def rank1(y=3):
    return DegenerationData.canonical([[2]], Sublattice([[y]]))


def square(y=2, alpha=None):
    kw = dict(unit_matrix=[[0, 1], [1, 0]], alpha=alpha) if alpha is not None else {}
    return DegenerationData.canonical([[2, 0], [0, 2]], Sublattice([[y, 0], [0, y]]), **kw)


def hexagonal(y=2):
    return DegenerationData.canonical([[2, -1], [-1, 2]], Sublattice([[y, 0], [0, y]]))


def test_truncated_theta_rank1():
    d = rank1()
    assert theta_truncated(d, 1, (0,), 40) == QLaurent(1, [(1, 0, (0,)), (1, 9, (3,)), (1, 9, (-3,)),
                                                          (1, 36, (6,)), (1, 36, (-6,))])
    s = theta_truncated(d, 1, (1,), 30)
    assert {(v, x) for _, v, x in s.terms()} == {(F(1), (1,)), (F(4), (-2,)), (F(16), (4,)), (F(25), (-5,))}


def test_truncated_theta_level_two():
    s = theta_truncated(rank1(1), 2, (0,), 10)
    # a(y)^2 = q^{2 y^2} with monomials w^{2y}
    assert {(v, x) for _, v, x in s.terms()} == {(F(0), (0,)), (F(2), (2,)), (F(2), (-2,)), (F(8), (4,)), (F(8), (-4,))}
    with pytest.raises(UserInputError):
        theta_truncated(rank1(), 0, (0,), 5)


def test_square_limit_carries_the_unit():
    t = theta_limit(square(alpha=Z5), (F(1, 2), F(1, 2)))
    assert t.display() == ["1", "ū2", "ū1", "(z5^2)*ū1*ū2"]


def test_hexagonal_limit_on_a_triangle():
    assert theta_limit(hexagonal(), (F(1, 3), F(2, 3))).display() == ["1", "ū2", "0", "ū1*ū2"]


lam_st = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@settings(max_examples=40, deadline=None)
@given(lam_st)
def test_limit_matches_series_rank1(lam):
    d = rank1()
    assert theta_limit_from_series(d, (lam,)) == theta_limit(d, (lam,)).support


@settings(max_examples=25, deadline=None)
@given(lam_st, lam_st, st.sampled_from(["square", "hex", "unit"]))
def test_limit_matches_series_rank2(a, b, which):
    d = {"square": square(), "hex": hexagonal(), "unit": square(alpha=Z5)}[which]
    assert theta_limit_from_series(d, (a, b)) == theta_limit(d, (a, b)).support


def test_theta_limit_json_round_trip():
    t = theta_limit(square(alpha=Z5), (F(1, 2), F(1, 3)))
    back = ThetaLimit.from_json(json.loads(json.dumps(t.to_json())))
    assert back == t


def test_numeric_check_agrees():
    rep = theta_limit_numeric_check(rank1(), (F(1, 2),))
    assert rep.agrees and rep.dominant_predicted == [(0,), (1,)]
    assert rep.tail_bound < rep.separation / 2
    with pytest.raises(UserInputError):
        theta_limit_numeric_check(rank1(), (F(0),), q0=F(1, 2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.lists(st.integers(-5, 5), min_size=2, max_size=2),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_b_is_bilinear_and_symmetric(x, y, z):
    d = square(alpha=Z5)
    x, y, z = tuple(x), tuple(y), tuple(z)
    assert d.b(x, y) == d.b(y, x)
    s = tuple(a + b for a, b in zip(x, z))
    vs, us = d.b(s, y)
    vx, ux = d.b(x, y)
    vz, uz = d.b(z, y)
    assert vs == vx + vz and us == ux * uz


def test_canonical_requires_matching_unit_data():
    with pytest.raises(UserInputError):
        DegenerationData.canonical([[2]], unit_matrix=[[1]])


def test_validator_accepts_canonical_data():
    for d in (rank1(), square(alpha=Z5), hexagonal(3)):
        rep = validate_degeneration_data(d)
        assert rep.ok and rep.failed() == []
    js = validate_degeneration_data(rank1()).to_json()
    assert json.loads(json.dumps(js))["ok"] is True


def test_validator_rejects_cubic_valuation():
    rep = validate_degeneration_data(DegenerationData(1, lambda x: (F(x[0] ** 3), ONE)))
    assert not rep.ok
    assert rep.conditions["ii"].witness == ((1,), (1,))


def test_validator_rejects_indefinite_form():
    rep = validate_degeneration_data(DegenerationData(2, lambda x: (F(x[0] ** 2 - x[1] ** 2), ONE)))
    assert rep.failed() == ["iii"]
    assert rep.conditions["iii"].witness == ((0, 1),)


def test_delaunay_star():
    # vertices of the maximal cells through the origin
    assert delaunay_star(Form([[2, 0], [0, 2]])) == [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
    assert delaunay_star(Form([[2, -1], [-1, 2]])) == [(-1, -1), (-1, 0), (0, -1), (0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("n", [(0, 0), (1, -2)])
def test_square_chart(n):
    ch = mumford_chart(DegenerationData.canonical([[2, 0], [0, 2]]), n)
    assert [r.render(ch.names) for r in ch.relations] == ["u1*v1 - q^2", "u2*v2 - q^2"]
    assert ch.special_fiber() == ["u1*v1", "u2*v2"]
    assert ch.verify()


def test_hexagonal_chart():
    ch = mumford_chart(DegenerationData.canonical([[2, -1], [-1, 2]]), (0, 0))
    rels = [r.render(ch.names) for r in ch.relations]
    assert rels[:3] == ["u0*u3 - q^2", "u1*u4 - q^2", "u2*u5 - q^2"]
    assert sorted(rels[3:]) == sorted(["u0*u2 - q*u1", "u0*u4 - q*u5", "u1*u3 - q*u2",
                                       "u1*u5 - q*u0", "u2*u4 - q*u3", "u3*u5 - q*u4"])
    assert len(ch.special_fiber()) == 9
    assert ch.verify()


def test_chart_rank_limit():
    with pytest.raises(RankTooLarge):
        mumford_chart(DegenerationData.canonical([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))


def test_hesse_identities_hold():
    rep = hesse_theta_identities(7)
    assert rep["ok"]
    assert all(v["theta0_zero"] and v["theta2_eq_minus_zeta_theta1"] and v["theta1_nonzero"]
               for v in rep["at_l_over_3"].values())
    assert rep["at_omega_over_3"]["theta1_eq_minus_theta0"] and rep["at_omega_over_3"]["theta2_zero"]
