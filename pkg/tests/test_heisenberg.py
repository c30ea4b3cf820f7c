import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenab import heisenberg as hz
from degenab import linalg as la
from degenab.cyclotomic import ONE, CycNum
from degenab.errors import NotFree, NotWeightD, UserInputError

GROUPS = [(2,), (3,), (4,), (2, 2), (5,), (2, 4), (3, 3)]


@pytest.mark.parametrize("divs", GROUPS)
def test_group_order(divs):
    h = hz.AbelianH(divs)
    # center mu_N times the N^2 translations
    assert hz.group_order(h) == h.order**3


def test_order_h3_is_27():
    assert hz.group_order(hz.AbelianH((3,))) == 27


@pytest.mark.parametrize("divs", GROUPS)
def test_weight_one_is_irreducible(divs):
    res = hz.commutant_is_scalar(hz.AbelianH(divs), 1)
    assert res.is_scalar and res.dimension == 1


@pytest.mark.parametrize("divs,d", [((3,), 4), ((2,), 3), ((4,), 5), ((2, 2), 3)])
def test_weight_one_mod_n_is_irreducible(divs, d):
    assert hz.commutant_is_scalar(hz.AbelianH(divs), d).is_scalar


@pytest.mark.parametrize("divs,d,dim", [((4,), 2, 2), ((2, 2), 2, 4), ((2,), 2, 2), ((3,), 3, 3)])
def test_weight_sharing_a_factor_with_n_is_reducible(divs, d, dim):
    res = hz.commutant_is_scalar(hz.AbelianH(divs), d)
    assert not res.is_scalar and res.dimension == dim


@pytest.mark.parametrize("divs", GROUPS)
def test_pairing_closed_form(divs):
    h = hz.AbelianH(divs)
    rng = random.Random(1)
    for _ in range(10):
        x = (tuple(rng.randrange(e) for e in divs), tuple(rng.randrange(e) for e in divs))
        y = (tuple(rng.randrange(e) for e in divs), tuple(rng.randrange(e) for e in divs))
        assert hz.commutator_pairing(h, x, y) == hz.commutator_formula(h, x, y)


def test_pairing_matrix_h3():
    z = CycNum.zeta(3)
    m = hz.pairing_matrix(hz.AbelianH((3,)))
    assert m == [[ONE, z], [z * z, ONE]]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(1, 4), st.randoms(use_true_random=False))
def test_schrodinger_is_a_homomorphism(divs, d, rnd):
    h = hz.AbelianH(divs)
    G = hz.HeisenbergGroup(h)
    x, y = G.random_element(rnd), G.random_element(rnd)
    assert la.mat_eq(hz.schrodinger(h, G.mul(x, y), d), la.matmul(hz.schrodinger(h, x, d), hz.schrodinger(h, y, d)))
    assert G.mul(x, G.inv(x)) == G.identity()


def test_isotypic_decomposition_of_a_double():
    h = hz.AbelianH((3,))
    rep = [hz.direct_sum(u, u) for u in hz.standard_rep(h, 1)]
    w0, F = hz.isotypic_decompose(h, 1, rep)
    assert len(w0) == 2 and la.rank(F) == 6


def test_isotypic_errors():
    h = hz.AbelianH((3,))
    with pytest.raises(NotWeightD):
        hz.isotypic_decompose(h, 2, hz.standard_rep(h, 1))
    eye = la.identity(2)
    z = CycNum.zeta(3)
    with pytest.raises(NotFree):
        hz.isotypic_decompose(h, 1, [la.scalar_mul(z, eye), eye, eye])


def test_linearization_checks():
    h = hz.AbelianH((3,))
    charts = hz.schrodinger_charts(h)
    psi = hz.schrodinger_cocycle(charts)
    elems = hz.default_check_elements(h)
    assert hz.linearization_cocycle_check(psi, charts, elems)
    bad = hz.perturbed_cocycle(psi, elems[1], 0, CycNum.zeta(3))
    assert not hz.linearization_cocycle_check(bad, charts, elems)


def test_group_literal_parsing():
    assert hz.AbelianH.parse("2x4").divisors == (2, 4)
    assert hz.AbelianH.parse("1").divisors == ()
    with pytest.raises(UserInputError):
        hz.AbelianH((4, 2))
    with pytest.raises(UserInputError):
        hz.AbelianH.parse("a,b")
