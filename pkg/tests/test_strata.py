import pytest

from degenab.cyclotomic import ONE, CycNum
from degenab.degeneration import DegenerationData
from degenab.errors import NotCodimOne, UserInputError
from degenab.lattice import Sublattice
from degenab.strata import build_strata, local_model_codim1, unit_str


def canonical(gram, y, **kw):
    g = len(gram)
    return DegenerationData.canonical(gram, Sublattice.diagonal([y] * g) if isinstance(y, int) else Sublattice(y), **kw)


def test_rank1_polygon():
    r = build_strata(canonical([[2]], 3))
    assert r.counts == (3, 3) and r.euler() == 0
    assert r.component_types() == {"P1": 3}
    assert all(m.presentation() == "k[zeta1,zeta2]/(zeta1*zeta2)" for m in r.local_models)


@pytest.mark.parametrize("l,m", [(1, 1), (2, 3), (3, 3), (1, 4)])
def test_square_components_and_shifts(l, m):
    alpha = CycNum.zeta(11)
    d = canonical([[2, 0], [0, 2]], [[l, 0], [0, m]], unit_matrix=[[0, 1], [1, 0]], alpha=alpha)
    r = build_strata(d)
    assert r.counts == (l * m, 2 * l * m, l * m)
    assert r.component_types() == {"P1xP1": l * m}
    powers = {(gl.generator, gl.character): gl.alpha_power for gl in r.gluings}
    assert powers == {((l, 0), 0): 0, ((l, 0), 1): 2 * l, ((0, m), 0): 2 * m, ((0, m), 1): 0}
    for gl in r.gluings:
        assert gl.shift == alpha**gl.alpha_power


def test_square_without_unit_has_trivial_shifts():
    r = build_strata(canonical([[2, 0], [0, 2]], 2))
    assert all(gl.shift == ONE and gl.alpha_power is None for gl in r.gluings)


def test_hexagonal_strata():
    r = build_strata(canonical([[2, -1], [-1, 2]], 1))
    assert r.counts == (1, 3, 2)
    assert r.component_types() == {"P2": 2}
    assert r.flags and "triangle" in r.flags[0]
    assert not r.very_ample_flag
    assert build_strata(canonical([[2, -1], [-1, 2]], 3)).very_ample_flag


def test_local_models_are_nodes():
    d = canonical([[2, -1], [-1, 2]], 2)
    r = build_strata(d)
    assert len(r.local_models) == r.counts[1]
    for mdl in r.local_models:
        assert mdl.torus_dim == 1 and len(mdl.branches) == 2
        assert mdl.presentation() == "k[t1^±1][zeta1,zeta2]/(zeta1*zeta2)"


def test_local_model_errors():
    d = canonical([[2, 0], [0, 2]], 1)
    with pytest.raises(NotCodimOne):
        local_model_codim1(d, [(0, 0)])
    with pytest.raises(UserInputError):
        build_strata(canonical([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]], 1))


def test_outputs():
    r = build_strata(canonical([[2]], 2))
    js = r.to_json()
    assert js["counts"] == [2, 2] and js["components"] == 2
    dot = r.to_dot()
    assert dot.startswith("digraph strata {") and dot.count("->") == len(r.closure)


def test_unit_str():
    assert unit_str(CycNum.zeta(7, 4)) == "z7^4"
    assert unit_str(CycNum.zeta(5)) == "z5"
    assert unit_str(ONE) == "1"
