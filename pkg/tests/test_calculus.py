"""Tests for first-order calculi on the 1-dimensional circle example."""

import pytest

from conftest import make_u1_calculus, make_u1_hopf
from qchern.calculus import Calculus, derive_delta
from qchern.scalar import LAM, ONE, from_fraction


@pytest.fixture(scope="module")
def cal():
    return make_u1_calculus()


def test_germ_powers(cal):
    # pi(u^n) = (1 - lam^n) zeta for positive and negative powers
    for n in range(1, 6):
        word = (0,) * n
        assert cal.pi_word(word) == {0: ONE - LAM ** n}
        wordv = (1,) * n
        assert cal.pi_word(wordv) == {0: ONE - LAM ** -n}
    assert cal.pi_word(()) == {}


def test_germ_kills_the_defining_relation(cal):
    # v + u/lam - (1 + 1/lam) has zero germ and zero counit
    rho = {(1,): ONE, (0,): ONE / LAM, (): -(ONE + ONE / LAM)}
    assert cal.pi(rho) == {}
    assert cal.hopf.counit(rho).is_zero


def test_circ_action_is_scaling(cal):
    assert cal.circ({0: ONE}, {(0,): ONE}) == {0: LAM}
    assert cal.circ({0: ONE}, {(1,): ONE}) == {0: ONE / LAM}
    # o by the unit of the algebra is the counit action
    assert cal.circ({0: ONE}, {(): ONE}) == {0: ONE}


def test_adjoint_coaction_on_forms_is_trivial(cal):
    assert cal.varpi(0) == {(0, ()): ONE}
    assert cal.v_entry(0, 0) == {(): ONE}


def test_sigma_is_identity_in_dimension_one(cal):
    assert cal.sigma(0, 0) == {(0, 0): ONE}
    assert cal.c_top(0) == {}


def test_star_form(cal):
    # zeta^* = -zeta
    assert cal.star_form(0) == {0: -ONE}
    assert cal.star_vec({0: LAM}) == {0: -LAM}


def test_quadratic_relations_span(cal):
    rel = cal.quadratic_relations()
    assert rel.rank == 1
    assert rel.contains({(0, 0): ONE})


def test_maurer_cartan_tensor(cal):
    # -(pi (x) pi) cop(rep) = -(1 - lam) zeta (x) zeta
    assert cal.mc_tensor(0) == {(0, 0): -(ONE - LAM)}


def test_validate_is_clean(cal):
    assert cal.validate(max_degree=3) == []


def test_derive_delta_canonical_zero(cal):
    report = derive_delta(cal)
    assert report.failures == []
    assert report.hermitian
    assert report.solution_dim == 1
    assert report.delta == {0: {}}


def test_broken_circ_table_is_named():
    hopf = make_u1_hopf()
    broken = Calculus(
        hopf,
        basis_names=("zeta",),
        pi_gen={0: {0: ONE - LAM}, 1: {0: ONE - ONE / LAM}},
        circ_gen={0: ((ONE,),), 1: ((ONE,),)},  # wrong module structure
        representatives={0: {(0,): ONE / (ONE - LAM)}},
    )
    failures = broken.validate(max_degree=2)
    assert any("pi is not well defined" in f for f in failures)


def test_table_shape_validation():
    hopf = make_u1_hopf()
    with pytest.raises(ValueError):
        Calculus(hopf, ("zeta",),
                 pi_gen={0: {0: ONE}},  # missing generator v
                 circ_gen={0: ((LAM,),), 1: ((ONE / LAM,),)},
                 representatives={0: {(0,): ONE}})
    with pytest.raises(ValueError):
        Calculus(hopf, ("zeta",),
                 pi_gen={0: {0: ONE}, 1: {0: ONE}},
                 circ_gen={0: ((LAM, ONE),), 1: ((ONE / LAM,),)},
                 representatives={0: {(0,): ONE}})
