"""Tests for presented Hopf *-algebras and their rewriting engine."""

import pytest

from conftest import make_sumu2_hopf, make_u1_hopf
from qchern.hopf import HopfAlgebra, PresentationError, add, scale
from qchern.scalar import MU, ONE, ZERO, from_fraction


@pytest.fixture(scope="module")
def u1():
    return make_u1_hopf()


@pytest.fixture(scope="module")
def sumu2():
    return make_sumu2_hopf()


def test_u1_normal_form(u1):
    uv = u1.mul(u1.gen("u"), u1.gen("v"))
    assert uv == u1.unit()
    x = u1.product(u1.gen("u"), u1.gen("u"), u1.gen("v"))
    assert x == u1.gen("u")


def test_u1_normal_word_counts(u1):
    assert [len(u1.normal_words(k)) for k in range(5)] == [1, 2, 2, 2, 2]


def test_u1_validates(u1):
    assert u1.validate(max_degree=3, samples=1500) == []


def test_u1_adjoint_coaction_trivial(u1):
    # on a commutative Hopf algebra every element is ad-invariant
    for name in ("u", "v"):
        x = u1.gen(name)
        sq = u1.mul(x, x)
        assert u1.adjoint_coaction(sq) == {(sq_w, ()): c
                                           for sq_w, c in sq.items()}


def test_sumu2_defining_relation(sumu2):
    # as*a + cs*c = 1
    x = add(sumu2.mul(sumu2.gen("as"), sumu2.gen("a")),
            sumu2.mul(sumu2.gen("cs"), sumu2.gen("c")))
    assert x == sumu2.unit()


def test_sumu2_commutation(sumu2):
    a, c = sumu2.gen("a"), sumu2.gen("c")
    lhs = sumu2.product(a, a, c)
    rhs = scale(MU ** 2, sumu2.product(c, a, a))
    assert lhs == rhs


def test_sumu2_normal_word_counts(sumu2):
    # graded dimensions (k+1)^2, the Peter-Weyl filtration of SU(2)
    assert [len(sumu2.normal_words(k)) for k in range(5)] == [1, 4, 9, 16, 25]


def test_sumu2_validates(sumu2):
    assert sumu2.validate(max_degree=3, samples=1500) == []


def test_sumu2_antipode_squared_scales(sumu2):
    # kappa^2 rescales the off-diagonal generators by mu^(+-2)
    ksq_c = sumu2.antipode(sumu2.antipode(sumu2.gen("c")))
    assert ksq_c == scale(MU ** 2, sumu2.gen("c"))
    ksq_cs = sumu2.antipode(sumu2.antipode(sumu2.gen("cs")))
    assert ksq_cs == scale(MU ** -2, sumu2.gen("cs"))
    assert sumu2.antipode(sumu2.antipode(sumu2.gen("a"))) == sumu2.gen("a")


def test_adjoint_coaction_is_coaction(sumu2):
    # (id (x) counit) ad = id and the coaction square commutes
    for name in ("a", "c"):
        x = sumu2.gen(name)
        ad = sumu2.adjoint_coaction(x)
        back = {}
        for (w1, w2), coeff in ad.items():
            back = add(back, scale(coeff * sumu2.counit({w2: ONE}),
                                   {w1: ONE}))
        assert back == x
        # (ad (x) id) ad == (id (x) coproduct) ad
        left = {}
        for (w1, w2), coeff in ad.items():
            for (v1, v2), d in sumu2.adjoint_coaction({w1: ONE}).items():
                key = (v1, v2, w2)
                s = left.get(key, ZERO) + coeff * d
                if s.is_zero:
                    left.pop(key, None)
                else:
                    left[key] = s
        right = {}
        for (w1, w2), coeff in ad.items():
            for (v1, v2), d in sumu2.coproduct({w2: ONE}).items():
                key = (w1, v1, v2)
                s = right.get(key, ZERO) + coeff * d
                if s.is_zero:
                    right.pop(key, None)
                else:
                    right[key] = s
        assert left == right


def test_character_is_ad_invariant(sumu2):
    # mu*a + (1/mu)*as is fixed by the adjoint coaction
    chi = add(scale(MU, sumu2.gen("a")), scale(ONE / MU, sumu2.gen("as")))
    ad = sumu2.adjoint_coaction(chi)
    expected = {(w, ()): c for w, c in chi.items()}
    assert ad == expected


def test_split_legs_agree(sumu2):
    x = sumu2.mul(sumu2.gen("a"), sumu2.gen("c"))
    t3 = sumu2.split(x, 3)
    # expanding either leg of the coproduct gives the same three legs
    for expand_first in (True, False):
        expanded = {}
        for (w1, w2), coeff in sumu2.coproduct(x).items():
            inner = sumu2.coproduct({(w1 if expand_first else w2): ONE})
            for (v1, v2), d in inner.items():
                key = (v1, v2, w2) if expand_first else (w1, v1, v2)
                s = expanded.get(key, ZERO) + coeff * d
                if s.is_zero:
                    expanded.pop(key, None)
                else:
                    expanded[key] = s
        assert expanded == t3


def test_rules_must_decrease():
    with pytest.raises(PresentationError):
        HopfAlgebra(
            generators=("x", "y"),
            rules={(0, 1): {(1, 0): ONE}},  # increases in deglex
            coproduct={0: {((0,), (0,)): ONE}, 1: {((1,), (1,)): ONE}},
            counit={0: ONE, 1: ONE},
            antipode={0: {(0,): ONE}, 1: {(1,): ONE}},
            star={0: {(0,): ONE}, 1: {(1,): ONE}},
        )


def test_confluence_probe_catches_broken_rules():
    # aa -> b and ab -> c overlap on aab with two distinct normal forms
    h = HopfAlgebra(
        generators=("a", "b", "c"),
        rules={(0, 0): {(1,): ONE}, (0, 1): {(2,): ONE}},
        coproduct={g: {((g,), (g,)): ONE} for g in range(3)},
        counit={g: ONE for g in range(3)},
        antipode={g: {(g,): ONE} for g in range(3)},
        star={g: {(g,): ONE} for g in range(3)},
    )
    failures = h._check_confluence(samples=4000, seed=0)
    assert failures and "confluence" in failures[0]


def test_broken_counit_is_named(sumu2):
    broken = HopfAlgebra(
        generators=sumu2.generators,
        rules=sumu2.rules,
        coproduct=sumu2.coproduct_table,
        counit={0: ONE, 1: ZERO, 2: ONE, 3: ONE},  # eps(c) wrong
        antipode=sumu2.antipode_table,
        star=sumu2.star_table,
    )
    failures = broken.validate(max_degree=1, samples=200)
    assert any("counit" in f for f in failures)


def test_element_str_is_deterministic(sumu2):
    x = add(scale(MU, sumu2.gen("a")), sumu2.mul(sumu2.gen("c"),
                                                 sumu2.gen("cs")))
    assert sumu2.element_str(x) == "(mu)*a + (1)*c*cs"
    assert sumu2.element_str({}) == "0"
    assert sumu2.element_str(sumu2.unit()) == "(1)*1"


def test_power_and_counit(sumu2):
    x = sumu2.power(sumu2.gen("a"), 3)
    assert sumu2.counit(x) == ONE
    y = sumu2.mul(sumu2.gen("c"), sumu2.gen("a"))
    assert sumu2.counit(y) == ZERO
    assert sumu2.power(sumu2.gen("c"), 0) == sumu2.unit()
    with pytest.raises(ValueError):
        sumu2.power(sumu2.gen("c"), -1)
