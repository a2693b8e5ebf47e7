"""Tests for the free envelope, the rewriting quotients, the extended
coaction, and the curvature-split quotient."""

import pytest

from qchern import universal
from qchern.linalg import Echelon, LinearMap, kernel_basis, row_reduce
from qchern.presets import load_preset
from qchern.scalar import LAM, MU, ONE
from qchern.universal import (CurvatureSplit, FreeEnvelope, MixedAlgebra,
                              RewriteAlgebra, UniversalError, algebra_coaction,
                              braided_symmetric_algebra, centrality_failures,
                              envelope_algebra, invariant_basis,
                              leibniz_ideal_check, omega_cohomology,
                              tensor_ideal_echelons)

TAU, ETA3, ETAP, ETAM = 0, 1, 2, 3


@pytest.fixture(scope="module")
def sumu2():
    return load_preset("sumu2-4d").calculus


@pytest.fixture(scope="module")
def u1():
    return load_preset("u1").calculus


@pytest.fixture(scope="module")
def sym_sumu2(sumu2):
    return braided_symmetric_algebra(sumu2, 8)


@pytest.fixture(scope="module")
def sym_u1(u1):
    return braided_symmetric_algebra(u1, 8)


@pytest.fixture(scope="module")
def mixed_u1(u1):
    return MixedAlgebra(u1)


@pytest.fixture(scope="module")
def split_sumu2(sumu2):
    return CurvatureSplit(sumu2, 4)


@pytest.fixture(scope="module")
def split_u1(u1):
    return CurvatureSplit(u1, 4)


def braiding_image_rows(cal):
    cols = []
    for p in range(cal.n):
        for q in range(cal.n):
            col = {(p, q): ONE}
            for (l, m), c in cal.sigma(p, q).items():
                universal._add(col, (l, m), -c)
            cols.append(col)
    return [dict(r) for r in row_reduce(cols).basis()]


def kappa_elements():
    """The three curvature-type quadratics of the 4d calculus."""
    return {
        ETAP: {(ETAP, ETA3): ONE, (ETA3, ETAP): -(MU ** 2)},
        ETAM: {(ETA3, ETAM): ONE, (ETAM, ETA3): -(MU ** 2)},
        ETA3: {(ETA3, ETA3): ONE - MU ** 2,
               (ETAP, ETAM): MU * (ONE + MU ** 2),
               (ETAM, ETAP): -(MU * (ONE + MU ** 2))},
    }


# -- the free differential envelope --


def test_free_envelope_dimensions(u1, sumu2):
    # each degree splits over a one-form letter or a curvature letter,
    # so dim(n) = n_forms * (dim(n-1) + dim(n-2))
    assert [FreeEnvelope(u1).dim(k) for k in range(7)] == \
        [1, 1, 2, 3, 5, 8, 13]
    assert [FreeEnvelope(sumu2).dim(k) for k in range(6)] == \
        [1, 4, 20, 96, 464, 2240]


def test_free_differential_squares_to_zero(sumu2):
    free = FreeEnvelope(sumu2)
    for word in free.words(3)[::17]:
        assert free.d(free.d_word(word)) == {}


def test_free_envelope_is_acyclic(u1, sumu2):
    assert omega_cohomology(u1, 4) == [1, 0, 0, 0, 0]
    assert omega_cohomology(sumu2, 4) == [1, 0, 0, 0, 0]


# -- certified rewriting quotients --


def test_rewriting_exterior_matches_echelon_model(u1, sumu2):
    from qchern.exterior import envelope_model
    for cal, top in ((u1, 4), (sumu2, 4)):
        alg = envelope_algebra(cal, top + 1)
        model = envelope_model(cal, top)
        assert alg.dims(top) == model.dims()


def test_rewriting_zero_test_matches_echelon_reduction(sumu2):
    rows = [dict(r) for r in sumu2.quadratic_relations().basis()]
    alg = envelope_algebra(sumu2, 4)
    echelons = tensor_ideal_echelons(sumu2.n, rows, 3)
    g = rows[0]
    for w in ((0,), (3,)):
        left = {wl + w: c for wl, c in g.items()}
        right = {w + wl: c for wl, c in g.items()}
        for elem in (left, right):
            assert alg.nf(elem) == {}
            assert echelons[3].reduce(dict(elem)) == {}
    probe = {(0, 1, 2): ONE}
    assert alg.nf(probe) != {}
    assert echelons[3].reduce(dict(probe)) != {}


def test_symmetric_algebra_dimensions(sym_sumu2, sym_u1):
    # the 4d quotient is flat: binomial(k + 3, 3) in each degree
    assert sym_sumu2.dims(8) == [1, 4, 10, 20, 35, 56, 84, 120, 165]
    assert sym_u1.dims(5) == [1, 1, 1, 1, 1, 1]


def test_symmetric_dimensions_match_echelon_route(sumu2, sym_sumu2):
    rows = braiding_image_rows(sumu2)
    echelons = tensor_ideal_echelons(sumu2.n, rows, 4)
    dims = [sumu2.n ** k - len(echelons[k].rows) for k in range(5)]
    assert dims == sym_sumu2.dims(4)
    # every rewrite rule is a member of the ideal
    for lhs, rhs in sym_sumu2.rules.items():
        if len(lhs) > 4:
            continue
        rel = {lhs: ONE}
        for w, c in rhs.items():
            universal._add(rel, w, -c)
        assert echelons[len(lhs)].reduce(rel) == {}


def test_symmetric_product_is_associative(sym_sumu2):
    x = {(ETAP,): ONE, (TAU,): MU}
    y = {(ETA3, ETAM): ONE}
    z = {(ETAM,): ONE - MU}
    left = sym_sumu2.product(sym_sumu2.product(x, y), z)
    right = sym_sumu2.product(x, sym_sumu2.product(y, z))
    assert left == right


def test_tau_eta_products_are_curvature_multiples(sym_sumu2):
    kappa = kappa_elements()
    coeff = -(ONE - MU ** 3) / ((ONE - MU ** 2) * (ONE + MU))
    for i in (ETAP, ETA3, ETAM):
        want = {w: coeff * c for w, c in sym_sumu2.nf(kappa[i]).items()}
        assert sym_sumu2.nf({(TAU, i): ONE}) == want
        assert sym_sumu2.nf({(i, TAU): ONE}) == want


def test_cubic_eta_kappa_exchange(sym_sumu2):
    kappa = kappa_elements()
    for i in (ETAP, ETA3, ETAM):
        for j in (ETAP, ETA3, ETAM):
            lhs = sym_sumu2.product({(i,): ONE}, kappa[j])
            rhs = sym_sumu2.product(kappa[i], {(j,): ONE})
            assert lhs == rhs


def test_factor_algebra_collapses_tau_onto_eta3(sumu2):
    rows = braiding_image_rows(sumu2)
    rows += [{(ETAP,): ONE}, {(ETAM,): ONE}]
    factor = RewriteAlgebra(sumu2.n, rows, 8, name="factor",
                            rank=(3, 2, 1, 0))
    assert factor.dims(6) == [1, 2, 2, 2, 2, 2, 2]
    coeff = -(ONE - MU ** 3) / (ONE + MU)
    want = {w: coeff * c
            for w, c in factor.nf({(ETA3, ETA3): ONE}).items()}
    assert factor.nf({(TAU, ETA3): ONE}) == want
    assert factor.nf({(ETA3, TAU): ONE}) == want


def test_rewriting_rejects_inhomogeneous_relations():
    with pytest.raises(UniversalError):
        RewriteAlgebra(2, [{(0,): ONE, (0, 1): ONE}], 3)
    with pytest.raises(UniversalError):
        RewriteAlgebra(2, [], 3, rank=(0, 0))


# -- coaction invariants --


def test_invariant_dimensions(sym_u1, sym_sumu2, u1, sumu2):
    assert [len(invariant_basis(sym_u1, u1, k)) for k in range(5)] == \
        [1, 1, 1, 1, 1]
    dims = [len(invariant_basis(sym_sumu2, sumu2, k)) for k in range(5)]
    assert dims == [1, 1, 2, 2, 3]


def test_degree_one_invariant_is_the_distinguished_form(sym_sumu2, sumu2):
    assert invariant_basis(sym_sumu2, sumu2, 1) == [{(TAU,): ONE}]


def test_invariants_coact_trivially(sym_sumu2, sumu2):
    for inv in invariant_basis(sym_sumu2, sumu2, 2):
        coaction = algebra_coaction(sym_sumu2, sumu2, inv)
        assert coaction == {(w, ()): c for w, c in inv.items()}


def test_invariants_are_central(sym_u1, sym_sumu2, u1, sumu2):
    assert centrality_failures(sym_u1, u1, 4) == []
    assert centrality_failures(sym_sumu2, sumu2, 4) == []


# -- the extended coaction on the free envelope --


def test_extended_coaction_commutes_with_the_differential(mixed_u1, sumu2):
    for degree in range(4):
        for word in mixed_u1.free.words(degree):
            assert mixed_u1.d(mixed_u1.ad_word(word)) == \
                mixed_u1.ad(mixed_u1.free.d_word(word))
    mixed = MixedAlgebra(sumu2, leg_bound=4)
    for degree in range(3):
        for word in mixed.free.words(degree)[::5]:
            assert mixed.d(mixed.ad_word(word)) == \
                mixed.ad(mixed.free.d_word(word))


def test_extended_coaction_is_multiplicative(mixed_u1):
    for left in ((0,), (1,)):
        for right in ((0,), (1,), (0, 0)):
            assert mixed_u1.ad_word(left + right) == \
                mixed_u1.mul(mixed_u1.ad_word(left),
                             mixed_u1.ad_word(right))


def test_mixed_product_is_associative(sumu2):
    mixed = MixedAlgebra(sumu2, leg_bound=4)
    x = mixed.ad_letter(1)
    y = mixed.ad_letter(2)
    z = mixed.ad_letter(sumu2.n + 3)
    assert mixed.mul(mixed.mul(x, y), z) == mixed.mul(x, mixed.mul(y, z))


def test_function_component_is_a_coaction(sumu2):
    # applying the function component twice agrees with one application
    # followed by the coproduct on the function leg
    mixed = MixedAlgebra(sumu2, leg_bound=4)
    hopf = sumu2.hopf
    for word in [(TAU,), (ETAP,), (sumu2.n + ETA3,), (ETAP, ETAM)]:
        once = mixed.ad_flat({word: ONE})
        twice = {}
        for (ow, hw), c in once.items():
            for (ow2, hw2), c2 in mixed.ad_flat({ow: ONE}).items():
                for hw3, c3 in hopf.mul({hw2: ONE}, {(): ONE}).items():
                    universal._add(twice, (ow2, hw3, hw), c * c2 * c3)
        split = {}
        for (ow, hw), c in once.items():
            for (h1, h2), c2 in hopf.split_word(hw, 2).items():
                universal._add(split, (ow, h1, h2), c * c2)
        assert twice == split


def test_circle_fixed_subalgebra_dimensions(mixed_u1):
    dims = [len(mixed_u1.daleth_basis(k)) for k in range(7)]
    assert dims == [1, 0, 2, 1, 4, 4, 9]


def test_fixed_subalgebra_is_closed_under_products(mixed_u1):
    basis2 = mixed_u1.daleth_basis(2)
    for left in basis2:
        for right in basis2:
            prod = mixed_u1.free.mul(left, right)
            image = mixed_u1.ad(prod)
            fixed = {(w, (), ()): c for w, c in prod.items()}
            assert image == fixed


def test_circle_fixed_cohomology(mixed_u1):
    # one class in each even degree; the degree-two class is the
    # curvature of the invariant one-form
    dims, reps = mixed_u1.daleth_cohomology(6)
    assert dims == [1, 0, 1, 0, 1, 0, 1]
    assert reps[2] == [{(1,): ONE}]
    assert reps[1] == [] and reps[3] == []


def test_circle_horizontality_is_the_contraction_kernel(mixed_u1, u1):
    for degree in range(5):
        words = mixed_u1.free.words(degree)
        cols = {w: mixed_u1.vertical_contraction({w: ONE}) for w in words}
        contraction = row_reduce(
            kernel_basis(LinearMap(words, cols))).basis()
        horizontal = mixed_u1.horizontal_basis(degree)
        assert [dict(r) for r in horizontal] == [dict(r) for r in contraction]


def test_circle_vertical_contraction_values(mixed_u1):
    assert mixed_u1.vertical_contraction({(0,): ONE}) == {((), 0): ONE}
    assert mixed_u1.vertical_contraction({(1,): ONE}) == {}


def test_fixed_dimensions_of_the_4d_calculus(sumu2):
    mixed = MixedAlgebra(sumu2, leg_bound=4)
    assert [len(mixed.daleth_basis(k)) for k in range(3)] == [1, 0, 2]


# -- the curvature-split quotient --


def test_split_dimensions(split_u1, split_sumu2):
    assert [len(split_u1.basis(k)) for k in range(6)] == [1, 1, 1, 1, 1, 1]
    assert [len(split_sumu2.basis(k)) for k in range(6)] == \
        [1, 4, 11, 24, 46, 80]


def test_split_differential_identities(split_u1, split_sumu2):
    assert split_u1.identity_failures() == []
    assert split_sumu2.identity_failures() == []


def test_projection_is_a_section_of_the_basis(split_sumu2):
    for degree in range(5):
        for key in split_sumu2.basis(degree):
            assert split_sumu2.project(split_sumu2.preimage(key)) == \
                {key: ONE}


def test_leibniz_ideal_report_circle(u1, split_u1):
    report = leibniz_ideal_check(u1, 4, split=split_u1)
    assert report.ok()
    assert report.free_dims == [1, 1, 2, 3, 5]
    assert report.ideal_ranks == [0, 0, 1, 2, 4]
    assert report.quotient_dims == [1, 1, 1, 1, 1]
    assert report.quotient_cohomology == [1, 0, 0]


def test_leibniz_ideal_report_4d(sumu2, split_sumu2):
    report = leibniz_ideal_check(sumu2, 4, split=split_sumu2)
    assert report.ok()
    assert report.free_dims == [1, 4, 20, 96, 464]
    assert report.ideal_ranks == [0, 0, 9, 72, 418]
    assert report.quotient_dims == [1, 4, 11, 24, 46]
    # one quotient class in degree two, matched through the long exact
    # sequence by the ideal class one degree up
    assert report.quotient_cohomology == [1, 0, 1]
    assert report.ideal_cohomology == [0, 1]
    assert report.sequence_consistent == [True, True]
