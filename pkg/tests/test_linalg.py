"""Tests for exact sparse linear algebra."""

import pytest

from qchern.linalg import (Echelon, InconsistentComplexError, LinearMap,
                           cohomology_rank, kernel_basis, row_reduce, solve,
                           vec_add, vec_scale)
from qchern.scalar import LAM, MU, ONE, ZERO, from_fraction


def test_rank_of_proportional_rows():
    # rows (1, lam) and (lam, lam^2) span a line
    ech = row_reduce([{0: ONE, 1: LAM}, {0: LAM, 1: LAM ** 2}])
    assert ech.rank == 1


def test_kernel_of_functional():
    # (x, y) |-> x + lam*y has kernel spanned by (-lam, 1)
    f = LinearMap([0, 1], {0: {"out": ONE}, 1: {"out": LAM}})
    basis = kernel_basis(f)
    assert len(basis) == 1
    v = basis[0]
    # proportional to (-lam, 1)
    assert v[0] * ONE == -LAM * v[1]


def test_middle_cohomology_of_exact_complex():
    # C -> C^2 -> C with dIn = (1,0)^T and dOut = (0,1): middle cohomology 0
    d_in = LinearMap(["s"], {"s": {0: ONE}})
    d_out = LinearMap([0, 1], {1: {"t": ONE}})
    assert cohomology_rank(d_in, d_out) == 0


def test_cohomology_detects_bad_complex():
    d_in = LinearMap(["s"], {"s": {0: ONE}})
    d_out = LinearMap([0, 1], {0: {"t": ONE}})
    with pytest.raises(InconsistentComplexError):
        cohomology_rank(d_in, d_out)


def test_cohomology_with_zero_maps():
    d_out = LinearMap([0, 1], {1: {"t": ONE}})
    assert cohomology_rank(None, d_out) == 1
    d_in = LinearMap(["s"], {"s": {0: ONE}})
    assert cohomology_rank(d_in, None, dim=2) == 1
    assert cohomology_rank(None, None, dim=5) == 5


def test_reduce_gives_canonical_residual():
    ech = row_reduce([{0: ONE, 1: MU}])
    r1 = ech.reduce({0: MU, 1: MU ** 2, 2: ONE})
    r2 = ech.reduce({2: ONE})
    assert r1 == r2
    assert ech.contains({0: LAM, 1: LAM * MU})
    assert not ech.contains({0: ONE})


def test_insert_yields_canonical_residuals():
    ech = Echelon()
    ech.insert({0: ONE, 1: ONE, 2: ONE})
    ech.insert({1: ONE, 2: MU})
    ech.insert({2: ONE})
    assert ech.rank == 3
    for piv, row in ech.rows.items():
        assert row[piv] == ONE
    # the span is all of coordinates {0, 1, 2}: any vector reduces to its
    # component outside them, even when eliminations cascade
    assert ech.reduce({0: MU, 1: ONE, 2: LAM, 3: MU}) == {3: MU}
    assert ech.reduce({0: ONE, 1: -ONE}) == {}


def test_seeded_rows_join_the_span():
    ech = Echelon()
    ech.insert({0: ONE, 1: MU})
    ech.seed(2, {2: ONE, 3: LAM})
    assert ech.rank == 2
    assert ech.contains({0: LAM, 1: LAM * MU, 2: MU, 3: MU * LAM})
    with pytest.raises(ValueError):
        ech.seed(2, {2: ONE})


def test_rank_with_tuple_keys():
    u = {(0, 1): ONE, (1, 0): -MU}
    v = {(0, 1): MU, (1, 0): -(MU ** 2)}
    w = {(1, 0): ONE}
    ech = row_reduce([u, v, w])
    assert ech.rank == 2
    assert ech.contains(vec_add(u, vec_scale(MU, w)))


def test_linear_map_apply_and_rank():
    f = LinearMap([0, 1, 2], {0: {"a": ONE, "b": MU},
                              1: {"a": LAM, "b": MU * LAM},
                              2: {"b": ONE}})
    assert f.rank() == 2
    img = f.apply({0: ONE, 1: ONE})
    assert img == {"a": ONE + LAM, "b": MU + MU * LAM}
    assert len(kernel_basis(f)) == 1


def test_kernel_combination_is_exact():
    f = LinearMap([0, 1, 2, 3],
                  {0: {0: ONE, 1: LAM},
                   1: {0: MU, 1: MU * LAM},
                   2: {0: ONE},
                   3: {1: ONE}})
    basis = kernel_basis(f)
    for v in basis:
        assert not f.apply(v)
    # rank 2 map out of a 4-dimensional domain
    assert len(basis) == 2


def test_solve_finds_exact_preimage():
    f = LinearMap([0, 1, 2], {0: {"a": ONE, "b": MU},
                              1: {"a": LAM},
                              2: {"b": ONE}})
    b = {"a": MU + LAM, "b": MU ** 2 - ONE}
    x = solve(f, b)
    assert x is not None
    assert f.apply(x) == b
    # an unreachable target is reported as such
    g = LinearMap([0], {0: {"a": ONE}})
    assert solve(g, {"b": ONE}) is None
    # zero target always solvable
    assert solve(g, {}) == {}


def test_kernel_catches_late_pivot_interactions():
    # columns engineered so eliminating one pivot introduces another
    f = LinearMap([0, 1, 2, 3],
                  {0: {"p": ONE, "q": ONE},
                   1: {"q": ONE, "r": ONE},
                   2: {"r": ONE},
                   3: {"p": ONE, "r": -ONE}})
    # rank over this 3-dim codomain is 3, so the kernel is 1-dim
    basis = kernel_basis(f)
    assert len(basis) == 1
    for v in basis:
        assert not f.apply(v)


def test_column_outside_domain_rejected():
    with pytest.raises(ValueError):
        LinearMap([0], {1: {0: ONE}})


def test_pivot_prefers_low_degree():
    # the constant entry should be chosen as pivot over the high-degree one
    ech = Echelon()
    ech.insert({0: MU ** 5, 1: from_fraction(2)})
    assert set(ech.rows) == {1}


def test_stored_zero_entries_are_ignored():
    # callers may hand in vectors whose dict still carries exact zeros;
    # those must not be picked as pivots or pollute the echelon
    ech = Echelon()
    ech.insert({0: ZERO, 1: ONE})
    assert set(ech.rows) == {1}
    assert ech.reduce({0: ZERO, 1: MU}) == {}
    f = LinearMap([0, 1], {0: {"a": ZERO, "b": ONE}, 1: {"b": -ONE}})
    assert len(kernel_basis(f)) == 1
