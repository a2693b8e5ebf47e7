"""Shared inline model builders.

These duplicate the bundled preset data on purpose: the parser tests
compare the two routes, so a regression in either one is caught.
"""

import pytest

from qchern.calculus import Calculus
from qchern.hopf import HopfAlgebra
from qchern.scalar import LAM, MU, ONE, ZERO


def make_u1_hopf():
    """Laurent polynomials on the circle group: generators u and v=u^-1."""
    one = {(): ONE}
    return HopfAlgebra(
        generators=("u", "v"),
        rules={(0, 1): one, (1, 0): one},
        coproduct={0: {((0,), (0,)): ONE}, 1: {((1,), (1,)): ONE}},
        counit={0: ONE, 1: ONE},
        antipode={0: {(1,): ONE}, 1: {(0,): ONE}},
        star={0: {(1,): ONE}, 1: {(0,): ONE}},
    )


def make_sumu2_hopf():
    """Quantum SU(2): matrix [[a, -mu*cs], [c, as]] with as=a*, cs=c*."""
    c, cs, a, as_ = 0, 1, 2, 3
    return HopfAlgebra(
        generators=("c", "cs", "a", "as"),
        rules={
            (a, c): {(c, a): MU},
            (a, cs): {(cs, a): MU},
            (as_, c): {(c, as_): ONE / MU},
            (as_, cs): {(cs, as_): ONE / MU},
            (cs, c): {(c, cs): ONE},
            (as_, a): {(): ONE, (c, cs): -ONE},
            (a, as_): {(): ONE, (c, cs): -(MU ** 2)},
        },
        coproduct={
            c: {((c,), (a,)): ONE, ((as_,), (c,)): ONE},
            cs: {((a,), (cs,)): ONE, ((cs,), (as_,)): ONE},
            a: {((a,), (a,)): ONE, ((cs,), (c,)): -MU},
            as_: {((as_,), (as_,)): ONE, ((c,), (cs,)): -MU},
        },
        counit={c: ZERO, cs: ZERO, a: ONE, as_: ONE},
        antipode={
            c: {(c,): -MU},
            cs: {(cs,): -ONE / MU},
            a: {(as_,): ONE},
            as_: {(a,): ONE},
        },
        star={c: {(cs,): ONE}, cs: {(c,): ONE},
              a: {(as_,): ONE}, as_: {(a,): ONE}},
    )


def make_u1_calculus(hopf=None):
    """The 1-dimensional calculus with germ pi(u^n) = (1 - lam^n) zeta."""
    hopf = hopf or make_u1_hopf()
    return Calculus(
        hopf,
        basis_names=("zeta",),
        pi_gen={0: {0: ONE - LAM}, 1: {0: ONE - ONE / LAM}},
        circ_gen={0: ((LAM,),), 1: ((ONE / LAM,),)},
        representatives={0: {(0,): ONE / (ONE - LAM)}},
    )


@pytest.fixture(scope="session")
def u1_hopf():
    return make_u1_hopf()


@pytest.fixture(scope="session")
def sumu2_hopf():
    return make_sumu2_hopf()


@pytest.fixture(scope="session")
def u1_calculus(u1_hopf):
    return make_u1_calculus(u1_hopf)
