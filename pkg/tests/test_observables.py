"""Observables, outcome sets, smearing kernels, and the defining identity.

The kernel for a representation is pinned down function-by-function on the
small instances, and the smearing identity is checked to hold with exact
zero residuals; the measurability and legitimacy gates are exercised with
the hand-built tribe that violates them.
"""

from fractions import Fraction

import pytest

from effecta import make_observable
from effecta.errors import (NotAKernel, NotMeasurable, PreconditionFailed,
                            SumNotOne, SumUndefined)
from effecta.observables import (Interval, OutcomeSet, kernel_independence_check,
                                 sharp_observable, smear, summable_families,
                                 verify_smearing)
from effecta.representation import (canonical_representation,
                                    extend_carrier_with_null_point,
                                    make_representation)
from effecta.states import state_polytope

from zoo_instances import boolean, chain, two_point_tribe

F = Fraction
Z = F(0)
O = F(1)
HALF = F(1, 2)


# ---------------------------------------------------------------------------
# outcome sets


def test_interval_endpoint_conventions():
    iv = Interval(Z, O, lo_closed=False, hi_closed=True)
    assert not iv.contains(Z)
    assert iv.contains(HALF)
    assert iv.contains(O)
    assert not iv.contains(F(3, 2))

    below = Interval(None, Z)
    assert below.contains(F(-5)) and below.contains(Z) and not below.contains(O)

    everything = Interval(None, None)
    assert everything.contains(F(-100)) and everything.contains(F(100))


def test_outcome_set_constructors():
    E = OutcomeSet.of_points(0, 1)
    assert E.contains(Z) and E.contains(O) and not E.contains(HALF)

    lower = OutcomeSet.interval(0, HALF, hi_closed=False)
    assert lower.contains(Z) and lower.contains(F(1, 3))
    assert not lower.contains(HALF)

    assert OutcomeSet.everything().contains(F(7, 3))
    assert not OutcomeSet().contains(Z)

    mixed = OutcomeSet((Interval(O, None, lo_closed=False),), frozenset({Z}))
    assert mixed.contains(Z) and mixed.contains(F(2)) and not mixed.contains(O)


# ---------------------------------------------------------------------------
# observables


def test_make_observable_sorts_and_resolves_labels():
    B = boolean(2)
    x = make_observable(B, (1, 0), ("{2}", "{1}"))
    assert x.support == (Z, O)
    assert x.values == (1, 2)               # sorted along with the support
    assert x.element_at(()) == B.zero
    assert x.element_at((0, 1)) == B.one
    assert x.element_of(OutcomeSet.of_points(1)) == 2
    assert x.element_of(OutcomeSet.interval(-1, HALF)) == 1
    assert x.element_of(OutcomeSet.everything()) == B.one


def test_make_observable_rejections():
    M = chain(3)
    with pytest.raises(PreconditionFailed):
        make_observable(M, (0, 1), (1,))            # misaligned
    with pytest.raises(PreconditionFailed):
        make_observable(M, (), ())                  # empty
    with pytest.raises(PreconditionFailed):
        make_observable(M, (0, 0), (1, 2))          # duplicate outcome point
    with pytest.raises(PreconditionFailed):
        make_observable(M, (0, 1), (1, 99))         # id out of range
    with pytest.raises(SumUndefined):
        make_observable(M, (0, 1), (3, 3))          # 1 + 1 undefined
    with pytest.raises(SumNotOne):
        make_observable(M, (0, 1), (1, 1))          # sums to 2/3, not 1


def test_summable_families_counts():
    assert sorted(summable_families(chain(1), 2)) == [(0, 1), (1,), (1, 0)]
    assert sorted(summable_families(boolean(2), 2)) == [
        (0, 3), (1, 2), (2, 1), (3,), (3, 0)]
    assert len(list(summable_families(chain(3), 3))) == 15


# ---------------------------------------------------------------------------
# sharp observables


def test_sharp_observable_on_boolean2():
    rep = canonical_representation(boolean(2))
    xi = sharp_observable(rep)
    assert xi(frozenset()) == 0
    assert xi(frozenset({0})) == 2          # chi_{s0} is the evaluation (1,0)
    assert xi(frozenset({1})) == 1
    assert xi(frozenset({0, 1})) == 3
    assert xi.atoms == (frozenset({0}), frozenset({1}))
    assert sharp_observable(rep) is xi      # verified once, then cached


# ---------------------------------------------------------------------------
# smearing


def test_smear_kernel_on_boolean2():
    B = boolean(2)
    rep = canonical_representation(B)
    x = make_observable(B, (0, 1), ("{1}", "{2}"))
    kernel = smear(rep, x)
    assert kernel.functions == {
        frozenset(): (Z, Z),
        frozenset({0}): (Z, O),
        frozenset({1}): (O, Z),
        frozenset({0, 1}): (O, O),
    }


def test_smear_kernel_on_chain3_is_the_constant_layer():
    C = chain(3)
    rep = canonical_representation(C)
    x = make_observable(C, (0, 1), (1, 2))
    kernel = smear(rep, x)
    assert kernel.functions[frozenset({0})] == (F(1, 3),)
    assert kernel.functions[frozenset({1})] == (F(2, 3),)


def test_smear_requires_matching_algebra():
    rep = canonical_representation(boolean(2))
    C = chain(3)
    x = make_observable(C, (0,), (3,))
    with pytest.raises(PreconditionFailed):
        smear(rep, x)


def test_smear_rejects_non_measurable_kernel():
    C = chain(3)
    tribe = two_point_tribe()
    rep = make_representation(tribe, C, (0, 1, 2, 3), (0, 1), [frozenset()])
    x = make_observable(C, (0, 1), (1, 2))
    with pytest.raises(NotMeasurable) as err:
        smear(rep, x)
    assert err.value.what == "{0}"
    assert err.value.atom == [0, 1]


def test_verify_smearing_residuals_are_exactly_zero():
    for M in (chain(3), boolean(2)):
        rep = canonical_representation(M)
        P = state_polytope(M)
        for values in summable_families(M, 2):
            x = make_observable(M, range(len(values)), values)
            kernel = smear(rep, x)
            for m in P.vertices:
                report = verify_smearing(rep, x, kernel, m)
                assert report.ok
                assert set(report.residuals.values()) == {Z}


# ---------------------------------------------------------------------------
# kernel independence


def test_alternative_kernel_leaves_integrals_unchanged():
    B = boolean(2)
    rep = canonical_representation(B)
    ext = extend_carrier_with_null_point(rep, "null")
    x = make_observable(B, (0, 1), ("{1}", "{2}"))
    m = state_polytope(B).vertices[0]
    # same kernel except at the null point, where anything goes
    assert kernel_independence_check(ext, x, m, {(0,): (Z, O, HALF)})
    assert kernel_independence_check(ext, x, m, {(0,): (Z, O, O)})


def test_illegitimate_alternatives_are_rejected():
    B = boolean(2)
    rep = canonical_representation(B)
    ext = extend_carrier_with_null_point(rep, "null")
    x = make_observable(B, (0, 1), ("{1}", "{2}"))
    m = state_polytope(B).vertices[0]
    with pytest.raises(NotAKernel):         # not a member function
        kernel_independence_check(ext, x, m, {(0,): (HALF, F(1, 4), Z)})
    with pytest.raises(NotAKernel):         # member, but maps to the wrong element
        kernel_independence_check(ext, x, m, {(0,): (Z, Z, Z)})
