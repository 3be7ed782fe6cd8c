"""Spectral measures, transforms, and unique state extension.

The measures of the smallest instances are frozen value-by-value; the
square transform on the three-chain is the standard counterexample showing
that non-identity transforms break the integral law while keeping the
transformed assignment injective.
"""

from fractions import Fraction

import pytest

from effecta import extend_state, extension_uniqueness, spectral_integral, spectral_measure
from effecta.errors import (InfeasibleExtension, NotAStateOnSharp, NotSharp,
                            PhiEndpointViolation, PhiNotMonotone,
                            SupportNotCovered)
from effecta.observables import OutcomeSet
from effecta.representation import Representation, canonical_representation
from effecta.spectral import (identity_phi, make_phi, sharp_table,
                              spectral_injectivity, spectral_uniqueness_probe,
                              transform_spectral, transformed_injectivity,
                              validate_sharp_state)
from effecta.states import StatePolytope, state_polytope

from zoo_instances import boolean, chain

F = Fraction
Z = F(0)
O = F(1)
THIRD = F(1, 3)


# ---------------------------------------------------------------------------
# the measures themselves


def test_chain3_measures_are_one_point():
    rep = canonical_representation(chain(3))
    for a, lam in enumerate((Z, THIRD, F(2, 3), O)):
        sm = spectral_measure(rep, a)
        assert sm.support == (lam,)
        assert sm.masses == {lam: 3}        # all mass on the unit
        assert spectral_measure(rep, a) is sm       # cached after verification


def test_boolean2_measures():
    rep = canonical_representation(boolean(2))
    assert spectral_measure(rep, 0).key() == ((Z,), (3,))
    assert spectral_measure(rep, 1).key() == ((Z, O), (2, 1))
    assert spectral_measure(rep, 2).key() == ((Z, O), (1, 2))
    assert spectral_measure(rep, 3).key() == ((O,), (3,))

    sm = spectral_measure(rep, 2)
    assert sm.mass_of_set(OutcomeSet.of_points(1)) == 2
    assert sm.mass_of_set(OutcomeSet.of_points(0)) == 1
    assert sm.mass_of_set(OutcomeSet.everything()) == 3
    assert sm.mass_of_set(OutcomeSet()) == 0


def test_integral_reproduces_every_state_value():
    for M in (chain(3), boolean(2)):
        rep = canonical_representation(M)
        P = state_polytope(M)
        for a in M.elements():
            for m in P.vertices:
                assert spectral_integral(rep, a, m) == m.values[a]


def test_assignment_is_injective():
    for M in (chain(3), boolean(2)):
        rep = canonical_representation(M)
        report = spectral_injectivity(rep)
        assert report.ok and report.collision is None


# ---------------------------------------------------------------------------
# the endpoint rule for sharp elements


def test_sharp_table_four_cases():
    B = boolean(2)
    rep = canonical_representation(B)
    a = 1
    assert sharp_table(rep, a, OutcomeSet.of_points(1)) == a
    assert sharp_table(rep, a, OutcomeSet.of_points(0)) == B.comp(a)
    assert sharp_table(rep, a, OutcomeSet.of_points(0, 1)) == B.one
    assert sharp_table(rep, a, OutcomeSet()) == B.zero
    # interval variants hit the same four branches
    assert sharp_table(rep, a, OutcomeSet.interval(F(1, 2), 2)) == a
    assert sharp_table(rep, a, OutcomeSet.interval(0, F(1, 2))) == B.comp(a)


def test_sharp_table_rejects_fuzzy_elements():
    rep = canonical_representation(chain(3))
    with pytest.raises(NotSharp):
        sharp_table(rep, 1, OutcomeSet.of_points(1))


# ---------------------------------------------------------------------------
# transforms


def test_make_phi_rejections():
    with pytest.raises(PhiNotMonotone):
        make_phi([(0, 0), (0, F(1, 2)), (1, 1)])            # duplicate input
    with pytest.raises(PhiNotMonotone):
        make_phi([(0, 0), (THIRD, F(1, 2)), (F(2, 3), F(1, 4)), (1, 1)])
    with pytest.raises(PhiEndpointViolation):
        make_phi([(0, F(1, 8)), (1, 1)])
    with pytest.raises(PhiEndpointViolation):
        make_phi([(0, 0), (F(1, 2), F(3, 4))])              # no value at 1


def test_identity_transform_changes_nothing():
    rep = canonical_representation(chain(3))
    phi = identity_phi([THIRD, F(2, 3)])
    report = transform_spectral(rep, 1, phi)
    assert report.support == (THIRD,)
    assert report.integral_ok and report.state_witness is None
    assert report.injective


def test_square_transform_breaks_the_integral_law():
    rep = canonical_representation(chain(3))
    square = make_phi([(0, 0), (THIRD, F(1, 9)), (F(2, 3), F(4, 9)), (1, 1)])
    report = transform_spectral(rep, 1, square)
    assert report.support == (F(1, 9),)
    assert report.masses == {F(1, 9): 3}
    # still injective across the whole algebra ...
    assert report.injective and report.collision is None
    # ... yet the unique state integrates to 1/9 where it assigns 1/3
    assert not report.integral_ok
    assert report.state_witness == 0
    assert report.witness_values == (F(1, 9), THIRD)


def test_transform_requires_support_coverage():
    rep = canonical_representation(chain(3))
    sparse = make_phi([(0, 0), (1, 1)])
    with pytest.raises(SupportNotCovered):
        transform_spectral(rep, 1, sparse)
    with pytest.raises(SupportNotCovered):
        transformed_injectivity(rep, sparse)


def test_injectivity_scan_can_be_shared():
    rep = canonical_representation(boolean(2))
    phi = make_phi([(0, 0), (1, 1)])
    shared = transformed_injectivity(rep, phi)
    assert shared.ok
    report = transform_spectral(rep, 1, phi, check_injectivity=False)
    assert report.injective is None and report.collision is None
    assert transform_spectral(rep, 1, phi).injective == shared.ok


# ---------------------------------------------------------------------------
# states on the sharp elements, and their unique extensions


def test_validate_sharp_state_rejections():
    B = boolean(2)
    with pytest.raises(NotAStateOnSharp) as err:
        validate_sharp_state(B, {0: Z, 1: Z, 2: O})
    assert err.value.reason == "missing value"
    with pytest.raises(NotAStateOnSharp) as err:
        validate_sharp_state(B, {0: Z, 1: F(3, 2), 2: O, 3: O})
    assert err.value.reason == "value outside [0,1]"
    with pytest.raises(NotAStateOnSharp) as err:
        validate_sharp_state(B, {0: Z, 1: Z, 2: F(1, 2), 3: F(1, 2)})
    assert err.value.reason == "unit not sent to 1"
    with pytest.raises(NotAStateOnSharp) as err:
        validate_sharp_state(B, {0: Z, 1: THIRD, 2: THIRD, 3: O})
    assert err.value.reason == "not additive"


def test_extension_fills_in_the_fuzzy_layers():
    C = chain(3)
    rep = canonical_representation(C)
    # the sharp elements are only 0 and 1, yet they pin the whole state
    ext = extend_state(rep, {0: Z, 3: O})
    assert ext.values == (Z, THIRD, F(2, 3), O)
    report = extension_uniqueness(rep, {0: Z, 3: O})
    assert report.unique
    assert report.bounds == ((Z, Z), (THIRD, THIRD), (F(2, 3), F(2, 3)), (O, O))
    assert report.extension.values == ext.values


def test_extension_restricts_to_its_input():
    B = boolean(2)
    rep = canonical_representation(B)
    given = {0: Z, 1: F(1, 4), 2: F(3, 4), 3: O}
    ext = extend_state(rep, given)
    assert ext.values == (Z, F(1, 4), F(3, 4), O)
    report = extension_uniqueness(rep, given)
    assert report.unique
    assert all(lo == hi == ext.values[a] for a, (lo, hi) in enumerate(report.bounds))


def test_infeasible_extension_is_detected():
    B = boolean(2)
    rep = canonical_representation(B)
    # same tribe and h, but a parametrization whose base point pins s({}) at 1/2
    doctored = StatePolytope(B, rep.polytope.vertices, rep.polytope.dimension,
                             [], [], [F(1, 2), Z, Z, O], [], [])
    fake = Representation(rep.tribe, B, rep.h, rep.omega0, rep.ideal,
                          polytope=doctored)
    with pytest.raises(InfeasibleExtension):
        extension_uniqueness(fake, {0: Z, 1: Z, 2: O, 3: O})


def test_uniqueness_probe_finds_no_alternatives():
    for M in (chain(3), boolean(2)):
        rep = canonical_representation(M)
        for a in M.elements():
            probe = spectral_uniqueness_probe(rep, a)
            assert probe.canonical == spectral_measure(rep, a).key()
            assert probe.alternatives == ()
