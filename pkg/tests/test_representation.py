"""Function-system representations: tribes, the canonical construction,
the sharp-set sigma-algebra, and the regularity / congruence / sharp-image
characterizations.

The hand-built tribes exercise exactly the behaviours the canonical
construction can never show: a non-measurable member over a trivial
sigma-algebra, a union-closure failure, and regularity / congruence
breaking for a deliberately bad choice of distinguished points or ideal.
"""

from fractions import Fraction

import pytest

from effecta import (EffectTribe, Representation, canonical_representation,
                     tribe_to_algebra, validate_tribe)
from effecta.errors import (EmptyStateSpace, NonSeparatingStates,
                            NotASigmaAlgebra, PreconditionFailed, RdpRequired,
                            RepresentationViolation, TribeAxiomViolation)
from effecta.representation import (check_ideal_congruence, check_regular,
                                    compute_b0, extend_carrier_with_null_point,
                                    make_representation, measurable, sandwich,
                                    sharp_image, support)
from effecta.states import StatePolytope

from zoo_instances import (boolean, chain, diamond, mo2, non_sigma_tribe,
                           two_point_tribe)

F = Fraction
Z = F(0)
O = F(1)
HALF = F(1, 2)


# ---------------------------------------------------------------------------
# tribes


def test_validate_tribe_accepts_and_sorts():
    tribe = validate_tribe(["p", "q"], [(O, O), (Z, Z), (HALF, HALF)])
    assert tribe.carrier == ("p", "q")
    assert tribe.functions == ((Z, Z), (HALF, HALF), (O, O))
    assert (HALF, HALF) in tribe
    assert (F(1, 3), Z) not in tribe


@pytest.mark.parametrize("carrier, fns, reason", [
    (["p", "p"], [(Z, Z), (O, O)], "carrier labels must be distinct"),
    (["p", "q"], [(Z, Z), (O, O), (Z,)], "function arity != carrier size"),
    (["p", "q"], [(Z, Z), (O, O), (F(3, 2), Z)], "values outside [0,1]"),
    (["p", "q"], [(Z, Z)], "constant 1 missing"),
    (["p", "q"], [(Z, Z), (O, O), (F(1, 3), Z)], "complement not closed"),
    (["p", "q"], [(Z, Z), (O, O), (F(1, 4), Z), (F(3, 4), O)],
     "sum not closed"),
])
def test_validate_tribe_rejections(carrier, fns, reason):
    with pytest.raises(TribeAxiomViolation) as err:
        validate_tribe(carrier, fns)
    assert err.value.reason == reason


def test_tribe_to_algebra_roundtrip():
    tribe = two_point_tribe()
    M = tribe_to_algebra(tribe)
    assert [M.label(a) for a in M.elements()] == [
        "(0,0)", "(1/3,2/3)", "(2/3,1/3)", "(1,1)"]
    assert M.label(M.zero) == "(0,0)" and M.label(M.one) == "(1,1)"
    # complements pair up the two middle functions
    assert M.label(M.comp(1)) == "(2/3,1/3)"
    # the only nontrivial sum is the complement pair
    assert M.add(1, 2) == M.one
    assert M.add(1, 1) is None


# ---------------------------------------------------------------------------
# the canonical representation and its gates


def test_canonical_representation_of_boolean2():
    B = boolean(2)
    rep = canonical_representation(B)
    assert rep.carrier == ("s0", "s1")
    assert rep.tribe.functions == ((Z, Z), (Z, O), (O, Z), (O, O))
    assert rep.h == (0, 1, 2, 3)            # evaluation is bijective here
    assert rep.omega0 == frozenset({0, 1})
    assert rep.ideal == frozenset({frozenset()})
    b0 = rep.b0()
    assert b0.sets == (frozenset(), frozenset({0}), frozenset({1}),
                       frozenset({0, 1}))
    assert b0.s0 == b0.sets
    assert b0.atoms == (frozenset({0}), frozenset({1}))
    assert b0.atom_of(1) == frozenset({1})
    assert all(measurable(rep, f) for f in rep.tribe.functions)


def test_canonical_representation_of_chain3_has_one_point():
    rep = canonical_representation(chain(3))
    assert rep.carrier == ("s0",)
    assert rep.tribe.functions == ((Z,), (F(1, 3),), (F(2, 3),), (O,))
    assert rep.h == (0, 1, 2, 3)
    b0 = rep.b0()
    assert b0.sets == (frozenset(), frozenset({0}))
    assert b0.atoms == (frozenset({0}),)
    assert all(measurable(rep, f) for f in rep.tribe.functions)


def test_canonical_representation_gates():
    with pytest.raises(RdpRequired) as err:
        canonical_representation(mo2())
    assert err.value.witness == ("h0:{1}", "h0:{2}", "h1:{1}", "h1:{2}")

    with pytest.raises(NonSeparatingStates) as err:
        canonical_representation(diamond(), enforce_rdp=False)
    assert err.value.pair == ("h0:1", "h1:1")

    M = chain(2)
    hollow = StatePolytope(M, (), -1, [], [], None, None, None)
    with pytest.raises(EmptyStateSpace):
        canonical_representation(M, polytope=hollow, enforce_rdp=False)


def test_make_representation_structural_checks():
    B = boolean(2)
    rep = canonical_representation(B)
    tribe, h = rep.tribe, rep.h
    with pytest.raises(RepresentationViolation):
        make_representation(tribe, B, h[:-1], {0, 1}, [frozenset()])
    with pytest.raises(RepresentationViolation):        # constant map, not onto
        make_representation(tribe, B, (0, 0, 0, 3), {0, 1}, [frozenset()])
    # swapping the middle layers of a three-chain breaks 1/3 + 1/3 = 2/3
    C = chain(3)
    crep = canonical_representation(C)
    with pytest.raises(RepresentationViolation):        # sum not preserved
        make_representation(crep.tribe, C, (0, 2, 1, 3), {0}, [frozenset()])
    with pytest.raises(RepresentationViolation):        # empty set missing
        make_representation(tribe, B, h, {0, 1}, [])
    with pytest.raises(RepresentationViolation):        # not downward closed
        make_representation(tribe, B, h, {0, 1}, [frozenset(), frozenset({0, 1})])


# ---------------------------------------------------------------------------
# the sharp-set sigma-algebra on hand-built tribes


def test_union_closure_failure_is_reported():
    tribe = non_sigma_tribe()
    M = tribe_to_algebra(tribe)
    rep = make_representation(tribe, M, range(M.n), range(4), [frozenset()])
    with pytest.raises(NotASigmaAlgebra) as err:
        compute_b0(rep)
    assert err.value.law == "union"
    assert err.value.witnesses == ([0, 1], [1, 2])


def test_two_point_tribe_over_chain3():
    tribe = two_point_tribe()
    M = chain(3)
    rep = make_representation(tribe, M, (0, 1, 2, 3), (0, 1), [frozenset()])
    b0 = rep.b0()
    # only the trivial sets have characteristic members
    assert b0.sets == (frozenset(), frozenset({0, 1}))
    assert b0.atoms == (frozenset({0, 1}),)
    # the middle layer is not constant on the single atom
    assert not measurable(rep, (F(1, 3), F(2, 3)))
    report = sharp_image(rep)
    assert report.ok and report.image == ("0", "3") == report.sharp
    assert not report.all_measurable and not report.min_closed
    assert check_regular(rep).ok
    assert check_ideal_congruence(rep).ok


def test_support_and_measurable_preconditions():
    rep = canonical_representation(boolean(2))
    assert support((Z, HALF, Z, O), frozenset({0, 1, 2})) == frozenset({1})
    with pytest.raises(PreconditionFailed):
        measurable(rep, (HALF, HALF))


# ---------------------------------------------------------------------------
# regularity and congruence, positive and negative


def test_bad_omega0_breaks_regularity_and_congruence():
    tribe = validate_tribe(
        ["p", "q"], [(Z, Z), (Z, F(2, 3)), (O, F(1, 3)), (O, O)])
    M = tribe_to_algebra(tribe)
    assert [M.label(a) for a in M.elements()] == [
        "(0,0)", "(0,2/3)", "(1,1/3)", "(1,1)"]
    # omega0 sees only the first point, where (0,2/3) vanishes
    rep = make_representation(tribe, M, range(M.n), [0], [frozenset()])
    reg = check_regular(rep)
    assert not reg.ok and reg.witness == (Z, F(2, 3))
    cong = check_ideal_congruence(rep)
    assert not cong.ok and cong.witness == ((Z, Z), (Z, F(2, 3)))


def test_null_point_extension_outside_omega0():
    rep = canonical_representation(boolean(2))
    ext = extend_carrier_with_null_point(rep, "null")
    assert ext.carrier == ("s0", "s1", "null")
    assert len(ext.tribe.functions) == 12           # 4 members x 3 grid values
    assert ext.omega0 == rep.omega0
    assert ext.ideal == rep.ideal
    assert check_regular(ext).ok
    assert check_ideal_congruence(ext).ok


def test_null_point_extension_inside_omega0():
    rep = canonical_representation(boolean(2))
    ext = extend_carrier_with_null_point(rep, "null", null_in_omega0=True)
    assert ext.omega0 == frozenset({0, 1, 2})
    assert ext.ideal == frozenset({frozenset(), frozenset({2})})
    assert check_regular(ext).ok
    assert check_ideal_congruence(ext).ok
    # keeping the old ideal instead breaks the congruence at the new point
    bad = make_representation(ext.tribe, ext.target, ext.h, ext.omega0,
                              [frozenset()])
    cong = check_ideal_congruence(bad)
    assert not cong.ok
    assert cong.witness == ((Z, Z, Z), (Z, Z, HALF))


def test_null_point_grid_preconditions():
    rep = canonical_representation(boolean(2))
    with pytest.raises(PreconditionFailed):
        extend_carrier_with_null_point(rep, "x", (Z, F(1, 4), O))
    with pytest.raises(PreconditionFailed):
        extend_carrier_with_null_point(rep, "x", (Z, F(2, 5), F(3, 5), O))
    with pytest.raises(PreconditionFailed):
        extend_carrier_with_null_point(rep, "s0")


# ---------------------------------------------------------------------------
# sandwich


def test_sandwich_squeeze():
    B = boolean(2)
    rep = canonical_representation(B)
    lo, hi = (Z, Z), (O, O)
    for c in B.elements():
        s = sandwich(rep, lo, hi, c)
        assert rep.h_of(s) == c
        assert all(x <= y <= z for x, y, z in zip(lo, s, hi))
    # a tight squeeze pins the function completely
    assert sandwich(rep, (Z, O), (Z, O), 1) == (Z, O)


def test_sandwich_preconditions():
    rep = canonical_representation(boolean(2))
    with pytest.raises(PreconditionFailed):
        sandwich(rep, (HALF, HALF), (O, O), 1)      # bound not a member
    with pytest.raises(PreconditionFailed):
        sandwich(rep, (O, O), (Z, Z), 1)            # bounds out of order
    with pytest.raises(PreconditionFailed):
        sandwich(rep, (Z, O), (O, O), 2)            # c not above h(lower bound)
