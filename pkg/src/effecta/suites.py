"""Theorem-check suites over a single algebra document.

Each suite turns one aspect of the library into a flat list of records:
axioms, refinement, sharp structure, states, representation
characterizations, smearing, spectral measures, and state extension.
Everything that fails carries a reproducible witness; everything is
deterministic for a fixed seed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import EffectAlgebra, check_rdp, sharp_elements
from .errors import (
    AxiomViolation,
    BooleanStructureFailure,
    EffectaError,
    EmptyStateSpace,
    NonSeparatingStates,
    NonUniqueSupplement,
    NotASigmaAlgebra,
    NotMeasurable,
    OrderNotAntisymmetric,
    RdpRequired,
    TheoremViolation,
)
from .observables import (
    OutcomeSet,
    kernel_independence_check,
    make_observable,
    smear,
    summable_families,
    verify_smearing,
)
from .report import FAIL, PASS, SKIP, Record
from .representation import (
    Representation,
    canonical_representation,
    check_ideal_congruence,
    check_regular,
    extend_carrier_with_null_point,
    measurable,
    sandwich,
    sharp_image,
)
from .serialize import algebra_from_obj, frac_to_str
from .spectral import (
    extension_uniqueness,
    identity_phi,
    make_phi,
    sharp_table,
    spectral_integral,
    spectral_injectivity,
    spectral_measure,
    spectral_uniqueness_probe,
    transform_spectral,
    transformed_injectivity,
)
from .states import (
    State,
    is_sigma_additive,
    is_state,
    seeded_mixtures,
    separating,
    state_polytope,
)

SUITE_NAMES = ("axioms", "rdp", "sharp", "states", "representation",
               "smearing", "spectral", "extension")

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

_SUPPORTS = {1: (ONE,), 2: (ZERO, ONE), 3: (ZERO, HALF, ONE)}


def resolve_suites(selector: str) -> tuple[str, ...]:
    if selector == "all":
        return SUITE_NAMES
    if selector not in SUITE_NAMES:
        raise ValueError(f"unknown suite {selector!r}")
    return (selector,)


_GATED = ("representation", "smearing", "spectral", "extension")


def check_document(doc, instance: str, suites: Sequence[str], seed: int,
                   max_size: int | None = None) -> list[Record]:
    """Validate the document, then run every requested suite.

    The state polytope and the canonical representation are computed once
    and shared by every suite that needs them."""
    records: list[Record] = []
    try:
        M = algebra_from_obj(doc, max_size=max_size)
        if "axioms" in suites:
            records.extend(_axiom_records(M, instance))
    except (AxiomViolation, NonUniqueSupplement, OrderNotAntisymmetric) as exc:
        if "axioms" in suites:
            records.append(Record("axioms", instance, "validate", FAIL,
                                  witness=_witness_of(exc), detail=str(exc)))
        for s in suites:
            if s != "axioms":
                records.append(Record(s, instance, "requires-valid-algebra",
                                      FAIL, detail=str(exc)))
        return records

    polytope = None
    if "states" in suites or any(s in suites for s in _GATED):
        polytope = state_polytope(M)

    shared: dict = {}

    def rep_for(suite: str):
        if "rep" not in shared:
            try:
                shared["rep"] = canonical_representation(M, polytope=polytope)
                shared["exc"] = None
            except (RdpRequired, EmptyStateSpace, NonSeparatingStates) as exc:
                shared["rep"] = None
                shared["exc"] = exc
        if shared["rep"] is None:
            exc = shared["exc"]
            return None, [Record(suite, instance, "canonical-representation",
                                 FAIL, witness=_witness_of(exc),
                                 detail=str(exc))]
        return shared["rep"], None

    runners = {
        "rdp": lambda: run_rdp(M, instance),
        "sharp": lambda: run_sharp(M, instance),
        "states": lambda: run_states(M, instance, seed, polytope=polytope),
        "representation": lambda: run_representation(M, instance,
                                                     prepared=rep_for),
        "smearing": lambda: run_smearing(M, instance, seed, prepared=rep_for),
        "spectral": lambda: run_spectral(M, instance, seed, prepared=rep_for),
        "extension": lambda: run_extension(M, instance, seed,
                                           prepared=rep_for),
    }
    for s in suites:
        if s == "axioms":
            continue
        records.extend(runners[s]())
    return records


def _witness_of(exc: EffectaError):
    for attr in ("witnesses", "witness", "pair", "candidates"):
        w = getattr(exc, attr, None)
        if w is not None:
            return _jsonable(w)
    return None


def _jsonable(value):
    if isinstance(value, Fraction):
        return frac_to_str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    return value


def _fn_str(f) -> str:
    return "(" + ",".join(frac_to_str(v) for v in f) + ")"


# ---------------------------------------------------------------------------
# individual suites


def _axiom_records(M: EffectAlgebra, instance: str) -> list[Record]:
    records = [Record("axioms", instance, "validate", PASS,
                      detail=f"{M.n} elements")]
    bad = next((a for a in M.elements() if M.comp(M.comp(a)) != a), None)
    records.append(Record(
        "axioms", instance, "double-complement",
        PASS if bad is None else FAIL,
        witness=None if bad is None else M.label(bad)))
    diff_bad = None
    for a in M.elements():
        for b in M.elements():
            if M.leq(a, b):
                c = M.minus(b, a)
                if c is None or M.add(a, c) != b:
                    diff_bad = (M.label(a), M.label(b))
                    break
        if diff_bad:
            break
    records.append(Record(
        "axioms", instance, "difference-unique",
        PASS if diff_bad is None else FAIL, witness=_jsonable(diff_bad)))
    return records


def run_rdp(M: EffectAlgebra, instance: str) -> list[Record]:
    r = check_rdp(M)
    return [Record("rdp", instance, "refinement",
                   PASS if r.holds else FAIL,
                   witness=None if r.holds else list(r.witness_labels()))]


def run_sharp(M: EffectAlgebra, instance: str) -> list[Record]:
    rdp = check_rdp(M).holds
    try:
        sh = sharp_elements(M, rdp=rdp)
    except BooleanStructureFailure as exc:
        return [Record("sharp", instance, "boolean-laws", FAIL,
                       witness=_jsonable(exc.witnesses), detail=str(exc))]
    records = [Record("sharp", instance, "members", PASS,
                      witness=[M.label(a) for a in sh.members])]
    if sh.boolean_checked:
        records.append(Record("sharp", instance, "boolean-laws", PASS,
                              detail=f"{len(sh.members)} sharp elements"))
    else:
        records.append(Record("sharp", instance, "boolean-laws", SKIP,
                              detail="requires the refinement property"))
    return records


def run_states(M: EffectAlgebra, instance: str, seed: int, *,
               polytope=None) -> list[Record]:
    P = state_polytope(M) if polytope is None else polytope
    records = [Record("states", instance, "non-empty",
                      PASS if not P.is_empty else FAIL,
                      detail=f"{len(P.vertices)} extremal states")]
    if P.is_empty:
        for check in ("vertex-validity", "mixture-validity",
                      "sigma-additive", "separating"):
            records.append(Record("states", instance, check, SKIP,
                                  detail="no states"))
        return records

    bad = None
    for i, s in enumerate(P.vertices):
        chk = is_state(M, s)
        if not chk.ok:
            bad = [i, chk.violation.kind, _jsonable(chk.violation.witness)]
            break
    records.append(Record("states", instance, "vertex-validity",
                          PASS if bad is None else FAIL, witness=bad))

    bad = None
    for i, s in enumerate(seeded_mixtures(P, 10, seed)):
        chk = is_state(M, s)
        if not chk.ok:
            bad = [i, chk.violation.kind]
            break
    records.append(Record("states", instance, "mixture-validity",
                          PASS if bad is None else FAIL, witness=bad))

    records.append(Record(
        "states", instance, "sigma-additive",
        PASS if all(is_sigma_additive(M, s) for s in P.vertices) else FAIL,
        detail="degenerate on finite carriers"))

    if separating(P):
        records.append(Record("states", instance, "separating", PASS))
    else:
        seen = {}
        pair = None
        for a in M.elements():
            v = tuple(s.values[a] for s in P.vertices)
            if v in seen:
                pair = [M.label(seen[v]), M.label(a)]
                break
            seen[v] = a
        records.append(Record("states", instance, "separating", FAIL,
                              witness=pair))
    return records


def _canonical_or_records(M: EffectAlgebra, instance: str, suite: str,
                          prepared=None):
    if prepared is not None:
        return prepared(suite)
    try:
        return canonical_representation(M), None
    except (RdpRequired, EmptyStateSpace, NonSeparatingStates) as exc:
        return None, [Record(suite, instance, "canonical-representation",
                             FAIL, witness=_witness_of(exc), detail=str(exc))]


def run_representation(M: EffectAlgebra, instance: str, *,
                       prepared=None) -> list[Record]:
    rep, gate = _canonical_or_records(M, instance, "representation", prepared)
    if rep is None:
        return gate
    records = [Record(
        "representation", instance, "canonical-representation", PASS,
        detail=f"{len(rep.carrier)} points, {len(rep.tribe.functions)} functions")]

    try:
        b = rep.b0()
        records.append(Record("representation", instance, "b0-sigma-laws",
                              PASS, detail=f"{len(b.sets)} sets, "
                                           f"{len(b.atoms)} atoms"))
        records.append(Record("representation", instance, "b0-equals-s0",
                              PASS if b.sets == b.s0 else FAIL))
    except NotASigmaAlgebra as exc:
        records.append(Record("representation", instance, "b0-sigma-laws",
                              FAIL, witness=_jsonable(exc.witnesses),
                              detail=str(exc)))
        return records

    reg = check_regular(rep)
    records.append(Record("representation", instance, "regular",
                          PASS if reg.ok else FAIL,
                          witness=None if reg.ok else _fn_str(reg.witness)))
    cong = check_ideal_congruence(rep)
    records.append(Record(
        "representation", instance, "ideal-congruence",
        PASS if cong.ok else FAIL,
        witness=None if cong.ok else [_fn_str(f) for f in cong.witness]))
    try:
        img = sharp_image(rep)
        records.append(Record(
            "representation", instance, "sharp-image",
            PASS if img.ok else FAIL,
            detail=f"hypotheses: measurable={img.all_measurable}, "
                   f"min-closed={img.min_closed}"))
    except TheoremViolation as exc:
        records.append(Record("representation", instance, "sharp-image",
                              FAIL, detail=str(exc)))

    non_meas = next((f for f in rep.tribe.functions
                     if not measurable(rep, f)), None)
    records.append(Record(
        "representation", instance, "measurability",
        PASS if non_meas is None else FAIL,
        witness=None if non_meas is None else _fn_str(non_meas)))

    bad = None
    try:
        zero_fn = rep.function_of(M.zero)
        one_fn = rep.function_of(M.one)
        for c in M.elements():
            s = sandwich(rep, zero_fn, one_fn, c)
            cf = rep.function_of(c)
            if sandwich(rep, cf, cf, c) != cf:
                bad = M.label(c)
                break
            if rep.h_of(s) != c:
                bad = M.label(c)
                break
    except TheoremViolation as exc:
        bad = str(exc)
    records.append(Record("representation", instance, "sandwich-squeeze",
                          PASS if bad is None else FAIL, witness=bad))
    return records


def _zoo_observables(M: EffectAlgebra, max_parts: int = 3):
    for fam in summable_families(M, max_parts):
        yield make_observable(M, _SUPPORTS[len(fam)], fam)


def _test_states(M: EffectAlgebra, P, seed: int, mixtures: int) -> list[State]:
    return list(P.vertices) + seeded_mixtures(P, mixtures, seed)


def run_smearing(M: EffectAlgebra, instance: str, seed: int, *,
                 prepared=None) -> list[Record]:
    rep, gate = _canonical_or_records(M, instance, "smearing", prepared)
    if rep is None:
        return gate
    states = _test_states(M, rep.polytope, seed, 10)
    records = []
    first_bad = None
    n_obs = 0
    try:
        for x in _zoo_observables(M):
            n_obs += 1
            kernel = smear(rep, x)
            for i, m in enumerate(states):
                rr = verify_smearing(rep, x, kernel, m)
                if not rr.ok and first_bad is None:
                    key, res = next((k, v) for k, v in rr.residuals.items()
                                    if v != 0)
                    first_bad = [
                        [M.label(a) for a in x.values],
                        sorted(frac_to_str(x.support[j]) for j in key),
                        i, frac_to_str(res)]
        records.append(Record("smearing", instance, "kernel-measurable", PASS,
                              detail=f"{n_obs} observables"))
    except NotMeasurable as exc:
        records.append(Record("smearing", instance, "kernel-measurable",
                              FAIL, detail=str(exc)))
        return records
    records.append(Record(
        "smearing", instance, "eq-residual-zero",
        PASS if first_bad is None else FAIL, witness=first_bad,
        detail=f"{n_obs} observables x {len(states)} states"))

    # alternative kernels on a carrier extended by one negligible point
    ext = extend_carrier_with_null_point(rep, "null")
    x = next(iter(_zoo_observables(M, 2)))
    kernel = smear(ext, x)
    alts = {}
    for key, f in kernel.functions.items():
        alts[key] = f[:-1] + (HALF,)
    ok = kernel_independence_check(ext, x, states[0], alts)
    records.append(Record("smearing", instance, "kernel-independence",
                          PASS if ok else FAIL,
                          detail="alternatives differ at the null point"))
    return records


_SHARP_E_SETS = (
    ("empty", OutcomeSet()),
    ("point-0", OutcomeSet.of_points(0)),
    ("point-1", OutcomeSet.of_points(1)),
    ("both-points", OutcomeSet.of_points(0, 1)),
    ("lower-half-open", OutcomeSet.interval(0, HALF, hi_closed=False)),
    ("upper-half", OutcomeSet.interval(HALF, 1, lo_closed=False)),
    ("everything", OutcomeSet.everything()),
)


def run_spectral(M: EffectAlgebra, instance: str, seed: int, *,
                 prepared=None) -> list[Record]:
    rep, gate = _canonical_or_records(M, instance, "spectral", prepared)
    if rep is None:
        return gate
    states = _test_states(M, rep.polytope, seed, 10)
    records = []

    bad = None
    try:
        for a in M.elements():
            for i, m in enumerate(states):
                spectral_integral(rep, a, m)
    except TheoremViolation as exc:
        bad = [M.label(a), i, str(exc)]
    except EffectaError as exc:
        bad = [M.label(a), str(exc)]
    records.append(Record("spectral", instance, "integral-identity",
                          PASS if bad is None else FAIL, witness=bad,
                          detail=f"{M.n} elements x {len(states)} states"))

    inj = spectral_injectivity(rep)
    records.append(Record("spectral", instance, "injectivity",
                          PASS if inj.ok else FAIL,
                          witness=None if inj.ok else list(inj.collision)))

    bad = None
    sharp = sharp_elements(M).members
    try:
        for a in sharp:
            for name, E in _SHARP_E_SETS:
                sharp_table(rep, a, E)
    except TheoremViolation as exc:
        bad = [M.label(a), name, str(exc)]
    records.append(Record("spectral", instance, "sharp-table",
                          PASS if bad is None else FAIL, witness=bad,
                          detail=f"{len(sharp)} sharp elements x "
                                 f"{len(_SHARP_E_SETS)} outcome sets"))

    bad = None
    for a in M.elements():
        sm = spectral_measure(rep, a)
        pts = sm.support
        for mask in range(1 << len(pts)):
            E = frozenset(p for i, p in enumerate(pts) if mask >> i & 1)
            for mask2 in range(1 << len(pts)):
                F_ = frozenset(p for i, p in enumerate(pts) if mask2 >> i & 1)
                if E & F_:
                    continue
                lhs = M.add(sm.mass_of_set(OutcomeSet.of_points(*E)),
                            sm.mass_of_set(OutcomeSet.of_points(*F_)))
                rhs = sm.mass_of_set(OutcomeSet.of_points(*(E | F_)))
                if lhs != rhs:
                    bad = [M.label(a), sorted(map(frac_to_str, E)),
                           sorted(map(frac_to_str, F_))]
                    break
            if bad:
                break
        if bad:
            break
    records.append(Record("spectral", instance, "measure-additivity",
                          PASS if bad is None else FAIL, witness=bad))

    all_values = sorted({v for f in rep.tribe.functions for v in f}
                        | {ZERO, ONE})
    phi_id = identity_phi(all_values)
    bad = None
    if not transformed_injectivity(rep, phi_id).ok:
        bad = "injectivity lost"
    else:
        for a in M.elements():
            tr = transform_spectral(rep, a, phi_id, check_injectivity=False)
            if not tr.integral_ok:
                bad = M.label(a)
                break
    records.append(Record("spectral", instance, "phi-identity",
                          PASS if bad is None else FAIL, witness=bad))

    # a strictly increasing non-identity transform: injectivity must
    # survive, the integral law must survive exactly on sharp elements
    phi_sq = make_phi([(v, v * v) for v in all_values])
    bad = None
    broken = 0
    first_break = None
    inj_sq = transformed_injectivity(rep, phi_sq)
    if not inj_sq.ok:
        bad = ["injectivity lost", list(inj_sq.collision)]
    else:
        for a in M.elements():
            tr = transform_spectral(rep, a, phi_sq, check_injectivity=False)
            if a in sharp and not tr.integral_ok:
                bad = [M.label(a), "sharp element broke the integral"]
                break
            if not tr.integral_ok:
                broken += 1
                if first_break is None:
                    first_break = [M.label(a), tr.state_witness,
                                   [frac_to_str(v) for v in tr.witness_values]]
    records.append(Record(
        "spectral", instance, "phi-square", PASS if bad is None else FAIL,
        witness=bad if bad is not None else first_break,
        detail=f"{broken} non-sharp elements break the integral"))
    return records


def run_extension(M: EffectAlgebra, instance: str, seed: int, *,
                  prepared=None) -> list[Record]:
    rep, gate = _canonical_or_records(M, instance, "extension", prepared)
    if rep is None:
        return gate
    sharp = sharp_elements(M).members
    states = _test_states(M, rep.polytope, seed, 3)
    records = []

    bad_round = None
    bad_unique = None
    try:
        for i, m in enumerate(states):
            restricted = {b: m.values[b] for b in sharp}
            report = extension_uniqueness(rep, restricted)
            if report.extension.values != m.values:
                if bad_round is None:
                    a = next(a for a in M.elements()
                             if report.extension.values[a] != m.values[a])
                    bad_round = [i, M.label(a),
                                 frac_to_str(report.extension.values[a]),
                                 frac_to_str(m.values[a])]
            if not report.unique:
                if bad_unique is None:
                    a = next(a for a in M.elements()
                             if report.bounds[a][0] != report.bounds[a][1])
                    bad_unique = [i, M.label(a),
                                  [frac_to_str(v) for v in report.bounds[a]]]
    except EffectaError as exc:
        bad_round = bad_round or [i, str(exc)]
        bad_unique = bad_unique or [i, str(exc)]
    records.append(Record("extension", instance, "roundtrip",
                          PASS if bad_round is None else FAIL,
                          witness=bad_round,
                          detail=f"{len(states)} states restricted to "
                                 f"{len(sharp)} sharp elements"))
    records.append(Record("extension", instance, "uniqueness",
                          PASS if bad_unique is None else FAIL,
                          witness=bad_unique))

    if M.n <= 16:
        alternatives = []
        for a in M.elements():
            pr = spectral_uniqueness_probe(rep, a)
            for supp, masses in pr.alternatives:
                alternatives.append(
                    [M.label(a), [frac_to_str(v) for v in supp],
                     [M.label(b) for b in masses]])
        records.append(Record(
            "extension", instance, "spectral-probe", PASS,
            witness=alternatives or None,
            detail=("no alternative sharp measures with support <= 3"
                    if not alternatives else
                    f"{len(alternatives)} alternative measures found")))
    return records
