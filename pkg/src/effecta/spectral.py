"""Spectral measures of algebra elements, their transforms, and unique
state extension from the sharp elements.

The spectral measure of an element a collects, for each value lambda that
the evaluation of a attains, the sharp element whose characteristic set is
the corresponding level set.  It reproduces the element under integration:
m(a) = sum of lambda * m(mass(lambda)), for every state m — checked
exactly everywhere it is computed, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .algebra import EffectAlgebra, iterated_sum, sharp_elements
from .errors import (
    InfeasibleExtension,
    NotAStateOnSharp,
    NotMeasurable,
    NotSharp,
    PhiEndpointViolation,
    PhiNotMonotone,
    PreconditionFailed,
    SpectralObstruction,
    SupportNotCovered,
    TheoremViolation,
)
from .linalg import solve_affine
from .lp import coordinate_bounds
from .observables import OutcomeSet
from .representation import Representation, measurable
from .states import State, is_state

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SpectralMeasure:
    algebra: EffectAlgebra
    element: int
    support: tuple[Fraction, ...]          # ascending attained values
    masses: Mapping                         # Fraction -> sharp element id

    def mass_of_set(self, E: OutcomeSet) -> int:
        """The measure of an outcome set: masses at support points inside."""
        parts = [self.masses[t] for t in self.support if E.contains(t)]
        total = iterated_sum(self.algebra, parts)
        if total is None:  # masses are pairwise summable by construction
            raise TheoremViolation("spectral masses failed to sum")
        return total

    def key(self) -> tuple:
        return (self.support, tuple(self.masses[t] for t in self.support))


def spectral_measure(rep: Representation, a: int) -> SpectralMeasure:
    """Level-set decomposition of the evaluation of a.

    Verified on first computation, then cached on the representation."""
    cached = rep._spectral.get(a)
    if cached is not None:
        return cached
    M = rep.target
    f = rep.function_of(a)
    p = len(rep.carrier)
    values = sorted({f[i] for i in range(p)})
    masses = {}
    for lam in values:
        chi = tuple(ONE if f[i] == lam else ZERO for i in range(p))
        if chi not in rep.tribe:
            raise SpectralObstruction(M.label(a), lam)
        masses[lam] = rep.h_of(chi)
    sharp = set(sharp_elements(M).members)
    for lam, mass in masses.items():
        if mass not in sharp:
            raise SpectralObstruction(M.label(a), lam)
    if iterated_sum(M, [masses[lam] for lam in values]) != M.one:
        raise TheoremViolation(
            f"masses of {M.label(a)} do not sum to 1")
    result = SpectralMeasure(M, a, tuple(values), masses)
    rep._spectral[a] = result
    return result


def spectral_integral(rep: Representation, a: int, m: State) -> Fraction:
    """sum of lambda * m(mass(lambda)); asserted equal to m(a)."""
    sm = spectral_measure(rep, a)
    total = sum((lam * m.values[sm.masses[lam]] for lam in sm.support),
                start=ZERO)
    if total != m.values[a]:
        raise TheoremViolation(
            f"spectral integral of {rep.target.label(a)} gives {total}, "
            f"but the state assigns {m.values[a]}")
    return total


@dataclass(frozen=True)
class InjectivityReport:
    ok: bool
    collision: tuple[str, str] | None

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def spectral_injectivity(rep: Representation) -> InjectivityReport:
    seen: dict[tuple, int] = {}
    M = rep.target
    for a in M.elements():
        k = spectral_measure(rep, a).key()
        if k in seen:
            return InjectivityReport(False, (M.label(seen[k]), M.label(a)))
        seen[k] = a
    return InjectivityReport(True, None)


def sharp_table(rep: Representation, a: int, E: OutcomeSet) -> int:
    """The four-way endpoint rule for sharp elements, cross-checked against
    the actual spectral measure."""
    M = rep.target
    if a not in sharp_elements(M).members:
        raise NotSharp(M.label(a))
    z = E.contains(ZERO)
    o = E.contains(ONE)
    if o and not z:
        result = a
    elif z and not o:
        result = M.comp(a)
    elif z and o:
        result = M.one
    else:
        result = M.zero
    actual = spectral_measure(rep, a).mass_of_set(E)
    if actual != result:
        raise TheoremViolation(
            f"endpoint rule gives {M.label(result)} but the measure "
            f"gives {M.label(actual)}")
    return result


# ---------------------------------------------------------------------------
# transforms


@dataclass(frozen=True)
class PhiTransform:
    """A strictly increasing rational table fixing 0 and 1."""
    table: tuple[tuple[Fraction, Fraction], ...]   # (x, phi(x)), x ascending

    def apply(self, x: Fraction) -> Fraction:
        for t, y in self.table:
            if t == x:
                return y
        raise SupportNotCovered(x)

    def domain(self) -> frozenset:
        return frozenset(t for t, _ in self.table)


def make_phi(pairs) -> PhiTransform:
    table = sorted((Fraction(x), Fraction(y)) for x, y in pairs)
    if len({x for x, _ in table}) != len(table):
        raise PhiNotMonotone(("duplicate input",))
    for (x1, y1), (x2, y2) in zip(table, table[1:]):
        if y1 >= y2:
            raise PhiNotMonotone(((str(x1), str(y1)), (str(x2), str(y2))))
    points = dict(table)
    if points.get(ZERO) != ZERO or points.get(ONE) != ONE:
        raise PhiEndpointViolation(
            "need phi(0) = 0 and phi(1) = 1 in the table")
    return PhiTransform(tuple(table))


def identity_phi(points) -> PhiTransform:
    return make_phi([(p, p) for p in set(points) | {ZERO, ONE}])


@dataclass(frozen=True)
class TransformReport:
    element: int
    support: tuple[Fraction, ...]          # transformed support
    masses: Mapping                         # transformed level -> element id
    injective: bool | None                 # None when the scan was skipped
    collision: tuple[str, str] | None
    integral_ok: bool
    state_witness: int | None              # vertex index where it first fails
    witness_values: tuple[Fraction, Fraction] | None   # (integral, m(a))


def transformed_injectivity(rep: Representation,
                            phi: PhiTransform) -> InjectivityReport:
    """Whether pushing every spectral measure through phi keeps them
    pairwise distinct."""
    M = rep.target
    seen: dict[tuple, int] = {}
    for b in M.elements():
        sb = spectral_measure(rep, b)
        for lam in sb.support:
            if lam not in phi.domain():
                raise SupportNotCovered(lam)
        k = (tuple(phi.apply(lam) for lam in sb.support),
             tuple(sb.masses[lam] for lam in sb.support))
        if k in seen:
            return InjectivityReport(False, (M.label(seen[k]), M.label(b)))
        seen[k] = b
    return InjectivityReport(True, None)


def transform_spectral(rep: Representation, a: int, phi: PhiTransform, *,
                       check_injectivity: bool = True) -> TransformReport:
    """Push the spectral measure of a through phi and report what survives.

    Injectivity of the transformed assignment is checked across the whole
    algebra (skippable when a caller checks it once for many elements);
    the integral law generally breaks for non-identity transforms, and the
    first vertex state exposing the break is returned.
    """
    M = rep.target
    base = spectral_measure(rep, a)
    for lam in base.support:
        if lam not in phi.domain():
            raise SupportNotCovered(lam)
    support = tuple(phi.apply(lam) for lam in base.support)
    masses = {phi.apply(lam): base.masses[lam] for lam in base.support}

    injective: bool | None = None
    collision = None
    if check_injectivity:
        inj = transformed_injectivity(rep, phi)
        injective = inj.ok
        collision = inj.collision

    integral_ok = True
    state_witness = None
    witness_values = None
    polytope = rep.polytope
    if polytope is None:
        raise PreconditionFailed("transform reports need the state polytope")
    for i, s in enumerate(polytope.vertices):
        integral = sum((phi.apply(lam) * s.values[base.masses[lam]]
                        for lam in base.support), start=ZERO)
        if integral != s.values[a]:
            integral_ok = False
            state_witness = i
            witness_values = (integral, s.values[a])
            break
    return TransformReport(a, support, masses, injective, collision,
                           integral_ok, state_witness, witness_values)


# ---------------------------------------------------------------------------
# state extension from the sharp elements


def validate_sharp_state(M: EffectAlgebra, m: Mapping) -> dict[int, Fraction]:
    """Check a candidate weighting of the sharp elements; normalized copy out."""
    members = sharp_elements(M).members
    vals: dict[int, Fraction] = {}
    for b in members:
        if b not in m:
            raise NotAStateOnSharp("missing value", (M.label(b),))
        v = Fraction(m[b])
        if v < 0 or v > 1:
            raise NotAStateOnSharp("value outside [0,1]", (M.label(b), str(v)))
        vals[b] = v
    if vals[M.one] != 1:
        raise NotAStateOnSharp("unit not sent to 1", (str(vals[M.one]),))
    for a in members:
        for b in members:
            c = M.add(a, b)
            if c is None:
                continue
            if c not in vals:
                raise NotAStateOnSharp(
                    "sharp sum escapes the sharp set", (M.label(a), M.label(b)))
            if vals[a] + vals[b] != vals[c]:
                raise NotAStateOnSharp(
                    "not additive", (M.label(a), M.label(b), M.label(c)))
    return vals


def extend_state(rep: Representation, m: Mapping) -> State:
    """The unique full state restricting to a given sharp-element state.

    Computed by the atom formula: the value at a is the integral of the
    evaluation of a against the measure A -> m(h(chi_A)) on the atoms.
    Both the restriction property and the agreement with the spectral form
    are asserted before anything is returned.
    """
    M = rep.target
    vals = validate_sharp_state(M, m)
    b = rep.b0()
    atom_weight = {}
    for A in b.atoms:
        xiA = rep.h_of(rep.chi(A))
        if xiA not in vals:
            raise TheoremViolation(
                f"atom image {M.label(xiA)} is not sharp")
        atom_weight[A] = vals[xiA]

    out = []
    for a in M.elements():
        f = rep.function_of(a)
        if not measurable(rep, f):
            atom = next(A for A in b.atoms if len({f[i] for i in A}) > 1)
            raise NotMeasurable(M.label(a), sorted(atom))
        total = ZERO
        for A in b.atoms:
            total += f[min(A)] * atom_weight[A]
        out.append(total)
    result = State(tuple(out))

    check = is_state(M, result)
    if not check.ok:
        raise TheoremViolation(f"extension is not a state: {check.violation}")
    for bb, v in vals.items():
        if result.values[bb] != v:
            raise TheoremViolation(
                f"extension restricts to {result.values[bb]} at "
                f"{M.label(bb)}, expected {v}")
    for a in M.elements():
        sm = spectral_measure(rep, a)
        spectral_form = sum(
            (lam * vals[sm.masses[lam]] for lam in sm.support), start=ZERO)
        if spectral_form != result.values[a]:
            raise TheoremViolation(
                f"atom form {result.values[a]} and spectral form "
                f"{spectral_form} disagree at {M.label(a)}")
    return result


@dataclass(frozen=True)
class ExtensionReport:
    unique: bool
    bounds: tuple                       # per element: (lo, hi), exact
    extension: State


def extension_uniqueness(rep: Representation, m: Mapping) -> ExtensionReport:
    """Certify that exactly one full state extends m, by exact coordinate
    bounding over the constrained state polytope."""
    M = rep.target
    vals = validate_sharp_state(M, m)
    P = rep.polytope
    if P is None or P.origin is None:
        raise PreconditionFailed("extension bounding needs the state polytope")
    pin_rows = []
    pin_rhs = []
    for b, v in sorted(vals.items()):
        row = [ZERO] * M.n
        row[b] = ONE
        pin_rows.append(row)
        pin_rhs.append(v)
    bounds = coordinate_bounds(list(P.origin), [list(d) for d in P.directions],
                               pin_rows, pin_rhs)
    if bounds is None:
        raise InfeasibleExtension(
            "no state extends the given sharp-element state")
    unique = all(lo == hi for lo, hi in bounds)
    extension = extend_state(rep, vals)
    for a in M.elements():
        lo, hi = bounds[a]
        if not lo <= extension.values[a] <= hi:
            raise TheoremViolation(
                f"computed extension leaves its own bounds at {M.label(a)}")
    return ExtensionReport(unique, tuple(bounds), extension)


# ---------------------------------------------------------------------------
# bounded search for alternative spectral measures


@dataclass(frozen=True)
class ProbeReport:
    element: int
    canonical: tuple
    alternatives: tuple       # other (support, masses) passing the integral law
    max_support: int


def spectral_uniqueness_probe(rep: Representation, a: int, *,
                              max_support: int = 3) -> ProbeReport:
    """Search for other sharp measures reproducing the integral law for a.

    Enumerates families of nonzero sharp elements summing to 1 (support
    size bounded), then solves exactly for the support values from the
    vertex-state equations.  Findings are reported, not asserted: whether
    such measures are ever non-unique is left open.
    """
    M = rep.target
    P = rep.polytope
    if P is None:
        raise PreconditionFailed("probe needs the state polytope")
    sharp = [b for b in sharp_elements(M).members if b != M.zero]
    canonical = spectral_measure(rep, a).key()
    found = []

    def families(prefix, acc, rest):
        if acc == M.one:
            yield prefix
            return
        if len(prefix) == max_support:
            return
        for i, b in enumerate(rest):
            nxt = M.add(acc, b)
            if nxt is not None:
                yield from families(prefix + (b,), nxt, rest[i + 1:])

    for fam in families((), M.zero, tuple(sharp)):
        k = len(fam)
        for perm in permutations(fam):
            rows = [[Fraction(s.values[b]) for b in perm] for s in P.vertices]
            rhs = [s.values[a] for s in P.vertices]
            sol = solve_affine(rows, rhs)
            if sol is None:
                continue
            # when underdetermined this inspects the base point only; the
            # report never claims exhaustiveness beyond the support bound
            lams, _dirs, _free = sol
            if any(l < 0 or l > 1 for l in lams):
                continue
            if any(x >= y for x, y in zip(lams, lams[1:])):
                continue
            key = (tuple(lams), tuple(perm))
            if key != canonical and key not in found:
                found.append(key)
    return ProbeReport(a, canonical, tuple(found), max_support)
