"""Function-algebra representations of a finite effect algebra.

A representation carries the algebra onto a system of rational fuzzy
functions over a finite point set: the canonical one evaluates every
element on the extremal states.  This module builds and validates such
triples, computes the sharp-set sigma-algebra of the function system, and
checks the regularity / congruence / sharp-image characterizations that
make the smearing and spectral machinery sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import EffectAlgebra, check_rdp, sharp_elements
from .errors import (
    EmptyStateSpace,
    NonSeparatingStates,
    NotASigmaAlgebra,
    PreconditionFailed,
    RdpRequired,
    RepresentationViolation,
    SizeLimitExceeded,
    TheoremViolation,
    TribeAxiomViolation,
)
from .states import StatePolytope, state_polytope

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_CARRIER = 16      # subset scans are exponential in the carrier size

FnValues = tuple[Fraction, ...]


def _fmt(values: Iterable[Fraction]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


# ---------------------------------------------------------------------------
# effect-tribes


@dataclass(frozen=True)
class EffectTribe:
    """A finite system of fuzzy functions closed under the effect operations.

    ``functions`` is sorted lexicographically, which fixes every later
    iteration order.  Closure under pointwise limits of monotone sequences
    is automatic here: a monotone sequence drawn from a finite set is
    eventually constant, so its limit is already a member.
    """

    carrier: tuple[str, ...]
    functions: tuple[FnValues, ...]

    def index_of(self, values: FnValues) -> int | None:
        # functions is sorted, but linear scan is fine at these sizes
        try:
            return self.functions.index(tuple(values))
        except ValueError:
            return None

    def __contains__(self, values) -> bool:
        return self.index_of(tuple(values)) is not None


def validate_tribe(carrier: Sequence[str], functions: Iterable[Sequence[Fraction]]) -> EffectTribe:
    carrier = tuple(carrier)
    if len(set(carrier)) != len(carrier):
        raise TribeAxiomViolation("carrier labels must be distinct", (carrier,))
    p = len(carrier)
    fns = sorted({tuple(Fraction(v) for v in f) for f in functions})
    for f in fns:
        if len(f) != p:
            raise TribeAxiomViolation("function arity != carrier size", (_fmt(f),))
        if any(v < 0 or v > 1 for v in f):
            raise TribeAxiomViolation("values outside [0,1]", (_fmt(f),))
    members = set(fns)
    one = tuple([ONE] * p)
    if one not in members:
        raise TribeAxiomViolation("constant 1 missing", ())
    for f in fns:
        g = tuple(ONE - v for v in f)
        if g not in members:
            raise TribeAxiomViolation("complement not closed", (_fmt(f),))
    for f in fns:
        for g in fns:
            if all(x <= ONE - y for x, y in zip(f, g)):
                s = tuple(x + y for x, y in zip(f, g))
                if s not in members:
                    raise TribeAxiomViolation(
                        "sum not closed", (_fmt(f), _fmt(g), _fmt(s)))
    return EffectTribe(carrier, tuple(fns))


def tribe_to_algebra(tribe: EffectTribe, *, max_size: int | None = None) -> EffectAlgebra:
    """The tribe as an effect algebra under the pointwise partial sum.

    Definedness of f + g is pointwise compatibility (f <= 1 - g); the
    closure axioms guarantee the result is a member, so the operation
    table is total on compatible pairs.
    """
    from .algebra import validate_effect_algebra

    labels = [_fmt(f) for f in tribe.functions]
    lbl = dict(zip(tribe.functions, labels))
    p = len(tribe.carrier)
    zero = lbl[tuple([ZERO] * p)]
    one = lbl[tuple([ONE] * p)]
    sums = []
    for f in tribe.functions:
        for g in tribe.functions:
            if all(x <= ONE - y for x, y in zip(f, g)):
                s = tuple(x + y for x, y in zip(f, g))
                sums.append((lbl[f], lbl[g], lbl[s]))
    return validate_effect_algebra(labels, zero, one, sums, max_size=max_size)


def tribe_sharp_functions(tribe: EffectTribe) -> set[FnValues]:
    """Members f whose meet with 1-f in the tribe order exists and is 0.

    In the pointwise order this is exactly: no nonzero member lies below
    both f and 1-f.  (If one does, the meet is nonzero or fails to exist;
    either way f is not sharp.)
    """
    p = len(tribe.carrier)
    zero = tuple([ZERO] * p)
    out = set()
    for f in tribe.functions:
        comp = tuple(ONE - v for v in f)
        sharp = True
        for g in tribe.functions:
            if g == zero:
                continue
            if all(x <= y for x, y in zip(g, f)) and all(x <= y for x, y in zip(g, comp)):
                sharp = False
                break
        if sharp:
            out.add(f)
    return out


# ---------------------------------------------------------------------------
# representations


class Representation:
    """A triple (carrier, tribe, h) with h a sum-preserving surjection onto
    the target algebra, plus the distinguished sub-carrier omega0 and a
    declared ideal of negligible subsets of omega0."""

    def __init__(self, tribe: EffectTribe, target: EffectAlgebra,
                 h: Sequence[int], omega0: frozenset[int],
                 ideal: frozenset[frozenset[int]],
                 polytope: StatePolytope | None = None):
        self.tribe = tribe
        self.target = target
        self.h = tuple(h)
        self.omega0 = omega0
        self.ideal = ideal
        self.polytope = polytope
        self._first_preimage: dict[int, int] = {}
        for i, a in enumerate(self.h):
            self._first_preimage.setdefault(a, i)
        self._b0: SigmaAlgebraB0 | None = None
        self._xi = None    # cache for the verified sharp-set observable
        self._spectral: dict[int, object] = {}   # verified measures per element

    # -- basic access -------------------------------------------------------

    @property
    def carrier(self) -> tuple[str, ...]:
        return self.tribe.carrier

    def h_of(self, values: FnValues) -> int:
        i = self.tribe.index_of(tuple(values))
        if i is None:
            raise PreconditionFailed(f"{_fmt(values)} is not a member function")
        return self.h[i]

    def function_of(self, a: int) -> FnValues:
        """A member function mapping to a (the first in sorted order)."""
        try:
            return self.tribe.functions[self._first_preimage[a]]
        except KeyError:
            raise PreconditionFailed(
                f"element {self.target.label(a)} has no preimage") from None

    def chi(self, points: frozenset[int]) -> FnValues:
        return tuple(ONE if i in points else ZERO
                     for i in range(len(self.carrier)))

    def b0(self) -> "SigmaAlgebraB0":
        if self._b0 is None:
            self._b0 = compute_b0(self)
        return self._b0


def make_representation(tribe: EffectTribe, target: EffectAlgebra,
                        h: Sequence[int], omega0: Iterable[int],
                        ideal: Iterable[Iterable[int]],
                        polytope: StatePolytope | None = None) -> Representation:
    """Validate and assemble; every structural requirement is checked."""
    h = tuple(h)
    if len(h) != len(tribe.functions):
        raise RepresentationViolation("h must cover every member function")
    if set(h) != set(range(target.n)):
        missing = sorted(set(range(target.n)) - set(h))
        raise RepresentationViolation(
            "h is not surjective; missing "
            + ", ".join(target.label(a) for a in missing))
    p = len(tribe.carrier)
    one = tuple([ONE] * p)
    zero = tuple([ZERO] * p)
    by_fn = dict(zip(tribe.functions, h))
    if by_fn[one] != target.one or by_fn[zero] != target.zero:
        raise RepresentationViolation("h must send 1 to 1 and 0 to 0")
    for f, a in by_fn.items():
        for g, b in by_fn.items():
            if all(x <= ONE - y for x, y in zip(f, g)):
                s = tuple(x + y for x, y in zip(f, g))
                c = target.add(a, b)
                if c is None or c != by_fn[s]:
                    raise RepresentationViolation(
                        f"h does not preserve the sum at {_fmt(f)} + {_fmt(g)}")
    omega0 = frozenset(omega0)
    if not omega0 <= set(range(p)):
        raise RepresentationViolation("omega0 must be a set of carrier indices")
    ideal = frozenset(frozenset(A) for A in ideal)
    if frozenset() not in ideal:
        raise RepresentationViolation("the ideal must contain the empty set")
    for A in ideal:
        if not A <= omega0:
            raise RepresentationViolation("ideal members must lie inside omega0")
        for B in ideal:
            if A | B not in ideal:
                raise RepresentationViolation("ideal must be closed under unions")
        for x in A:
            if A - {x} not in ideal:
                raise RepresentationViolation("ideal must be downward closed")
    return Representation(tribe, target, h, omega0, ideal, polytope)


def canonical_representation(M: EffectAlgebra, *,
                             polytope: StatePolytope | None = None,
                             enforce_rdp: bool = True) -> Representation:
    """Evaluate every element on the extremal states.

    The carrier is the vertex list of the state polytope in its canonical
    order; the function system is exactly the evaluation vectors; h sends
    each evaluation back to its element.  Gate order: refinement property,
    then non-emptiness, then separation (h would otherwise be ill-defined).
    """
    if enforce_rdp:
        rdp = check_rdp(M)
        if not rdp.holds:
            raise RdpRequired(rdp.witness_labels())
    P = polytope if polytope is not None else state_polytope(M)
    if P.is_empty:
        raise EmptyStateSpace(f"no states on {M.n}-element algebra")
    evals = {}
    for a in M.elements():
        v = tuple(s.values[a] for s in P.vertices)
        if v in evals:
            raise NonSeparatingStates((M.label(evals[v]), M.label(a)))
        evals[v] = a
    carrier = tuple(f"s{i}" for i in range(len(P.vertices)))
    tribe = validate_tribe(carrier, evals.keys())
    h = tuple(evals[f] for f in tribe.functions)
    rep = make_representation(
        tribe, M, h, range(len(carrier)), [frozenset()], polytope=P)
    return rep


def support(f: Sequence[Fraction], omega0: frozenset[int]) -> frozenset[int]:
    """The points of omega0 where f does not vanish."""
    return frozenset(i for i in omega0 if f[i] != 0)


# ---------------------------------------------------------------------------
# the sharp-set sigma-algebra


@dataclass(frozen=True)
class SigmaAlgebraB0:
    """Subsets whose characteristic functions are sharp members.

    ``s0`` is the larger family of all subsets with a characteristic
    function in the tribe (sharp or not); for pointwise tribes the two
    families coincide, and whenever the tribe has the refinement property
    the equality is asserted.  ``atoms`` partition the carrier; each atom
    is the intersection of all members containing one of its points.
    """

    sets: tuple[frozenset[int], ...]
    s0: tuple[frozenset[int], ...]
    atoms: tuple[frozenset[int], ...]

    def __contains__(self, A) -> bool:
        return frozenset(A) in self.sets

    def atom_of(self, point: int) -> frozenset[int]:
        for atom in self.atoms:
            if point in atom:
                return atom
        raise KeyError(point)


def _sorted_sets(family: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(family, key=lambda A: (len(A), sorted(A))))


def compute_b0(rep: Representation, *, tribe_rdp: bool | None = None) -> SigmaAlgebraB0:
    tribe = rep.tribe
    p = len(tribe.carrier)
    if p > MAX_CARRIER:
        raise SizeLimitExceeded(f"carrier of {p} points exceeds {MAX_CARRIER}")
    member = set(tribe.functions)
    s0 = []
    for mask in range(1 << p):
        points = frozenset(i for i in range(p) if mask >> i & 1)
        if rep.chi(points) in member:
            s0.append(points)
    sharp = tribe_sharp_functions(tribe)
    b0 = [A for A in s0 if rep.chi(A) in sharp]

    full = frozenset(range(p))
    in_b0 = set(b0)
    if frozenset() not in in_b0:
        raise NotASigmaAlgebra("empty-set", ())
    if full not in in_b0:
        raise NotASigmaAlgebra("whole-space", ())
    for A in b0:
        if full - A not in in_b0:
            raise NotASigmaAlgebra("complement", (sorted(A),))
    for A in b0:
        for B in b0:
            if A | B not in in_b0:
                raise NotASigmaAlgebra("union", (sorted(A), sorted(B)))

    if set(b0) != set(s0):
        # decide whether the equality theorem applies before letting it pass
        if tribe_rdp is None:
            tribe_rdp = check_rdp(tribe_to_algebra(tribe)).holds
        if tribe_rdp:
            raise TheoremViolation(
                "sharp-characteristic family differs from the characteristic "
                "family on a refinement-property tribe")

    atoms = []
    for i in range(p):
        atom = full
        for A in b0:
            if i in A:
                atom &= A
        if atom not in atoms:
            atoms.append(atom)
    return SigmaAlgebraB0(_sorted_sets(b0), _sorted_sets(s0), _sorted_sets(atoms))


def measurable(rep: Representation, f: Sequence[Fraction]) -> bool:
    """Is f constant on every atom of the sharp-set sigma-algebra?"""
    f = tuple(Fraction(v) for v in f)
    if f not in rep.tribe:
        raise PreconditionFailed(f"{_fmt(f)} is not a member function")
    for atom in rep.b0().atoms:
        vals = {f[i] for i in atom}
        if len(vals) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# sandwich and the characterization checks


def sandwich(rep: Representation, f: Sequence[Fraction], g: Sequence[Fraction],
             c: int) -> FnValues:
    """A member s with f <= s <= g pointwise and h(s) = c.

    Built as max(f, min(g, s1)) from any preimage s1 of c; membership and
    the image are asserted, since both are theorem-backed for the
    representations in scope.
    """
    f = tuple(Fraction(v) for v in f)
    g = tuple(Fraction(v) for v in g)
    if f not in rep.tribe or g not in rep.tribe:
        raise PreconditionFailed("sandwich bounds must be member functions")
    if any(x > y for x, y in zip(f, g)):
        raise PreconditionFailed("need f <= g pointwise")
    M = rep.target
    if not (M.leq(rep.h_of(f), c) and M.leq(c, rep.h_of(g))):
        raise PreconditionFailed("need h(f) <= c <= h(g) in the target")
    s1 = rep.function_of(c)
    s = tuple(max(x, min(y, z)) for x, y, z in zip(f, g, s1))
    if s not in rep.tribe:
        raise TheoremViolation(f"sandwich {_fmt(s)} escaped the function system")
    if rep.h_of(s) != c:
        raise TheoremViolation("sandwich maps to the wrong element")
    return s


@dataclass(frozen=True)
class RegularityReport:
    ok: bool
    witness: FnValues | None

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def check_regular(rep: Representation) -> RegularityReport:
    """h(f) = 0 exactly when the characteristic function of the omega0
    support of f is a member mapping to 0; first failure is returned."""
    zero = rep.target.zero
    member = set(rep.tribe.functions)
    for f in rep.tribe.functions:
        lhs = rep.h_of(f) == zero
        chi = rep.chi(support(f, rep.omega0))
        rhs = chi in member and rep.h_of(chi) == zero
        if lhs != rhs:
            return RegularityReport(False, f)
    return RegularityReport(True, None)


@dataclass(frozen=True)
class CongruenceReport:
    ok: bool
    witness: tuple[FnValues, FnValues] | None

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def check_ideal_congruence(rep: Representation) -> CongruenceReport:
    """h identifies two members exactly when they differ on a negligible set."""
    fns = rep.tribe.functions
    for i, f in enumerate(fns):
        for g in fns[i:]:
            same = rep.h_of(f) == rep.h_of(g)
            diff = frozenset(
                w for w in rep.omega0 if f[w] != g[w])
            if same != (diff in rep.ideal):
                return CongruenceReport(False, (f, g))
    return CongruenceReport(True, None)


@dataclass(frozen=True)
class SharpImageReport:
    ok: bool
    image: tuple[str, ...]               # labels of h(chi_A), A in B0
    sharp: tuple[str, ...]               # labels of the target's sharp set
    all_measurable: bool                 # theorem hypothesis 1
    min_closed: bool                     # theorem hypothesis 2

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def sharp_image(rep: Representation) -> SharpImageReport:
    """Does h map the sharp-set sigma-algebra onto the sharp elements?

    The two hypothesis flags record whether every member is measurable and
    whether the system is closed under min(f, 1-f); when both hold on a
    regular representation the equality is a theorem, so a failure in that
    regime raises instead of reporting."""
    M = rep.target
    b = rep.b0()
    image = {rep.h_of(rep.chi(A)) for A in b.sets}
    sharp = set(sharp_elements(M).members)
    ok = image == sharp

    all_meas = all(measurable(rep, f) for f in rep.tribe.functions)
    member = set(rep.tribe.functions)
    min_closed = all(
        tuple(min(v, ONE - v) for v in f) in member
        for f in rep.tribe.functions)
    if not ok and all_meas and min_closed and check_regular(rep).ok:
        raise TheoremViolation(
            "sharp image mismatch under the full theorem hypotheses: "
            f"image {sorted(M.label(a) for a in image)} vs "
            f"sharp {sorted(M.label(a) for a in sharp)}")
    return SharpImageReport(
        ok,
        tuple(sorted(M.label(a) for a in image)),
        tuple(sorted(M.label(a) for a in sharp)),
        all_meas,
        min_closed,
    )


# ---------------------------------------------------------------------------
# carrier extension (for exercising ideals and kernel independence)


def extend_carrier_with_null_point(rep: Representation, label: str,
                                   grid: Sequence[Fraction] = (ZERO, Fraction(1, 2), ONE),
                                   *, null_in_omega0: bool = False) -> Representation:
    """Adjoin one extra carrier point carrying no information.

    Every member function fans out over the value grid at the new point
    (the grid must be symmetric and closed under compatible sums, as
    {0, 1/2, 1} is), and h ignores the new coordinate.  The new point is
    declared negligible: either left outside omega0, or put inside with
    the ideal enlarged to absorb it.
    """
    grid = sorted({Fraction(v) for v in grid})
    if any(ONE - v not in grid for v in grid) or ZERO not in grid:
        raise PreconditionFailed("grid must contain 0 and be symmetric")
    for v in grid:
        for w in grid:
            if v + w <= 1 and v + w not in grid:
                raise PreconditionFailed("grid must be closed under sums <= 1")
    if label in rep.carrier:
        raise PreconditionFailed(f"label {label!r} already used")
    carrier = rep.carrier + (label,)
    fns = []
    h_by_fn = {}
    for f, a in zip(rep.tribe.functions, rep.h):
        for v in grid:
            g = f + (v,)
            fns.append(g)
            h_by_fn[g] = a
    tribe = validate_tribe(carrier, fns)
    h = tuple(h_by_fn[f] for f in tribe.functions)
    star = len(carrier) - 1
    if null_in_omega0:
        omega0 = rep.omega0 | {star}
        ideal = frozenset(A | extra for A in rep.ideal
                          for extra in (frozenset(), frozenset({star})))
    else:
        omega0 = rep.omega0
        ideal = rep.ideal
    return make_representation(tribe, rep.target, h, omega0, ideal,
                               polytope=rep.polytope)
