"""Finite-support observables and their smearing against sharp observables.

An observable assigns algebra elements to finitely many rational outcome
points so that the assigned elements sum to 1; evaluating it on an outcome
set just adds up the elements at the points inside.  Smearing rewrites such
an observable through a representation: each generated outcome set E gets a
member function f_E with h(f_E) = x(E), and the defining identity

    m(x(E)) = sum over atoms A of B0:  f_E(A) * m(h(chi_A))

is verified exactly, state by state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import EffectAlgebra, iterated_sum, sharp_elements
from .errors import (
    NotAKernel,
    NotMeasurable,
    PreconditionFailed,
    SumNotOne,
    SumUndefined,
    TheoremViolation,
)
from .representation import Representation, measurable
from .states import State

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# outcome sets: finite unions of rational intervals plus isolated points


@dataclass(frozen=True)
class Interval:
    lo: Fraction | None        # None = unbounded below
    hi: Fraction | None        # None = unbounded above
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, t: Fraction) -> bool:
        if self.lo is not None and (t < self.lo or (t == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (t > self.hi or (t == self.hi and not self.hi_closed)):
            return False
        return True


@dataclass(frozen=True)
class OutcomeSet:
    intervals: tuple[Interval, ...] = ()
    points: frozenset = frozenset()

    def contains(self, t: Fraction) -> bool:
        return t in self.points or any(iv.contains(t) for iv in self.intervals)

    @staticmethod
    def of_points(*ts) -> "OutcomeSet":
        return OutcomeSet((), frozenset(Fraction(t) for t in ts))

    @staticmethod
    def interval(lo, hi, *, lo_closed: bool = True, hi_closed: bool = True) -> "OutcomeSet":
        return OutcomeSet((Interval(
            None if lo is None else Fraction(lo),
            None if hi is None else Fraction(hi),
            lo_closed, hi_closed),))

    @staticmethod
    def everything() -> "OutcomeSet":
        return OutcomeSet((Interval(None, None),))


EMPTY_SET = OutcomeSet()


# ---------------------------------------------------------------------------
# observables


@dataclass(frozen=True)
class Observable:
    algebra: EffectAlgebra
    support: tuple[Fraction, ...]    # strictly increasing outcome points
    values: tuple[int, ...]          # element ids, aligned with support

    def element_at(self, indices: Iterable[int]) -> int:
        """x(E) for E described by which support points it contains."""
        parts = [self.values[i] for i in sorted(set(indices))]
        total = iterated_sum(self.algebra, parts)
        if total is None:  # cannot happen for a validated observable
            raise SumUndefined([self.algebra.label(p) for p in parts])
        return total

    def element_of(self, E: OutcomeSet) -> int:
        return self.element_at(
            i for i, t in enumerate(self.support) if E.contains(t))


def make_observable(M: EffectAlgebra, support: Sequence, values: Sequence) -> Observable:
    """Validate outcome points and the unit-sum requirement."""
    if len(support) != len(values) or not support:
        raise PreconditionFailed("support and values must align and be non-empty")
    pts = [Fraction(t) for t in support]
    ids = []
    for v in values:
        ids.append(M.index(v) if isinstance(v, str) else int(v))
    pairs = sorted(zip(pts, ids))
    pts = [t for t, _ in pairs]
    ids = [a for _, a in pairs]
    if any(s == t for s, t in zip(pts, pts[1:])):
        raise PreconditionFailed("outcome points must be distinct")
    for a in ids:
        if not 0 <= a < M.n:
            raise PreconditionFailed(f"element id {a} out of range")
    total = iterated_sum(M, ids)
    if total is None:
        raise SumUndefined([M.label(a) for a in ids])
    if total != M.one:
        raise SumNotOne(M.label(total))
    return Observable(M, tuple(pts), tuple(ids))


def summable_families(M: EffectAlgebra, max_parts: int) -> Iterable[tuple[int, ...]]:
    """All tuples (a_1, ..., a_k), k <= max_parts, whose iterated sum is 1.

    Tuples are ordered (outcome slots are ordered), so (a, a') and (a', a)
    are distinct families; repetition is allowed when the sums permit it.
    """
    def walk(prefix: tuple[int, ...], acc: int):
        if prefix and acc == M.one:
            yield prefix
        if len(prefix) == max_parts:
            return
        for a in M.elements():
            nxt = M.add(acc, a)
            if nxt is not None:
                yield from walk(prefix + (a,), nxt)

    yield from walk((), M.zero)


# ---------------------------------------------------------------------------
# sharp observables on the B0 sigma-algebra


@dataclass(frozen=True)
class SharpObservable:
    rep: Representation
    assignment: Mapping  # frozenset of carrier points -> element id

    def __call__(self, A: frozenset) -> int:
        return self.assignment[frozenset(A)]

    @property
    def atoms(self):
        return self.rep.b0().atoms


def sharp_observable(rep: Representation) -> SharpObservable:
    """xi(A) = h(chi_A) on the sharp-set sigma-algebra, with the sharpness
    and additivity guarantees checked exhaustively rather than assumed.

    The verified observable is cached on the representation."""
    if rep._xi is not None:
        return rep._xi
    M = rep.target
    b = rep.b0()
    xi = {A: rep.h_of(rep.chi(A)) for A in b.sets}
    sharp = set(sharp_elements(M).members)
    for A, a in xi.items():
        if a not in sharp:
            raise TheoremViolation(
                f"xi({sorted(A)}) = {M.label(a)} is not sharp")
    for A in b.sets:
        for B in b.sets:
            if A & B:
                continue
            s = M.add(xi[A], xi[B])
            if s is None or s != xi[A | B]:
                raise TheoremViolation(
                    f"xi not additive at {sorted(A)}, {sorted(B)}")
    total = iterated_sum(M, [xi[A] for A in b.atoms])
    if total != M.one:
        raise TheoremViolation("atom masses of xi do not sum to 1")
    rep._xi = SharpObservable(rep, xi)
    return rep._xi


# ---------------------------------------------------------------------------
# smearing


@dataclass(frozen=True)
class SmearingKernel:
    """One member function per outcome set generated by the support points,
    keyed by the frozenset of support indices the set picks out."""
    observable: Observable
    functions: Mapping  # frozenset[int] -> function values


def smear(rep: Representation, x: Observable) -> SmearingKernel:
    if rep.target is not x.algebra:
        raise PreconditionFailed("observable lives on a different algebra")
    kernel = {}
    k = len(x.support)
    for mask in range(1 << k):
        key = frozenset(i for i in range(k) if mask >> i & 1)
        f = rep.function_of(x.element_at(key))
        if not measurable(rep, f):
            atom = next(a for a in rep.b0().atoms
                        if len({f[i] for i in a}) > 1)
            raise NotMeasurable(_key_name(x, key), sorted(atom))
        kernel[key] = f
    return SmearingKernel(x, kernel)


def _key_name(x: Observable, key: frozenset) -> str:
    return "{" + ",".join(str(x.support[i]) for i in sorted(key)) + "}"


def atomwise_integral(rep: Representation, f: Sequence[Fraction], m: State,
                      xi: SharpObservable) -> Fraction:
    """Sum of f(A) * m(xi(A)) over the atoms; exact because f is constant
    on each atom."""
    total = ZERO
    for A in xi.atoms:
        vals = {f[i] for i in A}
        if len(vals) > 1:
            raise NotMeasurable("integrand", sorted(A))
        total += vals.pop() * m.values[xi(A)]
    return total


@dataclass(frozen=True)
class SmearingReport:
    ok: bool
    residuals: Mapping  # frozenset[int] -> exact residual


def verify_smearing(rep: Representation, x: Observable, kernel: SmearingKernel,
                    m: State) -> SmearingReport:
    """Check m(x(E)) against the atomwise integral for every generated E."""
    xi = sharp_observable(rep)
    residuals = {}
    ok = True
    for key, f in kernel.functions.items():
        lhs = m.values[x.element_at(key)]
        rhs = atomwise_integral(rep, f, m, xi)
        residuals[key] = lhs - rhs
        if lhs != rhs:
            ok = False
    return SmearingReport(ok, residuals)


def kernel_independence_check(rep: Representation, x: Observable, m: State,
                              alternatives: Mapping) -> bool:
    """Alternative kernel choices must leave every integral unchanged.

    Each alternative must itself be a legitimate kernel function for its
    outcome set (a member mapping to x(E)); anything else is rejected
    rather than integrated.
    """
    xi = sharp_observable(rep)
    for key, alt in alternatives.items():
        alt = tuple(Fraction(v) for v in alt)
        key = frozenset(key)
        target = x.element_at(key)
        if alt not in rep.tribe or rep.h_of(alt) != target:
            raise NotAKernel(_key_name(x, key))
        reference = atomwise_integral(rep, rep.function_of(target), m, xi)
        if atomwise_integral(rep, alt, m, xi) != reference:
            return False
    return True
