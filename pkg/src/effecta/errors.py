"""Exception types raised by the toolkit.

Every error that corresponds to a refutable mathematical claim carries a
concrete witness (element labels, function values, ...) so that a failing
check is reproducible by hand.
"""

from __future__ import annotations


class EffectaError(Exception):
    """Base class for all toolkit errors."""


# ---------------------------------------------------------------------------
# core algebra

class AxiomViolation(EffectaError):
    """A partial-sum table violates one of the defining axioms.

    ``axiom`` is one of ``"i"`` (commutativity), ``"ii"`` (associativity),
    ``"iii"`` (existence of the orthosupplement), ``"iv"`` (positivity /
    zero-one separation) or ``"difference-uniqueness"``.
    """

    def __init__(self, axiom: str, witnesses: tuple, message: str = ""):
        self.axiom = axiom
        self.witnesses = witnesses
        text = f"axiom ({axiom}) violated at {witnesses!r}"
        if message:
            text += f": {message}"
        super().__init__(text)


class NonUniqueSupplement(EffectaError):
    def __init__(self, element, candidates: tuple):
        self.element = element
        self.candidates = candidates
        super().__init__(
            f"element {element!r} has several orthosupplements: {candidates!r}"
        )


class OrderNotAntisymmetric(EffectaError):
    def __init__(self, pair: tuple):
        self.pair = pair
        super().__init__(f"derived order is not antisymmetric at {pair!r}")


class SizeLimitExceeded(EffectaError):
    pass


class BooleanStructureFailure(EffectaError):
    """The sharp elements of an algebra with the refinement property failed a
    Boolean-algebra law.  This cannot happen for a correct implementation, so
    it is always an internal alarm rather than a user error."""

    def __init__(self, law: str, witnesses: tuple):
        self.law = law
        self.witnesses = witnesses
        super().__init__(f"sharp elements break Boolean law {law} at {witnesses!r}")


# ---------------------------------------------------------------------------
# states

class EmptyStateSpace(EffectaError):
    pass


# ---------------------------------------------------------------------------
# representations

class RdpRequired(EffectaError):
    """The requested construction only applies to algebras with the 2x2
    refinement (interpolation) property."""

    def __init__(self, witness: tuple | None = None):
        self.witness = witness
        msg = "algebra lacks the refinement property"
        if witness is not None:
            msg += f" (witness {witness!r})"
        super().__init__(msg)


class NonSeparatingStates(EffectaError):
    def __init__(self, pair: tuple):
        self.pair = pair
        super().__init__(f"states do not separate elements {pair!r}")


class TribeAxiomViolation(EffectaError):
    """A family of fuzzy functions is not closed the way a tribe must be."""

    def __init__(self, reason: str, witnesses: tuple):
        self.reason = reason
        self.witnesses = witnesses
        super().__init__(f"not a valid function system ({reason}) at {witnesses!r}")


class RepresentationViolation(EffectaError):
    """The labelling map of a representation is not a homomorphism."""


class NotASigmaAlgebra(EffectaError):
    """The sharp characteristic sets of a hand-built function system need not
    be closed under unions; the closure failure is reported with a witness."""

    def __init__(self, law: str, witnesses: tuple):
        self.law = law
        self.witnesses = witnesses
        super().__init__(f"set family fails {law} at {witnesses!r}")


class NotMeasurable(EffectaError):
    def __init__(self, what, atom):
        self.what = what
        self.atom = atom
        super().__init__(f"{what!r} is not constant on atom {sorted(atom)!r}")


class PreconditionFailed(EffectaError):
    pass


# ---------------------------------------------------------------------------
# observables and smearing

class SumUndefined(EffectaError):
    def __init__(self, parts: tuple):
        self.parts = parts
        super().__init__(f"partial sum of {parts!r} is undefined")


class SumNotOne(EffectaError):
    def __init__(self, total):
        self.total = total
        super().__init__(f"values sum to {total!r}, not to the unit")


class NotAKernel(EffectaError):
    pass


# ---------------------------------------------------------------------------
# spectral measures and state extension

class SpectralObstruction(EffectaError):
    def __init__(self, element, level):
        self.element = element
        self.level = level
        super().__init__(
            f"level set of {element!r} at {level} is not a sharp characteristic set"
        )


class NotSharp(EffectaError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element!r} is not sharp")


class PhiNotMonotone(EffectaError):
    def __init__(self, pair: tuple):
        self.pair = pair
        super().__init__(f"transform table not strictly increasing at {pair!r}")


class PhiEndpointViolation(EffectaError):
    def __init__(self, detail: str):
        super().__init__(f"transform table must fix the endpoints: {detail}")


class SupportNotCovered(EffectaError):
    def __init__(self, level):
        self.level = level
        super().__init__(f"transform table does not cover support point {level}")


class NotAStateOnSharp(EffectaError):
    def __init__(self, reason: str, witnesses: tuple):
        self.reason = reason
        self.witnesses = witnesses
        super().__init__(f"not a state on the sharp elements ({reason}) at {witnesses!r}")


class InfeasibleExtension(EffectaError):
    """The polytope of full states extending a sharp state is empty.  For
    canonical representations this is impossible, so reaching it means a
    verified theorem failed and should be treated as an alarm."""


class TheoremViolation(EffectaError):
    """A property that provably holds for the inputs accepted by the calling
    function turned out false.  Raised instead of silently returning wrong
    data; carries enough context to debug."""


# ---------------------------------------------------------------------------
# serialization / CLI

class ParseError(EffectaError):
    pass
