"""effecta — exact verification toolkit for finite effect algebras.

The package validates partial-sum tables, computes state polytopes with
exact rational arithmetic, builds function representations on the extremal
states, and checks the smearing / spectral-measure machinery that connects
unsharp observables to sharp ones.
"""

from .algebra import (
    EffectAlgebra,
    MVStructure,
    MvFailure,
    RdpResult,
    RefinementMatrix,
    SharpSet,
    check_rdp,
    detect_mv,
    iterated_sum,
    resolve_max_size,
    sharp_elements,
    validate_effect_algebra,
)
from .generators import generate, parse_family_tokens
from .observables import (
    Observable,
    OutcomeSet,
    make_observable,
    smear,
    summable_families,
    verify_smearing,
)
from .representation import (
    EffectTribe,
    Representation,
    canonical_representation,
    tribe_to_algebra,
    validate_tribe,
)
from .spectral import (
    SpectralMeasure,
    extend_state,
    extension_uniqueness,
    spectral_integral,
    spectral_measure,
    transform_spectral,
)
from .states import State, StatePolytope, is_state, state_polytope

__version__ = "0.1.0"

__all__ = [
    "EffectAlgebra",
    "EffectTribe",
    "MVStructure",
    "MvFailure",
    "Observable",
    "OutcomeSet",
    "RdpResult",
    "RefinementMatrix",
    "Representation",
    "SharpSet",
    "SpectralMeasure",
    "State",
    "StatePolytope",
    "canonical_representation",
    "check_rdp",
    "detect_mv",
    "extend_state",
    "extension_uniqueness",
    "generate",
    "is_state",
    "iterated_sum",
    "make_observable",
    "parse_family_tokens",
    "resolve_max_size",
    "sharp_elements",
    "smear",
    "spectral_integral",
    "spectral_measure",
    "state_polytope",
    "summable_families",
    "transform_spectral",
    "tribe_to_algebra",
    "validate_effect_algebra",
    "validate_tribe",
    "verify_smearing",
    "__version__",
]
