"""Exact computations with g-alternative algebras.

Structure-constant algebras over GF(p) or the rationals, law and identity
checking, derived actions and semidirect products, bimultiplication and
actor closures, soci/asoci chains, actor existence decisions, and the
counterexample reconstructions, all in exact arithmetic.
"""

from .linalg import (
    Field,
    FieldMismatchError,
    DimensionMismatchError,
    GF2,
    GF3,
    GF5,
    QQ,
    Matrix,
    Subspace,
    kernel,
    rref,
    solve,
)
from .algebra import (
    Algebra,
    LawReport,
    LAW_NAMES,
    UnknownLawError,
    annihilator,
    check_law,
    classify,
    first_law_witness,
    ideal_generated,
    law_holds,
    make_algebra,
    multiply,
    zero_algebra,
)
from .action import (
    ActionData,
    ActionReport,
    MalformedExtensionError,
    SplitExtensionData,
    action_from_section,
    check_derived_action,
    make_action,
    regular_action,
    scalar_action,
    semidirect,
    split_extension_of,
    derived_semidirect_check,
    unit_algebra,
    zero_action,
)
from .multiplier import (
    ActionNotDerivedError,
    ActorAlgebra,
    MultiplierPair,
    bim,
    closure,
    d_map,
    d_of,
    d_pairs,
    expression_a,
    identity_b,
    pair_conditions_residual,
    pair_mul,
    pairs_of_action,
    relative_actor,
    solve_pair_space,
)
from .socle import (
    ActorDecision,
    NotGAltError,
    SocleContext,
    SocleResult,
    actor_decision,
    asoci,
    congruence_audit,
    make_context,
    s_set,
    soci,
)
from .witness import (
    SearchHit,
    SearchSpec,
    canonical,
    example51,
    octonion_algebra,
    search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
