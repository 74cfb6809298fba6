"""Posets with interfaces: composition, recognition, enumeration."""

from .algebra import (
    ArityMismatch,
    InternalLawViolation,
    LaxOutcome,
    PreconditionNotSatisfied,
    commute_symmetries,
    find_refinement,
    glue,
    glue_many,
    is_isomorphic,
    isomorphic,
    par,
    par_many,
    subsumes,
    verify_lax_interchange,
)
from .canonical import canonical_form, canonical_representative, from_key
from .core import (
    EMPTY,
    Iposet,
    IposetError,
    chain,
    connected_components,
    discrete,
    identity,
    induced_subposet,
    interface_order,
    is_discrete,
    is_interface_consistent,
    is_starter,
    is_symmetry,
    is_terminator,
    make_iposet,
    opposite,
    poset,
    singleton,
    symmetry_from_permutation,
    validate,
)
from .enumeration import (
    CensusTable,
    SizeCapExceeded,
    census,
    enumerate_iposets,
    enumerate_posets,
    generate_gp_closure,
)
from .fileformat import format_ipos, parse_ipos, read_ipos, write_ipos
from .forbidden import contains_induced, known_forbidden, minimal_forbidden
from .recognition import (
    CharFn,
    GpTerm,
    IntervalRep,
    Phase,
    build_witness,
    enumerate_char_fns,
    gp_level,
    gp_term,
    interval_representation,
    is_gp,
    is_interval_order,
    is_sp,
    is_step_sequence,
    quick_reject_gluing,
    split_by_char_fn,
)

__version__ = "0.1.0"
