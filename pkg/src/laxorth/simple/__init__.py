"""Simple reflections and the initial-object completion."""
from .counterexample import bundled_instance, delta_empty_counterexample
from .initcomp import (
    INIT,
    CorruptedMultMonad,
    InitCompletionMonad,
    TruncatedDeltaEmptyMonad,
    check_fibre_algebra_morphisms,
    check_fibre_law,
    check_simplicity_witness,
    check_terminal_factor,
    f_embedding_agreement,
    f_embedding_check,
    fibre_comparison,
    init_completion,
    transferred_factor,
    transferred_system,
)
from .opfib import (
    OpfibColimBundle,
    algebra_corpus,
    opfib_colim_to_ralg,
    ralg_to_opfib_colim,
    round_trip_report,
    slice_initial_uniqueness,
    validate_bundle,
)
from .reflection import (
    ReflectionMonad,
    ReflectionSystem,
    chain,
    compare_simple_coreflective,
    find_pullback,
    is_simple_reflection,
    iter_idempotent_monads,
    iter_poset_reflections,
    iter_posets,
    named_reflections,
    simple_coreflective_report,
    reflect_onto,
    reflection_handle,
    simple_reflection_factor,
    split_retract_category,
    t_iso_coreflective,
)
