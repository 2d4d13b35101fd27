"""Monads, comonads, and the interaction laws between them."""
from .free import (
    CanonicalMCIL,
    FreeMonad,
    Leaf,
    Machine,
    Node,
    TraceEvent,
    all_machines,
    canonical_mcil,
    free_monad,
    machine,
    node,
    observably_equal,
    tree_depth,
    tree_from_json,
    tree_to_json,
)
from .mcil import (
    MCIL,
    composite_comonad,
    composite_monad,
    identity_mcil,
    matching_counterexample,
    mcil_check,
    mcil_check_via_dual,
    mcil_composite,
    mcil_final,
    mcil_initial,
    mcil_map_counterexample,
    mcil_product,
    mcil_stretch,
    reader_mcil,
    single_entry_mutations,
    update_as_composite,
    update_mcil,
    writer_mcil,
)
from .monads import (
    ContainerComonad,
    ContainerMonad,
    LawViolation,
    Undefined,
    comonad_enumerate,
    const_one_monad,
    cowriter_comonad,
    env_comonad,
    exc_reader_monad,
    identity_comonad,
    identity_monad,
    nelist_monad,
    reader_monad,
    update_comonad,
    update_monad,
    writer_monad,
    zero_comonad,
)
from .sweedler import (
    SweedlerInstance,
    associative_degeneracy_report,
    binary_operation,
    cofree_coassoc_counterexample,
    coequation_checks,
    comonad_map_enumerate,
    comonad_map_from_mcil,
    head_or_last_report,
    mcil_from_comonad_map,
    nelist_cooperation,
    sweedler_nelist,
    sweedler_squares,
    sweedler_update,
)
