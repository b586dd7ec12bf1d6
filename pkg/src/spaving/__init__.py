"""Sparse paving matroids, the Ingleton inequality, and small censuses.

The package works with two matroid encodings: SparsePavingMatroid holds
the circuit-hyperplane family of a sparse paving matroid, BasisMatroid
holds an explicit basis family (needed once minors stop being sparse
paving).  Subsets of the ground set {1..n} travel as int bitmasks with
bit i-1 standing for element i.

Hot kernels live in a compiled extension when it built; set
SPAVING_PURE=1 to force the pure-Python fallback.  kernel_kind() reports
which one is active.
"""

from ._backend import kernel_kind
from .census import (
    CensusRecord,
    census_read,
    census_write,
    classify_ingleton,
    enumerate_iso_classes,
    enumerate_stable_sets,
    vamos_reachable,
    verify_excluded_minors,
)
from .constructions import gs_best, gs_class_sizes, gs_color, gs_matroid, named, vamos
from .errors import FormatError, ScaleError, SpavingError, StabilityError
from .ingleton import (
    IngletonQuadruple,
    ViolationWitness,
    eval_quadruple,
    find_all_witnesses,
    ingleton_brute,
    ingleton_fast_sp,
    ingleton_sampled,
    minor_witness,
    pattern_counts,
    witness_to_quadruple,
)
from .johnson import (
    colex_rank,
    colex_unrank,
    johnson_params,
    parse_set_hex,
    parse_set_text,
    random_stable_set,
    set_hex,
    set_text,
    vertex_masks,
)
from .matroids import (
    BasisMatroid,
    CanonicalForm,
    SparsePavingMatroid,
    basis_to_sp,
    bm_rank,
    canonical_form,
    contract,
    delete,
    dual,
    from_json,
    is_isomorphic,
    is_paving,
    is_sparse_paving,
    nonbases,
    rank_table,
    relax,
    sp_dual,
    sp_new,
    sp_rank,
    sp_to_basis,
    stable_hash,
    to_json,
)
from .represent import (
    GenericMatrix,
    ZeroPattern,
    build_pattern,
    hall_condition,
    instantiate,
    represent_with_retries,
    verify_represents,
)
from .sampling import CountingParams, SampleStats, make_params, run_trials

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
