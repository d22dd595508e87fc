"""Verification toolkit for finite orthomodular lattices, their
endomorphism quantales, and Sasaki projection structure.

Layers, bottom up: finite lattices and OMLs with exhaustive law checkers
(lattice, catalog); join-preserving maps with adjoints, kernels, and
enumeration (linmap); the endomorphism quantale and quantale law checkers
(quantale); annihilator projections, the projection lattice, and the
representation homomorphism (foulis); module actions (qmodule); JSON/DOT
serialization (serialize); theorem pipelines (verify); and the `omlq`
command-line tool (cli).
"""

from .catalog import (
    benzene_oml,
    boolean_oml,
    catalog,
    catalog_names,
    horizontal_sum_oml,
    mo_oml,
    product_oml,
    zero_oml,
)
from .errors import (
    AmbiguousSai,
    CapExceeded,
    DomainMismatch,
    FormatError,
    NotALattice,
    NotAPoset,
    NotFoulis,
    OmlqError,
    ParamOutOfRange,
    StructureViolation,
    UnknownCatalogEntry,
)
from .foulis import (
    FoulisHom,
    FoulisQuantale,
    SasakiOML,
    check_foulis,
    check_hom,
    check_star_props,
    derive_sai,
    foulis_from_lin,
    hom_h,
    module_action,
    roundtrip_iso,
    sasaki_action,
    sasaki_oml,
    sasaki_oml_report,
    sasaki_projection_index,
)
from .goldens import (
    GOLDEN_ENTRIES,
    compute_lin_count,
    golden_lin_count,
    load_goldens,
    regen_goldens,
)
from .lattice import (
    CheckReport,
    FiniteLattice,
    FiniteOML,
    SubOML,
    Violation,
    build_lattice,
    check_oml,
    downset_oml,
    lattice_from_leq,
    make_report,
    ortho_pair,
    sasaki_apply,
)
from .linmap import (
    KernelData,
    LinMap,
    bottom_map,
    compose,
    dagger,
    default_cap,
    enumerate_lin,
    factorize_sasaki,
    identity_map,
    image,
    is_dagger_iso,
    is_dagger_mono,
    is_linear,
    join_maps,
    kernel,
    make_map,
    vector_label,
    verify_adjoint_pair,
)
from .qmodule import (
    ModuleAction,
    check_left_module,
    check_right_two_module,
    lin_module,
    sasaki_module,
)
from .quantale import (
    EAGER_LIMIT,
    FinQuantale,
    QElementView,
    check_involutive,
    check_quantale,
    leq_by_mult,
    leq_by_mult_matrix,
    lin_quantale,
    perp_by_star,
)
from .serialize import (
    dump_json,
    lattice_to_dict,
    linmap_to_dict,
    load_json,
    module_to_dict,
    oml_to_dict,
    parse_lattice,
    parse_linmap,
    parse_module,
    parse_oml,
    parse_quantale,
    parse_structure,
    quantale_to_dict,
    resolve_oml,
    resolve_structure,
    structure_to_dict,
    to_dot,
)
from .verify import (
    SELECTORS,
    dagger_kernel_report,
    run_verify,
    sasaki_facts_report,
    verify_text,
)

__version__ = "0.1.0"
