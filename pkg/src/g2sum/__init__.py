"""Exact integer-lattice arithmetic and Betti-number enumeration for
twisted-connected-sum 7-manifolds."""

from .building_blocks import (
    BuildingBlock,
    EulerCheck,
    blowup_sequence_d,
    euler_crosscheck,
    fano_block,
    involution_block,
    open_betti,
    quartic_blowup_block,
)
from .catalog import (
    CatalogError,
    FanoCatalog,
    FanoFamily,
    FixedLocus,
    JoyceCatalog,
    NikulinCatalog,
    NikulinTriple,
    default_data_dir,
    fixed_locus,
    load_fano,
    load_joyce,
    load_nikulin,
    mirror_pairs,
    mirror_partner,
)
from .embedding import (
    BOTH,
    COND_A,
    COND_B,
    INCONCLUSIVE,
    NONE,
    NOT_FOUND_WITHIN_BOUND,
    SUFFICIENT,
    SUFFICIENT_UNIQUE,
    EmbeddingVerdict,
    MatchCertificate,
    embeds_in_2e8_2h,
    find_isotropic_primitive,
    matching_condition,
    nikulin_sufficient,
)
from .enumerator import (
    EMB_A,
    EMB_B,
    EMB_C,
    GENERIC,
    LARGE_RANK,
    MIRROR,
    MODES,
    SEQ,
    UNVERIFIED,
    G2Record,
    GlueResult,
    JoyceComparison,
    PairCounts,
    compare_joyce,
    count_matched_pairs,
    distinct_betti,
    enumerate_emb,
    enumerate_large_rank,
    enumerate_mirror,
    enumerate_seq,
    generic_record,
    glue_betti,
)
from .lattice_core import (
    DiscriminantInfo,
    IntLattice,
    LatticeError,
    Signature,
    SmithDecomposition,
    delta_invariant,
    direct_sum,
    parse_lattice_expr,
    rescale,
    standard_lattice,
)

__version__ = "0.1.0"

__all__ = [
    "BOTH",
    "BuildingBlock",
    "CatalogError",
    "COND_A",
    "COND_B",
    "DiscriminantInfo",
    "EMB_A",
    "EMB_B",
    "EMB_C",
    "EmbeddingVerdict",
    "EulerCheck",
    "FanoCatalog",
    "FanoFamily",
    "FixedLocus",
    "G2Record",
    "GENERIC",
    "GlueResult",
    "INCONCLUSIVE",
    "IntLattice",
    "JoyceCatalog",
    "JoyceComparison",
    "LARGE_RANK",
    "LatticeError",
    "MatchCertificate",
    "MIRROR",
    "MODES",
    "NikulinCatalog",
    "NikulinTriple",
    "NONE",
    "NOT_FOUND_WITHIN_BOUND",
    "PairCounts",
    "SEQ",
    "Signature",
    "SmithDecomposition",
    "SUFFICIENT",
    "SUFFICIENT_UNIQUE",
    "UNVERIFIED",
    "blowup_sequence_d",
    "compare_joyce",
    "count_matched_pairs",
    "default_data_dir",
    "delta_invariant",
    "direct_sum",
    "distinct_betti",
    "embeds_in_2e8_2h",
    "enumerate_emb",
    "enumerate_large_rank",
    "enumerate_mirror",
    "enumerate_seq",
    "euler_crosscheck",
    "fano_block",
    "find_isotropic_primitive",
    "fixed_locus",
    "generic_record",
    "glue_betti",
    "involution_block",
    "load_fano",
    "load_joyce",
    "load_nikulin",
    "matching_condition",
    "mirror_pairs",
    "mirror_partner",
    "nikulin_sufficient",
    "open_betti",
    "parse_lattice_expr",
    "quartic_blowup_block",
    "rescale",
    "standard_lattice",
    "__version__",
]
