"""Renyi-2 information measures for Gaussian states given by covariance matrices."""

from .core import (
    DomainError,
    LocalInvariants,
    PartitionError,
    TwoModeStandardForm,
    UnphysicalStateError,
    ValidityReport,
    direct_sum,
    local_invariants,
    purity,
    random_mixed_cm,
    random_pure_cm,
    reduce,
    renyi2_entropy,
    renyi_alpha_entropy,
    symplectic_form,
    symplectic_spectrum,
    tmss_cm,
    to_standard_form,
    validate,
    von_neumann_entropy,
)
from .correlations import (
    MeasureReport,
    MeasurementSeed,
    classical_correlations,
    classical_correlations_numeric,
    conditional_cm,
    discord,
    mutual_information,
    seed_search,
    ssa_gap,
)
from .entanglement import (
    ThreeModeLocalInvariants,
    convex_roof_oracle,
    e2_pure_bipartition,
    e2_two_mode,
    g_reduced,
    je_gap,
    k_function,
    kw_gap,
    m_theta,
    monogamy_gap,
    ppt_min_symplectic_eigenvalue,
    residual_d2,
    residual_e2,
    residual_e2_invariant,
    three_mode_pure_cm,
)
from .phase_space import (
    EntropyEstimate,
    mc_entropy,
    mc_relative_entropy,
    mutual_information_via_relent,
    relative_sampling_entropy,
    sample_phase_space,
    sampling_entropy,
    wigner_eval,
)

__all__ = [
    "classical_correlations",
    "classical_correlations_numeric",
    "conditional_cm",
    "convex_roof_oracle",
    "direct_sum",
    "discord",
    "DomainError",
    "e2_pure_bipartition",
    "e2_two_mode",
    "EntropyEstimate",
    "g_reduced",
    "je_gap",
    "k_function",
    "kw_gap",
    "local_invariants",
    "LocalInvariants",
    "m_theta",
    "mc_entropy",
    "mc_relative_entropy",
    "MeasurementSeed",
    "MeasureReport",
    "monogamy_gap",
    "mutual_information",
    "mutual_information_via_relent",
    "PartitionError",
    "ppt_min_symplectic_eigenvalue",
    "purity",
    "random_mixed_cm",
    "random_pure_cm",
    "reduce",
    "relative_sampling_entropy",
    "renyi2_entropy",
    "renyi_alpha_entropy",
    "residual_d2",
    "residual_e2",
    "residual_e2_invariant",
    "sample_phase_space",
    "sampling_entropy",
    "seed_search",
    "ssa_gap",
    "symplectic_form",
    "symplectic_spectrum",
    "three_mode_pure_cm",
    "ThreeModeLocalInvariants",
    "tmss_cm",
    "to_standard_form",
    "TwoModeStandardForm",
    "UnphysicalStateError",
    "validate",
    "ValidityReport",
    "von_neumann_entropy",
    "wigner_eval",
]

__version__ = "0.1.0"
