"""Exact neighborhood spectra of commuting graphs of finite rings."""

from .rings import (
    AxiomViolation,
    CentralizerSet,
    DimensionMismatch,
    FiniteRing,
    NotPrime,
    RingElement,
    RingError,
    RingSpecError,
    SizeCapExceeded,
    additive_quotient_type,
    center,
    centralizer,
    centralizer_count,
    commuting_probability,
    direct_product,
    has_unity,
    is_cc_ring,
    load_ring,
    matrix_ring_2x2,
    noncentral_centralizer_sizes,
    parse_ring_spec,
    ring_from_table,
    ring_noncomm_p2,
    save_ring,
    upper_triangular_ring,
    validate_ring_axioms,
    zn,
)
from .graphs import (
    CliqueUnion,
    CommutativeRing,
    GraphError,
    NotCliqueUnion,
    SimpleGraph,
    clique_decomposition,
    clique_union_graph,
    commuting_graph,
    connected_components,
    delta2,
    delta2_all,
    load_graph,
    save_graph,
    second_neighborhood,
)
from .spectra import (
    EnergyReport,
    ExactCapExceeded,
    IntSymMatrix,
    NoConvergence,
    NotFullyIntegral,
    SpectrumMultiset,
    classify,
    cn_matrix,
    exact_spectrum,
    msn_matrix,
    numeric_spectrum,
)
from .theorems import (
    ClosedFormPrediction,
    HypothesisViolated,
    TheoremId,
    clique_union_cn_energy,
    clique_union_cn_spectrum,
    clique_union_msn_energy,
    clique_union_msn_spectrum,
    predict,
    reference_energies,
)
from .verification import (
    PropertySuiteReport,
    Verdict,
    VerificationReport,
    builtin_instance,
    centralizer_energy_formula,
    property_suite_clique_unions,
    sweep,
    verify_ring,
)

__version__ = "0.1.0"
