"""Local differential privacy, classical and quantum: mechanisms, audits, and
utility analysis (hypothesis-testing exponents, Holevo information, monotone
metrics, and the exact classical LP optimum)."""

from .errors import (
    DomainError,
    ExistenceError,
    PrivacyViolationError,
    SupportMismatchError,
    ValidationError,
)
from .exponents import (
    ExponentPair,
    IsoclinicBound,
    SweepRecord,
    advantage_crossover,
    advantage_threshold_asym,
    advantage_threshold_sym,
    asym_exponent,
    boundary_mu,
    classical_asym_term,
    classical_opt_asym,
    classical_opt_sym,
    classical_opt_sym_bound,
    classical_sym_term,
    closed_form_exponents,
    isoclinic_bound,
    isoclinic_constant,
    ratio_sweep,
    sym_exponent,
)
from .frames import (
    FrameCertificate,
    FusionFrame,
    build_eitff,
    clifford_generators,
    frame_from_json,
    frame_to_json,
    radon_hurwitz,
    simplex_vectors,
    verify_eitff,
)
from .linalg import (
    Spectrum,
    eigh,
    is_psd,
    matrix_from_json,
    matrix_function,
    matrix_to_json,
    norms,
)
from .mechanisms import (
    LdpMechanism,
    QldpMechanism,
    admissible_mu_interval,
    binary_mechanism,
    induced_mechanism,
    isoclinic_mechanism,
    jordan_eigenvalues,
    ldp_level,
    load_mechanism,
    mechanism_from_json,
    mechanism_to_json,
    qldp_level,
    save_mechanism,
    sigma_star,
    subset_mechanism,
    tilde_family,
)
from .metrics import (
    BKM,
    KL,
    RLD,
    SLD,
    SQUARE,
    SQUARED_DIFF,
    MetricKind,
    OperatorConvexF,
    chernoff_information,
    classical_chernoff,
    classical_f_divergence,
    classical_relative_entropy,
    depolarize,
    holevo_information,
    neg_ratio,
    overlap,
    petz_f_divergence,
    petz_metric,
    relative_entropy,
    von_neumann_entropy,
    wyd,
)
from .optimal import (
    LpSolution,
    SublinearUtility,
    asymptotic_prediction,
    estimate_beta0,
    kairouz_lp,
    kairouz_lp_symmetric,
    mutual_information_utility,
    pairwise_sqrt_utility,
    utility_of_mechanism,
)

__version__ = "0.1.0"
