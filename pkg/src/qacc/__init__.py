"""Bounds and numerics for the accessible information of two-state ensembles."""

from .accinfo import (
    AccInfoResult,
    OptimizerConfig,
    canonicalize_povm,
    optimize_accessible_information,
    qubit_projective_grid,
)
from .bounds import (
    BoundReport,
    build_report,
    chi_upper_from_fidelity,
    fidelity_bound_1,
    fidelity_bound_2,
    lemma_ub2_gap,
    theorem_bound_1,
    theorem_bound_2,
)
from .ensembles import (
    BinaryEnsemble,
    DensityMatrix,
    average_state,
    commuting_ensemble,
    figure3_ensemble,
    load_ensemble,
    dump_ensemble,
    ensemble_from_dict,
    ensemble_to_dict,
    orthogonal_pair,
    pure_pair,
    random_ensemble,
    validate_density,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DomainError,
    FidelityNotPreserved,
    NotCommuting,
    NotHermitian,
    NotPositive,
    QaccError,
    TraceNotOne,
)
from .measurements import (
    InducedChannel,
    Povm,
    classical_fidelity,
    common_eigenbasis_measurement,
    fidelity_preserving_measurement,
    helstrom_measurement,
    induce_channel,
    measured_information,
    mutual_information,
    named_measurements,
    pretty_good_measurement,
    random_orthogonal_measurement,
)
from .measures import (
    MeasureReport,
    binary_entropy,
    fidelity,
    holevo_chi,
    measure_report,
    pure_pair_chi,
    relative_entropy,
    subentropy,
    subentropy_maximally_mixed,
    upph_gap,
    von_neumann_entropy,
)

__version__ = "0.1.0"
