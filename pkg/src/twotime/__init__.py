"""twotime: a state-vector toolkit for pre- and post-selected quantum systems.

Computes two-time conditional probabilities, elements of reality and weak
values for pre/post-selected ensembles, simulates the Gaussian-pointer
readout of a weak measurement, exhaustively refutes deterministic local
hidden-variable assignments against parity constraints, and models the
interaction-free detection of an absorber in a balanced interferometer.
"""

__version__ = "0.1.0"

from .linalg import (
    DIM_CAP,
    STRUCTURAL_TOL,
    DimensionCapError,
    DimensionMismatchError,
    Operator,
    StateVector,
    apply,
    basis_state,
    identity,
    inner,
    projector_onto,
    sigma_x,
    sigma_y,
    sigma_z,
    tensor,
    validate,
)
from .pps import (
    CERTAINTY_TOL,
    SELECTION_EPS,
    Branch,
    ElementOfReality,
    InvalidDecompositionError,
    OrthogonalSelectionError,
    PrePostEnsemble,
    ProjectorDecomposition,
    ZeroSelectionProbabilityError,
    abl,
    born,
    infer_element_of_reality,
    weak_value,
)
from .weakmeas import (
    DEFAULT_GRID,
    GridTooNarrowError,
    PointerGrid,
    PointerState,
    WeakMeasurementReport,
    gaussian_pointer,
    simulate_pointer,
)
from .lhv import (
    UNIVERSE_CAP,
    Assignment,
    ConstraintSet,
    MissingSettingError,
    ProductConstraint,
    SearchResult,
    Setting,
    UniverseTooLargeError,
    parity_certificate,
    satisfies,
    search,
)
from .scenarios import (
    GHZ_EXPECTED_SIGNS,
    SCENARIO_NAMES,
    MachZehnderOutcome,
    NamedScenario,
    beam_splitter,
    box_observables,
    box_projector,
    ghz_constraint_set,
    ghz_quantum_check,
    ghz_state,
    mach_zehnder,
    named_scenario,
    spin_decomposition,
    three_box_ensemble,
)

__all__ = [
    "__version__",
    # linalg
    "DIM_CAP",
    "STRUCTURAL_TOL",
    "DimensionCapError",
    "DimensionMismatchError",
    "Operator",
    "StateVector",
    "apply",
    "basis_state",
    "identity",
    "inner",
    "projector_onto",
    "sigma_x",
    "sigma_y",
    "sigma_z",
    "tensor",
    "validate",
    # pps
    "CERTAINTY_TOL",
    "SELECTION_EPS",
    "Branch",
    "ElementOfReality",
    "InvalidDecompositionError",
    "OrthogonalSelectionError",
    "PrePostEnsemble",
    "ProjectorDecomposition",
    "ZeroSelectionProbabilityError",
    "abl",
    "born",
    "infer_element_of_reality",
    "weak_value",
    # weakmeas
    "DEFAULT_GRID",
    "GridTooNarrowError",
    "PointerGrid",
    "PointerState",
    "WeakMeasurementReport",
    "gaussian_pointer",
    "simulate_pointer",
    # lhv
    "UNIVERSE_CAP",
    "Assignment",
    "ConstraintSet",
    "MissingSettingError",
    "ProductConstraint",
    "SearchResult",
    "Setting",
    "UniverseTooLargeError",
    "parity_certificate",
    "satisfies",
    "search",
    # scenarios
    "GHZ_EXPECTED_SIGNS",
    "SCENARIO_NAMES",
    "MachZehnderOutcome",
    "NamedScenario",
    "beam_splitter",
    "box_observables",
    "box_projector",
    "ghz_constraint_set",
    "ghz_quantum_check",
    "ghz_state",
    "mach_zehnder",
    "named_scenario",
    "spin_decomposition",
    "three_box_ensemble",
]
