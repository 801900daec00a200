"""Exact Pauli conjugation by Clifford+T circuits.

Everything is integer arithmetic end to end: scalars live in Z[i, 1/sqrt2],
circuits in the {X, Z, H, S, CZ, T} gate set, and conjugation data in
depth-d presentations whose coefficients the support-chain engine sums
exactly.  Deciders, hardness-reduction compilers, and a dense unitary
oracle (for cross-checks at small width) sit on top.
"""

from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    dagger,
    layer_decompose,
    parse_circuit,
    serialize_circuit,
    t_count,
    t_depth,
)
from .codes import (
    BinaryCode,
    CodeBoundError,
    OneRemainderMatrix,
    build_one_remainder,
    parse_code,
    serialize_code,
    split_one_remainder,
    validate_one_remainder,
    weight_distribution,
    wt_eval,
)
from .decide import (
    DecisionError,
    DecisionResult,
    METHOD_TAGS,
    conjugate_value,
    decide_commute,
    decide_enic,
    decide_support,
)
from .exact import ExactScalar, QRoot2, RealRoot2
from .f2 import F2Matrix, F2Vec, SymplecticVec
from .oracle import (
    DenseUnitary,
    StateVector,
    dense,
    equal_up_to_phase,
    pauli_expansion,
    pauli_unitary,
    teleport_check,
)
from .pauli import (
    CliffordTableau,
    PhasedPauli,
    canonical_clifford,
    circuit_from_tableau,
    conjugate_pauli,
    format_pauli,
    parse_pauli,
    tableau_from_circuit,
)
from .present import (
    DEFAULT_BUDGET,
    BudgetError,
    Presentation,
    PresentationError,
    coefficient,
    coefficient_depth1_fast,
    decode,
    encode,
    expansion,
    parse_presentation,
    presentation_to_branching,
    serialize_presentation,
)
from .reduce import (
    ReductionCertificate,
    ReductionError,
    average_gadget,
    binary_weight_to_circuit,
    code_readout_value,
    code_to_presentation,
    commute_to_enic,
    enic_to_commute,
    linear_combination_gadget,
    product_gadget,
    recover_distribution_1mod4,
    serialize_certificate,
    support_to_enic,
    teleport_correction,
)

__version__ = "0.1.0"
