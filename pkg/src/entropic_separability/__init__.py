"""Generalized entropic separability criteria for finite-dimensional quantum states."""

from .criteria import (
    CriteriaReport,
    MajorizationVerdict,
    classify,
    disorder_criterion,
    entropic_test,
    find_entropic_root,
    find_largest_eig_crossing,
    largest_eig_test,
    majorization_compare,
    majorization_witness,
    ppt_test,
    reduction_min_eigenvalue,
)
from .entropies import (
    DEFAULT_BATTERY,
    ExpForm,
    GqForm,
    Spectrum,
    Tsallis,
    VonNeumann,
    classical_conditional,
    conditional_s_f,
    f_eval,
    normalized_conditional,
    renyi,
    s_f,
    spectrum,
)
from .linalg import EigenDecomposition, eig_hermitian, kron, matrix_function
from .states import (
    BellDiagonal,
    DensityMatrix,
    GhzWerner,
    PsiMixture,
    SingletPolarized,
    SingletProduct,
    WernerPopescu,
    make_density,
    partial_trace,
    partial_transpose,
    reduction_operator,
    sample_separable,
)
from .textio import read_density, write_density

__version__ = "0.1.0"
