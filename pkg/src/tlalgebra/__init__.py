"""Temperley-Lieb generators, their Yang-Baxterization, and qutrit entanglement checks."""
from .entanglement import (
    NegativityReport,
    PureState,
    apply_to_basis,
    local_unitary_y,
    negativity,
    negativity_closed_form,
    negativity_sweep,
)
from .hamiltonian import DriveParams, HamiltonianResult, build_hamiltonian, derivative_consistency, du_dphi
from .matrix_core import (
    EigenResult,
    dagger,
    embed_site,
    hermitian_eigenvalues,
    kron,
    partial_transpose,
    trace_norm_hermitian,
)
from .tla import (
    PhasePermMatrix,
    TLAVerdict,
    TLGenerator,
    bell_basis_3,
    build_phase_perm,
    combined_generator,
    eight_vertex_family,
    entrywise_inverse,
    kulish_generator,
    limiting_residual,
    product_generator,
    qutrit_family,
    tl2_eight_vertex,
    tl3_generator,
    verify_tla,
)
from .yang_baxter import (
    RMatrix,
    SpectralPoint,
    g_functional_residual,
    g_of_u,
    r_matrix,
    theta_of_u,
    unitarity_report,
    ybe_residual,
)

__version__ = "0.1.0"
