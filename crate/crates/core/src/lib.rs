//! Negativity-based counting of entangled dimensions.
//!
//! This crate computes the negativity and the dimension counter
//! `N_dim = ‖ρ^{T_A}‖₁` of bipartite quantum states, provides exact closed
//! forms and Schmidt-number classification for the two-parameter family of
//! axisymmetric two-qudit states, and produces device-independent lower
//! bounds on the number of entangled dimensions from partially observed
//! moment matrices.
//!
//! All numerics are generic over the real scalar via [`Scalar`]; the
//! `*64` aliases below are the types to reach for in practice.

pub mod axi;
pub mod bipartite;
pub mod di;
pub mod eig;
pub mod error;
pub mod matrix;
pub mod moment;
pub mod negativity;
pub mod random;
pub mod scalar;
pub mod states;
pub mod tol;
pub mod witness;

pub use axi::{axi_coords, axi_state, axi_twirl, coupled_phase_rotation, AxiParams};
pub use bipartite::{
    partial_trace_a, partial_trace_b, partial_transpose, partial_transpose_matrix, BipartiteState,
};
pub use di::{
    certified_dimensions, di_lower_bound, variational_negativity, DiOutcome, DiScenario,
    SolverOptions, SolverStatus,
};
pub use eig::{
    hermitian_eig, min_eigenvalue, negative_part, psd_project, trace_norm, EigDecomposition,
};
pub use error::{Error, Result};
pub use matrix::{hs_inner, kron, ComplexMatrix};
pub use moment::{moment_matrix, moment_partial_transpose, MeasurementSet, MomentMatrix};
pub use negativity::{
    axi_ndim, axi_negativity, axi_schmidt_class, ndim, negativity, schmidt_number_lower_bound,
    SchmidtClass,
};
pub use random::{haar_unitary, random_density, random_schmidt_rank_k_mixture};
pub use scalar::Scalar;
pub use states::{max_entangled, pure_state, pure_state_from_schmidt, SchmidtVector};
pub use witness::{schmidt_witness, witness_value, Witness};

/// Complex scalar over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Complex scalar over `f32`.
pub type C32 = num_complex::Complex<f32>;
/// Double-precision complex matrix.
pub type CMatrix64 = ComplexMatrix<f64>;
/// Single-precision complex matrix.
pub type CMatrix32 = ComplexMatrix<f32>;
/// Double-precision bipartite state.
pub type State64 = BipartiteState<f64>;
/// Single-precision bipartite state.
pub type State32 = BipartiteState<f32>;
