//! Quaternion and complex skew-symmetric matrix toolkit.
//!
//! * [`quaternion`], [`quat_matrix`]: quaternion scalars and dense matrices.
//! * [`complex_linalg`]: Hermitian Jacobi eigensolver, LU inverse, Gram–Schmidt.
//! * [`spectra`]: complex adjoint, right eigenvalues of Hermitian quaternion
//!   matrices, quaternion inverse, `W = Z Z*`.
//! * [`hua`]: canonical form `U Z Uᵀ = Σ` of complex skew-symmetric matrices.
//! * [`skew`]: spectrum classification of 3×3 quaternion skew-symmetric
//!   matrices, inverse behavior, and the random search for 4×4 and larger
//!   matrices with unpaired spectra.
//! * [`dual`]: dual quaternions and the Hermitian test for their matrices.
//! * [`cli`]: the `qskew` command line.

pub mod cli;
pub mod complex_linalg;
pub mod dual;
pub mod error;
pub mod hua;
pub mod io;
pub mod quat_matrix;
pub mod quaternion;
pub mod rng;
pub mod skew;
pub mod spectra;

pub use complex_linalg::ComplexMatrix;
pub use dual::{DualQuatMatrix, DualQuaternion};
pub use error::{Error, Result};
pub use hua::HuaForm;
pub use num_complex;
pub use quat_matrix::QuatMatrix;
pub use quaternion::Quaternion;
pub use skew::{SkewCase, SkewTriple, SpectrumReport};
pub use spectra::RightSpectrum;

/// Default absolute or relative tolerance for predicates and checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Two sorted eigenvalues share a cluster when their gap is at most
/// `DEFAULT_CLUSTER_TOL·max(1, λ_max)`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
