//! Local-hidden-state bounds and quantum violations of N-setting linear
//! EPR-steering inequalities for qubits.
//!
//! - [`qstate`]: Werner, generalized Werner, MEMS and AVN two-qubit states,
//!   partial transposes and Pauli correlation tensors.
//! - [`lhsbound`]: exact bounds by sign enumeration, an eigenvalue oracle,
//!   and northern-hemisphere canonicalization.
//! - [`optimizer`]: simulated annealing and pattern-search refinement of
//!   measurement sets.
//! - [`hemisphere`]: circle-stratified hemisphere sets whose bound tends to 1/2.
//! - [`violation`]: quantum values, steering detection and parameter sweeps.
//! - [`golden`]: published measurement sets and bounds.
//! - [`io`]: JSON and CSV formats.

pub mod error;
pub mod golden;
pub mod hemisphere;
pub mod io;
pub mod lhsbound;
pub mod linalg;
pub mod optimizer;
pub mod qstate;
pub mod vector;
pub mod violation;

pub use error::{Result, SteeringError};
pub use lhsbound::{canonicalize, lhs_bound, lhs_bound_eig, BoundResult, MeasurementSet};
pub use qstate::{
    correlation_matrix, make_avn, make_generalized_werner, make_mems, make_werner, min_eigenvalue,
    partial_transpose, ComplexMatrix4, CorrelationMatrix, DensityMatrix, StateParams,
};
pub use vector::{Rotation3, UnitVector3, Vec3};
pub use optimizer::{anneal, anneal_parallel, random_set, refine, AnnealingConfig, OptimizationResult};
