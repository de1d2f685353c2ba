//! Computable logarithmic potential theory for spectral problems.
//!
//! The crate turns the classical potential-theory dictionary into numbers:
//! capacities and equilibrium measures of finite interval unions, Green's
//! functions, Chebyshev and Fekete extremal objects, orthogonal-polynomial
//! recursions on the line and the circle, regularity diagnostics, and the
//! Lyapunov-exponent / density-of-states statistics of ergodic Jacobi
//! matrices (Thouless formula and friends).

pub mod chebfek;
pub mod equilibrium;
pub mod ergodic;
pub mod error;
pub mod measure;
pub mod numeric;
pub mod oprl;
pub mod opuc;
pub mod recurrence;
pub mod setgeom;
pub mod suite;
pub mod tridiag;

pub use chebfek::{bounds_chain, chebyshev, fekete, transfinite_diameter, ChebyshevResult, FeketeSet};
pub use equilibrium::{capacity, equilibrium, green, EquilibriumData};
pub use ergodic::{density_of_states, lyapunov, thouless_check, ErgodicFamily, FamilyKind};
pub use error::{Error, Result};
pub use oprl::{jacobi_from_measure, regularity_diagnostic, zero_counting, JacobiParams, RegularityReport, Verdict, ZeroCountingMeasure};
pub use measure::{discretize, DiscretizedMeasure, MeasureSpec, Singularity};
pub use opuc::{balayage, cn_class_check, opuc_zeros, szego_eval, verblunsky_norm_product, VerblunskyParams};
pub use setgeom::{cantor_approximant, IntervalUnion};
