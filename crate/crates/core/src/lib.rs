//! Exact symbolic engine for quantization maps on cotangent bundles.
//!
//! Everything upstream of the spectral module is exact: phase-space
//! functions are multivariate rational functions over the Gaussian
//! rationals, and differential operators are kept in a normal-ordered
//! canonical form, so every operator identity is decided by syntactic
//! equality. Floating point enters only when a polarized operator is
//! discretized on a grid.
//!
//! Module map:
//! - [`context`]: variable registry (`q^i`, `p_i`, parameters).
//! - [`expr`]: rational-function arithmetic, differentiation, substitution.
//! - [`diffop`]: normal-ordered differential operators and commutators.
//! - [`symplectic`]: Hamiltonian fields, Poisson bracket, Laplacians.
//! - [`quantize`]: the canonical, prequantization, and tuned maps.
//! - [`coords`]: cotangent-lifted coordinate changes and pushforwards.
//! - [`spectral`]: finite-difference spectra and norm probes.
//! - [`suite`]: the seeded verification suite shared by tests and the CLI.

pub mod builtins;
pub mod context;
pub mod coords;
pub mod diffop;
pub mod error;
pub mod expr;
pub mod number;
pub mod parse;
pub mod poly;
pub mod quantize;
pub mod spectral;
pub mod suite;
pub mod symplectic;

pub use context::{PhaseContext, Var, VarKind};
pub use diffop::{DerivIndex, DiffOperator};
pub use error::{Error, Result};
pub use expr::PhaseFunction;
