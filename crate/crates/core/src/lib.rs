//! Three-group language competition model: two monolingual groups (M1, M2)
//! and one bilingual group (B) living on the 2-simplex `m1 + m2 + b = 1`.
//!
//! The crate is `no_std` (it needs `alloc` for trajectories and sweep
//! results). Everything here is pure computation:
//!
//! * [`competency`]: pairwise vocabulary mutuality and the derived bilingual status.
//! * [`model`]: parameters, simplex states and the right-hand side of the ODE system.
//! * [`equilibria`]: closed-form fixed points, Jacobians and stability classification.
//! * [`dynamics`]: fixed-step RK4 and adaptive Dormand–Prince integration on the simplex.
//! * [`analysis`]: threshold estimation, scenario table, basins, loci and sweeps.
//! * [`baselines`]: mean-field comparison models (Wang–Minett, Mira–Paredes, Vázquez).
//!
//! File formats, the CLI and parallel drivers live in the `langcomp` crate.
#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

pub mod analysis;
pub mod baselines;
pub mod competency;
pub mod dynamics;
pub mod equilibria;
mod error;
mod math;
pub mod model;

pub use error::{Error, IntegrationFailure, ParamViolation};
pub use math::Complex64;
