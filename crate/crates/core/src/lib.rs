//! Numerics for Fisher-KPP reaction-diffusion fronts under hyperbolic scaling.
//!
//! The crate is `no_std` (with `alloc`) and covers four layers:
//!
//! * [`model`]: parameters, grids, fields and the small value types shared by everything else.
//! * [`exact`]: closed-form action functionals of the Hamilton-Jacobi limit, the
//!   Ablowitz-Zeppetella kink and analytic residual checks.
//! * [`solver`]: explicit finite-difference integration of
//!   `rho_t = eps*D*rho_xx + (U/eps)*rho*(1 - rho)`.
//! * [`front`] and [`scaling`]: front position/speed/decay measurements and the
//!   log-transform analysis `rho = exp(-G/eps)` of simulated fields.
//!
//! IO, file formats and the command line live in the `fkpp-lab` crate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod exact;
pub mod front;
pub mod model;
pub mod scaling;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    make_grid, ActionField, ActionFunctionalSpec, ActionVariant, AnsatzParams, Branch,
    DimensionlessMap, FrontTrace, Grid1D, MomentumRoots, PhysicalParams, ScalarField, ScalingParam,
    TravelingFrame,
};
