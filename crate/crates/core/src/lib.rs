//! Anomalous exponents `α±(F)` and self-similar profiles for fully nonlinear
//! uniformly parabolic equations `u_t + F(D²u) = 0`.
//!
//! Three independent exponent solvers share one operator description:
//!
//! * [`radial::find_alpha_shooting`] integrates the radial eigen-ODE and
//!   bisects on the decay class,
//! * [`resolvent::inverse_power_iteration`] iterates the discrete solution
//!   operator of `F(D²u) − ½ y·Du = v` using Howard policy iteration,
//! * [`flow::normalized_rescaled_flow`] relaxes the continuous rescaling flow
//!   to its stationary state.
//!
//! [`flow`] also evolves radial Cauchy data and measures the collapse of
//! rescaled solutions onto `C*Φ⁺`, and [`verify`] checks the closed-form
//! inequalities behind the exponent bounds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod flow;
pub mod interp;
pub mod mesh;
pub mod operator;
pub mod radial;
pub mod resolvent;
mod stencil;
mod tridiag;
pub mod verify;

pub use error::{Error, Result};
pub use mesh::{default_r_max, ProfileField, RadialGrid};
pub use operator::{
    check_ellipticity_sandwich, check_homogeneity, eval_operator, eval_pucci, radial_hessian_spectrum,
    EllipticityBounds, HessianSpectrum, OperatorKind, OperatorSpec, PucciSign,
};
pub use radial::{eigen_residual, find_alpha_shooting, shoot, EigenResult, Method, ShootingOutcome};
pub use resolvent::{apply_resolvent, exponent_pair, inverse_power_iteration};
