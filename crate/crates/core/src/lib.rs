//! gup-forge: a symbolic-numeric workbench for deformed commutator algebras
//! and the generalized uncertainty relations they produce.
//!
//! The core pieces:
//! - a scalar tower ([`real`]) whose nested dual numbers give exact
//!   derivatives through every evaluation path,
//! - radial deformation profiles and momentum-space fields ([`profile`],
//!   [`field`]),
//! - a normal-ordering bracket engine over position/rotation generator words
//!   with momentum-dependent coefficients ([`bracket`]),
//! - preset algebra catalogues and branch classification ([`presets`]),
//! - uncertainty-bound curves ([`uncertainty`]), deformed relativistic
//!   generator representations ([`kappa`]), lattice dispersion simulations
//!   ([`lattice`]), composite-body scaling ([`composite`]) and canonical
//!   momentum transforms ([`transforms`]).

pub mod error;
pub mod field;
pub mod ode;
pub mod profile;
pub mod quad;
pub mod real;
pub mod sample;
pub mod series;
pub mod units;

pub use error::{Error, Result};
pub use field::{lift_radial, ScalarField};
pub use profile::{Domain, RadialProfile};
pub use real::{Cplx, Dual, Real};
pub use units::UnitSystem;

/// Default working scalar.
pub type Scalar = f64;
/// One, two, three and four derivative slots over [`Scalar`].
pub type Dual1 = Dual<Scalar>;
pub type Dual2 = Dual<Dual1>;
pub type Dual3 = Dual<Dual2>;
pub type Dual4 = Dual<Dual3>;
/// Exact rational scalar used where truncation would lose information.
pub type Rational = num_rational::BigRational;
