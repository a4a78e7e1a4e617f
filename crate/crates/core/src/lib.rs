//! Rényi, Shannon, Tsallis and Onicescu measures of the one-dimensional
//! infinite square well with Dirichlet or Neumann walls, in position and
//! momentum space, plus the entropic uncertainty relations built from them.
//!
//! Position measures are closed forms. Momentum measures integrate the
//! oscillatory power-law kernel period by period and close the sum with an
//! analytic tail; orders at or below the divergence threshold
//! (`1/4` Dirichlet, `1/2` Neumann) are rejected.
//!
//! Everything is generic over the scalar type ([`scalar::Real`], i.e. `f64`
//! or `f32`); the aliases below fix it to `f64`.
//!
//! ```
//! use well_entropy::{entropy, BoundaryKind, Config, Orbital, Well};
//!
//! let spec = Well::unit(BoundaryKind::Dirichlet);
//! let cfg = Config::default();
//! let r = entropy::renyi_momentum(&spec, Orbital::GROUND, 0.5, &cfg).unwrap();
//! assert!((r.value - 2.8603).abs() < 1e-4);
//! ```

#![allow(clippy::excessive_precision)]

pub mod entropy;
pub mod error;
mod optimize;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod verify;
pub mod well;

pub use entropy::{Route, Space};
pub use error::{Error, Result};
pub use quadrature::QuadratureConfig;
pub use well::{BoundaryKind, Orbital, WellSpec};

pub type Well = WellSpec<f64>;
pub type Config = QuadratureConfig<f64>;
pub type Measure = entropy::MeasureResult<f64>;
pub type Report = entropy::UncertaintyReport<f64>;
pub type Integral = quadrature::IntegralResult<f64>;

pub type Well32 = WellSpec<f32>;
pub type Config32 = QuadratureConfig<f32>;
pub type Measure32 = entropy::MeasureResult<f32>;
pub type Report32 = entropy::UncertaintyReport<f32>;
