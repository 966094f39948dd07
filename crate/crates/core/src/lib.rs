//! Complex vectors of `C^n` as rank-2 projections of `R^{2n}`.
//!
//! The core is generic over the real scalar (`f32` or `f64`); the aliases
//! below fix it to `f64` for everyday use.

pub mod angular;
pub mod error;
pub mod frames;
pub mod geometry;
pub mod realify;
pub mod retrieval;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

use num_complex::Complex;

pub type RealVector = geometry::Vector<f64>;
pub type ComplexVector = geometry::Vector<Complex<f64>>;
pub type RealSubspace = geometry::Subspace<f64>;
pub type ComplexSubspace = geometry::Subspace<Complex<f64>>;
pub type RealMatrix = geometry::Matrix<f64>;
pub type ComplexMatrix = geometry::Matrix<Complex<f64>>;
pub type Tol = geometry::Tolerance<f64>;
pub type RealFamily = retrieval::ProjectionFamily<f64>;
pub type ComplexFamily = retrieval::ProjectionFamily<Complex<f64>>;
pub type RealFrame = frames::Frame<f64>;
pub type ComplexFrame = frames::Frame<Complex<f64>>;
pub type RealFusionFrame = frames::FusionFrame<f64>;
pub type Mub = angular::MubFamily<f64>;

pub type RealVector32 = geometry::Vector<f32>;
pub type ComplexVector32 = geometry::Vector<Complex<f32>>;
pub type Tol32 = geometry::Tolerance<f32>;
