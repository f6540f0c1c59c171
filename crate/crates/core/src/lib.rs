//! Weighted composition operators `f ↦ ψ·(f∘φ)` with linear-fractional `φ` on
//! the Hardy space and the weighted Bergman spaces.
//!
//! The core is generic over the real scalar (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < y)` is deliberate: NaN must fail the test

pub mod error;
pub mod funcalg;
pub mod linalg;
pub mod matrixrep;
pub mod moebius;
pub mod scalar;
pub mod space;
pub mod theory;
pub mod tolerance;

pub use error::{Error, Result};
pub use matrixrep::{CompositionSymbol, OperatorMatrix, SpectralEstimate};
pub use funcalg::{AnalyticFunction, Polynomial, RationalFunction, TaylorSeries};
pub use moebius::{FixedPointData, MapClass, MapKind, MoebiusMap};
pub use scalar::Real;
pub use space::{CoeffVector, SpaceKind, SpaceSpec};
pub use theory::{HyponormalityVerdict, NormalFormSymbols, Outcome, SpectralReport};
pub use tolerance::Tolerances;

pub type C64 = num_complex::Complex<f64>;
pub type MoebiusMap64 = MoebiusMap<f64>;
pub type AnalyticFunction64 = AnalyticFunction<f64>;
pub type SpaceSpec64 = SpaceSpec<f64>;
pub type OperatorMatrix64 = OperatorMatrix<f64>;
pub type HyponormalityVerdict64 = HyponormalityVerdict<f64>;
pub type SpectralReport64 = SpectralReport<f64>;
