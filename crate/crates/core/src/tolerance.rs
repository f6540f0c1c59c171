use crate::scalar::{scaled_tol, Real};

/// Numeric thresholds that turn floating-point results into discrete classes.
///
/// Defaults are tuned for `f64`; every field is floored at a small multiple of
/// the scalar's machine epsilon so that `f32` instantiations stay meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Band around 1 for the boundary sup-modulus of a self-map.
    pub boundary: T,
    /// Residual allowed for fixed points and multipliers.
    pub fixed: T,
    /// Distance from the unit circle below which a fixed point counts as boundary.
    pub location: T,
    /// Relative discriminant below which two fixed points are merged.
    pub discriminant: T,
    /// Coefficient-wise agreement of two normalized maps.
    pub coefficient: T,
    /// Determinant floor below which a map is degenerate.
    pub determinant: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            boundary: scaled_tol(1e-10, 64.0),
            fixed: scaled_tol(1e-10, 64.0),
            location: scaled_tol(1e-8, 256.0),
            discriminant: scaled_tol(1e-12, 16.0),
            coefficient: scaled_tol(1e-10, 64.0),
            determinant: scaled_tol(1e-14, 4.0),
        }
    }
}
