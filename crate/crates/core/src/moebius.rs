//! Linear-fractional self-maps of the unit disk: exact coefficient algebra,
//! fixed points, Denjoy-Wolff points and the automorphism / non-automorphism
//! classification.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::{AnalyticFunction, Polynomial, RationalFunction};
use crate::scalar::{from_usize, lit, real, unimodular, Real};
use crate::space::SpaceSpec;
use crate::tolerance::Tolerances;

/// Number of equally spaced boundary samples used by the sup-modulus search.
pub const BOUNDARY_SAMPLES: usize = 4096;

/// `z ↦ (az + b)/(cz + d)` with `ad − bc ≠ 0`.
///
/// Coefficients are stored normalized: the largest has modulus one and `d` is
/// real and positive whenever it is not negligible, which makes the
/// representation unique.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap<T> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
}

impl<T: Real> MoebiusMap<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        Self::with_tolerances(a, b, c, d, &Tolerances::default())
    }

    pub fn with_tolerances(
        a: Complex<T>,
        b: Complex<T>,
        c: Complex<T>,
        d: Complex<T>,
        tol: &Tolerances<T>,
    ) -> Result<Self> {
        let scale = [a, b, c, d]
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max);
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::DegenerateMap);
        }
        let (a, b, c, d) = (a / scale, b / scale, c / scale, d / scale);
        let pivot = if d.norm() > lit(1e-6) {
            d
        } else {
            *[a, b, c, d]
                .iter()
                .max_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap())
                .unwrap()
        };
        let phase = pivot.conj() / pivot.norm();
        let m = Self {
            a: a * phase,
            b: b * phase,
            c: c * phase,
            d: d * phase,
        };
        if m.determinant().norm() < tol.determinant {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(real(lit(a)), real(lit(b)), real(lit(c)), real(lit(d)))
    }

    pub fn identity() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), Complex::default(), Complex::default(), Complex::new(T::one(), T::zero()))
            .expect("identity is non-degenerate")
    }

    /// `z ↦ λz`.
    pub fn dilation(lambda: Complex<T>) -> Result<Self> {
        Self::new(lambda, Complex::default(), Complex::default(), real(T::one()))
    }

    pub fn coefficients(&self) -> [Complex<T>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    /// `φ(z)`, or `None` at the pole.
    pub fn eval(&self, z: Complex<T>) -> Option<Complex<T>> {
        let den = self.c * z + self.d;
        if den.norm() == T::zero() {
            return None;
        }
        Some((self.a * z + self.b) / den)
    }

    pub fn derivative(&self, z: Complex<T>) -> Option<Complex<T>> {
        let den = self.c * z + self.d;
        if den.norm() == T::zero() {
            return None;
        }
        Some(self.determinant() / (den * den))
    }

    pub fn second_derivative(&self, z: Complex<T>) -> Option<Complex<T>> {
        let den = self.c * z + self.d;
        if den.norm() == T::zero() {
            return None;
        }
        Some(-(self.c * self.determinant()) * lit::<T>(2.0) / (den * den * den))
    }

    /// The pole `−d/c`, if finite.
    pub fn pole(&self) -> Option<Complex<T>> {
        if self.c.norm() == T::zero() {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a).expect("inverse of a non-degenerate map")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        compose(self, inner)
    }

    pub fn is_identity(&self, tol: &Tolerances<T>) -> bool {
        self.b.norm() <= tol.coefficient
            && self.c.norm() <= tol.coefficient
            && (self.a - self.d).norm() <= tol.coefficient
    }

    /// Coefficient-wise comparison of the normalized representations.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.coefficients()
            .iter()
            .zip(other.coefficients().iter())
            .all(|(x, y)| (*x - *y).norm() <= tol)
    }

    /// Numerator and denominator as polynomials.
    pub fn as_rational(&self) -> RationalFunction<T> {
        RationalFunction::new(
            Polynomial::new(vec![self.b, self.a]),
            Polynomial::new(vec![self.d, self.c]),
        )
        .expect("self-map denominator is not identically zero")
    }
}

/// `f ∘ g`, renormalized.
pub fn compose<T: Real>(f: &MoebiusMap<T>, g: &MoebiusMap<T>) -> Result<MoebiusMap<T>> {
    MoebiusMap::new(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )
}

/// Result of maximizing `|φ|` over the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryModulus<T> {
    pub sup: T,
    /// A boundary point where the supremum is attained.
    pub argmax: Complex<T>,
    pub is_self_map: bool,
}

fn modulus_sq_at<T: Real>(phi: &MoebiusMap<T>, theta: T) -> T {
    phi.eval(unimodular(theta))
        .map(|w| w.norm_sqr())
        .unwrap_or_else(T::infinity)
}

/// First and second θ-derivatives of `|φ(e^{iθ})|²`.
fn modulus_sq_derivs<T: Real>(phi: &MoebiusMap<T>, theta: T) -> Option<(T, T)> {
    let z = unimodular(theta);
    let i = Complex::new(T::zero(), T::one());
    let w = phi.eval(z)?;
    let d1 = phi.derivative(z)?;
    let d2 = phi.second_derivative(z)?;
    let u = i * z * d1;
    let du = -(z * d1) - z * z * d2;
    let two = lit::<T>(2.0);
    let first = two * (w.conj() * u).re;
    let second = two * (u.norm_sqr() + (w.conj() * du).re);
    Some((first, second))
}

/// Sup-modulus of `φ` on the unit circle: dense sampling, golden-section
/// refinement, then a Newton polish on the stationarity condition.
pub fn is_self_map<T: Real>(phi: &MoebiusMap<T>, tol: &Tolerances<T>) -> Result<BoundaryModulus<T>> {
    if let Some(p) = phi.pole() {
        if p.norm() <= T::one() {
            return Err(Error::NotSelfMap(format!(
                "pole at modulus {} inside the closed disk",
                p.norm().to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    let two_pi = T::PI() + T::PI();
    let step = two_pi / from_usize(BOUNDARY_SAMPLES);
    let (mut best_k, mut best) = (0usize, T::neg_infinity());
    for k in 0..BOUNDARY_SAMPLES {
        let f = modulus_sq_at(phi, step * from_usize(k));
        if f > best {
            best = f;
            best_k = k;
        }
    }
    let centre = step * from_usize(best_k);
    let (mut lo, mut hi) = (centre - step, centre + step);
    let inv_phi = lit::<T>(0.618_033_988_749_894_9);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (modulus_sq_at(phi, x1), modulus_sq_at(phi, x2));
    for _ in 0..80 {
        if hi - lo < lit(1e-11) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = modulus_sq_at(phi, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = modulus_sq_at(phi, x1);
        }
    }
    let mut theta = (lo + hi) / lit(2.0);
    let mut f = modulus_sq_at(phi, theta);
    if best > f {
        theta = centre;
        f = best;
    }
    for _ in 0..8 {
        let Some((g, h)) = modulus_sq_derivs(phi, theta) else { break };
        if !(h < T::zero()) {
            break;
        }
        let dt = -g / h;
        if dt.abs() > step || !dt.is_finite() {
            break;
        }
        let cand = theta + dt;
        let fc = modulus_sq_at(phi, cand);
        if fc + T::epsilon() * lit(4.0) < f {
            break;
        }
        theta = cand;
        f = fc.max(f);
        if dt.abs() < lit(1e-15) {
            break;
        }
    }
    let sup = f.sqrt();
    Ok(BoundaryModulus {
        sup,
        argmax: unimodular(theta),
        is_self_map: sup <= T::one() + tol.boundary,
    })
}

/// Location of a fixed point on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPointLocation<T> {
    Finite(Complex<T>),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointData<T> {
    pub location: FixedPointLocation<T>,
    /// `φ′` at the point; the angular derivative when it lies on the circle.
    pub multiplier: Complex<T>,
    pub multiplicity: u8,
    pub on_boundary: bool,
    /// Strictly inside the disk (outside the boundary band).
    pub in_disk: bool,
}

impl<T: Real> FixedPointData<T> {
    pub fn finite(&self) -> Option<Complex<T>> {
        match self.location {
            FixedPointLocation::Finite(z) => Some(z),
            FixedPointLocation::Infinity => None,
        }
    }

    pub fn in_closed_disk(&self) -> bool {
        self.in_disk || self.on_boundary
    }

    fn at(phi: &MoebiusMap<T>, z: Complex<T>, multiplicity: u8, tol: &Tolerances<T>) -> Self {
        let r = z.norm();
        Self {
            location: FixedPointLocation::Finite(z),
            multiplier: phi.derivative(z).unwrap_or_else(|| Complex::new(T::infinity(), T::zero())),
            multiplicity,
            on_boundary: (r - T::one()).abs() <= tol.location,
            in_disk: r < T::one() - tol.location,
        }
    }
}

/// Roots of `cz² + (d − a)z − b = 0` with their multipliers.
pub fn fixed_points<T: Real>(phi: &MoebiusMap<T>, tol: &Tolerances<T>) -> Result<Vec<FixedPointData<T>>> {
    if phi.is_identity(tol) {
        return Err(Error::IdentityMap);
    }
    let [a, b, c, d] = phi.coefficients();
    let mut out = Vec::with_capacity(2);
    let infinity = |multiplier, multiplicity| FixedPointData {
        location: FixedPointLocation::Infinity,
        multiplier,
        multiplicity,
        on_boundary: false,
        in_disk: false,
    };
    if c.norm() <= tol.determinant {
        let slope = d - a;
        if slope.norm() > tol.coefficient {
            out.push(FixedPointData::at(phi, b / slope, 1, tol));
            out.push(infinity(d / a, 1));
        } else {
            out.push(infinity(real(T::one()), 2));
        }
        return Ok(out);
    }
    let lin = d - a;
    let disc = lin * lin + b * c * lit::<T>(4.0);
    if disc.norm() < tol.discriminant {
        out.push(FixedPointData::at(phi, -lin / (c * lit::<T>(2.0)), 2, tol));
        return Ok(out);
    }
    // cz² + lin·z − b: pick the sign that avoids cancellation
    let mut root = disc.sqrt();
    if (lin.conj() * root).re < T::zero() {
        root = -root;
    }
    let q = (lin + root) * lit::<T>(-0.5);
    let z1 = q / c;
    let z2 = -b / q;
    let mut pts = vec![FixedPointData::at(phi, z1, 1, tol), FixedPointData::at(phi, z2, 1, tol)];
    pts.sort_by(|x, y| {
        let (rx, ry) = (x.finite().unwrap().norm(), y.finite().unwrap().norm());
        rx.partial_cmp(&ry).unwrap()
    });
    out.extend(pts);
    Ok(out)
}

/// The unique fixed point in the closed disk with `|φ′| ≤ 1`.
pub fn denjoy_wolff<T: Real>(phi: &MoebiusMap<T>, tol: &Tolerances<T>) -> Result<FixedPointData<T>> {
    let check = is_self_map(phi, tol)?;
    if !check.is_self_map {
        return Err(Error::NotSelfMap(format!("sup modulus {}", check.sup)));
    }
    let fps = match fixed_points(phi, tol) {
        Err(Error::IdentityMap) => return Err(Error::NoDenjoyWolff("identity map".into())),
        other => other?,
    };
    if let Some(p) = fps.iter().find(|p| p.in_disk) {
        if p.multiplier.norm() >= T::one() - tol.fixed {
            return Err(Error::NoDenjoyWolff("elliptic automorphism".into()));
        }
        return Ok(*p);
    }
    fps.iter()
        .filter(|p| p.on_boundary && p.multiplier.norm() <= T::one() + tol.fixed)
        .min_by(|x, y| x.multiplier.norm().partial_cmp(&y.multiplier.norm()).unwrap())
        .copied()
        .ok_or_else(|| Error::NoDenjoyWolff("no attracting fixed point in the closed disk".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Identity,
    EllipticAuto,
    HyperbolicAuto,
    ParabolicAuto,
    InteriorContraction,
    HyperbolicNonAuto,
    ParabolicNonAuto,
    BoundaryContactNoBoundaryFixedPoint,
}

impl MapKind {
    pub fn is_automorphism(self) -> bool {
        matches!(
            self,
            MapKind::Identity | MapKind::EllipticAuto | MapKind::HyperbolicAuto | MapKind::ParabolicAuto
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Identity => "Identity",
            MapKind::EllipticAuto => "EllipticAuto",
            MapKind::HyperbolicAuto => "HyperbolicAuto",
            MapKind::ParabolicAuto => "ParabolicAuto",
            MapKind::InteriorContraction => "InteriorContraction",
            MapKind::HyperbolicNonAuto => "HyperbolicNonAuto",
            MapKind::ParabolicNonAuto => "ParabolicNonAuto",
            MapKind::BoundaryContactNoBoundaryFixedPoint => "BoundaryContactNoBoundaryFixedPoint",
        }
    }
}

/// `φ(ζ) = η` with both points on the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryContact<T> {
    pub zeta: Complex<T>,
    pub eta: Complex<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapClass<T> {
    pub kind: MapKind,
    pub denjoy_wolff: Option<FixedPointData<T>>,
    /// Only for boundary-contacting non-automorphisms.
    pub contact: Option<BoundaryContact<T>>,
    pub sup_modulus: T,
    pub fixed_points: Vec<FixedPointData<T>>,
}

impl<T: Real> MapClass<T> {
    pub fn is_automorphism(&self) -> bool {
        self.kind.is_automorphism()
    }

    /// Denjoy-Wolff point when it lies on the circle.
    pub fn boundary_denjoy_wolff(&self) -> Option<FixedPointData<T>> {
        self.denjoy_wolff.filter(|p| p.on_boundary)
    }

    /// Denjoy-Wolff point when it lies inside the disk.
    pub fn interior_fixed_point(&self) -> Option<FixedPointData<T>> {
        self.fixed_points.iter().find(|p| p.in_disk).copied()
    }

    pub fn boundary_fixed_points(&self) -> impl Iterator<Item = &FixedPointData<T>> {
        self.fixed_points.iter().filter(|p| p.on_boundary)
    }
}

/// Places a self-map in exactly one class of the automorphism and
/// non-automorphism trichotomies.
pub fn classify<T: Real>(phi: &MoebiusMap<T>, tol: &Tolerances<T>) -> Result<MapClass<T>> {
    if phi.is_identity(tol) {
        return Ok(MapClass {
            kind: MapKind::Identity,
            denjoy_wolff: None,
            contact: None,
            sup_modulus: T::one(),
            fixed_points: Vec::new(),
        });
    }
    let bm = is_self_map(phi, tol)?;
    if !bm.is_self_map {
        return Err(Error::NotSelfMap(format!("sup modulus {}", bm.sup)));
    }
    let fps = fixed_points(phi, tol)?;
    let third = (T::PI() + T::PI()) / lit(3.0);
    let automorphism = (0..3).all(|k| {
        phi.eval(unimodular(third * from_usize(k)))
            .map(|w| (w.norm() - T::one()).abs() <= tol.boundary)
            .unwrap_or(false)
    });
    let interior = fps.iter().find(|p| p.in_disk).copied();
    let boundary: Vec<_> = fps.iter().filter(|p| p.on_boundary).copied().collect();

    let mut class = MapClass {
        kind: MapKind::InteriorContraction,
        denjoy_wolff: None,
        contact: None,
        sup_modulus: bm.sup,
        fixed_points: fps.clone(),
    };
    if automorphism {
        if interior.is_some() {
            class.kind = MapKind::EllipticAuto;
        } else if boundary.len() == 1 && boundary[0].multiplicity == 2 {
            class.kind = MapKind::ParabolicAuto;
            class.denjoy_wolff = Some(boundary[0]);
        } else if boundary.len() == 2 {
            class.kind = MapKind::HyperbolicAuto;
            class.denjoy_wolff = boundary
                .iter()
                .min_by(|x, y| x.multiplier.norm().partial_cmp(&y.multiplier.norm()).unwrap())
                .copied();
        } else {
            return Err(Error::HypothesisMismatch(
                "automorphism with an inconsistent fixed-point configuration".into(),
            ));
        }
        return Ok(class);
    }
    if bm.sup < T::one() - tol.boundary {
        class.denjoy_wolff = interior;
        return Ok(class);
    }
    if let Some(bp) = boundary.first() {
        let zeta = bp.finite().expect("boundary fixed points are finite");
        class.contact = Some(BoundaryContact { zeta, eta: zeta });
        let parabolic = bp.multiplicity == 2 || (bp.multiplier - real(T::one())).norm() <= tol.fixed;
        class.kind = if parabolic {
            MapKind::ParabolicNonAuto
        } else {
            MapKind::HyperbolicNonAuto
        };
        class.denjoy_wolff = interior.or_else(|| {
            boundary
                .iter()
                .find(|p| p.multiplier.norm() <= T::one() + tol.fixed)
                .copied()
        });
    } else {
        let zeta = bm.argmax;
        let eta = phi.eval(zeta).expect("no pole on the circle for a self-map");
        class.kind = MapKind::BoundaryContactNoBoundaryFixedPoint;
        class.contact = Some(BoundaryContact {
            zeta,
            eta: eta / eta.norm(),
        });
        class.denjoy_wolff = interior;
    }
    Ok(class)
}

/// `φ′(ζ)` at a boundary point mapped to the boundary.
pub fn angular_derivative<T: Real>(phi: &MoebiusMap<T>, zeta: Complex<T>, tol: &Tolerances<T>) -> Result<Complex<T>> {
    if (zeta.norm() - T::one()).abs() > tol.location {
        return Err(Error::InvalidParameter(format!(
            "zeta must be unimodular, got modulus {}",
            zeta.norm()
        )));
    }
    let image = phi.eval(zeta).ok_or(Error::PoleEncountered)?;
    if (image.norm() - T::one()).abs() > tol.location {
        return Err(Error::NoAngularDerivative {
            modulus: image.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    phi.derivative(zeta).ok_or(Error::PoleEncountered)
}

/// Krein adjoint `σ` and Cowen auxiliary functions `g`, `h` with
/// `C_φ* = T_g C_σ T_h*`.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinData<T> {
    pub sigma: MoebiusMap<T>,
    pub g: AnalyticFunction<T>,
    pub h: AnalyticFunction<T>,
}

impl<T: Real> KreinData<T> {
    /// Built from an explicit coefficient representation. `g` and `h` pick up
    /// reciprocal constant factors when the coefficients are rescaled.
    pub fn from_coefficients(coeffs: [Complex<T>; 4], space: &SpaceSpec<T>) -> Result<Self> {
        let [a, b, c, d] = coeffs;
        let sigma = MoebiusMap::new(a.conj(), -c.conj(), -b.conj(), d.conj())?;
        let gamma = space.gamma();
        let g_base = RationalFunction::new(
            Polynomial::new(vec![d.conj(), -b.conj()]),
            Polynomial::constant(real(T::one())),
        )?;
        let h_base = RationalFunction::new(
            Polynomial::new(vec![d, c]),
            Polynomial::constant(real(T::one())),
        )?;
        let g = AnalyticFunction::power(g_base, -gamma)?;
        let h = AnalyticFunction::power(h_base, gamma)?;
        Ok(Self { sigma, g, h })
    }
}

pub fn krein_adjoint<T: Real>(phi: &MoebiusMap<T>, space: &SpaceSpec<T>) -> Result<KreinData<T>> {
    let tol = Tolerances::default();
    let check = is_self_map(phi, &tol)?;
    if !check.is_self_map {
        return Err(Error::NotSelfMap(format!("sup modulus {}", check.sup)));
    }
    let data = KreinData::from_coefficients(phi.coefficients(), space)?;
    let sigma_check = is_self_map(&data.sigma, &tol)?;
    if !sigma_check.is_self_map {
        return Err(Error::NotSelfMap("Krein adjoint is not a self-map".into()));
    }
    Ok(data)
}

/// `τ⁻¹ ∘ (w ↦ w + t) ∘ τ` with `τ(z) = (1 + ζ̄z)/(1 − ζ̄z)`: the parabolic map
/// fixing `ζ` whose half-plane model is translation by `t`.
pub fn cayley_parabolic<T: Real>(zeta: Complex<T>, t: Complex<T>) -> Result<MoebiusMap<T>> {
    if (zeta.norm() - T::one()).abs() > lit(1e-12) {
        return Err(Error::InvalidParameter("zeta must be unimodular".into()));
    }
    if t.re < T::zero() {
        return Err(Error::NotSelfMap("translation with Re t < 0 leaves the half-plane".into()));
    }
    let one = real(T::one());
    let zb = zeta.conj();
    let tau = MoebiusMap::new(zb, one, -zb, one)?;
    let shift = MoebiusMap::new(one, t, Complex::default(), one)?;
    tau.inverse().compose(&shift.compose(&tau)?)
}

/// `(1 − |c|)z/(cz + 1)`, fixing 0 and the boundary point `ζ` with `cζ = −|c|`.
pub fn hyperbolic_nonauto_form<T: Real>(c: Complex<T>) -> Result<MoebiusMap<T>> {
    let m = c.norm();
    if !(m > T::zero() && m < T::one()) {
        return Err(Error::InvalidParameter(format!("need 0 < |c| < 1, got |c| = {m}")));
    }
    MoebiusMap::new(real(T::one() - m), Complex::default(), c, real(T::one()))
}

/// Boundary fixed point `ζ = −|c|/c` of [`hyperbolic_nonauto_form`].
pub fn hyperbolic_nonauto_boundary_point<T: Real>(c: Complex<T>) -> Complex<T> {
    -(real(c.norm())) / c
}

/// `α_p(z) = (p − z)/(1 − p̄z)`, the involutive automorphism swapping 0 and `p`.
pub fn alpha_p<T: Real>(p: Complex<T>) -> Result<MoebiusMap<T>> {
    if p.norm() >= T::one() {
        return Err(Error::InvalidParameter(format!("|p| = {} is not < 1", p.norm())));
    }
    MoebiusMap::new(real(-T::one()), p, -p.conj(), real(T::one()))
}
