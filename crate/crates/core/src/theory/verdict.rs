use std::fmt;

use num_complex::Complex;

use crate::moebius::MapKind;

/// Which established fact a verdict or formula rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Citation {
    /// A hyponormal `C_φ` forces `φ(0) = 0`.
    OriginNotFixed,
    /// `φ(z) = λz`, `|λ| ≤ 1`, gives a normal `C_φ`.
    RotationOrDilation,
    /// A hyponormal `C_φ` with `φ` an automorphism fixing 0 is a rotation.
    AutomorphismNotRotation,
    /// Compact hyponormal `C_φ` is normal, so `φ` is a dilation.
    CompactNotDilation,
    /// Contact `φ(ζ) = η` with `ζ ≠ η` for a non-automorphism.
    DistinctContact,
    /// A parabolic non-automorphism has a single boundary fixed point.
    ParabolicSingleFixedPoint,
    /// Hyperbolic non-automorphism fixing 0 in the form `(1 − |c|)z/(cz + 1)`.
    HyperbolicCandidateForm,
    /// Hyperbolic non-automorphism fixing 0 outside that form.
    HyperbolicNotCandidate,
    /// Single contact point where the weight vanishes.
    ContactZero,
    /// Compact operator with a boundary Denjoy-Wolff point.
    CompactBoundaryDenjoyWolff,
    /// The kernel norm inequality along a parabolic non-automorphism.
    KernelNormInequality,
    /// Compact case: hyponormal iff the exact normal form.
    CompactNormalForm,
    /// Unitary weighted composition in normal form.
    NormalWeightForm,
    /// Hardy-space weight form forced by an interior and a boundary fixed point.
    FixedPointWeightForm,
    /// Numerically certified kernel-combination witness.
    NumericWitness,
    /// No exclusion applies.
    NoExclusion,
    /// `r = |ψ(ζ)| φ′(ζ)^{−γ/2}` at a boundary Denjoy-Wolff point.
    BoundaryRadius,
    /// `r = |ψ(ζ)|` for a parabolic non-automorphism.
    ParabolicRadius,
    /// Constant weight times `r(C_φ)`.
    ConstantWeightRadius,
    /// Hyponormal with an interior fixed point: `‖C‖ = r = |ψ(p)|`.
    InteriorFixedPointRadius,
    /// `r_e(C_φ) = φ′(ζ)^{−γ/2}` at a boundary Denjoy-Wolff point.
    EssentialRadius,
    /// `|λ| ≤ |ψ(ζ)| r(C_φ)` for point eigenvalues.
    EigenvalueBound,
    /// `‖C*K_w‖/‖K_w‖ ≤ ‖C‖`.
    KernelLowerBound,
    /// `sup|ψ| ((1 + |φ(0)|)/(1 − |φ(0)|))^{γ/2}`.
    SubordinationUpperBound,
    /// Hyponormal with `φ(0) = 0` and one boundary fixed point.
    OriginBoundaryNormBounds,
    /// Hyponormal with interior fixed point `p` and boundary fixed point `ζ`.
    InteriorBoundaryNormBounds,
    /// Singular Clark measure of a non-automorphism with boundary contact.
    ClarkAtom,
}

impl Citation {
    pub fn label(self) -> &'static str {
        use Citation::*;
        match self {
            OriginNotFixed => "origin-not-fixed",
            RotationOrDilation => "rotation-or-dilation",
            AutomorphismNotRotation => "automorphism-not-rotation",
            CompactNotDilation => "compact-not-dilation",
            DistinctContact => "distinct-contact",
            ParabolicSingleFixedPoint => "parabolic-single-fixed-point",
            HyperbolicCandidateForm => "hyperbolic-candidate-form",
            HyperbolicNotCandidate => "hyperbolic-not-candidate",
            ContactZero => "contact-zero",
            CompactBoundaryDenjoyWolff => "compact-boundary-denjoy-wolff",
            KernelNormInequality => "kernel-norm-inequality",
            CompactNormalForm => "compact-normal-form",
            NormalWeightForm => "normal-weight-form",
            FixedPointWeightForm => "fixed-point-weight-form",
            NumericWitness => "numeric-witness",
            NoExclusion => "no-exclusion",
            BoundaryRadius => "boundary-radius",
            ParabolicRadius => "parabolic-radius",
            ConstantWeightRadius => "constant-weight-radius",
            InteriorFixedPointRadius => "interior-fixed-point-radius",
            EssentialRadius => "essential-radius",
            EigenvalueBound => "eigenvalue-bound",
            KernelLowerBound => "kernel-lower-bound",
            SubordinationUpperBound => "subordination-upper-bound",
            OriginBoundaryNormBounds => "origin-boundary-norm-bounds",
            InteriorBoundaryNormBounds => "interior-boundary-norm-bounds",
            ClarkAtom => "clark-atom",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Normal,
    NotHyponormal,
    CandidateNotExcluded,
    CertifiedNotNumeric,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Normal => "Normal",
            Outcome::NotHyponormal => "NotHyponormal",
            Outcome::CandidateNotExcluded => "CandidateNotExcluded",
            Outcome::CertifiedNotNumeric => "CertifiedNotNumeric",
        }
    }

    /// True when the operator is shown not to be hyponormal.
    pub fn excludes(self) -> bool {
        matches!(self, Outcome::NotHyponormal | Outcome::CertifiedNotNumeric)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `f = Σ cᵢ K_{wᵢ}` with `‖C*f‖ > ‖Cf‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub points: Vec<Complex<T>>,
    pub coeffs: Vec<Complex<T>>,
    /// Truncated `‖Cf‖`.
    pub c_norm: T,
    pub c_adjoint_norm: T,
    /// Bound on the part of `‖Cf‖` lost to truncation.
    pub tail: T,
}

impl<T: crate::Real> Witness<T> {
    pub fn gap(&self) -> T {
        self.c_adjoint_norm - self.c_norm
    }
}

/// A grid point where the parabolic kernel inequality fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelInequalityViolation<T> {
    pub w: Complex<T>,
    /// `|ψ(w)| ((1 − |w|²)/(1 − |φ(w)|²))^{γ/2}`.
    pub lhs: T,
    /// `|ψ(ζ)|`.
    pub rhs: T,
}

impl<T: crate::Real> KernelInequalityViolation<T> {
    pub fn margin(&self) -> T {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyponormalityVerdict<T> {
    pub outcome: Outcome,
    pub citation: Citation,
    pub witness: Option<Witness<T>>,
    pub violation: Option<KernelInequalityViolation<T>>,
    /// `c` of the candidate form `(1 − |c|)z/(cz + 1)`.
    pub candidate_c: Option<Complex<T>>,
    pub map_kind: Option<MapKind>,
    pub details: Vec<String>,
}

impl<T> HyponormalityVerdict<T> {
    pub(crate) fn new(outcome: Outcome, citation: Citation, map_kind: Option<MapKind>, details: Vec<String>) -> Self {
        Self {
            outcome,
            citation,
            witness: None,
            violation: None,
            candidate_c: None,
            map_kind,
            details,
        }
    }
}
