//! Report types behind `--format json`, plus the text and CSV renderings.
//!
//! JSON layout:
//!
//! ```text
//! { command, input, space, map_class?, verdict?{outcome, citation, witness?, ...},
//!   spectral?{r?, r_e?, norm_lower?, norm_upper?, citations, ...}, numeric?,
//!   items?, diagnostics[], wall_time }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. `wall_time` (seconds) is the only
//! field that changes between runs with the same flags.
//!
//! CSV: the matrix section is `n,j,re,im` in row-major order, the eigenvalue
//! list is `k,re,im`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hypocomp::linalg::Matrix;
use hypocomp::moebius::FixedPointLocation;
use hypocomp::theory::{Formula, NormBounds, Witness};
use hypocomp::{HyponormalityVerdict64, MapClass, SpectralEstimate, SpectralReport64, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Input,
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map_class: Option<MapClassOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<ItemOut>,
    pub diagnostics: Vec<String>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    pub n: usize,
    pub seed: u64,
    pub numeric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointOut {
    /// `None` for the point at infinity.
    pub z: Option<C64>,
    pub multiplier: C64,
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapClassOut {
    pub kind: String,
    pub coefficients: [C64; 4],
    pub denjoy_wolff: Option<C64>,
    pub fixed_points: Vec<FixedPointOut>,
    pub sup_modulus: f64,
}

impl MapClassOut {
    pub fn new(class: &MapClass<f64>, coefficients: [C64; 4]) -> Self {
        let finite = |l: FixedPointLocation<f64>| match l {
            FixedPointLocation::Finite(z) => Some(z),
            FixedPointLocation::Infinity => None,
        };
        Self {
            kind: class.kind.name().to_string(),
            coefficients,
            denjoy_wolff: class.denjoy_wolff.and_then(|p| finite(p.location)),
            fixed_points: class
                .fixed_points
                .iter()
                .map(|p| FixedPointOut {
                    z: finite(p.location),
                    multiplier: p.multiplier,
                    on_boundary: p.on_boundary,
                })
                .collect(),
            sup_modulus: class.sup_modulus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub points: Vec<C64>,
    pub coeffs: Vec<C64>,
    pub c_norm: f64,
    pub c_adjoint_norm: f64,
    pub tail: f64,
}

impl From<&Witness<f64>> for WitnessOut {
    fn from(w: &Witness<f64>) -> Self {
        Self {
            points: w.points.clone(),
            coeffs: w.coeffs.clone(),
            c_norm: w.c_norm,
            c_adjoint_norm: w.c_adjoint_norm,
            tail: w.tail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationOut {
    pub w: C64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictOut {
    pub outcome: String,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_c: Option<C64>,
    pub details: Vec<String>,
}

impl From<&HyponormalityVerdict64> for VerdictOut {
    fn from(v: &HyponormalityVerdict64) -> Self {
        Self {
            outcome: v.outcome.label().to_string(),
            citation: v.citation.label().to_string(),
            witness: v.witness.as_ref().map(WitnessOut::from),
            violation: v.violation.map(|x| ViolationOut {
                w: x.w,
                lhs: x.lhs,
                rhs: x.rhs,
            }),
            candidate_c: v.candidate_c,
            details: v.details.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsOut {
    pub lower: f64,
    pub upper: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralOut {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_upper: Option<f64>,
    /// Bounds that hold if the operator is hyponormal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditional_bounds: Option<BoundsOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_bound: Option<f64>,
    /// Field name to the result it comes from.
    pub citations: BTreeMap<String, String>,
    pub unavailable: Vec<String>,
}

impl From<&SpectralReport64> for SpectralOut {
    fn from(s: &SpectralReport64) -> Self {
        let mut citations = BTreeMap::new();
        let mut take = |name: &str, f: Option<Formula<f64>>| {
            f.map(|f| {
                citations.insert(name.to_string(), f.citation.label().to_string());
                f.value
            })
        };
        let r = take("r", s.r);
        let r_e = take("r_e", s.r_e);
        let norm_lower = take("norm_lower", Some(s.norm_lower));
        let norm_upper = take("norm_upper", s.norm_upper);
        let eigenvalue_bound = take("eigenvalue_bound", s.eigenvalue_bound);
        let conditional_bounds = s.conditional_bounds.map(|b: NormBounds<f64>| {
            citations.insert("conditional_bounds".into(), b.citation.label().to_string());
            BoundsOut {
                lower: b.lower,
                upper: b.upper,
                mu: b.mu,
            }
        });
        Self {
            r,
            r_e,
            norm_lower,
            norm_upper,
            conditional_bounds,
            eigenvalue_bound,
            citations,
            unavailable: s.unavailable.clone(),
        }
    }
}

/// Finite-section numbers. Advisory: none of them decides anything.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericOut {
    pub order: usize,
    pub operator_norm: f64,
    pub operator_norm_method: String,
    pub truncation_radius: f64,
    pub gelfand_power: usize,
    pub gelfand: f64,
    pub advisory: bool,
}

impl NumericOut {
    pub fn new(norm: &SpectralEstimate<f64>, radius: &SpectralEstimate<f64>, gelfand: &SpectralEstimate<f64>, k: usize) -> Self {
        Self {
            order: norm.order,
            operator_norm: norm.value,
            operator_norm_method: format!("{:?}", norm.method),
            truncation_radius: radius.value,
            gelfand_power: k,
            gelfand: gelfand.value,
            advisory: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemOut {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn cx(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} on {}", self.command, self.space);
        if let Some(m) = &self.input.map {
            let _ = writeln!(s, "  map: {m}");
        }
        if let Some(p) = &self.input.psi {
            let _ = writeln!(s, "  psi: {p}");
        }
        if let Some(mc) = &self.map_class {
            let _ = writeln!(s, "class: {}", mc.kind);
            if let Some(dw) = mc.denjoy_wolff {
                let _ = writeln!(s, "  Denjoy-Wolff point: {}", cx(dw));
            }
            for p in &mc.fixed_points {
                let at = p.z.map(cx).unwrap_or_else(|| "infinity".into());
                let _ = writeln!(s, "  fixed point {at}, multiplier {}", cx(p.multiplier));
            }
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(s, "verdict: {} ({})", v.outcome, v.citation);
            if let Some(x) = &v.violation {
                let _ = writeln!(s, "  violated at w = {}: {:.12} > {:.12}", cx(x.w), x.lhs, x.rhs);
            }
            if let Some(c) = v.candidate_c {
                let _ = writeln!(s, "  candidate c = {}", cx(c));
            }
            if let Some(w) = &v.witness {
                let _ = writeln!(
                    s,
                    "  witness on {} kernels: |C*f| = {:.12}, |Cf| = {:.12}, tail {:.3e}",
                    w.points.len(),
                    w.c_adjoint_norm,
                    w.c_norm,
                    w.tail
                );
            }
            for d in &v.details {
                let _ = writeln!(s, "  {d}");
            }
        }
        if let Some(sp) = &self.spectral {
            let cite = |k: &str| sp.citations.get(k).map(|c| format!(" [{c}]")).unwrap_or_default();
            let mut line = |name: &str, v: Option<f64>| {
                if let Some(v) = v {
                    let _ = writeln!(s, "{name} = {v:.12}{}", cite(name));
                }
            };
            line("r", sp.r);
            line("r_e", sp.r_e);
            line("norm_lower", sp.norm_lower);
            line("norm_upper", sp.norm_upper);
            line("eigenvalue_bound", sp.eigenvalue_bound);
            if let Some(b) = &sp.conditional_bounds {
                let _ = writeln!(
                    s,
                    "if hyponormal: {:.12} <= norm <= {:.12}{}",
                    b.lower,
                    b.upper,
                    cite("conditional_bounds")
                );
            }
            for u in &sp.unavailable {
                let _ = writeln!(s, "unavailable: {u}");
            }
        }
        if let Some(n) = &self.numeric {
            let _ = writeln!(s, "finite section N = {} (advisory)", n.order);
            let _ = writeln!(s, "  norm {:.12} by {}", n.operator_norm, n.operator_norm_method);
            let _ = writeln!(s, "  truncation radius {:.12}", n.truncation_radius);
            let _ = writeln!(s, "  Gelfand (k = {}) {:.12}", n.gelfand_power, n.gelfand);
        }
        for it in &self.items {
            let tag = if it.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag} {}: {}", it.name, it.detail);
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "note: {d}");
        }
        s
    }
}

pub fn matrix_csv(m: &Matrix<f64>) -> String {
    let mut s = String::from("n,j,re,im\n");
    for (n, j, z) in m.row_major() {
        let _ = writeln!(s, "{n},{j},{:e},{:e}", z.re, z.im);
    }
    s
}

pub fn eigenvalue_csv(eig: &[C64]) -> String {
    let mut s = String::from("k,re,im\n");
    for (k, z) in eig.iter().enumerate() {
        let _ = writeln!(s, "{k},{:e},{:e}", z.re, z.im);
    }
    s
}
