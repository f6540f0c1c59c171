//! Mini-language for symbols and spaces.
//!
//! Maps: `a,b,c,d` for `(az + b)/(cz + d)`, or one of `rotation:λ`,
//! `dilation:λ`, `parabolic:ζ,t`, `hyperbolic-nonauto:c`, `normal-form:p,δ`.
//!
//! Weights: a coefficient list `c0,c1,…`, a quotient `num/den` of two such
//! lists (brackets optional, e.g. `[1]/[1,-0.5]`), or `kernel-quotient:p,v`
//! for `v·K_p/(K_p∘φ)`. Complex numbers are written `0.3`, `-0.2+0.4i`, `i`.

use hypocomp::moebius::{cayley_parabolic, hyperbolic_nonauto_form};
use hypocomp::theory::{fixed_point_weight, normal_form_map};
use hypocomp::{AnalyticFunction64, MoebiusMap64, Polynomial, RationalFunction, SpaceSpec64, C64};

use crate::failure::Failure;

pub fn complex(s: &str) -> Result<C64, Failure> {
    let t = s.trim();
    t.parse::<C64>()
        .map_err(|_| Failure::Input(format!("cannot read {t:?} as a complex number")))
}

pub fn complex_list(s: &str) -> Result<Vec<C64>, Failure> {
    s.split(',').map(complex).collect()
}

pub fn space(s: &str) -> Result<SpaceSpec64, Failure> {
    let t = s.trim().to_ascii_lowercase();
    if t == "hardy" || t == "h2" {
        return Ok(SpaceSpec64::hardy());
    }
    let alpha = match t.strip_prefix("bergman") {
        Some("") => 0.0,
        Some(rest) => {
            let a = rest.strip_prefix(':').ok_or_else(|| Failure::Input(format!("unknown space {s:?}")))?;
            a.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("cannot read Bergman weight {a:?}")))?
        }
        None => return Err(Failure::Input(format!("unknown space {s:?}; use hardy or bergman:<alpha>"))),
    };
    SpaceSpec64::bergman(alpha).map_err(Failure::input)
}

fn args<const K: usize>(name: &str, s: &str) -> Result<[C64; K], Failure> {
    let v = complex_list(s)?;
    v.try_into()
        .map_err(|v: Vec<C64>| Failure::Input(format!("{name} takes {K} arguments, got {}", v.len())))
}

pub fn map(s: &str) -> Result<MoebiusMap64, Failure> {
    let t = s.trim();
    let Some((name, rest)) = t.split_once(':') else {
        let [a, b, c, d] = args::<4>("a,b,c,d", t)?;
        return MoebiusMap64::new(a, b, c, d).map_err(Failure::input);
    };
    let m = match name.trim() {
        "rotation" => {
            let [l] = args::<1>("rotation", rest)?;
            if (l.norm() - 1.0).abs() > 1e-12 {
                return Err(Failure::Input(format!("rotation needs |λ| = 1, got {}", l.norm())));
            }
            MoebiusMap64::dilation(l)
        }
        "dilation" => {
            let [l] = args::<1>("dilation", rest)?;
            MoebiusMap64::dilation(l)
        }
        "parabolic" => {
            let [zeta, t] = args::<2>("parabolic", rest)?;
            cayley_parabolic(zeta, t)
        }
        "hyperbolic-nonauto" => {
            let [c] = args::<1>("hyperbolic-nonauto", rest)?;
            hyperbolic_nonauto_form(c)
        }
        "normal-form" => {
            let [p, d] = args::<2>("normal-form", rest)?;
            normal_form_map(p, d)
        }
        other => return Err(Failure::Input(format!("unknown map form {other:?}"))),
    };
    m.map_err(Failure::input)
}

/// A weight; `kernel-quotient` needs the map before it becomes a function.
#[derive(Debug, Clone)]
pub enum Weight {
    Function(AnalyticFunction64),
    KernelQuotient { p: C64, value: C64 },
}

fn strip_brackets(s: &str) -> &str {
    let t = s.trim();
    t.strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
        .unwrap_or(t)
}

pub fn weight(s: &str) -> Result<Weight, Failure> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("kernel-quotient:") {
        let [p, value] = args::<2>("kernel-quotient", rest)?;
        return Ok(Weight::KernelQuotient { p, value });
    }
    let f = match t.split_once('/') {
        Some((num, den)) => {
            let num = Polynomial::new(complex_list(strip_brackets(num))?);
            let den = Polynomial::new(complex_list(strip_brackets(den))?);
            RationalFunction::new(num, den).and_then(AnalyticFunction64::from_rational)
        }
        None => AnalyticFunction64::polynomial(Polynomial::new(complex_list(strip_brackets(t))?)),
    };
    f.map(Weight::Function).map_err(Failure::input)
}

impl Weight {
    pub fn resolve(&self, phi: &MoebiusMap64, space: &SpaceSpec64) -> Result<AnalyticFunction64, Failure> {
        match self {
            Weight::Function(f) => Ok(f.clone()),
            Weight::KernelQuotient { p, value } => fixed_point_weight(*p, *value, phi, space).map_err(Failure::input),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spaces() {
        assert_eq!(space("hardy").unwrap(), SpaceSpec64::hardy());
        assert_eq!(space("bergman:1").unwrap().gamma(), 3.0);
        assert_eq!(space("Bergman").unwrap().gamma(), 2.0);
        assert!(space("bergman:-2").is_err());
        assert!(space("dirichlet").is_err());
    }

    #[test]
    fn maps() {
        let p = map("parabolic:1,1").unwrap();
        assert!(p.approx_eq(&MoebiusMap64::from_real(1.0, 1.0, -1.0, 3.0).unwrap(), 1e-12));
        let r = map("rotation:i").unwrap();
        assert!((r.eval(c(0.5, 0.0)).unwrap() - c(0.0, 0.5)).norm() < 1e-15);
        assert!(map("rotation:0.5").is_err());
        let lft = map(" 1, 0, 1, 2 ").unwrap();
        assert!((lft.eval(c(1.0, 0.0)).unwrap() - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        let nf = map("normal-form:0.3,0.4").unwrap();
        assert!((nf.eval(c(0.3, 0.0)).unwrap() - c(0.3, 0.0)).norm() < 1e-12);
        assert!(map("1,2,3").is_err());
        assert!(map("spiral:1").is_err());
        assert!(map("0,0,0,0").is_err());
    }

    #[test]
    fn weights() {
        let Weight::Function(f) = weight("3,2,-3").unwrap() else { panic!() };
        assert!((f.evaluate(c(1.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        let Weight::Function(g) = weight("[1]/[1,-0.5]").unwrap() else { panic!() };
        assert!((g.evaluate(c(1.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        let Weight::Function(h) = weight("0,1+i").unwrap() else { panic!() };
        assert!((h.evaluate(c(0.5, 0.0)).unwrap() - c(0.5, 0.5)).norm() < 1e-15);
        assert!(matches!(weight("kernel-quotient:0.3,1").unwrap(), Weight::KernelQuotient { .. }));
        assert!(weight("1,x").is_err());
        assert!(weight("[1]/[0]").is_err());
    }

    #[test]
    fn kernel_quotient_needs_fixed_point() {
        let w = weight("kernel-quotient:0.3,1").unwrap();
        let phi = map("normal-form:0.3,0.4").unwrap();
        let f = w.resolve(&phi, &SpaceSpec64::hardy()).unwrap();
        assert!((f.evaluate(c(0.3, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        let off = map("0.5,0,0,1").unwrap();
        assert!(w.resolve(&off, &SpaceSpec64::hardy()).is_err());
    }
}
