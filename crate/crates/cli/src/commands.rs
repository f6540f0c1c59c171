use hypocomp::linalg::Matrix;
use hypocomp::matrixrep::{
    build_weighted_composition, gelfand_estimate, operator_norm_seeded, truncation_spectral_radius,
};
use hypocomp::moebius::{cayley_parabolic, classify};
use hypocomp::theory::{
    classify_unweighted, classify_weighted, essential_spectral_radius_closed, norm_bounds, normal_form,
    spectral_radius_closed, spectral_report, Citation, ClassifyOptions, Outcome, WitnessBudget,
};
use hypocomp::{AnalyticFunction64, MoebiusMap64, Polynomial, SpaceSpec64, Tolerances, C64};

use crate::failure::Failure;
use crate::parse;
use crate::report::{Input, ItemOut, MapClassOut, NumericOut, Report, SpectralOut, VerdictOut};

/// Power used for the Gelfand diagnostic.
const GELFAND_POWER: usize = 16;

#[derive(Debug, Clone)]
pub struct Config {
    pub space: SpaceSpec64,
    /// False when `--space` was left at its default.
    pub space_given: bool,
    pub n: usize,
    pub seed: u64,
    /// Truncation order of the witness search.
    pub witness_order: usize,
    /// Build the finite section for a CSV dump.
    pub want_matrix: bool,
}

pub struct Run {
    pub report: Report,
    pub matrix: Option<Matrix<f64>>,
}

impl Config {
    fn report(&self, command: &str, map: Option<&str>, psi: Option<&str>, numeric: bool) -> Report {
        Report {
            command: command.into(),
            input: Input {
                map: map.map(str::to_string),
                psi: psi.map(str::to_string),
                n: self.n,
                seed: self.seed,
                numeric,
            },
            space: self.space.to_string(),
            map_class: None,
            verdict: None,
            spectral: None,
            numeric: None,
            items: Vec::new(),
            diagnostics: Vec::new(),
            wall_time: 0.0,
        }
    }

    fn section(&self, psi: &AnalyticFunction64, phi: &MoebiusMap64) -> Result<Option<Matrix<f64>>, Failure> {
        if !self.want_matrix {
            return Ok(None);
        }
        Ok(Some(build_weighted_composition(psi, &(*phi).into(), &self.space, self.n)?.entries))
    }
}

fn map_class(phi: &MoebiusMap64) -> Result<MapClassOut, Failure> {
    let class = classify(phi, &Tolerances::default()).map_err(Failure::input)?;
    Ok(MapClassOut::new(&class, phi.coefficients()))
}

fn one() -> AnalyticFunction64 {
    AnalyticFunction64::constant(C64::new(1.0, 0.0))
}

pub fn cmd_classify(cfg: &Config, map: &str) -> Result<Run, Failure> {
    let phi = parse::map(map)?;
    let mut report = cfg.report("classify", Some(map), None, false);
    report.map_class = Some(map_class(&phi)?);
    let v = classify_unweighted(&phi, &cfg.space)?;
    report.verdict = Some(VerdictOut::from(&v));
    Ok(Run {
        matrix: cfg.section(&one(), &phi)?,
        report,
    })
}

pub fn cmd_check(cfg: &Config, psi: &str, map: &str, numeric: bool) -> Result<Run, Failure> {
    let phi = parse::map(map)?;
    let weight = parse::weight(psi)?.resolve(&phi, &cfg.space)?;
    let mut report = cfg.report("check", Some(map), Some(psi), numeric);
    report.map_class = Some(map_class(&phi)?);
    let opts = ClassifyOptions {
        numeric,
        budget: WitnessBudget {
            order: cfg.witness_order,
            seed: cfg.seed,
            ..WitnessBudget::default()
        },
    };
    let v = classify_weighted(&weight, &phi, &cfg.space, &opts)?;
    report.verdict = Some(VerdictOut::from(&v));
    match spectral_report(&weight, &phi, &cfg.space) {
        Ok(s) => report.spectral = Some(SpectralOut::from(&s)),
        Err(e) => report.diagnostics.push(format!("spectral report: {e}")),
    }
    Ok(Run {
        matrix: cfg.section(&weight, &phi)?,
        report,
    })
}

pub fn cmd_spectral(cfg: &Config, psi: &str, map: &str, numeric: bool) -> Result<Run, Failure> {
    let phi = parse::map(map)?;
    let weight = parse::weight(psi)?.resolve(&phi, &cfg.space)?;
    let mut report = cfg.report("spectral", Some(map), Some(psi), numeric);
    report.map_class = Some(map_class(&phi)?);
    report.spectral = Some(SpectralOut::from(&spectral_report(&weight, &phi, &cfg.space)?));
    let mut matrix = None;
    if numeric || cfg.want_matrix {
        let m = build_weighted_composition(&weight, &phi.into(), &cfg.space, cfg.n)?.entries;
        if numeric {
            let norm = operator_norm_seeded(&m, cfg.seed)?;
            let radius = truncation_spectral_radius(&m)?;
            let gelfand = gelfand_estimate(&m, GELFAND_POWER)?;
            report.numeric = Some(NumericOut::new(&norm, &radius, &gelfand, GELFAND_POWER));
            report
                .diagnostics
                .push("finite-section values are advisory and decide nothing".into());
        }
        matrix = Some(m);
    }
    Ok(Run { report, matrix })
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn poly(coeffs: &[f64]) -> AnalyticFunction64 {
    AnalyticFunction64::polynomial(Polynomial::from_real(coeffs)).expect("polynomial weight")
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

struct Items(Vec<ItemOut>);

impl Items {
    fn push(&mut self, name: String, result: Result<(bool, String), hypocomp::Error>) {
        let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.0.push(ItemOut { name, passed, detail });
    }
}

/// Kernel-inequality exclusion of `ψ` with the parabolic map `(1+z)/(3−z)`;
/// at `w = 0` the left side is `|ψ(0)| (9/8)^{γ/2}`.
fn parabolic_item(psi: &AnalyticFunction64, space: &SpaceSpec64) -> hypocomp::Result<(bool, String)> {
    let phi = cayley_parabolic(c(1.0, 0.0), c(1.0, 0.0))?;
    let v = classify_weighted(psi, &phi, space, &ClassifyOptions { numeric: false, ..Default::default() })?;
    let Some(x) = v.violation else {
        return Ok((false, format!("{} via {}, no violation", v.outcome.label(), v.citation)));
    };
    let lhs = psi.evaluate(c(0.0, 0.0))?.norm() * (9.0f64 / 8.0).powf(space.gamma() / 2.0);
    let rhs = psi.evaluate(c(1.0, 0.0))?.norm();
    let ok = v.outcome == Outcome::NotHyponormal
        && v.citation == Citation::KernelNormInequality
        && x.w == c(0.0, 0.0)
        && close(x.lhs, lhs, 1e-12)
        && close(x.rhs, rhs, 1e-12);
    Ok((ok, format!("{} at w = 0: {:.12} > {:.12}", v.outcome.label(), x.lhs, x.rhs)))
}

fn normal_form_item(space: &SpaceSpec64) -> hypocomp::Result<(bool, String)> {
    let mut count = 0;
    for p in [c(0.3, 0.0), c(-0.2, 0.4), c(0.0, 0.6)] {
        for delta in [c(0.4, 0.0), c(-0.3, 0.3), c(0.6, 0.0)] {
            let value = c(0.8, -0.6) * delta.norm();
            let nf = normal_form(p, delta, value, space)?;
            let v = classify_weighted(&nf.psi, &nf.phi, space, &ClassifyOptions { numeric: false, ..Default::default() })?;
            let r = spectral_radius_closed(&nf.psi, &nf.phi, space)?;
            if v.outcome != Outcome::Normal || !close(r.value, value.norm(), 1e-10) {
                return Ok((false, format!("p = {p}, δ = {delta}: {} with r = {}", v.outcome.label(), r.value)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} normal forms classified Normal with r = |ψ(p)|")))
}

fn bounds_item(psi: &AnalyticFunction64, phi: &MoebiusMap64, space: &SpaceSpec64, lower: f64, upper: f64) -> hypocomp::Result<(bool, String)> {
    let b = norm_bounds(psi, phi, space)?;
    let ok = close(b.lower, lower, 1e-10) && close(b.upper, upper, 1e-10);
    Ok((ok, format!("[{:.6}, {:.6}] via {}", b.lower, b.upper, b.citation)))
}

pub fn cmd_worked_examples(cfg: &Config) -> Result<Run, Failure> {
    let spaces = if cfg.space_given {
        vec![cfg.space]
    } else {
        vec![SpaceSpec64::hardy(), SpaceSpec64::bergman(0.0).map_err(Failure::input)?]
    };
    let mut report = cfg.report("worked-examples", None, None, false);
    report.space = spaces.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
    let psi1 = poly(&[0.5, -0.25]);
    let psi2 = poly(&[3.0, 2.0, -3.0]);
    let parabolic = cayley_parabolic(c(1.0, 0.0), c(1.0, 0.0)).map_err(Failure::input)?;
    let mut items = Items(Vec::new());
    for space in &spaces {
        let g = space.gamma();
        items.push(format!("psi = 1/2 - z/4, parabolic, {space}"), parabolic_item(&psi1, space));
        items.push(format!("psi = 3 + 2z - 3z^2, parabolic, {space}"), parabolic_item(&psi2, space));
        items.push(
            format!("r(1/2 - z/4, parabolic), {space}"),
            spectral_radius_closed(&psi1, &parabolic, space).map(|r| (close(r.value, 0.25, 1e-12), format!("r = {}", r.value))),
        );
        let auto = MoebiusMap64::from_real(1.0, 0.5, 0.5, 1.0).map_err(Failure::input)?;
        items.push(
            format!("r_e of (z + 1/2)/(1 + z/2), {space}"),
            essential_spectral_radius_closed(&auto, space)
                .map(|r| (close(r.value, 3f64.powf(g / 2.0), 1e-10), format!("r_e = {}", r.value))),
        );
        items.push(format!("normal forms, {space}"), normal_form_item(space));
        // z/(z+2): fixed points 0 and −1 with φ′(−1) = 2
        let phi = MoebiusMap64::from_real(1.0, 0.0, 1.0, 2.0).map_err(Failure::input)?;
        items.push(
            format!("bounds for z/(z+2), {space}"),
            bounds_item(&one(), &phi, space, 2f64.powf(-g / 2.0), 1.0),
        );
        // z/(2−z): fixed points 0 and 1 with φ′(1) = 2
        let phi = MoebiusMap64::from_real(1.0, 0.0, -1.0, 2.0).map_err(Failure::input)?;
        items.push(
            format!("bounds for 1 + z/2 with z/(2-z), {space}"),
            bounds_item(&poly(&[1.0, 0.5]), &phi, space, 1.5 * 2f64.powf(-g / 2.0), 1.5),
        );
    }
    report.items = items.0;
    Ok(Run { report, matrix: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config {
            space: SpaceSpec64::hardy(),
            space_given: false,
            n: 16,
            seed: 11,
            witness_order: 256,
            want_matrix: false,
        }
    }

    #[test]
    fn every_command_round_trips_through_json() {
        let c = cfg();
        let runs = [
            cmd_classify(&c, "parabolic:1,1").unwrap(),
            cmd_check(&c, "1,0.5", "rotation:i", true).unwrap(),
            cmd_check(&c, "1", "1,0,1,2", false).unwrap(),
            cmd_spectral(&c, "0.5,-0.25", "parabolic:1,1", true).unwrap(),
            cmd_worked_examples(&c).unwrap(),
        ];
        for run in runs {
            let back: Report = serde_json::from_str(&run.report.to_json()).unwrap();
            assert_eq!(back, run.report);
        }
    }

    #[test]
    fn matrix_only_when_asked() {
        let mut c = cfg();
        assert!(cmd_classify(&c, "0.5,0,0,1").unwrap().matrix.is_none());
        c.want_matrix = true;
        let m = cmd_classify(&c, "0.5,0,0,1").unwrap().matrix.unwrap();
        assert_eq!(m.rows(), 16);
    }
}
