//! Junta approximation of halfspaces.
//!
//! [`extract_junta`] takes an LTF and parameters `(eps, delta)` and follows
//! the case analysis on the `eps`-critical index `ell`:
//!
//! * `delta^(1/(1-eps)) < sqrt(eps)`: the function is close to the constant
//!   `sign(E f)` whenever its noise sensitivity is below the premise bound.
//! * `ell = 1` (Case I): the whole form is regular; again a constant.
//! * `1 < ell <= L` (Case II): split on the head `H` of the first `ell`
//!   coordinates. If at most a `delta` fraction of head assignments leave a
//!   restriction with `|E f_rho| <= 1 - delta` (IIb), project onto `H`;
//!   otherwise (IIa) the premise must fail and the report carries the
//!   noise-sensitivity certificate.
//! * `ell > L` (Case III): the optimal junta on the first `L` coordinates.
//!
//! Every report carries the exact distance between `f` and the approximator.

use std::fmt;

use serde::Serialize;

use crate::error::{check_cap, invalid, Result};
use crate::fncore::{compress, expand, BooleanFunction, FourierSpectrum, VarSet};
use crate::fncore::{DEFAULT_MAX_ARITY, HARD_MAX_ARITY};
use crate::ltf::{CriticalIndex, Ltf, TIE_TOLERANCE};
use crate::noise::ns_exact;
use crate::output::fmt_real;
use crate::restriction::{bias_profile_capped, block_sums, DEFAULT_HEAD_CAP};

/// Constants and caps for the engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremConfig {
    /// Constant in the premise bound `c_ns * delta^e * sqrt(eps)`.
    pub c_ns: f64,
    /// Constant in the budget `L = c_l / eps^2 * ln(1/eps) * ln(1/delta)`.
    pub c_l: f64,
    /// Overrides the premise exponent `e = (2 - eps)/(1 - eps)`.
    pub premise_exponent: Option<f64>,
    pub max_arity: usize,
    /// Cap on head sizes. Bias profiles and optimal juntas are single passes
    /// over the table, so this defaults to the arity cap.
    pub head_cap: usize,
    /// Parameters above these are accepted but flagged in the report.
    pub epsilon_max: f64,
    pub delta_max: f64,
    /// Take the constant shortcut when `delta^(1/(1-eps)) < sqrt(eps)`.
    /// Disable to exercise the critical-index cases at any `delta`.
    pub small_delta_shortcut: bool,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            c_ns: 1.0,
            c_l: 1.0,
            premise_exponent: None,
            max_arity: DEFAULT_MAX_ARITY,
            head_cap: DEFAULT_MAX_ARITY,
            epsilon_max: 0.25,
            delta_max: 0.25,
            small_delta_shortcut: true,
        }
    }
}

impl TheoremConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_ns > 0.0 && self.c_l > 0.0) {
            return Err(invalid("c_ns and c_l must be positive"));
        }
        if let Some(e) = self.premise_exponent {
            if !(e > 0.0) {
                return Err(invalid("premise exponent must be positive"));
            }
        }
        check_cap("max arity", self.max_arity, HARD_MAX_ARITY)?;
        Ok(())
    }
}

fn check_unit_half(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value <= 0.5) {
        return Err(invalid(format!("{name} must lie in (0, 1/2], got {value}")));
    }
    Ok(())
}

/// `L(eps, delta) = ceil(c_l / eps^2 * ln(1/eps) * ln(1/delta))`, at least 1.
pub fn junta_budget(epsilon: f64, delta: f64, c_l: f64) -> Result<usize> {
    check_unit_half("epsilon", epsilon)?;
    check_unit_half("delta", delta)?;
    if !(c_l > 0.0) {
        return Err(invalid("c_l must be positive"));
    }
    let raw = c_l / (epsilon * epsilon) * (1.0 / epsilon).ln() * (1.0 / delta).ln();
    Ok((raw.ceil() as usize).max(1))
}

/// `(2 - eps) / (1 - eps)`.
pub fn premise_exponent(epsilon: f64) -> f64 {
    (2.0 - epsilon) / (1.0 - epsilon)
}

/// `c_ns * delta^((2 - eps)/(1 - eps)) * sqrt(eps)`.
pub fn premise_bound(epsilon: f64, delta: f64, c_ns: f64) -> f64 {
    premise_bound_with_exponent(epsilon, delta, c_ns, premise_exponent(epsilon))
}

pub fn premise_bound_with_exponent(epsilon: f64, delta: f64, c_ns: f64, exponent: f64) -> f64 {
    c_ns * delta.powf(exponent) * epsilon.sqrt()
}

/// `delta^((2 - eps)/(1 - eps)) * sqrt(ln(1/delta)) * sqrt(eps)`: the noise
/// sensitivity forced when a `delta` fraction of head restrictions is unbiased.
pub fn case_iia_lower_bound(epsilon: f64, delta: f64) -> f64 {
    delta.powf(premise_exponent(epsilon)) * (1.0 / delta).ln().sqrt() * epsilon.sqrt()
}

/// The junta on `head` closest to `f`: `sign(E[f_rho])` per assignment.
pub fn best_junta_on(f: &BooleanFunction, head: VarSet) -> Result<BooleanFunction> {
    best_junta_on_capped(f, head, DEFAULT_HEAD_CAP)
}

pub fn best_junta_on_capped(
    f: &BooleanFunction,
    head: VarSet,
    cap: usize,
) -> Result<BooleanFunction> {
    if !head.is_subset_of(VarSet::full(f.arity())) {
        return Err(invalid("head set exceeds the arity"));
    }
    check_cap("head size", head.len(), cap)?;
    let values = block_sums(f, head)
        .into_iter()
        .map(|s| if s >= 0 { 1 } else { -1 })
        .collect();
    BooleanFunction::from_values_capped(head.len(), values, HARD_MAX_ARITY)
}

/// Output of the bad-block projection.
#[derive(Clone, Debug, PartialEq)]
pub struct IibConstruction {
    /// `sign(h)` as a function of the head variables.
    pub approximator: BooleanFunction,
    /// Whether at most a `delta` fraction of restrictions is unbiased.
    pub certified: bool,
    pub frac_unbiased: f64,
    /// `dist(f, g)`, where `g` is `f` with every unbiased block set to `+1`.
    pub repair_distance: f64,
    /// `||h - g||_2^2 = sum_{T not subset of H} g^(T)^2`.
    pub projection_residual: f64,
    /// `dist(f, approximator)`.
    pub distance: f64,
}

pub fn lemma_iib_construct(f: &BooleanFunction, head: VarSet, delta: f64) -> Result<IibConstruction> {
    lemma_iib_construct_capped(f, head, delta, DEFAULT_HEAD_CAP)
}

pub fn lemma_iib_construct_capped(
    f: &BooleanFunction,
    head: VarSet,
    delta: f64,
    cap: usize,
) -> Result<IibConstruction> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1], got {delta}")));
    }
    let profile = bias_profile_capped(f, head, cap)?;
    let bad: Vec<bool> = profile.biases.iter().map(|b| b.abs() <= 1.0 - delta).collect();
    let n = f.arity();
    let repaired = BooleanFunction::from_fn_capped(n, HARD_MAX_ARITY, |row| {
        if bad[compress(row, head)] {
            1
        } else {
            f.value(row)
        }
    })?;
    let g_hat = repaired.wht();
    let projected: Vec<f64> = (0..1usize << head.len())
        .map(|t| g_hat.coefficients()[expand(t, head)])
        .collect();
    let projection_residual = g_hat
        .coefficients()
        .iter()
        .enumerate()
        .filter(|&(mask, _)| !VarSet::from_bits(mask as u32).is_subset_of(head))
        .map(|(_, c)| c * c)
        .sum();
    let h = FourierSpectrum::from_coefficients(head.len(), projected)?.synthesize();
    let approximator = BooleanFunction::from_values_capped(
        head.len(),
        h.iter()
            .map(|&v| if v >= -TIE_TOLERANCE { 1 } else { -1 })
            .collect(),
        HARD_MAX_ARITY,
    )?;
    let distance = f.distance(&BooleanFunction::lift(&approximator, n, head)?)?;
    let frac_unbiased = profile.frac_unbiased(delta);
    Ok(IibConstruction {
        approximator,
        certified: frac_unbiased <= delta,
        frac_unbiased,
        repair_distance: f.distance(&repaired)?,
        projection_residual,
        distance,
    })
}

/// Which branch of the case analysis produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    SmallDeltaConstant,
    IConstant,
    IIaPremiseViolated,
    IIbProjection,
    IIIHeadJunta,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::SmallDeltaConstant => "small-delta-constant",
            Case::IConstant => "I-constant",
            Case::IIaPremiseViolated => "IIa-premise-violated",
            Case::IIbProjection => "IIb-projection",
            Case::IIIHeadJunta => "III-head-junta",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiasSummary {
    pub head_size: usize,
    pub assignments: usize,
    pub unbiased: usize,
    pub frac_unbiased: f64,
}

/// Measured noise sensitivity against the Case IIa lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IiaCertificate {
    pub ns: f64,
    pub lower_bound: f64,
    pub exceeds_premise: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub epsilon: f64,
    pub delta: f64,
    pub ell: CriticalIndex,
    pub budget: usize,
    pub ns: f64,
    pub premise_bound: f64,
    pub premise_holds: bool,
    /// `delta^(1/(1-eps)) < sqrt(eps)`.
    pub small_delta_condition: bool,
    /// `delta^2 >= sqrt(eps)`, the side condition of the Case IIa bound.
    pub iia_side_condition: bool,
    /// Both parameters within the configured validity ranges.
    pub in_validity_range: bool,
    pub bias: Option<BiasSummary>,
    pub iia_certificate: Option<IiaCertificate>,
    /// `||h - g||^2` when the projection ran.
    pub projection_residual: Option<f64>,
    /// The distance promised by the branch taken; `None` for Case IIa.
    pub guarantee_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JuntaReport {
    pub case: Case,
    /// Input coordinates of the junta.
    pub junta_set: VarSet,
    /// Function of the junta variables in ascending coordinate order.
    pub approximator: BooleanFunction,
    pub distance: f64,
    pub diagnostics: Diagnostics,
}

/// An LTF together with its truth table and spectrum.
#[derive(Clone, Debug)]
pub struct PreparedLtf {
    pub ltf: Ltf,
    pub table: BooleanFunction,
    pub spectrum: FourierSpectrum,
}

impl PreparedLtf {
    pub fn new(ltf: Ltf, max_arity: usize) -> Result<Self> {
        let table = ltf.truth_table_capped(max_arity)?;
        let spectrum = table.wht();
        Ok(PreparedLtf {
            ltf,
            table,
            spectrum,
        })
    }
}

pub fn extract_junta(
    ltf: &Ltf,
    epsilon: f64,
    delta: f64,
    config: &TheoremConfig,
) -> Result<JuntaReport> {
    config.validate()?;
    let prepared = PreparedLtf::new(ltf.clone(), config.max_arity)?;
    extract_junta_prepared(&prepared, epsilon, delta, config)
}

pub fn extract_junta_prepared(
    prepared: &PreparedLtf,
    epsilon: f64,
    delta: f64,
    config: &TheoremConfig,
) -> Result<JuntaReport> {
    check_unit_half("epsilon", epsilon)?;
    check_unit_half("delta", delta)?;
    config.validate()?;
    let PreparedLtf {
        ltf,
        table,
        spectrum,
    } = prepared;
    let n = table.arity();

    let ns = ns_exact(spectrum, epsilon)?;
    let exponent = config
        .premise_exponent
        .unwrap_or_else(|| premise_exponent(epsilon));
    let bound = premise_bound_with_exponent(epsilon, delta, config.c_ns, exponent);
    let ell = ltf.critical_index(epsilon)?;
    let budget = junta_budget(epsilon, delta, config.c_l)?;
    let mut diagnostics = Diagnostics {
        epsilon,
        delta,
        ell,
        budget,
        ns,
        premise_bound: bound,
        premise_holds: ns <= bound,
        small_delta_condition: delta.powf(1.0 / (1.0 - epsilon)) < epsilon.sqrt(),
        iia_side_condition: delta * delta >= epsilon.sqrt(),
        in_validity_range: epsilon <= config.epsilon_max && delta <= config.delta_max,
        bias: None,
        iia_certificate: None,
        projection_residual: None,
        guarantee_bound: None,
    };

    let constant = |case: Case, mut diagnostics: Diagnostics| -> Result<JuntaReport> {
        let value = if spectrum.coefficients()[0] >= 0.0 { 1 } else { -1 };
        let approximator = BooleanFunction::constant(0, value)?;
        let lifted = BooleanFunction::constant(n, value)?;
        diagnostics.guarantee_bound = Some(delta);
        Ok(JuntaReport {
            case,
            junta_set: VarSet::EMPTY,
            approximator,
            distance: table.distance(&lifted)?,
            diagnostics,
        })
    };

    if config.small_delta_shortcut && diagnostics.small_delta_condition {
        return constant(Case::SmallDeltaConstant, diagnostics);
    }
    if ell == CriticalIndex::Finite(1) {
        return constant(Case::IConstant, diagnostics);
    }

    let head_junta = |head: VarSet, case: Case, mut diagnostics: Diagnostics| {
        let approximator = best_junta_on_capped(table, head, config.head_cap)?;
        let distance = table.distance(&BooleanFunction::lift(&approximator, n, head)?)?;
        if case == Case::IIIHeadJunta {
            diagnostics.guarantee_bound = Some(delta);
        }
        Ok(JuntaReport {
            case,
            junta_set: head,
            approximator,
            distance,
            diagnostics,
        })
    };

    match ell {
        CriticalIndex::Finite(ell) if ell <= budget => {
            let head = ltf.head_set(ell);
            let profile = bias_profile_capped(table, head, config.head_cap)?;
            let unbiased = profile.count_unbiased(delta);
            let frac = profile.frac_unbiased(delta);
            diagnostics.bias = Some(BiasSummary {
                head_size: head.len(),
                assignments: profile.biases.len(),
                unbiased,
                frac_unbiased: frac,
            });
            if frac <= delta {
                let built = lemma_iib_construct_capped(table, head, delta, config.head_cap)?;
                diagnostics.projection_residual = Some(built.projection_residual);
                diagnostics.guarantee_bound = Some(3.0 * delta);
                Ok(JuntaReport {
                    case: Case::IIbProjection,
                    junta_set: head,
                    approximator: built.approximator,
                    distance: built.distance,
                    diagnostics,
                })
            } else {
                let lower_bound = config.c_ns * case_iia_lower_bound(epsilon, delta);
                diagnostics.iia_certificate = Some(IiaCertificate {
                    ns,
                    lower_bound,
                    exceeds_premise: ns > bound,
                });
                head_junta(head, Case::IIaPremiseViolated, diagnostics)
            }
        }
        _ => {
            let head = ltf.head_set(budget.min(ltf.len()));
            head_junta(head, Case::IIIHeadJunta, diagnostics)
        }
    }
}

/// Outcome of checking a report against the theorem's promise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The premise fails, so nothing is promised.
    PremiseViolated,
    Fail(String),
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::PremiseViolated => f.write_str("premise-violated"),
            Verdict::Fail(_) => f.write_str("fail"),
        }
    }
}

/// Passes iff the premise implies `distance <= guarantee` and `|J| <= L`.
pub fn theorem_verify(report: &JuntaReport, delta: f64) -> Verdict {
    let d = &report.diagnostics;
    if !d.premise_holds {
        return Verdict::PremiseViolated;
    }
    if report.case == Case::IIaPremiseViolated {
        return Verdict::Fail(format!(
            "premise holds (ns = {:e} <= {:e}) but {} restrictions of the head are unbiased at delta = {delta}; recalibrate c_ns",
            d.ns,
            d.premise_bound,
            d.bias.map_or(0, |b| b.unbiased)
        ));
    }
    let guarantee = d.guarantee_bound.unwrap_or(delta);
    if report.distance > guarantee + 1e-12 {
        return Verdict::Fail(format!(
            "distance {} exceeds the guarantee {guarantee} in case {}",
            report.distance, report.case
        ));
    }
    if report.junta_set.len() > d.budget {
        return Verdict::Fail(format!(
            "junta of size {} exceeds the budget {}",
            report.junta_set.len(),
            d.budget
        ));
    }
    Verdict::Pass
}

/// Header of the one-line report table.
pub const REPORT_HEADER: &str = "case,junta_size,L,ell,ns,premise_bound,premise_holds,distance,guarantee,verdict";

/// The scalar part of a report together with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportSummary {
    pub case: Case,
    pub junta_size: usize,
    pub budget: usize,
    pub ell: CriticalIndex,
    pub ns: f64,
    pub premise_bound: f64,
    pub premise_holds: bool,
    pub distance: f64,
    pub guarantee: Option<f64>,
    pub verdict: Verdict,
}

impl ReportSummary {
    pub fn new(report: &JuntaReport) -> Self {
        let d = &report.diagnostics;
        ReportSummary {
            case: report.case,
            junta_size: report.junta_set.len(),
            budget: d.budget,
            ell: d.ell,
            ns: d.ns,
            premise_bound: d.premise_bound,
            premise_holds: d.premise_holds,
            distance: report.distance,
            guarantee: d.guarantee_bound,
            verdict: theorem_verify(report, d.delta),
        }
    }

    /// Fields in [`REPORT_HEADER`] order; a missing guarantee prints `na`.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.case.to_string(),
            self.junta_size.to_string(),
            self.budget.to_string(),
            self.ell.to_string(),
            fmt_real(self.ns),
            fmt_real(self.premise_bound),
            self.premise_holds.to_string(),
            fmt_real(self.distance),
            self.guarantee.map_or_else(|| "na".to_string(), fmt_real),
            self.verdict.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltf::{random_ltf, ThetaLaw, WeightFamily};

    fn no_shortcut() -> TheoremConfig {
        TheoremConfig {
            small_delta_shortcut: false,
            ..TheoremConfig::default()
        }
    }

    #[test]
    fn budget_examples() {
        let e = (-1f64).exp();
        assert_eq!(junta_budget(e, e, 1.0).unwrap(), 8);
        // independent evaluation: 100 * ln(10)^2 = 530.19
        assert_eq!(junta_budget(0.1, 0.1, 1.0).unwrap(), 531);
        assert_eq!(junta_budget(0.5, 0.5, 0.01).unwrap(), 1);
        assert!(junta_budget(0.6, 0.1, 1.0).is_err());
        assert!(junta_budget(0.1, 0.0, 1.0).is_err());
        assert!(junta_budget(0.1, 0.1, 0.0).is_err());
        let mut prev = usize::MAX;
        for eps in [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5] {
            let l = junta_budget(eps, 0.1, 1.0).unwrap();
            assert!(l <= prev);
            prev = l;
        }
        let mut prev = 0;
        for delta in [0.5, 0.3, 0.1, 0.01, 0.001] {
            let l = junta_budget(0.1, delta, 1.0).unwrap();
            assert!(l >= prev);
            prev = l;
        }
    }

    #[test]
    fn premise_examples() {
        assert!((premise_bound(0.2, 1.0, 3.0) - 3.0 * 0.2f64.sqrt()).abs() < 1e-15);
        assert!(premise_bound(1e-12, 0.3, 1.0) < 1e-6);
        let v = premise_bound(0.1, 0.1, 1.0);
        let expected = 10f64.powf(-19.0 / 9.0) * 0.1f64.sqrt();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 2.44e-3).abs() < 1e-5);
    }

    #[test]
    fn best_junta_examples() {
        let d = BooleanFunction::dictator(4, 2).unwrap();
        let j = best_junta_on(&d, VarSet::from_vars([2])).unwrap();
        assert_eq!(j, BooleanFunction::dictator(1, 0).unwrap());

        let par = BooleanFunction::parity(2, VarSet::full(2)).unwrap();
        let j = best_junta_on(&par, VarSet::from_vars([0])).unwrap();
        assert_eq!(j, BooleanFunction::constant(1, 1).unwrap());
        let lifted = BooleanFunction::lift(&j, 2, VarSet::from_vars([0])).unwrap();
        assert_eq!(par.distance(&lifted).unwrap(), 0.5);

        let maj = BooleanFunction::majority(3).unwrap();
        let head = VarSet::from_vars([0, 1]);
        let j = best_junta_on(&maj, head).unwrap();
        // majority vote of x1, x2 with ties to +1
        assert_eq!(j.values(), &[1, 1, 1, -1]);
        let lifted = BooleanFunction::lift(&j, 3, head).unwrap();
        assert_eq!(maj.distance(&lifted).unwrap(), 0.25);
    }

    #[test]
    fn iib_examples() {
        let d = BooleanFunction::dictator(4, 1).unwrap();
        let c = lemma_iib_construct(&d, VarSet::from_vars([1, 3]), 0.2).unwrap();
        assert!(c.certified);
        assert_eq!(c.distance, 0.0);
        assert_eq!(c.repair_distance, 0.0);
        assert!(c.projection_residual.abs() < 1e-15);

        let par = BooleanFunction::parity(3, VarSet::full(3)).unwrap();
        let c = lemma_iib_construct(&par, VarSet::from_vars([0]), 0.1).unwrap();
        assert!(!c.certified);
        assert_eq!(c.approximator, BooleanFunction::constant(1, 1).unwrap());

        let f = Ltf::canonicalize(&[10.0, 1.0, 1.0, 1.0], 0.0)
            .unwrap()
            .truth_table()
            .unwrap();
        let c = lemma_iib_construct(&f, VarSet::from_vars([0]), 0.1).unwrap();
        assert!(c.certified);
        assert_eq!(c.approximator, BooleanFunction::dictator(1, 0).unwrap());
        assert_eq!(c.distance, 0.0);
    }

    #[test]
    fn projection_equals_conditional_expectation() {
        // sign(h) from the spectrum must match sign(E[g_rho]) computed blockwise
        let ltf = random_ltf(10, WeightFamily::Gaussian, ThetaLaw::Fixed(0.7), 21).unwrap();
        let f = ltf.truth_table().unwrap();
        let head = ltf.head_set(3);
        let delta = 0.3;
        let c = lemma_iib_construct(&f, head, delta).unwrap();
        let profile = crate::restriction::bias_profile(&f, head).unwrap();
        for (idx, b) in profile.biases.iter().enumerate() {
            let expected = if b.abs() <= 1.0 - delta || *b >= 0.0 { 1 } else { -1 };
            assert_eq!(c.approximator.value(idx), expected);
        }
    }

    #[test]
    fn engine_constant_ltf() {
        let ltf = Ltf::canonicalize(&[1.0], 2.0).unwrap();
        for (eps, delta) in [(0.1, 0.1), (0.25, 0.05), (0.05, 0.2)] {
            let r = extract_junta(&ltf, eps, delta, &TheoremConfig::default()).unwrap();
            assert_eq!(r.distance, 0.0);
            assert!(r.junta_set.is_empty());
            assert_eq!(r.approximator.value(0), -1);
            assert_eq!(theorem_verify(&r, delta), Verdict::Pass);
        }
    }

    #[test]
    fn engine_dominant_dictator() {
        let ltf = Ltf::canonicalize(&[10.0, 1.0, 1.0, 1.0, 1.0], 0.0).unwrap();
        let f = ltf.truth_table().unwrap();
        assert_eq!(f, BooleanFunction::dictator(5, 0).unwrap());
        let r = extract_junta(&ltf, 0.1, 0.1, &TheoremConfig::default()).unwrap();
        assert!(r.junta_set.len() <= r.diagnostics.budget);
        // the default flow takes the constant shortcut; the premise fails for a dictator
        assert_eq!(r.case, Case::SmallDeltaConstant);
        assert!(!r.diagnostics.premise_holds);
        assert_eq!(theorem_verify(&r, 0.1), Verdict::PremiseViolated);

        let r = extract_junta(&ltf, 0.1, 0.1, &no_shortcut()).unwrap();
        assert_eq!(r.distance, 0.0);
        assert!(r.junta_set.len() <= r.diagnostics.budget);
        assert!(r.junta_set.contains(0));
    }

    #[test]
    fn engine_majority_premise_violated() {
        let ltf = random_ltf(15, WeightFamily::Equal, ThetaLaw::Fixed(0.0), 0).unwrap();
        let r = extract_junta(&ltf, 0.25, 0.05, &TheoremConfig::default()).unwrap();
        assert!(!r.diagnostics.premise_holds);
        assert_eq!(r.case, Case::SmallDeltaConstant);
        assert_eq!(r.diagnostics.ell, CriticalIndex::Infinite);
        assert_eq!(theorem_verify(&r, 0.05), Verdict::PremiseViolated);
    }

    #[test]
    fn engine_case_one() {
        let ltf = random_ltf(16, WeightFamily::Equal, ThetaLaw::Fixed(0.0), 0).unwrap();
        let r = extract_junta(&ltf, 0.25, 0.5, &no_shortcut()).unwrap();
        assert_eq!(r.diagnostics.ell, CriticalIndex::Finite(1));
        assert_eq!(r.case, Case::IConstant);
        assert!(r.junta_set.is_empty());
        assert!(!r.diagnostics.premise_holds);
    }

    #[test]
    fn engine_case_two() {
        let mut w = vec![3.0];
        w.extend(std::iter::repeat_n(1.0, 17));
        let ltf = Ltf::canonicalize(&w, 0.0).unwrap();
        assert_eq!(ltf.critical_index(0.25).unwrap(), CriticalIndex::Finite(2));
        let r = extract_junta(&ltf, 0.25, 0.5, &no_shortcut()).unwrap();
        assert_eq!(r.case, Case::IIbProjection);
        assert_eq!(r.junta_set.len(), 2);
        assert!(r.distance <= 1.5);
        assert!(r.diagnostics.projection_residual.unwrap() < 1.0);
        assert!(r.approximator.is_junta_on(VarSet::full(2)));

        // IIa: a balanced tail behind a tiny head leaves every restriction unbiased
        let mut w = vec![1.2];
        w.extend(std::iter::repeat_n(1.0, 16));
        let ltf = Ltf::canonicalize(&w, 0.0).unwrap();
        let r = extract_junta(&ltf, 0.25, 0.05, &no_shortcut()).unwrap();
        assert_eq!(r.case, Case::IIaPremiseViolated);
        let cert = r.diagnostics.iia_certificate.unwrap();
        assert!(cert.exceeds_premise);
        assert!(r.diagnostics.guarantee_bound.is_none());
        assert_eq!(theorem_verify(&r, 0.05), Verdict::PremiseViolated);
    }

    #[test]
    fn engine_case_three() {
        let ltf = random_ltf(10, WeightFamily::GeometricDecay { rate: 0.5 }, ThetaLaw::Fixed(0.1), 3)
            .unwrap();
        let config = TheoremConfig {
            c_l: 0.5,
            ..no_shortcut()
        };
        let r = extract_junta(&ltf, 0.5, 0.5, &config).unwrap();
        assert_eq!(r.case, Case::IIIHeadJunta);
        assert_eq!(r.junta_set.len(), r.diagnostics.budget);
        assert_eq!(r.junta_set, ltf.head_set(r.diagnostics.budget));
        let f = ltf.truth_table().unwrap();
        let best = best_junta_on(&f, r.junta_set).unwrap();
        assert_eq!(r.approximator, best);
    }

    #[test]
    fn verdict_fails_on_iia_with_premise() {
        let ltf = Ltf::canonicalize(&[1.0], 2.0).unwrap();
        let mut r = extract_junta(&ltf, 0.1, 0.1, &TheoremConfig::default()).unwrap();
        r.case = Case::IIaPremiseViolated;
        assert!(theorem_verify(&r, 0.1).is_failure());
        r.case = Case::IIIHeadJunta;
        r.distance = 0.5;
        assert!(theorem_verify(&r, 0.1).is_failure());
    }

    #[test]
    fn summary_row() {
        let ltf = Ltf::canonicalize(&[1.0, 0.0], 0.0).unwrap();
        let r = extract_junta(&ltf, 0.1, 0.1, &no_shortcut()).unwrap();
        let s = ReportSummary::new(&r);
        let record = s.csv_record();
        assert_eq!(record.len(), REPORT_HEADER.split(',').count());
        assert_eq!(record[..2], ["III-head-junta", "1"]);
        assert_eq!(s.distance, 0.0);
    }

    #[test]
    fn reports_are_deterministic() {
        let ltf = random_ltf(12, WeightFamily::Gaussian, ThetaLaw::Gaussian { std: 1.0 }, 8).unwrap();
        let a = extract_junta(&ltf, 0.1, 0.2, &no_shortcut()).unwrap();
        let b = extract_junta(&ltf, 0.1, 0.2, &no_shortcut()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn junta_sets_use_input_coordinates() {
        let ltf = Ltf::canonicalize(&[0.0, 1.0, 0.0, 8.0, 1.0, 1.0], 0.5).unwrap();
        let config = TheoremConfig {
            c_l: 0.1,
            ..no_shortcut()
        };
        let r = extract_junta(&ltf, 0.5, 0.5, &config).unwrap();
        assert!(r.junta_set.is_subset_of(VarSet::from_vars([1, 3, 4, 5])));
        assert!(r.junta_set.contains(3));
        let f = ltf.truth_table().unwrap();
        let lifted = BooleanFunction::lift(&r.approximator, 6, r.junta_set).unwrap();
        assert_eq!(f.distance(&lifted).unwrap(), r.distance);
    }
}
