//! Seeded property suites for the lemma-level inequalities.
//!
//! Every suite returns [`CheckRow`]s. For identities `gap = |lhs - rhs|`;
//! for inequalities `gap = lhs - rhs`, signed, with the direction given by
//! the suite's documentation.

use std::io::{self, Write};

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::fncore::{BooleanFunction, VarSet};
use crate::junta::premise_bound;
use crate::ltf::{random_ltf, Ltf, ThetaLaw, WeightFamily};
use crate::noise::{
    boolean_pair_quadrant_mc, constant_bound_check, gaussian_ns_bound, gaussian_ns_mc, linspace,
    ns_exact, regular_cdf_gap, regular_ns_bound, tail_ratio_check, tail_ratio_grid, Interval,
    McEstimate, TAIL_RATIO_BAND,
};
use crate::output::{fmt_real, write_csv};
use crate::restriction::{ns_aggregation_check, verify_fact_restrict_all};
use crate::seed::{derive_seed, stream_rng};

/// Calibrated constants of the regular-LTF noise-sensitivity lower bound
/// `NS >= c1 p^(1/(1-eps)) sqrt(ln(1/p)) sqrt(eps) - c2 eps`. The smallest
/// ratio `NS / (p^(1/(1-eps)) sqrt(ln(1/p)) sqrt(eps))` seen over 4000
/// held-out instances (see `examples/calibrate.rs`) was 1.556.
pub const REGULAR_NS_C1: f64 = 1.0;
pub const REGULAR_NS_C2: f64 = 0.0;

/// Gaussian grid for the disagreement lower bound.
pub const GAUSSIAN_THETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const GAUSSIAN_RHOS: [f64; 3] = [0.0, 0.5, 0.9];

/// Monte Carlo estimates are compared with this many radii of slack.
pub const MC_RADII: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: &'static str,
    pub instance_seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub holds: bool,
}

impl CheckRow {
    fn at_least(check: &'static str, seed: u64, lhs: f64, rhs: f64, slack: f64) -> Self {
        CheckRow {
            check,
            instance_seed: seed,
            lhs,
            rhs,
            gap: lhs - rhs,
            holds: lhs >= rhs - slack,
        }
    }

    fn at_most(check: &'static str, seed: u64, lhs: f64, rhs: f64, slack: f64) -> Self {
        CheckRow {
            check,
            instance_seed: seed,
            lhs,
            rhs,
            gap: lhs - rhs,
            holds: lhs <= rhs + slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChecksConfig {
    pub seed: u64,
    /// Random instances per suite.
    pub instances: usize,
    /// Monte Carlo samples per estimate.
    pub samples: u64,
    /// Largest arity of random functions.
    pub max_n: usize,
}

impl Default for ChecksConfig {
    fn default() -> Self {
        ChecksConfig {
            seed: 0,
            instances: 100,
            samples: 1_000_000,
            max_n: 10,
        }
    }
}

impl ChecksConfig {
    fn validate(&self) -> Result<()> {
        if !(2..=crate::noise::BRUTE_FORCE_MAX_ARITY).contains(&self.max_n) {
            return Err(invalid(format!(
                "max_n for the check suites must lie in [2, {}]",
                crate::noise::BRUTE_FORCE_MAX_ARITY
            )));
        }
        if self.samples == 0 {
            return Err(invalid("samples must be at least 1"));
        }
        Ok(())
    }

    fn instance_seed(&self, suite: u64, index: usize) -> u64 {
        derive_seed(derive_seed(self.seed, suite), index as u64)
    }
}

/// A random function on `n` variables: a uniform truth table for even
/// seeds, a Gaussian-weight LTF for odd ones.
pub fn random_function(n: usize, seed: u64) -> Result<BooleanFunction> {
    if seed % 2 == 1 {
        let theta = ThetaLaw::Gaussian { std: 0.5 };
        return random_ltf(n, WeightFamily::Gaussian, theta, seed)?.truth_table();
    }
    let mut rng = stream_rng(seed, 1);
    let values = (0..1usize << n)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    BooleanFunction::from_values(n, values)
}

/// A random arity in `[2, max_n]`, a function of that arity and a head of
/// size in `[1, min(4, n - 1)]`.
fn random_instance(seed: u64, max_n: usize) -> Result<(BooleanFunction, VarSet)> {
    let mut rng = stream_rng(seed, 2);
    let n = rng.random_range(2..=max_n);
    let k = rng.random_range(1..=(n - 1).min(4));
    let head = VarSet::from_vars(sample(&mut rng, n, k));
    Ok((random_function(n, seed)?, head))
}

/// Restriction identity: worst `S` per `(f, H)`; holds when `gap <= 1e-9`.
pub fn fact_restrict_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    (0..config.instances)
        .map(|i| {
            let seed = config.instance_seed(1, i);
            let (f, head) = random_instance(seed, config.max_n)?;
            let worst = verify_fact_restrict_all(&f, head)?
                .into_iter()
                .map(|(_, c)| c)
                .max_by(|a, b| a.gap.total_cmp(&b.gap))
                .expect("at least the empty set");
            Ok(CheckRow {
                check: "fact_restrict",
                instance_seed: seed,
                lhs: worst.lhs,
                rhs: worst.rhs,
                gap: worst.gap,
                holds: worst.gap <= 1e-9,
            })
        })
        .collect()
}

/// `NS(f) >= E_rho NS(f_rho)` and its thresholded form.
pub fn ns_aggregation_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    (0..config.instances)
        .map(|i| {
            let seed = config.instance_seed(2, i);
            let (f, head) = random_instance(seed, config.max_n)?;
            let epsilon = 0.5 * stream_rng(seed, 3).random::<f64>().max(1e-3);
            let c = ns_aggregation_check(&f, head, epsilon)?;
            Ok(CheckRow {
                holds: c.holds && c.threshold_holds,
                ..CheckRow::at_least("ns_aggregation", seed, c.ns_f, c.expected_restricted_ns, 1e-12)
            })
        })
        .collect()
}

/// `NS_eps(f) >= eps (1 - E[f]^2)` at `eps = 0.05` and `eps = 0.25`.
pub fn constant_bound_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    let mut rows = Vec::with_capacity(2 * config.instances);
    for i in 0..config.instances {
        let seed = config.instance_seed(3, i);
        let n = stream_rng(seed, 2).random_range(1..=config.max_n);
        let spectrum = random_function(n, seed)?.wht();
        for epsilon in [0.05, 0.25] {
            let c = constant_bound_check(&spectrum, epsilon)?;
            rows.push(CheckRow::at_least("ns_constant_bound", seed, c.lhs, c.rhs, 1e-12));
        }
    }
    Ok(rows)
}

/// Distance to `sign(E f)` is at most `delta` whenever the premise holds and
/// `delta^(1/(1-eps)) < sqrt(eps)`. Rows where the premise fails hold
/// vacuously.
pub fn small_delta_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for i in 0..config.instances {
        let seed = config.instance_seed(4, i);
        let n = stream_rng(seed, 2).random_range(1..=config.max_n);
        let theta = ThetaLaw::Uniform { lo: -3.0, hi: 3.0 };
        let f = random_ltf(n, WeightFamily::Gaussian, theta, seed)?.truth_table()?;
        let spectrum = f.wht();
        let mean = spectrum.coefficients()[0];
        let distance = (1.0 - mean.abs()) / 2.0;
        for epsilon in [0.05f64, 0.1, 0.25] {
            let ns = ns_exact(&spectrum, epsilon)?;
            for delta in [0.05f64, 0.1, 0.2] {
                if delta.powf(1.0 / (1.0 - epsilon)) >= epsilon.sqrt() {
                    continue;
                }
                let premise = ns <= premise_bound(epsilon, delta, 1.0);
                rows.push(CheckRow {
                    holds: !premise || distance <= delta,
                    ..CheckRow::at_most("small_delta_constant", seed, distance, delta, 0.0)
                });
            }
        }
    }
    Ok(rows)
}

/// The most regular geometric-decay LTF on 16 variables used by the CDF
/// suite: rate 0.99, `tau* ~ 0.27`.
pub fn slow_geometric_ltf() -> Result<Ltf> {
    random_ltf(16, WeightFamily::GeometricDecay { rate: 0.99 }, ThetaLaw::Fixed(0.0), 0)
}

/// `sup_t |Pr[w.x <= t] - Phi(t)| <= 2 tau*` on a 401-point grid over
/// `[-4, 4]`: Majority on 16 variables, the slow geometric instance and
/// `instances / 10` Gaussian-weight LTFs on 16 variables.
pub fn cdf_gap_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    let grid = linspace(-4.0, 4.0, 401);
    let majority = random_ltf(16, WeightFamily::Equal, ThetaLaw::Fixed(0.0), 0)?;
    let mut ltfs = vec![(0, majority), (0, slow_geometric_ltf()?)];
    for i in 0..config.instances / 10 {
        let seed = config.instance_seed(5, i);
        ltfs.push((seed, random_ltf(16, WeightFamily::Gaussian, ThetaLaw::Fixed(0.0), seed)?));
    }
    ltfs.into_iter()
        .map(|(seed, ltf)| {
            let gap = regular_cdf_gap(&ltf, &grid)?;
            Ok(CheckRow::at_most("cdf_gap", seed, gap, 2.0 * ltf.profile().tau_star, 0.0))
        })
        .collect()
}

/// Joint law of `(w.x, w.y)` for Majority on 16 variables at `eps = 0.1`
/// against a correlated Gaussian pair; holds when the gap is at most
/// `2 tau*` plus both Monte Carlo radii.
pub fn quadrant_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    let majority = random_ltf(16, WeightFamily::Equal, ThetaLaw::Fixed(0.0), 0)?;
    let tau = majority.profile().tau_star;
    let regions = [
        (Interval::at_least(0.0), Interval::at_least(0.0)),
        (Interval::closed(-0.5, 0.5), Interval::at_least(0.0)),
        (Interval::everything(), Interval::everything()),
    ];
    regions
        .iter()
        .enumerate()
        .map(|(i, (first, second))| {
            let seed = config.instance_seed(6, i);
            let c = boolean_pair_quadrant_mc(&majority, *first, *second, 0.1, config.samples, seed)?;
            let rhs = 2.0 * tau + c.boolean.radius + c.gaussian.radius;
            Ok(CheckRow::at_most("quadrant", seed, c.gap, rhs, 0.0))
        })
        .collect()
}

/// Extremes of the tail ratio on `[0, 10]` against the calibrated band.
pub fn tail_ratio_suite() -> Result<Vec<CheckRow>> {
    let s = tail_ratio_check(&tail_ratio_grid())?;
    Ok(vec![
        CheckRow::at_least("tail_ratio_min", 0, s.min, TAIL_RATIO_BAND.0, 1e-12),
        CheckRow::at_most("tail_ratio_max", 0, s.max, TAIL_RATIO_BAND.1, 1e-12),
    ])
}

/// Monte Carlo disagreement probability against the closed-form lower bound
/// on the grid [`GAUSSIAN_THETAS`] x [`GAUSSIAN_RHOS`], then the exact
/// value `arccos(rho)/pi` at `theta = 0`.
pub fn gaussian_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut index = 0;
    for theta in GAUSSIAN_THETAS {
        for rho in GAUSSIAN_RHOS {
            let seed = config.instance_seed(7, index);
            index += 1;
            let (bound, est) = gaussian_point(theta, rho, config.samples, seed)?;
            rows.push(CheckRow::at_least(
                "gaussian_ns_lower_bound",
                seed,
                est.value,
                bound,
                MC_RADII * est.radius,
            ));
            if theta == 0.0 {
                let exact = rho.acos() / std::f64::consts::PI;
                rows.push(CheckRow {
                    check: "gaussian_ns_centered",
                    instance_seed: seed,
                    lhs: est.value,
                    rhs: exact,
                    gap: (est.value - exact).abs(),
                    holds: (est.value - exact).abs() <= MC_RADII * est.radius,
                });
            }
        }
    }
    Ok(rows)
}

/// Lower bound and estimate at one grid point.
pub fn gaussian_point(theta: f64, rho: f64, samples: u64, seed: u64) -> Result<(f64, McEstimate)> {
    let bound = gaussian_ns_bound(theta, (1.0 - rho) / 2.0)?;
    Ok((bound, gaussian_ns_mc(theta, rho, samples, seed)?))
}

/// A random `eps`-regular LTF with `eps` in `[tau*, 1/2]`: equal weights or
/// Gaussian weights on 12 to 16 variables, threshold uniform in `[0, 2.5]`.
pub fn random_regular_instance(seed: u64) -> Result<(Ltf, f64)> {
    let mut rng = stream_rng(seed, 4);
    loop {
        let n = rng.random_range(12..=16);
        let theta = ThetaLaw::Fixed(2.5 * rng.random::<f64>());
        let family = if rng.random::<bool>() {
            WeightFamily::Equal
        } else {
            WeightFamily::Gaussian
        };
        let ltf = random_ltf(n, family, theta, rng.random())?;
        let tau = ltf.profile().tau_star;
        if tau <= 0.5 {
            let epsilon = tau + (0.5 - tau) * rng.random::<f64>();
            return Ok((ltf, epsilon));
        }
    }
}

/// `NS >= c1 p^(1/(1-eps)) sqrt(ln(1/p)) sqrt(eps) - c2 eps` with the
/// calibrated constants, `p = 1 - |E f|`.
pub fn regular_ns_suite(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    (0..config.instances / 4)
        .map(|i| {
            let seed = config.instance_seed(8, i);
            let (ltf, epsilon) = random_regular_instance(seed)?;
            let spectrum = ltf.truth_table()?.wht();
            let p = 1.0 - spectrum.coefficients()[0].abs();
            let ns = ns_exact(&spectrum, epsilon)?;
            let bound = regular_ns_bound(p, epsilon, REGULAR_NS_C1, REGULAR_NS_C2);
            Ok(CheckRow::at_least("regular_ns", seed, ns, bound, 1e-12))
        })
        .collect()
}

/// All suites in a fixed order.
pub fn run_checks(config: &ChecksConfig) -> Result<Vec<CheckRow>> {
    let mut rows = fact_restrict_suite(config)?;
    rows.extend(ns_aggregation_suite(config)?);
    rows.extend(constant_bound_suite(config)?);
    rows.extend(small_delta_suite(config)?);
    rows.extend(cdf_gap_suite(config)?);
    rows.extend(quadrant_suite(config)?);
    rows.extend(tail_ratio_suite()?);
    rows.extend(gaussian_suite(config)?);
    rows.extend(regular_ns_suite(config)?);
    Ok(rows)
}

pub const CHECKS_HEADER: &str = "check,instance_seed,lhs,rhs,gap,holds";

pub fn write_checks_csv<W: Write>(rows: &[CheckRow], seed: u64, out: W) -> io::Result<()> {
    let records = rows.iter().map(|r| {
        vec![
            r.check.to_string(),
            r.instance_seed.to_string(),
            fmt_real(r.lhs),
            fmt_real(r.rhs),
            fmt_real(r.gap),
            r.holds.to_string(),
        ]
    });
    write_csv(out, CHECKS_HEADER, records, seed)
}
