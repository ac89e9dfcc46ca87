//! Noise sensitivity of Boolean functions, computed from the spectrum
//! or by sampling, and the Gaussian-space quantities used to reason about
//! regular halfspaces.
//!
//! Monte Carlo routines report a Hoeffding half-width at confidence
//! `1 - 1e-6`, which depends only on the sample count.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_cap, invalid, Result};
use crate::fncore::{BooleanFunction, FourierSpectrum};
use crate::ltf::Ltf;
use crate::seed::{chunks, stream_rng};

/// Largest arity accepted by [`ns_bruteforce`] (cost `4^n`).
pub const BRUTE_FORCE_MAX_ARITY: usize = 12;

/// Failure probability of the reported Monte Carlo radii.
pub const MC_FAILURE_PROBABILITY: f64 = 1e-6;

/// A noise rate `epsilon` and its correlation `rho = 1 - 2 epsilon`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseParams {
    pub epsilon: f64,
    pub rho: f64,
}

impl NoiseParams {
    /// Requires `epsilon` in `(0, 1/2]`.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 0.5) {
            return Err(invalid(format!("epsilon must lie in (0, 1/2], got {epsilon}")));
        }
        Ok(NoiseParams {
            epsilon,
            rho: 1.0 - 2.0 * epsilon,
        })
    }
}

/// Hoeffding half-width for the mean of `samples` `{0,1}` variables.
pub fn hoeffding_radius(samples: u64) -> f64 {
    ((2.0 / MC_FAILURE_PROBABILITY).ln() / (2.0 * samples as f64)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub samples: u64,
    pub radius: f64,
}

impl McEstimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        McEstimate {
            value: hits as f64 / samples as f64,
            samples,
            radius: hoeffding_radius(samples),
        }
    }

    pub fn contains(&self, target: f64, widen: f64) -> bool {
        (self.value - target).abs() <= widen * self.radius
    }
}

/// Counts successes of `trial` over `samples` seeded draws, chunk by chunk.
fn count_hits<F>(samples: u64, seed: u64, trial: F) -> u64
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> bool + Sync,
{
    let chunk_list: Vec<(u64, u64)> = chunks(samples).collect();
    chunk_list
        .par_iter()
        .map(|&(stream, count)| {
            let mut rng = stream_rng(seed, stream);
            (0..count).filter(|_| trial(&mut rng)).count() as u64
        })
        .collect::<Vec<u64>>()
        .iter()
        .sum()
}

fn check_epsilon_closed(epsilon: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&epsilon) {
        return Err(invalid(format!("epsilon must lie in [0, 1/2], got {epsilon}")));
    }
    Ok(())
}

/// `NS_eps(f) = 1/2 - 1/2 sum_S (1 - 2 eps)^|S| f^(S)^2`, grouping the
/// spectral weight by degree first.
pub fn ns_exact(spectrum: &FourierSpectrum, epsilon: f64) -> Result<f64> {
    check_epsilon_closed(epsilon)?;
    let rho = 1.0 - 2.0 * epsilon;
    let stability = spectrum
        .weight_by_degree()
        .iter()
        .rev()
        .fold(0.0, |acc, w| acc * rho + w);
    Ok(0.5 - 0.5 * stability)
}

/// `Pr[f(x) != f(y)]` by summing over every input and every flip pattern.
pub fn ns_bruteforce(f: &BooleanFunction, epsilon: f64) -> Result<f64> {
    check_epsilon_closed(epsilon)?;
    let n = f.arity();
    check_cap("brute-force arity", n, BRUTE_FORCE_MAX_ARITY)?;
    let size = 1usize << n;
    let pattern_prob: Vec<f64> = (0..=n)
        .map(|k| epsilon.powi(k as i32) * (1.0 - epsilon).powi((n - k) as i32))
        .collect();
    let values = f.values();
    let total: f64 = (0..size)
        .into_par_iter()
        .map(|flips| {
            let disagreements = (0..size)
                .filter(|&x| values[x] != values[x ^ flips])
                .count();
            pattern_prob[flips.count_ones() as usize] * disagreements as f64
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    Ok(total / size as f64)
}

/// Anything that can be evaluated on a row index of `{-1,1}^n`.
pub trait RowOracle: Sync {
    fn arity(&self) -> usize;
    fn eval_row(&self, row: usize) -> i8;
}

impl RowOracle for BooleanFunction {
    fn arity(&self) -> usize {
        BooleanFunction::arity(self)
    }

    fn eval_row(&self, row: usize) -> i8 {
        self.value(row)
    }
}

impl RowOracle for Ltf {
    fn arity(&self) -> usize {
        self.input_arity()
    }

    fn eval_row(&self, row: usize) -> i8 {
        self.evaluate_row(row)
    }
}

/// Monte Carlo noise sensitivity over seeded `(x, y)` pairs.
pub fn ns_mc<F: RowOracle + ?Sized>(
    f: &F,
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_epsilon_closed(epsilon)?;
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let n = f.arity();
    check_cap("arity", n, 63)?;
    let mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let hits = count_hits(samples, seed, |rng| {
        let x = (rng.random::<u64>() & mask) as usize;
        let flips = (0..n).fold(0usize, |acc, i| {
            if rng.random::<f64>() < epsilon {
                acc | (1 << i)
            } else {
                acc
            }
        });
        f.eval_row(x) != f.eval_row(x ^ flips)
    });
    Ok(McEstimate::from_hits(hits, samples))
}

/// Lower bound `arccos(rho)/pi * exp(-theta^2 / (1 + rho))` on the
/// disagreement probability of `sign(X - theta)` and `sign(Y - theta)` for
/// `rho`-correlated standard Gaussians, `rho = 1 - 2 epsilon`.
pub fn gaussian_ns_bound(theta: f64, epsilon: f64) -> Result<f64> {
    let rho = NoiseParams::new(epsilon)?.rho;
    Ok(rho.acos() / PI * (-(theta.abs().powi(2)) / (1.0 + rho)).exp())
}

/// Monte Carlo disagreement probability of a one-dimensional Gaussian halfspace.
pub fn gaussian_ns_mc(theta: f64, rho: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(invalid(format!("rho must lie in [-1, 1], got {rho}")));
    }
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let side = (1.0 - rho * rho).sqrt();
    let hits = count_hits(samples, seed, |rng| {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let y = rho * z1 + side * z2;
        (z1 >= theta) != (y >= theta)
    });
    Ok(McEstimate::from_hits(hits, samples))
}

/// `Pr[X >= theta]` for a standard Gaussian `X`.
pub fn gaussian_tail(theta: f64) -> f64 {
    0.5 * libm::erfc(theta * FRAC_1_SQRT_2)
}

/// Standard Gaussian cdf.
pub fn gaussian_cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t * FRAC_1_SQRT_2)
}

/// `r(theta) = tail(theta) * (theta + 1) * exp(theta^2 / 2)`.
pub fn tail_ratio(theta: f64) -> f64 {
    gaussian_tail(theta) * (theta + 1.0) * (0.5 * theta * theta).exp()
}

/// Extremes of [`tail_ratio`] on the grid `0, 0.01, .., 10`, computed once
/// with 50-digit arithmetic: the minimum sits at 10, the maximum at 0.68.
pub const TAIL_RATIO_BAND: (f64, f64) = (0.434_573_635_115_246_05, 0.525_546_714_133_955_2);

/// The grid `0, 0.01, .., 10` the band was computed on.
pub fn tail_ratio_grid() -> Vec<f64> {
    (0..=1000).map(|i| i as f64 / 100.0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailRatioSummary {
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub argmax: f64,
}

/// Extremes of [`tail_ratio`] over `grid`, which must lie in `[0, 10]`.
pub fn tail_ratio_check(grid: &[f64]) -> Result<TailRatioSummary> {
    if grid.is_empty() {
        return Err(invalid("empty grid"));
    }
    if let Some(t) = grid.iter().find(|t| !(0.0..=10.0).contains(*t)) {
        return Err(invalid(format!("grid point {t} outside [0, 10]")));
    }
    let mut out = TailRatioSummary {
        min: f64::INFINITY,
        argmin: f64::NAN,
        max: f64::NEG_INFINITY,
        argmax: f64::NAN,
    };
    for &t in grid {
        let r = tail_ratio(t);
        if r < out.min {
            out.min = r;
            out.argmin = t;
        }
        if r > out.max {
            out.max = r;
            out.argmax = t;
        }
    }
    Ok(out)
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantBound {
    /// `NS_eps(f)`.
    pub lhs: f64,
    /// `eps * (1 - f^(empty)^2)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `NS_eps(f) >= eps (1 - f^(empty)^2)`, valid for every Boolean `f`.
pub fn constant_bound_check(spectrum: &FourierSpectrum, epsilon: f64) -> Result<ConstantBound> {
    NoiseParams::new(epsilon)?;
    let lhs = ns_exact(spectrum, epsilon)?;
    let mean = spectrum.coefficients()[0];
    let rhs = epsilon * (1.0 - mean * mean);
    Ok(ConstantBound {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-12,
    })
}

/// Lower bound `c1 p^(1/(1-eps)) sqrt(ln(1/p)) sqrt(eps) - c2 eps` on the
/// noise sensitivity of an `eps`-regular LTF with `|E f| = 1 - p`.
pub fn regular_ns_bound(p: f64, epsilon: f64, c1: f64, c2: f64) -> f64 {
    let core = if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        p.powf(1.0 / (1.0 - epsilon)) * (1.0 / p).ln().sqrt() * epsilon.sqrt()
    };
    c1 * core - c2 * epsilon
}

/// The exact distribution of `w . x` for uniform `x`, as sorted atoms.
#[derive(Clone, Debug)]
pub struct LinearFormDistribution {
    sums: Vec<f64>,
}

impl LinearFormDistribution {
    pub fn new(weights: &[f64], cap: usize) -> Result<Self> {
        check_cap("linear form length", weights.len(), cap)?;
        let mut sums = Vec::with_capacity(1 << weights.len());
        sums.push(0.0);
        for &w in weights {
            let len = sums.len();
            for i in 0..len {
                let s = sums[i];
                sums[i] = s + w;
                sums.push(s - w);
            }
        }
        sums.sort_by(f64::total_cmp);
        Ok(LinearFormDistribution { sums })
    }

    /// `Pr[w . x <= t]`.
    pub fn cdf(&self, t: f64) -> f64 {
        self.sums.partition_point(|&s| s <= t) as f64 / self.sums.len() as f64
    }
}

/// `sup_t |Pr[w . x <= t] - Phi(t)|` over the grid, using the canonical
/// (unit-norm) weights of `ltf`.
pub fn regular_cdf_gap(ltf: &Ltf, grid: &[f64]) -> Result<f64> {
    let dist = LinearFormDistribution::new(ltf.weights(), crate::fncore::DEFAULT_MAX_ARITY)?;
    Ok(grid
        .iter()
        .map(|&t| (dist.cdf(t) - gaussian_cdf(t)).abs())
        .fold(0.0, f64::max))
}

/// A real interval with independently open or closed ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `(lo, hi]`.
    pub fn half_open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: true,
        }
    }

    /// `[lo, inf)`.
    pub fn at_least(lo: f64) -> Self {
        Interval::closed(lo, f64::INFINITY)
    }

    pub fn everything() -> Self {
        Interval::closed(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lo_closed { v >= self.lo } else { v > self.lo };
        let below = if self.hi_closed { v <= self.hi } else { v < self.hi };
        above && below
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadrantComparison {
    /// `Pr[(w.x, w.y) in I1 x I2]` over `rho`-correlated Boolean pairs.
    pub boolean: McEstimate,
    /// `Pr[(X, Y) in I1 x I2]` over `rho`-correlated standard Gaussians.
    pub gaussian: McEstimate,
    pub gap: f64,
}

/// Compares the joint law of a linear form at two correlated Boolean points
/// with that of a correlated Gaussian pair.
pub fn boolean_pair_quadrant_mc(
    ltf: &Ltf,
    first: Interval,
    second: Interval,
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<QuadrantComparison> {
    let params = NoiseParams::new(epsilon)?;
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let weights = ltf.weights();
    let boolean_hits = count_hits(samples, seed, |rng| {
        let (mut sx, mut sy) = (0.0, 0.0);
        for &w in weights {
            let x = if rng.random::<bool>() { w } else { -w };
            let y = if rng.random::<f64>() < epsilon { -x } else { x };
            sx += x;
            sy += y;
        }
        first.contains(sx) && second.contains(sy)
    });
    let side = (1.0 - params.rho * params.rho).sqrt();
    let gaussian_hits = count_hits(samples, seed ^ 0x5eed_6a55, |rng| {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        first.contains(z1) && second.contains(params.rho * z1 + side * z2)
    });
    let boolean = McEstimate::from_hits(boolean_hits, samples);
    let gaussian = McEstimate::from_hits(gaussian_hits, samples);
    Ok(QuadrantComparison {
        boolean,
        gaussian,
        gap: (boolean.value - gaussian.value).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fncore::VarSet;
    use crate::ltf::{random_ltf, ThetaLaw, WeightFamily};

    /// Composite Simpson integration of the Gaussian density over
    /// `[theta, theta + 40]`, an oracle independent of erfc.
    fn tail_by_quadrature(theta: f64) -> f64 {
        let density = |x: f64| (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        let (a, b) = (theta, theta + 40.0);
        let steps = 400_000;
        let h = (b - a) / steps as f64;
        let mut acc = density(a) + density(b);
        for i in 1..steps {
            let x = a + h * i as f64;
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * density(x);
        }
        acc * h / 3.0
    }

    #[test]
    fn noise_params() {
        let p = NoiseParams::new(0.1).unwrap();
        assert!((p.rho - 0.8).abs() < 1e-15);
        assert!(NoiseParams::new(0.0).is_err());
        assert!(NoiseParams::new(0.6).is_err());
    }

    #[test]
    fn ns_closed_forms() {
        let dict = BooleanFunction::dictator(3, 1).unwrap();
        let parity = BooleanFunction::parity(2, VarSet::full(2)).unwrap();
        let maj = BooleanFunction::majority(3).unwrap();
        for eps in [0.05, 0.1, 0.3, 0.5] {
            assert!((ns_exact(&dict.wht(), eps).unwrap() - eps).abs() < 1e-12);
            assert!((ns_bruteforce(&dict, eps).unwrap() - eps).abs() < 1e-12);
            let par = 2.0 * eps * (1.0 - eps);
            assert!((ns_exact(&parity.wht(), eps).unwrap() - par).abs() < 1e-12);
            assert!((ns_bruteforce(&parity, eps).unwrap() - par).abs() < 1e-12);
        }
        let constant = BooleanFunction::constant(4, -1).unwrap();
        assert_eq!(ns_exact(&constant.wht(), 0.2).unwrap(), 0.0);
        // 8 inputs x 8 flip patterns by hand: 0.136
        let brute = ns_bruteforce(&maj, 0.1).unwrap();
        assert!((brute - 0.136).abs() < 1e-12);
        assert!((ns_exact(&maj.wht(), 0.1).unwrap() - brute).abs() < 1e-12);
    }

    #[test]
    fn ns_endpoints() {
        let f = random_ltf(7, WeightFamily::Gaussian, ThetaLaw::Fixed(0.4), 5)
            .unwrap()
            .truth_table()
            .unwrap();
        let s = f.wht();
        assert!(ns_exact(&s, 0.0).unwrap().abs() < 1e-12);
        let mean = f.mean();
        assert!((ns_exact(&s, 0.5).unwrap() - (1.0 - mean * mean) / 2.0).abs() < 1e-12);
        assert!(ns_exact(&s, 0.7).is_err());
        let grid = linspace(0.0, 0.5, 51);
        let curve: Vec<f64> = grid.iter().map(|&e| ns_exact(&s, e).unwrap()).collect();
        assert!(curve.windows(2).all(|w| w[1] >= w[0] - 1e-15));
    }

    #[test]
    fn bruteforce_cap() {
        let f = BooleanFunction::constant(13, 1).unwrap();
        assert!(matches!(
            ns_bruteforce(&f, 0.1),
            Err(crate::Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn mc_estimates() {
        let constant = BooleanFunction::constant(5, 1).unwrap();
        assert_eq!(ns_mc(&constant, 0.3, 1000, 9).unwrap().value, 0.0);

        let dict = BooleanFunction::dictator(4, 2).unwrap();
        let est = ns_mc(&dict, 0.25, 1_000_000, 1).unwrap();
        assert!(est.contains(0.25, 1.0), "{est:?}");

        let maj = BooleanFunction::majority(3).unwrap();
        let est = ns_mc(&maj, 0.1, 1_000_000, 2).unwrap();
        assert!(est.contains(0.136, 1.0), "{est:?}");
        assert_eq!(est, ns_mc(&maj, 0.1, 1_000_000, 2).unwrap());

        let radius = hoeffding_radius(1_000_000);
        assert!((radius - (2e6f64.ln() / 2e6).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mc_on_ltf_matches_exact() {
        let l = random_ltf(9, WeightFamily::Gaussian, ThetaLaw::Fixed(0.3), 4).unwrap();
        let exact = ns_exact(&l.truth_table().unwrap().wht(), 0.15).unwrap();
        let est = ns_mc(&l, 0.15, 200_000, 3).unwrap();
        assert!(est.contains(exact, 1.0));
    }

    #[test]
    fn gaussian_bound_examples() {
        assert!((gaussian_ns_bound(0.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        let b = gaussian_ns_bound(1.0, 0.5).unwrap();
        assert!((b - 0.5 * (-1f64).exp()).abs() < 1e-15);
        assert!((b - 0.18394).abs() < 1e-5);
        let truth = 2.0 * gaussian_tail(1.0) * (1.0 - gaussian_tail(1.0));
        assert!((truth - 0.2670).abs() < 1e-4);
        assert!(truth > b);
        assert_eq!(gaussian_ns_bound(-1.3, 0.2).unwrap(), gaussian_ns_bound(1.3, 0.2).unwrap());
        for rho in [0.0, 0.5, 0.9] {
            let eps = (1.0 - rho) / 2.0;
            let b0 = gaussian_ns_bound(0.0, eps).unwrap();
            assert!((b0 - f64::acos(rho) / PI).abs() < 1e-15);
        }
    }

    #[test]
    fn gaussian_mc_examples() {
        assert_eq!(gaussian_ns_mc(1.5, 1.0, 10_000, 4).unwrap().value, 0.0);
        let est = gaussian_ns_mc(0.0, 0.0, 1_000_000, 5).unwrap();
        assert!(est.contains(0.5, 1.0));
        let est = gaussian_ns_mc(0.5, 0.8, 1_000_000, 6).unwrap();
        assert!(est.value >= gaussian_ns_bound(0.5, 0.1).unwrap() - est.radius);
        assert!(gaussian_ns_mc(0.0, 1.5, 10, 0).is_err());
    }

    #[test]
    fn gaussian_tail_accuracy() {
        assert_eq!(gaussian_tail(0.0), 0.5);
        for theta in [0.25, 1.0, 2.0, 3.5, 6.0] {
            let oracle = tail_by_quadrature(theta);
            assert!((gaussian_tail(theta) - oracle).abs() < 1e-10, "theta={theta}");
            assert!((gaussian_tail(-theta) - (1.0 - gaussian_tail(theta))).abs() < 1e-10);
        }
        assert!((gaussian_tail(1.0) - 0.158655).abs() < 1e-6);
    }

    #[test]
    fn tail_ratio_limits() {
        assert_eq!(tail_ratio(0.0), 0.5);
        let limit = 1.0 / (2.0 * PI).sqrt();
        // r(theta) -> 1/sqrt(2 pi) from above, with relative excess about 1/theta
        let r10 = tail_ratio(10.0);
        assert!(r10 > limit && r10 < limit * 1.1, "r(10) = {r10}");
        assert!(tail_ratio_check(&[11.0]).is_err());
    }

    #[test]
    fn tail_ratio_matches_high_precision_values() {
        // 50-digit reference values
        for (theta, r) in [
            (0.68, 0.525_546_714_133_955_2),
            (1.0, 0.523_156_583_730_246_8),
            (10.0, 0.434_573_635_115_246_05),
        ] {
            assert!((tail_ratio(theta) - r).abs() < 1e-13 * r, "theta = {theta}");
        }
        let s = tail_ratio_check(&tail_ratio_grid()).unwrap();
        assert_eq!((s.argmin, s.argmax), (10.0, 0.68));
        assert!((s.min - TAIL_RATIO_BAND.0).abs() < 1e-13);
        assert!((s.max - TAIL_RATIO_BAND.1).abs() < 1e-13);
    }

    #[test]
    fn constant_bound_examples() {
        let c = constant_bound_check(&BooleanFunction::constant(3, 1).unwrap().wht(), 0.2).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (0.0, 0.0, true));
        let d = constant_bound_check(&BooleanFunction::dictator(2, 0).unwrap().wht(), 0.1).unwrap();
        assert!((d.lhs - 0.1).abs() < 1e-15 && (d.rhs - 0.1).abs() < 1e-15 && d.holds);
    }

    #[test]
    fn linear_form_distribution() {
        let d = LinearFormDistribution::new(&[0.5, 0.5, 0.5, 0.5], 20).unwrap();
        assert_eq!(d.cdf(-2.1), 0.0);
        assert_eq!(d.cdf(-1.0), 5.0 / 16.0);
        assert_eq!(d.cdf(0.0), 11.0 / 16.0);
        assert_eq!(d.cdf(2.0), 1.0);
    }

    #[test]
    fn cdf_gap_single_weight() {
        let l = crate::ltf::Ltf::canonicalize(&[1.0], 0.0).unwrap();
        // the cdf jumps to 1/2 at t = -1, where Phi(-1) = 0.1587
        let gap = regular_cdf_gap(&l, &[-1.5, -1.0, 0.98]).unwrap();
        assert!((gap - (0.5 - gaussian_cdf(-1.0))).abs() < 1e-12);
        let gap = regular_cdf_gap(&l, &[-1.5, 0.98]).unwrap();
        assert!((gap - (gaussian_cdf(0.98) - 0.5)).abs() < 1e-12);
        assert!(gap <= 2.0);
    }

    #[test]
    fn intervals() {
        let i = Interval::half_open(0.0, 1.0);
        assert!(!i.contains(0.0) && i.contains(1.0));
        assert!(Interval::at_least(0.0).contains(0.0));
        assert!(Interval::everything().contains(-1e300));
    }

    #[test]
    fn quadrant_examples() {
        let l = random_ltf(16, WeightFamily::Equal, ThetaLaw::Fixed(0.0), 0).unwrap();
        let all = boolean_pair_quadrant_mc(
            &l,
            Interval::everything(),
            Interval::everything(),
            0.2,
            5_000,
            1,
        )
        .unwrap();
        assert_eq!((all.boolean.value, all.gaussian.value), (1.0, 1.0));
        let half = boolean_pair_quadrant_mc(
            &l,
            Interval::at_least(0.0),
            Interval::at_least(0.0),
            0.5,
            400_000,
            2,
        )
        .unwrap();
        assert!(half.gaussian.contains(0.25, 1.0));
    }

    #[test]
    fn regular_bound_edges() {
        assert_eq!(regular_ns_bound(0.0, 0.1, 1.0, 0.0), 0.0);
        assert_eq!(regular_ns_bound(1.0, 0.1, 1.0, 2.0), -0.2);
        let v = regular_ns_bound(0.5, 0.1, 1.0, 0.0);
        let expected = 0.5f64.powf(1.0 / 0.9) * 2f64.ln().sqrt() * 0.1f64.sqrt();
        assert!((v - expected).abs() < 1e-15);
    }
}
