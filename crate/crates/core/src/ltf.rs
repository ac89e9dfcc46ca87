//! Linear threshold functions `sign(w . x - theta)` in canonical form, their
//! regularity profile and critical index, and seeded random generators.
//!
//! A canonical [`Ltf`] keeps only the nonzero weights, scaled to unit
//! Euclidean norm and sorted by decreasing magnitude. The threshold is scaled
//! by the same factor, so the represented function never changes.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, invalid, Error, Result};
use crate::fncore::{BooleanFunction, VarSet, DEFAULT_MAX_ARITY};
use crate::seed::stream_rng;

/// Margins `w . x - theta` with absolute value at most this are ties and
/// evaluate to `+1`. Weights have unit norm, so this only absorbs rounding.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Ltf {
    weights: Vec<f64>,
    threshold: f64,
    original_index: Vec<usize>,
    dropped: Vec<usize>,
    input_arity: usize,
}

impl Ltf {
    /// Canonical form of `sign(weights . x - theta)`.
    pub fn canonicalize(weights: &[f64], theta: f64) -> Result<Ltf> {
        if weights.iter().any(|w| !w.is_finite()) || !theta.is_finite() {
            return Err(invalid("weights and threshold must be finite"));
        }
        let mut kept: Vec<(usize, f64)> = Vec::with_capacity(weights.len());
        let mut dropped = Vec::new();
        for (i, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                dropped.push(i);
            } else {
                kept.push((i, w));
            }
        }
        if kept.is_empty() {
            return Err(Error::DegenerateLtf);
        }
        let norm = kept.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        // already unit norm: leave the bits alone so canonicalization is idempotent
        let scale = if (norm - 1.0).abs() <= 1e-14 {
            1.0
        } else {
            norm
        };
        // stable sort keeps ascending coordinate order among equal magnitudes
        kept.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
        Ok(Ltf {
            weights: kept.iter().map(|&(_, w)| w / scale).collect(),
            threshold: theta / scale,
            original_index: kept.iter().map(|&(i, _)| i).collect(),
            dropped,
            input_arity: weights.len(),
        })
    }

    /// Canonical weights, sorted by decreasing magnitude.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Input coordinate of each sorted position.
    pub fn original_index(&self) -> &[usize] {
        &self.original_index
    }

    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    /// Number of input coordinates, including dropped ones.
    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    /// Number of relevant (nonzero-weight) variables.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn margin_with(&self, coord_sign: impl Fn(usize) -> f64) -> f64 {
        let dot: f64 = self
            .weights
            .iter()
            .zip(&self.original_index)
            .map(|(w, &i)| w * coord_sign(i))
            .sum();
        dot - self.threshold
    }

    /// `w . x - theta` for `x` indexed by input coordinate.
    pub fn margin(&self, x: &[i8]) -> f64 {
        self.margin_with(|i| f64::from(x[i]))
    }

    /// Evaluates on `x`, indexed by input coordinate.
    pub fn evaluate(&self, x: &[i8]) -> i8 {
        assert!(x.len() >= self.input_arity, "assignment too short");
        self.sign_of(self.margin(x))
    }

    /// Evaluates on a truth-table row index (bit `i` set means `x_i = -1`).
    pub fn evaluate_row(&self, row: usize) -> i8 {
        self.sign_of(self.margin_with(|i| if row >> i & 1 == 1 { -1.0 } else { 1.0 }))
    }

    fn sign_of(&self, margin: f64) -> i8 {
        if margin >= -TIE_TOLERANCE {
            1
        } else {
            -1
        }
    }

    /// Truth table over all input coordinates.
    pub fn truth_table(&self) -> Result<BooleanFunction> {
        self.truth_table_capped(DEFAULT_MAX_ARITY)
    }

    pub fn truth_table_capped(&self, cap: usize) -> Result<BooleanFunction> {
        check_cap("arity", self.input_arity, cap)?;
        BooleanFunction::from_fn_capped(self.input_arity, cap, |row| self.evaluate_row(row))
    }

    pub fn profile(&self) -> RegularityProfile {
        RegularityProfile::of(&self.weights)
    }

    /// The smallest 1-based position `i` with `|w_i| <= tau * sigma_i`.
    pub fn critical_index(&self, tau: f64) -> Result<CriticalIndex> {
        if !(tau > 0.0) {
            return Err(invalid(format!("tau must be positive, got {tau}")));
        }
        let tails = tail_norms(&self.weights);
        Ok(self
            .weights
            .iter()
            .zip(&tails)
            .position(|(w, sigma)| w.abs() <= tau * sigma + TIE_TOLERANCE)
            .map_or(CriticalIndex::Infinite, |p| CriticalIndex::Finite(p + 1)))
    }

    /// Input coordinates of the first `k` sorted positions.
    pub fn head_set(&self, k: usize) -> VarSet {
        VarSet::from_vars(self.original_index.iter().take(k).copied())
    }

    /// Splits the linear form into the first `ell` sorted positions and the rest.
    pub fn head_split(&self, ell: usize) -> Result<HeadSplit> {
        if ell == 0 || ell > self.len() {
            return Err(invalid(format!(
                "head size {ell} outside 1..={}",
                self.len()
            )));
        }
        let entries: Vec<(usize, f64)> = self
            .original_index
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
            .collect();
        let tail = entries[ell..].to_vec();
        let tail_profile = (!tail.is_empty()).then(|| {
            let norm = tail.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
            let scaled: Vec<f64> = tail.iter().map(|(_, w)| w / norm).collect();
            RegularityProfile::of(&scaled)
        });
        Ok(HeadSplit {
            head: entries[..ell].to_vec(),
            tail,
            tail_profile,
        })
    }

    /// Parses the `weights`/`theta` TOML document.
    pub fn from_toml_str(text: &str) -> Result<Ltf> {
        let file: LtfFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ltf::canonicalize(&file.weights, file.theta)
    }
}

/// On-disk LTF description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LtfFile {
    pub weights: Vec<f64>,
    pub theta: f64,
}

/// `sigma_k = sqrt(sum_{i >= k} w_i^2)` for each position.
fn tail_norms(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out: Vec<f64> = weights
        .iter()
        .rev()
        .map(|w| {
            acc += w * w;
            acc.sqrt()
        })
        .collect();
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityProfile {
    /// `sigma_1, .., sigma_n`.
    pub tail_norms: Vec<f64>,
    /// `max_i |w_i| / ||w||`.
    pub tau_star: f64,
}

impl RegularityProfile {
    fn of(weights: &[f64]) -> Self {
        let tail_norms = tail_norms(weights);
        let tau_star = weights.first().map_or(0.0, |w| w.abs() / tail_norms[0]);
        RegularityProfile {
            tail_norms,
            tau_star,
        }
    }

    pub fn is_regular(&self, tau: f64) -> bool {
        self.tau_star <= tau + TIE_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeadSplit {
    /// `(input coordinate, weight)` for the head positions.
    pub head: Vec<(usize, f64)>,
    pub tail: Vec<(usize, f64)>,
    /// Profile of the tail after rescaling it to unit norm.
    pub tail_profile: Option<RegularityProfile>,
}

/// A critical index: a 1-based position, or infinity when no position qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriticalIndex {
    Finite(usize),
    Infinite,
}

impl CriticalIndex {
    pub fn finite(self) -> Option<usize> {
        match self {
            CriticalIndex::Finite(i) => Some(i),
            CriticalIndex::Infinite => None,
        }
    }
}

impl fmt::Display for CriticalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalIndex::Finite(i) => write!(f, "{i}"),
            CriticalIndex::Infinite => f.write_str("inf"),
        }
    }
}

impl serde::Serialize for CriticalIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CriticalIndex::Finite(i) => s.serialize_u64(*i as u64),
            CriticalIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Weight families for random instances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightFamily {
    /// i.i.d. standard Gaussian weights (small critical index).
    Gaussian,
    /// `w_i = rate^i` (large critical index).
    GeometricDecay { rate: f64 },
    /// All weights equal: majority when `theta = 0`.
    Equal,
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFamily::Gaussian => f.write_str("gaussian"),
            WeightFamily::GeometricDecay { rate } => write!(f, "geometric:{rate}"),
            WeightFamily::Equal => f.write_str("equal"),
        }
    }
}

impl FromStr for WeightFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(WeightFamily::Gaussian),
            "equal" => Ok(WeightFamily::Equal),
            other => {
                let rate = other
                    .strip_prefix("geometric:")
                    .and_then(|r| r.parse::<f64>().ok())
                    .ok_or_else(|| invalid(format!("unknown weight family `{other}`")))?;
                Ok(WeightFamily::GeometricDecay { rate })
            }
        }
    }
}

/// Distribution of the threshold, in units of the unit-norm weight vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaLaw {
    Fixed(f64),
    Uniform { lo: f64, hi: f64 },
    Gaussian { std: f64 },
}

impl fmt::Display for ThetaLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaLaw::Fixed(t) => write!(f, "fixed:{t}"),
            ThetaLaw::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            ThetaLaw::Gaussian { std } => write!(f, "gaussian:{std}"),
        }
    }
}

impl FromStr for ThetaLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| invalid(format!("bad number `{t}` in theta law `{s}`")))
        };
        match parts.as_slice() {
            ["fixed", t] => Ok(ThetaLaw::Fixed(num(t)?)),
            ["uniform", lo, hi] => Ok(ThetaLaw::Uniform {
                lo: num(lo)?,
                hi: num(hi)?,
            }),
            ["gaussian", std] => Ok(ThetaLaw::Gaussian { std: num(std)? }),
            _ => Err(invalid(format!("unknown theta law `{s}`"))),
        }
    }
}

/// A random LTF on `n` variables; a deterministic function of its arguments.
pub fn random_ltf(n: usize, family: WeightFamily, theta: ThetaLaw, seed: u64) -> Result<Ltf> {
    check_cap("arity", n, crate::fncore::HARD_MAX_ARITY)?;
    if n == 0 {
        return Err(invalid("random LTF needs at least one variable"));
    }
    let mut rng = stream_rng(seed, 0);
    let raw: Vec<f64> = match family {
        WeightFamily::Gaussian => (0..n)
            .map(|_| loop {
                let w: f64 = rng.sample(StandardNormal);
                if w != 0.0 {
                    break w;
                }
            })
            .collect(),
        WeightFamily::GeometricDecay { rate } => {
            if !(rate > 0.0 && rate < 1.0) {
                return Err(invalid(format!("geometric rate must lie in (0,1), got {rate}")));
            }
            (1..=n as i32).map(|i| rate.powi(i)).collect()
        }
        WeightFamily::Equal => vec![1.0; n],
    };
    let theta = match theta {
        ThetaLaw::Fixed(t) => t,
        ThetaLaw::Uniform { lo, hi } => {
            if !(lo <= hi) {
                return Err(invalid("uniform theta law needs lo <= hi"));
            }
            lo + (hi - lo) * rng.random::<f64>()
        }
        ThetaLaw::Gaussian { std } => {
            if !(std >= 0.0) {
                return Err(invalid("gaussian theta law needs std >= 0"));
            }
            std * rng.sample::<f64, _>(StandardNormal)
        }
    };
    let norm = raw.iter().map(|w| w * w).sum::<f64>().sqrt();
    let unit: Vec<f64> = raw.iter().map(|w| w / norm).collect();
    Ltf::canonicalize(&unit, theta)
}
