//! Restrictions of a truth table to assignments of a head set `H`.
//!
//! Assignments are indexed like rows: bit `j` of an assignment index is the
//! `j`-th smallest variable of `H`, and a set bit means that variable is `-1`.
//! A restricted function keeps the remaining variables in ascending order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_cap, invalid, Result};
use crate::fncore::{compress, expand, BooleanFunction, FourierSpectrum, VarSet};
use crate::noise::ns_exact;

/// Default cap on `|H|` for the loops that materialize every restriction.
pub const DEFAULT_HEAD_CAP: usize = 16;

/// An assignment of `±1` values to the variables of `head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    head: VarSet,
    assignment: Vec<i8>,
}

impl Restriction {
    /// `assignment[j]` is the value of the `j`-th smallest variable of `head`.
    pub fn new(head: VarSet, assignment: Vec<i8>) -> Result<Self> {
        if assignment.len() != head.len() {
            return Err(invalid(format!(
                "assignment has {} values for a head of {} variables",
                assignment.len(),
                head.len()
            )));
        }
        if assignment.iter().any(|&v| v != 1 && v != -1) {
            return Err(invalid("assignment values must be +1 or -1"));
        }
        Ok(Restriction { head, assignment })
    }

    pub fn from_index(head: VarSet, index: usize) -> Self {
        let assignment = (0..head.len())
            .map(|j| if index >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        Restriction { head, assignment }
    }

    pub fn head(&self) -> VarSet {
        self.head
    }

    pub fn assignment(&self) -> &[i8] {
        &self.assignment
    }

    /// The assignment index (inverse of [`Restriction::from_index`]).
    pub fn index(&self) -> usize {
        crate::fncore::point_to_row(&self.assignment)
    }

    /// The row bits contributed by the fixed head variables.
    fn head_bits(&self) -> usize {
        expand(self.index(), self.head)
    }
}

/// `f_rho` on the variables outside the head.
pub fn restrict(f: &BooleanFunction, r: &Restriction) -> Result<BooleanFunction> {
    let n = f.arity();
    if !r.head.is_subset_of(VarSet::full(n)) {
        return Err(invalid("head set exceeds the arity"));
    }
    let free = r.head.complement(n);
    let fixed = r.head_bits();
    let values = (0..1usize << free.len())
        .map(|t| f.value(expand(t, free) | fixed))
        .collect();
    BooleanFunction::from_values_capped(free.len(), values, crate::fncore::HARD_MAX_ARITY)
}

fn restrict_index(f: &BooleanFunction, head: VarSet, index: usize) -> BooleanFunction {
    restrict(f, &Restriction::from_index(head, index)).expect("head already validated")
}

fn check_head(f: &BooleanFunction, head: VarSet, cap: usize) -> Result<()> {
    if !head.is_subset_of(VarSet::full(f.arity())) {
        return Err(invalid("head set exceeds the arity"));
    }
    check_cap("head size", head.len(), cap)
}

/// Exact integer sums `sum_{x_T} f_rho(x_T)` for every assignment.
pub(crate) fn block_sums(f: &BooleanFunction, head: VarSet) -> Vec<i64> {
    let mut sums = vec![0i64; 1 << head.len()];
    for (row, &v) in f.values().iter().enumerate() {
        sums[compress(row, head)] += i64::from(v);
    }
    sums
}

/// `E[f_rho]` for every assignment `rho` to a head set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasProfile {
    pub head: u32,
    pub biases: Vec<f64>,
}

impl BiasProfile {
    /// Fraction of assignments with `|E[f_rho]| <= 1 - delta`.
    pub fn frac_unbiased(&self, delta: f64) -> f64 {
        self.count_unbiased(delta) as f64 / self.biases.len() as f64
    }

    pub fn count_unbiased(&self, delta: f64) -> usize {
        self.biases.iter().filter(|b| b.abs() <= 1.0 - delta).count()
    }

    pub fn mean(&self) -> f64 {
        self.biases.iter().sum::<f64>() / self.biases.len() as f64
    }
}

/// Exact bias profile under the default head cap.
pub fn bias_profile(f: &BooleanFunction, head: VarSet) -> Result<BiasProfile> {
    bias_profile_capped(f, head, DEFAULT_HEAD_CAP)
}

pub fn bias_profile_capped(f: &BooleanFunction, head: VarSet, cap: usize) -> Result<BiasProfile> {
    check_head(f, head, cap)?;
    let block = (1usize << (f.arity() - head.len())) as f64;
    Ok(BiasProfile {
        head: head.bits(),
        biases: block_sums(f, head)
            .into_iter()
            .map(|s| s as f64 / block)
            .collect(),
    })
}

/// Both sides of `E_rho[f_rho^(S)^2] = sum_{T subset H} f^(S u T)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Checks the restriction identity for one `S` disjoint from `H`.
pub fn verify_fact_restrict(
    f: &BooleanFunction,
    head: VarSet,
    set: VarSet,
) -> Result<IdentityCheck> {
    check_head(f, head, DEFAULT_HEAD_CAP)?;
    if !set.intersection(head).is_empty() {
        return Err(invalid("S must be disjoint from the head"));
    }
    if !set.is_subset_of(VarSet::full(f.arity())) {
        return Err(invalid("S exceeds the arity"));
    }
    let spectra = restricted_spectra(f, head);
    let global = f.wht();
    Ok(identity_at(&spectra, &global, f.arity(), head, set))
}

/// Checks the identity for every `S` disjoint from `H`, in mask order of `S`.
pub fn verify_fact_restrict_all(
    f: &BooleanFunction,
    head: VarSet,
) -> Result<Vec<(VarSet, IdentityCheck)>> {
    check_head(f, head, DEFAULT_HEAD_CAP)?;
    let n = f.arity();
    let free = head.complement(n);
    let spectra = restricted_spectra(f, head);
    let global = f.wht();
    Ok((0..1usize << free.len())
        .map(|t| {
            let set = VarSet::from_bits(expand(t, free) as u32);
            (set, identity_at(&spectra, &global, n, head, set))
        })
        .collect())
}

fn restricted_spectra(f: &BooleanFunction, head: VarSet) -> Vec<FourierSpectrum> {
    (0..1usize << head.len())
        .into_par_iter()
        .map(|idx| restrict_index(f, head, idx).wht())
        .collect()
}

fn identity_at(
    spectra: &[FourierSpectrum],
    global: &FourierSpectrum,
    n: usize,
    head: VarSet,
    set: VarSet,
) -> IdentityCheck {
    let local = compress(set.bits() as usize, head.complement(n));
    let lhs = spectra
        .iter()
        .map(|s| s.coefficients()[local].powi(2))
        .sum::<f64>()
        / spectra.len() as f64;
    let rhs = (0..1usize << head.len())
        .map(|t| {
            let mask = set.bits() as usize | expand(t, head);
            global.coefficients()[mask].powi(2)
        })
        .sum::<f64>();
    IdentityCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    }
}

/// `NS(f)` against `E_rho[NS(f_rho)]`, plus the thresholded consequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AggregationCheck {
    pub ns_f: f64,
    pub expected_restricted_ns: f64,
    pub holds: bool,
    /// `max_k v_(k) * k / 2^|H|` with `v_(1) >= v_(2) >= ..` the restricted
    /// sensitivities: the strongest bound `tau * delta` obtainable from
    /// "`Pr_rho[NS(f_rho) > tau] > delta` implies `NS(f) >= tau delta`".
    pub threshold_bound: f64,
    pub threshold_holds: bool,
}

pub fn ns_aggregation_check(
    f: &BooleanFunction,
    head: VarSet,
    epsilon: f64,
) -> Result<AggregationCheck> {
    check_head(f, head, DEFAULT_HEAD_CAP)?;
    let ns_f = ns_exact(&f.wht(), epsilon)?;
    let mut restricted: Vec<f64> = (0..1usize << head.len())
        .into_par_iter()
        .map(|idx| ns_exact(&restrict_index(f, head, idx).wht(), epsilon))
        .collect::<Result<_>>()?;
    let count = restricted.len() as f64;
    let expected = restricted.iter().sum::<f64>() / count;
    restricted.sort_by(|a, b| b.total_cmp(a));
    let threshold_bound = restricted
        .iter()
        .enumerate()
        .map(|(k, v)| v * (k + 1) as f64 / count)
        .fold(0.0, f64::max);
    Ok(AggregationCheck {
        ns_f,
        expected_restricted_ns: expected,
        holds: ns_f >= expected - 1e-12,
        threshold_bound,
        threshold_holds: ns_f >= threshold_bound - 1e-12,
    })
}
