//! Dense truth tables over `{-1,1}^n` and their Fourier spectra.
//!
//! Row `k` of a truth table holds `f(x)` where `x_i = -1` exactly when bit
//! `i` of `k` is set. Variables are 0-indexed: bit `i` is variable `i`.
//! With this convention the character `chi_S` evaluated on row `k` is
//! `(-1)^popcount(k & S)`, which is what the butterfly transform computes.

use std::fmt;

use rayon::prelude::*;

use crate::error::{check_cap, invalid, Error, Result};

/// Default arity cap for exact (truth-table) operations.
pub const DEFAULT_MAX_ARITY: usize = 20;
/// Largest arity the cap may be raised to.
pub const HARD_MAX_ARITY: usize = 24;

const PAR_THRESHOLD: usize = 1 << 15;

/// A set of variables stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        VarSet(vars.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, var: usize) -> bool {
        var < 32 && self.0 & (1 << var) != 0
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    /// Variables of `{0, .., n-1}` not in `self`.
    pub fn complement(self, n: usize) -> Self {
        VarSet::full(n).difference(self)
    }

    /// Variables in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Gathers the bits of `word` selected by `mask` into the low bits (pext).
pub fn compress(word: usize, mask: VarSet) -> usize {
    let mut out = 0;
    for (j, v) in mask.iter().enumerate() {
        out |= ((word >> v) & 1) << j;
    }
    out
}

/// Scatters the low bits of `word` into the positions of `mask` (pdep).
pub fn expand(word: usize, mask: VarSet) -> usize {
    let mut out = 0;
    for (j, v) in mask.iter().enumerate() {
        out |= ((word >> j) & 1) << v;
    }
    out
}

/// The `±1` point encoded by a row index.
pub fn row_to_point(row: usize, n: usize) -> Vec<i8> {
    (0..n).map(|i| if row >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Inverse of [`row_to_point`].
pub fn point_to_row(x: &[i8]) -> usize {
    x.iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| if v < 0 { acc | (1 << i) } else { acc })
}

/// `sign` with the tie rule `sign(0) = +1`.
pub fn sign(z: f64) -> i8 {
    if z >= 0.0 {
        1
    } else {
        -1
    }
}

/// A Boolean function `{-1,1}^n -> {-1,1}` stored as its full truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    values: Vec<i8>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, ", self.arity)?;
        if self.values.len() <= 64 {
            write!(f, "{:?})", self.values)
        } else {
            write!(f, "{} rows)", self.values.len())
        }
    }
}

impl BooleanFunction {
    /// Builds a function from its truth table under the default arity cap.
    pub fn from_values(arity: usize, values: Vec<i8>) -> Result<Self> {
        Self::from_values_capped(arity, values, DEFAULT_MAX_ARITY)
    }

    pub fn from_values_capped(arity: usize, values: Vec<i8>, cap: usize) -> Result<Self> {
        check_cap("arity", arity, cap.min(HARD_MAX_ARITY))?;
        if values.len() != 1 << arity {
            return Err(invalid(format!(
                "truth table for n={arity} needs {} entries, got {}",
                1usize << arity,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|&v| v != 1 && v != -1) {
            return Err(invalid(format!(
                "entry {pos} is {} (expected +1 or -1)",
                values[pos]
            )));
        }
        Ok(BooleanFunction { arity, values })
    }

    /// Tabulates `f(row)` for every row.
    pub fn from_fn(arity: usize, f: impl Fn(usize) -> i8 + Sync + Send) -> Result<Self> {
        Self::from_fn_capped(arity, DEFAULT_MAX_ARITY, f)
    }

    pub fn from_fn_capped(arity: usize, cap: usize, f: impl Fn(usize) -> i8 + Sync + Send) -> Result<Self> {
        check_cap("arity", arity, cap.min(HARD_MAX_ARITY))?;
        let values: Vec<i8> = (0..1usize << arity).into_par_iter().map(f).collect();
        Self::from_values_capped(arity, values, cap)
    }

    pub fn constant(arity: usize, value: i8) -> Result<Self> {
        Self::from_fn(arity, |_| value)
    }

    /// `f(x) = x_var`.
    pub fn dictator(arity: usize, var: usize) -> Result<Self> {
        if var >= arity {
            return Err(invalid(format!("variable {var} out of range for n={arity}")));
        }
        Self::from_fn(arity, |row| if row >> var & 1 == 1 { -1 } else { 1 })
    }

    /// `chi_S`.
    pub fn parity(arity: usize, set: VarSet) -> Result<Self> {
        if !set.is_subset_of(VarSet::full(arity)) {
            return Err(invalid("parity set exceeds the arity"));
        }
        let mask = set.bits() as usize;
        Self::from_fn(arity, |row| if (row & mask).count_ones() % 2 == 1 { -1 } else { 1 })
    }

    /// `sign(x_1 + .. + x_n)` with `sign(0) = +1`.
    pub fn majority(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |row| {
            let minus = row.count_ones() as i64;
            sign((arity as i64 - 2 * minus) as f64)
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, row: usize) -> i8 {
        self.values[row]
    }

    /// Evaluates on a `±1` point.
    pub fn eval(&self, x: &[i8]) -> i8 {
        self.values[point_to_row(x)]
    }

    pub fn negate(&self) -> Self {
        BooleanFunction {
            arity: self.arity,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// Fourier spectrum by the fast Walsh-Hadamard transform.
    pub fn wht(&self) -> FourierSpectrum {
        let mut coefficients: Vec<f64> = self.values.iter().map(|&v| f64::from(v)).collect();
        butterfly(&mut coefficients);
        let scale = (-(self.arity as f64)).exp2();
        coefficients.iter_mut().for_each(|c| *c *= scale);
        FourierSpectrum {
            arity: self.arity,
            coefficients,
        }
    }

    fn sum(&self) -> i64 {
        self.values.iter().map(|&v| i64::from(v)).sum()
    }

    /// `E[f]`, which equals the empty-set coefficient.
    pub fn mean(&self) -> f64 {
        self.sum() as f64 / self.values.len() as f64
    }

    /// `E[f g]`.
    pub fn correlation(&self, other: &BooleanFunction) -> Result<f64> {
        self.same_arity(other)?;
        let dot: i64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| i64::from(a * b))
            .sum();
        Ok(dot as f64 / self.values.len() as f64)
    }

    /// Fraction of rows on which `self` and `other` differ.
    pub fn distance(&self, other: &BooleanFunction) -> Result<f64> {
        self.same_arity(other)?;
        let diff = self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count();
        Ok(diff as f64 / self.values.len() as f64)
    }

    fn same_arity(&self, other: &BooleanFunction) -> Result<()> {
        if self.arity != other.arity {
            return Err(invalid(format!(
                "arity mismatch: {} vs {}",
                self.arity, other.arity
            )));
        }
        Ok(())
    }

    /// True iff flipping any variable outside `set` never changes the value.
    pub fn is_junta_on(&self, set: VarSet) -> bool {
        let outside: Vec<usize> = set.complement(self.arity).iter().collect();
        (0..self.values.len()).all(|row| {
            outside
                .iter()
                .all(|&i| self.values[row] == self.values[row ^ (1 << i)])
        })
    }

    /// Extends a function on the variables of `set` (in ascending order) to
    /// one on `{0, .., arity-1}` that ignores every other variable.
    pub fn lift(junta: &BooleanFunction, arity: usize, set: VarSet) -> Result<Self> {
        if set.len() != junta.arity || !set.is_subset_of(VarSet::full(arity)) {
            return Err(invalid("junta set does not match the junta's arity"));
        }
        Self::from_fn_capped(arity, HARD_MAX_ARITY, |row| junta.values[compress(row, set)])
    }

    /// Text form: `n=<arity>` on the first line, then the `2^n` values.
    pub fn to_text(&self) -> String {
        let body: Vec<&str> = self
            .values
            .iter()
            .map(|&v| if v == 1 { "+1" } else { "-1" })
            .collect();
        format!("n={}\n{}\n", self.arity, body.join(" "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n=<int>` header".into()))?;
        let arity: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{}`", header.trim())))?;
        let values = lines
            .flat_map(str::split_whitespace)
            .map(|tok| match tok {
                "+1" | "1" => Ok(1),
                "-1" => Ok(-1),
                other => Err(Error::Parse(format!("bad entry `{other}`"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::from_values_capped(arity, values, HARD_MAX_ARITY)
    }
}

/// In-place unnormalized Walsh-Hadamard butterfly. Every output is produced
/// by the same sequence of additions whatever the thread count.
pub(crate) fn butterfly(data: &mut [f64]) {
    let len = data.len();
    let mut half = 1;
    while half < len {
        let step = |block: &mut [f64]| {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        };
        if len >= PAR_THRESHOLD && len / (2 * half) >= 8 {
            data.par_chunks_exact_mut(2 * half).for_each(step);
        } else {
            data.chunks_exact_mut(2 * half).for_each(step);
        }
        half *= 2;
    }
}

/// Fourier coefficients `f^(S)`, indexed by the bitmask of `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum {
    arity: usize,
    coefficients: Vec<f64>,
}

impl FourierSpectrum {
    pub fn from_coefficients(arity: usize, coefficients: Vec<f64>) -> Result<Self> {
        check_cap("arity", arity, HARD_MAX_ARITY)?;
        if coefficients.len() != 1 << arity {
            return Err(invalid(format!(
                "spectrum for n={arity} needs {} coefficients, got {}",
                1usize << arity,
                coefficients.len()
            )));
        }
        Ok(FourierSpectrum {
            arity,
            coefficients,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, set: VarSet) -> f64 {
        self.coefficients[set.bits() as usize]
    }

    /// `sum_S f^(S)^2`.
    pub fn total_weight(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// `W_k = sum_{|S| = k} f^(S)^2` for `k = 0..=n`.
    pub fn weight_by_degree(&self) -> Vec<f64> {
        let mut weights = vec![0.0; self.arity + 1];
        for (mask, c) in self.coefficients.iter().enumerate() {
            weights[mask.count_ones() as usize] += c * c;
        }
        weights
    }

    /// `sum_S f^(S) g^(S)`.
    pub fn inner(&self, other: &FourierSpectrum) -> Result<f64> {
        if self.arity != other.arity {
            return Err(invalid("arity mismatch"));
        }
        Ok(self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Real-valued table `x -> sum_S f^(S) chi_S(x)`.
    pub fn synthesize(&self) -> Vec<f64> {
        let mut table = self.coefficients.clone();
        butterfly(&mut table);
        table
    }
}
