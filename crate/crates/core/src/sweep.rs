//! Seeded parameter sweeps of the junta engine.
//!
//! Instance `i` draws its LTF from `derive_seed(seed, i)` with family
//! `families[i % families.len()]`, so a row depends only on its index and the
//! configuration. Instances run in parallel; rows come back in instance order
//! and then `(eps, delta)` grid order.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::junta::{extract_junta_prepared, PreparedLtf, ReportSummary, TheoremConfig, REPORT_HEADER};
use crate::ltf::{random_ltf, ThetaLaw, WeightFamily};
use crate::output::{fmt_real, write_csv};
use crate::seed::derive_seed;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub families: Vec<WeightFamily>,
    pub theta: ThetaLaw,
    pub n: usize,
    pub count: usize,
    pub epsilons: Vec<f64>,
    pub deltas: Vec<f64>,
    pub seed: u64,
    pub theorem: TheoremConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            families: vec![
                WeightFamily::Gaussian,
                WeightFamily::GeometricDecay { rate: 0.5 },
                WeightFamily::Equal,
            ],
            theta: ThetaLaw::Uniform { lo: -3.0, hi: 3.0 },
            n: 14,
            count: 500,
            epsilons: vec![0.05, 0.1, 0.25],
            deltas: vec![0.05, 0.1, 0.2],
            seed: 0,
            theorem: TheoremConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub instance: usize,
    pub family: WeightFamily,
    pub instance_seed: u64,
    pub theta: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub summary: ReportSummary,
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.families.is_empty() && config.count > 0 {
        return Err(invalid("sweep needs at least one weight family"));
    }
    config.theorem.validate()?;
    let per_instance: Vec<Vec<SweepRow>> = (0..config.count)
        .into_par_iter()
        .map(|instance| sweep_instance(config, instance))
        .collect::<Result<_>>()?;
    Ok(per_instance.into_iter().flatten().collect())
}

fn sweep_instance(config: &SweepConfig, instance: usize) -> Result<Vec<SweepRow>> {
    let family = config.families[instance % config.families.len()];
    let instance_seed = derive_seed(config.seed, instance as u64);
    let ltf = random_ltf(config.n, family, config.theta, instance_seed)?;
    let theta = ltf.threshold();
    let prepared = PreparedLtf::new(ltf, config.theorem.max_arity)?;
    let mut rows = Vec::with_capacity(config.epsilons.len() * config.deltas.len());
    for &epsilon in &config.epsilons {
        for &delta in &config.deltas {
            let report = extract_junta_prepared(&prepared, epsilon, delta, &config.theorem)?;
            rows.push(SweepRow {
                instance,
                family,
                instance_seed,
                theta,
                epsilon,
                delta,
                summary: ReportSummary::new(&report),
            });
        }
    }
    Ok(rows)
}

pub fn sweep_header() -> String {
    format!("instance,family,instance_seed,theta,epsilon,delta,{REPORT_HEADER}")
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], seed: u64, out: W) -> io::Result<()> {
    let records = rows.iter().map(|r| {
        let mut record = vec![
            r.instance.to_string(),
            r.family.to_string(),
            r.instance_seed.to_string(),
            fmt_real(r.theta),
            fmt_real(r.epsilon),
            fmt_real(r.delta),
        ];
        record.extend(r.summary.csv_record());
        record
    });
    write_csv(out, &sweep_header(), records, seed)
}
