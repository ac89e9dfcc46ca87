//! Calibration runs for the empirical constants.
//!
//! `cargo run --release -p hsf --example calibrate [instances] [seed]`
//!
//! Prints the smallest ratio `NS / core` over random regular LTFs, where
//! `core = p^(1/(1-eps)) sqrt(ln(1/p)) sqrt(eps)`; `REGULAR_NS_C1` must stay
//! below it. The seed defaults to one the checks never use.

use hsf::checks::random_regular_instance;
use hsf::noise::{ns_exact, regular_ns_bound};
use hsf::seed::derive_seed;

fn main() -> hsf::Result<()> {
    let mut args = std::env::args().skip(1);
    let instances: u64 = args.next().map_or(2000, |s| s.parse().expect("instances"));
    let seed: u64 = args.next().map_or(0xca11b, |s| s.parse().expect("seed"));
    let mut worst = (f64::INFINITY, 0.0, 0.0, 0);
    let mut trivial = 0;
    for i in 0..instances {
        let (ltf, eps) = random_regular_instance(derive_seed(seed, i))?;
        let spectrum = ltf.truth_table()?.wht();
        let p = 1.0 - spectrum.coefficients()[0].abs();
        let core = regular_ns_bound(p, eps, 1.0, 0.0);
        if core <= 0.0 {
            trivial += 1;
            continue;
        }
        let ratio = ns_exact(&spectrum, eps)? / core;
        if ratio < worst.0 {
            worst = (ratio, p, eps, ltf.len());
        }
    }
    println!(
        "instances={instances} seed={seed} trivial={trivial} min_ratio={:.6} at p={:.3e} eps={:.4} n={}",
        worst.0, worst.1, worst.2, worst.3
    );
    Ok(())
}
