//! Fourier analysis of Boolean functions on `{-1, 1}^n`, specialized to
//! halfspaces (linear threshold functions).
//!
//! * [`fncore`]: truth tables and their Walsh-Hadamard spectra.
//! * [`ltf`]: canonical halfspaces and their critical index.
//! * [`noise`]: noise sensitivity, computed exactly or by sampling, and the
//!   Gaussian quantities it is compared against.
//! * [`restriction`]: fixing head variables and the bias profile of the
//!   resulting subfunctions.
//! * [`junta`]: the case analysis that turns a halfspace with small noise
//!   sensitivity into a nearby junta, with exact distances.
//! * [`checks`] and [`sweep`]: seeded suites and parameter sweeps that write
//!   CSV.
//!
//! Row `r` of a truth table is the point with `x_i = -1` exactly when bit `i`
//! of `r` is set; variables are numbered from 0.
//!
//! ```
//! use hsf::fncore::BooleanFunction;
//! use hsf::noise::ns_exact;
//!
//! let maj = BooleanFunction::majority(3).unwrap();
//! let ns = ns_exact(&maj.wht(), 0.1).unwrap();
//! assert!((ns - 0.136).abs() < 1e-12);
//! ```

pub mod checks;
pub mod error;
pub mod fncore;
pub mod junta;
pub mod ltf;
pub mod noise;
pub mod output;
pub mod restriction;
pub mod seed;
pub mod sweep;

pub use error::{Error, Result};

// The README and each guide chapter are modules so that `cargo test --doc` runs its
// snippets and a failure names the chapter.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/halfspaces.md")]
    mod halfspaces {}
    #[doc = include_str!("../../../book/src/noise.md")]
    mod noise {}
    #[doc = include_str!("../../../book/src/restrictions.md")]
    mod restrictions {}
    #[doc = include_str!("../../../book/src/juntas.md")]
    mod juntas {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/calibration.md")]
    mod calibration {}
}
