//! The state sum over admissible colorings, an independent
//! Dijkgraaf–Witten count for the pointed bulk case, and a harness that
//! recomputes the sum along sequences of moves.

mod engine;
mod harness;
mod oracle;

use num_complex::Complex64;
use serde::Serialize;

use crate::biparcel::DEFAULT_TOLERANCE;

pub use engine::{enumerate_colorings, evaluate, invariant, invariant_with, BaseMap, Coloring, Colorings};
pub use harness::{invariance_check, random_moves, Trace, TraceStep, MAX_ATTEMPTS};
pub use oracle::dw_oracle;

/// Value of the state sum together with the number of colorings summed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub colorings: u64,
    pub tolerance: f64,
}

/// JSON shape of an [`Amplitude`].
#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeRecord {
    pub re: f64,
    pub im: f64,
    pub colorings_counted: u64,
    pub tolerance: f64,
}

impl Amplitude {
    pub fn deviation(&self, other: Complex64) -> f64 {
        (self.value - other).norm()
    }

    pub fn approx_eq(&self, other: Complex64) -> bool {
        self.deviation(other) <= self.tolerance
    }

    pub fn record(&self) -> AmplitudeRecord {
        AmplitudeRecord {
            re: self.value.re,
            im: self.value.im,
            colorings_counted: self.colorings,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub threads: usize,
    pub tolerance: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { threads: 1, tolerance: DEFAULT_TOLERANCE }
    }
}
