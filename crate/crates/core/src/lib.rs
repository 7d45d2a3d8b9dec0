//! Exact construction and verification of dyadic wavelet sets, scaling sets
//! and step-function spectra over `ℚ`.
//!
//! Sets are finite unions of half-open intervals with rational endpoints and
//! are compared modulo null sets. Nothing is approximated with floating
//! point; operations that involve a limit report the depth they were run at
//! and a certified bound on what was left out.

pub mod construct;
pub mod dyadic;
pub mod error;
pub mod format;
pub mod intervals;
pub mod msf2d;
pub mod spectral;
pub mod step;
pub mod torus;

pub use error::{Condition, Error, Result};
pub use intervals::{format_rational, parse_rational, Interval, IntervalSet, Rational};
pub use step::{StepFn, TorusStep, WindowStep};
