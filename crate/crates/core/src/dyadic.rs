//! Dilation folding: `Σ_j f(2^j ξ)` on a dyadic annulus.
//!
//! The sum is invariant under `ξ -> 2ξ`, so its values on `[c, 2c)` and
//! `[-2c, -c)` determine it on all of `ℝ ∖ {0}`.

use num_traits::{Signed, Zero};

use crate::intervals::{int, pow2, Interval, Rational};
use crate::step::{StepFn, Sweep, WindowStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Positive => "positive",
            Side::Negative => "negative",
        }
    }
}

/// Whether `f` is nonzero arbitrarily close to 0 on the given side.
pub fn touches_zero(f: &StepFn, side: Side) -> bool {
    let zero = Rational::zero();
    match side {
        Side::Positive => !f.right_limit(&zero).is_zero(),
        Side::Negative => !f.left_limit(&zero).is_zero(),
    }
}

/// `[c, 2c)` on the positive side, `[-2c, -c)` on the negative side.
pub fn annulus(side: Side, c: &Rational) -> Interval {
    let c2 = c * int(2);
    match side {
        Side::Positive => Interval::new(c.clone(), c2).unwrap(),
        Side::Negative => Interval::new(-c2, -c.clone()).unwrap(),
    }
}

/// `ξ -> Σ_j f(2^j ξ)` on the annulus of `side` with inner radius `c > 0`.
///
/// Returns `None` when `f` does not vanish near 0 on that side, where
/// infinitely many terms meet every point.
pub fn dilation_sum(f: &StepFn, side: Side, c: &Rational) -> Option<WindowStep> {
    assert!(c.is_positive(), "annulus radius must be positive");
    if touches_zero(f, side) {
        return None;
    }
    let oriented = match side {
        Side::Positive => f.clone(),
        Side::Negative => f.compose_scale(&int(-1)).expect("nonzero"),
    };
    let two_c = c * int(2);
    let mut sweep = Sweep::default();
    for (piece, v) in oriented.pieces() {
        if !piece.lo().is_positive() {
            continue;
        }
        // smallest e with 2^e * hi > c
        let mut e: i64 = 0;
        if piece.hi() > c {
            while piece.hi() * pow2(e - 1) > *c {
                e -= 1;
            }
        } else {
            while piece.hi() * pow2(e) <= *c {
                e += 1;
            }
        }
        loop {
            let scale = pow2(e);
            let lo = piece.lo() * &scale;
            if lo >= two_c {
                break;
            }
            let hi = piece.hi() * &scale;
            sweep.add(lo.max(c.clone()), hi.min(two_c.clone()), v);
            e += 1;
        }
    }
    let positive = WindowStep::from_sweep(&annulus(Side::Positive, c), sweep);
    Some(match side {
        Side::Positive => positive,
        Side::Negative => mirror(&positive),
    })
}

/// `x -> w(-x)`, with half-open orientation restored.
pub fn mirror(w: &WindowStep) -> WindowStep {
    let breaks: Vec<Rational> = w.breaks().iter().rev().map(|b| -b.clone()).collect();
    let values: Vec<Rational> = w.values().iter().rev().cloned().collect();
    WindowStep::from_parts(breaks, values).expect("mirrored breaks increase")
}
