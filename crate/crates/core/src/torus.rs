//! Folding sets and step functions onto the circle `ℝ/ℤ`.
//!
//! The multiplicity of a set `S` at `ξ ∈ [0, 1)` is `#{k ∈ ℤ : ξ + k ∈ S}`.
//! Translation tiling, covering and transversal selection are all read off
//! this function.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Condition, Error, Result};
use crate::intervals::{ceil_int, floor_int, frac, int, ratio, Interval, IntervalSet, Rational};
use crate::step::{StepFn, Sweep, TorusStep};

pub fn unit() -> Interval {
    Interval::new(Rational::zero(), Rational::one()).unwrap()
}

/// Splits `[lo, hi)` at the integers, reporting each piece shifted into `[0, 1)`.
pub(crate) fn for_each_residue_piece<F>(i: &Interval, mut f: F)
where
    F: FnMut(Rational, Rational),
{
    let mut m = floor_int(i.lo());
    let end = ceil_int(i.hi());
    while m < end {
        let base = Rational::from_integer(m.clone());
        let lo = i.lo().max(&base).clone() - &base;
        let next = &base + Rational::one();
        let hi = i.hi().min(&next).clone() - &base;
        f(lo, hi);
        m += 1;
    }
}

/// Multiplicity function of `S` on `[0, 1)`.
pub fn fold_multiplicity(set: &IntervalSet) -> TorusStep {
    let mut sweep = Sweep::default();
    let one = Rational::one();
    for p in set.parts() {
        for_each_residue_piece(p, |lo, hi| sweep.add(lo, hi, &one));
    }
    TorusStep::from_sweep(&unit(), sweep)
}

/// Periodization `Σ_k f(ξ + k)` on `[0, 1)`.
pub fn fold_weighted(f: &StepFn) -> TorusStep {
    let mut sweep = Sweep::default();
    for (p, v) in f.pieces() {
        for_each_residue_piece(p, |lo, hi| sweep.add(lo, hi, v));
    }
    TorusStep::from_sweep(&unit(), sweep)
}

/// Residues in `[0, 1)` hit by `S`.
pub fn residues(set: &IntervalSet) -> IntervalSet {
    let mut pieces = Vec::new();
    for p in set.parts() {
        for_each_residue_piece(p, |lo, hi| pieces.push(Interval::new(lo, hi).unwrap()));
    }
    IntervalSet::from_intervals(pieces)
}

/// Whether the integer translates of `S` tile the line.
pub fn check_s3(set: &IntervalSet) -> bool {
    fold_multiplicity(set).is_constant(&Rational::one())
}

/// Whether the integer translates of `S` cover the line.
pub fn check_cover(set: &IntervalSet) -> bool {
    fold_multiplicity(set).min() >= &Rational::one()
}

/// First residue interval where the tiling multiplicity differs from 1,
/// with the multiplicity found there.
pub fn tiling_violation(set: &IntervalSet) -> Option<(Interval, Rational)> {
    fold_multiplicity(set).first_violation(|v| v.is_one())
}

/// `⋃_k (E + k) ∩ [lo, hi)`.
pub fn periodize_within(e: &IntervalSet, lo: &Rational, hi: &Rational) -> IntervalSet {
    if e.is_empty() || lo >= hi {
        return IntervalSet::empty();
    }
    let base = residues(e);
    let mut out = Vec::new();
    let mut k = floor_int(lo);
    let end = ceil_int(hi);
    while k < end {
        let shift = Rational::from_integer(k.clone());
        for p in base.parts() {
            let lo_k = (p.lo() + &shift).max(lo.clone());
            let hi_k = (p.hi() + &shift).min(hi.clone());
            if let Some(i) = Interval::nonempty(lo_k, hi_k) {
                out.push(i);
            }
        }
        k += 1;
    }
    IntervalSet::from_intervals(out)
}

/// `⋃_k (E + k) ∩ [-M, M)`.
pub fn periodize_window(e: &IntervalSet, m: u64) -> Result<IntervalSet> {
    if m == 0 {
        return Err(Error::Input("window half-width must be at least 1".into()));
    }
    let m = Rational::from_integer(BigInt::from(m));
    Ok(periodize_within(e, &(-m.clone()), &m))
}

/// Selects `K' ⊆ S'` whose integer translates tile the line.
///
/// `[0, 1)` is refined at every folded endpoint of `S'`; on each atom the
/// smallest integer `k` with `atom + k ⊆ S'` is chosen. With `prefer_centered`
/// a shift landing inside `[-1/2, 1/2)` wins when one is available.
pub fn extract_transversal(cover: &IntervalSet, prefer_centered: bool) -> Result<IntervalSet> {
    let Some(hull) = cover.hull() else {
        return Err(Error::Precondition {
            condition: Condition::Cover,
            witness: unit(),
        });
    };
    let mut cuts: Vec<Rational> = cover
        .parts()
        .iter()
        .flat_map(|p| [frac(p.lo()), frac(p.hi())])
        .collect();
    cuts.push(Rational::zero());
    cuts.push(Rational::one());
    if prefer_centered {
        cuts.push(ratio(1, 2));
    }
    cuts.sort();
    cuts.dedup();

    let k_min = floor_int(hull.lo()).to_i64().expect("bounded set");
    let k_max = ceil_int(hull.hi()).to_i64().expect("bounded set");
    let half = ratio(1, 2);
    let mut chosen = Vec::new();
    for w in cuts.windows(2) {
        let atom = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        let preferred = if !prefer_centered {
            None
        } else if atom.hi() <= &half {
            Some(0)
        } else {
            Some(-1)
        };
        let fits = |k: i64| cover.contains_interval(&atom.translate(&int(k)));
        let pick = preferred
            .filter(|&k| fits(k))
            .or_else(|| (k_min..=k_max).find(|&k| fits(k)));
        match pick {
            Some(k) => chosen.push(atom.translate(&int(k))),
            None => {
                return Err(Error::Precondition {
                    condition: Condition::Cover,
                    witness: atom,
                })
            }
        }
    }
    Ok(IntervalSet::from_intervals(chosen))
}
