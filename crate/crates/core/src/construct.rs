//! Scaling sets and wavelet sets.
//!
//! A scaling set `S` satisfies `S ⊆ 2S` (S1), `1_S(2^-j ξ) -> 1` (S2) and
//! tiles the line by integer translates (S3); then `W = 2S ∖ S` is a wavelet
//! set. [`construct_scaling_set`] extracts such an `S` from any set `S'`
//! satisfying (S1), (S2) and the covering condition:
//!
//! ```text
//! K₀  = S' ∩ [-1/2, 1/2)
//! K   = K₀ ∪ (K' ∖ K₀ᴾ)                        K' ⊆ S' a transversal
//! E_n = 2⁻ⁿK ∖ ⋃_{j>n} ((2⁻ʲK)ᴾ ∖ 2⁻ʲK)
//! S   = ⋃_n E_n
//! ```
//!
//! where `Eᴾ` is the union of integer translates of `E`. The inner union is
//! truncated at `j <= n + J` and the outer one at `n <= N`; the truncation
//! error is reported as a [`DefectReport`].

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dyadic::{dilation_sum, Side};
use crate::error::{Condition, Error, Result};
use crate::intervals::{ceil_int, floor_int, int, pow2, ratio, Interval, IntervalSet, Rational};
use crate::spectral::{psi_spectrum_from_scaling, validate_scaling_spectrum, SpectrumVerdict};
use crate::step::StepFn;
use crate::torus::{self, residues};

/// Truncation depths: `n` bounds the outer union, `j` the inner one
/// relative to `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Depths {
    pub n: u32,
    pub j: u32,
}

impl Default for Depths {
    fn default() -> Self {
        Depths { n: 40, j: 40 }
    }
}

/// Certified bounds on how far a truncated construction may be from the
/// infinite-depth set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    /// Exact `|S ∖ 2S|` of the computed set.
    pub s1_defect: Rational,
    /// Bound on `|S_computed ∖ S_ideal|` from the truncated inner union.
    pub excess_bound: Rational,
    /// Bound on `|S_ideal ∖ S_computed|` from the truncated outer union.
    pub deficit_bound: Rational,
    /// `excess_bound + deficit_bound`.
    pub coverage_defect: Rational,
    pub containment_exact: bool,
    pub depth_n: u32,
    pub depth_j: u32,
    /// The subtracted sets are provably empty and the union stabilizes;
    /// the computed set is then the exact infinite-depth set.
    pub fast_path: bool,
    pub stabilized_at: Option<u32>,
}

impl DefectReport {
    /// Bound on `|W_computed ∖ W_ideal|` for `W = 2S ∖ S`.
    pub fn wavelet_set_bound(&self) -> Rational {
        &self.excess_bound * int(2) + &self.deficit_bound
    }

    pub fn is_exact(&self) -> bool {
        self.coverage_defect.is_zero() && self.s1_defect.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingSetResult {
    pub s: IntervalSet,
    pub w: IntervalSet,
    /// The transversal `K ⊆ S'` the construction was built from.
    pub k: IntervalSet,
    pub defects: DefectReport,
}

/// Part of `S` not contained in `2S`, if any.
pub fn s1_violation(s: &IntervalSet) -> Option<Interval> {
    s.subtract(&s.dilate(1)).parts().first().cloned()
}

/// (S1): `S ⊆ 2S`.
pub fn check_s1(s: &IntervalSet) -> bool {
    s1_violation(s).is_none()
}

/// A one-sided neighbourhood of 0 missed by `S`, if any.
///
/// For a finite union of intervals, `1_S(2^-j ξ)` is eventually constant
/// for every `ξ ≠ 0`, so (S2) holds exactly when `S` contains a punctured
/// neighbourhood of 0.
pub fn s2_violation(s: &IntervalSet) -> Option<Interval> {
    let zero = Rational::zero();
    let right = s.contains(&zero);
    let left = s.parts().iter().any(|p| p.lo() < &zero && p.hi() >= &zero);
    if !right {
        let end = s
            .parts()
            .iter()
            .map(|p| p.lo())
            .find(|lo| lo.is_positive())
            .cloned()
            .unwrap_or_else(Rational::one);
        return Some(Interval::new(zero, end).unwrap());
    }
    if !left {
        let start = s
            .parts()
            .iter()
            .rev()
            .map(|p| p.hi())
            .find(|hi| hi.is_negative())
            .cloned()
            .unwrap_or_else(|| int(-1));
        return Some(Interval::new(start, zero).unwrap());
    }
    None
}

/// (S2): `lim_j 1_S(2^-j ξ) = 1` almost everywhere.
pub fn check_s2(s: &IntervalSet) -> bool {
    s2_violation(s).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureKind {
    TranslationOverlap,
    TranslationGap,
    DilationOverlap,
    DilationGap,
}

impl FailureKind {
    pub fn name(self) -> &'static str {
        match self {
            FailureKind::TranslationOverlap => "translation overlap",
            FailureKind::TranslationGap => "translation gap",
            FailureKind::DilationOverlap => "dilation overlap",
            FailureKind::DilationGap => "dilation gap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingFailure {
    pub kind: FailureKind,
    /// Every point of the witness has the reported multiplicity. Translation
    /// witnesses are residues in `[0, 1)`.
    pub witness: Interval,
    /// Multiplicity on the witness; `None` when unbounded.
    pub multiplicity: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingVerdict {
    Pass,
    Fail(TilingFailure),
}

impl TilingVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, TilingVerdict::Pass)
    }
}

fn classify(m: &Rational, overlap: FailureKind, gap: FailureKind) -> FailureKind {
    if m > &Rational::one() {
        overlap
    } else {
        gap
    }
}

/// Exact decision whether `{W + k}` and `{2^j W}` both partition the line.
pub fn verify_wavelet_set(w: &IntervalSet) -> TilingVerdict {
    if let Some((witness, m)) = torus::tiling_violation(w) {
        return TilingVerdict::Fail(TilingFailure {
            kind: classify(&m, FailureKind::TranslationOverlap, FailureKind::TranslationGap),
            witness,
            multiplicity: Some(m),
        });
    }
    let zero = Rational::zero();
    // A piece abutting 0 overlaps its own dilates.
    for p in w.parts() {
        if p.lo() <= &zero && p.hi() >= &zero {
            let witness = if p.hi().is_positive() {
                Interval::new(zero.clone(), p.hi().clone()).unwrap()
            } else {
                p.clone()
            };
            return TilingVerdict::Fail(TilingFailure {
                kind: FailureKind::DilationOverlap,
                witness,
                multiplicity: None,
            });
        }
    }
    let r = w
        .parts()
        .iter()
        .map(|p| if p.lo().is_positive() { p.lo().clone() } else { -p.hi().clone() })
        .min()
        .expect("a set that tiles by translation is non-empty");
    let f = StepFn::indicator(w);
    for side in [Side::Positive, Side::Negative] {
        let sum = dilation_sum(&f, side, &r).expect("W is bounded away from 0");
        if let Some((witness, m)) = sum.first_violation(|v| v.is_one()) {
            return TilingVerdict::Fail(TilingFailure {
                kind: classify(&m, FailureKind::DilationOverlap, FailureKind::DilationGap),
                witness,
                multiplicity: Some(m),
            });
        }
    }
    TilingVerdict::Pass
}

fn require(condition: Condition, violation: Option<Interval>) -> Result<()> {
    match violation {
        None => Ok(()),
        Some(witness) => Err(Error::Precondition { condition, witness }),
    }
}

fn cover_violation(s: &IntervalSet) -> Option<Interval> {
    torus::fold_multiplicity(s)
        .first_violation(|v| !v.is_zero())
        .map(|(i, _)| i)
}

/// `2^e · [lo, hi)` endpoints.
fn scaled_hull(hull: &Interval, e: i64) -> (Rational, Rational) {
    let s = pow2(e);
    (hull.lo() * &s, hull.hi() * &s)
}

/// Number of nonzero integers `k` with `[a + k, b + k) ∩ [lo, hi) ≠ ∅`.
fn meeting_translates(a: &Rational, b: &Rational, lo: &Rational, hi: &Rational) -> BigInt {
    // a + k < hi and b + k > lo  <=>  lo - b < k < hi - a
    let first = floor_int(&(lo - b)) + 1;
    let last = ceil_int(&(hi - a)) - 1;
    if last < first {
        return BigInt::zero();
    }
    let mut count = &last - &first + 1;
    if first <= BigInt::zero() && last >= BigInt::zero() {
        count -= 1;
    }
    count
}

/// Builds a scaling set inside `cover`, which must satisfy (S1), (S2) and
/// the covering condition.
///
/// Guarantees hold exactly at every depth: `S ⊆ cover`, `W = 2S ∖ S`, and
/// `E_n ⊆ 2E_{n+1}` for `n < N` (so only `E_N` can break `S ⊆ 2S`).
pub fn construct_scaling_set(cover: &IntervalSet, depths: Depths) -> Result<ScalingSetResult> {
    require(Condition::Cover, cover_violation(cover))?;
    require(Condition::S1, s1_violation(cover))?;
    require(Condition::S2, s2_violation(cover))?;

    let half = ratio(1, 2);
    let k0 = cover.intersect(&IntervalSet::span(-half.clone(), half));
    let transversal = torus::extract_transversal(cover, true)?;
    let tk = transversal.hull().expect("transversal is non-empty");
    let k0_periodic = torus::periodize_within(&k0, tk.lo(), tk.hi());
    let k = k0.union(&transversal.subtract(&k0_periodic));
    debug_assert!(torus::check_s3(&k));
    debug_assert!(k.is_subset(cover));

    let hull = k.hull().expect("K is non-empty");
    let (l, h) = (hull.lo().clone(), hull.hi().clone());
    let one = Rational::one();
    let two = int(2);

    // Every translate (2^-j K) + k, j >= 1, k != 0, misses [l, h) ⊇ 2^-n K.
    let fast = &h - &l / &two <= one && &h / &two - &l <= one;
    if fast {
        let zero = Rational::zero();
        let core = k
            .parts()
            .iter()
            .find(|p| p.lo() < &zero && p.hi() > &zero)
            .expect("K contains a neighbourhood of 0")
            .clone();
        let mut n0: u32 = 0;
        loop {
            let (a, b) = scaled_hull(&hull, -(n0 as i64));
            if &a >= core.lo() && &b <= core.hi() {
                break;
            }
            n0 += 1;
        }
        let s = (0..=n0).fold(IntervalSet::empty(), |acc, n| acc.union(&k.dilate(-(n as i64))));
        let w = s.dilate(1).subtract(&s);
        let defects = DefectReport {
            s1_defect: s.subtract(&s.dilate(1)).measure(),
            excess_bound: Rational::zero(),
            deficit_bound: Rational::zero(),
            coverage_defect: Rational::zero(),
            containment_exact: s.is_subset(cover),
            depth_n: depths.n,
            depth_j: depths.j,
            fast_path: true,
            stabilized_at: Some(n0),
        };
        return Ok(ScalingSetResult { s, w, k, defects });
    }

    let (big_n, big_j) = (depths.n as i64, depths.j as i64);
    let max_j = (big_n + big_j) as usize;
    // residues of 2^-j K for j = 0..=N+J
    let scaled: Vec<IntervalSet> = (0..=max_j as i64).map(|j| k.dilate(-j)).collect();
    let folded: Vec<IntervalSet> = scaled.iter().map(residues).collect();
    let measure_k = k.measure();

    let mut s = IntervalSet::empty();
    let mut excess = Rational::zero();
    for n in 0..=big_n {
        let (lo, hi) = scaled_hull(&hull, -n);
        let mut removed = Vec::new();
        for j in (n + 1)..=(n + big_j) {
            let j = j as usize;
            let periodic = replicate(&folded[j], &lo, &hi);
            removed.extend(periodic.subtract(&scaled[j]).into_parts());
        }
        let removed = IntervalSet::from_intervals(removed);
        let e_n = scaled[n as usize].subtract(&removed);
        s = s.union(&e_n);

        let (ta, tb) = scaled_hull(&hull, -(n + big_j + 1));
        let count = meeting_translates(&ta, &tb, &lo, &hi);
        excess += Rational::from_integer(count) * &measure_k * pow2(-(n + big_j));
    }
    let deficit = &measure_k * pow2(-big_n);
    let w = s.dilate(1).subtract(&s);
    let defects = DefectReport {
        s1_defect: s.subtract(&s.dilate(1)).measure(),
        coverage_defect: &excess + &deficit,
        excess_bound: excess,
        deficit_bound: deficit,
        containment_exact: s.is_subset(cover),
        depth_n: depths.n,
        depth_j: depths.j,
        fast_path: false,
        stabilized_at: None,
    };
    Ok(ScalingSetResult { s, w, k, defects })
}

/// `⋃_k (base + k) ∩ [lo, hi)` for a residue set `base ⊆ [0, 1)`.
fn replicate(base: &IntervalSet, lo: &Rational, hi: &Rational) -> IntervalSet {
    let mut out = Vec::new();
    let first = floor_int(lo).to_i64().expect("window fits i64");
    let last = ceil_int(hi).to_i64().expect("window fits i64");
    for k in first..last {
        let shift = int(k);
        for p in base.parts() {
            let a = (p.lo() + &shift).max(lo.clone());
            let b = (p.hi() + &shift).min(hi.clone());
            if let Some(i) = Interval::nonempty(a, b) {
                out.push(i);
            }
        }
    }
    IntervalSet::from_intervals(out)
}

/// Scaling set inside the support of a scaling function's transform.
pub fn scaling_set_in_support(support: &IntervalSet, depths: Depths) -> Result<ScalingSetResult> {
    let result = construct_scaling_set(support, depths)?;
    assert!(result.s.is_subset(support), "construction left its cover");
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletSetInSupport {
    pub s: IntervalSet,
    pub w: IntervalSet,
    /// `h(ξ) = g(ξ/2) - g(ξ)`, the squared modulus of the wavelet transform.
    pub psi_spectrum: StepFn,
    pub supp_psi: IntervalSet,
    /// `W ⊆ supp ψ̂` exactly.
    pub contained: bool,
    /// Exact `|W ∖ supp ψ̂|`.
    pub outside_measure: Rational,
    /// Certified bound the outside measure must respect (0 on the fast path).
    pub outside_bound: Rational,
    pub defects: DefectReport,
}

/// Given `g = |φ̂|²`, finds a wavelet set inside the support of the MRA
/// wavelet's transform.
pub fn wavelet_set_in_support(g: &StepFn, depths: Depths) -> Result<WaveletSetInSupport> {
    if let SpectrumVerdict::Fail { condition, witness } = validate_scaling_spectrum(g)? {
        return Err(Error::InvalidSpectrum { condition, witness });
    }
    let psi_spectrum = psi_spectrum_from_scaling(g)?;
    let result = scaling_set_in_support(&g.support(), depths)?;
    let supp_psi = psi_spectrum.support();
    let outside_measure = result.w.subtract(&supp_psi).measure();
    let outside_bound = result.defects.wavelet_set_bound();
    Ok(WaveletSetInSupport {
        contained: outside_measure.is_zero(),
        s: result.s,
        w: result.w,
        psi_spectrum,
        supp_psi,
        outside_measure,
        outside_bound,
        defects: result.defects,
    })
}
