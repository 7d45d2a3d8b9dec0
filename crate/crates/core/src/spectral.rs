//! Step-function spectra.
//!
//! Scaling spectra `g = |φ̂|²`, wavelet spectra `h = |ψ̂|²` and real-valued
//! transforms `ψ̂` are all [`StepFn`]s. Everything here is exact: sums over
//! dilations and translations have finitely many nonzero terms on the
//! regions where they are evaluated.

use num_traits::{One, Signed, Zero};

use crate::dyadic::{dilation_sum, Side};
use crate::error::{Condition, Error, Result};
use crate::intervals::{frac, int, pow2, ratio, Interval, IntervalSet, Rational};
use crate::step::{StepFn, Sweep, WindowStep};
use crate::torus::{self, for_each_residue_piece, residues};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumVerdict {
    Pass,
    Fail { condition: Condition, witness: Interval },
}

impl SpectrumVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, SpectrumVerdict::Pass)
    }
}

fn near_zero_witness(f: &StepFn, side: Side) -> Interval {
    let zero = Rational::zero();
    let points = f.breakpoints();
    match side {
        Side::Positive => {
            let end = points.into_iter().find(|b| b.is_positive()).unwrap_or_else(Rational::one);
            Interval::new(zero, end).unwrap()
        }
        Side::Negative => {
            let start = points
                .into_iter()
                .rev()
                .find(|b| b.is_negative())
                .unwrap_or_else(|| int(-1));
            Interval::new(start, zero).unwrap()
        }
    }
}

/// Checks that `g` is `|φ̂|²` for a scaling function `φ`:
///
/// * (F3) `Σ_k g(ξ + k) = 1`;
/// * (F2) `g = 1` on a punctured neighbourhood of 0;
/// * (F1) `g(2ξ) = r(ξ) g(ξ)` with `r` 1-periodic on `supp g`, and
///   `supp g(2·) ⊆ supp g`.
///
/// Negative values are an input error.
pub fn validate_scaling_spectrum(g: &StepFn) -> Result<SpectrumVerdict> {
    if let Some((i, v)) = g.pieces().iter().find(|(_, v)| v.is_negative()) {
        return Err(Error::Input(format!("spectrum is negative ({}) on {i}", v)));
    }
    if let Some((witness, _)) = torus::fold_weighted(g).first_violation(|v| v.is_one()) {
        return Ok(SpectrumVerdict::Fail { condition: Condition::F3, witness });
    }
    let zero = Rational::zero();
    if !g.right_limit(&zero).is_one() {
        return Ok(SpectrumVerdict::Fail {
            condition: Condition::F2,
            witness: near_zero_witness(g, Side::Positive),
        });
    }
    if !g.left_limit(&zero).is_one() {
        return Ok(SpectrumVerdict::Fail {
            condition: Condition::F2,
            witness: near_zero_witness(g, Side::Negative),
        });
    }
    let support = g.support();
    let contracted = support.dilate(-1);
    if let Some(witness) = contracted.subtract(&support).parts().first() {
        return Ok(SpectrumVerdict::Fail {
            condition: Condition::F1,
            witness: witness.clone(),
        });
    }
    // r = g(2·)/g on supp g must agree on every pair ξ, ξ + k inside supp g.
    let doubled = g.compose_scale(&int(2))?;
    let quotient = doubled.combine(g, |a, b| if b.is_zero() { Rational::zero() } else { a / b });
    let mut cuts: Vec<Rational> = quotient
        .breakpoints()
        .iter()
        .chain(support.parts().iter().flat_map(|p| [p.lo(), p.hi()]))
        .map(frac)
        .collect();
    cuts.extend([Rational::zero(), Rational::one()]);
    cuts.sort();
    cuts.dedup();
    let hull = support.hull().expect("F3 forces a non-empty support");
    let (k_min, k_max) = (crate::intervals::floor_int(hull.lo()), crate::intervals::ceil_int(hull.hi()));
    for w in cuts.windows(2) {
        let atom = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        let mut seen: Option<Rational> = None;
        let mut k = k_min.clone();
        while k <= k_max {
            let shifted = atom.translate(&Rational::from_integer(k.clone()));
            if support.contains_interval(&shifted) {
                let r = quotient.eval(&shifted.midpoint());
                match &seen {
                    None => seen = Some(r),
                    Some(prev) if *prev != r => {
                        return Ok(SpectrumVerdict::Fail {
                            condition: Condition::F1,
                            witness: shifted,
                        })
                    }
                    Some(_) => {}
                }
            }
            k += 1;
        }
    }
    Ok(SpectrumVerdict::Pass)
}

/// `h(ξ) = g(ξ/2) - g(ξ)`, the squared modulus of the associated wavelet's
/// transform; negative values mean `g` was not a scaling spectrum.
pub fn psi_spectrum_from_scaling(g: &StepFn) -> Result<StepFn> {
    let h = g.compose_scale(&ratio(1, 2))?.sub(g);
    if let Some((i, _)) = h.pieces().iter().find(|(_, v)| v.is_negative()) {
        return Err(Error::InconsistentSpectrum { witness: i.clone() });
    }
    Ok(h)
}

/// `Σ_j h(2^j ξ)` on the two-sided annulus `[1, 2) ∪ [-2, -1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalderonProfile {
    pub positive: WindowStep,
    pub negative: WindowStep,
}

impl CalderonProfile {
    pub fn min(&self) -> Rational {
        self.positive.min().min(self.negative.min()).clone()
    }

    pub fn max(&self) -> Rational {
        self.positive.max().max(self.negative.max()).clone()
    }

    pub fn is_constant(&self, v: &Rational) -> bool {
        self.positive.is_constant(v) && self.negative.is_constant(v)
    }

    /// First annulus interval whose value differs from `v`.
    pub fn deviation_from(&self, v: &Rational) -> Option<(Interval, Rational)> {
        self.positive
            .first_violation(|x| x == v)
            .or_else(|| self.negative.first_violation(|x| x == v))
    }

    pub fn sides(&self) -> [(Side, &WindowStep); 2] {
        [(Side::Positive, &self.positive), (Side::Negative, &self.negative)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CalderonSum {
    /// `h` does not vanish near 0 on `side`; infinitely many terms meet
    /// every point there.
    Diverges { side: Side },
    Finite(CalderonProfile),
}

impl CalderonSum {
    pub fn is_identically(&self, v: &Rational) -> bool {
        matches!(self, CalderonSum::Finite(p) if p.is_constant(v))
    }
}

/// Calderón sum of a nonnegative compactly supported `h`.
pub fn calderon(h: &StepFn) -> CalderonSum {
    let one = Rational::one();
    let mut sides = Vec::with_capacity(2);
    for side in [Side::Positive, Side::Negative] {
        match dilation_sum(h, side, &one) {
            Some(s) => sides.push(s),
            None => return CalderonSum::Diverges { side },
        }
    }
    let negative = sides.pop().unwrap();
    let positive = sides.pop().unwrap();
    CalderonSum::Finite(CalderonProfile { positive, negative })
}

/// Limit of `𝒟(2^-j ξ)` as `j -> ∞`, available when `h` vanishes near 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroProfile {
    /// `ξ ∈ [1, 2)`: limit for positive `ξ` (and, by dilation invariance,
    /// every positive point of the same dyadic orbit).
    pub positive: WindowStep,
    /// `ξ ∈ [-2, -1)`.
    pub negative: WindowStep,
    /// On `(0, ε)` and `(1 - ε, 1)` the dimension function coincides with the
    /// profile transported along dyadic orbits.
    pub stable_below: Rational,
}

/// Dimension function on the window `[2^-L, 1 - 2^-L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimFnWindow {
    pub dim: WindowStep,
    pub depth: u32,
    /// Pieces may accumulate at the integers outside the window.
    pub boundary_note: bool,
    pub zero_profile: Option<ZeroProfile>,
}

impl DimFnWindow {
    /// Wraps an externally supplied window (no near-zero information).
    pub fn from_step(dim: WindowStep, depth: u32) -> Self {
        DimFnWindow {
            dim,
            depth,
            boundary_note: true,
            zero_profile: None,
        }
    }
}

pub fn window(depth: u32) -> Interval {
    let eps = pow2(-(depth as i64));
    Interval::new(eps.clone(), Rational::one() - eps).unwrap()
}

/// `𝒟(ξ) = Σ_{j≥1} Σ_k h(2^j (ξ + k))` computed exactly on
/// `[2^-L, 1 - 2^-L)`.
///
/// Term `(j, k)` is supported on `2^-j · supp h - k`; once `2^-j R <= 2^-L`
/// every such piece lies within `2^-L` of an integer, so only finitely many
/// terms meet the window.
pub fn dimension_function(h: &StepFn, depth: u32) -> DimFnWindow {
    let win = window(depth);
    let radius = h.radius();
    let limit = pow2(-(depth as i64));
    let mut sweep = Sweep::default();
    let mut j: i64 = 1;
    while !radius.is_zero() && &radius * pow2(-j) > limit {
        let s = pow2(-j);
        for (piece, v) in h.pieces() {
            let scaled = piece.scale(&s).expect("nonzero");
            for_each_residue_piece(&scaled, |lo, hi| sweep.add(lo, hi, v));
        }
        j += 1;
    }
    let dim = WindowStep::from_sweep(&win, sweep);
    let zero_profile = zero_profile(h);
    let boundary_note = match &zero_profile {
        None => true,
        Some(p) => !(p.positive.values().len() == 1 && p.negative.values().len() == 1),
    };
    DimFnWindow {
        dim,
        depth,
        boundary_note,
        zero_profile,
    }
}

fn zero_profile(h: &StepFn) -> Option<ZeroProfile> {
    if h.is_zero() {
        let unit_pos = Interval::new(int(1), int(2)).unwrap();
        let unit_neg = Interval::new(int(-2), int(-1)).unwrap();
        return Some(ZeroProfile {
            positive: WindowStep::constant(&unit_pos, Rational::zero()),
            negative: WindowStep::constant(&unit_neg, Rational::zero()),
            stable_below: ratio(1, 4),
        });
    }
    let CalderonSum::Finite(cal) = calderon(h) else {
        return None;
    };
    let radius = h.radius();
    let two_r = &radius * int(2);
    let points = h.breakpoints();
    let mut eps = ratio(1, 4);

    // k = 0 terms with j <= 0 vanish below the inner radius of each side.
    let inner_pos = h.support().parts().iter().map(|p| p.lo()).find(|lo| lo.is_positive()).cloned();
    let inner_neg = h.support().parts().iter().rev().map(|p| p.hi()).find(|hi| hi.is_negative()).cloned();
    if let Some(r) = inner_pos {
        eps = eps.min(r);
    }
    if let Some(r) = inner_neg {
        eps = eps.min(-r);
    }

    let mut c_pos = Rational::zero();
    let mut c_neg = Rational::zero();
    let mut i: i64 = 1;
    while pow2(i) <= two_r {
        let scale = pow2(i);
        let inv = pow2(-i);
        let kmax = crate::intervals::floor_int(&(&two_r / &scale));
        let mut kk = -kmax.clone();
        while kk <= kmax {
            if !kk.is_zero() {
                let x = Rational::from_integer(kk.clone()) * &scale;
                c_pos += h.right_limit(&x);
                c_neg += h.left_limit(&x);
                if let Some(next) = points.iter().find(|b| *b > &x) {
                    eps = eps.min((next - &x) * &inv);
                }
                if let Some(prev) = points.iter().rev().find(|b| *b < &x) {
                    eps = eps.min((&x - prev) * &inv);
                }
            }
            kk += 1;
        }
        i += 1;
    }
    let shift = |w: &WindowStep, c: &Rational| {
        let values = w.values().iter().map(|v| v + c).collect();
        WindowStep::from_parts(w.breaks().to_vec(), values).expect("same breaks")
    };
    Some(ZeroProfile {
        positive: shift(&cal.positive, &c_pos),
        negative: shift(&cal.negative, &c_neg),
        stable_below: eps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    /// Certified failure; every point of `witness` violates the condition.
    Fail { witness: Interval, value: Option<Rational> },
    /// Semi-decision exhausted its depth without finding a violation.
    NoViolation { depth: u32 },
}

impl ConditionStatus {
    pub fn is_fail(&self) -> bool {
        matches!(self, ConditionStatus::Fail { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub d1: ConditionStatus,
    pub d2: ConditionStatus,
    /// Measure of the sub-window where the D2 identity could be checked.
    pub d2_checked_measure: Rational,
    pub d3: ConditionStatus,
    pub d4: ConditionStatus,
}

/// `{ξ ∈ [0, 1) : frac(a ξ + b) ∈ set}` for `a ∈ {1, 2}`.
fn preimage_shift(set: &IntervalSet, shift: &Rational) -> IntervalSet {
    residues(&set.translate(&-shift.clone()))
}

fn preimage_double(set: &IntervalSet) -> IntervalSet {
    set.dilate(-1).union(&set.translate(&int(1)).dilate(-1))
}

/// Checks the four dimension-function conditions on the window of depth
/// `depth`; the supplied function must be computed at least two levels
/// deeper so that `ξ + 1/2` and `2ξ` stay inside its window.
///
/// D1 and D2 are exact. D3 is a semi-decision: `Δ` is over-approximated by
/// requiring `𝒟(2^-j ξ) >= 1` only for `j <= depth`, so a violation found is
/// certified. D4 is decided exactly from the near-zero profile when one
/// exists.
pub fn check_dimension_conditions(dim: &DimFnWindow, depth: u32) -> Result<DimensionReport> {
    let required = depth + 2;
    if dim.depth < required {
        return Err(Error::InsufficientDepth {
            required,
            actual: dim.depth,
        });
    }
    let base = window(depth);
    let known = IntervalSet::from_interval(dim.dim.domain());
    let d = &dim.dim;
    let value_at = |x: &Rational| d.eval(x).cloned();

    let d1 = match d.restrict(&base).and_then(|w| w.first_violation(|v| v.is_integer() && !v.is_negative())) {
        Some((witness, v)) => ConditionStatus::Fail { witness, value: Some(v) },
        None => ConditionStatus::Pass,
    };

    let half = ratio(1, 2);
    let checkable = IntervalSet::from_interval(base.clone())
        .intersect(&known)
        .intersect(&preimage_shift(&known, &half))
        .intersect(&preimage_double(&known));
    let mut cuts: Vec<Rational> = Vec::new();
    for b in d.breaks() {
        cuts.push(b.clone());
        cuts.push(frac(&(b - &half)));
        cuts.push(b / int(2));
        cuts.push((b + int(1)) / int(2));
    }
    for p in checkable.parts() {
        cuts.push(p.lo().clone());
        cuts.push(p.hi().clone());
    }
    cuts.extend([Rational::zero(), Rational::one()]);
    cuts.sort();
    cuts.dedup();
    let mut d2 = ConditionStatus::Pass;
    for w in cuts.windows(2) {
        let atom = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        if !checkable.contains_interval(&atom) {
            continue;
        }
        let x = atom.midpoint();
        let lhs = value_at(&x).unwrap() + value_at(&frac(&(&x + &half))).unwrap();
        let rhs = value_at(&frac(&(&x * int(2)))).unwrap() + Rational::one();
        if lhs != rhs {
            d2 = ConditionStatus::Fail {
                witness: atom,
                value: Some(lhs - rhs),
            };
            break;
        }
    }

    // Y_j: residues ξ with 𝒟(2^-i (ξ + k)) < 1 for some i <= j, for every k.
    let low = d.where_value(|v| v < &Rational::one());
    let high = d.where_value(|v| v >= &Rational::one());
    let lower_half = IntervalSet::span(Rational::zero(), half.clone());
    let upper_half = IntervalSet::span(half.clone(), Rational::one());
    let mut blocked = low.clone();
    for _ in 0..depth {
        let a = blocked.intersect(&lower_half).dilate(1);
        let b = blocked.intersect(&upper_half).translate(&-half.clone()).dilate(1);
        let next = low.union(&a.intersect(&b));
        if next == blocked {
            break;
        }
        blocked = next;
    }
    let d3 = match high.intersect(&blocked).intersect(&IntervalSet::from_interval(base)).parts().first() {
        Some(witness) => ConditionStatus::Fail {
            witness: witness.clone(),
            value: value_at(&witness.midpoint()),
        },
        None => ConditionStatus::NoViolation { depth },
    };

    let d4 = match &dim.zero_profile {
        None => ConditionStatus::NoViolation { depth },
        Some(p) => {
            let below = p
                .positive
                .first_violation(|v| v >= &Rational::one())
                .or_else(|| p.negative.first_violation(|v| v >= &Rational::one()));
            match below {
                Some((witness, v)) => ConditionStatus::Fail { witness, value: Some(v) },
                None => ConditionStatus::Pass,
            }
        }
    };

    Ok(DimensionReport {
        d1,
        d2,
        d2_checked_measure: checkable.measure(),
        d3,
        d4,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MraVerdict {
    IsMra,
    /// The dimension function differs from 1 on the residue interval `witness`.
    NotMra { witness: Interval, value: Rational },
    Inconclusive { note: String },
}

/// Moves an annulus interval into `(0, ε)` (positive side) or `(1 - ε, 1)`
/// (negative side) along its dyadic orbit.
fn transport_near_zero(i: &Interval, side: Side, eps: &Rational) -> Interval {
    let mut e: i64 = 0;
    let magnitude = |x: &Interval| match side {
        Side::Positive => x.hi().clone(),
        Side::Negative => -x.lo().clone(),
    };
    let mut cur = i.clone();
    while &magnitude(&cur) > eps {
        e -= 1;
        cur = i.scale(&pow2(e)).unwrap();
    }
    match side {
        Side::Positive => cur,
        Side::Negative => cur.translate(&int(1)),
    }
}

/// MRA test: an orthonormal wavelet comes from an MRA iff its dimension
/// function is identically 1.
pub fn mra_check(h: &StepFn, depth: u32) -> MraVerdict {
    let dim = dimension_function(h, depth);
    let one = Rational::one();
    if let Some((witness, value)) = dim.dim.first_violation(|v| v.is_one()) {
        return MraVerdict::NotMra { witness, value };
    }
    let Some(profile) = &dim.zero_profile else {
        return MraVerdict::Inconclusive {
            note: format!(
                "dimension function is 1 on [2^-{depth}, 1 - 2^-{depth}); the spectrum does not vanish near 0, so values near the integers are not determined"
            ),
        };
    };
    for (side, w) in [(Side::Positive, &profile.positive), (Side::Negative, &profile.negative)] {
        if let Some((atom, value)) = w.first_violation(|v| v.is_one()) {
            let eps = profile.stable_below.clone().min(pow2(-(depth as i64)));
            return MraVerdict::NotMra {
                witness: transport_near_zero(&atom, side, &eps),
                value,
            };
        }
    }
    // Close the gap between the stable region and the window if needed.
    let mut deeper = depth;
    while pow2(-(deeper as i64)) > profile.stable_below {
        deeper += 1;
    }
    if deeper > depth {
        let extra = dimension_function(h, deeper);
        if let Some((witness, value)) = extra.dim.first_violation(|v| v == &one) {
            return MraVerdict::NotMra { witness, value };
        }
    }
    MraVerdict::IsMra
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TqVerdict {
    Zero,
    Nonzero { witness: Interval, value: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqResult {
    pub alpha: i64,
    /// `t_α(ξ) = Σ_{m≥0} ψ̂(2^m ξ) ψ̂(2^m (ξ + α))`, compactly supported.
    pub t: StepFn,
    pub verdict: TqVerdict,
}

/// Translation equation for odd `α`: `t_α ≡ 0`.
///
/// A term is nonzero only if both `2^m ξ` and `2^m (ξ + α)` lie in
/// `[-R, R]`, forcing `2^m |α| <= 2R`; the sum is finite.
pub fn tq_check(psi: &StepFn, alpha: i64) -> Result<TqResult> {
    if alpha % 2 == 0 {
        return Err(Error::Input(format!(
            "alpha must be odd (got {alpha}); even shifts reduce to odd ones by dilation"
        )));
    }
    let two_r = psi.radius() * int(2);
    let a = int(alpha.abs());
    let shift = int(alpha);
    let mut t = StepFn::zero();
    let mut m: i64 = 0;
    while &a * pow2(m) <= two_r {
        let dilated = psi.compose_scale(&pow2(m))?;
        let term = dilated.mul(&dilated.compose_shift(&shift));
        t = t.add(&term);
        m += 1;
    }
    let verdict = match t.pieces().first() {
        None => TqVerdict::Zero,
        Some((i, v)) => TqVerdict::Nonzero {
            witness: i.clone(),
            value: v.clone(),
        },
    };
    Ok(TqResult { alpha, t, verdict })
}

/// Odd `α` with `|α| <= 2R`; all others give `t_α ≡ 0` trivially.
pub fn relevant_alphas(psi: &StepFn) -> Vec<i64> {
    let bound = crate::intervals::floor_int(&(psi.radius() * int(2)));
    let bound: i64 = bound.try_into().expect("support radius fits i64");
    (-bound..=bound).filter(|a| a % 2 != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthonormalityReport {
    /// `‖ψ‖² = ∫ ψ̂²`.
    pub norm_sq: Rational,
    pub calderon: CalderonSum,
    pub alphas_checked: Vec<i64>,
    pub tq_failures: Vec<(i64, Interval, Rational)>,
    pub passes: bool,
}

/// Orthonormal-wavelet certification for a real-valued step transform:
/// Calderón sum ≡ 1, every translation equation vanishes, and unit norm.
pub fn orthonormality_check(psi: &StepFn) -> Result<OrthonormalityReport> {
    let h = psi.mul(psi);
    let norm_sq = h.integral();
    let cal = calderon(&h);
    let alphas = relevant_alphas(psi);
    let mut failures = Vec::new();
    for &alpha in &alphas {
        if let TqVerdict::Nonzero { witness, value } = tq_check(psi, alpha)?.verdict {
            failures.push((alpha, witness, value));
        }
    }
    let passes = cal.is_identically(&Rational::one()) && failures.is_empty() && norm_sq.is_one();
    Ok(OrthonormalityReport {
        norm_sq,
        calderon: cal,
        alphas_checked: alphas,
        tq_failures: failures,
        passes,
    })
}

/// `ψ̂_b = 1 on [-1, -b) ∪ [b, 1)`.
pub fn psi_b_spectrum(b: &Rational) -> Result<StepFn> {
    if b.is_negative() || b >= &Rational::one() {
        return Err(Error::Input(format!(
            "b must lie in [0, 1), got {}",
            crate::intervals::format_rational(b)
        )));
    }
    let set = IntervalSet::normalize([(int(-1), -b.clone()), (b.clone(), int(1))])?;
    Ok(StepFn::indicator(&set))
}

/// Known frame-theoretic behaviour of `ψ_b` by range of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiBRow {
    NotFrame,
    FrameNotRiesz,
    Open,
    BiorthogonalRiesz,
    Orthonormal,
}

impl PsiBRow {
    pub fn of(b: &Rational) -> PsiBRow {
        let b = b.clone();
        if b.is_zero() {
            PsiBRow::NotFrame
        } else if b <= ratio(1, 8) {
            PsiBRow::FrameNotRiesz
        } else if b <= ratio(1, 6) {
            PsiBRow::Open
        } else if b < ratio(1, 3) {
            PsiBRow::NotFrame
        } else if b < ratio(1, 2) {
            PsiBRow::BiorthogonalRiesz
        } else if b == ratio(1, 2) {
            PsiBRow::Orthonormal
        } else {
            PsiBRow::NotFrame
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PsiBRow::NotFrame => "not a frame wavelet",
            PsiBRow::FrameNotRiesz => "frame wavelet (not Riesz)",
            PsiBRow::Open => "open",
            PsiBRow::BiorthogonalRiesz => "biorthogonal Riesz wavelet",
            PsiBRow::Orthonormal => "orthonormal wavelet",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiBReport {
    pub b: Rational,
    pub orthonormality: OrthonormalityReport,
    pub row: PsiBRow,
    /// Calderón sum is finite and bounded below by a positive constant
    /// (necessary for a frame).
    pub calderon_frame_bounds: Option<(Rational, Rational)>,
    /// Whether the computed necessary conditions agree with the row;
    /// `None` for the open range.
    pub consistent: Option<bool>,
}

pub fn psi_b_report(b: &Rational) -> Result<PsiBReport> {
    let psi = psi_b_spectrum(b)?;
    let orthonormality = orthonormality_check(&psi)?;
    let bounds = match &orthonormality.calderon {
        CalderonSum::Finite(p) if p.min().is_positive() => Some((p.min(), p.max())),
        _ => None,
    };
    let row = PsiBRow::of(b);
    let consistent = match row {
        PsiBRow::Open => None,
        PsiBRow::NotFrame => Some(!orthonormality.passes),
        PsiBRow::FrameNotRiesz => Some(bounds.is_some() && !orthonormality.passes),
        PsiBRow::BiorthogonalRiesz => Some(bounds.is_some()),
        PsiBRow::Orthonormal => Some(orthonormality.passes),
    };
    Ok(PsiBReport {
        b: b.clone(),
        orthonormality,
        row,
        calderon_frame_bounds: bounds,
        consistent,
    })
}
