//! Piecewise-constant functions with rational breakpoints and values.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intervals::{int, Interval, IntervalSet, Rational};

/// Accumulates `+w` at `lo` and `-w` at `hi` for every contribution.
#[derive(Default)]
pub(crate) struct Sweep {
    deltas: BTreeMap<Rational, Rational>,
}

impl Sweep {
    pub(crate) fn add(&mut self, lo: Rational, hi: Rational, w: &Rational) {
        if lo >= hi || w.is_zero() {
            return;
        }
        *self.deltas.entry(lo).or_insert_with(Rational::zero) += w;
        *self.deltas.entry(hi).or_insert_with(Rational::zero) -= w;
    }

    /// `(x, value on [x, next x))` for every event point, in order.
    fn levels(self) -> Vec<(Rational, Rational)> {
        let mut running = Rational::zero();
        self.deltas
            .into_iter()
            .map(|(x, d)| {
                running += d;
                (x, running.clone())
            })
            .collect()
    }
}

/// Compactly supported step function; zero outside its pieces.
///
/// Pieces are sorted, disjoint, carry nonzero values, and adjacent touching
/// pieces never share a value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepFn {
    pieces: Vec<(Interval, Rational)>,
}

impl StepFn {
    pub fn zero() -> Self {
        StepFn { pieces: Vec::new() }
    }

    /// Builds from disjoint pieces; overlapping pieces are an input error.
    pub fn from_pieces<I>(pieces: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Interval, Rational)>,
    {
        let mut pieces: Vec<(Interval, Rational)> = pieces.into_iter().collect();
        pieces.sort_by(|a, b| a.0.lo().cmp(b.0.lo()));
        for pair in pieces.windows(2) {
            if pair[1].0.lo() < pair[0].0.hi() {
                return Err(Error::Input(format!(
                    "step function pieces {} and {} overlap",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(Self::canonical(pieces))
    }

    /// Pointwise sum of possibly overlapping weighted intervals.
    pub fn from_sum<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Interval, Rational)>,
    {
        let mut sweep = Sweep::default();
        for (i, w) in terms {
            let (lo, hi) = (i.lo().clone(), i.hi().clone());
            sweep.add(lo, hi, &w);
        }
        let levels = sweep.levels();
        let mut pieces = Vec::new();
        for pair in levels.windows(2) {
            let (x, v) = &pair[0];
            if !v.is_zero() {
                pieces.push((Interval::new(x.clone(), pair[1].0.clone()).unwrap(), v.clone()));
            }
        }
        Self::canonical(pieces)
    }

    pub fn indicator(set: &IntervalSet) -> Self {
        Self::constant_on(set, Rational::one())
    }

    pub fn constant_on(set: &IntervalSet, value: Rational) -> Self {
        if value.is_zero() {
            return Self::zero();
        }
        StepFn {
            pieces: set.parts().iter().map(|p| (p.clone(), value.clone())).collect(),
        }
    }

    fn canonical(sorted: Vec<(Interval, Rational)>) -> Self {
        let mut pieces: Vec<(Interval, Rational)> = Vec::with_capacity(sorted.len());
        for (i, v) in sorted {
            if v.is_zero() {
                continue;
            }
            if let Some((last, lv)) = pieces.last_mut() {
                if last.hi() == i.lo() && *lv == v {
                    *last = Interval::new(last.lo().clone(), i.hi().clone()).unwrap();
                    continue;
                }
            }
            pieces.push((i, v));
        }
        StepFn { pieces }
    }

    pub fn pieces(&self) -> &[(Interval, Rational)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    fn piece_at(&self, x: &Rational) -> Option<&(Interval, Rational)> {
        let idx = self.pieces.partition_point(|(i, _)| i.lo() <= x);
        (idx > 0 && x < self.pieces[idx - 1].0.hi()).then(|| &self.pieces[idx - 1])
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.piece_at(x).map_or_else(Rational::zero, |(_, v)| v.clone())
    }

    /// `lim f(y)` as `y -> x` from above (equal to `eval` for half-open pieces).
    pub fn right_limit(&self, x: &Rational) -> Rational {
        self.eval(x)
    }

    /// `lim f(y)` as `y -> x` from below.
    pub fn left_limit(&self, x: &Rational) -> Rational {
        let idx = self.pieces.partition_point(|(i, _)| i.lo() < x);
        if idx > 0 && x <= self.pieces[idx - 1].0.hi() {
            self.pieces[idx - 1].1.clone()
        } else {
            Rational::zero()
        }
    }

    pub fn support(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces.iter().map(|(i, _)| i.clone()))
    }

    /// Every piece endpoint, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut b: Vec<Rational> = self
            .pieces
            .iter()
            .flat_map(|(i, _)| [i.lo().clone(), i.hi().clone()])
            .collect();
        b.dedup();
        b
    }

    /// Largest `|x|` over the support, or zero.
    pub fn radius(&self) -> Rational {
        match (self.pieces.first(), self.pieces.last()) {
            (Some((a, _)), Some((b, _))) => {
                let l = -a.lo().clone();
                let h = b.hi().clone();
                l.max(h).max(Rational::zero())
            }
            _ => Rational::zero(),
        }
    }

    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .fold(Rational::zero(), |acc, (i, v)| acc + i.length() * v)
    }

    pub fn min_value(&self) -> Option<&Rational> {
        self.pieces.iter().map(|(_, v)| v).min()
    }

    /// `ξ -> f(s ξ)` for nonzero `s`.
    pub fn compose_scale(&self, s: &Rational) -> Result<StepFn> {
        let inv = Rational::one() / s;
        let pieces = self
            .pieces
            .iter()
            .map(|(i, v)| Ok((i.scale(&inv)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pieces(pieces)
    }

    /// `ξ -> f(ξ + t)`.
    pub fn compose_shift(&self, t: &Rational) -> StepFn {
        let neg = -t.clone();
        StepFn {
            pieces: self.pieces.iter().map(|(i, v)| (i.translate(&neg), v.clone())).collect(),
        }
    }

    pub fn scale_values(&self, c: &Rational) -> StepFn {
        Self::canonical(self.pieces.iter().map(|(i, v)| (i.clone(), v * c)).collect())
    }

    /// Pointwise `op(f, g)`; `op(0, 0)` must be zero.
    pub fn combine<F>(&self, other: &StepFn, op: F) -> StepFn
    where
        F: Fn(&Rational, &Rational) -> Rational,
    {
        let mut points = self.breakpoints();
        points.extend(other.breakpoints());
        points.sort();
        points.dedup();
        let mut pieces = Vec::new();
        for pair in points.windows(2) {
            let mid = (&pair[0] + &pair[1]) / int(2);
            let v = op(&self.eval(&mid), &other.eval(&mid));
            if !v.is_zero() {
                pieces.push((Interval::new(pair[0].clone(), pair[1].clone()).unwrap(), v));
            }
        }
        Self::canonical(pieces)
    }

    pub fn add(&self, other: &StepFn) -> StepFn {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFn) -> StepFn {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepFn) -> StepFn {
        self.combine(other, |a, b| a * b)
    }

    /// Part of the support where the value satisfies `pred`.
    pub fn where_value<P>(&self, pred: P) -> IntervalSet
    where
        P: Fn(&Rational) -> bool,
    {
        IntervalSet::from_intervals(
            self.pieces.iter().filter(|(_, v)| pred(v)).map(|(i, _)| i.clone()),
        )
    }
}

/// Step function fully specified on a bounded window `[start, end)`,
/// zero values included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowStep {
    breaks: Vec<Rational>,
    values: Vec<Rational>,
}

/// 1-periodic step function represented on `[0, 1)`.
pub type TorusStep = WindowStep;

impl WindowStep {
    pub fn constant(domain: &Interval, value: Rational) -> Self {
        WindowStep {
            breaks: vec![domain.lo().clone(), domain.hi().clone()],
            values: vec![value],
        }
    }

    /// Builds from explicit breakpoints and per-piece values, merging
    /// repeated values. Needs `breaks` strictly increasing.
    pub fn from_parts(breaks: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breaks.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::Input("window step needs n+1 breaks for n values".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("window step breaks must increase".into()));
        }
        let mut out = WindowStep {
            breaks: vec![breaks[0].clone()],
            values: Vec::new(),
        };
        for (k, v) in values.into_iter().enumerate() {
            if out.values.last() == Some(&v) {
                *out.breaks.last_mut().unwrap() = breaks[k + 1].clone();
            } else {
                out.values.push(v);
                out.breaks.push(breaks[k + 1].clone());
            }
        }
        Ok(out)
    }

    /// Sum of weighted intervals clipped to `domain`.
    pub(crate) fn from_sweep(domain: &Interval, sweep: Sweep) -> Self {
        let (lo, hi) = (domain.lo(), domain.hi());
        let mut running = Rational::zero();
        let mut breaks = vec![lo.clone()];
        let mut values = Vec::new();
        for (x, v) in sweep.levels() {
            if &x <= lo {
                running = v;
                continue;
            }
            if &x >= hi {
                break;
            }
            if v != running {
                values.push(std::mem::replace(&mut running, v));
                breaks.push(x);
            }
        }
        values.push(running);
        breaks.push(hi.clone());
        WindowStep { breaks, values }
    }

    pub fn domain(&self) -> Interval {
        Interval::new(self.breaks[0].clone(), self.breaks.last().unwrap().clone()).unwrap()
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn atoms(&self) -> impl Iterator<Item = (Interval, &Rational)> + '_ {
        self.breaks
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (Interval::new(w[0].clone(), w[1].clone()).unwrap(), v))
    }

    /// Value at `x`, or `None` outside the window.
    pub fn eval(&self, x: &Rational) -> Option<&Rational> {
        if x < &self.breaks[0] || x >= self.breaks.last().unwrap() {
            return None;
        }
        let idx = self.breaks.partition_point(|b| b <= x);
        Some(&self.values[idx - 1])
    }

    pub fn min(&self) -> &Rational {
        self.values.iter().min().unwrap()
    }

    pub fn max(&self) -> &Rational {
        self.values.iter().max().unwrap()
    }

    pub fn is_constant(&self, v: &Rational) -> bool {
        self.values.iter().all(|x| x == v)
    }

    /// Part of the window where the value satisfies `pred`.
    pub fn where_value<P>(&self, pred: P) -> IntervalSet
    where
        P: Fn(&Rational) -> bool,
    {
        IntervalSet::from_intervals(self.atoms().filter(|(_, v)| pred(v)).map(|(i, _)| i))
    }

    /// First atom whose value fails `pred`.
    pub fn first_violation<P>(&self, pred: P) -> Option<(Interval, Rational)>
    where
        P: Fn(&Rational) -> bool,
    {
        self.atoms().find(|(_, v)| !pred(v)).map(|(i, v)| (i, v.clone()))
    }

    pub fn integral(&self) -> Rational {
        self.atoms().fold(Rational::zero(), |acc, (i, v)| acc + i.length() * v)
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, window: &Interval) -> Option<WindowStep> {
        let dom = self.domain().intersect(window)?;
        let mut sweep = Sweep::default();
        for (i, v) in self.atoms() {
            sweep.add(i.lo().clone(), i.hi().clone(), v);
        }
        Some(Self::from_sweep(&dom, sweep))
    }
}
