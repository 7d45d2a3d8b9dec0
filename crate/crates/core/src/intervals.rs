//! Exact algebra of finite unions of half-open rational intervals.
//!
//! Every set handled by this crate is an [`IntervalSet`]: a sorted list of
//! pairwise separated intervals `[lo, hi)`. Touching intervals are merged on
//! construction, so two sets are equal as values exactly when they are equal
//! up to a null set.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

/// Parses `"n"` or `"p/q"`; accepts both ASCII `-` and the Unicode minus sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let cleaned = text.trim().replace('\u{2212}', "-");
    let bad = || Error::Input(format!("malformed rational {text:?}"));
    match cleaned.split_once('/') {
        None => {
            let n: BigInt = cleaned.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest integer `<= q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest integer `>= q`.
pub fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(floor_int(q))
}

/// Non-empty half-open interval `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Input(format!(
                "empty interval [{}, {})",
                format_rational(&lo),
                format_rational(&hi)
            )))
        }
    }

    /// Like [`Interval::new`], returning `None` for empty input.
    pub fn nonempty(lo: Rational, hi: Rational) -> Option<Self> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        Interval::nonempty(lo, hi)
    }

    pub fn translate(&self, t: &Rational) -> Interval {
        Interval {
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }

    /// Image under `x -> s x`; a negative factor flips the endpoints.
    pub fn scale(&self, s: &Rational) -> Result<Interval> {
        if s.is_zero() {
            return Err(Error::Input("scale factor must be nonzero".into()));
        }
        let (a, b) = (&self.lo * s, &self.hi * s);
        Ok(if s.is_positive() {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Canonical finite union of half-open rational intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(i: Interval) -> Self {
        IntervalSet { parts: vec![i] }
    }

    /// `[lo, hi)`, or the empty set when `lo >= hi`.
    pub fn span(lo: Rational, hi: Rational) -> Self {
        match Interval::nonempty(lo, hi) {
            Some(i) => Self::from_interval(i),
            None => Self::empty(),
        }
    }

    /// Canonicalizes raw endpoint pairs. Pairs with `lo == hi` are dropped;
    /// `lo > hi` is an input error.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut parts = Vec::new();
        for (lo, hi) in raw {
            match lo.cmp(&hi) {
                Ordering::Less => parts.push(Interval { lo, hi }),
                Ordering::Equal => {}
                Ordering::Greater => {
                    return Err(Error::Input(format!(
                        "reversed interval [{}, {})",
                        format_rational(&lo),
                        format_rational(&hi)
                    )))
                }
            }
        }
        Ok(Self::from_intervals(parts))
    }

    /// Canonical union of arbitrary (possibly overlapping) intervals.
    pub fn from_intervals<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = Interval>,
    {
        let mut raw: Vec<Interval> = raw.into_iter().collect();
        raw.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut parts: Vec<Interval> = Vec::with_capacity(raw.len());
        for i in raw {
            match parts.last_mut() {
                Some(last) if i.lo <= last.hi => {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                    }
                }
                _ => parts.push(i),
            }
        }
        IntervalSet { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Interval> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    pub fn measure(&self) -> Rational {
        self.parts.iter().fold(Rational::zero(), |acc, p| acc + p.length())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.part_index_containing(x).is_some()
    }

    /// Index of the part containing `x`, if any.
    pub fn part_index_containing(&self, x: &Rational) -> Option<usize> {
        let idx = self.parts.partition_point(|p| &p.lo <= x);
        (idx > 0 && x < &self.parts[idx - 1].hi).then(|| idx - 1)
    }

    pub fn contains_interval(&self, i: &Interval) -> bool {
        self.part_index_containing(&i.lo)
            .is_some_and(|k| i.hi <= self.parts[k].hi)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_intervals(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].intersect(&b[j]) {
                out.push(x);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces of two canonical sets never touch each other here, but a
        // merge pass keeps the invariant obvious.
        Self::from_intervals(out)
    }

    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        let b = &other.parts;
        let mut out = Vec::new();
        let mut j = 0;
        for part in &self.parts {
            let mut cur = part.lo.clone();
            while j < b.len() && b[j].hi <= cur {
                j += 1;
            }
            let mut k = j;
            while k < b.len() && b[k].lo < part.hi {
                if b[k].lo > cur {
                    out.push(Interval {
                        lo: cur.clone(),
                        hi: b[k].lo.clone(),
                    });
                }
                if b[k].hi > cur {
                    cur = b[k].hi.clone();
                }
                if cur >= part.hi {
                    break;
                }
                k += 1;
            }
            if cur < part.hi {
                out.push(Interval {
                    lo: cur,
                    hi: part.hi.clone(),
                });
            }
        }
        IntervalSet { parts: out }
    }

    pub fn sym_diff_measure(&self, other: &IntervalSet) -> Rational {
        self.subtract(other).measure() + other.subtract(self).measure()
    }

    /// `self ⊆ other` up to a null set.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.parts.iter().all(|p| other.contains_interval(p))
    }

    /// Image under `x -> s x`.
    pub fn scale(&self, s: &Rational) -> Result<IntervalSet> {
        if s.is_zero() {
            return Err(Error::Input("scale factor must be nonzero".into()));
        }
        let mut parts: Vec<Interval> = self
            .parts
            .iter()
            .map(|p| p.scale(s))
            .collect::<Result<_>>()?;
        if s.is_negative() {
            parts.reverse();
        }
        Ok(IntervalSet { parts })
    }

    /// Image under `x -> 2^e x`.
    pub fn dilate(&self, e: i64) -> IntervalSet {
        self.scale(&pow2(e)).expect("powers of two are nonzero")
    }

    pub fn translate(&self, t: &Rational) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().map(|p| p.translate(t)).collect(),
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> Self {
        IntervalSet::from_interval(i)
    }
}

impl BitOr for &IntervalSet {
    type Output = IntervalSet;

    fn bitor(self, rhs: &IntervalSet) -> IntervalSet {
        self.union(rhs)
    }
}

impl BitAnd for &IntervalSet {
    type Output = IntervalSet;

    fn bitand(self, rhs: &IntervalSet) -> IntervalSet {
        self.intersect(rhs)
    }
}

impl Sub for &IntervalSet {
    type Output = IntervalSet;

    fn sub(self, rhs: &IntervalSet) -> IntervalSet {
        self.subtract(rhs)
    }
}
