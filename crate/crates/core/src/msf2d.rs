//! Planar dilations: existence of `(A, Γ)`-wavelet sets and lattice counts
//! in dilated discs.
//!
//! Entries live in `ℚ` or a single real quadratic field `ℚ(√d)`. Every
//! comparison reduces to sign tests on rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intervals::{format_rational, int, Rational};

/// `a + b√d`; `d = 1` marks a plain rational (then `b = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Exact square root in `ℚ`, if any.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, m) = (q.numer(), q.denom());
    let (rn, rm) = (n.sqrt(), m.sqrt());
    (&rn * &rn == *n && &rm * &rm == *m).then(|| Rational::new(rn, rm))
}

impl QuadScalar {
    pub fn rational(a: Rational) -> Self {
        QuadScalar {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d == 0 || !is_square_free(d) {
            return Err(Error::Input(format!("radicand {d} is not a square-free positive integer")));
        }
        if d == 1 {
            return Ok(QuadScalar::rational(a + b));
        }
        Ok(QuadScalar { a, b, d }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn radicand(&self, other: &QuadScalar) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed quadratic fields √{d} and √{e}"),
        }
    }

    fn d_rat(d: u64) -> Rational {
        Rational::from_integer(BigInt::from(d))
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Self::d_rat(self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn conjugate(&self) -> QuadScalar {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² - d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Self::d_rat(self.d)
    }

    pub fn inverse(&self) -> Result<QuadScalar> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Input("division by zero".into()));
        }
        Ok(QuadScalar {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        }
        .normalized())
    }

    /// Square root inside `ℚ(√field)`, if one exists. `field` must be 1 or
    /// the scalar's own radicand.
    pub fn sqrt_in_field(&self, field: u64) -> Option<QuadScalar> {
        if self.signum() < 0 {
            return None;
        }
        let field = if self.d == 1 { field } else { self.d };
        let d = Self::d_rat(field);
        if self.b.is_zero() {
            if let Some(x) = rational_sqrt(&self.a) {
                return Some(QuadScalar::rational(x));
            }
            if field == 1 {
                return None;
            }
            return rational_sqrt(&(&self.a / &d)).map(|y| QuadScalar {
                a: Rational::zero(),
                b: y,
                d: field,
            });
        }
        // (x + y√d)² = a + b√d: x² + d y² = a, 2xy = b
        let n = rational_sqrt(&self.norm())?;
        let two = int(2);
        for x2 in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = QuadScalar {
                    a: x,
                    b: y,
                    d: self.d,
                };
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn parse_parts(a: &str, b: &str, d: u64) -> Result<Self> {
        use crate::intervals::parse_rational;
        QuadScalar::new(parse_rational(a)?, parse_rational(b)?, d)
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            write!(f, "{} + {}·√{}", format_rational(&self.a), format_rational(&self.b), self.d)
        }
    }
}

impl From<Rational> for QuadScalar {
    fn from(q: Rational) -> Self {
        QuadScalar::rational(q)
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        let d = self.radicand(rhs);
        QuadScalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
        .normalized()
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        self + &(-rhs)
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

impl Mul for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        let d = self.radicand(rhs);
        let dr = QuadScalar::d_rat(d);
        QuadScalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }
}

impl Div for &QuadScalar {
    type Output = Result<QuadScalar>;
    fn div(self, rhs: &QuadScalar) -> Result<QuadScalar> {
        Ok(self * &rhs.inverse()?)
    }
}

/// Row-major 2×2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[QuadScalar; 2]; 2],
}

impl Mat2 {
    /// Fails if entries come from two different quadratic fields.
    pub fn new(m: [[QuadScalar; 2]; 2]) -> Result<Self> {
        let mut d = 1;
        for e in m.iter().flatten() {
            if e.d != 1 {
                if d != 1 && d != e.d {
                    return Err(Error::Unsupported(format!(
                        "entries mix the fields ℚ(√{d}) and ℚ(√{})",
                        e.d
                    )));
                }
                d = e.d;
            }
        }
        Ok(Mat2 { m })
    }

    pub fn rational(m: [[Rational; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Mat2 {
            m: [[a.into(), b.into()], [c.into(), d.into()]],
        }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2::rational([[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]])
    }

    pub fn identity() -> Self {
        Mat2::from_ints([[1, 0], [0, 1]])
    }

    /// Radicand shared by the entries (1 when all are rational).
    pub fn field(&self) -> u64 {
        self.m.iter().flatten().map(|e| e.d).max().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.m.iter().flatten().all(QuadScalar::is_rational)
    }

    pub fn to_rational(&self) -> Option<[[Rational; 2]; 2]> {
        let r = |e: &QuadScalar| e.as_rational().cloned();
        Some([
            [r(&self.m[0][0])?, r(&self.m[0][1])?],
            [r(&self.m[1][0])?, r(&self.m[1][1])?],
        ])
    }

    pub fn trace(&self) -> QuadScalar {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> QuadScalar {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn neg(&self) -> Mat2 {
        let n = |e: &QuadScalar| -e;
        Mat2 {
            m: [
                [n(&self.m[0][0]), n(&self.m[0][1])],
                [n(&self.m[1][0]), n(&self.m[1][1])],
            ],
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        Mat2 {
            m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Input("matrix is singular".into()));
        }
        let inv = det.inverse()?;
        let s = |e: &QuadScalar| e * &inv;
        Ok(Mat2 {
            m: [
                [s(&self.m[1][1]), s(&-&self.m[0][1])],
                [s(&-&self.m[1][0]), s(&self.m[0][0])],
            ],
        })
    }

    pub fn apply(&self, v: &[QuadScalar; 2]) -> [QuadScalar; 2] {
        [
            &(&self.m[0][0] * &v[0]) + &(&self.m[0][1] * &v[1]),
            &(&self.m[1][0] * &v[0]) + &(&self.m[1][1] * &v[1]),
        ]
    }

    pub fn pow(&self, j: i64) -> Result<Mat2> {
        let base = if j < 0 { self.inverse()? } else { self.clone() };
        let mut out = Mat2::identity();
        for _ in 0..j.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractingEigenvalue {
    /// No real eigenvalue in `(-1, 1)`.
    None,
    /// The contracting eigenvalue lies in the entries' field.
    InField(QuadScalar),
    /// The contracting eigenvalue is a quadratic irrational over the field.
    OutsideField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    pub exists: bool,
    /// Primitive lattice coordinates `z` with `Pz` in the contracting eigenspace.
    pub witness: Option<[BigInt; 2]>,
    pub eigenvalue: ContractingEigenvalue,
    pub det: QuadScalar,
    /// Some eigenvalue equals `±1`.
    pub unit_eigenvalue: bool,
    pub complex_eigenvalues: bool,
}

/// Characteristic polynomial `λ² - tλ + δ` evaluated at `x`.
fn char_poly(t: &QuadScalar, delta: &QuadScalar, x: &QuadScalar) -> QuadScalar {
    &(&(x * x) - &(t * x)) + delta
}

fn primitive_direction(u: &[QuadScalar; 2]) -> Option<[BigInt; 2]> {
    let ratio_to_ints = |p: &Rational| -> [BigInt; 2] { [p.numer().clone(), p.denom().clone()] };
    let mut z = if u[1].is_zero() {
        [BigInt::one(), BigInt::zero()]
    } else if u[0].is_zero() {
        [BigInt::zero(), BigInt::one()]
    } else {
        let r = (&u[0] / &u[1]).ok()?;
        ratio_to_ints(r.as_rational()?)
    };
    let g = z[0].gcd(&z[1]);
    z = [&z[0] / &g, &z[1] / &g];
    if z[0].is_negative() || (z[0].is_zero() && z[1].is_negative()) {
        z = [-z[0].clone(), -z[1].clone()];
    }
    Some(z)
}

/// Decides whether an `(A, Γ)`-wavelet set exists for `Γ = Pℤ²`: it does iff
/// the eigenspace of a contracting eigenvalue of `A` (if any) meets `Γ`
/// only at 0.
pub fn wavelet_set_exists(a: &Mat2, p: &Mat2) -> Result<ExistenceReport> {
    if a.field() != 1 && p.field() != 1 && a.field() != p.field() {
        return Err(Error::Unsupported(format!(
            "dilation uses ℚ(√{}) but lattice uses ℚ(√{})",
            a.field(),
            p.field()
        )));
    }
    let det = a.det();
    let abs_det = if det.signum() < 0 { -&det } else { det.clone() };
    if abs_det <= QuadScalar::rational(int(1)) {
        return Err(Error::Input(format!("|det A| must exceed 1, got det A = {det}")));
    }
    let p_inv = p.inverse().map_err(|_| Error::Input("lattice basis is singular".into()))?;
    let t = a.trace();
    let one = QuadScalar::rational(int(1));
    let disc = &(&t * &t) - &(&QuadScalar::rational(int(4)) * &det);
    let p_plus = char_poly(&t, &det, &one);
    let p_minus = char_poly(&t, &det, &-&one);
    let unit_eigenvalue = p_plus.is_zero() || p_minus.is_zero();
    let mut report = ExistenceReport {
        exists: true,
        witness: None,
        eigenvalue: ContractingEigenvalue::None,
        det: det.clone(),
        unit_eigenvalue,
        complex_eigenvalues: disc.signum() < 0,
    };
    // Real roots with |λ₁λ₂| > 1: at most one lies in (-1, 1), and one does
    // exactly when p changes sign between -1 and 1.
    if disc.signum() < 0 || (&p_plus * &p_minus).signum() >= 0 {
        return Ok(report);
    }
    let field = a.field().max(p.field());
    let Some(root) = disc.sqrt_in_field(field) else {
        report.eigenvalue = ContractingEigenvalue::OutsideField;
        return Ok(report);
    };
    let half = QuadScalar::rational(crate::intervals::ratio(1, 2));
    let lambda = [&(&t + &root) * &half, &(&t - &root) * &half]
        .into_iter()
        .find(|l| l.signum() == 0 || (&(l * l) - &one).signum() < 0)
        .expect("sign change guarantees a contracting root");
    let [[a11, a12], [a21, a22]] = &a.m;
    let v1 = [a12.clone(), &lambda - a11];
    let v = if v1.iter().any(|e| !e.is_zero()) {
        v1
    } else {
        [&lambda - a22, a21.clone()]
    };
    let u = p_inv.apply(&v);
    if let Some(z) = primitive_direction(&u) {
        report.exists = false;
        report.witness = Some(z);
    }
    report.eigenvalue = ContractingEigenvalue::InField(lambda);
    Ok(report)
}

fn rational_entries(m: &Mat2, what: &str) -> Result<[[Rational; 2]; 2]> {
    m.to_rational()
        .ok_or_else(|| Error::Unsupported(format!("{what} must have rational entries for lattice counting")))
}

/// `#{z ∈ ℤ² : |A^{-j} P z| <= 1}`, the number of lattice points in `Aʲ(B(0, 1))`.
pub fn lattice_count(a: &Mat2, p: &Mat2, j: i64) -> Result<BigInt> {
    rational_entries(a, "A")?;
    rational_entries(p, "P")?;
    let n = a.pow(-j)?.mul(p);
    let n = rational_entries(&n, "A^-j P")?;
    // H = Nᵀ N
    let h11 = &n[0][0] * &n[0][0] + &n[1][0] * &n[1][0];
    let h12 = &n[0][0] * &n[0][1] + &n[1][0] * &n[1][1];
    let h22 = &n[0][1] * &n[0][1] + &n[1][1] * &n[1][1];
    let det = &h11 * &h22 - &h12 * &h12;
    if !det.is_positive() {
        return Err(Error::Input("lattice basis is singular".into()));
    }
    let one = Rational::one();
    let inside = |x: &BigInt, y: &BigInt| {
        let (x, y) = (Rational::from_integer(x.clone()), Rational::from_integer(y.clone()));
        &h11 * &x * &x + int(2) * &h12 * &x * &y + &h22 * &y * &y <= one
    };
    let isqrt_floor = |q: &Rational| -> BigInt { q.floor().to_integer().sqrt() };
    // max |x| on the ellipse is sqrt((H⁻¹)₁₁) = sqrt(h22 / det)
    let x_max = isqrt_floor(&(&h22 / &det));
    let y_reach: BigInt = isqrt_floor(&(&h11 / &det)) + 1;
    let mut total = BigInt::zero();
    let mut x = -x_max.clone();
    while x <= x_max {
        let xr = Rational::from_integer(x.clone());
        let centre = -(&h12 * &xr) / &h22;
        let (f, c) = (centre.floor().to_integer(), centre.ceil().to_integer());
        let start = if inside(&x, &f) {
            Some(f)
        } else if inside(&x, &c) {
            Some(c)
        } else {
            None
        };
        if let Some(y0) = start {
            // largest y >= y0 inside, and smallest y <= y0 inside
            let search = |dir: i64| {
                let mut lo = BigInt::zero();
                let mut hi = y_reach.clone() * 2 + 2;
                while &hi - &lo > BigInt::one() {
                    let mid: BigInt = (&lo + &hi) / 2;
                    if inside(&x, &(&y0 + &mid * dir)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            };
            total += search(1) + search(-1) + 1;
        }
        x += 1;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LceRow {
    pub j: i64,
    pub count: BigInt,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LceReport {
    pub rows: Vec<LceRow>,
    pub bound: Rational,
    pub holds: bool,
    /// First `j` whose ratio exceeds the bound.
    pub witness: Option<i64>,
}

/// Probes `#|Γ ∩ Aʲ(B)| <= C max(1, |det A|ʲ)` for `j` in a finite range.
pub fn lce_report(a: &Mat2, p: &Mat2, jmin: i64, jmax: i64, c: &Rational) -> Result<LceReport> {
    if jmin > jmax {
        return Err(Error::Input(format!("empty range: jmin {jmin} > jmax {jmax}")));
    }
    let det = rational_entries(a, "A").map(|_| a.det())?;
    let abs_det = det.as_rational().expect("rational").abs();
    let mut rows = Vec::new();
    let mut witness = None;
    for j in jmin..=jmax {
        let count = lattice_count(a, p, j)?;
        let scale = num_traits::pow::Pow::pow(&abs_det, j as i32);
        let denom = if scale > Rational::one() { scale } else { Rational::one() };
        let ratio = Rational::from_integer(count.clone()) / denom;
        if witness.is_none() && &ratio > c {
            witness = Some(j);
        }
        rows.push(LceRow { j, count, ratio });
    }
    Ok(LceReport {
        rows,
        bound: c.clone(),
        holds: witness.is_none(),
        witness,
    })
}

/// Index of `z` among small integers, used for witnesses in reports.
pub fn witness_as_i64(z: &[BigInt; 2]) -> Option<[i64; 2]> {
    Some([z[0].to_i64()?, z[1].to_i64()?])
}
