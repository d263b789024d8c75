//! Exact arithmetic in real quadratic fields ℚ(√n).
//!
//! Every inequality the engine decides goes through [`QuadReal::sign`], which
//! never touches floating point: the sign of `a + b√n` is read off the signs
//! of `a` and `b`, and in the mixed case by comparing `a²` with `b²·n` over the
//! integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Largest `s` with `s² <= n`.
pub fn floor_sqrt(n: u128) -> u128 {
    let mut s = n.sqrt();
    // Roots::sqrt is exact for integers, but keep the postcondition explicit.
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Smallest `s` with `s² >= n`.
pub fn ceil_sqrt(n: u128) -> u128 {
    let s = floor_sqrt(n);
    if s * s == n {
        s
    } else {
        s + 1
    }
}

pub fn is_perfect_square(n: u64) -> bool {
    let s = floor_sqrt(n as u128);
    s * s == n as u128
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `a + b√n` for any `n >= 0`, perfect squares included.
///
/// [`QuadReal`] refuses square radicands; call sites that may hit one (for
/// example `√(49r+8)` at `r = 17`) go through here instead.
pub fn sign_with_root(a: &Rational, b: &Rational, n: u64) -> i8 {
    let root = floor_sqrt(n as u128);
    if root * root == n as u128 {
        let v = a + b * int(BigInt::from(root));
        return sign_of(v.numer());
    }
    raw_sign(a, b, n)
}

fn raw_sign(a: &Rational, b: &Rational, n: u64) -> i8 {
    let sa = sign_of(a.numer());
    let sb = sign_of(b.numer());
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Mixed signs: |a| vs |b|√n  <=>  a² vs b²n, cleared of denominators.
    let lhs = a.numer() * a.numer() * b.denom() * b.denom();
    let rhs = b.numer() * b.numer() * a.denom() * a.denom() * BigInt::from(n);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// An element `a + b√n` of ℚ(√n), with `n >= 2` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RoundMode {
    #[default]
    Floor,
    Nearest,
}

impl QuadReal {
    pub fn new(a: Rational, b: Rational, n: u64) -> Result<Self> {
        if n < 2 || is_perfect_square(n) {
            return Err(Error::InvalidRadicand(n));
        }
        Ok(Self { a, b, n })
    }

    pub fn from_rational(a: Rational, n: u64) -> Result<Self> {
        Self::new(a, Rational::zero(), n)
    }

    /// `√n` itself.
    pub fn sqrt_of(n: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            n: self.n,
        }
    }

    /// Field norm `a² - b²n`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.n)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::RadicandMismatch(self.n, other.n))
        }
    }

    pub fn apply(&self, op: QuadOp, rhs: &Self) -> Result<Self> {
        match op {
            QuadOp::Add => self.try_add(rhs),
            QuadOp::Sub => self.try_sub(rhs),
            QuadOp::Mul => self.try_mul(rhs),
            QuadOp::Div => self.try_div(rhs),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            n: self.n,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            n: self.n,
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let n = int(self.n);
        Ok(Self {
            a: &self.a * &rhs.a + &self.b * &rhs.b * n,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            n: self.n,
        })
    }

    /// Division by conjugate rationalization; the norm of a nonzero element
    /// is nonzero because `√n` is irrational.
    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = rhs.norm();
        let num = self.try_mul(&rhs.conjugate())?;
        Ok(Self {
            a: num.a / &norm,
            b: num.b / norm,
            n: self.n,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            a: &self.a * c,
            b: &self.b * c,
            n: self.n,
        }
    }

    pub fn add_rational(&self, c: &Rational) -> Self {
        Self {
            a: &self.a + c,
            b: self.b.clone(),
            n: self.n,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::from_rational(Rational::one(), self.n)?.try_div(self)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        raw_sign(&self.a, &self.b, self.n)
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// Decimal expansion with `places` digits after the point.
    pub fn to_decimal(&self, places: u32, mode: RoundMode) -> String {
        decimal_string(&self.a, &self.b, self.n, places, mode)
    }

    /// Lossy, for logs only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.n as f64).sqrt()
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal {
            a: -self.a,
            b: -self.b,
            n: self.n,
        }
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})√{}", self.a, self.b, self.n)
    }
}

fn floor_rational(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `floor(10^places · (a + b√n))` (or rounded to nearest), exactly.
///
/// `√n` is bracketed by `t/10^j <= √n < (t+1)/10^j` with `t = ⌊√(n·10^{2j})⌋`;
/// `j` grows until both ends of the induced interval share a floor. The value
/// is irrational whenever `b != 0` and `n` is not a square, so this terminates.
pub fn scaled_floor(a: &Rational, b: &Rational, n: u64, places: u32, mode: RoundMode) -> BigInt {
    let scale = int(BigInt::from(10u32).pow(places));
    let mut c = a * &scale;
    if mode == RoundMode::Nearest {
        c += rat(1, 2);
    }
    let d = b * &scale;
    let root = floor_sqrt(n as u128);
    if d.is_zero() || root * root == n as u128 {
        return floor_rational(&(c + d * int(BigInt::from(root))));
    }
    let mut digits = places + 8;
    loop {
        let ten_j = BigUint::from(10u32).pow(digits);
        let t = (BigUint::from(n) * &ten_j * &ten_j).sqrt();
        let ten_j = BigInt::from(ten_j);
        let lo_root = Rational::new(BigInt::from(t.clone()), ten_j.clone());
        let hi_root = Rational::new(BigInt::from(t) + 1, ten_j);
        let (lo, hi) = if d.is_positive() {
            (&c + &d * lo_root, &c + &d * hi_root)
        } else {
            (&c + &d * hi_root, &c + &d * lo_root)
        };
        let (f_lo, f_hi) = (floor_rational(&lo), floor_rational(&hi));
        // The open end can only touch the integer f_hi if the value itself is
        // rational, which is excluded above.
        if f_lo == f_hi {
            return f_lo;
        }
        digits *= 2;
    }
}

/// Render `a + b√n` (any `n`, squares allowed) with `places` decimals.
pub fn decimal_string(a: &Rational, b: &Rational, n: u64, places: u32, mode: RoundMode) -> String {
    format_scaled(&scaled_floor(a, b, n, places, mode), places)
}

pub fn rational_decimal(x: &Rational, places: u32, mode: RoundMode) -> String {
    decimal_string(x, &Rational::zero(), 2, places, mode)
}

fn format_scaled(value: &BigInt, places: u32) -> String {
    let negative = value.is_negative();
    let mut digits = value.abs().to_string();
    let width = places as usize + 1;
    if digits.len() < width {
        digits = format!("{}{}", "0".repeat(width - digits.len()), digits);
    }
    let split = digits.len() - places as usize;
    let (whole, frac) = digits.split_at(split);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Rational, b: Rational, n: u64) -> QuadReal {
        QuadReal::new(a, b, n).unwrap()
    }

    #[test]
    fn conjugate_sum_is_rational() {
        let x = q(int(1), int(1), 2);
        let y = q(int(1), int(-1), 2);
        assert_eq!(x.try_add(&y).unwrap(), q(int(2), int(0), 2));
    }

    #[test]
    fn root_two_squared() {
        let s = QuadReal::sqrt_of(2).unwrap();
        assert_eq!(s.try_mul(&s).unwrap(), q(int(2), int(0), 2));
    }

    #[test]
    fn reciprocal_of_root_two() {
        let s = QuadReal::sqrt_of(2).unwrap();
        let inv = s.recip().unwrap();
        assert_eq!(inv, q(int(0), rat(1, 2), 2));
        assert_eq!(inv.try_mul(&s).unwrap(), q(int(1), int(0), 2));
    }

    #[test]
    fn errors() {
        let x = QuadReal::sqrt_of(2).unwrap();
        let y = QuadReal::sqrt_of(3).unwrap();
        assert_eq!(x.try_add(&y), Err(Error::RadicandMismatch(2, 3)));
        let zero = QuadReal::from_rational(int(0), 2).unwrap();
        assert_eq!(x.try_div(&zero), Err(Error::DivisionByZero));
        assert_eq!(QuadReal::sqrt_of(9), Err(Error::InvalidRadicand(9)));
        assert_eq!(QuadReal::sqrt_of(1), Err(Error::InvalidRadicand(1)));
        assert_eq!(QuadReal::sqrt_of(0), Err(Error::InvalidRadicand(0)));
    }

    #[test]
    fn signs() {
        assert_eq!(q(int(0), int(0), 2).sign(), 0);
        assert_eq!(q(int(3), int(-2), 2).sign(), 1);
        assert_eq!(q(int(-1), int(1), 2).sign(), 1);
        assert_eq!(q(int(-3), int(2), 2).sign(), -1);
        assert_eq!(q(rat(-7, 5), rat(1, 1), 2).sign(), 1);
    }

    #[test]
    fn comparisons() {
        let one = q(int(1), int(0), 2);
        let root = q(int(0), int(1), 2);
        assert_eq!(one.compare(&root).unwrap(), Ordering::Less);
        assert_eq!(root.compare(&root).unwrap(), Ordering::Equal);
        let seven_root = q(int(0), int(7), 2);
        let ten = q(int(10), int(0), 2);
        assert_eq!(seven_root.compare(&ten).unwrap(), Ordering::Less);
    }

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(9), 3);
        assert_eq!(ceil_sqrt(4802), 70);
        assert_eq!(ceil_sqrt(10), 4);
        assert_eq!(floor_sqrt(u64::MAX as u128), u32::MAX as u128);
    }

    fn recip_shift(r: u64, delta: Rational) -> QuadReal {
        QuadReal::sqrt_of(r).unwrap().add_rational(&delta).recip().unwrap()
    }

    #[test]
    fn decimals() {
        assert_eq!(recip_shift(10, rat(13, 1000)).to_decimal(4, RoundMode::Floor), "0.3149");
        assert_eq!(recip_shift(7, rat(11, 1000)).to_decimal(4, RoundMode::Floor), "0.3763");
        assert_eq!(rational_decimal(&rat(1, 2), 4, RoundMode::Floor), "0.5000");
        assert_eq!(rational_decimal(&rat(-1, 3), 2, RoundMode::Floor), "-0.34");
        assert_eq!(rational_decimal(&rat(2, 3), 3, RoundMode::Nearest), "0.667");
        assert_eq!(rational_decimal(&rat(7, 1), 1, RoundMode::Floor), "7.0");
        // 1/(√12 + 0.013) = 0.287595..., floor and nearest differ.
        let x = recip_shift(12, rat(13, 1000));
        assert_eq!(x.to_decimal(4, RoundMode::Floor), "0.2875");
        assert_eq!(x.to_decimal(4, RoundMode::Nearest), "0.2876");
        assert_eq!(QuadReal::sqrt_of(2).unwrap().to_decimal(10, RoundMode::Floor), "1.4142135623");
        let neg = -QuadReal::sqrt_of(2).unwrap();
        assert_eq!(neg.to_decimal(3, RoundMode::Floor), "-1.415");
    }

    #[test]
    fn square_radicand_paths() {
        assert_eq!(sign_with_root(&int(-29), &int(1), 841), 0);
        assert_eq!(sign_with_root(&int(-28), &int(1), 841), 1);
        assert_eq!(sign_with_root(&int(-2), &int(1), 3), -1);
        assert_eq!(decimal_string(&int(0), &rat(1, 120), 841, 4, RoundMode::Floor), "0.2416");
    }
}
