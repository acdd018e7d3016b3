//! Fixed-point real and complex scalars over arbitrary-precision
//! integers.
//!
//! A [`Fixed`] stores value·2^precision as a `BigInt`, so every
//! arithmetic step is deterministic and floor/round conversions are
//! exact integer operations. Precision is a property of each value;
//! mixing precisions is a programming error and panics.
//!
//! This is absolute (not floating) precision: fine for this crate,
//! where every quantity is a root in (0, 2), a power of one, or an
//! integer-sized combination of such powers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A real number stored as mantissa/2^prec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    prec: u32,
}

fn check_prec(a: &Fixed, b: &Fixed) {
    assert_eq!(a.prec, b.prec, "fixed-point precision mismatch");
}

impl Fixed {
    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn half(prec: u32) -> Self {
        Self { mant: BigInt::one() << (prec - 1), prec }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self { mant: v << prec, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    /// Exact ratio of two integers at the working precision (up to one
    /// final truncated bit).
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        assert!(den != 0, "zero denominator");
        Self { mant: (BigInt::from(num) << prec) / den, prec }
    }

    /// Converts a finite f64. The double's 53-bit mantissa is taken
    /// exactly; meant for seeds and tolerances, not precise inputs.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "cannot represent {x}");
        let (mant, exp) = decompose_f64(x);
        let mant = BigInt::from(mant);
        let shift = i64::from(prec) + i64::from(exp);
        let mant = match shift.cmp(&0) {
            Ordering::Less => mant >> (-shift) as u32,
            _ => mant << shift as u32,
        };
        Self { mant, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Raw mantissa (value·2^precision).
    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), prec: self.prec }
    }

    /// Floor square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of negative value");
        Self { mant: (&self.mant << self.prec).sqrt(), prec: self.prec }
    }

    /// Cube root, sign-preserving.
    pub fn cbrt(&self) -> Self {
        Self { mant: (&self.mant << (2 * self.prec)).cbrt(), prec: self.prec }
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec) / self.clone()
    }

    /// Integer power by binary exponentiation; negative exponents go
    /// through the reciprocal.
    pub fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut acc = Self::one(self.prec);
        if e == 0 {
            return acc;
        }
        let bits = 64 - e.leading_zeros();
        for i in (0..bits).rev() {
            if i < bits - 1 {
                acc = &acc * &acc;
            }
            if (e >> i) & 1 == 1 {
                if i == bits - 1 {
                    acc = self.clone();
                } else {
                    acc = &acc * self;
                }
            }
        }
        acc
    }

    /// Largest integer not above the value. Exact.
    pub fn floor(&self) -> BigInt {
        &self.mant >> self.prec
    }

    /// Nearest integer (ties toward +∞) and the exact distance to it.
    pub fn round_nearest(&self) -> (BigInt, Fixed) {
        let half = BigInt::one() << (self.prec - 1);
        let rounded = (&self.mant + half) >> self.prec;
        let distance = Fixed {
            mant: (&self.mant - (&rounded << self.prec)).abs(),
            prec: self.prec,
        };
        (rounded, distance)
    }

    /// Closest double, correctly scaled even when the value exceeds
    /// f64 range at full mantissa width.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let drop = bits.saturating_sub(64) as u32;
        let head = (&self.mant >> drop).to_f64().unwrap_or(0.0);
        head * 2f64.powi(drop as i32 - self.prec as i32)
    }

    /// Decimal rendering with `digits` fractional digits, truncated
    /// toward zero. Deterministic; no locale, no rounding mode.
    pub fn decimal(&self, digits: usize) -> String {
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let int = &mag >> self.prec;
        let frac = &mag - (&int << self.prec);
        let scaled = (frac * BigInt::from(10u32).pow(digits as u32)) >> self.prec;
        let frac_str = format!("{:0>width$}", scaled.to_string(), width = digits);
        let sign = if neg && !(int.is_zero() && scaled.is_zero()) { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac_str}")
        }
    }
}

/// Splits a finite double into (integer mantissa, binary exponent)
/// with value = mant·2^exp.
fn decompose_f64(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if exp_bits == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac + (1i64 << 52)), exp_bits - 1075)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decimal(32))
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        check_prec(self, other);
        self.mant.cmp(&other.mant)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { mant: -&self.mant, prec: self.prec }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { mant: -self.mant, prec: self.prec }
    }
}

impl Add<&Fixed> for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        check_prec(self, rhs);
        Fixed { mant: &self.mant + &rhs.mant, prec: self.prec }
    }
}

impl Sub<&Fixed> for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        check_prec(self, rhs);
        Fixed { mant: &self.mant - &rhs.mant, prec: self.prec }
    }
}

impl Mul<&Fixed> for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        check_prec(self, rhs);
        Fixed { mant: (&self.mant * &rhs.mant) >> self.prec, prec: self.prec }
    }
}

impl Div<&Fixed> for &Fixed {
    type Output = Fixed;
    fn div(self, rhs: &Fixed) -> Fixed {
        check_prec(self, rhs);
        assert!(!rhs.mant.is_zero(), "division by zero");
        Fixed { mant: (&self.mant << self.prec) / &rhs.mant, prec: self.prec }
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait<Fixed> for Fixed {
            type Output = Fixed;
            fn $method(self, rhs: Fixed) -> Fixed {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Fixed> for Fixed {
            type Output = Fixed;
            fn $method(self, rhs: &Fixed) -> Fixed {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Fixed> for &Fixed {
            type Output = Fixed;
            fn $method(self, rhs: Fixed) -> Fixed {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

/// A complex number over [`Fixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cx {
    pub re: Fixed,
    pub im: Fixed,
}

impl Cx {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        check_prec(&re, &im);
        Self { re, im }
    }

    pub fn real(re: Fixed) -> Self {
        let prec = re.precision();
        Self { re, im: Fixed::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Fixed::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Fixed::one(prec))
    }

    pub fn from_f64s(re: f64, im: f64, prec: u32) -> Self {
        Self::new(Fixed::from_f64(re, prec), Fixed::from_f64(im, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn scale(&self, s: &Fixed) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im }
    }

    pub fn abs2(&self) -> Fixed {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Fixed {
        self.abs2().sqrt()
    }

    pub fn recip(&self) -> Self {
        let d = self.abs2();
        Self { re: &self.re / &d, im: &(-&self.im) / &d }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    /// Integer power by binary exponentiation; negative exponents go
    /// through the reciprocal.
    pub fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let prec = self.precision();
        if e == 0 {
            return Self::one(prec);
        }
        let mut acc = self.clone();
        let bits = 64 - e.leading_zeros();
        for i in (0..bits - 1).rev() {
            acc = acc.mul(&acc);
            if (e >> i) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Drops an imaginary residue that is small relative to the real
    /// part (threshold 2^(−prec/2), scaled by max(1, |re|)); errors
    /// instead of truncating silently.
    pub fn real_checked(self, context: &str) -> Result<Fixed> {
        let prec = self.precision();
        let scaled_im = self.im.mantissa().abs() << (prec / 2);
        let floor_one = BigInt::one() << prec;
        let bound = self.re.mantissa().abs().max(floor_one);
        if scaled_im > bound {
            return Err(Error::Precision(format!(
                "{context}: imaginary residue {} exceeds tolerance",
                self.im.to_f64()
            )));
        }
        Ok(self.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn fx(v: f64) -> Fixed {
        Fixed::from_f64(v, P)
    }

    fn close(a: &Fixed, b: &Fixed, tol_bits: u32) {
        let diff = (a - b).abs();
        assert!(
            diff.mantissa().bits() <= (P - tol_bits) as u64,
            "difference {} too large",
            diff.to_f64()
        );
    }

    #[test]
    fn bigint_shift_is_floor_division() {
        // The floor() contract depends on arithmetic right shift.
        assert_eq!(BigInt::from(-3) >> 1u32, BigInt::from(-2));
        assert_eq!(BigInt::from(3) >> 1u32, BigInt::from(1));
    }

    #[test]
    fn basic_arithmetic() {
        let a = fx(1.5);
        let b = fx(2.25);
        assert_eq!((&a + &b).to_f64(), 3.75);
        assert_eq!((&a - &b).to_f64(), -0.75);
        assert_eq!((&a * &b).to_f64(), 3.375);
        assert_eq!((&b / &a).to_f64(), 1.5);
        assert_eq!((-&a).to_f64(), -1.5);
    }

    #[test]
    fn ratio_and_ints() {
        assert_eq!(Fixed::from_ratio(1, 4, P).to_f64(), 0.25);
        assert_eq!(Fixed::from_i64(-7, P).to_f64(), -7.0);
        assert_eq!(Fixed::half(P).to_f64(), 0.5);
    }

    #[test]
    fn sqrt_and_cbrt() {
        assert_eq!(fx(4.0).sqrt().to_f64(), 2.0);
        assert_eq!(fx(8.0).cbrt().to_f64(), 2.0);
        assert_eq!(fx(-8.0).cbrt().to_f64(), -2.0);
        let two = fx(2.0);
        close(&(&two.sqrt() * &two.sqrt()), &two, 8);
        let five = fx(5.0);
        close(&five.cbrt().powi(3), &five, 8);
    }

    #[test]
    fn powi_negative_exponent() {
        let x = fx(2.0);
        assert_eq!(x.powi(10).to_f64(), 1024.0);
        assert_eq!(x.powi(-2).to_f64(), 0.25);
        assert_eq!(x.powi(0).to_f64(), 1.0);
        let golden = fx(1.618033988749894848);
        close(&golden.powi(5).powi(-5).powi(-1), &golden.powi(25), 16);
    }

    #[test]
    fn floor_and_round() {
        assert_eq!(fx(2.75).floor(), BigInt::from(2));
        assert_eq!(fx(-1.5).floor(), BigInt::from(-2));
        assert_eq!(fx(-0.25).floor(), BigInt::from(-1));
        let (r, d) = fx(2.25).round_nearest();
        assert_eq!(r, BigInt::from(2));
        assert_eq!(d.to_f64(), 0.25);
        let (r, d) = fx(-2.75).round_nearest();
        assert_eq!(r, BigInt::from(-3));
        assert_eq!(d.to_f64(), 0.25);
        let (r, _) = fx(2.5).round_nearest();
        assert_eq!(r, BigInt::from(3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(fx(1.5).decimal(4), "1.5000");
        assert_eq!(fx(-0.125).decimal(3), "-0.125");
        assert_eq!(fx(3.0).decimal(0), "3");
        assert_eq!(Fixed::from_ratio(1, 3, P).decimal(6), "0.333333");
        assert_eq!(Fixed::zero(P).decimal(2), "0.00");
    }

    #[test]
    fn to_f64_handles_large_mantissas() {
        let big = Fixed::from_bigint(&(BigInt::one() << 300u32), P);
        let f = big.to_f64();
        assert!((f.log2() - 300.0).abs() < 1e-9);
    }

    #[test]
    fn complex_field_ops() {
        let a = Cx::from_f64s(1.0, 2.0, P);
        let b = Cx::from_f64s(-0.5, 1.5, P);
        let prod = a.mul(&b);
        assert_eq!(prod.re.to_f64(), -3.5);
        assert_eq!(prod.im.to_f64(), 0.5);
        let back = prod.div(&b);
        close(&back.re, &a.re, 16);
        close(&back.im, &a.im, 16);
        assert_eq!(a.abs2().to_f64(), 5.0);
        let i = Cx::from_f64s(0.0, 1.0, P);
        assert_eq!(i.powi(4), Cx::one(P));
        let inv = i.powi(-1);
        assert_eq!(inv.im.to_f64(), -1.0);
    }

    #[test]
    fn real_checked_tolerance() {
        let ok = Cx::new(fx(3.0), Fixed { mant: BigInt::one() << 10u32, prec: P });
        assert_eq!(ok.real_checked("test").unwrap().to_f64(), 3.0);
        let bad = Cx::from_f64s(3.0, 0.25, P);
        assert!(matches!(bad.real_checked("test"), Err(Error::Precision(_))));
    }

    #[test]
    #[should_panic(expected = "precision mismatch")]
    fn mixed_precision_panics() {
        let _ = &Fixed::one(64) + &Fixed::one(128);
    }
}
