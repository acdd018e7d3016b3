//! Exact arithmetic in the quotient ring Z[δ]/(δ^N + δ − 1).
//!
//! Elements are integer polynomials in δ of degree below N, fully reduced
//! by the relation δ^N = 1 − δ. The coefficient of δ^{N−1} in
//! (δ^{N−1} + 1)^n is the auxiliary value κ_n, which satisfies
//! κ_n = κ_{n−1} + κ_{n−N} with κ_0 = 0 and κ_1 = … = κ_{N−1} = 1.
//! Binary exponentiation therefore reaches κ_n in O(log n) ring products.
//!
//! All coefficients are arbitrary-precision integers; fixed-width
//! arithmetic is never used.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Number of ring multiplications performed by the current thread so far.
///
/// Counts full products ([`ring_mul`]) and δ-steps
/// ([`RingElement::mul_by_delta`]) alike. Monotonic per thread; take
/// deltas around the region of interest.
pub fn mul_count() -> u64 {
    MUL_COUNT.with(|c| c.get())
}

fn bump_mul_count() {
    MUL_COUNT.with(|c| c.set(c.get() + 1));
}

/// A fully reduced element of Z[δ]/(δ^N + δ − 1).
///
/// `coeffs[l]` is the integer coefficient of δ^l; the vector always has
/// exactly `order` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl RingElement {
    /// Builds an element from its coefficient vector.
    ///
    /// `coeffs` must have exactly `order` entries and `order` must be at
    /// least 2.
    pub fn new(order: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order });
        }
        if coeffs.len() != order {
            return Err(Error::InvalidSpec(format!(
                "ring element of order {order} needs {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { order, coeffs })
    }

    /// The multiplicative identity, coeffs = [1, 0, …, 0].
    pub fn one(order: usize) -> Result<Self> {
        let mut coeffs = vec![BigInt::zero(); order.max(1)];
        coeffs[0] = BigInt::one();
        Self::new(order, coeffs)
    }

    /// The generator δ itself, coeffs = [0, 1, 0, …, 0].
    pub fn delta(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order });
        }
        let mut coeffs = vec![BigInt::zero(); order];
        coeffs[1] = BigInt::one();
        Self::new(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of δ^l.
    pub fn coeff(&self, l: usize) -> &BigInt {
        &self.coeffs[l]
    }

    /// Multiplies by δ in O(N) coefficient operations.
    ///
    /// Shifts every power up by one and folds the overflowing δ^N term
    /// back via δ^N = 1 − δ. Since δ·(δ^{N−1}+1) = 1, this steps the
    /// exponent of a stored power (δ^{N−1}+1)^n down to n−1.
    pub fn mul_by_delta(&self) -> Self {
        bump_mul_count();
        let n = self.order;
        let top = self.coeffs[n - 1].clone();
        let mut out = Vec::with_capacity(n);
        out.push(top.clone());
        out.push(&self.coeffs[0] - &top);
        out.extend(self.coeffs[1..n - 1].iter().cloned());
        Self {
            order: n,
            coeffs: out,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for l in (0..self.order).rev() {
            let c = &self.coeffs[l];
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" })?;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            }
            let mag = c.magnitude();
            match l {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "d")?,
                1 => write!(f, "{mag}*d")?,
                _ if mag.is_one() => write!(f, "d^{l}")?,
                _ => write!(f, "{mag}*d^{l}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The base element δ^{N−1} + 1 (equal to 1/δ in the quotient ring).
pub fn base_element(order: usize) -> Result<RingElement> {
    if order < 2 {
        return Err(Error::InvalidOrder { order });
    }
    let mut coeffs = vec![BigInt::zero(); order];
    coeffs[0] = BigInt::one();
    coeffs[order - 1] = BigInt::one();
    RingElement::new(order, coeffs)
}

/// Fully reduced product of two ring elements of equal order.
///
/// Convolves the coefficient vectors to degree 2N−2 and replaces each
/// δ^{N+k} by δ^k − δ^{k+1}, working from the highest degree down. One
/// pass suffices because every substitution lands strictly below N.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if a.order != b.order {
        return Err(Error::OrderMismatch {
            left: a.order,
            right: b.order,
        });
    }
    bump_mul_count();
    let n = a.order;
    let mut conv = vec![BigInt::zero(); 2 * n - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            conv[i + j] += ai * bj;
        }
    }
    for k in (n..2 * n - 1).rev() {
        let c = std::mem::take(&mut conv[k]);
        if c.is_zero() {
            continue;
        }
        conv[k - n] += &c;
        conv[k - n + 1] -= &c;
    }
    conv.truncate(n);
    RingElement::new(n, conv)
}

/// `base^n` by binary square-and-multiply.
///
/// Performs exactly ⌊log₂ n⌋ squarings plus popcount(n)−1 extra products
/// for n ≥ 1; n = 0 yields the identity.
pub fn ring_pow(base: &RingElement, n: u64) -> RingElement {
    if n == 0 {
        return RingElement::one(base.order).expect("base order already validated");
    }
    let mut acc = base.clone();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        acc = ring_mul(&acc, &acc).expect("equal orders");
        if (n >> i) & 1 == 1 {
            acc = ring_mul(&acc, base).expect("equal orders");
        }
    }
    acc
}

/// κ_n for the given order: the coefficient of δ^{N−1} in (δ^{N−1}+1)^n.
pub fn kappa(order: usize, n: u64) -> Result<BigInt> {
    let base = base_element(order)?;
    Ok(ring_pow(&base, n).coeff(order - 1).clone())
}
