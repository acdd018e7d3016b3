//! Term evaluation for a_n = a_{n−1} + a_{n−N} through the auxiliary
//! sequence κ.
//!
//! A term is a fixed integer combination of N consecutive κ values:
//!
//! a_n = α_0·κ_{n+1} + Σ_{l=1}^{N−1} (α_l − α_{l−1})·κ_{n+1−l}
//!
//! so one binary exponentiation plus N−1 δ-steps produces everything a
//! term needs. The same window also drives the multiplicative variant
//! a_n = a_{n−1}·a_{n−N}, whose per-initial exponents satisfy the
//! additive recursion with unit-basis seeds.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{base_element, ring_pow};

/// Default refusal threshold for expanding factored integers, in
/// decimal digits.
pub const DEFAULT_EXPAND_DIGIT_BOUND: u64 = 1_000_000;

/// An additive recurrence: order gap N and exact initial values
/// α_0, …, α_{N−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    order: usize,
    initials: Vec<BigInt>,
}

impl RecurrenceSpec {
    /// Validates that `initials` has exactly `order` entries and
    /// `order` is at least 2.
    pub fn new(order: usize, initials: Vec<BigInt>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order });
        }
        if initials.len() != order {
            return Err(Error::InvalidSpec(format!(
                "order {order} needs {order} initial values, got {}",
                initials.len()
            )));
        }
        Ok(Self { order, initials })
    }

    pub fn from_i64(order: usize, initials: &[i64]) -> Result<Self> {
        Self::new(order, initials.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// The Fibonacci spec: N = 2 with initial values 0, 1.
    pub fn fibonacci() -> Self {
        Self::from_i64(2, &[0, 1]).expect("static spec is valid")
    }

    /// The spec whose terms are the κ sequence itself: initial values
    /// 0, 1, 1, …, 1.
    pub fn kappa_spec(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order });
        }
        let mut initials = vec![BigInt::one(); order];
        initials[0] = BigInt::zero();
        Self::new(order, initials)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }

    /// Difference weights d_0 = α_0, d_l = α_l − α_{l−1}; a term is the
    /// dot product of these with a descending κ window.
    pub fn diff_weights(&self) -> Vec<BigInt> {
        let mut diffs = Vec::with_capacity(self.order);
        diffs.push(self.initials[0].clone());
        for l in 1..self.order {
            diffs.push(&self.initials[l] - &self.initials[l - 1]);
        }
        diffs
    }
}

/// A multiplicative recurrence a_n = a_{n−1}·a_{n−N} with positive
/// initial values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeSpec {
    order: usize,
    initials: Vec<BigInt>,
}

impl MultiplicativeSpec {
    pub fn new(order: usize, initials: Vec<BigInt>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { order });
        }
        if initials.len() != order {
            return Err(Error::InvalidSpec(format!(
                "order {order} needs {order} initial values, got {}",
                initials.len()
            )));
        }
        if let Some(bad) = initials.iter().find(|v| !v.is_positive()) {
            return Err(Error::InvalidSpec(format!(
                "multiplicative initial values must be >= 1, got {bad}"
            )));
        }
        Ok(Self { order, initials })
    }

    pub fn from_i64(order: usize, initials: &[i64]) -> Result<Self> {
        Self::new(order, initials.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }
}

/// A product Π base_l^{exp_l} over the initial values of a
/// multiplicative spec, kept factored because the expanded integer can
/// be astronomically large.
///
/// Duplicate bases are kept as separate slots and merged only for
/// display and expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    factors: Vec<(BigInt, BigInt)>,
}

impl FactoredInteger {
    pub fn factors(&self) -> &[(BigInt, BigInt)] {
        &self.factors
    }

    /// Slots merged by base, sorted ascending, zero exponents dropped.
    pub fn merged(&self) -> Vec<(BigInt, BigInt)> {
        let mut sorted = self.factors.clone();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        for (base, exp) in sorted {
            match out.last_mut() {
                Some((b, e)) if *b == base => *e += exp,
                _ => out.push((base, exp)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        out
    }

    /// Decimal digit count of the expanded value, estimated without
    /// expanding. `None` when the estimate itself overflows.
    fn digits_estimate(&self) -> Option<f64> {
        let mut digits = 0.0f64;
        for (base, exp) in self.merged() {
            if base.is_one() {
                continue;
            }
            let e = exp.to_f64()?;
            let b = base.to_f64()?;
            if !e.is_finite() || !b.is_finite() {
                return None;
            }
            digits += e * b.log10();
        }
        Some(digits)
    }

    /// Expands to a plain integer, refusing when the result would
    /// exceed `digit_bound` decimal digits.
    pub fn expand(&self, digit_bound: u64) -> Result<BigInt> {
        let est = self.digits_estimate().unwrap_or(f64::INFINITY);
        if est > digit_bound as f64 {
            return Err(Error::ExpansionTooLarge {
                estimated_digits: if est.is_finite() { est.ceil() as u64 } else { u64::MAX },
                bound: digit_bound,
            });
        }
        let mut acc = BigInt::one();
        for (base, exp) in self.merged() {
            if base.is_one() {
                continue;
            }
            // The digit bound caps exponents well below u32::MAX for
            // any base >= 2.
            let e = exp.to_u32().ok_or(Error::ExpansionTooLarge {
                estimated_digits: u64::MAX,
                bound: digit_bound,
            })?;
            acc *= base.pow(e);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (base, exp) in self.merged() {
            if base.is_one() {
                continue;
            }
            if wrote {
                write!(f, " * ")?;
            }
            if exp.is_one() {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{exp}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// The window (κ_top, κ_{top−1}, …, κ_{top−N+1}) from a single binary
/// exponentiation plus N−1 δ-steps.
///
/// Requires top ≥ N−1 so the window stays inside defined indices.
pub fn kappa_window(order: usize, top: u64) -> Result<Vec<BigInt>> {
    let base = base_element(order)?;
    if top < order as u64 - 1 {
        return Err(Error::Range(format!(
            "kappa window top {top} must be at least {} for order {order}",
            order - 1
        )));
    }
    let mut power = ring_pow(&base, top);
    let mut window = Vec::with_capacity(order);
    window.push(power.coeff(order - 1).clone());
    for _ in 1..order {
        power = power.mul_by_delta();
        window.push(power.coeff(order - 1).clone());
    }
    Ok(window)
}

fn dot(weights: &[BigInt], window: &[BigInt]) -> BigInt {
    weights
        .iter()
        .zip(window)
        .map(|(w, k)| w * k)
        .fold(BigInt::zero(), |acc, t| acc + t)
}

/// The exact n-th term of an additive recurrence.
///
/// Initial indices are returned directly; beyond them the term is the
/// difference-weight dot product against the κ window topped at n+1.
pub fn term(spec: &RecurrenceSpec, n: u64) -> BigInt {
    let order = spec.order();
    if (n as usize) < order {
        return spec.initials()[n as usize].clone();
    }
    let window = kappa_window(order, n + 1).expect("n + 1 >= order > order - 1");
    dot(&spec.diff_weights(), &window)
}

/// The exact n-th term of a multiplicative recurrence, factored over
/// the initial values.
///
/// The exponent of initial slot l is the additive term for the unit
/// spec e_l, and every slot shares one κ window.
pub fn term_multiplicative(spec: &MultiplicativeSpec, n: u64) -> FactoredInteger {
    let order = spec.order();
    if (n as usize) < order {
        let factors = spec
            .initials()
            .iter()
            .enumerate()
            .map(|(l, base)| {
                (base.clone(), BigInt::from(i64::from(l == n as usize)))
            })
            .collect();
        return FactoredInteger { factors };
    }
    let window = kappa_window(order, n + 1).expect("n + 1 >= order > order - 1");
    let factors = spec
        .initials()
        .iter()
        .enumerate()
        .map(|(l, base)| {
            // Unit spec e_l has difference weights +1 at l, −1 at l+1.
            let mut exp = window[l].clone();
            if l + 1 < order {
                exp -= &window[l + 1];
            }
            (base.clone(), exp)
        })
        .collect();
    FactoredInteger { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{kappa, mul_count};

    /// Independent oracle: iterate the additive recursion directly.
    fn naive(spec: &RecurrenceSpec, n: u64) -> BigInt {
        let order = spec.order();
        let mut window: Vec<BigInt> = spec.initials().to_vec();
        if (n as usize) < order {
            return window[n as usize].clone();
        }
        for _ in order..=n as usize {
            let next = &window[order - 1] + &window[0];
            window.remove(0);
            window.push(next);
        }
        window[order - 1].clone()
    }

    /// Independent oracle: iterate the multiplicative recursion
    /// directly (only feasible for small n).
    fn naive_multiplicative(spec: &MultiplicativeSpec, n: u64) -> BigInt {
        let order = spec.order();
        let mut window: Vec<BigInt> = spec.initials().to_vec();
        if (n as usize) < order {
            return window[n as usize].clone();
        }
        for _ in order..=n as usize {
            let next = &window[order - 1] * &window[0];
            window.remove(0);
            window.push(next);
        }
        window[order - 1].clone()
    }

    fn spec(order: usize, initials: &[i64]) -> RecurrenceSpec {
        RecurrenceSpec::from_i64(order, initials).unwrap()
    }

    #[test]
    fn term_fixtures() {
        assert_eq!(term(&RecurrenceSpec::fibonacci(), 40), BigInt::from(102334155u64));
        assert_eq!(term(&spec(3, &[0, 1, 2]), 16), BigInt::from(318));
        assert_eq!(term(&spec(3, &[0, 1, 2]), 3), BigInt::from(2));
        let all_ones = spec(4, &[1, 1, 1, 1]);
        assert_eq!(term(&all_ones, 7), kappa(4, 8).unwrap());
        assert_eq!(term(&all_ones, 7), naive(&all_ones, 7));
    }

    #[test]
    fn term_initial_passthrough() {
        let s = spec(3, &[7, -4, 9]);
        assert_eq!(term(&s, 0), BigInt::from(7));
        assert_eq!(term(&s, 1), BigInt::from(-4));
        assert_eq!(term(&s, 2), BigInt::from(9));
    }

    #[test]
    fn window_fixtures() {
        let w = kappa_window(3, 16).unwrap();
        assert_eq!(w, vec![BigInt::from(189), BigInt::from(129), BigInt::from(88)]);
        let w = kappa_window(2, 9).unwrap();
        assert_eq!(w, vec![BigInt::from(34), BigInt::from(21)]);
        let w = kappa_window(5, 4).unwrap();
        assert_eq!(
            w,
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1), BigInt::from(1), BigInt::from(0)]
        );
    }

    #[test]
    fn window_range_error() {
        assert!(matches!(kappa_window(5, 3), Err(Error::Range(_))));
        assert!(matches!(kappa_window(2, 0), Err(Error::Range(_))));
    }

    #[test]
    fn window_matches_pointwise_kappa() {
        for order in 2..=6usize {
            for top in (order as u64 - 1)..=60 {
                let w = kappa_window(order, top).unwrap();
                for (i, v) in w.iter().enumerate() {
                    assert_eq!(v, &kappa(order, top - i as u64).unwrap());
                }
            }
        }
    }

    #[test]
    fn term_matches_naive_for_paper_specs() {
        let specs = [
            spec(2, &[0, 1]),
            spec(3, &[0, 1, 2]),
            spec(3, &[1, 2, 3]),
            spec(4, &[0, 1, 2, 3]),
            spec(4, &[1, 1, 1, 1]),
            spec(5, &[0, 1, 2, 1, 1]),
        ];
        for s in &specs {
            for n in 0..=300 {
                assert_eq!(term(s, n), naive(s, n), "spec {:?}, n {n}", s.initials());
            }
        }
    }

    #[test]
    fn example_relations_hold() {
        // a_n for (0,1,2) is κ_n + κ_{n−1}; the N=4 and N=5 examples
        // reduce to short κ combinations the same way.
        let k = |order: usize, n: u64| kappa(order, n).unwrap();
        let ex2 = spec(3, &[0, 1, 2]);
        let ex4 = spec(4, &[0, 1, 2, 3]);
        let ex5 = spec(4, &[1, 1, 1, 1]);
        let ex6 = spec(5, &[0, 1, 2, 1, 1]);
        for n in 5..=300u64 {
            assert_eq!(term(&ex2, n), k(3, n) + k(3, n - 1));
            assert_eq!(term(&ex4, n), k(4, n) + k(4, n - 1) + k(4, n - 2));
            assert_eq!(term(&ex5, n), k(4, n + 1));
            assert_eq!(term(&ex6, n), k(5, n) + k(5, n - 1) - k(5, n - 2));
        }
    }

    #[test]
    fn multiplicative_fixture() {
        let s = MultiplicativeSpec::from_i64(3, &[1, 2, 3]).unwrap();
        let a16 = term_multiplicative(&s, 16);
        assert_eq!(
            a16.merged(),
            vec![
                (BigInt::from(1), BigInt::from(88)),
                (BigInt::from(2), BigInt::from(60)),
                (BigInt::from(3), BigInt::from(129)),
            ]
        );
        assert_eq!(a16.to_string(), "2^60 * 3^129");
        let expanded = a16.expand(DEFAULT_EXPAND_DIGIT_BOUND).unwrap();
        let printed =
            "40779472028876430259264292468803306803871352789421825624677506478583962620919808";
        assert_eq!(expanded.to_string(), printed);
        assert_eq!(printed.len(), 80);
    }

    #[test]
    fn multiplicative_initial_passthrough() {
        let s = MultiplicativeSpec::from_i64(3, &[1, 2, 3]).unwrap();
        let a1 = term_multiplicative(&s, 1);
        assert_eq!(a1.to_string(), "2");
        assert_eq!(a1.expand(100).unwrap(), BigInt::from(2));
        let a0 = term_multiplicative(&s, 0);
        assert_eq!(a0.to_string(), "1");
        assert_eq!(a0.expand(100).unwrap(), BigInt::from(1));
    }

    #[test]
    fn multiplicative_matches_direct_products() {
        let s = MultiplicativeSpec::from_i64(3, &[1, 2, 3]).unwrap();
        for n in 0..=25 {
            assert_eq!(
                term_multiplicative(&s, n).expand(DEFAULT_EXPAND_DIGIT_BOUND).unwrap(),
                naive_multiplicative(&s, n),
                "n {n}"
            );
        }
        let dup = MultiplicativeSpec::from_i64(3, &[2, 2, 5]).unwrap();
        for n in 0..=20 {
            assert_eq!(
                term_multiplicative(&dup, n).expand(DEFAULT_EXPAND_DIGIT_BOUND).unwrap(),
                naive_multiplicative(&dup, n),
                "n {n}"
            );
        }
    }

    #[test]
    fn multiplicative_exponents_satisfy_recursion() {
        let s = MultiplicativeSpec::from_i64(4, &[2, 3, 5, 7]).unwrap();
        let exps: Vec<Vec<BigInt>> = (0..=200)
            .map(|n| {
                term_multiplicative(&s, n)
                    .factors()
                    .iter()
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        for n in 4..=200usize {
            for l in 0..4 {
                assert_eq!(exps[n][l], &exps[n - 1][l] + &exps[n - 4][l], "n {n}, slot {l}");
            }
        }
    }

    #[test]
    fn expansion_refusal() {
        let s = MultiplicativeSpec::from_i64(3, &[1, 2, 3]).unwrap();
        let a16 = term_multiplicative(&s, 16);
        match a16.expand(10) {
            Err(Error::ExpansionTooLarge { estimated_digits, bound }) => {
                assert_eq!(bound, 10);
                assert!(estimated_digits >= 79, "estimate {estimated_digits}");
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            RecurrenceSpec::from_i64(1, &[0]),
            Err(Error::InvalidOrder { order: 1 })
        ));
        assert!(matches!(RecurrenceSpec::from_i64(3, &[0, 1]), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            MultiplicativeSpec::from_i64(2, &[0, 1]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            MultiplicativeSpec::from_i64(2, &[-3, 1]),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn negative_initials_supported() {
        let s = spec(4, &[-5, 3, -8, 2]);
        for n in 0..=200 {
            assert_eq!(term(&s, n), naive(&s, n), "n {n}");
        }
    }

    #[test]
    fn cost_bound_holds() {
        for (order, n) in [(2usize, 1000u64), (3, 12345), (5, 99_991), (8, 65_536)] {
            let s = RecurrenceSpec::kappa_spec(order).unwrap();
            let before = mul_count();
            term(&s, n);
            let used = mul_count() - before;
            let bound = 2 * (64 - (n + 1).leading_zeros() as u64 - 1) + order as u64;
            assert!(used <= bound, "order {order}, n {n}: {used} > {bound}");
        }
    }
}
