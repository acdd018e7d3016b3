//! Zeros of x^N + x − 1 at configurable precision.
//!
//! The distinguished root δ is the unique real zero in (0, 1); it is
//! located by bisection and finished by Newton iteration. For even N
//! there is exactly one more real zero, in (−2, 0), found the same
//! way. The complex zeros come in conjugate pairs: a double-precision
//! Durand–Kerner pass supplies seeds, each seed in the upper half
//! plane is polished by full-precision Newton steps, and its partner
//! is the exact conjugate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fixed::{Cx, Fixed};

/// Working precision and rounding tolerance for the floating-point
/// backends.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatConfig {
    precision: u32,
    round_tolerance: f64,
}

impl FloatConfig {
    /// `precision` in bits (at least 64); `round_tolerance` strictly
    /// between 0 and 0.5.
    pub fn new(precision: u32, round_tolerance: f64) -> Result<Self> {
        if precision < 64 {
            return Err(Error::InvalidSpec(format!(
                "precision {precision} below minimum 64 bits"
            )));
        }
        if !(round_tolerance > 0.0 && round_tolerance < 0.5) {
            return Err(Error::InvalidSpec(format!(
                "round tolerance {round_tolerance} outside (0, 0.5)"
            )));
        }
        Ok(Self { precision, round_tolerance })
    }

    pub fn with_precision(precision: u32) -> Result<Self> {
        Self::new(precision, 0.25)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn round_tolerance(&self) -> f64 {
        self.round_tolerance
    }
}

impl Default for FloatConfig {
    fn default() -> Self {
        Self { precision: 256, round_tolerance: 0.25 }
    }
}

/// The N zeros of x^N + x − 1 at working precision, δ distinguished.
///
/// Roots are sorted by argument angle (in [0, 2π)) and then magnitude,
/// so δ is always first and the ordering is reproducible.
#[derive(Debug, Clone)]
pub struct RootSet {
    order: usize,
    precision: u32,
    roots: Vec<Cx>,
    residuals: Vec<Fixed>,
    delta_index: usize,
}

impl RootSet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn roots(&self) -> &[Cx] {
        &self.roots
    }

    /// |x_k^N + x_k − 1| per root, same order as [`roots`](Self::roots).
    pub fn residuals(&self) -> &[Fixed] {
        &self.residuals
    }

    pub fn delta_index(&self) -> usize {
        self.delta_index
    }

    /// The real root in (0, 1).
    pub fn delta(&self) -> &Fixed {
        &self.roots[self.delta_index].re
    }
}

/// x^N + x − 1 and its derivative at a real point.
fn poly_real(order: usize, x: &Fixed) -> (Fixed, Fixed) {
    let prec = x.precision();
    let pow = x.powi(order as i64 - 1);
    let value = &(&(&pow * x) + x) - &Fixed::one(prec);
    let deriv = &(&pow * &Fixed::from_i64(order as i64, prec)) + &Fixed::one(prec);
    (value, deriv)
}

/// x^N + x − 1 and its derivative at a complex point.
fn poly_cx(order: usize, z: &Cx) -> (Cx, Cx) {
    let prec = z.precision();
    let pow = z.powi(order as i64 - 1);
    let value = pow.mul(z).add(z).sub(&Cx::one(prec));
    let deriv = pow.scale(&Fixed::from_i64(order as i64, prec)).add(&Cx::one(prec));
    (value, deriv)
}

/// Bisection on a sign change followed by Newton iteration, both at
/// full precision.
fn real_root(order: usize, mut lo: Fixed, mut hi: Fixed, prec: u32) -> Result<Fixed> {
    let lo_negative = poly_real(order, &lo).0.is_negative();
    for _ in 0..64 {
        let mid = &(&lo + &hi) * &Fixed::half(prec);
        let (value, _) = poly_real(order, &mid);
        if value.is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = &(&lo + &hi) * &Fixed::half(prec);
    let step_bound = 1u64.max(prec as u64 / 16);
    for _ in 0..96 {
        let (value, deriv) = poly_real(order, &x);
        let step = &value / &deriv;
        x = &x - &step;
        if step.mantissa().bits() <= step_bound {
            return Ok(x);
        }
    }
    Err(Error::Convergence {
        residuals: vec![format!("{:e}", poly_real(order, &x).0.to_f64())],
    })
}

/// Double-precision Durand–Kerner sweep over all N roots; good to
/// about 1e-12, used only to seed the full-precision polish.
fn durand_kerner_seeds(order: usize) -> Result<Vec<Complex64>> {
    let eval = |z: Complex64| z.powu(order as u32) + z - 1.0;
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..order).map(|j| seed.powu(j as u32)).collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for j in 0..order {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..order {
                if k != j {
                    denom *= zs[j] - zs[k];
                }
            }
            let step = eval(zs[j]) / denom;
            zs[j] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            return Ok(zs);
        }
    }
    Err(Error::Convergence {
        residuals: zs.iter().map(|z| format!("{:e}", eval(*z).norm())).collect(),
    })
}

/// Newton polish of one complex seed at full precision.
fn polish_cx(order: usize, seed: Complex64, prec: u32) -> Result<Cx> {
    let mut z = Cx::from_f64s(seed.re, seed.im, prec);
    let step_bound = 1u64.max(prec as u64 / 16);
    for _ in 0..96 {
        let (value, deriv) = poly_cx(order, &z);
        let step = value.div(&deriv);
        z = z.sub(&step);
        if step.re.mantissa().bits() <= step_bound && step.im.mantissa().bits() <= step_bound {
            return Ok(z);
        }
    }
    Err(Error::Convergence {
        residuals: vec![format!("{:e}", poly_cx(order, &z).0.abs().to_f64())],
    })
}

/// Finds all N zeros of x^N + x − 1 at the configured precision.
pub fn find_roots(order: usize, cfg: &FloatConfig) -> Result<RootSet> {
    if order < 2 {
        return Err(Error::InvalidOrder { order });
    }
    let prec = cfg.precision();

    // Real roots first: δ in (0, 1), plus one in (−2, 0) for even N.
    let delta = real_root(order, Fixed::zero(prec), Fixed::one(prec), prec)?;
    let mut roots: Vec<Cx> = vec![Cx::real(delta)];
    if order % 2 == 0 {
        let neg = real_root(order, Fixed::from_i64(-2, prec), Fixed::zero(prec), prec)?;
        roots.push(Cx::real(neg));
    }

    // Conjugate pairs from upper-half-plane seeds.
    let expected_pairs = (order - roots.len()) / 2;
    if expected_pairs > 0 {
        let seeds = durand_kerner_seeds(order)?;
        let mut upper: Vec<Complex64> = seeds.into_iter().filter(|z| z.im > 1e-6).collect();
        if upper.len() != expected_pairs {
            return Err(Error::Convergence {
                residuals: upper.iter().map(|z| format!("{z}")).collect(),
            });
        }
        upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for seed in upper {
            let z = polish_cx(order, seed, prec)?;
            roots.push(z.conj());
            roots.push(z);
        }
    }

    // Residual gate: |f(x_k)| must sit below 2^(−prec/2).
    let mut residuals = Vec::with_capacity(order);
    for z in &roots {
        let residual = poly_cx(order, z).0.abs();
        if residual.mantissa().bits() > (prec - prec / 2) as u64 {
            return Err(Error::Convergence {
                residuals: roots
                    .iter()
                    .map(|r| format!("{:e}", poly_cx(order, r).0.abs().to_f64()))
                    .collect(),
            });
        }
        residuals.push(residual);
    }

    // Pairwise distinctness (the zeros are simple).
    for i in 0..order {
        for j in 0..i {
            let gap = roots[i].sub(&roots[j]).abs2();
            if gap.mantissa().bits() <= (prec.saturating_sub(prec / 2)) as u64 {
                return Err(Error::Convergence {
                    residuals: vec![format!("roots {j} and {i} coincide")],
                });
            }
        }
    }

    // Deterministic order: argument angle in [0, 2π), then magnitude.
    let mut indexed: Vec<(f64, f64, Cx, Fixed)> = roots
        .into_iter()
        .zip(residuals)
        .map(|(z, res)| {
            let re = z.re.to_f64();
            let im = z.im.to_f64();
            let angle = im.atan2(re).rem_euclid(std::f64::consts::TAU);
            let mag = (re * re + im * im).sqrt();
            (angle, mag, z, res)
        })
        .collect();
    indexed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let roots: Vec<Cx> = indexed.iter().map(|t| t.2.clone()).collect();
    let residuals: Vec<Fixed> = indexed.iter().map(|t| t.3.clone()).collect();

    let one = Fixed::one(prec);
    let delta_index = roots
        .iter()
        .position(|z| z.im.is_zero() && !z.re.is_negative() && z.re < one)
        .expect("a real root in (0, 1) always exists");

    Ok(RootSet { order, precision: prec, roots, residuals, delta_index })
}

/// Partial-fraction residues r_k = −1/(1 + N·x_k^{N−1}), one per root,
/// in root order.
pub fn residues(rs: &RootSet) -> Vec<Cx> {
    let prec = rs.precision();
    let n = Fixed::from_i64(rs.order() as i64, prec);
    rs.roots()
        .iter()
        .map(|x| {
            let denom = x.powi(rs.order() as i64 - 1).scale(&n).add(&Cx::one(prec));
            Cx::one(prec).div(&denom).neg()
        })
        .collect()
}

/// The alternate residue form −x_k/(N − (N−1)·x_k); agrees with
/// [`residues`] because x_k^N = 1 − x_k.
pub fn residues_alt(rs: &RootSet) -> Vec<Cx> {
    let prec = rs.precision();
    let n = Fixed::from_i64(rs.order() as i64, prec);
    let n_minus_1 = Fixed::from_i64(rs.order() as i64 - 1, prec);
    rs.roots()
        .iter()
        .map(|x| {
            let denom = Cx::real(n.clone()).sub(&x.scale(&n_minus_1));
            x.div(&denom).neg()
        })
        .collect()
}

/// Largest index n at which powers of the dominant growth rate 1/δ
/// still leave a comfortable margin below one integer unit at the
/// given precision. Backends flag results beyond this bound.
pub fn safe_index_bound(order: usize, precision: u32) -> u64 {
    // f64 bisection is plenty for a bound estimate.
    let f = |x: f64| x.powi(order as i32) + x - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 { lo = mid } else { hi = mid }
    }
    let growth = -(0.5 * (lo + hi)).log2();
    let budget = precision.saturating_sub(32) as f64;
    let mut n = 0u64;
    while (n + 1) as f64 * growth + ((n + 2) as f64).log2() <= budget {
        n += 1;
    }
    n
}
