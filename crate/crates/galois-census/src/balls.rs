//! Certified complex root approximation via fixed-point ball arithmetic.
//!
//! Values are complex numbers (re + im*i)/2^prec with BigInt mantissas and an
//! f64 upper bound on the absolute error radius. Radius arithmetic always
//! rounds up (every f64 operation on radii is inflated by `UP`), so a ball
//! always contains the true value it tracks.
//!
//! Root certification uses Weierstrass corrections W_i = p(z_i)/prod(z_i-z_j):
//! the union of disks D(z_i, d*|W_i|) contains every root of the monic p, and
//! pairwise disjoint disks each contain exactly one root. The working
//! precision starts at 64 bits and doubles until certification succeeds,
//! with a hard ceiling of 2^16 bits.

use crate::poly::{bigint_to_f64_abs, IntPolynomial};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub const START_PRECISION_BITS: u32 = 64;
pub const MAX_PRECISION_BITS: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("certified rounding failed below the {max_bits}-bit precision ceiling")]
pub struct PrecisionExhausted {
    pub max_bits: u32,
}

/// Multiplicative fudge making f64 radius arithmetic an upper bound.
fn up(x: f64) -> f64 {
    x * (1.0 + 1e-9) + f64::MIN_POSITIVE
}

fn down(x: f64) -> f64 {
    (x * (1.0 - 1e-9)).max(0.0)
}

/// A complex number with certified error radius, at fixed-point scale 2^prec.
#[derive(Clone, Debug)]
pub struct Ball {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: f64,
}

fn mantissa_to_f64(m: &BigInt, prec: u32) -> f64 {
    // exact for small mantissas; relative error ~1e-16 otherwise, fudged by callers
    let bits = m.bits();
    if bits <= 1000 {
        m.to_f64().unwrap_or(f64::MAX) / 2f64.powi(prec as i32)
    } else {
        // avoid f64 overflow for very large mantissas
        let shift = bits - 900;
        let reduced = m >> shift;
        reduced.to_f64().unwrap_or(f64::MAX) * 2f64.powi(shift as i32 - prec as i32)
    }
}

impl Ball {
    pub fn exact_int(c: &BigInt, prec: u32) -> Self {
        Ball {
            re: c << prec,
            im: BigInt::zero(),
            rad: 0.0,
        }
    }

    pub fn from_f64(z: Complex64, prec: u32) -> Self {
        let scale = 2f64.powi(prec.min(1000) as i32);
        let to_mantissa = |v: f64| -> BigInt {
            if prec <= 1000 {
                BigInt::from((v * scale).round() as i128)
            } else {
                BigInt::from((v * 2f64.powi(1000)).round() as i128) << (prec - 1000)
            }
        };
        Ball {
            re: to_mantissa(z.re),
            im: to_mantissa(z.im),
            // f64 input carries ~1e-16 relative slop plus quantization
            rad: up(z.norm() * 1e-12 + 2f64.powi(-(prec.min(1000) as i32))),
        }
    }

    /// Upper bound on |value|.
    pub fn abs_up(&self, prec: u32) -> f64 {
        let re = mantissa_to_f64(&self.re, prec);
        let im = mantissa_to_f64(&self.im, prec);
        up(re.hypot(im) + self.rad)
    }

    /// Lower bound on |value| (clamped at 0).
    pub fn abs_down(&self, prec: u32) -> f64 {
        let re = mantissa_to_f64(&self.re, prec);
        let im = mantissa_to_f64(&self.im, prec);
        down((down(re.hypot(im)) - self.rad).max(0.0))
    }

    pub fn add(&self, other: &Ball) -> Ball {
        Ball {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            rad: up(self.rad + other.rad),
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        Ball {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
            rad: up(self.rad + other.rad),
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad,
        }
    }

    pub fn mul(&self, other: &Ball, prec: u32) -> Ball {
        let re = (&self.re * &other.re - &self.im * &other.im) >> prec;
        let im = (&self.re * &other.im + &self.im * &other.re) >> prec;
        let a = up(self.abs_up(prec));
        let b = up(other.abs_up(prec));
        // |a||rb| + |b||ra| + ra rb + truncation of both shifted components
        let rad = up(a * other.rad + b * self.rad + self.rad * other.rad
            + 3.0 * 2f64.powi(-(prec.min(2000) as i32)));
        Ball { re, im, rad }
    }

    pub fn mul_int(&self, c: &BigInt) -> Ball {
        Ball {
            re: &self.re * c,
            im: &self.im * c,
            rad: up(self.rad * bigint_to_f64_abs(c)),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32, prec: u32) -> Ball {
        let mut acc = Ball::exact_int(&BigInt::from(1), prec);
        for _ in 0..e {
            acc = acc.mul(self, prec);
        }
        acc
    }

    /// Nearest integer to the real part, with certified bounds on the
    /// distance from the ball's value to that integer.
    pub fn nearest_integer(&self, prec: u32) -> (BigInt, f64, f64) {
        let half = BigInt::from(1) << (prec - 1);
        let n = (&self.re + &half) >> prec; // floor((re + 1/2) / 2^prec)
        let dre = mantissa_to_f64(&(&self.re - (&n << prec)), prec);
        let dim = mantissa_to_f64(&self.im, prec);
        let dist = dre.hypot(dim);
        (n, up(dist + self.rad), down((down(dist) - self.rad).max(0.0)))
    }
}

/// Fixed-point complex number without radius (used in refinement loops).
#[derive(Clone, Debug)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

impl FixedComplex {
    fn mul(&self, other: &FixedComplex, prec: u32) -> FixedComplex {
        FixedComplex {
            re: (&self.re * &other.re - &self.im * &other.im) >> prec,
            im: (&self.re * &other.im + &self.im * &other.re) >> prec,
        }
    }

    fn sub(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    /// self / other at the working scale; other must be nonzero.
    fn div(&self, other: &FixedComplex, prec: u32) -> Option<FixedComplex> {
        let denom = &other.re * &other.re + &other.im * &other.im;
        if denom.is_zero() {
            return None;
        }
        let num_re = &self.re * &other.re + &self.im * &other.im;
        let num_im = &self.im * &other.re - &self.re * &other.im;
        Some(FixedComplex {
            re: (num_re << prec) / &denom,
            im: (num_im << prec) / &denom,
        })
    }

    fn norm_bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// Horner evaluation of an integer polynomial at a fixed-point argument.
fn eval_fixed(p: &IntPolynomial, z: &FixedComplex, prec: u32) -> FixedComplex {
    let mut acc = FixedComplex {
        re: BigInt::zero(),
        im: BigInt::zero(),
    };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z, prec);
        acc.re += c << prec;
    }
    acc
}

/// Horner evaluation with rigorous radius (argument has radius 0).
fn eval_ball(p: &IntPolynomial, z: &Ball, prec: u32) -> Ball {
    let mut acc = Ball::exact_int(&BigInt::zero(), prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z, prec);
        acc = acc.add(&Ball::exact_int(c, prec));
    }
    acc
}

/// Durand-Kerner in f64 for initial approximations. Non-rigorous; the
/// certification step decides whether the results are usable.
fn initial_roots_f64(p: &IntPolynomial) -> Vec<Complex64> {
    let d = p.degree().unwrap();
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(if c.is_negative() { -1e300 } else { 1e300 }))
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let r = p.root_bound_f64().min(1e100);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / d as f64 + 0.4;
            Complex64::from_polar(r * 0.7 + 0.1, theta)
        })
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(coeffs[d], 0.0);
            for j in 0..d {
                if j != i {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                zs[i] += Complex64::new(1e-6 * (i as f64 + 1.0), 1e-6);
                max_step = f64::MAX;
                continue;
            }
            let w = eval(zs[i]) / denom;
            zs[i] -= w;
            max_step = max_step.max(w.norm());
        }
        if max_step < 1e-13 * (r + 1.0) {
            break;
        }
    }
    zs
}

/// One certified-precision level: Newton-polish each approximation, fall back
/// to fixed-point Durand-Kerner sweeps if needed, then try to certify.
fn refine_and_certify(
    p: &IntPolynomial,
    zs: &mut Vec<FixedComplex>,
    prec: u32,
) -> Option<Vec<Ball>> {
    let d = p.degree().unwrap();
    let dp = p.derivative();
    let newton_rounds = 8 + (prec as usize).ilog2() as usize * 4;
    for z in zs.iter_mut() {
        for _ in 0..newton_rounds {
            let val = eval_fixed(p, z, prec);
            let der = eval_fixed(&dp, z, prec);
            match val.div(&der, prec) {
                Some(step) => {
                    let small = step.norm_bits() as i64 <= 2;
                    *z = z.sub(&step);
                    if small {
                        break;
                    }
                }
                None => break,
            }
        }
    }
    if let Some(balls) = certify(p, zs, prec) {
        return Some(balls);
    }
    // Simultaneous fixed-point Durand-Kerner sweeps to separate clustered
    // approximations, then retry.
    for _ in 0..3 {
        for _ in 0..20 {
            for i in 0..d {
                let mut denom = FixedComplex {
                    re: BigInt::from(1) << prec,
                    im: BigInt::zero(),
                };
                for j in 0..d {
                    if j != i {
                        denom = denom.mul(&zs[i].sub(&zs[j]), prec);
                    }
                }
                let val = eval_fixed(p, &zs[i], prec);
                if let Some(w) = val.div(&denom, prec) {
                    zs[i] = zs[i].sub(&w);
                } else {
                    zs[i].re += BigInt::from(1) << (prec / 2);
                }
            }
        }
        if let Some(balls) = certify(p, zs, prec) {
            return Some(balls);
        }
    }
    None
}

/// Weierstrass-disk certification. Returns per-root balls when the disks are
/// pairwise disjoint, which proves each contains exactly one root of p.
fn certify(p: &IntPolynomial, zs: &[FixedComplex], prec: u32) -> Option<Vec<Ball>> {
    let d = p.degree().unwrap();
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let zi = Ball {
            re: zs[i].re.clone(),
            im: zs[i].im.clone(),
            rad: 0.0,
        };
        let num = eval_ball(p, &zi, prec).abs_up(prec);
        let mut denom_lo = 1.0f64;
        for j in 0..d {
            if j == i {
                continue;
            }
            let diff = zs[i].sub(&zs[j]);
            let b = Ball {
                re: diff.re,
                im: diff.im,
                rad: 0.0,
            };
            denom_lo = down(denom_lo * b.abs_down(prec));
        }
        if denom_lo <= 0.0 {
            return None;
        }
        let w = up(d as f64 * num / denom_lo);
        if !w.is_finite() {
            return None;
        }
        radii.push(w);
    }
    // pairwise disjointness
    for i in 0..d {
        for j in i + 1..d {
            let diff = zs[i].sub(&zs[j]);
            let b = Ball {
                re: diff.re,
                im: diff.im,
                rad: 0.0,
            };
            if b.abs_down(prec) <= up(radii[i] + radii[j]) {
                return None;
            }
        }
    }
    Some(
        zs.iter()
            .zip(radii)
            .map(|(z, rad)| Ball {
                re: z.re.clone(),
                im: z.im.clone(),
                rad,
            })
            .collect(),
    )
}

fn rescale(zs: &[FixedComplex], from: u32, to: u32) -> Vec<FixedComplex> {
    zs.iter()
        .map(|z| FixedComplex {
            re: &z.re << (to - from),
            im: &z.im << (to - from),
        })
        .collect()
}

/// Runs a computation over certified root balls inside the precision
/// doubling ladder. At each precision level the roots are refined and
/// certified, then `consume` is applied; returning `None` (certified error
/// bounds still too wide for the caller's rounding) doubles the precision
/// and retries. Root approximations carry over between levels.
pub fn with_precision_ladder<T>(
    p: &IntPolynomial,
    start_bits: u32,
    max_bits: u32,
    mut consume: impl FnMut(&[Ball], u32) -> Option<T>,
) -> Result<T, PrecisionExhausted> {
    assert!(p.is_monic(), "root certification requires a monic polynomial");
    let d = p.degree().expect("nonzero polynomial");
    let mut prec = start_bits.max(8);
    if d <= 1 {
        let roots = if d == 0 {
            Vec::new()
        } else {
            vec![Ball::exact_int(&(-p.coeff(0)), prec)]
        };
        loop {
            let rescaled: Vec<Ball> = roots
                .iter()
                .map(|b| Ball {
                    re: &b.re << (prec - start_bits.max(8)),
                    im: BigInt::zero(),
                    rad: 0.0,
                })
                .collect();
            if let Some(t) = consume(&rescaled, prec) {
                return Ok(t);
            }
            prec = prec.saturating_mul(2);
            if prec > max_bits {
                return Err(PrecisionExhausted { max_bits });
            }
        }
    }
    let f64_roots = initial_roots_f64(p);
    let mut zs: Vec<FixedComplex> = f64_roots
        .iter()
        .map(|&z| {
            let b = Ball::from_f64(z, prec);
            FixedComplex { re: b.re, im: b.im }
        })
        .collect();
    loop {
        if let Some(balls) = refine_and_certify(p, &mut zs, prec) {
            if let Some(t) = consume(&balls, prec) {
                return Ok(t);
            }
        }
        let next = prec.saturating_mul(2);
        if next > max_bits {
            return Err(PrecisionExhausted { max_bits });
        }
        zs = rescale(&zs, prec, next);
        prec = next;
    }
}

/// Certified root balls of a monic squarefree polynomial, each containing
/// exactly one root, at the lowest precision in the doubling ladder that
/// certifies. Returns the balls and the working precision.
pub fn certified_roots(
    p: &IntPolynomial,
    start_bits: u32,
    max_bits: u32,
) -> Result<(Vec<Ball>, u32), PrecisionExhausted> {
    with_precision_ladder(p, start_bits, max_bits, |balls, prec| {
        Some((balls.to_vec(), prec))
    })
}

/// Coefficient balls of prod (x - r_i) over the given root balls, ascending.
pub fn poly_from_root_balls(roots: &[Ball], prec: u32) -> Vec<Ball> {
    let one = Ball::exact_int(&BigInt::from(1), prec);
    let mut coeffs = vec![one];
    for r in roots {
        let zero = Ball::exact_int(&BigInt::zero(), prec);
        let mut next = vec![zero; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r, prec));
        }
        coeffs = next;
    }
    coeffs
}

/// Rounds coefficient balls to the unique nearby integers, certifying that
/// every ball has radius < 1/2 and actually contains its integer. `None`
/// means the precision is insufficient (or some coefficient is not an
/// integer, for callers testing candidates).
pub fn round_coeffs_to_integers(coeffs: &[Ball], prec: u32) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !(c.rad < 0.499) {
            return None;
        }
        let (n, dist_up, _) = c.nearest_integer(prec);
        if dist_up >= 0.499 {
            return None;
        }
        out.push(n);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn poly(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(cs)
    }

    #[test]
    fn certifies_sqrt2() {
        let p = poly(&[-2, 0, 1]);
        let (roots, prec) = certified_roots(&p, 64, 1 << 16).unwrap();
        assert_eq!(roots.len(), 2);
        let mut vals: Vec<f64> = roots
            .iter()
            .map(|b| mantissa_to_f64(&b.re, prec))
            .collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-9);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-9);
        for b in &roots {
            assert!(b.rad < 1e-9);
        }
    }

    #[test]
    fn product_of_all_roots_rounds_to_constant_term() {
        // x^3 - 3x - 1: product of roots = (-1)^3 * (-1) = 1
        let p = poly(&[-1, -3, 0, 1]);
        let (roots, prec) = certified_roots(&p, 64, 1 << 16).unwrap();
        let mut prod = Ball::exact_int(&BigInt::from(1), prec);
        for r in &roots {
            prod = prod.mul(r, prec);
        }
        let (n, dist, _) = prod.nearest_integer(prec);
        assert_eq!(n, BigInt::from(1));
        assert!(dist < 0.01);
    }

    #[test]
    fn expansion_recovers_integer_polynomial() {
        let p = poly(&[6, -5, -2, 1]); // (x-3)(x+2)(x-1)
        let (roots, prec) = certified_roots(&p, 64, 1 << 16).unwrap();
        let coeffs = poly_from_root_balls(&roots, prec);
        let ints = round_coeffs_to_integers(&coeffs, prec).unwrap();
        assert_eq!(IntPolynomial::new(ints), p);
    }

    #[test]
    fn close_roots_need_higher_precision_but_certify() {
        // (x - 10^6)(x - 10^6 - 1)(x + 3) has two adjacent large roots; the
        // coefficient rounding drives the ladder past the first certification.
        let a = 1_000_000i64;
        let p = poly(&[3 * a * (a + 1), a * (a + 1) - 3 * (2 * a + 1), -(2 * a + 1) + 3, 1]);
        let ints = with_precision_ladder(&p, 64, 1 << 16, |roots, prec| {
            round_coeffs_to_integers(&poly_from_root_balls(roots, prec), prec)
        })
        .unwrap();
        assert_eq!(IntPolynomial::new(ints), p);
    }
}
