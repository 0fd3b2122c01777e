//! Exterior-power resolvents: the monic polynomial p_k whose roots are the
//! products of the roots of p over all k-element subsets, i.e. the
//! characteristic polynomial of the k-th compound of the companion matrix.
//!
//! p_k is reconstructed exactly by Chinese remaindering: over each word-size
//! prime, Newton's identities convert the coefficients of p into power sums
//! of its roots, the power sums of the subset products, and back into the
//! coefficients of p_k. This avoids forming the C(d,k)-dimensional compound
//! matrix, so the construction completes at desk scale (d <= 14, k <= 6).
//!
//! Constant-term identity: |p_k(0)| = |a_0|^(C(d,k) k/d). The observed sign
//! rule, derived from p_k(0) = (-1)^D (prod of all subset products) with
//! D = C(d,k), is p_k(0) = (-1)^(D(k+1)) a_0^(Dk/d).

use crate::matrix::binomial;
use crate::modp::{crt_combine, crt_primes, reduce_poly, wedge_char_mod};
use crate::poly::{is_squarefree, IntPolynomial, PolyError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error("wedge resolvent requires a monic polynomial")]
    NotMonic,
    #[error("subset size k={k} out of range 1..={degree}")]
    BadK { k: usize, degree: usize },
    #[error("wedge resolvent requires a squarefree polynomial")]
    NotSquarefree,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A polynomial together with its k-th exterior-power resolvent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeResolvent {
    pub source: IntPolynomial,
    pub k: usize,
    pub resolvent: IntPolynomial,
}

/// Builds p_k for monic squarefree p and 1 <= k <= deg p.
pub fn wedge_resolvent(p: &IntPolynomial, k: usize) -> Result<WedgeResolvent, WedgeError> {
    if !p.is_monic() {
        return Err(WedgeError::NotMonic);
    }
    let d = p.degree().unwrap();
    if k < 1 || k > d {
        return Err(WedgeError::BadK { k, degree: d });
    }
    if !is_squarefree(p)? {
        return Err(WedgeError::NotSquarefree);
    }
    let resolvent = wedge_char_exact(p, k);
    Ok(WedgeResolvent {
        source: p.clone(),
        k,
        resolvent,
    })
}

/// Exact p_k of a monic polynomial (squarefreeness not required here; the
/// subset products are then taken with multiplicity).
pub(crate) fn wedge_char_exact(p: &IntPolynomial, k: usize) -> IntPolynomial {
    let d = p.degree().expect("monic polynomial");
    if k == 1 {
        return p.clone();
    }
    let dim = binomial(d, k);
    // |e_i| <= C(dim, i) * rho^(k i) with rho the Cauchy root bound
    let rho_bits = p.max_coeff_bits() + 1;
    let bound_bits = dim as u64 * (1 + k as u64 * rho_bits) + 2;
    let mut per_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut bits_have = 0u64;
    for q in crt_primes(dim as u64 + 1) {
        let reduced = reduce_poly(p, q);
        per_prime.push((q, wedge_char_mod(&reduced, k, dim, q)));
        bits_have += 61;
        if bits_have > bound_bits + 1 {
            break;
        }
    }
    let mut coeffs = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let residues: Vec<(u64, u64)> = per_prime.iter().map(|(q, c)| (*q, c[i])).collect();
        coeffs.push(crt_combine(&residues));
    }
    IntPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{char_poly, companion_matrix, exterior_power};
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    fn poly(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(cs)
    }

    #[test]
    fn k1_is_identity() {
        let p = poly(&[-1, -3, 0, 1]);
        assert_eq!(wedge_resolvent(&p, 1).unwrap().resolvent, p);
    }

    #[test]
    fn quadratic_pair_product_is_vieta() {
        // x^2 + bx + c -> x - c
        let p = poly(&[7, 4, 1]);
        assert_eq!(wedge_resolvent(&p, 2).unwrap().resolvent, poly(&[-7, 1]));
    }

    #[test]
    fn cube_roots_of_unity_pair_products() {
        // pair products of the roots of x^3 - 1 are again the cube roots of unity
        let p = poly(&[-1, 0, 0, 1]);
        assert_eq!(wedge_resolvent(&p, 2).unwrap().resolvent, p);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            wedge_resolvent(&poly(&[1, 0, 2]), 1),
            Err(WedgeError::NotMonic)
        ));
        assert!(matches!(
            wedge_resolvent(&poly(&[-2, 0, 1]), 3),
            Err(WedgeError::BadK { .. })
        ));
        // (x-1)^2
        assert!(matches!(
            wedge_resolvent(&poly(&[1, -2, 1]), 1),
            Err(WedgeError::NotSquarefree)
        ));
    }

    #[test]
    fn matches_compound_matrix_char_poly() {
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        let mut checked = 0;
        while checked < 30 {
            let d = 2 + (next().unsigned_abs() as usize % 4); // 2..=5
            let mut cs: Vec<i64> = (0..d).map(|_| next()).collect();
            cs.push(1);
            let p = poly(&cs);
            if !is_squarefree(&p).unwrap() {
                continue;
            }
            for k in 1..=d {
                let direct = char_poly(
                    &exterior_power(&companion_matrix(&p).unwrap(), k).unwrap(),
                );
                assert_eq!(
                    wedge_resolvent(&p, k).unwrap().resolvent,
                    direct,
                    "p={p} k={k}"
                );
            }
            checked += 1;
        }
    }

    #[test]
    fn degree_is_binomial() {
        let mut state = 5u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(13);
            ((state >> 33) % 9) as i64 - 4
        };
        for d in 2..=8usize {
            let mut found = 0;
            while found < 5 {
                let mut cs: Vec<i64> = (0..d).map(|_| next()).collect();
                cs.push(1);
                let p = poly(&cs);
                if !is_squarefree(&p).unwrap() {
                    continue;
                }
                for k in 1..=d {
                    let w = wedge_resolvent(&p, k).unwrap();
                    assert_eq!(w.resolvent.degree(), Some(binomial(d, k)));
                    assert!(w.resolvent.is_monic());
                }
                found += 1;
            }
        }
    }

    #[test]
    fn constant_term_sign_rule() {
        // p_k(0) = (-1)^(D(k+1)) a_0^(Dk/d), D = C(d,k)
        let mut state = 17u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
            ((state >> 33) % 9) as i64 - 4
        };
        let mut checked = 0;
        while checked < 40 {
            let d = 2 + (next().unsigned_abs() as usize % 5);
            let mut cs: Vec<i64> = (0..d).map(|_| next()).collect();
            cs.push(1);
            let p = poly(&cs);
            if !is_squarefree(&p).unwrap() {
                continue;
            }
            for k in 1..=d {
                let bigd = binomial(d, k);
                let e = bigd * k / d;
                let expect_abs = p.constant_term().abs().pow(e as u32);
                let w = wedge_resolvent(&p, k).unwrap();
                assert_eq!(w.resolvent.constant_term().abs(), expect_abs);
                let sign_neg = (bigd * (k + 1)) % 2 == 1;
                let expect = if sign_neg {
                    -p.constant_term().pow(e as u32)
                } else {
                    p.constant_term().pow(e as u32)
                };
                if !expect.is_zero() {
                    assert_eq!(w.resolvent.constant_term(), expect, "p={p} k={k}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn desk_scale_dimensions_complete() {
        // C(10, 5) = 252-dimensional resolvent as a medium-scale smoke test
        let p = poly(&[3, -1, 2, 0, -2, 1, -1, 0, 1, -1, 1]);
        assert!(is_squarefree(&p).unwrap());
        let w = wedge_resolvent(&p, 5).unwrap();
        assert_eq!(w.resolvent.degree(), Some(252));
        let e = 252 * 5 / 10;
        assert_eq!(
            w.resolvent.constant_term().abs(),
            BigInt::from(3).pow(e as u32)
        );
    }
}
