//! Exact square integer matrices: companion matrices, compound (exterior
//! power) matrices, determinants, and characteristic polynomials.
//!
//! Characteristic polynomials are computed exactly by Chinese remaindering
//! Hessenberg reductions over word-size prime fields; the prime count comes
//! from a Hadamard bound, never from a heuristic.

use crate::modp::{self, crt_combine, crt_primes, mulm, subm};
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("companion matrix requires a monic polynomial")]
    NotMonic,
    #[error("exterior power index k={k} out of range 1..={dim}")]
    BadK { k: usize, dim: usize },
}

/// A square matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        IntegerMatrix { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let mut m = Self::zero(values.len());
        for (i, &v) in values.iter().enumerate() {
            *m.get_mut(i, i) = BigInt::from(v);
        }
        m
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim);
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntegerMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.dim + j]
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    fn max_entry_bits(&self) -> u64 {
        self.entries.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

/// Companion matrix of a monic polynomial: subdiagonal of ones, last column
/// -a_0, ..., -a_{d-1}. Its characteristic polynomial det(xI - M) is p.
pub fn companion_matrix(p: &IntPolynomial) -> Result<IntegerMatrix, MatrixError> {
    if !p.is_monic() {
        return Err(MatrixError::NotMonic);
    }
    let d = p.degree().unwrap();
    assert!(d >= 1, "companion matrix needs degree >= 1");
    let mut m = IntegerMatrix::zero(d);
    for i in 0..d.saturating_sub(1) {
        *m.get_mut(i + 1, i) = BigInt::one();
    }
    for i in 0..d {
        *m.get_mut(i, d - 1) = -p.coeff(i);
    }
    Ok(m)
}

/// All k-element subsets of {0..n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The k-th compound matrix: entry (S, T), with S and T running over the
/// k-subsets of rows and columns in lexicographic order, is the k x k minor
/// of M on rows S and columns T.
pub fn exterior_power(m: &IntegerMatrix, k: usize) -> Result<IntegerMatrix, MatrixError> {
    let n = m.dim();
    if k < 1 || k > n {
        return Err(MatrixError::BadK { k, dim: n });
    }
    if k == 1 {
        return Ok(m.clone());
    }
    let subsets = k_subsets(n, k);
    let dim = subsets.len();
    let mut out = IntegerMatrix::zero(dim);
    for (si, s) in subsets.iter().enumerate() {
        for (ti, t) in subsets.iter().enumerate() {
            let mut minor = IntegerMatrix::zero(k);
            for (a, &row) in s.iter().enumerate() {
                for (b, &col) in t.iter().enumerate() {
                    *minor.get_mut(a, b) = m.get(row, col).clone();
                }
            }
            *out.get_mut(si, ti) = minor.det();
        }
    }
    Ok(out)
}

/// Monic characteristic polynomial det(xI - M), exact via CRT over 62-bit
/// primes with a Hadamard coefficient bound.
pub fn char_poly(m: &IntegerMatrix) -> IntPolynomial {
    let n = m.dim();
    if n == 0 {
        return IntPolynomial::one();
    }
    // |c_i| <= C(n,i) * max i x i minor <= 2^n * (sqrt(n) * A)^n
    let a_bits = m.max_entry_bits() as f64;
    let bound_bits = (n as f64 * (1.0 + a_bits + 0.5 * (n as f64).log2())).ceil() as u64 + 2;
    let mut per_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut bits_have = 0u64;
    for q in crt_primes(n as u64 + 1) {
        let reduced = reduce_matrix(m, q);
        per_prime.push((q, char_poly_mod(reduced, q)));
        bits_have += 61;
        if bits_have > bound_bits + 1 {
            break;
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let residues: Vec<(u64, u64)> = per_prime.iter().map(|(q, c)| (*q, c[i])).collect();
        coeffs.push(crt_combine(&residues));
    }
    IntPolynomial::new(coeffs)
}

fn reduce_matrix(m: &IntegerMatrix, q: u64) -> Vec<Vec<u64>> {
    let n = m.dim();
    let qb = BigInt::from(q);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut r = m.get(i, j) % &qb;
                    if r.is_negative() {
                        r += &qb;
                    }
                    r.to_u64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Characteristic polynomial mod q: Hessenberg reduction by similarity
/// transforms, then the leading-minor recurrence.
pub(crate) fn char_poly_mod(mut h: Vec<Vec<u64>>, q: u64) -> Vec<u64> {
    let n = h.len();
    // reduce to upper Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let pivot_row = match (col + 1..n).find(|&r| h[r][col] != 0) {
            Some(r) => r,
            None => continue,
        };
        if pivot_row != col + 1 {
            h.swap(pivot_row, col + 1);
            for row in h.iter_mut() {
                row.swap(pivot_row, col + 1);
            }
        }
        let inv = modp::invm(h[col + 1][col], q);
        for row in col + 2..n {
            if h[row][col] == 0 {
                continue;
            }
            let factor = mulm(h[row][col], inv, q);
            for j in 0..n {
                let t = mulm(factor, h[col + 1][j], q);
                h[row][j] = subm(h[row][j], t, q);
            }
            // column operation keeping the similarity class
            for i in 0..n {
                let t = mulm(factor, h[i][row], q);
                h[i][col + 1] = modp::addm(h[i][col + 1], t, q);
            }
        }
    }
    // chi_m(x) = (x - h[m-1][m-1]) chi_{m-1}
    //          - sum_i h[i][m-1] * (prod_{j=i+1..m-1} h[j][j-1]) * chi_i
    let mut chis: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let last = h[m - 1][m - 1];
        let prev = &chis[m - 1];
        let mut p = vec![0u64; m + 1];
        for (t, &c) in prev.iter().enumerate() {
            p[t + 1] = modp::addm(p[t + 1], c, q);
            p[t] = subm(p[t], mulm(last, c, q), q);
        }
        let mut beta = 1u64;
        for i in (0..m.saturating_sub(1)).rev() {
            beta = mulm(beta, h[i + 1][i], q);
            if beta == 0 {
                break;
            }
            if h[i][m - 1] != 0 {
                let coef = mulm(h[i][m - 1], beta, q);
                for (t, &c) in chis[i].iter().enumerate() {
                    p[t] = subm(p[t], mulm(coef, c, q), q);
                }
            }
        }
        chis.push(p);
    }
    chis.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn poly(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(cs)
    }

    /// Cofactor-expansion oracle for det(xI - M) over polynomial entries.
    fn char_poly_cofactor_oracle(m: &IntegerMatrix) -> IntPolynomial {
        let n = m.dim();
        let entries: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = IntPolynomial::constant(-m.get(i, j).clone());
                        if i == j {
                            p = p.add(&IntPolynomial::x_power(1));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        fn det(rows: &[Vec<IntPolynomial>]) -> IntPolynomial {
            let n = rows.len();
            if n == 1 {
                return rows[0][0].clone();
            }
            let mut acc = IntPolynomial::zero();
            for j in 0..n {
                let minor: Vec<Vec<IntPolynomial>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = rows[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
        det(&entries)
    }

    #[test]
    fn companion_convention() {
        // x^2 + bx + c with b = 4, c = 7 -> [[0, -7], [1, -4]]
        let m = companion_matrix(&poly(&[7, 4, 1])).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows_i64(&[&[0, -7], &[1, -4]]));
        // x - a
        let m1 = companion_matrix(&poly(&[-5, 1])).unwrap();
        assert_eq!(m1, IntegerMatrix::from_rows_i64(&[&[5]]));
        assert!(companion_matrix(&poly(&[1, 2])).is_err());
    }

    #[test]
    fn companion_char_poly_round_trip() {
        let p = poly(&[-1, -3, 0, 1]);
        let m = companion_matrix(&p).unwrap();
        assert_eq!(char_poly(&m), p);
    }

    #[test]
    fn char_poly_identity() {
        let m = IntegerMatrix::identity(2);
        assert_eq!(char_poly(&m), poly(&[1, -2, 1]));
    }

    #[test]
    fn char_poly_matches_cofactor_oracle_on_random_matrices() {
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 11) as i64 - 5
        };
        for _ in 0..25 {
            let vals: Vec<i64> = (0..16).map(|_| next()).collect();
            let m = IntegerMatrix::new(4, vals.iter().map(|&v| BigInt::from(v)).collect());
            assert_eq!(char_poly(&m), char_poly_cofactor_oracle(&m));
        }
    }

    #[test]
    fn exterior_top_power_is_determinant() {
        let m = IntegerMatrix::from_rows_i64(&[&[2, 3, 1], &[0, 1, -4], &[5, 2, 2]]);
        let top = exterior_power(&m, 3).unwrap();
        assert_eq!(top.dim(), 1);
        assert_eq!(*top.get(0, 0), m.det());
    }

    #[test]
    fn exterior_k1_is_identity_case() {
        let m = IntegerMatrix::from_rows_i64(&[&[2, 3], &[1, 7]]);
        assert_eq!(exterior_power(&m, 1).unwrap(), m);
    }

    #[test]
    fn exterior_of_diagonal() {
        let m = IntegerMatrix::diagonal(&[2, 3, 5]);
        let w = exterior_power(&m, 2).unwrap();
        assert_eq!(w, IntegerMatrix::diagonal(&[6, 10, 15]));
    }

    #[test]
    fn exterior_bad_k() {
        let m = IntegerMatrix::identity(3);
        assert!(matches!(
            exterior_power(&m, 0),
            Err(MatrixError::BadK { .. })
        ));
        assert!(matches!(
            exterior_power(&m, 4),
            Err(MatrixError::BadK { .. })
        ));
    }

    #[test]
    fn compound_multiplicativity_cauchy_binet() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..10 {
            let a = IntegerMatrix::new(4, (0..16).map(|_| BigInt::from(next())).collect());
            let b = IntegerMatrix::new(4, (0..16).map(|_| BigInt::from(next())).collect());
            for k in 1..=4 {
                let lhs = exterior_power(&a.mat_mul(&b), k).unwrap();
                let rhs = exterior_power(&a, k)
                    .unwrap()
                    .mat_mul(&exterior_power(&b, k).unwrap());
                assert_eq!(lhs, rhs, "k={k}");
            }
        }
    }

    #[test]
    fn binomial_and_subsets() {
        assert_eq!(binomial(14, 6), 3003);
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(
            k_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
