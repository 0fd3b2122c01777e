//! Polynomial and matrix arithmetic over word-size prime fields.
//!
//! This backs every modular computation in the crate: Chinese-remaindered
//! resultants and characteristic polynomials, distinct-degree factor patterns
//! (Frobenius cycle types), and the power-sum construction of exterior-power
//! resolvents mod q. Polynomials are dense ascending `Vec<u64>` with entries
//! reduced mod q and no trailing zeros.

use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn addm(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

pub fn subm(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

pub fn mulm(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn powm(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, q);
        }
        base = mulm(base, base, q);
        exp >>= 1;
    }
    acc
}

pub fn invm(a: u64, q: u64) -> u64 {
    powm(a, q - 2, q)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending primes strictly greater than `start`.
pub fn primes_above(start: u64) -> impl Iterator<Item = u64> {
    let mut n = start;
    std::iter::from_fn(move || loop {
        n = n.checked_add(1)?;
        if is_prime_u64(n) {
            return Some(n);
        }
    })
}

/// Base for the 62-bit CRT prime stream.
const CRT_PRIME_BASE: u64 = 1 << 62;

/// Deterministic stream of 62-bit primes for CRT reconstructions. `floor`
/// lets callers demand primes exceeding a dimension (Newton identity
/// divisions need q > D).
pub fn crt_primes(floor: u64) -> impl Iterator<Item = u64> {
    primes_above(CRT_PRIME_BASE.max(floor))
}

// ---- dense polynomials mod q ----

pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

/// Reduces an integer polynomial mod q (coefficients in [0, q)).
pub fn reduce_poly(p: &IntPolynomial, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    trim(
        p.coeffs()
            .iter()
            .map(|c| {
                let mut r = c % &qb;
                if r.is_negative() {
                    r += &qb;
                }
                r.to_u64().unwrap()
            })
            .collect(),
    )
}

pub fn poly_mul(f: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(a, b, q), q);
        }
    }
    trim(out)
}

/// Remainder of f by g (g nonzero), plain field division.
pub fn poly_rem(f: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    let dg = deg(g).expect("division by zero polynomial");
    let mut r: Vec<u64> = f.to_vec();
    let lead_inv = invm(g[dg], q);
    while let Some(dr) = deg(&r) {
        if dr < dg {
            break;
        }
        let c = mulm(r[dr], lead_inv, q);
        let shift = dr - dg;
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = subm(r[shift + j], mulm(c, gj, q), q);
        }
        r = trim(r);
    }
    r
}

pub fn poly_gcd(f: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q);
        a = b;
        b = r;
    }
    // monic-normalize
    if let Some(da) = deg(&a) {
        let inv = invm(a[da], q);
        for c in a.iter_mut() {
            *c = mulm(*c, inv, q);
        }
    }
    a
}

pub fn poly_derivative(f: &[u64], q: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % q, q))
            .collect(),
    )
}

/// h^e mod (g, q) by binary exponentiation.
pub fn poly_powmod(h: &[u64], mut e: u64, g: &[u64], q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(h, g, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, q), g, q);
        }
        base = poly_rem(&poly_mul(&base, &base, q), g, q);
        e >>= 1;
    }
    acc
}

pub fn is_squarefree_mod(f: &[u64], q: u64) -> bool {
    match deg(f) {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let fp = poly_derivative(f, q);
            if fp.is_empty() {
                return false;
            }
            deg(&poly_gcd(f, &fp, q)) == Some(0)
        }
    }
}

/// Multiset of irreducible-factor degrees of a squarefree monic f mod q,
/// by distinct-degree factorization. Returns `None` when f mod q is not
/// squarefree (the prime divides the discriminant).
pub fn factor_degrees(f: &[u64], q: u64) -> Option<Vec<usize>> {
    let d = deg(f)?;
    if d == 0 {
        return None;
    }
    if !is_squarefree_mod(f, q) {
        return None;
    }
    let mut degrees = Vec::new();
    let mut g = f.to_vec();
    // monic-normalize
    if g[d] != 1 {
        let inv = invm(g[d], q);
        for c in g.iter_mut() {
            *c = mulm(*c, inv, q);
        }
    }
    let x = vec![0u64, 1];
    let mut h = poly_rem(&x, &g, q);
    let mut i = 0usize;
    while let Some(dg) = deg(&g) {
        if dg == 0 {
            break;
        }
        i += 1;
        if 2 * i > dg {
            degrees.push(dg);
            break;
        }
        h = poly_powmod(&h, q, &g, q);
        // gcd(g, h - x): factors of degree exactly i
        let mut hx = h.clone();
        while hx.len() < 2 {
            hx.push(0);
        }
        hx[1] = subm(hx[1], 1, q);
        let w = poly_gcd(&g, &trim(hx), q);
        if let Some(dw) = deg(&w) {
            if dw > 0 {
                for _ in 0..dw / i {
                    degrees.push(i);
                }
                g = poly_div_exact(&g, &w, q);
                h = poly_rem(&h, &g, q);
            }
        }
    }
    degrees.sort_unstable();
    Some(degrees)
}

/// Exact quotient f/g over the field (panics if not exact; used after gcd).
fn poly_div_exact(f: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    let dg = deg(g).unwrap();
    let df = deg(f).unwrap();
    let mut r = f.to_vec();
    let mut out = vec![0u64; df - dg + 1];
    let lead_inv = invm(g[dg], q);
    while let Some(dr) = deg(&r) {
        if dr < dg {
            break;
        }
        let c = mulm(r[dr], lead_inv, q);
        let shift = dr - dg;
        out[shift] = c;
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = subm(r[shift + j], mulm(c, gj, q), q);
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(out)
}

// ---- Newton power sums and the exterior-power resolvent mod q ----

/// Power sums s_1..s_count of the roots of a monic polynomial, mod q,
/// by Newton's recurrence on the coefficients.
pub fn power_sums(monic: &[u64], count: usize, q: u64) -> Vec<u64> {
    let d = deg(monic).expect("power sums of the zero polynomial");
    let a = monic; // a[i] = coefficient of x^i, a[d] = 1
    let mut s = vec![0u64; count + 1];
    for t in 1..=count {
        let mut acc = 0u64;
        let upper = (t - 1).min(d);
        for i in 1..=upper {
            acc = addm(acc, mulm(a[d - i], s[t - i], q), q);
        }
        if t <= d {
            let ta = mulm((t as u64) % q, a[d - t], q);
            acc = addm(acc, ta, q);
        }
        s[t] = subm(0, acc, q);
    }
    s
}

/// Inverse table 1..=n mod q (q prime, q > n).
fn inverses_upto(n: usize, q: u64) -> Vec<u64> {
    let mut inv = vec![0u64; n + 1];
    if n >= 1 {
        inv[1] = 1;
    }
    for i in 2..=n {
        inv[i] = mulm(q - q / i as u64, inv[(q % i as u64) as usize], q);
    }
    inv
}

/// Elementary symmetric functions e_1..e_n from power sums s_1..s_n via
/// Newton's identities (requires q > n).
pub fn elementary_from_power_sums(s: &[u64], n: usize, q: u64) -> Vec<u64> {
    let inv = inverses_upto(n, q);
    let mut e = vec![0u64; n + 1];
    e[0] = 1;
    for j in 1..=n {
        let mut acc = 0u64;
        for i in 1..=j {
            let term = mulm(s[i], e[j - i], q);
            if i % 2 == 1 {
                acc = addm(acc, term, q);
            } else {
                acc = subm(acc, term, q);
            }
        }
        e[j] = mulm(acc, inv[j], q);
    }
    e
}

/// Characteristic polynomial mod q of the k-th exterior power of the
/// companion matrix of a monic polynomial: the monic degree-C(d,k)
/// polynomial whose roots are the k-subset products of the roots of the
/// input. Requires q > C(d,k).
pub fn wedge_char_mod(monic: &[u64], k: usize, dim: usize, q: u64) -> Vec<u64> {
    debug_assert!(q > dim as u64);
    let s = power_sums(monic, k * dim, q);
    // power sums of the subset products: q_m = e_k(r_1^m, ..., r_d^m)
    let inv_small = inverses_upto(k, q);
    let mut prod_sums = vec![0u64; dim + 1];
    for m in 1..=dim {
        let mut e = vec![0u64; k + 1];
        e[0] = 1;
        for j in 1..=k {
            let mut acc = 0u64;
            for i in 1..=j {
                let term = mulm(s[i * m], e[j - i], q);
                if i % 2 == 1 {
                    acc = addm(acc, term, q);
                } else {
                    acc = subm(acc, term, q);
                }
            }
            e[j] = mulm(acc, inv_small[j], q);
        }
        prod_sums[m] = e[k];
    }
    let e = elementary_from_power_sums(&prod_sums, dim, q);
    // x^dim - e_1 x^(dim-1) + e_2 x^(dim-2) - ...
    let mut out = vec![0u64; dim + 1];
    out[dim] = 1;
    for j in 1..=dim {
        out[dim - j] = if j % 2 == 1 { subm(0, e[j], q) } else { e[j] };
    }
    out
}

// ---- resultants mod q and CRT reconstruction ----

/// Resultant of two nonzero polynomials mod q by the Euclidean identity
/// res(A,B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) res(B, R).
pub fn resultant_mod(a: &[u64], b: &[u64], q: u64) -> u64 {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut da, mut db) = (deg(&a).unwrap(), deg(&b).unwrap());
    let mut neg = false;
    let mut acc = 1u64;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
    }
    loop {
        if db == 0 {
            acc = mulm(acc, powm(b[0], da as u64, q), q);
            break;
        }
        let r = poly_rem(&a, &b, q);
        match deg(&r) {
            None => return 0,
            Some(dr) => {
                if da % 2 == 1 && db % 2 == 1 {
                    neg = !neg;
                }
                acc = mulm(acc, powm(b[db], (da - dr) as u64, q), q);
                a = b;
                b = r;
                da = db;
                db = dr;
            }
        }
    }
    if neg {
        subm(0, acc, q)
    } else {
        acc
    }
}

/// Balanced CRT combination: the unique integer in (-M/2, M/2] matching all
/// residues, where M is the product of the moduli.
pub fn crt_combine(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::from(1u64);
    for &(q, v) in residues {
        let qb = BigInt::from(q);
        let x_mod_q = {
            let mut r = &x % &qb;
            if r.is_negative() {
                r += &qb;
            }
            r.to_u64().unwrap()
        };
        let m_mod_q = (&modulus % &qb).to_u64().unwrap();
        let t = mulm(subm(v % q, x_mod_q, q), invm(m_mod_q, q), q);
        x += &modulus * BigInt::from(t);
        modulus *= qb;
    }
    // balance into (-M/2, M/2]
    if &x * 2 > modulus {
        x -= &modulus;
    }
    x
}

/// Exact resultant over Z by CRT over enough 62-bit primes to cover
/// `bound_bits` (a log2 bound on the absolute value of the result).
pub fn crt_resultant(p: &IntPolynomial, r: &IntPolynomial, bound_bits: u64) -> BigInt {
    let dp = p.degree().unwrap();
    let dr = r.degree().unwrap();
    let mut residues = Vec::new();
    let mut bits_have = 0u64;
    for q in crt_primes(0) {
        let fp = reduce_poly(p, q);
        let fr = reduce_poly(r, q);
        // skip primes dividing a leading coefficient: degree would drop
        if deg(&fp) != Some(dp) || deg(&fr) != Some(dr) {
            continue;
        }
        residues.push((q, resultant_mod(&fp, &fr, q)));
        bits_have += 61;
        if bits_have > bound_bits + 1 {
            break;
        }
    }
    crt_combine(&residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_iterator_and_mr() {
        let ps: Vec<u64> = primes_above(1).take(8).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne prime
        assert!(!is_prime_u64((1 << 62) - 1));
    }

    #[test]
    fn poly_rem_and_gcd() {
        let q = 101;
        // (x^2 - 1) mod (x - 1) = 0
        let f = vec![100, 0, 1];
        let g = vec![100, 1];
        assert!(poly_rem(&f, &g, q).is_empty());
        let h = poly_gcd(&f, &vec![1, 1], q); // gcd(x^2-1, x+1) = x+1
        assert_eq!(h, vec![1, 1]);
    }

    #[test]
    fn factor_degrees_examples() {
        // x^2 + 1 mod 3: irreducible -> [2]
        assert_eq!(factor_degrees(&vec![1, 0, 1], 3), Some(vec![2]));
        // x^2 + 1 mod 5: roots 2, 3 -> [1, 1]
        assert_eq!(factor_degrees(&vec![1, 0, 1], 5), Some(vec![1, 1]));
        // x - 7 mod 11 -> [1]
        assert_eq!(factor_degrees(&vec![4, 1], 11), Some(vec![1]));
        // non-squarefree: (x-1)^2 mod 5
        assert_eq!(factor_degrees(&vec![1, 3, 1], 5), None);
    }

    #[test]
    fn factor_degrees_sum_matches_degree() {
        for q in [5u64, 7, 11, 13] {
            for c0 in 0..q {
                for c1 in 0..q {
                    let f = vec![c0, c1, 0, 1]; // x^3 + c1 x + c0
                    if let Some(ds) = factor_degrees(&f, q) {
                        assert_eq!(ds.iter().sum::<usize>(), 3);
                    }
                }
            }
        }
    }

    #[test]
    fn power_sums_match_brute_force() {
        // roots 1, 2, 3 mod 101: p = (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let q = 101u64;
        let f = vec![95, 11, 95, 1];
        let s = power_sums(&f, 6, q);
        for t in 1..=6u32 {
            let want = (1u64.pow(t) + 2u64.pow(t) + 3u64.pow(t)) % q;
            assert_eq!(s[t as usize], want, "t={t}");
        }
    }

    #[test]
    fn elementary_round_trip() {
        let q = 97u64;
        // roots 2, 5, 9: e1 = 16, e2 = 10+18+45 = 73, e3 = 90
        let f = vec![subm(0, 90, q), 73, subm(0, 16, q), 1];
        let s = power_sums(&f, 3, q);
        let e = elementary_from_power_sums(&s, 3, q);
        assert_eq!(&e[1..], &[16, 73, 90]);
    }

    #[test]
    fn wedge_char_mod_quadratic() {
        // p = x^2 + bx + c: pair product polynomial is x - c
        let q = 1009u64;
        let f = vec![7, 3, 1];
        let w = wedge_char_mod(&f, 2, 1, q);
        assert_eq!(w, vec![subm(0, 7, q), 1]);
    }

    #[test]
    fn resultant_mod_matches_evaluation() {
        // res(x - a, g) = g(a)
        let q = 10007u64;
        let g = vec![3, 0, 5, 1];
        for a in [0u64, 1, 17, 123] {
            let f = vec![subm(0, a, q), 1];
            let mut want = 0u64;
            for (i, &c) in g.iter().enumerate() {
                want = addm(want, mulm(c, powm(a, i as u64, q), q), q);
            }
            assert_eq!(resultant_mod(&f, &g, q), want);
        }
    }

    #[test]
    fn crt_combine_balanced() {
        let primes: Vec<u64> = crt_primes(0).take(2).collect();
        let value = BigInt::from(-123456789i64);
        let residues: Vec<(u64, u64)> = primes
            .iter()
            .map(|&q| {
                let mut r = &value % q;
                if r.is_negative() {
                    r += q;
                }
                (q, r.to_u64().unwrap())
            })
            .collect();
        assert_eq!(crt_combine(&residues), value);
    }
}
