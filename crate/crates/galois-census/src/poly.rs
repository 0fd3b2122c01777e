//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending degree order: `coeffs[i]` is the
//! coefficient of x^i. The representation is canonical: the vector is empty
//! for the zero polynomial, and the last element is nonzero otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Arbitrary-precision signed integer; exact, no rounding or overflow.
pub type ExactInteger = BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} is below the required minimum {required}")]
    DegreeTooLow { degree: usize, required: usize },
    #[error("operation requires a monic polynomial")]
    NotMonic,
}

/// A dense univariate polynomial over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x^deg.
    pub fn x_power(deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = BigInt::one();
        IntPolynomial { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Ascending coefficient slice; index i holds the coefficient of x^i.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient of `self / divisor` when the division is exact, else `None`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dn, dd) = (self.degree()?, divisor.degree()?);
        if dn < dd {
            return None;
        }
        let lead = divisor.leading_coeff()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder: lc(d)^(deg n - deg d + 1) * n = q*d + r with deg r < deg d.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let mut rem = self.clone();
        let lead = divisor.leading_coeff().unwrap().clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let top = rem.leading_coeff().unwrap().clone();
            // rem = lead*rem - top * x^shift * divisor
            let mut next = vec![BigInt::zero(); dr + 1];
            for (i, c) in rem.coeffs.iter().enumerate() {
                next[i] = c * &lead;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                next[shift + j] -= &top * c;
            }
            rem = Self::new(next);
        }
        rem
    }

    /// Gcd of all coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content, sign-normalized to a
    /// nonnegative leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Primitive gcd via the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.divide_exact(&g)
            .expect("gcd(p, p') divides p exactly")
    }

    /// Upper bound on the modulus of every complex root (Cauchy bound).
    pub fn root_bound_f64(&self) -> f64 {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return 0.0,
        };
        let lead = bigint_to_f64_abs(&self.coeffs[d]);
        let max = self.coeffs[..d]
            .iter()
            .map(bigint_to_f64_abs)
            .fold(0.0f64, f64::max);
        1.0 + max / lead
    }

    /// Bit length of the largest |coefficient|.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

pub(crate) fn bigint_to_f64_abs(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.abs().to_f64().unwrap_or(f64::MAX)
}

impl fmt::Display for IntPolynomial {
    /// Ascending coefficient text form: `"-1 -3 0 1"` is x^3 - 3x - 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid polynomial coefficient string: {0}")]
pub struct ParsePolyError(String);

impl FromStr for IntPolynomial {
    type Err = ParsePolyError;

    /// Parses whitespace- or comma-separated ascending coefficients.
    /// An optional leading '+' per coefficient is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let tok = tok.strip_prefix('+').unwrap_or(tok);
            let c = BigInt::from_str(tok).map_err(|_| ParsePolyError(s.to_string()))?;
            coeffs.push(c);
        }
        if coeffs.is_empty() {
            return Err(ParsePolyError(s.to_string()));
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Resultant of two nonzero polynomials: the determinant of their Sylvester
/// matrix, computed exactly by Chinese-remaindering resultants over word-size
/// prime fields. The prime count is driven by a Hadamard bound, so the result
/// is exact, not heuristic.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> Result<BigInt, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    if dp == 0 {
        return Ok(p.coeffs[0].pow(dq as u32));
    }
    if dq == 0 {
        return Ok(q.coeffs[0].pow(dp as u32));
    }
    let bound_bits = sylvester_hadamard_bits(p, q);
    Ok(crate::modp::crt_resultant(p, q, bound_bits))
}

/// log2 upper bound on |det Sylvester(p, q)| via Hadamard's inequality.
fn sylvester_hadamard_bits(p: &IntPolynomial, q: &IntPolynomial) -> u64 {
    let row_bits = |poly: &IntPolynomial| -> f64 {
        // ||row||_2^2 <= (deg+1) * max|c|^2
        let max_bits = poly.max_coeff_bits() as f64;
        max_bits + 0.5 * ((poly.coeffs.len() as f64).log2())
    };
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    let total = dq as f64 * row_bits(p) + dp as f64 * row_bits(q);
    total.ceil() as u64 + 2
}

/// Discriminant of a monic polynomial of degree >= 2:
/// (-1)^(d(d-1)/2) * res(p, p').
pub fn discriminant(p: &IntPolynomial) -> Result<BigInt, PolyError> {
    let d = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if d < 2 {
        return Err(PolyError::DegreeTooLow {
            degree: d,
            required: 2,
        });
    }
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let r = resultant(p, &p.derivative())?;
    if (d * (d - 1) / 2) % 2 == 1 {
        Ok(-r)
    } else {
        Ok(r)
    }
}

/// True iff p (monic, deg >= 1) has no repeated complex root.
pub fn is_squarefree(p: &IntPolynomial) -> Result<bool, PolyError> {
    let d = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if d == 0 {
        return Err(PolyError::DegreeTooLow {
            degree: 0,
            required: 1,
        });
    }
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if d == 1 {
        return Ok(true);
    }
    Ok(!discriminant(p)?.is_zero())
}

/// True iff n >= 0 and floor(sqrt(n))^2 = n.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
