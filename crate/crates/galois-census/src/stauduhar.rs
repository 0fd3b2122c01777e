//! Group resolvents: multivariate invariants belonging to subgroups of S_d,
//! the resolvent Q_G(p) formed over right-coset representatives, and the
//! integral-root criterion, specialized to the alternating group.
//!
//! For G = A_d the resolvent is x^2 - disc(p), realized exactly through the
//! difference-product invariant whose square is the discriminant. The general
//! numeric path evaluates an invariant at certified root balls under each
//! coset representative, expands the product, and rounds each coefficient
//! once its certified error bound is below 1/2.

use crate::balls::{
    poly_from_root_balls, round_coeffs_to_integers, with_precision_ladder, Ball,
    PrecisionExhausted, MAX_PRECISION_BITS, START_PRECISION_BITS,
};
use crate::poly::{discriminant, is_perfect_square, is_squarefree, IntPolynomial, PolyError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolventError {
    #[error("resolvent construction requires a squarefree polynomial")]
    NotSquarefree,
    #[error("permutation list is not a group: {0}")]
    NotAGroup(&'static str),
    #[error(transparent)]
    Precision(#[from] PrecisionExhausted),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A permutation of {0..d-1}; `images[i]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    /// Builds from an image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..d).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// self then other is `other.compose(&self)`; this returns
    /// (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0usize; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }
}

pub fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if k == items.len() {
            out.push(Permutation {
                images: items.clone(),
            });
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(k + 1, items, out);
            items.swap(k, i);
        }
    }
    rec(0, &mut items, &mut out);
    out
}

pub fn alternating_group(d: usize) -> Vec<Permutation> {
    all_permutations(d)
        .into_iter()
        .filter(Permutation::is_even)
        .collect()
}

/// Checks closure under composition, presence of the identity, and
/// distinctness; for finite sets this implies inverses exist.
pub fn is_group(perms: &[Permutation]) -> Result<(), ResolventError> {
    if perms.is_empty() {
        return Err(ResolventError::NotAGroup("empty list"));
    }
    let set: HashSet<&Permutation> = perms.iter().collect();
    if set.len() != perms.len() {
        return Err(ResolventError::NotAGroup("duplicate elements"));
    }
    if !perms.iter().any(Permutation::is_identity) {
        return Err(ResolventError::NotAGroup("missing identity"));
    }
    for a in perms {
        for b in perms {
            if !set.contains(&a.compose(b)) {
                return Err(ResolventError::NotAGroup("not closed under composition"));
            }
        }
    }
    Ok(())
}

/// Right-coset representatives of a subgroup in S_d.
pub fn right_coset_representatives(group: &[Permutation], d: usize) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for pi in all_permutations(d) {
        if seen.contains(&pi) {
            continue;
        }
        for g in group {
            seen.insert(g.compose(&pi));
        }
        reps.push(pi);
    }
    reps
}

/// Describes the stabilizer a `GroupInvariant` belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Alternating { degree: usize },
    Explicit { order: usize },
}

/// A formal integer-coefficient polynomial in x_1..x_d, stored as
/// exponent-vector -> coefficient, together with its stabilizer description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariant {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
    pub group: GroupLabel,
}

impl GroupInvariant {
    /// Applies a permutation to the variables: x_i -> x_{pi(i)}.
    pub fn permuted(&self, pi: &Permutation) -> Self {
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut new_exps = vec![0u32; self.arity];
            for (i, &e) in exps.iter().enumerate() {
                new_exps[pi.apply(i)] = e;
            }
            *terms.entry(new_exps).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        GroupInvariant {
            arity: self.arity,
            terms,
            group: self.group.clone(),
        }
    }

    pub fn is_fixed_by(&self, pi: &Permutation) -> bool {
        self.permuted(pi).terms == self.terms
    }

    /// Brute-force stabilizer in S_d; exponential, for verification at small d.
    pub fn stabilizer(&self) -> Vec<Permutation> {
        all_permutations(self.arity)
            .into_iter()
            .filter(|pi| self.is_fixed_by(pi))
            .collect()
    }

    /// Evaluates at certified root balls.
    pub fn evaluate_balls(&self, roots: &[Ball], prec: u32) -> Ball {
        let mut acc = Ball::exact_int(&BigInt::zero(), prec);
        for (exps, c) in &self.terms {
            let mut term = Ball::exact_int(&BigInt::one(), prec);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&roots[i].pow(e, prec), prec);
                }
            }
            acc = acc.add(&term.mul_int(c));
        }
        acc
    }
}

/// The seed invariant F*(x_1,...,x_d) = prod x_i^i, whose stabilizer is
/// trivial: the building block for group-sum invariants.
pub fn star_invariant(d: usize) -> GroupInvariant {
    assert!(d >= 2, "star invariant needs d >= 2");
    let exps: Vec<u32> = (1..=d as u32).collect();
    let mut terms = BTreeMap::new();
    terms.insert(exps, BigInt::one());
    GroupInvariant {
        arity: d,
        terms,
        group: GroupLabel::Explicit { order: 1 },
    }
}

/// F = sum over sigma in G of sigma(F*): an invariant belonging to exactly G.
pub fn group_sum_invariant(
    d: usize,
    group: &[Permutation],
) -> Result<GroupInvariant, ResolventError> {
    is_group(group)?;
    if group.iter().any(|g| g.degree() != d) {
        return Err(ResolventError::NotAGroup("degree mismatch"));
    }
    let star = star_invariant(d);
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for sigma in group {
        for (exps, c) in star.permuted(sigma).terms {
            *terms.entry(exps).or_insert_with(BigInt::zero) += c;
        }
    }
    Ok(GroupInvariant {
        arity: d,
        terms,
        group: GroupLabel::Explicit { order: group.len() },
    })
}

/// The difference product prod_{i<j} (x_i - x_j), belonging to A_d; its
/// square is the discriminant of a monic polynomial with those roots.
pub fn difference_product_invariant(d: usize) -> GroupInvariant {
    assert!(d >= 2);
    // expand the product of binomials symbolically
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    terms.insert(vec![0u32; d], BigInt::one());
    for i in 0..d {
        for j in i + 1..d {
            let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for (exps, c) in &terms {
                let mut e1 = exps.clone();
                e1[i] += 1;
                *next.entry(e1).or_insert_with(BigInt::zero) += c;
                let mut e2 = exps.clone();
                e2[j] += 1;
                *next.entry(e2).or_insert_with(BigInt::zero) -= c;
            }
            next.retain(|_, c| !c.is_zero());
            terms = next;
        }
    }
    GroupInvariant {
        arity: d,
        terms,
        group: GroupLabel::Alternating { degree: d },
    }
}

/// A resolvent polynomial Q_G(p) over the right cosets of G in S_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventPolynomial {
    pub source: IntPolynomial,
    pub group: GroupLabel,
    pub resolvent: IntPolynomial,
    pub coset_count: usize,
}

/// The exact degree-2 resolvent for the index-2 subgroup A_d:
/// Q_{A_d}(p) = x^2 - disc(p).
pub fn alternating_resolvent(p: &IntPolynomial) -> Result<ResolventPolynomial, ResolventError> {
    let disc = discriminant(p)?;
    if disc.is_zero() {
        return Err(ResolventError::NotSquarefree);
    }
    let d = p.degree().unwrap();
    let resolvent = IntPolynomial::new(vec![-disc, BigInt::zero(), BigInt::one()]);
    Ok(ResolventPolynomial {
        source: p.clone(),
        group: GroupLabel::Alternating { degree: d },
        resolvent,
        coset_count: 2,
    })
}

/// Numeric resolvent over explicit coset representatives: evaluates the
/// invariant at certified root approximations under each representative,
/// expands the product, and rounds coefficients under certified error
/// bounds. Starts at 64 bits of working precision, doubling to a hard
/// ceiling of 2^16 bits.
pub fn numeric_resolvent(
    p: &IntPolynomial,
    invariant: &GroupInvariant,
    cosets: &[Permutation],
) -> Result<ResolventPolynomial, ResolventError> {
    numeric_resolvent_with_precision(p, invariant, cosets, START_PRECISION_BITS)
}

/// As `numeric_resolvent` with an explicit starting precision (the certified
/// result is independent of it).
pub fn numeric_resolvent_with_precision(
    p: &IntPolynomial,
    invariant: &GroupInvariant,
    cosets: &[Permutation],
    start_bits: u32,
) -> Result<ResolventPolynomial, ResolventError> {
    if !p.is_monic() {
        return Err(PolyError::NotMonic.into());
    }
    if !is_squarefree(p)? {
        return Err(ResolventError::NotSquarefree);
    }
    let coeffs = with_precision_ladder(p, start_bits, MAX_PRECISION_BITS, |roots, prec| {
        let values: Vec<Ball> = cosets
            .iter()
            .map(|pi| {
                let permuted_roots: Vec<Ball> =
                    (0..p.degree().unwrap()).map(|i| roots[pi.apply(i)].clone()).collect();
                invariant.evaluate_balls(&permuted_roots, prec)
            })
            .collect();
        round_coeffs_to_integers(&poly_from_root_balls(&values, prec), prec)
    })?;
    Ok(ResolventPolynomial {
        source: p.clone(),
        group: invariant.group.clone(),
        resolvent: IntPolynomial::new(coeffs),
        coset_count: cosets.len(),
    })
}

/// Integral-root search by the rational root theorem for low degrees and by
/// certified root isolation of the squarefree part above degree 2. Returns
/// the witness root, preferring a nonnegative one.
pub fn has_integer_root(q: &IntPolynomial) -> (bool, Option<BigInt>) {
    assert!(!q.is_zero(), "integral-root search needs a nonzero polynomial");
    let deg = q.degree().unwrap();
    if deg == 0 {
        return (false, None);
    }
    if q.constant_term().is_zero() {
        return (true, Some(BigInt::zero()));
    }
    let mut candidates: Vec<BigInt> = Vec::new();
    match deg {
        1 => {
            let (quot, rem) = num_integer::Integer::div_rem(&(-q.coeff(0)), &q.coeff(1));
            if rem.is_zero() {
                candidates.push(quot);
            }
        }
        2 => {
            let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            if !disc.is_negative() && is_perfect_square(&disc) {
                let s = disc.sqrt();
                for root_num in [-&b + &s, -&b - &s] {
                    let (z, rem) =
                        num_integer::Integer::div_rem(&root_num, &(BigInt::from(2) * &a));
                    if rem.is_zero() {
                        candidates.push(z);
                    }
                }
            }
        }
        _ => {
            // Isolate the roots of the monicized squarefree part and test the
            // unique integer near each real root exactly.
            let sf = q.squarefree_part();
            let lc = sf.leading_coeff().unwrap().clone();
            let dsf = sf.degree().unwrap();
            // monicize via y = lc*x: integer roots of q are y/lc for integer
            // roots y of the transform
            let monic = {
                let mut cs: Vec<BigInt> = (0..dsf)
                    .map(|i| sf.coeff(i) * lc.pow((dsf - 1 - i) as u32))
                    .collect();
                cs.push(BigInt::one());
                IntPolynomial::new(cs)
            };
            let found = with_precision_ladder(
                &monic,
                START_PRECISION_BITS,
                MAX_PRECISION_BITS,
                |roots, prec| {
                    let mut zs = Vec::new();
                    for ball in roots {
                        if ball.rad >= 0.49 {
                            return None;
                        }
                        let (n, _, _) = ball.nearest_integer(prec);
                        let (z, rem) = num_integer::Integer::div_rem(&n, &lc);
                        if rem.is_zero() && q.evaluate(&z).is_zero() {
                            zs.push(z);
                        }
                    }
                    Some(zs)
                },
            );
            if let Ok(zs) = found {
                candidates.extend(zs);
            }
        }
    }
    candidates.retain(|z| q.evaluate(z).is_zero());
    candidates.sort_by_key(|z| (z.abs(), z.is_negative()));
    candidates.dedup();
    match candidates.into_iter().next() {
        Some(z) => (true, Some(z)),
        None => (false, None),
    }
}

/// Integral-root verdict for a resolvent, surfacing whether the witness is a
/// simple root (the criterion is only a containment test for simple roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventVerdict {
    pub has_integer_root: bool,
    pub witness: Option<BigInt>,
    pub root_simple: Option<bool>,
}

pub fn resolvent_verdict(r: &ResolventPolynomial) -> ResolventVerdict {
    let (has, witness) = has_integer_root(&r.resolvent);
    let root_simple = witness
        .as_ref()
        .map(|z| !r.resolvent.derivative().evaluate(z).is_zero());
    ResolventVerdict {
        has_integer_root: has,
        witness,
        root_simple,
    }
}
