//! Order polynomials, Ehrhart polynomials of order polytopes and their
//! h*-vectors.
//!
//! `Ω_P(t)` counts order-preserving maps `P → [t]`, and the order polytope
//! satisfies `ehr(O(P), t) = Ω_P(t + 1)`. The h*-vector is defined by
//! `ehr(O(P), t) = Σᵢ hᵢ·C(t + p − i, p)`.

mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poset::{order_ideals, Poset};

use poly::falling_product;
pub use poly::{fraction_string, RatPolynomial};

/// Which order-polynomial algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    /// Sum over linear extensions grouped by descent count.
    Linear,
    /// Multichain counting over the lattice of order ideals plus
    /// interpolation.
    Ideals,
    /// `Linear` up to [`AUTO_LINEAR_MAX`] elements, `Ideals` above.
    #[default]
    Auto,
}

/// Largest poset handled by the linear algorithm under [`Algorithm::Auto`].
pub const AUTO_LINEAR_MAX: usize = 6;

impl Algorithm {
    pub fn resolve(self, p: usize) -> Algorithm {
        match self {
            Algorithm::Auto if p <= AUTO_LINEAR_MAX => Algorithm::Linear,
            Algorithm::Auto => Algorithm::Ideals,
            a => a,
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Algorithm::Linear),
            "ideals" => Ok(Algorithm::Ideals),
            "auto" => Ok(Algorithm::Auto),
            other => Err(format!("unknown algorithm `{other}` (expected linear, ideals or auto)")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Linear => "linear",
            Algorithm::Ideals => "ideals",
            Algorithm::Auto => "auto",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HStarError {
    #[error("Ehrhart polynomial has degree {found:?}, expected {expected}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("h*_{index} = {value} is not an integer")]
    NotInteger { index: usize, value: String },
    #[error("h*_{index} = {value} is negative")]
    NegativeEntry { index: usize, value: BigInt },
    #[error("h*_0 = {0}, expected 1")]
    BadConstant(BigInt),
}

/// Coefficients `(h₀, …, h_p)` of the h*-polynomial; nonnegative integers
/// with `h₀ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HStarVector {
    h: Vec<BigInt>,
}

impl HStarVector {
    pub fn new(h: Vec<BigInt>) -> Result<Self, HStarError> {
        if let Some((index, value)) = h.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(HStarError::NegativeEntry { index, value: value.clone() });
        }
        match h.first() {
            Some(h0) if h0.is_one() => Ok(HStarVector { h }),
            Some(h0) => Err(HStarError::BadConstant(h0.clone())),
            None => Err(HStarError::BadConstant(BigInt::zero())),
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn sum(&self) -> BigInt {
        self.h.iter().sum()
    }

    /// Index of the last nonzero entry.
    pub fn top_degree(&self) -> usize {
        self.h.iter().rposition(|v| !v.is_zero()).unwrap_or(0)
    }

    /// Entries `h₀ … h_s` with `s` the top nonzero index.
    pub fn truncated(&self) -> &[BigInt] {
        &self.h[..=self.top_degree()]
    }

    /// `hᵢ = h_{s−i}` over the truncated vector.
    pub fn is_palindromic(&self) -> bool {
        let t = self.truncated();
        t.iter().eq(t.iter().rev())
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.h.iter().map(ToString::to_string).collect()
    }
}

/// Number of linear extensions with `d` descents, `d = 0..p`, under the
/// natural labeling. Entry `p` is always zero.
///
/// Extensions are counted by prefix: the state is the order ideal placed so
/// far plus its last element, so the work grows with the ideal lattice
/// rather than with `e(P)`.
pub fn descent_histogram(poset: &Poset) -> Vec<u64> {
    let p = poset.len();
    let lattice = order_ideals(poset);
    let w = p + 1;
    let stride = p * w;
    let mut dp = vec![0u64; lattice.len() * stride];
    for (x, k) in lattice.covers(0) {
        dp[k * stride + x * w] = 1;
    }
    let mut row = vec![0u64; w];
    // Ideals are sorted numerically, so every cover target comes later.
    for i in 1..lattice.len() {
        for last in 0..p {
            let base = i * stride + last * w;
            row.copy_from_slice(&dp[base..base + w]);
            if row.iter().all(|&n| n == 0) {
                continue;
            }
            for (x, k) in lattice.covers(i) {
                let shift = usize::from(x < last);
                let target = k * stride + x * w + shift;
                for (slot, &n) in dp[target..target + w - shift].iter_mut().zip(&row) {
                    *slot += n;
                }
            }
        }
    }
    let top = (lattice.len() - 1) * stride;
    let mut hist = vec![0u64; w];
    for last in 0..p {
        for (h, &n) in hist.iter_mut().zip(&dp[top + last * w..top + (last + 1) * w]) {
            *h += n;
        }
    }
    hist
}

/// `Ω_P(t)` as an exact polynomial of degree `p`.
pub fn order_polynomial(poset: &Poset, algorithm: Algorithm) -> RatPolynomial {
    match algorithm.resolve(poset.len()) {
        Algorithm::Ideals => order_polynomial_ideals(poset),
        _ => order_polynomial_linear(poset),
    }
}

/// `Ω_P(t) = Σ_w C(t + p − 1 − des(w), p)`, one binomial per descent value.
fn order_polynomial_linear(poset: &Poset) -> RatPolynomial {
    let p = poset.len();
    let mut acc = vec![BigInt::zero(); p + 1];
    for (d, &n) in descent_histogram(poset).iter().enumerate().filter(|(_, &n)| n > 0) {
        let n = BigInt::from(n);
        for (a, c) in acc.iter_mut().zip(falling_product(p as i64 - 1 - d as i64, p)) {
            *a += &n * c;
        }
    }
    RatPolynomial::from_scaled_integers(acc, &factorial(p))
}

/// `Ω_P(t)` for `t = 1..=p+1` from multichains of ideals, then Newton
/// forward differences.
fn order_polynomial_ideals(poset: &Poset) -> RatPolynomial {
    let p = poset.len();
    let values: Vec<BigInt> = order_ideals(poset)
        .multichain_counts(p)
        .into_iter()
        .map(BigInt::from)
        .collect();
    newton_interpolate(&values)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// The polynomial of degree `< n` through `(1, v₀), …, (n, v_{n−1})`:
/// `Σₖ Δᵏv₀ · C(t − 1, k)`, accumulated over the denominator `(n − 1)!`.
pub fn newton_interpolate(values: &[BigInt]) -> RatPolynomial {
    let n = values.len();
    if n == 0 {
        return RatPolynomial::zero();
    }
    let top = factorial(n - 1);
    let mut acc = vec![BigInt::zero(); n];
    let mut diffs = values.to_vec();
    for k in 0..n {
        if !diffs[0].is_zero() {
            // (n−1)!/k! · Δᵏv₀
            let weight = &diffs[0] * (&top / factorial(k));
            for (a, c) in acc.iter_mut().zip(falling_product(-1, k)) {
                *a += &weight * c;
            }
        }
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    RatPolynomial::from_scaled_integers(acc, &top)
}

/// `ehr(O(P), t) = Ω_P(t + 1)`.
pub fn ehrhart_polynomial(poset: &Poset, algorithm: Algorithm) -> RatPolynomial {
    order_polynomial(poset, algorithm).shift(1)
}

/// Solves `ehr(t) = Σᵢ hᵢ·C(t + p − i, p)` from the values at `t = 0..=p`.
///
/// `C(t + p − i, p)` vanishes for `i > t`, so the system is lower triangular
/// with unit diagonal.
pub fn hstar_from_ehrhart(ehr: &RatPolynomial, p: usize) -> Result<HStarVector, HStarError> {
    if ehr.degree() != Some(p) {
        return Err(HStarError::DegreeMismatch { expected: p, found: ehr.degree() });
    }
    let binom = |n: usize, k: usize| -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
    };
    let mut h: Vec<BigInt> = Vec::with_capacity(p + 1);
    for (t, value) in ehr.eval_ints(0..=p as i64).into_iter().enumerate() {
        if !value.is_integer() {
            return Err(HStarError::NotInteger { index: t, value: value.to_string() });
        }
        let mut ht = value.to_integer();
        for (i, hi) in h.iter().enumerate() {
            ht -= hi * binom(t + p - i, p);
        }
        if ht.is_negative() {
            return Err(HStarError::NegativeEntry { index: t, value: ht });
        }
        h.push(ht);
    }
    HStarVector::new(h)
}

/// `hᵢ` = number of linear extensions with `i` descents.
pub fn hstar_from_descents(poset: &Poset) -> HStarVector {
    let h = descent_histogram(poset).into_iter().map(BigInt::from).collect();
    HStarVector::new(h).expect("the identity word is the unique extension without descents")
}

/// True iff every coefficient of `ehr` is nonnegative.
pub fn is_ehrhart_positive(ehr: &RatPolynomial) -> bool {
    ehr.is_nonnegative()
}

/// `e(P) / p!`, the normalized volume of the order polytope.
pub fn expected_leading_coeff(poset: &Poset, num_extensions: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num_extensions.clone()), factorial(poset.len()))
}
