//! Sturm sequences over primitive integer polynomials.
//!
//! `f₀ = f`, `f₁ = f′`, `f_{i+1} = −rem(f_{i−1}, f_i)`, each member rescaled by
//! a positive factor to a primitive integer polynomial. Positive scaling
//! leaves every sign variation count unchanged. For squarefree `f` the
//! number of distinct real roots is `V(−∞) − V(+∞)`.

use thiserror::Error;

use super::IntPolynomial;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infinity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Wraps an already computed sequence; no checks are made.
    pub fn from_polys(polys: Vec<IntPolynomial>) -> Self {
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut a = a.primitive();
    let mut b = b.primitive();
    while !b.is_zero() {
        let r = a.pseudo_div_rem(&b).1.primitive();
        a = b;
        b = r;
    }
    a.primitive_positive()
}

/// `f / gcd(f, f′)`, primitive with positive leading coefficient.
pub fn squarefree_part(f: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = gcd(f, &f.derivative());
    Ok(f.pseudo_div_rem(&g).0.primitive_positive())
}

pub fn sturm_chain(f: &IntPolynomial) -> Result<SturmChain, PolyError> {
    let f0 = squarefree_part(f)?;
    let mut polys = vec![f0];
    let f1 = polys[0].derivative().primitive();
    if f1.is_zero() {
        return Ok(SturmChain { polys });
    }
    polys.push(f1);
    loop {
        let n = polys.len();
        let r = polys[n - 2].pseudo_div_rem(&polys[n - 1]).1;
        if r.is_zero() {
            break;
        }
        polys.push((-&r).primitive());
    }
    Ok(SturmChain { polys })
}

/// Sign changes in a sequence, zeros skipped.
pub fn sign_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

pub fn sign_variations_at_infinity(chain: &SturmChain, at: Infinity) -> usize {
    sign_variations(chain.polys.iter().map(|f| match at {
        Infinity::Positive => f.sign_at_pos_infinity(),
        Infinity::Negative => f.sign_at_neg_infinity(),
    }))
}

/// Number of distinct real roots; constants have none.
pub fn count_distinct_real_roots(f: &IntPolynomial) -> Result<usize, PolyError> {
    let chain = sturm_chain(f)?;
    Ok(sign_variations_at_infinity(&chain, Infinity::Negative) - sign_variations_at_infinity(&chain, Infinity::Positive))
}

/// True iff every complex root of `f` is real. Nonzero constants qualify.
pub fn is_real_rooted(f: &IntPolynomial) -> Result<bool, PolyError> {
    let sq = squarefree_part(f)?;
    let degree = sq.degree().unwrap_or(0);
    if degree == 0 {
        return Ok(true);
    }
    Ok(count_distinct_real_roots(&sq)? == degree)
}
