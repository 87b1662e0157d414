//! Exact certification of coefficient properties: real-rootedness by Sturm
//! sequences, log-concavity and unimodality.

mod intpoly;
mod sturm;

use num_bigint::BigInt;

pub use intpoly::IntPolynomial;
pub use sturm::{
    count_distinct_real_roots, is_real_rooted, sign_variations, sign_variations_at_infinity, squarefree_part,
    sturm_chain, Infinity, PolyError, SturmChain,
};

/// `aᵢ² ≥ a_{i−1}·a_{i+1}` at every interior index.
pub fn is_log_concave(coeffs: &[BigInt]) -> bool {
    coeffs.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `a₀ ≤ … ≤ aᵢ ≥ … ≥ a_m` for some peak `i`.
pub fn is_unimodal(coeffs: &[BigInt]) -> bool {
    let mut i = 1;
    while i < coeffs.len() && coeffs[i - 1] <= coeffs[i] {
        i += 1;
    }
    while i < coeffs.len() && coeffs[i - 1] >= coeffs[i] {
        i += 1;
    }
    i >= coeffs.len()
}
