use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer polynomial, lowest power first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the sign of every coefficient is kept.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive with a positive leading coefficient.
    pub fn primitive_positive(&self) -> Self {
        let p = self.primitive();
        if p.leading_coeff().is_some_and(Signed::is_negative) {
            -&p
        } else {
            p
        }
    }

    pub fn mul_scalar(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Pseudo-division by `divisor`, multiplying the dividend only by powers
    /// of `|lc(divisor)|`. Returns `(q, r)` with
    /// `|lc|^k · self = q · divisor + r`, so `r` is a positive multiple of the
    /// rational remainder and `q` of the rational quotient.
    pub fn pseudo_div_rem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.coeffs[db].clone();
        let lc_abs = lc.abs();
        let lc_sign = lc.signum();
        let mut r = self.coeffs.clone();
        let mut q: Vec<BigInt> = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.iter().rposition(|c| !c.is_zero()) {
            if dr < db {
                break;
            }
            let lead = r[dr].clone();
            let shift = dr - db;
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            for c in q.iter_mut() {
                *c *= &lc_abs;
            }
            let factor = &lead * &lc_sign;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * d;
            }
            q[shift] += factor;
            debug_assert!(r[dr].is_zero());
        }
        (Self::new(q), Self::new(r))
    }

    /// Sign of the leading coefficient: the sign at `+∞`.
    pub fn sign_at_pos_infinity(&self) -> i8 {
        self.leading_coeff().map_or(0, |c| match c.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        })
    }

    /// Sign at `−∞`: leading sign times `(−1)^deg`.
    pub fn sign_at_neg_infinity(&self) -> i8 {
        let s = self.sign_at_pos_infinity();
        match self.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &IntPolynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        IntPolynomial::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "IntPolynomial[{}]", cs.join(", "))
    }
}
