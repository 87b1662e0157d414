use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with exact rational coefficients, lowest
/// power first. Trailing zeros are trimmed; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    /// `Σ cᵢ tⁱ` from `(num, den)` pairs.
    pub fn from_fractions(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    /// `Σ (nᵢ / d) tⁱ`.
    pub fn from_scaled_integers(numerators: Vec<BigInt>, denominator: &BigInt) -> Self {
        Self::new(numerators.into_iter().map(|n| BigRational::new(n, denominator.clone())).collect())
    }

    /// `C(t + a, k) = (t + a)(t + a − 1)…(t + a − k + 1) / k!` expanded in `t`.
    pub fn binomial(a: i64, k: usize) -> Self {
        let factorial = (1..=k).fold(BigInt::one(), |acc, j| acc * j);
        Self::from_scaled_integers(falling_product(a, k), &factorial)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `tⁱ`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval_ints(t..=t).pop().expect("one point")
    }

    /// Values at each integer of `ts`.
    pub fn eval_ints(&self, ts: impl IntoIterator<Item = i64>) -> Vec<BigRational> {
        let (nums, den) = self.integer_numerators();
        ts.into_iter()
            .map(|t| {
                let t = BigInt::from(t);
                let value = nums.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c);
                BigRational::new(value, den.clone())
            })
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `f(t + a)`.
    pub fn shift(&self, a: i64) -> Self {
        let (mut c, den) = self.integer_numerators();
        // Taylor shift by repeated synthetic division.
        let a = BigInt::from(a);
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let carry = &c[j + 1] * &a;
                c[j] += carry;
            }
        }
        Self::from_scaled_integers(c, &den)
    }

    /// Coefficients over their least common denominator.
    fn integer_numerators(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (nums, den)
    }

    /// True iff every coefficient is `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as lowest-terms `num/den` tokens, ascending power.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }
}

/// Integer coefficients of `(t + a)(t + a − 1)…(t + a − k + 1)`, ascending.
pub(crate) fn falling_product(a: i64, k: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for j in 0..k {
        let root = BigInt::from(a - j as i64);
        poly.push(BigInt::zero());
        for i in (0..poly.len()).rev() {
            let lower = if i > 0 { poly[i - 1].clone() } else { BigInt::zero() };
            poly[i] = &poly[i] * &root + lower;
        }
    }
    poly
}

/// `num/den` in lowest terms, denominator always printed.
pub fn fraction_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial[{}]", self.to_fraction_strings().join(", "))
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}*t^{i}")?,
            }
        }
        Ok(())
    }
}
