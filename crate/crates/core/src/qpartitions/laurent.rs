//! Laurent polynomials in t with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Σ c_k t^k, stored densely from the lowest nonzero exponent.
///
/// Invariant: `coeffs` has no zero at either end; the zero polynomial has
/// empty `coeffs` and `low == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// t^exp
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// 1 − t^k
    pub fn one_minus_t_pow(k: i64) -> Self {
        Self::one() - Self::t_pow(k)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// t ↦ t^k for k ≥ 1.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let k = k as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(self.low * k as i64, coeffs)
    }

    /// t ↦ t^{-1}.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(-self.high(), coeffs)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact division by a polynomial whose lowest and highest coefficients
    /// are ±1 (cyclotomic factors, 1 − t^k, t − 1, …). Returns `None` when
    /// the division leaves a remainder.
    pub fn div_exact_unit(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dl = d.coeffs.len();
        let n = self.coeffs.len();
        if n < dl {
            return None;
        }
        let lead = d.coeffs[dl - 1].clone();
        debug_assert!(lead.abs().is_one());
        let mut rem = self.coeffs.clone();
        let qlen = n - dl + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dl - 1] * &lead; // lead = ±1 so c / lead = c * lead
            if c.is_zero() {
                continue;
            }
            for j in 0..dl {
                let t = &c * &d.coeffs[j];
                rem[i + j] -= t;
            }
            q[i] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - d.low, q))
    }

    /// Value of the polynomial at an integer point.
    pub fn eval_int(&self, x: i64) -> BigInt {
        // only used at nonzero x for negative exponents
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low >= 0 {
            acc * BigInt::from(x).pow(self.low as u32)
        } else {
            assert!(x.abs() == 1, "negative exponents only evaluated at ±1");
            acc * BigInt::from(x).pow((-self.low) as u32)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            coeffs[(o.low - low) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + o.low, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (a.is_one(), e) {
                (_, 0) => write!(f, "{a}")?,
                (true, 1) => write!(f, "t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 1) => write!(f, "{a}*t")?,
                (false, _) => write!(f, "{a}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_trim() {
        let a = LaurentPoly::from_i64s(-1, &[1, 0, 2]); // t^-1 + 2t
        let b = LaurentPoly::from_i64s(-1, &[-1]);
        assert_eq!(&a + &b, LaurentPoly::from_i64s(1, &[2]));
        assert_eq!((&a - &a), LaurentPoly::zero());
        let p = &a * &LaurentPoly::from_i64s(1, &[1]);
        assert_eq!(p, LaurentPoly::from_i64s(0, &[1, 0, 2]));
    }

    #[test]
    fn exact_division() {
        let p = LaurentPoly::one_minus_t_pow(6);
        let d = LaurentPoly::one_minus_t_pow(2);
        let q = p.div_exact_unit(&d).unwrap();
        assert_eq!(q, LaurentPoly::from_i64s(0, &[1, 0, 1, 0, 1]));
        assert!(LaurentPoly::one_minus_t_pow(3).div_exact_unit(&d).is_none());
    }

    #[test]
    fn substitution_and_inversion() {
        let p = LaurentPoly::from_i64s(1, &[1, 0, -1]); // t - t^3
        assert_eq!(p.substitute_power(2), LaurentPoly::from_i64s(2, &[1, 0, 0, 0, -1]));
        assert_eq!(p.invert_variable(), LaurentPoly::from_i64s(-3, &[-1, 0, 1]));
        assert_eq!(p.eval_at_one(), BigInt::zero());
    }
}
