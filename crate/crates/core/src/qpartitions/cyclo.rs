//! Rational functions whose denominators are products of cyclotomic
//! polynomials. Every quantity produced by the vertex sum has this shape
//! (denominators are products of 1 − t^k), and reduction only needs exact
//! division by Φ_d, so no polynomial gcd is ever computed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::qrational::QRational;
use crate::error::{Error, Result};

static CYCLOTOMIC: OnceLock<RwLock<HashMap<u32, LaurentPoly>>> = OnceLock::new();

/// The cyclotomic polynomial Φ_d.
pub fn cyclotomic(d: u32) -> LaurentPoly {
    assert!(d >= 1);
    let table = CYCLOTOMIC.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = table.read().unwrap().get(&d) {
        return p.clone();
    }
    // Φ_d = (t^d − 1) / Π_{e | d, e < d} Φ_e
    let mut p = LaurentPoly::t_pow(d as i64) - LaurentPoly::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p.div_exact_unit(&cyclotomic(e)).expect("cyclotomic factor");
        }
    }
    table.write().unwrap().insert(d, p.clone());
    p
}

/// Φ_d(1): p when d = p^k (d > 1), 0 for d = 1, else 1.
fn cyclotomic_at_one(d: u32) -> BigInt {
    cyclotomic(d).eval_at_one()
}

/// num / (scale · Π_d Φ_d^{m_d}) in canonical form: no Φ_d of the
/// denominator divides the numerator, `scale > 0`, and the content of the
/// numerator is coprime to `scale`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloRational {
    num: LaurentPoly,
    scale: BigInt,
    den: BTreeMap<u32, u32>,
}

impl Default for CycloRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl CycloRational {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), scale: BigInt::one(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, scale: BigInt::one(), den: BTreeMap::new() }
    }

    pub fn t_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::t_pow(k))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self {
            num: LaurentPoly::monomial(r.numer().clone(), 0),
            scale: r.denom().clone(),
            den: BTreeMap::new(),
        }
        .normalized()
    }

    /// p / Π_k (1 − t^k) over the listed k (with repetition).
    pub fn over_one_minus(p: LaurentPoly, ks: &[u32]) -> Self {
        let mut den = BTreeMap::new();
        let mut sign_flip = false;
        for &k in ks {
            // 1 − t^k = −Π_{d | k} Φ_d
            sign_flip ^= true;
            for d in 1..=k {
                if k % d == 0 {
                    *den.entry(d).or_insert(0) += 1;
                }
            }
        }
        let num = if sign_flip { -p } else { p };
        Self { num, scale: BigInt::one(), den }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn cyclotomic_denominator(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let ds: Vec<u32> = self.den.keys().copied().collect();
        for d in ds {
            let phi = cyclotomic(d);
            let m = self.den.get_mut(&d).unwrap();
            while *m > 0 {
                match self.num.div_exact_unit(&phi) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
            if *m == 0 {
                self.den.remove(&d);
            }
        }
        let g = self.num.content().gcd(&self.scale);
        if !g.is_one() {
            self.num = self.num.div_scalar_exact(&g);
            self.scale /= &g;
        }
        self
    }

    /// Multiplies the numerator up to the denominator `target` (which must
    /// dominate `self.den`).
    fn lift_to(&self, target: &BTreeMap<u32, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (&d, &m) in target {
            let have = self.den.get(&d).copied().unwrap_or(0);
            for _ in have..m {
                num = &num * &cyclotomic(d);
            }
        }
        num
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (&d, &m) in &o.den {
            let e = den.entry(d).or_insert(0);
            *e = (*e).max(m);
        }
        let scale = self.scale.lcm(&o.scale);
        let a = self.lift_to(&den).scale(&(&scale / &self.scale));
        let b = o.lift_to(&den).scale(&(&scale / &o.scale));
        Self { num: &a + &b, scale, den }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, scale: self.scale.clone(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (&d, &m) in &o.den {
            *den.entry(d).or_insert(0) += m;
        }
        Self { num: &self.num * &o.num, scale: &self.scale * &o.scale, den }.normalized()
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self { num: &self.num * p, scale: self.scale.clone(), den: self.den.clone() }.normalized()
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(r.numer()),
            scale: &self.scale * r.denom(),
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Product of many factors, reduced once at the end.
    pub fn product(factors: &[&CycloRational]) -> Self {
        let mut num = LaurentPoly::one();
        let mut scale = BigInt::one();
        let mut den: BTreeMap<u32, u32> = BTreeMap::new();
        for f in factors {
            if f.is_zero() {
                return Self::zero();
            }
            num = &num * &f.num;
            scale *= &f.scale;
            for (&d, &m) in &f.den {
                *den.entry(d).or_insert(0) += m;
            }
        }
        Self { num, scale, den }.normalized()
    }

    /// Sum of many terms over their least common denominator, reduced once.
    pub fn sum(terms: &[CycloRational]) -> Self {
        let terms: Vec<&CycloRational> = terms.iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let mut den: BTreeMap<u32, u32> = BTreeMap::new();
        let mut scale = BigInt::one();
        for t in &terms {
            for (&d, &m) in &t.den {
                let e = den.entry(d).or_insert(0);
                *e = (*e).max(m);
            }
            scale = scale.lcm(&t.scale);
        }
        let mut num = LaurentPoly::zero();
        for t in &terms {
            let lifted = t.lift_to(&den).scale(&(&scale / &t.scale));
            num = &num + &lifted;
        }
        Self { num, scale, den }.normalized()
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), scale: self.scale.clone(), den: self.den.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// t ↦ t⁻¹. Φ_d is palindromic for d ≥ 2, and Φ_1(1/t) = −t⁻¹Φ_1(t).
    pub fn invert_variable(&self) -> Self {
        let mut num = self.num.invert_variable();
        for (&d, &m) in &self.den {
            let deg = cyclotomic(d).high();
            // Φ_d(1/t) = ±t^{-deg} Φ_d(t): 1/Φ_d(1/t) = ±t^{deg}/Φ_d(t)
            num = num.shift(deg * m as i64);
            if d == 1 && m % 2 == 1 {
                num = -num;
            }
        }
        Self { num, scale: self.scale.clone(), den: self.den.clone() }.normalized()
    }

    /// Exact value at t = 1.
    pub fn limit_at_one(&self) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if let Some(&m) = self.den.get(&1) {
            return Err(Error::PoleAtOne(m));
        }
        let t_minus_one = LaurentPoly::from_i64s(0, &[-1, 1]);
        let mut num = self.num.clone();
        let mut zero_order = 0;
        while num.eval_at_one().is_zero() {
            num = num.div_exact_unit(&t_minus_one).unwrap();
            zero_order += 1;
        }
        if zero_order > 0 {
            return Ok(BigRational::zero());
        }
        let mut den = self.scale.clone();
        for (&d, &m) in &self.den {
            den *= cyclotomic_at_one(d).pow(m);
        }
        Ok(BigRational::new(num.eval_at_one(), den))
    }

    /// The same value as a general reduced rational function.
    pub fn to_qrational(&self) -> QRational {
        let mut den = LaurentPoly::monomial(self.scale.clone(), 0);
        for (&d, &m) in &self.den {
            let phi = cyclotomic(d);
            for _ in 0..m {
                den = &den * &phi;
            }
        }
        QRational::new(self.num.clone(), den).expect("nonzero denominator")
    }

    /// Total degree of the denominator polynomial.
    pub fn denominator_degree(&self) -> i64 {
        self.den.iter().map(|(&d, &m)| cyclotomic(d).high() * m as i64).sum()
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.scale.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut first = true;
        if !self.scale.is_one() || self.den.is_empty() {
            write!(f, "{}", self.scale)?;
            first = false;
        }
        for (d, m) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "Phi{d}")?;
            } else {
                write!(f, "Phi{d}^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl From<&CycloRational> for QRational {
    fn from(c: &CycloRational) -> Self {
        c.to_qrational()
    }
}
