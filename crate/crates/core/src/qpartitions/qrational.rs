//! Exact rational functions in t = q^{1/2}.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A reduced quotient of Laurent polynomials with integer coefficients.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term and positive leading coefficient, numerator and
/// denominator are coprime over Q[t, t⁻¹], and the gcd of all coefficients
/// of both is 1. Equality of values is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

fn coeffs_from(p: &LaurentPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() {
        return Vec::new();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of a by b (coefficient vectors, low → high).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// gcd of two polynomials in Z[t] (coefficient vectors), primitive with
/// positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_part(a);
    let mut b = primitive_part(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        for c in a.iter_mut() {
            *c = -c.clone();
        }
    }
    a
}

/// Exact quotient of polynomials over Z when b divides a over Q and the
/// quotient is integral after content handling; returns quotient·lc-power
/// free result via rational arithmetic.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let db = b.len() - 1;
    let lb = BigRational::from_integer(b[db].clone());
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lb;
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * BigRational::from_integer(bc.clone());
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    // results here are always integral because b is primitive and divides a
    q.into_iter().map(|c| c.to_integer()).collect()
}

impl QRational {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }.normalized()
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(BigInt::from(n), 0))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            LaurentPoly::monomial(r.numer().clone(), 0),
            LaurentPoly::monomial(r.denom().clone(), 0),
        )
        .unwrap()
    }

    /// t^k
    pub fn t_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::t_pow(k))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(self) -> Self {
        let Self { mut num, mut den } = self;
        if num.is_zero() {
            return Self::zero();
        }
        // move powers of t out of the denominator
        num = num.shift(-den.low());
        den = den.shift(-den.low());
        let shift = num.low();
        let n = coeffs_from(&num);
        let d = coeffs_from(&den);
        let g = poly_gcd(&n, &d);
        let (mut n, mut d) = if g.len() > 1 {
            (poly_div_exact(&n, &g), poly_div_exact(&d, &g))
        } else {
            (n, d)
        };
        let c = content(&n).gcd(&content(&d));
        if !c.is_one() {
            n.iter_mut().for_each(|x| *x = &*x / &c);
            d.iter_mut().for_each(|x| *x = &*x / &c);
        }
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|x| *x = -x.clone());
            d.iter_mut().for_each(|x| *x = -x.clone());
        }
        let den = LaurentPoly::from_coeffs(0, d);
        let num = LaurentPoly::from_coeffs(shift, n);
        // den may have acquired a zero constant term only if g did; renormalize
        if den.low() != 0 {
            return Self { num, den }.normalized();
        }
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// t ↦ t^k (the multi-cover change q ↦ q^k).
    pub fn substitute(&self, k: u32) -> Self {
        Self { num: self.num.substitute_power(k), den: self.den.substitute_power(k) }.normalized()
    }

    /// t ↦ t⁻¹.
    pub fn invert_variable(&self) -> Self {
        Self { num: self.num.invert_variable(), den: self.den.invert_variable() }.normalized()
    }

    /// Exact value at t = 1, cancelling removable factors of (t − 1).
    pub fn limit_at_one(&self) -> Result<BigRational> {
        let t_minus_one = LaurentPoly::from_i64s(0, &[-1, 1]);
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut order: i64 = 0;
        while !den.is_zero() && den.eval_at_one().is_zero() {
            den = den.div_exact_unit(&t_minus_one).unwrap();
            order += 1;
        }
        while !num.is_zero() && num.eval_at_one().is_zero() {
            num = num.div_exact_unit(&t_minus_one).unwrap();
            order -= 1;
        }
        if num.is_zero() {
            return Ok(BigRational::zero());
        }
        if order > 0 {
            return Err(Error::PoleAtOne(order as u32));
        }
        if order < 0 {
            return Ok(BigRational::zero());
        }
        Ok(BigRational::new(num.eval_at_one(), den.eval_at_one()))
    }

    /// Laurent expansion around t = 0, coefficients for exponents up to and
    /// including `max_exp`, as `(lowest exponent, coefficients)`.
    pub fn series(&self, max_exp: i64) -> (i64, Vec<BigRational>) {
        let low = self.num.low();
        if self.num.is_zero() || max_exp < low {
            return (low, Vec::new());
        }
        let len = (max_exp - low + 1) as usize;
        let d0 = BigRational::from_integer(self.den.coeff(0));
        let den: Vec<BigRational> =
            (0..len as i64).map(|i| BigRational::from_integer(self.den.coeff(i))).collect();
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = BigRational::from_integer(self.num.coeff(low + i as i64));
            for j in 1..=i {
                if !den[j].is_zero() {
                    acc -= &den[j] * &out[i - j];
                }
            }
            out.push(acc / &d0);
        }
        (low, out)
    }

    /// Whether the expansion agrees with `other` through t^max_exp.
    pub fn agrees_to_order(&self, other: &QRational, max_exp: i64) -> bool {
        let diff = self - other;
        let (low, c) = diff.series(max_exp);
        let _ = low;
        c.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric_under_inversion(&self) -> bool {
        self.invert_variable() == *self
    }
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, o: &QRational) -> QRational {
        if self.den == o.den {
            return QRational { num: &self.num + &o.num, den: self.den.clone() }.normalized();
        }
        QRational { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
            .normalized()
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, o: &QRational) -> QRational {
        self + &(-o)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, o: &QRational) -> QRational {
        QRational { num: &self.num * &o.num, den: &self.den * &o.den }.normalized()
    }
}

impl Div for &QRational {
    type Output = Result<QRational>;
    fn div(self, o: &QRational) -> Result<QRational> {
        QRational::new(&self.num * &o.den, &self.den * &o.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for QRational {
            type Output = QRational;
            fn $f(self, o: QRational) -> QRational {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A rational function together with an optional truncation order used
/// when comparing against truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeriesCap {
    pub value: QRational,
    pub order: Option<i64>,
}

impl QSeriesCap {
    /// Exact equality, or series agreement through the tighter of the two
    /// truncation orders when either is set.
    pub fn matches(&self, other: &QSeriesCap) -> bool {
        match (self.order, other.order) {
            (None, None) => self.value == other.value,
            (a, b) => {
                let ord = a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX));
                self.value.agrees_to_order(&other.value, ord)
            }
        }
    }
}
