//! Schur and skew Schur functions at the shifted principal specialization
//! x_i = t^{2i − 1 − 2ν_i} (i ≥ 1), i.e. q^{−ν−ρ} with t = q^{1/2}.
//!
//! Skew functions use the Jacobi-Trudi determinant in the complete
//! homogeneous functions h_k. Their generating function factors as
//!
//!   Π_i 1/(1 − x_i z) = Π_{i ≤ ℓ(ν)} (1 − t^{2i−1} z)/(1 − x_i z) · Σ_k z^k t^k / Π_{j ≤ k}(1 − t^{2j})
//!
//! so every h_k is a finite sum of closed-form tail terms.

use std::collections::HashMap;
use std::sync::RwLock;

use super::cyclo::CycloRational;
use super::laurent::LaurentPoly;
use super::partition::Partition;
use super::qrational::QRational;
use crate::error::{Error, Result};

/// s_λ(t, t³, t⁵, …) = t^{|λ| + 2n(λ)} / Π_{cells} (1 − t^{2h}).
pub fn schur_principal_cyclo(lambda: &Partition) -> CycloRational {
    let exp = lambda.size() as i64 + 2 * lambda.n();
    let ks: Vec<u32> = lambda.hooks().into_iter().map(|h| 2 * h).collect();
    CycloRational::over_one_minus(LaurentPoly::t_pow(exp), &ks)
}

/// Principal specialization s_λ(t, t³, t⁵, …) by the hook-length formula.
pub fn schur_principal(lambda: &Partition) -> QRational {
    schur_principal_cyclo(lambda).to_qrational()
}

/// Numerators H_k = h_k · Π_{j ≤ k}(1 − t^{2j}) at the shift ν.
fn h_numerators(shift: &Partition, kmax: usize) -> Vec<LaurentPoly> {
    // coefficients P_j of Π_{i ≤ ℓ(ν)} (1 − a_i z)/(1 − b_i z), j ≤ kmax
    let mut p = vec![LaurentPoly::zero(); kmax + 1];
    p[0] = LaurentPoly::one();
    for (i0, &nu) in shift.parts().iter().enumerate() {
        let i = i0 as i64 + 1;
        let a = 2 * i - 1;
        let b = 2 * i - 1 - 2 * nu as i64;
        // multiply by 1/(1 − t^b z)
        for j in 1..=kmax {
            let prev = p[j - 1].shift(b);
            p[j] = &p[j] + &prev;
        }
        // multiply by (1 − t^a z)
        for j in (1..=kmax).rev() {
            let prev = p[j - 1].shift(a);
            p[j] = &p[j] - &prev;
        }
    }
    (0..=kmax)
        .map(|k| {
            let mut acc = LaurentPoly::zero();
            for (j, pj) in p.iter().enumerate().take(k + 1) {
                if pj.is_zero() {
                    continue;
                }
                let mut term = pj.shift((k - j) as i64);
                for m in (k - j + 1)..=k {
                    term = &term * &LaurentPoly::one_minus_t_pow(2 * m as i64);
                }
                acc = &acc + &term;
            }
            acc
        })
        .collect()
}

/// Determinant of a square matrix of Laurent polynomials by Laplace
/// expansion over column subsets.
fn poly_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut dp: Vec<LaurentPoly> = vec![LaurentPoly::zero(); 1 << n];
    dp[0] = LaurentPoly::one();
    for mask in 1usize..(1 << n) {
        let r = mask.count_ones() as usize - 1;
        let mut acc = LaurentPoly::zero();
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let rest = mask & !(1 << c);
            if dp[rest].is_zero() || m[r][c].is_zero() {
                continue;
            }
            let after = (mask >> (c + 1)).count_ones();
            let term = &m[r][c] * &dp[rest];
            acc = if after % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        dp[mask] = acc;
    }
    dp[(1 << n) - 1].clone()
}

/// s_{λ/η}(x) with x_i = t^{2i−1−2ν_i}, computed without memoization.
pub fn skew_schur_cyclo(outer: &Partition, inner: &Partition, shift: &Partition) -> Result<CycloRational> {
    skew_with(outer, inner, shift, &mut |s, k| h_numerators(s, k))
}

fn skew_with(
    outer: &Partition,
    inner: &Partition,
    shift: &Partition,
    h: &mut dyn FnMut(&Partition, usize) -> Vec<LaurentPoly>,
) -> Result<CycloRational> {
    if !outer.contains(inner) {
        return Err(Error::InvalidSkewShape);
    }
    let l = outer.len();
    if outer.size() == inner.size() {
        return Ok(CycloRational::one());
    }
    let row_max: Vec<i64> = (0..l).map(|i| outer.part(i) as i64 - i as i64 + l as i64 - 1).collect();
    let kmax = *row_max.iter().max().unwrap() as usize;
    let hs = h(shift, kmax);
    let mut ks = Vec::new();
    let mut m = vec![vec![LaurentPoly::zero(); l]; l];
    for i in 0..l {
        let ki = row_max[i];
        for m_ in 1..=ki {
            ks.push(2 * m_ as u32);
        }
        for j in 0..l {
            let k = outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64;
            if k < 0 {
                continue;
            }
            let mut e = hs[k as usize].clone();
            for m_ in (k + 1)..=ki {
                e = &e * &LaurentPoly::one_minus_t_pow(2 * m_);
            }
            m[i][j] = e;
        }
    }
    Ok(CycloRational::over_one_minus(poly_det(&m), &ks))
}

/// Skew Schur function s_{λ/η} at x_i = t^{2i − 1 − 2ν_i}.
pub fn skew_schur_specialized(outer: &Partition, inner: &Partition, shift: &Partition) -> Result<QRational> {
    Ok(skew_schur_cyclo(outer, inner, shift)?.to_qrational())
}

/// Thread-safe memo of h_k numerators and skew Schur values.
#[derive(Debug, Default)]
pub struct SchurCache {
    h: RwLock<HashMap<Partition, Vec<LaurentPoly>>>,
    skew: RwLock<HashMap<(Partition, Partition, Partition), CycloRational>>,
}

impl SchurCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn h(&self, shift: &Partition, kmax: usize) -> Vec<LaurentPoly> {
        if let Some(v) = self.h.read().unwrap().get(shift) {
            if v.len() > kmax {
                return v.clone();
            }
        }
        let v = h_numerators(shift, kmax);
        let mut w = self.h.write().unwrap();
        let e = w.entry(shift.clone()).or_default();
        if e.len() < v.len() {
            *e = v.clone();
        }
        v
    }

    pub fn skew(&self, outer: &Partition, inner: &Partition, shift: &Partition) -> Result<CycloRational> {
        let key = (outer.clone(), inner.clone(), shift.clone());
        if let Some(v) = self.skew.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = skew_with(outer, inner, shift, &mut |s, k| self.h(s, k))?;
        self.skew.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.skew.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::from(v)
    }

    #[test]
    fn principal_small_cases() {
        assert_eq!(schur_principal(&p(&[])), QRational::one());
        let one = QRational::new(LaurentPoly::t_pow(1), LaurentPoly::one_minus_t_pow(2)).unwrap();
        assert_eq!(schur_principal(&p(&[1])), one);
        let two = QRational::new(
            LaurentPoly::t_pow(2),
            &LaurentPoly::one_minus_t_pow(2) * &LaurentPoly::one_minus_t_pow(4),
        )
        .unwrap();
        assert_eq!(schur_principal(&p(&[2])), two);
    }

    #[test]
    fn jacobi_trudi_matches_hook_formula() {
        for n in 0..=6 {
            for l in Partition::all_of_size(n) {
                let jt = skew_schur_cyclo(&l, &p(&[]), &p(&[])).unwrap();
                assert_eq!(jt, schur_principal_cyclo(&l), "{l}");
            }
        }
    }

    #[test]
    fn empty_skew_and_errors() {
        let l = p(&[3, 1]);
        assert_eq!(skew_schur_specialized(&l, &l, &p(&[2])).unwrap(), QRational::one());
        assert_eq!(skew_schur_specialized(&p(&[1]), &p(&[2]), &p(&[])), Err(Error::InvalidSkewShape));
        assert_eq!(
            skew_schur_specialized(&p(&[1]), &p(&[]), &p(&[])).unwrap(),
            schur_principal(&p(&[1]))
        );
    }

    #[test]
    fn cache_agrees_with_direct() {
        let cache = SchurCache::new();
        for (o, i, s) in [(&[3, 2][..], &[1][..], &[2, 1][..]), (&[2, 2], &[], &[1]), (&[4], &[2], &[3])] {
            let (o, i, s) = (p(o), p(i), p(s));
            assert_eq!(cache.skew(&o, &i, &s).unwrap(), skew_schur_cyclo(&o, &i, &s).unwrap());
        }
        assert_eq!(cache.len(), 3);
    }
}
