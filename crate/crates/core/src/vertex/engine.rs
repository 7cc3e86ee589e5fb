//! Vertex amplitudes, the gluing sum, the graded logarithm and the
//! multi-cover inversion.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::web::{Slot, Web};
use crate::error::{Error, Result};
use crate::homology::CurveClass;
use crate::intlin;
use crate::qpartitions::{CycloRational, LaurentPoly, Partition, SchurCache};

/// Sign s in the edge factor (−1)^{(n+1)|λ|} t^{−s·n·κ(λ)}, fixed by the
/// local P² and conifold calibrations.
pub const FRAMING_SIGN: i64 = -1;

/// Extraction sign σ in N_β = σ · lim_{t→1} (t − t⁻¹)² F_β.
pub const EXTRACTION_SIGN: i64 = -1;

/// Memoized vertex amplitudes
/// C_{λμν} = t^{−κ(λ)−κ(ν)} s_{νᵗ}(x^∅) Σ_η s_{λᵗ/η}(x^ν) s_{μ/η}(x^{νᵗ}),
/// with x^ν_i = t^{2i−1−2νᵢ}.
#[derive(Debug, Default)]
pub struct VertexCache {
    schur: SchurCache,
    amplitudes: RwLock<HashMap<[Partition; 3], CycloRational>>,
}

impl VertexCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn amplitude(&self, l: &Partition, m: &Partition, n: &Partition) -> CycloRational {
        let key = [l.clone(), m.clone(), n.clone()];
        if let Some(v) = self.amplitudes.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.compute(l, m, n);
        self.amplitudes.write().unwrap().insert(key, v.clone());
        v
    }

    fn compute(&self, l: &Partition, m: &Partition, n: &Partition) -> CycloRational {
        let empty = Partition::empty();
        let (lt, nt) = (l.conjugate(), n.conjugate());
        let prefactor = self.schur.skew(&nt, &empty, &empty).unwrap().shift(-(l.kappa() + n.kappa()));
        let terms: Vec<CycloRational> = lt
            .common_subpartitions(m)
            .iter()
            .map(|eta| {
                let a = self.schur.skew(&lt, eta, n).unwrap();
                let b = self.schur.skew(m, eta, &nt).unwrap();
                CycloRational::product(&[&a, &b])
            })
            .collect();
        CycloRational::product(&[&prefactor, &CycloRational::sum(&terms)])
    }
}

/// Maximum box count of each class over its representations Σ nₑCₑ with
/// nₑ ≥ 0, together with a grading ω positive on every edge class.
#[derive(Debug, Clone)]
pub struct ClassGrading {
    pub omega: Vec<i64>,
    edge_classes: Vec<CurveClass>,
    memo: HashMap<CurveClass, Option<usize>>,
}

impl ClassGrading {
    pub fn new(edge_classes: Vec<CurveClass>) -> Result<Self> {
        let rows: Vec<Vec<i64>> = edge_classes.iter().map(|c| c.entries().to_vec()).collect();
        let omega = if rows.is_empty() {
            Vec::new()
        } else {
            intlin::positive_functional(&rows).ok_or(Error::NoPositiveGrading)?
        };
        Ok(Self { omega, edge_classes, memo: HashMap::new() })
    }

    pub fn degree(&self, c: &CurveClass) -> i64 {
        c.entries().iter().zip(&self.omega).map(|(a, b)| a * b).sum()
    }

    /// `None` if the class is not a nonnegative combination of edge classes.
    pub fn max_boxes(&mut self, c: &CurveClass) -> Option<usize> {
        if c.is_zero() {
            return Some(0);
        }
        if self.degree(c) <= 0 {
            return None;
        }
        if let Some(v) = self.memo.get(c) {
            return *v;
        }
        let mut best: Option<usize> = None;
        for k in 0..self.edge_classes.len() {
            let rest = c - &self.edge_classes[k];
            if let Some(b) = self.max_boxes(&rest) {
                best = Some(best.map_or(b + 1, |x| x.max(b + 1)));
            }
        }
        self.memo.insert(c.clone(), best);
        best
    }

    pub fn is_effective(&mut self, c: &CurveClass) -> bool {
        self.max_boxes(c).is_some()
    }
}

/// Coefficients Z_β of the partition function, over every class reached by
/// an assignment with at most `cap` boxes (the zero class is implicit).
#[derive(Debug, Clone)]
pub struct PartitionFunction {
    pub cap: usize,
    pub grading: ClassGrading,
    pub coefficients: BTreeMap<CurveClass, CycloRational>,
    pub assignments: usize,
}

impl PartitionFunction {
    /// Classes whose every representation fits under the cap, so that
    /// their coefficient is exact.
    pub fn complete_classes(&mut self) -> Vec<CurveClass> {
        let keys: Vec<CurveClass> = self.coefficients.keys().cloned().collect();
        keys.into_iter().filter(|c| self.grading.max_boxes(c).is_some_and(|b| b <= self.cap)).collect()
    }
}

/// Assignments of partitions to edges with total size ≤ cap, in canonical
/// order (edge by edge, sizes increasing, partitions in enumeration order).
fn assignments(
    web: &Web,
    cap: usize,
    below: Option<&CurveClass>,
    grading: &mut ClassGrading,
) -> Vec<(Vec<Partition>, CurveClass)> {
    let by_size: Vec<Vec<Partition>> = (0..=cap as u32).map(Partition::all_of_size).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        e: usize,
        left: usize,
        class: CurveClass,
        web: &Web,
        by_size: &[Vec<Partition>],
        below: Option<&CurveClass>,
        grading: &mut ClassGrading,
        cur: &mut Vec<Partition>,
        out: &mut Vec<(Vec<Partition>, CurveClass)>,
    ) {
        if e == web.edges.len() {
            out.push((cur.clone(), class));
            return;
        }
        for s in 0..=left {
            let next = &class + &(s as i64 * &web.edges[e].class);
            if let Some(t) = below {
                if !grading.is_effective(&(t - &next)) {
                    // larger sizes on this edge only move further away
                    break;
                }
            }
            for p in &by_size[s] {
                cur.push(p.clone());
                rec(e + 1, left - s, next.clone(), web, by_size, below, grading, cur, out);
                cur.pop();
            }
        }
    }
    let zero = CurveClass::zero(web.num_rays);
    rec(0, cap, zero, web, &by_size, below, grading, &mut cur, &mut out);
    out
}

/// Per-edge gluing factor (−1)^{(n+1)|λ|} t^{−s·n·κ(λ)}.
fn edge_factor(framing: i64, lambda: &Partition) -> (bool, i64) {
    let negative = ((framing + 1) * lambda.size() as i64).rem_euclid(2) == 1;
    (negative, -FRAMING_SIGN * framing * lambda.kappa())
}

fn term(web: &Web, parts: &[Partition], cache: &VertexCache) -> CycloRational {
    let empty = Partition::empty();
    let mut negative = false;
    let mut shift = 0i64;
    for (e, p) in web.edges.iter().zip(parts) {
        let (neg, sh) = edge_factor(e.framing, p);
        negative ^= neg;
        shift += sh;
    }
    let amps: Vec<CycloRational> = web
        .vertices
        .iter()
        .map(|v| {
            let ps: [Partition; 3] = std::array::from_fn(|i| match v.slots[i] {
                Slot::Leg(_) => empty.clone(),
                Slot::Edge { edge, end: 0 } => parts[edge].clone(),
                Slot::Edge { edge, .. } => parts[edge].conjugate(),
            });
            cache.amplitude(&ps[0], &ps[1], &ps[2])
        })
        .collect();
    let refs: Vec<&CycloRational> = amps.iter().collect();
    let t = CycloRational::product(&refs).shift(shift);
    if negative {
        t.neg()
    } else {
        t
    }
}

/// Z truncated to assignments with at most `cap` boxes; with `below`, only
/// classes γ with `below − γ` effective are kept.
pub fn partition_function_with(
    web: &Web,
    cap: usize,
    below: Option<&CurveClass>,
    cache: &VertexCache,
) -> Result<PartitionFunction> {
    let mut grading = ClassGrading::new(web.edge_classes())?;
    let list = assignments(web, cap, below, &mut grading);
    let terms: Vec<(CurveClass, CycloRational)> = list
        .par_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(parts, class)| (class.clone(), term(web, parts, cache)))
        .collect();
    let mut grouped: BTreeMap<CurveClass, Vec<CycloRational>> = BTreeMap::new();
    for (c, t) in terms {
        grouped.entry(c).or_default().push(t);
    }
    let grouped: Vec<(CurveClass, Vec<CycloRational>)> = grouped.into_iter().collect();
    let coefficients: BTreeMap<CurveClass, CycloRational> =
        grouped.into_par_iter().map(|(c, ts)| (c, CycloRational::sum(&ts))).collect();
    Ok(PartitionFunction { cap, grading, coefficients, assignments: list.len() })
}

pub fn partition_function(web: &Web, cap: usize) -> Result<PartitionFunction> {
    partition_function_with(web, cap, None, &VertexCache::new())
}

/// F = log Z on the complete classes, by ω(β)F_β = ω(β)Z_β − Σ ω(γ)F_γ Z_{β−γ}.
#[derive(Debug, Clone)]
pub struct FreeEnergy {
    pub cap: usize,
    pub grading: ClassGrading,
    pub coefficients: BTreeMap<CurveClass, CycloRational>,
}

pub fn free_energy(z: &mut PartitionFunction) -> FreeEnergy {
    let mut classes = z.complete_classes();
    let g = z.grading.clone();
    classes.sort_by_key(|c| (g.degree(c), c.clone()));
    let mut f: BTreeMap<CurveClass, CycloRational> = BTreeMap::new();
    for beta in &classes {
        let wb = g.degree(beta);
        let mut terms = vec![z.coefficients[beta].clone()];
        for (gamma, fg) in &f {
            let wg = g.degree(gamma);
            if wg >= wb {
                continue;
            }
            let delta = beta - gamma;
            if let Some(zd) = z.coefficients.get(&delta) {
                let r = BigRational::new(BigInt::from(-wg), BigInt::from(wb));
                terms.push(fg.mul(zd).mul_rational(&r));
            }
        }
        f.insert(beta.clone(), CycloRational::sum(&terms));
    }
    FreeEnergy { cap: z.cap, grading: g, coefficients: f }
}

/// (t − t⁻¹)² = t⁻²(1 − t²)².
pub fn genus_zero_weight() -> CycloRational {
    CycloRational::from_poly(LaurentPoly::from_i64s(-2, &[1, 0, -2, 0, 1]))
}

/// Genus-zero Gopakumar-Vafa invariants of every class in `f`.
pub fn extract_gv(f: &FreeEnergy) -> Result<BTreeMap<CurveClass, i64>> {
    let z = genus_zero_weight();
    let mut classes: Vec<&CurveClass> = f.coefficients.keys().collect();
    classes.sort_by_key(|c| (f.grading.degree(c), (*c).clone()));
    let mut n: BTreeMap<CurveClass, BigRational> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for beta in classes {
        let lim = f.coefficients[beta].mul(&z).limit_at_one().map_err(|e| match e {
            Error::PoleAtOne(_) => Error::ConventionMismatch {
                class: beta.entries().to_vec(),
                value: "pole at t = 1".into(),
            },
            other => other,
        })?;
        let mut v = lim * BigRational::from_integer(EXTRACTION_SIGN.into());
        for k in 2..=beta.content() {
            if let Some(sub) = beta.divide(k) {
                if let Some(ns) = n.get(&sub) {
                    v -= ns / BigRational::from_integer(BigInt::from(k).pow(3));
                }
            }
        }
        if !v.is_integer() {
            return Err(Error::ConventionMismatch { class: beta.entries().to_vec(), value: v.to_string() });
        }
        let iv: i64 = i64::try_from(v.to_integer()).map_err(|_| Error::Overflow)?;
        n.insert(beta.clone(), v);
        out.insert(beta.clone(), iv);
    }
    Ok(out)
}
