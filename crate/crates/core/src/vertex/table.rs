//! Genus-zero invariant tables in a named basis, with CSV and JSON output.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::engine::{extract_gv, free_energy, partition_function_with, VertexCache};
use super::web::build_web;
use crate::error::Result;
use crate::homology::{CurveClass, NamedBasis};
use crate::lattice::Fan;

/// The exponent and sign conventions every published number depends on.
pub const CONVENTIONS: &str = "\
variable: t = q^(1/2); all exponents are integers in t
specialization: x^nu_i = t^(2i - 1 - 2 nu_i), i >= 1
vertex: C(l,m,n) = t^(-kappa(l)-kappa(n)) s_{n^t}(x^0) sum_eta s_{l^t/eta}(x^n) s_{m/eta}(x^{n^t}); slots counterclockwise
web: cone triangle (p0,p1,p2) counterclockwise; slot i dual to edge p_i -> p_(i+1), direction turned clockwise
edge: lambda at end 0, lambda^t at end 1; factor (-1)^((n+1)|lambda|) t^(n kappa(lambda)); n = a ^ b for the directions following the edge counterclockwise at end 0 (a) and end 1 (b)
class weight: Q^(sum |lambda_e| C_e), C_e the wall class of edge e
free energy: F = log Z graded by a positive functional on edge classes
extraction: N_beta = -lim_(t->1) (t - 1/t)^2 F_beta; n_beta = N_beta - sum_(k>=2, k | beta) n_(beta/k) / k^3
";

pub fn convention_hash() -> String {
    hex::encode(Sha256::digest(CONVENTIONS.as_bytes()))
}

/// sha256 of the canonical JSON of the fan's rays and cones.
pub fn fan_fingerprint(fan: &Fan) -> String {
    let json = serde_json::to_string(fan).expect("fan serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GVRow {
    pub coordinates: Vec<i64>,
    pub class: CurveClass,
    pub n0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GVTable {
    pub cap: usize,
    pub basis: NamedBasis,
    /// Classes whose coefficient is exact at this cap, sorted by coordinates.
    pub rows: Vec<GVRow>,
    /// Classes reached by some assignment but not complete at this cap.
    pub incomplete: Vec<Vec<i64>>,
    pub convention_hash: String,
    pub fan_fingerprint: String,
}

impl GVTable {
    pub fn get(&self, coords: &[i64]) -> Option<i64> {
        self.rows.iter().find(|r| r.coordinates == coords).map(|r| r.n0)
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.basis.names.join(",");
        s.push_str(",n0\n");
        for r in &self.rows {
            for c in &r.coordinates {
                s.push_str(&c.to_string());
                s.push(',');
            }
            s.push_str(&r.n0.to_string());
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// build_web → partition function → free energy → extraction, reported in
/// `basis`. Only classes complete at `cap` appear as rows.
pub fn gw_table(fan: &Fan, basis: &NamedBasis, cap: usize) -> Result<GVTable> {
    gw_table_with(fan, basis, cap, &VertexCache::new())
}

pub fn gw_table_with(fan: &Fan, basis: &NamedBasis, cap: usize, cache: &VertexCache) -> Result<GVTable> {
    let web = build_web(fan)?;
    let mut z = partition_function_with(&web, cap, None, cache)?;
    let complete = z.complete_classes();
    let mut incomplete = Vec::new();
    for c in z.coefficients.keys() {
        if !complete.contains(c) {
            incomplete.push(basis.coordinates(c)?);
        }
    }
    incomplete.sort();
    let f = free_energy(&mut z);
    let gv = extract_gv(&f)?;
    let mut rows = gv
        .into_iter()
        .map(|(class, n0)| Ok(GVRow { coordinates: basis.coordinates(&class)?, class, n0 }))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.coordinates.cmp(&b.coordinates));
    Ok(GVTable {
        cap,
        basis: basis.clone(),
        rows,
        incomplete,
        convention_hash: convention_hash(),
        fan_fingerprint: fan_fingerprint(fan),
    })
}
