//! Open invariants n_{β₀+α} of a toric Calabi-Yau threefold as closed
//! genus-zero invariants of the surgered geometry W₀ in the class α′.

use serde::{Deserialize, Serialize};

use super::engine::{extract_gv, free_energy, partition_function_with, ClassGrading, VertexCache};
use super::table::convention_hash;
use super::web::build_web;
use crate::error::{Error, Result};
use crate::homology::{pipeline_classes, CurveClass, PipelineClasses};
use crate::lattice::{compact_divisor_rays, is_fano_surface, Cone3, Fan};
use crate::surgery::{fixed_points_at_infinity, open_invariant_surgery, SurgeryTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedPointChoice {
    All,
    /// Index into `fixed_points_at_infinity`.
    Index(usize),
}

#[derive(Debug, Clone)]
pub struct OpenInvariantQuery {
    pub fan0: Fan,
    pub d0: usize,
    pub alpha: CurveClass,
    pub fixed_point: FixedPointChoice,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpenRun {
    pub fixed_point: Cone3,
    pub w0: Fan,
    pub trace: SurgeryTrace,
    pub classes: PipelineClasses,
    /// Box cap used on W₀.
    pub cap: usize,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpenResult {
    pub runs: Vec<OpenRun>,
    /// Whether the divisor surface is Fano (a sufficient condition for
    /// curves in the class to stay on the zero section).
    pub fano: bool,
    pub convention_hash: String,
}

impl OpenResult {
    /// The common value over all runs.
    pub fn value(&self) -> i64 {
        self.runs[0].value
    }
}

/// Runs the surgery pipeline for the chosen fixed point(s) and computes
/// n⁰_{α′} on W₀. With `cap = None` the smallest sufficient cap is used.
pub fn open_gw(query: &OpenInvariantQuery, cap: Option<usize>) -> Result<OpenResult> {
    open_gw_with(query, cap, &VertexCache::new())
}

pub fn open_gw_with(query: &OpenInvariantQuery, cap: Option<usize>, cache: &VertexCache) -> Result<OpenResult> {
    let fan0 = &query.fan0;
    if query.d0 >= fan0.num_rays() {
        return Err(Error::RayOutOfRange(query.d0));
    }
    if !compact_divisor_rays(fan0).contains(&query.d0) {
        return Err(Error::NotCompactRay(query.d0));
    }
    let alpha = CurveClass::new(fan0, query.alpha.entries().to_vec())?;
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let web0 = build_web(fan0)?;
    if !ClassGrading::new(web0.edge_classes())?.is_effective(&alpha) {
        return Err(Error::NotEffective(alpha.entries().to_vec()));
    }
    let fano = is_fano_surface(fan0, query.d0)?;
    let points = fixed_points_at_infinity(fan0, query.d0)?;
    let chosen: Vec<Cone3> = match query.fixed_point {
        FixedPointChoice::All => points,
        FixedPointChoice::Index(i) => vec![*points.get(i).ok_or(Error::NotAMaximalCone([i; 3]))?],
    };
    let mut runs = Vec::new();
    for fp in chosen {
        let (w0, trace, _) = open_invariant_surgery(fan0, query.d0, fp)?;
        let classes = pipeline_classes(&trace, &alpha)?;
        let target = &classes.alpha_prime;
        let web = build_web(&w0)?;
        let required = ClassGrading::new(web.edge_classes())?.max_boxes(target);
        let (used, value) = match required {
            None => (0, 0),
            Some(req) => {
                let used = cap.unwrap_or(req);
                if used < req {
                    return Err(Error::IncreaseDegreeCap(target.entries().to_vec(), req));
                }
                let mut z = partition_function_with(&web, used, Some(target), cache)?;
                let gv = extract_gv(&free_energy(&mut z))?;
                (used, gv.get(target).copied().unwrap_or(0))
            }
        };
        log::info!("fixed point {fp}: alpha' = {target}, cap {used}, n = {value}");
        runs.push(OpenRun { fixed_point: fp, w0, trace, classes, cap: used, value });
    }
    let values: Vec<i64> = runs.iter().map(|r| r.value).collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::ChoiceDependence(values));
    }
    Ok(OpenResult { runs, fano, convention_hash: convention_hash() })
}
