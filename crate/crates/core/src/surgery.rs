//! Fan rewrites: fiberwise compactification, blowup of a torus-fixed point,
//! simple flops and ray removal, plus the composite pipeline that turns a
//! local surface geometry with a disc class into a closed geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{compact_divisor_rays, cy_vector, validate_fan, Cone3, Fan, LatticeVector};

/// One fan rewrite, with enough data to replay or invert it. Indices refer
/// to the fan before the step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SurgeryStep {
    /// Adds v_∞ = −v_{base_ray} as ray `new_ray` and cones every boundary
    /// wall to it.
    Compactify { base_ray: usize, new_ray: usize, vector: LatticeVector, added_cones: Vec<Cone3> },
    /// Star subdivision of `cone` at the sum of its generators.
    Blowup { cone: Cone3, new_ray: usize, vector: LatticeVector },
    /// Exchanges the wall ⟨wall⟩ for ⟨apexes⟩.
    Flop { wall: [usize; 2], apexes: [usize; 2] },
    /// Deletes a ray and every cone containing it; later rays shift down.
    RemoveRay { ray: usize, vector: LatticeVector, removed_cones: Vec<Cone3> },
}

impl SurgeryStep {
    pub fn kind(&self) -> &'static str {
        match self {
            SurgeryStep::Compactify { .. } => "Compactify",
            SurgeryStep::Blowup { .. } => "Blowup",
            SurgeryStep::Flop { .. } => "Flop",
            SurgeryStep::RemoveRay { .. } => "RemoveRay",
        }
    }

    /// Re-runs the step on `fan`, checking that it records the same data.
    pub fn apply(&self, fan: &Fan) -> Result<Fan> {
        let (out, step) = match self {
            SurgeryStep::Compactify { base_ray, .. } => compactify(fan, *base_ray)?,
            SurgeryStep::Blowup { cone, .. } => blowup_fixed_point(fan, *cone)?,
            SurgeryStep::Flop { wall, .. } => flop(fan, *wall)?,
            SurgeryStep::RemoveRay { ray, .. } => remove_ray(fan, *ray)?,
        };
        if &step != self {
            return Err(Error::TraceMismatch(format!("{} step differs on replay", self.kind())));
        }
        Ok(out)
    }

    /// Recovers the fan before the step from the fan after it.
    pub fn undo(&self, after: &Fan) -> Result<Fan> {
        match self {
            SurgeryStep::Compactify { new_ray, .. } => Ok(remove_ray(after, *new_ray)?.0),
            SurgeryStep::Blowup { cone, new_ray, .. } => {
                let mut cones: Vec<Cone3> = after.cones().iter().filter(|c| !c.contains(*new_ray)).copied().collect();
                cones.push(*cone);
                let mut rays = after.rays().to_vec();
                rays.remove(*new_ray);
                Ok(Fan::new(rays, cones))
            }
            SurgeryStep::Flop { apexes, .. } => Ok(flop(after, *apexes)?.0),
            SurgeryStep::RemoveRay { ray, vector, removed_cones } => {
                let mut rays = after.rays().to_vec();
                rays.insert(*ray, *vector);
                let shift = |i: usize| if i >= *ray { i + 1 } else { i };
                let mut cones: Vec<Cone3> = after.cones().iter().map(|c| Cone3::new(c.0.map(shift))).collect();
                cones.extend(removed_cones.iter().copied());
                Ok(Fan::new(rays, cones))
            }
        }
    }

    /// Where each ray of the fan before the step goes (`None` if removed).
    pub fn ray_correspondence(&self, rays_before: usize) -> Vec<Option<usize>> {
        match self {
            SurgeryStep::RemoveRay { ray, .. } => (0..rays_before)
                .map(|i| match i.cmp(ray) {
                    std::cmp::Ordering::Less => Some(i),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(i - 1),
                })
                .collect(),
            _ => (0..rays_before).map(Some).collect(),
        }
    }
}

/// An ordered record of surgery steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryTrace {
    pub initial_fan: Fan,
    pub steps: Vec<SurgeryStep>,
    pub final_fan: Fan,
    pub ray_correspondence: Vec<Vec<Option<usize>>>,
}

impl SurgeryTrace {
    pub fn new(initial_fan: Fan) -> Self {
        Self { final_fan: initial_fan.clone(), initial_fan, steps: Vec::new(), ray_correspondence: Vec::new() }
    }

    pub fn push(&mut self, fan: Fan, step: SurgeryStep) {
        self.ray_correspondence.push(step.ray_correspondence(self.final_fan.num_rays()));
        self.steps.push(step);
        self.final_fan = fan;
    }

    /// The intermediate fans, starting with the initial fan.
    pub fn fans(&self) -> Result<Vec<Fan>> {
        let mut out = vec![self.initial_fan.clone()];
        for s in &self.steps {
            let next = s.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    /// Replays every step from the initial fan.
    pub fn replay(&self) -> Result<Fan> {
        let fans = self.fans()?;
        let last = fans.into_iter().last().unwrap();
        if last != self.final_fan {
            return Err(Error::TraceMismatch("final fan differs".into()));
        }
        Ok(last)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn require_valid_smooth_cy(fan: &Fan) -> Result<()> {
    let report = validate_fan(fan);
    if !report.is_valid() {
        return Err(Error::InvalidFan(
            report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    if let Some((cone, det)) = report.non_smooth_cones().first() {
        return Err(Error::NotSmooth { cone: cone.0, det: det.abs() });
    }
    cy_vector(fan)?;
    Ok(())
}

/// Adds v_∞ = −v_{i0} and cones every boundary wall to it.
pub fn compactify(fan: &Fan, i0: usize) -> Result<(Fan, SurgeryStep)> {
    if i0 >= fan.num_rays() {
        return Err(Error::RayOutOfRange(i0));
    }
    require_valid_smooth_cy(fan)?;
    if !compact_divisor_rays(fan).contains(&i0) {
        return Err(Error::NotCompactRay(i0));
    }
    let n = fan.num_rays();
    let vector = -fan.ray(i0);
    let added_cones: Vec<Cone3> = fan.boundary_walls().iter().map(|w| Cone3::new([w.rays[0], w.rays[1], n])).collect();
    let mut rays = fan.rays().to_vec();
    rays.push(vector);
    let mut cones = fan.cones().to_vec();
    cones.extend(added_cones.iter().copied());
    let out = Fan::new(rays, cones);
    for &c in &added_cones {
        let d = out.cone_det(c);
        if d.abs() != 1 {
            return Err(Error::CompactificationFailed { cone: c.0, reason: format!("|det| = {}", d.abs()) });
        }
    }
    let report = validate_fan(&out);
    if let Some(v) = report.violations.first() {
        let cone = added_cones.first().map(|c| c.0).unwrap_or([n; 3]);
        return Err(Error::CompactificationFailed { cone, reason: v.to_string() });
    }
    if let Some(w) = out.boundary_walls().first() {
        return Err(Error::CompactificationFailed {
            cone: out.cones()[w.cones[0]].0,
            reason: format!("wall {:?} is still on the boundary", w.rays),
        });
    }
    let step = SurgeryStep::Compactify { base_ray: i0, new_ray: n, vector, added_cones };
    Ok((out, step))
}

/// Star subdivision of a smooth maximal cone at the sum of its generators.
pub fn blowup_fixed_point(fan: &Fan, cone: Cone3) -> Result<(Fan, SurgeryStep)> {
    let cone = Cone3::new(cone.0);
    if cone.0.iter().any(|&i| i >= fan.num_rays()) || !fan.has_cone(cone) {
        return Err(Error::NotAMaximalCone(cone.0));
    }
    let d = fan.cone_det(cone);
    if d.abs() != 1 {
        return Err(Error::NotSmooth { cone: cone.0, det: d.abs() });
    }
    let [a, b, c] = cone.0;
    let vector = fan.ray(a) + fan.ray(b) + fan.ray(c);
    let w = fan.num_rays();
    let mut rays = fan.rays().to_vec();
    rays.push(vector);
    let mut cones: Vec<Cone3> = fan.cones().iter().filter(|&&k| k != cone).copied().collect();
    cones.extend(cone.faces().iter().map(|f| Cone3::new([f[0], f[1], w])));
    Ok((Fan::new(rays, cones), SurgeryStep::Blowup { cone, new_ray: w, vector }))
}

/// Simple flop across the compact wall ⟨u₁,u₂⟩ with apexes u₀, w satisfying
/// u₀ + w = u₁ + u₂.
pub fn flop(fan: &Fan, wall: [usize; 2]) -> Result<(Fan, SurgeryStep)> {
    let wall = if wall[0] <= wall[1] { wall } else { [wall[1], wall[0]] };
    let [a, b] = fan.wall_apexes(wall)?;
    let relation = match fan.wall_relation(wall) {
        Ok((_, c)) => [1, 1, c[0], c[1]],
        Err(_) => {
            let vs: Vec<[i64; 3]> = [a, b, wall[0], wall[1]].iter().map(|&i| fan.ray(i).0).collect();
            let (_, k) = intlin::integer_kernel(&vs)?;
            k.first().map(|r| [r[0], r[1], r[2], r[3]]).unwrap_or([0; 4])
        }
    };
    if relation != [1, 1, -1, -1] {
        return Err(Error::NotSimpleFlopWall { rays: [a, b, wall[0], wall[1]], relation });
    }
    let old = [Cone3::new([a, wall[0], wall[1]]), Cone3::new([b, wall[0], wall[1]])];
    let mut cones: Vec<Cone3> = fan.cones().iter().filter(|c| !old.contains(c)).copied().collect();
    cones.push(Cone3::new([a, b, wall[0]]));
    cones.push(Cone3::new([a, b, wall[1]]));
    let apexes = if a <= b { [a, b] } else { [b, a] };
    Ok((Fan::new(fan.rays().to_vec(), cones), SurgeryStep::Flop { wall, apexes }))
}

/// Deletes ray `i` and every cone containing it.
pub fn remove_ray(fan: &Fan, i: usize) -> Result<(Fan, SurgeryStep)> {
    if i >= fan.num_rays() {
        return Err(Error::RayOutOfRange(i));
    }
    let fail = |reason: String| Error::RemoveRayFailed { ray: i, reason };
    let vector = fan.ray(i);
    let removed_cones: Vec<Cone3> = fan.cones().iter().filter(|c| c.contains(i)).copied().collect();
    let mut rays = fan.rays().to_vec();
    rays.remove(i);
    let down = |j: usize| if j > i { j - 1 } else { j };
    let cones: Vec<Cone3> =
        fan.cones().iter().filter(|c| !c.contains(i)).map(|c| Cone3::new(c.0.map(down))).collect();
    if cones.is_empty() {
        return Err(fail("no cones remain".into()));
    }
    let out = Fan::new(rays, cones);
    let report = validate_fan(&out);
    if !report.is_valid() {
        return Err(fail(report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")));
    }
    let vs: Vec<Vec<i64>> = out.rays().iter().map(|r| r.0.to_vec()).collect();
    if intlin::positive_functional(&vs).is_none() {
        return Err(fail("support is not strongly convex".into()));
    }
    Ok((out, SurgeryStep::RemoveRay { ray: i, vector, removed_cones }))
}

/// Rays and cone data of the pipeline's distinguished objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRays {
    /// v₀ in the initial fan.
    pub d0: usize,
    /// v_∞ in the compactified fan.
    pub v_inf: usize,
    /// The chosen fixed point ⟨v_∞,u₁,u₂⟩.
    pub fixed_point: Cone3,
    /// w in the blown-up fan.
    pub w: usize,
    /// u₀, the other apex of ⟨u₁,u₂⟩ after the blowup.
    pub u0: usize,
}

/// compactify → blowup of the fixed point → flop of ⟨u₁,u₂⟩ → remove v_∞.
/// Returns W₀, the trace (four steps in that order) and the special rays.
pub fn open_invariant_surgery(fan0: &Fan, d0: usize, fixed_point: Cone3) -> Result<(Fan, SurgeryTrace, PipelineRays)> {
    let mut trace = SurgeryTrace::new(fan0.clone());
    let (x, step) = compactify(fan0, d0)?;
    let v_inf = x.num_rays() - 1;
    trace.push(x.clone(), step);
    let fixed_point = Cone3::new(fixed_point.0);
    if !fixed_point.contains(v_inf) || !x.has_cone(fixed_point) {
        return Err(Error::NotAMaximalCone(fixed_point.0));
    }
    let (x1, step) = blowup_fixed_point(&x, fixed_point)?;
    let w = x1.num_rays() - 1;
    trace.push(x1.clone(), step);
    let uu: Vec<usize> = fixed_point.0.iter().copied().filter(|&r| r != v_inf).collect();
    let wall = [uu[0], uu[1]];
    let [a, b] = x1.wall_apexes(wall)?;
    let u0 = if a == w { b } else { a };
    let (x2, step) = flop(&x1, wall).map_err(|e| match e {
        Error::NotSimpleFlopWall { relation, .. } => Error::FixedPointNotSimpleFlop(format!(
            "wall ⟨{},{}⟩ has apexes w = {} and u0 = {} with relation {:?}",
            wall[0], wall[1], w, u0, relation
        )),
        other => other,
    })?;
    trace.push(x2.clone(), step);
    let (w0, step) = remove_ray(&x2, v_inf)?;
    trace.push(w0.clone(), step);
    require_valid_smooth_cy(&w0)?;
    Ok((w0, trace, PipelineRays { d0, v_inf, fixed_point, w, u0 }))
}

/// The torus-fixed points on D_∞: cones of the compactified fan containing
/// v_∞, in canonical order.
pub fn fixed_points_at_infinity(fan0: &Fan, d0: usize) -> Result<Vec<Cone3>> {
    let (x, _) = compactify(fan0, d0)?;
    let v_inf = x.num_rays() - 1;
    Ok(x.cones().iter().filter(|c| c.contains(v_inf)).copied().collect())
}

/// Runs the pipeline for every fixed point on D_∞.
#[allow(clippy::type_complexity)]
pub fn open_invariant_surgery_all(fan0: &Fan, d0: usize) -> Result<Vec<(Cone3, Result<(Fan, SurgeryTrace, PipelineRays)>)>> {
    Ok(fixed_points_at_infinity(fan0, d0)?
        .into_iter()
        .map(|c| (c, open_invariant_surgery(fan0, d0, c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog::*;
    use crate::lattice::{divisor_surface_fan, height_one_polygon};

    fn kp2_compact() -> Fan {
        compactify(&local_p2(), 0).unwrap().0
    }

    #[test]
    fn compactify_examples() {
        let x = kp2_compact();
        assert_eq!(x.num_rays(), 5);
        assert_eq!(x.ray(4), LatticeVector::new(0, 0, -1));
        assert_eq!(x.cones().len(), 6);
        let y = compactify(&local_f1(), 0).unwrap().0;
        assert_eq!((y.num_rays(), y.cones().len()), (6, 8));
        for r in 0..4 {
            assert_eq!(compactify(&conifold(), r).unwrap_err(), Error::NotCompactRay(r));
        }
    }

    #[test]
    fn blowup_examples() {
        let x = kp2_compact();
        let (x1, step) = blowup_fixed_point(&x, Cone3::new([4, 1, 2])).unwrap();
        assert_eq!(x1.ray(5), LatticeVector::new(1, 1, 1));
        assert_eq!(x1.cones().len(), 8);
        assert!(!x1.has_cone(Cone3::new([1, 2, 4])));
        assert!(matches!(step, SurgeryStep::Blowup { new_ray: 5, .. }));
        let std = Fan::from_arrays(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], &[[0, 1, 2]]);
        let (b, _) = blowup_fixed_point(&std, Cone3::new([0, 1, 2])).unwrap();
        assert_eq!(b.ray(3), LatticeVector::new(1, 1, 1));
        assert!(b.cones().iter().all(|&c| b.cone_det(c).abs() == 1));
        assert_eq!(blowup_fixed_point(&x, Cone3::new([0, 1, 4])).unwrap_err(), Error::NotAMaximalCone([0, 1, 4]));
    }

    #[test]
    fn flop_examples() {
        let (f, _) = flop(&conifold(), [0, 3]).unwrap();
        assert!(f.wall(1, 2).unwrap().is_compact());
        assert!(f.wall(0, 3).is_none());
        let (x1, _) = blowup_fixed_point(&kp2_compact(), Cone3::new([4, 1, 2])).unwrap();
        let (x2, step) = flop(&x1, [1, 2]).unwrap();
        assert_eq!(step, SurgeryStep::Flop { wall: [1, 2], apexes: [0, 5] });
        assert!(x2.has_cone(Cone3::new([5, 0, 1])) && x2.has_cone(Cone3::new([5, 0, 2])));
        assert_eq!(remove_ray(&x2, 4).unwrap().0, local_f1());
        match flop(&local_p2(), [0, 1]).unwrap_err() {
            Error::NotSimpleFlopWall { rays, relation } => {
                assert_eq!(rays, [2, 3, 0, 1]);
                assert_eq!(relation, [1, 1, -3, 1]);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn remove_ray_examples() {
        assert_eq!(remove_ray(&kp2_compact(), 4).unwrap().0, local_p2());
        assert!(matches!(remove_ray(&local_p2(), 0), Err(Error::RemoveRayFailed { ray: 0, .. })));
    }

    #[test]
    fn pipeline_on_local_p2() {
        let (w0, trace, rays) = open_invariant_surgery(&local_p2(), 0, Cone3::new([4, 1, 2])).unwrap();
        assert_eq!(w0, local_f1());
        assert_eq!((rays.v_inf, rays.w, rays.u0), (4, 5, 0));
        assert_eq!(trace.replay().unwrap(), w0);
        let kinds: Vec<_> = trace.steps.iter().map(|s| s.kind()).collect();
        assert_eq!(kinds, ["Compactify", "Blowup", "Flop", "RemoveRay"]);
        assert_eq!(SurgeryTrace::from_json(&trace.to_json()).unwrap(), trace);
        let runs = open_invariant_surgery_all(&local_p2(), 0).unwrap();
        assert_eq!(runs.len(), 3);
        for (_, r) in runs {
            assert!(r.unwrap().0.is_lattice_equivalent(&local_f1()));
        }
    }

    #[test]
    fn pipeline_on_local_f1_adds_a_boundary_point() {
        for (fp, r) in open_invariant_surgery_all(&local_f1(), 0).unwrap() {
            let (w0, _, _) = r.unwrap_or_else(|e| panic!("{fp}: {e}"));
            assert_eq!(divisor_surface_fan(&w0, 0).unwrap().len(), 5);
            assert_eq!(compact_divisor_rays(&w0).len(), 1);
            let cy = cy_vector(&w0).unwrap();
            let poly = height_one_polygon(&w0, &cy).unwrap();
            assert_eq!(poly.points.len(), 6);
        }
    }

    #[test]
    fn steps_invert() {
        let (w0, trace, _) = open_invariant_surgery(&local_p2(), 0, Cone3::new([4, 2, 3])).unwrap();
        let fans = trace.fans().unwrap();
        assert_eq!(fans.last().unwrap(), &w0);
        for (k, s) in trace.steps.iter().enumerate() {
            assert_eq!(s.undo(&fans[k + 1]).unwrap(), fans[k], "{}", s.kind());
        }
    }
}
