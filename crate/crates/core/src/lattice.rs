//! Simplicial fans in N ≅ Z³: validation, the Calabi-Yau covector, the
//! height-one polygon and compact divisors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::{self, cross, det3, dot};

/// A vector of the lattice N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub [i64; 3]);

impl LatticeVector {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Self([x, y, z])
    }

    pub fn x(&self) -> i64 {
        self.0[0]
    }
    pub fn y(&self) -> i64 {
        self.0[1]
    }
    pub fn z(&self) -> i64 {
        self.0[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn content(&self) -> i64 {
        intlin::gcd(intlin::gcd(self.0[0], self.0[1]), self.0[2])
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn pair(&self, covector: [i64; 3]) -> i64 {
        dot(self.0, covector)
    }

    pub fn transform(&self, m: &[[i64; 3]; 3]) -> Self {
        let v = self.0;
        Self([dot(m[0], v), dot(m[1], v), dot(m[2], v)])
    }
}

impl std::ops::Add for LatticeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl std::ops::Sub for LatticeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl std::ops::Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector([self * v.0[0], self * v.0[1], self * v.0[2]])
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: [i64; 3]) -> Result<LatticeVector> {
    let lv = LatticeVector(v);
    if lv.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = lv.content();
    Ok(LatticeVector([v[0] / g, v[1] / g, v[2] / g]))
}

pub fn det(a: LatticeVector, b: LatticeVector, c: LatticeVector) -> i64 {
    det3(a.0, b.0, c.0)
}

/// A maximal cone, stored as sorted ray indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone3(pub [usize; 3]);

impl Cone3 {
    pub fn new(mut idx: [usize; 3]) -> Self {
        idx.sort_unstable();
        Self(idx)
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.contains(&ray)
    }

    /// The three 2-faces, each as a sorted ray pair.
    pub fn faces(&self) -> [[usize; 2]; 3] {
        let [a, b, c] = self.0;
        [[a, b], [a, c], [b, c]]
    }

    /// The ray of this cone not in `wall`.
    pub fn apex(&self, wall: [usize; 2]) -> Option<usize> {
        if !(self.contains(wall[0]) && self.contains(wall[1])) {
            return None;
        }
        self.0.iter().copied().find(|r| !wall.contains(r))
    }
}

impl fmt::Display for Cone3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.0[0], self.0[1], self.0[2])
    }
}

/// A 2-dimensional face of the fan together with the maximal cones that
/// contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub rays: [usize; 2],
    pub cones: Vec<usize>,
}

impl Wall {
    pub fn is_compact(&self) -> bool {
        self.cones.len() == 2
    }
}

/// A simplicial fan given by primitive rays and maximal cones.
///
/// Cones are kept in canonical order (indices sorted inside each cone, cone
/// list sorted), so two fans with the same rays and the same set of cones
/// compare equal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fan {
    rays: Vec<LatticeVector>,
    cones: Vec<Cone3>,
    #[serde(skip)]
    walls: OnceLock<Vec<Wall>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays && self.cones == other.cones
    }
}
impl Eq for Fan {}

impl Fan {
    pub fn new(rays: Vec<LatticeVector>, cones: Vec<Cone3>) -> Self {
        let mut cones: Vec<Cone3> = cones.into_iter().map(|c| Cone3::new(c.0)).collect();
        cones.sort_unstable();
        Self { rays, cones, walls: OnceLock::new() }
    }

    pub fn from_arrays(rays: &[[i64; 3]], cones: &[[usize; 3]]) -> Self {
        Self::new(
            rays.iter().map(|&r| LatticeVector(r)).collect(),
            cones.iter().map(|&c| Cone3::new(c)).collect(),
        )
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> LatticeVector {
        self.rays[i]
    }

    pub fn cones(&self) -> &[Cone3] {
        &self.cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn has_cone(&self, cone: Cone3) -> bool {
        self.cones.binary_search(&Cone3::new(cone.0)).is_ok()
    }

    pub fn cone_det(&self, cone: Cone3) -> i64 {
        let [a, b, c] = cone.0;
        det(self.rays[a], self.rays[b], self.rays[c])
    }

    pub fn is_smooth_cone(&self, cone: Cone3) -> bool {
        self.cone_det(cone).abs() == 1
    }

    /// All 2-faces with their incident maximal cones, sorted by ray pair.
    pub fn walls(&self) -> &[Wall] {
        self.walls.get_or_init(|| {
            let mut map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
            for (ci, cone) in self.cones.iter().enumerate() {
                for f in cone.faces() {
                    map.entry(f).or_default().push(ci);
                }
            }
            map.into_iter().map(|(rays, cones)| Wall { rays, cones }).collect()
        })
    }

    pub fn wall(&self, a: usize, b: usize) -> Option<&Wall> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.walls().iter().find(|w| w.rays == key)
    }

    pub fn compact_walls(&self) -> Vec<&Wall> {
        self.walls().iter().filter(|w| w.is_compact()).collect()
    }

    pub fn boundary_walls(&self) -> Vec<&Wall> {
        self.walls().iter().filter(|w| w.cones.len() == 1).collect()
    }

    /// The two apexes of a compact wall, ordered as the incident cones.
    pub fn wall_apexes(&self, wall: [usize; 2]) -> Result<[usize; 2]> {
        let w = self
            .wall(wall[0], wall[1])
            .filter(|w| w.is_compact())
            .ok_or(Error::NotCompactWall(wall))?;
        let a = self.cones[w.cones[0]].apex(w.rays).unwrap();
        let b = self.cones[w.cones[1]].apex(w.rays).unwrap();
        Ok([a, b])
    }

    /// The linear relation a + b + c₁u₁ + c₂u₂ = 0 across a compact wall
    /// ⟨u₁,u₂⟩ with apexes a, b. Returns `(apexes, [c₁, c₂])`.
    pub fn wall_relation(&self, wall: [usize; 2]) -> Result<([usize; 2], [i64; 2])> {
        let [a, b] = self.wall_apexes(wall)?;
        let w = self.wall(wall[0], wall[1]).unwrap();
        for &ci in &w.cones {
            let cone = self.cones[ci];
            if !self.is_smooth_cone(cone) {
                return Err(Error::NotSmooth { cone: cone.0, det: self.cone_det(cone).abs() });
            }
        }
        let (u1, u2) = (self.rays[w.rays[0]].0, self.rays[w.rays[1]].0);
        let s = (self.rays[a] + self.rays[b]).0.map(|x| -x);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let d = u1[i] * u2[j] - u1[j] * u2[i];
            if d == 0 {
                continue;
            }
            let n1 = s[i] * u2[j] - s[j] * u2[i];
            let n2 = u1[i] * s[j] - u1[j] * s[i];
            if n1 % d != 0 || n2 % d != 0 {
                break;
            }
            let c = [n1 / d, n2 / d];
            if (0..3).all(|k| c[0] * u1[k] + c[1] * u2[k] == s[k]) {
                return Ok(([a, b], c));
            }
            break;
        }
        Err(Error::InvalidFan(format!("wall {wall:?} has no integral relation")))
    }

    /// Index of the ray equal to `v`, if present.
    pub fn ray_index(&self, v: LatticeVector) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    /// Applies a GL(3,Z) matrix (rows) to every ray.
    pub fn transform(&self, m: &[[i64; 3]; 3]) -> Fan {
        Fan::new(self.rays.iter().map(|r| r.transform(m)).collect(), self.cones.clone())
    }

    /// Renumbers rays: ray `i` of `self` becomes ray `perm[i]`.
    pub fn permute_rays(&self, perm: &[usize]) -> Fan {
        let mut rays = vec![LatticeVector::new(0, 0, 0); self.rays.len()];
        for (i, &p) in perm.iter().enumerate() {
            rays[p] = self.rays[i];
        }
        let cones = self.cones.iter().map(|c| Cone3::new(c.0.map(|i| perm[i]))).collect();
        Fan::new(rays, cones)
    }

    /// Rays sharing a maximal cone with `ray`.
    pub fn neighbors(&self, ray: usize) -> BTreeSet<usize> {
        self.cones
            .iter()
            .filter(|c| c.contains(ray))
            .flat_map(|c| c.0)
            .filter(|&r| r != ray)
            .collect()
    }

    /// Tests whether some GL(3,Z) map carries this fan onto `other` (rays
    /// to rays, cones to cones). Requires a smooth cone in `self`.
    pub fn is_lattice_equivalent(&self, other: &Fan) -> bool {
        if self.rays.len() != other.rays.len() || self.cones.len() != other.cones.len() {
            return false;
        }
        let Some(&base) = self.cones.iter().find(|c| self.is_smooth_cone(**c)) else {
            return false;
        };
        let b = base.0.map(|i| self.rays[i].0);
        // columns of b form a unimodular matrix B; M = B' B^{-1}
        let bmat = [[b[0][0], b[1][0], b[2][0]], [b[0][1], b[1][1], b[2][1]], [b[0][2], b[1][2], b[2][2]]];
        let Some(binv) = intlin::inverse_unimodular3(bmat) else {
            return false;
        };
        let target_rays: BTreeMap<LatticeVector, usize> =
            other.rays.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let target_cones: BTreeSet<Cone3> = other.cones.iter().copied().collect();
        for cone in &other.cones {
            for perm in PERMS3 {
                let img = perm.map(|p| other.rays[cone.0[p]].0);
                let bp = [
                    [img[0][0], img[1][0], img[2][0]],
                    [img[0][1], img[1][1], img[2][1]],
                    [img[0][2], img[1][2], img[2][2]],
                ];
                let mut m = [[0i64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = (0..3).map(|k| bp[i][k] * binv[k][j]).sum();
                    }
                }
                let map: Option<Vec<usize>> =
                    self.rays.iter().map(|r| target_rays.get(&r.transform(&m)).copied()).collect();
                let Some(map) = map else { continue };
                if self.cones.iter().all(|c| target_cones.contains(&Cone3::new(c.0.map(|i| map[i])))) {
                    return true;
                }
            }
        }
        false
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rays [")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{r}")?;
        }
        write!(f, "]; cones [")?;
        for (i, c) in self.cones.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A violated fan invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroRay(usize),
    NonPrimitiveRay(usize),
    DuplicateRay(usize, usize),
    ConeIndexOutOfRange(Cone3),
    RepeatedRayInCone(Cone3),
    DegenerateCone(Cone3),
    DuplicateCone(Cone3),
    RayInNoCone(usize),
    RaysDoNotSpan,
    FanAxiom(Cone3, Cone3),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRay(i) => write!(f, "ray {i} is zero"),
            Violation::NonPrimitiveRay(i) => write!(f, "ray {i} is not primitive"),
            Violation::DuplicateRay(i, j) => write!(f, "rays {i} and {j} coincide"),
            Violation::ConeIndexOutOfRange(c) => write!(f, "cone {c} refers to a missing ray"),
            Violation::RepeatedRayInCone(c) => write!(f, "cone {c} repeats a ray"),
            Violation::DegenerateCone(c) => write!(f, "cone {c} is not 3-dimensional"),
            Violation::DuplicateCone(c) => write!(f, "cone {c} is listed twice"),
            Violation::RayInNoCone(i) => write!(f, "ray {i} lies in no cone"),
            Violation::RaysDoNotSpan => write!(f, "rays do not span the lattice"),
            Violation::FanAxiom(a, b) => {
                write!(f, "cones {a} and {b} do not meet in a common face")
            }
        }
    }
}

/// Result of [`validate_fan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `(cone, det)` for every well-formed cone.
    pub cone_dets: Vec<(Cone3, i64)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_smooth(&self) -> bool {
        self.cone_dets.iter().all(|(_, d)| d.abs() == 1)
    }

    pub fn non_smooth_cones(&self) -> Vec<(Cone3, i64)> {
        self.cone_dets.iter().filter(|(_, d)| d.abs() != 1).copied().collect()
    }
}

/// Checks every fan invariant and reports all problems found.
pub fn validate_fan(fan: &Fan) -> ValidationReport {
    let mut violations = Vec::new();
    let rays = fan.rays();
    let n = rays.len();
    for (i, r) in rays.iter().enumerate() {
        if r.is_zero() {
            violations.push(Violation::ZeroRay(i));
        } else if !r.is_primitive() {
            violations.push(Violation::NonPrimitiveRay(i));
        }
        for (j, s) in rays.iter().enumerate().skip(i + 1) {
            if r == s {
                violations.push(Violation::DuplicateRay(i, j));
            }
        }
    }
    let mut good = Vec::new();
    let mut cone_dets = Vec::new();
    for (k, cone) in fan.cones().iter().enumerate() {
        let [a, b, c] = cone.0;
        if a >= n || b >= n || c >= n {
            violations.push(Violation::ConeIndexOutOfRange(*cone));
            continue;
        }
        if a == b || b == c {
            violations.push(Violation::RepeatedRayInCone(*cone));
            continue;
        }
        if k > 0 && fan.cones()[k - 1] == *cone {
            violations.push(Violation::DuplicateCone(*cone));
            continue;
        }
        let d = fan.cone_det(*cone);
        if d == 0 {
            violations.push(Violation::DegenerateCone(*cone));
            continue;
        }
        cone_dets.push((*cone, d));
        good.push(*cone);
    }
    for i in 0..n {
        if !fan.cones().iter().any(|c| c.contains(i)) {
            violations.push(Violation::RayInNoCone(i));
        }
    }
    let rows: Vec<Vec<i64>> = rays.iter().map(|r| r.0.to_vec()).collect();
    if intlin::rank(&rows).map(|r| r < 3).unwrap_or(true) {
        violations.push(Violation::RaysDoNotSpan);
    }
    for i in 0..good.len() {
        for j in (i + 1)..good.len() {
            if !cones_meet_in_face(rays, good[i], good[j]) {
                violations.push(Violation::FanAxiom(good[i], good[j]));
            }
        }
    }
    ValidationReport { violations, cone_dets }
}

/// Coefficient signs of `x` in the basis of a full-dimensional simplicial
/// cone; `x` lies in the cone iff all returned values are ≥ 0.
fn cone_coordinates(g: [[i64; 3]; 3], x: [i64; 3]) -> [i64; 3] {
    let d = det3(g[0], g[1], g[2]);
    let s = d.signum();
    [
        det3(x, g[1], g[2]) * s,
        det3(g[0], x, g[2]) * s,
        det3(g[0], g[1], x) * s,
    ]
}

fn in_full_cone(g: [[i64; 3]; 3], x: [i64; 3]) -> bool {
    cone_coordinates(g, x).iter().all(|&c| c >= 0)
}

/// Whether `x` lies in the 2-dimensional cone spanned by `p`, `q`.
fn in_planar_cone(p: [i64; 3], q: [i64; 3], x: [i64; 3]) -> bool {
    let normal = cross(p, q);
    if dot(normal, x) != 0 {
        return false;
    }
    dot(cross(p, x), normal) >= 0 && dot(cross(x, q), normal) >= 0
}

/// Whether `x` lies in the cone spanned by the given generators (at most two).
fn in_small_cone(gens: &[[i64; 3]], x: [i64; 3]) -> bool {
    match gens {
        [] => x == [0, 0, 0],
        [a] => cross(*a, x) == [0, 0, 0] && dot(*a, x) >= 0,
        [a, b] => in_planar_cone(*a, *b, x),
        _ => unreachable!(),
    }
}

/// Exact test that two full-dimensional simplicial cones intersect in the
/// cone over their common rays. The intersection is a pointed polyhedral
/// cone; every extreme ray of it is a generator of one cone lying in the
/// other, or the intersection line of a facet of each. All such candidates
/// must lie in the shared face.
fn cones_meet_in_face(rays: &[LatticeVector], s: Cone3, t: Cone3) -> bool {
    let gs = s.0.map(|i| rays[i].0);
    let gt = t.0.map(|i| rays[i].0);
    let shared: Vec<[i64; 3]> = s.0.iter().filter(|i| t.contains(**i)).map(|&i| rays[i].0).collect();
    let mut candidates: Vec<[i64; 3]> = Vec::new();
    candidates.extend(gs.iter().filter(|&&g| in_full_cone(gt, g)));
    candidates.extend(gt.iter().filter(|&&g| in_full_cone(gs, g)));
    let faces = |g: [[i64; 3]; 3]| [[g[0], g[1]], [g[0], g[2]], [g[1], g[2]]];
    for [p, q] in faces(gs) {
        for [r, u] in faces(gt) {
            let n1 = cross(p, q);
            let n2 = cross(r, u);
            let line = cross(n1, n2);
            if line == [0, 0, 0] {
                // coplanar facets: overlap of two planar cones
                for x in [p, q] {
                    if in_planar_cone(r, u, x) {
                        candidates.push(x);
                    }
                }
                for x in [r, u] {
                    if in_planar_cone(p, q, x) {
                        candidates.push(x);
                    }
                }
                continue;
            }
            for d in [line, line.map(|c| -c)] {
                if in_planar_cone(p, q, d) && in_planar_cone(r, u, d) {
                    candidates.push(d);
                }
            }
        }
    }
    shared.len() < 3 && candidates.iter().all(|&x| in_small_cone(&shared, x))
}

/// The Calabi-Yau covector: ⟨ν, v_i⟩ = 1 for every ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CYStructure {
    pub nu: [i64; 3],
}

/// Solves ⟨ν, v_i⟩ = 1 over all rays.
pub fn cy_vector(fan: &Fan) -> Result<CYStructure> {
    let rays = fan.rays();
    let mut basis = None;
    'outer: for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            for k in (j + 1)..rays.len() {
                if det(rays[i], rays[j], rays[k]) != 0 {
                    basis = Some([i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    let [i, j, k] = basis.ok_or(Error::RaysDoNotSpan)?;
    let (a, b, c) = (rays[i].0, rays[j].0, rays[k].0);
    let d = det3(a, b, c);
    // ν = (b×c + c×a + a×b)/d solves ν·a = ν·b = ν·c = 1
    let bc = cross(b, c);
    let ca = cross(c, a);
    let ab = cross(a, b);
    let num = [bc[0] + ca[0] + ab[0], bc[1] + ca[1] + ab[1], bc[2] + ca[2] + ab[2]];
    if num.iter().any(|x| x % d != 0) {
        return Err(Error::NotCalabiYau);
    }
    let nu = num.map(|x| x / d);
    if rays.iter().all(|r| r.pair(nu) == 1) {
        Ok(CYStructure { nu })
    } else {
        Err(Error::NotCalabiYau)
    }
}

/// The triangulated polygon cut out by the cones on the plane ⟨ν,·⟩ = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightOnePolygon {
    /// 2D coordinates of each ray, indexed like the fan's rays.
    pub points: Vec<[i64; 2]>,
    /// Ray indices of each cone, ordered counterclockwise in the plane.
    pub triangles: Vec<[usize; 3]>,
    /// Basis used for the plane (columns p, e1, e2 of a unimodular matrix).
    pub frame: [[i64; 3]; 3],
}

impl HeightOnePolygon {
    /// Twice the signed area of triangle `t` (positive = counterclockwise).
    pub fn doubled_area(&self, t: [usize; 3]) -> i64 {
        let [a, b, c] = t.map(|i| self.points[i]);
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    }
}

/// Projects the rays of a Calabi-Yau fan to the height-one plane.
///
/// The plane frame completes ν to a basis of M with determinant +1, so the
/// 2D orientation agrees with the orientation of N.
pub fn height_one_polygon(fan: &Fan, cy: &CYStructure) -> Result<HeightOnePolygon> {
    if fan.rays().iter().any(|r| r.pair(cy.nu) != 1) {
        return Err(Error::NotCalabiYau);
    }
    let u = intlin::covector_completion(cy.nu)?;
    let uinv = intlin::inverse_unimodular3(u).ok_or(Error::Overflow)?;
    let points: Vec<[i64; 2]> = fan
        .rays()
        .iter()
        .map(|r| {
            let c = r.transform(&uinv);
            [c.0[1], c.0[2]]
        })
        .collect();
    let mut poly = HeightOnePolygon { points, triangles: Vec::new(), frame: u };
    poly.triangles = fan
        .cones()
        .iter()
        .map(|c| {
            let [a, b, cc] = c.0;
            if poly.doubled_area([a, b, cc]) >= 0 {
                [a, b, cc]
            } else {
                [a, cc, b]
            }
        })
        .collect();
    Ok(poly)
}

/// Rays whose divisor is compact: every wall through the ray is shared by
/// two maximal cones, so its star closes up.
pub fn compact_divisor_rays(fan: &Fan) -> BTreeSet<usize> {
    (0..fan.num_rays())
        .filter(|&i| {
            let mut any = false;
            for w in fan.walls().iter().filter(|w| w.rays.contains(&i)) {
                any = true;
                if !w.is_compact() {
                    return false;
                }
            }
            any
        })
        .collect()
}

/// 2D primitive generators of the toric surface of the divisor of `ray`,
/// in counterclockwise order.
pub fn divisor_surface_fan(fan: &Fan, ray: usize) -> Result<Vec<[i64; 2]>> {
    if ray >= fan.num_rays() {
        return Err(Error::RayOutOfRange(ray));
    }
    if !compact_divisor_rays(fan).contains(&ray) {
        return Err(Error::NotCompactRay(ray));
    }
    let v = fan.ray(ray);
    // U has ν-style first column dual to v; the basis (v, b2, b3) is
    // (U^{-1})^T, so coordinates in it are U^T·u
    let u = intlin::covector_completion(v.0)?;
    let ut = [[u[0][0], u[1][0], u[2][0]], [u[0][1], u[1][1], u[2][1]], [u[0][2], u[1][2], u[2][2]]];
    let mut gens: Vec<[i64; 2]> = fan
        .neighbors(ray)
        .into_iter()
        .map(|j| {
            let c = fan.ray(j).transform(&ut);
            [c.0[1], c.0[2]]
        })
        .collect();
    // orientation: (v, b2, b3) has det +1 because V = U^{-1} has det +1
    gens.sort_by(|a, b| angle_cmp(*a, *b));
    Ok(gens)
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Exact counterclockwise angle comparison from the positive x-axis.
pub fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> std::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

/// Whether the compact toric surface of `ray` is Fano: every generator of
/// its 2D fan is a vertex of the convex hull of the generators.
pub fn is_fano_surface(fan: &Fan, ray: usize) -> Result<bool> {
    let g = divisor_surface_fan(fan, ray)?;
    let n = g.len();
    Ok((0..n).all(|i| {
        let prev = g[(i + n - 1) % n];
        let cur = g[i];
        let next = g[(i + 1) % n];
        let d1 = [cur[0] - prev[0], cur[1] - prev[1]];
        let d2 = [next[0] - cur[0], next[1] - cur[1]];
        d1[0] * d2[1] - d1[1] * d2[0] > 0
    }))
}

/// Standard fans used throughout tests and examples.
pub mod catalog {
    use super::Fan;

    /// K_{P²}: interior ray 0.
    pub fn local_p2() -> Fan {
        Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1]],
            &[[0, 1, 2], [0, 2, 3], [0, 1, 3]],
        )
    }

    /// K_{F₁}: the K_{P²} rays plus (1,1,1) (ray 4); interior ray 0.
    pub fn local_f1() -> Fan {
        Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1], [1, 1, 1]],
            &[[0, 2, 3], [0, 1, 3], [0, 1, 4], [0, 2, 4]],
        )
    }

    /// Resolved conifold with the wall ⟨(0,0,1),(1,1,1)⟩.
    pub fn conifold() -> Fan {
        Fan::from_arrays(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]], &[[0, 1, 3], [0, 2, 3]])
    }

    /// K_{P¹×P¹}: interior ray 0.
    pub fn local_f0() -> Fan {
        Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]],
            &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 4]],
        )
    }

    /// K_{F₃}: interior ray 0, surface generators (1,0),(0,1),(-1,-3),(0,-1).
    pub fn local_f3() -> Fan {
        Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -3, 1], [0, -1, 1]],
            &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 4]],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive([0, 0, 3]).unwrap(), LatticeVector::new(0, 0, 1));
        assert_eq!(primitive([2, 4, 6]).unwrap(), LatticeVector::new(1, 2, 3));
        assert_eq!(primitive([1, 1, 1]).unwrap(), LatticeVector::new(1, 1, 1));
        assert_eq!(primitive([-2, 0, 4]).unwrap(), LatticeVector::new(-1, 0, 2));
        assert_eq!(primitive([0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn local_p2_is_valid_and_smooth() {
        let r = validate_fan(&local_p2());
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(r.is_smooth());
    }

    #[test]
    fn overlapping_cones_violate_fan_axiom() {
        let fan = Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1]],
            &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        );
        let r = validate_fan(&fan);
        let bad: Vec<_> = r
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::FanAxiom(a, b) => Some((*a, *b)),
                _ => None,
            })
            .collect();
        assert_eq!(bad.len(), 3);
        assert!(bad.iter().all(|(a, b)| *a == Cone3([1, 2, 3]) || *b == Cone3([1, 2, 3])));
    }

    #[test]
    fn non_smooth_cone_is_flagged() {
        let fan = Fan::from_arrays(&[[1, 0, 0], [0, 1, 0], [1, 1, 2]], &[[0, 1, 2]]);
        let r = validate_fan(&fan);
        assert!(r.is_valid());
        assert_eq!(r.non_smooth_cones(), vec![(Cone3([0, 1, 2]), 2)]);
    }

    #[test]
    fn disjoint_and_crossing_cones() {
        // two cones sharing no ray but crossing each other
        let fan = Fan::from_arrays(
            &[[1, 0, 1], [0, 1, 1], [-1, -1, 1], [-1, 0, 1], [0, -1, 1], [1, 1, 1]],
            &[[0, 1, 2], [3, 4, 5]],
        );
        assert!(validate_fan(&fan).violations.iter().any(|v| matches!(v, Violation::FanAxiom(..))));
        // two cones meeting only at the origin
        let fan = Fan::from_arrays(
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]],
            &[[0, 1, 2], [3, 4, 5]],
        );
        assert!(validate_fan(&fan).is_valid());
    }

    #[test]
    fn duplicate_and_degenerate() {
        let fan = Fan::from_arrays(&[[0, 0, 1], [1, 0, 1], [0, 0, 1], [2, 0, 2]], &[[0, 1, 3]]);
        let r = validate_fan(&fan);
        assert!(r.violations.contains(&Violation::DuplicateRay(0, 2)));
        assert!(r.violations.contains(&Violation::NonPrimitiveRay(3)));
        assert!(r.violations.contains(&Violation::DegenerateCone(Cone3([0, 1, 3]))));
        assert!(r.violations.contains(&Violation::RaysDoNotSpan));
    }

    #[test]
    fn cy_vectors() {
        assert_eq!(cy_vector(&local_p2()).unwrap().nu, [0, 0, 1]);
        assert_eq!(cy_vector(&conifold()).unwrap().nu, [0, 0, 1]);
        let compact = Fan::from_arrays(
            &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1], [0, 0, -1]],
            &[[0, 1, 2], [0, 2, 3], [0, 1, 3], [1, 2, 4], [2, 3, 4], [1, 3, 4]],
        );
        assert_eq!(cy_vector(&compact), Err(Error::NotCalabiYau));
    }

    #[test]
    fn polygons() {
        let f = local_p2();
        let p = height_one_polygon(&f, &cy_vector(&f).unwrap()).unwrap();
        assert_eq!(p.points, vec![[0, 0], [1, 0], [0, 1], [-1, -1]]);
        assert_eq!(p.triangles.len(), 3);
        for t in &p.triangles {
            assert!(t.contains(&0));
            assert_eq!(p.doubled_area(*t), 1);
        }
        let f = local_f1();
        let p = height_one_polygon(&f, &cy_vector(&f).unwrap()).unwrap();
        assert_eq!(p.points, vec![[0, 0], [1, 0], [0, 1], [-1, -1], [1, 1]]);
        let f = conifold();
        let p = height_one_polygon(&f, &cy_vector(&f).unwrap()).unwrap();
        assert_eq!(p.points, vec![[0, 0], [1, 0], [0, 1], [1, 1]]);
        assert_eq!(p.triangles.len(), 2);
    }

    #[test]
    fn compact_divisors() {
        assert_eq!(compact_divisor_rays(&local_p2()), BTreeSet::from([0]));
        assert_eq!(compact_divisor_rays(&local_f1()), BTreeSet::from([0]));
        assert!(compact_divisor_rays(&conifold()).is_empty());
    }

    #[test]
    fn fano_surfaces() {
        assert!(is_fano_surface(&local_f1(), 0).unwrap());
        assert!(is_fano_surface(&local_p2(), 0).unwrap());
        assert!(is_fano_surface(&local_f0(), 0).unwrap());
        assert!(validate_fan(&local_f3()).is_valid());
        assert!(!is_fano_surface(&local_f3(), 0).unwrap());
        assert_eq!(is_fano_surface(&local_f1(), 1), Err(Error::NotCompactRay(1)));
    }

    #[test]
    fn lattice_equivalence() {
        let f = local_f1();
        let m = [[1, 2, 0], [0, 1, 0], [3, -1, 1]];
        assert!(f.is_lattice_equivalent(&f.transform(&m)));
        assert!(f.is_lattice_equivalent(&f.permute_rays(&[4, 3, 2, 1, 0])));
        assert!(!f.is_lattice_equivalent(&local_f0()));
    }
}
