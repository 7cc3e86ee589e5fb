//! Curve classes as kernel vectors: d ∈ Z^rays with Σ dᵢvᵢ = 0, where dᵢ is
//! the intersection number with the toric divisor Dᵢ. Transports through
//! surgery steps act directly on these vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::Fan;
use crate::surgery::SurgeryStep;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    entries: Vec<i64>,
}

/// Whether Σ dᵢvᵢ = 0.
pub fn in_kernel(fan: &Fan, d: &[i64]) -> bool {
    d.len() == fan.num_rays()
        && (0..3).all(|k| fan.rays().iter().zip(d).map(|(r, &x)| r.0[k] as i128 * x as i128).sum::<i128>() == 0)
}

impl CurveClass {
    /// Checks length and the kernel condition.
    pub fn new(fan: &Fan, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != fan.num_rays() {
            return Err(Error::ClassLength { expected: fan.num_rays(), got: entries.len() });
        }
        if !in_kernel(fan, &entries) {
            return Err(Error::NotInKernel);
        }
        Ok(Self { entries })
    }

    /// No kernel check; callers guarantee it.
    pub(crate) fn from_entries(entries: Vec<i64>) -> Self {
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self { entries: vec![0; n] }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// β / k if every entry is divisible by k.
    pub fn divide(&self, k: i64) -> Option<Self> {
        if self.entries.iter().all(|x| x % k == 0) {
            Some(Self { entries: self.entries.iter().map(|x| x / k).collect() })
        } else {
            None
        }
    }

    /// Divisibility index: gcd of the entries (0 for the zero class).
    pub fn content(&self) -> i64 {
        self.entries.iter().fold(0, |g, &x| intlin::gcd(g, x))
    }
}

impl Add for &CurveClass {
    type Output = CurveClass;
    fn add(self, o: &CurveClass) -> CurveClass {
        assert_eq!(self.len(), o.len());
        CurveClass { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CurveClass {
    type Output = CurveClass;
    fn sub(self, o: &CurveClass) -> CurveClass {
        self + &(-o)
    }
}

impl Neg for &CurveClass {
    type Output = CurveClass;
    fn neg(self) -> CurveClass {
        CurveClass { entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl Mul<&CurveClass> for i64 {
    type Output = CurveClass;
    fn mul(self, c: &CurveClass) -> CurveClass {
        CurveClass { entries: c.entries.iter().map(|a| self * a).collect() }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The kernel lattice of a fan with its HNF basis and the classes of its
/// compact walls.
#[derive(Debug, Clone)]
pub struct ClassLattice {
    pub fan: Fan,
    pub basis: Vec<CurveClass>,
    pub compact_wall_classes: BTreeMap<[usize; 2], CurveClass>,
}

impl ClassLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn kernel_basis(fan: &Fan) -> Result<ClassLattice> {
    let cols: Vec<[i64; 3]> = fan.rays().iter().map(|r| r.0).collect();
    let (rank, k) = intlin::integer_kernel(&cols)?;
    if rank < 3 {
        return Err(Error::RaysDoNotSpan);
    }
    let compact_wall_classes = fan
        .compact_walls()
        .iter()
        .filter_map(|w| wall_class(fan, w.rays).ok().map(|c| (w.rays, c)))
        .collect();
    Ok(ClassLattice {
        fan: fan.clone(),
        basis: k.into_iter().map(CurveClass::from_entries).collect(),
        compact_wall_classes,
    })
}

/// The class of the torus-invariant curve of a compact wall ⟨u₁,u₂⟩: +1 at
/// both apexes, the relation coefficients at u₁, u₂.
pub fn wall_class(fan: &Fan, wall: [usize; 2]) -> Result<CurveClass> {
    let ([a, b], [c1, c2]) = fan.wall_relation(wall)?;
    let mut d = vec![0; fan.num_rays()];
    d[a] += 1;
    d[b] += 1;
    d[wall[0]] += c1;
    d[wall[1]] += c2;
    CurveClass::new(fan, d)
}

/// The fiber class h of a compactified fan: 1 at v₀ and v_∞.
pub fn fiber_class(fan: &Fan, i0: usize, i_inf: usize) -> Result<CurveClass> {
    let n = fan.num_rays();
    if i0 >= n || i_inf >= n {
        return Err(Error::RayOutOfRange(i0.max(i_inf)));
    }
    if i0 == i_inf || fan.ray(i0) != -fan.ray(i_inf) {
        return Err(Error::RaysNotOpposite(i0, i_inf));
    }
    let mut d = vec![0; n];
    d[i0] = 1;
    d[i_inf] = 1;
    Ok(CurveClass::from_entries(d))
}

/// Total transform under a blowup: extension by 0 at the new ray.
pub fn blowup_transport(step: &SurgeryStep, class: &CurveClass) -> Result<CurveClass> {
    let SurgeryStep::Blowup { new_ray, .. } = step else {
        return Err(Error::WrongStepKind("Blowup"));
    };
    extend_by_zero(class, *new_ray)
}

fn extend_by_zero(class: &CurveClass, new_ray: usize) -> Result<CurveClass> {
    if class.len() != new_ray {
        return Err(Error::ClassLength { expected: new_ray, got: class.len() });
    }
    let mut d = class.entries.clone();
    d.push(0);
    Ok(CurveClass::from_entries(d))
}

/// The line class of the exceptional divisor, computed as the wall class
/// of each ⟨w,cᵢ⟩; the three must agree.
pub fn exceptional_line(fan1: &Fan, step: &SurgeryStep) -> Result<CurveClass> {
    let SurgeryStep::Blowup { cone, new_ray, .. } = step else {
        return Err(Error::WrongStepKind("Blowup"));
    };
    let classes: Vec<CurveClass> = cone.0.iter().map(|&c| wall_class(fan1, [c.min(*new_ray), c.max(*new_ray)])).collect::<Result<_>>()?;
    if classes.iter().any(|c| c != &classes[0]) {
        return Err(Error::InvalidFan("exceptional walls have different classes".into()));
    }
    Ok(classes[0].clone())
}

/// π!α − e.
pub fn strict_transform(fan1: &Fan, step: &SurgeryStep, alpha: &CurveClass) -> Result<CurveClass> {
    Ok(&blowup_transport(step, alpha)? - &exceptional_line(fan1, step)?)
}

/// The flop acts as the identity on kernel vectors.
pub fn flop_transport(step: &SurgeryStep, class: &CurveClass) -> Result<CurveClass> {
    match step {
        SurgeryStep::Flop { .. } => Ok(class.clone()),
        _ => Err(Error::WrongStepKind("Flop")),
    }
}

/// Restriction to the fan after `remove_ray`; the removed entry must be 0.
pub fn descend(step: &SurgeryStep, class: &CurveClass) -> Result<CurveClass> {
    let SurgeryStep::RemoveRay { ray, .. } = step else {
        return Err(Error::WrongStepKind("RemoveRay"));
    };
    let entry = *class.entries.get(*ray).ok_or(Error::RayOutOfRange(*ray))?;
    if entry != 0 {
        return Err(Error::ClassDoesNotDescend { ray: *ray, entry });
    }
    let mut d = class.entries.clone();
    d.remove(*ray);
    Ok(CurveClass::from_entries(d))
}

/// Inclusion of a class into the compactified fan (0 at v_∞).
pub fn compactify_transport(step: &SurgeryStep, class: &CurveClass) -> Result<CurveClass> {
    let SurgeryStep::Compactify { new_ray, .. } = step else {
        return Err(Error::WrongStepKind("Compactify"));
    };
    extend_by_zero(class, *new_ray)
}

/// Classes along the pipeline for a disc class β₀ + α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineClasses {
    /// α on the initial fan.
    pub alpha: CurveClass,
    /// β = α + h on the compactified fan.
    pub beta: CurveClass,
    /// h, the fiber class.
    pub fiber: CurveClass,
    /// e, the exceptional line.
    pub exceptional: CurveClass,
    /// β₁ = π!(α + h) − e on the blown-up fan.
    pub beta1: CurveClass,
    /// The same vector on the flopped fan.
    pub flopped: CurveClass,
    /// α′ on W₀.
    pub alpha_prime: CurveClass,
}

/// Transports α through a trace produced by the open-invariant pipeline
/// (steps Compactify, Blowup, Flop, RemoveRay).
pub fn pipeline_classes(trace: &crate::surgery::SurgeryTrace, alpha: &CurveClass) -> Result<PipelineClasses> {
    let fans = trace.fans()?;
    let [s0, s1, s2, s3] = trace.steps.as_slice() else {
        return Err(Error::TraceMismatch("expected four pipeline steps".into()));
    };
    CurveClass::new(&fans[0], alpha.entries.clone())?;
    let SurgeryStep::Compactify { base_ray, new_ray, .. } = s0 else {
        return Err(Error::WrongStepKind("Compactify"));
    };
    let a = compactify_transport(s0, alpha)?;
    let fiber = fiber_class(&fans[1], *base_ray, *new_ray)?;
    let beta = &a + &fiber;
    let exceptional = exceptional_line(&fans[2], s1)?;
    let beta1 = &blowup_transport(s1, &beta)? - &exceptional;
    let flopped = flop_transport(s2, &beta1)?;
    let alpha_prime = descend(s3, &flopped)?;
    CurveClass::new(&fans[4], alpha_prime.entries.clone())?;
    Ok(PipelineClasses { alpha: alpha.clone(), beta, fiber, exceptional, beta1, flopped, alpha_prime })
}

/// Integer coordinates of a class in a basis of classes.
pub fn class_in_basis(basis: &[CurveClass], class: &CurveClass) -> Result<Vec<i64>> {
    let rows: Vec<Vec<i64>> = basis.iter().map(|b| b.entries.clone()).collect();
    intlin::solve_in_basis(&rows, &class.entries)
}

/// Named classes used as reporting coordinates (e.g. Table-style (e, f)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedBasis {
    pub names: Vec<String>,
    pub classes: Vec<CurveClass>,
}

impl NamedBasis {
    pub fn new(fan: &Fan, named: Vec<(String, Vec<i64>)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut classes = Vec::new();
        for (n, v) in named {
            names.push(n);
            classes.push(CurveClass::new(fan, v)?);
        }
        let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.entries.clone()).collect();
        if intlin::rank(&rows)? != classes.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { names, classes })
    }

    /// The HNF kernel basis, named b0, b1, ….
    pub fn from_lattice(lattice: &ClassLattice) -> Self {
        Self {
            names: (0..lattice.rank()).map(|i| format!("b{i}")).collect(),
            classes: lattice.basis.clone(),
        }
    }

    /// Compact wall classes named `C<a,b>`, picked greedily in wall order,
    /// when they form a lattice basis; the HNF basis otherwise.
    pub fn from_walls(lattice: &ClassLattice) -> Self {
        let mut chosen: Vec<([usize; 2], CurveClass)> = Vec::new();
        for (w, c) in &lattice.compact_wall_classes {
            if chosen.len() == lattice.rank() {
                break;
            }
            let mut trial: Vec<CurveClass> = chosen.iter().map(|(_, c)| c.clone()).collect();
            trial.push(c.clone());
            if !matches!(class_in_basis(&trial, &CurveClass::zero(c.len())), Err(Error::DependentBasis)) {
                chosen.push((*w, c.clone()));
            }
        }
        let classes: Vec<CurveClass> = chosen.iter().map(|(_, c)| c.clone()).collect();
        let spans = chosen.len() == lattice.rank() && lattice.basis.iter().all(|b| class_in_basis(&classes, b).is_ok());
        if !spans {
            return Self::from_lattice(lattice);
        }
        Self { names: chosen.iter().map(|(w, _)| format!("C<{},{}>", w[0], w[1])).collect(), classes }
    }

    pub fn coordinates(&self, class: &CurveClass) -> Result<Vec<i64>> {
        class_in_basis(&self.classes, class)
    }

    pub fn expand(&self, coords: &[i64]) -> CurveClass {
        let n = self.classes.first().map(|c| c.len()).unwrap_or(0);
        self.classes.iter().zip(coords).fold(CurveClass::zero(n), |acc, (c, &k)| &acc + &(k * c))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// e = class of the wall ⟨0,4⟩ and f = (−2,0,0,1,1) on `catalog::local_f1`.
pub fn local_f1_basis() -> NamedBasis {
    let fan = crate::lattice::catalog::local_f1();
    let e = wall_class(&fan, [0, 4]).expect("e wall");
    NamedBasis::new(&fan, vec![("e".into(), e.entries.clone()), ("f".into(), vec![-2, 0, 0, 1, 1])]).unwrap()
}

/// ℓ = class of the wall ⟨0,1⟩ on `catalog::local_p2`.
pub fn local_p2_basis() -> NamedBasis {
    let fan = crate::lattice::catalog::local_p2();
    let l = wall_class(&fan, [0, 1]).expect("line wall");
    NamedBasis::new(&fan, vec![("l".into(), l.entries.clone())]).unwrap()
}
