//! Property checks shared by the proptest suites and the acceptance run.
//! Each returns `Err` with a description on the first violation.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use toric_gw::homology::{
    exceptional_line, flop_transport, pipeline_classes, wall_class, CurveClass, NamedBasis,
};
use toric_gw::lattice::catalog::*;
use toric_gw::lattice::{compact_divisor_rays, validate_fan, Cone3, Fan, LatticeVector};
use toric_gw::qpartitions::{LaurentPoly, QRational};
use toric_gw::surgery::{
    blowup_fixed_point, compactify, flop, open_invariant_surgery_all, remove_ray, SurgeryStep,
};
use toric_gw::vertex::{
    build_web, extract_gv, free_energy, gw_table, open_gw, partition_function, FixedPointChoice,
    OpenInvariantQuery, Web,
};

pub type Check = Result<(), TestCaseError>;

pub fn catalog() -> Vec<(&'static str, Fan)> {
    vec![
        ("conifold", conifold()),
        ("K_P2", local_p2()),
        ("K_F0", local_f0()),
        ("K_F1", local_f1()),
        ("K_F3", local_f3()),
    ]
}

/// Rays as vectors, cones as sets of ray vectors: equality up to numbering.
pub fn geometric_form(fan: &Fan) -> (BTreeSet<LatticeVector>, BTreeSet<BTreeSet<LatticeVector>>) {
    let rays = fan.rays().iter().copied().collect();
    let cones = fan.cones().iter().map(|c| c.0.iter().map(|&i| fan.ray(i)).collect()).collect();
    (rays, cones)
}

fn matmul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut m = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

/// Products of elementary shears, sign changes and coordinate swaps.
pub fn gl3z() -> impl Strategy<Value = [[i64; 3]; 3]> {
    let elementary = (0usize..3, 0usize..3, -2i64..=2, 0u8..3).prop_map(|(i, j, c, kind)| {
        let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        match kind {
            0 if i != j => m[i][j] = c,
            1 => m[i][i] = -1,
            _ if i != j => {
                m[i][i] = 0;
                m[j][j] = 0;
                m[i][j] = 1;
                m[j][i] = 1;
            }
            _ => {}
        }
        m
    });
    proptest::collection::vec(elementary, 1..6)
        .prop_map(|ms| ms.iter().fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, m| matmul(&acc, m)))
}

pub fn gl3z_invariance(fan: &Fan, m: &[[i64; 3]; 3]) -> Check {
    let image = fan.transform(m);
    let (a, b) = (validate_fan(fan), validate_fan(&image));
    prop_assert_eq!(a.is_valid(), b.is_valid());
    prop_assert_eq!(a.is_smooth(), b.is_smooth());
    prop_assert_eq!(compact_divisor_rays(fan), compact_divisor_rays(&image));
    prop_assert!(fan.is_lattice_equivalent(&image));
    Ok(())
}

/// Flopping a simple-flop wall and then the new wall returns the fan.
pub fn flop_twice_is_identity(fan: &Fan) -> Check {
    for w in fan.compact_walls() {
        let Ok((f1, step)) = flop(fan, w.rays) else { continue };
        let SurgeryStep::Flop { apexes, .. } = step else { unreachable!() };
        let (f2, _) = flop(&f1, apexes).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(geometric_form(&f2), geometric_form(fan), "wall {:?}", w.rays);
    }
    Ok(())
}

/// Removing v∞ after compactifying at a compact ray returns the fan.
pub fn decompactify_compactify(fan: &Fan) -> Check {
    for r in compact_divisor_rays(fan) {
        let (x, step) = compactify(fan, r).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let SurgeryStep::Compactify { new_ray, .. } = step else { unreachable!() };
        let (back, _) = remove_ray(&x, new_ray).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(geometric_form(&back), geometric_form(fan));
    }
    Ok(())
}

/// The class of each flopped wall maps to minus the class of the new wall.
pub fn flop_negates_wall(fan: &Fan) -> Check {
    for w in fan.compact_walls() {
        let Ok((f1, step)) = flop(fan, w.rays) else { continue };
        let SurgeryStep::Flop { apexes, .. } = step.clone() else { unreachable!() };
        let before = wall_class(fan, w.rays).unwrap();
        let after = wall_class(&f1, apexes).unwrap();
        prop_assert_eq!(flop_transport(&step, &before).unwrap(), -&after);
    }
    Ok(())
}

/// After compactifying at `d0` and blowing up each cone at infinity, the
/// three walls through the new ray carry the same class.
pub fn exceptional_line_is_wall_independent(fan: &Fan, d0: usize) -> Check {
    let (x, step) = compactify(fan, d0).unwrap();
    let SurgeryStep::Compactify { new_ray, .. } = step else { unreachable!() };
    for cone in x.cones().iter().filter(|c| c.contains(new_ray)) {
        let (x1, step) = blowup_fixed_point(&x, *cone).unwrap();
        let SurgeryStep::Blowup { new_ray: w, .. } = step else { unreachable!() };
        let classes: Vec<CurveClass> = cone.0.iter().map(|&r| wall_class(&x1, [r.min(w), r.max(w)]).unwrap()).collect();
        prop_assert!(classes.windows(2).all(|p| p[0] == p[1]), "{:?}", classes);
        prop_assert_eq!(exceptional_line(&x1, &step).unwrap(), classes[0].clone());
        prop_assert_eq!(classes[0].entries()[w], -1);
    }
    Ok(())
}

fn in_kernel(fan: &Fan, c: &CurveClass) -> Check {
    prop_assert_eq!(c.len(), fan.num_rays());
    for k in 0..3 {
        let s: i64 = c.entries().iter().zip(fan.rays()).map(|(d, r)| d * r.0[k]).sum();
        prop_assert_eq!(s, 0, "{} on {}", c, fan);
    }
    Ok(())
}

/// Every class produced along the pipeline, in its own fan, lies in the
/// kernel.
pub fn pipeline_classes_in_kernel(fan0: &Fan, d0: usize, coords: &[i64]) -> Check {
    let basis = NamedBasis::from_walls(&toric_gw::homology::kernel_basis(fan0).unwrap());
    let alpha = basis.expand(coords);
    for (_, run) in open_invariant_surgery_all(fan0, d0).unwrap() {
        let Ok((w0, trace, _)) = run else { continue };
        let fans = trace.fans().unwrap();
        let pc = pipeline_classes(&trace, &alpha).map_err(|e| TestCaseError::fail(e.to_string()))?;
        in_kernel(&fans[0], &pc.alpha)?;
        for c in [&pc.beta, &pc.fiber] {
            in_kernel(&fans[1], c)?;
        }
        for c in [&pc.beta1, &pc.exceptional] {
            in_kernel(&fans[2], c)?;
        }
        in_kernel(&fans[3], &pc.flopped)?;
        in_kernel(&w0, &pc.alpha_prime)?;
    }
    Ok(())
}

/// Extraction succeeds (integrality is enforced inside) and table classes
/// lie in the kernel.
pub fn gv_integral(fan: &Fan, cap: usize) -> Check {
    let basis = NamedBasis::from_walls(&toric_gw::homology::kernel_basis(fan).unwrap());
    let table = gw_table(fan, &basis, cap).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for row in &table.rows {
        in_kernel(fan, &row.class)?;
    }
    Ok(())
}

/// A relabelling of the web: edge reversals and vertex rotations.
#[derive(Debug, Clone)]
pub enum Gauge {
    Reverse(usize),
    Rotate(usize, usize),
}

pub fn gauges() -> impl Strategy<Value = Vec<Gauge>> {
    let g = prop_oneof![
        (0usize..8).prop_map(Gauge::Reverse),
        (0usize..8, 1usize..3).prop_map(|(v, k)| Gauge::Rotate(v, k)),
    ];
    proptest::collection::vec(g, 1..6)
}

pub fn apply_gauge(web: &mut Web, moves: &[Gauge]) {
    for m in moves {
        match *m {
            Gauge::Reverse(e) if !web.edges.is_empty() => web.reverse_edge(e % web.edges.len()),
            Gauge::Rotate(v, k) => web.rotate_vertex(v % web.vertices.len(), k),
            _ => {}
        }
    }
}

pub fn gauge_invariance(fan: &Fan, cap: usize, moves: &[Gauge]) -> Check {
    let web = build_web(fan).unwrap();
    let mut moved = web.clone();
    apply_gauge(&mut moved, moves);
    let a = partition_function(&web, cap).unwrap().coefficients;
    let b = partition_function(&moved, cap).unwrap().coefficients;
    prop_assert_eq!(a, b, "moves {:?}", moves);
    Ok(())
}

/// F_β is invariant under t ↦ 1/t.
pub fn inversion_symmetry(fan: &Fan, cap: usize) -> Check {
    let mut z = partition_function(&build_web(fan).unwrap(), cap).unwrap();
    for (c, f) in free_energy(&mut z).coefficients {
        prop_assert_eq!(f.invert_variable(), f, "{}", c);
    }
    Ok(())
}

/// Repeated runs give identical tables.
pub fn determinism(fan: &Fan, cap: usize) -> Check {
    let basis = NamedBasis::from_walls(&toric_gw::homology::kernel_basis(fan).unwrap());
    let a = gw_table(fan, &basis, cap).unwrap();
    let b = gw_table(fan, &basis, cap).unwrap();
    prop_assert_eq!(a.to_json(), b.to_json());
    let mut z = partition_function(&build_web(fan).unwrap(), cap).unwrap();
    let gv = extract_gv(&free_energy(&mut z)).unwrap();
    prop_assert_eq!(gv.len(), a.rows.len());
    Ok(())
}

/// All three fixed points of K_P2 give the same open invariant.
pub fn choice_independence(k: i64) -> Check {
    let fan0 = local_p2();
    let alpha = CurveClass::new(&fan0, vec![-3 * k, k, k, k]).unwrap();
    let q = OpenInvariantQuery { fan0, d0: 0, alpha, fixed_point: FixedPointChoice::All };
    let r = open_gw(&q, None).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(r.runs.len(), 3);
    let values: BTreeSet<i64> = r.runs.iter().map(|run| run.value).collect();
    prop_assert_eq!(values.len(), 1);
    let points: BTreeSet<Cone3> = r.runs.iter().map(|run| run.fixed_point).collect();
    prop_assert_eq!(points.len(), 3);
    Ok(())
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, proptest::collection::vec(-4i64..=4, 1..5)).prop_map(|(lo, c)| LaurentPoly::from_i64s(lo, &c))
}

pub fn qrational() -> impl Strategy<Value = QRational> {
    (laurent(), laurent())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| QRational::new(n, d).unwrap())
}

pub fn qrational_laws(a: &QRational, b: &QRational, c: &QRational) -> Check {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a + b) - b, a.clone());
    if !a.is_zero() {
        prop_assert_eq!(a * &a.inv().unwrap(), QRational::one());
    }
    prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
    prop_assert_eq!((a * b).invert_variable(), &a.invert_variable() * &b.invert_variable());
    Ok(())
}

/// n⁰ on K_F1 against n⁰ on its flop along the (−1,−1) curve e, for every
/// class complete on both sides at `cap` other than multiples of e.
/// Returns the number of classes compared.
pub fn flop_invariance(cap: usize) -> Result<usize, TestCaseError> {
    let x = local_f1();
    let e = wall_class(&x, [0, 4]).unwrap();
    let (y, step) = flop(&x, [0, 4]).map_err(|err| TestCaseError::fail(err.to_string()))?;
    let gv = |fan: &Fan| {
        let mut z = partition_function(&build_web(fan).unwrap(), cap).unwrap();
        let complete: BTreeSet<CurveClass> = z.complete_classes().into_iter().collect();
        let gv = extract_gv(&free_energy(&mut z)).unwrap();
        (complete, gv)
    };
    let (cx, nx) = gv(&x);
    let (cy, ny) = gv(&y);
    let mut compared = 0;
    for beta in &cx {
        let multiple_of_e = (1..=cap as i64).any(|m| *beta == m * &e || *beta == -m * &e);
        let image = flop_transport(&step, beta).unwrap();
        if multiple_of_e || !cy.contains(&image) {
            continue;
        }
        let a = nx.get(beta).copied().unwrap_or(0);
        let b = ny.get(&image).copied().unwrap_or(0);
        prop_assert_eq!(a, b, "class {}", beta);
        compared += 1;
    }
    Ok(compared)
}
