//! The acceptance criteria, each run against its time budget. One result
//! line per criterion is written straight to stderr so it shows up in the
//! captured test output.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::props::*;
use proptest::test_runner::{Config, TestRunner};
use toric_gw::homology::{local_f1_basis, pipeline_classes, wall_class, CurveClass, NamedBasis};
use toric_gw::lattice::catalog::*;
use toric_gw::surgery::open_invariant_surgery_all;
use toric_gw::vertex::{gw_table, open_gw, FixedPointChoice, OpenInvariantQuery};

fn report(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn criterion(n: u32, name: &str, budget: Duration, body: impl FnOnce() -> String) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget of {budget:?}")),
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, msg)
        }
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    report(&format!("acceptance {n} [{verdict}] {name} ({:.2?}): {detail}", elapsed));
    ok
}

fn open_value(k: i64, choice: FixedPointChoice) -> i64 {
    let fan0 = local_p2();
    let alpha = CurveClass::new(&fan0, vec![-3 * k, k, k, k]).unwrap();
    let q = OpenInvariantQuery { fan0, d0: 0, alpha, fixed_point: choice };
    open_gw(&q, None).unwrap().value()
}

fn kf1_table() -> String {
    let table = gw_table(&local_f1(), &local_f1_basis(), 7).unwrap();
    let want = [
        ([0, 1], -2),
        ([1, 0], 1),
        ([1, 1], 3),
        ([1, 2], 5),
        ([1, 3], 7),
        ([2, 2], -6),
        ([2, 3], -32),
        ([3, 3], 27),
        ([2, 4], -110),
        ([3, 4], 286),
    ];
    for (c, v) in want {
        assert_eq!(table.get(&c), Some(v), "n(a,b) for (a,b) = {c:?}");
    }
    format!("10 entries exact at cap 7 ({} classes)", table.rows.len())
}

fn open_pipeline() -> String {
    let mut got = Vec::new();
    for (k, want) in [(1, -2), (2, 5), (3, -32), (4, 286)] {
        let v = open_value(k, FixedPointChoice::All);
        assert_eq!(v, want, "k = {k}");
        got.push(v);
    }
    format!("k = 1..4 give {got:?}")
}

fn structural() -> String {
    let runs = open_invariant_surgery_all(&local_p2(), 0).unwrap();
    assert_eq!(runs.len(), 3);
    for (fp, run) in runs {
        let (w0, trace, rays) = run.unwrap();
        assert!(w0.is_lattice_equivalent(&local_f1()), "{fp}");
        let w_vec = trace.fans().unwrap()[2].ray(rays.w);
        let w = w0.ray_index(w_vec).unwrap();
        let e = wall_class(&w0, [rays.u0.min(w), rays.u0.max(w)]).unwrap();
        let transport = |k: i64| {
            let alpha = CurveClass::new(&local_p2(), vec![-3 * k, k, k, k]).unwrap();
            pipeline_classes(&trace, &alpha).unwrap().alpha_prime
        };
        let f = transport(1);
        let basis = NamedBasis::new(&w0, vec![("e".into(), e.entries().to_vec()), ("f".into(), f.entries().to_vec())])
            .unwrap();
        for k in 1..=6 {
            assert_eq!(basis.coordinates(&transport(k)).unwrap(), vec![k - 1, k], "{fp}, k = {k}");
        }
        if w0 == local_f1() {
            assert_eq!(e, local_f1_basis().classes[0]);
            assert_eq!(f, local_f1_basis().classes[1]);
        }
    }
    "3 fixed points; W0 ≅ K_F1; α' = (k-1)e + kf for k ≤ 6".into()
}

fn flop() -> String {
    let n = flop_invariance(3).unwrap();
    assert!(n >= 3);
    format!("{n} classes agree at cap 3")
}

fn conifold_oracle() -> String {
    let con = conifold();
    let basis = NamedBasis::new(&con, vec![("c".into(), vec![-1, 1, 1, -1])]).unwrap();
    let t = gw_table(&con, &basis, 3).unwrap();
    assert_eq!([t.get(&[1]), t.get(&[2]), t.get(&[3])], [Some(1), Some(0), Some(0)]);
    "n1 = 1, n2 = n3 = 0".into()
}

fn schur_oracle() -> String {
    let n = common::schur_oracle_sweep(4, 3, 8, 16);
    format!("{n} (shape, shift) pairs agree")
}

fn run_prop<S: proptest::strategy::Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Check,
) {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).unwrap();
}

fn property_suites() -> String {
    for (name, fan) in catalog() {
        flop_twice_is_identity(&fan).unwrap_or_else(|e| panic!("flop twice on {name}: {e}"));
        decompactify_compactify(&fan).unwrap_or_else(|e| panic!("compactify on {name}: {e}"));
        flop_negates_wall(&fan).unwrap_or_else(|e| panic!("flop of wall on {name}: {e}"));
        gv_integral(&fan, 3).unwrap_or_else(|e| panic!("integrality on {name}: {e}"));
    }
    for fan in [local_p2(), local_f1(), local_f0(), local_f3()] {
        exceptional_line_is_wall_independent(&fan, 0).unwrap();
    }
    run_prop(64, (-3i64..=3, -3i64..=3), |(a, b)| {
        if a == 0 && b == 0 {
            return Ok(());
        }
        pipeline_classes_in_kernel(&local_f1(), 0, &[a, b])
    });
    run_prop(16, (proptest::bool::ANY, gauges()), |(small, moves)| {
        let fan = if small { conifold() } else { local_p2() };
        gauge_invariance(&fan, 3, &moves)
    });
    for k in 1..=2 {
        choice_independence(k).unwrap();
    }
    "flop², compactify, kernel, exceptional line, φ(wall), integrality, gauge, choice".into()
}

#[test]
fn acceptance_criteria() {
    let minute = Duration::from_secs(60);
    let results = [
        criterion(1, "K_F1 invariant table", 15 * minute, kf1_table),
        criterion(2, "open invariants of K_P2", 15 * minute, open_pipeline),
        criterion(3, "surgery of K_P2 gives K_F1", Duration::from_secs(1), structural),
        criterion(4, "flop invariance", 5 * minute, flop),
        criterion(5, "conifold", Duration::from_secs(1), conifold_oracle),
        criterion(6, "Schur oracle", minute, schur_oracle),
        criterion(7, "property suites", 10 * minute, property_suites),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    report(&format!("acceptance: {passed}/{} criteria passed", results.len()));
    assert_eq!(passed, results.len());
}

#[test]
#[ignore = "extended"]
fn extended_open_invariant_k5() {
    assert_eq!(open_value(5, FixedPointChoice::Index(0)), -3038);
}

#[test]
#[ignore = "extended"]
fn extended_table_entries() {
    let table = gw_table(&local_f1(), &local_f1_basis(), 11).unwrap();
    for (c, v) in [([4, 5], -3038), ([5, 5], 1695), ([5, 6], 35870)] {
        assert_eq!(table.get(&c), Some(v), "{c:?}");
    }
}
