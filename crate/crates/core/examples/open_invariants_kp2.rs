//! Open invariants n_{β₀+kℓ} of the Lagrangian torus fiber in K_P2.

use toric_gw::homology::CurveClass;
use toric_gw::lattice::catalog::local_p2;
use toric_gw::vertex::{open_gw, FixedPointChoice, OpenInvariantQuery};

fn main() -> toric_gw::Result<()> {
    let kmax = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for k in 1..=kmax {
        let fan0 = local_p2();
        let alpha = CurveClass::new(&fan0, vec![-3 * k, k, k, k])?;
        let query = OpenInvariantQuery { fan0, d0: 0, alpha, fixed_point: FixedPointChoice::All };
        let result = open_gw(&query, None)?;
        let run = &result.runs[0];
        println!("k = {k}: alpha' = {} at cap {}, n = {} ({} fixed points agree)", run.classes.alpha_prime, run.cap, result.value(), result.runs.len());
    }
    Ok(())
}
