//! Compactify, blow up, flop and decompactify K_P2 at each fixed point on
//! the divisor at infinity.

use toric_gw::lattice::catalog::{local_f1, local_p2};
use toric_gw::surgery::open_invariant_surgery_all;

fn main() -> toric_gw::Result<()> {
    for (fp, run) in open_invariant_surgery_all(&local_p2(), 0)? {
        let (w0, trace, rays) = run?;
        println!("fixed point {fp} (w = ray {}, u0 = ray {})", rays.w, rays.u0);
        for (step, fan) in trace.steps.iter().zip(trace.fans()?.iter().skip(1)) {
            println!("  {:<10} {fan}", step.kind());
        }
        println!("  W0 equivalent to K_F1: {}", w0.is_lattice_equivalent(&local_f1()));
    }
    Ok(())
}
