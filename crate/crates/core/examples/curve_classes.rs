//! Transports α = kℓ on K_P2 through the surgery pipeline and reports α′ in
//! the (e, f) basis of K_F1.

use toric_gw::homology::{kernel_basis, local_f1_basis, pipeline_classes, CurveClass, NamedBasis};
use toric_gw::lattice::catalog::{local_f1, local_p2};
use toric_gw::lattice::Cone3;
use toric_gw::surgery::open_invariant_surgery;

fn main() -> toric_gw::Result<()> {
    let lattice = kernel_basis(&local_f1())?;
    println!("K_F1 kernel rank {}, wall classes:", lattice.rank());
    for (w, c) in &lattice.compact_wall_classes {
        println!("  {w:?}: {c}");
    }
    println!("default basis {:?}", NamedBasis::from_walls(&lattice).names);

    let (_, trace, _) = open_invariant_surgery(&local_p2(), 0, Cone3::new([1, 2, 4]))?;
    let basis = local_f1_basis();
    for k in 1..=4 {
        let alpha = CurveClass::new(&local_p2(), vec![-3 * k, k, k, k])?;
        let pc = pipeline_classes(&trace, &alpha)?;
        let [e, f] = basis.coordinates(&pc.alpha_prime)?[..] else { unreachable!() };
        println!("k = {k}: beta = {}, beta1 = {}, alpha' = {} = {e}e + {f}f", pc.beta, pc.beta1, pc.alpha_prime);
    }
    Ok(())
}
