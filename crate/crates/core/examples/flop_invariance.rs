//! Invariants of K_F1 and of its flop along the (−1,−1) curve e.

use toric_gw::homology::{flop_transport, local_f1_basis, wall_class};
use toric_gw::lattice::catalog::local_f1;
use toric_gw::surgery::flop;
use toric_gw::vertex::{build_web, extract_gv, free_energy, partition_function};

fn main() -> toric_gw::Result<()> {
    let cap = 5;
    let x = local_f1();
    let e = wall_class(&x, [0, 4])?;
    let (y, step) = flop(&x, [0, 4])?;
    println!("flopped fan: {y}");
    let mut zx = partition_function(&build_web(&x)?, cap)?;
    let mut zy = partition_function(&build_web(&y)?, cap)?;
    let (cx, cy) = (zx.complete_classes(), zy.complete_classes());
    let (nx, ny) = (extract_gv(&free_energy(&mut zx))?, extract_gv(&free_energy(&mut zy))?);
    let basis = local_f1_basis();
    for beta in &cx {
        let image = flop_transport(&step, beta)?;
        if !cy.contains(&image) || (1..=cap as i64).any(|m| *beta == m * &e) {
            continue;
        }
        let c = basis.coordinates(beta)?;
        let (a, b) = (nx.get(beta).copied().unwrap_or(0), ny.get(&image).copied().unwrap_or(0));
        println!("{}e + {}f: {a} on K_F1, {b} after the flop", c[0], c[1]);
    }
    Ok(())
}
