//! Validates the catalog fans and prints their Calabi-Yau data.

use toric_gw::lattice::catalog::*;
use toric_gw::lattice::{compact_divisor_rays, cy_vector, height_one_polygon, is_fano_surface, validate_fan};

fn main() -> toric_gw::Result<()> {
    for (name, fan) in [
        ("conifold", conifold()),
        ("K_P2", local_p2()),
        ("K_F0", local_f0()),
        ("K_F1", local_f1()),
        ("K_F3", local_f3()),
    ] {
        let report = validate_fan(&fan);
        let cy = cy_vector(&fan)?;
        let poly = height_one_polygon(&fan, &cy)?;
        println!("{name}: valid {}, smooth {}, nu {:?}", report.is_valid(), report.is_smooth(), cy.nu);
        println!("  polygon {:?}", poly.points);
        for r in compact_divisor_rays(&fan) {
            println!("  compact divisor {r}, Fano {}", is_fano_surface(&fan, r)?);
        }
    }
    Ok(())
}
