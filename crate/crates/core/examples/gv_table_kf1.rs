//! Genus-zero invariants of K_F1 in the (e, f) basis. Pass the box cap as the
//! first argument (default 7).

use toric_gw::homology::local_f1_basis;
use toric_gw::lattice::catalog::local_f1;
use toric_gw::vertex::gw_table;

fn main() -> toric_gw::Result<()> {
    let cap = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let table = gw_table(&local_f1(), &local_f1_basis(), cap)?;
    let max_b = table.rows.iter().map(|r| r.coordinates[1]).max().unwrap_or(0);
    let max_a = table.rows.iter().map(|r| r.coordinates[0]).max().unwrap_or(0);
    print!("a\\b");
    for b in 0..=max_b {
        print!("{b:>8}");
    }
    println!();
    for a in 0..=max_a {
        print!("{a:>3}");
        for b in 0..=max_b {
            match table.get(&[a, b]) {
                Some(v) => print!("{v:>8}"),
                None => print!("{:>8}", "."),
            }
        }
        println!();
    }
    println!("cap {cap}; {} classes incomplete", table.incomplete.len());
    Ok(())
}
