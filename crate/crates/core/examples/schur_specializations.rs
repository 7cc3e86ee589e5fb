//! Principal and shifted skew Schur specializations as exact rational
//! functions of t, with their series expansions.

use toric_gw::qpartitions::{schur_principal, skew_schur_specialized, Partition};

fn main() -> toric_gw::Result<()> {
    for parts in [&[1u32][..], &[2], &[1, 1], &[2, 1], &[3, 1]] {
        let l = Partition::from(parts);
        println!("s_{parts:?}(x^0) = {}", schur_principal(&l));
    }
    let outer = Partition::from(&[2u32, 1][..]);
    let inner = Partition::from(&[1u32][..]);
    let shift = Partition::from(&[1u32][..]);
    let s = skew_schur_specialized(&outer, &inner, &shift)?;
    let (lo, coeffs) = s.series(12);
    println!("s_(2,1)/(1)(x^(1)) = {s}");
    println!("  series from t^{lo}: {}", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    Ok(())
}
