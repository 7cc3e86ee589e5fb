//! Partitions, exact rational functions in t = q^{1/2}, and Schur
//! function specializations.
//!
//! Exponent conventions: every q-power is written in t = q^{1/2}, so
//! q^{κ(λ)/2} = t^{κ(λ)} and the specialization q^{−ν−ρ} is
//! x_i = t^{2i − 1 − 2ν_i}.

pub mod cyclo;
pub mod laurent;
pub mod partition;
pub mod qrational;
pub mod schur;

pub use cyclo::CycloRational;
pub use laurent::LaurentPoly;
pub use partition::Partition;
pub use qrational::{QRational, QSeriesCap};
pub use schur::{schur_principal, skew_schur_specialized, SchurCache};

/// κ(λ) = Σ_i λ_i(λ_i − 2i + 1).
pub fn kappa(lambda: &Partition) -> i64 {
    lambda.kappa()
}

/// Hook lengths of every cell of λ.
pub fn hooks(lambda: &Partition) -> Vec<u32> {
    lambda.hooks()
}
