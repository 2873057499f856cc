//! The degree `q = q₀ + q₁ − 1` family `F(x) = F₀(x) + q·m·pᵈ` with
//! `F₀' = q·a(x)·b(x)`, together with everything needed to certify that a
//! member is monogenic.
//!
//! Typical use:
//!
//! ```
//! use monogenic::arith::Effort;
//! use monogenic::construction::*;
//!
//! let base = validate_params(&RawParams::new(3, 5, 1, 1, 13)).unwrap();
//! let cd = compute_cd(&build_construction(&base).unwrap()).unwrap();
//! let options = SearchOptions::new(100, Effort::default()).first(1);
//! let hit = &search_admissible_primes(&base, &cd, &options).unwrap()[0];
//! let cert = certify_monogenic(&base.with_p(hit.p).unwrap(), &Effort::default()).unwrap();
//! assert_eq!(cert.verdict, Verdict::Monogenic);
//! ```

mod build;
mod certificate;
mod local;
mod params;
mod search;

pub use build::{
    assemble_f, build_construction, build_f_product, compute_cd, discriminant_identity_check,
    f_factors, CdValues, Construction, IdentityCheck,
};
pub use certificate::{
    certify_monogenic, MonogenicityCertificate, Verdict, CERTIFICATE_SCHEMA,
    CERTIFICATE_VERSION,
};
pub use local::{
    density_constant, local_solubility_witness, rho_squared, DensityEntry, DensityReport,
    LocalWitness, SolubilityCase,
};
pub use params::{minimal_m, validate_params, ConstructionParams, RawParams};
pub use search::{search_admissible_primes, AdmissiblePrime, SearchOptions};
