//! Stability of iterated polynomials over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`tower`]: exact arithmetic in towers of finite-field extensions,
//!   with Frobenius maps, traces, norms and power-residue tests.
//! - [`poly`]: dense polynomials over any level, with irreducibility
//!   testing, factorization and discriminants.
//! - [`stability`]: the root chain `α_n`, the Capelli step and depth-limited
//!   stability certification, plus a direct-iterate oracle.
//! - [`families`]: explicit families of stable quadratics, cubics and quartics.
//! - [`classify`]: closed-form factorization-pattern classifiers.
//! - [`census`]: exhaustive certification sweeps.

pub mod census;
pub mod classify;
pub mod error;
pub mod families;
pub mod field;
pub mod poly;
pub mod stability;
pub mod tower;

pub use error::{Error, Result};

/// Engine version recorded in experiment manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Base seed of the property-test generators.
pub const PROPERTY_SEED: u64 = 0x5eed_2024;
pub use field::{Field, PrimeField};
pub use poly::{FactorPattern, Poly, PolyRing};
pub use stability::{certify_stability, Budget, ChainTrace, Method, RootPolicy, StabilityReport, Verdict};
pub use tower::{FieldElement, LevelField, Tower};
