//! Exact computations with positive Dehn twist factorizations in the mapping
//! class group of a surface of genus `g ≥ 3` with one boundary component.
//!
//! Mapping classes act faithfully on the free fundamental group of the
//! surface; every equality test in this crate reduces to comparing free
//! group automorphisms or free homotopy classes of loops.

pub mod automorphism;
pub mod braid;
pub mod certificate;
pub mod derivation;
pub mod error;
pub mod factorization;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod mcg;
pub mod ribbon;
pub mod stabilize;
pub mod universal;
pub mod word;

pub use automorphism::{boundary_word, compose, Automorphism};
pub use braid::{artin_auto, braid_equal, BraidWord};
pub use certificate::{check_certificate, replay, BlockRelation, Move, MoveCertificate};
pub use derivation::{bounded_search, replay_derivation, simplify, DerivationCertificate, RelationKind, SignedFactor, SignedFactorization, Step};
pub use error::{Error, Result};
pub use factorization::{factor_equal, Factor, Factorization};
pub use homology::{HomologyVector, IntMatrix};
pub use invariants::{census, endo_signature, euler_characteristic, section_square, signature, FiberCensus, SignatureReport};
pub use mcg::{Generator, McgLetter, McgWord, TwistTable};
pub use stabilize::{compile_positive, reducible_normalize, stable_equivalence, trade_ledger, StabilizationLedger, StabilizeMode};
pub use universal::{build_ai, build_rn, build_universal, fiber_sum, UniversalKind};
pub use word::FreeWord;
