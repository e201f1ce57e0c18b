//! Computational engine for non-abelian tensor squares of small finite groups.
//!
//! Given a finite presentation of a group `G`, the engine builds the
//! double-copy group `nu(G)` on two isomorphic copies of the generators,
//! enumerates it by Todd-Coxeter, and extracts the tensor square
//! `G (x) G` as the crossed-commutator subgroup `[G, G^phi]`, together with
//! the diagonal subgroup `nabla(G)`, the exterior square `G ^ G`, the
//! kernel `J2(G)` of the commutator-induced map and the Schur multiplier
//! `M(G) = J2(G) / nabla(G)`.
//!
//! The `catalog` module carries a set of verification cases (one group per
//! structural class of orders `p^2 q`, `p q^2`, `p^2 q r` and square-free
//! orders) with the expected answers, and the `tensor` module cross-checks
//! every computation against the exact-sequence identities relating the
//! pieces above.
//!
//! With the default `parallel` feature the verification harness and the
//! heavier inner loops run on rayon; disabling the feature gives a fully
//! sequential build with identical results.

pub mod abelian;
pub mod catalog;
pub mod coset;
pub mod exec;
pub mod group;
pub mod presentation;
pub mod report;
pub mod tensor;

pub(crate) mod rng;

pub use abelian::FiniteAbelianGroup;
pub use coset::{EnumerationConfig, EnumerationStats, Strategy};
pub use exec::Parallelism;
pub use group::{GroupTable, Homomorphism, Subgroup};
pub use presentation::{Presentation, Word};
pub use tensor::{TensorConfig, TensorSquareReport};
