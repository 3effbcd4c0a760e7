//! Skew-morphisms of cyclic p-groups `Z_{p^e}` for odd primes `p`.
//!
//! * [`zmod`]: residue arithmetic, unit orders, the canonical units.
//! * [`perm`]: permutations and permutation-group closures.
//! * [`skew`]: power functions, the two verifiers, the `s_{i,j}` and
//!   `s_{i,j,k,l}` families, admissible tuples and classification.
//! * [`classify`]: enumeration, closed-form counts, brute-force oracles,
//!   skew product groups and cross-validation reports.
//! * [`invariants`]: structural properties every skew-morphism of `Z_{p^e}` must
//!   satisfy, as reusable checks.

pub mod classify;
pub mod error;
pub mod invariants;
pub mod par;
pub mod perm;
pub mod skew;
pub mod zmod;

pub use error::{Error, Result};
pub use par::Execution;
pub use perm::{GroupClosure, Permutation};
pub use skew::{AdmissibleTuple, PowerFunction, SkewMorphism};
pub use zmod::{Modulus, Unit};
