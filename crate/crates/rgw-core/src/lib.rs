//! Exact calculator for genus-0 real Gromov-Witten invariants of
//! odd-dimensional projective spaces, with the complex invariants they feed
//! on, executable identity cross-checks, and a numerical orientation-sign
//! oracle for the gluing of three-component real curves.
//!
//! All invariant arithmetic is exact (arbitrary-precision integers, no
//! division); floating point appears only in the [`gluing`] oracle, whose
//! output is a sign. The crate is `no_std` + `alloc`; persistence and the
//! command-line surface live in the companion `rgw-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod complex;
pub mod gluing;
pub mod key;
pub mod real;
pub mod rng;
pub mod store;
pub mod verify;

pub use complex::{complex_invariant, normalize_axioms, wdvv_step, Normalization};
pub use key::{
    complex_dimension_matches, real_dimension_matches, ComplexKey, InsertionMultiset,
    InvariantValue, Involution, KeyError, RealKey,
};
pub use real::{
    count_sign, real_bracket, real_count, real_vanishes, recursion_terms, valid_odd_tuples,
    RealRecursionTerm,
};
pub use store::{MemoStore, StoreError, CACHE_HEADER};
pub use verify::{run_verification_suite, SuiteRanges, VerificationReport};
