//! Sphere and ball sizes in the symmetric group under the Kendall tau metric,
//! and sphere-packing certificates for the nonexistence of perfect
//! t-error-correcting permutation codes.

pub mod certifier;
pub mod cli;
pub mod mahonian;
pub mod numtheory;
pub mod oracle;
pub mod perm;

pub use certifier::{certify, check_certificate, scan, Certificate, Verdict};
pub use mahonian::{BallSize, SphereTable};
pub use numtheory::Factorization;
pub use perm::Permutation;
