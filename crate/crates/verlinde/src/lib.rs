//! Exact computation of Verlinde (fusion) rings of simple, simply connected
//! compact Lie groups, together with the finite support data they are
//! localised on, the SO(3) twisted/graded variants, and the small Koszul
//! complexes that verify the underlying twisted-cohomology stalks.
//!
//! Everything in the core path is exact: weights and roots are rational
//! vectors in an orthogonal ambient basis, character values live in
//! cyclotomic fields `Q(zeta_M)`, and fusion coefficients come out as
//! honest integers or the computation reports an inconsistency. Floating
//! point appears only in test-side cross-checks.
//!
//! The main entry points are:
//!
//! * [`root_system::RootSystem::build`] — classical root-system data (A/B/C/D),
//! * [`fusion::LevelData`] — a root system at a fixed level, with its
//!   regular support points, characters, Verlinde dimensions and
//!   [`fusion::FusionRing`],
//! * [`oracle`] — independent brute-force verification paths,
//! * [`so3`] — the eight SO(3) twisting types, quotient rings `R(k)` and the
//!   graded Verlinde ring,
//! * [`koszul`] — truncated Koszul complexes and their spectral sequence,
//! * [`cli`] — the command-line front end used by the `verlinde` binary.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod fusion;
pub mod koszul;
pub mod linalg;
pub mod oracle;
pub mod root_system;
pub mod so3;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use fusion::{FusionRing, LevelData, RegularPoint};
pub use root_system::{Family, RootSystem, Weight};
