//! Exact verification of dual pairs acting on truncated fermionic Fock spaces.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere.  The crate is organised as follows:
//!
//! * [`exact`]    — sparse vectors/matrices over `BigRational`, row reduction,
//!   kernel and joint-kernel computation.
//! * [`qseries`]  — truncated formal series in `q^(1/2)` with integer
//!   coefficients, classical product forms and character series.
//! * [`fock`]     — truncated fermionic Fock spaces: charged pairs
//!   `psi^(+-,p)_n` and an optional neutral fermion `phi_n`, with exact
//!   normal-ordering signs and graded bases.
//! * [`symalg`]   — the symbolic layer: differential operators `t^k p(D)`
//!   with their associative product, Lie bracket and central 2-cocycle,
//!   windowed infinite matrices, anti-involutions, and highest-weight
//!   label generating functions.
//! * [`repops`]   — mode operators acting on the Fock spaces (quadratic
//!   fermion bilinears), commutators with window tracking, and the
//!   relation-check suites.
//! * [`duality`]  — joint highest-weight vector searches, weight/label
//!   decoding, the group-side bookkeeping, and the isotypic decomposition
//!   reports.

pub mod duality;
pub mod error;
pub mod exact;
pub mod fock;
pub mod qseries;
pub mod repops;
pub mod symalg;

pub use error::{Error, Result};
