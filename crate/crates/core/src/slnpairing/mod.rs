//! Exact checks of the `sl_n` covariant identities: the pairing of the
//! covariants `Psi` and `Phi*` against the trace invariant `T_{n-1}`, and
//! the Koszul differentials on the exterior algebra.

pub mod covariant;
pub mod matrix;
pub mod trace;
pub mod verify;
pub mod wedge;
