//! Exact-arithmetic construction and verification of a family of ball
//! quotients that share a single smooth toroidal compactification.
//!
//! The base surface is the blowup at the origin of `A = E x E`, where `E`
//! is the elliptic curve of j-invariant 0 with period lattice `Z[rho]`
//! (`rho^2 = -rho - 1`). Removing the proper transforms of the four curves
//! `w = 0`, `z = 0`, `w = z`, `w = zeta z` leaves a one-point-blowup ball
//! quotient of Euler number 1. For every exponent `n` and residue
//! `0 <= j < 3^n` there is a degree-`3^n` etale cover determined by the
//! homomorphism `pi_1(A) -> Z/3^n` sending the four standard generators to
//! `(1, 1, j, j)`. The covers for a fixed `n` all compactify to the same
//! surface, yet their cusp counts differ with `j`.
//!
//! Everything here is exact integer arithmetic: lattices are kept in
//! canonical Hermite normal form so that equality of lattices is equality
//! of matrices, subgroups of `Z/m` are kept in canonical divisor form, and
//! every headline number (cusp counts, log Chern numbers, intersection
//! sums) is recomputed by independent routes before a certificate is
//! emitted.
//!
//! Module map:
//!
//! - [`zlattice`]: integer matrices, Hermite normal form, kernel lattices.
//! - [`cyclic`]: subgroups and cosets of `Z/m` in canonical divisor form.
//! - [`eisenstein`]: arithmetic in `Z[rho]` and the curve subgroups of
//!   `pi_1(A)` derived from slopes.
//! - [`covers`]: the cover family itself: kernels, cusp counts, the shear
//!   isomorphism, boundary divisors, log Chern numbers, family search.
//! - [`oracle`]: brute-force re-derivations of the above by literal
//!   enumeration, used to cross-check every fast path.

pub mod caps;
pub mod covers;
pub mod cyclic;
pub mod eisenstein;
pub mod oracle;
pub mod zlattice;

pub use caps::{CapExceeded, Caps};
pub use covers::CoverSpec;
pub use eisenstein::CurveLabel;
