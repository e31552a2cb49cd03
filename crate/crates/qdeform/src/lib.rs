//! Exact machinery for the infinitesimal modular group.
//!
//! The modular group acts on the projective line through the translation
//! `T(x) = x + 1` and the inversion `S(x) = -1/x`. Replacing them with the
//! deformed maps `T_q(x) = qx + 1` and `S_q(x) = -1/(qx)` produces the
//! q-deformed rational numbers; differentiating the same picture produces a
//! family of first-order differential operators `D_n` deforming the vector
//! fields `x^(n+1) d/dx`. This crate implements both sides exactly and
//! cross-checks them:
//!
//! - [`rings`] — arbitrary-precision rationals, polynomials and rational
//!   functions in `q`, rational functions in `(q, x)`, the quotient ring
//!   modulo `(q-1)^2`, and a text format.
//! - [`moebius`] — projective 2x2 matrices over the rational function
//!   field: the generators `T_q`, `S_q`, `U_q`, the transition map `g_q`,
//!   the braid matrices, and an exact identity suite.
//! - [`qrationals`] — even continued fractions and the two deformations of
//!   a rational (right/sharp and left/flat), the transition theorem between
//!   them, and the positivity of flat deformations.
//! - [`opalg`] — the algebra of operators `m(x) + v(x) d/dx`: brackets,
//!   conjugation by Moebius maps, the generators `D_n`, eigenfunction
//!   checks, and the interaction with `g_q`.
//! - [`lieverify`] — structure-constant level verification of the deformed
//!   sl2, Heisenberg, and Witt algebras, Jacobi sweeps, the quotient-ring
//!   experiments, and the two-dimensional representation over the field
//!   extension `q = s^2`.
//! - [`series`] — truncated power series and the deformed exponential.
//! - [`flows`] — numeric integration of the deformed vector fields as
//!   Moebius flows on the upper half-plane, with dual-number jets
//!   recovering the deformed translations in the limit `q -> 1`.
//! - [`verify`] — machine-readable pass/fail reports aggregating every
//!   suite, used by the `qdeform` binary.
//!
//! The `examples/` directory carries one runnable walk-through per
//! capability; `cargo run --bin qdeform -- verify all` runs everything.

#![forbid(unsafe_code)]

pub mod error;
pub mod flows;
pub mod lieverify;
pub mod moebius;
pub mod opalg;
pub mod qrationals;
pub mod report;
pub mod rings;
pub mod series;
pub mod verify;

pub use error::Error;
pub use rings::{PolyQ, Q, RatFuncQ, RatFuncQX};
