//! Exact arithmetic foundation: arbitrary-precision rationals, polynomials
//! and rational functions in the deformation variable `q`, rational
//! functions in `(q, x)`, the quotient ring modulo `(q-1)^2`, and the text
//! format used by the command line tool.
//!
//! All values are immutable after construction and safe to share across
//! threads. Everything is computed over the rationals with canonical
//! reduced representatives, so equality is structural comparison.

pub mod bivar;
pub mod modsquare;
pub mod poly;
pub mod ratfunc;
pub mod text;

pub use bivar::{PolyX, RatFuncQX};
pub use modsquare::{mod_square_reduce, ModSquareElem};
pub use poly::{joint_integer_clear, rat, PolyQ, Q};
pub use ratfunc::RatFuncQ;
pub use text::{parse_q, parse_qx, parse_rational, ratfunc_q_of};
