//! Exact Askey-Wilson operator calculus for q-orthogonal polynomials.
//!
//! The crate builds the monic family `P_n = H_n(x; 1, -1, q^(1/4) | q^(1/2))`
//! of continuous dual q-Hahn polynomials, applies the divided-difference
//! operator `D_q` and the averaging operator `S_q` exactly, and checks that
//!
//! ```text
//! S_q P_n       = alpha_n P_n + c_n P_{n-1}
//! U_2 D_q P_n   = c_{n,1} P_{n+1} + c_{n,2} P_n + c_{n,3} P_{n-1} + c_{n,4} P_{n-2}
//! ```
//!
//! both for concrete `n` and symbolically in `n`, with `c_{n,4} != 0`.
//!
//! All arithmetic happens in the fraction field of `Q[t^±1, u^±1]` where
//! `t = q^(1/4)` and `u = q^(n/2)`; see [`scalar`].

pub mod awcore;
pub mod cli;
pub mod error;
pub mod families;
pub mod inductor;
pub mod numeric;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod zsym;

pub use error::Error;
pub use scalar::Scalar;
pub use zsym::{SymPoly, XPoly, ZLaurent};
