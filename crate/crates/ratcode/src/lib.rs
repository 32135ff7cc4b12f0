//! Construction and verification of (q+1)-ary nonlinear codes built by
//! evaluating rational functions of F_q(x) at all q+1 rational places,
//! poles included.
//!
//! The crate constructs the code C_m exactly as defined — the image of the
//! evaluation map on the union L_m of Riemann-Roch spaces of degree ≤ m,
//! plus the all-∞ word — then measures its size and minimum distance with
//! independent brute-force oracles and reproduces the associated bound
//! arithmetic with exact integers, flagging agreement or disagreement with
//! each published claim.

pub mod bounds;
pub mod code;
pub mod funcfield;
pub mod gf;
pub mod poly;
pub mod report;
pub mod serial;

pub use code::{Code, CodeParams, Codeword, Limits};
pub use funcfield::{Divisor, EvalValue, Place, RatFun, RationalPlace};
pub use gf::{Elem, FieldSpec};
pub use poly::Poly;
pub use report::{verify, DistanceMode, VerifyReport};
