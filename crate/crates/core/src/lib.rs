//! Quaternion-valued Gaussian random field on pure quaternions.
//!
//! Exact moment algebra, the orthogonal polynomials `P_n`, `Q_n`, the
//! reproducing kernel and its correlation functions, their large-`n`
//! approximations, and an exact rejection sampler for small `n`.

#![no_std]
// `!(x >= a)` rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asymptotics;
pub mod error;
pub mod kernel;
pub mod moments;
pub mod moore;
pub mod numeric;
pub mod orthopoly;
pub mod poly;
pub mod quadrature;
pub mod quaternion;
pub mod sampler;

pub use error::{Error, Result};
pub use numeric::Scaled;
pub use quaternion::{PureQuaternion, Quaternion};
