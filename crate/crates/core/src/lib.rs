//! Irreducibility of binomials `x^n − g` over finite fields and over
//! ultraproduct families of finite fields, with witness-family generators and
//! a finite-field check that radicals of one generator exhaust every degree.

pub mod arith;
pub mod binomial;
pub mod error;
pub mod field;
pub mod poly;
pub mod pseudofinite;
pub mod tower;

pub use error::{Error, Result};
pub use field::{build_field, build_field_for, FieldCtx, FieldElem, PrimePower};
pub use poly::Poly;
