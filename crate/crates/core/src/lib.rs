//! Exact differential-algebra workbench for differential fields whose ground
//! field consists of constants.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: rationals, sparse multivariate polynomials, rational
//!   functions and exact linear algebra;
//! * [`diffpoly`]: differential polynomials, the Λ-chain derivation, the
//!   `φ_p` substitution and the `T` operator;
//! * [`field`]: presented differential fields `k(t1, …, tm)`, prolongations,
//!   transcendence degree, Ritt witnesses and membership certificates;
//! * [`wronskian`]: Wronskians, the `W_{k,l}` family and its structural checks;
//! * [`search`]: the density step `a + p(b)` and the primitive-element search;
//! * [`parse`]: the expression grammar and the field-file format.
//!
//! Batch work (candidate enumeration, λ-sampling, lemma grids) runs through
//! [`par`], which uses rayon when the `parallel` feature is on and falls back
//! to sequential iteration otherwise. Results never depend on the schedule.

pub mod algebra;
pub mod diffpoly;
mod error;
pub mod field;
pub mod par;
pub mod parse;
pub mod search;
pub mod wronskian;

pub use error::{Error, Result};
