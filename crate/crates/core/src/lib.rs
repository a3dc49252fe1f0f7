//! Exact construction and analysis of linear codes built from bent,
//! plateaued and almost-bent functions over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`galois`]: field towers GF(p) ⊆ GF(q) ⊆ GF(q^m) and exact cyclotomic integers.
//! - [`functions`]: scalar and vectorial functions as evaluation tables.
//! - [`walsh`]: Walsh spectra and amplitude classification.
//! - [`linearcode`]: generator matrices, subfield codes, duals, weight distributions.
//! - [`constructions`]: the code families and their closed-form weight predictions.
//! - [`bounds`]: optimality, minimality and divisibility verdicts.
//! - [`quantum`]: CSS pairs and transversal-gate conditions.
//! - [`cli`]: report assembly and the reproduction registry behind the binary.

#![forbid(unsafe_code)]

pub mod arith;
pub mod error;
pub mod galois;
pub mod functions;
pub mod walsh;
pub mod linearcode;
pub mod constructions;
pub mod bounds;
pub mod quantum;
pub mod cli;

pub use error::{Error, Result};
pub use galois::{CycInt, Elem, FieldCtx, Level};
