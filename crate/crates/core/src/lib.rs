//! Exact algebra for generalized Witt vectors, Kähler and de Rham-Witt
//! forms, residues on the projective line and symbol calculus.
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod field;
mod modgcd;
mod poly;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElement, FieldKind};
pub mod laurent;
pub mod witt;
pub mod kaehler;
pub mod ghost_form;
pub mod places;
pub mod milnor;
pub mod somekawa;
pub mod expr;
