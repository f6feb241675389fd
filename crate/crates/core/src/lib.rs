//! Symmetric functions over GF(2): the ring `F₂[w₁, w₂, …]`, its involution,
//! coordinate systems, Schur basis, a generators-and-relations model of the
//! invariant subring, and a degreewise structure verifier.

pub mod coordinates;
pub mod error;
pub mod gf2;
pub mod involution;
mod memo;
pub mod partitions;
pub mod presentation;
pub mod ring;
pub mod schur;
pub mod verifier;

pub use error::{Error, Result};
pub use ring::{Gen, GenSet, Monomial, Poly, Polynomial};
