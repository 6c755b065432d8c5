//! Exact Hennings invariants and TQFT data for quantum doubles over cyclotomic rings.

pub mod algebras;
pub mod diagrams;
pub mod error;
pub mod gauge;
pub mod hennings;
pub mod hopf;
pub mod lie;
pub mod lin;
pub mod ring;
pub mod suites;

pub use error::{Error, Result};
