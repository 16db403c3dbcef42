//! Minimal free resolutions of powers of square-free monomial ideals of
//! projective dimension one, built from an explicit acyclic matching on the
//! Taylor complex.

pub mod error;
pub mod facets;
pub mod field;
pub mod io;
pub mod monomial;
pub mod morse;
pub mod pd1;
pub mod power;
pub mod report;
pub mod resolution;
pub mod taylor;

pub use error::{Error, Result};
pub use monomial::{Monomial, Variables};
pub use pd1::OrderedGenerators;
pub use power::{ExpVec, PowerTable};
