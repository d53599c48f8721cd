//! Exact verification of contact structures on matrix groups.
//!
//! Polynomials in the entries `a_{i,j}` of a generic matrix ([`polyring`]),
//! differential forms and vector fields over them ([`exterior`]), the Cartan
//! class of linear forms on Lie algebras ([`liealg`]), the contact form on
//! `SL(2p)` ([`slcontact`]), the orthogonal group ([`orthogroup`]) and
//! floating point scans over explicit manifolds ([`numeric`]).

pub mod error;
pub mod exterior;
pub mod extalg;
pub mod liealg;
pub mod linalg;
pub mod numeric;
pub mod orthogroup;
pub mod polyring;
pub mod report;
pub mod slcontact;

pub use error::{Error, Result};

pub type Rat = num_rational::BigRational;
