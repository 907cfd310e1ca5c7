//! Generic complete eigenstructures of bounded-rank skew-symmetric matrix
//! pencils and polynomials.
//!
//! Everything structural is computed in exact rational arithmetic
//! ([`exactalg`]). On top of it sit the canonical block forms
//! ([`canonical`]), eigenstructure extraction ([`eigenstructure`]), the
//! generic structure formulas ([`genericity`]), grade padding and the
//! odd-grade skew linearization ([`linearization`]), the orbit degeneration
//! rules ([`degeneration`]), orbit codimensions ([`codimension`]) and random
//! sampling with a floating-point backend ([`sampling`]). [`io`] holds the
//! JSON file formats.

pub mod canonical;
pub mod codimension;
pub mod degeneration;
pub mod eigenstructure;
pub mod error;
pub mod exactalg;
pub mod genericity;
pub mod io;
pub mod linearization;
pub mod sampling;

pub use error::{Error, Result};
