//! Certified root counting for sparse polynomials over the p-adic numbers,
//! with the supporting Vandermonde identities, bounds and extremal families.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod explore;
pub mod extremal;
pub mod padic;
pub mod rootcount;
pub mod sparsepoly;
pub mod vandermonde;

pub use error::{Error, Result};
pub use padic::{PadicNum, Valuation};
pub use rootcount::{count_roots, CountOptions, RootReport};
pub use sparsepoly::{newton_polygon, parse_poly, NewtonPolygon, SparsePoly};
