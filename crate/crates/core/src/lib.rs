//! Exact commutative algebra and the cycle, symbol and category calculi built on it.

pub mod bloch;
pub mod cycle;
pub mod en;
pub mod error;
pub mod factor;
pub mod field;
pub mod forms;
pub mod groebner;
pub mod ideal;
pub mod local;
pub mod module;
pub mod parse;
pub mod poly;
pub mod snf;
pub mod symbols;
pub mod upoly;
pub mod zerodim;

pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use ideal::Ideal;
pub use parse::{parse_polynomial, PolyExpr};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
