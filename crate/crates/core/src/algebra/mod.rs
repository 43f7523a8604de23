//! Exact arithmetic: ℚ and ℚ(√d), polynomials, rational functions, places, factorization.

pub mod factor;
pub mod field;
pub mod modp;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;
pub mod square;

pub use factor::{factor, factor_over, Factorization};
pub use field::{fmt_rational, rat, rat_int, Fe, Rational};
pub use place::{valuation, Place};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use square::{square_classify, SquareClass, SquareOutcome};
