pub mod corpus;
pub mod error;
pub mod germ;
pub mod ksm;
pub mod liftgen;
pub mod linalg;
pub mod localalg;
pub mod parse;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use parse::parse_poly;
pub use poly::{JetOrder, Monomial, Polynomial, Rational, RingKind, RingTag};
