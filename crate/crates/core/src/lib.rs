//! Exact super linear algebra and Berezin integration on coordinate
//! superdomains and chart-level Lie supergroups.

pub mod berezin;
pub mod error;
pub mod grassmann;
pub mod lie_super;
pub mod linalg;
pub mod polynomial;
pub mod scalar;
pub mod superdomain;
pub mod suites;
pub mod supergroup;
pub mod supermatrix;
pub mod text;

pub use error::{Error, Result};
pub use grassmann::{Grassmann, GrassmannElement, OddIndex};
pub use polynomial::{Monomial, Polynomial};
pub use scalar::{Parity, Rational, Scalar};
pub use supermatrix::SuperMatrix;
pub use superdomain::{Interval, SuperDomainShape, SuperFunction, SuperMorphism};
