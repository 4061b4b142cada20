//! Exact computation in small quantum cohomology and quantum K-theory rings
//! of projective spaces, two-step flag varieties and Milnor hypersurfaces,
//! together with quantum Chern character maps and the identities relating them.

pub mod analytic;
pub mod catalog;
pub mod error;
pub mod groebner;
pub mod jfun;
pub mod matrix;
pub mod mirror;
pub mod parse;
pub mod poly;
pub mod qch;
pub mod quotient;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, VariableSet};
pub use quotient::{AlgebraElement, Presentation, PresentedAlgebra, Strategy};
pub use rational::Rational;
pub use series::NovikovSeries;
