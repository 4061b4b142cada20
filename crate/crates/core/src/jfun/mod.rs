//! K-theoretic J-functions of `P^{n-1} × P^{m-1}` and of the Milnor
//! hypersurface, ħ-difference operators acting on them, and the binomial
//! identities behind the classical K-theory presentation.

pub mod combinatorics;
pub mod hbar;
pub mod jseries;
pub mod kalg;

pub use combinatorics::{binomial_identity_check, f2_reduction, BinomialSweep, F2Reduction};
pub use hbar::{Atom, AtomKind, HbarFraction, HbarPoly};
pub use jseries::{
    apply_difference, hbar_infinity_check, j_milnor, j_product, verify_difference_equations, verify_operators,
    DegreeResidual, DifferenceExpression, InfinityCheck, JSeries,
};
pub use kalg::{KAlgebra, KElem};
