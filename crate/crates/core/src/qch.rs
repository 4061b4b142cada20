//! Quantum Chern character maps from quantum K-rings to quantum cohomology
//! rings, defined on generators (`L_a^{-1} ↦ e^{-h_a}`) and on Novikov
//! variables (via inverse quantum Todd classes), and their verification.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::analytic::{eval_at, eval_deg2, quantum_todd_factor, UnivariateSeries};
use crate::catalog::{make_classical_ring, make_ring, milnor_f2, Family, RingId};
use crate::error::{Error, Result};
use crate::matrix::solve_linear;
use crate::poly::{Monomial, Polynomial, VariableSet};
use crate::quotient::{AlgebraElement, PresentedAlgebra};
use crate::rational::{int, sign_pow, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Pn(u32),
    Fl(u32),
    Milnor(u32, u32),
}

impl Space {
    /// `name` is one of `pn`, `fl`, `milnor`.
    pub fn from_name(name: &str, n: u32, m: Option<u32>) -> Result<Self> {
        match name {
            "pn" => Ok(Space::Pn(n)),
            "fl" => Ok(Space::Fl(n)),
            "milnor" => {
                m.map(|m| Space::Milnor(n, m)).ok_or_else(|| Error::Parameter("space milnor requires m".into()))
            }
            _ => Err(Error::Parameter(format!("unknown space `{name}` (expected pn, fl or milnor)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Space::Pn(_) => "pn",
            Space::Fl(_) => "fl",
            Space::Milnor(..) => "milnor",
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            Space::Pn(n) | Space::Fl(n) | Space::Milnor(n, _) => n,
        }
    }

    pub fn m(&self) -> Option<u32> {
        match *self {
            Space::Milnor(_, m) => Some(m),
            _ => None,
        }
    }

    pub fn source_id(&self, trunc: u32) -> RingId {
        match *self {
            Space::Pn(n) => RingId::new(Family::QkPn, n, 0, trunc),
            Space::Fl(n) => RingId::new(Family::QkFl, n, n, trunc),
            Space::Milnor(n, m) => RingId::new(Family::QkMilnor, n, m, trunc),
        }
    }

    pub fn target_id(&self, trunc: u32) -> RingId {
        match *self {
            Space::Pn(n) => RingId::new(Family::QhPn, n, 0, trunc),
            Space::Fl(n) => RingId::new(Family::QhFl, n, n, trunc),
            Space::Milnor(n, m) => RingId::new(Family::QhMilnor, n, m, trunc),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Pn(n) => write!(f, "pn({n})"),
            Space::Fl(n) => write!(f, "fl({n})"),
            Space::Milnor(n, m) => write!(f, "milnor({n},{m})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuantumChernMap {
    space: Space,
    /// Source quantum K-ring; its classical basis indexes the classical-limit check.
    source: Arc<PresentedAlgebra>,
    target: Arc<PresentedAlgebra>,
    /// Images of the source generators followed by the source Novikov variables.
    images: Vec<(String, AlgebraElement)>,
}

/// Residual of one source relation under the map.
#[derive(Debug, Clone)]
pub struct RelationResidual {
    pub name: String,
    pub residual: AlgebraElement,
}

/// Comparison of the q = 0 image of a classical basis monomial with the
/// classical Chern character.
#[derive(Debug, Clone)]
pub struct ClassicalLimitCheck {
    pub monomial: String,
    pub image: AlgebraElement,
    pub expected: AlgebraElement,
}

impl ClassicalLimitCheck {
    pub fn holds(&self) -> bool {
        self.image == self.expected
    }
}

impl QuantumChernMap {
    pub fn build(space: Space, trunc: u32) -> Result<Self> {
        let target = make_ring(&space.target_id(trunc))?;
        let source = make_ring(&space.source_id(0))?;
        let exp = UnivariateSeries::ExpNeg;
        let images = match space {
            Space::Pn(n) => {
                let todd_inv = eval_at(&target, &UnivariateSeries::OneMinusExpOverX, "h")?.pow(n + 1);
                vec![("x".to_string(), eval_at(&target, &exp, "h")?), ("Q".to_string(), &target.var("q")? * &todd_inv)]
            }
            Space::Fl(n) | Space::Milnor(n, _) => {
                let m = space.m().unwrap_or(n);
                vec![
                    ("x".to_string(), eval_at(&target, &exp, "h1")?),
                    ("y".to_string(), eval_at(&target, &exp, "h2")?),
                    ("Q1".to_string(), &target.var("q1")? * &quantum_todd_factor(&target, 1, n)?),
                    ("Q2".to_string(), &target.var("q2")? * &quantum_todd_factor(&target, 2, m)?),
                ]
            }
        };
        Ok(QuantumChernMap { space, source, target, images })
    }

    /// Replaces the image of one source variable; used to build corrupted
    /// maps for negative controls.
    pub fn with_image(mut self, var: &str, image: AlgebraElement) -> Result<Self> {
        let slot =
            self.images.iter_mut().find(|(v, _)| v == var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        slot.1 = image;
        Ok(self)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn source(&self) -> &Arc<PresentedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedAlgebra> {
        &self.target
    }

    pub fn truncation(&self) -> u32 {
        self.target.truncation()
    }

    pub fn images(&self) -> &[(String, AlgebraElement)] {
        &self.images
    }

    pub fn image(&self, var: &str) -> Option<&AlgebraElement> {
        self.images.iter().find(|(v, _)| v == var).map(|(_, e)| e)
    }

    /// Image of a polynomial in the source generators and Novikov variables.
    pub fn apply(&self, p: &Polynomial) -> Result<AlgebraElement> {
        let src_vars = self.source.all_vars();
        let p = p.embed(src_vars)?;
        let imgs: Vec<&AlgebraElement> = src_vars
            .names()
            .iter()
            .map(|n| self.image(n).ok_or_else(|| Error::UnboundVariable(n.clone())))
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<AlgebraElement>> = imgs.iter().map(|e| vec![self.target.one(), (*e).clone()]).collect();
        let mut out = self.target.zero();
        for (m, c) in p.terms() {
            let mut term = self.target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn apply_str(&self, src: &str) -> Result<AlgebraElement> {
        self.apply(&crate::parse::parse_polynomial(src, self.source.all_vars())?)
    }

    /// Image of every source relation; all vanish iff the map is well defined
    /// up to the truncation order.
    pub fn verify_relations(&self) -> Result<Vec<RelationResidual>> {
        self.source
            .presentation()
            .relations()
            .iter()
            .map(|(name, r)| Ok(RelationResidual { name: name.clone(), residual: self.apply(r)? }))
            .collect()
    }

    /// For every classical basis monomial `x^a y^b` of the source, compares the
    /// q = 0 part of its image with `ch(x)^a ch(y)^b` computed in the classical
    /// cohomology ring by nilpotent expansion.
    pub fn verify_classical_limit(&self) -> Result<Vec<ClassicalLimitCheck>> {
        let classical = make_classical_ring(&self.space.target_id(0))?;
        let h_names: Vec<&str> = match self.space {
            Space::Pn(_) => vec!["h"],
            _ => vec!["h1", "h2"],
        };
        let ch: Vec<AlgebraElement> =
            h_names.iter().map(|h| eval_deg2(&UnivariateSeries::ExpNeg, &classical.var(h)?)).collect::<Result<_>>()?;
        let gens = self.source.gens().clone();
        let mut out = Vec::new();
        for m in self.source.basis() {
            let p = Polynomial::monomial(&gens, m.clone(), int(1));
            let image = self.apply(&p)?.classical_limit().transfer(&classical)?;
            let mut expected = classical.one();
            for (i, &e) in m.exponents().iter().enumerate() {
                expected = &expected * &ch[i].pow(e as u32);
            }
            let monomial = if m.is_one() { "1".to_string() } else { m.render(&gens) };
            out.push(ClassicalLimitCheck { monomial, image, expected });
        }
        Ok(out)
    }
}

/// Result of solving `X ⋆ h^{⋆(n+1)} = rhs` in `QH(P^n)`.
#[derive(Debug, Clone)]
pub struct NovikovSolution {
    pub solution: AlgebraElement,
    pub unique: bool,
    pub rank: usize,
    pub unknowns: usize,
}

/// Solves `X ⋆ h^{⋆(n+1)} = q (1 - e^{-h})^{⋆(n+1)}` (or `= 0` when
/// `zero_rhs`) for `X` of q-degree at most `trunc`. The system is set up one
/// q-degree higher because `h^{⋆(n+1)} = q`.
pub fn solve_novikov_equation(n: u32, trunc: u32, zero_rhs: bool) -> Result<NovikovSolution> {
    let high = make_ring(&RingId::new(Family::QhPn, n, 0, trunc + 1))?;
    let low = make_ring(&RingId::new(Family::QhPn, n, 0, trunc))?;
    let h = high.var("h")?;
    let multiplier = h.pow(n + 1);
    let rhs = if zero_rhs {
        high.zero()
    } else {
        let one_minus_exp = eval_deg2(&UnivariateSeries::OneMinusExp, &h)?;
        &high.var("q")? * &one_minus_exp.pow(n + 1)
    };
    let qv = high.qvars().clone();
    let dim = high.dim();
    let mut unknowns = Vec::new();
    for b in 0..dim {
        for k in 0..=trunc {
            let q = Polynomial::monomial(&qv, Monomial::from_exponents(&[k as i32]), int(1));
            let basis_b = high.basis_element(b);
            let qk = high.element(&q.embed(high.all_vars())?)?;
            unknowns.push((b, k, &basis_b * &qk));
        }
    }
    let columns: Vec<AlgebraElement> = unknowns.iter().map(|(_, _, u)| u * &multiplier).collect();
    // one equation per (basis element, q-power) coefficient
    let mut rows = Vec::new();
    let mut b_vec = Vec::new();
    for b in 0..dim {
        for k in 0..=trunc + 1 {
            let qm = Monomial::from_exponents(&[k as i32]);
            rows.push(columns.iter().map(|c| c.coefficient(b, &qm)).collect::<Vec<Rational>>());
            b_vec.push(rhs.coefficient(b, &qm));
        }
    }
    let sol = solve_linear(&rows, &b_vec, unknowns.len())
        .ok_or_else(|| Error::Inconsistent(format!("X * h^{} = rhs in qh_pn({n}) at truncation {trunc}", n + 1)))?;
    let mut x = high.zero();
    for ((_, _, u), c) in unknowns.iter().zip(&sol.solution) {
        if !c.is_zero() {
            x = &x + &u.scale(c);
        }
    }
    Ok(NovikovSolution { solution: x.transfer(&low)?, unique: sol.is_unique(), rank: sol.rank, unknowns: sol.unknowns })
}

/// `(1 - e^{-(h1+h2)}) ⋆ qch(Q_a) - (1 - e^{-h_a})^{⋆n}` for `a = 1, 2` in
/// `QH(Fl(1, n-1; n))`.
pub fn todd_simplification_residuals(n: u32, trunc: u32) -> Result<[AlgebraElement; 2]> {
    let map = QuantumChernMap::build(Space::Fl(n), trunc)?;
    let ring = map.target();
    let sum = eval_at(ring, &UnivariateSeries::OneMinusExp, "h1 + h2")?;
    let residual = |a: u32| -> Result<AlgebraElement> {
        let qa = map.image(&format!("Q{a}")).expect("Novikov image");
        let rhs = eval_at(ring, &UnivariateSeries::OneMinusExp, &format!("h{a}"))?.pow(n);
        Ok(&(&sum * qa) - &rhs)
    };
    Ok([residual(1)?, residual(2)?])
}

/// Identities used when showing that the second flag relation maps to zero:
/// `LHS - RHS` with `LHS = (1 - e^{-(h1+h2)}) ⋆ F_2(e^{-h1}, e^{-h2})` and
/// `RHS = (1 - e^{-h2})^n ⋆ (e^{-h1})^{n-1} + (-1)^{n-1} (1 - e^{-h1})^n ⋆ e^{-h2}`,
/// and the telescoping identity
/// `(e^{-h1} - 1) - e^{-h1} ⋆ (1 - e^{-h2}) + (1 - e^{-(h1+h2)})`.
pub fn flag_proof_residuals(n: u32, trunc: u32) -> Result<[AlgebraElement; 2]> {
    let ring = make_ring(&RingId::new(Family::QhFl, n, n, trunc))?;
    let e1 = eval_at(&ring, &UnivariateSeries::ExpNeg, "h1")?;
    let e2 = eval_at(&ring, &UnivariateSeries::ExpNeg, "h2")?;
    let one = ring.one();
    let sum = eval_at(&ring, &UnivariateSeries::OneMinusExp, "h1 + h2")?;
    let xy = VariableSet::new(["x", "y"])?;
    let f2 = milnor_f2(&xy, n, n);
    let mut f2_img = ring.zero();
    for (m, c) in f2.terms() {
        let e = m.exponents();
        f2_img = &f2_img + &(&e1.pow(e[0] as u32) * &e2.pow(e[1] as u32)).scale(c);
    }
    let lhs = &sum * &f2_img;
    let rhs =
        &(&(&one - &e2).pow(n) * &e1.pow(n - 1)) + &(&(&one - &e1).pow(n) * &e2).scale(&int(sign_pow(n as i64 - 1)));
    let telescoping = &(&(&e1 - &one) - &(&e1 * &(&one - &e2))) + &sum;
    Ok([&lhs - &rhs, telescoping])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_well_defined() {
        for n in 1..=3 {
            let map = QuantumChernMap::build(Space::Pn(n), 3).unwrap();
            for r in map.verify_relations().unwrap() {
                assert!(r.residual.is_zero(), "n={n}: {}", r.residual);
            }
        }
    }

    #[test]
    fn identity_maps_to_one() {
        for space in [Space::Pn(2), Space::Fl(3)] {
            let map = QuantumChernMap::build(space, 2).unwrap();
            assert_eq!(map.apply_str("1").unwrap(), map.target().one());
        }
    }

    #[test]
    fn generator_image_is_exponential() {
        let map = QuantumChernMap::build(Space::Pn(2), 2).unwrap();
        let e = eval_at(map.target(), &UnivariateSeries::ExpNeg, "h").unwrap();
        assert_eq!(map.apply_str("x").unwrap(), e);
        let fl = QuantumChernMap::build(Space::Fl(3), 2).unwrap();
        let e1 = eval_at(fl.target(), &UnivariateSeries::ExpNeg, "h1").unwrap();
        assert_eq!(fl.image("x").unwrap(), &e1);
    }

    #[test]
    fn relation_image_equals_novikov_image() {
        let map = QuantumChernMap::build(Space::Pn(1), 2).unwrap();
        assert_eq!(map.apply_str("(1 - x)^2").unwrap(), map.apply_str("Q").unwrap());
    }

    #[test]
    fn corrupted_novikov_image_fails() {
        let map = QuantumChernMap::build(Space::Pn(2), 1).unwrap();
        let q = map.target().var("q").unwrap();
        let bad = map.with_image("Q", q).unwrap();
        let res = bad.verify_relations().unwrap();
        assert!(!res[0].residual.is_zero());
    }

    #[test]
    fn classical_limit_of_projective_plane() {
        let map = QuantumChernMap::build(Space::Pn(2), 2).unwrap();
        let checks = map.verify_classical_limit().unwrap();
        assert!(checks.iter().all(|c| c.holds()));
        let sq = checks.iter().find(|c| c.monomial == "x^2").unwrap();
        assert_eq!(sq.image.render(), "2*h^2 - 2*h + 1");
    }

    #[test]
    fn unique_novikov_solution() {
        for n in 1..=2 {
            let s = solve_novikov_equation(n, 2, false).unwrap();
            assert!(s.unique);
            let map = QuantumChernMap::build(Space::Pn(n), 2).unwrap();
            assert_eq!(&s.solution, map.image("Q").unwrap());
        }
        let z = solve_novikov_equation(2, 2, true).unwrap();
        assert!(z.unique && z.solution.is_zero());
    }

    #[test]
    fn lemma_todd_simplification_small() {
        for r in todd_simplification_residuals(3, 2).unwrap() {
            assert!(r.is_zero(), "{r}");
        }
        for r in flag_proof_residuals(3, 2).unwrap() {
            assert!(r.is_zero(), "{r}");
        }
    }
}
