//! Dense arithmetic in a classical (finite-dimensional) K-ring.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::catalog::{make_ring, RingId};
use crate::error::{Error, Result};
use crate::matrix::det_rational;
use crate::poly::Monomial;
use crate::quotient::{AlgebraElement, PresentedAlgebra};
use crate::rational::Rational;

/// Coordinates on the monomial basis of a [`KAlgebra`].
pub type KElem = Vec<Rational>;

/// Classical K-ring with generators `x = L_1^{-1}`, `y = L_2^{-1}`, stored as
/// rational structure constants.
#[derive(Debug)]
pub struct KAlgebra {
    ring: Arc<PresentedAlgebra>,
    /// `table[i][j]`: sparse coordinates of `basis_i * basis_j`.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    x: KElem,
    y: KElem,
}

impl KAlgebra {
    pub fn new(id: &RingId) -> Result<Arc<Self>> {
        if !id.family.is_classical() {
            return Err(Error::Parameter(format!("{} is not a classical K-ring", id.family)));
        }
        let ring = make_ring(id)?;
        let one = Monomial::one(0);
        let dense = |e: &AlgebraElement| (0..ring.dim()).map(|b| e.coefficient(b, &one)).collect::<KElem>();
        let table = ring
            .structure_constants()
            .iter()
            .map(|row| {
                row.iter().map(|e| dense(e).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect()
            })
            .collect();
        let x = dense(&ring.var("x")?);
        let y = dense(&ring.var("y")?);
        Ok(Arc::new(KAlgebra { ring, table, x, y }))
    }

    pub fn ring(&self) -> &Arc<PresentedAlgebra> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn zero(&self) -> KElem {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one(&self) -> KElem {
        let mut e = self.zero();
        e[0] = Rational::one();
        e
    }

    pub fn x(&self) -> &KElem {
        &self.x
    }

    pub fn y(&self) -> &KElem {
        &self.y
    }

    pub fn is_zero(e: &KElem) -> bool {
        e.iter().all(|c| c.is_zero())
    }

    pub fn add(a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &KElem, s: &Rational) -> KElem {
        a.iter().map(|x| x * s).collect()
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &KElem, k: u32) -> KElem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Invertibility via the determinant of the multiplication matrix.
    pub fn is_unit(&self, a: &KElem) -> bool {
        let dim = self.dim();
        let cols: Vec<KElem> = (0..dim)
            .map(|j| {
                let mut e = self.zero();
                e[j] = Rational::one();
                self.mul(a, &e)
            })
            .collect();
        let m: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| cols[j][i].clone()).collect()).collect();
        !det_rational(&m).is_zero()
    }

    pub fn render(&self, a: &KElem) -> String {
        let mut p = crate::poly::Polynomial::zero(self.ring.gens());
        for (b, c) in a.iter().enumerate() {
            p.add_term(self.ring.basis()[b].clone(), c.clone());
        }
        p.render()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;

    #[test]
    fn generators_are_units() {
        let k = KAlgebra::new(&RingId::new(Family::KMilnor, 3, 3, 0)).unwrap();
        assert!(k.is_unit(k.x()));
        assert!(k.is_unit(k.y()));
        let one_minus_y = KAlgebra::sub(&k.one(), k.y());
        assert!(!k.is_unit(&one_minus_y));
        assert!(KAlgebra::is_zero(&k.pow(&one_minus_y, 3)));
    }

    #[test]
    fn rejects_quantum_family() {
        assert!(KAlgebra::new(&RingId::new(Family::QkMilnor, 3, 3, 1)).is_err());
    }
}
