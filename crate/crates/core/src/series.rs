//! Polynomials in "main" variables with coefficients in a ring of Novikov
//! variables truncated at a fixed total q-degree.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{render_terms, same_vars, Monomial, Polynomial, VariableSet};
use crate::rational::Rational;

/// Stored as one polynomial over `main ++ q`; every stored term has total
/// q-degree at most `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    main: Arc<VariableSet>,
    qvars: Arc<VariableSet>,
    all: Arc<VariableSet>,
    trunc: u32,
    poly: Polynomial,
}

impl NovikovSeries {
    pub fn zero(main: &Arc<VariableSet>, qvars: &Arc<VariableSet>, trunc: u32) -> Result<Self> {
        let all = main.concat(qvars)?;
        Ok(NovikovSeries { main: main.clone(), qvars: qvars.clone(), poly: Polynomial::zero(&all), all, trunc })
    }

    /// Interprets `poly` (over `main ++ q`, matched by name) and discards
    /// every term beyond the truncation.
    pub fn from_polynomial(
        main: &Arc<VariableSet>,
        qvars: &Arc<VariableSet>,
        trunc: u32,
        poly: &Polynomial,
    ) -> Result<Self> {
        let mut s = Self::zero(main, qvars, trunc)?;
        let embedded = poly.embed(&s.all)?;
        s.poly = truncate_q(&embedded, main.len(), trunc);
        Ok(s)
    }

    pub fn main_vars(&self) -> &Arc<VariableSet> {
        &self.main
    }

    pub fn q_vars(&self) -> &Arc<VariableSet> {
        &self.qvars
    }

    /// Variable set `main ++ q` of the underlying polynomial.
    pub fn all_vars(&self) -> &Arc<VariableSet> {
        &self.all
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn truncate(&self, d: u32) -> Result<Self> {
        if d > self.trunc {
            return Err(Error::TruncationTooHigh { requested: d, available: self.trunc });
        }
        Ok(NovikovSeries { poly: truncate_q(&self.poly, self.main.len(), d), trunc: d, ..self.clone() })
    }

    /// q-degree-0 part as a polynomial in the main variables.
    pub fn classical_part(&self) -> Polynomial {
        let k = self.main.len();
        let mut out = Polynomial::zero(&self.main);
        for (m, c) in self.poly.terms() {
            let (main, q) = m.split_at(k);
            if q.is_one() {
                out.add_term(main, c.clone());
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<u32> {
        if !same_vars(&self.all, &other.all) || self.main.len() != other.main.len() {
            return Err(Error::VariableMismatch {
                left: self.all.names().join(","),
                right: other.all.names().join(","),
            });
        }
        Ok(self.trunc.min(other.trunc))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.check_compatible(other)?;
        let sum = &self.poly + &other.poly;
        Ok(NovikovSeries { poly: truncate_q(&sum, self.main.len(), d), trunc: d, ..self.clone() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.check_compatible(other)?;
        let diff = &self.poly - &other.poly;
        Ok(NovikovSeries { poly: truncate_q(&diff, self.main.len(), d), trunc: d, ..self.clone() })
    }

    /// Product at the common truncation; higher q-degree terms are never formed.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.check_compatible(other)?;
        let k = self.main.len();
        let poly = self.poly.mul_filtered(&other.poly, |m| q_degree(m, k) <= d as i64);
        Ok(NovikovSeries { poly, trunc: d, ..self.clone() })
    }

    /// Main monomials descending, then q-monomials ascending.
    pub fn render(&self) -> String {
        let k = self.main.len();
        let mut terms: Vec<(Monomial, Monomial, &Rational)> = self
            .poly
            .terms()
            .map(|(m, c)| {
                let (a, b) = m.split_at(k);
                (a, b, c)
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        render_terms(terms.into_iter().map(|(a, b, c)| {
            let ma = a.render(&self.main);
            let mb = b.render(&self.qvars);
            let mono = match (ma.is_empty(), mb.is_empty()) {
                (true, _) => mb,
                (_, true) => ma,
                _ => format!("{ma}*{mb}"),
            };
            (mono, c)
        }))
    }
}

impl std::fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn q_degree(m: &Monomial, main_len: usize) -> i64 {
    m.exponents()[main_len..].iter().map(|&e| e as i64).sum()
}

pub(crate) fn truncate_q(p: &Polynomial, main_len: usize, d: u32) -> Polynomial {
    let mut out = Polynomial::zero(p.vars());
    for (m, c) in p.terms() {
        if q_degree(m, main_len) <= d as i64 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn series(src: &str, trunc: u32) -> NovikovSeries {
        let main = VariableSet::new(["h"]).unwrap();
        let q = VariableSet::new(["q"]).unwrap();
        let all = main.concat(&q).unwrap();
        NovikovSeries::from_polynomial(&main, &q, trunc, &parse_polynomial(src, &all).unwrap()).unwrap()
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(series("1 + q + q^2", 3).truncate(1).unwrap().render(), "1 + q");
        assert!(series("0", 3).truncate(1).unwrap().is_zero());
        assert!(series("h*q^2", 3).truncate(1).unwrap().is_zero());
    }

    #[test]
    fn truncate_cannot_fabricate_precision() {
        assert_eq!(series("1", 2).truncate(3), Err(Error::TruncationTooHigh { requested: 3, available: 2 }));
    }

    #[test]
    fn product_discards_high_degree() {
        let a = series("1 + q", 1);
        assert_eq!(a.checked_mul(&a).unwrap().render(), "1 + 2*q");
    }

    #[test]
    fn rendering_orders_main_then_q() {
        assert_eq!(series("q*h + 2*h - 1 + q", 2).render(), "2*h + h*q - 1 + q");
    }
}
