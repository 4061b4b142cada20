//! Polynomials in ħ with coefficients in a classical K-ring, and fractions
//! whose denominators are products of atoms `(1 - u ħ^l)`, `u` one of the
//! units `x`, `y`, `xy`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::kalg::{KAlgebra, KElem};
use crate::rational::Rational;

#[derive(Clone)]
pub struct HbarPoly {
    alg: Arc<KAlgebra>,
    /// `coeffs[i]` multiplies `ħ^i`; no trailing zero coefficient.
    coeffs: Vec<KElem>,
}

impl fmt::Debug for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HbarPoly({})", self.render())
    }
}

impl PartialEq for HbarPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl HbarPoly {
    pub fn zero(alg: &Arc<KAlgebra>) -> Self {
        HbarPoly { alg: alg.clone(), coeffs: Vec::new() }
    }

    pub fn constant(alg: &Arc<KAlgebra>, c: KElem) -> Self {
        HbarPoly::from_coeffs(alg, vec![c])
    }

    pub fn one(alg: &Arc<KAlgebra>) -> Self {
        HbarPoly::constant(alg, alg.one())
    }

    pub fn from_coeffs(alg: &Arc<KAlgebra>, coeffs: Vec<KElem>) -> Self {
        let mut p = HbarPoly { alg: alg.clone(), coeffs };
        p.trim();
        p
    }

    /// `c ħ^k`.
    pub fn term(alg: &Arc<KAlgebra>, c: KElem, k: usize) -> Self {
        let mut coeffs = vec![alg.zero(); k];
        coeffs.push(c);
        HbarPoly::from_coeffs(alg, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(KAlgebra::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn alg(&self) -> &Arc<KAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in ħ; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.alg.zero();
        let coeffs = (0..n)
            .map(|i| KAlgebra::add(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        HbarPoly::from_coeffs(&self.alg, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HbarPoly::from_coeffs(&self.alg, self.coeffs.iter().map(|c| KAlgebra::scale(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return HbarPoly::zero(&self.alg);
        }
        let mut coeffs = vec![self.alg.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if KAlgebra::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if KAlgebra::is_zero(b) {
                    continue;
                }
                coeffs[i + j] = KAlgebra::add(&coeffs[i + j], &self.alg.mul(a, b));
            }
        }
        HbarPoly::from_coeffs(&self.alg, coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(HbarPoly::one(&self.alg), |acc, _| acc.mul(self))
    }

    /// Multiplies by `ħ^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.alg.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HbarPoly { alg: self.alg.clone(), coeffs }
    }

    /// Coefficients of `ħ^0 .. ħ^order`.
    pub fn truncated(&self, order: usize) -> Vec<KElem> {
        (0..=order).map(|i| self.coeffs.get(i).cloned().unwrap_or_else(|| self.alg.zero())).collect()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if KAlgebra::is_zero(c) {
                continue;
            }
            let k = self.alg.render(c);
            parts.push(match i {
                0 => format!("({k})"),
                1 => format!("({k})*hbar"),
                _ => format!("({k})*hbar^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    L1,
    L2,
    L1L2,
}

/// `(1 - u ħ^level)` with `u = x`, `y` or `xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub kind: AtomKind,
    pub level: u32,
}

impl Atom {
    pub fn unit(&self, alg: &KAlgebra) -> KElem {
        match self.kind {
            AtomKind::L1 => alg.x().clone(),
            AtomKind::L2 => alg.y().clone(),
            AtomKind::L1L2 => alg.mul(alg.x(), alg.y()),
        }
    }

    pub fn poly(&self, alg: &Arc<KAlgebra>) -> HbarPoly {
        let u = self.unit(alg);
        HbarPoly::one(alg).sub(&HbarPoly::term(alg, u, self.level as usize))
    }

    pub fn render(&self) -> String {
        let u = match self.kind {
            AtomKind::L1 => "x",
            AtomKind::L2 => "y",
            AtomKind::L1L2 => "x*y",
        };
        if self.level == 1 {
            format!("(1 - {u}*hbar)")
        } else {
            format!("(1 - {u}*hbar^{})", self.level)
        }
    }
}

/// Numerator over a multiset of atoms. Atoms have constant term 1 and are
/// therefore non-zero-divisors, so a fraction vanishes iff its numerator does.
#[derive(Debug, Clone)]
pub struct HbarFraction {
    pub num: HbarPoly,
    pub den: BTreeMap<Atom, u32>,
}

impl HbarFraction {
    pub fn from_poly(num: HbarPoly) -> Self {
        HbarFraction { num, den: BTreeMap::new() }
    }

    pub fn alg(&self) -> &Arc<KAlgebra> {
        self.num.alg()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator rescaled to denominator `target`, which must contain `self.den`.
    fn over(&self, target: &BTreeMap<Atom, u32>) -> HbarPoly {
        let mut num = self.num.clone();
        for (atom, &mult) in target {
            let have = self.den.get(atom).copied().unwrap_or(0);
            if mult > have {
                num = num.mul(&atom.poly(self.alg()).pow(mult - have));
            }
        }
        num
    }

    /// Sum over the least common multiple of the two atom multisets.
    pub fn add(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (a, &m) in &other.den {
            let e = den.entry(*a).or_insert(0);
            *e = (*e).max(m);
        }
        let num = self.over(&den).add(&other.over(&den));
        HbarFraction { num, den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HbarFraction { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (a, &m) in &other.den {
            *den.entry(*a).or_insert(0) += m;
        }
        HbarFraction { num: self.num.mul(&other.num), den }
    }

    pub fn mul_poly(&self, p: &HbarPoly) -> Self {
        HbarFraction { num: self.num.mul(p), den: self.den.clone() }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Degree of the expanded denominator: `Σ level * multiplicity`.
    pub fn den_degree(&self) -> u32 {
        self.den.iter().map(|(a, m)| a.level * m).sum()
    }

    /// Coefficient of the top power of ħ in the expanded denominator:
    /// `Π (-u)^multiplicity`.
    pub fn den_leading_coefficient(&self) -> KElem {
        let alg = self.alg();
        let mut acc = alg.one();
        for (atom, &m) in &self.den {
            let neg_u = KAlgebra::scale(&atom.unit(alg), &-Rational::from_integer(1.into()));
            acc = alg.mul(&acc, &alg.pow(&neg_u, m));
        }
        acc
    }

    /// Expansion as a power series in ħ up to `order`, using
    /// `1 / (1 - u ħ^l) = Σ_k u^k ħ^{lk}`.
    pub fn expand(&self, order: usize) -> Vec<KElem> {
        let alg = self.alg();
        let mut acc = self.num.truncated(order);
        for (atom, &m) in &self.den {
            let u = atom.unit(alg);
            let mut inv = vec![alg.zero(); order + 1];
            let mut pw = alg.one();
            let mut k = 0;
            while k * (atom.level as usize) <= order {
                inv[k * atom.level as usize] = pw.clone();
                pw = alg.mul(&pw, &u);
                k += 1;
            }
            for _ in 0..m {
                acc = series_mul(alg, &acc, &inv, order);
            }
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.den.is_empty() {
            return self.num.render();
        }
        let den: Vec<String> =
            self.den.iter().map(|(a, &m)| if m == 1 { a.render() } else { format!("{}^{m}", a.render()) }).collect();
        format!("[{}] / [{}]", self.num.render(), den.join("*"))
    }
}

fn series_mul(alg: &KAlgebra, a: &[KElem], b: &[KElem], order: usize) -> Vec<KElem> {
    let mut out = vec![alg.zero(); order + 1];
    for i in 0..=order {
        if KAlgebra::is_zero(&a[i]) {
            continue;
        }
        for j in 0..=order - i {
            if KAlgebra::is_zero(&b[j]) {
                continue;
            }
            out[i + j] = KAlgebra::add(&out[i + j], &alg.mul(&a[i], &b[j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Family, RingId};

    fn alg() -> Arc<KAlgebra> {
        KAlgebra::new(&RingId::new(Family::KMilnor, 3, 3, 0)).unwrap()
    }

    #[test]
    fn atom_times_inverse_is_one() {
        let k = alg();
        let a = Atom { kind: AtomKind::L1L2, level: 2 };
        let f = HbarFraction { num: a.poly(&k), den: [(a, 1)].into_iter().collect() };
        assert_eq!(f.expand(10), HbarPoly::one(&k).truncated(10));
        assert!(f.equals(&HbarFraction::from_poly(HbarPoly::one(&k))));
    }

    #[test]
    fn leading_denominator_coefficient() {
        let k = alg();
        let f = HbarFraction {
            num: HbarPoly::one(&k),
            den: [(Atom { kind: AtomKind::L1, level: 1 }, 3)].into_iter().collect(),
        };
        assert_eq!(f.den_degree(), 3);
        let lead = f.den_leading_coefficient();
        let expected = KAlgebra::scale(&k.pow(k.x(), 3), &Rational::from_integer((-1).into()));
        assert_eq!(lead, expected);
        assert!(k.is_unit(&lead));
    }
}
