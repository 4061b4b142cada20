//! Q-truncated J-functions and ħ-difference operators.
//!
//! A difference operator is a polynomial in `t1, t2, hbar, Q1, Q2`, where
//! `t_k` stands for `ϑ_k = 1 - u_k ħ^{Q_k ∂_{Q_k}}`. The shifts commute, so
//! the theta part is a commutative polynomial. A monomial
//! `t1^a t2^b hbar^c Q1^e1 Q2^e2` sends the coefficient `J_s` to
//! `(1 - x ħ^{s1})^a (1 - y ħ^{s2})^b ħ^c J_s` placed at degree `s + e`:
//! thetas are evaluated at the source degree, before the Q-shift.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use super::hbar::{Atom, AtomKind, HbarFraction, HbarPoly};
use super::kalg::KAlgebra;
use crate::catalog::{milnor_f2, Family, RingId};
use crate::error::{Error, Result};
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, VariableSet};
use crate::rational::{int, sign_pow};

/// Coefficients `J_d` for `d1 + d2 <= max_deg`.
#[derive(Debug, Clone)]
pub struct JSeries {
    alg: Arc<KAlgebra>,
    max_deg: u32,
    coeffs: BTreeMap<(u32, u32), HbarFraction>,
}

impl JSeries {
    pub fn alg(&self) -> &Arc<KAlgebra> {
        &self.alg
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), HbarFraction> {
        &self.coeffs
    }

    pub fn coeff(&self, d1: u32, d2: u32) -> Option<&HbarFraction> {
        self.coeffs.get(&(d1, d2))
    }
}

fn degrees(max_deg: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=max_deg).flat_map(move |s| (0..=s).map(move |d1| (d1, s - d1)))
}

fn build(alg: Arc<KAlgebra>, n: u32, m: u32, max_deg: u32, hypersurface: bool) -> JSeries {
    let coeffs = degrees(max_deg)
        .map(|(d1, d2)| {
            let mut num = HbarPoly::one(&alg);
            if hypersurface {
                for l in 1..=d1 + d2 {
                    num = num.mul(&Atom { kind: AtomKind::L1L2, level: l }.poly(&alg));
                }
            }
            let den = (1..=d1)
                .map(|l| (Atom { kind: AtomKind::L1, level: l }, n))
                .chain((1..=d2).map(|l| (Atom { kind: AtomKind::L2, level: l }, m)))
                .collect();
            ((d1, d2), HbarFraction { num, den })
        })
        .collect();
    JSeries { alg, max_deg, coeffs }
}

/// J-function of the Milnor hypersurface with values in `k_milnor(n, m)`:
/// `J_d = Π_{l=1}^{|d|} (1 - xyħ^l) / (Π_{l≤d1} (1 - xħ^l)^n Π_{l≤d2} (1 - yħ^l)^m)`.
pub fn j_milnor(n: u32, m: u32, max_deg: u32) -> Result<JSeries> {
    let alg = KAlgebra::new(&RingId::new(Family::KMilnor, n, m, 0))?;
    Ok(build(alg, n, m, max_deg, true))
}

/// J-function of `P^{n-1} × P^{m-1}` with values in `k_pnxpm(n, m)`.
pub fn j_product(n: u32, m: u32, max_deg: u32) -> Result<JSeries> {
    let alg = KAlgebra::new(&RingId::new(Family::KPnxPm, n, m, 0))?;
    Ok(build(alg, n, m, max_deg, false))
}

fn operator_vars() -> &'static Arc<VariableSet> {
    static VARS: OnceLock<Arc<VariableSet>> = OnceLock::new();
    VARS.get_or_init(|| VariableSet::new(["t1", "t2", "hbar", "Q1", "Q2"]).expect("distinct names"))
}

/// Polynomial in `t1, t2, hbar, Q1, Q2` read as a difference operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceExpression {
    poly: Polynomial,
}

impl DifferenceExpression {
    pub fn vars() -> &'static Arc<VariableSet> {
        operator_vars()
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let poly = p.embed(operator_vars())?;
        if poly.terms().any(|(m, _)| m.exponents().iter().any(|&e| e < 0)) {
            return Err(Error::NegativeExponent(poly.render()));
        }
        Ok(DifferenceExpression { poly })
    }

    pub fn parse(src: &str) -> Result<Self> {
        DifferenceExpression::from_polynomial(&parse_polynomial(src, operator_vars())?)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }

    /// `ϑ2^m - Q2 + Q2 ħ (1 - ϑ1)(1 - ϑ2)`.
    pub fn first_operator(m: u32) -> Self {
        Self::first_with_exponent(m)
    }

    /// The first operator with `ϑ2^m` replaced by `ϑ2^e`; a corrupted
    /// operator when `e != m`.
    pub fn first_with_exponent(e: u32) -> Self {
        Self::parse(&format!("t2^{e} - Q2 + Q2*hbar*(1 - t1)*(1 - t2)")).expect("well-formed operator")
    }

    /// `F2(1 - ϑ1, 1 - ϑ2) - (-1)^{n-m} Q2 (1-ϑ1)^{m-1} ϑ1^{n-m} - (-1)^{n-1} Q1 (1-ϑ2)`.
    pub fn second_operator(n: u32, m: u32) -> Self {
        let v = operator_vars();
        let xy = VariableSet::new(["x", "y"]).expect("distinct names");
        let one = Polynomial::one(v);
        let t1 = Polynomial::var(v, "t1").expect("t1");
        let t2 = Polynomial::var(v, "t2").expect("t2");
        let bindings = BTreeMap::from([("x".to_string(), &one - &t1), ("y".to_string(), &one - &t2)]);
        let f2 = milnor_f2(&xy, n, m).substitute(&bindings).expect("bound variables");
        let q1 = Polynomial::var(v, "Q1").expect("Q1");
        let q2 = Polynomial::var(v, "Q2").expect("Q2");
        let q2_term = &(&q2 * &(&one - &t1).pow(m - 1)) * &t1.pow(n - m);
        let q1_term = &q1 * &(&one - &t2);
        let (n, m) = (n as i64, m as i64);
        let poly = &(&f2 - &q2_term.scale(&int(sign_pow(n - m)))) - &q1_term.scale(&int(sign_pow(n - 1)));
        DifferenceExpression { poly }
    }

    /// `ϑ2^m - Q2` and `ϑ1^n - Q1`, which annihilate the J-function of
    /// `P^{n-1} × P^{m-1}`.
    pub fn product_operators(n: u32, m: u32) -> [Self; 2] {
        [
            Self::parse(&format!("t2^{m} - Q2")).expect("well-formed operator"),
            Self::parse(&format!("t1^{n} - Q1")).expect("well-formed operator"),
        ]
    }
}

/// Multiplier `Σ c (1 - xħ^{s1})^a (1 - yħ^{s2})^b ħ^h` for the terms of one
/// Q-shift, evaluated at the source degree `s`.
fn multiplier(alg: &Arc<KAlgebra>, terms: &[(u32, u32, u32, crate::Rational)], s: (u32, u32)) -> HbarPoly {
    let theta1 = Atom { kind: AtomKind::L1, level: s.0 }.poly(alg);
    let theta2 = Atom { kind: AtomKind::L2, level: s.1 }.poly(alg);
    let mut pow1: HashMap<u32, HbarPoly> = HashMap::new();
    let mut pow2: HashMap<u32, HbarPoly> = HashMap::new();
    let mut acc = HbarPoly::zero(alg);
    for (a, b, h, c) in terms {
        let p1 = pow1.entry(*a).or_insert_with(|| theta1.pow(*a)).clone();
        let p2 = pow2.entry(*b).or_insert_with(|| theta2.pow(*b)).clone();
        acc = acc.add(&p1.mul(&p2).shift(*h as usize).scale(c));
    }
    acc
}

/// `(t1 power, t2 power, ħ power, coefficient)` terms sharing one Q-shift.
type ShiftTerms = Vec<(u32, u32, u32, crate::Rational)>;

/// Coefficientwise action of `expr` on `j`; terms landing beyond the series'
/// degree bound are dropped.
pub fn apply_difference(expr: &DifferenceExpression, j: &JSeries) -> JSeries {
    let alg = j.alg.clone();
    let mut by_shift: BTreeMap<(u32, u32), ShiftTerms> = BTreeMap::new();
    for (mono, c) in expr.poly.terms() {
        let e = mono.exponents();
        by_shift.entry((e[3] as u32, e[4] as u32)).or_default().push((
            e[0] as u32,
            e[1] as u32,
            e[2] as u32,
            c.clone(),
        ));
    }
    let coeffs = j
        .coeffs
        .keys()
        .map(|&d| {
            let mut acc = HbarFraction::from_poly(HbarPoly::zero(&alg));
            for (&(e1, e2), terms) in &by_shift {
                if e1 > d.0 || e2 > d.1 {
                    continue;
                }
                let s = (d.0 - e1, d.1 - e2);
                let mult = multiplier(&alg, terms, s);
                acc = acc.add(&j.coeffs[&s].mul_poly(&mult));
            }
            (d, acc)
        })
        .collect();
    JSeries { alg, max_deg: j.max_deg, coeffs }
}

/// One coefficient of `expr · J`.
#[derive(Debug, Clone)]
pub struct DegreeResidual {
    pub operator: String,
    pub degree: (u32, u32),
    pub residual: HbarFraction,
}

impl DegreeResidual {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Residuals of every named operator at every degree of `j`.
pub fn verify_operators(j: &JSeries, ops: &[(String, DifferenceExpression)]) -> Vec<DegreeResidual> {
    let mut out = Vec::new();
    for (name, op) in ops {
        let applied = apply_difference(op, j);
        for (d, r) in applied.coeffs {
            out.push(DegreeResidual { operator: name.clone(), degree: d, residual: r });
        }
    }
    out
}

/// Both hypersurface difference equations on `J` up to total degree `max_deg`.
pub fn verify_difference_equations(n: u32, m: u32, max_deg: u32) -> Result<Vec<DegreeResidual>> {
    let j = j_milnor(n, m, max_deg)?;
    let ops = [
        ("D1".to_string(), DifferenceExpression::first_operator(m)),
        ("D2".to_string(), DifferenceExpression::second_operator(n, m)),
    ];
    Ok(verify_operators(&j, &ops))
}

/// Degree comparison certifying that `u_i ħ^{d_i} J_d` vanishes at `ħ = ∞`.
#[derive(Debug, Clone)]
pub struct InfinityCheck {
    pub index: u32,
    pub degree: (u32, u32),
    pub numerator_degree: usize,
    pub denominator_degree: u32,
    pub leading_unit: bool,
}

impl InfinityCheck {
    pub fn holds(&self) -> bool {
        self.leading_unit && self.numerator_degree < self.denominator_degree as usize
    }
}

/// For `i = 1, 2` and `0 < d1 + d2 <= max_deg`, compares the ħ-degree of
/// `u_i ħ^{d_i} · numerator` with that of the expanded denominator, whose top
/// coefficient must be a unit for the comparison to decide the limit.
pub fn hbar_infinity_check(n: u32, m: u32, max_deg: u32) -> Result<Vec<InfinityCheck>> {
    let j = j_milnor(n, m, max_deg)?;
    let alg = j.alg();
    let mut out = Vec::new();
    for (&d, f) in &j.coeffs {
        if d == (0, 0) {
            continue;
        }
        let leading_unit = alg.is_unit(&f.den_leading_coefficient());
        for i in [1u32, 2] {
            let (u, di) = if i == 1 { (alg.x(), d.0) } else { (alg.y(), d.1) };
            let shifted = f.num.mul(&HbarPoly::term(alg, u.clone(), di as usize));
            out.push(InfinityCheck {
                index: i,
                degree: d,
                numerator_degree: shifted.degree().unwrap_or(0),
                denominator_degree: f.den_degree(),
                leading_unit,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_coefficients() {
        let j = j_milnor(3, 3, 2).unwrap();
        let k = j.alg().clone();
        assert!(j.coeff(0, 0).unwrap().equals(&HbarFraction::from_poly(HbarPoly::one(&k))));
        let c10 = j.coeff(1, 0).unwrap();
        assert_eq!(c10.num, Atom { kind: AtomKind::L1L2, level: 1 }.poly(&k));
        assert_eq!(c10.den, BTreeMap::from([(Atom { kind: AtomKind::L1, level: 1 }, 3)]));
        assert_eq!(j.coeffs().len(), 6);
    }

    #[test]
    fn theta_on_constant_coefficient() {
        let j = j_milnor(3, 3, 1).unwrap();
        let k = j.alg().clone();
        let out = apply_difference(&DifferenceExpression::parse("t2").unwrap(), &j);
        let expected = HbarPoly::constant(&k, KAlgebra::sub(&k.one(), k.y()));
        assert!(out.coeff(0, 0).unwrap().equals(&HbarFraction::from_poly(expected)));
    }

    #[test]
    fn q_shift_moves_coefficients() {
        let j = j_milnor(3, 3, 1).unwrap();
        let out = apply_difference(&DifferenceExpression::parse("Q2").unwrap(), &j);
        assert!(out.coeff(0, 1).unwrap().equals(j.coeff(0, 0).unwrap()));
        assert!(out.coeff(0, 0).unwrap().is_zero());
        assert!(out.coeff(1, 0).unwrap().is_zero());
    }

    #[test]
    fn hand_expanded_q2_coefficient_of_first_operator() {
        // (1 - yħ)^m c_{(0,1)} - 1 + ħxy = (1 - xyħ) - 1 + ħxy = 0
        for (n, m) in [(3, 3), (5, 4)] {
            let j = j_milnor(n, m, 1).unwrap();
            let out = apply_difference(&DifferenceExpression::first_operator(m), &j);
            assert!(out.coeff(0, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn both_operators_annihilate_small_case() {
        let residuals = verify_difference_equations(3, 3, 2).unwrap();
        assert_eq!(residuals.len(), 12);
        assert!(residuals.iter().all(DegreeResidual::is_zero));
    }

    #[test]
    fn perturbed_first_operator_fails() {
        let j = j_milnor(3, 3, 1).unwrap();
        let op = DifferenceExpression::first_with_exponent(2);
        let bad = verify_operators(&j, &[("D1".into(), op)]);
        assert!(bad.iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn second_operator_classical_part_is_f2() {
        let op = DifferenceExpression::second_operator(3, 3);
        let expected =
            DifferenceExpression::parse("t1^2 - t1*t2 + (1 - t1)*t2^2 - Q2*(1 - t1)^2 - Q1*(1 - t2)").unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn product_controls() {
        let j = j_product(3, 3, 2).unwrap();
        let [a, b] = DifferenceExpression::product_operators(3, 3);
        let ok = verify_operators(&j, &[("a".into(), a), ("b".into(), b)]);
        assert!(ok.iter().all(DegreeResidual::is_zero));
        let full = [
            ("D1".to_string(), DifferenceExpression::first_operator(3)),
            ("D2".to_string(), DifferenceExpression::second_operator(3, 3)),
        ];
        let j1 = j_product(3, 3, 1).unwrap();
        assert!(verify_operators(&j1, &full).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn infinity_degree_counts() {
        let checks = hbar_infinity_check(3, 3, 2).unwrap();
        assert_eq!(checks.len(), 10);
        assert!(checks.iter().all(InfinityCheck::holds));
        let c = checks.iter().find(|c| c.degree == (1, 1) && c.index == 2).unwrap();
        assert_eq!((c.numerator_degree, c.denominator_degree), (4, 6));
        let c = checks.iter().find(|c| c.degree == (1, 0) && c.index == 1).unwrap();
        assert_eq!((c.numerator_degree, c.denominator_degree), (2, 3));
    }

    #[test]
    fn rejects_negative_exponents() {
        assert!(DifferenceExpression::parse("t1^-1").is_err());
        assert!(DifferenceExpression::parse("z").is_err());
    }
}
