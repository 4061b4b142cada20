//! Presentations of the quantum cohomology and quantum K-rings of projective
//! spaces, the incidence variety `Fl(1, n-1; n)` and Milnor hypersurfaces
//! `H(n-1, m-1) ⊂ P^{n-1} × P^{m-1}`, together with their classical limits.
//!
//! K-theoretic generators are `x = L_1^{-1}` and `y = L_2^{-1}` (for projective
//! space `x = L^{-1}`); cohomological generators are `h`, `h1`, `h2`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VariableSet};
use crate::quotient::{Presentation, PresentedAlgebra};
use crate::rational::{int, sign_pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    QhPn,
    QkPn,
    QhFl,
    QkFl,
    KMilnor,
    QkMilnor,
    QhMilnor,
    KPnxPm,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::QhPn,
        Family::QkPn,
        Family::QhFl,
        Family::QkFl,
        Family::KMilnor,
        Family::QkMilnor,
        Family::QhMilnor,
        Family::KPnxPm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::QhPn => "qh_pn",
            Family::QkPn => "qk_pn",
            Family::QhFl => "qh_fl",
            Family::QkFl => "qk_fl",
            Family::KMilnor => "k_milnor",
            Family::QkMilnor => "qk_milnor",
            Family::QhMilnor => "qh_milnor",
            Family::KPnxPm => "k_pnxpm",
        }
    }

    /// Families without Novikov variables.
    pub fn is_classical(self) -> bool {
        matches!(self, Family::KMilnor | Family::KPnxPm)
    }

    pub fn uses_m(self) -> bool {
        matches!(self, Family::KMilnor | Family::QkMilnor | Family::QhMilnor | Family::KPnxPm)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown ring family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingId {
    pub family: Family,
    pub n: u32,
    /// Ignored by families that do not take a second parameter.
    pub m: u32,
    /// Ignored (forced to 0) by classical families.
    pub trunc: u32,
}

impl RingId {
    pub fn new(family: Family, n: u32, m: u32, trunc: u32) -> Self {
        RingId { family, n, m, trunc }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.n, self.m);
        let ok = match self.family {
            Family::QhPn | Family::QkPn => n >= 1,
            Family::QhFl | Family::QkFl => n >= 3,
            Family::KMilnor | Family::QkMilnor | Family::QhMilnor => n >= m && m >= 3,
            Family::KPnxPm => n >= 1 && m >= 1,
        };
        if ok {
            Ok(())
        } else {
            let need = match self.family {
                Family::QhPn | Family::QkPn => "n >= 1",
                Family::QhFl | Family::QkFl => "n >= 3",
                Family::KMilnor | Family::QkMilnor | Family::QhMilnor => "n >= m >= 3",
                Family::KPnxPm => "n, m >= 1",
            };
            Err(Error::Parameter(format!("{} requires {need} (got n={n}, m={m})", self.family)))
        }
    }

    pub fn label(&self) -> String {
        if self.family.uses_m() {
            format!("{}({},{})", self.family, self.n, self.m)
        } else {
            format!("{}({})", self.family, self.n)
        }
    }

    /// Classical ring dimension predicted from the geometry.
    pub fn expected_dim(&self) -> usize {
        let (n, m) = (self.n as usize, self.m as usize);
        match self.family {
            Family::QhPn | Family::QkPn => n + 1,
            Family::QhFl | Family::QkFl => n * (n - 1),
            Family::KMilnor | Family::QkMilnor | Family::QhMilnor => m * (n - 1),
            Family::KPnxPm => n * m,
        }
    }
}

struct Vars {
    all: Arc<VariableSet>,
}

impl Vars {
    fn new(gens: &Arc<VariableSet>, qvars: &Arc<VariableSet>) -> Result<Self> {
        Ok(Vars { all: gens.concat(qvars)? })
    }

    fn v(&self, name: &str) -> Polynomial {
        Polynomial::var(&self.all, name).expect("catalog variable")
    }

    fn c(&self, k: i64) -> Polynomial {
        Polynomial::constant(&self.all, int(k))
    }

    fn one_minus(&self, name: &str) -> Polynomial {
        &self.c(1) - &self.v(name)
    }
}

fn var_sets(gens: &[&str], qvars: &[&str]) -> Result<(Arc<VariableSet>, Arc<VariableSet>)> {
    Ok((VariableSet::new(gens.iter().copied())?, VariableSet::new(qvars.iter().copied())?))
}

/// `F_2(x, y)` of the Milnor hypersurface: `(-1)^{n-1}(1-x)^{n-1} +
/// Σ_{t=1}^{m-1} (-1)^{n-1-t} x^{t-1} (1-x)^{n-t-1} (1-y)^t`.
pub fn milnor_f2(vars: &Arc<VariableSet>, n: u32, m: u32) -> Polynomial {
    let one = Polynomial::one(vars);
    let x = Polynomial::var(vars, "x").expect("x");
    let y = Polynomial::var(vars, "y").expect("y");
    let omx = &one - &x;
    let omy = &one - &y;
    let (n, m) = (n as i64, m as i64);
    let mut f = omx.pow((n - 1) as u32).scale(&int(sign_pow(n - 1)));
    for t in 1..m {
        let term = &(&x.pow((t - 1) as u32) * &omx.pow((n - t - 1) as u32)) * &omy.pow(t as u32);
        f = &f + &term.scale(&int(sign_pow(n - 1 - t)));
    }
    f
}

fn milnor_relations(v: &Vars, n: u32, m: u32, quantum: bool) -> Vec<(String, Polynomial)> {
    let (ni, mi) = (n as i64, m as i64);
    let f1 = v.one_minus("y").pow(m);
    let f2 = milnor_f2(&v.all, n, m);
    if !quantum {
        return vec![("F1".into(), f1), ("F2".into(), f2)];
    }
    let (x, y, q1, q2) = (v.v("x"), v.v("y"), v.v("Q1"), v.v("Q2"));
    let f1q = &(&f1 - &q2) + &(&q2 * &(&x * &y));
    let q2_term = &(&q2 * &x.pow(m - 1)) * &v.one_minus("x").pow(n - m);
    let f2q = &(&f2 - &q2_term.scale(&int(sign_pow(ni - mi)))) - &(&q1 * &y).scale(&int(sign_pow(ni - 1)));
    vec![("F1".into(), f1q), ("F2".into(), f2q)]
}

/// Relations of `QK(Fl(1, n-1; n))` written out directly for the incidence
/// variety (no reference to the Milnor construction).
fn qk_fl_relations(v: &Vars, n: u32) -> Vec<(String, Polynomial)> {
    let ni = n as i64;
    let (x, y, q1, q2) = (v.v("x"), v.v("y"), v.v("Q1"), v.v("Q2"));
    let omx = v.one_minus("x");
    let omy = v.one_minus("y");
    let f1q = &(&omy.pow(n) - &q2) + &(&q2 * &(&x * &y));
    let mut f2 = omx.pow(n - 1).scale(&int(sign_pow(ni - 1)));
    for t in 1..n {
        let term = &(&x.pow(t - 1) * &omx.pow(n - t - 1)) * &omy.pow(t);
        f2 = &f2 + &term.scale(&int(sign_pow(ni - 1 - t as i64)));
    }
    let f2q = &(&f2 - &(&q2 * &x.pow(n - 1))) - &(&q1 * &y).scale(&int(sign_pow(ni - 1)));
    vec![("F1".into(), f1q), ("F2".into(), f2q)]
}

/// `h2^m - q2(h1+h2)` and `Σ_{k<m} (-1)^k h1^{n-1-k} h2^k - q1 - (-1)^{m-1} q2 h1^{n-m}`;
/// for `m = n` these are the relations of `QH(Fl(1, n-1; n))`.
fn qh_milnor_relations(v: &Vars, n: u32, m: u32) -> Vec<(String, Polynomial)> {
    let (h1, h2, q1, q2) = (v.v("h1"), v.v("h2"), v.v("q1"), v.v("q2"));
    let sum = &h1 + &h2;
    let f1 = &h2.pow(m) - &(&q2 * &sum);
    let mut f2 = &v.c(0) - &q1;
    for k in 0..m {
        let term = &h1.pow(n - 1 - k) * &h2.pow(k);
        f2 = &f2 + &term.scale(&int(sign_pow(k as i64)));
    }
    let tail = &q2 * &h1.pow(n - m);
    f2 = &f2 - &tail.scale(&int(sign_pow(m as i64 - 1)));
    vec![("f1".into(), f1), ("f2".into(), f2)]
}

pub fn presentation(id: &RingId) -> Result<Presentation> {
    id.validate()?;
    let (n, m) = (id.n, id.m);
    let label = id.label();
    let (gens, qvars, rels) = match id.family {
        Family::QhPn => {
            let (g, q) = var_sets(&["h"], &["q"])?;
            let v = Vars::new(&g, &q)?;
            let r = &v.v("h").pow(n + 1) - &v.v("q");
            (g, q, vec![("f".to_string(), r)])
        }
        Family::QkPn => {
            let (g, q) = var_sets(&["x"], &["Q"])?;
            let v = Vars::new(&g, &q)?;
            let r = &v.one_minus("x").pow(n + 1) - &v.v("Q");
            (g, q, vec![("F".to_string(), r)])
        }
        Family::QhFl => {
            let (g, q) = var_sets(&["h1", "h2"], &["q1", "q2"])?;
            let v = Vars::new(&g, &q)?;
            let rels = qh_milnor_relations(&v, n, n);
            (g, q, rels)
        }
        Family::QhMilnor => {
            let (g, q) = var_sets(&["h1", "h2"], &["q1", "q2"])?;
            let v = Vars::new(&g, &q)?;
            let rels = qh_milnor_relations(&v, n, m);
            (g, q, rels)
        }
        Family::QkFl => {
            let (g, q) = var_sets(&["x", "y"], &["Q1", "Q2"])?;
            let v = Vars::new(&g, &q)?;
            let rels = qk_fl_relations(&v, n);
            (g, q, rels)
        }
        Family::QkMilnor => {
            let (g, q) = var_sets(&["x", "y"], &["Q1", "Q2"])?;
            let v = Vars::new(&g, &q)?;
            let rels = milnor_relations(&v, n, m, true);
            (g, q, rels)
        }
        Family::KMilnor => {
            let (g, q) = var_sets(&["x", "y"], &[])?;
            let v = Vars::new(&g, &q)?;
            let rels = milnor_relations(&v, n, m, false);
            (g, q, rels)
        }
        Family::KPnxPm => {
            let (g, q) = var_sets(&["x", "y"], &[])?;
            let v = Vars::new(&g, &q)?;
            let rels = vec![("F1".to_string(), v.one_minus("x").pow(n)), ("F2".to_string(), v.one_minus("y").pow(m))];
            (g, q, rels)
        }
    };
    Presentation::new(label, gens, qvars, rels)
}

pub fn make_ring(id: &RingId) -> Result<Arc<PresentedAlgebra>> {
    let trunc = if id.family.is_classical() { 0 } else { id.trunc };
    PresentedAlgebra::new(presentation(id)?, trunc)
}

/// Ring of the classical limit (Novikov variables set to zero).
pub fn make_classical_ring(id: &RingId) -> Result<Arc<PresentedAlgebra>> {
    PresentedAlgebra::new(presentation(id)?.classical_limit()?, 0)
}

/// `h_a^n = q_a (h1 + h2)` in `QH(Fl(1, n-1; n))` at truncation `trunc`.
pub fn verify_flag_power_relation(n: u32, a: u32, trunc: u32) -> Result<bool> {
    if !(a == 1 || a == 2) {
        return Err(Error::Parameter(format!("a must be 1 or 2, got {a}")));
    }
    let ring = make_ring(&RingId::new(Family::QhFl, n, n, trunc))?;
    let v = ring.all_vars();
    let h = Polynomial::var(v, &format!("h{a}"))?;
    let q = Polynomial::var(v, &format!("q{a}"))?;
    let sum = &Polynomial::var(v, "h1")? + &Polynomial::var(v, "h2")?;
    let expr = &h.pow(n) - &(&q * &sum);
    Ok(ring.reduce(&expr)?.is_zero())
}

/// Relations of `qk_fl(n)` coincide term by term with those of `qk_milnor(n, n)`.
pub fn fl_specialization_check(n: u32) -> Result<bool> {
    let fl = presentation(&RingId::new(Family::QkFl, n, n, 0))?;
    let mil = presentation(&RingId::new(Family::QkMilnor, n, n, 0))?;
    Ok(fl.relations().len() == mil.relations().len()
        && fl.relations().iter().zip(mil.relations()).all(|((a, p), (b, r))| a == b && p == r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn rendered(id: RingId) -> Vec<String> {
        presentation(&id).unwrap().relations().iter().map(|(_, r)| r.render()).collect()
    }

    #[test]
    fn projective_line_relation() {
        assert_eq!(rendered(RingId::new(Family::QhPn, 1, 0, 2)), vec!["h^2 - q"]);
    }

    #[test]
    fn quantum_milnor_3_3() {
        let id = RingId::new(Family::QkMilnor, 3, 3, 2);
        let p = presentation(&id).unwrap();
        let v = p.all_vars();
        let f2 = parse_polynomial("(1 - x)^2 - (1 - x)*(1 - y) + x*(1 - y)^2", v).unwrap();
        let expected = [
            parse_polynomial("(1 - y)^3 - Q2 + Q2*x*y", v).unwrap(),
            &(&f2 - &parse_polynomial("Q2*x^2", v).unwrap()) - &parse_polynomial("Q1*y", v).unwrap(),
        ];
        assert_eq!(p.relations()[0].1, expected[0]);
        assert_eq!(p.relations()[1].1, expected[1]);
    }

    #[test]
    fn milnor_f2_at_x_zero() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let f2 = milnor_f2(&v, 3, 3);
        let mut b = std::collections::BTreeMap::new();
        b.insert("x".to_string(), Polynomial::zero(&v));
        b.insert("y".to_string(), Polynomial::var(&v, "y").unwrap());
        assert_eq!(f2.substitute(&b).unwrap().render(), "y");
    }

    #[test]
    fn milnor_f2_4_3_expansion() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let direct = parse_polynomial("-(1-x)^3 + (1-x)^2*(1-y) - x*(1-x)*(1-y)^2", &v).unwrap();
        assert_eq!(milnor_f2(&v, 4, 3), direct);
    }

    #[test]
    fn parameter_bounds() {
        assert!(make_ring(&RingId::new(Family::KMilnor, 3, 2, 0)).is_err());
        assert!(make_ring(&RingId::new(Family::QhFl, 2, 2, 0)).is_err());
        assert!(make_ring(&RingId::new(Family::QhPn, 0, 0, 0)).is_err());
        assert!("qk_nope".parse::<Family>().is_err());
        assert_eq!("k_pnxpm".parse::<Family>().unwrap(), Family::KPnxPm);
    }

    #[test]
    fn flag_classical_dimension() {
        let r = make_classical_ring(&RingId::new(Family::QhFl, 3, 3, 0)).unwrap();
        assert_eq!(r.dim(), 6);
        let k = make_ring(&RingId::new(Family::KMilnor, 3, 3, 0)).unwrap();
        assert_eq!(k.dim(), 6);
    }

    #[test]
    fn flag_power_relation() {
        assert!(verify_flag_power_relation(3, 2, 3).unwrap());
        assert!(verify_flag_power_relation(3, 1, 3).unwrap());
        assert!(verify_flag_power_relation(4, 1, 2).unwrap());
    }

    #[test]
    fn fl_is_milnor_with_m_equal_n() {
        for n in 3..=5 {
            assert!(fl_specialization_check(n).unwrap());
        }
    }

    #[test]
    fn structure_constant_examples() {
        let r = make_ring(&RingId::new(Family::QkPn, 1, 0, 2)).unwrap();
        let t = r.structure_constants();
        assert_eq!(t[1][1].render(), "2*x - 1 + Q");
        for j in 0..r.dim() {
            assert_eq!(t[0][j], r.basis_element(j));
        }
        let r2 = make_ring(&RingId::new(Family::QhPn, 2, 0, 2)).unwrap();
        assert_eq!(r2.structure_constants()[1][2].render(), "q");
        let fl = make_ring(&RingId::new(Family::QhFl, 3, 3, 2)).unwrap();
        assert_eq!(fl.parse("h2^3").unwrap().render(), "h1*q2 + h2*q2");
    }
}
