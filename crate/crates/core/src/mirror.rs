//! Mirror model of `QH(Fl(1, n-1; n))`: the toric superpotential, its Jacobi
//! ideal, the homomorphism `h1 ↦ q1q2/x_N`, `h2 ↦ x1` (`N = 2n - 3`), and the
//! non-zero-divisor property of `h1 + h2` checked both through the mirror and
//! directly by a determinant.
//!
//! Ideal membership in the Laurent ring `ℚ[x^±, q^±]` is decided in the
//! polynomial ring with one extra variable `t` and the relation
//! `t·x1⋯x_N·q1·q2 - 1`, after clearing denominators by Laurent monomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::catalog::{make_ring, presentation, Family, RingId};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, GroebnerOptions};
use crate::matrix::{det_bareiss, det_subset_expansion, PolyMatrix};
use crate::poly::{Monomial, Polynomial, VariableSet};
use crate::rational::int;
use crate::series::truncate_q;

/// `f = Σ_{k=1}^{N} x_k/x_{k-1} + q2/x_{n-2} + x_n/q2 + q1q2/x_N`, `x_0 = 1`.
#[derive(Debug, Clone)]
pub struct Superpotential {
    n: u32,
    vars: Arc<VariableSet>,
    poly: Polynomial,
}

impl Superpotential {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("the superpotential requires n >= 3 (got {n})")));
        }
        let big_n = 2 * n - 3;
        let names: Vec<String> = (1..=big_n).map(|k| format!("x{k}")).chain(["q1".into(), "q2".into()]).collect();
        let vars = VariableSet::laurent(names)?;
        let len = vars.len();
        let x = |k: u32| Monomial::var(len, (k - 1) as usize, 1);
        let q1 = Monomial::var(len, len - 2, 1);
        let q2 = Monomial::var(len, len - 1, 1);
        let mut poly = Polynomial::monomial(&vars, x(1), int(1));
        for k in 2..=big_n {
            poly = &poly + &Polynomial::monomial(&vars, x(k).div_laurent(&x(k - 1)), int(1));
        }
        let extra = [q2.div_laurent(&x(n - 2)), x(n).div_laurent(&q2), q1.mul(&q2).div_laurent(&x(big_n))];
        for m in extra {
            poly = &poly + &Polynomial::monomial(&vars, m, int(1));
        }
        Ok(Superpotential { n, vars, poly })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of `x` variables, `2n - 3`.
    pub fn width(&self) -> u32 {
        2 * self.n - 3
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// `R_a = x_a ∂f/∂x_a` for `a = 1..N`.
    pub fn jacobi_relations(&self) -> Vec<Polynomial> {
        (0..self.width() as usize).map(|i| self.poly.log_derivative(i)).collect()
    }

    fn var(&self, name: &str) -> Polynomial {
        Polynomial::var(&self.vars, name).expect("superpotential variable")
    }

    /// Images of `h1` and `h2`.
    pub fn phi_generators(&self) -> (Polynomial, Polynomial) {
        let x_last = self.var(&format!("x{}", self.width()));
        let h1 = &(&self.var("q1") * &self.var("q2")) * &x_last.laurent_inverse().expect("monomial");
        (h1, self.var("x1"))
    }

    /// Image of a polynomial in `h1, h2, q1, q2`.
    pub fn phi(&self, p: &Polynomial) -> Result<Polynomial> {
        let (h1, h2) = self.phi_generators();
        let bindings = BTreeMap::from([
            ("h1".to_string(), h1),
            ("h2".to_string(), h2),
            ("q1".to_string(), self.var("q1")),
            ("q2".to_string(), self.var("q2")),
        ]);
        p.substitute(&bindings)
    }
}

/// Ideal of a set of Laurent polynomials, with membership decided by a
/// Gröbner basis over the Rabinowitsch extension.
#[derive(Debug, Clone)]
pub struct LaurentIdeal {
    laurent: Arc<VariableSet>,
    poly_vars: Arc<VariableSet>,
    basis: GroebnerBasis,
}

impl LaurentIdeal {
    pub fn new(generators: &[Polynomial], step_cap: u64) -> Result<Self> {
        let laurent = generators
            .first()
            .map(|g| g.vars().clone())
            .ok_or_else(|| Error::Parameter("an ideal needs at least one generator".into()))?;
        let names: Vec<String> = laurent.names().iter().cloned().chain(["t".to_string()]).collect();
        let poly_vars = VariableSet::new(names)?;
        let mut inputs: Vec<Polynomial> =
            generators.iter().map(|g| g.clear_denominators().0.embed(&poly_vars)).collect::<Result<_>>()?;
        let all = Monomial::from_exponents(&vec![1; poly_vars.len()]);
        inputs.push(&Polynomial::monomial(&poly_vars, all, int(1)) - &Polynomial::one(&poly_vars));
        let opts = GroebnerOptions { track_cofactors: false, step_cap };
        let basis = GroebnerBasis::compute(&inputs, opts)?;
        Ok(LaurentIdeal { laurent, poly_vars, basis })
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Normal form of `p` with denominators cleared; zero iff `p` is a member.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.embed(&self.laurent)?;
        self.basis.normal_form(&p.clear_denominators().0.embed(&self.poly_vars)?)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct MembershipCheck {
    pub name: String,
    pub element: Polynomial,
    pub normal_form: Polynomial,
    /// Whether membership is the expected outcome (false for negative controls).
    pub expected: bool,
}

impl MembershipCheck {
    pub fn member(&self) -> bool {
        self.normal_form.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.member() == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct MirrorReport {
    pub n: u32,
    pub superpotential: Polynomial,
    pub relations: Vec<Polynomial>,
    pub groebner_size: usize,
    pub groebner_steps: u64,
    /// `Φ(h1)` is a Laurent monomial with unit coefficient.
    pub h1_image_is_unit: bool,
    pub checks: Vec<MembershipCheck>,
}

impl MirrorReport {
    pub fn holds(&self) -> bool {
        self.h1_image_is_unit && self.checks.iter().all(MembershipCheck::holds)
    }
}

fn relation_images(w: &Superpotential) -> Result<Vec<(String, Polynomial)>> {
    let n = w.n();
    let qh = presentation(&RingId::new(Family::QhFl, n, n, 0))?;
    qh.relations().iter().map(|(name, r)| Ok((name.clone(), w.phi(r)?))).collect()
}

/// Membership of the images of both quantum relations, of the corollary
/// relation `h1^n - q1(h1 + h2)`, and of the wrong relation `h2^n - q2 h2`
/// (expected to fail) in the Jacobi ideal.
pub fn verify_phi(n: u32, step_cap: u64) -> Result<MirrorReport> {
    let w = Superpotential::new(n)?;
    let relations = w.jacobi_relations();
    let ideal = LaurentIdeal::new(&relations, step_cap)?;
    let (h1, h2) = w.phi_generators();
    let h1_image_is_unit = h1.len() == 1 && h1.terms().all(|(_, c)| c == &int(1) || c == &int(-1));
    let q1 = w.var("q1");
    let q2 = w.var("q2");
    let mut elements: Vec<(String, Polynomial, bool)> =
        relation_images(&w)?.into_iter().map(|(name, p)| (format!("{name} image"), p, true)).collect();
    elements.push(("h1^n - q1*(h1 + h2) image".into(), &h1.pow(n) - &(&q1 * &(&h1 + &h2)), true));
    elements.push(("h2^n - q2*h2 image (wrong relation)".into(), &h2.pow(n) - &(&q2 * &h2), false));
    let checks = elements
        .into_iter()
        .map(|(name, element, expected)| {
            let normal_form = ideal.normal_form(&element)?;
            Ok(MembershipCheck { name, element, normal_form, expected })
        })
        .collect::<Result<_>>()?;
    Ok(MirrorReport {
        n,
        superpotential: w.polynomial().clone(),
        relations,
        groebner_size: ideal.groebner().basis().len(),
        groebner_steps: ideal.groebner().steps(),
        h1_image_is_unit,
        checks,
    })
}

/// Variables kept after eliminating `x_k` for `k ∉ {1, n-1, N}`.
fn reduced_vars(n: u32) -> Result<Arc<VariableSet>> {
    let big_n = 2 * n - 3;
    VariableSet::laurent(["x1".to_string(), format!("x{}", n - 1), format!("x{big_n}"), "q1".into(), "q2".into()])
}

/// `x_k = x1^k` for `2 <= k <= n-2` and `x_k = (x_N/(q1q2))^{N-k} x_N` for
/// `n <= k <= N-1`; other variables map to themselves.
fn elimination_bindings(n: u32) -> Result<BTreeMap<String, Polynomial>> {
    let big_n = 2 * n - 3;
    let v = reduced_vars(n)?;
    let var = |name: &str| Polynomial::var(&v, name);
    let x1 = var("x1")?;
    let x_last = var(&format!("x{big_n}"))?;
    let ratio = &x_last * &(&var("q1")? * &var("q2")?).laurent_inverse()?;
    let mut b = BTreeMap::new();
    for k in 1..=big_n {
        let image = if k <= n - 2 {
            x1.pow(k)
        } else if k == n - 1 || k == big_n {
            var(&format!("x{k}"))?
        } else {
            &ratio.pow(big_n - k) * &x_last
        };
        b.insert(format!("x{k}"), image);
    }
    b.insert("q1".into(), var("q1")?);
    b.insert("q2".into(), var("q2")?);
    Ok(b)
}

/// An elimination step as a Laurent identity: `residual` must vanish.
#[derive(Debug, Clone)]
pub struct ChainIdentity {
    pub name: String,
    pub residual: Polynomial,
}

/// Substitutes the eliminated variables into every `R_a`: those with
/// `a <= n-3` or `a >= n+1` vanish identically, and `x_{n-2} R_{n-2}` becomes
/// `x1^{n-1} - q2 - x_{n-1}`. Requires `n >= 4`.
pub fn chain_identities(n: u32) -> Result<Vec<ChainIdentity>> {
    if n < 4 {
        return Err(Error::Parameter(format!("the elimination chain requires n >= 4 (got {n})")));
    }
    let w = Superpotential::new(n)?;
    let b = elimination_bindings(n)?;
    let v = reduced_vars(n)?;
    let rel = w.jacobi_relations();
    let mut out = Vec::new();
    for a in (1..=n - 3).chain(n + 1..=w.width()) {
        out.push(ChainIdentity {
            name: format!("R{a} after elimination"),
            residual: rel[a as usize - 1].substitute(&b)?,
        });
    }
    let x_nm2 = b[&format!("x{}", n - 2)].clone();
    let lhs = &x_nm2 * &rel[n as usize - 3].substitute(&b)?;
    let expected = &(&Polynomial::var(&v, "x1")?.pow(n - 1) - &Polynomial::var(&v, "q2")?)
        - &Polynomial::var(&v, &format!("x{}", n - 1))?;
    out.push(ChainIdentity {
        name: format!("x{0}*R{0} = x1^{1} - q2 - x{1}", n - 2, n - 1),
        residual: &lhs - &expected,
    });
    Ok(out)
}

/// Two-sided comparison of `(R_{n-2}, R_{n-1}, R_n)` (after elimination) with
/// `(x_{n-1} - x1^{n-1} + q2, f1 image, f2 image)`.
#[derive(Debug, Clone)]
pub struct IdealEquality {
    /// Each eliminated `R_a` reduces to zero modulo the relation images.
    pub forward: Vec<MembershipCheck>,
    /// Each relation image reduces to zero modulo the eliminated `R_a`.
    pub backward: Vec<MembershipCheck>,
}

impl IdealEquality {
    pub fn holds(&self) -> bool {
        self.forward.iter().chain(&self.backward).all(MembershipCheck::holds)
    }
}

pub fn ideal_equality(n: u32, step_cap: u64) -> Result<IdealEquality> {
    if n < 4 {
        return Err(Error::Parameter(format!("the elimination chain requires n >= 4 (got {n})")));
    }
    let w = Superpotential::new(n)?;
    let b = elimination_bindings(n)?;
    let v = reduced_vars(n)?;
    let rel = w.jacobi_relations();
    let eliminated: Vec<(String, Polynomial)> =
        (n - 2..=n).map(|a| Ok((format!("R{a}"), rel[a as usize - 1].substitute(&b)?))).collect::<Result<_>>()?;
    let mut images: Vec<(String, Polynomial)> = vec![(
        format!("x{} - x1^{} + q2", n - 1, n - 1),
        &(&Polynomial::var(&v, &format!("x{}", n - 1))? - &Polynomial::var(&v, "x1")?.pow(n - 1))
            + &Polynomial::var(&v, "q2")?,
    )];
    for (name, p) in relation_images(&w)? {
        images.push((format!("{name} image"), p.embed(&v)?));
    }
    let check = |ideal: &LaurentIdeal, elems: &[(String, Polynomial)]| -> Result<Vec<MembershipCheck>> {
        elems
            .iter()
            .map(|(name, p)| {
                let normal_form = ideal.normal_form(p)?;
                Ok(MembershipCheck { name: name.clone(), element: p.clone(), normal_form, expected: true })
            })
            .collect()
    };
    let image_ideal = LaurentIdeal::new(&images.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>(), step_cap)?;
    let forward = check(&image_ideal, &eliminated)?;
    let rel_ideal = LaurentIdeal::new(&eliminated.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>(), step_cap)?;
    let backward = check(&rel_ideal, &images)?;
    Ok(IdealEquality { forward, backward })
}

/// Multiplication by `h1 + h2` on `qh_fl(n)` truncated at `trunc`.
#[derive(Debug, Clone)]
pub struct NzdCheck {
    pub n: u32,
    pub truncation: u32,
    /// Entries `(i, j)` where `M_{h1}^n` and `q1 M_{h1+h2}` differ.
    pub identity_mismatches: Vec<(usize, usize)>,
    /// `det M_{h1+h2}` by fraction-free elimination, truncated.
    pub determinant: Polynomial,
    /// The same determinant by memoised cofactor expansion.
    pub determinant_cross_check: Polynomial,
    pub lowest_degree: Option<i64>,
    pub lowest_part: Polynomial,
    /// `det(M_{h1})^n = q1^{n(n-1)} det(M_{h1+h2})` at the truncation.
    pub power_determinant_identity: bool,
    /// `det` of the multiplication matrix of `0` is zero.
    pub zero_control: bool,
}

impl NzdCheck {
    pub fn holds(&self) -> bool {
        self.identity_mismatches.is_empty()
            && self.determinant == self.determinant_cross_check
            && !self.lowest_part.is_zero()
            && self.power_determinant_identity
            && self.zero_control
    }
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, trunc: u32) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Polynomial::zero(a[i][0].vars());
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    truncate_q(&acc, 0, trunc)
                })
                .collect()
        })
        .collect()
}

/// Checks `M_{h1}^n = q1 M_{h1+h2}` entrywise and that `det M_{h1+h2}` has a
/// nonzero lowest-degree part, so multiplication by `h1 + h2` is injective on
/// the free truncated module.
pub fn direct_nzd_check(n: u32, trunc: u32) -> Result<NzdCheck> {
    let ring = make_ring(&RingId::new(Family::QhFl, n, n, trunc))?;
    let qv = ring.qvars().clone();
    let h1 = ring.var("h1")?;
    let sum = &h1 + &ring.var("h2")?;
    let m_h1 = h1.mult_matrix();
    let m_sum = sum.mult_matrix();
    let mut power = m_h1.clone();
    for _ in 1..n {
        power = mat_mul(&power, &m_h1, trunc);
    }
    let q1 = Polynomial::var(&qv, "q1")?;
    let mut identity_mismatches = Vec::new();
    for (i, row) in power.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if *entry != truncate_q(&(&q1 * &m_sum[i][j]), 0, trunc) {
                identity_mismatches.push((i, j));
            }
        }
    }
    let determinant = truncate_q(&det_bareiss(&m_sum, &qv), 0, trunc);
    let determinant_cross_check = det_subset_expansion(&m_sum, &qv, trunc);
    let lowest_degree = determinant.min_degree();
    let lowest_part = lowest_degree.map_or_else(|| Polynomial::zero(&qv), |d| determinant.homogeneous_part(d));
    let det_h1 = det_bareiss(&m_h1, &qv);
    let lhs = truncate_q(&det_h1.pow(n), 0, trunc);
    let rhs = truncate_q(&(&q1.pow(n * (n - 1)) * &det_bareiss(&m_sum, &qv)), 0, trunc);
    let zero_control = det_bareiss(&ring.zero().mult_matrix(), &qv).is_zero();
    Ok(NzdCheck {
        n,
        truncation: trunc,
        identity_mismatches,
        determinant,
        determinant_cross_check,
        lowest_degree,
        lowest_part,
        power_determinant_identity: lhs == rhs,
        zero_control,
    })
}
