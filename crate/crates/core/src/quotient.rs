//! Rings presented by generators and relations over a truncated Novikov
//! coefficient ring.
//!
//! The classical parts (q = 0) of the relations determine a Gröbner basis with
//! cofactors and hence a monomial basis. The quantum relations are then
//! applied through the same cofactors, so that cancelling a classical leading
//! monomial only introduces smaller classical monomials at the same q-degree
//! or terms of strictly higher q-degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, GroebnerOptions};
use crate::poly::{render_terms, Monomial, Polynomial, VariableSet};
use crate::rational::Rational;
use crate::series::{q_degree, truncate_q, NovikovSeries};

#[derive(Debug, Clone)]
pub struct Presentation {
    label: String,
    gens: Arc<VariableSet>,
    qvars: Arc<VariableSet>,
    all: Arc<VariableSet>,
    relations: Vec<(String, Polynomial)>,
}

impl Presentation {
    /// Relations may be written over any variable set whose names are among
    /// the generators and Novikov variables.
    pub fn new(
        label: impl Into<String>,
        gens: Arc<VariableSet>,
        qvars: Arc<VariableSet>,
        relations: Vec<(String, Polynomial)>,
    ) -> Result<Self> {
        let all = gens.concat(&qvars)?;
        let label = label.into();
        let mut rels = Vec::with_capacity(relations.len());
        for (name, r) in relations {
            let r = r.embed(&all)?;
            let p = Presentation {
                label: label.clone(),
                gens: gens.clone(),
                qvars: qvars.clone(),
                all: all.clone(),
                relations: vec![],
            };
            if p.classical(&r).is_zero() {
                return Err(Error::Parameter(format!("relation `{name}` has zero classical part")));
            }
            rels.push((name, r));
        }
        Ok(Presentation { label, gens, qvars, all, relations: rels })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gens(&self) -> &Arc<VariableSet> {
        &self.gens
    }

    pub fn qvars(&self) -> &Arc<VariableSet> {
        &self.qvars
    }

    /// Generators followed by Novikov variables.
    pub fn all_vars(&self) -> &Arc<VariableSet> {
        &self.all
    }

    pub fn relations(&self) -> &[(String, Polynomial)] {
        &self.relations
    }

    /// q = 0 specialisation of a polynomial over `all_vars`.
    pub fn classical(&self, p: &Polynomial) -> Polynomial {
        let k = self.gens.len();
        let mut out = Polynomial::zero(&self.gens);
        for (m, c) in p.terms() {
            let (g, q) = m.split_at(k);
            if q.is_one() {
                out.add_term(g, c.clone());
            }
        }
        out
    }

    /// Same generators and relation names, Novikov variables set to zero.
    pub fn classical_limit(&self) -> Result<Presentation> {
        let rels = self.relations.iter().map(|(n, r)| (n.clone(), self.classical(r))).collect();
        Presentation::new(format!("{}|q=0", self.label), self.gens.clone(), VariableSet::empty(), rels)
    }
}

/// Monomials of total degree at most `trunc` in the Novikov variables, with
/// a precomputed truncated product table.
#[derive(Debug)]
pub(crate) struct QIndex {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mul: Vec<Vec<Option<usize>>>,
}

impl QIndex {
    fn new(nq: usize, trunc: u32) -> Self {
        let mut monos = Vec::new();
        let mut exps = vec![0i32; nq];
        enumerate_bounded(&mut exps, 0, trunc as i32, &mut monos);
        monos.sort();
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mul = monos.iter().map(|a| monos.iter().map(|b| index.get(&a.mul(b)).copied()).collect()).collect();
        QIndex { monos, index, mul }
    }

    fn len(&self) -> usize {
        self.monos.len()
    }
}

fn enumerate_bounded(exps: &mut Vec<i32>, i: usize, budget: i32, out: &mut Vec<Monomial>) {
    if i == exps.len() {
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for e in 0..=budget {
        exps[i] = e;
        enumerate_bounded(exps, i + 1, budget - e, out);
    }
    exps[i] = 0;
}

/// Sparse column: `(basis index, q index, coefficient)`.
type SparseCoords = Vec<(usize, usize, Rational)>;

/// Choice of which reducible term to cancel next during quantum reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Largest classical monomial first, lowest q-degree on ties, first
    /// applicable basis element.
    LargestFirst,
    /// Smallest reducible classical monomial, last applicable basis element.
    SmallestLastDivisor,
}

pub struct PresentedAlgebra {
    presentation: Presentation,
    groebner: GroebnerBasis,
    /// `quantum[i] = Σ_j cofactor[i][j] * relation_j`, over all variables.
    quantum: Vec<Polynomial>,
    basis: Vec<Monomial>,
    basis_index: HashMap<Monomial, usize>,
    trunc: u32,
    q: QIndex,
    gen_mats: OnceLock<Vec<Vec<SparseCoords>>>,
    table: OnceLock<Vec<Vec<SparseCoords>>>,
}

impl fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedAlgebra")
            .field("label", &self.presentation.label)
            .field("trunc", &self.trunc)
            .field("dim", &self.basis.len())
            .finish()
    }
}

const REDUCTION_CAP: u64 = 10_000_000;

impl PresentedAlgebra {
    pub fn new(presentation: Presentation, trunc: u32) -> Result<Arc<Self>> {
        let classical: Vec<Polynomial> =
            presentation.relations.iter().map(|(_, r)| presentation.classical(r)).collect();
        if classical.is_empty() {
            return Err(Error::NotZeroDimensional {
                ring: presentation.label.clone(),
                var: presentation.gens.names().first().cloned().unwrap_or_default(),
            });
        }
        let groebner = GroebnerBasis::compute(&classical, GroebnerOptions::default())?;
        if !groebner.cofactors_hold(&classical) {
            return Err(Error::Parameter(format!("cofactor certificate of `{}` does not hold", presentation.label)));
        }
        let basis = groebner.standard_monomials(&presentation.label)?;
        if basis.is_empty() {
            return Err(Error::Parameter(format!("`{}` is the zero ring", presentation.label)));
        }
        let all = presentation.all.clone();
        let quantum = groebner
            .cofactors()
            .expect("tracked")
            .iter()
            .map(|row| -> Result<Polynomial> {
                let mut acc = Polynomial::zero(&all);
                for (u, (_, r)) in row.iter().zip(&presentation.relations) {
                    let u = u.embed(&all)?;
                    acc = &acc + &truncate_q(&(&u * r), presentation.gens.len(), trunc);
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let basis_index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let q = QIndex::new(presentation.qvars.len(), trunc);
        Ok(Arc::new(PresentedAlgebra {
            presentation,
            groebner,
            quantum,
            basis,
            basis_index,
            trunc,
            q,
            gen_mats: OnceLock::new(),
            table: OnceLock::new(),
        }))
    }

    pub fn label(&self) -> &str {
        &self.presentation.label
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.groebner
    }

    pub fn gens(&self) -> &Arc<VariableSet> {
        &self.presentation.gens
    }

    pub fn qvars(&self) -> &Arc<VariableSet> {
        &self.presentation.qvars
    }

    pub fn all_vars(&self) -> &Arc<VariableSet> {
        &self.presentation.all
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|m| render_monomial_or_one(m, self.gens())).collect()
    }

    fn nq(&self) -> usize {
        self.q.len()
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement { ring: self.clone(), coeffs: vec![Rational::zero(); self.dim() * self.nq()] }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.basis_element(0)
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> AlgebraElement {
        self.one().scale(&c)
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[i * self.nq()] = Rational::one();
        e
    }

    /// Normal form by term rewriting with the default strategy.
    pub fn reduce(self: &Arc<Self>, p: &Polynomial) -> Result<AlgebraElement> {
        self.reduce_with(p, Strategy::LargestFirst)
    }

    /// Normal form by term rewriting. `p` may use any subset of the
    /// generator and Novikov variable names.
    pub fn reduce_with(self: &Arc<Self>, p: &Polynomial, strategy: Strategy) -> Result<AlgebraElement> {
        let k = self.gens().len();
        let mut rest = truncate_q(&p.embed(self.all_vars())?, k, self.trunc);
        let lms = self.groebner.leading_monomials();
        let lcs: Vec<Rational> = self.groebner.basis().iter().map(|g| g.leading_term().unwrap().1.clone()).collect();
        let mut steps = 0u64;
        loop {
            let mut pick: Option<(Monomial, Monomial, Rational, usize)> = None;
            for (m, c) in rest.terms() {
                let (cm, qm) = m.split_at(k);
                let divisors = lms.iter().enumerate().filter(|(_, l)| l.divides(&cm)).map(|(i, _)| i);
                let i = match strategy {
                    Strategy::LargestFirst => divisors.min(),
                    Strategy::SmallestLastDivisor => divisors.max(),
                };
                let Some(i) = i else { continue };
                let better = match (&pick, strategy) {
                    (None, _) => true,
                    (Some((pc, pq, _, _)), Strategy::LargestFirst) => {
                        cm > *pc || (cm == *pc && qm.degree() < pq.degree())
                    }
                    (Some((pc, _, _, _)), Strategy::SmallestLastDivisor) => cm < *pc,
                };
                if better {
                    pick = Some((cm, qm, c.clone(), i));
                }
            }
            let Some((cm, qm, c, i)) = pick else { break };
            steps += 1;
            if steps > REDUCTION_CAP {
                return Err(Error::StepCap(REDUCTION_CAP));
            }
            let shift = cm.div(&lms[i]).unwrap().concat(&qm);
            let s = -(c / &lcs[i]);
            let trunc = self.trunc as i64;
            let correction = self.quantum[i]
                .mul_filtered(&Polynomial::monomial(self.all_vars(), shift, s), |m| q_degree(m, k) <= trunc);
            rest = &rest + &correction;
        }
        let mut e = self.zero();
        for (m, c) in rest.terms() {
            let (cm, qm) = m.split_at(k);
            let b = self.basis_index[&cm];
            let qi = self.q.index[&qm];
            e.coeffs[b * self.nq() + qi] = c.clone();
        }
        Ok(e)
    }

    /// Column `j` of the matrix of multiplication by generator `g`.
    fn gen_mats(self: &Arc<Self>) -> &Vec<Vec<SparseCoords>> {
        self.gen_mats.get_or_init(|| {
            let k = self.gens().len();
            (0..k)
                .map(|g| {
                    self.basis
                        .iter()
                        .map(|b| {
                            let m = b.mul(&Monomial::var(k, g, 1));
                            let p = Polynomial::monomial(self.gens(), m, Rational::one());
                            self.reduce(&p).expect("reduction of a basis product").sparse()
                        })
                        .collect()
                })
                .collect()
        })
    }

    fn apply_sparse(&self, cols: &[SparseCoords], v: &[Rational]) -> Vec<Rational> {
        let nq = self.nq();
        let mut out = vec![Rational::zero(); v.len()];
        for (j, col) in cols.iter().enumerate() {
            for k in 0..nq {
                let a = &v[j * nq + k];
                if a.is_zero() {
                    continue;
                }
                for (b, kq, c) in col {
                    if let Some(idx) = self.q.mul[k][*kq] {
                        out[b * nq + idx] += a * c;
                    }
                }
            }
        }
        out
    }

    fn mul_by_gen(self: &Arc<Self>, g: usize, v: &[Rational]) -> Vec<Rational> {
        let mats = self.gen_mats();
        self.apply_sparse(&mats[g], v)
    }

    /// `table[i][j]` = coordinates of `basis_i ⋆ basis_j`.
    fn table(self: &Arc<Self>) -> &Vec<Vec<SparseCoords>> {
        self.table.get_or_init(|| {
            let dim = self.dim();
            let mut rows: Vec<Vec<SparseCoords>> = Vec::with_capacity(dim);
            for i in 0..dim {
                let b = &self.basis[i];
                let row = if b.is_one() {
                    (0..dim).map(|j| self.basis_element(j).sparse()).collect()
                } else {
                    // standard monomials are closed under division
                    let g = b.exponents().iter().position(|&e| e > 0).unwrap();
                    let prev = b.div(&Monomial::var(b.len(), g, 1)).unwrap();
                    let pi = self.basis_index[&prev];
                    (0..dim)
                        .map(|j| {
                            let v = self.dense_from_sparse(&rows[pi][j]);
                            sparse_of(&self.mul_by_gen(g, &v), self.nq())
                        })
                        .collect()
                };
                rows.push(row);
            }
            rows
        })
    }

    fn dense_from_sparse(&self, s: &SparseCoords) -> Vec<Rational> {
        let nq = self.nq();
        let mut v = vec![Rational::zero(); self.dim() * nq];
        for (b, k, c) in s {
            v[b * nq + k] = c.clone();
        }
        v
    }

    /// Element denoted by a polynomial in the generators and Novikov
    /// variables, computed with ring operations rather than term rewriting.
    pub fn element(self: &Arc<Self>, p: &Polynomial) -> Result<AlgebraElement> {
        let k = self.gens().len();
        let p = truncate_q(&p.embed(self.all_vars())?, k, self.trunc);
        let mut out = self.zero();
        let nq = self.nq();
        for (m, c) in p.terms() {
            let (cm, qm) = m.split_at(k);
            let mut v = self.one().coeffs;
            for (g, &e) in cm.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = self.mul_by_gen(g, &v);
                }
            }
            let qi = self.q.index[&qm];
            for (idx, a) in v.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if let Some(t) = self.q.mul[idx % nq][qi] {
                    out.coeffs[(idx / nq) * nq + t] += a * c;
                }
            }
        }
        Ok(out)
    }

    /// `self.element` of a generator or Novikov variable by name.
    pub fn var(self: &Arc<Self>, name: &str) -> Result<AlgebraElement> {
        self.element(&Polynomial::var(self.all_vars(), name)?)
    }

    pub fn parse(self: &Arc<Self>, src: &str) -> Result<AlgebraElement> {
        self.element(&crate::parse::parse_polynomial(src, self.all_vars())?)
    }

    /// Full multiplication table `basis_i ⋆ basis_j`.
    pub fn structure_constants(self: &Arc<Self>) -> Vec<Vec<AlgebraElement>> {
        let t = self.table();
        t.iter()
            .map(|row| {
                row.iter().map(|s| AlgebraElement { ring: self.clone(), coeffs: self.dense_from_sparse(s) }).collect()
            })
            .collect()
    }

    /// Reduces random expressions under both rewriting strategies and via ring
    /// arithmetic; returns the first disagreement, if any.
    pub fn confluence_check(
        self: &Arc<Self>,
        trials: usize,
        seed: u64,
    ) -> Result<Option<(Polynomial, AlgebraElement, AlgebraElement)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_deg = self.basis.iter().map(|m| m.degree()).max().unwrap_or(0) as i32 + 2;
        for _ in 0..trials {
            let p = random_polynomial(
                &mut rng,
                self.gens().len(),
                self.qvars().len(),
                max_deg,
                self.trunc as i32,
                self.all_vars(),
            );
            let a = self.reduce_with(&p, Strategy::LargestFirst)?;
            let b = self.reduce_with(&p, Strategy::SmallestLastDivisor)?;
            if a != b {
                return Ok(Some((p, a, b)));
            }
            let c = self.element(&p)?;
            if a != c {
                return Ok(Some((p, a, c)));
            }
        }
        Ok(None)
    }

    /// Same presentation at a different truncation.
    pub fn at_truncation(&self, trunc: u32) -> Result<Arc<Self>> {
        PresentedAlgebra::new(self.presentation.clone(), trunc)
    }
}

pub(crate) fn random_polynomial(
    rng: &mut ChaCha8Rng,
    ngens: usize,
    nq: usize,
    max_deg: i32,
    max_q: i32,
    vars: &Arc<VariableSet>,
) -> Polynomial {
    let nterms = rng.gen_range(1..=4);
    let mut p = Polynomial::zero(vars);
    for _ in 0..nterms {
        let mut e = vec![0i32; ngens + nq];
        let mut budget = rng.gen_range(0..=max_deg);
        for x in e.iter_mut().take(ngens) {
            let d = rng.gen_range(0..=budget);
            *x = d;
            budget -= d;
        }
        let mut qbudget = rng.gen_range(0..=max_q);
        for x in e.iter_mut().skip(ngens) {
            let d = rng.gen_range(0..=qbudget);
            *x = d;
            qbudget -= d;
        }
        let c: i64 = rng.gen_range(-3..=3);
        p.add_term(Monomial::from_exponents(&e), Rational::from_integer(c.into()));
    }
    p
}

fn render_monomial_or_one(m: &Monomial, vars: &VariableSet) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.render(vars)
    }
}

fn sparse_of(v: &[Rational], nq: usize) -> SparseCoords {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i / nq, i % nq, c.clone())).collect()
}

/// Fully reduced element: coordinates on the monomial basis, each a truncated
/// polynomial in the Novikov variables.
#[derive(Clone)]
pub struct AlgebraElement {
    ring: Arc<PresentedAlgebra>,
    /// `coeffs[b * nq + k]`: coefficient of `basis_b * qmono_k`.
    coeffs: Vec<Rational>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({}: {})", self.ring.label(), self.render())
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl AlgebraElement {
    pub fn ring(&self) -> &Arc<PresentedAlgebra> {
        &self.ring
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
            || (self.ring.label() == other.ring.label()
                && self.ring.trunc == other.ring.trunc
                && self.ring.basis == other.ring.basis
                && **self.ring.all_vars() == **other.ring.all_vars())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: format!("{}@{}", self.ring.label(), self.ring.trunc),
                right: format!("{}@{}", other.ring.label(), other.ring.trunc),
            })
        }
    }

    fn sparse(&self) -> SparseCoords {
        sparse_of(&self.coeffs, self.ring.nq())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coordinate on basis element `b`, as a polynomial in the Novikov variables.
    pub fn coord(&self, b: usize) -> Polynomial {
        let nq = self.ring.nq();
        let mut p = Polynomial::zero(self.ring.qvars());
        for k in 0..nq {
            p.add_term(self.ring.q.monos[k].clone(), self.coeffs[b * nq + k].clone());
        }
        p
    }

    pub fn coords(&self) -> Vec<Polynomial> {
        (0..self.ring.dim()).map(|b| self.coord(b)).collect()
    }

    /// Rational coefficient of `basis_b * qmono`.
    pub fn coefficient(&self, b: usize, qmono: &Monomial) -> Rational {
        match self.ring.q.index.get(qmono) {
            Some(&k) => self.coeffs[b * self.ring.nq() + k].clone(),
            None => Rational::zero(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let vars = self.ring.all_vars();
        let nq = self.ring.nq();
        let mut p = Polynomial::zero(vars);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let m = self.ring.basis[i / nq].concat(&self.ring.q.monos[i % nq]);
                p.add_term(m, c.clone());
            }
        }
        p
    }

    pub fn to_series(&self) -> NovikovSeries {
        NovikovSeries::from_polynomial(self.ring.gens(), self.ring.qvars(), self.ring.trunc, &self.to_polynomial())
            .expect("element variables belong to its ring")
    }

    /// Basis elements descending, then Novikov monomials ascending.
    pub fn render(&self) -> String {
        let nq = self.ring.nq();
        let gens = self.ring.gens();
        let qv = self.ring.qvars();
        let mut terms = Vec::new();
        for b in (0..self.ring.dim()).rev() {
            for k in 0..nq {
                let c = &self.coeffs[b * nq + k];
                if c.is_zero() {
                    continue;
                }
                let mb = self.ring.basis[b].render(gens);
                let mq = self.ring.q.monos[k].render(qv);
                let mono = match (mb.is_empty(), mq.is_empty()) {
                    (true, _) => mq,
                    (_, true) => mb,
                    _ => format!("{mb}*{mq}"),
                };
                terms.push((mono, c));
            }
        }
        render_terms(terms.into_iter())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(AlgebraElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(AlgebraElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let nq = ring.nq();
        let table = ring.table();
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        let lhs: Vec<(usize, usize, &Rational)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i / nq, i % nq, c)).collect();
        let rhs: Vec<(usize, usize, &Rational)> =
            other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i / nq, i % nq, c)).collect();
        for &(b1, k1, c1) in &lhs {
            for &(b2, k2, c2) in &rhs {
                let Some(k12) = ring.q.mul[k1][k2] else { continue };
                let s = c1 * c2;
                for (b3, k3, c3) in &table[b1][b2] {
                    if let Some(k) = ring.q.mul[k12][*k3] {
                        out[b3 * nq + k] += &s * c3;
                    }
                }
            }
        }
        Ok(AlgebraElement { ring: ring.clone(), coeffs: out })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AlgebraElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Part of q-degree zero, as an element of the same ring.
    pub fn classical_limit(&self) -> Self {
        let nq = self.ring.nq();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % nq == 0 { c.clone() } else { Rational::zero() })
            .collect();
        AlgebraElement { ring: self.ring.clone(), coeffs }
    }

    /// Moves the element to a ring with the same presentation; the target
    /// truncation may not exceed this element's.
    pub fn transfer(&self, target: &Arc<PresentedAlgebra>) -> Result<Self> {
        if target.trunc > self.ring.trunc {
            return Err(Error::TruncationTooHigh { requested: target.trunc, available: self.ring.trunc });
        }
        target.element(&self.to_polynomial())
    }

    /// Matrix of multiplication by `self`; column `j` holds the coordinates of
    /// `self ⋆ basis_j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Polynomial>> {
        let dim = self.ring.dim();
        let cols: Vec<Vec<Polynomial>> = (0..dim).map(|j| (self * &self.ring.basis_element(j)).coords()).collect();
        (0..dim).map(|i| (0..dim).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn max_q_degree(&self) -> Option<i64> {
        let nq = self.ring.nq();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.ring.q.monos[i % nq].degree())
            .max()
    }
}

impl<'a> std::ops::Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("elements of different rings")
    }
}

impl<'a> std::ops::Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("elements of different rings")
    }
}

impl<'a> std::ops::Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("elements of different rings")
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(gens: &[&str], qs: &[&str], rels: &[&str], trunc: u32) -> Arc<PresentedAlgebra> {
        let g = VariableSet::new(gens.iter().copied()).unwrap();
        let q = VariableSet::new(qs.iter().copied()).unwrap();
        let all = g.concat(&q).unwrap();
        let rels =
            rels.iter().enumerate().map(|(i, s)| (format!("r{}", i + 1), parse_polynomial(s, &all).unwrap())).collect();
        PresentedAlgebra::new(Presentation::new("test", g, q, rels).unwrap(), trunc).unwrap()
    }

    #[test]
    fn quantum_projective_line() {
        let r = ring(&["h"], &["q"], &["h^2 - q"], 2);
        assert_eq!(r.parse("h^2").unwrap().render(), "q");
        let h = r.var("h").unwrap();
        let m = h.mult_matrix();
        let rendered: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(|p| p.render()).collect()).collect();
        assert_eq!(rendered, vec![vec!["0", "q"], vec!["1", "0"]]);
    }

    #[test]
    fn quantum_k_projective_line() {
        let r = ring(&["x"], &["Q"], &["(1 - x)^2 - Q"], 2);
        let x = r.var("x").unwrap();
        assert_eq!((&x * &x).render(), "2*x - 1 + Q");
        let p = parse_polynomial("(1 - x)^2", r.all_vars()).unwrap();
        assert_eq!(r.reduce(&p).unwrap().render(), "Q");
    }

    #[test]
    fn trivial_ring() {
        let r = ring(&["x"], &[], &["x"], 0);
        assert_eq!(r.dim(), 1);
        assert!(r.confluence_check(10, 1).unwrap().is_none());
    }

    #[test]
    fn unit_and_zero_matrices() {
        let r = ring(&["h"], &["q"], &["h^3 - q"], 2);
        let id = r.one().mult_matrix();
        let z = r.zero().mult_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(id[i][j].is_one(), i == j);
                assert!(id[i][j].is_one() || id[i][j].is_zero());
                assert!(z[i][j].is_zero());
            }
        }
    }

    #[test]
    fn flag_relation_rewrites() {
        let r = ring(&["h1", "h2"], &["q1", "q2"], &["h2^3 - q2*(h1 + h2)", "h1^2 - h1*h2 + h2^2 - q1 - q2"], 3);
        assert_eq!(r.dim(), 6);
        assert_eq!(r.parse("h2^3").unwrap().render(), "h1*q2 + h2*q2");
        assert!(r.confluence_check(30, 7).unwrap().is_none());
    }

    #[test]
    fn reduce_agrees_with_ring_arithmetic() {
        let r = ring(&["h1", "h2"], &["q1", "q2"], &["h2^3 - q2*(h1 + h2)", "h1^2 - h1*h2 + h2^2 - q1 - q2"], 4);
        for s in ["h1^5*h2^3", "(h1 + h2)^4 - q1*h1^3", "q1^2*q2*h2^7"] {
            let p = parse_polynomial(s, r.all_vars()).unwrap();
            assert_eq!(r.reduce(&p).unwrap(), r.element(&p).unwrap(), "{s}");
        }
    }

    #[test]
    fn relations_vanish() {
        let r = ring(&["x", "y"], &["Q1", "Q2"], &["(1 - y)^3 - Q2 + Q2*x*y", "(1-x)^2 - x*(1-y) - x^2 - Q1*y"], 3);
        for (_, rel) in r.presentation().relations() {
            assert!(r.reduce(rel).unwrap().is_zero());
            assert!(r.element(rel).unwrap().is_zero());
        }
    }
}
