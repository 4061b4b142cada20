//! Buchberger's algorithm with the Gebauer–Möller pair criteria, optionally
//! recording for every basis element its cofactors with respect to the input
//! generators.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VariableSet};
use crate::rational::Rational;

pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub track_cofactors: bool,
    /// Maximum number of single-term reduction steps before giving up.
    pub step_cap: u64,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { track_cofactors: true, step_cap: DEFAULT_STEP_CAP }
    }
}

/// Reduced, monic Gröbner basis in graded reverse lexicographic order,
/// sorted by ascending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    vars: Arc<VariableSet>,
    basis: Vec<Polynomial>,
    /// `basis[i] == Σ_j cofactors[i][j] * input[j]` when tracked.
    cofactors: Option<Vec<Vec<Polynomial>>>,
    steps: u64,
}

/// A polynomial together with its cofactor vector.
#[derive(Debug, Clone)]
struct Tracked {
    poly: Polynomial,
    cof: Option<Vec<Polynomial>>,
}

impl Tracked {
    fn lm(&self) -> &Monomial {
        self.poly.leading_term().expect("nonzero").0
    }

    fn scale(&mut self, s: &Rational) {
        self.poly = self.poly.scale(s);
        if let Some(cof) = &mut self.cof {
            for c in cof.iter_mut() {
                *c = c.scale(s);
            }
        }
    }

    fn make_monic(&mut self) {
        let lc = self.poly.leading_term().expect("nonzero").1.clone();
        if !lc.is_one() {
            self.scale(&lc.recip());
        }
    }

    /// `self += s * m * other`.
    fn add_shifted(&mut self, other: &Tracked, m: &Monomial, s: &Rational) {
        self.poly.add_assign_shifted(&other.poly, m, s);
        if let (Some(a), Some(b)) = (&mut self.cof, &other.cof) {
            for (x, y) in a.iter_mut().zip(b) {
                x.add_assign_shifted(y, m, s);
            }
        }
    }
}

struct Engine {
    store: Vec<Tracked>,
    active: Vec<usize>,
    steps: u64,
    cap: u64,
}

impl Engine {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.cap {
            Err(Error::StepCap(self.cap))
        } else {
            Ok(())
        }
    }

    /// Full reduction of `t` by the active elements.
    fn reduce(&mut self, t: Tracked) -> Result<Tracked> {
        let vars = t.poly.vars().clone();
        let mut rest = t;
        let mut done = Tracked { poly: Polynomial::zero(&vars), cof: None };
        while let Some((m, c)) = rest.poly.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let divisor = self.active.iter().copied().find(|&i| self.store[i].lm().divides(&m));
            match divisor {
                Some(i) => {
                    self.tick()?;
                    let g = &self.store[i];
                    let (lm, lc) = g.poly.leading_term().unwrap();
                    let shift = m.div(lm).unwrap();
                    let s = -(c / lc);
                    let g = g.clone();
                    rest.add_shifted(&g, &shift, &s);
                }
                None => {
                    rest.poly.pop_leading();
                    done.poly.add_term(m, c);
                }
            }
        }
        done.cof = rest.cof;
        Ok(done)
    }

    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.store[i].lm().lcm(self.store[j].lm())
    }

    fn s_poly(&self, i: usize, j: usize) -> Tracked {
        let l = self.lcm(i, j);
        let (a, b) = (&self.store[i], &self.store[j]);
        let ta = l.div(a.lm()).unwrap();
        let tb = l.div(b.lm()).unwrap();
        let ca = a.poly.leading_term().unwrap().1.recip();
        let cb = b.poly.leading_term().unwrap().1.recip();
        let mut out = Tracked {
            poly: Polynomial::zero(a.poly.vars()),
            cof: a.cof.as_ref().map(|c| vec![Polynomial::zero(c[0].vars()); c.len()]),
        };
        out.add_shifted(a, &ta, &ca);
        out.add_shifted(b, &tb, &-cb);
        out
    }

    /// Gebauer–Möller update after inserting store index `h`.
    fn update(&mut self, pairs: &mut BTreeSet<(Monomial, usize, usize)>, h: usize) {
        let lh = self.store[h].lm().clone();
        let cands: Vec<usize> = self.active.clone();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        let all: Vec<(usize, Monomial)> = cands.iter().map(|&g| (g, self.lcm(h, g))).collect();
        for (idx, (g, l)) in all.iter().enumerate() {
            let coprime = lh.coprime(self.store[*g].lm());
            let dominated = all[idx + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let fresh: Vec<(usize, Monomial)> =
            kept.into_iter().filter(|(g, _)| !lh.coprime(self.store[*g].lm())).collect();
        pairs.retain(|(l, i, j)| !(lh.divides(l) && self.lcm(*i, h) != *l && self.lcm(*j, h) != *l));
        for (g, l) in fresh {
            pairs.insert((l, g.min(h), g.max(h)));
        }
        self.active.retain(|&g| !lh.divides(self.store[g].lm()));
        self.active.push(h);
    }
}

impl GroebnerBasis {
    pub fn compute(inputs: &[Polynomial], opts: GroebnerOptions) -> Result<Self> {
        let vars = match inputs.first() {
            Some(p) => p.vars().clone(),
            None => return Err(Error::Parameter("empty generator list".into())),
        };
        let k = inputs.len();
        let mut eng = Engine { store: Vec::new(), active: Vec::new(), steps: 0, cap: opts.step_cap };
        let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
        for (j, f) in inputs.iter().enumerate() {
            if **f.vars() != *vars {
                return Err(Error::VariableMismatch {
                    left: vars.names().join(","),
                    right: f.vars().names().join(","),
                });
            }
            let cof = opts.track_cofactors.then(|| {
                (0..k).map(|i| if i == j { Polynomial::one(&vars) } else { Polynomial::zero(&vars) }).collect()
            });
            let t = eng.reduce(Tracked { poly: f.clone(), cof })?;
            if !t.poly.is_zero() {
                eng.store.push(t);
                let h = eng.store.len() - 1;
                eng.update(&mut pairs, h);
            }
        }
        while let Some(pair) = pairs.pop_first() {
            let (_, i, j) = pair;
            let s = eng.s_poly(i, j);
            let mut r = eng.reduce(s)?;
            if !r.poly.is_zero() {
                r.make_monic();
                eng.store.push(r);
                let h = eng.store.len() - 1;
                eng.update(&mut pairs, h);
            }
        }
        // Minimal basis: the active set already has pairwise non-dividing
        // leading monomials; interreduce tails and normalise.
        let mut active = eng.active.clone();
        active.sort_by(|&a, &b| eng.store[a].lm().cmp(eng.store[b].lm()));
        let mut reduced = Vec::with_capacity(active.len());
        for &i in &active {
            let mut t = eng.store[i].clone();
            let (lm, lc) = {
                let (m, c) = t.poly.leading_term().unwrap();
                (m.clone(), c.clone())
            };
            t.poly.pop_leading();
            eng.active = active.iter().copied().filter(|&a| a != i).collect();
            let mut tail = eng.reduce(t)?;
            tail.poly.add_term(lm, lc);
            tail.make_monic();
            reduced.push(tail);
        }
        let cofactors = opts.track_cofactors.then(|| reduced.iter().map(|t| t.cof.clone().unwrap()).collect());
        Ok(GroebnerBasis { vars, basis: reduced.into_iter().map(|t| t.poly).collect(), cofactors, steps: eng.steps })
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_term().unwrap().0.clone()).collect()
    }

    /// Remainder of full reduction by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut eng = Engine {
            store: self.basis.iter().map(|g| Tracked { poly: g.clone(), cof: None }).collect(),
            active: (0..self.basis.len()).collect(),
            steps: 0,
            cap: DEFAULT_STEP_CAP,
        };
        Ok(eng.reduce(Tracked { poly: p.embed(&self.vars)?, cof: None })?.poly)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `true` when every basis element equals its recorded cofactor combination.
    pub fn cofactors_hold(&self, inputs: &[Polynomial]) -> bool {
        let Some(cof) = &self.cofactors else { return false };
        self.basis.iter().zip(cof).all(|(g, row)| {
            let mut acc = Polynomial::zero(&self.vars);
            for (u, f) in row.iter().zip(inputs) {
                acc = &acc + &(u * f);
            }
            acc == *g
        })
    }

    /// Monomials not divisible by any leading monomial, ascending. Fails when
    /// the quotient is infinite-dimensional.
    pub fn standard_monomials(&self, ring: &str) -> Result<Vec<Monomial>> {
        let n = self.vars.len();
        let lms = self.leading_monomials();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = lms
                .iter()
                .filter(|m| m.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.exponents()[i])
                .min();
            match pure {
                Some(e) => bounds.push(e),
                None => {
                    return Err(Error::NotZeroDimensional {
                        ring: ring.to_string(),
                        var: self.vars.name(i).to_string(),
                    })
                }
            }
        }
        let mut out = Vec::new();
        let mut exps = vec![0i32; n];
        loop {
            let m = Monomial::from_exponents(&exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box bounded by the pure powers
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Ok(out);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}
