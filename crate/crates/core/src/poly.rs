//! Multivariate polynomials with exact rational coefficients.
//!
//! Variables live in a [`VariableSet`] whose declaration order fixes the
//! graded reverse lexicographic monomial order. Individual variables may be
//! flagged as Laurent, in which case negative exponents are allowed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{render_abs, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::with_flags(names.into_iter().map(|n| (n, false)))
    }

    /// Every variable Laurent-flagged.
    pub fn laurent<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::with_flags(names.into_iter().map(|n| (n, true)))
    }

    pub fn with_flags<S: Into<String>>(vars: impl IntoIterator<Item = (S, bool)>) -> Result<Arc<Self>> {
        let mut names = Vec::new();
        let mut laurent = Vec::new();
        for (name, flag) in vars {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::DuplicateVariable(name));
            }
            names.push(name);
            laurent.push(flag);
        }
        Ok(Arc::new(Self { names, laurent }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(Self { names: Vec::new(), laurent: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Concatenation `self ++ other`; names must stay distinct.
    pub fn concat(&self, other: &VariableSet) -> Result<Arc<Self>> {
        Self::with_flags(
            self.names
                .iter()
                .cloned()
                .zip(self.laurent.iter().copied())
                .chain(other.names.iter().cloned().zip(other.laurent.iter().copied())),
        )
    }

    fn describe(&self) -> String {
        self.names.join(",")
    }
}

pub(crate) fn same_vars(a: &Arc<VariableSet>, b: &Arc<VariableSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_same(a: &Arc<VariableSet>, b: &Arc<VariableSet>) -> Result<()> {
    if same_vars(a, b) {
        Ok(())
    } else {
        Err(Error::VariableMismatch { left: a.describe(), right: b.describe() })
    }
}

/// Exponent vector. Ordered by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Exponent-wise difference, allowing negative entries.
    pub fn div_laurent(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// `true` when `self` divides `other` in the ordinary (non-Laurent) sense.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.div_laurent(other))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn split_at(&self, at: usize) -> (Monomial, Monomial) {
        (Monomial::from_exponents(&self.0[..at]), Monomial::from_exponents(&self.0[at..]))
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn render(&self, vars: &VariableSet) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // the smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; never stores a zero coefficient.
#[derive(Debug, Clone)]
pub struct Polynomial {
    vars: Arc<VariableSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: &Arc<VariableSet>) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VariableSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VariableSet>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &Arc<VariableSet>, name: &str) -> Result<Self> {
        let i = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: &Arc<VariableSet>, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), Rational::one())
    }

    /// Single term. Panics if a negative exponent sits on a non-Laurent variable;
    /// use [`Polynomial::try_monomial`] for unchecked input.
    pub fn monomial(vars: &Arc<VariableSet>, m: Monomial, c: Rational) -> Self {
        Self::try_monomial(vars, m, c).expect("negative exponent on non-Laurent variable")
    }

    pub fn try_monomial(vars: &Arc<VariableSet>, m: Monomial, c: Rational) -> Result<Self> {
        check_exponents(vars, &m)?;
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        Ok(p)
    }

    pub fn from_terms(vars: &Arc<VariableSet>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            check_exponents(vars, &m)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.vars, &other.vars)?;
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product keeping only terms accepted by `keep`.
    pub(crate) fn mul_filtered(&self, other: &Polynomial, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    /// `self += s * m * other`.
    pub(crate) fn add_assign_shifted(&mut self, other: &Polynomial, m: &Monomial, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.mul(m), c * s);
        }
    }

    /// Quotient by `d` when the division is exact, `None` otherwise.
    /// Both polynomials must be free of negative exponents.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(&self.vars);
        while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(&lm)?;
            let s = c / &lc;
            rest.add_assign_shifted(d, &t, &-s.clone());
            quotient.add_term(t, s);
        }
        Some(quotient)
    }

    pub fn add_assign_scaled(&mut self, other: &Polynomial, s: &Rational) {
        debug_assert!(same_vars(&self.vars, &other.vars));
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, deg: i64) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every term of total degree above `deg`.
    pub fn truncate_degree(&self, deg: i64) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `x_i * d/dx_i`, the logarithmic derivative in variable `i`.
    pub fn log_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                out.add_term(m.clone(), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Rewrites the polynomial over `target`, matching variables by name.
    /// Variables missing from `target` are allowed if they do not occur.
    pub fn embed(&self, target: &Arc<VariableSet>) -> Result<Polynomial> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e.0[j] += x,
                    None => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
                }
            }
            check_exponents(target, &e)?;
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Replaces every variable by the polynomial bound to its name. All bound
    /// polynomials must share one variable set, which becomes the result's.
    /// A negative exponent requires its image to be a Laurent monomial.
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let images: Vec<&Polynomial> = self
            .vars
            .names()
            .iter()
            .map(|n| bindings.get(n).ok_or_else(|| Error::UnboundVariable(n.clone())))
            .collect::<Result<_>>()?;
        let target = match bindings.values().next() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for p in bindings.values() {
            check_same(&target, &p.vars)?;
        }
        let mut inverses: Vec<Option<Polynomial>> = vec![None; images.len()];
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(&target), (*p).clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = if e > 0 {
                    power_cached(&mut powers[i], e as usize)
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(images[i].laurent_inverse()?);
                    }
                    inverses[i].as_ref().unwrap().pow((-e) as u32)
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Inverse of a single Laurent monomial term.
    pub fn laurent_inverse(&self) -> Result<Polynomial> {
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = m.inverse();
        for (i, &e) in inv.0.iter().enumerate() {
            if e < 0 && !self.vars.is_laurent(i) {
                return Err(Error::NotInvertible(self.to_string()));
            }
        }
        Ok(Polynomial::monomial(&self.vars, inv, c.recip()))
    }

    /// Multiplies by the smallest monomial that clears all negative exponents.
    /// Returns the cleared polynomial and the multiplier.
    pub fn clear_denominators(&self) -> (Polynomial, Monomial) {
        let n = self.vars.len();
        let mut shift = Monomial::one(n);
        for m in self.terms.keys() {
            for i in 0..n {
                shift.0[i] = shift.0[i].max(-m.0[i]);
            }
        }
        (self.mul_term(&shift, &Rational::one()), shift)
    }

    /// Terms in descending order, as used by the canonical rendering.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(m, c)| (m.render(&self.vars), c)))
    }
}

fn power_cached(cache: &mut Vec<Polynomial>, e: usize) -> Polynomial {
    while cache.len() <= e {
        let next = &cache[cache.len() - 1] * &cache[1];
        cache.push(next);
    }
    cache[e].clone()
}

fn check_exponents(vars: &VariableSet, m: &Monomial) -> Result<()> {
    for (i, &e) in m.0.iter().enumerate() {
        if e < 0 && !vars.is_laurent(i) {
            return Err(Error::NegativeExponent(vars.name(i).to_string()));
        }
    }
    Ok(())
}

/// Shared canonical term rendering: `c*m` joined with ` + ` / ` - `.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = render_abs(c);
        if mono.is_empty() {
            out.push_str(&abs);
        } else if abs == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&abs);
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// The operator impls panic on a variable-set mismatch; the `checked_*`
// methods report it instead.
impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition over different variable sets")
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction over different variable sets")
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial product over different variable sets")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl std::ops::Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl std::ops::Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn xy() -> Arc<VariableSet> {
        VariableSet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn binomial_square() {
        let v = VariableSet::new(["x"]).unwrap();
        let x = Polynomial::var(&v, "x").unwrap();
        let p = &Polynomial::one(&v) + &x;
        assert_eq!((&p * &p).render(), "x^2 + 2*x + 1");
    }

    #[test]
    fn laurent_inverse_monomial() {
        let v = VariableSet::laurent(["x"]).unwrap();
        let x = Polynomial::var(&v, "x").unwrap();
        let xinv = Polynomial::monomial(&v, Monomial::from_exponents(&[-1]), int(1));
        assert!((&x * &xinv).is_one());
        assert_eq!(xinv.render(), "x^-1");
    }

    #[test]
    fn one_minus_y_cubed() {
        let v = xy();
        let y = Polynomial::var(&v, "y").unwrap();
        let f1 = (&Polynomial::one(&v) - &y).pow(3);
        let f1_times_one = &f1 * &Polynomial::one(&v);
        assert_eq!(f1_times_one.render(), "-y^3 + 3*y^2 - 3*y + 1");
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Polynomial::one(&xy());
        let b = Polynomial::one(&VariableSet::new(["z"]).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn grevlex_order() {
        // degree first, then reverse lexicographic
        let m = |e: &[i32]| Monomial::from_exponents(e);
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]) > m(&[0, 2, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn substitute_examples() {
        let v = xy();
        let x = Polynomial::var(&v, "x").unwrap();
        let y = Polynomial::var(&v, "y").unwrap();
        let one = Polynomial::one(&v);
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), &one - &y);
        b.insert("y".to_string(), y.clone());
        assert_eq!((&x * &x).substitute(&b).unwrap().render(), "y^2 - 2*y + 1");

        let mut id = BTreeMap::new();
        id.insert("x".to_string(), x.clone());
        id.insert("y".to_string(), y.clone());
        assert_eq!(x.substitute(&id).unwrap(), x);

        let mut partial = BTreeMap::new();
        partial.insert("x".to_string(), x.clone());
        assert_eq!(x.substitute(&partial), Err(Error::UnboundVariable("y".into())));
    }

    #[test]
    fn log_derivative_and_clearing() {
        let v = VariableSet::laurent(["a", "b"]).unwrap();
        // a + b/a
        let p = Polynomial::from_terms(
            &v,
            [(Monomial::from_exponents(&[1, 0]), int(1)), (Monomial::from_exponents(&[-1, 1]), int(1))],
        )
        .unwrap();
        assert_eq!(p.log_derivative(0).render(), "a - a^-1*b");
        let (cleared, shift) = p.clear_denominators();
        assert_eq!(shift.exponents(), &[1, 0]);
        assert_eq!(cleared.render(), "a^2 + b");
    }

    #[test]
    fn negative_exponent_rejected_without_flag() {
        let v = xy();
        assert_eq!(
            Polynomial::try_monomial(&v, Monomial::from_exponents(&[-1, 0]), int(1)),
            Err(Error::NegativeExponent("x".into()))
        );
    }
}
