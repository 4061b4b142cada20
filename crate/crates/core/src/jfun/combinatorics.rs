//! Binomial identities used to reduce the classical K-theory relations of the
//! Milnor hypersurface to the projective-bundle relation.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::catalog::milnor_f2;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VariableSet};
use crate::rational::{binomial, binomial_int, int, sign_pow};

/// Outcome of sweeping `Σ_{c=0}^{b} C(n, n-b+c) C(t+c, c) (-1)^c = C(n-t-1, b)`.
#[derive(Debug, Clone, Default)]
pub struct BinomialSweep {
    pub checked: usize,
    /// `(n, t, b, lhs, rhs)` for every failing triple.
    pub failures: Vec<(i64, i64, i64, BigInt, BigInt)>,
}

impl BinomialSweep {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn binomial_lhs(n: i64, t: i64, b: i64) -> BigInt {
    (0..=b).fold(BigInt::zero(), |acc, c| {
        acc + binomial_int(n, n - b + c) * binomial_int(t + c, c) * BigInt::from(sign_pow(c))
    })
}

/// Checks the identity for all `n <= n_max`, `t >= 0`, `0 <= b <= n - t - 1`.
pub fn binomial_identity_check(n_max: i64) -> BinomialSweep {
    let mut sweep = BinomialSweep::default();
    for n in 0..=n_max {
        for t in 0..n {
            for b in 0..=(n - t - 1) {
                let lhs = binomial_lhs(n, t, b);
                let rhs = binomial_int(n - t - 1, b);
                sweep.checked += 1;
                if lhs != rhs {
                    sweep.failures.push((n, t, b, lhs, rhs));
                }
            }
        }
    }
    sweep
}

/// Reduction of `F2` modulo `F1 = (1-y)^m` to a polynomial of `y`-degree at
/// most `n`.
///
/// The constructed polynomial `a` satisfies `F2 + a F1 = closed form`, so the
/// multiplier in `F2 - a' F1 = closed form` is `a' = -a`.
#[derive(Debug, Clone)]
pub struct F2Reduction {
    pub a: Polynomial,
    /// `-a`.
    pub multiplier: Polynomial,
    /// `F2 - multiplier * F1`.
    pub difference: Polynomial,
    /// `(-1)^n Σ_{l<n} (-x)^l Σ_{s=1}^{l+1} C(n, n-1-l+s) (-y)^s`.
    pub closed_form: Polynomial,
    /// `Σ_{l<n} (-1)^{n-1-l} x^l Σ_{s=1}^{l+1} (-1)^{s-1} C(n, n-1-l+s) y^s`.
    pub bundle_form: Polynomial,
    pub y_degree: i32,
}

impl F2Reduction {
    pub fn identity_holds(&self) -> bool {
        self.difference == self.closed_form
    }

    pub fn forms_agree(&self) -> bool {
        self.closed_form == self.bundle_form
    }

    pub fn degree_bound_holds(&self, n: u32) -> bool {
        self.y_degree <= n as i32
    }
}

/// Builds `a = -x^{n-1}(1-y)^{n-m} + Σ_{t=m}^{n-1} (-1)^{n-1-t} x^{t-1}(1-x)^{n-t-1}(1-y)^{t-m}`
/// and checks `F2 + a (1-y)^m` exactly against both closed forms.
pub fn f2_reduction(n: u32, m: u32) -> Result<F2Reduction> {
    if !(n >= m && m >= 3) {
        return Err(Error::Parameter(format!("requires n >= m >= 3 (got n={n}, m={m})")));
    }
    let v = VariableSet::new(["x", "y"])?;
    let one = Polynomial::one(&v);
    let x = Polynomial::var(&v, "x")?;
    let y = Polynomial::var(&v, "y")?;
    let omx = &one - &x;
    let omy = &one - &y;
    let ni = n as i64;

    let mut a = -(&x.pow(n - 1) * &omy.pow(n - m));
    for t in m..n {
        let g = &x.pow(t - 1) * &omx.pow(n - t - 1);
        a = &a + &(&g * &omy.pow(t - m)).scale(&int(sign_pow(ni - 1 - t as i64)));
    }
    let multiplier = -&a;
    let difference = &milnor_f2(&v, n, m) - &(&multiplier * &omy.pow(m));

    let mut closed_form = Polynomial::zero(&v);
    let mut bundle_form = Polynomial::zero(&v);
    let neg_x = -&x;
    let neg_y = -&y;
    for l in 0..ni {
        let mut inner_closed = Polynomial::zero(&v);
        let mut inner_bundle = Polynomial::zero(&v);
        for s in 1..=l + 1 {
            let c = binomial(ni, ni - 1 - l + s);
            inner_closed = &inner_closed + &neg_y.pow(s as u32).scale(&c);
            inner_bundle = &inner_bundle + &y.pow(s as u32).scale(&(c * int(sign_pow(s - 1))));
        }
        closed_form = &closed_form + &(&neg_x.pow(l as u32) * &inner_closed);
        bundle_form = &bundle_form + &(&x.pow(l as u32) * &inner_bundle).scale(&int(sign_pow(ni - 1 - l)));
    }
    let closed_form = closed_form.scale(&int(sign_pow(ni)));
    let y_degree = difference.degree_in(1).unwrap_or(0);
    Ok(F2Reduction { a, multiplier, difference, closed_form, bundle_form, y_degree })
}
