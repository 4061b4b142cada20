//! Power series in one variable evaluated at degree-two classes of a quantum
//! cohomology ring, with every power taken as a quantum product.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quotient::{AlgebraElement, PresentedAlgebra};
use crate::rational::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnivariateSeries {
    /// `e^{-x}`
    ExpNeg,
    /// `1 - e^{-x}`
    OneMinusExp,
    /// `(1 - e^{-x}) / x`
    OneMinusExpOverX,
    /// `x / (1 - e^{-x})`
    XOverOneMinusExp,
    /// Explicit Taylor coefficients; zero beyond the list.
    Custom(Vec<Rational>),
}

impl UnivariateSeries {
    pub fn name(&self) -> &'static str {
        match self {
            UnivariateSeries::ExpNeg => "exp_neg",
            UnivariateSeries::OneMinusExp => "one_minus_exp",
            UnivariateSeries::OneMinusExpOverX => "one_minus_exp_over_x",
            UnivariateSeries::XOverOneMinusExp => "x_over_one_minus_exp",
            UnivariateSeries::Custom(_) => "custom",
        }
    }

    /// Taylor coefficients of orders `0..=n`.
    pub fn coeffs(&self, n: usize) -> Vec<Rational> {
        let exp_neg = |k: usize| {
            let c = Rational::new(1.into(), factorial(k as u32));
            if k.is_multiple_of(2) {
                c
            } else {
                -c
            }
        };
        match self {
            UnivariateSeries::ExpNeg => (0..=n).map(exp_neg).collect(),
            UnivariateSeries::OneMinusExp => {
                (0..=n).map(|k| if k == 0 { Rational::zero() } else { -exp_neg(k) }).collect()
            }
            UnivariateSeries::OneMinusExpOverX => (0..=n).map(|k| -exp_neg(k + 1)).collect(),
            UnivariateSeries::XOverOneMinusExp => {
                let a = UnivariateSeries::OneMinusExpOverX.coeffs(n);
                let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
                b.push(Rational::one());
                for k in 1..=n {
                    let mut s = Rational::zero();
                    for j in 1..=k {
                        s += &a[j] * &b[k - j];
                    }
                    b.push(-s);
                }
                b
            }
            UnivariateSeries::Custom(c) => (0..=n).map(|k| c.get(k).cloned().unwrap_or_else(Rational::zero)).collect(),
        }
    }
}

/// Safety cap on the number of powers formed by [`eval_deg2`].
pub const EVAL_CAP: usize = 4096;

/// Checks that `alpha` is a rational combination of the generators with no
/// constant and no Novikov terms.
fn check_degree_two(alpha: &AlgebraElement) -> Result<()> {
    let ring = alpha.ring();
    let k = ring.gens().len();
    for (m, _) in alpha.to_polynomial().terms() {
        let (g, q) = m.split_at(k);
        if g.degree() != 1 || !q.is_one() {
            return Err(Error::NotDegreeTwo(alpha.render()));
        }
    }
    Ok(())
}

/// `Σ_k c_k α^{⋆k}`. Summation stops once `dim` consecutive powers vanish at
/// the ring's truncation (`α` is nilpotent modulo the truncated Novikov ideal).
pub fn eval_deg2(f: &UnivariateSeries, alpha: &AlgebraElement) -> Result<AlgebraElement> {
    check_degree_two(alpha)?;
    let ring = alpha.ring();
    let needed_zeros = ring.dim();
    let mut coeffs = f.coeffs(16);
    let mut acc = ring.constant(coeffs[0].clone());
    let mut power = ring.one();
    let mut zeros = 0;
    for k in 1..=EVAL_CAP {
        power = &power * alpha;
        if power.is_zero() {
            zeros += 1;
            if zeros >= needed_zeros {
                return Ok(acc);
            }
            continue;
        }
        zeros = 0;
        if k >= coeffs.len() {
            coeffs = f.coeffs(2 * k);
        }
        if !coeffs[k].is_zero() {
            acc = &acc + &power.scale(&coeffs[k]);
        }
    }
    Err(Error::NoConvergence(EVAL_CAP))
}

/// `Σ_{k ≤ kmax} c_k α^{⋆k}` with no stopping rule.
pub fn eval_with_bound(f: &UnivariateSeries, alpha: &AlgebraElement, kmax: usize) -> Result<AlgebraElement> {
    check_degree_two(alpha)?;
    let ring = alpha.ring();
    let coeffs = f.coeffs(kmax);
    let mut acc = ring.constant(coeffs[0].clone());
    let mut power = ring.one();
    for c in coeffs.iter().skip(1) {
        power = &power * alpha;
        acc = &acc + &power.scale(c);
    }
    Ok(acc)
}

/// Evaluates `f` at the class written in `alpha_src` (e.g. `"h1 + h2"`).
pub fn eval_at(ring: &Arc<PresentedAlgebra>, f: &UnivariateSeries, alpha_src: &str) -> Result<AlgebraElement> {
    eval_deg2(f, &ring.parse(alpha_src)?)
}

/// Quantum Todd class `(h / (1 - e^{-h}))^{⋆(n+1)}` of projective space.
pub fn quantum_todd_pn(ring: &Arc<PresentedAlgebra>, n: u32) -> Result<AlgebraElement> {
    Ok(eval_at(ring, &UnivariateSeries::XOverOneMinusExp, "h")?.pow(n + 1))
}

/// `((1 - e^{-h_a}) / h_a)^{⋆e} ⋆ (h1 + h2) / (1 - e^{-(h1+h2)})`.
pub fn quantum_todd_factor(ring: &Arc<PresentedAlgebra>, a: u32, e: u32) -> Result<AlgebraElement> {
    if !(a == 1 || a == 2) {
        return Err(Error::Parameter(format!("a must be 1 or 2, got {a}")));
    }
    let inv = eval_at(ring, &UnivariateSeries::OneMinusExpOverX, &format!("h{a}"))?.pow(e);
    let todd = eval_at(ring, &UnivariateSeries::XOverOneMinusExp, "h1 + h2")?;
    Ok(&inv * &todd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_classical_ring, make_ring, Family, RingId};
    use crate::rational::{int, rat};

    #[test]
    fn series_coefficients() {
        assert_eq!(UnivariateSeries::OneMinusExpOverX.coeffs(3), vec![int(1), rat(-1, 2), rat(1, 6), rat(-1, 24)]);
        assert_eq!(UnivariateSeries::ExpNeg.coeffs(2), vec![int(1), int(-1), rat(1, 2)]);
        assert_eq!(
            UnivariateSeries::XOverOneMinusExp.coeffs(4),
            vec![int(1), rat(1, 2), rat(1, 12), int(0), rat(-1, 720)]
        );
    }

    #[test]
    fn inverse_series_product_is_one() {
        let n = 12;
        let a = UnivariateSeries::OneMinusExpOverX.coeffs(n);
        let b = UnivariateSeries::XOverOneMinusExp.coeffs(n);
        for k in 0..=n {
            let s: Rational = (0..=k).map(|j| &a[j] * &b[k - j]).sum();
            assert_eq!(s, if k == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn exp_at_h_on_projective_line() {
        let r = make_ring(&RingId::new(Family::QhPn, 1, 0, 1)).unwrap();
        let e = eval_at(&r, &UnivariateSeries::ExpNeg, "h").unwrap();
        assert_eq!(e.render(), "-h - 1/6*h*q + 1 + 1/2*q");
    }

    #[test]
    fn constant_series() {
        let r = make_ring(&RingId::new(Family::QhFl, 3, 3, 2)).unwrap();
        let one = eval_at(&r, &UnivariateSeries::Custom(vec![int(1)]), "h1 + 2*h2").unwrap();
        assert_eq!(one, r.one());
    }

    #[test]
    fn classical_exponential() {
        let r = make_classical_ring(&RingId::new(Family::QhPn, 2, 0, 0)).unwrap();
        let e = eval_at(&r, &UnivariateSeries::ExpNeg, "h").unwrap();
        assert_eq!(e.render(), "1/2*h^2 - h + 1");
    }

    #[test]
    fn rejects_non_linear_argument() {
        let r = make_ring(&RingId::new(Family::QhPn, 2, 0, 1)).unwrap();
        assert!(matches!(eval_at(&r, &UnivariateSeries::ExpNeg, "h^2"), Err(Error::NotDegreeTwo(_))));
        assert!(matches!(eval_at(&r, &UnivariateSeries::ExpNeg, "h + 1"), Err(Error::NotDegreeTwo(_))));
        assert!(matches!(eval_at(&r, &UnivariateSeries::ExpNeg, "q*h"), Err(Error::NotDegreeTwo(_))));
    }

    #[test]
    fn todd_of_projective_line() {
        let classical = make_classical_ring(&RingId::new(Family::QhPn, 1, 0, 0)).unwrap();
        assert_eq!(quantum_todd_pn(&classical, 1).unwrap().render(), "h + 1");
        let r = make_ring(&RingId::new(Family::QhPn, 1, 0, 2)).unwrap();
        let td = quantum_todd_pn(&r, 1).unwrap();
        let inv = eval_at(&r, &UnivariateSeries::OneMinusExpOverX, "h").unwrap().pow(2);
        assert_eq!(&td * &inv, r.one());
        assert_eq!(td.classical_limit().render(), "h + 1");
    }

    #[test]
    fn dynamic_stop_matches_static_bound() {
        for n in 1..=4u32 {
            for d in 0..=3u32 {
                let r = make_ring(&RingId::new(Family::QhPn, n, 0, d)).unwrap();
                let h = r.var("h").unwrap();
                let bound = ((d + 1) * (n + 1)) as usize;
                for f in [UnivariateSeries::ExpNeg, UnivariateSeries::XOverOneMinusExp] {
                    assert_eq!(eval_deg2(&f, &h).unwrap(), eval_with_bound(&f, &h, bound).unwrap());
                }
            }
        }
    }
}
