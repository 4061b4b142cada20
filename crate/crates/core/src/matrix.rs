//! Determinants of polynomial matrices and exact rational linear solving.

use std::sync::Arc;

use num_traits::Zero;

use crate::poly::{Polynomial, VariableSet};
use crate::rational::Rational;
use crate::series::truncate_q;

pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// Bareiss fraction-free elimination over the polynomial ring. Every division
/// is exact; a failure to divide exactly would indicate a bug and panics.
pub fn det_bareiss(m: &PolyMatrix, vars: &Arc<VariableSet>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(vars);
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Polynomial::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Laplace expansion along rows, memoised over column subsets, with every
/// product truncated at total degree `trunc`. `O(2^n n)` ring operations.
pub fn det_subset_expansion(m: &PolyMatrix, vars: &Arc<VariableSet>, trunc: u32) -> Polynomial {
    let n = m.len();
    assert!(n < usize::BITS as usize);
    let mut f: Vec<Polynomial> = vec![Polynomial::zero(vars); 1 << n];
    f[0] = Polynomial::one(vars);
    for s in 1usize..(1 << n) {
        let row = s.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(vars);
        for j in 0..n {
            if s & (1 << j) == 0 || m[row][j].is_zero() {
                continue;
            }
            let rest = s & !(1 << j);
            if f[rest].is_zero() {
                continue;
            }
            // sign of placing column j after the columns of `rest` above it
            let above = (rest >> j).count_ones();
            let term = truncate_q(&(&m[row][j] * &f[rest]), 0, trunc);
            acc = if above % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        f[s] = acc;
    }
    f[(1 << n) - 1].clone()
}

/// Outcome of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// One particular solution (free variables set to zero).
    pub solution: Vec<Rational>,
    pub rank: usize,
    pub unknowns: usize,
}

impl LinearSolution {
    pub fn is_unique(&self) -> bool {
        self.rank == self.unknowns
    }
}

/// Solves `a x = b` over ℚ by Gauss–Jordan elimination; `None` when
/// inconsistent.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational], unknowns: usize) -> Option<LinearSolution> {
    let rows = a.len();
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(r, c)| r.iter().cloned().chain([c.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=unknowns {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut solution = vec![Rational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        solution[c] = m[i][unknowns].clone();
    }
    Some(LinearSolution { solution, rank: pivots.len(), unknowns })
}

/// Determinant of a rational matrix; zero test for invertibility.
pub fn det_rational(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &m[c][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::rational::int;

    fn mat(vars: &Arc<VariableSet>, rows: &[&[&str]]) -> PolyMatrix {
        rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()).collect()
    }

    #[test]
    fn two_by_two() {
        let v = VariableSet::new(["q"]).unwrap();
        let m = mat(&v, &[&["0", "q"], &["1", "0"]]);
        assert_eq!(det_bareiss(&m, &v).render(), "-q");
        assert_eq!(det_subset_expansion(&m, &v, 5).render(), "-q");
    }

    #[test]
    fn identity_and_zero() {
        let v = VariableSet::new(["q"]).unwrap();
        let id = mat(&v, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert!(det_bareiss(&id, &v).is_one());
        let z = mat(&v, &[&["0", "0"], &["0", "0"]]);
        assert!(det_bareiss(&z, &v).is_zero());
        assert!(det_subset_expansion(&z, &v, 3).is_zero());
    }

    #[test]
    fn algorithms_agree_with_pivoting() {
        let v = VariableSet::new(["a", "b"]).unwrap();
        let m = mat(&v, &[&["0", "a", "1"], &["b", "0", "a + b"], &["1", "a*b", "0"]]);
        let d = det_bareiss(&m, &v);
        assert_eq!(d, det_subset_expansion(&m, &v, 10));
        assert_eq!(d.render(), "a*b^2 + a^2 + a*b");
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let s = solve_linear(&a, &[int(3), int(1)], 2).unwrap();
        assert!(s.is_unique());
        assert_eq!(s.solution, vec![int(2), int(1)]);
        let singular = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_linear(&singular, &[int(1), int(3)], 2).is_none());
        assert_eq!(solve_linear(&singular, &[int(1), int(2)], 2).unwrap().rank, 1);
        assert_eq!(det_rational(&a), int(-2));
    }
}
