use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use qchar_core::catalog::{make_ring, Family, RingId};
use qchar_core::jfun::{Atom, AtomKind, HbarFraction, HbarPoly, KAlgebra, KElem};
use qchar_core::parse::parse_polynomial;
use qchar_core::rational::rat;
use qchar_core::{Monomial, Polynomial, PresentedAlgebra, VariableSet};

/// Sparse random polynomial: `(coefficient numerator, exponents)` pairs.
fn poly_strategy(nvars: usize, max_exp: i32) -> impl Strategy<Value = Vec<(i64, Vec<i32>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_exp, nvars)), 0..6)
}

fn build(vars: &Arc<VariableSet>, terms: &[(i64, Vec<i32>)], den: i64) -> Polynomial {
    terms.iter().fold(Polynomial::zero(vars), |acc, (c, e)| {
        &acc + &Polynomial::monomial(vars, Monomial::from_exponents(e), rat(*c, den))
    })
}

fn fl3() -> Arc<PresentedAlgebra> {
    make_ring(&RingId::new(Family::QhFl, 3, 3, 2)).unwrap()
}

fn qk_milnor() -> Arc<PresentedAlgebra> {
    make_ring(&RingId::new(Family::QkMilnor, 3, 3, 2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly_strategy(4, 3), b in poly_strategy(4, 3), c in poly_strategy(4, 3)) {
        let r = fl3();
        let v = r.all_vars().clone();
        let (a, b, c) = (r.element(&build(&v, &a, 1)).unwrap(), r.element(&build(&v, &b, 2)).unwrap(), r.element(&build(&v, &c, 3)).unwrap());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &r.one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_multiplicative(a in poly_strategy(4, 4), b in poly_strategy(4, 4)) {
        let r = qk_milnor();
        let v = r.all_vars().clone();
        let (pa, pb) = (build(&v, &a, 1), build(&v, &b, 1));
        let ra = r.element(&pa).unwrap();
        prop_assert_eq!(r.element(&ra.to_polynomial()).unwrap(), ra.clone());
        let rb = r.element(&pb).unwrap();
        prop_assert_eq!(r.element(&(&pa * &pb)).unwrap(), &ra * &rb);
    }

    #[test]
    fn render_parse_round_trip(a in poly_strategy(4, 5), den in 1i64..7) {
        let v = VariableSet::new(["x", "y", "Q1", "Q2"]).unwrap();
        let p = build(&v, &a, den);
        prop_assert_eq!(parse_polynomial(&p.render(), &v).unwrap(), p);
    }

    #[test]
    fn element_render_parses_back(a in poly_strategy(4, 3)) {
        let r = fl3();
        let e = r.element(&build(r.all_vars(), &a, 1)).unwrap();
        prop_assert_eq!(r.parse(&e.render()).unwrap(), e);
    }
}

fn k33() -> Arc<KAlgebra> {
    KAlgebra::new(&RingId::new(Family::KMilnor, 3, 3, 0)).unwrap()
}

fn kelem(alg: &KAlgebra, coords: &[i64]) -> KElem {
    (0..alg.dim()).map(|i| rat(coords.get(i).copied().unwrap_or(0), 1)).collect()
}

fn hbar_poly(alg: &Arc<KAlgebra>, coeffs: &[Vec<i64>]) -> HbarPoly {
    HbarPoly::from_coeffs(alg, coeffs.iter().map(|c| kelem(alg, c)).collect())
}

fn atom_strategy() -> impl Strategy<Value = (Atom, u32)> {
    (prop_oneof![Just(AtomKind::L1), Just(AtomKind::L2), Just(AtomKind::L1L2)], 1u32..4, 1u32..3)
        .prop_map(|(kind, level, mult)| (Atom { kind, level }, mult))
}

fn fraction_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<(Atom, u32)>)> {
    (prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..4), prop::collection::vec(atom_strategy(), 0..3))
}

fn fraction(alg: &Arc<KAlgebra>, (num, den): &(Vec<Vec<i64>>, Vec<(Atom, u32)>)) -> HbarFraction {
    let mut d = BTreeMap::new();
    for (a, m) in den {
        *d.entry(*a).or_insert(0) += m;
    }
    HbarFraction { num: hbar_poly(alg, num), den: d }
}

const ORDER: usize = 20;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Cross-multiplication equality agrees with comparing ħ-expansions.
    #[test]
    fn fraction_zero_test_matches_expansion(a in fraction_strategy(), b in fraction_strategy()) {
        let alg = k33();
        let (fa, fb) = (fraction(&alg, &a), fraction(&alg, &b));
        let diff = fa.sub(&fb);
        let expanded_equal = fa.expand(ORDER) == fb.expand(ORDER);
        prop_assert_eq!(diff.is_zero(), expanded_equal);
        prop_assert!(fa.equals(&fa));
    }

    /// `(p * atom) / (den * atom)` is the same fraction written differently.
    #[test]
    fn equal_fractions_with_different_denominators(a in fraction_strategy(), (atom, mult) in atom_strategy()) {
        let alg = k33();
        let fa = fraction(&alg, &a);
        let mut den = fa.den.clone();
        *den.entry(atom).or_insert(0) += mult;
        let widened = HbarFraction { num: fa.num.mul(&atom.poly(&alg).pow(mult)), den };
        prop_assert!(widened.equals(&fa));
        prop_assert_eq!(widened.expand(ORDER), fa.expand(ORDER));
    }

    #[test]
    fn fraction_arithmetic(a in fraction_strategy(), b in fraction_strategy()) {
        let alg = k33();
        let (fa, fb) = (fraction(&alg, &a), fraction(&alg, &b));
        prop_assert!(fa.add(&fb).sub(&fb).equals(&fa));
        prop_assert!(fa.add(&fb).equals(&fb.add(&fa)));
        prop_assert!(fa.mul(&fb).equals(&fb.mul(&fa)));
        prop_assert_eq!(fa.add(&fb).expand(ORDER), {
            let (x, y) = (fa.expand(ORDER), fb.expand(ORDER));
            x.iter().zip(&y).map(|(p, q)| KAlgebra::add(p, q)).collect::<Vec<_>>()
        });
    }

    /// Multiplying by an atom never kills a nonzero polynomial.
    #[test]
    fn atoms_are_not_zero_divisors(num in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..4), (atom, _) in atom_strategy()) {
        let alg = k33();
        let p = hbar_poly(&alg, &num);
        prop_assume!(!p.is_zero());
        prop_assert!(!p.mul(&atom.poly(&alg)).is_zero());
    }
}
