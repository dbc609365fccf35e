mod common;

use frobcx::complexes::{euler_characteristic, reduced_betti, Field};
use frobcx::extension::{ExtElement, ExtMonoid};
use frobcx::frobenius::{frobenius_betti, frobenius_complex, predicted_ext_betti};
use frobcx::monoid::{AffineMonoid, Element};
use frobcx::series::GradedSeries;
use proptest::prelude::*;

fn e(x: u64) -> Element {
    Element::scalar(x)
}

fn gens() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=11, 1..=4)
}

/// Members of `⟨gens⟩` up to `bound`, from the enumeration oracle.
fn members(gens: &[u64], bound: u64) -> Vec<u64> {
    common::numerical_elements(gens, bound)
        .into_iter()
        .collect()
}

fn series() -> impl Strategy<Value = GradedSeries<Element>> {
    (
        prop::collection::vec((0u64..=20, 0u32..=4, 1u64..=3), 0..8),
        5u64..=20,
    )
        .prop_map(|(terms, cap)| {
            let mut s = GradedSeries::new(e(cap));
            for (g, i, c) in terms {
                s.add_term(e(g), i, c);
            }
            s
        })
}

/// A numerical extension `⟨gens⟩[ρ/r]` with `ρ` a sum of two generators.
fn extension() -> impl Strategy<Value = (Vec<u64>, u64, u32)> {
    (
        prop::collection::vec(2u64..=7, 1..=3),
        0usize..3,
        0usize..3,
        2u32..=4,
    )
        .prop_map(|(g, i, j, r)| {
            let rho = g[i % g.len()] + g[j % g.len()];
            (g, rho, r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_subtraction_membership(gens in gens(), a in 0u64..=40, b in 0u64..=40) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        let set = common::numerical_elements(&gens, 40);
        prop_assume!(set.contains(&a) && set.contains(&b));
        let expected = b >= a && set.contains(&(b - a));
        prop_assert_eq!(m.leq(&e(a), &e(b)).unwrap(), expected);
    }

    #[test]
    fn order_is_a_partial_order(gens in gens(), bound in 10u64..=30) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        let xs = members(&gens, bound);
        for &a in &xs {
            prop_assert!(m.leq(&e(a), &e(a)).unwrap());
            for &b in &xs {
                if a != b && m.leq(&e(a), &e(b)).unwrap() {
                    prop_assert!(!m.leq(&e(b), &e(a)).unwrap());
                    for &c in &xs {
                        if m.leq(&e(b), &e(c)).unwrap() {
                            prop_assert!(m.leq(&e(a), &e(c)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_is_translation_invariant(gens in gens(), a in 0u64..=30, b in 0u64..=30, c in 0u64..=30) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        let set = common::numerical_elements(&gens, 30);
        prop_assume!(set.contains(&a) && set.contains(&b) && set.contains(&c));
        prop_assert_eq!(m.leq(&e(a), &e(b)).unwrap(), m.leq(&e(a + c), &e(b + c)).unwrap());
    }

    #[test]
    fn intervals_are_translation_invariant(gens in gens(), a in 1u64..=18, c in 0u64..=12) {
        // [c, c + a] ≅ [0, a], so F(a) only sees differences.
        let m = AffineMonoid::numerical(&gens).unwrap();
        let set = common::numerical_elements(&gens, 30);
        prop_assume!(set.contains(&a) && set.contains(&c));
        let shifted: Vec<u64> = set
            .iter()
            .copied()
            .filter(|&y| y > c && y < a + c && m.leq(&e(c), &e(y)).unwrap() && m.leq(&e(y), &e(a + c)).unwrap())
            .map(|y| y - c)
            .collect();
        let direct: Vec<u64> = m.open_interval(&e(a)).unwrap().elements().iter().map(|x| x.coords()[0]).collect();
        prop_assert_eq!(shifted, direct);
    }

    #[test]
    fn ell_rho_recurrence(gens in gens(), i in 0usize..4, j in 0usize..4, lambda in 0u64..=40) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        let rho = gens[i % gens.len()] + gens[j % gens.len()];
        prop_assume!(m.contains(&e(lambda)).unwrap());
        let ell = m.ell_rho(&e(rho), &e(lambda)).unwrap();
        prop_assert_eq!(m.ell_rho(&e(rho), &e(lambda + rho)).unwrap(), ell + 1);
        // Brute force: largest ℓ with λ - ℓρ in the monoid.
        let set = common::numerical_elements(&gens, lambda);
        let brute = (0..=lambda / rho).filter(|l| set.contains(&(lambda - l * rho))).max().unwrap();
        prop_assert_eq!(ell, brute);
    }

    #[test]
    fn euler_characteristic_matches_betti(gens in gens(), x in 1u64..=22) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        prop_assume!(m.contains(&e(x)).unwrap());
        let complex = frobenius_complex(&m, &e(x)).unwrap().unwrap();
        prop_assert_eq!(euler_characteristic(&complex), reduced_betti(&complex, Field::Gf2).alternating_sum());
    }

    #[test]
    fn betti_is_field_independent(gens in gens(), x in 1u64..=20) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        prop_assume!(m.contains(&e(x)).unwrap());
        let base = frobenius_betti(&m, &e(x), Field::Gf2).unwrap();
        for field in [Field::Prime(3), Field::Prime(7), Field::Rational] {
            prop_assert_eq!(&frobenius_betti(&m, &e(x), field).unwrap(), &base);
        }
    }

    #[test]
    fn scaling_preserves_betti(gens in gens(), x in 0u64..=20, p in 2u64..=4) {
        let m = AffineMonoid::numerical(&gens).unwrap();
        prop_assume!(m.contains(&e(x)).unwrap());
        let scaled = m.scale(p).unwrap();
        prop_assert_eq!(
            frobenius_betti(&scaled, &e(p * x), Field::Gf2).unwrap(),
            frobenius_betti(&m, &e(x), Field::Gf2).unwrap()
        );
    }

    #[test]
    fn wedge_prediction_holds((gens, rho, r) in extension(), lambda in 0u64..=16, k in 0u32..4) {
        let base = AffineMonoid::numerical(&gens).unwrap();
        prop_assume!(base.contains(&e(lambda)).unwrap() && k < r);
        let ext = ExtMonoid::adjoin(base, e(rho), r).unwrap();
        let x = ExtElement::new(lambda, k);
        prop_assert_eq!(
            frobenius_betti(&ext, &x, Field::Gf2).unwrap(),
            predicted_ext_betti(&ext, &x, Field::Gf2).unwrap()
        );
    }

    #[test]
    fn extension_order_matches_addition((gens, rho, r) in extension(), a in 0u64..=14, b in 0u64..=14, ka in 0u32..4, kb in 0u32..4) {
        let base = AffineMonoid::numerical(&gens).unwrap();
        prop_assume!(ka < r && kb < r);
        prop_assume!(base.contains(&e(a)).unwrap() && base.contains(&e(b)).unwrap());
        let ext = ExtMonoid::adjoin(base, e(rho), r).unwrap();
        let (x, y) = (ExtElement::new(a, ka), ExtElement::new(b, kb));
        let via_sum = ext
            .elements_up_to(&e(b))
            .unwrap()
            .iter()
            .any(|m| ext.add(&x, m) == y);
        prop_assert_eq!(ext.leq(&x, &y), via_sum);
    }

    #[test]
    fn realization_is_an_order_isomorphism(gens in prop::collection::vec(1u64..=5, 1..=3), b in 1u64..=9, r in 2u32..=3, cap in 10u64..=30) {
        let r64 = r as u64;
        prop_assume!(b % r64 != 0);
        let gens: Vec<u64> = gens.iter().map(|g| g * r64).collect();
        let base = AffineMonoid::numerical(&gens).unwrap();
        let rho = e(r64 * b);
        prop_assume!(base.contains(&rho).unwrap() && base.is_reducible(&rho).unwrap());
        let ext = ExtMonoid::adjoin(base, rho, r).unwrap();
        let real = ext.numerical_realization().expect("hypotheses hold");
        let xs = ext.elements_up_to(&e(cap)).unwrap();
        for x in &xs {
            prop_assert_eq!(real.preimage(&real.map(x)), Some(x.clone()));
            for y in &xs {
                prop_assert_eq!(ext.leq(x, y), real.monoid().leq(&real.map(x), &real.map(y)).unwrap());
            }
        }
    }

    #[test]
    fn truncation_commutes_with_multiplication(a in series(), b in series(), cap in 0u64..=20) {
        let c = e(cap);
        let left = a.mul(&b).unwrap().truncate(&c).unwrap();
        let right = a.truncate(&c).unwrap().mul(&b.truncate(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}
