use std::collections::BTreeMap;

use kcone_core::charring::{
    decompose_into_irreducibles, graded_mul, irreducible_character, restrict_character, GradedCharacter,
    TorusCharacter,
};
use kcone_core::{IntMatrix, RootDatum, Weight};
use proptest::prelude::*;

fn rank2(which: usize) -> RootDatum {
    let c = match which {
        0 => vec![vec![2, -1], vec![-1, 2]],
        1 => vec![vec![2, -2], vec![-1, 2]],
        _ => vec![vec![2, -1], vec![-3, 2]],
    };
    RootDatum::from_cartan(&c).unwrap()
}

fn torus_char(rank: usize) -> impl Strategy<Value = TorusCharacter> {
    prop::collection::vec((prop::collection::vec(-3i64..4, rank), -3i64..4), 0..5).prop_map(move |terms| {
        let mut ch = TorusCharacter::zero(rank);
        for (w, m) in terms {
            ch.add_term(Weight::new(w), m);
        }
        ch
    })
}

fn graded(rank: usize, truncation: u32) -> impl Strategy<Value = GradedCharacter> {
    prop::collection::vec((0..=truncation, torus_char(rank)), 0..4).prop_map(move |layers| {
        let mut g = GradedCharacter::zero(rank, truncation);
        for (d, ch) in layers {
            g.add_to_layer(d, &ch);
        }
        g
    })
}

/// `Π_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩` with coroots obtained from the invariant
/// form, independent of the datum's own dimension routine.
fn dimension_by_inner_products(d: &RootDatum, lam: &Weight) -> i64 {
    let shifted = lam.scaled(2) + d.two_rho().clone();
    let mut num = num_rational::Rational64::from_integer(1);
    for a in d.positive_roots() {
        num *= d.inner_product(&shifted, a) / d.inner_product(d.two_rho(), a);
    }
    assert!(num.is_integer());
    num.to_integer()
}

proptest! {
    #[test]
    fn graded_mul_commutative_associative(a in graded(2, 4), b in graded(2, 4), c in graded(2, 4)) {
        let ab = graded_mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &graded_mul(&b, &a).unwrap());
        let left = graded_mul(&ab, &c).unwrap();
        let right = graded_mul(&a, &graded_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = GradedCharacter::trivial(2, 4);
        prop_assert_eq!(graded_mul(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(graded_mul(&a, &one).unwrap(), a);
    }

    #[test]
    fn restriction_is_multiplicative(
        a in torus_char(2),
        b in torus_char(2),
        entries in prop::collection::vec(-2i64..3, 2),
    ) {
        let r = IntMatrix::from_rows(&[entries], 2).unwrap();
        let res = |ch: &TorusCharacter| restrict_character(ch, &r).unwrap();
        let lhs = res(&a.mul(&b).unwrap());
        let rhs = res(&a).mul(&res(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let mut sum = a.clone();
        sum.add_scaled(&b, 1);
        let mut rsum = res(&a);
        rsum.add_scaled(&res(&b), 1);
        prop_assert_eq!(res(&sum), rsum);
    }

    #[test]
    fn irreducible_mass_is_weyl_dimension(which in 0usize..3, x in 0i64..4, y in 0i64..4) {
        let d = rank2(which);
        let lam = Weight::new(vec![x, y]);
        let ch = irreducible_character(&d, &lam).unwrap();
        prop_assert_eq!(ch.mass(), dimension_by_inner_products(&d, &lam));
        prop_assert_eq!(ch.mass(), d.weyl_dimension(&lam).unwrap());
        for (w, m) in ch.terms() {
            for i in 0..2 {
                prop_assert_eq!(ch.multiplicity(&d.simple_reflection(i, w)), m);
            }
        }
    }

    #[test]
    fn decomposition_round_trip(
        which in 0usize..3,
        combo in prop::collection::vec(((0i64..3, 0i64..3), -2i64..3), 1..4),
    ) {
        let d = rank2(which);
        let mut ch = TorusCharacter::zero(2);
        let mut expected: BTreeMap<Weight, i64> = BTreeMap::new();
        for ((x, y), m) in combo {
            let lam = Weight::new(vec![x, y]);
            ch.add_scaled(&irreducible_character(&d, &lam).unwrap(), m);
            *expected.entry(lam).or_insert(0) += m;
        }
        expected.retain(|_, m| *m != 0);
        let decomposed = decompose_into_irreducibles(&d, &ch).unwrap();
        prop_assert_eq!(&decomposed, &expected);
        let mut rebuilt = TorusCharacter::zero(2);
        for (lam, m) in &decomposed {
            rebuilt.add_scaled(&irreducible_character(&d, lam).unwrap(), *m);
        }
        prop_assert_eq!(rebuilt, ch);
    }
}

#[test]
fn non_invariant_characters_are_rejected() {
    let d = rank2(0);
    let ch = TorusCharacter::monomial(Weight::new(vec![1, 0]), 1);
    assert!(decompose_into_irreducibles(&d, &ch).is_err());
}
