//! Property tests for the word algebra, the normal form machinery and the
//! abelian tensor product.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tensq::abelian::{smith_normal_form, FiniteAbelianGroup, IntegerMatrix};
use tensq::presentation::{parse_presentation, Word};

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, -4i64..=4), 0..8)
        .prop_map(|pairs| Word::from_syllables(pairs.into_iter().filter(|&(_, e)| e != 0)))
}

proptest! {
    #[test]
    fn word_print_parse_round_trip(w in arb_word()) {
        prop_assume!(!w.is_identity());
        let p = tensq::Presentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![w.clone()],
        );
        let text = p.to_string();
        let reparsed = parse_presentation(&text).unwrap();
        prop_assert_eq!(&reparsed.relators()[0], &w, "{}", text);
    }

    #[test]
    fn word_group_laws(u in arb_word(), v in arb_word(), w in arb_word()) {
        // Associativity of free multiplication.
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        // (uv)^-1 = v^-1 u^-1, and double inverse.
        prop_assert_eq!(u.multiply(&v).inverse(), v.inverse().multiply(&u.inverse()));
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        // u u^-1 reduces to the identity.
        prop_assert!(u.multiply(&u.inverse()).is_identity());
        // The commutator of a word with itself vanishes.
        prop_assert!(Word::commutator(&u, &u).is_identity());
    }

    #[test]
    fn snf_diagonalizes_with_unimodular_transforms(
        rows in 1usize..4,
        cols in 1usize..4,
        entries in prop::collection::vec(-20i64..=20, 9),
    ) {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| entries[i * 3 + j]).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&data);
        let snf = smith_normal_form(&m);
        // Divisibility chain.
        for w in snf.diagonal.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        // L M R equals the diagonal exactly.
        let prod = snf.left.mul(&m).mul(&snf.right);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expect = if i == j && i < snf.diagonal.len() {
                    snf.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(prod.get(i, j), &expect);
            }
        }
        prop_assert_eq!(snf.left.determinant().abs(), BigInt::one());
        prop_assert_eq!(snf.right.determinant().abs(), BigInt::one());
    }

    #[test]
    fn abelian_tensor_is_symmetric_and_distributive(
        a in prop::collection::vec(2u64..16, 0..3),
        b in prop::collection::vec(2u64..16, 0..3),
        c in prop::collection::vec(2u64..16, 0..2),
    ) {
        let a = FiniteAbelianGroup::from_moduli(&a);
        let b = FiniteAbelianGroup::from_moduli(&b);
        let c = FiniteAbelianGroup::from_moduli(&c);
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(
            a.tensor(&b.direct_sum(&c)),
            a.tensor(&b).direct_sum(&a.tensor(&c))
        );
    }

    #[test]
    fn from_moduli_is_canonical(moduli in prop::collection::vec(1u64..40, 0..5)) {
        let g = FiniteAbelianGroup::from_moduli(&moduli);
        let factors = g.invariant_factors();
        prop_assert!(factors.iter().all(|&d| d >= 2));
        prop_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(g.order(), moduli.iter().product::<u64>().max(1));
        // Canonical: re-normalizing is the identity.
        prop_assert_eq!(FiniteAbelianGroup::from_moduli(factors), g.clone());
    }
}
