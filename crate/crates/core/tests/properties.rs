use num_bigint::BigInt;
use proptest::prelude::*;

use schubert_core::oracle::{coset_to_partition, lr_coefficient, Partition};
use schubert_core::{
    characteristic, element_of_word, enumerate_cosets, CartanMatrix, CosetIndex, CosetTable, ProductCalculator, Series,
};

fn grassmannian(n: usize, k: usize) -> CosetTable {
    enumerate_cosets(&CartanMatrix::builtin(Series::A, n - 1).unwrap(), &[k], None).unwrap()
}

fn g2() -> CosetTable {
    enumerate_cosets(&CartanMatrix::builtin(Series::G, 2).unwrap(), &[1, 2], None).unwrap()
}

fn pick(t: &CosetTable, seed: usize) -> CosetIndex {
    t.iter().nth(seed % t.len()).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_reversal_inverts(word in prop::collection::vec(1u8..=4, 0..12)) {
        let c = CartanMatrix::builtin(Series::F, 4).unwrap();
        let w = element_of_word(&c, &word).unwrap();
        let rev: Vec<u8> = word.iter().rev().copied().collect();
        let r = element_of_word(&c, &rev).unwrap();
        prop_assert!(w.compose(&r).is_identity());
    }

    #[test]
    fn lookup_returns_minimal_word(word in prop::collection::vec(1u8..=6, 0..10)) {
        let t = grassmannian(7, 3);
        let idx = t.lookup_word(&word).unwrap();
        let canonical = t.word(idx).unwrap().0.clone();
        prop_assert!(canonical.len() <= word.len());
        prop_assert_eq!(t.lookup_word(&canonical).unwrap(), idx);
    }

    #[test]
    fn product_is_commutative(a in 0usize..1000, b in 0usize..1000) {
        let t = g2();
        let (u, v) = (pick(&t, a), pick(&t, b));
        let mut calc = ProductCalculator::new(&t);
        prop_assert_eq!(calc.multiply(u, v).unwrap(), calc.multiply(v, u).unwrap());
    }

    #[test]
    fn characteristics_match_lr(a in 0usize..1000, b in 0usize..1000) {
        let t = grassmannian(7, 3);
        let (u, v) = (pick(&t, a), pick(&t, b));
        let m = u.m + v.m;
        prop_assume!(m <= t.top_length());
        let lu = coset_to_partition(&t, u).unwrap();
        let lv = coset_to_partition(&t, v).unwrap();
        for i in 1..=t.betti_at(m) {
            let w = CosetIndex::new(m, i);
            let lw = coset_to_partition(&t, w).unwrap();
            let c = characteristic(&t, w, &[u, v]).unwrap();
            prop_assert_eq!(c, BigInt::from(lr_coefficient(&lu, &lv, &lw).unwrap()));
        }
    }

    #[test]
    fn lr_is_symmetric(l in prop::collection::vec(0usize..4, 0..4), m in prop::collection::vec(0usize..4, 0..4)) {
        let mut l = l; l.sort_unstable_by(|a, b| b.cmp(a));
        let mut m = m; m.sort_unstable_by(|a, b| b.cmp(a));
        let sum: Vec<usize> = (0..4).map(|i| l.get(i).unwrap_or(&0) + m.get(i).unwrap_or(&0)).collect();
        let lam = Partition::new(l).unwrap();
        let mu = Partition::new(m).unwrap();
        let nu = Partition::new(sum).unwrap();
        let c = lr_coefficient(&lam, &mu, &nu).unwrap();
        // lambda + mu always occurs once
        prop_assert_eq!(c, 1);
        prop_assert_eq!(c, lr_coefficient(&mu, &lam, &nu).unwrap());
    }
}

#[test]
fn poincare_duality_pairs_classes() {
    // s_u s_v at the top is 1 exactly for the dual class on a Grassmannian
    let t = grassmannian(6, 2);
    let top = t.top_element().unwrap().0;
    let mut calc = ProductCalculator::new(&t);
    for (u, _) in t.iter() {
        let m = t.top_length() - u.m;
        let ones: Vec<_> = (1..=t.betti_at(m))
            .filter(|&i| calc.characteristic(top, &[u, CosetIndex::new(m, i)]).unwrap() == BigInt::from(1))
            .collect();
        assert_eq!(ones.len(), 1, "{u}");
    }
}
