use depthzero::exec::Exec;
use depthzero::finlab::chartab::{character_table_with, DixonOptions};
use depthzero::finlab::cyclotomic::Cyclotomic;
use depthzero::finlab::lie::{build_sl, LabOptions, LieLab};
use depthzero::finlab::TableCache;
use proptest::prelude::*;

fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 6, 8, 12]), prop::collection::vec((0i64..24, -4i64..=4), 0..5))
        .prop_map(|(n, terms)| Cyclotomic::from_exponents(n, &terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
        let zero = |x: &Cyclotomic| x.is_zero();
        prop_assert!(zero(&(&(&(&a * &b) * &c) - &(&a * &(&b * &c)))));
        prop_assert!(zero(&(&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c)))));
        prop_assert!(zero(&(&(&a * &b) - &(&b * &a))));
        prop_assert!(zero(&(&(&a * &b).conj() - &(&a.conj() * &b.conj()))));
        prop_assert!(zero(&(&a.conj().conj() - &a)));
    }

    #[test]
    fn roots_of_unity_have_norm_one(n in 1u32..30, k in 0i64..60) {
        let z = Cyclotomic::root(n, k);
        prop_assert_eq!((&z * &z.conj()).to_integer(), Some(1));
    }
}

#[test]
fn tables_satisfy_orthogonality_for_every_small_group() {
    for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (2, 8), (3, 2), (3, 3)] {
        let lab = LieLab::new(n, q, LabOptions::default()).unwrap();
        lab.table.verify().unwrap();
        lab.table.verify_columns().unwrap();
        assert_eq!(lab.table.characters.len(), lab.classes.len(), "SL({n},{q})");
    }
}

#[test]
fn known_class_numbers() {
    // SL(2, q) has q + 4 classes for odd q and q + 1 for even q
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let g = build_sl(2, q, false).unwrap();
        let expected = if q % 2 == 1 { q + 4 } else { q + 1 };
        assert_eq!(g.conjugacy_classes().len() as u32, expected, "SL(2,{q})");
    }
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let g = build_sl(3, 2, false).unwrap();
    let cc = g.conjugacy_classes();
    let seq = character_table_with(&g, &cc, DixonOptions { exec: Exec::Sequential, ..Default::default() }).unwrap();
    let par = character_table_with(&g, &cc, DixonOptions { exec: Exec::Parallel, ..Default::default() }).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn cached_table_rejects_a_different_group() {
    let mut cache = TableCache::default();
    let lab = LieLab::with_cache(2, 3, LabOptions::default(), Some(&mut cache)).unwrap();
    let mut wrong = lab.table.clone();
    wrong.label = "SL(2,5)".into();
    cache.insert(wrong);
    assert!(LieLab::with_cache(2, 5, LabOptions::default(), Some(&mut cache)).is_err());
}

#[test]
fn dl_cuspidal_counts_are_reported() {
    // counts are reported, not asserted against the general-position count
    for (n, q) in [(2, 3), (2, 5), (3, 2), (3, 3)] {
        let lab = LieLab::new(n, q, LabOptions::default()).unwrap();
        let dl = lab.identify_dl_cuspidals(&lab.coxeter().unwrap()).unwrap();
        println!("SL({n},{q}): {} Deligne-Lusztig cuspidals of the Coxeter torus", dl.len());
        assert!(!dl.is_empty());
    }
}
