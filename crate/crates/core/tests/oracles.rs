use std::collections::BTreeSet;

use skewmorph::classify::{
    cross_check, enumerate_constructive, oracle_exhaustive, oracle_pruned, OracleChoice, PrunedConfig,
};
use skewmorph::perm::mult_map;
use skewmorph::skew::{verify_criterion, SkewMorphism};
use skewmorph::{Error, Execution, Modulus, Permutation, Unit};

fn md(p: u32, e: u32) -> Modulus {
    Modulus::new(p, e).unwrap()
}

fn constructive(m: &Modulus) -> BTreeSet<Permutation> {
    enumerate_constructive(m).unwrap().into_iter().map(|r| Permutation::from_images(r.images).unwrap()).collect()
}

#[test]
fn exhaustive_counts() {
    for (n, count) in [(3, 2), (5, 4), (7, 6), (9, 10)] {
        assert_eq!(oracle_exhaustive(n, Execution::default()).unwrap().len(), count, "n={n}");
    }
    assert!(matches!(oracle_exhaustive(11, Execution::default()), Err(Error::OracleBound { .. })));
}

#[test]
fn primes_give_only_multiplications() {
    for p in [3u32, 5, 7] {
        let m = md(p, 1);
        let expected: BTreeSet<Permutation> = (1..p as u64).map(|u| mult_map(&Unit::new(u, m).unwrap())).collect();
        assert_eq!(oracle_exhaustive(p, Execution::default()).unwrap(), expected);
    }
}

#[test]
fn nine_matches_family() {
    let found = oracle_exhaustive(9, Execution::default()).unwrap();
    assert_eq!(found, constructive(&md(3, 2)));
    let linear = found.iter().filter(|f| SkewMorphism::new((*f).clone()).unwrap().is_automorphism()).count();
    assert_eq!(linear, 6);
    assert_eq!(oracle_pruned(9, &PrunedConfig::default()).unwrap().maps, found);
}

#[test]
fn twenty_seven_matches_family() {
    let run = oracle_pruned(27, &PrunedConfig::default()).unwrap();
    assert_eq!(run.maps.len(), 82);
    assert_eq!(run.maps, constructive(&md(3, 3)));
    for f in &run.maps {
        assert!(verify_criterion(f).unwrap());
    }
}

#[test]
fn twenty_five_matches_family() {
    let run = oracle_pruned(25, &PrunedConfig::default()).unwrap();
    assert_eq!(run.maps, constructive(&md(5, 2)));
}

#[test]
fn pruned_on_three() {
    let run = oracle_pruned(3, &PrunedConfig::default()).unwrap();
    let maps: Vec<&[u32]> = run.maps.iter().map(Permutation::images).collect();
    assert_eq!(maps, vec![&[0, 1, 2][..], &[0, 2, 1][..]]);
}

#[test]
fn cross_check_with_oracle() {
    let cfg = OracleChoice::Auto(PrunedConfig::default());
    for (p, e) in [(3, 2), (3, 3)] {
        let r = cross_check(&md(p, e), &cfg, Execution::default()).unwrap();
        assert!(r.is_consistent(), "{:?}", r.mismatches);
        assert_eq!(r.oracle_total, Some(r.total));
    }
}
