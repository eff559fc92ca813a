//! Statements that hold for every n >= 2 but break at n = 1, pinned down on
//! the smallest rings that show it.

use std::sync::Arc;

use ringlab::classify::is_n_oa;
use ringlab::factorize::is_n_oaf;
use ringlab::spec::{ModuleSpec, RingSpec};
use ringlab::{Limits, RingTable};

fn build(spec: RingSpec) -> Arc<RingTable> {
    spec.build(Limits::default()).unwrap()
}

#[test]
fn divided_nilpotent_maximal_ideal_is_not_enough_at_n_1() {
    let r = build(RingSpec::truncated_bivariate(2, 2));
    assert!(r.is_local());
    let m = r.maximal_ideals()[0].clone();
    assert!(r.is_divided(&m).unwrap().0);
    assert_eq!(r.ideal_power(&m, 2).unwrap(), r.zero_ideal());
    assert!(!is_n_oaf(&r, 1).unwrap().holds);
    assert!(is_n_oaf(&r, 2).unwrap().holds);
}

#[test]
fn field_idealization_is_1_oaf_with_a_non_prime_ideal() {
    let r = build(RingSpec::trivial_extension(RingSpec::zmod(2), ModuleSpec::Regular));
    assert!(is_n_oaf(&r, 1).unwrap().holds);
    assert!(!is_n_oa(&r, &r.zero_ideal(), 1).unwrap().0);
    for n in 2..=4 {
        for i in r.proper_ideals().unwrap() {
            assert!(is_n_oa(&r, &i, n).unwrap().0);
        }
    }
}

#[test]
fn field_with_rank_two_module_is_not_1_oaf() {
    let module = ModuleSpec::DirectSum {
        summands: vec![ModuleSpec::Regular, ModuleSpec::Regular],
    };
    let r = build(RingSpec::trivial_extension(RingSpec::zmod(2), module));
    let v = is_n_oaf(&r, 1).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    let m = &r.maximal_ideals()[0];
    assert!(w != r.zero_ideal() && w != *m && w.is_subset(m));
    assert!(is_n_oaf(&r, 2).unwrap().holds);
}
