use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use ringlab::classify::{is_n_oa, is_n_oa_fast, is_von_neumann_regular, list_n_oa_ideals};
use ringlab::expr::parse_element;
use ringlab::factorize::{find_factorization, is_n_oaf, multiplicative_closure};
use ringlab::ring::build_quotient;
use ringlab::spec::{ModuleSpec, RingSpec};
use ringlab::verify::default_corpus;
use ringlab::{BitSet, Elem, FactorClass, Ideal, Limits, RingTable};

fn small_ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        (2usize..=64).prop_map(RingSpec::zmod),
        (prop::sample::select(vec![2usize, 3]), 1u32..=3)
            .prop_map(|(p, k)| RingSpec::truncated_poly(p, k)),
        (1u32..=2).prop_map(|k| RingSpec::truncated_bivariate(2, k)),
        (2usize..=8, 2usize..=8)
            .prop_map(|(a, b)| RingSpec::product(vec![RingSpec::zmod(a), RingSpec::zmod(b)])),
        (2usize..=8, 1usize..=8).prop_map(|(m, d)| {
            let module = match d % m {
                0 => ModuleSpec::Regular,
                g => ModuleSpec::quotient(&[g as i64]),
            };
            RingSpec::trivial_extension(RingSpec::zmod(m), module)
        }),
        Just(RingSpec::two_variable_example()),
    ]
}

fn build(spec: &RingSpec) -> Arc<RingTable> {
    spec.build(Limits::default()).unwrap()
}

fn smallest_ideal_containing(r: &RingTable, set: &BitSet) -> Ideal {
    r.all_ideals()
        .unwrap()
        .iter()
        .filter(|i| set.is_subset(i.members()))
        .min_by_key(|i| i.size())
        .unwrap()
        .clone()
}

fn product_set(r: &RingTable, i: &Ideal, j: &Ideal) -> BitSet {
    let mut s = BitSet::new(r.size());
    for a in i.elements() {
        for b in j.elements() {
            s.insert(r.mul(a, b));
        }
    }
    s
}

fn brute_primary(r: &RingTable, i: &Ideal) -> bool {
    for a in r.elements() {
        for b in r.elements() {
            if i.contains(r.mul(a, b))
                && !i.contains(a)
                && !(1..=r.size() as u64).any(|k| i.contains(r.pow(b, k)))
            {
                return false;
            }
        }
    }
    true
}

fn multiply_all(r: &RingTable, factors: &[Ideal]) -> Ideal {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = r.ideal_product(&acc, f).unwrap();
    }
    acc
}

fn nondecreasing_tuples(k: usize, len: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().copied().unwrap_or(0);
    for g in start..k {
        cur.push(g);
        nondecreasing_tuples(k, len, out, cur);
        cur.pop();
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn lattice_equals_subset_filter(spec in small_ring()) {
        let r = build(&spec);
        prop_assume!(r.size() <= 16);
        let mut expected = Vec::new();
        for mask in 0u32..(1 << r.size()) {
            let set = BitSet::from_indices(r.size(), (0..r.size()).filter(|b| mask >> b & 1 == 1));
            let closed = set.contains(r.zero())
                && set.iter().all(|a| set.iter().all(|b| set.contains(r.add(a, b))))
                && set.iter().all(|a| r.elements().all(|x| set.contains(r.mul(a, x))));
            if closed {
                expected.push(set);
            }
        }
        let mut got: Vec<BitSet> = r.all_ideals().unwrap().iter().map(|i| i.members().clone()).collect();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn generated_ideal_is_least_containing(spec in small_ring(), picks in prop::collection::vec(any::<usize>(), 0..4)) {
        let r = build(&spec);
        let gens: Vec<Elem> = picks.iter().map(|p| p % r.size()).collect();
        let set = BitSet::from_indices(r.size(), gens.iter().copied());
        prop_assert_eq!(r.generate_ideal(&gens), smallest_ideal_containing(&r, &set));
    }

    #[test]
    fn ideal_arithmetic_laws(spec in small_ring()) {
        let r = build(&spec);
        let ideals = r.all_ideals().unwrap().to_vec();
        for i in &ideals {
            prop_assert_eq!(r.radical(&r.radical(i).unwrap()).unwrap(), r.radical(i).unwrap());
            for j in &ideals {
                let ij = r.ideal_product(i, j).unwrap();
                prop_assert_eq!(&ij, &r.ideal_product(j, i).unwrap());
                prop_assert_eq!(&ij, &smallest_ideal_containing(&r, &product_set(&r, i, j)));
                prop_assert!(ij.is_subset(&r.ideal_intersection(i, j).unwrap()));
                let sum = r.ideal_sum(i, j).unwrap();
                prop_assert_eq!(&sum, &smallest_ideal_containing(&r, &i.members().union(j.members())));
                for k in &ideals {
                    let lhs = r.ideal_product(i, &r.ideal_sum(j, k).unwrap()).unwrap();
                    let rhs = r.ideal_sum(&ij, &r.ideal_product(i, k).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn primes_are_primary(spec in small_ring()) {
        let r = build(&spec);
        for i in &r.proper_ideals().unwrap() {
            let primary = r.is_primary(i).unwrap();
            prop_assert_eq!(primary, brute_primary(&r, i));
            if r.is_prime(i).unwrap() {
                prop_assert!(primary);
            }
        }
    }

    #[test]
    fn oa_fast_path_matches_brute_force(spec in small_ring(), n in 1usize..=3) {
        let r = build(&spec);
        for i in r.proper_ideals().unwrap() {
            let (brute, witness) = is_n_oa(&r, &i, n).unwrap();
            prop_assert_eq!(brute, is_n_oa_fast(&r, &i, n).unwrap());
            if let Some(t) = witness {
                prop_assert!(ringlab::classify::replay_oa_witness(&r, &i, n, &t));
            }
            if brute {
                prop_assert!(is_n_oa(&r, &i, n + 1).unwrap().0);
            }
        }
    }

    #[test]
    fn oaf_is_monotone(spec in small_ring()) {
        let r = build(&spec);
        let profile: Vec<bool> = (1..=4).map(|n| is_n_oaf(&r, n).unwrap().holds).collect();
        for w in profile.windows(2) {
            prop_assert!(!w[0] || w[1]);
        }
    }

    #[test]
    fn closure_matches_tuple_enumeration(spec in small_ring(), n in 1usize..=3) {
        let r = build(&spec);
        prop_assume!(r.all_ideals().unwrap().len() <= 20);
        let gens = list_n_oa_ideals(&r, n).unwrap();
        let closure = multiplicative_closure(&r, &gens).unwrap();
        let mut by_tuples = BTreeSet::new();
        for len in 1..=6 {
            let mut tuples = Vec::new();
            nondecreasing_tuples(gens.len(), len, &mut tuples, &mut Vec::new());
            if tuples.len() > 5000 {
                break;
            }
            for t in tuples {
                let factors: Vec<Ideal> = t.iter().map(|&g| gens[g].clone()).collect();
                by_tuples.insert(multiply_all(&r, &factors));
            }
        }
        for p in &by_tuples {
            prop_assert!(closure.contains(p));
        }
        for p in closure.iter() {
            let factors = closure.factors(p).unwrap();
            prop_assert_eq!(&multiply_all(&r, &factors), p);
            if factors.len() <= 6 && gens.len() <= 6 {
                prop_assert!(by_tuples.contains(p));
            }
        }
    }

    #[test]
    fn certificates_are_sound(spec in small_ring(), n in 1usize..=3) {
        let r = build(&spec);
        let mut all = true;
        for target in r.proper_ideals().unwrap() {
            match find_factorization(&r, &target, FactorClass::NOa(n)).unwrap() {
                Some(cert) => {
                    prop_assert_eq!(&multiply_all(&r, &cert.factors), &target);
                    for f in &cert.factors {
                        prop_assert!(is_n_oa(&r, f, n).unwrap().0);
                    }
                    prop_assert!(cert.replay(&r).unwrap());
                }
                None => all = false,
            }
        }
        prop_assert_eq!(all, is_n_oaf(&r, n).unwrap().holds);
    }

    #[test]
    fn minimal_primes_are_minimal(spec in small_ring()) {
        let r = build(&spec);
        let primes: Vec<Ideal> = r
            .proper_ideals()
            .unwrap()
            .iter()
            .filter(|p| r.is_prime(p).unwrap())
            .cloned()
            .collect();
        for i in r.proper_ideals().unwrap() {
            let over: Vec<&Ideal> = primes.iter().filter(|p| i.is_subset(p)).collect();
            let expected: BTreeSet<Ideal> = over
                .iter()
                .filter(|p| !over.iter().any(|q| q.is_subset(p) && q != *p))
                .map(|p| (*p).clone())
                .collect();
            let got: BTreeSet<Ideal> = r.min_primes(&i).unwrap().into_iter().collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn regular_iff_reduced(spec in small_ring()) {
        let r = build(&spec);
        let every_idempotent = r
            .all_ideals()
            .unwrap()
            .iter()
            .all(|i| r.ideal_product(i, i).unwrap() == *i);
        let (vnr, _) = is_von_neumann_regular(&r).unwrap();
        prop_assert_eq!(vnr, every_idempotent);
        prop_assert_eq!(vnr, r.nilradical() == r.zero_ideal());
    }

    #[test]
    fn local_decomposition_is_faithful(spec in small_ring()) {
        let r = build(&spec);
        let factors = r.local_decomposition().unwrap();
        prop_assert_eq!(factors.len(), r.maximal_ideals().len());
        prop_assert_eq!(factors.iter().map(|f| f.ring.size()).product::<usize>(), r.size());
        let mut images = BTreeSet::new();
        for x in r.elements() {
            images.insert(factors.iter().map(|f| f.projection[x]).collect::<Vec<_>>());
        }
        prop_assert_eq!(images.len(), r.size());
        for f in &factors {
            prop_assert!(f.ring.is_local());
            for a in r.elements() {
                for b in r.elements() {
                    let p = &f.projection;
                    prop_assert_eq!(p[r.mul(a, b)], f.ring.mul(p[a], p[b]));
                    prop_assert_eq!(p[r.add(a, b)], f.ring.add(p[a], p[b]));
                }
            }
        }
    }

    #[test]
    fn quotient_map_is_a_homomorphism(spec in small_ring(), pick in any::<usize>()) {
        let r = build(&spec);
        let proper = r.proper_ideals().unwrap();
        let i = &proper[pick % proper.len()];
        let (q, map) = build_quotient(&r, i).unwrap();
        prop_assert_eq!(q.size() * i.size(), r.size());
        prop_assert_eq!(map[r.one()], q.one());
        for a in r.elements() {
            prop_assert_eq!(map[a] == q.zero(), i.contains(a));
            for b in r.elements() {
                prop_assert_eq!(map[r.add(a, b)], q.add(map[a], map[b]));
                prop_assert_eq!(map[r.mul(a, b)], q.mul(map[a], map[b]));
            }
        }
    }

    #[test]
    fn module_part_squares_to_zero(spec in small_ring()) {
        let r = build(&spec);
        if let Some((_, e)) = r.trivial_extension_parts() {
            let zero_e = r.generate_ideal(&(0..e.size()).collect::<Vec<_>>());
            prop_assert_eq!(zero_e.size(), e.size());
            prop_assert_eq!(r.ideal_product(&zero_e, &zero_e).unwrap(), r.zero_ideal());
        }
    }

    #[test]
    fn labels_round_trip(spec in small_ring()) {
        let r = build(&spec);
        for x in r.elements() {
            prop_assert_eq!(parse_element(&r, &r.label(x)).unwrap(), x);
        }
    }
}

#[test]
fn corpus_labels_round_trip() {
    for entry in default_corpus() {
        let r = build(&entry.spec);
        for x in r.elements() {
            let label = r.label(x);
            assert_eq!(parse_element(&r, &label).unwrap(), x, "{}: {label}", entry.name);
        }
    }
}
