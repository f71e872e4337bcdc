//! Hyperideals, primes and radicals against direct enumeration of subsets.

use krasner::corpus;
use krasner::{ElementId, FiniteHyperring, IdealLattice, Subset};
use proptest::prelude::*;

fn tuples(size: usize, arity: usize) -> Vec<Vec<ElementId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t: Vec<ElementId>| {
                (0..size).map(move |i| {
                    let mut t = t.clone();
                    t.push(ElementId(i));
                    t
                })
            })
            .collect();
    }
    out
}

fn is_ideal(h: &FiniteHyperring, x: Subset) -> bool {
    let n = h.size();
    if !x.contains(h.zero()) {
        return false;
    }
    let members = x.to_vec();
    let sums_closed = tuples(members.len(), h.m())
        .iter()
        .all(|t| h.f(&t.iter().map(|e| members[e.0]).collect::<Vec<_>>()).is_subset(x));
    let negs = members.iter().all(|&a| x.contains(h.neg(a)));
    let absorbs = tuples(n, h.n()).iter().all(|t| !t.iter().any(|&e| x.contains(e)) || x.contains(h.g(t)));
    sums_closed && negs && absorbs
}

fn brute_ideals(h: &FiniteHyperring) -> Vec<Subset> {
    let mut out: Vec<Subset> =
        (0..1u64 << h.size()).map(|b| Subset::from_bits(h.size(), b)).filter(|&x| is_ideal(h, x)).collect();
    out.sort();
    out
}

fn brute_prime(h: &FiniteHyperring, p: Subset) -> bool {
    !p.is_full() && tuples(h.size(), h.n()).iter().all(|t| !p.contains(h.g(t)) || t.iter().any(|&e| p.contains(e)))
}

/// Elements with some power in `P`.
fn brute_nil_radical(h: &FiniteHyperring, p: Subset) -> Subset {
    Subset::from_elements(
        h.size(),
        h.elements().filter(|&u| {
            let mut x = u;
            (0..=h.size()).any(|_| {
                let hit = p.contains(x);
                x = h.mul(x, u);
                hit
            })
        }),
    )
}

fn check_structure(h: &FiniteHyperring) {
    let lat = IdealLattice::new(h).unwrap();
    let mut got = lat.ideals().to_vec();
    got.sort();
    assert_eq!(got, brute_ideals(h), "{}", h.name());
    let primes: Vec<Subset> = got.iter().copied().filter(|&p| brute_prime(h, p)).collect();
    for i in 0..lat.len() {
        let p = lat.ideal(i);
        if p.is_full() {
            continue;
        }
        assert_eq!(lat.is_prime(i).unwrap(), brute_prime(h, p), "{} {}", h.name(), lat.describe(p));
        let by_primes =
            primes.iter().filter(|q| p.is_subset(**q)).fold(h.carrier(), |acc, &q| acc.intersection(q));
        let nil = brute_nil_radical(h, p);
        assert_eq!(lat.ideal(lat.radical_by_primes(i)), by_primes, "{} {}", h.name(), lat.describe(p));
        assert_eq!(lat.radical_by_powers(i), nil, "{} {}", h.name(), lat.describe(p));
        assert_eq!(by_primes, nil, "{} {}", h.name(), lat.describe(p));
    }
}

#[test]
fn base_members_match_enumeration() {
    for h in corpus::base_members() {
        check_structure(&h);
    }
}

#[test]
fn three_element_lattice() {
    let h = corpus::three_element_example();
    let lat = IdealLattice::new(&h).unwrap();
    let names: Vec<String> = lat.ideals().iter().map(|&s| lat.describe(s)).collect();
    assert_eq!(lat.len(), 3, "{names:?}");
    let zero_u = h.subset_of_names(&["0", "u"]).unwrap();
    let i = lat.index_of(zero_u).unwrap();
    assert!(lat.is_prime(i).unwrap() && lat.is_maximal(i).unwrap());
    assert_eq!(lat.ideal(lat.radical_by_primes(lat.zero_index())), zero_u);
}

#[test]
fn multiplicative_sets_are_closed() {
    for h in corpus::base_members() {
        let lat = IdealLattice::new(&h).unwrap();
        for s in lat.multiplicative_sets(3) {
            let members = s.to_vec();
            assert!(!members.is_empty());
            for t in tuples(members.len(), h.n()) {
                let args: Vec<ElementId> = t.iter().map(|e| members[e.0]).collect();
                assert!(s.contains(h.g(&args)), "{} {:?}", h.name(), lat.describe(s));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rings_match_enumeration(k in 2usize..=8, arities in prop::sample::select(vec![(2usize, 2usize), (2, 3), (3, 3), (3, 2)])) {
        let (m, n) = arities;
        let h = corpus::ring_as_hyperring(k, m, n).unwrap();
        check_structure(&h);
    }

    #[test]
    fn colon_is_a_hyperideal(k in 2usize..=8, u in 0usize..8) {
        let h = corpus::ring_zk(k);
        let lat = IdealLattice::new(&h).unwrap();
        let u = ElementId(u % k);
        for i in 0..lat.len() {
            let c = lat.ideal(lat.colon(i, u));
            let direct = Subset::from_elements(k, h.elements().filter(|&a| lat.ideal(i).contains(h.mul(a, u))));
            prop_assert_eq!(c, direct);
        }
    }
}
