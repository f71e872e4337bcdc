use krasner::classify::{check_tuple, delta_s_primary, phi_delta_s_primary, replay, strongly_phi_delta_s_primary, TupleOutcome};
use krasner::corpus;
use krasner::maps::sweep_reductions;
use krasner::{ClassifyError, Condition, DeltaId, ElementId, FiniteHyperring, IdealLattice, PhiId, SMode, Subset, Verdict};
use proptest::prelude::*;

fn all_tuples(size: usize, n: usize) -> Vec<Vec<ElementId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
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

/// The definition read off directly: every tuple with product in `P \ E`
/// has a slot `i` with `s·u_i ∈ P` or the product with `u_i := s` in `D`.
fn by_definition(h: &FiniteHyperring, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
    all_tuples(h.size(), h.n()).into_iter().all(|t| {
        let prod = h.g(&t);
        if !p.contains(prod) || e.contains(prod) {
            return true;
        }
        (0..t.len()).any(|i| {
            let mut r = t.clone();
            r[i] = s;
            p.contains(h.mul(s, t[i])) || d.contains(h.g(&r))
        })
    })
}

fn sweep(h: &FiniteHyperring, mut visit: impl FnMut(&IdealLattice, Subset, &krasner::IdealMap, &krasner::IdealMap, Subset)) {
    let lat = IdealLattice::new(h).unwrap();
    let phis: Vec<_> = sweep_reductions(h.n()).into_iter().map(|p| p.materialize(&lat).unwrap()).collect();
    let deltas: Vec<_> = DeltaId::ALL.iter().map(|d| d.materialize(&lat)).collect();
    for s_set in lat.multiplicative_sets(3) {
        for i in (0..lat.len()).filter(|&i| lat.is_proper(i) && lat.ideal(i).is_disjoint(s_set)) {
            for phi in &phis {
                for delta in &deltas {
                    visit(&lat, lat.ideal(i), phi, delta, s_set);
                }
            }
        }
    }
}

#[test]
fn verdicts_match_definition() {
    for h in corpus::base_members().into_iter().filter(|h| h.size() <= 6) {
        sweep(&h, |lat, p, phi, delta, s_set| {
            let i = lat.index_of(p).unwrap();
            let (e, d) = (lat.ideal(phi.apply(i)), lat.ideal(delta.apply(i)));
            let c = phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Search).unwrap();
            let expected = s_set.iter().any(|s| by_definition(&h, p, e, d, s));
            assert_eq!(c.holds(), expected, "{} P={} {} {}", h.name(), lat.describe(p), phi.id(), delta.id());
            let cond = Condition { p, excluded: e, target: d };
            for r in &c.refutations {
                assert!(replay(lat, &cond, r));
                assert!(!by_definition(&h, p, e, d, r.s));
            }
            if let Some(s) = c.witness_s {
                assert!(by_definition(&h, p, e, d, s));
            }
        });
    }
}

#[test]
fn identity_reduction_is_vacuous() {
    for h in corpus::base_members().into_iter().filter(|h| h.size() <= 6) {
        sweep(&h, |lat, p, phi, delta, s_set| {
            if phi.id() == PhiId::Phi1.to_string() {
                let c = phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Search).unwrap();
                assert_eq!(c.verdict, Verdict::Vacuous);
            }
        });
    }
}

#[test]
fn whole_ring_expansion_always_holds() {
    for h in corpus::base_members().into_iter().filter(|h| h.size() <= 6) {
        sweep(&h, |lat, p, phi, delta, s_set| {
            if delta.id() == DeltaId::DeltaK.to_string() {
                for s in s_set.iter() {
                    let c = phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Fixed(s)).unwrap();
                    assert!(c.holds());
                    let c = strongly_phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Fixed(s)).unwrap();
                    assert!(c.holds());
                }
            }
        });
    }
}

#[test]
fn strongly_implies_elementwise() {
    for h in corpus::base_members().into_iter().filter(|h| h.size() <= 6) {
        sweep(&h, |lat, p, phi, delta, s_set| {
            for s in s_set.iter() {
                let strong = strongly_phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Fixed(s)).unwrap();
                let plain = phi_delta_s_primary(lat, p, phi, delta, s_set, SMode::Fixed(s)).unwrap();
                if strong.verdict == Verdict::Holds {
                    assert!(plain.holds(), "{} P={}", h.name(), lat.describe(p));
                }
            }
        });
    }
}

#[test]
fn preconditions() {
    let h = corpus::ring_zk(6);
    let lat = IdealLattice::new(&h).unwrap();
    let phi = PhiId::Phi0.materialize(&lat).unwrap();
    let delta = DeltaId::Delta0.materialize(&lat);
    let p = h.subset(&[ElementId(0), ElementId(3)]);
    let run = |p, s_set, mode| phi_delta_s_primary(&lat, p, &phi, &delta, s_set, mode);
    let s1 = h.subset(&[ElementId(1)]);
    assert_eq!(run(h.carrier(), s1, SMode::Search).unwrap_err(), ClassifyError::NotProper);
    assert_eq!(run(p, h.subset(&[ElementId(1), ElementId(3)]), SMode::Search).unwrap_err(), ClassifyError::NotDisjoint);
    assert!(matches!(run(p, h.subset(&[ElementId(2)]), SMode::Search), Err(ClassifyError::NotMultiplicative(_))));
    assert_eq!(run(p, s1, SMode::Fixed(ElementId(5))).unwrap_err(), ClassifyError::WitnessNotInSet(ElementId(5)));
    let not_ideal = h.subset(&[ElementId(0), ElementId(1)]);
    assert!(matches!(run(not_ideal, s1, SMode::Search), Err(ClassifyError::UnknownIdeal(_))));
}

#[test]
fn three_element_zero_is_primary_but_not_prime() {
    let h = corpus::three_element_example();
    let lat = IdealLattice::new(&h).unwrap();
    let zero = h.subset(&[ElementId(0)]);
    let s1 = h.subset(&[ElementId(1)]);
    let (d0, d1) = (DeltaId::Delta0.materialize(&lat), DeltaId::Delta1.materialize(&lat));
    let primary = delta_s_primary(&lat, zero, &d1, s1, SMode::Search).unwrap();
    assert_eq!(primary.verdict, Verdict::Holds);
    let prime = delta_s_primary(&lat, zero, &d0, s1, SMode::Search).unwrap();
    assert_eq!(prime.verdict, Verdict::Fails);
    let u = ElementId(2);
    assert_eq!(prime.refutations[0].tuple, vec![u, u]);
    let cond = Condition { p: zero, excluded: Subset::empty(3), target: zero };
    assert!(matches!(check_tuple(&lat, &cond, ElementId(1), &[u, u]), TupleOutcome::Refutes(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tuple_check_agrees_with_definition(k in 2usize..=8, bits in any::<u64>(), tuple in prop::collection::vec(0usize..8, 2)) {
        let h = corpus::ring_zk(k);
        let lat = IdealLattice::new(&h).unwrap();
        let proper: Vec<Subset> = lat.ideals().iter().copied().filter(|p| !p.is_full()).collect();
        let p = proper[(bits as usize) % proper.len()];
        let e = lat.ideals()[(bits >> 8) as usize % lat.len()].intersection(p);
        let d = lat.ideals()[(bits >> 16) as usize % lat.len()].union(p);
        let s = ElementId((bits >> 24) as usize % k);
        let t: Vec<ElementId> = tuple.iter().map(|&u| ElementId(u % k)).collect();
        let cond = Condition { p, excluded: e, target: d };
        let prod = h.g(&t);
        let expected_outside = !p.contains(prod) || e.contains(prod);
        match check_tuple(&lat, &cond, s, &t) {
            TupleOutcome::Outside => prop_assert!(expected_outside),
            TupleOutcome::Satisfied(i) => {
                let mut r = t.clone();
                r[i] = s;
                prop_assert!(p.contains(h.mul(s, t[i])) || d.contains(h.g(&r)));
            }
            TupleOutcome::Refutes(_) => {
                prop_assert!(!expected_outside);
                for i in 0..2 {
                    let mut r = t.clone();
                    r[i] = s;
                    prop_assert!(!p.contains(h.mul(s, t[i])) && !d.contains(h.g(&r)));
                }
            }
        }
    }
}
