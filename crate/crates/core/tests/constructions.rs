use krasner::classify::phi_delta_s_primary;
use krasner::construct::{canonical_homomorphism, direct_product, localize};
use krasner::corpus;
use krasner::maps::sweep_reductions;
use krasner::{DeltaId, ElementId, FiniteHyperring, IdealLattice, SMode, Subset};

fn small_members(max: usize) -> Vec<FiniteHyperring> {
    corpus::base_members().into_iter().filter(|h| h.size() <= max).collect()
}

#[test]
fn product_hyperideals_are_rectangles() {
    let base = small_members(5);
    for (x, a) in base.iter().enumerate() {
        for b in &base[x..] {
            if (a.m(), a.n()) != (b.m(), b.n()) {
                continue;
            }
            let prod = direct_product(a, b).unwrap();
            let (la, lb) = (IdealLattice::new(a).unwrap(), IdealLattice::new(b).unwrap());
            let lat = IdealLattice::with_cap(&prod.structure, 25).unwrap();
            assert_eq!(lat.len(), la.len() * lb.len(), "{}", prod.structure.name());
            for &i in lat.ideals() {
                let (p1, p2) = prod.factor(i).unwrap_or_else(|| panic!("{} is not a rectangle", lat.describe(i)));
                assert!(la.index_of(p1).is_some() && lb.index_of(p2).is_some());
            }
        }
    }
}

#[test]
fn product_operations_are_componentwise() {
    let (a, b) = (corpus::three_element_example(), corpus::ring_zk(2));
    let prod = direct_product(&a, &b).unwrap();
    let h = &prod.structure;
    for x in h.elements() {
        for y in h.elements() {
            let ((x1, x2), (y1, y2)) = (prod.split(x), prod.split(y));
            assert_eq!(prod.split(h.mul(x, y)), (a.mul(x1, y1), b.mul(x2, y2)));
            assert_eq!(h.add2(x, y), prod.rect(a.add2(x1, y1), b.add2(x2, y2)));
        }
    }
}

#[test]
fn arity_mismatch_is_rejected() {
    let a = corpus::ring_zk(2);
    let b = corpus::ring_as_hyperring(2, 2, 3).unwrap();
    assert!(direct_product(&a, &b).is_err());
}

/// `S⁻¹P ∩ K` is the union of `(P:t)` over `t ∈ S`.
#[test]
fn contraction_of_extension() {
    for h in corpus::base_members() {
        let lat = IdealLattice::new(&h).unwrap();
        for s_set in lat.multiplicative_sets(3) {
            let Ok(loc) = localize(&h, s_set) else { continue };
            for &p in lat.ideals() {
                let union = s_set.iter().fold(Subset::empty(h.size()), |acc, t| {
                    acc.union(Subset::from_elements(h.size(), h.elements().filter(|&a| p.contains(h.mul(a, t)))))
                });
                assert_eq!(loc.contract(loc.extend(p)), union, "{} S={}", h.name(), lat.describe(s_set));
            }
        }
    }
}

#[test]
fn localizing_at_one_transports_verdicts() {
    for h in corpus::base_members().into_iter().filter(|h| h.size() <= 6) {
        let lat = IdealLattice::new(&h).unwrap();
        let one = Subset::singleton(h.size(), h.one());
        let loc = localize(&h, one).unwrap();
        let hom = canonical_homomorphism(&h, &loc).unwrap();
        let l = &loc.structure;
        assert_eq!(l.size(), h.size(), "{}", h.name());
        assert!(hom.is_surjective(l.size()));
        let frac = IdealLattice::new(l).unwrap();
        let image = |x: Subset| Subset::from_elements(l.size(), x.iter().map(|e| hom.apply(e)));
        let phis: Vec<_> = sweep_reductions(h.n()).into_iter().map(|p| p.materialize(&lat).unwrap()).collect();
        let deltas: Vec<_> = DeltaId::ALL.iter().map(|d| d.materialize(&lat)).collect();
        for s_set in lat.multiplicative_sets(2) {
            for i in (0..lat.len()).filter(|&i| lat.is_proper(i) && lat.ideal(i).is_disjoint(s_set)) {
                let p = lat.ideal(i);
                for phi in &phis {
                    let phi_l = loc.localized_map(&lat, &frac, phi).unwrap();
                    for delta in &deltas {
                        let delta_l = loc.localized_map(&lat, &frac, delta).unwrap();
                        let here = phi_delta_s_primary(&lat, p, phi, delta, s_set, SMode::Search).unwrap();
                        let there =
                            phi_delta_s_primary(&frac, image(p), &phi_l, &delta_l, image(s_set), SMode::Search)
                                .unwrap();
                        assert_eq!(here.verdict, there.verdict, "{} P={}", h.name(), lat.describe(p));
                    }
                }
            }
        }
    }
}

#[test]
fn fractions_make_the_mulset_invertible() {
    let h = corpus::ring_zk(6);
    let lat = IdealLattice::new(&h).unwrap();
    let s_set = h.subset(&[ElementId(1), ElementId(5)]);
    let loc = localize(&h, s_set).unwrap();
    let l = &loc.structure;
    for t in s_set.iter() {
        let image = loc.canonical_map()[t.0];
        assert!(l.elements().any(|v| l.mul(image, v) == l.one()), "{} is not a unit", h.element_name(t));
    }
    assert!(lat.multiplicative_sets(2).contains(&s_set));
}
