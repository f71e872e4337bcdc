//! Primary-type classifiers.
//!
//! Every elementwise class in this module is one instance of a single
//! condition on a proper hyperideal `P`, an excluded set `E ⊆ P`, a target
//! set `D ⊇ P`, and an element `s`:
//!
//! > whenever `g(u_1..u_n) ∈ P \ E`, some slot `i` has `g(u_i, s, 1..) ∈ P`
//! > or `g(u_1.., s, ..u_n) ∈ D` (`s` put in slot `i`).
//!
//! | class                  | `E`        | `D`       | `s`        |
//! |------------------------|------------|-----------|------------|
//! | φ-δ-S-primary          | `φ(P)`     | `δ(P)`    | some `s∈S` |
//! | δ-S-primary            | `∅`        | `δ(P)`    | some `s∈S` |
//! | φ-S-primary            | `φ(P)`     | `rad(P)`  | some `s∈S` |
//! | S-primary              | `∅`        | `rad(P)`  | some `s∈S` |
//! | weakly S-primary       | `{0}`      | `rad(P)`  | some `s∈S` |
//! | δ-primary              | `∅`        | `δ(P)`    | `1`        |
//!
//! With `s = 1` the first consequent reads `u_i ∈ P`, which is the δ-primary
//! condition exactly.
//!
//! The strongly variant quantifies over n-tuples of hyperideals instead: when
//! the product image `g(P_1..P_n)` lies in `P` but not inside `φ(P)`, some
//! slot has `g(P_i, s, 1..) ⊆ P` or `g(P_1.., s, ..P_n) ⊆ δ(P)`.
//!
//! The multiplication is commutative, so all searches run over multisets.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::IdealLattice;
use crate::maps::IdealMap;
use crate::subset::{for_each_multiset, ElementId, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the hyperideal must be proper")]
    NotProper,
    #[error("the hyperideal meets the multiplicative set")]
    NotDisjoint,
    #[error("{0:?} is not a multiplicative set")]
    NotMultiplicative(Subset),
    #[error("{0} is not a member of the multiplicative set")]
    WitnessNotInSet(ElementId),
    #[error("{0:?} is not a hyperideal of the structure")]
    UnknownIdeal(Subset),
    #[error("operation not supported on this structure: {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// No tuple meets the antecedent.
    Vacuous,
    /// No refutation among sampled tuples; not a proof.
    HoldsOnSample,
}

impl Verdict {
    /// Holds in any form.
    pub fn is_positive(self) -> bool {
        !matches!(self, Verdict::Fails)
    }
}

/// How the associated element is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SMode {
    /// Try every member of `S`.
    Search,
    /// Use this one member.
    Fixed(ElementId),
}

/// Which consequent failed in one slot of a refuting tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotFailure {
    pub slot: usize,
    /// `g(u_i, s, 1..)`, outside `P`.
    pub scaled: ElementId,
    /// `g(u_1.., s, ..u_n)`, outside the target set.
    pub replaced: ElementId,
}

/// A tuple that meets the antecedent and fails both consequents in every
/// slot, for the given `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub s: ElementId,
    pub tuple: Vec<ElementId>,
    pub product: ElementId,
    pub slots: Vec<SlotFailure>,
}

/// A refuting hyperideal tuple for the strongly variant, as lattice indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealRefutation {
    pub s: ElementId,
    pub ideals: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// The associated element when the verdict is positive.
    pub witness_s: Option<ElementId>,
    /// One refutation per member of `S` tried, when the verdict is `Fails`.
    pub refutations: Vec<Refutation>,
    /// Same, for the strongly variant.
    pub ideal_refutations: Vec<IdealRefutation>,
}

impl Classification {
    pub fn holds(&self) -> bool {
        self.verdict.is_positive()
    }
}

/// The condition with all sets resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub p: Subset,
    pub excluded: Subset,
    pub target: Subset,
}

/// Outcome of testing one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleOutcome {
    /// Antecedent not met.
    Outside,
    /// Antecedent met; the slot that satisfies a consequent.
    Satisfied(usize),
    Refutes(Refutation),
}

/// Tests one tuple of any length against the condition. For length `n` this
/// is the definition itself; for length `x(n-1)+1` it uses the iterated
/// product.
pub fn check_tuple(lat: &IdealLattice, cond: &Condition, s: ElementId, tuple: &[ElementId]) -> TupleOutcome {
    let product = lat.product(tuple);
    if !cond.p.contains(product) || cond.excluded.contains(product) {
        return TupleOutcome::Outside;
    }
    let mut slots = Vec::with_capacity(tuple.len());
    let mut rest = tuple.to_vec();
    for (i, &u) in tuple.iter().enumerate() {
        let scaled = lat.mul(u, s);
        if cond.p.contains(scaled) {
            return TupleOutcome::Satisfied(i);
        }
        rest[i] = s;
        let replaced = lat.product(&rest);
        rest[i] = u;
        if cond.target.contains(replaced) {
            return TupleOutcome::Satisfied(i);
        }
        slots.push(SlotFailure { slot: i, scaled, replaced });
    }
    TupleOutcome::Refutes(Refutation { s, tuple: tuple.to_vec(), product, slots })
}

/// Re-runs the definition on a stored refutation.
pub fn replay(lat: &IdealLattice, cond: &Condition, r: &Refutation) -> bool {
    matches!(check_tuple(lat, cond, r.s, &r.tuple), TupleOutcome::Refutes(_))
}

/// Searches all n-multisets for a refutation with fixed `s`.
pub fn find_refutation(lat: &IdealLattice, cond: &Condition, s: ElementId) -> Option<Refutation> {
    let n = lat.n();
    let size = lat.size();
    // slot-independent part of the first consequent
    let scaled_in: Vec<bool> = (0..size).map(|u| cond.p.contains(lat.mul(ElementId(u), s))).collect();
    let candidates: Vec<usize> = (0..size).filter(|&u| !scaled_in[u]).collect();
    // a tuple with any factor whose s-multiple lies in P is satisfied, so
    // only tuples drawn from the other elements can refute
    let mut found = None;
    let mut buf = vec![ElementId(0); n];
    for_each_multiset(candidates.len(), n, |t| {
        for (b, &i) in buf.iter_mut().zip(t) {
            *b = ElementId(candidates[i]);
        }
        if let TupleOutcome::Refutes(r) = check_tuple(lat, cond, s, &buf) {
            found = Some(r);
            return false;
        }
        true
    });
    found
}

/// True when no element tuple meets the antecedent. Since `g(x, 1..1) = x`,
/// that happens exactly when `P ⊆ E`.
pub fn is_vacuous(cond: &Condition) -> bool {
    cond.p.is_subset(cond.excluded)
}

/// Checks the preconditions shared by every S-variant.
pub fn check_preconditions(lat: &IdealLattice, p: Subset, s_set: Subset, mode: SMode) -> Result<(), ClassifyError> {
    if lat.index_of(p).is_none() {
        return Err(ClassifyError::UnknownIdeal(p));
    }
    if p.is_full() {
        return Err(ClassifyError::NotProper);
    }
    if !lat.is_multiplicative(s_set) {
        return Err(ClassifyError::NotMultiplicative(s_set));
    }
    if !p.is_disjoint(s_set) {
        return Err(ClassifyError::NotDisjoint);
    }
    if let SMode::Fixed(s) = mode {
        if !s_set.contains(s) {
            return Err(ClassifyError::WitnessNotInSet(s));
        }
    }
    Ok(())
}

fn candidates(s_set: Subset, mode: SMode) -> Vec<ElementId> {
    match mode {
        SMode::Search => s_set.to_vec(),
        SMode::Fixed(s) => vec![s],
    }
}

/// Classifies the resolved condition without precondition checks.
pub fn classify_condition(lat: &IdealLattice, cond: &Condition, s_set: Subset, mode: SMode) -> Classification {
    let ss = candidates(s_set, mode);
    if is_vacuous(cond) {
        return Classification {
            verdict: Verdict::Vacuous,
            witness_s: ss.first().copied(),
            refutations: Vec::new(),
            ideal_refutations: Vec::new(),
        };
    }
    let mut refutations = Vec::new();
    for &s in &ss {
        match find_refutation(lat, cond, s) {
            None => {
                return Classification {
                    verdict: Verdict::Holds,
                    witness_s: Some(s),
                    refutations: Vec::new(),
                    ideal_refutations: Vec::new(),
                }
            }
            Some(r) => refutations.push(r),
        }
    }
    Classification { verdict: Verdict::Fails, witness_s: None, refutations, ideal_refutations: Vec::new() }
}

fn resolve(lat: &IdealLattice, p: Subset) -> Result<usize, ClassifyError> {
    lat.index_of(p).ok_or(ClassifyError::UnknownIdeal(p))
}

/// φ-δ-S-primary.
pub fn phi_delta_s_primary(
    lat: &IdealLattice,
    p: Subset,
    phi: &IdealMap,
    delta: &IdealMap,
    s_set: Subset,
    mode: SMode,
) -> Result<Classification, ClassifyError> {
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition { p, excluded: lat.ideal(phi.apply(i)), target: lat.ideal(delta.apply(i)) };
    Ok(classify_condition(lat, &cond, s_set, mode))
}

/// δ-S-primary: nothing excluded from the antecedent.
pub fn delta_s_primary(
    lat: &IdealLattice,
    p: Subset,
    delta: &IdealMap,
    s_set: Subset,
    mode: SMode,
) -> Result<Classification, ClassifyError> {
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition { p, excluded: Subset::empty(lat.size()), target: lat.ideal(delta.apply(i)) };
    Ok(classify_condition(lat, &cond, s_set, mode))
}

/// δ-primary: `u_i ∈ P` or the product with `u_i` replaced by 1 lies in `δ(P)`.
pub fn delta_primary(lat: &IdealLattice, p: Subset, delta: &IdealMap) -> Result<Classification, ClassifyError> {
    let i = resolve(lat, p)?;
    if p.is_full() {
        return Err(ClassifyError::NotProper);
    }
    let cond = Condition { p, excluded: Subset::empty(lat.size()), target: lat.ideal(delta.apply(i)) };
    let one = Subset::singleton(lat.size(), lat.one());
    Ok(classify_condition(lat, &cond, one, SMode::Fixed(lat.one())))
}

/// S-primary: δ is the radical.
pub fn s_primary(lat: &IdealLattice, p: Subset, s_set: Subset, mode: SMode) -> Result<Classification, ClassifyError> {
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition { p, excluded: Subset::empty(lat.size()), target: lat.ideal(lat.radical_by_primes(i)) };
    Ok(classify_condition(lat, &cond, s_set, mode))
}

/// Weakly S-primary: products equal to zero are exempt.
pub fn weakly_s_primary(lat: &IdealLattice, p: Subset, s_set: Subset, mode: SMode) -> Result<Classification, ClassifyError> {
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition {
        p,
        excluded: Subset::singleton(lat.size(), lat.zero()),
        target: lat.ideal(lat.radical_by_primes(i)),
    };
    Ok(classify_condition(lat, &cond, s_set, mode))
}

/// φ-S-primary: δ is the radical.
pub fn phi_s_primary(
    lat: &IdealLattice,
    p: Subset,
    phi: &IdealMap,
    s_set: Subset,
    mode: SMode,
) -> Result<Classification, ClassifyError> {
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition { p, excluded: lat.ideal(phi.apply(i)), target: lat.ideal(lat.radical_by_primes(i)) };
    Ok(classify_condition(lat, &cond, s_set, mode))
}

/// Searches hyperideal n-multisets for a refutation of the strongly variant.
pub fn find_ideal_refutation(lat: &IdealLattice, cond: &Condition, s: ElementId) -> Option<IdealRefutation> {
    let n = lat.n();
    let sing = Subset::singleton(lat.size(), s);
    let mut found = None;
    let mut sets = vec![Subset::empty(lat.size()); n];
    for_each_multiset(lat.len(), n, |t| {
        for (x, &j) in sets.iter_mut().zip(t) {
            *x = lat.ideal(j);
        }
        let image = lat.product_raw(&sets);
        if !image.is_subset(cond.p) || image.is_subset(cond.excluded) {
            return true;
        }
        for i in 0..n {
            if lat.scale(sets[i], s).is_subset(cond.p) {
                return true;
            }
            let keep = sets[i];
            sets[i] = sing;
            let replaced = lat.product_raw(&sets);
            sets[i] = keep;
            if replaced.is_subset(cond.target) {
                return true;
            }
        }
        found = Some(IdealRefutation { s, ideals: t.to_vec() });
        false
    });
    found
}

/// Re-runs the strongly definition on a stored hyperideal tuple.
pub fn replay_ideal(lat: &IdealLattice, cond: &Condition, r: &IdealRefutation) -> bool {
    let sets: Vec<Subset> = r.ideals.iter().map(|&j| lat.ideal(j)).collect();
    let image = lat.product_raw(&sets);
    if !image.is_subset(cond.p) || image.is_subset(cond.excluded) {
        return false;
    }
    let sing = Subset::singleton(lat.size(), r.s);
    (0..sets.len()).all(|i| {
        let mut rest = sets.clone();
        rest[i] = sing;
        !lat.scale(sets[i], r.s).is_subset(cond.p) && !lat.product_raw(&rest).is_subset(cond.target)
    })
}

/// True when no hyperideal tuple meets the strongly antecedent.
pub fn is_vacuous_strong(lat: &IdealLattice, cond: &Condition) -> bool {
    let mut vacuous = true;
    let mut sets = vec![Subset::empty(lat.size()); lat.n()];
    for_each_multiset(lat.len(), lat.n(), |t| {
        for (x, &j) in sets.iter_mut().zip(t) {
            *x = lat.ideal(j);
        }
        let image = lat.product_raw(&sets);
        vacuous = !(image.is_subset(cond.p) && !image.is_subset(cond.excluded));
        vacuous
    });
    vacuous
}

pub fn classify_condition_strong(lat: &IdealLattice, cond: &Condition, s_set: Subset, mode: SMode) -> Classification {
    let ss = candidates(s_set, mode);
    if is_vacuous_strong(lat, cond) {
        return Classification {
            verdict: Verdict::Vacuous,
            witness_s: ss.first().copied(),
            refutations: Vec::new(),
            ideal_refutations: Vec::new(),
        };
    }
    let mut ideal_refutations = Vec::new();
    for &s in &ss {
        match find_ideal_refutation(lat, cond, s) {
            None => {
                return Classification {
                    verdict: Verdict::Holds,
                    witness_s: Some(s),
                    refutations: Vec::new(),
                    ideal_refutations: Vec::new(),
                }
            }
            Some(r) => ideal_refutations.push(r),
        }
    }
    Classification { verdict: Verdict::Fails, witness_s: None, refutations: Vec::new(), ideal_refutations }
}

/// Strongly φ-δ-S-primary.
pub fn strongly_phi_delta_s_primary(
    lat: &IdealLattice,
    p: Subset,
    phi: &IdealMap,
    delta: &IdealMap,
    s_set: Subset,
    mode: SMode,
) -> Result<Classification, ClassifyError> {
    if !lat.is_exact() {
        return Err(ClassifyError::Unsupported("the strongly variant needs an enumerated hyperideal lattice".into()));
    }
    check_preconditions(lat, p, s_set, mode)?;
    let i = resolve(lat, p)?;
    let cond = Condition { p, excluded: lat.ideal(phi.apply(i)), target: lat.ideal(delta.apply(i)) };
    Ok(classify_condition_strong(lat, &cond, s_set, mode))
}

/// Caches fixed-`s` searches for one lattice. The sweep asks the same
/// question many times across theorems.
#[derive(Debug)]
pub struct Classifier<'a> {
    lat: &'a IdealLattice,
    plain: HashMap<(u64, u64, u64, usize), Option<Refutation>>,
    strong: HashMap<(u64, u64, u64, usize), Option<IdealRefutation>>,
    strong_vacuous: HashMap<(u64, u64), bool>,
}

impl<'a> Classifier<'a> {
    pub fn new(lat: &'a IdealLattice) -> Self {
        Classifier { lat, plain: HashMap::new(), strong: HashMap::new(), strong_vacuous: HashMap::new() }
    }

    pub fn lattice(&self) -> &'a IdealLattice {
        self.lat
    }

    /// Refutation for a fixed `s`, memoized.
    pub fn refutation(&mut self, cond: &Condition, s: ElementId) -> Option<&Refutation> {
        let key = (cond.p.bits(), cond.excluded.bits(), cond.target.bits(), s.0);
        let lat = self.lat;
        self.plain.entry(key).or_insert_with(|| find_refutation(lat, cond, s)).as_ref()
    }

    pub fn holds_with(&mut self, cond: &Condition, s: ElementId) -> bool {
        is_vacuous(cond) || self.refutation(cond, s).is_none()
    }

    /// First `s` in `S` for which the condition holds.
    pub fn witness(&mut self, cond: &Condition, s_set: Subset) -> Option<ElementId> {
        s_set.iter().find(|&s| self.holds_with(cond, s))
    }

    pub fn classify(&mut self, cond: &Condition, s_set: Subset, mode: SMode) -> Classification {
        let ss = candidates(s_set, mode);
        if is_vacuous(cond) {
            return Classification {
                verdict: Verdict::Vacuous,
                witness_s: ss.first().copied(),
                refutations: Vec::new(),
                ideal_refutations: Vec::new(),
            };
        }
        let mut refutations = Vec::new();
        for s in ss {
            match self.refutation(cond, s) {
                None => {
                    return Classification {
                        verdict: Verdict::Holds,
                        witness_s: Some(s),
                        refutations: Vec::new(),
                        ideal_refutations: Vec::new(),
                    }
                }
                Some(r) => refutations.push(r.clone()),
            }
        }
        Classification { verdict: Verdict::Fails, witness_s: None, refutations, ideal_refutations: Vec::new() }
    }

    pub fn strong_refutation(&mut self, cond: &Condition, s: ElementId) -> Option<&IdealRefutation> {
        let key = (cond.p.bits(), cond.excluded.bits(), cond.target.bits(), s.0);
        let lat = self.lat;
        self.strong.entry(key).or_insert_with(|| find_ideal_refutation(lat, cond, s)).as_ref()
    }

    pub fn strong_vacuous(&mut self, cond: &Condition) -> bool {
        let lat = self.lat;
        *self.strong_vacuous.entry((cond.p.bits(), cond.excluded.bits())).or_insert_with(|| is_vacuous_strong(lat, cond))
    }

    pub fn strong_holds_with(&mut self, cond: &Condition, s: ElementId) -> bool {
        self.strong_vacuous(cond) || self.strong_refutation(cond, s).is_none()
    }

    pub fn strong_witness(&mut self, cond: &Condition, s_set: Subset) -> Option<ElementId> {
        s_set.iter().find(|&s| self.strong_holds_with(cond, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::maps::{DeltaId, PhiId};

    fn setup() -> IdealLattice {
        IdealLattice::new(&corpus::three_element_example()).unwrap()
    }

    #[test]
    fn phi1_is_vacuous_and_delta_k_holds() {
        let lat = setup();
        let one = Subset::singleton(3, lat.one());
        let p = lat.ideal(1);
        for d in DeltaId::ALL {
            let delta = d.materialize(&lat);
            let phi1 = PhiId::Phi1.materialize(&lat).unwrap();
            let c = phi_delta_s_primary(&lat, p, &phi1, &delta, one, SMode::Search).unwrap();
            assert_eq!(c.verdict, Verdict::Vacuous);
        }
        let phi0 = PhiId::Phi0.materialize(&lat).unwrap();
        let dk = DeltaId::DeltaK.materialize(&lat);
        let c = phi_delta_s_primary(&lat, lat.ideal(0), &phi0, &dk, one, SMode::Search).unwrap();
        assert!(c.holds());
        assert_eq!(c.witness_s, Some(lat.one()));
    }

    #[test]
    fn preconditions() {
        let lat = setup();
        let phi = PhiId::Phi0.materialize(&lat).unwrap();
        let delta = DeltaId::Delta0.materialize(&lat);
        let zero = Subset::singleton(3, lat.zero());
        let one = Subset::singleton(3, lat.one());
        assert_eq!(
            phi_delta_s_primary(&lat, lat.ideal(1), &phi, &delta, zero, SMode::Search).unwrap_err(),
            ClassifyError::NotDisjoint
        );
        assert_eq!(
            phi_delta_s_primary(&lat, lat.carrier(), &phi, &delta, one, SMode::Search).unwrap_err(),
            ClassifyError::NotProper
        );
        let u = Subset::singleton(3, ElementId(2));
        assert!(matches!(
            phi_delta_s_primary(&lat, lat.ideal(0), &phi, &delta, u, SMode::Search),
            Err(ClassifyError::NotMultiplicative(_))
        ));
    }

    #[test]
    fn zero_ideal_refuted_with_replayable_witness() {
        let lat = setup();
        let p = lat.ideal(0);
        let one = Subset::singleton(3, lat.one());
        let delta = DeltaId::Delta0.materialize(&lat);
        let c = delta_primary(&lat, p, &delta).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
        let r = &c.refutations[0];
        assert_eq!(r.tuple, vec![ElementId(2), ElementId(2)]);
        let cond = Condition { p, excluded: Subset::empty(3), target: p };
        assert!(replay(&lat, &cond, r));
        // the radical rescues it
        assert!(s_primary(&lat, p, one, SMode::Search).unwrap().holds());
    }

    #[test]
    fn prime_is_delta_primary() {
        let lat = setup();
        let delta = DeltaId::Delta0.materialize(&lat);
        assert_eq!(delta_primary(&lat, lat.ideal(1), &delta).unwrap().verdict, Verdict::Holds);
    }
}
