//! Exhaustive checks of the theorems about φ-δ-S-primary hyperideals.
//!
//! Each theorem `T01`..`T27` is a hypothesis filter and a conclusion over an
//! instance domain (structure, hyperideals, maps, multiplicative sets,
//! associated elements, auxiliary elements). [`Harness::run`] enumerates
//! every instance on the structures in scope. Violations keep their instance
//! key and can be re-evaluated with [`Harness::replay`].
//!
//! Conventions shared by all encodings:
//!
//! * "P is φ-δ-S-primary associated to s" means `P` proper, `P ∩ S = ∅`, and
//!   the condition holds with that `s`. Without a named `s` it means some
//!   `s ∈ S` works.
//! * δ-primary and φ-δ-primary use `s = 1` and no set `S`.
//! * "not δ-S-primary" means not δ-S-primary for any member of `S`, except
//!   in the product theorems where both sides name the same element.
//! * Instances range over proper `P` disjoint from `S`, all built-in maps
//!   (`sweep_reductions(n)` and the four expansions) and all multiplicative
//!   sets up to the configured size.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::classify::{find_ideal_refutation, find_refutation, is_vacuous_strong, Condition};
use crate::construct::{self, Homomorphism, Localization, Product};
use crate::corpus::{CorpusEntry, Member, Origin};
use crate::hyperring::FiniteHyperring;
use crate::lattice::IdealLattice;
use crate::maps::{sweep_reductions, DeltaId, IdealMap};
use crate::subset::{for_each_multiset, ElementId, Subset};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// `T01`..`T27`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremId(u8);

impl TheoremId {
    pub const COUNT: u8 = 27;

    pub fn new(k: u8) -> Option<Self> {
        (1..=Self::COUNT).contains(&k).then_some(TheoremId(k))
    }

    pub fn all() -> Vec<TheoremId> {
        (1..=Self::COUNT).map(TheoremId).collect()
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn statement(self) -> &'static str {
        STATEMENTS[self.0 as usize - 1]
    }

    fn scope(self) -> Scope {
        match self.0 {
            13 | 23 | 24 => Scope::Table,
            14..=22 => Scope::Exact,
            25..=27 => Scope::Product,
            _ => Scope::Lattice,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:02}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown theorem id {0:?} (expected T01..T27)")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, UnknownTheorem> {
        s.strip_prefix(['T', 't'])
            .and_then(|d| d.parse::<u8>().ok())
            .and_then(TheoremId::new)
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

const STATEMENTS: [&str; 27] = [
    "rad(φ(P)) ⊆ φ(rad P) and rad(δ(P)) ⊆ δ(rad P): if P is φ-δ-S-primary with s, so is rad(P)",
    "rad(φ(P)) ⊆ φ(rad P): if P is φ-S-primary with s, rad(P) is φ-S-prime with s",
    "P φ-S-primary with s, rad(φ(P)) ⊆ φ(rad P), (φ(rad P):t) ⊆ (φ(rad P):s) for t ∈ S: u ∉ (rad P:s) implies (rad P:u) ∩ S = ∅",
    "P φ-δ-S-primary with s, (δ(P):s) = (rad P:s), (φ(rad P):t) ⊆ (φ(rad P):s), δ(P) ⊆ rad P: (δ(P):s) = (δ(P):s^n) and u ∉ (δ(P):s) implies (δ(P):u) ∩ S = ∅",
    "P φ-δ-S-primary with s, u ∉ (δ(P):s^n): (P:su) = (φ(P):su) or (P:su) = (P:s)",
    "P φ-S-primary with s, u ∉ (rad P:s): (P:su) = (φ(P):su) or (P:su) = (P:s)",
    "P φ-δ-S-primary with s and (φ(P):v) ⊆ φ(P:v) for all v ∉ P: (P:u) is φ-δ-S-primary with s",
    "P φ-δ-S-primary with s, φ constant, Q ∩ S ≠ ∅, δ(P ∩ Q) = δ(P) ∩ δ(Q): P ∩ Q is φ-δ-S-primary",
    "P φ-δ-S-primary with s, φ constant, P_j ∩ S ≠ ∅, δ(g(P_1..P_{n-1},P)) = ∩δ(P_j) ∩ δ(P): g(P_1..P_{n-1},P) is φ-δ-S-primary",
    "φ = φ²: every φ-δ-S-primary is δ-primary iff every φ(P) is δ-primary and every δ-S-primary is δ-primary",
    "every weakly S-primary is primary iff K is a hyperintegral domain and every S-primary is primary",
    "S ⊆ T with s' for each t ∈ T such that g(t^(n-1),s') ∈ S: φ-δ-T-primary implies φ-δ-S-primary",
    "1 ∈ S: φ-δ-S-primary iff φ-δ-S'-primary, S' = {a : a/1 invertible in S⁻¹K}",
    "P strongly with s, g(u) ∈ φ(P) and both consequents fail in every slot: g(remaining u, P^(r)) ⊆ φ(P)",
    "P strongly with s and not δ-S-primary: g(P^(n)) ⊆ φ(P)",
    "P strongly with s and not δ-S-primary: rad(P) = rad(φ(P))",
    "1 ∈ S, P strongly with s: P ⊆ rad(φ(P)) or g(s, rad(φ(P))) ⊆ δ(P)",
    "P strongly with s iff (P:u) = (φ(P):u) or (P:u) ⊆ (P:s) for every u ∉ (δ(P):s)",
    "P strongly with s iff (P:u) = (φ(P):u) or (P:u) ⊆ (δ(P):s) for every u ∉ (P:s)",
    "P strongly with s, Q ⊄ P, (δ(P):Q) ⊆ δ(P:Q), (φ(P):Q) ⊆ φ(P:Q): (P:Q) is φ-δ-S-primary with s",
    "1 ∈ S, P strongly with s, not δ-S-primary, (P:s) = (δ(P):s): g(g(s, rad φ(P)), P^(n-1)) ⊆ φ(P)",
    "1 ∈ S, P and Q strongly with s, neither δ-S-primary, (P:s) = (δ(P):s), (Q:s) = (δ(Q):s), φ(Q) ⊆ φ(P): g(g(s,Q), P^(n-1)) ⊆ φ(P)",
    "fraction conditions, φ(P) = (φ(P):s), (φ(P):t) ⊆ (φ(P):s): four characterizations of φ-δ-S-primary agree",
    "k a compatible nonzero epimorphism, 1 ∈ S: P2 ψ-γ-k(S)-primary with k(s) implies k⁻¹(P2) φ-δ-S-primary with s",
    "φ2(K2) ≠ K2: P1 × K2 is φ̂-δ̂-primary iff P1 is δ1-S1-primary and P1 × K2 is δ̂-primary",
    "P1 × K2 φ̂-δ̂-primary but not δ̂-primary iff φ2(K2) = K2 and P1 φ1-δ1-primary but not δ1-primary",
    "φ_j(P_j) ≠ P_j, δ_j(P_j) ≠ K_j for proper P_j: P1 × P2 φ̂-δ̂-primary iff factor condition iff δ̂-primary",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scope {
    /// Any structure with a hyperideal lattice, including witness models.
    Lattice,
    /// An enumerated lattice (the strongly variant).
    Exact,
    /// Tabular structures (fractions, homomorphisms).
    Table,
    /// Products whose factors are in scope.
    Product,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Tabular structures above this size are skipped.
    pub max_size: usize,
    /// Largest multiplicative set.
    pub max_mulset: usize,
    /// Candidate-map cap for the epimorphism search.
    pub max_epimorphism_maps: u64,
    /// Stop after this many instances.
    pub instance_budget: Option<u64>,
    /// Stop after this much wall time.
    pub time_budget: Option<Duration>,
    /// Violations kept per theorem (all are counted).
    pub max_witnesses: usize,
    /// Record wall times in the report.
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_size: 6,
            max_mulset: 4,
            max_epimorphism_maps: 1 << 16,
            instance_budget: None,
            time_budget: None,
            max_witnesses: 20,
            timing: true,
        }
    }
}

/// Everything needed to re-evaluate one instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceKey {
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub ideals: Vec<usize>,
    pub phi: Option<usize>,
    pub delta: Option<usize>,
    pub phi2: Option<usize>,
    pub delta2: Option<usize>,
    pub s_set: Option<Subset>,
    pub t_set: Option<Subset>,
    pub s: Option<ElementId>,
    pub s2: Option<ElementId>,
    pub u: Option<ElementId>,
    pub tuple: Vec<ElementId>,
    pub epi: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub theorem: String,
    pub structure: String,
    /// Instance fields by name, with element names.
    pub instance: BTreeMap<&'static str, String>,
    pub detail: String,
    #[serde(skip)]
    pub key: InstanceKey,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub statement: &'static str,
    pub structures: usize,
    pub total: u64,
    pub hypothesis_met: u64,
    /// Hypothesis met but the conclusion is outside the notion's setting
    /// (for example a colon hyperideal meeting `S`).
    pub filtered: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub partial: bool,
}

impl TheoremReport {
    fn new(id: TheoremId) -> Self {
        TheoremReport {
            id: id.to_string(),
            statement: id.statement(),
            structures: 0,
            total: 0,
            hypothesis_met: 0,
            filtered: 0,
            violation_count: 0,
            violations: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: None,
            partial: false,
        }
    }

    pub fn confirmed(&self) -> bool {
        self.violation_count == 0 && !self.partial
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub name: String,
    pub size: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub format_version: u32,
    pub structures: Vec<String>,
    pub skipped: Vec<Skipped>,
    pub theorems: Vec<TheoremReport>,
    /// Theorems whose hypotheses were never met on the swept corpus.
    pub unsatisfied: Vec<String>,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SweepReport {
    pub fn violation_count(&self) -> u64 {
        self.theorems.iter().map(|t| t.violation_count).sum()
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    NotMet,
    Filtered,
    Holds,
    Violated(String),
}

struct ProductInfo {
    prod: Product,
    left: usize,
    right: usize,
}

struct Prepared {
    name: String,
    table: Option<FiniteHyperring>,
    lat: IdealLattice,
    phis: Vec<IdealMap>,
    deltas: Vec<IdealMap>,
    mulsets: Vec<Subset>,
    product: Option<ProductInfo>,
}

impl Prepared {
    fn ename(&self, e: ElementId) -> String {
        self.lat.names()[e.0].clone()
    }

    fn set(&self, s: Subset) -> String {
        self.lat.describe(s)
    }

    fn idl(&self, i: usize) -> Subset {
        self.lat.ideal(i)
    }

    fn n(&self) -> usize {
        self.lat.n()
    }

    fn one(&self) -> ElementId {
        self.lat.one()
    }

    fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.lat.size()).map(ElementId)
    }

    fn proper(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.lat.len()).filter(|&i| self.lat.is_proper(i))
    }

    /// `g(s^n)`.
    fn power_n(&self, s: ElementId) -> ElementId {
        self.lat.product(&vec![s; self.n()])
    }

    fn colon_set(&self, i: usize, u: ElementId) -> Subset {
        self.idl(self.lat.colon(i, u))
    }
}

struct LocInfo {
    tag: usize,
    loc: Localization,
    lat: IdealLattice,
    phis: Vec<Option<IdealMap>>,
    deltas: Vec<Option<IdealMap>>,
    /// `{a : a/1 invertible}`.
    s_prime: Subset,
}

struct Epi {
    target: usize,
    hom: Homomorphism,
    label: String,
}

type MemoKey = (usize, u64, u64, u64, usize);

#[derive(Default)]
struct Cache {
    plain: HashMap<MemoKey, bool>,
    strong: HashMap<MemoKey, bool>,
    locs: HashMap<(usize, u64), Option<Rc<LocInfo>>>,
    epis: HashMap<usize, Rc<(Vec<Epi>, Vec<String>)>>,
    next_tag: usize,
}

const LOC_TAG_BASE: usize = 1 << 20;

impl Cache {
    /// The condition `(P, E, D)` holds with `s` (vacuous counts).
    fn holds(&mut self, tag: usize, lat: &IdealLattice, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
        if p.is_subset(e) {
            return true;
        }
        *self.plain.entry((tag, p.bits(), e.bits(), d.bits(), s.0)).or_insert_with(|| {
            find_refutation(lat, &Condition { p, excluded: e, target: d }, s).is_none()
        })
    }

    fn strong(&mut self, tag: usize, lat: &IdealLattice, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
        *self.strong.entry((tag, p.bits(), e.bits(), d.bits(), s.0)).or_insert_with(|| {
            let cond = Condition { p, excluded: e, target: d };
            is_vacuous_strong(lat, &cond) || find_ideal_refutation(lat, &cond, s).is_none()
        })
    }

    fn localization(&mut self, prep: &[Prepared], si: usize, s_set: Subset) -> Option<Rc<LocInfo>> {
        let x = &prep[si];
        if let Some(hit) = self.locs.get(&(si, s_set.bits())) {
            return hit.clone();
        }
        let built = x.table.as_ref().and_then(|h| {
            let loc = construct::localize(h, s_set).ok()?;
            let lat = IdealLattice::new(&loc.structure).ok()?;
            let phis = x.phis.iter().map(|m| loc.localized_map(&x.lat, &lat, m).ok()).collect();
            let deltas = x.deltas.iter().map(|m| loc.localized_map(&x.lat, &lat, m).ok()).collect();
            let canon = loc.canonical_map();
            let s_prime =
                Subset::from_elements(canon.len(), x.elements().filter(|a| loc.structure.is_invertible(canon[a.0])));
            self.next_tag += 1;
            Some(Rc::new(LocInfo { tag: LOC_TAG_BASE + self.next_tag, loc, lat, phis, deltas, s_prime }))
        });
        self.locs.insert((si, s_set.bits()), built.clone());
        built
    }

    /// Epimorphisms from `si` onto tabular structures in scope, and notes
    /// about searches that hit the cap.
    fn epimorphisms(&mut self, prep: &[Prepared], si: usize, cap: u64) -> Rc<(Vec<Epi>, Vec<String>)> {
        if let Some(hit) = self.epis.get(&si) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let mut notes = Vec::new();
        if let Some(src) = &prep[si].table {
            for (ti, t) in prep.iter().enumerate() {
                let Some(tgt) = &t.table else { continue };
                if (tgt.m(), tgt.n()) != (src.m(), src.n()) || tgt.size() < 2 || tgt.size() > src.size() {
                    continue;
                }
                match construct::epimorphisms(src, tgt, cap) {
                    Some(list) => {
                        for hom in list {
                            let images: Vec<&str> = hom.map.iter().map(|&e| tgt.element_name(e)).collect();
                            let label = format!("{} -> {} [{}]", src.name(), tgt.name(), images.join(", "));
                            out.push(Epi { target: ti, hom, label });
                        }
                    }
                    None => notes.push(format!("epimorphism search {} -> {} exceeds the map cap", src.name(), tgt.name())),
                }
            }
        }
        let rc = Rc::new((out, notes));
        self.epis.insert(si, rc.clone());
        rc
    }
}

/// A prepared corpus plus evaluation caches.
pub struct Harness {
    prepared: Vec<Prepared>,
    skipped: Vec<Skipped>,
    cache: Cache,
    config: SweepConfig,
}

fn builtin_maps(lat: &IdealLattice) -> (Vec<IdealMap>, Vec<IdealMap>) {
    let phis = sweep_reductions(lat.n()).into_iter().filter_map(|id| id.materialize(lat).ok()).collect();
    let deltas = DeltaId::ALL.iter().map(|d| d.materialize(lat)).collect();
    (phis, deltas)
}

impl Harness {
    pub fn new(corpus: &[CorpusEntry], config: SweepConfig) -> Self {
        let mut prepared = Vec::new();
        let mut skipped = Vec::new();
        let mut slot = vec![None; corpus.len()];
        for (ci, entry) in corpus.iter().enumerate() {
            let (table, lat) = match &entry.member {
                Member::Table(h) => {
                    if h.size() > config.max_size {
                        skipped.push(Skipped {
                            name: entry.name.clone(),
                            size: h.size(),
                            reason: format!("more than {} elements", config.max_size),
                        });
                        continue;
                    }
                    match IdealLattice::new(h) {
                        Ok(lat) => (Some(h.clone()), lat),
                        Err(e) => {
                            skipped.push(Skipped { name: entry.name.clone(), size: h.size(), reason: e.to_string() });
                            continue;
                        }
                    }
                }
                Member::Valuation(lat) => (None, lat.clone()),
            };
            let (phis, deltas) = builtin_maps(&lat);
            let mulsets = lat.multiplicative_sets(config.max_mulset);
            let product = match entry.origin {
                Origin::Product(a, b) => match (slot[a], slot[b], &corpus[a].member, &corpus[b].member) {
                    (Some(l), Some(r), Member::Table(h1), Member::Table(h2)) => construct::direct_product(h1, h2)
                        .ok()
                        .map(|prod| ProductInfo { prod, left: l, right: r }),
                    _ => None,
                },
                _ => None,
            };
            slot[ci] = Some(prepared.len());
            prepared.push(Prepared { name: entry.name.clone(), table, lat, phis, deltas, mulsets, product });
        }
        Harness { prepared, skipped, cache: Cache::default(), config }
    }

    /// Names of the structures that will be swept.
    pub fn structures(&self) -> Vec<String> {
        self.prepared.iter().map(|p| p.name.clone()).collect()
    }

    pub fn skipped(&self) -> &[Skipped] {
        &self.skipped
    }

    fn applies(&self, id: TheoremId, si: usize) -> bool {
        let x = &self.prepared[si];
        match id.scope() {
            Scope::Lattice => true,
            Scope::Exact => x.lat.is_exact(),
            Scope::Table => x.table.is_some(),
            Scope::Product => x.product.as_ref().is_some_and(|p| factorwise(x, p, &self.prepared)),
        }
    }

    pub fn run(&mut self, ids: &[TheoremId]) -> SweepReport {
        let start = Instant::now();
        let mut reports: Vec<TheoremReport> = ids.iter().map(|&id| TheoremReport::new(id)).collect();
        let mut times = vec![Duration::ZERO; ids.len()];
        let mut spent = 0u64;
        let mut exhausted = false;
        'outer: for si in 0..self.prepared.len() {
            for (k, &id) in ids.iter().enumerate() {
                if !self.applies(id, si) {
                    continue;
                }
                let t0 = Instant::now();
                reports[k].structures += 1;
                let keys = self.keys(id, si, &mut reports[k]);
                for key in keys {
                    let over_count = self.config.instance_budget.is_some_and(|b| spent >= b);
                    let over_time = self.config.time_budget.is_some_and(|b| start.elapsed() >= b);
                    if over_count || over_time {
                        exhausted = true;
                        times[k] += t0.elapsed();
                        break 'outer;
                    }
                    spent += 1;
                    let outcome = self.eval(id, si, &key);
                    let r = &mut reports[k];
                    r.total += 1;
                    match outcome {
                        Outcome::NotMet => {}
                        Outcome::Filtered => {
                            r.hypothesis_met += 1;
                            r.filtered += 1;
                        }
                        Outcome::Holds => r.hypothesis_met += 1,
                        Outcome::Violated(detail) => {
                            r.hypothesis_met += 1;
                            r.violation_count += 1;
                            if r.violations.len() < self.config.max_witnesses {
                                r.violations.push(self.violation(id, si, key, detail));
                            }
                        }
                    }
                }
                times[k] += t0.elapsed();
            }
        }
        for (r, t) in reports.iter_mut().zip(&times) {
            r.partial = exhausted;
            if self.config.timing {
                r.wall_time_ms = Some(t.as_millis() as u64);
            }
            r.notes.sort();
            r.notes.dedup();
        }
        let unsatisfied = reports.iter().filter(|r| r.hypothesis_met == 0).map(|r| r.id.clone()).collect();
        SweepReport {
            format_version: REPORT_FORMAT_VERSION,
            structures: self.structures(),
            skipped: self.skipped.clone(),
            theorems: reports,
            unsatisfied,
            partial: exhausted,
            wall_time_ms: self.config.timing.then(|| start.elapsed().as_millis() as u64),
        }
    }

    /// Re-evaluates a reported violation; true when it still fails.
    pub fn replay(&mut self, v: &Violation) -> bool {
        let Ok(id) = v.theorem.parse::<TheoremId>() else { return false };
        let Some(si) = self.prepared.iter().position(|p| p.name == v.structure) else { return false };
        matches!(self.eval(id, si, &v.key), Outcome::Violated(_))
    }

    fn violation(&self, id: TheoremId, si: usize, key: InstanceKey, detail: String) -> Violation {
        Violation {
            theorem: id.to_string(),
            structure: self.prepared[si].name.clone(),
            instance: self.describe(id, si, &key),
            detail,
            key,
        }
    }

    fn describe(&self, id: TheoremId, si: usize, k: &InstanceKey) -> BTreeMap<&'static str, String> {
        let x = &self.prepared[si];
        let mut m = BTreeMap::new();
        if id.scope() == Scope::Product {
            let info = x.product.as_ref().expect("product theorem on a product");
            let (l, r) = (&self.prepared[info.left], &self.prepared[info.right]);
            if let Some(p) = k.p {
                m.insert("P1", l.set(l.idl(p)));
            }
            if let Some(q) = k.q {
                m.insert("P2", r.set(r.idl(q)));
            }
            for (name, i, side) in [("phi1", k.phi, l), ("phi2", k.phi2, r)] {
                if let Some(i) = i {
                    m.insert(name, side.phis[i].id().to_string());
                }
            }
            for (name, i, side) in [("delta1", k.delta, l), ("delta2", k.delta2, r)] {
                if let Some(i) = i {
                    m.insert(name, side.deltas[i].id().to_string());
                }
            }
            if let Some(s) = k.s_set {
                m.insert("S1", l.set(s));
            }
            if let Some(s) = k.t_set {
                m.insert("S2", r.set(s));
            }
            if let Some(s) = k.s {
                m.insert("s1", l.ename(s));
            }
            if let Some(s) = k.s2 {
                m.insert("s2", r.ename(s));
            }
            return m;
        }
        if let Some(e) = k.epi {
            let epis = self.cache.epis.get(&si).expect("epimorphisms computed before evaluation");
            let epi = &epis.0[e];
            m.insert("map", epi.label.clone());
            if let Some(p) = k.p {
                let t = &self.prepared[epi.target];
                m.insert("P2", t.set(t.idl(p)));
            }
        } else if let Some(p) = k.p {
            m.insert("P", x.set(x.idl(p)));
        }
        if let Some(q) = k.q {
            m.insert("Q", x.set(x.idl(q)));
        }
        if !k.ideals.is_empty() {
            let parts: Vec<String> = k.ideals.iter().map(|&i| x.set(x.idl(i))).collect();
            m.insert("ideals", parts.join(" "));
        }
        if let Some(i) = k.phi {
            m.insert("phi", x.phis[i].id().to_string());
        }
        if let Some(i) = k.delta {
            m.insert("delta", x.deltas[i].id().to_string());
        }
        if let Some(s) = k.s_set {
            m.insert("S", x.set(s));
        }
        if let Some(t) = k.t_set {
            m.insert("T", x.set(t));
        }
        if let Some(s) = k.s {
            m.insert("s", x.ename(s));
        }
        if let Some(u) = k.u {
            m.insert("u", x.ename(u));
        }
        if !k.tuple.is_empty() {
            let parts: Vec<String> = k.tuple.iter().map(|&e| x.ename(e)).collect();
            m.insert("tuple", format!("({})", parts.join(", ")));
        }
        m
    }

    // ---- enumeration ----

    fn keys(&mut self, id: TheoremId, si: usize, report: &mut TheoremReport) -> Vec<InstanceKey> {
        let x = &self.prepared[si];
        let n = id.number();
        match n {
            1 | 4 | 5 | 15 | 16 | 18 | 19 | 23 => base_keys(x, true, true, false),
            2 | 3 | 6 => base_keys(x, true, false, false),
            17 | 21 => base_keys(x, true, true, true),
            7 => expand(base_keys(x, true, true, false), |k, out| {
                let p = x.idl(k.p.unwrap());
                for u in x.elements().filter(|&u| !p.contains(u)) {
                    out.push(InstanceKey { u: Some(u), ..k.clone() });
                }
            }),
            8 => expand(base_keys(x, true, true, false), |k, out| {
                for q in 0..x.lat.len() {
                    if !x.idl(q).is_disjoint(k.s_set.unwrap()) {
                        out.push(InstanceKey { q: Some(q), ..k.clone() });
                    }
                }
            }),
            9 => expand(base_keys(x, true, true, false), |k, out| {
                let meeting: Vec<usize> =
                    (0..x.lat.len()).filter(|&q| !x.idl(q).is_disjoint(k.s_set.unwrap())).collect();
                for_each_multiset(meeting.len(), x.n() - 1, |t| {
                    out.push(InstanceKey { ideals: t.iter().map(|&j| meeting[j]).collect(), ..k.clone() });
                    true
                });
            }),
            10 => {
                let mut out = Vec::new();
                for (pi, _) in x.phis.iter().enumerate() {
                    for di in 0..x.deltas.len() {
                        for &s in &x.mulsets {
                            out.push(InstanceKey { phi: Some(pi), delta: Some(di), s_set: Some(s), ..Default::default() });
                        }
                    }
                }
                out
            }
            11 => x.mulsets.iter().map(|&s| InstanceKey { s_set: Some(s), ..Default::default() }).collect(),
            12 => expand(base_keys(x, true, true, false), |k, out| {
                let t = k.s_set.unwrap();
                for &s in x.mulsets.iter().filter(|&&s| s != t && s.is_subset(t)) {
                    out.push(InstanceKey { s_set: Some(s), t_set: Some(t), ..k.clone() });
                }
            }),
            13 => {
                let mut out = Vec::new();
                for p in x.proper() {
                    for &s in x.mulsets.iter().filter(|s| s.contains(x.one()) && s.is_disjoint(x.idl(p))) {
                        for pi in 0..x.phis.len() {
                            for di in 0..x.deltas.len() {
                                out.push(InstanceKey {
                                    p: Some(p),
                                    phi: Some(pi),
                                    delta: Some(di),
                                    s_set: Some(s),
                                    ..Default::default()
                                });
                            }
                        }
                    }
                }
                out
            }
            14 => expand(base_keys(x, true, true, false), |k, out| {
                for_each_multiset(x.lat.size(), x.n(), |t| {
                    out.push(InstanceKey { tuple: t.iter().map(|&e| ElementId(e)).collect(), ..k.clone() });
                    true
                });
            }),
            20 => expand(base_keys(x, true, true, false), |k, out| {
                let p = x.idl(k.p.unwrap());
                for q in (0..x.lat.len()).filter(|&q| !x.idl(q).is_subset(p)) {
                    out.push(InstanceKey { q: Some(q), ..k.clone() });
                }
            }),
            22 => expand(base_keys(x, true, true, true), |k, out| {
                let s_set = k.s_set.unwrap();
                for q in x.proper().filter(|&q| x.idl(q).is_disjoint(s_set)) {
                    out.push(InstanceKey { q: Some(q), ..k.clone() });
                }
            }),
            24 => {
                let prep = &self.prepared;
                let epis = self.cache.epimorphisms(prep, si, self.config.max_epimorphism_maps);
                report.notes.extend(epis.1.iter().cloned());
                if !epis.1.is_empty() {
                    report.partial = true;
                }
                let mut out = Vec::new();
                for (ei, epi) in epis.0.iter().enumerate() {
                    let t = &prep[epi.target];
                    for &s_set in x.mulsets.iter().filter(|s| s.contains(x.one())) {
                        let image = Subset::from_elements(t.lat.size(), s_set.iter().map(|e| epi.hom.apply(e)));
                        for p2 in t.proper().filter(|&p2| t.idl(p2).is_disjoint(image)) {
                            for pi in 0..x.phis.len() {
                                for di in 0..x.deltas.len() {
                                    for s in s_set.iter() {
                                        out.push(InstanceKey {
                                            epi: Some(ei),
                                            p: Some(p2),
                                            phi: Some(pi),
                                            delta: Some(di),
                                            s_set: Some(s_set),
                                            s: Some(s),
                                            ..Default::default()
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
                out
            }
            25..=27 => {
                let info = x.product.as_ref().expect("scope checked");
                let (l, r) = (&self.prepared[info.left], &self.prepared[info.right]);
                let mut out = Vec::new();
                let p2s: Vec<Option<usize>> =
                    if n == 27 { (0..r.lat.len()).map(Some).collect() } else { vec![None] };
                for p1 in 0..l.lat.len() {
                    for &p2 in &p2s {
                        let p1_proper = l.lat.is_proper(p1);
                        if n != 27 && !p1_proper {
                            continue;
                        }
                        if n == 27 && !p1_proper && !p2.is_some_and(|q| r.lat.is_proper(q)) {
                            continue;
                        }
                        for &s1 in &l.mulsets {
                            for &s2 in &r.mulsets {
                                let disjoint = l.idl(p1).is_disjoint(s1)
                                    || p2.is_some_and(|q| r.idl(q).is_disjoint(s2));
                                if !disjoint {
                                    continue;
                                }
                                for a in s1.iter() {
                                    for b in s2.iter() {
                                        for f1 in 0..l.phis.len() {
                                            for f2 in 0..r.phis.len() {
                                                for d1 in 0..l.deltas.len() {
                                                    for d2 in 0..r.deltas.len() {
                                                        out.push(InstanceKey {
                                                            p: Some(p1),
                                                            q: p2,
                                                            phi: Some(f1),
                                                            phi2: Some(f2),
                                                            delta: Some(d1),
                                                            delta2: Some(d2),
                                                            s_set: Some(s1),
                                                            t_set: Some(s2),
                                                            s: Some(a),
                                                            s2: Some(b),
                                                            ..Default::default()
                                                        });
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                out
            }
            _ => unreachable!("theorem ids are 1..=27"),
        }
    }

    // ---- evaluation ----

    fn eval(&mut self, id: TheoremId, si: usize, k: &InstanceKey) -> Outcome {
        let mut ev = Eval { prep: &self.prepared, cache: &mut self.cache, si };
        match id.number() {
            1 => ev.t01(k),
            2 => ev.t02(k),
            3 => ev.t03(k),
            4 => ev.t04(k),
            5 => ev.t05(k),
            6 => ev.t06(k),
            7 => ev.t07(k),
            8 => ev.t08(k),
            9 => ev.t09(k),
            10 => ev.t10(k),
            11 => ev.t11(k),
            12 => ev.t12(k),
            13 => ev.t13(k),
            14 => ev.t14(k),
            15 => ev.t15_16(k, false),
            16 => ev.t15_16(k, true),
            17 => ev.t17(k),
            18 => ev.t18_19(k, false),
            19 => ev.t18_19(k, true),
            20 => ev.t20(k),
            21 => ev.t21(k),
            22 => ev.t22(k),
            23 => ev.t23(k),
            24 => ev.t24(k),
            25 => ev.t25(k),
            26 => ev.t26(k),
            27 => ev.t27(k),
            _ => unreachable!("theorem ids are 1..=27"),
        }
    }
}

fn factorwise(x: &Prepared, info: &ProductInfo, prep: &[Prepared]) -> bool {
    let (l, r) = (&prep[info.left], &prep[info.right]);
    x.lat.ideals().iter().all(|&i| {
        info.prod.factor(i).is_some_and(|(a, b)| l.lat.index_of(a).is_some() && r.lat.index_of(b).is_some())
    }) && x.lat.len() == l.lat.len() * r.lat.len()
}

/// `(P, φ?, δ?, S, s)` over proper `P`, sets `S` disjoint from `P`, `s ∈ S`.
fn base_keys(x: &Prepared, with_phi: bool, with_delta: bool, need_one: bool) -> Vec<InstanceKey> {
    let phis: Vec<Option<usize>> = if with_phi { (0..x.phis.len()).map(Some).collect() } else { vec![None] };
    let deltas: Vec<Option<usize>> = if with_delta { (0..x.deltas.len()).map(Some).collect() } else { vec![None] };
    let mut out = Vec::new();
    for p in x.proper() {
        for &s_set in x.mulsets.iter().filter(|s| s.is_disjoint(x.idl(p)) && (!need_one || s.contains(x.one()))) {
            for s in s_set.iter() {
                for &phi in &phis {
                    for &delta in &deltas {
                        out.push(InstanceKey {
                            p: Some(p),
                            phi,
                            delta,
                            s_set: Some(s_set),
                            s: Some(s),
                            ..Default::default()
                        });
                    }
                }
            }
        }
    }
    out
}

fn expand(keys: Vec<InstanceKey>, mut f: impl FnMut(&InstanceKey, &mut Vec<InstanceKey>)) -> Vec<InstanceKey> {
    let mut out = Vec::new();
    for k in &keys {
        f(k, &mut out);
    }
    out
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Violated(detail())
    }
}

struct Eval<'a> {
    prep: &'a [Prepared],
    cache: &'a mut Cache,
    si: usize,
}

impl<'a> Eval<'a> {
    fn x(&self) -> &'a Prepared {
        &self.prep[self.si]
    }

    /// Condition `(P, E, D)` with `s` on the structure under test.
    fn holds(&mut self, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
        let x = self.x();
        self.cache.holds(self.si, &x.lat, p, e, d, s)
    }

    fn holds_on(&mut self, at: usize, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
        let lat = &self.prep[at].lat;
        self.cache.holds(at, lat, p, e, d, s)
    }

    fn strong(&mut self, p: Subset, e: Subset, d: Subset, s: ElementId) -> bool {
        let x = self.x();
        self.cache.strong(self.si, &x.lat, p, e, d, s)
    }

    /// `P` proper, disjoint from `S`, and the condition holds with `s`.
    fn primary(&mut self, p: Subset, e: Subset, d: Subset, s_set: Subset, s: ElementId) -> bool {
        !p.is_full() && p.is_disjoint(s_set) && self.holds(p, e, d, s)
    }

    fn primary_some(&mut self, p: Subset, e: Subset, d: Subset, s_set: Subset) -> Option<ElementId> {
        if p.is_full() || !p.is_disjoint(s_set) {
            return None;
        }
        s_set.iter().find(|&s| self.holds(p, e, d, s))
    }

    /// φ-δ-S-primary with `s`, by lattice index and map indices.
    fn pds(&mut self, i: usize, phi: usize, delta: usize, s_set: Subset, s: ElementId) -> bool {
        let x = self.x();
        self.primary(x.idl(i), x.idl(x.phis[phi].apply(i)), x.idl(x.deltas[delta].apply(i)), s_set, s)
    }

    fn pds_some(&mut self, i: usize, phi: usize, delta: usize, s_set: Subset) -> Option<ElementId> {
        let x = self.x();
        self.primary_some(x.idl(i), x.idl(x.phis[phi].apply(i)), x.idl(x.deltas[delta].apply(i)), s_set)
    }

    /// δ-S-primary for some member of `S`.
    fn ds_some(&mut self, i: usize, delta: usize, s_set: Subset) -> bool {
        let x = self.x();
        let empty = Subset::empty(x.lat.size());
        self.primary_some(x.idl(i), empty, x.idl(x.deltas[delta].apply(i)), s_set).is_some()
    }

    /// Strongly φ-δ-S-primary with `s`.
    fn strongly(&mut self, i: usize, phi: usize, delta: usize, s_set: Subset, s: ElementId) -> bool {
        let x = self.x();
        let p = x.idl(i);
        !p.is_full()
            && p.is_disjoint(s_set)
            && self.strong(p, x.idl(x.phis[phi].apply(i)), x.idl(x.deltas[delta].apply(i)), s)
    }

    fn rad(&self, i: usize) -> usize {
        self.x().lat.radical_by_primes(i)
    }

    fn unpack(&self, k: &InstanceKey) -> (usize, usize, usize, Subset, ElementId) {
        (k.p.unwrap(), k.phi.unwrap_or(0), k.delta.unwrap_or(0), k.s_set.unwrap(), k.s.unwrap())
    }

    fn t01(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let (phi, delta) = (&x.phis[f], &x.deltas[d]);
        let r = self.rad(p);
        let hyp = x.idl(self.rad(phi.apply(p))).is_subset(x.idl(phi.apply(r)))
            && x.idl(self.rad(delta.apply(p))).is_subset(x.idl(delta.apply(r)))
            && self.pds(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        check(self.pds(r, f, d, ss, s), || format!("rad(P) = {} is not φ-δ-S-primary with s", x.set(x.idl(r))))
    }

    fn t02(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, _, ss, s) = self.unpack(k);
        let phi = &x.phis[f];
        let r = self.rad(p);
        let hyp = x.idl(self.rad(phi.apply(p))).is_subset(x.idl(phi.apply(r)))
            && self.primary(x.idl(p), x.idl(phi.apply(p)), x.idl(r), ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        let rs = x.idl(r);
        check(self.primary(rs, x.idl(phi.apply(r)), rs, ss, s), || {
            format!("rad(P) = {} is not φ-S-prime with s", x.set(rs))
        })
    }

    fn t03(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, _, ss, s) = self.unpack(k);
        let phi = &x.phis[f];
        let r = self.rad(p);
        let fr = phi.apply(r);
        let hyp = x.idl(self.rad(phi.apply(p))).is_subset(x.idl(fr))
            && ss.iter().all(|t| x.colon_set(fr, t).is_subset(x.colon_set(fr, s)))
            && self.primary(x.idl(p), x.idl(phi.apply(p)), x.idl(r), ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        let rs_colon = x.colon_set(r, s);
        let bad = x.elements().find(|&u| !rs_colon.contains(u) && !x.colon_set(r, u).is_disjoint(ss));
        check(bad.is_none(), || {
            let u = bad.unwrap();
            format!("u = {}: (rad P : u) = {} meets S", x.ename(u), x.set(x.colon_set(r, u)))
        })
    }

    fn t04(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let (phi, delta) = (&x.phis[f], &x.deltas[d]);
        let r = self.rad(p);
        let fr = phi.apply(r);
        let dp = delta.apply(p);
        let hyp = x.colon_set(dp, s) == x.colon_set(r, s)
            && ss.iter().all(|t| x.colon_set(fr, t).is_subset(x.colon_set(fr, s)))
            && x.idl(dp).is_subset(x.idl(r))
            && self.pds(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        let sn = x.power_n(s);
        if x.colon_set(dp, s) != x.colon_set(dp, sn) {
            return Outcome::Violated(format!(
                "(δ(P):s) = {} but (δ(P):s^n) = {}",
                x.set(x.colon_set(dp, s)),
                x.set(x.colon_set(dp, sn))
            ));
        }
        let ds = x.colon_set(dp, s);
        let bad = x.elements().find(|&u| !ds.contains(u) && !x.colon_set(dp, u).is_disjoint(ss));
        check(bad.is_none(), || {
            let u = bad.unwrap();
            format!("u = {}: (δ(P):u) = {} meets S", x.ename(u), x.set(x.colon_set(dp, u)))
        })
    }

    /// First `u` outside `avoid` where `(P:su)` is neither `(φ(P):su)` nor `(P:s)`.
    fn colon_dichotomy(&self, p: usize, fp: usize, s: ElementId, avoid: Subset) -> Option<String> {
        let x = self.x();
        let ps = x.colon_set(p, s);
        x.elements().filter(|&u| !avoid.contains(u)).find_map(|u| {
            let w = x.lat.mul(s, u);
            let (a, b) = (x.colon_set(p, w), x.colon_set(fp, w));
            (a != b && a != ps).then(|| {
                format!(
                    "u = {}: (P:su) = {}, (φ(P):su) = {}, (P:s) = {}",
                    x.ename(u),
                    x.set(a),
                    x.set(b),
                    x.set(ps)
                )
            })
        })
    }

    fn t05(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        if !self.pds(p, f, d, ss, s) {
            return Outcome::NotMet;
        }
        let avoid = x.colon_set(x.deltas[d].apply(p), x.power_n(s));
        match self.colon_dichotomy(p, x.phis[f].apply(p), s, avoid) {
            None => Outcome::Holds,
            Some(w) => Outcome::Violated(w),
        }
    }

    fn t06(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, _, ss, s) = self.unpack(k);
        let r = self.rad(p);
        let fp = x.phis[f].apply(p);
        if !self.primary(x.idl(p), x.idl(fp), x.idl(r), ss, s) {
            return Outcome::NotMet;
        }
        match self.colon_dichotomy(p, fp, s, x.colon_set(r, s)) {
            None => Outcome::Holds,
            Some(w) => Outcome::Violated(w),
        }
    }

    fn t07(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let phi = &x.phis[f];
        let pset = x.idl(p);
        let fp = phi.apply(p);
        let hyp = x
            .elements()
            .filter(|&v| !pset.contains(v))
            .all(|v| x.colon_set(fp, v).is_subset(x.idl(phi.apply(x.lat.colon(p, v)))))
            && self.pds(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        let q = x.lat.colon(p, k.u.unwrap());
        if !x.lat.is_proper(q) || !x.idl(q).is_disjoint(ss) {
            return Outcome::Filtered;
        }
        check(self.pds(q, f, d, ss, s), || format!("(P:u) = {} is not φ-δ-S-primary with s", x.set(x.idl(q))))
    }

    fn phi_constant(&self, f: usize) -> bool {
        let t = self.x().phis[f].table();
        t.iter().all(|&v| v == t[0])
    }

    fn t08(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let q = k.q.unwrap();
        let delta = &x.deltas[d];
        let Some(pq) = x.lat.index_of(x.idl(p).intersection(x.idl(q))) else {
            return Outcome::Violated("P ∩ Q is not a hyperideal".into());
        };
        let hyp = self.phi_constant(f)
            && x.idl(delta.apply(pq)) == x.idl(delta.apply(p)).intersection(x.idl(delta.apply(q)))
            && self.pds(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        check(self.pds_some(pq, f, d, ss).is_some(), || {
            format!("P ∩ Q = {} is not φ-δ-S-primary for any s", x.set(x.idl(pq)))
        })
    }

    fn t09(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let delta = &x.deltas[d];
        let mut parts = k.ideals.clone();
        parts.push(p);
        let (j, _) = x.lat.ideal_product(&parts);
        let meet = parts.iter().fold(x.lat.carrier(), |acc, &i| acc.intersection(x.idl(delta.apply(i))));
        let hyp = self.phi_constant(f) && x.idl(delta.apply(j)) == meet && self.pds(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        check(self.pds_some(j, f, d, ss).is_some(), || {
            format!("g(P_1..P_(n-1), P) = {} is not φ-δ-S-primary for any s", x.set(x.idl(j)))
        })
    }

    fn t10(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (f, d, ss) = (k.phi.unwrap(), k.delta.unwrap(), k.s_set.unwrap());
        let (phi, delta) = (&x.phis[f], &x.deltas[d]);
        if !phi.is_idempotent() {
            return Outcome::NotMet;
        }
        let one = x.one();
        let empty = Subset::empty(x.lat.size());
        let proper: Vec<usize> = x.proper().collect();
        let delta_primary = |ev: &mut Self, i: usize| {
            let q = x.idl(i);
            !q.is_full() && ev.holds(q, empty, x.idl(delta.apply(i)), one)
        };
        let mut lhs_bad = None;
        for &p in &proper {
            if self.pds_some(p, f, d, ss).is_some() && !delta_primary(self, p) {
                lhs_bad = Some(p);
                break;
            }
        }
        let mut phi_bad = None;
        for &p in &proper {
            if !delta_primary(self, phi.apply(p)) {
                phi_bad = Some(p);
                break;
            }
        }
        let mut ds_bad = None;
        for &p in &proper {
            if self.ds_some(p, d, ss) && !delta_primary(self, p) {
                ds_bad = Some(p);
                break;
            }
        }
        let lhs = lhs_bad.is_none();
        let rhs = phi_bad.is_none() && ds_bad.is_none();
        check(lhs == rhs, || {
            let show = |i: Option<usize>| i.map_or("none".to_string(), |i| x.set(x.idl(i)));
            format!(
                "left side {lhs}, right side {rhs}; φ-δ-S-primary not δ-primary: {}; P with φ(P) not δ-primary: {}; δ-S-primary not δ-primary: {}",
                show(lhs_bad),
                show(phi_bad),
                show(ds_bad)
            )
        })
    }

    fn t11(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let ss = k.s_set.unwrap();
        let one = x.one();
        let zero = Subset::singleton(x.lat.size(), x.lat.zero());
        let empty = Subset::empty(x.lat.size());
        let mut weak_bad = None;
        let mut s_bad = None;
        for p in x.proper() {
            let (pset, r) = (x.idl(p), x.idl(self.rad(p)));
            let primary = self.holds(pset, empty, r, one);
            if primary {
                continue;
            }
            if weak_bad.is_none() && self.primary_some(pset, zero, r, ss).is_some() {
                weak_bad = Some(p);
            }
            if s_bad.is_none() && self.primary_some(pset, empty, r, ss).is_some() {
                s_bad = Some(p);
            }
        }
        let domain = x.lat.is_hyperintegral_domain();
        let lhs = weak_bad.is_none();
        let rhs = domain && s_bad.is_none();
        check(lhs == rhs, || {
            let show = |i: Option<usize>| i.map_or("none".to_string(), |i| x.set(x.idl(i)));
            format!(
                "left side {lhs}, right side {rhs}; hyperintegral domain: {domain}; weakly S-primary not primary: {}; S-primary not primary: {}",
                show(weak_bad),
                show(s_bad)
            )
        })
    }

    fn t12(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, t_set, s) = self.unpack(k);
        let ss = k.t_set.map(|_| k.s_set.unwrap()).unwrap();
        let t_set = k.t_set.unwrap_or(t_set);
        let n = x.n();
        let cond = t_set.iter().all(|t| {
            t_set.iter().any(|t2| {
                let mut args = vec![t; n - 1];
                args.push(t2);
                ss.contains(x.lat.product(&args))
            })
        });
        if !cond || !self.pds(p, f, d, t_set, s) {
            return Outcome::NotMet;
        }
        check(self.pds_some(p, f, d, ss).is_some(), || "P is not φ-δ-S-primary for any s ∈ S".into())
    }

    fn t13(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss) = (k.p.unwrap(), k.phi.unwrap(), k.delta.unwrap(), k.s_set.unwrap());
        let Some(loc) = self.cache.localization(self.prep, self.si, ss) else {
            return Outcome::Filtered;
        };
        let sp = loc.s_prime;
        if !sp.contains(x.one()) || !x.lat.is_multiplicative(sp) {
            return Outcome::Violated(format!("S' = {} is not a multiplicative set containing 1", x.set(sp)));
        }
        let lhs = self.pds_some(p, f, d, ss);
        let rhs = self.pds_some(p, f, d, sp);
        check(lhs.is_some() == rhs.is_some(), || {
            format!("S' = {}: with S {}, with S' {}", x.set(sp), lhs.is_some(), rhs.is_some())
        })
    }

    fn t14(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let (fp, dp) = (x.idl(x.phis[f].apply(p)), x.idl(x.deltas[d].apply(p)));
        let pset = x.idl(p);
        let u = &k.tuple;
        let n = u.len();
        if !fp.contains(x.lat.product(u)) {
            return Outcome::NotMet;
        }
        let both_fail = (0..n).all(|i| {
            let mut rest = u.clone();
            rest[i] = s;
            !pset.contains(x.lat.mul(s, u[i])) && !dp.contains(x.lat.product(&rest))
        });
        if !both_fail || !self.strongly(p, f, d, ss, s) {
            return Outcome::NotMet;
        }
        // every nonempty proper subset of positions replaced by copies of P
        for mask in 1u32..(1 << n) - 1 {
            let parts: Vec<Subset> = (0..n)
                .map(|i| if mask & (1 << i) != 0 { pset } else { Subset::singleton(x.lat.size(), u[i]) })
                .collect();
            let img = x.lat.product_raw(&parts);
            if !img.is_subset(fp) {
                let hatted: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                return Outcome::Violated(format!(
                    "positions {hatted:?} replaced by P give {} ⊄ φ(P) = {}",
                    x.set(img),
                    x.set(fp)
                ));
            }
        }
        Outcome::Holds
    }

    fn t15_16(&mut self, k: &InstanceKey, radical: bool) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        if !self.strongly(p, f, d, ss, s) || self.ds_some(p, d, ss) {
            return Outcome::NotMet;
        }
        let fp = x.phis[f].apply(p);
        if radical {
            let (a, b) = (self.rad(p), self.rad(fp));
            check(a == b, || format!("rad(P) = {}, rad(φ(P)) = {}", x.set(x.idl(a)), x.set(x.idl(b))))
        } else {
            let img = x.lat.product_raw(&vec![x.idl(p); x.n()]);
            check(img.is_subset(x.idl(fp)), || format!("g(P^(n)) = {} ⊄ φ(P) = {}", x.set(img), x.set(x.idl(fp))))
        }
    }

    fn t17(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        if !self.strongly(p, f, d, ss, s) {
            return Outcome::NotMet;
        }
        let rf = x.idl(self.rad(x.phis[f].apply(p)));
        let scaled = x.lat.scale(rf, s);
        let dp = x.idl(x.deltas[d].apply(p));
        check(x.idl(p).is_subset(rf) || scaled.is_subset(dp), || {
            format!("P ⊄ rad(φ(P)) = {} and s·rad(φ(P)) = {} ⊄ δ(P) = {}", x.set(rf), x.set(scaled), x.set(dp))
        })
    }

    fn t18_19(&mut self, k: &InstanceKey, variant: bool) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let fp = x.phis[f].apply(p);
        let dp = x.deltas[d].apply(p);
        let left = self.strongly(p, f, d, ss, s);
        let (avoid, bound) = if variant {
            (x.colon_set(p, s), x.colon_set(dp, s))
        } else {
            (x.colon_set(dp, s), x.colon_set(p, s))
        };
        let bad = x.elements().filter(|&u| !avoid.contains(u)).find(|&u| {
            let a = x.colon_set(p, u);
            a != x.colon_set(fp, u) && !a.is_subset(bound)
        });
        let right = bad.is_none();
        check(left == right, || match bad {
            Some(u) => format!("strongly {left}; colon condition fails at u = {}", x.ename(u)),
            None => format!("strongly {left}; colon condition holds"),
        })
    }

    fn t20(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let q = k.q.unwrap();
        let (phi, delta) = (&x.phis[f], &x.deltas[d]);
        let c = x.lat.colon_ideal(p, q);
        let hyp = x.idl(x.lat.colon_ideal(delta.apply(p), q)).is_subset(x.idl(delta.apply(c)))
            && x.idl(x.lat.colon_ideal(phi.apply(p), q)).is_subset(x.idl(phi.apply(c)))
            && self.strongly(p, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        if !x.idl(c).is_disjoint(ss) {
            return Outcome::Filtered;
        }
        check(self.pds(c, f, d, ss, s), || format!("(P:Q) = {} is not φ-δ-S-primary with s", x.set(x.idl(c))))
    }

    /// Strongly with `s`, not δ-S-primary, and `(P:s) = (δ(P):s)`.
    fn strong_non_delta(&mut self, p: usize, f: usize, d: usize, ss: Subset, s: ElementId) -> bool {
        let x = self.x();
        x.colon_set(p, s) == x.colon_set(x.deltas[d].apply(p), s)
            && self.strongly(p, f, d, ss, s)
            && !self.ds_some(p, d, ss)
    }

    fn t21(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        if !self.strong_non_delta(p, f, d, ss, s) {
            return Outcome::NotMet;
        }
        let fp = x.phis[f].apply(p);
        let mut parts = vec![x.lat.scale(x.idl(self.rad(fp)), s)];
        parts.extend(std::iter::repeat(x.idl(p)).take(x.n() - 1));
        let img = x.lat.product_raw(&parts);
        check(img.is_subset(x.idl(fp)), || format!("image {} ⊄ φ(P) = {}", x.set(img), x.set(x.idl(fp))))
    }

    fn t22(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let q = k.q.unwrap();
        let phi = &x.phis[f];
        let (fp, fq) = (phi.apply(p), phi.apply(q));
        let hyp = x.idl(fq).is_subset(x.idl(fp))
            && self.strong_non_delta(p, f, d, ss, s)
            && self.strong_non_delta(q, f, d, ss, s);
        if !hyp {
            return Outcome::NotMet;
        }
        let mut parts = vec![x.lat.scale(x.idl(q), s)];
        parts.extend(std::iter::repeat(x.idl(p)).take(x.n() - 1));
        let img = x.lat.product_raw(&parts);
        check(img.is_subset(x.idl(fp)), || format!("image {} ⊄ φ(P) = {}", x.set(img), x.set(x.idl(fp))))
    }

    fn t23(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p, f, d, ss, s) = self.unpack(k);
        let (phi, delta) = (&x.phis[f], &x.deltas[d]);
        let (fp, dp) = (phi.apply(p), delta.apply(p));
        // standing conditions on P and the maps
        let commutes = x.elements().all(|u| {
            let c = x.lat.colon(p, u);
            x.idl(phi.apply(c)) == x.colon_set(fp, u) && x.idl(delta.apply(c)) == x.colon_set(dp, u)
        });
        if !commutes
            || x.idl(fp) != x.colon_set(fp, s)
            || !ss.iter().all(|t| x.colon_set(fp, t).is_subset(x.colon_set(fp, s)))
        {
            return Outcome::NotMet;
        }
        let Some(loc) = self.cache.localization(self.prep, self.si, ss) else { return Outcome::NotMet };
        let (Some(phi_s), Some(delta_s)) = (&loc.phis[f], &loc.deltas[d]) else { return Outcome::NotMet };
        let Some(sp) = loc.lat.index_of(loc.loc.extend(x.idl(p))) else { return Outcome::NotMet };
        if loc.lat.is_proper(sp) && !loc.lat.is_proper(delta_s.apply(sp)) {
            return Outcome::NotMet;
        }
        let contracted = loc.loc.contract(loc.lat.ideal(sp));
        let Some(ci) = x.lat.index_of(contracted) else { return Outcome::NotMet };
        if x.idl(delta.apply(ci)) != loc.loc.contract(loc.loc.extend(x.idl(dp))) {
            return Outcome::NotMet;
        }
        let ps = x.lat.colon(p, s);
        let one = x.one();
        let i = self.pds(p, f, d, ss, s);
        let ii = x.lat.is_proper(ps) && self.holds(x.idl(ps), x.idl(phi.apply(ps)), x.idl(delta.apply(ps)), one);
        let prim_l = loc.lat.is_proper(sp)
            && self.cache.holds(
                loc.tag,
                &loc.lat,
                loc.lat.ideal(sp),
                loc.lat.ideal(phi_s.apply(sp)),
                loc.lat.ideal(delta_s.apply(sp)),
                loc.loc.structure.one(),
            );
        let iii = prim_l && ss.iter().all(|t| x.colon_set(p, t).is_subset(x.idl(ps)));
        let iv = prim_l && contracted == x.idl(ps);
        check(i == ii && ii == iii && iii == iv, || {
            format!("(i) {i}, (ii) {ii}, (iii) {iii}, (iv) {iv}; S⁻¹P = {}", loc.lat.describe(loc.lat.ideal(sp)))
        })
    }

    fn t24(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let (p2, f, d, ss, s) = self.unpack(k);
        let epis = self.cache.epis.get(&self.si).expect("computed during enumeration").clone();
        let epi = &epis.0[k.epi.unwrap()];
        let t = &self.prep[epi.target];
        let hom = &epi.hom;
        let compatible = hom
            .compatibility(&x.lat, &t.lat, &x.phis[f], &t.phis[f], &x.deltas[d], &t.deltas[d])
            .iter()
            .all(|c| c.holds());
        if !compatible {
            return Outcome::NotMet;
        }
        let image = Subset::from_elements(t.lat.size(), ss.iter().map(|e| hom.apply(e)));
        let q = t.idl(p2);
        let hyp = !q.is_full()
            && q.is_disjoint(image)
            && self.holds_on(epi.target, q, t.idl(t.phis[f].apply(p2)), t.idl(t.deltas[d].apply(p2)), hom.apply(s));
        if !hyp {
            return Outcome::NotMet;
        }
        let Some(pre) = x.lat.index_of(hom.preimage(q)) else {
            return Outcome::Violated("preimage is not a hyperideal".into());
        };
        check(self.pds(pre, f, d, ss, s), || format!("k⁻¹(P2) = {} is not φ-δ-S-primary with s", x.set(x.idl(pre))))
    }

    /// Product-side sets for `P1 × P2` (`P2 = K2` when absent).
    fn product_sets(&self, k: &InstanceKey) -> ProductSets {
        let x = self.x();
        let info = x.product.as_ref().expect("scope checked");
        let (l, r) = (&self.prep[info.left], &self.prep[info.right]);
        let p1 = k.p.unwrap();
        let p2 = k.q.unwrap_or_else(|| r.lat.full_index());
        let (f1, f2, d1, d2) = (&l.phis[k.phi.unwrap()], &r.phis[k.phi2.unwrap()], &l.deltas[k.delta.unwrap()], &r.deltas[k.delta2.unwrap()]);
        let rect = |a: Subset, b: Subset| info.prod.rect(a, b);
        ProductSets {
            p: rect(l.idl(p1), r.idl(p2)),
            phi_hat: rect(l.idl(f1.apply(p1)), r.idl(f2.apply(p2))),
            delta_hat: rect(l.idl(d1.apply(p1)), r.idl(d2.apply(p2))),
            s_set: rect(k.s_set.unwrap(), k.t_set.unwrap()),
            s: info.prod.pair(k.s.unwrap(), k.s2.unwrap()),
            p1,
            p2,
        }
    }

    /// δ_j-S_j-primary with `s_j` on a factor.
    fn factor_ds(&mut self, at: usize, i: usize, delta: usize, s_set: Subset, s: ElementId) -> bool {
        let f = &self.prep[at];
        let p = f.idl(i);
        !p.is_full()
            && p.is_disjoint(s_set)
            && self.holds_on(at, p, Subset::empty(f.lat.size()), f.idl(f.deltas[delta].apply(i)), s)
    }

    fn t25(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let info = x.product.as_ref().expect("scope checked");
        let (left, right) = (info.left, info.right);
        let r = &self.prep[right];
        let f2 = &r.phis[k.phi2.unwrap()];
        if !r.lat.is_proper(f2.apply(r.lat.full_index())) && f2.apply(r.lat.full_index()) == r.lat.full_index() {
            return Outcome::NotMet;
        }
        let ps = self.product_sets(k);
        let empty = Subset::empty(x.lat.size());
        let lhs = self.primary(ps.p, ps.phi_hat, ps.delta_hat, ps.s_set, ps.s);
        let rhs = self.factor_ds(left, ps.p1, k.delta.unwrap(), k.s_set.unwrap(), k.s.unwrap())
            && self.primary(ps.p, empty, ps.delta_hat, ps.s_set, ps.s);
        check(lhs == rhs, || format!("P1 × K2 φ̂-δ̂-primary {lhs}; factor side {rhs}"))
    }

    fn t26(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let info = x.product.as_ref().expect("scope checked");
        let (left, right) = (info.left, info.right);
        let (l, r) = (&self.prep[left], &self.prep[right]);
        let ps = self.product_sets(k);
        let empty = Subset::empty(x.lat.size());
        let lhs = self.primary(ps.p, ps.phi_hat, ps.delta_hat, ps.s_set, ps.s)
            && !self.primary(ps.p, empty, ps.delta_hat, ps.s_set, ps.s);
        let (s1, a) = (k.s_set.unwrap(), k.s.unwrap());
        let f1 = &l.phis[k.phi.unwrap()];
        let d1 = &l.deltas[k.delta.unwrap()];
        let full2 = r.lat.full_index();
        let phi2_full = r.phis[k.phi2.unwrap()].apply(full2) == full2;
        let p1 = ps.p1;
        let p1_set = l.idl(p1);
        let factor = !p1_set.is_full()
            && p1_set.is_disjoint(s1)
            && self.holds_on(left, p1_set, l.idl(f1.apply(p1)), l.idl(d1.apply(p1)), a)
            && !self.factor_ds(left, p1, k.delta.unwrap(), s1, a);
        let rhs = phi2_full && !ps.phi_hat.is_empty() && factor;
        check(lhs == rhs, || format!("product side {lhs}; φ2(K2) = K2 {phi2_full}, factor side {factor}"))
    }

    fn t27(&mut self, k: &InstanceKey) -> Outcome {
        let x = self.x();
        let info = x.product.as_ref().expect("scope checked");
        let (left, right) = (info.left, info.right);
        let (l, r) = (&self.prep[left], &self.prep[right]);
        let ps = self.product_sets(k);
        let (p1, p2) = (ps.p1, ps.p2);
        let (f1, f2) = (&l.phis[k.phi.unwrap()], &r.phis[k.phi2.unwrap()]);
        let (d1, d2) = (&l.deltas[k.delta.unwrap()], &r.deltas[k.delta2.unwrap()]);
        let hyp = f1.apply(p1) != p1
            && f2.apply(p2) != p2
            && (!l.lat.is_proper(p1) || l.lat.is_proper(d1.apply(p1)))
            && (!r.lat.is_proper(p2) || r.lat.is_proper(d2.apply(p2)))
            && !ps.p.is_full()
            && ps.p.is_disjoint(ps.s_set);
        if !hyp {
            return Outcome::NotMet;
        }
        let empty = Subset::empty(x.lat.size());
        let i = self.holds(ps.p, ps.phi_hat, ps.delta_hat, ps.s);
        let iii = self.holds(ps.p, empty, ps.delta_hat, ps.s);
        let (s1, s2, a, b) = (k.s_set.unwrap(), k.t_set.unwrap(), k.s.unwrap(), k.s2.unwrap());
        let ds1 = self.factor_ds(left, p1, k.delta.unwrap(), s1, a);
        let ds2 = self.factor_ds(right, p2, k.delta2.unwrap(), s2, b);
        let (full1, full2) = (!l.lat.is_proper(p1), !r.lat.is_proper(p2));
        let ii = (ds2 && full1)
            || (ds2 && l.idl(p1).contains(a))
            || (ds1 && full2)
            || (ds1 && r.idl(p2).contains(b));
        check(i == ii && ii == iii, || format!("(i) {i}, (ii) {ii}, (iii) {iii}"))
    }
}

struct ProductSets {
    p: Subset,
    phi_hat: Subset,
    delta_hat: Subset,
    s_set: Subset,
    s: ElementId,
    p1: usize,
    p2: usize,
}

/// Sweeps the given theorems (all when empty) over the corpus.
pub fn run_all(corpus: &[CorpusEntry], config: SweepConfig, ids: &[TheoremId]) -> SweepReport {
    let ids = if ids.is_empty() { TheoremId::all() } else { ids.to_vec() };
    Harness::new(corpus, config).run(&ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn small() -> Vec<CorpusEntry> {
        corpus::standard_corpus().into_iter().filter(|e| e.size() <= 4 && e.origin != Origin::Witness).collect()
    }

    #[test]
    fn ids_parse_and_print() {
        assert_eq!("T07".parse::<TheoremId>().unwrap().to_string(), "T07");
        assert_eq!("t7".parse::<TheoremId>().unwrap().number(), 7);
        assert!("T28".parse::<TheoremId>().is_err());
        assert!("X01".parse::<TheoremId>().is_err());
        assert_eq!(TheoremId::all().len(), 27);
    }

    #[test]
    fn t15_has_no_violations_on_small_structures() {
        let id = TheoremId::new(15).unwrap();
        let report = run_all(&small(), SweepConfig::default(), &[id]);
        let t = &report.theorems[0];
        assert_eq!(t.violation_count, 0);
        assert!(t.total > 0);
    }

    #[test]
    fn budget_marks_partial() {
        let config = SweepConfig { instance_budget: Some(10), ..SweepConfig::default() };
        let report = run_all(&small(), config, &[TheoremId::new(1).unwrap()]);
        assert!(report.partial);
        assert_eq!(report.theorems[0].total, 10);
        assert!(report.theorems[0].partial);
    }

    #[test]
    fn reports_are_reproducible_without_timing() {
        let config = SweepConfig { timing: false, ..SweepConfig::default() };
        let ids = [TheoremId::new(5).unwrap(), TheoremId::new(11).unwrap()];
        let a = serde_json::to_string(&run_all(&small(), config.clone(), &ids)).unwrap();
        let b = serde_json::to_string(&run_all(&small(), config, &ids)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn violations_replay() {
        let mut h = Harness::new(&small(), SweepConfig::default());
        let report = h.run(&TheoremId::all());
        for t in &report.theorems {
            for v in &t.violations {
                assert!(h.replay(v), "{} on {} does not replay", v.theorem, v.structure);
            }
        }
    }
}
