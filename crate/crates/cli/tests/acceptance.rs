//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails. Tolerances are exact (zero mismatches);
//! runtime bounds are wall-clock on a release-style test profile.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use krasner::classify::{phi_delta_s_primary, strongly_phi_delta_s_primary};
use krasner::construct::{canonical_homomorphism, direct_product, localize};
use krasner::corpus::{self, CorpusEntry, Member};
use krasner::document::StructureDocument;
use krasner::harness::{run_all, SweepConfig};
use krasner::maps::sweep_reductions;
use krasner::{DeltaId, FiniteHyperring, IdealLattice, PhiId, SMode, Subset, Verdict};

const VALIDATE_BOUND: Duration = Duration::from_secs(1);
const RADICAL_BOUND: Duration = Duration::from_secs(5);
const SWEEP_BOUND: Duration = Duration::from_secs(60);
const MODULAR_BOUND: Duration = Duration::from_secs(1);

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass_if(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn krasner(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_krasner")).args(args).output().expect("binary runs");
    (out, start.elapsed())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tables(corpus: &[CorpusEntry]) -> impl Iterator<Item = &FiniteHyperring> {
    corpus.iter().filter_map(|e| e.table())
}

fn lattice_of(h: &FiniteHyperring) -> IdealLattice {
    IdealLattice::with_cap(h, h.size().max(12)).expect("corpus lattices enumerate")
}

fn lattices(corpus: &[CorpusEntry], max: usize) -> Vec<IdealLattice> {
    corpus
        .iter()
        .filter(|e| e.size() <= max)
        .map(|e| match &e.member {
            Member::Table(h) => lattice_of(h),
            Member::Valuation(lat) => lat.clone(),
        })
        .collect()
}

fn write_mutation(dir: &Path, file: &str, edit: impl FnOnce(&mut StructureDocument)) -> String {
    let mut doc = StructureDocument::from_structure(&corpus::three_element_example());
    edit(&mut doc);
    let path = dir.join(file);
    std::fs::write(&path, doc.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

fn set_f(doc: &mut StructureDocument, args: [&str; 2], value: &[&str]) {
    let row = doc.f.iter_mut().find(|r| r.args == args).expect("row present");
    row.value = value.iter().map(|s| s.to_string()).collect();
}

fn set_g(doc: &mut StructureDocument, args: [&str; 2], value: &str) {
    let row = doc.g.iter_mut().find(|r| r.args == args).expect("row present");
    row.value = value.to_string();
}

fn validator(corpus: &[CorpusEntry]) -> Outcome {
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    let accepted: Vec<&str> = corpus
        .iter()
        .filter(|e| e.table().is_some() && (e.name == "three-element" || e.name.starts_with('z')))
        .map(|e| e.name.as_str())
        .collect();
    for h in tables(corpus).filter(|h| accepted.contains(&h.name())) {
        let start = Instant::now();
        let report = krasner::validate(&h.to_candidate()).unwrap();
        slowest = slowest.max(start.elapsed());
        if !report.is_ok() {
            problems.push(format!("{} rejected: {report}", h.name()));
        }
    }
    let (out, t) = krasner(&["validate", "--structure", "builtin:three-element"]);
    slowest = slowest.max(t);
    if out.status.code() != Some(0) {
        problems.push(format!("validate builtin:three-element exited {:?}", out.status.code()));
    }
    let dir = tempfile::tempdir().unwrap();
    let mutations = [
        ("broken inverse", "unique inverse", write_mutation(dir.path(), "inverse.json", |d| set_f(d, ["u", "u"], &["u"]))),
        ("broken distributivity", "distributivity", write_mutation(dir.path(), "dist.json", |d| set_g(d, ["u", "u"], "u"))),
        ("broken identity", "scalar identity", write_mutation(dir.path(), "identity.json", |d| set_g(d, ["1", "u"], "0"))),
    ];
    for (label, axiom, path) in &mutations {
        let (out, t) = krasner(&["validate", "--structure", path]);
        slowest = slowest.max(t);
        let text = stdout(&out);
        let named = text.lines().any(|l| l.trim_start().starts_with(&format!("{axiom}: witness (")));
        if out.status.code() != Some(1) || !named {
            problems.push(format!("{label}: exit {:?}, output {text:?}", out.status.code()));
        }
    }
    if slowest >= VALIDATE_BOUND {
        problems.push(format!("slowest check took {slowest:?}"));
    }
    let detail = format!(
        "{} structures accepted, {} mutations rejected with witness, slowest {:.0?} (bound {VALIDATE_BOUND:?})",
        accepted.len() + 1,
        mutations.len(),
        slowest
    );
    pass_if(problems.is_empty(), if problems.is_empty() { detail } else { problems.join("; ") })
}

fn radicals(corpus: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    let lats = lattices(corpus, 8);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for lat in &lats {
        for i in 0..lat.len() {
            checked += 1;
            let (a, b) = (lat.ideal(lat.radical_by_primes(i)), lat.radical_by_powers(i));
            if a != b {
                mismatches.push(format!("{} {}: {} vs {}", lat.name(), lat.describe(lat.ideal(i)), lat.describe(a), lat.describe(b)));
            }
        }
    }
    let t = start.elapsed();
    pass_if(
        mismatches.is_empty() && t < RADICAL_BOUND,
        format!(
            "{checked} hyperideals on {} structures, {} mismatches, {:.0?} (bound {RADICAL_BOUND:?}){}",
            lats.len(),
            mismatches.len(),
            t,
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn sweep(corpus: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    let report = run_all(corpus, SweepConfig { timing: false, ..SweepConfig::default() }, &[]);
    let t = start.elapsed();
    let violated: Vec<String> = report
        .theorems
        .iter()
        .filter(|r| r.violation_count > 0)
        .map(|r| format!("{} ({})", r.id, r.violation_count))
        .collect();
    let exercised = report.theorems.iter().all(|r| r.hypothesis_met > 0 || report.unsatisfied.contains(&r.id));
    let pass = violated.is_empty() && exercised && !report.partial && t < SWEEP_BOUND;
    pass_if(
        pass,
        format!(
            "{} structures, {} skipped, {} violations{}, unsatisfied [{}], {:.1?} (bound {SWEEP_BOUND:?})",
            report.structures.len(),
            report.skipped.len(),
            report.violation_count(),
            if violated.is_empty() { String::new() } else { format!(" in {}", violated.join(", ")) },
            report.unsatisfied.join(", "),
            t
        ),
    )
}

fn modular_witness() -> Outcome {
    let (out, t) = krasner(&[
        "classify",
        "--structure",
        "builtin:modular(5,25,4,3)",
        "--ideal",
        "5^5",
        "--phi",
        "pow:5",
        "--delta",
        "delta0",
        "--witness",
        "5,5,5,5,5",
    ]);
    let text = stdout(&out);
    let slots_false = text.lines().filter(|l| l.contains("u·s ∈ P false, replaced product ∈ δ(P) false")).count();
    let pass = out.status.code() == Some(1)
        && text.contains("witness (5, 5, 5, 5, 5)")
        && text.contains("in P true, in φ(P) false")
        && slots_false == 5
        && t < MODULAR_BOUND;
    pass_if(pass, format!("exit {:?}, {slots_false}/5 slots fail both consequents, {:.0?} (bound {MODULAR_BOUND:?})", out.status.code(), t))
}

fn unit_interval() -> Outcome {
    let base = ["classify", "--structure", "builtin:unit-interval-max", "--ideal", "[0,0.5]", "--phi", "phiW", "--delta", "delta0"];
    let (fixed, _) = krasner(&[&base[..], &["--witness", "0.6,0.7,0.8"]].concat());
    let (grid, _) = krasner(&[&base[..], &["--mulset", "(0,0.1]", "--step", "1/20"]].concat());
    let refuted = fixed.status.code() == Some(1);
    let on_sample = grid.status.code() == Some(0) && stdout(&grid).contains("holds-on-sample");
    let first = stdout(&fixed).lines().nth(2).unwrap_or_default().to_string();
    let second = if grid.status.code() == Some(2) { stderr(&grid).trim().to_string() } else { stdout(&grid).lines().last().unwrap_or_default().to_string() };
    pass_if(
        refuted && on_sample,
        format!(
            "fixed witness: exit {:?} ({first}); T = (0,0.1] at step 1/20: exit {:?} ({second})",
            fixed.status.code(),
            grid.status.code()
        ),
    )
}

fn admissible(lat: &IdealLattice) -> Vec<(usize, Subset)> {
    let mut out = Vec::new();
    for s_set in lat.multiplicative_sets(4) {
        for i in (0..lat.len()).filter(|&i| lat.is_proper(i) && lat.ideal(i).is_disjoint(s_set)) {
            out.push((i, s_set));
        }
    }
    out
}

fn trivial_identities(corpus: &[CorpusEntry]) -> Outcome {
    let mut checked = 0u64;
    let mut exceptions = Vec::new();
    for lat in lattices(corpus, usize::MAX) {
        let phis: Vec<_> = sweep_reductions(lat.n()).into_iter().filter_map(|p| p.materialize(&lat).ok()).collect();
        let deltas: Vec<_> = DeltaId::ALL.iter().map(|d| d.materialize(&lat)).collect();
        let phi1 = PhiId::Phi1.materialize(&lat).unwrap();
        let delta_k = DeltaId::DeltaK.materialize(&lat);
        for (i, s_set) in admissible(&lat) {
            let p = lat.ideal(i);
            for delta in &deltas {
                checked += 1;
                let c = phi_delta_s_primary(&lat, p, &phi1, delta, s_set, SMode::Search).unwrap();
                if c.verdict != Verdict::Vacuous {
                    exceptions.push(format!("{} {} phi1 {}: {:?}", lat.name(), lat.describe(p), delta.id(), c.verdict));
                }
            }
            for phi in &phis {
                checked += 1;
                let c = phi_delta_s_primary(&lat, p, phi, &delta_k, s_set, SMode::Search).unwrap();
                if !c.holds() {
                    exceptions.push(format!("{} {} {} deltaK: {:?}", lat.name(), lat.describe(p), phi.id(), c.verdict));
                }
                if lat.is_exact() {
                    checked += 1;
                    let c = strongly_phi_delta_s_primary(&lat, p, phi, &delta_k, s_set, SMode::Search).unwrap();
                    if !c.holds() {
                        exceptions.push(format!("{} {} {} deltaK strongly: {:?}", lat.name(), lat.describe(p), phi.id(), c.verdict));
                    }
                }
            }
        }
    }
    pass_if(
        exceptions.is_empty(),
        format!(
            "{checked} classifications, {} exceptions{}",
            exceptions.len(),
            exceptions.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn product_lattices() -> Outcome {
    let base: Vec<FiniteHyperring> = corpus::base_members().into_iter().filter(|h| h.size() <= 5).collect();
    let mut pairs = 0;
    let mut problems = Vec::new();
    for (x, a) in base.iter().enumerate() {
        for b in &base[x..] {
            if (a.m(), a.n()) != (b.m(), b.n()) {
                continue;
            }
            pairs += 1;
            let prod = direct_product(a, b).unwrap();
            let (la, lb, lat) = (lattice_of(a), lattice_of(b), lattice_of(&prod.structure));
            let mut expected: Vec<Subset> =
                la.ideals().iter().flat_map(|&i| lb.ideals().iter().map(move |&j| (i, j))).map(|(i, j)| prod.rect(i, j)).collect();
            expected.sort();
            let mut got = lat.ideals().to_vec();
            got.sort();
            if got != expected || lat.len() != la.len() * lb.len() {
                problems.push(format!("{}: {} hyperideals, expected {}", prod.structure.name(), lat.len(), la.len() * lb.len()));
            }
        }
    }
    pass_if(problems.is_empty(), format!("{pairs} pairs, {} mismatches {}", problems.len(), problems.join("; ")).trim_end().to_string())
}

fn localization(corpus: &[CorpusEntry]) -> Outcome {
    let mut transported = 0u64;
    let mut contractions = 0u64;
    let mut problems = Vec::new();
    for h in tables(corpus) {
        let lat = lattice_of(h);
        let loc = localize(h, Subset::singleton(h.size(), h.one())).unwrap();
        let hom = canonical_homomorphism(h, &loc).unwrap();
        let l = &loc.structure;
        if l.size() != h.size() || !hom.is_surjective(l.size()) {
            problems.push(format!("{}: localization at 1 is not a bijection", h.name()));
            continue;
        }
        let frac = lattice_of(l);
        let image = |x: Subset| Subset::from_elements(l.size(), x.iter().map(|e| hom.apply(e)));
        let phis: Vec<_> = sweep_reductions(h.n()).into_iter().filter_map(|p| p.materialize(&lat).ok()).collect();
        let deltas: Vec<_> = DeltaId::ALL.iter().map(|d| d.materialize(&lat)).collect();
        for (i, s_set) in admissible(&lat) {
            let p = lat.ideal(i);
            for phi in &phis {
                let phi_l = loc.localized_map(&lat, &frac, phi).unwrap();
                for delta in &deltas {
                    let delta_l = loc.localized_map(&lat, &frac, delta).unwrap();
                    let here = phi_delta_s_primary(&lat, p, phi, delta, s_set, SMode::Search).unwrap();
                    let there = phi_delta_s_primary(&frac, image(p), &phi_l, &delta_l, image(s_set), SMode::Search).unwrap();
                    transported += 1;
                    if here.verdict != there.verdict {
                        problems.push(format!("{} {} {} {}: {:?} vs {:?}", h.name(), lat.describe(p), phi.id(), delta.id(), here.verdict, there.verdict));
                    }
                }
            }
        }
        for s_set in lat.multiplicative_sets(3) {
            let Ok(loc) = localize(h, s_set) else { continue };
            for &p in lat.ideals() {
                contractions += 1;
                let union = s_set.iter().fold(Subset::empty(h.size()), |acc, t| {
                    acc.union(Subset::from_elements(h.size(), h.elements().filter(|&a| p.contains(h.mul(a, t)))))
                });
                if loc.contract(loc.extend(p)) != union {
                    problems.push(format!("{} S = {} P = {}", h.name(), lat.describe(s_set), lat.describe(p)));
                }
            }
        }
    }
    pass_if(
        problems.is_empty(),
        format!(
            "{transported} verdicts transported, {contractions} contractions checked, {} mismatches{}",
            problems.len(),
            problems.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let corpus = corpus::standard_corpus();
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 8] = [
        ("validator", Box::new(|| validator(&corpus))),
        ("radical equivalence", Box::new(|| radicals(&corpus))),
        ("theorem sweep", Box::new(|| sweep(&corpus))),
        ("modular witness", Box::new(modular_witness)),
        ("unit interval", Box::new(unit_interval)),
        ("trivial classifiers", Box::new(|| trivial_identities(&corpus))),
        ("product lattice", Box::new(product_lattices)),
        ("localization", Box::new(|| localization(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} criterion {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
