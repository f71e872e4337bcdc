use std::sync::OnceLock;

use krasner::corpus::{self, Member};
use krasner::harness::{run_all, Harness, SweepConfig, SweepReport, TheoremId};

fn config() -> SweepConfig {
    SweepConfig { timing: false, max_witnesses: 1000, ..SweepConfig::default() }
}

fn full_sweep() -> &'static SweepReport {
    static REPORT: OnceLock<SweepReport> = OnceLock::new();
    REPORT.get_or_init(|| run_all(&corpus::standard_corpus(), config(), &[]))
}

fn report<'a>(r: &'a SweepReport, id: &str) -> &'a krasner::harness::TheoremReport {
    r.theorems.iter().find(|t| t.id == id).unwrap()
}

#[test]
fn every_theorem_is_exercised() {
    let r = full_sweep();
    assert_eq!(r.theorems.len(), 27);
    assert!(!r.partial);
    assert!(r.unsatisfied.is_empty(), "hypotheses never met: {:?}", r.unsatisfied);
    for t in &r.theorems {
        assert!(t.structures > 0 && t.total >= t.hypothesis_met, "{}", t.id);
    }
}

#[test]
fn violations_replay() {
    let mut h = Harness::new(&corpus::standard_corpus(), config());
    let r = h.run(&TheoremId::all());
    for t in &r.theorems {
        for v in &t.violations {
            assert!(h.replay(v), "{} on {} did not replay: {}", v.theorem, v.structure, v.detail);
        }
    }
}

#[test]
fn confirmed_theorems() {
    let r = full_sweep();
    for id in ["T01", "T02", "T03", "T04", "T07", "T08", "T09", "T12", "T13", "T14", "T15", "T16"] {
        assert!(report(r, id).confirmed(), "{id}: {:?}", report(r, id).violations.first());
    }
    for id in ["T20", "T21", "T22", "T23", "T24", "T25", "T26", "T27"] {
        assert!(report(r, id).confirmed(), "{id}: {:?}", report(r, id).violations.first());
    }
}

/// The colon dichotomy fails for n ≥ 3 and holds on every binary member.
#[test]
fn colon_dichotomy_needs_binary_products() {
    let r = full_sweep();
    for id in ["T05", "T06", "T17", "T18", "T19"] {
        let t = report(r, id);
        assert!(t.violation_count > 0, "{id}");
        for v in &t.violations {
            let n3 = v.structure.contains("-2-3") || v.structure.contains("-3-3") || v.structure.contains(",3)");
            assert!(n3, "{id} on binary {}: {}", v.structure, v.detail);
        }
    }
}

/// In Z/125 with ternary products, ⟨25⟩ is φ0-δ0-S-primary with s = 1, yet
/// (P:5) = ⟨5⟩ is neither (0:5) = ⟨25⟩ nor (P:1) = ⟨25⟩.
#[test]
fn ternary_z125_colon_counterexample() {
    let k = 125u32;
    let in_p = |x: u32| x % 25 == 0;
    let holds = (0..k).all(|a| {
        (a..k).all(|b| {
            (b..k).all(|c| {
                let prod = a * b % k * c % k;
                if !in_p(prod) || prod == 0 {
                    return true;
                }
                let t = [a, b, c];
                (0..3).any(|i| {
                    let rest: u32 = (0..3).filter(|&j| j != i).map(|j| t[j]).fold(1, |acc, x| acc * x % k);
                    in_p(t[i]) || in_p(rest)
                })
            })
        })
    });
    assert!(holds);
    let colon = |target: &dyn Fn(u32) -> bool, u: u32| -> Vec<u32> { (0..k).filter(|&a| target(a * u % k)).collect() };
    let p5 = colon(&in_p, 5);
    assert_eq!(p5, (0..k).filter(|a| a % 5 == 0).collect::<Vec<_>>());
    assert_ne!(p5, colon(&|x| x == 0, 5));
    assert_ne!(p5, colon(&in_p, 1));
    let modular = report(full_sweep(), "T05");
    assert!(modular.violations.iter().any(|v| v.structure == "modular(5,25,4,3)"));
}

/// With `0 ∈ S` no proper hyperideal is disjoint from `S`, so the left
/// side holds vacuously while `φ0(P) = {0}` need not be δ-primary.
#[test]
fn equivalences_fail_when_s_contains_zero() {
    let r = full_sweep();
    let corpus = corpus::standard_corpus();
    let zero_of = |name: &str| -> String {
        let e = corpus.iter().find(|e| e.name == name).unwrap();
        match &e.member {
            Member::Table(h) => h.element_name(h.zero()).to_string(),
            Member::Valuation(lat) => lat.names()[lat.zero().0].clone(),
        }
    };
    let t10 = report(r, "T10");
    assert!(t10.violation_count > 0);
    for v in &t10.violations {
        let members: Vec<&str> = v.instance["S"].trim_matches(['{', '}']).split(", ").collect();
        assert!(members.contains(&zero_of(&v.structure).as_str()), "{} S = {}", v.structure, v.instance["S"]);
    }
    let t11 = report(r, "T11");
    let z4: Vec<_> = t11.violations.iter().filter(|v| v.structure == "z4" && v.instance["S"] == "{1}").collect();
    assert_eq!(z4.len(), 1, "{:?}", t11.violations.iter().map(|v| (&v.structure, &v.instance)).collect::<Vec<_>>());
}

#[test]
fn reports_are_reproducible() {
    let ids: Vec<TheoremId> = ["T05", "T15", "T25"].iter().map(|s| s.parse().unwrap()).collect();
    let a = serde_json::to_string(&run_all(&corpus::standard_corpus(), config(), &ids)).unwrap();
    let b = serde_json::to_string(&run_all(&corpus::standard_corpus(), config(), &ids)).unwrap();
    assert_eq!(a, b);
}
