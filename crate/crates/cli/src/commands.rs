use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use clap::Args;
use krasner::analytic::{default_step, parse_rational, AnalyticVerdict, Modular, RationalSet, TupleCheck, UnitIntervalMax};
use krasner::classify::{self, check_preconditions, check_tuple, Classification, Refutation, TupleOutcome};
use krasner::construct;
use krasner::corpus::{self, CorpusEntry, Member, Origin};
use krasner::document::StructureDocument;
use krasner::harness::{self, SweepConfig, TheoremId};
use krasner::{Condition, DeltaId, ElementId, FiniteHyperring, IdealLattice, PhiId, SMode, Subset, Verdict as Kind};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::source::{self, Source};
use crate::{Failure, Output, Verdict};

pub const FORMAT_VERSION: u32 = 1;

/// Prints the summary (or the JSON report) and writes the report file.
fn emit(out: &Output, command: &str, summary: &str, mut report: Value) -> Result<(), Failure> {
    if let Value::Object(map) = &mut report {
        map.insert("format_version".into(), json!(FORMAT_VERSION));
        map.insert("command".into(), json!(command));
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    if out.json {
        print!("{text}");
    } else {
        print!("{summary}");
    }
    if let Some(path) = &out.report {
        fs::write(path, &text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn lattice(h: &FiniteHyperring) -> Result<IdealLattice, Failure> {
    IdealLattice::new(h).map_err(|e| Failure::input(e.to_string()))
}

fn source_lattice(src: &Source) -> Result<IdealLattice, Failure> {
    match src {
        Source::Table(h) => lattice(h),
        Source::Modular(z) => Ok(z.valuation_lattice()),
        Source::UnitInterval => Err(Failure::input("unit-interval-max has no finite hyperideal lattice")),
    }
}

fn write_document(path: Option<&Path>, h: &FiniteHyperring) -> Result<(), Failure> {
    if let Some(path) = path {
        let doc = StructureDocument::canonical(h);
        fs::write(path, doc.to_json()).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn validate(structure: &str, out: &Output) -> Result<Verdict, Failure> {
    let c = source::load_candidate(structure)?;
    let report = krasner::validate(&c).map_err(|e| Failure::input(e.to_string()))?;
    let mut summary = String::new();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let witness: Vec<&str> = v.witness.iter().map(|e| c.names()[e.0].as_str()).collect();
            json!({"axiom": v.axiom, "witness": witness, "detail": v.detail})
        })
        .collect();
    if report.is_ok() {
        writeln!(summary, "{}: valid Krasner ({},{})-hyperring on {} elements", c.name(), c.m(), c.n(), c.size()).unwrap();
    } else {
        writeln!(summary, "{}: {} axiom(s) violated", c.name(), report.violations.len()).unwrap();
        for v in &report.violations {
            writeln!(summary, "  {}", v.describe(c.names())).unwrap();
        }
    }
    emit(out, "validate", &summary, json!({"structure": c.name(), "valid": report.is_ok(), "violations": violations}))?;
    Ok(if report.is_ok() { Verdict::Holds } else { Verdict::Refuted })
}

pub fn ideals(structure: &str, out: &Output) -> Result<Verdict, Failure> {
    let src = source::load(structure)?;
    let lat = source_lattice(&src)?;
    let mut summary = format!("{}: {} hyperideals\n", lat.name(), lat.len());
    let mut rows = Vec::new();
    for i in 0..lat.len() {
        let prime = lat.is_prime(i).unwrap_or(false);
        let maximal = lat.is_maximal(i).unwrap_or(false);
        let rad = lat.ideal(lat.radical_by_primes(i));
        let mut tags = Vec::new();
        if prime {
            tags.push("prime");
        }
        if maximal {
            tags.push("maximal");
        }
        writeln!(summary, "  {:<24} rad = {:<24} {}", lat.describe(lat.ideal(i)), lat.describe(rad), tags.join(" ")).unwrap();
        rows.push(json!({
            "elements": names_of(&lat, lat.ideal(i)),
            "prime": prime,
            "maximal": maximal,
            "radical": names_of(&lat, rad),
        }));
    }
    emit(out, "ideals", &summary, json!({"structure": lat.name(), "ideals": rows}))?;
    Ok(Verdict::Holds)
}

fn names_of(lat: &IdealLattice, s: Subset) -> Vec<String> {
    s.iter().map(|e| lat.names()[e.0].clone()).collect()
}

fn lattice_subset(lat: &IdealLattice, list: &str) -> Result<Subset, Failure> {
    let mut s = Subset::empty(lat.size());
    for name in source::names(list) {
        let e = lat
            .names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Failure::input(format!("unknown element {name:?} in {}", lat.name())))?;
        s.insert(ElementId(e));
    }
    Ok(s)
}

fn ideal_index(lat: &IdealLattice, p: Subset) -> Result<usize, Failure> {
    lat.index_of(p).ok_or_else(|| Failure::input(format!("{} is not a hyperideal of {}", lat.describe(p), lat.name())))
}

pub fn radical(structure: &str, ideal: &str, out: &Output) -> Result<Verdict, Failure> {
    let src = source::load(structure)?;
    let lat = source_lattice(&src)?;
    let p = match &src {
        Source::Modular(z) => {
            let j = source::modular_ideal(z, ideal)? as usize;
            lat.ideal(j)
        }
        _ => lattice_subset(&lat, ideal)?,
    };
    let i = ideal_index(&lat, p)?;
    let by_primes = lat.ideal(lat.radical_by_primes(i));
    let by_powers = lat.radical_by_powers(i);
    let agree = by_primes == by_powers;
    let mut summary = format!("rad {} = {}\n", lat.describe(p), lat.describe(by_primes));
    if !agree {
        writeln!(summary, "mismatch: the power characterization gives {}", lat.describe(by_powers)).unwrap();
    }
    let report = json!({
        "structure": lat.name(),
        "ideal": names_of(&lat, p),
        "radical_by_primes": names_of(&lat, by_primes),
        "radical_by_powers": names_of(&lat, by_powers),
        "agree": agree,
    });
    emit(out, "radical", &summary, report)?;
    Ok(if agree { Verdict::Holds } else { Verdict::Refuted })
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long, value_name = "FILE")]
    structure: String,
    /// Elements of P; a generator for modular structures; an interval like
    /// `[0,0.5]` for the unit interval.
    #[arg(long, value_name = "NAMES")]
    ideal: String,
    #[arg(long, value_name = "ID", default_value = "phi0")]
    phi: String,
    #[arg(long, value_name = "ID", default_value = "delta0")]
    delta: String,
    /// Elements of S (default: the identity). On the unit interval a range
    /// such as `(0,0.1]` is also accepted.
    #[arg(long, value_name = "NAMES")]
    mulset: Option<String>,
    /// Use the hyperideal-tuple (strongly) condition.
    #[arg(long)]
    strong: bool,
    /// Fix the associated element instead of searching S.
    #[arg(long, value_name = "NAME")]
    s: Option<String>,
    /// Test this one tuple instead of searching.
    #[arg(long, value_name = "NAMES")]
    witness: Option<String>,
    /// Grid step for sampled classification on the unit interval.
    #[arg(long, value_name = "Q")]
    step: Option<String>,
    #[command(flatten)]
    out: Output,
}

fn phi_id(s: &str) -> Result<PhiId, Failure> {
    s.parse().map_err(|e: krasner::MapError| Failure::input(e.to_string()))
}

fn delta_id(s: &str) -> Result<DeltaId, Failure> {
    s.parse().map_err(|e: krasner::MapError| Failure::input(e.to_string()))
}

pub fn classify(a: &ClassifyArgs) -> Result<Verdict, Failure> {
    let src = source::load(&a.structure)?;
    let (phi, delta) = (phi_id(&a.phi)?, delta_id(&a.delta)?);
    match &src {
        Source::Table(_) => {
            let lat = source_lattice(&src)?;
            let p = lattice_subset(&lat, &a.ideal)?;
            classify_lattice(a, &lat, p, phi, delta)
        }
        Source::Modular(z) => {
            let lat = z.valuation_lattice();
            let j = source::modular_ideal(z, &a.ideal)?;
            match &a.witness {
                Some(w) => classify_modular_tuple(a, z, &lat, j, phi, delta, w),
                None => classify_lattice(a, &lat, lat.ideal(j as usize), phi, delta),
            }
        }
        Source::UnitInterval => classify_unit_interval(a, phi, delta),
    }
}

fn describe_refutation(lat: &IdealLattice, r: &Refutation) -> String {
    let n = |e: ElementId| lat.names()[e.0].as_str();
    let tuple: Vec<&str> = r.tuple.iter().map(|&e| n(e)).collect();
    let mut out = format!("  witness ({}) with s = {}: product {} lies in P and not in φ(P)\n", tuple.join(", "), n(r.s), n(r.product));
    for f in &r.slots {
        writeln!(out, "    slot {}: u·s = {} ∉ P, replaced product {} ∉ δ(P)", f.slot + 1, n(f.scaled), n(f.replaced)).unwrap();
    }
    out
}

fn refutation_json(lat: &IdealLattice, r: &Refutation) -> Value {
    let n = |e: ElementId| lat.names()[e.0].clone();
    json!({
        "s": n(r.s),
        "tuple": r.tuple.iter().map(|&e| n(e)).collect::<Vec<_>>(),
        "product": n(r.product),
        "slots": r.slots.iter().map(|f| json!({"slot": f.slot + 1, "scaled": n(f.scaled), "replaced": n(f.replaced)})).collect::<Vec<_>>(),
    })
}

fn verdict_name(v: Kind) -> &'static str {
    match v {
        Kind::Holds => "holds",
        Kind::Fails => "fails",
        Kind::Vacuous => "vacuous",
        Kind::HoldsOnSample => "holds-on-sample",
    }
}

fn element_in(lat: &IdealLattice, name: &str) -> Result<ElementId, Failure> {
    Ok(lattice_subset(lat, name)?.first().expect("one name"))
}

fn classify_lattice(a: &ClassifyArgs, lat: &IdealLattice, p: Subset, phi: PhiId, delta: DeltaId) -> Result<Verdict, Failure> {
    let i = ideal_index(lat, p)?;
    let phi_map = phi.materialize(lat).map_err(|e| Failure::input(e.to_string()))?;
    let delta_map = delta.materialize(lat);
    let one = lat.names()[lat.one().0].clone();
    let s_set = lattice_subset(lat, a.mulset.as_deref().unwrap_or(&one))?;
    let mode = match &a.s {
        Some(s) => SMode::Fixed(element_in(lat, s)?),
        None => SMode::Search,
    };
    check_preconditions(lat, p, s_set, mode).map_err(|e| Failure::input(e.to_string()))?;
    let cond = Condition { p, excluded: lat.ideal(phi_map.apply(i)), target: lat.ideal(delta_map.apply(i)) };
    let header = format!(
        "{}: P = {}, φ = {phi} (φ(P) = {}), δ = {delta} (δ(P) = {}), S = {}\n",
        lat.name(),
        lat.describe(p),
        lat.describe(cond.excluded),
        lat.describe(cond.target),
        lat.describe(s_set)
    );
    let base = json!({
        "structure": lat.name(),
        "ideal": names_of(lat, p),
        "phi": phi.to_string(),
        "delta": delta.to_string(),
        "mulset": names_of(lat, s_set),
        "strong": a.strong,
    });
    if let Some(w) = &a.witness {
        let tuple: Vec<ElementId> = lattice_subset_list(lat, w)?;
        let s = match mode {
            SMode::Fixed(s) => s,
            SMode::Search => if s_set.contains(lat.one()) { lat.one() } else { s_set.first().expect("nonempty S") },
        };
        let outcome = check_tuple(lat, &cond, s, &tuple);
        let (summary, verdict, detail) = match &outcome {
            TupleOutcome::Outside => (format!("{header}tuple does not meet the antecedent\n"), Verdict::Holds, json!("outside")),
            TupleOutcome::Satisfied(k) => {
                (format!("{header}slot {} satisfies a consequent\n", k + 1), Verdict::Holds, json!({"satisfied_slot": k + 1}))
            }
            TupleOutcome::Refutes(r) => (
                format!("{header}refuted\n{}", describe_refutation(lat, r)),
                Verdict::Refuted,
                refutation_json(lat, r),
            ),
        };
        let mut report = base;
        report["witness"] = detail;
        report["verdict"] = json!(if matches!(verdict, Verdict::Refuted) { "fails" } else { "holds" });
        emit(&a.out, "classify", &summary, report)?;
        return Ok(verdict);
    }
    let c: Classification = if a.strong {
        classify::strongly_phi_delta_s_primary(lat, p, &phi_map, &delta_map, s_set, mode)
    } else {
        classify::phi_delta_s_primary(lat, p, &phi_map, &delta_map, s_set, mode)
    }
    .map_err(|e| Failure::input(e.to_string()))?;
    let mut summary = header;
    writeln!(summary, "{}", verdict_name(c.verdict)).unwrap();
    if let Some(s) = c.witness_s {
        writeln!(summary, "  associated element s = {}", lat.names()[s.0]).unwrap();
    }
    for r in &c.refutations {
        summary.push_str(&describe_refutation(lat, r));
    }
    for r in &c.ideal_refutations {
        let parts: Vec<String> = r.ideals.iter().map(|&j| lat.describe(lat.ideal(j))).collect();
        writeln!(summary, "  hyperideal witness ({}) with s = {}", parts.join(", "), lat.names()[r.s.0]).unwrap();
    }
    let mut report = base;
    report["verdict"] = json!(verdict_name(c.verdict));
    report["s"] = json!(c.witness_s.map(|s| lat.names()[s.0].clone()));
    report["refutations"] = json!(c.refutations.iter().map(|r| refutation_json(lat, r)).collect::<Vec<_>>());
    report["ideal_refutations"] = json!(c
        .ideal_refutations
        .iter()
        .map(|r| json!({"s": lat.names()[r.s.0], "ideals": r.ideals.iter().map(|&j| names_of(lat, lat.ideal(j))).collect::<Vec<_>>()}))
        .collect::<Vec<_>>());
    emit(&a.out, "classify", &summary, report)?;
    Ok(if c.holds() { Verdict::Holds } else { Verdict::Refuted })
}

fn lattice_subset_list(lat: &IdealLattice, list: &str) -> Result<Vec<ElementId>, Failure> {
    source::names(list).iter().map(|n| element_in(lat, n)).collect()
}

fn slot_lines<T: std::fmt::Display>(check: &TupleCheck<T>, product_note: &str) -> String {
    let mut out = format!("  product {product_note}: in P {}, in φ(P) {}\n", check.in_p, check.in_excluded);
    for (k, (scaled, replaced)) in check.slots.iter().enumerate() {
        writeln!(out, "    slot {}: u·s ∈ P {scaled}, replaced product ∈ δ(P) {replaced}", k + 1).unwrap();
    }
    out
}

fn tuple_verdict(v: &AnalyticVerdict) -> (&'static str, Verdict) {
    match v {
        AnalyticVerdict::Refuted => ("refuted", Verdict::Refuted),
        AnalyticVerdict::Outside => ("tuple does not meet the antecedent", Verdict::Holds),
        AnalyticVerdict::SatisfiedAt(_) => ("a slot satisfies a consequent", Verdict::Holds),
        AnalyticVerdict::HoldsOnSample => ("holds-on-sample", Verdict::Holds),
        AnalyticVerdict::Vacuous => ("vacuous", Verdict::Holds),
    }
}

fn check_json<T: std::fmt::Display>(check: &TupleCheck<T>) -> Value {
    json!({
        "product": check.product.to_string(),
        "in_p": check.in_p,
        "in_phi": check.in_excluded,
        "slots": check.slots.iter().map(|(a, b)| json!({"scaled_in_p": a, "replaced_in_delta": b})).collect::<Vec<_>>(),
    })
}

fn classify_modular_tuple(
    a: &ClassifyArgs,
    z: &Modular,
    lat: &IdealLattice,
    j: u32,
    phi: PhiId,
    delta: DeltaId,
    witness: &str,
) -> Result<Verdict, Failure> {
    let tuple: Vec<BigUint> = source::names(witness).iter().map(|w| source::modular_element(z, w)).collect::<Result<_, _>>()?;
    let s_list: Vec<BigUint> = source::names(a.mulset.as_deref().unwrap_or("1"))
        .iter()
        .map(|w| source::modular_element(z, w))
        .collect::<Result<_, _>>()?;
    let s = match &a.s {
        Some(s) => source::modular_element(z, s)?,
        None => s_list[0].clone(),
    };
    if !s_list.contains(&s) {
        return Err(Failure::input(format!("s = {s} is not in S")));
    }
    let s_model = Subset::from_elements(lat.size(), s_list.iter().map(|x| z.model_element(x)));
    check_preconditions(lat, lat.ideal(j as usize), s_model, SMode::Fixed(z.model_element(&s)))
        .map_err(|e| Failure::input(e.to_string()))?;
    let check = z.check_tuple(j, phi, delta, &s, &tuple).map_err(|e| Failure::input(e.to_string()))?;
    let (word, verdict) = tuple_verdict(&check.verdict);
    let shown: Vec<String> = tuple.iter().map(|x| x.to_string()).collect();
    let e_phi = z.phi_exponent(phi, j).map_err(|e| Failure::input(e.to_string()))?;
    let mut summary = format!(
        "{}: P = ⟨{p}^{j}⟩, φ = {phi} (φ(P) = ⟨{p}^{e_phi}⟩), δ = {delta}, s = {s}\nwitness ({})\n{word}\n",
        z.name(),
        shown.join(", "),
        p = z.p(),
    );
    summary.push_str(&slot_lines(&check, &format!("{} (valuation {})", check.product, z.valuation(&check.product))));
    let report = json!({
        "structure": z.name(),
        "ideal": format!("{}^{}", z.p(), j),
        "phi": phi.to_string(),
        "delta": delta.to_string(),
        "s": s.to_string(),
        "witness": shown,
        "verdict": if matches!(verdict, Verdict::Refuted) { "fails" } else { "holds" },
        "check": check_json(&check),
    });
    emit(&a.out, "classify", &summary, report)?;
    Ok(verdict)
}

fn classify_unit_interval(a: &ClassifyArgs, phi: PhiId, delta: DeltaId) -> Result<Verdict, Failure> {
    let h = UnitIntervalMax;
    let p = source::interval(&a.ideal)?;
    let s_set = source::rational_set(a.mulset.as_deref().unwrap_or("1"))?;
    h.check_preconditions(&p, &s_set).map_err(|e| Failure::input(e.to_string()))?;
    let header = format!("unit-interval-max: P = {p}, φ = {phi} (φ(P) = {}), δ = {delta}\n", h.phi(phi, &p));
    let base = json!({"structure": "unit-interval-max", "ideal": p.to_string(), "phi": phi.to_string(), "delta": delta.to_string()});
    if let Some(w) = &a.witness {
        let tuple = source::rationals(w)?;
        let s = match (&a.s, &s_set) {
            (Some(s), _) => parse_rational(s).map_err(|e| Failure::input(e.to_string()))?,
            (None, RationalSet::Finite(v)) => v[0].clone(),
            (None, RationalSet::Range { .. }) => return Err(Failure::input("give --s when S is a range")),
        };
        if !s_set.contains(&s) {
            return Err(Failure::input(format!("s = {s} is not in S")));
        }
        let check = h.check_tuple(&p, phi, delta, &s, &tuple).map_err(|e| Failure::input(e.to_string()))?;
        let (word, verdict) = tuple_verdict(&check.verdict);
        let shown: Vec<String> = tuple.iter().map(|x| x.to_string()).collect();
        let mut summary = format!("{header}witness ({}) with s = {s}\n{word}\n", shown.join(", "));
        summary.push_str(&slot_lines(&check, &check.product.to_string()));
        let mut report = base;
        report["witness"] = json!(shown);
        report["s"] = json!(s.to_string());
        report["verdict"] = json!(if matches!(verdict, Verdict::Refuted) { "fails" } else { "holds" });
        report["check"] = check_json(&check);
        emit(&a.out, "classify", &summary, report)?;
        return Ok(verdict);
    }
    let step: BigRational = match &a.step {
        Some(q) => parse_rational(q).map_err(|e| Failure::input(e.to_string()))?,
        None => default_step(),
    };
    let g = h.classify_on_grid(&p, phi, delta, &s_set, &step).map_err(|e| Failure::input(e.to_string()))?;
    let (word, verdict) = tuple_verdict(&g.verdict);
    let mut summary = format!("{header}grid step {step}, {} tuples checked\n{word}\n", g.tuples_checked);
    if let Some(s) = &g.witness_s {
        writeln!(summary, "  associated element s = {s}").unwrap();
    }
    for (s, t) in &g.refutations {
        let shown: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        writeln!(summary, "  s = {s}: refuted by ({})", shown.join(", ")).unwrap();
    }
    let mut report = base;
    report["step"] = json!(step.to_string());
    report["verdict"] = json!(match g.verdict {
        AnalyticVerdict::Refuted => "fails",
        AnalyticVerdict::Vacuous => "vacuous",
        _ => "holds-on-sample",
    });
    report["tuples_checked"] = json!(g.tuples_checked);
    report["s"] = json!(g.witness_s.map(|s| s.to_string()));
    report["refutations"] = json!(g
        .refutations
        .iter()
        .map(|(s, t)| json!({"s": s.to_string(), "tuple": t.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
        .collect::<Vec<_>>());
    emit(&a.out, "classify", &summary, report)?;
    Ok(verdict)
}

pub fn product(structures: &[String], out_path: Option<&Path>, out: &Output) -> Result<Verdict, Failure> {
    let [a, b] = structures else {
        return Err(Failure::input(format!("product takes exactly two --structure arguments, got {}", structures.len())));
    };
    let (sa, sb) = (source::load(a)?, source::load(b)?);
    let (h1, h2) = (sa.table("product")?, sb.table("product")?);
    let prod = construct::direct_product(h1, h2).map_err(|e| Failure::input(e.to_string()))?;
    let h = &prod.structure;
    let lat = lattice(h)?;
    let summary = format!(
        "{}: Krasner ({},{})-hyperring on {} elements with {} hyperideals\n",
        h.name(),
        h.m(),
        h.n(),
        h.size(),
        lat.len()
    );
    write_document(out_path, h)?;
    emit(out, "product", &summary, json!({"structure": h.name(), "size": h.size(), "ideals": lat.len()}))?;
    Ok(Verdict::Holds)
}

pub fn localize(structure: &str, mulset: &str, out_path: Option<&Path>, out: &Output) -> Result<Verdict, Failure> {
    let src = source::load(structure)?;
    let h = src.table("localize")?;
    let s_set = source::subset(h, mulset)?;
    let loc = construct::localize(h, s_set).map_err(|e| Failure::input(e.to_string()))?;
    let l = &loc.structure;
    let lat = lattice(l)?;
    let mut summary = format!("{}: {} elements, {} hyperideals\n", l.name(), l.size(), lat.len());
    let mut map = serde_json::Map::new();
    for (a, img) in h.elements().zip(loc.canonical_map()) {
        writeln!(summary, "  {} ↦ {}", h.element_name(a), l.element_name(*img)).unwrap();
        map.insert(h.element_name(a).to_string(), json!(l.element_name(*img)));
    }
    write_document(out_path, l)?;
    let report = json!({"structure": l.name(), "size": l.size(), "ideals": lat.len(), "canonical_map": map});
    emit(out, "localize", &summary, report)?;
    Ok(Verdict::Holds)
}

#[derive(Args)]
pub struct TheoremArgs {
    /// Sweep these structures instead of the built-in corpus (repeatable).
    #[arg(long, value_name = "FILE")]
    structure: Vec<String>,
    /// Comma-separated theorem ids, e.g. T01,T15.
    #[arg(long, value_name = "IDS")]
    only: Option<String>,
    #[arg(long, value_name = "N", default_value_t = 4)]
    max_mulset_size: usize,
    /// Tabular structures above this size are skipped.
    #[arg(long, value_name = "N", default_value_t = 6)]
    max_size: usize,
    /// Stop after this many instances; the report is marked partial.
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    /// Stop after this many seconds; the report is marked partial.
    #[arg(long, value_name = "SECS")]
    time_budget: Option<f64>,
    /// Violations printed per theorem.
    #[arg(long, value_name = "N", default_value_t = 20)]
    max_witnesses: usize,
    /// Leave wall times out of the report, for byte-identical reruns.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    out: Output,
}

fn positive(name: &str, v: usize) -> Result<usize, Failure> {
    if v == 0 {
        return Err(Failure::input(format!("--{name} must be positive")));
    }
    Ok(v)
}

pub fn theorems(a: &TheoremArgs) -> Result<Verdict, Failure> {
    let ids: Vec<TheoremId> = match &a.only {
        Some(list) => source::names(list)
            .iter()
            .map(|s| s.parse::<TheoremId>().map_err(|e| Failure::input(e.to_string())))
            .collect::<Result<_, _>>()?,
        None => TheoremId::all(),
    };
    let corpus: Vec<CorpusEntry> = if a.structure.is_empty() {
        corpus::standard_corpus()
    } else {
        a.structure
            .iter()
            .map(|s| match source::load(s)? {
                Source::Table(h) => Ok(CorpusEntry { name: h.name().to_string(), member: Member::Table(h), origin: Origin::Base }),
                Source::Modular(z) => {
                    Ok(CorpusEntry { name: z.name(), member: Member::Valuation(z.valuation_lattice()), origin: Origin::Witness })
                }
                Source::UnitInterval => Err(Failure::input("the theorem sweep needs finite structures")),
            })
            .collect::<Result<_, _>>()?
    };
    if a.budget == Some(0) || a.time_budget.is_some_and(|t| t <= 0.0) {
        return Err(Failure::input("budgets must be positive"));
    }
    let config = SweepConfig {
        max_size: positive("max-size", a.max_size)?,
        max_mulset: positive("max-mulset-size", a.max_mulset_size)?,
        instance_budget: a.budget,
        time_budget: a.time_budget.map(Duration::from_secs_f64),
        max_witnesses: a.max_witnesses,
        timing: !a.no_timing,
        ..SweepConfig::default()
    };
    let report = harness::run_all(&corpus, config, &ids);
    let mut summary = format!("{} structures swept, {} skipped\n", report.structures.len(), report.skipped.len());
    for t in &report.theorems {
        write!(
            summary,
            "{}  instances {:>8}  hypothesis met {:>7}  filtered {:>5}  violations {:>5}",
            t.id, t.total, t.hypothesis_met, t.filtered, t.violation_count
        )
        .unwrap();
        if let Some(ms) = t.wall_time_ms {
            write!(summary, "  {ms} ms").unwrap();
        }
        if t.partial {
            summary.push_str("  partial");
        }
        summary.push('\n');
        for v in &t.violations {
            let inst: Vec<String> = v.instance.iter().map(|(k, x)| format!("{k}={x}")).collect();
            writeln!(summary, "    {}: {}; {}", v.structure, inst.join(" "), v.detail).unwrap();
        }
        for n in &t.notes {
            writeln!(summary, "    note: {n}").unwrap();
        }
    }
    if !report.unsatisfied.is_empty() {
        writeln!(summary, "hypotheses never met: {}", report.unsatisfied.join(", ")).unwrap();
    }
    let value = serde_json::to_value(&report).expect("reports serialize");
    emit(&a.out, "theorems", &summary, value)?;
    if report.partial {
        return Err(Failure::input("budget exhausted before the sweep finished; the report is partial"));
    }
    Ok(if report.violation_count() > 0 { Verdict::Refuted } else { Verdict::Holds })
}
