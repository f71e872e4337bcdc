//! Resolving `--structure` arguments and element-name lists.

use std::fs;

use krasner::analytic::{parse_rational, Interval, Modular, RationalSet};
use krasner::corpus;
use krasner::document::StructureDocument;
use krasner::{Candidate, ElementId, FiniteHyperring, HyperringError, Subset};
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::Failure;

pub enum Source {
    Table(FiniteHyperring),
    Modular(Modular),
    UnitInterval,
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Table(h) => h.name().to_string(),
            Source::Modular(z) => z.name(),
            Source::UnitInterval => "unit-interval-max".to_string(),
        }
    }

    pub fn table(&self, what: &str) -> Result<&FiniteHyperring, Failure> {
        match self {
            Source::Table(h) => Ok(h),
            _ => Err(Failure::input(format!("{what} needs a tabular structure; {} is not one", self.name()))),
        }
    }
}

/// `builtin:NAME` or a path to a JSON structure document.
pub fn load(arg: &str) -> Result<Source, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin(name);
    }
    let c = load_candidate(arg)?;
    let h = c.build().map_err(|e| match e {
        HyperringError::Invalid(report) => {
            let lines: Vec<String> = report.violations.iter().map(|v| v.describe(&names_of(arg))).collect();
            Failure::input(format!("{arg} is not a Krasner hyperring: {}", lines.join("; ")))
        }
        e => Failure::input(format!("{arg}: {e}")),
    })?;
    Ok(Source::Table(h))
}

fn names_of(arg: &str) -> Vec<String> {
    load_candidate(arg).map(|c| c.names().to_vec()).unwrap_or_default()
}

/// Tables as written, before the axioms are checked.
pub fn load_candidate(arg: &str) -> Result<Candidate, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return match builtin(name)? {
            Source::Table(h) => Ok(h.to_candidate()),
            other => Err(Failure::input(format!("{} has no finite tables", other.name()))),
        };
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))?;
    let doc = StructureDocument::from_json(&text).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
    doc.to_candidate().map_err(|e| Failure::input(format!("{arg}: {e}")))
}

fn builtin(name: &str) -> Result<Source, Failure> {
    if name == "unit-interval-max" {
        return Ok(Source::UnitInterval);
    }
    if let Some(args) = name.strip_prefix("modular(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let bad = || Failure::input(format!("expected modular(p,k,m,n), got {name}"));
        let [p, k, m, n] = parts[..] else { return Err(bad()) };
        let z = Modular::new(
            p.parse().map_err(|_| bad())?,
            k.parse().map_err(|_| bad())?,
            m.parse().map_err(|_| bad())?,
            n.parse().map_err(|_| bad())?,
        )
        .map_err(|e| Failure::input(e.to_string()))?;
        return Ok(Source::Modular(z));
    }
    corpus::builtin(name).map(Source::Table).ok_or_else(|| {
        let known: Vec<String> = corpus::base_members().iter().map(|h| h.name().to_string()).collect();
        Failure::input(format!(
            "unknown builtin {name:?}; known: {}, modular(p,k,m,n), unit-interval-max",
            known.join(", ")
        ))
    })
}

/// Comma-separated element names.
pub fn names(list: &str) -> Vec<String> {
    if list.trim().is_empty() {
        return Vec::new();
    }
    list.split(',').map(|s| s.trim().to_string()).collect()
}

pub fn elements(h: &FiniteHyperring, list: &str) -> Result<Vec<ElementId>, Failure> {
    names(list)
        .iter()
        .map(|n| h.element(n).ok_or_else(|| Failure::input(format!("unknown element {n:?} in {}", h.name()))))
        .collect()
}

pub fn subset(h: &FiniteHyperring, list: &str) -> Result<Subset, Failure> {
    Ok(h.subset(&elements(h, list)?))
}

/// `5^3`, `125`, or `0`.
pub fn modular_element(z: &Modular, s: &str) -> Result<BigUint, Failure> {
    let bad = || Failure::input(format!("cannot read {s:?} as an element of {}", z.name()));
    let value = match s.split_once('^') {
        Some((b, e)) => {
            let b: BigUint = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            num_traits::Pow::pow(b, e)
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    Ok(value % z.modulus())
}

/// `⟨p^j⟩` from a generator.
pub fn modular_ideal(z: &Modular, list: &str) -> Result<u32, Failure> {
    let gens = names(list);
    let [g] = &gens[..] else {
        return Err(Failure::input("give the hyperideal of a modular structure by one generator, e.g. 5^5"));
    };
    Ok(z.valuation(&modular_element(z, g)?))
}

/// `0.5` (closed), `[0,0.5]`, or `[0,0.5)`.
pub fn interval(s: &str) -> Result<Interval, Failure> {
    let t = s.trim();
    let read = |x: &str| parse_rational(x).map_err(|e| Failure::input(e.to_string()));
    if let Some(rest) = t.strip_prefix('[') {
        let closed = rest.ends_with(']');
        let inner = rest.strip_suffix([']', ')']).ok_or_else(|| Failure::input(format!("bad interval {s:?}")))?;
        let (lo, hi) = inner.split_once(',').ok_or_else(|| Failure::input(format!("bad interval {s:?}")))?;
        if read(lo)? != BigRational::from_integer(0.into()) {
            return Err(Failure::input(format!("hyperideals of the unit interval start at 0, got {s:?}")));
        }
        let hi = read(hi)?;
        return Ok(if closed { Interval::closed(hi) } else { Interval::open(hi) });
    }
    Ok(Interval::closed(read(t)?))
}

/// `1,0.5` (finite) or `(0,0.1]` (range).
pub fn rational_set(s: &str) -> Result<RationalSet, Failure> {
    let t = s.trim();
    let read = |x: &str| parse_rational(x).map_err(|e| Failure::input(e.to_string()));
    let open = t.starts_with('(') || t.starts_with('[');
    if open {
        let lo_closed = t.starts_with('[');
        let hi_closed = t.ends_with(']');
        let inner = &t[1..t.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(|| Failure::input(format!("bad range {s:?}")))?;
        return Ok(RationalSet::Range { lo: read(lo)?, lo_closed, hi: read(hi)?, hi_closed });
    }
    Ok(RationalSet::Finite(names(t).iter().map(|x| read(x)).collect::<Result<_, _>>()?))
}

pub fn rationals(s: &str) -> Result<Vec<BigRational>, Failure> {
    names(s).iter().map(|x| parse_rational(x).map_err(|e| Failure::input(e.to_string()))).collect()
}
