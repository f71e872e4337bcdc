//! Finite Krasner (m,n)-hyperrings given by explicit tables.
//!
//! A [`Candidate`] collects an m-ary hyperaddition table and an n-ary
//! multiplication table. [`validate`] checks every axiom of a commutative
//! Krasner (m,n)-hyperring with scalar identity and reports each violated
//! axiom with a concrete witness. Only a candidate that passes becomes a
//! [`FiniteHyperring`]; everything downstream assumes that.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::subset::{for_each_tuple, ElementId, Subset, MAX_CARRIER};

/// Upper bound on the number of cells in a single operation table.
const MAX_TABLE_CELLS: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum HyperringError {
    /// The tables do not describe a total operation on the declared carrier.
    #[error("malformed table: {0}")]
    Malformed(String),
    /// The tables are total but some axiom fails.
    #[error("{0}")]
    Invalid(ValidationReport),
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("argument subset {0} is empty")]
    EmptyArgument(usize),
    #[error("element {0} is outside the carrier")]
    OutOfRange(usize),
}

/// The axioms checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    NonemptyHypervalue,
    AdditiveCommutativity,
    ScalarNeutral,
    UniqueInverse,
    Reversibility,
    AdditiveAssociativity,
    MultiplicativeCommutativity,
    MultiplicativeAssociativity,
    Distributivity,
    ZeroAbsorbing,
    ScalarIdentity,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::NonemptyHypervalue,
        Axiom::AdditiveCommutativity,
        Axiom::ScalarNeutral,
        Axiom::UniqueInverse,
        Axiom::Reversibility,
        Axiom::AdditiveAssociativity,
        Axiom::MultiplicativeCommutativity,
        Axiom::MultiplicativeAssociativity,
        Axiom::Distributivity,
        Axiom::ZeroAbsorbing,
        Axiom::ScalarIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::NonemptyHypervalue => "nonempty hypervalue",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::ScalarNeutral => "scalar neutral",
            Axiom::UniqueInverse => "unique inverse",
            Axiom::Reversibility => "reversibility",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeCommutativity => "multiplicative commutativity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::Distributivity => "distributivity",
            Axiom::ZeroAbsorbing => "zero absorbing",
            Axiom::ScalarIdentity => "scalar identity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom together with the tuple that exhibits the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
    pub detail: String,
}

impl AxiomViolation {
    /// Renders the witness with element names instead of indices.
    pub fn describe(&self, names: &[String]) -> String {
        let w: Vec<&str> = self.witness.iter().map(|e| names[e.0].as_str()).collect();
        format!("{}: witness ({}) {}", self.axiom, w.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("all axioms hold");
        }
        write!(f, "{} axiom(s) violated", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {} at {:?}", v.axiom, v.witness.iter().map(|e| e.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Tables for a prospective hyperring. Cells start undefined; every cell must
/// be filled before validation.
#[derive(Clone, Debug)]
pub struct Candidate {
    name: String,
    m: usize,
    n: usize,
    names: Vec<String>,
    zero: ElementId,
    one: ElementId,
    f: Vec<Option<Subset>>,
    g: Vec<Option<ElementId>>,
}

impl Candidate {
    pub fn new(
        name: impl Into<String>,
        m: usize,
        n: usize,
        names: Vec<String>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self, HyperringError> {
        let size = names.len();
        if m < 2 || n < 2 {
            return Err(HyperringError::Malformed(format!("arities must be at least 2, got m={m}, n={n}")));
        }
        if size == 0 {
            return Err(HyperringError::Malformed("carrier is empty".into()));
        }
        if size > MAX_CARRIER {
            return Err(HyperringError::Malformed(format!(
                "carrier of {size} elements exceeds the supported {MAX_CARRIER}"
            )));
        }
        for (what, e) in [("zero", zero), ("one", one)] {
            if e.0 >= size {
                return Err(HyperringError::Malformed(format!("{what} index {} is outside the carrier", e.0)));
            }
        }
        let cells = |arity: usize| -> Result<usize, HyperringError> {
            size.checked_pow(arity as u32)
                .filter(|&c| c <= MAX_TABLE_CELLS)
                .ok_or_else(|| HyperringError::Malformed(format!("{size}^{arity} table cells is too large")))
        };
        let mut seen = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if let Some(j) = seen.insert(nm.as_str(), i) {
                return Err(HyperringError::Malformed(format!("element name {nm:?} used at {j} and {i}")));
            }
        }
        Ok(Candidate {
            name: name.into(),
            m,
            n,
            f: vec![None; cells(m)?],
            g: vec![None; cells(n)?],
            names,
            zero,
            one,
        })
    }

    /// Fills both tables from closures.
    pub fn from_fns(
        name: impl Into<String>,
        m: usize,
        n: usize,
        names: Vec<String>,
        zero: ElementId,
        one: ElementId,
        mut f: impl FnMut(&[ElementId]) -> Subset,
        mut g: impl FnMut(&[ElementId]) -> ElementId,
    ) -> Result<Self, HyperringError> {
        let mut c = Candidate::new(name, m, n, names, zero, one)?;
        let size = c.size();
        let mut buf = Vec::new();
        for_each_tuple(size, m, |t| {
            buf.clear();
            buf.extend(t.iter().map(|&i| ElementId(i)));
            let idx = tuple_index(size, t);
            c.f[idx] = Some(f(&buf));
            true
        });
        for_each_tuple(size, n, |t| {
            buf.clear();
            buf.extend(t.iter().map(|&i| ElementId(i)));
            let idx = tuple_index(size, t);
            c.g[idx] = Some(g(&buf));
            true
        });
        Ok(c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn check_args(&self, args: &[ElementId], arity: usize) -> Result<Vec<usize>, HyperringError> {
        if args.len() != arity {
            return Err(HyperringError::Arity { expected: arity, got: args.len() });
        }
        args.iter()
            .map(|e| if e.0 < self.size() { Ok(e.0) } else { Err(HyperringError::OutOfRange(e.0)) })
            .collect()
    }

    /// Sets one hyperaddition row and every permutation of it. A permutation
    /// that already holds a different value is a conflict.
    pub fn set_f(&mut self, args: &[ElementId], value: Subset) -> Result<(), HyperringError> {
        let t = self.check_args(args, self.m)?;
        if value.width() != self.size() {
            return Err(HyperringError::Malformed(format!(
                "hypervalue of width {} on a carrier of {}",
                value.width(),
                self.size()
            )));
        }
        let size = self.size();
        for p in permutations(&t) {
            let idx = tuple_index(size, &p);
            match self.f[idx] {
                Some(old) if old != value => {
                    return Err(HyperringError::Malformed(format!(
                        "conflicting hyperaddition rows for {p:?}: {old:?} vs {value:?}"
                    )))
                }
                _ => self.f[idx] = Some(value),
            }
        }
        Ok(())
    }

    /// Sets a single hyperaddition cell without touching its permutations.
    pub fn set_f_exact(&mut self, args: &[ElementId], value: Subset) -> Result<(), HyperringError> {
        let t = self.check_args(args, self.m)?;
        let idx = tuple_index(self.size(), &t);
        self.f[idx] = Some(value);
        Ok(())
    }

    /// Sets one multiplication row and every permutation of it.
    pub fn set_g(&mut self, args: &[ElementId], value: ElementId) -> Result<(), HyperringError> {
        let t = self.check_args(args, self.n)?;
        if value.0 >= self.size() {
            return Err(HyperringError::OutOfRange(value.0));
        }
        let size = self.size();
        for p in permutations(&t) {
            let idx = tuple_index(size, &p);
            match self.g[idx] {
                Some(old) if old != value => {
                    return Err(HyperringError::Malformed(format!(
                        "conflicting multiplication rows for {p:?}: {} vs {}",
                        old.0, value.0
                    )))
                }
                _ => self.g[idx] = Some(value),
            }
        }
        Ok(())
    }

    /// Sets a single multiplication cell without touching its permutations.
    pub fn set_g_exact(&mut self, args: &[ElementId], value: ElementId) -> Result<(), HyperringError> {
        let t = self.check_args(args, self.n)?;
        let idx = tuple_index(self.size(), &t);
        self.g[idx] = Some(value);
        Ok(())
    }

    pub fn f_cell(&self, args: &[ElementId]) -> Option<Subset> {
        let t = self.check_args(args, self.m).ok()?;
        self.f[tuple_index(self.size(), &t)]
    }

    pub fn g_cell(&self, args: &[ElementId]) -> Option<ElementId> {
        let t = self.check_args(args, self.n).ok()?;
        self.g[tuple_index(self.size(), &t)]
    }

    /// Validates and, when every axiom holds, freezes the tables.
    pub fn build(self) -> Result<FiniteHyperring, HyperringError> {
        let report = validate(&self)?;
        if !report.is_ok() {
            return Err(HyperringError::Invalid(report));
        }
        Ok(FiniteHyperring::from_validated(self))
    }
}

#[inline]
fn tuple_index(size: usize, t: &[usize]) -> usize {
    t.iter().rev().fold(0, |acc, &i| acc * size + i)
}

#[inline]
fn tuple_index_ids(size: usize, t: &[ElementId]) -> usize {
    t.iter().rev().fold(0, |acc, e| acc * size + e.0)
}

/// Distinct permutations of a short tuple.
fn permutations(t: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = t.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn ids(t: &[usize]) -> Vec<ElementId> {
    t.iter().map(|&i| ElementId(i)).collect()
}

/// Checks totality, then every axiom. Malformed tables are an error; axiom
/// failures are collected in the report, one witness per failed axiom.
pub fn validate(c: &Candidate) -> Result<ValidationReport, HyperringError> {
    let size = c.size();
    let (m, n) = (c.m, c.n);
    let mut f_dense = vec![Subset::empty(size); c.f.len()];
    let mut missing = None;
    for_each_tuple(size, m, |t| {
        let idx = tuple_index(size, t);
        match c.f[idx] {
            Some(v) if v.width() == size => f_dense[idx] = v,
            Some(v) => {
                missing = Some(format!("hypervalue at {t:?} has width {} instead of {size}", v.width()));
                return false;
            }
            None => {
                missing = Some(format!("hyperaddition row {t:?} is missing"));
                return false;
            }
        }
        true
    });
    if let Some(msg) = missing {
        return Err(HyperringError::Malformed(msg));
    }
    let mut g_dense = vec![0usize; c.g.len()];
    for_each_tuple(size, n, |t| {
        match c.g[tuple_index(size, t)] {
            Some(v) if v.0 < size => g_dense[tuple_index(size, t)] = v.0,
            Some(v) => {
                missing = Some(format!("product at {t:?} is {} which is outside the carrier", v.0));
                return false;
            }
            None => {
                missing = Some(format!("multiplication row {t:?} is missing"));
                return false;
            }
        }
        true
    });
    if let Some(msg) = missing {
        return Err(HyperringError::Malformed(msg));
    }

    let fv = |t: &[usize]| f_dense[tuple_index(size, t)];
    let gv = |t: &[usize]| g_dense[tuple_index(size, t)];
    let zero = c.zero.0;
    let one = c.one.0;
    let mut report = ValidationReport::default();
    let mut fail = |axiom: Axiom, witness: &[usize], detail: String| {
        report.violations.push(AxiomViolation { axiom, witness: ids(witness), detail });
    };

    // nonempty hypervalues
    let mut bad = None;
    for_each_tuple(size, m, |t| {
        if fv(t).is_empty() {
            bad = Some(t.to_vec());
        }
        bad.is_none()
    });
    if let Some(t) = bad.take() {
        fail(Axiom::NonemptyHypervalue, &t, "hypervalue is empty".into());
    }

    // permutation invariance of f
    for_each_tuple(size, m, |t| {
        let mut s = t.to_vec();
        s.sort_unstable();
        if fv(t) != fv(&s) {
            bad = Some(t.to_vec());
        }
        bad.is_none()
    });
    let f_comm = bad.is_none();
    if let Some(t) = bad.take() {
        let mut s = t.clone();
        s.sort_unstable();
        fail(
            Axiom::AdditiveCommutativity,
            &t,
            format!("differs from its permutation {s:?}: {:?} vs {:?}", fv(&t), fv(&s)),
        );
    }

    // scalar neutral
    let mut args = vec![zero; m];
    for u in 0..size {
        args[0] = u;
        let v = fv(&args);
        if v != Subset::singleton(size, ElementId(u)) {
            fail(Axiom::ScalarNeutral, &args, format!("gives {v:?} instead of {{{u}}}"));
            break;
        }
    }

    // unique inverses
    let mut neg = vec![None; size];
    let mut inverses_ok = true;
    for u in 0..size {
        let mut found = Vec::new();
        for v in 0..size {
            let mut a = vec![zero; m];
            a[0] = u;
            a[1] = v;
            if fv(&a).contains(ElementId(zero)) {
                found.push(v);
            }
        }
        if found.len() == 1 {
            neg[u] = Some(found[0]);
        } else {
            inverses_ok = false;
            let detail = if found.is_empty() {
                "has no inverse".to_string()
            } else {
                format!("has {} inverses {found:?}", found.len())
            };
            fail(Axiom::UniqueInverse, &[u], detail);
            // one witness per axiom
            break;
        }
    }

    // reversibility
    if inverses_ok {
        let neg: Vec<usize> = neg.iter().map(|v| v.unwrap()).collect();
        let mut hit = None;
        let mut a = vec![0usize; m];
        for_each_tuple(size, m, |t| {
            for u in fv(t) {
                for i in 0..m {
                    a[0] = u.0;
                    let mut k = 1;
                    for (j, &vj) in t.iter().enumerate() {
                        if j != i {
                            a[k] = neg[vj];
                            k += 1;
                        }
                    }
                    if !fv(&a).contains(ElementId(t[i])) {
                        let mut w = t.to_vec();
                        w.push(u.0);
                        hit = Some((w, i));
                        return false;
                    }
                }
            }
            true
        });
        if let Some((w, i)) = hit {
            fail(
                Axiom::Reversibility,
                &w,
                format!("last element lies in the sum of the others but slot {i} cannot be recovered"),
            );
        }
    }

    // f associativity over all placements of the inner operation; under
    // commutativity placements 0 and 1 generate all the others
    {
        let placements = if f_comm { 2 } else { m };
        let mut hit = None;
        let mut outer = vec![0usize; m];
        for_each_tuple(size, 2 * m - 1, |x| {
            let mut first: Option<Subset> = None;
            for pos in 0..placements {
                let inner = fv(&x[pos..pos + m]);
                let mut acc = Subset::empty(size);
                for c in inner {
                    outer[..pos].copy_from_slice(&x[..pos]);
                    outer[pos] = c.0;
                    outer[pos + 1..].copy_from_slice(&x[pos + m..]);
                    acc = acc.union(fv(&outer));
                }
                match first {
                    None => first = Some(acc),
                    Some(v) if v != acc => {
                        hit = Some((x.to_vec(), pos));
                        return false;
                    }
                    _ => {}
                }
            }
            true
        });
        if let Some((w, pos)) = hit {
            fail(
                Axiom::AdditiveAssociativity,
                &w,
                format!("nesting at position {pos} disagrees with nesting at position 0"),
            );
        }
    }

    // g commutativity
    for_each_tuple(size, n, |t| {
        let mut s = t.to_vec();
        s.sort_unstable();
        if gv(t) != gv(&s) {
            bad = Some(t.to_vec());
        }
        bad.is_none()
    });
    let g_comm = bad.is_none();
    if let Some(t) = bad.take() {
        fail(Axiom::MultiplicativeCommutativity, &t, "differs from a permutation".into());
    }

    // g associativity
    {
        let placements = if g_comm { 2 } else { n };
        let mut hit = None;
        let mut outer = vec![0usize; n];
        for_each_tuple(size, 2 * n - 1, |x| {
            let mut first = None;
            for pos in 0..placements {
                outer[..pos].copy_from_slice(&x[..pos]);
                outer[pos] = gv(&x[pos..pos + n]);
                outer[pos + 1..].copy_from_slice(&x[pos + n..]);
                let v = gv(&outer);
                match first {
                    None => first = Some(v),
                    Some(w) if w != v => {
                        hit = Some((x.to_vec(), pos));
                        return false;
                    }
                    _ => {}
                }
            }
            true
        });
        if let Some((w, pos)) = hit {
            fail(
                Axiom::MultiplicativeAssociativity,
                &w,
                format!("nesting at position {pos} disagrees with nesting at position 0"),
            );
        }
    }

    // distributivity in every slot (slot 0 suffices when g is commutative)
    {
        let slots = if g_comm { 1 } else { n };
        let mut hit = None;
        let mut gargs = vec![0usize; n];
        let mut fargs = vec![0usize; m];
        'slots: for slot in 0..slots {
            for_each_tuple(size, n - 1 + m, |x| {
                let (others, v) = x.split_at(n - 1);
                gargs[..slot].copy_from_slice(&others[..slot]);
                gargs[slot + 1..].copy_from_slice(&others[slot..]);
                let mut lhs = Subset::empty(size);
                for c in fv(v) {
                    gargs[slot] = c.0;
                    lhs.insert(ElementId(gv(&gargs)));
                }
                for (k, &vk) in v.iter().enumerate() {
                    gargs[slot] = vk;
                    fargs[k] = gv(&gargs);
                }
                let rhs = fv(&fargs);
                if lhs != rhs {
                    hit = Some((x.to_vec(), slot, lhs, rhs));
                    return false;
                }
                true
            });
            if hit.is_some() {
                break 'slots;
            }
        }
        if let Some((w, slot, lhs, rhs)) = hit {
            fail(
                Axiom::Distributivity,
                &w,
                format!(
                    "slot {slot}: multiplying the sum of the last {m} gives {lhs:?}, summing the products gives {rhs:?}"
                ),
            );
        }
    }

    // zero absorbing
    {
        let mut hit = None;
        let mut a = vec![0usize; n];
        'outer: for slot in 0..n {
            let mut found = None;
            for_each_tuple(size, n - 1, |others| {
                a[..slot].copy_from_slice(&others[..slot]);
                a[slot] = zero;
                a[slot + 1..].copy_from_slice(&others[slot..]);
                if gv(&a) != zero {
                    found = Some(a.clone());
                    return false;
                }
                true
            });
            if found.is_some() {
                hit = found;
                break 'outer;
            }
        }
        if let Some(w) = hit {
            fail(Axiom::ZeroAbsorbing, &w, "product with a zero factor is not zero".into());
        }
    }

    // scalar identity
    let mut a = vec![one; n];
    for u in 0..size {
        a[0] = u;
        let v = gv(&a);
        if v != u {
            fail(Axiom::ScalarIdentity, &a, format!("gives {v} instead of {u}"));
            break;
        }
    }

    Ok(report)
}

/// A validated commutative Krasner (m,n)-hyperring with scalar identity.
///
/// Immutable; all queries are pure reads.
#[derive(Clone, Debug)]
pub struct FiniteHyperring {
    name: String,
    m: usize,
    n: usize,
    names: Vec<String>,
    index: HashMap<String, ElementId>,
    zero: ElementId,
    one: ElementId,
    neg: Vec<ElementId>,
    f: Vec<Subset>,
    g: Vec<ElementId>,
    mul: Vec<ElementId>,
}

impl FiniteHyperring {
    fn from_validated(c: Candidate) -> Self {
        let size = c.size();
        let f: Vec<Subset> = c.f.into_iter().map(Option::unwrap).collect();
        let g: Vec<ElementId> = c.g.into_iter().map(Option::unwrap).collect();
        let zero = c.zero;
        let one = c.one;
        let m = c.m;
        let n = c.n;
        let fcell = |args: &[usize]| f[tuple_index(size, args)];
        let neg = (0..size)
            .map(|u| {
                let mut a = vec![zero.0; m];
                a[0] = u;
                (0..size)
                    .find(|&v| {
                        a[1] = v;
                        fcell(&a).contains(zero)
                    })
                    .map(ElementId)
                    .expect("validated structure has inverses")
            })
            .collect();
        let mut mul = vec![ElementId(0); size * size];
        let mut a = vec![one.0; n];
        for x in 0..size {
            for y in 0..size {
                a[0] = x;
                a[1] = y;
                mul[x * size + y] = g[tuple_index(size, &a)];
            }
        }
        let index = c.names.iter().enumerate().map(|(i, s)| (s.clone(), ElementId(i))).collect();
        FiniteHyperring { name: c.name, m, n, names: c.names, index, zero, one, neg, f, g, mul }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Arity of the hyperaddition.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Arity of the multiplication.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn neg(&self, u: ElementId) -> ElementId {
        self.neg[u.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: ElementId) -> &str {
        &self.names[e.0]
    }

    pub fn element(&self, name: &str) -> Option<ElementId> {
        self.index.get(name).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size()).map(ElementId)
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn subset(&self, elems: &[ElementId]) -> Subset {
        Subset::from_elements(self.size(), elems.iter().copied())
    }

    /// Subset from element names; `None` if a name does not resolve.
    pub fn subset_of_names<S: AsRef<str>>(&self, names: &[S]) -> Option<Subset> {
        let mut s = Subset::empty(self.size());
        for nm in names {
            s.insert(self.element(nm.as_ref())?);
        }
        Some(s)
    }

    pub fn describe(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.iter().map(|e| self.element_name(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn check(&self, args: &[ElementId], arity: usize) -> Result<(), HyperringError> {
        if args.len() != arity {
            return Err(HyperringError::Arity { expected: arity, got: args.len() });
        }
        match args.iter().find(|e| e.0 >= self.size()) {
            Some(e) => Err(HyperringError::OutOfRange(e.0)),
            None => Ok(()),
        }
    }

    /// Hyperaddition of m elements.
    pub fn eval_f(&self, args: &[ElementId]) -> Result<Subset, HyperringError> {
        self.check(args, self.m)?;
        Ok(self.f(args))
    }

    /// Unchecked hyperaddition; panics on a wrong arity.
    #[inline]
    pub fn f(&self, args: &[ElementId]) -> Subset {
        assert_eq!(args.len(), self.m, "hyperaddition takes {} arguments", self.m);
        self.f[tuple_index_ids(self.size(), args)]
    }

    /// Hyperaddition lifted to nonempty subsets: the union of `f` over every
    /// choice of representatives.
    pub fn eval_f_subsets(&self, args: &[Subset]) -> Result<Subset, HyperringError> {
        if args.len() != self.m {
            return Err(HyperringError::Arity { expected: self.m, got: args.len() });
        }
        if let Some(i) = args.iter().position(|s| s.is_empty()) {
            return Err(HyperringError::EmptyArgument(i));
        }
        let lists: Vec<Vec<ElementId>> = args.iter().map(|s| s.to_vec()).collect();
        let mut out = Subset::empty(self.size());
        let mut buf = vec![ElementId(0); self.m];
        for_each_choice(&lists, &mut buf, &mut |t| out = out.union(self.f(t)));
        Ok(out)
    }

    /// Multiplication of n elements.
    pub fn eval_g(&self, args: &[ElementId]) -> Result<ElementId, HyperringError> {
        self.check(args, self.n)?;
        Ok(self.g(args))
    }

    /// Unchecked multiplication; panics on a wrong arity.
    #[inline]
    pub fn g(&self, args: &[ElementId]) -> ElementId {
        assert_eq!(args.len(), self.n, "multiplication takes {} arguments", self.n);
        self.g[tuple_index_ids(self.size(), args)]
    }

    /// Elementwise image of `g` over nonempty subsets.
    pub fn eval_g_subsets(&self, args: &[Subset]) -> Result<Subset, HyperringError> {
        if args.len() != self.n {
            return Err(HyperringError::Arity { expected: self.n, got: args.len() });
        }
        if let Some(i) = args.iter().position(|s| s.is_empty()) {
            return Err(HyperringError::EmptyArgument(i));
        }
        let lists: Vec<Vec<ElementId>> = args.iter().map(|s| s.to_vec()).collect();
        let mut out = Subset::empty(self.size());
        let mut buf = vec![ElementId(0); self.n];
        for_each_choice(&lists, &mut buf, &mut |t| out.insert(self.g(t)));
        Ok(out)
    }

    /// The x-fold nested product `g_(x)` of `x(n-1)+1` arguments, nested to
    /// the left.
    pub fn eval_g_iterated(&self, x: usize, args: &[ElementId]) -> Result<ElementId, HyperringError> {
        if x == 0 {
            return Err(HyperringError::Arity { expected: 1, got: args.len() });
        }
        let expected = x * (self.n - 1) + 1;
        if args.len() != expected {
            return Err(HyperringError::Arity { expected, got: args.len() });
        }
        if let Some(e) = args.iter().find(|e| e.0 >= self.size()) {
            return Err(HyperringError::OutOfRange(e.0));
        }
        let mut acc = self.g(&args[..self.n]);
        let mut buf = vec![ElementId(0); self.n];
        for chunk in args[self.n..].chunks(self.n - 1) {
            buf[0] = acc;
            buf[1..].copy_from_slice(chunk);
            acc = self.g(&buf);
        }
        Ok(acc)
    }

    /// `g(a, b, 1, ..., 1)`.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.0 * self.size() + b.0]
    }

    /// Binary multiplication table `g(a, b, 1^(n-2))`, row-major.
    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    /// Product of any nonempty list of elements, folded through [`mul`].
    /// For commutative structures with scalar identity this equals `g` on
    /// n arguments and `g_(x)` on `x(n-1)+1` arguments.
    ///
    /// [`mul`]: FiniteHyperring::mul
    pub fn product(&self, args: &[ElementId]) -> ElementId {
        args.iter().copied().reduce(|a, b| self.mul(a, b)).unwrap_or(self.one)
    }

    /// `0^(k)` padding helper: `f(a, b, 0, ..., 0)`.
    pub fn add2(&self, a: ElementId, b: ElementId) -> Subset {
        let mut args = vec![self.zero; self.m];
        args[0] = a;
        args[1] = b;
        self.f(&args)
    }

    /// Rebuilds an unvalidated copy of the tables.
    pub fn to_candidate(&self) -> Candidate {
        Candidate {
            name: self.name.clone(),
            m: self.m,
            n: self.n,
            names: self.names.clone(),
            zero: self.zero,
            one: self.one,
            f: self.f.iter().copied().map(Some).collect(),
            g: self.g.iter().copied().map(Some).collect(),
        }
    }

    /// Same tables under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> FiniteHyperring {
        FiniteHyperring { name: name.into(), ..self.clone() }
    }

    /// True when both structures have identical tables and element order.
    pub fn same_tables(&self, other: &FiniteHyperring) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.zero == other.zero
            && self.one == other.one
            && self.f == other.f
            && self.g == other.g
    }
}

fn for_each_choice(lists: &[Vec<ElementId>], buf: &mut [ElementId], visit: &mut impl FnMut(&[ElementId])) {
    fn rec(
        lists: &[Vec<ElementId>],
        depth: usize,
        buf: &mut [ElementId],
        visit: &mut impl FnMut(&[ElementId]),
    ) {
        if depth == lists.len() {
            visit(buf);
            return;
        }
        for &e in &lists[depth] {
            buf[depth] = e;
            rec(lists, depth + 1, buf, visit);
        }
    }
    rec(lists, 0, buf, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn e(i: usize) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(permutations(&[1, 0, 1]).len(), 3);
        assert_eq!(permutations(&[2, 1, 0]).len(), 6);
    }

    #[test]
    fn example_tables_validate() {
        let h = corpus::three_element_example();
        assert_eq!(h.size(), 3);
        let u = h.element("u").unwrap();
        let one = h.one();
        // 1 + 1 is the whole carrier, u + u = {0, u}
        assert_eq!(h.eval_f(&[one, one]).unwrap(), h.carrier());
        assert_eq!(h.eval_f(&[u, u]).unwrap(), h.subset(&[h.zero(), u]));
        assert_eq!(h.eval_g(&[u, u]).unwrap(), h.zero());
        assert_eq!(h.neg(u), u);
    }

    #[test]
    fn arity_errors() {
        let h = corpus::three_element_example();
        assert!(matches!(h.eval_f(&[e(0)]), Err(HyperringError::Arity { expected: 2, got: 1 })));
        assert!(matches!(h.eval_g(&[e(0), e(0), e(0)]), Err(HyperringError::Arity { .. })));
        assert!(matches!(h.eval_g_iterated(1, &[e(0)]), Err(HyperringError::Arity { expected: 2, .. })));
        assert!(matches!(h.eval_f(&[e(0), e(7)]), Err(HyperringError::OutOfRange(7))));
    }

    #[test]
    fn missing_row_is_malformed_not_axiom_failure() {
        let names = vec!["0".to_string(), "1".to_string()];
        let mut c = Candidate::new("partial", 2, 2, names, e(0), e(1)).unwrap();
        c.set_f(&[e(0), e(0)], Subset::singleton(2, e(0))).unwrap();
        assert!(matches!(validate(&c), Err(HyperringError::Malformed(_))));
    }

    #[test]
    fn conflicting_rows_rejected() {
        let names = vec!["0".to_string(), "1".to_string()];
        let mut c = Candidate::new("c", 2, 2, names, e(0), e(1)).unwrap();
        c.set_f(&[e(0), e(1)], Subset::singleton(2, e(1))).unwrap();
        let err = c.set_f(&[e(1), e(0)], Subset::singleton(2, e(0))).unwrap_err();
        assert!(matches!(err, HyperringError::Malformed(_)));
    }

    #[test]
    fn noncommutative_f_is_reported() {
        let h = corpus::ring_zk(3);
        let mut c = h.to_candidate();
        c.set_f_exact(&[e(1), e(2)], Subset::singleton(3, e(1))).unwrap();
        let report = validate(&c).unwrap();
        assert!(report.violated(Axiom::AdditiveCommutativity).is_some());
    }

    #[test]
    fn duplicate_names_rejected() {
        let names = vec!["a".to_string(), "a".to_string()];
        assert!(Candidate::new("dup", 2, 2, names, e(0), e(1)).is_err());
    }
}
