//! JSON structure documents.
//!
//! ```json
//! {
//!   "name": "three-element", "m": 2, "n": 2,
//!   "elements": ["0", "1", "u"], "zero": "0", "one": "1",
//!   "f": [{"args": ["u", "u"], "value": ["0", "u"]}, ...],
//!   "g": [{"args": ["u", "u"], "value": "0"}, ...]
//! }
//! ```
//!
//! Rows may be given once per multiset of arguments; the loader fills in the
//! permutations and rejects rows that disagree. Emitted documents use
//! canonical names `a0..a{N-1}` with the original names kept in `name_map`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperring::{Candidate, FiniteHyperring, HyperringError};
use crate::subset::{for_each_multiset, for_each_tuple, ElementId, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub f: Vec<FRow>,
    pub g: Vec<GRow>,
    /// Canonical name to original name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name_map: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FRow {
    pub args: Vec<String>,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GRow {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot parse structure document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("{op} row {args:?} has {got} arguments, expected {expected}")]
    Arity { op: &'static str, args: Vec<String>, expected: usize, got: usize },
    #[error("{op} row for ({}) is missing", .args.join(", "))]
    MissingRow { op: &'static str, args: Vec<String> },
    #[error(transparent)]
    Structure(#[from] HyperringError),
}

impl StructureDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    fn id(&self, name: &str) -> Result<ElementId, DocumentError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .map(ElementId)
            .ok_or_else(|| DocumentError::UnknownElement(name.to_string()))
    }

    fn ids(&self, op: &'static str, args: &[String], arity: usize) -> Result<Vec<ElementId>, DocumentError> {
        if args.len() != arity {
            return Err(DocumentError::Arity { op, args: args.to_vec(), expected: arity, got: args.len() });
        }
        args.iter().map(|a| self.id(a)).collect()
    }

    /// Fills the tables without checking the axioms.
    pub fn to_candidate(&self) -> Result<Candidate, DocumentError> {
        let mut c = Candidate::new(
            self.name.clone(),
            self.m,
            self.n,
            self.elements.clone(),
            self.id(&self.zero)?,
            self.id(&self.one)?,
        )?;
        let size = self.elements.len();
        for row in &self.f {
            let args = self.ids("f", &row.args, self.m)?;
            let value = row.value.iter().map(|v| self.id(v)).collect::<Result<Vec<_>, _>>()?;
            c.set_f(&args, Subset::from_elements(size, value))?;
        }
        for row in &self.g {
            let args = self.ids("g", &row.args, self.n)?;
            c.set_g(&args, self.id(&row.value)?)?;
        }
        let mut missing = None;
        for (op, arity) in [("f", self.m), ("g", self.n)] {
            for_each_tuple(size, arity, |t| {
                let args: Vec<ElementId> = t.iter().map(|&i| ElementId(i)).collect();
                let present = if op == "f" { c.f_cell(&args).is_some() } else { c.g_cell(&args).is_some() };
                if !present {
                    missing = Some((op, t.iter().map(|&i| self.elements[i].clone()).collect()));
                }
                present
            });
            if let Some((op, args)) = missing {
                return Err(DocumentError::MissingRow { op, args });
            }
        }
        Ok(c)
    }

    /// Loads and validates.
    pub fn build(&self) -> Result<FiniteHyperring, DocumentError> {
        Ok(self.to_candidate()?.build()?)
    }

    /// One row per multiset of arguments, with the structure's own names.
    pub fn from_structure(h: &FiniteHyperring) -> Self {
        let names = h.names();
        let ids = |t: &[usize]| -> Vec<ElementId> { t.iter().map(|&i| ElementId(i)).collect() };
        let named = |t: &[usize]| -> Vec<String> { t.iter().map(|&i| names[i].clone()).collect() };
        let mut f = Vec::new();
        for_each_multiset(h.size(), h.m(), |t| {
            let value = h.f(&ids(t)).iter().map(|e| names[e.0].clone()).collect();
            f.push(FRow { args: named(t), value });
            true
        });
        let mut g = Vec::new();
        for_each_multiset(h.size(), h.n(), |t| {
            g.push(GRow { args: named(t), value: names[h.g(&ids(t)).0].clone() });
            true
        });
        StructureDocument {
            name: h.name().to_string(),
            m: h.m(),
            n: h.n(),
            elements: names.to_vec(),
            zero: names[h.zero().0].clone(),
            one: names[h.one().0].clone(),
            f,
            g,
            name_map: None,
        }
    }

    /// Renames elements to `a0..a{N-1}` and records the originals.
    pub fn canonical(h: &FiniteHyperring) -> Self {
        let canon: Vec<String> = (0..h.size()).map(|i| format!("a{i}")).collect();
        let renamed = |s: &str| canon[h.element(s).expect("own element").0].clone();
        let mut doc = Self::from_structure(h);
        for row in &mut doc.f {
            row.args = row.args.iter().map(|a| renamed(a)).collect();
            row.value = row.value.iter().map(|a| renamed(a)).collect();
        }
        for row in &mut doc.g {
            row.args = row.args.iter().map(|a| renamed(a)).collect();
            row.value = renamed(&row.value);
        }
        doc.zero = renamed(&doc.zero);
        doc.one = renamed(&doc.one);
        doc.name_map = Some(canon.iter().cloned().zip(h.names().iter().cloned()).collect());
        doc.elements = canon;
        doc
    }
}
