//! Reduction maps φ (shrinking) and expansion maps δ (growing) on the
//! hyperideals of one structure.
//!
//! Built-in maps are named by id strings (`phi0`, `phi1`, `phiN`, `phiW`,
//! `pow:k`, `delta0`, `delta1`, `deltaK`, `deltaM`). Every map is
//! materialized as a table over the indices of an [`IdealLattice`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{IdealLattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("unknown map id {0:?}")]
    UnknownId(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("map table has {got} entries, lattice has {expected} hyperideals")]
    TableSize { expected: usize, got: usize },
    #[error("map table entry {0} is not a hyperideal index")]
    TableRange(usize),
    #[error("map {id} breaks its contract: {detail}")]
    Contract { id: String, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Reduction,
    Expansion,
}

/// Built-in reduction maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiId {
    /// `P ↦ {0}`
    Phi0,
    /// `P ↦ P`
    Phi1,
    /// `P ↦ g(P^(n))`
    PhiN,
    /// `P ↦ ∩ P^[x(n-1)+1]`
    PhiW,
    /// `P ↦ P^[k]`
    Pow(usize),
}

/// Built-in expansion maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaId {
    /// `P ↦ P`
    Delta0,
    /// `P ↦ rad(P)`
    Delta1,
    /// `P ↦ K`
    DeltaK,
    /// `P ↦` intersection of the maximal hyperideals containing `P`
    DeltaM,
}

impl fmt::Display for PhiId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiId::Phi0 => f.write_str("phi0"),
            PhiId::Phi1 => f.write_str("phi1"),
            PhiId::PhiN => f.write_str("phiN"),
            PhiId::PhiW => f.write_str("phiW"),
            PhiId::Pow(k) => write!(f, "pow:{k}"),
        }
    }
}

impl fmt::Display for DeltaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaId::Delta0 => "delta0",
            DeltaId::Delta1 => "delta1",
            DeltaId::DeltaK => "deltaK",
            DeltaId::DeltaM => "deltaM",
        })
    }
}

impl FromStr for PhiId {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, MapError> {
        Ok(match s {
            "phi0" => PhiId::Phi0,
            "phi1" => PhiId::Phi1,
            "phiN" => PhiId::PhiN,
            "phiW" => PhiId::PhiW,
            _ => match s.strip_prefix("pow:").and_then(|k| k.parse::<usize>().ok()) {
                Some(k) => PhiId::Pow(k),
                None => return Err(MapError::UnknownId(s.to_string())),
            },
        })
    }
}

impl FromStr for DeltaId {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, MapError> {
        Ok(match s {
            "delta0" => DeltaId::Delta0,
            "delta1" => DeltaId::Delta1,
            "deltaK" => DeltaId::DeltaK,
            "deltaM" => DeltaId::DeltaM,
            _ => return Err(MapError::UnknownId(s.to_string())),
        })
    }
}

impl PhiId {
    /// Tabulates the map over every hyperideal of `lat`.
    pub fn materialize(self, lat: &IdealLattice) -> Result<IdealMap, MapError> {
        let table = (0..lat.len())
            .map(|i| {
                Ok(match self {
                    PhiId::Phi0 => lat.zero_index(),
                    PhiId::Phi1 => i,
                    PhiId::PhiN => lat.ideal_power(i, lat.n())?.0,
                    PhiId::PhiW => lat.power_intersection(i),
                    PhiId::Pow(k) => lat.ideal_power(i, k)?.0,
                })
            })
            .collect::<Result<Vec<_>, LatticeError>>()?;
        Ok(IdealMap { id: self.to_string(), kind: MapKind::Reduction, table })
    }
}

impl DeltaId {
    pub fn materialize(self, lat: &IdealLattice) -> IdealMap {
        let table = (0..lat.len())
            .map(|i| match self {
                DeltaId::Delta0 => i,
                DeltaId::Delta1 => lat.radical_by_primes(i),
                DeltaId::DeltaK => lat.full_index(),
                DeltaId::DeltaM => lat.maximal_cover(i),
            })
            .collect();
        IdealMap { id: self.to_string(), kind: MapKind::Expansion, table }
    }

    pub const ALL: [DeltaId; 4] = [DeltaId::Delta0, DeltaId::Delta1, DeltaId::DeltaK, DeltaId::DeltaM];
}

/// A hyperideal map tabulated over the indices of one lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealMap {
    id: String,
    kind: MapKind,
    table: Vec<usize>,
}

/// Contract failures of a map over one lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractReport {
    /// `P` with `φ(P) ⊄ P` (or `P ⊄ δ(P)`).
    pub containment: Vec<usize>,
    /// `(P, Q)` with `P ⊆ Q` but the images not nested.
    pub monotonicity: Vec<(usize, usize)>,
}

impl ContractReport {
    pub fn is_ok(&self) -> bool {
        self.containment.is_empty() && self.monotonicity.is_empty()
    }
}

impl IdealMap {
    /// A user map from an explicit table. Call [`IdealMap::verify_contract`]
    /// or use [`IdealMap::checked`] before relying on it.
    pub fn from_table(id: impl Into<String>, kind: MapKind, table: Vec<usize>, lat: &IdealLattice) -> Result<Self, MapError> {
        if table.len() != lat.len() {
            return Err(MapError::TableSize { expected: lat.len(), got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= lat.len()) {
            return Err(MapError::TableRange(bad));
        }
        Ok(IdealMap { id: id.into(), kind, table })
    }

    /// Like [`IdealMap::from_table`], rejecting maps that break the contract.
    pub fn checked(id: impl Into<String>, kind: MapKind, table: Vec<usize>, lat: &IdealLattice) -> Result<Self, MapError> {
        let map = Self::from_table(id, kind, table, lat)?;
        let report = map.verify_contract(lat);
        if !report.is_ok() {
            let detail = match (report.containment.first(), report.monotonicity.first()) {
                (Some(&p), _) => format!("containment fails at {}", lat.describe(lat.ideal(p))),
                (None, Some(&(p, q))) => format!(
                    "monotonicity fails for {} ⊆ {}",
                    lat.describe(lat.ideal(p)),
                    lat.describe(lat.ideal(q))
                ),
                _ => unreachable!(),
            };
            return Err(MapError::Contract { id: map.id, detail });
        }
        Ok(map)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn verify_contract(&self, lat: &IdealLattice) -> ContractReport {
        let mut report = ContractReport::default();
        for i in 0..lat.len() {
            let (p, img) = (lat.ideal(i), lat.ideal(self.table[i]));
            let ok = match self.kind {
                MapKind::Reduction => img.is_subset(p),
                MapKind::Expansion => p.is_subset(img),
            };
            if !ok {
                report.containment.push(i);
            }
        }
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                if i != j
                    && lat.ideal(i).is_subset(lat.ideal(j))
                    && !lat.ideal(self.table[i]).is_subset(lat.ideal(self.table[j]))
                {
                    report.monotonicity.push((i, j));
                }
            }
        }
        report
    }

    /// `φ∘φ = φ`.
    pub fn is_idempotent(&self) -> bool {
        (0..self.table.len()).all(|i| self.table[self.table[i]] == self.table[i])
    }
}

/// The built-in reductions used by the sweep for arity `n`.
pub fn sweep_reductions(n: usize) -> Vec<PhiId> {
    vec![PhiId::Phi0, PhiId::Phi1, PhiId::PhiN, PhiId::PhiW, PhiId::Pow(2 * (n - 1) + 1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn ids_round_trip() {
        for s in ["phi0", "phi1", "phiN", "phiW", "pow:5"] {
            assert_eq!(s.parse::<PhiId>().unwrap().to_string(), s);
        }
        for s in ["delta0", "delta1", "deltaK", "deltaM"] {
            assert_eq!(s.parse::<DeltaId>().unwrap().to_string(), s);
        }
        assert!("phi2".parse::<PhiId>().is_err());
        assert!("pow:x".parse::<PhiId>().is_err());
    }

    #[test]
    fn three_element_maps() {
        let h = corpus::three_element_example();
        let lat = IdealLattice::new(&h).unwrap();
        assert_eq!(PhiId::PhiN.materialize(&lat).unwrap().apply(1), 0);
        assert_eq!(PhiId::PhiW.materialize(&lat).unwrap().apply(1), 0);
        assert_eq!(DeltaId::DeltaM.materialize(&lat).apply(0), 1);
        assert!(DeltaId::Delta1.materialize(&lat).verify_contract(&lat).is_ok());
    }

    #[test]
    fn broken_reduction_is_caught() {
        let h = corpus::three_element_example();
        let lat = IdealLattice::new(&h).unwrap();
        let to_k = vec![lat.full_index(); lat.len()];
        let map = IdealMap::from_table("toK", MapKind::Reduction, to_k.clone(), &lat).unwrap();
        assert_eq!(map.verify_contract(&lat).containment, vec![0, 1]);
        assert!(IdealMap::checked("toK", MapKind::Reduction, to_k, &lat).is_err());
    }

    #[test]
    fn bad_exponent_on_ternary() {
        let h = corpus::ring_as_hyperring(4, 3, 3).unwrap();
        let lat = IdealLattice::new(&h).unwrap();
        assert!(PhiId::Pow(4).materialize(&lat).is_err());
        assert!(PhiId::Pow(5).materialize(&lat).is_ok());
    }
}
