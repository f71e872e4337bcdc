//! Built-in finite structures.
//!
//! The base members are small tabular hyperrings; [`standard_corpus`] adds
//! pairwise direct products and localizations on top of them.

use crate::analytic::Modular;
use crate::construct;
use crate::hyperring::{Candidate, FiniteHyperring};
use crate::lattice::IdealLattice;
use crate::subset::{ElementId, Subset};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The three-element (2,2)-hyperring on {0, 1, u}:
///
/// | +  | 0   | 1   | u     |
/// |----|-----|-----|-------|
/// | 0  | 0   | 1   | u     |
/// | 1  | 1   | K   | 1     |
/// | u  | u   | 1   | {0,u} |
///
/// with 1 the multiplicative identity and u·u = 0.
pub fn three_element_example() -> FiniteHyperring {
    three_element_with_arity(2).expect("three-element tables are valid")
}

/// The three-element structure with the same tables, multiplication read as
/// an n-ary product `g(x_1..x_n) = x_1 ··· x_n`.
pub fn three_element_with_arity(n: usize) -> Result<FiniteHyperring, crate::HyperringError> {
    let (z, o, u) = (ElementId(0), ElementId(1), ElementId(2));
    let name = if n == 2 { "three-element".to_string() } else { format!("three-element-2-{n}") };
    let add = |a: ElementId, b: ElementId| -> Subset {
        let s = |v: &[ElementId]| Subset::from_elements(3, v.iter().copied());
        match (a.0.min(b.0), a.0.max(b.0)) {
            (0, x) => s(&[ElementId(x)]),
            (1, 1) => Subset::full(3),
            (1, 2) => s(&[o]),
            (2, 2) => s(&[z, u]),
            _ => unreachable!(),
        }
    };
    let mul2 = |a: ElementId, b: ElementId| -> ElementId {
        if a == z || b == z {
            z
        } else if a == o {
            b
        } else if b == o {
            a
        } else {
            z
        }
    };
    Candidate::from_fns(
        name,
        2,
        n,
        names(&["0", "1", "u"]),
        z,
        o,
        |args| add(args[0], args[1]),
        |args| args.iter().copied().reduce(mul2).unwrap(),
    )?
    .build()
}

/// The ring Z_k as an (m,n)-hyperring: singleton sums of m terms and products
/// of n factors.
pub fn ring_as_hyperring(k: usize, m: usize, n: usize) -> Result<FiniteHyperring, crate::HyperringError> {
    let name = if (m, n) == (2, 2) { format!("z{k}") } else { format!("z{k}-{m}-{n}") };
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let one = if k == 1 { 0 } else { 1 };
    Candidate::from_fns(
        name,
        m,
        n,
        labels,
        ElementId(0),
        ElementId(one),
        |args| Subset::singleton(k, ElementId(args.iter().map(|e| e.0).sum::<usize>() % k)),
        |args| ElementId(args.iter().fold(1 % k, |acc, e| acc * e.0 % k)),
    )?
    .build()
}

/// Z_k with ordinary addition and multiplication.
pub fn ring_zk(k: usize) -> FiniteHyperring {
    ring_as_hyperring(k, 2, 2).expect("Z_k is a ring")
}

/// The two-element hyperfield {0, 1} with 1 + 1 = {0, 1}.
pub fn krasner_hyperfield() -> FiniteHyperring {
    let (z, o) = (ElementId(0), ElementId(1));
    Candidate::from_fns(
        "krasner-hyperfield",
        2,
        2,
        names(&["0", "1"]),
        z,
        o,
        |a| match (a[0].0, a[1].0) {
            (1, 1) => Subset::full(2),
            (x, y) => Subset::singleton(2, ElementId(x.max(y))),
        },
        |a| ElementId(a[0].0 * a[1].0),
    )
    .and_then(Candidate::build)
    .expect("hyperfield tables are valid")
}

/// The sign hyperfield {0, 1, -1}: 1 + (-1) is everything, like signs add to
/// their common sign.
pub fn sign_hyperfield() -> FiniteHyperring {
    // indices: 0 -> 0, 1 -> 1, 2 -> -1
    let sign = |e: ElementId| -> i32 {
        match e.0 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    };
    let elem = |s: i32| -> ElementId {
        match s {
            0 => ElementId(0),
            1 => ElementId(1),
            _ => ElementId(2),
        }
    };
    Candidate::from_fns(
        "sign-hyperfield",
        2,
        2,
        names(&["0", "1", "-1"]),
        ElementId(0),
        ElementId(1),
        |a| {
            let (x, y) = (sign(a[0]), sign(a[1]));
            if x == 0 || x == y {
                Subset::singleton(3, elem(y))
            } else if y == 0 {
                Subset::singleton(3, elem(x))
            } else {
                Subset::full(3)
            }
        },
        |a| elem(sign(a[0]) * sign(a[1])),
    )
    .and_then(Candidate::build)
    .expect("sign hyperfield tables are valid")
}

/// Moduli used for the ring members of the corpus.
pub const RING_MODULI: [usize; 5] = [2, 3, 4, 6, 8];

/// Base corpus members: the three-element structure, the rings Z_k, and a
/// few variants with other arities or genuinely multivalued sums.
pub fn base_members() -> Vec<FiniteHyperring> {
    let mut out = vec![three_element_example()];
    out.extend(RING_MODULI.iter().map(|&k| ring_zk(k)));
    out.push(three_element_with_arity(3).expect("valid"));
    out.push(ring_as_hyperring(4, 3, 3).expect("valid"));
    out.push(ring_as_hyperring(2, 2, 3).expect("valid"));
    out.push(krasner_hyperfield());
    out.push(sign_hyperfield());
    out
}

/// Looks up a base member by name.
pub fn builtin(name: &str) -> Option<FiniteHyperring> {
    base_members().into_iter().find(|h| h.name() == name)
}

/// How a corpus member was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Base,
    /// Direct product of two earlier members, by corpus index.
    Product(usize, usize),
    /// Fractions of an earlier member at a multiplicative set.
    Localization { base: usize, mulset: Subset },
    /// Exact valuation model of a large ring; only its hyperideal lattice.
    Witness,
}

#[derive(Clone, Debug)]
pub enum Member {
    Table(FiniteHyperring),
    Valuation(IdealLattice),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub member: Member,
    pub origin: Origin,
}

impl CorpusEntry {
    pub fn size(&self) -> usize {
        match &self.member {
            Member::Table(h) => h.size(),
            Member::Valuation(lat) => lat.size(),
        }
    }

    pub fn table(&self) -> Option<&FiniteHyperring> {
        match &self.member {
            Member::Table(h) => Some(h),
            Member::Valuation(_) => None,
        }
    }
}

/// Largest factor size used for corpus products.
pub const PRODUCT_FACTOR_MAX: usize = 4;
/// Largest multiplicative set used for corpus localizations.
pub const LOCALIZATION_MULSET_MAX: usize = 3;

/// The modular rings included as witness models: `(p, k, m, n)`.
pub const WITNESS_MODELS: [(u64, u32, usize, usize); 2] = [(2, 8, 2, 2), (5, 25, 4, 3)];

/// Base members, pairwise products of the small ones, their localizations,
/// and the valuation models of the modular rings. Localizations whose
/// tables repeat an earlier member are dropped.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let base = base_members();
    let mut out: Vec<CorpusEntry> = base
        .iter()
        .map(|h| CorpusEntry { name: h.name().to_string(), member: Member::Table(h.clone()), origin: Origin::Base })
        .collect();
    let small: Vec<usize> = (0..base.len()).filter(|&i| base[i].size() <= PRODUCT_FACTOR_MAX).collect();
    for (x, &i) in small.iter().enumerate() {
        for &j in &small[x..] {
            if (base[i].m(), base[i].n()) != (base[j].m(), base[j].n()) {
                continue;
            }
            let p = construct::direct_product(&base[i], &base[j]).expect("same arity, small carrier");
            out.push(CorpusEntry {
                name: p.structure.name().to_string(),
                member: Member::Table(p.structure),
                origin: Origin::Product(i, j),
            });
        }
    }
    for (i, h) in base.iter().enumerate() {
        let lat = IdealLattice::new(h).expect("base members are small");
        for s in lat.multiplicative_sets(LOCALIZATION_MULSET_MAX) {
            let Ok(loc) = construct::localize(h, s) else { continue };
            let st = loc.structure;
            if out.iter().any(|e| e.table().is_some_and(|t| t.same_tables(&st))) {
                continue;
            }
            out.push(CorpusEntry { name: st.name().to_string(), member: Member::Table(st), origin: Origin::Localization { base: i, mulset: s } });
        }
    }
    for (p, k, m, n) in WITNESS_MODELS {
        let model = Modular::new(p, k, m, n).expect("valid model parameters");
        out.push(CorpusEntry { name: model.name(), member: Member::Valuation(model.valuation_lattice()), origin: Origin::Witness });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_validate_and_are_named_uniquely() {
        let all = base_members();
        let mut names: Vec<&str> = all.iter().map(|h| h.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn ring_negation() {
        let z6 = ring_zk(6);
        assert_eq!(z6.neg(ElementId(2)), ElementId(4));
        assert_eq!(z6.neg(ElementId(0)), ElementId(0));
    }

    #[test]
    fn hyperfield_sums() {
        let k = krasner_hyperfield();
        assert_eq!(k.add2(ElementId(1), ElementId(1)), k.carrier());
        let s = sign_hyperfield();
        assert_eq!(s.add2(ElementId(1), ElementId(2)), s.carrier());
        assert_eq!(s.neg(ElementId(1)), ElementId(2));
    }

    #[test]
    fn standard_corpus_shape() {
        let c = standard_corpus();
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert!(c.iter().any(|e| matches!(e.origin, Origin::Product(..))));
        assert!(c.iter().any(|e| matches!(e.origin, Origin::Localization { .. })));
        assert_eq!(c.iter().filter(|e| e.origin == Origin::Witness).count(), 2);
    }
}
