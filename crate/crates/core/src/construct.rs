//! Direct products, hyperrings of fractions, and homomorphisms.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::hyperring::{Candidate, FiniteHyperring, HyperringError};
use crate::lattice::IdealLattice;
use crate::maps::IdealMap;
use crate::subset::{for_each_tuple, ElementId, Subset, MAX_CARRIER};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("arity mismatch: ({0}, {1}) vs ({2}, {3})")]
    ArityMismatch(usize, usize, usize, usize),
    #[error("constructed tables are not a hyperring: {0}")]
    Hyperring(#[from] HyperringError),
    #[error("{0:?} is not a multiplicative set")]
    NotMultiplicative(Subset),
    #[error("fraction relation is not an equivalence: {0}")]
    NotEquivalence(String),
    #[error("induced {op} is not well defined: {detail}")]
    IllDefined { op: &'static str, detail: String },
    #[error("carrier of {0} elements is too large to construct")]
    TooLarge(usize),
    #[error("{0:?} is not a product of factor hyperideals")]
    NonFactorwise(Subset),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map has {got} entries, source has {expected} elements")]
    MapSize { expected: usize, got: usize },
}

/// `K1 × K2` with componentwise operations. Element `(i, j)` has index
/// `i·|K2| + j`.
#[derive(Clone, Debug)]
pub struct Product {
    pub structure: FiniteHyperring,
    left: usize,
    right: usize,
}

pub fn direct_product(h1: &FiniteHyperring, h2: &FiniteHyperring) -> Result<Product, ConstructError> {
    if (h1.m(), h1.n()) != (h2.m(), h2.n()) {
        return Err(ConstructError::ArityMismatch(h1.m(), h1.n(), h2.m(), h2.n()));
    }
    let (a, b) = (h1.size(), h2.size());
    if a * b > MAX_CARRIER {
        return Err(ConstructError::TooLarge(a * b));
    }
    let names = (0..a * b)
        .map(|k| format!("({},{})", h1.element_name(ElementId(k / b)), h2.element_name(ElementId(k % b))))
        .collect();
    let pair = |i: usize, j: usize| ElementId(i * b + j);
    let mut left = vec![ElementId(0); h1.m().max(h1.n())];
    let mut right = left.clone();
    let c = Candidate::from_fns(
        format!("{}*{}", h1.name(), h2.name()),
        h1.m(),
        h1.n(),
        names,
        pair(h1.zero().0, h2.zero().0),
        pair(h1.one().0, h2.one().0),
        |args| {
            for (k, e) in args.iter().enumerate() {
                left[k] = ElementId(e.0 / b);
                right[k] = ElementId(e.0 % b);
            }
            let (x, y) = (h1.f(&left[..args.len()]), h2.f(&right[..args.len()]));
            Subset::from_elements(a * b, x.iter().flat_map(|i| y.iter().map(move |j| pair(i.0, j.0))))
        },
        |args| {
            let mut l = Vec::with_capacity(args.len());
            let mut r = Vec::with_capacity(args.len());
            for e in args {
                l.push(ElementId(e.0 / b));
                r.push(ElementId(e.0 % b));
            }
            pair(h1.g(&l).0, h2.g(&r).0)
        },
    )?;
    Ok(Product { structure: c.build()?, left: a, right: b })
}

impl Product {
    pub fn pair(&self, i: ElementId, j: ElementId) -> ElementId {
        ElementId(i.0 * self.right + j.0)
    }

    pub fn split(&self, e: ElementId) -> (ElementId, ElementId) {
        (ElementId(e.0 / self.right), ElementId(e.0 % self.right))
    }

    /// `P1 × P2`.
    pub fn rect(&self, p1: Subset, p2: Subset) -> Subset {
        Subset::from_elements(
            self.left * self.right,
            p1.iter().flat_map(|i| p2.iter().map(move |j| ElementId(i.0 * self.right + j.0))),
        )
    }

    /// The two projections of `x`, when `x` is their product.
    pub fn factor(&self, x: Subset) -> Option<(Subset, Subset)> {
        let mut p1 = Subset::empty(self.left);
        let mut p2 = Subset::empty(self.right);
        for e in x {
            let (i, j) = self.split(e);
            p1.insert(i);
            p2.insert(j);
        }
        (self.rect(p1, p2) == x).then_some((p1, p2))
    }

    /// Projection onto the first factor as an element map.
    pub fn first_projection(&self) -> Vec<ElementId> {
        (0..self.left * self.right).map(|k| ElementId(k / self.right)).collect()
    }

    pub fn second_projection(&self) -> Vec<ElementId> {
        (0..self.left * self.right).map(|k| ElementId(k % self.right)).collect()
    }

    /// Factorwise map `P1 × P2 ↦ m1(P1) × m2(P2)` on the product lattice.
    pub fn product_map(
        &self,
        lat: &IdealLattice,
        lat1: &IdealLattice,
        lat2: &IdealLattice,
        m1: &IdealMap,
        m2: &IdealMap,
    ) -> Result<IdealMap, ConstructError> {
        let mut table = Vec::with_capacity(lat.len());
        for &x in lat.ideals() {
            let (p1, p2) = self.factor(x).ok_or(ConstructError::NonFactorwise(x))?;
            let i1 = lat1.index_of(p1).ok_or(ConstructError::NonFactorwise(x))?;
            let i2 = lat2.index_of(p2).ok_or(ConstructError::NonFactorwise(x))?;
            let img = self.rect(lat1.ideal(m1.apply(i1)), lat2.ideal(m2.apply(i2)));
            table.push(lat.index_of(img).ok_or(ConstructError::NonFactorwise(img))?);
        }
        let kind = m1.kind();
        IdealMap::from_table(format!("{}x{}", m1.id(), m2.id()), kind, table, lat)
            .map_err(|e| ConstructError::IllDefined { op: "product map", detail: e.to_string() })
    }
}

/// `S⁻¹K`: classes of pairs `(a, s)` under
/// `(a,s) ~ (b,t)` iff `0 ∈ g(u, f(a·t, -(b·s), 0..), 1..)` for some `u ∈ S`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub structure: FiniteHyperring,
    mulset: Subset,
    /// `class_of[a][k]` is the class of `(a, k-th member of S)`.
    class_of: Vec<Vec<usize>>,
    denominators: Vec<ElementId>,
    canonical: Vec<ElementId>,
}

pub fn localize(h: &FiniteHyperring, s_set: Subset) -> Result<Localization, ConstructError> {
    let closed = {
        let members = s_set.to_vec();
        let mut ok = !members.is_empty();
        let mut buf = vec![ElementId(0); h.n()];
        crate::subset::for_each_multiset(members.len(), h.n(), |t| {
            for (b, &i) in buf.iter_mut().zip(t) {
                *b = members[i];
            }
            ok &= s_set.contains(h.g(&buf));
            ok
        });
        ok
    };
    if !closed {
        return Err(ConstructError::NotMultiplicative(s_set));
    }
    let size = h.size();
    let dens = s_set.to_vec();
    let d = dens.len();
    let npairs = size * d;
    let idx = |a: usize, k: usize| a * d + k;
    let mut zero_args = vec![h.zero(); h.m()];
    let related = |a: ElementId, s: ElementId, b: ElementId, t: ElementId, zero_args: &mut Vec<ElementId>| {
        zero_args[0] = h.mul(a, t);
        zero_args[1] = h.neg(h.mul(b, s));
        let diff = h.f(zero_args);
        dens.iter().any(|&u| diff.iter().any(|c| h.mul(u, c) == h.zero()))
    };
    let mut rel = vec![false; npairs * npairs];
    for a in 0..size {
        for (k, &s) in dens.iter().enumerate() {
            for b in 0..size {
                for (l, &t) in dens.iter().enumerate() {
                    rel[idx(a, k) * npairs + idx(b, l)] = related(ElementId(a), s, ElementId(b), t, &mut zero_args);
                }
            }
        }
    }
    let name_pair = |p: usize| format!("({}, {})", h.element_name(ElementId(p / d)), h.element_name(dens[p % d]));
    for p in 0..npairs {
        if !rel[p * npairs + p] {
            return Err(ConstructError::NotEquivalence(format!("{} is not related to itself", name_pair(p))));
        }
        for q in 0..npairs {
            if rel[p * npairs + q] != rel[q * npairs + p] {
                return Err(ConstructError::NotEquivalence(format!(
                    "{} and {} are related in one order only",
                    name_pair(p),
                    name_pair(q)
                )));
            }
        }
    }
    for p in 0..npairs {
        for q in 0..npairs {
            if !rel[p * npairs + q] {
                continue;
            }
            for r in 0..npairs {
                if rel[q * npairs + r] && !rel[p * npairs + r] {
                    return Err(ConstructError::NotEquivalence(format!(
                        "{} ~ {} ~ {} but not {} ~ {}",
                        name_pair(p),
                        name_pair(q),
                        name_pair(r),
                        name_pair(p),
                        name_pair(r)
                    )));
                }
            }
        }
    }
    // classes numbered by their smallest pair
    let mut class_of_pair = vec![usize::MAX; npairs];
    let mut reps = Vec::new();
    for p in 0..npairs {
        if class_of_pair[p] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(p);
        for q in p..npairs {
            if rel[p * npairs + q] {
                class_of_pair[q] = c;
            }
        }
    }
    let nclasses = reps.len();
    if nclasses > MAX_CARRIER {
        return Err(ConstructError::TooLarge(nclasses));
    }
    let members: Vec<Vec<(ElementId, usize)>> = (0..nclasses)
        .map(|c| (0..npairs).filter(|&p| class_of_pair[p] == c).map(|p| (ElementId(p / d), p % d)).collect())
        .collect();
    let class = |a: ElementId, k: usize| class_of_pair[idx(a.0, k)];
    let den_index = |s: ElementId| dens.iter().position(|&x| x == s);

    // induced multiplication: g(a_i/s_i) = g(a)/g(s), over every choice of
    // representatives
    let n = h.n();
    let mut gtab = vec![usize::MAX; nclasses.pow(n as u32)];
    let mut err = None;
    for_each_tuple(nclasses, n, |cs| {
        let key = cs.iter().rev().fold(0, |acc, &c| acc * nclasses + c);
        let lists: Vec<&Vec<(ElementId, usize)>> = cs.iter().map(|&c| &members[c]).collect();
        let mut result = None;
        for_each_tuple_of(&lists, &mut |choice: &[(ElementId, usize)]| {
            let num: Vec<ElementId> = choice.iter().map(|x| x.0).collect();
            let den: Vec<ElementId> = choice.iter().map(|x| dens[x.1]).collect();
            let k = den_index(h.g(&den)).expect("S is closed");
            let c = class(h.g(&num), k);
            match result {
                None => result = Some(c),
                Some(r) if r != c => {
                    err = Some(format!("classes {cs:?} multiply to both {r} and {c}"));
                    return false;
                }
                _ => {}
            }
            true
        });
        match (err.is_some(), result) {
            (false, Some(r)) => {
                gtab[key] = r;
                true
            }
            _ => false,
        }
    });
    if let Some(detail) = err {
        return Err(ConstructError::IllDefined { op: "multiplication", detail });
    }

    // induced hyperaddition over common denominators
    let m = h.m();
    let mut ftab = vec![Subset::empty(nclasses); nclasses.pow(m as u32)];
    for_each_tuple(nclasses, m, |cs| {
        let key = cs.iter().rev().fold(0, |acc, &c| acc * nclasses + c);
        let mut result: Option<Subset> = None;
        for (k, &t) in dens.iter().enumerate() {
            let lists: Vec<Vec<(ElementId, usize)>> =
                cs.iter().map(|&c| members[c].iter().copied().filter(|x| x.1 == k).collect()).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            let refs: Vec<&Vec<(ElementId, usize)>> = lists.iter().collect();
            for_each_tuple_of(&refs, &mut |choice: &[(ElementId, usize)]| {
                let num: Vec<ElementId> = choice.iter().map(|x| x.0).collect();
                let img = Subset::from_elements(nclasses, h.f(&num).iter().map(|c| ElementId(class(c, k))));
                match result {
                    None => result = Some(img),
                    Some(r) if r != img => {
                        err = Some(format!(
                            "classes {cs:?} over denominator {} add to both {r:?} and {img:?}",
                            h.element_name(t)
                        ));
                        return false;
                    }
                    _ => {}
                }
                true
            });
            if err.is_some() {
                return false;
            }
        }
        match result {
            Some(r) => {
                ftab[key] = r;
                true
            }
            None => {
                err = Some(format!("classes {cs:?} have no common denominator"));
                false
            }
        }
    });
    if let Some(detail) = err {
        return Err(ConstructError::IllDefined { op: "hyperaddition", detail });
    }

    let s0 = dens[0];
    let one_class = match den_index(h.one()) {
        Some(k) => class(h.one(), k),
        None => class(s0, 0),
    };
    let zero_class = class(h.zero(), 0);
    let names: Vec<String> = reps
        .iter()
        .map(|&p| format!("{}/{}", h.element_name(ElementId(p / d)), h.element_name(dens[p % d])))
        .collect();
    let canonical: Vec<ElementId> = match den_index(h.one()) {
        Some(k) => (0..size).map(|a| ElementId(class(ElementId(a), k))).collect(),
        None => (0..size).map(|a| ElementId(class(h.mul(ElementId(a), s0), 0))).collect(),
    };
    let set_name = {
        let parts: Vec<&str> = dens.iter().map(|&s| h.element_name(s)).collect();
        parts.join(",")
    };
    let c = Candidate::from_fns(
        format!("{}[{}]", h.name(), set_name),
        m,
        n,
        names,
        ElementId(zero_class),
        ElementId(one_class),
        |args| ftab[args.iter().rev().fold(0, |acc, e| acc * nclasses + e.0)],
        |args| ElementId(gtab[args.iter().rev().fold(0, |acc, e| acc * nclasses + e.0)]),
    )?;
    let class_of = (0..size).map(|a| (0..d).map(|k| class(ElementId(a), k)).collect()).collect();
    Ok(Localization { structure: c.build()?, mulset: s_set, class_of, denominators: dens, canonical })
}

fn for_each_tuple_of<T: Copy>(lists: &[&Vec<T>], visit: &mut impl FnMut(&[T]) -> bool) {
    fn rec<T: Copy>(lists: &[&Vec<T>], buf: &mut Vec<T>, visit: &mut impl FnMut(&[T]) -> bool) -> bool {
        if buf.len() == lists.len() {
            return visit(buf);
        }
        for &x in lists[buf.len()].iter() {
            buf.push(x);
            let go = rec(lists, buf, visit);
            buf.pop();
            if !go {
                return false;
            }
        }
        true
    }
    let mut buf = Vec::with_capacity(lists.len());
    rec(lists, &mut buf, visit);
}

impl Localization {
    pub fn mulset(&self) -> Subset {
        self.mulset
    }

    /// Class of `a/s`; `None` when `s ∉ S`.
    pub fn fraction(&self, a: ElementId, s: ElementId) -> Option<ElementId> {
        let k = self.denominators.iter().position(|&x| x == s)?;
        Some(ElementId(self.class_of[a.0][k]))
    }

    /// `a ↦ a/1`, or `a ↦ (a·s)/s` for the first `s ∈ S` when `1 ∉ S`.
    pub fn canonical_map(&self) -> &[ElementId] {
        &self.canonical
    }

    /// `S⁻¹P = {p/s : p ∈ P, s ∈ S}`.
    pub fn extend(&self, p: Subset) -> Subset {
        let w = self.structure.size();
        Subset::from_elements(w, p.iter().flat_map(|a| self.class_of[a.0].iter().map(|&c| ElementId(c))))
    }

    /// `{a ∈ K : a/1 ∈ J}`.
    pub fn contract(&self, j: Subset) -> Subset {
        Subset::from_elements(
            self.canonical.len(),
            (0..self.canonical.len()).filter(|&a| j.contains(self.canonical[a])).map(ElementId),
        )
    }

    /// `φ_S(S⁻¹I) = S⁻¹φ(I)` on the fraction lattice. A hyperideal `J` is
    /// sent through `S⁻¹φ(J ∩ K)`; the construction fails when some `J` is
    /// not an extension or two preimages disagree.
    pub fn localized_map(
        &self,
        base: &IdealLattice,
        frac: &IdealLattice,
        map: &IdealMap,
    ) -> Result<IdealMap, ConstructError> {
        let mut table = vec![usize::MAX; frac.len()];
        for i in 0..base.len() {
            let j = frac.index_of(self.extend(base.ideal(i))).ok_or_else(|| ConstructError::IllDefined {
                op: "extension",
                detail: format!("S⁻¹ of {} is not a hyperideal", base.describe(base.ideal(i))),
            })?;
            let img = self.extend(base.ideal(map.apply(i)));
            let k = frac.index_of(img).ok_or_else(|| ConstructError::IllDefined {
                op: "localized map",
                detail: format!("image of {} is not a hyperideal", base.describe(base.ideal(i))),
            })?;
            if table[j] != usize::MAX && table[j] != k {
                return Err(ConstructError::IllDefined {
                    op: "localized map",
                    detail: format!("{} has preimages with different images", frac.describe(frac.ideal(j))),
                });
            }
            table[j] = k;
        }
        if let Some(j) = table.iter().position(|&k| k == usize::MAX) {
            return Err(ConstructError::IllDefined {
                op: "localized map",
                detail: format!("{} is not the extension of a hyperideal", frac.describe(frac.ideal(j))),
            });
        }
        IdealMap::from_table(format!("{}_S", map.id()), map.kind(), table, frac)
            .map_err(|e| ConstructError::IllDefined { op: "localized map", detail: e.to_string() })
    }
}

/// An element map between two structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homomorphism {
    pub map: Vec<ElementId>,
}

impl Homomorphism {
    /// Checks that `k` preserves hyperaddition (as image sets), the
    /// multiplication, 0 and 1.
    pub fn check(src: &FiniteHyperring, tgt: &FiniteHyperring, map: Vec<ElementId>) -> Result<Self, ConstructError> {
        if map.len() != src.size() {
            return Err(ConstructError::MapSize { expected: src.size(), got: map.len() });
        }
        if map.iter().any(|e| e.0 >= tgt.size()) {
            return Err(ConstructError::NotHomomorphism("image outside the target".into()));
        }
        if (src.m(), src.n()) != (tgt.m(), tgt.n()) {
            return Err(ConstructError::ArityMismatch(src.m(), src.n(), tgt.m(), tgt.n()));
        }
        if map[src.zero().0] != tgt.zero() {
            return Err(ConstructError::NotHomomorphism("0 is not sent to 0".into()));
        }
        if map[src.one().0] != tgt.one() {
            return Err(ConstructError::NotHomomorphism("1 is not sent to 1".into()));
        }
        let hom = Homomorphism { map };
        if let Some(w) = hom.first_failure(src, tgt) {
            return Err(ConstructError::NotHomomorphism(w));
        }
        Ok(hom)
    }

    fn first_failure(&self, src: &FiniteHyperring, tgt: &FiniteHyperring) -> Option<String> {
        let mut bad = None;
        let mut img = vec![ElementId(0); src.m().max(src.n())];
        for_each_tuple(src.size(), src.m(), |t| {
            let args: Vec<ElementId> = t.iter().map(|&i| ElementId(i)).collect();
            let lhs = Subset::from_elements(tgt.size(), src.f(&args).iter().map(|e| self.map[e.0]));
            for (k, a) in args.iter().enumerate() {
                img[k] = self.map[a.0];
            }
            if lhs != tgt.f(&img[..src.m()]) {
                bad = Some(format!("hyperaddition at {t:?}"));
                return false;
            }
            true
        });
        if bad.is_some() {
            return bad;
        }
        for_each_tuple(src.size(), src.n(), |t| {
            let args: Vec<ElementId> = t.iter().map(|&i| ElementId(i)).collect();
            for (k, a) in args.iter().enumerate() {
                img[k] = self.map[a.0];
            }
            if self.map[src.g(&args).0] != tgt.g(&img[..src.n()]) {
                bad = Some(format!("multiplication at {t:?}"));
                return false;
            }
            true
        });
        bad
    }

    pub fn apply(&self, e: ElementId) -> ElementId {
        self.map[e.0]
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        let img: BTreeSet<usize> = self.map.iter().map(|e| e.0).collect();
        img.len() == target_size
    }

    /// `k⁻¹(X)`.
    pub fn preimage(&self, x: Subset) -> Subset {
        Subset::from_elements(self.map.len(), (0..self.map.len()).filter(|&a| x.contains(self.map[a])).map(ElementId))
    }

    /// For each target hyperideal `P2`, whether `φ(k⁻¹P2) = k⁻¹ψ(P2)` and
    /// `δ(k⁻¹P2) = k⁻¹γ(P2)`.
    pub fn compatibility(
        &self,
        src: &IdealLattice,
        tgt: &IdealLattice,
        phi: &IdealMap,
        psi: &IdealMap,
        delta: &IdealMap,
        gamma: &IdealMap,
    ) -> Vec<Compatibility> {
        (0..tgt.len())
            .map(|j| {
                let pre = self.preimage(tgt.ideal(j));
                match src.index_of(pre) {
                    None => Compatibility { target: j, preimage: None, reduction: false, expansion: false },
                    Some(i) => Compatibility {
                        target: j,
                        preimage: Some(i),
                        reduction: src.ideal(phi.apply(i)) == self.preimage(tgt.ideal(psi.apply(j))),
                        expansion: src.ideal(delta.apply(i)) == self.preimage(tgt.ideal(gamma.apply(j))),
                    },
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub target: usize,
    /// Lattice index of the preimage; `None` if it is not a hyperideal.
    pub preimage: Option<usize>,
    pub reduction: bool,
    pub expansion: bool,
}

impl Compatibility {
    pub fn holds(&self) -> bool {
        self.preimage.is_some() && self.reduction && self.expansion
    }
}

/// All surjective homomorphisms `src → tgt`, by brute force over maps that
/// fix 0 and 1. Gives up (returns `None`) past `max_maps` candidates.
pub fn epimorphisms(src: &FiniteHyperring, tgt: &FiniteHyperring, max_maps: u64) -> Option<Vec<Homomorphism>> {
    if (src.m(), src.n()) != (tgt.m(), tgt.n()) || tgt.size() > src.size() {
        return Some(Vec::new());
    }
    let free: Vec<usize> = (0..src.size()).filter(|&a| a != src.zero().0 && a != src.one().0).collect();
    let count = (tgt.size() as u64).checked_pow(free.len() as u32)?;
    if count > max_maps {
        return None;
    }
    let mut out = Vec::new();
    let mut map = vec![ElementId(0); src.size()];
    map[src.zero().0] = tgt.zero();
    map[src.one().0] = tgt.one();
    for_each_tuple(tgt.size(), free.len(), |t| {
        for (&a, &v) in free.iter().zip(t) {
            map[a] = ElementId(v);
        }
        let k = Homomorphism { map: map.clone() };
        if k.is_surjective(tgt.size()) && k.first_failure(src, tgt).is_none() {
            out.push(k);
        }
        true
    });
    Some(out)
}

/// The canonical map as a homomorphism into the fraction structure.
pub fn canonical_homomorphism(h: &FiniteHyperring, loc: &Localization) -> Result<Homomorphism, ConstructError> {
    Homomorphism::check(h, &loc.structure, loc.canonical_map().to_vec())
}
