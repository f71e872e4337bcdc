//! Hyperideals: membership tests, generation, enumeration, arithmetic,
//! radicals, and the prime/primary/maximal predicates.
//!
//! Predicates that only need single elements live on [`FiniteHyperring`].
//! Anything that quantifies over hyperideals goes through an
//! [`IdealLattice`], which holds the sorted list of all hyperideals together
//! with the binary product table `a·b = g(a, b, 1^(n-2))`.
//!
//! A lattice can also be built from a bare commutative monoid with an
//! explicit ideal list. That is how exact quotient models of large rings
//! (see [`crate::analytic`]) reuse the classifiers.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::hyperring::FiniteHyperring;
use crate::subset::{for_each_multiset, for_each_tuple, ElementId, Subset};

/// Default cap on carrier size for hyperideal enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("carrier of {size} elements exceeds the enumeration cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("{0:?} is not a hyperideal")]
    NotAnIdeal(Subset),
    #[error("the hyperideal must be proper")]
    NotProper,
    #[error("invalid power exponent {k}: must be 1 + a multiple of {step}")]
    InvalidExponent { k: usize, step: usize },
    #[error("multiplicative set must be nonempty")]
    EmptySet,
}

/// Why a subset fails to be a hyperideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IdealViolation {
    MissingZero,
    /// `f(args)` leaves the subset.
    NotAdditivelyClosed { args: Vec<ElementId>, outside: ElementId },
    NotNegationClosed { element: ElementId },
    /// `g(args)` leaves the subset although `args[slot]` is a member.
    NotAbsorbing { args: Vec<ElementId>, slot: usize },
}

impl FiniteHyperring {
    /// Checks the three closure conditions of a hyperideal and returns the
    /// first violation found.
    pub fn check_hyperideal(&self, x: Subset) -> Result<(), IdealViolation> {
        if !x.contains(self.zero()) {
            return Err(IdealViolation::MissingZero);
        }
        let members = x.to_vec();
        let mut bad = None;
        let mut buf = vec![ElementId(0); self.m()];
        for_each_multiset(members.len(), self.m(), |t| {
            for (b, &i) in buf.iter_mut().zip(t) {
                *b = members[i];
            }
            let out = self.f(&buf).difference(x);
            if let Some(o) = out.first() {
                bad = Some(IdealViolation::NotAdditivelyClosed { args: buf.clone(), outside: o });
                return false;
            }
            true
        });
        if let Some(v) = bad {
            return Err(v);
        }
        if let Some(u) = members.iter().find(|&&u| !x.contains(self.neg(u))) {
            return Err(IdealViolation::NotNegationClosed { element: *u });
        }
        let n = self.n();
        let mut args = vec![ElementId(0); n];
        for slot in 0..n {
            for &p in &members {
                for_each_tuple(self.size(), n - 1, |others| {
                    for (k, &o) in others.iter().enumerate() {
                        args[if k < slot { k } else { k + 1 }] = ElementId(o);
                    }
                    args[slot] = p;
                    if !x.contains(self.g(&args)) {
                        bad = Some(IdealViolation::NotAbsorbing { args: args.clone(), slot });
                        return false;
                    }
                    true
                });
                if let Some(v) = bad {
                    return Err(v);
                }
            }
        }
        Ok(())
    }

    pub fn is_hyperideal(&self, x: Subset) -> bool {
        self.check_hyperideal(x).is_ok()
    }

    /// Least hyperideal containing `x`: closes under hyperaddition,
    /// negation and absorption until nothing changes.
    pub fn generated_hyperideal(&self, x: Subset) -> Subset {
        let size = self.size();
        let mut cur = x;
        cur.insert(self.zero());
        let mut buf = vec![ElementId(0); self.m()];
        loop {
            let mut next = cur;
            for a in cur {
                next.insert(self.neg(a));
                // every product with a as one factor is a·c for some c
                for c in 0..size {
                    next.insert(self.mul(a, ElementId(c)));
                }
            }
            let members = next.to_vec();
            let mut grown = next;
            for_each_multiset(members.len(), self.m(), |t| {
                for (b, &i) in buf.iter_mut().zip(t) {
                    *b = members[i];
                }
                grown = grown.union(self.f(&buf));
                true
            });
            if grown == cur {
                return cur;
            }
            cur = grown;
        }
    }

    /// `⟨u⟩ = g(K, u, 1^(n-2))`.
    pub fn principal(&self, u: ElementId) -> Subset {
        Subset::from_elements(self.size(), self.elements().map(|a| self.mul(a, u)))
    }

    /// Hyperaddition of m hyperideals, closed to a hyperideal. The flag
    /// reports whether the raw image set already was one.
    pub fn ideal_sum(&self, parts: &[Subset]) -> Result<(Subset, bool), crate::HyperringError> {
        let raw = self.eval_f_subsets(parts)?;
        let closed = self.generated_hyperideal(raw);
        Ok((closed, closed == raw))
    }

    /// `a` is invertible when some `b` has `g(a, b, 1^(n-2)) = 1`.
    pub fn is_invertible(&self, a: ElementId) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one())
    }

    /// No product of n nonzero elements is zero.
    pub fn is_hyperintegral_domain(&self) -> bool {
        let nonzero: Vec<ElementId> = self.elements().filter(|&e| e != self.zero()).collect();
        let mut ok = true;
        let mut buf = vec![ElementId(0); self.n()];
        for_each_multiset(nonzero.len(), self.n(), |t| {
            for (b, &i) in buf.iter_mut().zip(t) {
                *b = nonzero[i];
            }
            ok = self.g(&buf) != self.zero();
            ok
        });
        ok
    }

    /// All hyperideals, sorted by (cardinality, bit pattern).
    pub fn enumerate_hyperideals(&self, cap: usize) -> Result<Vec<Subset>, LatticeError> {
        if self.size() > cap {
            return Err(LatticeError::CarrierTooLarge { size: self.size(), cap });
        }
        let singles: Vec<Subset> =
            self.elements().map(|e| self.generated_hyperideal(Subset::singleton(self.size(), e))).collect();
        let bottom = self.generated_hyperideal(Subset::empty(self.size()));
        let mut seen: HashMap<u64, ()> = HashMap::new();
        seen.insert(bottom.bits(), ());
        let mut out = vec![bottom];
        let mut queue = vec![bottom];
        while let Some(i) = queue.pop() {
            for (e, single) in singles.iter().enumerate() {
                if i.contains(ElementId(e)) {
                    continue;
                }
                let j = self.generated_hyperideal(i.union(*single));
                if seen.insert(j.bits(), ()).is_none() {
                    out.push(j);
                    queue.push(j);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// The hyperideals of one structure with everything the classifiers need
/// precomputed: primality, maximality, radicals.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    name: String,
    n: usize,
    names: Vec<String>,
    zero: ElementId,
    one: ElementId,
    mul: Vec<ElementId>,
    ideals: Vec<Subset>,
    index: HashMap<u64, usize>,
    prime: Vec<bool>,
    maximal: Vec<bool>,
    radical: Vec<usize>,
    exact: bool,
}

impl IdealLattice {
    pub fn new(h: &FiniteHyperring) -> Result<Self, LatticeError> {
        Self::with_cap(h, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(h: &FiniteHyperring, cap: usize) -> Result<Self, LatticeError> {
        let ideals = h.enumerate_hyperideals(cap)?;
        Ok(Self::assemble(
            h.name().to_string(),
            h.n(),
            h.names().to_vec(),
            h.zero(),
            h.one(),
            h.mul_table().to_vec(),
            ideals,
            true,
        ))
    }

    /// Lattice of a commutative monoid with absorbing `zero`, identity
    /// `one`, binary product table `mul` (row-major) and the given ideals.
    /// `exact` records whether the ideal list is known to be complete.
    #[allow(clippy::too_many_arguments)]
    pub fn from_monoid(
        name: impl Into<String>,
        n: usize,
        names: Vec<String>,
        zero: ElementId,
        one: ElementId,
        mul: Vec<ElementId>,
        mut ideals: Vec<Subset>,
        exact: bool,
    ) -> Self {
        ideals.sort();
        ideals.dedup();
        Self::assemble(name.into(), n, names, zero, one, mul, ideals, exact)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        n: usize,
        names: Vec<String>,
        zero: ElementId,
        one: ElementId,
        mul: Vec<ElementId>,
        ideals: Vec<Subset>,
        exact: bool,
    ) -> Self {
        let index = ideals.iter().enumerate().map(|(i, s)| (s.bits(), i)).collect();
        let mut lat = IdealLattice {
            name,
            n,
            names,
            zero,
            one,
            mul,
            ideals,
            index,
            prime: Vec::new(),
            maximal: Vec::new(),
            radical: Vec::new(),
            exact,
        };
        let full = lat.carrier();
        lat.prime = (0..lat.len()).map(|i| lat.ideals[i] != full && lat.prime_elementwise(lat.ideals[i])).collect();
        lat.maximal = (0..lat.len())
            .map(|i| {
                let p = lat.ideals[i];
                p != full && !lat.ideals.iter().any(|&q| q != full && q != p && p.is_subset(q))
            })
            .collect();
        lat.radical = (0..lat.len())
            .map(|i| {
                let p = lat.ideals[i];
                let r = (0..lat.len())
                    .filter(|&j| lat.prime[j] && p.is_subset(lat.ideals[j]))
                    .fold(full, |acc, j| acc.intersection(lat.ideals[j]));
                lat.index_of(r).expect("intersection of hyperideals is a hyperideal")
            })
            .collect();
        lat
    }

    pub fn name(&self) -> &str {
        &self.name
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

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// False when the ideal list came from a model rather than enumeration
    /// of a validated table.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[Subset] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> Subset {
        self.ideals[i]
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s.bits()).copied()
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn full_index(&self) -> usize {
        self.len() - 1
    }

    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn is_proper(&self, i: usize) -> bool {
        !self.ideals[i].is_full()
    }

    pub fn describe(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.iter().map(|e| self.names[e.0].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.0 * self.size() + b.0]
    }

    /// Product of any nonempty list of elements; `one` for an empty list.
    #[inline]
    pub fn product(&self, args: &[ElementId]) -> ElementId {
        args.iter().copied().fold(self.one, |a, b| self.mul(a, b))
    }

    /// Elementwise image of the product over subsets.
    pub fn product_raw(&self, parts: &[Subset]) -> Subset {
        let mut acc = Subset::singleton(self.size(), self.one);
        for &p in parts {
            let mut next = Subset::empty(self.size());
            for a in acc {
                for b in p {
                    next.insert(self.mul(a, b));
                }
            }
            acc = next;
        }
        acc
    }

    /// `{a·b : a ∈ s}` for a fixed `b`.
    pub fn scale(&self, s: Subset, b: ElementId) -> Subset {
        Subset::from_elements(self.size(), s.iter().map(|a| self.mul(a, b)))
    }

    /// Index of the least listed ideal containing `x`.
    pub fn generated(&self, x: Subset) -> usize {
        let s = self.ideals.iter().filter(|i| x.is_subset(**i)).fold(self.carrier(), |acc, i| acc.intersection(*i));
        self.index_of(s).expect("intersection of hyperideals is a hyperideal")
    }

    /// Hyperideal generated by the product image of the given ideals, and
    /// whether that image was already a hyperideal.
    pub fn ideal_product(&self, parts: &[usize]) -> (usize, bool) {
        let sets: Vec<Subset> = parts.iter().map(|&i| self.ideals[i]).collect();
        let raw = self.product_raw(&sets);
        let g = self.generated(raw);
        (g, self.ideals[g] == raw)
    }

    fn check_exponent(&self, k: usize) -> Result<(), LatticeError> {
        let step = self.n - 1;
        if k == 0 || (k - 1) % step != 0 {
            return Err(LatticeError::InvalidExponent { k, step });
        }
        Ok(())
    }

    /// Raw k-fold product image of `P`.
    pub fn power_raw(&self, i: usize, k: usize) -> Result<Subset, LatticeError> {
        self.check_exponent(k)?;
        let p = self.ideals[i];
        let mut acc = p;
        for _ in 1..k {
            let mut next = Subset::empty(self.size());
            for a in acc {
                for b in p {
                    next.insert(self.mul(a, b));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// `P^[k]` for `k = x(n-1)+1`, generated from the raw image.
    pub fn ideal_power(&self, i: usize, k: usize) -> Result<(usize, bool), LatticeError> {
        let raw = self.power_raw(i, k)?;
        let g = self.generated(raw);
        Ok((g, self.ideals[g] == raw))
    }

    /// Intersection of all powers `P^[x(n-1)+1]`, x ≥ 0. The raw power sets
    /// form a decreasing chain, so the first repeat ends the search.
    pub fn power_intersection(&self, i: usize) -> usize {
        let p = self.ideals[i];
        let step = self.n - 1;
        let mut raw = p;
        let mut acc = p;
        loop {
            let mut next = raw;
            for _ in 0..step {
                let mut t = Subset::empty(self.size());
                for a in next {
                    for b in p {
                        t.insert(self.mul(a, b));
                    }
                }
                next = t;
            }
            acc = acc.intersection(self.ideals[self.generated(next)]);
            if next == raw {
                break;
            }
            raw = next;
        }
        self.generated(acc)
    }

    /// `(P : u) = {a : a·u ∈ P}`.
    pub fn colon(&self, i: usize, u: ElementId) -> usize {
        let p = self.ideals[i];
        let s = Subset::from_elements(self.size(), (0..self.size()).map(ElementId).filter(|&a| p.contains(self.mul(a, u))));
        self.index_of(s).expect("colon of a hyperideal is a hyperideal")
    }

    /// `(P : Q) = {a : a·Q ⊆ P}`.
    pub fn colon_ideal(&self, i: usize, j: usize) -> usize {
        let p = self.ideals[i];
        let q = self.ideals[j];
        let s = Subset::from_elements(
            self.size(),
            (0..self.size()).map(ElementId).filter(|&a| self.scale(q, a).is_subset(p)),
        );
        self.index_of(s).expect("colon of hyperideals is a hyperideal")
    }

    /// Prime test on elements: every n-fold product inside `P` has a factor
    /// inside `P`.
    pub fn prime_elementwise(&self, p: Subset) -> bool {
        let mut ok = true;
        let mut buf = vec![ElementId(0); self.n];
        for_each_multiset(self.size(), self.n, |t| {
            for (b, &x) in buf.iter_mut().zip(t) {
                *b = ElementId(x);
            }
            if p.contains(self.product(&buf)) && !buf.iter().any(|&u| p.contains(u)) {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Prime test on hyperideals: `g(P_1..P_n) ⊆ P` forces some `P_i ⊆ P`.
    pub fn prime_by_ideals(&self, i: usize) -> bool {
        let p = self.ideals[i];
        if p.is_full() {
            return false;
        }
        let mut ok = true;
        for_each_multiset(self.len(), self.n, |t| {
            let sets: Vec<Subset> = t.iter().map(|&j| self.ideals[j]).collect();
            if self.product_raw(&sets).is_subset(p) && !sets.iter().any(|s| s.is_subset(p)) {
                ok = false;
            }
            ok
        });
        ok
    }

    pub fn is_prime(&self, i: usize) -> Result<bool, LatticeError> {
        self.proper(i)?;
        Ok(self.prime[i])
    }

    pub fn is_maximal(&self, i: usize) -> Result<bool, LatticeError> {
        self.proper(i)?;
        Ok(self.maximal[i])
    }

    fn proper(&self, i: usize) -> Result<(), LatticeError> {
        if self.ideals[i].is_full() {
            Err(LatticeError::NotProper)
        } else {
            Ok(())
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.prime[i])
    }

    pub fn maximals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.maximal[i])
    }

    /// Intersection of the primes containing `P`; the whole carrier when
    /// there are none.
    pub fn radical_by_primes(&self, i: usize) -> usize {
        self.radical[i]
    }

    /// Elements with an admissible power inside `P`: exponents `r ≤ n`, or
    /// `r = x(n-1)+1`. Powers inside an ideal stay inside, and the power
    /// sequence of an element is eventually periodic with preperiod below
    /// the carrier size, so exponents up to `size + n` settle the question.
    pub fn radical_by_powers(&self, i: usize) -> Subset {
        let p = self.ideals[i];
        let bound = self.size() + self.n;
        let step = self.n - 1;
        let mut out = Subset::empty(self.size());
        for u in (0..self.size()).map(ElementId) {
            let mut pow = u;
            for r in 1..=bound {
                if r > 1 {
                    pow = self.mul(pow, u);
                }
                let admissible = r <= self.n || (r - 1) % step == 0;
                if admissible && p.contains(pow) {
                    out.insert(u);
                    break;
                }
            }
        }
        out
    }

    /// Intersection of the maximal hyperideals containing `P`; the whole
    /// carrier when there are none.
    pub fn maximal_cover(&self, i: usize) -> usize {
        let p = self.ideals[i];
        let s = self
            .maximals()
            .filter(|&j| p.is_subset(self.ideals[j]))
            .fold(self.carrier(), |acc, j| acc.intersection(self.ideals[j]));
        self.index_of(s).expect("intersection of hyperideals is a hyperideal")
    }

    /// Primary test: every n-fold product inside `P` has some slot `i` with
    /// `u_i ∈ P` or the product of the other slots in `rad(P)`.
    pub fn is_primary(&self, i: usize) -> Result<bool, LatticeError> {
        self.proper(i)?;
        let p = self.ideals[i];
        let rad = self.ideals[self.radical[i]];
        let mut ok = true;
        let mut buf = vec![ElementId(0); self.n];
        let mut rest = vec![ElementId(0); self.n];
        for_each_tuple(self.size(), self.n, |t| {
            for (b, &x) in buf.iter_mut().zip(t) {
                *b = ElementId(x);
            }
            if !p.contains(self.product(&buf)) {
                return true;
            }
            ok = (0..self.n).any(|slot| {
                if p.contains(buf[slot]) {
                    return true;
                }
                rest.copy_from_slice(&buf);
                rest[slot] = self.one;
                rad.contains(self.product(&rest))
            });
            ok
        });
        Ok(ok)
    }

    pub fn is_invertible(&self, a: ElementId) -> bool {
        (0..self.size()).any(|b| self.mul(a, ElementId(b)) == self.one)
    }

    pub fn is_hyperintegral_domain(&self) -> bool {
        let nonzero: Vec<ElementId> = (0..self.size()).map(ElementId).filter(|&e| e != self.zero).collect();
        let mut ok = true;
        let mut buf = vec![ElementId(0); self.n];
        for_each_multiset(nonzero.len(), self.n, |t| {
            for (b, &x) in buf.iter_mut().zip(t) {
                *b = nonzero[x];
            }
            ok = self.product(&buf) != self.zero;
            ok
        });
        ok
    }

    /// Closed under the n-ary product (not necessarily under the binary one).
    pub fn is_multiplicative(&self, s: Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        let members = s.to_vec();
        let mut ok = true;
        let mut buf = vec![ElementId(0); self.n];
        for_each_multiset(members.len(), self.n, |t| {
            for (b, &x) in buf.iter_mut().zip(t) {
                *b = members[x];
            }
            ok = s.contains(self.product(&buf));
            ok
        });
        ok
    }

    /// All multiplicative subsets with at most `cap` elements, sorted by
    /// (cardinality, bit pattern).
    pub fn multiplicative_sets(&self, cap: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        let size = self.size();
        for k in 1..=cap.min(size) {
            // k-element subsets as increasing index tuples
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let s = Subset::from_elements(size, idx.iter().map(|&i| ElementId(i)));
                if self.is_multiplicative(s) {
                    out.push(s);
                }
                let mut pos = k;
                while pos > 0 && idx[pos - 1] == size - k + pos - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                for j in pos..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn three() -> (FiniteHyperring, IdealLattice) {
        let h = corpus::three_element_example();
        let l = IdealLattice::new(&h).unwrap();
        (h, l)
    }

    #[test]
    fn three_element_ideals() {
        let (h, l) = three();
        let u = h.element("u").unwrap();
        let zu = h.subset(&[h.zero(), u]);
        assert_eq!(l.ideals(), &[h.subset(&[h.zero()]), zu, h.carrier()]);
        assert_eq!(h.principal(u), zu);
        assert_eq!(h.principal(h.zero()), h.subset(&[h.zero()]));
        assert_eq!(h.principal(h.one()), h.carrier());
        let zero_one = h.subset(&[h.zero(), h.one()]);
        assert!(matches!(h.check_hyperideal(zero_one), Err(IdealViolation::NotAdditivelyClosed { .. })));
    }

    #[test]
    fn three_element_arithmetic() {
        let (h, l) = three();
        let u = h.element("u").unwrap();
        assert_eq!(l.ideal(l.colon(0, u)), h.subset(&[h.zero(), u]));
        assert_eq!(l.colon(1, h.one()), 1);
        assert_eq!(l.colon(1, u), l.full_index());
        assert_eq!(l.ideal_power(1, 2).unwrap().0, 0);
        assert_eq!(l.ideal_power(1, 1).unwrap().0, 1);
        assert_eq!(l.power_intersection(1), 0);
        assert_eq!(l.radical_by_primes(0), 1);
        assert_eq!(l.radical_by_powers(0), l.ideal(1));
        assert!(l.is_prime(1).unwrap());
        assert!(!l.is_prime(0).unwrap());
        assert_eq!(l.is_prime(2), Err(LatticeError::NotProper));
        assert!(l.is_maximal(1).unwrap());
        assert_eq!(l.maximal_cover(0), 1);
        assert!(!l.is_multiplicative(h.subset(&[u])));
        assert!(l.is_multiplicative(h.subset(&[h.zero()])));
        assert!(l.is_multiplicative(h.subset(&[h.one()])));
    }

    #[test]
    fn exponent_must_fit_arity() {
        let h = corpus::ring_as_hyperring(4, 3, 3).unwrap();
        let l = IdealLattice::new(&h).unwrap();
        assert!(l.ideal_power(0, 2).is_err());
        assert!(l.ideal_power(0, 3).is_ok());
        assert!(l.ideal_power(0, 0).is_err());
    }

    #[test]
    fn enumeration_cap() {
        let h = corpus::ring_zk(8);
        assert_eq!(
            h.enumerate_hyperideals(4).unwrap_err(),
            LatticeError::CarrierTooLarge { size: 8, cap: 4 }
        );
    }

    #[test]
    fn field_is_domain() {
        let h = corpus::ring_zk(2);
        let l = IdealLattice::new(&h).unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.is_prime(0).unwrap());
        assert!(h.is_hyperintegral_domain());
        assert!(l.is_hyperintegral_domain());
    }

    #[test]
    fn ring_ideals_are_divisor_ideals() {
        let h = corpus::ring_zk(6);
        let l = IdealLattice::new(&h).unwrap();
        // divisors of 6
        assert_eq!(l.len(), 4);
        let primes: Vec<usize> = l.primes().collect();
        assert_eq!(primes.len(), 2);
    }
}
