//! Element handles and fixed-width subsets of a finite carrier.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Largest carrier a [`Subset`] can index.
pub const MAX_CARRIER: usize = 64;

/// Index of an element inside one particular carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a carrier of at most [`MAX_CARRIER`] elements, stored as a
/// bit field keyed by element index.
///
/// Subsets order by cardinality first and bit pattern second; every
/// enumeration in the crate uses this order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u64,
    width: u8,
}

impl Subset {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_CARRIER, "carrier of {width} elements exceeds {MAX_CARRIER}");
        Subset { bits: 0, width: width as u8 }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Subset::empty(width);
        s.bits = mask(width);
        s
    }

    pub fn singleton(width: usize, e: ElementId) -> Self {
        let mut s = Subset::empty(width);
        s.insert(e);
        s
    }

    /// Builds a subset from raw bits; bits beyond `width` must be clear.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        let s = Subset::empty(width);
        assert_eq!(bits & !mask(width), 0, "bits outside carrier of width {width}");
        Subset { bits, ..s }
    }

    pub fn from_elements<I: IntoIterator<Item = ElementId>>(width: usize, it: I) -> Self {
        let mut s = Subset::empty(width);
        for e in it {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == mask(self.width())
    }

    #[inline]
    pub fn contains(self, e: ElementId) -> bool {
        e.0 < self.width() && self.bits >> e.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: ElementId) {
        assert!(e.0 < self.width(), "element {} outside carrier of width {}", e.0, self.width);
        self.bits |= 1 << e.0;
    }

    #[inline]
    pub fn remove(&mut self, e: ElementId) {
        if e.0 < self.width() {
            self.bits &= !(1 << e.0);
        }
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits | other.bits, width: self.width }
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits & other.bits, width: self.width }
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits & !other.bits, width: self.width }
    }

    #[inline]
    pub fn complement(self) -> Subset {
        Subset { bits: !self.bits & mask(self.width()), width: self.width }
    }

    #[inline]
    pub fn is_subset(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.bits & other.bits == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<ElementId> {
        (self.bits != 0).then(|| ElementId(self.bits.trailing_zeros() as usize))
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter { bits: self.bits }
    }

    pub fn to_vec(self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

#[inline]
fn mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.bits.cmp(&other.bits))
            .then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

impl IntoIterator for Subset {
    type Item = ElementId;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

/// Iterator over the members of a [`Subset`] in increasing index order.
#[derive(Clone)]
pub struct SubsetIter {
    bits: u64,
}

impl Iterator for SubsetIter {
    type Item = ElementId;

    #[inline]
    fn next(&mut self) -> Option<ElementId> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(ElementId(i as usize))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// Calls `visit` on every non-decreasing tuple of length `len` drawn from
/// `0..size`. Stops early when `visit` returns `false`.
pub(crate) fn for_each_multiset(size: usize, len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if len == 0 {
        visit(&[]);
        return;
    }
    if size == 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    loop {
        if !visit(&idx) {
            return;
        }
        // advance to the next non-decreasing tuple
        let mut pos = len;
        while pos > 0 && idx[pos - 1] == size - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        let v = idx[pos - 1];
        for slot in idx.iter_mut().skip(pos) {
            *slot = v;
        }
    }
}

/// Calls `visit` on every tuple of length `len` over `0..size`, in
/// lexicographic order. Stops early when `visit` returns `false`.
pub(crate) fn for_each_tuple(size: usize, len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if len == 0 {
        visit(&[]);
        return;
    }
    if size == 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    loop {
        if !visit(&idx) {
            return;
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn order_is_cardinality_then_bits() {
        let a = Subset::from_bits(4, 0b1000);
        let b = Subset::from_bits(4, 0b0011);
        let c = Subset::from_bits(4, 0b0101);
        let mut v = vec![c, b, a];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn full_width_64() {
        let s = Subset::full(64);
        assert_eq!(s.len(), 64);
        assert!(s.is_full());
        assert!(s.complement().is_empty());
    }

    #[test]
    fn multiset_count_matches_binomial() {
        let mut count = 0;
        for_each_multiset(5, 3, |t| {
            assert!(t.windows(2).all(|w| w[0] <= w[1]));
            count += 1;
            true
        });
        // C(5 + 3 - 1, 3)
        assert_eq!(count, 35);
    }

    #[test]
    fn tuple_count() {
        let mut count = 0;
        for_each_tuple(3, 4, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 81);
    }

    proptest! {
        #[test]
        fn iter_roundtrips(bits in any::<u64>(), width in 1usize..=64) {
            let bits = if width == 64 { bits } else { bits & ((1 << width) - 1) };
            let s = Subset::from_bits(width, bits);
            let back = Subset::from_elements(width, s.iter());
            prop_assert_eq!(s, back);
            prop_assert_eq!(s.iter().count(), s.len());
        }

        #[test]
        fn set_algebra(a in any::<u32>(), b in any::<u32>()) {
            let x = Subset::from_bits(32, a as u64);
            let y = Subset::from_bits(32, b as u64);
            prop_assert!(x.intersection(y).is_subset(x));
            prop_assert!(x.is_subset(x.union(y)));
            prop_assert!(x.difference(y).is_disjoint(y));
            prop_assert_eq!(x.difference(y).union(x.intersection(y)), x);
        }
    }
}
