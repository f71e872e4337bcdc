//! Two infinite or very large structures handled without tables.
//!
//! * [`UnitIntervalMax`]: the (2,3)-hyperring on `[0,1]` with
//!   `u ⊕ v = {max(u,v)}` for `u ≠ v`, `u ⊕ u = [0,u]`, and ordinary
//!   multiplication of three factors. Points are exact rationals. Its
//!   hyperideals are the intervals `[0,a]` and `[0,a)`.
//! * [`Modular`]: `Z_{p^k}` as an (m,n)-hyperring with singleton sums, using
//!   big integers. Its hyperideals are the `⟨p^j⟩`.
//!
//! Neither offers carrier enumeration. Classification is either a check of
//! one explicit tuple or a sweep over a finite sample. For `Z_{p^k}` the
//! classes only depend on `p`-adic valuations, so [`Modular::valuation_lattice`]
//! gives an exact finite model that the ordinary classifiers accept.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::IdealLattice;
use crate::maps::{DeltaId, PhiId};
use crate::subset::{ElementId, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticError {
    #[error("{0} is outside the carrier")]
    OutOfRange(String),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("tuple of length {got} does not fit the product arity {n}")]
    Arity { got: usize, n: usize },
    #[error("map {0} is not available on this structure")]
    UnsupportedMap(String),
    #[error("the hyperideal must be proper")]
    NotProper,
    #[error("the hyperideal meets the multiplicative set")]
    NotDisjoint,
    #[error("the multiplicative set is not closed under the product")]
    NotMultiplicative,
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// Parses `0.6`, `3/5`, or `1`.
pub fn parse_rational(s: &str) -> Result<BigRational, AnalyticError> {
    let err = || AnalyticError::Parse(s.to_string());
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: num_bigint::BigInt = a.trim().parse().map_err(|_| err())?;
        let den: num_bigint::BigInt = b.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole}{frac}");
        let num: num_bigint::BigInt = digits.parse().map_err(|_| err())?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    let num: num_bigint::BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(num))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `[0, a]` (closed) or `[0, a)` (open) inside `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub bound: BigRational,
    pub closed: bool,
}

impl Interval {
    pub fn closed(bound: BigRational) -> Self {
        Interval { bound, closed: true }
    }

    pub fn open(bound: BigRational) -> Self {
        Interval { bound, closed: false }
    }

    pub fn zero() -> Self {
        Interval::closed(BigRational::zero())
    }

    pub fn whole() -> Self {
        Interval::closed(BigRational::one())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        !x.is_negative() && if self.closed { x <= &self.bound } else { x < &self.bound }
    }

    pub fn is_whole(&self) -> bool {
        self.closed && self.bound.is_one()
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.bound < other.bound || (self.bound == other.bound && (other.closed || !self.closed))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0, {}{}", self.bound, if self.closed { "]" } else { ")" })
    }
}

/// A set of rationals used as a multiplicative set: a finite list or an
/// interval with chosen end types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSet {
    Finite(Vec<BigRational>),
    Range { lo: BigRational, lo_closed: bool, hi: BigRational, hi_closed: bool },
}

impl RationalSet {
    pub fn contains(&self, x: &BigRational) -> bool {
        match self {
            RationalSet::Finite(v) => v.contains(x),
            RationalSet::Range { lo, lo_closed, hi, hi_closed } => {
                (if *lo_closed { x >= lo } else { x > lo }) && (if *hi_closed { x <= hi } else { x < hi })
            }
        }
    }

    /// Members on the grid `{k·step}` (plus the finite members themselves).
    pub fn sample(&self, step: &BigRational) -> Vec<BigRational> {
        match self {
            RationalSet::Finite(v) => v.clone(),
            RationalSet::Range { .. } => grid(step).into_iter().filter(|x| self.contains(x)).collect(),
        }
    }
}

/// `0, step, 2·step, …, 1`.
pub fn grid(step: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut x = BigRational::zero();
    while x <= BigRational::one() {
        out.push(x.clone());
        x += step;
    }
    out
}

/// Verdict of an analytic classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalyticVerdict {
    /// A tuple meets the antecedent and fails every slot.
    Refuted,
    /// The tuple does not meet the antecedent.
    Outside,
    /// The tuple meets the antecedent and this slot satisfies a consequent.
    SatisfiedAt(usize),
    HoldsOnSample,
    Vacuous,
}

/// Detailed outcome of testing one tuple, all values exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCheck<T> {
    pub product: T,
    pub in_p: bool,
    pub in_excluded: bool,
    /// Per slot: (`u_i·s ∈ P`, product with `u_i` replaced by `s` in target).
    pub slots: Vec<(bool, bool)>,
    pub verdict: AnalyticVerdict,
}

fn verdict_of(in_p: bool, in_excl: bool, slots: &[(bool, bool)]) -> AnalyticVerdict {
    if !in_p || in_excl {
        AnalyticVerdict::Outside
    } else {
        match slots.iter().position(|&(a, b)| a || b) {
            Some(i) => AnalyticVerdict::SatisfiedAt(i),
            None => AnalyticVerdict::Refuted,
        }
    }
}

/// The (2,3)-hyperring `([0,1], ⊕, ·)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UnitIntervalMax;

impl UnitIntervalMax {
    pub const M: usize = 2;
    pub const N: usize = 3;

    fn in_range(x: &BigRational) -> Result<(), AnalyticError> {
        if x.is_negative() || x > &BigRational::one() {
            Err(AnalyticError::OutOfRange(x.to_string()))
        } else {
            Ok(())
        }
    }

    /// Membership of `w` in `u ⊕ v`.
    pub fn sum_contains(&self, u: &BigRational, v: &BigRational, w: &BigRational) -> Result<bool, AnalyticError> {
        for x in [u, v, w] {
            Self::in_range(x)?;
        }
        Ok(if u == v { w <= u } else { w == u.max(v) })
    }

    /// Product of any number of points.
    pub fn product(&self, args: &[BigRational]) -> Result<BigRational, AnalyticError> {
        for x in args {
            Self::in_range(x)?;
        }
        Ok(args.iter().fold(BigRational::one(), |acc, x| acc * x))
    }

    /// Membership of a point in a hyperideal.
    pub fn member(&self, x: &BigRational, p: &Interval) -> Result<bool, AnalyticError> {
        Self::in_range(x)?;
        Ok(p.contains(x))
    }

    /// Image of a hyperideal under a built-in reduction map.
    pub fn phi(&self, id: PhiId, p: &Interval) -> Interval {
        let below_one = p.bound < BigRational::one();
        match id {
            PhiId::Phi0 => Interval::zero(),
            PhiId::Phi1 => p.clone(),
            // powers of [0,a] are [0,a^k]; of [0,a) are [0,a^k)
            PhiId::PhiN => Interval { bound: Pow::pow(&p.bound, Self::N as u32), closed: p.closed },
            PhiId::Pow(k) => Interval { bound: Pow::pow(&p.bound, k as u32), closed: p.closed },
            // the powers shrink to {0} unless the bound is 1
            PhiId::PhiW => {
                if below_one {
                    Interval::zero()
                } else {
                    p.clone()
                }
            }
        }
    }

    /// Image under a built-in expansion map. The primes are `{0}` and
    /// `[0,1)`, and `[0,1)` is the only maximal hyperideal.
    pub fn delta(&self, id: DeltaId, p: &Interval) -> Interval {
        let max = Interval::open(BigRational::one());
        match id {
            DeltaId::Delta0 => p.clone(),
            DeltaId::DeltaK => Interval::whole(),
            DeltaId::Delta1 if p.bound.is_zero() => Interval::zero(),
            DeltaId::Delta1 | DeltaId::DeltaM => {
                if p.is_whole() {
                    Interval::whole()
                } else {
                    max
                }
            }
        }
    }

    fn check_pow(id: PhiId) -> Result<(), AnalyticError> {
        match id {
            PhiId::Pow(k) if k == 0 || (k - 1) % (Self::N - 1) != 0 => Err(AnalyticError::UnsupportedMap(id.to_string())),
            _ => Ok(()),
        }
    }

    /// Tests one tuple of length `x·2+1` against the φ-δ-S-primary condition
    /// with a fixed `s`.
    pub fn check_tuple(
        &self,
        p: &Interval,
        phi: PhiId,
        delta: DeltaId,
        s: &BigRational,
        tuple: &[BigRational],
    ) -> Result<TupleCheck<BigRational>, AnalyticError> {
        Self::check_pow(phi)?;
        if tuple.is_empty() || (tuple.len() - 1) % (Self::N - 1) != 0 {
            return Err(AnalyticError::Arity { got: tuple.len(), n: Self::N });
        }
        let product = self.product(tuple)?;
        Self::in_range(s)?;
        let excl = self.phi(phi, p);
        let target = self.delta(delta, p);
        let mut slots = Vec::with_capacity(tuple.len());
        for i in 0..tuple.len() {
            let scaled = &tuple[i] * s;
            let replaced = if tuple[i].is_zero() {
                // avoid dividing by zero: recompute
                let mut rest = tuple.to_vec();
                rest[i] = s.clone();
                self.product(&rest)?
            } else {
                &product / &tuple[i] * s
            };
            slots.push((p.contains(&scaled), target.contains(&replaced)));
        }
        let in_p = p.contains(&product);
        let in_excluded = excl.contains(&product);
        let verdict = verdict_of(in_p, in_excluded, &slots);
        Ok(TupleCheck { product, in_p, in_excluded, slots, verdict })
    }

    /// Preconditions: `P` proper, `S` multiplicative and disjoint from `P`.
    pub fn check_preconditions(&self, p: &Interval, s: &RationalSet) -> Result<(), AnalyticError> {
        if p.is_whole() {
            return Err(AnalyticError::NotProper);
        }
        match s {
            RationalSet::Finite(v) => {
                if v.is_empty() {
                    return Err(AnalyticError::NotMultiplicative);
                }
                for x in v {
                    Self::in_range(x)?;
                }
                for a in v {
                    for b in v {
                        for c in v {
                            if !v.contains(&(a * b * c)) {
                                return Err(AnalyticError::NotMultiplicative);
                            }
                        }
                    }
                }
                if v.iter().any(|x| p.contains(x)) {
                    return Err(AnalyticError::NotDisjoint);
                }
            }
            RationalSet::Range { lo, lo_closed, hi, hi_closed } => {
                Self::in_range(lo)?;
                Self::in_range(hi)?;
                if lo > hi || (lo == hi && !(*lo_closed && *hi_closed)) {
                    return Err(AnalyticError::NotMultiplicative);
                }
                // an interval inside [0,1] is closed under triple products
                // only if it reaches down to 0 or is {1}
                let reaches_zero = lo.is_zero();
                let is_one = lo.is_one();
                if !(reaches_zero || is_one) {
                    return Err(AnalyticError::NotMultiplicative);
                }
                // the interval meets P iff points at or just above lo lie in P
                let meets = if *lo_closed { p.contains(lo) } else { lo < &p.bound };
                if meets {
                    return Err(AnalyticError::NotDisjoint);
                }
            }
        }
        Ok(())
    }

    /// Sweeps every tuple of grid points (and every sampled `s`), looking
    /// for a refutation. Returns `HoldsOnSample` together with the first
    /// working `s` if none is found, or the refuting tuples per `s`.
    pub fn classify_on_grid(
        &self,
        p: &Interval,
        phi: PhiId,
        delta: DeltaId,
        s_set: &RationalSet,
        step: &BigRational,
    ) -> Result<GridClassification, AnalyticError> {
        self.check_preconditions(p, s_set)?;
        Self::check_pow(phi)?;
        let points = grid(step);
        let excl = self.phi(phi, p);
        if p.is_subset(&excl) {
            return Ok(GridClassification { verdict: AnalyticVerdict::Vacuous, witness_s: None, refutations: vec![], tuples_checked: 0 });
        }
        let mut refutations = Vec::new();
        let mut checked = 0usize;
        for s in s_set.sample(step) {
            let mut found = None;
            'outer: for (i, a) in points.iter().enumerate() {
                for (j, b) in points.iter().enumerate().skip(i) {
                    for c in points.iter().skip(j) {
                        checked += 1;
                        let t = [a.clone(), b.clone(), c.clone()];
                        if self.check_tuple(p, phi, delta, &s, &t)?.verdict == AnalyticVerdict::Refuted {
                            found = Some(t.to_vec());
                            break 'outer;
                        }
                    }
                }
            }
            match found {
                None => {
                    return Ok(GridClassification {
                        verdict: AnalyticVerdict::HoldsOnSample,
                        witness_s: Some(s),
                        refutations,
                        tuples_checked: checked,
                    })
                }
                Some(t) => refutations.push((s, t)),
            }
        }
        Ok(GridClassification { verdict: AnalyticVerdict::Refuted, witness_s: None, refutations, tuples_checked: checked })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridClassification {
    pub verdict: AnalyticVerdict,
    pub witness_s: Option<BigRational>,
    /// Refuting tuple for each sampled `s` tried before a working one.
    pub refutations: Vec<(BigRational, Vec<BigRational>)>,
    pub tuples_checked: usize,
}

/// `Z_{p^k}` as an (m,n)-hyperring with singleton sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modular {
    p: BigUint,
    k: u32,
    m: usize,
    n: usize,
    modulus: BigUint,
}

impl Modular {
    pub fn new(p: u64, k: u32, m: usize, n: usize) -> Result<Self, AnalyticError> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(AnalyticError::Parameters(format!("{p} is not prime")));
        }
        if k == 0 || m < 2 || n < 2 {
            return Err(AnalyticError::Parameters(format!("need k ≥ 1, m ≥ 2, n ≥ 2; got k={k}, m={m}, n={n}")));
        }
        if k as usize + 1 > crate::subset::MAX_CARRIER {
            return Err(AnalyticError::Parameters(format!("exponent {k} too large for the valuation model")));
        }
        let p = BigUint::from(p);
        let modulus = Pow::pow(&p, k);
        Ok(Modular { p, k, m, n, modulus })
    }

    pub fn name(&self) -> String {
        format!("modular({},{},{},{})", self.p, self.k, self.m, self.n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `p^e` reduced.
    pub fn power_of_p(&self, e: u32) -> BigUint {
        Pow::pow(&self.p, e) % &self.modulus
    }

    fn in_range(&self, x: &BigUint) -> Result<(), AnalyticError> {
        if x >= &self.modulus {
            Err(AnalyticError::OutOfRange(x.to_string()))
        } else {
            Ok(())
        }
    }

    /// The only element of `f(args)`.
    pub fn sum(&self, args: &[BigUint]) -> Result<BigUint, AnalyticError> {
        if args.len() != self.m {
            return Err(AnalyticError::Arity { got: args.len(), n: self.m });
        }
        for x in args {
            self.in_range(x)?;
        }
        Ok(args.iter().fold(BigUint::zero(), |acc, x| (acc + x) % &self.modulus))
    }

    /// `g_(x)` on `x(n-1)+1` arguments.
    pub fn product_iterated(&self, args: &[BigUint]) -> Result<BigUint, AnalyticError> {
        if args.is_empty() || (args.len() - 1) % (self.n - 1) != 0 {
            return Err(AnalyticError::Arity { got: args.len(), n: self.n });
        }
        for x in args {
            self.in_range(x)?;
        }
        Ok(args.iter().fold(BigUint::one() % &self.modulus, |acc, x| acc * x % &self.modulus))
    }

    /// Largest `v ≤ k` with `p^v | x` (`k` for zero).
    pub fn valuation(&self, x: &BigUint) -> u32 {
        let mut v = 0;
        let mut y = x % &self.modulus;
        if y.is_zero() {
            return self.k;
        }
        while v < self.k && y.is_multiple_of(&self.p) {
            y /= &self.p;
            v += 1;
        }
        v
    }

    /// `x ∈ ⟨p^j⟩`.
    pub fn in_ideal(&self, x: &BigUint, j: u32) -> Result<bool, AnalyticError> {
        self.in_range(x)?;
        Ok(self.valuation(x) >= j.min(self.k))
    }

    /// Exponent of the image of `⟨p^j⟩` under a built-in reduction.
    pub fn phi_exponent(&self, id: PhiId, j: u32) -> Result<u32, AnalyticError> {
        let step = (self.n - 1) as u32;
        Ok(match id {
            PhiId::Phi0 => self.k,
            PhiId::Phi1 => j,
            PhiId::PhiN => (j * self.n as u32).min(self.k),
            PhiId::Pow(e) if e >= 1 && (e as u32 - 1) % step == 0 => (j * e as u32).min(self.k),
            PhiId::Pow(_) => return Err(AnalyticError::UnsupportedMap(id.to_string())),
            PhiId::PhiW => {
                if j == 0 {
                    0
                } else {
                    self.k
                }
            }
        })
    }

    /// Exponent of the image of `⟨p^j⟩` under a built-in expansion.
    pub fn delta_exponent(&self, id: DeltaId, j: u32) -> u32 {
        match id {
            DeltaId::Delta0 => j,
            DeltaId::DeltaK => 0,
            DeltaId::Delta1 | DeltaId::DeltaM => j.min(1),
        }
    }

    /// Tests one tuple of length `x(n-1)+1` against the φ-δ-S-primary
    /// condition for `P = ⟨p^j⟩` and a fixed `s`, with exact arithmetic.
    pub fn check_tuple(
        &self,
        j: u32,
        phi: PhiId,
        delta: DeltaId,
        s: &BigUint,
        tuple: &[BigUint],
    ) -> Result<TupleCheck<BigUint>, AnalyticError> {
        let product = self.product_iterated(tuple)?;
        self.in_range(s)?;
        let e_phi = self.phi_exponent(phi, j)?;
        let e_delta = self.delta_exponent(delta, j);
        let mut slots = Vec::with_capacity(tuple.len());
        for i in 0..tuple.len() {
            let scaled = &tuple[i] * s % &self.modulus;
            let mut rest = tuple.to_vec();
            rest[i] = s.clone();
            let replaced = self.product_iterated(&rest)?;
            slots.push((self.in_ideal(&scaled, j)?, self.in_ideal(&replaced, e_delta)?));
        }
        let in_p = self.in_ideal(&product, j)?;
        let in_excluded = self.in_ideal(&product, e_phi)?;
        let verdict = verdict_of(in_p, in_excluded, &slots);
        Ok(TupleCheck { product, in_p, in_excluded, slots, verdict })
    }

    /// Finite model on valuations `0..=k`: element `v` stands for every
    /// `p^v·unit`, the product adds valuations capped at `k`, and the
    /// hyperideals are `{v ≥ j}`. Membership of products in `⟨p^j⟩`, and so
    /// every classifier verdict for multiplicative sets of powers of `p`,
    /// is the same in the model as in `Z_{p^k}`.
    pub fn valuation_lattice(&self) -> IdealLattice {
        let k = self.k as usize;
        let size = k + 1;
        let names: Vec<String> = (0..size)
            .map(|v| match v {
                0 => "1".to_string(),
                v if v == k => "0".to_string(),
                1 => format!("{}", self.p),
                v => format!("{}^{}", self.p, v),
            })
            .collect();
        let mul = (0..size * size).map(|ab| ElementId(((ab / size) + (ab % size)).min(k))).collect();
        let ideals =
            (0..size).map(|j| Subset::from_elements(size, (j..size).map(ElementId))).collect();
        IdealLattice::from_monoid(self.name(), self.n, names, ElementId(k), ElementId(0), mul, ideals, false)
    }

    /// Model element standing for `x`.
    pub fn model_element(&self, x: &BigUint) -> ElementId {
        ElementId(self.valuation(x) as usize)
    }
}

/// Default grid step for sampled classification.
pub fn default_step() -> BigRational {
    rat(1, 20)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(q("0.6"), rat(3, 5));
        assert_eq!(q("3/5"), rat(3, 5));
        assert_eq!(q("1"), BigRational::one());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn interval_operations() {
        let h = UnitIntervalMax;
        let p = Interval::closed(q("0.5"));
        assert!(h.member(&h.product(&[q("0.6"), q("0.7"), q("0.8")]).unwrap(), &p).unwrap());
        assert!(h.member(&BigRational::zero(), &p).unwrap());
        assert!(h.member(&q("1.5"), &p).is_err());
        assert_eq!(h.phi(PhiId::PhiW, &p), Interval::zero());
        assert!(h.sum_contains(&q("0.3"), &q("0.3"), &q("0.1")).unwrap());
        assert!(!h.sum_contains(&q("0.3"), &q("0.2"), &q("0.2")).unwrap());
    }

    #[test]
    fn modular_iterated_product() {
        let z = Modular::new(5, 25, 4, 3).unwrap();
        let five = BigUint::from(5u32);
        let t = vec![five.clone(); 5];
        assert_eq!(z.product_iterated(&t).unwrap(), z.power_of_p(5));
        assert!(z.product_iterated(&t[..4]).is_err());
        assert_eq!(z.phi_exponent(PhiId::Pow(5), 5).unwrap(), 25);
    }

    #[test]
    fn valuation_model_shape() {
        let z = Modular::new(2, 8, 2, 2).unwrap();
        let lat = z.valuation_lattice();
        assert_eq!(lat.len(), 9);
        assert_eq!(lat.primes().count(), 1);
        // rad{0} is everything of positive valuation
        assert_eq!(lat.ideal(lat.radical_by_primes(0)).len(), 8);
    }
}
