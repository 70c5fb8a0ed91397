//! Truncated noncommutative series graded by letter weight.
//!
//! Monomials are sequences of generator indices; handle generators carry
//! weight 1 and puncture generators weight 2, so the grading realizes the
//! weight filtration of the completed group algebra. Every operation drops
//! components above the truncation degree, and exp, log and inversion are
//! polynomial because their arguments are nilpotent up to truncation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// Sequence of generator indices, concatenated under multiplication.
pub type Monomial = Vec<u32>;

/// Smallest weight carrying a nonzero component; the zero series has
/// infinite level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeightLevel {
    Finite(usize),
    Infinite,
}

impl WeightLevel {
    /// Saturating sum, for combined levels of tensor factors.
    pub fn plus(self, other: WeightLevel) -> WeightLevel {
        match (self, other) {
            (WeightLevel::Finite(a), WeightLevel::Finite(b)) => WeightLevel::Finite(a + b),
            _ => WeightLevel::Infinite,
        }
    }

    /// The level as an integer, with `beyond` standing in for infinity;
    /// used to bound levels that truncation may have pushed out of sight.
    pub fn finite_or(self, beyond: usize) -> i64 {
        match self {
            WeightLevel::Finite(w) => w as i64,
            WeightLevel::Infinite => beyond as i64,
        }
    }

    pub fn at_least(self, floor: i64) -> bool {
        match self {
            WeightLevel::Finite(w) => w as i64 >= floor,
            WeightLevel::Infinite => true,
        }
    }
}

/// Weight-homogeneous sparse components up to a truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    trunc: usize,
    components: Vec<BTreeMap<Monomial, BigRational>>,
}

impl Series {
    pub fn zero(trunc: usize) -> Series {
        Series {
            trunc,
            components: vec![BTreeMap::new(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Series {
        Series::scalar(trunc, BigRational::one())
    }

    pub fn scalar(trunc: usize, c: BigRational) -> Series {
        let mut s = Series::zero(trunc);
        s.add_term(0, Vec::new(), c);
        s
    }

    /// The single letter of generator `gen` placed at its weight.
    pub fn letter(trunc: usize, gen: u32, weight: usize) -> Series {
        assert!(weight >= 1, "letters have positive weight");
        let mut s = Series::zero(trunc);
        s.add_term(weight, vec![gen], BigRational::one());
        s
    }

    /// Adds `coef` to the coefficient of `mono` in the given weight
    /// component; terms beyond the truncation are dropped. The caller is
    /// responsible for `weight` being the true weight of the monomial.
    pub fn add_term(&mut self, weight: usize, mono: Monomial, coef: BigRational) {
        if weight > self.trunc || coef.is_zero() {
            return;
        }
        accumulate(&mut self.components[weight], mono, coef);
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn components(&self) -> &[BTreeMap<Monomial, BigRational>] {
        &self.components
    }

    pub fn coefficient(&self, weight: usize, mono: &[u32]) -> BigRational {
        if weight > self.trunc {
            return BigRational::zero();
        }
        self.components[weight]
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scalar_part(&self) -> BigRational {
        self.coefficient(0, &[])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    pub fn weight_level(&self) -> WeightLevel {
        self.components
            .iter()
            .position(|c| !c.is_empty())
            .map_or(WeightLevel::Infinite, WeightLevel::Finite)
    }

    pub fn truncated(&self, trunc: usize) -> Series {
        assert!(trunc <= self.trunc, "truncation can only shrink");
        Series {
            trunc,
            components: self.components[..=trunc].to_vec(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.trunc, other.trunc, "series truncation mismatch");
        let mut out = self.clone();
        for (w, comp) in other.components.iter().enumerate() {
            for (mono, coef) in comp {
                out.add_term(w, mono.clone(), coef.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Series {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        let mut out = Series::zero(self.trunc);
        if c.is_zero() {
            return out;
        }
        for (w, comp) in self.components.iter().enumerate() {
            for (mono, coef) in comp {
                out.components[w].insert(mono.clone(), coef * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.trunc, other.trunc, "series truncation mismatch");
        let mut out = Series::zero(self.trunc);
        for (w1, c1) in self.components.iter().enumerate() {
            if c1.is_empty() {
                continue;
            }
            for (w2, c2) in other.components.iter().enumerate() {
                if w1 + w2 > self.trunc {
                    break;
                }
                if c2.is_empty() {
                    continue;
                }
                for (m1, a) in c1 {
                    for (m2, b) in c2 {
                        let mut mono = m1.clone();
                        mono.extend_from_slice(m2);
                        out.add_term(w1 + w2, mono, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Series) -> Series {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut out = Series::one(self.trunc);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; the scalar part must be nonzero, and the
    /// rest is handled by the finite geometric series.
    pub fn inverse(&self) -> Series {
        let c = self.scalar_part();
        assert!(!c.is_zero(), "inverse needs a nonzero scalar part");
        let cinv = c.recip();
        let n = self.scale(&cinv).sub(&Series::one(self.trunc));
        let mut out = Series::one(self.trunc);
        let mut pw = Series::one(self.trunc);
        for k in 1..=self.trunc {
            pw = pw.mul(&n);
            if pw.is_zero() {
                break;
            }
            let sign = if k % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            out = out.add(&pw.scale(&sign));
        }
        out.scale(&cinv)
    }

    /// Exponential of a series of positive weight level.
    pub fn exp(&self) -> Series {
        assert!(
            self.weight_level() >= WeightLevel::Finite(1),
            "exp needs a series without scalar part"
        );
        let mut out = Series::one(self.trunc);
        let mut pw = Series::one(self.trunc);
        let mut factorial = BigInt::one();
        for k in 1..=self.trunc {
            pw = pw.mul(self);
            if pw.is_zero() {
                break;
            }
            factorial *= BigInt::from(k);
            out = out.add(&pw.scale(&BigRational::new(BigInt::one(), factorial.clone())));
        }
        out
    }

    /// Logarithm of a series with scalar part 1.
    pub fn log(&self) -> Series {
        assert!(
            self.scalar_part().is_one(),
            "log needs a series with scalar part 1"
        );
        let n = self.sub(&Series::one(self.trunc));
        let mut out = Series::zero(self.trunc);
        let mut pw = Series::one(self.trunc);
        for k in 1..=self.trunc {
            pw = pw.mul(&n);
            if pw.is_zero() {
                break;
            }
            let num = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&pw.scale(&BigRational::new(BigInt::from(num), BigInt::from(k))));
        }
        out
    }
}

fn accumulate(comp: &mut BTreeMap<Monomial, BigRational>, mono: Monomial, coef: BigRational) {
    match comp.entry(mono) {
        Entry::Vacant(e) => {
            e.insert(coef);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coef;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Least rotation of a monomial: the canonical representative of its
/// cyclic orbit.
pub fn least_rotation(mono: &[u32]) -> Monomial {
    if mono.is_empty() {
        return Vec::new();
    }
    (0..mono.len())
        .map(|k| {
            let mut rot = Vec::with_capacity(mono.len());
            rot.extend_from_slice(&mono[k..]);
            rot.extend_from_slice(&mono[..k]);
            rot
        })
        .min()
        .expect("nonempty rotation set")
}

/// Series in the quotient by cyclic permutation of monomials; the target
/// of loop expansions. Not an algebra: only linear structure survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSeries {
    trunc: usize,
    components: Vec<BTreeMap<Monomial, BigRational>>,
}

impl CyclicSeries {
    pub fn zero(trunc: usize) -> CyclicSeries {
        CyclicSeries {
            trunc,
            components: vec![BTreeMap::new(); trunc + 1],
        }
    }

    pub fn from_series(s: &Series) -> CyclicSeries {
        let mut out = CyclicSeries::zero(s.trunc());
        for (w, comp) in s.components().iter().enumerate() {
            for (mono, coef) in comp {
                out.add_term(w, mono.clone(), coef.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, weight: usize, mono: Monomial, coef: BigRational) {
        if weight > self.trunc || coef.is_zero() {
            return;
        }
        accumulate(&mut self.components[weight], least_rotation(&mono), coef);
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn components(&self) -> &[BTreeMap<Monomial, BigRational>] {
        &self.components
    }

    pub fn coefficient(&self, weight: usize, mono: &[u32]) -> BigRational {
        if weight > self.trunc {
            return BigRational::zero();
        }
        self.components[weight]
            .get(&least_rotation(mono))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    pub fn weight_level(&self) -> WeightLevel {
        self.components
            .iter()
            .position(|c| !c.is_empty())
            .map_or(WeightLevel::Infinite, WeightLevel::Finite)
    }

    pub fn truncated(&self, trunc: usize) -> CyclicSeries {
        assert!(trunc <= self.trunc, "truncation can only shrink");
        CyclicSeries {
            trunc,
            components: self.components[..=trunc].to_vec(),
        }
    }

    pub fn add(&self, other: &CyclicSeries) -> CyclicSeries {
        assert_eq!(self.trunc, other.trunc, "series truncation mismatch");
        let mut out = self.clone();
        for (w, comp) in other.components.iter().enumerate() {
            for (mono, coef) in comp {
                out.add_term(w, mono.clone(), coef.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> CyclicSeries {
        let mut out = CyclicSeries::zero(self.trunc);
        if c.is_zero() {
            return out;
        }
        for (w, comp) in self.components.iter().enumerate() {
            for (mono, coef) in comp {
                out.components[w].insert(mono.clone(), coef * c);
            }
        }
        out
    }

    pub fn sub(&self, other: &CyclicSeries) -> CyclicSeries {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Clears the scalar component: subtracts the augmentation times the
    /// unit, the reduction used by weight-level checks.
    pub fn augmentation_reduced(&self) -> CyclicSeries {
        let mut out = self.clone();
        out.components[0].clear();
        out
    }
}
