//! The Goldman bracket and the framed Turaev cobracket.
//!
//! Both operations are defined on the free module over the rationals
//! spanned by free homotopy classes of loops. The bracket of two classes
//! sums, over the double points of taut representatives, the sign times
//! the class merged at the double point. The framed cobracket of a class
//! `w` sums the sign times the wedge of the two split halves over the self
//! double points, and subtracts `rot(w)` times `w /\ 1`, where `1` is the
//! constant class; this combination does not depend on the chosen immersed
//! representative. The unframed cobracket instead discards all terms
//! containing the constant class.

use crate::framing::Framing;
use crate::intersect;
use crate::surface::Surface;
use crate::words::CyclicWord;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub type Coef = BigRational;

pub fn coef_int(n: i64) -> Coef {
    BigRational::from_integer(BigInt::from(n))
}

/// Finite rational combination of free homotopy classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopCombo {
    terms: BTreeMap<CyclicWord, Coef>,
}

impl LoopCombo {
    pub fn zero() -> Self {
        LoopCombo::default()
    }

    pub fn from_class(w: CyclicWord) -> Self {
        let mut c = LoopCombo::zero();
        c.add_term(w, Coef::one());
        c
    }

    pub fn add_term(&mut self, w: CyclicWord, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &LoopCombo) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, c: &Coef) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<CyclicWord, Coef> {
        &self.terms
    }

    /// Sum of all coefficients; the image under the map sending every
    /// class to 1.
    pub fn coefficient_sum(&self) -> Coef {
        self.terms.values().fold(Coef::zero(), |a, b| a + b)
    }

    /// Coefficient of the constant class.
    pub fn constant_part(&self) -> Coef {
        self.terms
            .get(&CyclicWord::constant())
            .cloned()
            .unwrap_or_else(Coef::zero)
    }
}

impl FromIterator<(CyclicWord, Coef)> for LoopCombo {
    fn from_iter<T: IntoIterator<Item = (CyclicWord, Coef)>>(iter: T) -> Self {
        let mut c = LoopCombo::zero();
        for (w, q) in iter {
            c.add_term(w, q);
        }
        c
    }
}

/// Finite rational combination of ordered pairs of classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiLoopCombo {
    terms: BTreeMap<(CyclicWord, CyclicWord), Coef>,
}

impl BiLoopCombo {
    pub fn zero() -> Self {
        BiLoopCombo::default()
    }

    pub fn add_term(&mut self, l: CyclicWord, r: CyclicWord, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((l, r)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * (l (x) r - r (x) l)`.
    pub fn add_wedge(&mut self, l: CyclicWord, r: CyclicWord, c: Coef) {
        self.add_term(l.clone(), r.clone(), c.clone());
        self.add_term(r, l, -c);
    }

    pub fn add(&mut self, other: &BiLoopCombo) {
        for ((l, r), c) in &other.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, c: &Coef) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(CyclicWord, CyclicWord), Coef> {
        &self.terms
    }

    /// Applies the flip `u (x) v -> v (x) u`.
    pub fn flipped(&self) -> BiLoopCombo {
        let mut out = BiLoopCombo::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    /// Drops every term containing the constant class in either slot.
    pub fn without_constant_terms(&self) -> BiLoopCombo {
        let mut out = BiLoopCombo::zero();
        for ((l, r), c) in &self.terms {
            if !l.is_constant() && !r.is_constant() {
                out.add_term(l.clone(), r.clone(), c.clone());
            }
        }
        out
    }
}

/// Goldman bracket, extended bilinearly. The bracket with the constant
/// class vanishes because it has a disjoint representative.
pub fn goldman_bracket(s: &Surface, a: &LoopCombo, b: &LoopCombo) -> Result<LoopCombo> {
    let pairs: Vec<(&CyclicWord, &Coef, &CyclicWord, &Coef)> = a
        .terms
        .iter()
        .flat_map(|(u, cu)| b.terms.iter().map(move |(v, cv)| (u, cu, v, cv)))
        .filter(|(u, _, v, _)| !u.is_constant() && !v.is_constant())
        .collect();
    let partials: Vec<Result<LoopCombo>> = pairs
        .par_iter()
        .map(|(u, cu, v, cv)| {
            let mut part = LoopCombo::zero();
            let c = (*cu).clone() * (*cv).clone();
            for dp in intersect::intersections(s, u, v)? {
                part.add_term(dp.merged, coef_int(dp.sign as i64) * c.clone());
            }
            Ok(part)
        })
        .collect();
    let mut out = LoopCombo::zero();
    for p in partials {
        out.add(&p?);
    }
    Ok(out)
}

/// Signed split list of a single class together with the rotation term.
fn cobracket_of_class(
    f: &Framing,
    w: &CyclicWord,
    extra_dps: &[(i8, CyclicWord, CyclicWord)],
    extra_rot: i64,
) -> Result<BiLoopCombo> {
    let mut out = BiLoopCombo::zero();
    if w.is_constant() {
        return Ok(out);
    }
    for dp in intersect::self_intersections(f.surface(), w)? {
        out.add_wedge(dp.split.0, dp.split.1, coef_int(dp.sign as i64));
    }
    for (sign, l, r) in extra_dps {
        out.add_wedge(l.clone(), r.clone(), coef_int(*sign as i64));
    }
    let rot = f.rotation_number(w)? + extra_rot;
    out.add_wedge(w.clone(), CyclicWord::constant(), coef_int(-rot));
    Ok(out)
}

/// Framed Turaev cobracket, extended linearly. The constant class maps to
/// zero.
pub fn turaev_cobracket(f: &Framing, a: &LoopCombo) -> Result<BiLoopCombo> {
    let mut out = BiLoopCombo::zero();
    for (w, c) in &a.terms {
        let mut part = cobracket_of_class(f, w, &[], 0)?;
        part.scale(c);
        out.add(&part);
    }
    Ok(out)
}

/// Framed cobracket evaluated on a non-taut representative of `w` carrying
/// `kinks_pos` positive and `kinks_neg` negative kinks. A positive kink is
/// a double point with sign `-1` splitting off the constant class, and it
/// raises the rotation number by one; a negative kink mirrors this. The
/// result equals the taut evaluation for every kink count, which is the
/// representative independence of the cobracket.
pub fn turaev_cobracket_kinked(
    f: &Framing,
    w: &CyclicWord,
    kinks_pos: u32,
    kinks_neg: u32,
) -> Result<BiLoopCombo> {
    if w.is_constant() {
        return Ok(BiLoopCombo::zero());
    }
    let one = CyclicWord::constant();
    let mut extra = Vec::new();
    for _ in 0..kinks_pos {
        extra.push((-1i8, one.clone(), w.clone()));
    }
    for _ in 0..kinks_neg {
        extra.push((1i8, one.clone(), w.clone()));
    }
    let extra_rot = kinks_pos as i64 - kinks_neg as i64;
    cobracket_of_class(f, w, &extra, extra_rot)
}

/// Unframed Turaev cobracket: the split sum with every term containing the
/// constant class discarded. It needs no framing.
pub fn unframed_cobracket(s: &Surface, a: &LoopCombo) -> Result<BiLoopCombo> {
    let mut out = BiLoopCombo::zero();
    for (w, c) in &a.terms {
        if w.is_constant() {
            continue;
        }
        let mut part = BiLoopCombo::zero();
        for dp in intersect::self_intersections(s, w)? {
            part.add_wedge(dp.split.0, dp.split.1, coef_int(dp.sign as i64));
        }
        part = part.without_constant_terms();
        part.scale(c);
        out.add(&part);
    }
    Ok(out)
}
