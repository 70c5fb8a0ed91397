//! Letters, based words and cyclic words.
//!
//! A [`Letter`] is a signed generator of a free group. Generators are
//! numbered `0..num_gens` by the owning [`crate::Surface`]; the letter code
//! packs the generator index and an inversion bit so that the derived order
//! is `x_1 < x_1^-1 < y_1 < y_1^-1 < ...`. [`Word`] is a freely reduced
//! based word, [`CyclicWord`] is a cyclically reduced cyclic word stored as
//! its lexicographically least rotation. Conjugacy classes of a free group
//! are in bijection with such canonical cyclic words.

use std::fmt;

/// Signed generator. Code is `2 * gen + (1 if inverted)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u32);

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter(gen * 2 + inverse as u32)
    }

    pub fn gen(self) -> u32 {
        self.0 / 2
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Exponent contribution of this letter, `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

fn reduce_into(acc: &mut Vec<Letter>, l: Letter) {
    if acc.last() == Some(&l.inverse()) {
        acc.pop();
    } else {
        acc.push(l);
    }
}

fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut acc = Vec::new();
    for l in letters {
        reduce_into(&mut acc, l);
    }
    acc
}

/// Freely reduced based word. The identity is the empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(free_reduce(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut acc = self.0.clone();
        for &l in &other.0 {
            reduce_into(&mut acc, l);
        }
        Word(acc)
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse())
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }
}

/// Cyclically reduced cyclic word in canonical form: among all rotations of
/// the cyclic reduction, the lexicographically least one is stored. The
/// constant class is the empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn constant() -> Self {
        CyclicWord(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut v = free_reduce(letters);
        // Cyclic reduction: strip inverse pairs straddling the base point.
        while v.len() >= 2 && *v.first().unwrap() == v.last().unwrap().inverse() {
            v.pop();
            v.remove(0);
        }
        CyclicWord(least_rotation(&v))
    }

    pub fn from_word(w: &Word) -> Self {
        Self::from_letters(w.letters().iter().copied())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::from_letters(self.0.iter().rev().map(|l| l.inverse()))
    }

    /// Letters starting from position `k`, one full cycle.
    pub fn rotation(&self, k: usize) -> impl Iterator<Item = Letter> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| self.0[(k + i) % n])
    }

    /// Letter at cyclic position `k`.
    pub fn letter_at(&self, k: usize) -> Letter {
        self.0[k % self.0.len()]
    }

    /// Arc of letters from position `from` (inclusive) to `to` (exclusive),
    /// read cyclically; `from == to` yields the empty sequence.
    pub fn arc(&self, from: usize, to: usize) -> Vec<Letter> {
        let n = self.0.len();
        let len = (to + n - from) % n;
        (0..len).map(|i| self.0[(from + i) % n]).collect()
    }

    /// A based representative starting at the stored rotation.
    pub fn to_word(&self) -> Word {
        Word::from_letters(self.0.iter().copied())
    }
}

fn least_rotation(v: &[Letter]) -> Vec<Letter> {
    if v.is_empty() {
        return Vec::new();
    }
    let n = v.len();
    let best = (0..n).min_by(|&a, &b| {
        let ra = (0..n).map(|i| v[(a + i) % n]);
        let rb = (0..n).map(|i| v[(b + i) % n]);
        ra.cmp(rb)
    });
    let k = best.unwrap();
    (0..n).map(|i| v[(k + i) % n]).collect()
}

impl fmt::Display for CyclicWord {
    /// Debug form with raw letter codes; surface-aware printing lives on
    /// [`crate::Surface`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let codes: Vec<String> = self.0.iter().map(|l| format!("{}", l.0)).collect();
        write!(f, "<{}>", codes.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(gen: u32, inv: bool) -> Letter {
        Letter::new(gen, inv)
    }

    #[test]
    fn letter_order_puts_generator_before_its_inverse() {
        assert!(l(0, false) < l(0, true));
        assert!(l(0, true) < l(1, false));
    }

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        let w = Word::from_letters([l(0, false), l(1, false), l(1, true), l(0, false)]);
        assert_eq!(w.letters(), &[l(0, false), l(0, false)]);
    }

    #[test]
    fn concat_reduces_across_the_seam() {
        let a = Word::from_letters([l(0, false), l(1, false)]);
        let b = Word::from_letters([l(1, true), l(0, true)]);
        assert!(a.concat(&b).is_empty());
    }

    #[test]
    fn cyclic_reduction_strips_the_seam() {
        // a b a^-1 reduces cyclically to b.
        let w = CyclicWord::from_letters([l(0, false), l(1, false), l(0, true)]);
        assert_eq!(w.letters(), &[l(1, false)]);
    }

    #[test]
    fn canonical_rotation_is_least() {
        // b a canonicalizes to a b.
        let w = CyclicWord::from_letters([l(1, false), l(0, false)]);
        assert_eq!(w.letters(), &[l(0, false), l(1, false)]);
    }

    #[test]
    fn inverse_of_cyclic_word_is_canonical() {
        let w = CyclicWord::from_letters([l(0, false), l(1, false)]);
        let inv = w.inverse();
        assert_eq!(inv, CyclicWord::from_letters([l(1, true), l(0, true)]));
    }

    #[test]
    fn arcs_wrap_cyclically() {
        let w = CyclicWord::from_letters([l(0, false), l(1, false), l(2, false)]);
        assert_eq!(w.arc(2, 1), vec![l(2, false), l(0, false)]);
        assert_eq!(w.arc(1, 1), Vec::new());
    }

    #[test]
    fn conjugates_share_a_canonical_form() {
        let a = Word::from_letters([l(0, false), l(1, false), l(2, true)]);
        let c = Word::from_letters([l(1, true), l(2, false)]);
        let conj = c.conjugate(&a);
        assert_eq!(CyclicWord::from_word(&a), CyclicWord::from_word(&conj));
    }
}
