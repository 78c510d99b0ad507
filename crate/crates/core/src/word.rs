//! Words in the free group on a finite set of generators.
//!
//! A [`Word`] stores its letters exactly as written. Reduction is always an
//! explicit step ([`Word::free_reduce`], [`Word::cyclic_reduce`]) because the
//! length of a presentation counts the written relators.

use serde::{Deserialize, Serialize};

/// A generator or the inverse of a generator.
///
/// Letters are ordered `a < a⁻¹ < b < b⁻¹ < …`, which is the order used by
/// canonical forms throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, inverse: sign < 0 }
    }

    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    /// Packs the letter as `2·generator + (1 if inverse)`.
    pub fn code(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter { generator: code / 2, inverse: code % 2 == 1 }
    }

    pub fn generator(self) -> usize {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub(crate) fn with_generator(self, generator: usize) -> Self {
        Letter { generator, inverse: self.inverse }
    }
}

/// A finite sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `generator^exponent` written out letter by letter.
    pub fn power(generator: usize, exponent: i64) -> Self {
        let letter = Letter::new(generator, if exponent < 0 { -1 } else { 1 });
        Word(vec![letter; exponent.unsigned_abs() as usize])
    }

    /// The commutator `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: usize, y: usize) -> Self {
        Word(vec![Letter::pos(x), Letter::pos(y), Letter::neg(x), Letter::neg(y)])
    }

    /// Builds a word from `(generator, exponent)` factors.
    pub fn from_factors(factors: &[(usize, i64)]) -> Self {
        let mut w = Word::empty();
        for &(g, e) in factors {
            w.extend(&Word::power(g, e));
        }
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub(crate) fn letters_mut(&mut self) -> &mut Vec<Letter> {
        &mut self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Exponent sum of `generator` in the word.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0.iter().filter(|l| l.generator == generator).map(|l| l.sign()).sum()
    }

    pub fn contains_generator(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator == generator)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.0.len() > 1 => !f.cancels(l),
                _ => true,
            }
    }

    /// The freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// A freely and cyclically reduced conjugate of `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo].cancels(reduced[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    /// The word read starting at `offset`, wrapping around.
    pub fn rotate(&self, offset: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = offset % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: Letter = Letter { generator: 0, inverse: false };
    const AI: Letter = Letter { generator: 0, inverse: true };
    const B: Letter = Letter { generator: 1, inverse: false };
    const BI: Letter = Letter { generator: 1, inverse: true };

    fn w(letters: &[Letter]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w(&[A, AI]).free_reduce(), Word::empty());
        assert_eq!(w(&[A, B, BI, A]).free_reduce(), w(&[A, A]));
        assert_eq!(w(&[A, B, AI]).free_reduce(), w(&[A, B, AI]));
        assert_eq!(w(&[A, B, BI, AI, B]).free_reduce(), w(&[B]));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w(&[AI, B, A]).cyclic_reduce(), w(&[B]));
        assert_eq!(w(&[A, B, A, B]).cyclic_reduce(), w(&[A, B, A, B]));
        assert_eq!(w(&[B, A, AI, BI, A]).cyclic_reduce(), w(&[A]));
        assert_eq!(w(&[A, AI]).cyclic_reduce(), Word::empty());
    }

    #[test]
    fn letter_order_and_codes() {
        assert!(A < AI && AI < B && B < BI);
        for code in 0..10 {
            assert_eq!(Letter::from_code(code).code(), code);
        }
        assert_eq!(Word::power(1, -3), w(&[BI, BI, BI]));
        assert_eq!(w(&[A, AI, A, B]).exponent_sum(0), 1);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|v| v.into_iter().map(|(g, inv)| Letter { generator: g, inverse: inv }).collect())
    }

    proptest! {
        #[test]
        fn reductions_are_idempotent_and_shrink(word in arb_word()) {
            let f = word.free_reduce();
            prop_assert!(f.len() <= word.len());
            prop_assert!(f.is_freely_reduced());
            prop_assert_eq!(f.free_reduce(), f.clone());
            let c = word.cyclic_reduce();
            prop_assert!(c.len() <= f.len());
            prop_assert!(c.is_cyclically_reduced());
            prop_assert_eq!(c.cyclic_reduce(), c.clone());
            for g in 0..3 {
                prop_assert_eq!(c.exponent_sum(g), word.exponent_sum(g));
            }
        }

        #[test]
        fn inverse_cancels(word in arb_word()) {
            let mut both = word.clone();
            both.extend(&word.inverse());
            prop_assert!(both.free_reduce().is_empty());
        }
    }
}
