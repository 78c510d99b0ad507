//! Orderly generation of canonical presentations.
//!
//! Relators are built one at a time in canonical order: lengths
//! nondecreasing, equal lengths in nondecreasing letter order, generators
//! introduced in order of first occurrence and positively, and each relator
//! no larger than any rotation or inversion of itself relabeled the same
//! way. Every canonical presentation satisfies these conditions at every
//! prefix, so walking them reaches each class; a full canonical check then
//! emits each class exactly once.

use rayon::prelude::*;

use super::canonical::{canonical_codes, inverse_code, relabel, variants, CanonicalPresentation, Codes};

const UNMAPPED: u8 = u8::MAX;

/// Limits of an enumeration: total relator length at most `max_length`
/// (exactly `exact_length` when set) and at most `max_gens` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_length: usize,
    pub max_gens: usize,
    pub exact_length: Option<usize>,
}

impl Budget {
    pub fn up_to(max_length: usize, max_gens: usize) -> Self {
        Budget { max_length, max_gens: max_gens.min(120), exact_length: None }
    }

    pub fn exactly(length: usize, max_gens: usize) -> Self {
        Budget { max_length: length, max_gens: max_gens.min(120), exact_length: Some(length) }
    }
}

struct Walker<'a, F> {
    budget: Budget,
    rels: Codes,
    total: usize,
    ngens: u8,
    visit: &'a mut F,
}

impl<F: FnMut(&[Vec<u8>])> Walker<'_, F> {
    fn emit_and_extend(&mut self) {
        if !self.rels.is_empty()
            && self.budget.exact_length.is_none_or(|l| l == self.total)
            && canonical_codes(&self.rels) == self.rels
        {
            (self.visit)(&self.rels);
        }
        let min_len = self.rels.last().map_or(1, Vec::len);
        for len in min_len..=self.budget.max_length - self.total {
            let mut word = Vec::with_capacity(len);
            self.word(len, &mut word, self.ngens, true);
        }
    }

    /// Chooses the letters of the next relator of length `len`. `tight`
    /// means the prefix equals the previous relator's, which bounds the
    /// next letter from below when lengths agree.
    fn word(&mut self, len: usize, word: &mut Vec<u8>, ngens: u8, tight: bool) {
        let pos = word.len();
        if pos == len {
            if len > 1 && word[0] == inverse_code(word[len - 1]) {
                return;
            }
            if !self.minimal_among_variants(word) {
                return;
            }
            let before = self.ngens;
            self.ngens = ngens;
            self.total += len;
            self.rels.push(word.clone());
            self.emit_and_extend();
            self.rels.pop();
            self.total -= len;
            self.ngens = before;
            return;
        }
        let prev = self.rels.last().filter(|p| p.len() == len && tight).map(|p| p[pos]);
        let new_gen = (ngens as usize) < self.budget.max_gens;
        if ngens == 0 && !new_gen {
            return;
        }
        let top = if new_gen { 2 * ngens } else { 2 * ngens - 1 };
        for c in 0..=top {
            if c == 2 * ngens + 1 {
                continue;
            }
            if prev.is_some_and(|p| c < p) {
                continue;
            }
            if pos > 0 && word[pos - 1] == inverse_code(c) {
                continue;
            }
            let next_gens = if c == 2 * ngens { ngens + 1 } else { ngens };
            word.push(c);
            self.word(len, word, next_gens, prev == Some(c));
            word.pop();
        }
    }

    /// No rotation or inversion of `word`, relabeled with the generators
    /// seen so far fixed and new ones numbered on first sight, is smaller.
    fn minimal_among_variants(&self, word: &[u8]) -> bool {
        let n = self.ngens as usize;
        for v in variants(word) {
            let mut map: Vec<u8> = (0..self.budget.max_gens.max(1) as u8)
                .map(|g| if (g as usize) < n { g << 1 } else { UNMAPPED })
                .collect();
            let mut next = self.ngens;
            if relabel(&v, &mut map, &mut next).as_slice() < word {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` on the letter codes of every canonical presentation within
/// `budget`, in generation order.
#[cfg(test)]
pub(crate) fn visit_codes(budget: Budget, mut visit: impl FnMut(&[Vec<u8>])) {
    if budget.max_length == 0 || budget.max_gens == 0 {
        return;
    }
    let mut w = Walker { budget, rels: Vec::new(), total: 0, ngens: 0, visit: &mut visit };
    w.emit_and_extend();
}

/// The possible first relators, each heading an independent part of the
/// enumeration, in generation order.
pub(crate) fn shards(budget: Budget) -> Vec<Vec<u8>> {
    let mut firsts = Vec::new();
    if budget.max_length == 0 || budget.max_gens == 0 {
        return firsts;
    }
    let mut collect = |rels: &[Vec<u8>]| firsts.push(rels[0].clone());
    let mut w = Walker { budget, rels: Vec::new(), total: 0, ngens: 0, visit: &mut collect };
    for len in 1..=budget.max_length {
        w.first_words(len, &mut Vec::with_capacity(len), 0);
    }
    firsts
}

impl<F: FnMut(&[Vec<u8>])> Walker<'_, F> {
    fn first_words(&mut self, len: usize, word: &mut Vec<u8>, ngens: u8) {
        let pos = word.len();
        if pos == len {
            if (len == 1 || word[0] != inverse_code(word[len - 1])) && self.minimal_among_variants(word) {
                (self.visit)(std::slice::from_ref(word));
            }
            return;
        }
        let top = if (ngens as usize) < self.budget.max_gens { 2 * ngens } else { 2 * ngens - 1 };
        for c in 0..=top {
            if c == 2 * ngens + 1 || (pos > 0 && word[pos - 1] == inverse_code(c)) {
                continue;
            }
            word.push(c);
            self.first_words(len, word, if c == 2 * ngens { ngens + 1 } else { ngens });
            word.pop();
        }
    }
}

/// [`visit_codes`] restricted to presentations whose first relator is
/// `first`.
pub(crate) fn visit_shard(budget: Budget, first: &[u8], mut visit: impl FnMut(&[Vec<u8>])) {
    let ngens = first.iter().map(|&c| c / 2 + 1).max().unwrap_or(0);
    let mut w = Walker { budget, rels: vec![first.to_vec()], total: first.len(), ngens, visit: &mut visit };
    w.emit_and_extend();
}

/// Every canonical presentation within the budget, ordered by total length,
/// then generator count, then key.
pub fn enumerate_presentations(max_length: usize, max_gens: usize) -> Vec<CanonicalPresentation> {
    let budget = Budget::up_to(max_length, max_gens);
    let mut out: Vec<CanonicalPresentation> = shards(budget)
        .par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            visit_shard(budget, first, |rels| found.push(CanonicalPresentation::from_codes(rels)));
            found
        })
        .collect();
    out.sort_by(|a, b| (a.length(), a.generator_count(), a.key()).cmp(&(b.length(), b.generator_count(), b.key())));
    out
}

/// Number of classes within the budget.
pub fn count_presentations(max_length: usize, max_gens: usize) -> usize {
    let budget = Budget::up_to(max_length, max_gens);
    shards(budget)
        .par_iter()
        .map(|first| {
            let mut n = 0;
            visit_shard(budget, first, |_| n += 1);
            n
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(max_length: usize, max_gens: usize) -> Vec<String> {
        enumerate_presentations(max_length, max_gens).iter().map(|c| c.key().to_string()).collect()
    }

    #[test]
    fn smallest_budget() {
        assert_eq!(keys(2, 1), ["a", "a ; a", "a^2"]);
        assert_eq!(keys(1, 3), ["a"]);
        assert_eq!(keys(2, 2), ["a", "a ; a", "a^2", "a ; b", "a b"]);
    }

    #[test]
    fn sequential_and_sharded_agree() {
        let budget = Budget::up_to(6, 3);
        let mut seq = Vec::new();
        visit_codes(budget, |r| seq.push(r.to_vec()));
        let mut sharded = Vec::new();
        for first in shards(budget) {
            visit_shard(budget, &first, |r| sharded.push(r.to_vec()));
        }
        assert_eq!(seq, sharded);
    }

    #[test]
    fn emitted_presentations_are_canonical() {
        for c in enumerate_presentations(5, 3) {
            assert_eq!(&super::super::canonical_form(c.presentation()), &c);
        }
    }
}
