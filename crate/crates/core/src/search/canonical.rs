//! Canonical representatives of presentations up to generator permutation
//! and inversion, relator inversion and rotation, and relator order.
//!
//! Relators are compared by length, then letter by letter with
//! `a < a⁻¹ < b < b⁻¹ < …`; a presentation's key is its relator list sorted
//! that way. The canonical form is the smallest key over the orbit. Its
//! generators always appear in order of first occurrence, first occurring
//! positively, so the minimum can be found by trying relator orders and
//! rotations and relabeling generators on first sight.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Relators as letter codes (`2g` for a generator, `2g + 1` for its inverse).
pub(crate) type Codes = Vec<Vec<u8>>;

const UNMAPPED: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalPresentation {
    presentation: Presentation,
    key: String,
}

impl CanonicalPresentation {
    pub(crate) fn from_codes(codes: &[Vec<u8>]) -> Self {
        let ngens = codes.iter().flatten().map(|&c| c as usize / 2 + 1).max().unwrap_or(0);
        let relators =
            codes.iter().map(|r| r.iter().map(|&c| Letter::from_code(c as usize)).collect::<Word>()).collect();
        let presentation = Presentation::with_default_names(ngens, relators).expect("codes use generators below ngens");
        let key = presentation.relators().iter().map(|r| presentation.format_word(r)).collect::<Vec<_>>().join(" ; ");
        CanonicalPresentation { presentation, key }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn into_presentation(self) -> Presentation {
        self.presentation
    }

    /// Relators joined by ` ; `; equal keys mean equal classes.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn length(&self) -> usize {
        self.presentation.length()
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.generator_count()
    }
}

impl fmt::Display for CanonicalPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.presentation.fmt(f)
    }
}

#[inline]
pub(crate) fn inverse_code(c: u8) -> u8 {
    c ^ 1
}

pub(crate) fn invert(w: &[u8]) -> Vec<u8> {
    w.iter().rev().map(|&c| inverse_code(c)).collect()
}

/// All rotations of `w` and of `w⁻¹`, without repeats.
pub(crate) fn variants(w: &[u8]) -> Vec<Vec<u8>> {
    let inv = invert(w);
    let n = w.len();
    let mut out: Vec<Vec<u8>> = Vec::with_capacity(2 * n);
    for base in [w, &inv[..]] {
        for i in 0..n {
            let v: Vec<u8> = base[i..].iter().chain(&base[..i]).copied().collect();
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Relabels `w` under `map` (generator → `2·image + flip`), assigning
/// unseen generators the next free index with a positive first occurrence.
pub(crate) fn relabel(w: &[u8], map: &mut [u8], next: &mut u8) -> Vec<u8> {
    w.iter()
        .map(|&c| {
            let g = (c >> 1) as usize;
            if map[g] == UNMAPPED {
                map[g] = (*next << 1) | (c & 1);
                *next += 1;
            }
            map[g] ^ (c & 1)
        })
        .collect()
}

struct Search<'a> {
    rels: &'a [Vec<u8>],
    variants: Vec<Vec<Vec<u8>>>,
    lengths: Vec<usize>,
    used: Vec<bool>,
    best: Codes,
    cur: Codes,
}

impl Search<'_> {
    fn run(&mut self, k: usize, map: &mut [u8], next: u8) {
        if k == self.rels.len() {
            return;
        }
        let len = self.lengths[k];
        for r in 0..self.rels.len() {
            if self.used[r] || self.rels[r].len() != len {
                continue;
            }
            // identical relators give identical branches
            if (0..r).any(|s| !self.used[s] && self.rels[s] == self.rels[r]) {
                continue;
            }
            self.used[r] = true;
            for v in 0..self.variants[r].len() {
                let mut m = map.to_vec();
                let mut nx = next;
                let block = relabel(&self.variants[r][v], &mut m, &mut nx);
                match self.best.get(k).map(|b| block.cmp(b)) {
                    Some(Ordering::Greater) => continue,
                    Some(Ordering::Less) | None => {
                        self.best.truncate(k);
                        self.best.push(block.clone());
                    }
                    Some(Ordering::Equal) => {}
                }
                self.cur.push(block);
                self.run(k + 1, &mut m, nx);
                self.cur.pop();
            }
            self.used[r] = false;
        }
    }
}

/// Canonical form of cyclically reduced, nonempty relators.
pub(crate) fn canonical_codes(rels: &[Vec<u8>]) -> Codes {
    let ngens = rels.iter().flatten().map(|&c| c as usize / 2 + 1).max().unwrap_or(0);
    let mut lengths: Vec<usize> = rels.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    let mut s = Search {
        rels,
        variants: rels.iter().map(|r| variants(r)).collect(),
        lengths,
        used: vec![false; rels.len()],
        best: Vec::with_capacity(rels.len()),
        cur: Vec::with_capacity(rels.len()),
    };
    s.run(0, &mut vec![UNMAPPED; ngens], 0);
    s.best
}

/// Reduces every relator freely and cyclically, drops the empty ones and
/// renumbers the generators that remain in use.
pub(crate) fn reduced_codes(p: &Presentation) -> Codes {
    let mut index = vec![usize::MAX; p.generator_count()];
    let mut next = 0;
    let mut out = Vec::new();
    for r in p.relators() {
        let w = r.cyclic_reduce();
        if w.is_empty() {
            continue;
        }
        out.push(
            w.letters()
                .iter()
                .map(|l| {
                    let g = l.generator();
                    if index[g] == usize::MAX {
                        index[g] = next;
                        next += 1;
                    }
                    (2 * index[g] + l.is_inverse() as usize) as u8
                })
                .collect(),
        );
    }
    out
}

/// The orbit-minimal representative of `p`, after free and cyclic
/// reduction; empty relators and unused generators are dropped first.
pub fn canonical_form(p: &Presentation) -> CanonicalPresentation {
    assert!(p.generator_count() < 120, "canonical forms support fewer than 120 generators");
    CanonicalPresentation::from_codes(&canonical_codes(&reduced_codes(p)))
}
