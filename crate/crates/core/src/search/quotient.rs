//! Non-abelian permutation images. A presentation with such an image does
//! not present a cyclic group, whatever coset enumeration manages to say.

use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;

type Perm = Vec<u8>;

/// A homomorphism onto a non-abelian permutation group, given on the
/// generators of `presentation` (a Tietze simplification of the input).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationImage {
    pub presentation: Presentation,
    pub degree: usize,
    /// `images[g][i]` is the image of point `i` under generator `g`.
    pub images: Vec<Vec<u8>>,
}

fn compose(p: &[u8], q: &[u8]) -> Perm {
    // apply p, then q
    p.iter().map(|&i| q[i as usize]).collect()
}

fn inverse(p: &[u8]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

fn all_permutations(d: usize) -> Vec<Perm> {
    fn go(prefix: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for s in 0..p.len() {
        let (mut i, mut len) = (s, 0);
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    lengths
}

struct Search<'a> {
    relators: Vec<(usize, &'a [crate::word::Letter])>,
    perms: Vec<Perm>,
    inverses: Vec<Perm>,
    class_reps: Vec<usize>,
    chosen: Vec<usize>,
    identity: Perm,
}

impl Search<'_> {
    fn relator_holds(&self, word: &[crate::word::Letter]) -> bool {
        let mut acc = self.identity.clone();
        for l in word {
            let k = self.chosen[l.generator()];
            let img = if l.is_inverse() { &self.inverses[k] } else { &self.perms[k] };
            acc = compose(&acc, img);
        }
        acc == self.identity
    }

    fn non_abelian(&self) -> bool {
        let g = self.chosen.len();
        (0..g).any(|i| {
            (i + 1..g).any(|j| {
                let (x, y) = (&self.perms[self.chosen[i]], &self.perms[self.chosen[j]]);
                compose(x, y) != compose(y, x)
            })
        })
    }

    fn assign(&mut self, g: usize, ngens: usize) -> bool {
        if g == ngens {
            return self.non_abelian();
        }
        let candidates: Vec<usize> = if g == 0 { self.class_reps.clone() } else { (0..self.perms.len()).collect() };
        for k in candidates {
            self.chosen.push(k);
            let ok = self.relators.iter().filter(|(top, _)| *top == g).all(|(_, w)| self.relator_holds(w));
            if ok && self.assign(g + 1, ngens) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Looks for a homomorphism onto a non-abelian subgroup of `S_d`,
/// `3 ≤ d ≤ max_degree`, after Tietze-simplifying `p`. Generators are
/// conjugated so the first one maps to a fixed cycle type representative.
pub fn find_nonabelian_image(p: &Presentation, max_degree: usize) -> Option<PermutationImage> {
    let simple = p.simplify();
    let ngens = simple.generator_count();
    if ngens < 2 {
        return None;
    }
    let relators: Vec<(usize, &[crate::word::Letter])> =
        simple.relators().iter().filter(|r| !r.is_empty()).map(|r| (r.max_generator().unwrap(), r.letters())).collect();
    for d in 3..=max_degree {
        let perms = all_permutations(d);
        let mut seen_types = Vec::new();
        let mut class_reps = Vec::new();
        for (k, p) in perms.iter().enumerate() {
            let t = cycle_type(p);
            if !seen_types.contains(&t) {
                seen_types.push(t);
                class_reps.push(k);
            }
        }
        let mut s = Search {
            relators: relators.clone(),
            inverses: perms.iter().map(|p| inverse(p)).collect(),
            perms,
            class_reps,
            chosen: Vec::with_capacity(ngens),
            identity: (0..d as u8).collect(),
        };
        if s.assign(0, ngens) {
            let images = s.chosen.iter().map(|&k| s.perms[k].clone()).collect();
            return Some(PermutationImage { presentation: simple, degree: d, images });
        }
    }
    None
}
