//! Finite presentations, their two cost functions, and the length-preserving
//! rewrites that normalize them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A generator of a presentation: its position and its display name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator<'a> {
    pub index: usize,
    pub name: &'a str,
}

/// `⟨a₁,…,aₙ | r₁,…,r_m⟩` with relators stored exactly as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `a`, `b`, …, `z`, then `g26`, `g27`, ….
pub fn default_name(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("g{index}")
    }
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &names {
            if !is_valid_name(name) {
                return Err(Error::InvalidPresentation(format!("bad generator name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{name}`")));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {i} uses generator index {g} but only {} generators exist",
                        names.len()
                    )));
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// A presentation on `n` generators named `a`, `b`, ….
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self> {
        Presentation::new((0..n).map(default_name).collect(), relators)
    }

    /// The empty presentation of the trivial group.
    pub fn trivial() -> Self {
        Presentation { names: Vec::new(), relators: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator<'_>> {
        self.names.iter().enumerate().map(|(index, name)| Generator { index, name })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.relators[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Total relator length `Σ|rᵢ|`, counting the relators as written.
    pub fn length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// `Σ max(|rᵢ| − 2, 0)`: the number of length-3 relators needed to make
    /// this presentation triangular, hence an upper bound on the T-invariant.
    pub fn t_cost(&self) -> usize {
        self.relators.iter().map(|r| r.len().saturating_sub(2)).sum()
    }

    /// Relator lengths in presentation order.
    pub fn relator_lengths(&self) -> Vec<usize> {
        self.relators.iter().map(Word::len).collect()
    }

    /// Appends a generator with the given name and returns its index.
    pub fn add_generator(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if !is_valid_name(&name) || self.generator_index(&name).is_some() {
            return Err(Error::InvalidPresentation(format!("cannot add generator `{name}`")));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// Appends a generator with the first unused name `t1`, `t2`, ….
    pub fn add_fresh_generator(&mut self) -> usize {
        let taken: HashSet<&str> = self.names.iter().map(String::as_str).collect();
        let name = (1..).map(|k| format!("t{k}")).find(|n| !taken.contains(n.as_str())).unwrap();
        self.names.push(name);
        self.names.len() - 1
    }

    pub fn push_relator(&mut self, relator: Word) -> Result<()> {
        self.insert_relator(self.relators.len(), relator)
    }

    pub fn insert_relator(&mut self, at: usize, relator: Word) -> Result<()> {
        if relator.max_generator().is_some_and(|g| g >= self.names.len()) {
            return Err(Error::InvalidPresentation("relator uses an undeclared generator".into()));
        }
        self.relators.insert(at, relator);
        Ok(())
    }

    pub(crate) fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    /// Drops generator `g`, renumbering the later ones. The caller must make
    /// sure no relator still mentions it.
    fn remove_generator(&mut self, g: usize) {
        debug_assert!(self.relators.iter().all(|r| !r.contains_generator(g)));
        self.names.remove(g);
        for r in &mut self.relators {
            for l in r.letters_mut().iter_mut() {
                if l.generator() > g {
                    *l = l.with_generator(l.generator() - 1);
                }
            }
        }
    }

    /// Removes length-0 and length-1 relators and all length-2 relators that
    /// are not squares, without increasing the length or changing the group.
    ///
    /// Moves run in a fixed order until none applies, lowest relator first:
    /// drop an empty relator; for a relator `x^±1` delete `x` everywhere;
    /// for a relator `x^s y^t` with `x ≠ y` substitute `y := x^(−st)` and
    /// delete `y`; drop a relator `x x⁻¹`.
    pub fn simplify(&self) -> Presentation {
        let mut p = self.clone();
        loop {
            if let Some(i) = p.relators.iter().position(Word::is_empty) {
                p.relators.remove(i);
                continue;
            }
            if let Some(i) = p.relators.iter().position(|r| r.len() == 1) {
                let g = p.relators[i].letters()[0].generator();
                for r in &mut p.relators {
                    r.letters_mut().retain(|l| l.generator() != g);
                }
                p.remove_generator(g);
                continue;
            }
            let mixed = p.relators.iter().position(|r| {
                let l = r.letters();
                l.len() == 2 && l[0] != l[1]
            });
            if let Some(i) = mixed {
                let r = p.relators.remove(i);
                let (x, y) = (r.letters()[0], r.letters()[1]);
                if x.generator() != y.generator() {
                    // x^s y^t = 1  ⇒  y = x^(−s·t)
                    let factor = -x.sign() * y.sign();
                    let (src, dst) = (y.generator(), x.generator());
                    for w in &mut p.relators {
                        for l in w.letters_mut().iter_mut() {
                            if l.generator() == src {
                                *l = Letter::new(dst, (l.sign() * factor) as i8);
                            }
                        }
                    }
                    p.remove_generator(src);
                }
                continue;
            }
            return p;
        }
    }

    /// Splits every relator of length `L ≥ 4` into `L − 2` relators of length
    /// 3 using `L − 3` fresh prefix generators, left to right.
    ///
    /// Requires every relator to have length at least 2 (run [`simplify`]
    /// first).
    ///
    /// [`simplify`]: Presentation::simplify
    pub fn triangularize(&self) -> Result<Presentation> {
        if let Some(i) = self.relators.iter().position(|r| r.len() < 2) {
            return Err(Error::Precondition(format!(
                "relator {i} has length {}; triangularize needs length >= 2",
                self.relators[i].len()
            )));
        }
        let mut out = Presentation { names: self.names.clone(), relators: Vec::new() };
        for r in &self.relators {
            let letters = r.letters();
            let len = letters.len();
            if len <= 3 {
                out.relators.push(r.clone());
                continue;
            }
            // u₁ = l₁l₂, u_k = u_{k−1} l_{k+1}, closing with u_{L−3} l_{L−1} l_L.
            let mut prev = out.add_fresh_generator();
            out.relators.push(Word::new(vec![Letter::neg(prev), letters[0], letters[1]]));
            for &l in &letters[2..len - 2] {
                let next = out.add_fresh_generator();
                out.relators.push(Word::new(vec![Letter::neg(next), Letter::pos(prev), l]));
                prev = next;
            }
            out.relators.push(Word::new(vec![Letter::pos(prev), letters[len - 2], letters[len - 1]]));
        }
        Ok(out)
    }

    /// Applies `f` to each relator.
    pub fn map_relators(&self, f: impl Fn(&Word) -> Word) -> Presentation {
        Presentation { names: self.names.clone(), relators: self.relators.iter().map(f).collect() }
    }

    /// Renders one relator in the file syntax, without the `rel` keyword.
    pub fn format_word(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let run = (j - i) as i64 * letters[i].sign();
            let name = &self.names[letters[i].generator()];
            parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
            i = j;
        }
        parts.join(" ")
    }
}

/// The presentation-file syntax; `parse_presentation` reads it back.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens")?;
        for n in &self.names {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            if r.is_empty() {
                writeln!(f, "rel")?;
            } else {
                writeln!(f, "rel {}", self.format_word(r))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn p(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn costs_on_small_examples() {
        let a8 = p("gens a\nrel a^8");
        assert_eq!((a8.length(), a8.t_cost()), (8, 6));
        assert_eq!(p("rel a^2").t_cost(), 0);
        let z147 = p("gens a b c d\nrel a^4 b c^4\nrel b^3 c^-1\nrel a^2 d^3 b^-1\nrel a^3 d^-1");
        assert_eq!(z147.length(), 23);
        assert_eq!(z147.t_cost(), 7 + 2 + 4 + 2);
    }

    #[test]
    fn simplify_kills_length_one() {
        assert_eq!(p("gens a\nrel a").simplify(), Presentation::trivial());
        let q = p("gens a b\nrel a\nrel a b^3 a^-1").simplify();
        assert_eq!(q.to_string(), "gens b\nrel b^3\n");
    }

    #[test]
    fn simplify_substitutes_mixed_pairs() {
        // x⁻¹y: y := x
        let q = p("gens x y\nrel x^-1 y\nrel y^3 x").simplify();
        assert_eq!(q.to_string(), "gens x\nrel x^4\n");
        // xy: y := x⁻¹
        let q = p("gens x y\nrel x y\nrel y^3 x^5").simplify();
        assert_eq!(q.to_string(), "gens x\nrel x^-3 x^5\n");
        // x x⁻¹ is dropped, x² kept
        let q = p("gens x\nrel x x^-1\nrel x^-2").simplify();
        assert_eq!(q.to_string(), "gens x\nrel x^-2\n");
    }

    #[test]
    fn simplify_fixed_points() {
        let q = p("gens a b\nrel a^2\nrel b a b");
        assert_eq!(q.simplify(), q);
        // no relator of length ≤ 2 that is not a square: nothing to do
        let q = p("gens a b\nrel b^-1 a^2\nrel b^3");
        assert_eq!(q.simplify(), q);
    }

    #[test]
    fn triangularize_splits_left_to_right() {
        let t = p("gens a\nrel a^5").triangularize().unwrap();
        assert_eq!(t.to_string(), "gens a t1 t2\nrel t1^-1 a^2\nrel t2^-1 t1 a\nrel t2 a^2\n");
        assert_eq!(t.relator_lengths(), vec![3, 3, 3]);
        let t3 = p("gens a\nrel a^3");
        assert_eq!(t3.triangularize().unwrap(), t3);
        let t2 = p("gens a\nrel a^2");
        assert_eq!(t2.triangularize().unwrap(), t2);
        assert!(p("gens a b\nrel a\nrel b^2").triangularize().is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut q = p("gens t1 a\nrel t1 a");
        let g = q.add_fresh_generator();
        assert_eq!(q.names()[g], "t2");
        assert!(q.add_generator("a").is_err());
        assert!(q.add_generator("_x").is_err());
    }
}
