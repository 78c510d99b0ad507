//! Todd–Coxeter enumeration of the cosets of the trivial subgroup, used to
//! certify the order of a finitely presented group.
//!
//! The strategy is HLT: every live coset in turn has each relator scanned
//! and filled, then its row completed. Coincidences are processed at once
//! with a union-find structure. When the table is full, dead rows are
//! compacted away and a lookahead pass (scanning without defining) tries to
//! free more room before giving up.
//!
//! A relator `r = uᵏ` that closes at coset `c` also closes at `c·uʲ`, so
//! those cosets are marked and not scanned again for `r`. This keeps
//! `⟨a | aᵖ⟩` linear in `p`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::RelationMatrix;
use crate::presentation::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Lookahead passes allowed per enumeration before declaring overflow.
const MAX_LOOKAHEADS: usize = 64;

const UNDEF: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationOutcome {
    /// The group has exactly this many elements.
    Order(u64),
    /// The table needed more than this many live cosets; nothing is known.
    Overflow(usize),
}

impl EnumerationOutcome {
    pub fn order(self) -> Option<u64> {
        match self {
            EnumerationOutcome::Order(n) => Some(n),
            EnumerationOutcome::Overflow(_) => None,
        }
    }
}

struct NoRoom;

/// Coset table with rows numbered from 1 (row 1 is the subgroup) and one
/// column per letter code (`2g` for a generator, `2g + 1` for its inverse).
pub struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    /// Highest allocated row.
    n: usize,
    live: usize,
    cap: usize,
    queue: Vec<u32>,
    relators: Vec<Vec<usize>>,
    /// Length of the shortest `u` with `r = uᵏ`, per relator.
    periods: Vec<usize>,
    /// `done[c * relators + r]`: relator `r` is known to close at `c`.
    done: Vec<bool>,
    lookaheads: usize,
}

fn period(r: &[usize]) -> usize {
    let n = r.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| r[i] == r[i - d])).unwrap_or(n)
}

impl CosetTable {
    fn new(p: &Presentation, cap: usize) -> Self {
        let cols = 2 * p.generator_count();
        let relators: Vec<Vec<usize>> = p
            .relators()
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.letters().iter().map(|l| l.code()).collect())
            .collect();
        CosetTable {
            periods: relators.iter().map(|r| period(r)).collect(),
            done: vec![false; 2 * relators.len()],
            cols,
            table: vec![UNDEF; 2 * cols],
            parent: vec![0, 1],
            n: 1,
            live: 1,
            cap,
            queue: Vec::new(),
            relators,
            lookaheads: 0,
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    #[inline]
    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, NoRoom> {
        if self.live >= self.cap {
            return Err(NoRoom);
        }
        self.n += 1;
        let d = self.n;
        if self.table.len() < (d + 1) * self.cols {
            self.table.resize((d + 1) * self.cols, UNDEF);
        }
        self.parent.push(d as u32);
        self.done.resize((d + 1) * self.relators.len(), false);
        self.live += 1;
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            self.queue.push(hi as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x) as usize;
                if d == UNDEF as usize {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let (m, v) = (self.rep(g), self.rep(d));
                let mx = self.get(m, x) as usize;
                if mx != UNDEF as usize {
                    self.merge(v, mx);
                } else {
                    let vx = self.get(v, x ^ 1) as usize;
                    if vx != UNDEF as usize {
                        self.merge(m, vx);
                    } else {
                        self.set(m, x, v as u32);
                        self.set(v, x ^ 1, m as u32);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces relator `r` from coset `c` in both directions, filling the
    /// gap with new cosets when `define` is set.
    fn scan(&mut self, c: usize, r: usize, define: bool) -> Result<(), NoRoom> {
        let len = self.relators[r].len();
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, len as isize - 1);
        loop {
            while (i as isize) <= j {
                let next = self.get(f, self.relators[r][i]);
                if next == UNDEF {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, self.relators[r][j as usize] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = self.relators[r][i];
                self.set(f, x, b as u32);
                self.set(b, x ^ 1, f as u32);
                return Ok(());
            }
            if !define {
                return Ok(());
            }
            let x = self.relators[r][i];
            self.define(f, x)?;
        }
    }

    /// Scans every relator from `c` and completes its row.
    fn process(&mut self, c: usize) -> Result<(), NoRoom> {
        let nrel = self.relators.len();
        for r in 0..nrel {
            if self.done[c * nrel + r] {
                continue;
            }
            self.scan(c, r, true)?;
            if !self.is_live(c) {
                return Ok(());
            }
            self.mark_period(c, r);
        }
        for x in 0..self.cols {
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    /// Marks `c·uʲ` as closed for `r = uᵏ`, which has just closed at `c`.
    fn mark_period(&mut self, c: usize, r: usize) {
        let nrel = self.relators.len();
        let d = self.periods[r];
        let mut k = c;
        loop {
            self.done[k * nrel + r] = true;
            for i in 0..d {
                k = self.get(k, self.relators[r][i]) as usize;
            }
            if k == c {
                break;
            }
        }
    }

    fn lookahead(&mut self) {
        for c in 1..=self.n {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
    }

    /// Renumbers live rows consecutively in their current order. Returns
    /// the new index of `keep`, or of the next live row after it.
    fn compact(&mut self, keep: usize) -> usize {
        let mut new_index = vec![0u32; self.n + 1];
        let mut next = 0usize;
        let mut keep_new = None;
        for (c, slot) in new_index.iter_mut().enumerate().skip(1) {
            if self.is_live(c) {
                next += 1;
                *slot = next as u32;
            }
            if c >= keep && keep_new.is_none() && self.is_live(c) {
                keep_new = Some(next);
            }
        }
        for (c, &nc) in new_index.iter().enumerate().skip(1) {
            let nc = nc as usize;
            if nc == 0 {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c, x) as usize;
                let mapped = if v == 0 { UNDEF } else { new_index[v] };
                self.table[nc * self.cols + x] = mapped;
            }
        }
        let nrel = self.relators.len();
        for (c, &nc) in new_index.iter().enumerate().skip(1) {
            let nc = nc as usize;
            if nc != 0 {
                for r in 0..nrel {
                    self.done[nc * nrel + r] = self.done[c * nrel + r];
                }
            }
        }
        self.n = next;
        self.table.truncate((next + 1) * self.cols);
        self.done.truncate((next + 1) * nrel);
        self.parent = (0..=next as u32).collect();
        keep_new.unwrap_or(next + 1)
    }

    fn run(&mut self) -> EnumerationOutcome {
        let mut c = 1;
        while c <= self.n {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            match self.process(c) {
                Ok(()) => c += 1,
                Err(NoRoom) => {
                    if self.lookaheads >= MAX_LOOKAHEADS {
                        return EnumerationOutcome::Overflow(self.cap);
                    }
                    self.lookaheads += 1;
                    self.lookahead();
                    c = self.compact(c);
                    if self.live >= self.cap {
                        return EnumerationOutcome::Overflow(self.cap);
                    }
                }
            }
        }
        EnumerationOutcome::Order(self.live as u64)
    }

    /// Whether every row is complete, inverse-consistent and every relator
    /// traces a closed loop from every coset.
    pub fn is_closed(&self) -> bool {
        for c in (1..=self.n).filter(|&c| self.is_live(c)) {
            for x in 0..self.cols {
                let d = self.get(c, x) as usize;
                if d == 0 || !self.is_live(d) || self.get(d, x ^ 1) as usize != c {
                    return false;
                }
            }
            for r in &self.relators {
                let end = r.iter().fold(c, |k, &x| self.get(k, x) as usize);
                if end != c {
                    return false;
                }
            }
        }
        true
    }

    /// Permutation of the live cosets (numbered from 0) induced by
    /// `generator`; meaningful once enumeration has finished.
    pub fn permutation(&self, generator: usize) -> Vec<u32> {
        let live: Vec<usize> = (1..=self.n).filter(|&c| self.is_live(c)).collect();
        let mut index = vec![0u32; self.n + 1];
        for (i, &c) in live.iter().enumerate() {
            index[c] = i as u32;
        }
        live.iter().map(|&c| index[self.get(c, 2 * generator) as usize]).collect()
    }
}

/// Enumerates the cosets of the trivial subgroup with at most `max_cosets`
/// live cosets.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> EnumerationOutcome {
    enumerate_table(p, max_cosets).0
}

/// [`enumerate_cosets`], also returning the final table.
pub fn enumerate_table(p: &Presentation, max_cosets: usize) -> (EnumerationOutcome, CosetTable) {
    let mut t = CosetTable::new(p, max_cosets.max(1));
    let outcome = t.run();
    (outcome, t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Refuted(String),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub claimed_order: u64,
    pub enumeration: EnumerationOutcome,
    pub free_rank: usize,
    pub torsion: BigInt,
    pub invariant_factors: Vec<BigInt>,
    pub verdict: Verdict,
}

/// Certifies `G ≅ ℤ/p`: the group has order `p` and its Abelianization is
/// cyclic of order `p`, so the commutator subgroup is trivial.
pub fn verify_cyclic(p: &Presentation, order: u64, max_cosets: usize) -> Verification {
    let inv = RelationMatrix::from_presentation(p).smith_normal_form();
    let factors: Vec<BigInt> = inv.invariant_factors().cloned().collect();
    let enumeration = enumerate_cosets(p, max_cosets);
    let verdict = match enumeration {
        EnumerationOutcome::Order(n) if n != order => Verdict::Refuted(format!("group order is {n}, not {order}")),
        _ if inv.free_rank != 0 => Verdict::Refuted(format!("Abelianization has free rank {}", inv.free_rank)),
        _ if inv.torsion_order != BigInt::from(order) => {
            Verdict::Refuted(format!("Abelianization torsion is {}, not {order}", inv.torsion_order))
        }
        _ if factors.len() > 1 => Verdict::Refuted(format!("Abelianization {inv} is not cyclic")),
        EnumerationOutcome::Order(_) => Verdict::Verified,
        EnumerationOutcome::Overflow(cap) => Verdict::Inconclusive(format!("coset enumeration exceeded {cap} cosets")),
    };
    Verification {
        claimed_order: order,
        enumeration,
        free_rank: inv.free_rank,
        torsion: inv.torsion_order.clone(),
        invariant_factors: factors,
        verdict,
    }
}

/// Checks only the order: `Verified` iff enumeration finds exactly `order`
/// elements.
pub fn verify_order(p: &Presentation, order: u64, max_cosets: usize) -> Verdict {
    match enumerate_cosets(p, max_cosets) {
        EnumerationOutcome::Order(n) if n == order => Verdict::Verified,
        EnumerationOutcome::Order(n) => Verdict::Refuted(format!("group order is {n}, not {order}")),
        EnumerationOutcome::Overflow(cap) => Verdict::Inconclusive(format!("coset enumeration exceeded {cap} cosets")),
    }
}
