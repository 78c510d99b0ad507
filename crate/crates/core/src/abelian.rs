//! Relation matrices and their Smith normal form over ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;

/// Exponent-sum matrix of a presentation: entry `(i, j)` is the exponent sum
/// of generator `j` in relator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl RelationMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        RelationMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        RelationMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let cols = p.generator_count();
        let mut entries = vec![BigInt::zero(); p.relator_count() * cols];
        for (i, r) in p.relators().iter().enumerate() {
            for l in r.letters() {
                entries[i * cols + l.generator()] += l.sign();
            }
        }
        RelationMatrix { rows: p.relator_count(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// `‖X‖ = Σ |x_ij|`.
    pub fn norm(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).sum()
    }

    /// L¹ norm of each row.
    pub fn row_norms(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).abs()).sum()).collect()
    }

    pub fn smith_normal_form(&self) -> AbelianInvariants {
        smith_normal_form(self)
    }
}

impl fmt::Display for RelationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Invariant factors of the Abelianization `ℤⁿ / rowspace(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_k`, trivial 1's included.
    pub diagonal: Vec<BigInt>,
    /// `n − k`.
    pub free_rank: usize,
    /// `Π dᵢ`.
    pub torsion_order: BigInt,
}

impl AbelianInvariants {
    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> impl Iterator<Item = &BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one())
    }

    /// The torsion part is cyclic (at most one nontrivial factor).
    pub fn torsion_is_cyclic(&self) -> bool {
        self.invariant_factors().count() <= 1
    }

    pub fn is_cyclic_of_order(&self, n: &BigInt) -> bool {
        self.free_rank == 0 && &self.torsion_order == n && self.torsion_is_cyclic()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonalizes with the smallest nonzero entry as pivot, then repairs the
/// divisibility chain by replacing pairs `(dᵢ, dⱼ)` with `(gcd, lcm)`.
pub fn smith_normal_form(x: &RelationMatrix) -> AbelianInvariants {
    let (rows, cols) = (x.rows, x.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| x.entries[i * cols..(i + 1) * cols].to_vec()).collect();
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = min_nonzero(&a, t) {
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (dst, src) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *dst -= &q * src;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        if a.get(t).is_none_or(|row| row[t].is_zero()) {
            break;
        }
        diagonal.push(a[t][t].abs());
    }

    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            if (&diagonal[j] % &diagonal[i]).is_zero() {
                continue;
            }
            let g = diagonal[i].gcd(&diagonal[j]);
            let l = &diagonal[i] / &g * &diagonal[j];
            diagonal[i] = g;
            diagonal[j] = l;
        }
    }

    let torsion_order = diagonal.iter().fold(BigInt::one(), |acc, d| acc * d);
    AbelianInvariants { free_rank: cols - diagonal.len(), diagonal, torsion_order }
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &m < b) {
                best = Some((i, j, m));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
