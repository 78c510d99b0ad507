//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use grpcomplex::search::enumerate_presentations;
use grpcomplex::{parse_presentation, Letter, Presentation, RelationMatrix, Word};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Rel = Vec<u8>;

pub fn cyclic_words(len: usize, ngens: u8) -> Vec<Rel> {
    fn go(len: usize, ngens: u8, w: &mut Rel, out: &mut Vec<Rel>) {
        if w.len() == len {
            if len == 1 || w[0] != w[len - 1] ^ 1 {
                out.push(w.clone());
            }
            return;
        }
        for c in 0..2 * ngens {
            if w.last().is_some_and(|&l| l == c ^ 1) {
                continue;
            }
            w.push(c);
            go(len, ngens, w, out);
            w.pop();
        }
    }
    let mut out = Vec::new();
    go(len, ngens, &mut Vec::new(), &mut out);
    out
}

pub fn signed_permutations(g: usize) -> Vec<Vec<u8>> {
    let mut perms: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..g {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..g as u8)
                    .filter(|i| !p.contains(i))
                    .map(|i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..1u32 << g {
            out.push(p.iter().enumerate().map(|(i, &t)| 2 * t + ((signs >> i) & 1) as u8).collect());
        }
    }
    out
}

pub fn rel_key(r: &Rel) -> (usize, Rel) {
    (r.len(), r.clone())
}

pub fn smallest_variant(r: &Rel) -> Rel {
    let inv: Rel = r.iter().rev().map(|&c| c ^ 1).collect();
    let n = r.len();
    let mut best: Option<Rel> = None;
    for base in [r, &inv] {
        for i in 0..n {
            let v: Rel = base[i..].iter().chain(&base[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

pub fn orbit_minimum(rels: &[Rel], perms: &[Vec<u8>]) -> Vec<Rel> {
    perms
        .iter()
        .map(|m| {
            let mut image: Vec<Rel> = rels
                .iter()
                .map(|r| smallest_variant(&r.iter().map(|&c| m[(c >> 1) as usize] ^ (c & 1)).collect()))
                .collect();
            image.sort_by_key(rel_key);
            image
        })
        .min_by(|a, b| a.iter().map(rel_key).cmp(b.iter().map(rel_key)))
        .unwrap()
}

pub fn naive_classes(max_length: usize, max_gens: usize) -> BTreeSet<Vec<Rel>> {
    let mut classes = BTreeSet::new();
    for g in 1..=max_gens {
        let perms = signed_permutations(g);
        let words: Vec<Rel> = (1..=max_length).flat_map(|l| cyclic_words(l, g as u8)).collect();
        // nondecreasing index sequences are multisets
        fn go(
            words: &[Rel],
            from: usize,
            left: usize,
            g: usize,
            cur: &mut Vec<Rel>,
            perms: &[Vec<u8>],
            out: &mut BTreeSet<Vec<Rel>>,
        ) {
            if !cur.is_empty() {
                let used: BTreeSet<u8> = cur.iter().flatten().map(|&c| c >> 1).collect();
                if used.len() == g {
                    out.insert(orbit_minimum(cur, perms));
                }
            }
            for i in from..words.len() {
                if words[i].len() <= left {
                    cur.push(words[i].clone());
                    go(words, i, left - words[i].len(), g, cur, perms, out);
                    cur.pop();
                }
            }
        }
        go(&words, 0, max_length, g, &mut Vec::new(), &perms, &mut classes);
    }
    classes
}

pub fn enumerated_classes(max_length: usize, max_gens: usize) -> (usize, BTreeSet<Vec<Rel>>) {
    let list = enumerate_presentations(max_length, max_gens);
    let set = list
        .iter()
        .map(|c| {
            c.presentation().relators().iter().map(|r| r.letters().iter().map(|l| l.code() as u8).collect()).collect()
        })
        .collect();
    (list.len(), set)
}

pub fn random_presentation(rng: &mut StdRng) -> Presentation {
    let ngens = rng.gen_range(1..=3);
    let rels = (0..rng.gen_range(1..=3))
        .map(|_| {
            let len = rng.gen_range(1..=5);
            Word::new((0..len).map(|_| Letter::new(rng.gen_range(0..ngens), if rng.gen() { 1 } else { -1 })).collect())
        })
        .collect();
    Presentation::with_default_names(ngens, rels).unwrap()
}

/// A random symmetry applied to `p`; the names are shuffled along with the
/// generators so the result reads differently.
pub fn transform(p: &Presentation, rng: &mut StdRng) -> Presentation {
    let n = p.generator_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let flip: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut rels: Vec<Word> = p
        .relators()
        .iter()
        .map(|r| {
            let w = Word::new(
                r.letters()
                    .iter()
                    .map(|l| {
                        let s = if flip[l.generator()] { -l.sign() } else { l.sign() };
                        Letter::new(perm[l.generator()], s as i8)
                    })
                    .collect(),
            );
            let w = if rng.gen() { w.inverse() } else { w };
            if w.is_empty() {
                w
            } else {
                w.rotate(rng.gen_range(0..w.len()))
            }
        })
        .collect();
    rels.shuffle(rng);
    let mut names = vec![String::new(); n];
    for (g, &t) in perm.iter().enumerate() {
        names[t] = format!("g{g}");
    }
    Presentation::new(names, rels).unwrap()
}

/// Fixture files with the orders of the groups they present.
pub const FIXTURES: [(&str, u64); 8] = [
    ("z147.pres", 147),
    ("z357.pres", 357),
    ("q8.pres", 8),
    ("d24.pres", 24),
    ("p24.pres", 24),
    ("p48.pres", 48),
    ("p120.pres", 120),
    ("pprime72.pres", 72),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Presentation {
    let path = fixture_path(name);
    parse_presentation(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn determinant(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * determinant(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Determinantal divisors `D₁, D₂, …`: the gcd of all `k × k` minors, up to
/// the rank.
pub fn determinantal_divisors(m: &[Vec<i128>]) -> Vec<i128> {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, determinant(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Checks the Smith normal form of a random small matrix against its
/// determinantal divisors and the divisibility chain.
pub fn check_snf_against_minors(rng: &mut StdRng) -> Result<(), String> {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let m: Vec<Vec<i128>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let flat: Vec<i64> = m.iter().flatten().map(|&v| v as i64).collect();
    let inv = RelationMatrix::from_i64(rows, cols, &flat).smith_normal_form();
    let diag: Vec<i128> = inv.diagonal.iter().map(|d| d.to_string().parse().unwrap()).collect();
    let divisors = determinantal_divisors(&m);
    if diag.len() != divisors.len() {
        return Err(format!("{m:?}: rank {} but minors give {}", diag.len(), divisors.len()));
    }
    if inv.free_rank != cols - diag.len() {
        return Err(format!("{m:?}: free rank {}", inv.free_rank));
    }
    let mut product = 1;
    for (k, &d) in diag.iter().enumerate() {
        if d <= 0 || (k > 0 && d % diag[k - 1] != 0) {
            return Err(format!("{m:?}: diagonal {diag:?} is not a divisibility chain"));
        }
        product *= d;
        if product != divisors[k] {
            return Err(format!("{m:?}: diagonal {diag:?} but determinantal divisors {divisors:?}"));
        }
    }
    if inv.torsion_order.to_string() != product.to_string() {
        return Err(format!("{m:?}: torsion {}", inv.torsion_order));
    }
    Ok(())
}
