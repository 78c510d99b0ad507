//! Exact complexity of `ℤ/n` by exhaustive search over canonical
//! presentations, shortest first.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::CanonicalPresentation;
use super::enumerate::{shards, visit_shard, Budget};
use super::quotient::find_nonabelian_image;
use crate::abelian::RelationMatrix;
use crate::bounds::log2_big;
use crate::coset::{verify_cyclic, Verdict, DEFAULT_MAX_COSETS};
use crate::presentation::Presentation;

/// Largest permutation degree tried when refuting an unfinished candidate.
const QUOTIENT_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub max_length: usize,
    /// Defaults to `max_length`, which never excludes a finite group.
    pub max_gens: usize,
    pub coset_cap: usize,
    /// 1 runs sequentially; more uses a private thread pool.
    pub jobs: usize,
}

impl SearchParams {
    pub fn new(max_length: usize) -> Self {
        SearchParams { max_length, max_gens: max_length, coset_cap: DEFAULT_MAX_COSETS, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchOutcome {
    /// Shortest presentation found; every shorter class was refuted.
    Exact { complexity: usize, witness: Presentation },
    /// No shorter presentation than `at_least` can exist. Either nothing
    /// within the budget verified, or some shorter candidate could not be
    /// settled (`inconclusive`), in which case `witness` may hold the
    /// shortest verified presentation found.
    LowerBoundOnly { at_least: usize, witness: Option<Presentation>, inconclusive: Vec<String> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub classes: u64,
    /// Length at most `log₂n`.
    pub pruned_length: u64,
    /// Abelianization is not `ℤ/n`.
    pub pruned_abelian: u64,
    /// Coset enumeration found a different order.
    pub refuted_order: u64,
    /// Non-abelian permutation image found.
    pub refuted_quotient: u64,
    pub verified: u64,
    pub inconclusive: u64,
    /// Classes whose length does not exceed `log₂` of their torsion.
    pub lower_bound_violations: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.classes += o.classes;
        self.pruned_length += o.pruned_length;
        self.pruned_abelian += o.pruned_abelian;
        self.refuted_order += o.refuted_order;
        self.refuted_quotient += o.refuted_quotient;
        self.verified += o.verified;
        self.inconclusive += o.inconclusive;
        self.lower_bound_violations += o.lower_bound_violations;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: u64,
    pub params: SearchParams,
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

#[derive(Default)]
struct LevelResult {
    stats: SearchStats,
    first_verified: Option<CanonicalPresentation>,
    inconclusive: Vec<String>,
}

fn classify(rels: &[Vec<u8>], n: u64, length: usize, cap: usize, out: &mut LevelResult) {
    out.stats.classes += 1;
    let class = CanonicalPresentation::from_codes(rels);
    let p = class.presentation();
    let inv = RelationMatrix::from_presentation(p).smith_normal_form();
    if inv.torsion_order >= BigInt::from(2) && length as f64 <= log2_big(&inv.torsion_order) {
        out.stats.lower_bound_violations += 1;
    }
    if length < 64 && (1u64 << length) <= n {
        out.stats.pruned_length += 1;
        return;
    }
    if !inv.is_cyclic_of_order(&BigInt::from(n)) {
        out.stats.pruned_abelian += 1;
        return;
    }
    match verify_cyclic(p, n, cap).verdict {
        Verdict::Verified => {
            out.stats.verified += 1;
            if out.first_verified.is_none() {
                out.first_verified = Some(class);
            }
        }
        Verdict::Refuted(_) => out.stats.refuted_order += 1,
        Verdict::Inconclusive(_) => {
            if find_nonabelian_image(p, QUOTIENT_DEGREE).is_some() {
                out.stats.refuted_quotient += 1;
            } else {
                out.stats.inconclusive += 1;
                out.inconclusive.push(class.key().to_string());
            }
        }
    }
}

fn run_shard(budget: Budget, first: &[u8], n: u64, cap: usize) -> LevelResult {
    let mut out = LevelResult::default();
    let length = budget.exact_length.expect("levels have exact lengths");
    visit_shard(budget, first, |rels| classify(rels, n, length, cap, &mut out));
    out
}

fn search_level(length: usize, n: u64, params: &SearchParams, pool: Option<&rayon::ThreadPool>) -> LevelResult {
    let budget = Budget::exactly(length, params.max_gens);
    let firsts = shards(budget);
    let parts: Vec<LevelResult> = match pool {
        Some(pool) => pool.install(|| firsts.par_iter().map(|f| run_shard(budget, f, n, params.coset_cap)).collect()),
        None => firsts.iter().map(|f| run_shard(budget, f, n, params.coset_cap)).collect(),
    };
    let mut merged = LevelResult::default();
    for part in parts {
        merged.stats.add(&part.stats);
        if merged.first_verified.is_none() {
            merged.first_verified = part.first_verified;
        }
        merged.inconclusive.extend(part.inconclusive);
    }
    merged
}

/// Searches lengths `1..=max_length` in order for a presentation of `ℤ/n`.
/// Classes are pruned when their length is at most `log₂n` or their
/// Abelianization is not `ℤ/n`; the rest go through [`verify_cyclic`], and
/// those it cannot settle are refuted by a non-abelian permutation image or
/// else recorded as inconclusive, which blocks an exact answer above them.
pub fn exact_cyclic_complexity(n: u64, params: &SearchParams) -> SearchReport {
    let mut stats = SearchStats::default();
    if n <= 1 {
        return SearchReport {
            n,
            params: *params,
            outcome: SearchOutcome::Exact { complexity: 0, witness: Presentation::trivial() },
            stats,
        };
    }
    let pool = (params.jobs > 1)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(params.jobs).build().expect("thread pool"));
    let mut inconclusive: Vec<String> = Vec::new();
    let mut first_inconclusive_level = None;
    for length in 1..=params.max_length {
        let level = search_level(length, n, params, pool.as_ref());
        stats.add(&level.stats);
        if let Some(witness) = level.first_verified {
            let witness = witness.into_presentation();
            let outcome = match first_inconclusive_level {
                None => SearchOutcome::Exact { complexity: length, witness },
                Some(at_least) => SearchOutcome::LowerBoundOnly { at_least, witness: Some(witness), inconclusive },
            };
            return SearchReport { n, params: *params, outcome, stats };
        }
        if !level.inconclusive.is_empty() {
            first_inconclusive_level.get_or_insert(length);
            inconclusive.extend(level.inconclusive);
        }
    }
    let at_least = first_inconclusive_level.unwrap_or(params.max_length + 1);
    SearchReport {
        n,
        params: *params,
        outcome: SearchOutcome::LowerBoundOnly { at_least, witness: None, inconclusive },
        stats,
    }
}
