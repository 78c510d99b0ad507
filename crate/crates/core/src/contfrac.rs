//! Continued fractions of `p/q`, Zaremba pairs, and the complexity bounds
//! for lens spaces and Seifert manifolds that follow from them.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest partial quotient allowed in a Zaremba pair.
pub const ZAREMBA_BOUND: u64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFExpansion {
    pub p: u64,
    pub q: u64,
    /// `a₁, …, aₙ` with `aₙ ≥ 2` unless `n = 1`.
    pub quotients: Vec<u64>,
}

impl CFExpansion {
    /// `S(p, q)`, the sum of the partial quotients.
    pub fn sum(&self) -> u64 {
        self.quotients.iter().sum()
    }

    pub fn max_quotient(&self) -> u64 {
        self.quotients.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn is_zaremba(&self) -> bool {
        self.max_quotient() <= ZAREMBA_BOUND
    }

    pub fn is_weak_zaremba(&self) -> bool {
        self.sum() <= ZAREMBA_BOUND * self.len() as u64
    }
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    if q == 0 || p <= q {
        return Err(Error::Precondition(format!("need p > q >= 1, got p = {p}, q = {q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Precondition(format!("p = {p} and q = {q} are not coprime")));
    }
    Ok(())
}

/// Expansion of `p/q` by the Euclidean algorithm. For coprime `p > q ≥ 1`
/// the final quotient is the last nonzero remainder divided by 1, so it is
/// at least 2 unless `q = 1`.
pub fn cf_expand(p: u64, q: u64) -> Result<CFExpansion> {
    check_pair(p, q)?;
    let mut quotients = Vec::new();
    let (mut a, mut b) = (p, q);
    while b != 0 {
        quotients.push(a / b);
        (a, b) = (b, a % b);
    }
    Ok(CFExpansion { p, q, quotients })
}

/// Inverse of [`cf_expand`]: `(p, q)` from `∏[[aᵢ, 1], [1, 0]]` applied to
/// `(aₙ, 1)`.
pub fn cf_reconstruct(quotients: &[u64]) -> Result<(u64, u64)> {
    let (&last, rest) = quotients.split_last().ok_or_else(|| Error::Precondition("empty quotient list".into()))?;
    if quotients.contains(&0) {
        return Err(Error::Precondition("partial quotients must be >= 1".into()));
    }
    if !rest.is_empty() && last < 2 {
        return Err(Error::Precondition("last partial quotient must be >= 2".into()));
    }
    let overflow = || Error::Precondition("continued fraction overflows 64 bits".into());
    let (mut p, mut q) = (last, 1u64);
    for &a in rest.iter().rev() {
        let next = a.checked_mul(p).and_then(|v| v.checked_add(q)).ok_or_else(overflow)?;
        (p, q) = (next, p);
    }
    Ok((p, q))
}

pub fn is_zaremba(p: u64, q: u64) -> Result<bool> {
    Ok(cf_expand(p, q)?.is_zaremba())
}

pub fn is_weak_zaremba(p: u64, q: u64) -> Result<bool> {
    Ok(cf_expand(p, q)?.is_weak_zaremba())
}

/// `⌊m·log₂p⌋`, exactly.
fn floor_mul_log2(p: u64, m: u32) -> u64 {
    BigUint::from(p).pow(m).bits() - 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumBoundCheck {
    pub sum: u64,
    /// `3·log₂p` for Zaremba pairs, `10·log₂p` for weak ones.
    pub bound: f64,
    pub holds: bool,
}

/// Checks `S(p, q) ≤ 3·log₂p` (Zaremba) or `S(p, q) ≤ 10·log₂p` (weak
/// Zaremba). The comparison is exact.
pub fn cf_sum_bound_check(p: u64, q: u64) -> Result<SumBoundCheck> {
    if q <= 1 {
        return Err(Error::Precondition(format!("need q > 1, got q = {q}")));
    }
    let cf = cf_expand(p, q)?;
    let m = if cf.is_zaremba() {
        3
    } else if cf.is_weak_zaremba() {
        10
    } else {
        return Err(Error::NotZaremba { p, q, predicate: "zaremba or weak-zaremba" });
    };
    let sum = cf.sum();
    Ok(SumBoundCheck { sum, bound: m as f64 * (p as f64).log2(), holds: sum <= floor_mul_log2(p, m) })
}

/// Largest partial quotient of `p/q`, or `None` as soon as one reaches
/// `abort_at` or when `p` and `q` are not coprime.
fn max_quotient_below(mut a: u64, mut b: u64, abort_at: u64) -> Option<u64> {
    let mut max = 0;
    while b != 0 {
        let t = a / b;
        if t >= abort_at {
            return None;
        }
        max = max.max(t);
        (a, b) = (b, a % b);
    }
    (a == 1).then_some(max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartnerScan {
    pub p: u64,
    pub q: u64,
    pub max_quotient: u64,
    pub is_cusick: bool,
}

/// The `1 < q < p` coprime with `p` whose expansion of `p/q` has the
/// smallest maximal partial quotient (ties: smallest `q`).
pub fn zaremba_partner_scan(p: u64) -> Result<PartnerScan> {
    if p < 3 {
        return Err(Error::Precondition(format!("need p >= 3, got {p}")));
    }
    let mut best: Option<(u64, u64)> = None;
    for q in 2..p {
        let abort_at = best.map_or(u64::MAX, |(_, m)| m);
        if let Some(m) = max_quotient_below(p, q, abort_at) {
            best = Some((q, m));
            // the last quotient is at least 2
            if m == 2 {
                break;
            }
        }
    }
    let (q, max_quotient) = best.expect("q = p - 1 is always coprime with p");
    Ok(PartnerScan { p, q, max_quotient, is_cusick: max_quotient <= ZAREMBA_BOUND })
}

/// [`zaremba_partner_scan`] for every `3 ≤ p ≤ max_p`, in order.
pub fn partner_scan_range(max_p: u64) -> Vec<PartnerScan> {
    (3..=max_p).into_par_iter().map(|p| zaremba_partner_scan(p).expect("p >= 3")).collect()
}

/// `(F_{k+1}, F_k)` with `F₁ = F₂ = 1`.
pub fn fibonacci_pair(k: u32) -> Result<(u64, u64)> {
    if k < 2 {
        return Err(Error::Precondition(format!("need k >= 2, got {k}")));
    }
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 2..=k {
        let next = a.checked_add(b).ok_or_else(|| Error::Precondition(format!("F_{} overflows 64 bits", k + 1)))?;
        (a, b) = (b, next);
    }
    Ok((b, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Zaremba,
    WeakZaremba,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldBounds {
    pub lower: f64,
    pub upper: f64,
    pub upper_strict: bool,
    pub hypothesis: Hypothesis,
    /// `p < 6q`, which every Zaremba pair satisfies.
    pub ratio_check: Option<bool>,
}

fn lower_constant() -> f64 {
    2.0 / 5f64.log2()
}

/// Bounds on the complexity of the lens space `L(p, q)`:
/// `(2/log₂5)·log₂p − 1 ≤ c ≤ 3·log₂p − 3` for Zaremba pairs, with upper
/// bound `10·log₂p − 3` for weak ones. `weak` forces the weak variant.
pub fn lens_bounds(p: u64, q: u64, weak: bool) -> Result<ManifoldBounds> {
    let cf = cf_expand(p, q)?;
    let hypothesis = if !weak && cf.is_zaremba() {
        Hypothesis::Zaremba
    } else if cf.is_weak_zaremba() {
        Hypothesis::WeakZaremba
    } else {
        let predicate = if weak { "weak-zaremba" } else { "zaremba or weak-zaremba" };
        return Err(Error::NotZaremba { p, q, predicate });
    };
    let l = (p as f64).log2();
    let upper = match hypothesis {
        Hypothesis::Zaremba => 3.0 * l - 3.0,
        Hypothesis::WeakZaremba => 10.0 * l - 3.0,
    };
    Ok(ManifoldBounds { lower: lower_constant() * l - 1.0, upper, upper_strict: false, hypothesis, ratio_check: None })
}

/// Bounds `(2/log₂5)·log₂q ≤ c < 3·log₂q + 9` for the Seifert manifold
/// `(S²; (2,1), (2,1), (p,q), −1)` with `(p, q)` a Zaremba pair, `q > 1`.
pub fn seifert_manifold_bounds(p: u64, q: u64) -> Result<ManifoldBounds> {
    if q <= 1 {
        return Err(Error::Precondition(format!("need q > 1, got q = {q}")));
    }
    if !is_zaremba(p, q)? {
        return Err(Error::NotZaremba { p, q, predicate: "zaremba" });
    }
    let l = (q as f64).log2();
    Ok(ManifoldBounds {
        lower: lower_constant() * l,
        upper: 3.0 * l + 9.0,
        upper_strict: true,
        hypothesis: Hypothesis::Zaremba,
        ratio_check: Some(p < 6 * q),
    })
}

/// Tallies over every coprime pair `p > q > 1` with `p ≤ max_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSweep {
    pub max_p: u64,
    pub pairs: u64,
    /// `Σ (φ(p) − 1)` over `3 ≤ p ≤ max_p`: what `pairs` must equal.
    pub expected_pairs: u64,
    pub zaremba: u64,
    pub weak: u64,
    pub zaremba_sum_violations: u64,
    pub zaremba_ratio_violations: u64,
    pub weak_sum_violations: u64,
    pub zaremba_not_weak: u64,
}

impl PairSweep {
    pub fn is_clean(&self) -> bool {
        self.pairs == self.expected_pairs
            && self.zaremba_sum_violations == 0
            && self.zaremba_ratio_violations == 0
            && self.weak_sum_violations == 0
            && self.zaremba_not_weak == 0
    }

    fn merge(mut self, o: PairSweep) -> PairSweep {
        self.pairs += o.pairs;
        self.zaremba += o.zaremba;
        self.weak += o.weak;
        self.zaremba_sum_violations += o.zaremba_sum_violations;
        self.zaremba_ratio_violations += o.zaremba_ratio_violations;
        self.weak_sum_violations += o.weak_sum_violations;
        self.zaremba_not_weak += o.zaremba_not_weak;
        self
    }
}

struct SweepTables {
    max_p: u64,
    bound3: Vec<u64>,
    bound10: Vec<u64>,
}

/// Walks the expansions `[a, …]` of every pair, each node `(p, q)` standing
/// for the suffix `[aₖ, …, aₙ]`; prepending `a` gives `(a·p + q, p)`.
fn sweep_subtree(t: &SweepTables, p: u64, q: u64, sum: u64, max: u64, n: u64, acc: &mut PairSweep) {
    acc.pairs += 1;
    let zaremba = max <= ZAREMBA_BOUND;
    let weak = sum <= ZAREMBA_BOUND * n;
    if zaremba {
        acc.zaremba += 1;
        acc.zaremba_sum_violations += u64::from(sum > t.bound3[p as usize]);
        acc.zaremba_ratio_violations += u64::from(p >= 6 * q);
        acc.zaremba_not_weak += u64::from(!weak);
    }
    if weak {
        acc.weak += 1;
        acc.weak_sum_violations += u64::from(sum > t.bound10[p as usize]);
    }
    let mut a = 1;
    while a * p + q <= t.max_p {
        sweep_subtree(t, a * p + q, p, sum + a, max.max(a), n + 1, acc);
        a += 1;
    }
}

fn totient_sum(max_p: u64) -> u64 {
    let n = max_p as usize;
    let mut phi: Vec<u64> = (0..=max_p).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    (3..=n).map(|p| phi[p] - 1).sum()
}

/// Exhaustive check of the continued-fraction inequalities over all
/// coprime `p > q > 1`, `p ≤ max_p`: for Zaremba pairs `S ≤ 3·log₂p` and
/// `p < 6q`, for weak Zaremba pairs `S ≤ 10·log₂p`, and Zaremba ⟹ weak.
pub fn sweep_pairs(max_p: u64) -> PairSweep {
    let tables = SweepTables {
        max_p,
        bound3: (0..=max_p).map(|p| if p < 2 { 0 } else { floor_mul_log2(p, 3) }).collect(),
        bound10: (0..=max_p).map(|p| if p < 2 { 0 } else { floor_mul_log2(p, 10) }).collect(),
    };
    // Two-quotient suffixes [a, last] are the roots; (last, 1) itself has q = 1.
    let seeds: Vec<(u64, u64)> = (2..=max_p)
        .flat_map(|last| (1..).map(move |a| (a, last)).take_while(move |&(a, last)| a * last < max_p))
        .collect();
    let mut sweep = seeds
        .par_iter()
        .map(|&(a, last)| {
            let mut acc = PairSweep::default();
            sweep_subtree(&tables, a * last + 1, last, a + last, a.max(last), 2, &mut acc);
            acc
        })
        .reduce(PairSweep::default, PairSweep::merge);
    sweep.max_p = max_p;
    sweep.expected_pairs = totient_sum(max_p);
    sweep
}
