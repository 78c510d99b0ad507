//! Short presentations of cyclic, finite Abelian and Milnor groups built by
//! repeated division of power relators, plus the closed-form estimates they
//! imply.
//!
//! A division step replaces a block `aᵖ` inside a relator by `bˢ aʳ`
//! (`p = sq + r`) and adds the relator `b⁻¹a^q`; the length changes by
//! `1 + q + r + s − p`. Chaining such steps turns `⟨a | aᵖ⟩` into a
//! presentation of length `O(log p)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{is_coprime, rules, BoundEntry, BoundKind};
use crate::contfrac;
use crate::error::{Error, Result};
use crate::parse::MAX_EXPONENT;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStrategy {
    /// Halve at every step, stopping at 2 or 3.
    Base2,
    /// Divide by 3 at every step, stopping at 5 or below.
    Base3,
    /// Cheapest chain over all divisors `q ≤ 4·log₂p`, stopping early when
    /// that is cheaper.
    OptimalDp,
}

impl ChainStrategy {
    pub const ALL: [ChainStrategy; 3] = [ChainStrategy::Base2, ChainStrategy::Base3, ChainStrategy::OptimalDp];
}

impl fmt::Display for ChainStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainStrategy::Base2 => "base2",
            ChainStrategy::Base3 => "base3",
            ChainStrategy::OptimalDp => "dp",
        })
    }
}

impl FromStr for ChainStrategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "base2" => Ok(ChainStrategy::Base2),
            "base3" => Ok(ChainStrategy::Base3),
            "dp" | "optimal-dp" => Ok(ChainStrategy::OptimalDp),
            _ => Err(format!("unknown strategy `{s}` (expected base2, base3 or dp)")),
        }
    }
}

/// Applies one division step to the block of `power` letters starting at
/// `start` in relator `relator`, which must all be the same positive letter.
///
/// The new relator `b⁻¹a^q` is inserted immediately before the rewritten one,
/// so repeated division of a single relator lists the chain in order of
/// creation followed by the tail.
pub fn divide_relator(p: &Presentation, relator: usize, start: usize, power: usize, q: usize) -> Result<Presentation> {
    let mut out = p.clone();
    divide_in_place(&mut out, relator, start, power, q)?;
    Ok(out)
}

fn divide_in_place(p: &mut Presentation, relator: usize, start: usize, power: usize, q: usize) -> Result<usize> {
    if q < 2 {
        return Err(Error::Precondition(format!("divisor q must be >= 2, got {q}")));
    }
    let word = p.relators().get(relator).ok_or_else(|| Error::Precondition(format!("no relator {relator}")))?;
    let block =
        word.letters().get(start..start + power).filter(|b| !b.is_empty()).ok_or_else(|| {
            Error::Precondition(format!("block {start}..{} is outside relator {relator}", start + power))
        })?;
    let a = block[0];
    if a.is_inverse() || block.iter().any(|&l| l != a) {
        return Err(Error::Precondition("designated block is not a positive power of one generator".into()));
    }
    let (s, r) = (power / q, power % q);
    let b = p.add_fresh_generator();
    let letters = p.relators()[relator].letters();
    let mut rewritten: Vec<Letter> = letters[..start].to_vec();
    rewritten.extend(std::iter::repeat_n(Letter::pos(b), s));
    rewritten.extend(std::iter::repeat_n(a, r));
    rewritten.extend_from_slice(&letters[start + power..]);
    p.relators_mut()[relator] = Word::new(rewritten);

    let mut definition = Word::new(vec![Letter::neg(b)]);
    definition.extend(&Word::power(a.generator(), q as i64));
    p.insert_relator(relator, definition)?;
    Ok(relator + 1)
}

/// Replaces the block `a^power` at `start` of relator `relator` by the
/// division chain `plan`. Returns the new index of the rewritten relator.
fn apply_chain(p: &mut Presentation, mut relator: usize, start: usize, mut power: u64, plan: &[u64]) -> usize {
    for &q in plan {
        relator = divide_in_place(p, relator, start, power as usize, q as usize).expect("chain plans are valid");
        power /= q;
    }
    relator
}

/// `⌊4·log₂p⌋`, the largest divisor worth trying for `p`.
fn max_divisor(p: u64) -> u64 {
    if p < 2 {
        return 0;
    }
    if p < (1 << 32) {
        // largest q with 2^q ≤ p⁴
        let p4 = (p as u128).pow(4);
        127 - p4.leading_zeros() as u64
    } else {
        (4.0 * (p as f64).log2()).floor() as u64
    }
}

fn step_cost(p: u64, q: u64) -> u64 {
    q + 1 + p % q
}

/// Memoized optimal chain costs.
#[derive(Default)]
struct DpMemo {
    memo: HashMap<u64, (u64, Option<u64>)>,
}

impl DpMemo {
    /// Cost and first divisor of the cheapest chain (`None`: stop here).
    fn solve(&mut self, p: u64) -> (u64, Option<u64>) {
        if p < 4 {
            return (p, None);
        }
        if let Some(&hit) = self.memo.get(&p) {
            return hit;
        }
        let mut best = (p, None);
        for q in 2..=max_divisor(p) {
            let s = p / q;
            if s < 2 {
                break;
            }
            let cost = step_cost(p, q) + self.solve(s).0;
            if cost < best.0 {
                best = (cost, Some(q));
            }
        }
        self.memo.insert(p, best);
        best
    }
}

/// Divisors used by `strategy` on `aᵖ`, in order of application.
pub fn division_plan(p: u64, strategy: ChainStrategy) -> Vec<u64> {
    let mut plan = Vec::new();
    let mut cur = p;
    match strategy {
        ChainStrategy::Base2 => {
            while cur >= 4 {
                plan.push(2);
                cur /= 2;
            }
        }
        ChainStrategy::Base3 => {
            while cur >= 6 {
                plan.push(3);
                cur /= 3;
            }
        }
        ChainStrategy::OptimalDp => {
            let mut dp = DpMemo::default();
            while let (_, Some(q)) = dp.solve(cur) {
                plan.push(q);
                cur /= q;
            }
        }
    }
    plan
}

fn check_order(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::Precondition(format!("cyclic order must be >= 2, got {p}")));
    }
    Ok(())
}

/// `ℓ(p)`: length of the presentation of `ℤ/p` that `strategy` reaches from
/// `⟨a | aᵖ⟩`, computed from the recursion alone.
pub fn ell(p: u64, strategy: ChainStrategy) -> Result<u64> {
    check_order(p)?;
    Ok(match strategy {
        ChainStrategy::Base2 => ell_base2(p),
        ChainStrategy::Base3 => ell_base3(p),
        ChainStrategy::OptimalDp => DpMemo::default().solve(p).0,
    })
}

fn ell_base2(p: u64) -> u64 {
    match p {
        0..=3 => p,
        _ if p.is_multiple_of(2) => 3 + ell_base2(p / 2),
        _ => 4 + ell_base2((p - 1) / 2),
    }
}

fn ell_base3(p: u64) -> u64 {
    if p <= 5 {
        p
    } else {
        4 + p % 3 + ell_base3(p / 3)
    }
}

/// `ℓ(p)` for every `p ≤ max`, for sweeps. Index 0 and 1 hold 0 and 1.
pub fn ell_table(max: u64, strategy: ChainStrategy) -> Vec<u64> {
    let mut t: Vec<u64> = (0..=max).collect();
    for p in 4..=max {
        let pu = p as usize;
        t[pu] = match strategy {
            ChainStrategy::Base2 => step_cost(p, 2) + t[pu / 2],
            ChainStrategy::Base3 if p >= 6 => step_cost(p, 3) + t[pu / 3],
            ChainStrategy::Base3 => p,
            ChainStrategy::OptimalDp => {
                let mut best = p;
                for q in 2..=max_divisor(p) {
                    let s = p / q;
                    if s < 2 {
                        break;
                    }
                    best = best.min(step_cost(p, q) + t[s as usize]);
                }
                best
            }
        };
    }
    t
}

fn check_power(p: u64) -> Result<()> {
    if p > MAX_EXPONENT {
        return Err(Error::Precondition(format!("power {p} exceeds the supported maximum {MAX_EXPONENT}")));
    }
    Ok(())
}

/// A presentation of `ℤ/p` of length `ℓ(p)`; its first generator generates
/// the group and every other generator is a power of it.
pub fn cyclic_presentation(p: u64, strategy: ChainStrategy) -> Result<Presentation> {
    check_order(p)?;
    check_power(p)?;
    let mut pres = Presentation::with_default_names(1, vec![Word::power(0, p as i64)])?;
    apply_chain(&mut pres, 0, 0, p, &division_plan(p, strategy));
    Ok(pres)
}

/// `ℤ/p₁ ⊕ … ⊕ ℤ/p_k`: the cyclic chains side by side, then the commutators
/// of the root generators.
pub fn abelian_presentation(orders: &[u64], strategy: ChainStrategy) -> Result<Presentation> {
    if orders.is_empty() {
        return Err(Error::Precondition("need at least one cyclic factor".into()));
    }
    for &p in orders {
        check_order(p)?;
        check_power(p)?;
    }
    let k = orders.len();
    let mut pres = Presentation::with_default_names(k, Vec::new())?;
    for (i, &p) in orders.iter().enumerate() {
        let at = pres.relator_count();
        pres.push_relator(Word::power(i, p as i64))?;
        apply_chain(&mut pres, at, 0, p, &division_plan(p, strategy));
    }
    for i in 0..k {
        for j in i + 1..k {
            pres.push_relator(Word::commutator(i, j))?;
        }
    }
    Ok(pres)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MilnorFamily {
    Q,
    D,
    P24,
    P48,
    P120,
    #[serde(rename = "Pprime")]
    PPrime,
}

impl fmt::Display for MilnorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MilnorFamily::Q => "Q",
            MilnorFamily::D => "D",
            MilnorFamily::P24 => "P24",
            MilnorFamily::P48 => "P48",
            MilnorFamily::P120 => "P120",
            MilnorFamily::PPrime => "Pprime",
        })
    }
}

impl FromStr for MilnorFamily {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Q" => Ok(MilnorFamily::Q),
            "D" => Ok(MilnorFamily::D),
            "P24" => Ok(MilnorFamily::P24),
            "P48" => Ok(MilnorFamily::P48),
            "P120" => Ok(MilnorFamily::P120),
            "Pprime" | "P'" => Ok(MilnorFamily::PPrime),
            _ => Err(format!("unknown Milnor family `{s}`")),
        }
    }
}

/// A Milnor group times a cyclic group `ℤ/q` of coprime order (`q = 1` for
/// the bare group).
///
/// | family | group | parameters |
/// |---|---|---|
/// | `Q` | `Q_{4n}` | `n ≥ 2`, `q` odd, `gcd(n, q) = 1` |
/// | `D` | `D_{2ᵏn}` | `k ≥ 3`, `n ≥ 3` odd, `q` odd, `gcd(n, q) = 1` |
/// | `P24`, `P48` | binary polyhedral | `gcd(q, 6) = 1` |
/// | `P120` | binary icosahedral | `gcd(q, 30) = 1` |
/// | `Pprime` | `P'_{8·3ᵏ}` | `k ≥ 2`, `gcd(q, 6) = 1` |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MilnorSpec {
    pub family: MilnorFamily,
    pub n: u64,
    pub k: u32,
    pub q: u64,
}

impl MilnorSpec {
    pub fn q(n: u64, q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::Q, n, k: 0, q }
    }
    pub fn d(k: u32, n: u64, q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::D, n, k, q }
    }
    pub fn p24(q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::P24, n: 0, k: 0, q }
    }
    pub fn p48(q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::P48, n: 0, k: 0, q }
    }
    pub fn p120(q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::P120, n: 0, k: 0, q }
    }
    pub fn pprime(k: u32, q: u64) -> Self {
        MilnorSpec { family: MilnorFamily::PPrime, n: 0, k, q }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidMilnorSpec(format!("{}: {msg}", self.family)));
        if self.q == 0 {
            return fail("q must be >= 1".into());
        }
        match self.family {
            MilnorFamily::Q => {
                if self.n < 2 {
                    return fail(format!("n >= 2 required, got n = {}", self.n));
                }
                if self.q.is_multiple_of(2) {
                    return fail(format!("q must be odd, got q = {}", self.q));
                }
                if !is_coprime(self.n, self.q) {
                    return fail(format!("gcd(n, q) = 1 required, got n = {}, q = {}", self.n, self.q));
                }
            }
            MilnorFamily::D => {
                if self.k < 3 {
                    return fail(format!("k >= 3 required, got k = {}", self.k));
                }
                if self.n < 3 || self.n.is_multiple_of(2) {
                    return fail(format!("n must be odd and >= 3, got n = {}", self.n));
                }
                if self.q.is_multiple_of(2) {
                    return fail(format!("q must be odd, got q = {}", self.q));
                }
                if !is_coprime(self.n, self.q) {
                    return fail(format!("gcd(n, q) = 1 required, got n = {}, q = {}", self.n, self.q));
                }
            }
            MilnorFamily::P24 | MilnorFamily::P48 => {
                if !is_coprime(self.q, 6) {
                    return fail(format!("q must be coprime with 2 and 3, got q = {}", self.q));
                }
            }
            MilnorFamily::P120 => {
                if !is_coprime(self.q, 30) {
                    return fail(format!("q must be coprime with 2, 3 and 5, got q = {}", self.q));
                }
            }
            MilnorFamily::PPrime => {
                if self.k < 2 {
                    return fail(format!("k >= 2 required, got k = {}", self.k));
                }
                if !is_coprime(self.q, 6) {
                    return fail(format!("q must be coprime with 2 and 3, got q = {}", self.q));
                }
            }
        }
        if self.big_power().is_none_or(|p| p > MAX_EXPONENT) || self.q > MAX_EXPONENT || self.n > MAX_EXPONENT {
            return fail("parameters too large".into());
        }
        Ok(())
    }

    /// `2ᵏ` for D, `3ᵏ` for P′.
    fn big_power(&self) -> Option<u64> {
        match self.family {
            MilnorFamily::D => 2u64.checked_pow(self.k),
            MilnorFamily::PPrime => 3u64.checked_pow(self.k),
            _ => Some(1),
        }
    }

    /// Order of the group without the cyclic factor.
    pub fn base_order(&self) -> Option<u64> {
        match self.family {
            MilnorFamily::Q => self.n.checked_mul(4),
            MilnorFamily::D => self.big_power()?.checked_mul(self.n),
            MilnorFamily::P24 => Some(24),
            MilnorFamily::P48 => Some(48),
            MilnorFamily::P120 => Some(120),
            MilnorFamily::PPrime => self.big_power()?.checked_mul(8),
        }
    }

    /// `|G × ℤ/q|`; `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        self.base_order()?.checked_mul(self.q)
    }

    /// Order of the torsion of the Abelianization.
    pub fn abelian_torsion(&self) -> Option<u64> {
        let base = match self.family {
            MilnorFamily::Q => 4,
            MilnorFamily::D => self.big_power()?,
            MilnorFamily::P24 => 3,
            MilnorFamily::P48 => 2,
            MilnorFamily::P120 => 1,
            MilnorFamily::PPrime => self.big_power()?,
        };
        base.checked_mul(self.q)
    }

    /// Generator names and relators of the bare group, as listed, with the
    /// position of each power block the chains may shorten.
    fn standard(&self) -> (Vec<&'static str>, Vec<Word>, Vec<PowerBlock>) {
        let (x, y, z) = (0, 1, 2);
        let f = Word::from_factors;
        match self.family {
            MilnorFamily::Q => (
                vec!["x", "y"],
                vec![f(&[(x, -1), (y, 1), (x, 1), (y, 1)]), f(&[(x, -2), (y, self.n as i64)])],
                vec![PowerBlock { relator: 1, start: 2, power: self.n }],
            ),
            MilnorFamily::D => {
                let two_k = self.big_power().unwrap();
                (
                    vec!["x", "y"],
                    vec![f(&[(x, two_k as i64)]), f(&[(y, self.n as i64)]), f(&[(x, 1), (y, 1), (x, -1), (y, 1)])],
                    vec![
                        PowerBlock { relator: 0, start: 0, power: two_k },
                        PowerBlock { relator: 1, start: 0, power: self.n },
                    ],
                )
            }
            MilnorFamily::P24 | MilnorFamily::P48 | MilnorFamily::P120 => {
                let m = match self.family {
                    MilnorFamily::P24 => 3,
                    MilnorFamily::P48 => 4,
                    _ => 5,
                };
                (
                    vec!["x", "y"],
                    vec![f(&[(x, -1), (y, 1), (x, 1), (y, 1), (x, 1), (y, 1)]), f(&[(x, -2), (y, m)]), f(&[(x, 4)])],
                    vec![],
                )
            }
            MilnorFamily::PPrime => {
                let three_k = self.big_power().unwrap();
                (
                    vec!["x", "y", "z"],
                    vec![
                        f(&[(x, -1), (y, 1), (x, 1), (y, 1)]),
                        f(&[(x, -2), (y, 2)]),
                        f(&[(z, 1), (x, 1), (z, -1), (y, -1)]),
                        f(&[(z, 1), (y, 1), (z, -1), (y, -1), (x, -1)]),
                        f(&[(z, three_k as i64)]),
                    ],
                    vec![PowerBlock { relator: 4, start: 0, power: three_k }],
                )
            }
        }
    }
}

impl fmt::Display for MilnorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            MilnorFamily::Q => write!(f, "Q(n={}) x Z/{}", self.n, self.q),
            MilnorFamily::D => write!(f, "D(k={}, n={}) x Z/{}", self.k, self.n, self.q),
            MilnorFamily::PPrime => write!(f, "Pprime(k={}) x Z/{}", self.k, self.q),
            fam => write!(f, "{fam} x Z/{}", self.q),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct PowerBlock {
    relator: usize,
    start: usize,
    power: u64,
}

/// The listed presentation of the Milnor group, extended by `a` with `a^q`
/// and commutators with every other generator (omitted when `q = 1`), with
/// every power block replaced by its division chain.
pub fn milnor_presentation(spec: &MilnorSpec, strategy: ChainStrategy) -> Result<Presentation> {
    spec.validate()?;
    let (names, relators, mut blocks) = spec.standard();
    let base_gens = names.len();
    let mut names: Vec<String> = names.into_iter().map(String::from).collect();
    let mut relators = relators;
    if spec.q > 1 {
        let a = names.len();
        names.push("a".into());
        blocks.push(PowerBlock { relator: relators.len(), start: 0, power: spec.q });
        relators.push(Word::power(a, spec.q as i64));
        for g in 0..base_gens {
            relators.push(Word::commutator(g, a));
        }
    }
    let mut pres = Presentation::new(names, relators)?;
    // Chains insert relators; process blocks from the last relator backwards
    // so earlier indices stay valid.
    blocks.sort_by_key(|b| std::cmp::Reverse(b.relator));
    for b in blocks {
        apply_chain(&mut pres, b.relator, b.start, b.power, &division_plan(b.power, strategy));
    }
    Ok(pres)
}

/// Length that [`milnor_presentation`] must produce:
/// `Q: ℓ(n)+ℓ(q)+14`, `D: ℓ(2ᵏ)+ℓ(n)+ℓ(q)+12`, `P24/P48/P120: ℓ(q)+23/24/25`,
/// `P′: ℓ(3ᵏ)+ℓ(q)+29`; with `q = 1` the `ℓ(q)` term and the commutators go.
pub fn milnor_closed_form(spec: &MilnorSpec, strategy: ChainStrategy) -> Result<u64> {
    spec.validate()?;
    let l = |p: u64| ell(p, strategy);
    let base_gens = if spec.family == MilnorFamily::PPrime { 3 } else { 2 };
    let cyclic_part = if spec.q > 1 { l(spec.q)? + 4 * base_gens } else { 0 };
    let base = match spec.family {
        MilnorFamily::Q => l(spec.n)? + 6,
        MilnorFamily::D => l(spec.big_power().unwrap())? + l(spec.n)? + 4,
        MilnorFamily::P24 => 15,
        MilnorFamily::P48 => 16,
        MilnorFamily::P120 => 17,
        MilnorFamily::PPrime => l(spec.big_power().unwrap())? + 17,
    };
    Ok(base + cyclic_part)
}

/// Closed-form two-sided complexity estimates for a Milnor group. The lower
/// bound is `log₂` of the Abelianization torsion and is strict.
pub fn milnor_bounds(spec: &MilnorSpec) -> Result<Vec<BoundEntry>> {
    spec.validate()?;
    let lq = (spec.q as f64).log2();
    let l3 = 3f64.log2();
    let (lower, upper) = match spec.family {
        MilnorFamily::Q => (lq + 2.0, 4.0 * (lq + 2.0) + 4.0 * (spec.n as f64).log2() + 6.0),
        MilnorFamily::D => {
            let k = spec.k as f64;
            (lq + k, 4.0 * (lq + k) + 4.0 * (spec.n as f64).log2() + 12.0)
        }
        MilnorFamily::P24 => (lq + l3, 4.0 * (lq + l3) + 17.0),
        MilnorFamily::P48 => (lq + 1.0, 4.0 * (lq + 1.0) + 20.0),
        MilnorFamily::P120 => (lq, 4.0 * lq + 25.0),
        MilnorFamily::PPrime => {
            let e = lq + l3 * spec.k as f64;
            (e, 4.0 * e + 29.0)
        }
    };
    let inputs = spec.to_string();
    Ok(vec![
        BoundEntry::new(BoundKind::LowerC, lower, true, rules::TORSION_LOG2, inputs.clone()),
        BoundEntry::new(BoundKind::UpperC, upper, true, "milnor-division-chains", inputs),
    ])
}

/// Groups `Q_{4n} × ℤ/q` and `D_{2ʰn} × ℤ/s` arising as fundamental groups
/// of the Seifert manifolds `(S²; (2,1), (2,1), (n,q), −1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeifertGroup {
    /// `(n, q)` a Zaremba pair with `q` odd.
    Q { n: u64, q: u64 },
    /// `(n, 2^{h−2}s)` a Zaremba pair, `h, n ≥ 3`, `s` odd, `gcd(n, s) = 1`.
    D { n: u64, h: u32, s: u64 },
}

/// Complexity and T-invariant estimates for [`SeifertGroup`]s. Pairs with
/// `q = 1` are rejected.
pub fn seifert_group_bounds(group: SeifertGroup) -> Result<Vec<BoundEntry>> {
    let l3 = 3f64.log2();
    let (n, q, inputs) = match group {
        SeifertGroup::Q { n, q } => {
            if q % 2 == 0 {
                return Err(Error::Precondition(format!("q must be odd, got {q}")));
            }
            (n, q, format!("Q n={n} q={q}"))
        }
        SeifertGroup::D { n, h, s } => {
            if h < 3 || n < 3 {
                return Err(Error::Precondition(format!("h, n >= 3 required, got h = {h}, n = {n}")));
            }
            if s % 2 == 0 || !is_coprime(n, s) {
                return Err(Error::Precondition(format!("s must be odd and coprime with n, got s = {s}")));
            }
            let q = 2u64
                .checked_pow(h - 2)
                .and_then(|t| t.checked_mul(s))
                .ok_or_else(|| Error::Precondition("2^(h-2)·s overflows".into()))?;
            (n, q, format!("D n={n} h={h} s={s}"))
        }
    };
    if q <= 1 {
        return Err(Error::NotZaremba { p: n, q, predicate: "Zaremba (q = 1 excluded)" });
    }
    if n <= q || !is_coprime(n, q) || !contfrac::is_zaremba(n, q)? {
        return Err(Error::NotZaremba { p: n, q, predicate: "Zaremba" });
    }
    let (lower_c, upper_c, lower_t, upper_t) = match group {
        SeifertGroup::Q { q, .. } => {
            let lq = (q as f64).log2();
            (lq + 2.0, 8.0 * (lq + 2.0) + 9.0, lq / l3, 6.0 * lq + 18.0)
        }
        SeifertGroup::D { h, s, .. } => {
            let e = (s as f64).log2() + h as f64;
            (e, 8.0 * e + 15.0, (s as f64).log2() / l3, 6.0 * e + 6.0)
        }
    };
    Ok(vec![
        BoundEntry::new(BoundKind::LowerC, lower_c, true, rules::TORSION_LOG2, inputs.clone()),
        BoundEntry::new(BoundKind::UpperC, upper_c, true, "seifert-zaremba", inputs.clone()),
        BoundEntry::new(BoundKind::LowerT, lower_t, false, rules::ODD_TORSION_LOG3, inputs.clone()),
        BoundEntry::new(BoundKind::UpperT, upper_t, true, "seifert-zaremba", inputs),
    ])
}
