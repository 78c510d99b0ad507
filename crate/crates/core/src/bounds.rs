//! Lower and upper estimates on the complexity `c(G)` and the T-invariant
//! `T(G)`, derived from a presentation and from its Abelianization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianInvariants, RelationMatrix};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    LowerC,
    UpperC,
    LowerT,
    UpperT,
}

impl BoundKind {
    pub fn is_lower(self) -> bool {
        matches!(self, BoundKind::LowerC | BoundKind::LowerT)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::LowerC => "lower-c",
            BoundKind::UpperC => "upper-c",
            BoundKind::LowerT => "lower-T",
            BoundKind::UpperT => "upper-T",
        })
    }
}

/// One estimate: `value` bounds the unknown from the side given by `kind`.
/// A strict bound excludes equality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub value: f64,
    pub strict: bool,
    pub rule: String,
    pub inputs: String,
}

impl BoundEntry {
    pub fn new(kind: BoundKind, value: f64, strict: bool, rule: &str, inputs: impl Into<String>) -> Self {
        BoundEntry { kind, value, strict, rule: rule.to_string(), inputs: inputs.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn push(&mut self, entry: BoundEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = BoundEntry>) {
        self.entries.extend(entries);
    }

    pub fn of_kind(&self, kind: BoundKind) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    pub fn get(&self, rule: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.rule == rule)
    }

    /// Largest lower bound of the given kind (0 when there is none).
    pub fn best_lower(&self, kind: BoundKind) -> f64 {
        self.of_kind(kind).map(|e| e.value).fold(0.0, f64::max)
    }

    pub fn best_upper(&self, kind: BoundKind) -> Option<f64> {
        self.of_kind(kind).map(|e| e.value).reduce(f64::min)
    }

    /// Every lower bound lies below every upper bound, for `c` and for `T`.
    /// When both sides of a pair are non-strict they may coincide.
    pub fn is_consistent(&self) -> bool {
        [(BoundKind::LowerC, BoundKind::UpperC), (BoundKind::LowerT, BoundKind::UpperT)].iter().all(|&(lo, hi)| {
            self.of_kind(lo).all(|l| {
                self.of_kind(hi).all(|u| if l.strict || u.strict { l.value < u.value } else { l.value <= u.value })
            })
        })
    }
}

pub mod rules {
    pub const TORSION_LOG2: &str = "torsion-log2";
    pub const TORSION_LOG_CUBEROOT3: &str = "torsion-log-cuberoot3";
    pub const ODD_TORSION_LOG3: &str = "odd-torsion-log3";
    pub const PRESENTATION_LENGTH: &str = "presentation-length";
    pub const PRESENTATION_T_COST: &str = "presentation-t-cost";
    pub const SPINE_VERTICES: &str = "spine-vertices";
    pub const TRIANGULATION_FACES: &str = "triangulation-faces";
}

/// `log₂` of a positive big integer, accurate to double precision.
pub fn log2_big(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "log2 of a non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// The two torsion lower bounds on `c(G)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexityLowerBound {
    /// `log₂ t`; strict for `t ≥ 2`.
    pub log2: f64,
    /// `log_{∛3} t = 3·log₃ t`; never strict, since `3·log₃ 3 = 3 = c(ℤ/3)`.
    pub cuberoot3: f64,
    pub strict: bool,
}

pub fn complexity_lower_bound(torsion: &BigInt) -> Result<ComplexityLowerBound> {
    if !torsion.is_positive() {
        return Err(Error::Precondition(format!("torsion order must be >= 1, got {torsion}")));
    }
    let l2 = log2_big(torsion);
    Ok(ComplexityLowerBound { log2: l2, cuberoot3: 3.0 * l2 / 3f64.log2(), strict: !torsion.is_one() })
}

/// `log₃(2m+1)` where `t = 2ˡ(2m+1)`.
pub fn t_lower_bound(torsion: &BigInt) -> Result<f64> {
    if !torsion.is_positive() {
        return Err(Error::Precondition(format!("torsion order must be >= 1, got {torsion}")));
    }
    let twos = torsion.trailing_zeros().unwrap_or(0);
    let odd: BigInt = torsion >> twos;
    Ok(log2_big(&odd) / 3f64.log2())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerRelatorCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `log₂|Tor| ≤ Σ log₂|rᵢ|`. A failure means a bug somewhere, since the
/// inequality holds for every presentation.
pub fn per_relator_bound_check(p: &Presentation) -> Result<PerRelatorCheck> {
    if let Some(i) = p.relators().iter().position(|r| r.is_empty()) {
        return Err(Error::Precondition(format!("relator {i} is empty; simplify first")));
    }
    let torsion = RelationMatrix::from_presentation(p).smith_normal_form().torsion_order;
    Ok(per_relator_check_with(&torsion, &p.relator_lengths()))
}

pub(crate) fn per_relator_check_with(torsion: &BigInt, lengths: &[usize]) -> PerRelatorCheck {
    let lhs = log2_big(torsion);
    let rhs: f64 = lengths.iter().map(|&l| (l as f64).log2()).sum();
    // Exact form of the comparison: t ≤ Π|rᵢ|.
    let product = lengths.iter().fold(BigInt::one(), |acc, &l| acc * l);
    PerRelatorCheck { lhs, rhs, holds: torsion <= &product }
}

/// Absolute tolerance of [`largest_root`] and [`smallest_root`].
pub const ROOT_TOLERANCE: f64 = 1e-9;

fn root_function(a: f64, c: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| a * x.log2() + c - x
}

fn check_root_inputs(a: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite() && c.is_finite()) {
        return Err(Error::Precondition(format!("need a > 0 and finite c, got a = {a}, c = {c}")));
    }
    // f is concave with its maximum at a / ln 2.
    let peak = a / std::f64::consts::LN_2;
    if root_function(a, c)(peak) < 0.0 {
        return Err(Error::NoRoot { a, c });
    }
    Ok(peak)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let positive_at_lo = f(lo) >= 0.0;
    while hi - lo > ROOT_TOLERANCE / 4.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) >= 0.0) == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest solution of `x = a·log₂x + c`, by bisection between the maximum
/// of `a·log₂x + c − x` and a doubling upper bracket.
pub fn largest_root(a: f64, c: f64) -> Result<f64> {
    let peak = check_root_inputs(a, c)?;
    let f = root_function(a, c);
    let mut hi = (2.0 * peak).max(c.abs() + 2.0);
    while f(hi) >= 0.0 {
        hi *= 2.0;
    }
    Ok(bisect(f, peak, hi))
}

/// Smallest positive solution of `x = a·log₂x + c`.
pub fn smallest_root(a: f64, c: f64) -> Result<f64> {
    let peak = check_root_inputs(a, c)?;
    let f = root_function(a, c);
    let mut lo = peak.min(1.0) / 2.0;
    while f(lo) >= 0.0 {
        lo /= 2.0;
    }
    Ok(bisect(f, lo, peak))
}

/// Everything a single presentation says about its group.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationBounds {
    pub length: usize,
    pub t_cost: usize,
    pub invariants: AbelianInvariants,
    pub report: BoundsReport,
}

impl PresentationBounds {
    pub fn torsion(&self) -> &BigInt {
        &self.invariants.torsion_order
    }
}

pub fn bounds_report(p: &Presentation) -> PresentationBounds {
    let invariants = RelationMatrix::from_presentation(p).smith_normal_form();
    let torsion = &invariants.torsion_order;
    let lower = complexity_lower_bound(torsion).expect("torsion order is positive");
    let lower_t = t_lower_bound(torsion).expect("torsion order is positive");
    let t_in = format!("torsion={torsion}");

    let mut report = BoundsReport::default();
    report.push(BoundEntry::new(BoundKind::LowerC, lower.log2, lower.strict, rules::TORSION_LOG2, t_in.clone()));
    report.push(BoundEntry::new(BoundKind::LowerC, lower.cuberoot3, false, rules::TORSION_LOG_CUBEROOT3, t_in.clone()));
    report.push(BoundEntry::new(BoundKind::LowerT, lower_t, false, rules::ODD_TORSION_LOG3, t_in));
    report.push(BoundEntry::new(
        BoundKind::UpperC,
        p.length() as f64,
        false,
        rules::PRESENTATION_LENGTH,
        format!("length={}", p.length()),
    ));
    report.push(BoundEntry::new(
        BoundKind::UpperT,
        p.t_cost() as f64,
        false,
        rules::PRESENTATION_T_COST,
        format!("t_cost={}", p.t_cost()),
    ));
    debug_assert!(report.is_consistent());
    PresentationBounds { length: p.length(), t_cost: p.t_cost(), invariants, report }
}

/// Bounds on `π₁(M)` from a special spine with `n_vertices` vertices
/// (`c(π₁) ≤ 3n + 3`) and, for irreducible `M` with `c(M) > 0`, from
/// `T(π₁(M)) ≤ 2c(M)`.
pub fn manifold_group_bounds(n_vertices: u64, c_manifold: u64) -> Vec<BoundEntry> {
    vec![
        BoundEntry::new(
            BoundKind::UpperC,
            (3 * n_vertices + 3) as f64,
            false,
            rules::SPINE_VERTICES,
            format!("n_vertices={n_vertices}"),
        ),
        BoundEntry::new(
            BoundKind::UpperT,
            (2 * c_manifold) as f64,
            false,
            rules::TRIANGULATION_FACES,
            format!("c_manifold={c_manifold}"),
        ),
    ]
}

/// Odd part of a positive integer.
pub fn odd_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return n.clone();
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    n >> twos
}

pub(crate) fn is_coprime(a: u64, b: u64) -> bool {
    a.gcd(&b) == 1
}
