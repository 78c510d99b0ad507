//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use grpcomplex::bounds::{largest_root, log2_big, smallest_root};
use grpcomplex::contfrac::{cf_expand, fibonacci_pair, sweep_pairs, zaremba_partner_scan};
use grpcomplex::coset::enumerate_cosets;
use grpcomplex::families::{
    abelian_presentation, cyclic_presentation, ell, ell_table, milnor_closed_form, milnor_presentation, ChainStrategy,
    MilnorFamily, MilnorSpec,
};
use grpcomplex::search::{canonical_form, enumerate_presentations};
use grpcomplex::{parse_presentation, Presentation, RelationMatrix, Word};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn FnOnce(&mut Audit) -> Outcome>);

fn cli(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grpcomplex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut args = args.to_vec();
    args.push("--json");
    let (code, text) = cli(&args, None);
    let v = serde_json::from_str(&text).map_err(|e| format!("{args:?}: bad JSON: {e}"))?;
    Ok((code, v))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Presentations generated along the way, checked against the torsion
/// lower bounds in criterion 7.
#[derive(Default)]
struct Audit {
    checked: u64,
    violations: Vec<String>,
}

impl Audit {
    fn check(&mut self, p: &Presentation) {
        self.checked += 1;
        let t = RelationMatrix::from_presentation(p).smith_normal_form().torsion_order;
        let one = BigInt::from(1);
        // length > log₂t  ⇔  2^length > t
        if t >= BigInt::from(2) && (one.clone() << p.length()) <= t {
            self.violations.push(format!("length {} <= log2 {t}: {p}", p.length()));
        }
        // Σ log₂|rᵢ| ≥ log₂t  ⇔  Π|rᵢ| ≥ t
        let product = p.relators().iter().fold(one, |acc, r| acc * r.len());
        if p.relators().iter().all(|r| !r.is_empty()) && product < t {
            self.violations.push(format!("relator product {product} < {t}: {p}"));
        }
    }
}

fn criterion_1() -> Outcome {
    for (name, length, torsion) in [("z147.pres", 23, "147"), ("z357.pres", 27, "357")] {
        let path = common::fixture_path(name);
        let path = path.to_str().unwrap();
        let (code, r) = cli_json(&["bounds", path])?;
        let o = &r["outputs"];
        ensure(code == 0 && o["length"] == length && o["torsion"] == torsion, || {
            format!("{name}: exit {code}, length {}, torsion {}", o["length"], o["torsion"])
        })?;
        let (code, _) = cli(&["verify", path, "--order", torsion, "--cyclic"], None);
        ensure(code == 0, || format!("verify {name} exited {code}"))?;
    }
    Ok("lengths 23 and 27, torsion 147 and 357, both verified cyclic".into())
}

/// Relators as letter vectors under a generator renaming, sorted.
fn renamed(p: &Presentation, perm: &[usize]) -> Vec<Vec<usize>> {
    let mut rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| 2 * perm[l.generator()] + l.is_inverse() as usize).collect())
        .collect();
    rels.sort();
    rels
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let expected = parse_presentation(
        "gens a b c d e f g h\n\
         rel b^-1 a^2\nrel c^-1 b^2\nrel d^-1 c^2\nrel e^-1 d^2\n\
         rel f^-1 e^2\nrel g^-1 f^2\nrel h^-1 g^2\nrel h^2 g f c a\n",
    )
    .unwrap();
    let (code, text) = cli(&["present", "cyclic", "357", "--strategy", "base2"], None);
    ensure(code == 0, || format!("present exited {code}"))?;
    let got = parse_presentation(&text).map_err(|e| e.to_string())?;
    ensure(got.generator_count() == 8, || format!("{} generators", got.generator_count()))?;
    let target = renamed(&expected, &(0..8).collect::<Vec<_>>());
    let perm = permutations(8).into_iter().find(|perm| renamed(&got, perm) == target);
    let perm = perm.ok_or_else(|| format!("no renaming matches:\n{got}"))?;
    let names: Vec<String> = (0..8).map(|g| format!("{}->{}", got.names()[g], expected.names()[perm[g]])).collect();
    Ok(format!("relator multisets equal under {}", names.join(" ")))
}

fn criterion_3(audit: &mut Audit) -> Outcome {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8).to_string();
    let mut found = Vec::new();
    for (n, c) in [(2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 7), (9, 7), (10, 8)] {
        let n_s = n.to_string();
        let (code, r) = cli_json(&["search", "cyclic", &n_s, "--max-length", "8", "--jobs", &jobs])?;
        let o = &r["outputs"];
        ensure(code == 0 && o["kind"] == "exact" && o["complexity"] == c, || {
            format!("n = {n}: exit {code}, {} {}", o["kind"], o["complexity"])
        })?;
        ensure(o["stats"]["inconclusive"] == 0 && o["inconclusive"].as_array().is_some_and(Vec::is_empty), || {
            format!("n = {n}: inconclusive candidates {}", o["inconclusive"])
        })?;
        let witness = o["witness"].as_str().unwrap_or_default();
        let (code, _) = cli(&["verify", "-", "--order", &n_s, "--cyclic"], Some(witness));
        ensure(code == 0, || format!("n = {n}: witness does not verify:\n{witness}"))?;
        audit.check(&parse_presentation(witness).unwrap());
        found.push(format!("{n}:{c}"));
    }
    // every class the searches walked through
    for class in enumerate_presentations(8, 8) {
        audit.check(class.presentation());
    }
    Ok(format!("c(Z/n) = {} with zero inconclusive, {jobs} worker(s)", found.join(" ")))
}

fn criterion_4(audit: &mut Audit) -> Outcome {
    const MAX: u64 = 1_000_000;
    let base2 = ell_table(MAX, ChainStrategy::Base2);
    let base3 = ell_table(MAX, ChainStrategy::Base3);
    let dp = ell_table(MAX, ChainStrategy::OptimalDp);
    for p in 2..=MAX {
        let (l2, l3, ld) = (base2[p as usize], base3[p as usize], dp[p as usize]);
        let p4 = (p as u128).pow(4);
        // ℓ < 4·log₂p  ⇔  2^ℓ < p⁴
        ensure(l2 < 128 && (1u128 << l2) < p4, || format!("ell({p}, base2) = {l2}"))?;
        // ℓ < 6·log₃p  ⇔  3^ℓ < p⁶
        ensure(3u128.checked_pow(l3 as u32).is_some_and(|t| t < p4 * (p as u128).pow(2)), || {
            format!("ell({p}, base3) = {l3}")
        })?;
        ensure(ld <= l2, || format!("ell({p}, dp) = {ld} > ell({p}, base2) = {l2}"))?;
    }
    for strategy in ChainStrategy::ALL {
        for p in 2..=10_000 {
            audit.check(&cyclic_presentation(p, strategy).unwrap());
        }
    }
    Ok(format!("2 <= p <= {MAX}; ell(357) = {} / {} / {} (base2 / base3 / dp)", base2[357], base3[357], dp[357]))
}

fn criterion_5(audit: &mut Audit) -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let k = rng.gen_range(1..=4usize);
        let orders: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=10_000)).collect();
        let order: BigInt = orders.iter().map(|&p| BigInt::from(p)).product();
        for strategy in [ChainStrategy::Base2, ChainStrategy::OptimalDp] {
            let p = abelian_presentation(&orders, strategy).map_err(|e| e.to_string())?;
            // length − 2k(k−1) < 4·log₂|G|  ⇔  2^(length − 2k(k−1)) < |G|⁴
            let excess = p.length() as i64 - 2 * (k * (k - 1)) as i64;
            ensure(excess < 0 || (BigInt::from(1) << excess as usize) < order.pow(4), || {
                format!("{orders:?} ({strategy}): length {}", p.length())
            })?;
            worst = worst.min(4.0 * log2_big(&order) + (2 * k * (k - 1)) as f64 - p.length() as f64);
            let inv = RelationMatrix::from_presentation(&p).smith_normal_form();
            ensure(inv.free_rank == 0 && inv.torsion_order == order, || format!("{orders:?}: Abelianization {inv}"))?;
            audit.check(&p);
        }
    }
    Ok(format!("500 groups, two strategies; smallest slack {worst:.3}"))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The legality conditions, order and Abelianized torsion of each family,
/// from the standard descriptions of these groups.
fn milnor_oracle(spec: &MilnorSpec) -> Option<(u64, u64)> {
    let MilnorSpec { family, n, k, q } = *spec;
    let q_ok = |m: u64| q >= 1 && gcd(q, m) == 1;
    match family {
        MilnorFamily::Q if n >= 2 && q_ok(2 * n) => Some((4 * n * q, 4 * q)),
        MilnorFamily::D if k >= 3 && n >= 3 && n % 2 == 1 && q_ok(2 * n) => {
            Some((2u64.pow(k) * n * q, 2u64.pow(k) * q))
        }
        MilnorFamily::P24 if q_ok(6) => Some((24 * q, 3 * q)),
        MilnorFamily::P48 if q_ok(6) => Some((48 * q, 2 * q)),
        MilnorFamily::P120 if q_ok(30) => Some((120 * q, q)),
        MilnorFamily::PPrime if k >= 2 && q_ok(6) => Some((8 * 3u64.pow(k) * q, 3u64.pow(k) * q)),
        _ => None,
    }
}

fn expected_length(spec: &MilnorSpec, strategy: ChainStrategy) -> u64 {
    let l = |p: u64| ell(p, strategy).unwrap();
    let with_q = |gens: u64| if spec.q > 1 { l(spec.q) + 4 * gens } else { 0 };
    match spec.family {
        MilnorFamily::Q => l(spec.n) + 6 + with_q(2),
        MilnorFamily::D => l(2u64.pow(spec.k)) + l(spec.n) + 4 + with_q(2),
        MilnorFamily::P24 => 15 + with_q(2),
        MilnorFamily::P48 => 16 + with_q(2),
        MilnorFamily::P120 => 17 + with_q(2),
        MilnorFamily::PPrime => l(3u64.pow(spec.k)) + 17 + with_q(3),
    }
}

fn criterion_6(audit: &mut Audit) -> Outcome {
    const MAX_ORDER: u64 = 2000;
    // a box around the legal specs, illegal ones included
    let mut candidates = Vec::new();
    let up_to = |base: u64| 1..=MAX_ORDER / base.max(1) + 1;
    for n in 0..=MAX_ORDER / 4 {
        candidates.extend(up_to(4 * n).map(|q| MilnorSpec::q(n, q)));
        for k in 0..=11 {
            candidates.extend(up_to(2u64.pow(k) * n).map(|q| MilnorSpec::d(k, n, q)));
        }
    }
    candidates.extend(up_to(24).flat_map(|q| [MilnorSpec::p24(q), MilnorSpec::p48(q), MilnorSpec::p120(q)]));
    for k in 0..=7 {
        candidates.extend(up_to(8 * 3u64.pow(k)).map(|q| MilnorSpec::pprime(k, q)));
    }
    let mut legal = 0;
    let mut per_family = std::collections::BTreeMap::new();
    for spec in candidates {
        let oracle = milnor_oracle(&spec);
        ensure(oracle.is_some() == spec.validate().is_ok(), || format!("{spec:?}: legality disagrees"))?;
        let Some((order, torsion)) = oracle else { continue };
        if order > MAX_ORDER {
            continue;
        }
        legal += 1;
        *per_family.entry(spec.family.to_string()).or_insert(0) += 1;
        for strategy in ChainStrategy::ALL {
            let p = milnor_presentation(&spec, strategy).map_err(|e| e.to_string())?;
            let closed = expected_length(&spec, strategy);
            ensure(p.length() as u64 == closed && milnor_closed_form(&spec, strategy) == Ok(closed), || {
                format!("{spec} ({strategy}): length {} but closed form {closed}", p.length())
            })?;
            let inv = RelationMatrix::from_presentation(&p).smith_normal_form();
            ensure(inv.free_rank == 0 && inv.torsion_order == BigInt::from(torsion), || {
                format!("{spec} ({strategy}): Abelianization {inv}, expected torsion {torsion}")
            })?;
            audit.check(&p);
            if strategy == ChainStrategy::OptimalDp {
                let found = enumerate_cosets(&p, 100_000).order();
                ensure(found == Some(order), || {
                    format!("{spec}: coset enumeration gives {found:?}, expected {order}")
                })?;
            }
        }
    }
    let counts: Vec<String> = per_family.iter().map(|(f, c)| format!("{f} {c}")).collect();
    Ok(format!("{legal} legal specs with order <= {MAX_ORDER} ({})", counts.join(", ")))
}

fn criterion_7(audit: &Audit) -> Outcome {
    ensure(audit.violations.is_empty(), || {
        format!("{} violations, first: {}", audit.violations.len(), audit.violations[0])
    })?;
    ensure(audit.checked > 0, || "nothing audited".into())?;
    Ok(format!("{} presentations, zero violations", audit.checked))
}

fn criterion_8() -> Outcome {
    let r = largest_root(4.0, 0.0).map_err(|e| e.to_string())?;
    ensure((r - 16.0).abs() <= 1e-9, || format!("largest_root(4, 0) = {r}"))?;
    let r29 = largest_root(4.0, 29.0).map_err(|e| e.to_string())?;
    ensure(r29 > 51.0 && r29 < 52.0, || format!("largest_root(4, 29) = {r29}"))?;
    let small = smallest_root(4.0, 0.0).map_err(|e| e.to_string())?;
    ensure(small > 1.0 && small < 2.0, || format!("smallest_root(4, 0) = {small}"))?;
    for x in [r, r29] {
        let c = if x > 20.0 { 29.0 } else { 0.0 };
        ensure((4.0 * x.log2() + c - x).abs() < 1e-7, || format!("{x} is not a root"))?;
    }
    Ok(format!("roots 16 ± {:.1e}, {r29:.6}, {small:.6}", (r - 16.0).abs()))
}

fn quotients(mut a: u64, mut b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while b != 0 {
        out.push(a / b);
        (a, b) = (b, a % b);
    }
    out
}

fn criterion_9() -> Outcome {
    const MAX_P: u64 = 100_000;
    let s = sweep_pairs(MAX_P);
    ensure(s.is_clean(), || format!("{s:?}"))?;
    // an independent recount on a prefix, straight from Euclid
    let prefix = sweep_pairs(3000);
    let (mut pairs, mut zaremba, mut weak) = (0, 0, 0);
    for p in 3..=3000u64 {
        for q in 2..p {
            if gcd(p, q) != 1 {
                continue;
            }
            pairs += 1;
            let a = quotients(p, q);
            let sum: u64 = a.iter().sum();
            let n = a.len() as u64;
            let is_z = a.iter().all(|&x| x <= 5);
            let is_w = sum <= 5 * n;
            zaremba += is_z as u64;
            weak += is_w as u64;
            let l = (p as f64).log2();
            ensure(!is_z || (sum as f64 <= 3.0 * l + 1e-12 && p < 6 * q), || format!("({p}, {q})"))?;
            ensure(!is_w || sum as f64 <= 10.0 * l + 1e-12, || format!("({p}, {q})"))?;
            ensure(!is_z || is_w, || format!("({p}, {q}) Zaremba but not weak"))?;
        }
    }
    ensure((prefix.pairs, prefix.zaremba, prefix.weak) == (pairs, zaremba, weak), || {
        format!("p <= 3000: sweep {prefix:?}, direct ({pairs}, {zaremba}, {weak})")
    })?;
    Ok(format!("{} pairs ({} Zaremba, {} weak), zero violations", s.pairs, s.zaremba, s.weak))
}

fn criterion_10() -> Outcome {
    let mut ps: Vec<u64> = (2..=20).map(|k| 2u64.pow(k)).collect();
    ps.extend((1..=12).map(|k| 3u64.pow(k)));
    ps.extend((1..=7).map(|k| 6u64.pow(k)));
    for &p in &ps {
        let scan = zaremba_partner_scan(p).map_err(|e| e.to_string())?;
        let a = quotients(p, scan.q);
        ensure(scan.is_cusick && gcd(p, scan.q) == 1 && a.iter().max() == Some(&scan.max_quotient), || {
            format!("p = {p}: {scan:?}")
        })?;
        ensure(scan.max_quotient <= 5, || format!("p = {p}: {scan:?}"))?;
    }
    for k in 2..=30 {
        let (p, q) = fibonacci_pair(k).map_err(|e| e.to_string())?;
        ensure(gcd(p, q) == 1 && quotients(p, q).iter().all(|&x| x <= 5), || format!("F: ({p}, {q})"))?;
        ensure(cf_expand(p, q).is_ok_and(|c| c.is_zaremba()), || format!("({p}, {q}) not reported Zaremba"))?;
    }
    Ok(format!("{} prime powers Cusick, Fibonacci pairs k = 2..=30 Zaremba", ps.len()))
}

fn criterion_11() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        common::check_snf_against_minors(&mut rng)?;
    }
    for _ in 0..100 {
        let p = common::random_presentation(&mut rng);
        let key = canonical_form(&p).key().to_string();
        for _ in 0..10 {
            let q = common::transform(&p, &mut rng);
            ensure(canonical_form(&q).key() == key, || format!("orbit of {p} splits at {q}"))?;
        }
    }
    let naive = common::naive_classes(5, 3);
    let (count, found) = common::enumerated_classes(5, 3);
    ensure(count == naive.len() && found == naive, || format!("(5, 3): enumerated {count}, naive {}", naive.len()))?;
    for (name, order) in common::FIXTURES {
        let p = common::fixture(name);
        let variants: Vec<Presentation> = (0..5).map(|_| common::transform(&p, &mut rng)).collect();
        let inverted = p.map_relators(Word::inverse);
        for q in variants.iter().chain([&p, &inverted]) {
            let found = enumerate_cosets(q, 100_000).order();
            ensure(found == Some(order), || format!("{name}: {found:?} for\n{q}"))?;
        }
    }
    Ok(format!("1000 SNF, 100 orbits, {count} classes at (5, 3), {} fixtures", common::FIXTURES.len()))
}

fn main() {
    let mut audit = Audit::default();
    let criteria: Vec<Criterion> = vec![
        ("worked examples", Duration::from_secs(1), Box::new(|_| criterion_1())),
        ("generator fidelity", Duration::from_secs(1), Box::new(|_| criterion_2())),
        ("small exact complexities", Duration::from_secs(600), Box::new(criterion_3)),
        ("division chain sweep", Duration::from_secs(60), Box::new(criterion_4)),
        ("Abelian builder sweep", Duration::from_secs(60), Box::new(criterion_5)),
        ("Milnor closed forms", Duration::from_secs(300), Box::new(criterion_6)),
        ("lower-bound audit", Duration::from_secs(1), Box::new(|a| criterion_7(a))),
        ("ceiling roots", Duration::from_secs(1), Box::new(|_| criterion_8())),
        ("Zaremba sweeps", Duration::from_secs(300), Box::new(|_| criterion_9())),
        ("conjecture corners", Duration::from_secs(120), Box::new(|_| criterion_10())),
        ("property suites", Duration::from_secs(300), Box::new(|_| criterion_11())),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut audit);
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
