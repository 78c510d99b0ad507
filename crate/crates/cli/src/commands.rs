use std::io::Read;

use anyhow::{bail, Context, Result};
use grpcomplex::bounds::{bounds_report, largest_root, per_relator_bound_check, smallest_root, BoundEntry};
use grpcomplex::contfrac::{
    cf_expand, cf_sum_bound_check, fibonacci_pair, lens_bounds, partner_scan_range, seifert_manifold_bounds,
    sweep_pairs, ManifoldBounds,
};
use grpcomplex::coset::{enumerate_cosets, verify_cyclic, EnumerationOutcome, Verdict};
use grpcomplex::families::{
    abelian_presentation, cyclic_presentation, ell, milnor_bounds, milnor_closed_form, milnor_presentation,
    ChainStrategy, MilnorFamily, MilnorSpec,
};
use grpcomplex::search::{exact_cyclic_complexity, SearchOutcome, SearchParams};
use grpcomplex::{parse_presentation, AbelianInvariants, Presentation, RelationMatrix};
use serde_json::{json, Value};

use crate::report::{Output, Status};

/// Reads a presentation file; `-` means standard input.
pub fn read_presentation(path: &str) -> Result<Presentation> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    parse_presentation(&text).with_context(|| format!("parsing {path}"))
}

fn big(n: &impl ToString) -> Value {
    Value::String(n.to_string())
}

fn snf_rows(out: &mut Output, inv: &AbelianInvariants) {
    out.row("torsion", big(&inv.torsion_order)).row("free_rank", inv.free_rank).row("abelianization", inv.to_string());
    out.set("invariant_factors", inv.invariant_factors().map(big).collect::<Vec<_>>());
}

fn entries_json(entries: &[BoundEntry]) -> Value {
    serde_json::to_value(entries).expect("bound entries serialize")
}

fn entry_lines(out: &mut Output, entries: &[BoundEntry]) {
    for e in entries {
        let rel = match (e.kind.is_lower(), e.strict) {
            (true, true) => ">",
            (true, false) => ">=",
            (false, true) => "<",
            (false, false) => "<=",
        };
        out.line(format!("  {:<8} {rel:<2} {:<10.4} {} [{}]", e.kind, e.value, e.rule, e.inputs));
    }
}

pub fn bounds(path: &str) -> Result<Output> {
    let p = read_presentation(path)?;
    let b = bounds_report(&p);
    let mut out = Output::new();
    out.row("generators", p.generator_count())
        .row("relators", p.relator_count())
        .row("length", b.length)
        .row("t_cost", b.t_cost);
    snf_rows(&mut out, &b.invariants);
    let get = |rule: &str| b.report.get(rule).expect("bounds report has every torsion rule");
    let log2 = get(grpcomplex::bounds::rules::TORSION_LOG2);
    out.row("lower_c_log2", log2.value)
        .row("lower_c_log2_strict", log2.strict)
        .row("lower_c_cuberoot3", get(grpcomplex::bounds::rules::TORSION_LOG_CUBEROOT3).value)
        .row("lower_t_log3", get(grpcomplex::bounds::rules::ODD_TORSION_LOG3).value);
    match per_relator_bound_check(&p) {
        Ok(check) => {
            out.row("relator_log2_sum", check.rhs).row("relator_bound_holds", check.holds);
            if !check.holds {
                out.fail(Status::Violation);
            }
        }
        Err(e) => {
            out.row("relator_bound_holds", Value::Null).set("relator_bound_skipped", e.to_string());
        }
    }
    if !b.report.is_consistent() {
        out.fail(Status::Violation);
    }
    out.row("consistent", b.report.is_consistent());
    out.line("rules");
    entry_lines(&mut out, &b.report.entries);
    out.set("rules", entries_json(&b.report.entries));
    Ok(out)
}

fn presentation_output(p: &Presentation, title: String) -> Output {
    let mut out = Output::new();
    out.line(format!("# {title}"));
    out.line(format!("# length {}, t_cost {}", p.length(), p.t_cost()));
    out.text.push_str(&p.to_string());
    out.set("title", title)
        .set("presentation", p.to_string())
        .set("generators", p.generator_count())
        .set("length", p.length())
        .set("t_cost", p.t_cost());
    out
}

pub fn present_cyclic(p: u64, strategy: ChainStrategy) -> Result<Output> {
    let pres = cyclic_presentation(p, strategy)?;
    let mut out = presentation_output(&pres, format!("Z/{p}, strategy {strategy}"));
    out.set("order", p).set("strategy", strategy.to_string()).set("ell", ell(p, strategy)?);
    Ok(out)
}

pub fn present_abelian(orders: &[u64], strategy: ChainStrategy) -> Result<Output> {
    let pres = abelian_presentation(orders, strategy)?;
    let name = orders.iter().map(|p| format!("Z/{p}")).collect::<Vec<_>>().join(" x ");
    let mut out = presentation_output(&pres, format!("{name}, strategy {strategy}"));
    let order = orders.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
    out.set("orders", orders.to_vec()).set("order", order).set("strategy", strategy.to_string());
    Ok(out)
}

pub fn milnor_spec(family: MilnorFamily, n: Option<u64>, k: Option<u32>, q: u64) -> Result<MilnorSpec> {
    let need_n = || n.context("--n is required for this family");
    let need_k = || k.context("--k is required for this family");
    let spec = match family {
        MilnorFamily::Q => MilnorSpec::q(need_n()?, q),
        MilnorFamily::D => MilnorSpec::d(need_k()?, need_n()?, q),
        MilnorFamily::P24 => MilnorSpec::p24(q),
        MilnorFamily::P48 => MilnorSpec::p48(q),
        MilnorFamily::P120 => MilnorSpec::p120(q),
        MilnorFamily::PPrime => MilnorSpec::pprime(need_k()?, q),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn present_milnor(spec: &MilnorSpec, strategy: ChainStrategy) -> Result<Output> {
    let pres = milnor_presentation(spec, strategy)?;
    let closed = milnor_closed_form(spec, strategy)?;
    let mut out = presentation_output(&pres, format!("{spec}, strategy {strategy}"));
    out.set("order", spec.order())
        .set("abelian_torsion", spec.abelian_torsion())
        .set("closed_form_length", closed)
        .set("strategy", strategy.to_string());
    let entries = milnor_bounds(spec)?;
    out.set("bounds", entries_json(&entries));
    if pres.length() as u64 != closed {
        out.fail(Status::Violation);
    }
    Ok(out)
}

pub fn verify(path: &str, order: u64, cyclic: bool, cap: usize) -> Result<Output> {
    let p = read_presentation(path)?;
    let mut out = Output::new();
    out.row("claimed_order", order);
    let verdict = if cyclic {
        let v = verify_cyclic(&p, order, cap);
        out.row("order_found", v.enumeration.order());
        snf_rows(&mut out, &RelationMatrix::from_presentation(&p).smith_normal_form());
        v.verdict
    } else {
        let inv = RelationMatrix::from_presentation(&p).smith_normal_form();
        let outcome = enumerate_cosets(&p, cap);
        out.row("order_found", outcome.order());
        snf_rows(&mut out, &inv);
        match outcome {
            EnumerationOutcome::Order(n) if n == order => Verdict::Verified,
            EnumerationOutcome::Order(n) => Verdict::Refuted(format!("group order is {n}, not {order}")),
            EnumerationOutcome::Overflow(cap) => {
                Verdict::Inconclusive(format!("coset enumeration exceeded {cap} cosets"))
            }
        }
    };
    let (name, detail, status) = match &verdict {
        Verdict::Verified => ("verified", None, Status::Ok),
        Verdict::Refuted(d) => ("refuted", Some(d.clone()), Status::Violation),
        Verdict::Inconclusive(d) => ("inconclusive", Some(d.clone()), Status::Resource),
    };
    out.row("verdict", name).row("detail", detail).set("cyclic", cyclic).set("coset_cap", cap);
    out.fail(status);
    Ok(out)
}

pub fn search_cyclic(n: u64, params: SearchParams) -> Result<Output> {
    if params.max_gens < params.max_length {
        eprintln!(
            "warning: --max-gens {} is below --max-length {}; an exact answer only covers presentations with at most {} generators",
            params.max_gens, params.max_length, params.max_gens
        );
    }
    let report = exact_cyclic_complexity(n, &params);
    let mut out = Output::new();
    out.set("n", n)
        .set("max_length", params.max_length)
        .set("max_gens", params.max_gens)
        .set("max_gens_restricted", params.max_gens < params.max_length)
        .set("coset_cap", params.coset_cap)
        .set("stats", serde_json::to_value(&report.stats).expect("stats serialize"));
    let witness = match &report.outcome {
        SearchOutcome::Exact { complexity, witness } => {
            out.line(format!("# c(Z/{n}) = {complexity}"));
            out.set("kind", "exact").set("complexity", *complexity).set("inconclusive", json!([]));
            Some(witness)
        }
        SearchOutcome::LowerBoundOnly { at_least, witness, inconclusive } => {
            out.line(format!("# c(Z/{n}) >= {at_least} (budget exhausted or unsettled candidates)"));
            for key in inconclusive {
                out.line(format!("# unsettled: {key}"));
            }
            out.set("kind", "lower-bound-only").set("at_least", *at_least).set("inconclusive", inconclusive.clone());
            out.fail(Status::Resource);
            witness.as_ref()
        }
    };
    let s = &report.stats;
    out.line(format!(
        "# classes {}, pruned by length {}, by abelianization {}, refuted by order {}, by quotient {}, inconclusive {}",
        s.classes, s.pruned_length, s.pruned_abelian, s.refuted_order, s.refuted_quotient, s.inconclusive
    ));
    if s.lower_bound_violations > 0 {
        out.fail(Status::Violation);
    }
    match witness {
        Some(w) => {
            out.text.push_str(&w.to_string());
            out.set("witness", w.to_string());
        }
        None => {
            out.set("witness", Value::Null);
        }
    }
    Ok(out)
}

pub fn zaremba_check(p: u64, q: u64) -> Result<Output> {
    let cf = cf_expand(p, q)?;
    let mut out = Output::new();
    out.row("p", p).row("q", q);
    out.row("quotients", cf.quotients.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    out.set("quotients", cf.quotients.clone());
    out.row("sum", cf.sum())
        .row("max_quotient", cf.max_quotient())
        .row("zaremba", cf.is_zaremba())
        .row("weak_zaremba", cf.is_weak_zaremba());
    if q > 1 && cf.is_weak_zaremba() {
        let check = cf_sum_bound_check(p, q)?;
        out.row("sum_bound", check.bound).row("sum_bound_holds", check.holds);
        if !check.holds {
            out.fail(Status::Violation);
        }
    }
    Ok(out)
}

pub fn zaremba_scan(max_p: u64) -> Output {
    let rows = partner_scan_range(max_p);
    let mut out = Output::new();
    out.line("p,q,max_quotient");
    for r in &rows {
        out.line(format!("{},{},{}", r.p, r.q, r.max_quotient));
    }
    let non_cusick: Vec<u64> = rows.iter().filter(|r| !r.is_cusick).map(|r| r.p).collect();
    out.set("max_p", max_p)
        .set("rows", rows.iter().map(|r| json!([r.p, r.q, r.max_quotient])).collect::<Vec<_>>())
        .set("non_cusick", non_cusick);
    out
}

pub fn zaremba_fib(k: u32) -> Result<Output> {
    let (p, q) = fibonacci_pair(k)?;
    let cf = cf_expand(p, q)?;
    let mut out = Output::new();
    out.row("p", p).row("q", q);
    out.row("quotients", cf.quotients.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    out.set("quotients", cf.quotients.clone());
    out.row("zaremba", cf.is_zaremba());
    if !cf.is_zaremba() {
        out.fail(Status::Violation);
    }
    Ok(out)
}

pub fn zaremba_sweep(max_p: u64) -> Output {
    let s = sweep_pairs(max_p);
    let mut out = Output::new();
    out.row("max_p", s.max_p)
        .row("pairs", s.pairs)
        .row("expected_pairs", s.expected_pairs)
        .row("zaremba", s.zaremba)
        .row("weak_zaremba", s.weak)
        .row("zaremba_sum_violations", s.zaremba_sum_violations)
        .row("zaremba_ratio_violations", s.zaremba_ratio_violations)
        .row("weak_sum_violations", s.weak_sum_violations)
        .row("zaremba_not_weak", s.zaremba_not_weak)
        .row("clean", s.is_clean());
    if !s.is_clean() {
        out.fail(Status::Violation);
    }
    out
}

fn manifold_output(b: &ManifoldBounds) -> Output {
    let mut out = Output::new();
    out.row("lower", b.lower)
        .row("upper", b.upper)
        .row("upper_strict", b.upper_strict)
        .row("hypothesis", serde_json::to_value(b.hypothesis).expect("hypothesis serializes"));
    if let Some(ok) = b.ratio_check {
        out.row("p_below_6q", ok);
        if !ok {
            out.fail(Status::Violation);
        }
    }
    if b.lower > b.upper {
        out.fail(Status::Violation);
    }
    out
}

pub fn manifold_lens(p: u64, q: u64, weak: bool) -> Result<Output> {
    Ok(manifold_output(&lens_bounds(p, q, weak)?))
}

pub fn manifold_seifert(p: u64, q: u64) -> Result<Output> {
    Ok(manifold_output(&seifert_manifold_bounds(p, q)?))
}

pub fn roots(a: f64, c: f64) -> Result<Output> {
    if !a.is_finite() || !c.is_finite() {
        bail!("a and c must be finite");
    }
    let mut out = Output::new();
    out.row("a", a).row("c", c).row("largest_root", largest_root(a, c)?);
    out.row("smallest_root", smallest_root(a, c).ok());
    Ok(out)
}
