//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use superalg::calculus::{self, InvolutionSpec};
use superalg::cli;
use superalg::contraction::{self, contraction_check, take_limit};
use superalg::error::Result;
use superalg::presentations::{self, enumerate_basis, parse_rule};
use superalg::report::CheckReport;
use superalg::supermatrix::{self, SignVariant, PINNED_RTT_VARIANT};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.2} s (limit {} s)", t.as_secs_f64(), limit.as_secs()))
}

fn summary(reports: &[CheckReport]) -> String {
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} ({} failed)", r.check, r.failed))
        .collect();
    if failing.is_empty() {
        let n: usize = reports.iter().map(|r| r.checked).sum();
        format!("{n} items checked")
    } else {
        format!("failing: {}", failing.join(", "))
    }
}

fn ybe() -> Result<Outcome> {
    let start = Instant::now();
    let report = supermatrix::check_ybe(&supermatrix::r_matrix(&supermatrix::parameter_table())?)?;
    let (fast, time) = within(Duration::from_secs(30), start);
    let ok = report.passed && report.checked == 729 && fast;
    Ok(outcome(ok, format!("{} of 729 entries zero, {time}", report.checked - report.failed)))
}

fn rtt() -> Result<Outcome> {
    let start = Instant::now();
    let r = supermatrix::r_matrix(&supermatrix::parameter_table())?;
    let bialg = presentations::build("matrix_bialgebra")?;
    let passing: Vec<SignVariant> = [SignVariant::Plain, SignVariant::Dressed]
        .into_iter()
        .filter(|v| supermatrix::check_rtt(&r, &bialg, *v).map(|c| c.passed).unwrap_or(false))
        .collect();
    let flipped = -r.entry(2, 0);
    let mutant = r.with_entry(2, 0, flipped)?;
    let mutant_fails = !supermatrix::check_rtt(&mutant, &bialg, PINNED_RTT_VARIANT)?.passed;
    let (fast, time) = within(Duration::from_secs(120), start);
    let ok = passing == [PINNED_RTT_VARIANT] && mutant_fails && fast;
    Ok(outcome(
        ok,
        format!("passing variants {passing:?}, pinned {PINNED_RTT_VARIANT}, mutant rejected: {mutant_fails}, {time}"),
    ))
}

fn confluence() -> Result<Outcome> {
    let mut unresolved = 0;
    let mut checked = 0;
    for id in cli::CONFLUENCE_DEFAULT {
        let report = presentations::confluence(&*presentations::build(id)?, 3)?;
        unresolved += report.failures.len();
        checked += report.checked;
    }
    Ok(outcome(
        unresolved == 0,
        format!("{checked} critical pairs over {} presentations, {unresolved} unresolved", cli::CONFLUENCE_DEFAULT.len()),
    ))
}

fn coaction() -> Result<Outcome> {
    let reports = ["superspace_h", "exterior_hp", "derham_h"]
        .iter()
        .map(|t| supermatrix::check_coaction(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(outcome(reports.iter().all(|r| r.passed), summary(&reports)))
}

fn calculus_identities() -> Result<Outcome> {
    let start = Instant::now();
    let reports = vec![
        calculus::dsquare_check(6)?,
        calculus::leibniz_check(200, 0, 4)?,
        calculus::duality_check(5)?,
        calculus::delta_check()?,
        calculus::derivative_algebra_check(5)?,
    ];
    let (fast, time) = within(Duration::from_secs(120), start);
    let ok = reports.iter().all(|r| r.passed) && fast;
    Ok(outcome(ok, format!("{}, {time}", summary(&reports))))
}

fn stars() -> Result<Outcome> {
    let reports = ["superspace_h", "derham_h", "weyl_h"]
        .iter()
        .map(|id| {
            calculus::star_relation_check(&*presentations::build(id)?, &InvolutionSpec::star(id)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(outcome(reports.iter().all(|r| r.passed), summary(&reports)))
}

fn contraction() -> Result<Outcome> {
    let start = Instant::now();
    let reports = contraction::TARGETS
        .iter()
        .map(|t| contraction_check(t))
        .collect::<Result<Vec<_>>>()?;
    let mut poles = 0;
    for src in ["superspace_q", "exterior_pq", "derham_q", "weyl_q"] {
        for r in contraction::derive(src)?.rules.defining_rules() {
            poles += take_limit(r.rhs()).is_err() as usize;
        }
    }
    // The limit also separates the sign-corrected derivative relation from
    // the uncorrected one.
    let weyl = presentations::build("weyl_h")?;
    let uncorrected = parse_rule(
        weyl.table(),
        "pth2*th2",
        "1 - th2*pth2 - h*x*pth2 + hp*th2*px + h*hp*(x*px + th2*pth2)",
        "weyl",
    )?;
    let derived = contraction::derive("weyl_q")?;
    let limit = take_limit(derived.rule_for(uncorrected.lhs()).expect("pth2*th2").rhs())?;
    let differs = limit != *uncorrected.rhs();
    let (fast, time) = within(Duration::from_secs(60), start);
    let ok = reports.iter().all(|r| r.passed) && poles == 0 && fast;
    Ok(outcome(
        ok,
        format!(
            "{}, {poles} poles, limit differs from uncorrected d/dth2 relation: {differs}, {time}",
            summary(&reports)
        ),
    ))
}

fn rhat() -> Result<Outcome> {
    let r = supermatrix::r_matrix(&supermatrix::parameter_table())?;
    let reports = vec![
        supermatrix::check_rhat_superspace(&r, &*presentations::build("superspace_h")?)?,
        supermatrix::check_rhat_calculus(&r, &*presentations::build("derham_h")?)?,
    ];
    Ok(outcome(reports.iter().all(|r| r.passed), summary(&reports)))
}

fn flatness() -> Result<Outcome> {
    let p = presentations::build("superspace_h")?;
    let counts: Vec<usize> = (0..=5).map(|d| enumerate_basis(&p, d).len()).collect();
    // Classical superspace with one even and two odd coordinates.
    let classical: Vec<usize> = (0..=5usize)
        .map(|n| (0..=2usize).filter(|&k| k <= n).map(|k| [1, 2, 1][k]).sum())
        .collect();
    Ok(outcome(counts == classical, format!("counts {counts:?}, classical {classical:?}")))
}

const SUITE: &[&[&str]] = &[
    &["check", "ybe"],
    &["check", "rtt"],
    &["check", "rhat"],
    &["check", "coaction"],
    &["check", "confluence"],
    &["check", "dsquare", "--degree", "6"],
    &["check", "leibniz", "--seed", "42"],
    &["check", "duality"],
    &["check", "derivatives"],
    &["check", "star"],
    &["contract", "--seed", "42"],
    &["basis", "--degree", "5"],
];

fn suite_json() -> Vec<String> {
    SUITE
        .iter()
        .map(|args| {
            let mut full = vec!["superalg"];
            full.extend_from_slice(args);
            full.extend(["--format", "json"]);
            cli::run(full).stdout
        })
        .collect()
}

fn determinism() -> Result<Outcome> {
    let first = suite_json();
    let second = suite_json();
    let identical = first == second;
    let all_pass = first
        .iter()
        .all(|s| serde_json::from_str::<serde_json::Value>(s).map(|v| v["passed"] == true).unwrap_or(false));
    Ok(outcome(
        identical && all_pass,
        format!("{} reports, byte-identical: {identical}, all passing: {all_pass}", first.len()),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("graded Yang-Baxter equation", ybe),
        ("RTT relations with pinned sign variant", rtt),
        ("confluence of the presentations", confluence),
        ("covariance under the coaction", coaction),
        ("calculus identities", calculus_identities),
        ("star structures", stars),
        ("contraction", contraction),
        ("R-hat form of the relations", rhat),
        ("flatness of the superspace", flatness),
        ("determinism of reports", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        failures += !o.passed as usize;
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {}", i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
