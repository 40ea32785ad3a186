//! Curated regression catalog: families with independently known verdicts.
//!
//! Every case carries the expected outcome and, where known, the expected
//! very-good status, so the decision engine can be checked against settled
//! results in bulk. Cases whose answer is genuinely open are expected as
//! `Open`; the engine's verdict on them is reported as a finding rather
//! than a pass or failure.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::decide::{
    closed_form_check, decide_l2, very_good_config, very_good_sl2, L2Verdict,
};
use crate::reps::parse_rep;
use crate::rootdata::root_datum_from_descriptor;

/// Expected verdict of a catalog case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    L2,
    NotL2,
    Open,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::L2 => "L2",
            Expectation::NotL2 => "NOT_L2",
            Expectation::Open => "open",
        })
    }
}

/// Which very-good checker applies to a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VgChecker {
    /// No computable check; only a tabulated expectation, if any.
    None,
    /// Weight-sum criterion for a single `A_1` factor.
    Sl2,
    /// Point-count criterion for the projective configuration stack.
    Config { points: u64 },
}

/// One catalog entry.
#[derive(Clone, Copy, Debug)]
pub struct CatalogCase {
    pub name: &'static str,
    pub group: &'static str,
    pub rep: &'static str,
    pub expected: Expectation,
    /// Very-good status where the source result supplies one.
    pub expected_very_good: Option<bool>,
    pub vg_checker: VgChecker,
    /// Which settled result backs the expectation.
    pub source: &'static str,
}

/// Status of one executed case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseStatus {
    Ok,
    Fail,
    Finding,
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseStatus::Ok => "ok",
            CaseStatus::Fail => "fail",
            CaseStatus::Finding => "finding",
        })
    }
}

/// Executed case with the engine's verdict attached.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub case: CatalogCase,
    pub verdict: L2Verdict,
    pub closed_form: Option<bool>,
    /// Computed very-good value where a checker applies.
    pub very_good: Option<bool>,
    pub status: CaseStatus,
}

/// Full catalog run.
#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub results: Vec<CaseResult>,
    pub failures: usize,
    pub findings: usize,
}

const SL2_EQUIV: &str = "SL2: very good iff square-integrable";
const ADJOINT_MULTIPLE: &str = "adjoint multiples: square-integrable iff more than one copy";
const TORUS_SPAN: &str = "torus: square-integrable iff the weights span";
const CONFIG_FAMILY: &str = "projective-line configurations: square-integrable iff r >= 3";
const AMBIENT_FAMILY: &str = "projective ambient family: square-integrable for r > 2(n-1)";
const AMBIENT_BOUNDARY: &str = "projective ambient family at r = 2(n-1): undecided";
const NONCOMPACT_BG: &str = "classifying stack of a noncompact group";
const TORUS_LINE: &str = "line mod scaling: square-integrable, not very good";

/// The built-in case table.
pub fn catalog_cases() -> Vec<CatalogCase> {
    let mut cases = Vec::new();

    cases.push(CatalogCase {
        name: "torus-span-r2",
        group: "T2",
        rep: "weights[(1,0):1, (0,1):1, (-1,-1):1]",
        expected: Expectation::L2,
        expected_very_good: None,
        vg_checker: VgChecker::None,
        source: TORUS_SPAN,
    });
    cases.push(CatalogCase {
        name: "torus-degenerate-r2",
        group: "T2",
        rep: "weights[(1,1):1, (2,2):1]",
        expected: Expectation::NotL2,
        expected_very_good: None,
        vg_checker: VgChecker::None,
        source: TORUS_SPAN,
    });
    cases.push(CatalogCase {
        name: "torus-line-r1",
        group: "T1",
        rep: "weights[(1):1]",
        expected: Expectation::L2,
        expected_very_good: Some(false),
        vg_checker: VgChecker::None,
        source: TORUS_LINE,
    });

    const ADJOINT_GROUPS: [&str; 5] = ["A1", "A2", "A3", "B2", "G2"];
    const ADJOINT_NAMES: [[&str; 3]; 5] = [
        ["adjoint-A1-r1", "adjoint-A1-r2", "adjoint-A1-r3"],
        ["adjoint-A2-r1", "adjoint-A2-r2", "adjoint-A2-r3"],
        ["adjoint-A3-r1", "adjoint-A3-r2", "adjoint-A3-r3"],
        ["adjoint-B2-r1", "adjoint-B2-r2", "adjoint-B2-r3"],
        ["adjoint-G2-r1", "adjoint-G2-r2", "adjoint-G2-r3"],
    ];
    const ADJOINT_REPS: [&str; 3] = ["adjoint", "pow(adjoint, 2)", "pow(adjoint, 3)"];
    for (gi, group) in ADJOINT_GROUPS.iter().enumerate() {
        for r in 0..3 {
            cases.push(CatalogCase {
                name: ADJOINT_NAMES[gi][r],
                group,
                rep: ADJOINT_REPS[r],
                expected: if r == 0 { Expectation::NotL2 } else { Expectation::L2 },
                expected_very_good: None,
                vg_checker: VgChecker::None,
                source: ADJOINT_MULTIPLE,
            });
        }
    }

    const SL2_CASES: [(&str, &str, Expectation); 9] = [
        ("sl2-v0", "sl2(0)", Expectation::NotL2),
        ("sl2-v1", "sl2(1)", Expectation::NotL2),
        ("sl2-v2", "sl2(2)", Expectation::NotL2),
        ("sl2-v3", "sl2(3)", Expectation::L2),
        ("sl2-v4", "sl2(4)", Expectation::L2),
        ("sl2-v1-pow2", "pow(sl2(1), 2)", Expectation::NotL2),
        ("sl2-v1-pow3", "pow(sl2(1), 3)", Expectation::L2),
        ("sl2-v1-v2", "sum(sl2(1), sl2(2))", Expectation::L2),
        ("sl2-v2-pow2", "pow(sl2(2), 2)", Expectation::L2),
    ];
    for (name, rep, expected) in SL2_CASES {
        cases.push(CatalogCase {
            name,
            group: "A1",
            rep,
            expected,
            expected_very_good: Some(expected == Expectation::L2),
            vg_checker: VgChecker::Sl2,
            source: SL2_EQUIV,
        });
    }

    const CONFIG_SL2: [(&str, &str, &str, u64, Expectation); 5] = [
        ("config-sl2-r2", "A1 x T2", "config(standard, 2)", 2, Expectation::NotL2),
        ("config-sl2-r3", "A1 x T3", "config(standard, 3)", 3, Expectation::L2),
        ("config-sl2-r4", "A1 x T4", "config(standard, 4)", 4, Expectation::L2),
        ("config-sl2-r5", "A1 x T5", "config(standard, 5)", 5, Expectation::L2),
        ("config-sl2-r6", "A1 x T6", "config(standard, 6)", 6, Expectation::L2),
    ];
    for (name, group, rep, points, expected) in CONFIG_SL2 {
        cases.push(CatalogCase {
            name,
            group,
            rep,
            expected,
            expected_very_good: Some(points >= 4),
            vg_checker: VgChecker::Config { points },
            source: CONFIG_FAMILY,
        });
    }

    const AMBIENT: [(&str, &str, &str, Expectation, &str); 4] = [
        ("config-sl3-r4", "A2 x T4", "config(standard, 4)", Expectation::Open, AMBIENT_BOUNDARY),
        ("config-sl3-r5", "A2 x T5", "config(standard, 5)", Expectation::L2, AMBIENT_FAMILY),
        ("config-sl3-r6", "A2 x T6", "config(standard, 6)", Expectation::L2, AMBIENT_FAMILY),
        ("config-sl4-r7", "A3 x T7", "config(standard, 7)", Expectation::L2, AMBIENT_FAMILY),
    ];
    for (name, group, rep, expected, source) in AMBIENT {
        cases.push(CatalogCase {
            name,
            group,
            rep,
            expected,
            expected_very_good: None,
            vg_checker: VgChecker::None,
            source,
        });
    }

    cases.push(CatalogCase {
        name: "bsl2",
        group: "A1",
        rep: "zero",
        expected: Expectation::NotL2,
        expected_very_good: None,
        vg_checker: VgChecker::None,
        source: NONCOMPACT_BG,
    });

    cases.sort_by_key(|c| c.name);
    cases
}

/// Run the catalog, keeping only cases whose name contains `filter` when one
/// is given.
pub fn run_catalog(filter: Option<&str>) -> CatalogReport {
    let mut results = Vec::new();
    let mut failures = 0usize;
    let mut findings = 0usize;
    for case in catalog_cases() {
        if let Some(pat) = filter {
            if !case.name.contains(pat) {
                continue;
            }
        }
        let rd = root_datum_from_descriptor(case.group)
            .expect("catalog group descriptors are well-formed");
        let rep = parse_rep(&rd, case.rep).expect("catalog rep descriptors are well-formed");
        let verdict = decide_l2(&rd, &rep).expect("catalog cases are well-typed");
        let closed_form = closed_form_check(&rd, &rep);
        let very_good = match case.vg_checker {
            VgChecker::None => None,
            VgChecker::Sl2 => Some(very_good_sl2(&rep)),
            VgChecker::Config { points } => Some(very_good_config(points)),
        };
        let status = if case.expected == Expectation::Open {
            CaseStatus::Finding
        } else {
            let expected_l2 = case.expected == Expectation::L2;
            let decide_ok = verdict.is_l2 == expected_l2;
            let closed_ok = closed_form.is_none_or(|v| v == verdict.is_l2);
            let vg_ok = match (very_good, case.expected_very_good) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            if decide_ok && closed_ok && vg_ok {
                CaseStatus::Ok
            } else {
                CaseStatus::Fail
            }
        };
        match status {
            CaseStatus::Fail => failures += 1,
            CaseStatus::Finding => findings += 1,
            CaseStatus::Ok => {}
        }
        results.push(CaseResult { case, verdict, closed_form, very_good, status });
    }
    CatalogReport { results, failures, findings }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let got = if r.verdict.is_l2 { "L2" } else { "NOT_L2" };
            write!(f, "case={} expected={} got={} M=", r.case.name, r.case.expected, got)?;
            match &r.verdict.max_value {
                Some(m) => write!(f, "{m}")?,
                None => write!(f, "-inf")?,
            }
            writeln!(f, " status={}", r.status)?;
        }
        for r in &self.results {
            if let Some(vg) = r.very_good.or(r.case.expected_very_good) {
                writeln!(
                    f,
                    "compare={} very_good={} l2={}",
                    r.case.name,
                    vg,
                    r.verdict.is_l2
                )?;
            }
        }
        write!(
            f,
            "cases={} failures={} findings={}",
            self.results.len(),
            self.failures,
            self.findings
        )
    }
}

/// Render the report to an owned string (convenience for callers without
/// a formatter).
pub fn render_report(report: &CatalogReport) -> String {
    alloc::format!("{report}")
}
