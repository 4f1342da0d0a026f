//! The four subcommands. Each returns the text for standard output and an
//! exit code; errors carry their own exit code (1 for bad input, 2 for a
//! failed consistency check).

use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use toric_bm::fan::Preset;
use toric_bm::homology::{
    check_pieces, check_poincare, check_universal_coefficients, describe_group, oracle_euler,
    oracle_smooth_complete_betti, report_from_subcomplexes, subcomplex_homology, OracleSkip,
};
use toric_bm::{assemble_subcomplexes, Coefficients, Fan, FanInput, HomologyReport, WeightSubcomplex};

use crate::format::{fan_to_text, parse_fan_text, report_table, report_value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Consistency(_) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Where a fan comes from: a fan file or `preset <name> <params...>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanSource {
    File(PathBuf),
    Preset(Preset),
}

impl FanSource {
    pub fn from_args(args: &[String]) -> Result<Self, CliError> {
        match args {
            [] => Err(CliError::Input("missing fan source".into())),
            [head, rest @ ..] if head == "preset" => {
                let tokens: Vec<&str> = rest.iter().map(String::as_str).collect();
                Preset::parse(&tokens)
                    .map(FanSource::Preset)
                    .map_err(|e| CliError::Input(e.to_string()))
            }
            [path] => Ok(FanSource::File(PathBuf::from(path))),
            _ => Err(CliError::Input(
                "expected one fan file or `preset <name> <params...>`".into(),
            )),
        }
    }

    pub fn load(&self) -> Result<FanInput, CliError> {
        match self {
            FanSource::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read fan source {}: {e}", path.display()))
                })?;
                parse_fan_text(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
            }
            FanSource::Preset(p) => p.input().map_err(|e| CliError::Input(e.to_string())),
        }
    }

    pub fn fan(&self) -> Result<Fan, CliError> {
        Fan::new(&self.load()?).map_err(|e| CliError::Input(format!("invalid fan: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    pub coefficients: Coefficients,
    pub json: bool,
    pub dump_pages: bool,
    pub check_oracles: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self {
            coefficients: Coefficients::Integers,
            json: false,
            dump_pages: false,
            check_oracles: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub name: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

fn oracle(name: &'static str, ok: bool, detail: impl Into<String>) -> OracleResult {
    OracleResult {
        name,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: if ok { String::new() } else { detail.into() },
    }
}

fn skipped(name: &'static str, detail: &str) -> OracleResult {
    OracleResult {
        name,
        verdict: Verdict::Skipped,
        detail: detail.into(),
    }
}

/// Independent checks on a finished report.
pub fn run_oracles(fan: &Fan, subs: &[WeightSubcomplex], report: &HomologyReport) -> Result<Vec<OracleResult>, CliError> {
    let mut out = vec![
        oracle("d squared", true, ""),
        oracle(
            "vanishing outside [0, 2n]",
            report.outside_range.is_empty(),
            format!("non-zero homology in degrees {:?}", report.outside_range.iter().map(|d| d.j).collect::<Vec<_>>()),
        ),
        oracle(
            "euler characteristic",
            oracle_euler(fan, report),
            format!(
                "alternating sum {} but {} maximal-dimensional cones",
                report.euler_characteristic(),
                fan.f_vector()[fan.rank()]
            ),
        ),
        oracle("weights and conjugation signs", check_pieces(report), "repeated weight or wrong sign"),
    ];

    match oracle_smooth_complete_betti(fan) {
        Ok(expected) => {
            let got = report.betti();
            out.push(oracle(
                "smooth complete betti",
                got == expected && !report.has_torsion(),
                format!("expected {expected:?}, got {got:?}"),
            ));
            out.push(oracle("poincare symmetry", check_poincare(report), "ranks not symmetric or torsion present"));
        }
        Err(reason) => {
            let why = match reason {
                OracleSkip::NotSmooth => "fan is not smooth",
                OracleSkip::NotComplete => "completeness not established",
            };
            out.push(skipped("smooth complete betti", why));
            out.push(skipped("poincare symmetry", why));
        }
    }

    let n = fan.rank();
    match report.coefficients {
        Coefficients::Rationals => out.push(skipped("universal coefficients", "no prime to compare")),
        Coefficients::PrimeField(_) => {
            let integral = build_report(n, subs, Coefficients::Integers)?;
            out.push(oracle(
                "universal coefficients",
                check_universal_coefficients(&integral, report),
                "field ranks disagree with the integral groups",
            ));
        }
        Coefficients::Integers => {
            let mut primes: Vec<u64> = report.torsion_primes().iter().filter_map(BigInt::to_u64).collect();
            primes.push(101);
            primes.sort_unstable();
            primes.dedup();
            let ok = primes.iter().try_fold(true, |acc, &q| -> Result<bool, CliError> {
                let modular = build_report(n, subs, Coefficients::PrimeField(q))?;
                Ok(acc && check_universal_coefficients(report, &modular))
            })?;
            out.push(oracle(
                "universal coefficients",
                ok,
                format!("field ranks disagree with the integral groups for some q in {primes:?}"),
            ));
        }
    }
    Ok(out)
}

fn build_report(n: usize, subs: &[WeightSubcomplex], coefficients: Coefficients) -> Result<HomologyReport, CliError> {
    report_from_subcomplexes(n, subs, coefficients).map_err(|e| CliError::Input(e.to_string()))
}

fn page_lines(subs: &[WeightSubcomplex], coefficients: Coefficients) -> (String, Value) {
    let mut text = String::from("E2 terms (k = c + 2s)\n");
    let mut e2 = Vec::new();
    for sub in subs {
        for (s, t) in sub.terms.iter().enumerate() {
            if t.dim() > 0 {
                text.push_str(&format!("  k = {}, s = {}, weight {}: rank {}\n", t.chow_degree, s, sub.weight(), t.dim()));
                e2.push(json!({"k": t.chow_degree, "s": s, "weight": sub.weight(), "rank": t.dim()}));
            }
        }
    }
    text.push_str("E3 groups\n");
    let mut e3 = Vec::new();
    for sub in subs {
        for (s, g) in subcomplex_homology(sub, coefficients).iter().enumerate() {
            if !g.is_zero() {
                let j = sub.total_degree(s);
                text.push_str(&format!(
                    "  j = {}, s = {}, weight {}: {}\n",
                    j,
                    s,
                    sub.weight(),
                    describe_group(g, coefficients)
                ));
                let torsion: Vec<Value> = g.torsion.iter().map(|t| json!(t.to_string())).collect();
                e3.push(json!({"j": j, "s": s, "weight": sub.weight(), "rank": g.free_rank, "torsion": torsion}));
            }
        }
    }
    (text, json!({"e2": e2, "e3": e3}))
}

/// Report for an already constructed fan, without oracles or pages.
pub fn homology_report(fan: &Fan, coefficients: Coefficients) -> Result<HomologyReport, CliError> {
    let subs = assemble_subcomplexes(fan).map_err(|e| CliError::Consistency(e.to_string()))?;
    build_report(fan.rank(), &subs, coefficients)
}

pub fn compute(source: &FanSource, opts: &ComputeOptions) -> Result<Outcome, CliError> {
    let fan = source.fan()?;
    let subs = assemble_subcomplexes(&fan).map_err(|e| CliError::Consistency(e.to_string()))?;
    let report = build_report(fan.rank(), &subs, opts.coefficients)?;
    let oracles = if opts.check_oracles {
        Some(run_oracles(&fan, &subs, &report)?)
    } else {
        None
    };
    let failed = oracles.iter().flatten().any(|o| o.verdict == Verdict::Fail);

    let stdout = if opts.json {
        let mut doc = report_value(&report);
        if opts.dump_pages {
            doc["pages"] = page_lines(&subs, opts.coefficients).1;
        }
        if let Some(oracles) = &oracles {
            doc["oracles"] = Value::Array(
                oracles
                    .iter()
                    .map(|o| {
                        json!({
                            "name": o.name,
                            "verdict": match o.verdict {
                                Verdict::Pass => "pass",
                                Verdict::Fail => "fail",
                                Verdict::Skipped => "skipped",
                            },
                            "detail": o.detail,
                        })
                    })
                    .collect(),
            );
        }
        let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
        s.push('\n');
        s
    } else {
        let mut s = report_table(&report);
        if opts.dump_pages {
            s.push_str(&page_lines(&subs, opts.coefficients).0);
        }
        if let Some(oracles) = &oracles {
            s.push_str("oracles\n");
            for o in oracles {
                let verdict = match o.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "skipped",
                };
                if o.detail.is_empty() {
                    s.push_str(&format!("  {}: {verdict}\n", o.name));
                } else {
                    s.push_str(&format!("  {}: {verdict} ({})\n", o.name, o.detail));
                }
            }
        }
        s
    };
    Ok(Outcome {
        stdout,
        code: if failed { 2 } else { 0 },
    })
}

pub fn validate(source: &FanSource) -> Result<Outcome, CliError> {
    let input = source.load()?;
    let report = input
        .validate()
        .map_err(|e| CliError::Input(format!("parse error: {e}")))?;
    let mut stdout = String::new();
    for c in &report.checks {
        if c.passed {
            stdout.push_str(&format!("{}: pass\n", c.name));
        } else {
            stdout.push_str(&format!("{}: FAIL ({})\n", c.name, c.detail));
        }
    }
    Ok(Outcome {
        stdout,
        code: if report.passed() { 0 } else { 1 },
    })
}

pub fn preset(params: &[String]) -> Result<Outcome, CliError> {
    let tokens: Vec<&str> = params.iter().map(String::as_str).collect();
    let input = Preset::parse(&tokens)
        .and_then(|p| p.input())
        .map_err(|e| CliError::Input(e.to_string()))?;
    let stdout = fan_to_text(&input).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Outcome { stdout, code: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn sources() {
        assert_eq!(
            FanSource::from_args(&args("preset torus 2")).unwrap(),
            FanSource::Preset(Preset::Torus(2))
        );
        assert_eq!(
            FanSource::from_args(&args("a.fan")).unwrap(),
            FanSource::File(PathBuf::from("a.fan"))
        );
        assert!(FanSource::from_args(&args("a.fan b.fan")).is_err());
        assert!(FanSource::from_args(&[]).is_err());
    }

    #[test]
    fn missing_file_is_input_error() {
        let err = compute(&FanSource::File("/nonexistent/x.fan".into()), &ComputeOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("cannot read fan source"));
    }

    #[test]
    fn oracles_pass_on_plane() {
        let source = FanSource::Preset(Preset::ProjectiveSpace(2));
        let opts = ComputeOptions {
            check_oracles: true,
            ..ComputeOptions::default()
        };
        let out = compute(&source, &opts).unwrap();
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(!out.stdout.contains("FAIL"));
    }
}
