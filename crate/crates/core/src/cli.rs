//! Command surface and output rendering for the `qa` binary.
//!
//! Exit codes: 0 when every check passes or lies outside the hypotheses,
//! 1 on a falsification, 2 on usage or domain errors. Records go to the
//! `out` writer, diagnostics to `err`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pell::{self, FundUnit};
use crate::quartic::{self, ClassGroupResult, Fixtures, IntPoly};
use crate::verifier::{self, LemmaTag, ProofChainReport, Verdict, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Primes verified per parallel batch; fixed so `--jobs` never affects output.
const SCAN_BATCH: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qa", version, about = "Exact checks of the 2-part of h(Q(p^(1/4))) for primes p ≡ 1 (mod 8)")]
pub struct Cli {
    /// Trial-division bound when factoring the unit coefficient b.
    #[arg(long, global = true, default_value_t = pell::DEFAULT_TRIAL_CAP)]
    pub trial_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every applicable check for one prime.
    Verify {
        p: u64,
        /// Also compute the class group of Q(p^(1/4)).
        #[arg(long)]
        deep: bool,
        /// Largest p for which --deep is honoured.
        #[arg(long, default_value_t = quartic::DEFAULT_DEEP_BOUND)]
        deep_bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify every prime in a range, in increasing order.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Keep only primes in this class mod 16.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..16))]
        mod16: Option<u8>,
        /// Run class-group checks for primes up to this bound.
        #[arg(long, default_value_t = 0)]
        deep_max: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Continue past failing primes instead of aborting.
        #[arg(long)]
        keep_going: bool,
    },
    /// Print the fundamental unit a + b√p of norm −1.
    Unit {
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the class group of a monic quartic field.
    Classgroup {
        /// Coefficients c0,c1,c2,c3,c4 of c0 + c1 x + … + c4 x⁴.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "pure_quartic", required_unless_present = "pure_quartic")]
        poly: Option<String>,
        /// Use x⁴ − m.
        #[arg(long)]
        pure_quartic: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Unit record as emitted by `qa unit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRecord {
    #[serde(flatten)]
    pub unit: FundUnit,
    #[serde(with = "crate::serde_big")]
    pub norm: num_bigint::BigInt,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qa: {e}");
            error_code(&e)
        }
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Fixture(_) => EXIT_USAGE,
        Error::Falsified(_) | Error::Structural(_) => EXIT_FALSIFIED,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Structural(format!("write failed: {e}"))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let fixtures = Fixtures::from_env()?;
    match &cli.command {
        Command::Verify { p, deep, deep_bound, format } => {
            let cfg = VerifyConfig { deep_bound: *deep_bound, fixtures, trial_cap: cli.trial_cap };
            if *deep && *p > *deep_bound {
                let _ = writeln!(err, "qa: {p} exceeds the deep-check bound {deep_bound}; class group skipped");
            }
            let report = verifier::verify_prime_with(*p, *deep, &cfg)?;
            let mut sink = ReportSink::new(*format);
            sink.write(out, &report).map_err(io)?;
            Ok(report_code(&report))
        }
        Command::Scan { from, to, mod16, deep_max, jobs, format, keep_going } => {
            let cfg = VerifyConfig { deep_bound: *deep_max, fixtures, trial_cap: cli.trial_cap };
            scan(*from, *to, *mod16, *jobs, *format, *keep_going, &cfg, out, err)
        }
        Command::Unit { p, format } => {
            let unit = match pell::fundamental_unit(*p) {
                Ok(u) => u,
                Err(Error::Falsified(m)) => {
                    let _ = writeln!(err, "qa: falsification: {m}");
                    return Ok(EXIT_FALSIFIED);
                }
                Err(e) => return Err(e),
            };
            let rec = UnitRecord { norm: unit.norm(), unit };
            write_unit(out, *format, &rec).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Classgroup { poly, pure_quartic: m, format } => {
            let poly = match (poly, m) {
                (Some(s), _) => parse_poly(s)?,
                (None, Some(m)) => quartic::pure_quartic(*m)?,
                (None, None) => return Err(Error::Domain("one of --poly or --pure-quartic is required".into())),
            };
            let ob = quartic::maximal_order(&poly)?;
            let res = quartic::class_group(&ob, &fixtures)?;
            if let Some(d) = &res.diagnostic {
                let _ = writeln!(err, "qa: {d}");
            }
            write_class_group(out, *format, &res).map_err(io)?;
            let mismatch = res.oracle_h.is_some_and(|h| h != res.h);
            Ok(if mismatch { EXIT_FALSIFIED } else { EXIT_OK })
        }
    }
}

fn report_code(r: &ProofChainReport) -> i32 {
    if r.overall == Verdict::Fail {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

#[allow(clippy::too_many_arguments)]
fn scan(
    from: u64,
    to: u64,
    mod16: Option<u8>,
    jobs: usize,
    format: Format,
    keep_going: bool,
    cfg: &VerifyConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> crate::Result<i32> {
    let primes = verifier::scan_primes(from, to, mod16)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Structural(format!("worker pool: {e}")))?;
    let mut sink = ReportSink::new(format);
    sink.header(out).map_err(io)?;
    let mut failures: Vec<u64> = Vec::new();
    let mut counts = [0usize; 3];
    for batch in primes.chunks(SCAN_BATCH) {
        let reports: Vec<crate::Result<ProofChainReport>> =
            pool.install(|| batch.par_iter().map(|&q| verifier::verify_prime_with(q, q <= cfg.deep_bound, cfg)).collect());
        for r in reports {
            let r = r?;
            sink.write(out, &r).map_err(io)?;
            counts[match r.overall {
                Verdict::Pass => 0,
                Verdict::HypothesisNotMet => 1,
                Verdict::Fail => 2,
            }] += 1;
            if r.overall == Verdict::Fail {
                failures.push(r.p);
                let failed: Vec<String> =
                    r.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| format!("{}: {}", c.lemma_tag, c.witness)).collect();
                let _ = writeln!(err, "qa: FALSIFICATION at p = {}: {}", r.p, failed.join("; "));
                if !keep_going {
                    let _ = writeln!(err, "qa: scan aborted; pass --keep-going to continue");
                    return Ok(EXIT_FALSIFIED);
                }
            }
        }
    }
    let _ = writeln!(err, "qa: {} primes: {} pass, {} hypothesis_not_met, {} fail", primes.len(), counts[0], counts[1], counts[2]);
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_FALSIFIED })
}

/// Parses `c0,c1,c2,c3,c4`.
pub fn parse_poly(s: &str) -> crate::Result<IntPoly> {
    let coeffs: Vec<num_bigint::BigInt> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Domain(format!("bad coefficient {t:?}"))))
        .collect::<crate::Result<_>>()?;
    if coeffs.len() != 5 {
        return Err(Error::Domain(format!("expected 5 coefficients c0..c4, found {}", coeffs.len())));
    }
    IntPoly::new(coeffs)
}

/// Column names of the CSV rendering of a [`ProofChainReport`].
pub fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = ["p", "class_mod16", "unit_a", "unit_b", "overall"].map(String::from).to_vec();
    for t in LemmaTag::ALL {
        h.push(t.label().to_string());
        h.push(format!("{}_witness", t.label()));
    }
    h.extend(["deep_h", "deep_h_mod4", "deep_certified"].map(String::from));
    h
}

pub fn csv_row(r: &ProofChainReport) -> Vec<String> {
    let mut row = vec![
        r.p.to_string(),
        r.class_mod16.to_string(),
        r.unit.as_ref().map(|u| u.a.to_string()).unwrap_or_default(),
        r.unit.as_ref().map(|u| u.b.to_string()).unwrap_or_default(),
        r.overall.to_string(),
    ];
    for t in LemmaTag::ALL {
        match r.check(t) {
            Some(c) => {
                row.push(c.verdict.to_string());
                row.push(c.witness.clone());
            }
            None => row.extend([String::new(), String::new()]),
        }
    }
    match &r.deep {
        Some(d) => row.extend([d.h.to_string(), d.h_mod4.to_string(), d.certified.to_string()]),
        None => row.extend([String::new(), String::new(), String::new()]),
    }
    row
}

pub fn report_text(r: &ProofChainReport) -> String {
    let mut s = format!("p = {} (≡ {} mod 16): {}\n", r.p, r.class_mod16, r.overall);
    if let Some(u) = &r.unit {
        s.push_str(&format!("  unit: a = {} b = {}\n", u.a, u.b));
    }
    for c in &r.checks {
        s.push_str(&format!("  {:<18} {:<18} {}\n", c.lemma_tag.label(), c.verdict.to_string(), c.witness));
    }
    if let Some(d) = &r.deep {
        s.push_str(&format!(
            "  class group: h = {} {:?} disc = {} ({})\n",
            d.h, d.elementary_divisors, d.disc, d.certified
        ));
    }
    s
}

pub fn class_group_text(res: &ClassGroupResult) -> String {
    let oracle = res.oracle_h.map_or("none".to_string(), |h| h.to_string());
    format!(
        "poly = [{}]\ndisc = {}\nsignature = ({}, {})\nminkowski_bound = {}\nfactor_base = {}\nrelations = {}\nh = {}\nelementary_divisors = {:?}\nh mod 4 = {}\noracle_h = {}\ncertified = {}\n",
        res.poly.join(","),
        res.disc,
        res.signature.0,
        res.signature.1,
        res.minkowski_bound,
        res.factor_base,
        res.relations,
        res.h,
        res.elementary_divisors,
        res.h_mod4,
        oracle,
        res.certified
    )
}

/// Streams reports in one format; CSV writes its header once.
struct ReportSink {
    format: Format,
    header_done: bool,
}

impl ReportSink {
    fn new(format: Format) -> Self {
        ReportSink { format, header_done: false }
    }

    fn header(&mut self, out: &mut dyn Write) -> std::io::Result<()> {
        if self.format == Format::Csv && !self.header_done {
            write_csv_line(out, &csv_header())?;
        }
        self.header_done = true;
        Ok(())
    }

    fn write(&mut self, out: &mut dyn Write, r: &ProofChainReport) -> std::io::Result<()> {
        self.header(out)?;
        match self.format {
            Format::Text => write!(out, "{}", report_text(r)),
            Format::JsonLines => writeln!(out, "{}", serde_json::to_string(r)?),
            Format::Csv => write_csv_line(out, &csv_row(r)),
        }
    }
}

fn write_csv_line(out: &mut dyn Write, fields: &[String]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(fields).map_err(std::io::Error::other)?;
    w.flush()
}

fn write_unit(out: &mut dyn Write, format: Format, rec: &UnitRecord) -> std::io::Result<()> {
    let u = &rec.unit;
    match format {
        Format::Text => writeln!(out, "p={} a={} b={} norm={}", u.p, u.a, u.b, rec.norm),
        Format::JsonLines => writeln!(out, "{}", serde_json::to_string(rec)?),
        Format::Csv => {
            write_csv_line(out, &["p", "a", "b", "norm"].map(String::from))?;
            write_csv_line(out, &[u.p.to_string(), u.a.to_string(), u.b.to_string(), rec.norm.to_string()])
        }
    }
}

fn write_class_group(out: &mut dyn Write, format: Format, res: &ClassGroupResult) -> std::io::Result<()> {
    match format {
        Format::Text => write!(out, "{}", class_group_text(res)),
        Format::JsonLines => writeln!(out, "{}", serde_json::to_string(res)?),
        Format::Csv => {
            let header = ["poly", "disc", "r1", "r2", "minkowski_bound", "h", "elementary_divisors", "h_mod4", "oracle_h", "certified"];
            write_csv_line(out, &header.map(String::from))?;
            let divisors: Vec<String> = res.elementary_divisors.iter().map(u64::to_string).collect();
            write_csv_line(
                out,
                &[
                    res.poly.join(" "),
                    res.disc.to_string(),
                    res.signature.0.to_string(),
                    res.signature.1.to_string(),
                    res.minkowski_bound.to_string(),
                    res.h.to_string(),
                    divisors.join(" "),
                    res.h_mod4.to_string(),
                    res.oracle_h.map(|h| h.to_string()).unwrap_or_default(),
                    res.certified.to_string(),
                ],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qa").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unit_records() {
        let (code, out, _) = call(&["unit", "73"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "p=73 a=1068 b=125 norm=-1");
        let (_, out, _) = call(&["unit", "89", "--format", "json-lines"]);
        let rec: UnitRecord = serde_json::from_str(out.trim()).unwrap();
        assert_eq!((rec.unit.a.to_string(), rec.unit.b.to_string()), ("500".into(), "53".into()));
        assert!(out.contains("\"a\":\"500\""));
        assert_eq!(call(&["unit", "8"]).0, 2);
    }

    #[test]
    fn verify_codes() {
        let (code, out, _) = call(&["verify", "41", "--deep"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.contains("Thm10-mod4") && l.contains("pass") && l.contains("h ≡ 2")));
        assert_eq!(call(&["verify", "12"]).0, 2);
        assert_eq!(call(&["verify", "13"]).0, 0);
        let (code, out, _) = call(&["verify", "17", "--deep"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.contains("Thm1-even") && l.contains("pass")));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["scan", "--from", "10", "--to", "5"]).0, 2);
        assert_eq!(call(&["scan", "--from", "1", "--to", "5", "--mod16", "16"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["classgroup", "--poly", "-1,0,0,0,1"]).0, 2);
        assert_eq!(call(&["classgroup", "--poly", "-1,0,1"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn scan_csv_shape() {
        let (code, out, _) = call(&["scan", "--from", "1", "--to", "200", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut rdr = csv::Reader::from_reader(out.as_bytes());
        let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(header, csv_header());
        let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 46);
        assert!(rows.iter().all(|r| r.len() == header.len()));
    }

    #[test]
    fn jobs_do_not_change_output() {
        let a = call(&["scan", "--from", "1", "--to", "600", "--jobs", "1", "--format", "json-lines"]);
        let b = call(&["scan", "--from", "1", "--to", "600", "--jobs", "4", "--format", "json-lines"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn classgroup_pure_quartic() {
        let (code, out, _) = call(&["classgroup", "--pure-quartic", "41", "--format", "json-lines"]);
        assert_eq!(code, 0);
        let res: ClassGroupResult = serde_json::from_str(out.trim()).unwrap();
        assert_eq!((res.h, res.h_mod4), (2, 2));
        assert_eq!(res.certified, quartic::Certification::OracleMatched);
        let (code, out, _) = call(&["classgroup", "--poly", "-1,0,-8,0,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("h = 1\n"));
    }
}
