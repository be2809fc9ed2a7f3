//! Command-line interface: construct, verify, catalog and selftest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith;
use crate::constructions::{th1_code, th2_code, th3_code, th4_code};
use crate::coset_lifts::{iterated_lift, th10_code, th11_code, th12_code, th13_code, th8_code, th9_code, Th12Variant};
use crate::error::{Error, ErrorKind, Result};
use crate::field::make_field_of_order;
use crate::grs::{check_mds, check_self_dual, min_distance, CodeRecord, MdsMode, SelfDualCode};
use crate::limits::Limits;
use crate::search::{catalog, th_large_q_code};
use crate::selftest::{run_suites, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_NOT_SELF_DUAL: i32 = 4;
pub const EXIT_NOT_MDS: i32 = 5;
pub const EXIT_TOO_LARGE: i32 = 6;
pub const EXIT_SELFTEST: i32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Limits and output format after merging defaults, the config file and flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub limits: Limits,
    pub format: Format,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            limits: Limits::default(),
            format: Format::Json,
        }
    }
}

impl CliConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || -> Result<u64> {
                match value.parse::<u64>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(Error::Parse(format!("config line {}: {key} must be a positive integer", no + 1))),
                }
            };
            match key {
                "table_limit" => self.limits.table_limit = num()?,
                "enumeration_limit" => self.limits.enumeration_limit = num()?,
                "minor_limit" => self.limits.minor_limit = num()?,
                "sample_count" => self.limits.sample_count = num()?,
                "length_limit" => self.limits.length_limit = num()?,
                "format" => {
                    self.format = Format::from_str(value, true)
                        .map_err(|_| Error::Parse(format!("config line {}: unknown format {value:?}", no + 1)))?
                }
                other => return Err(Error::Parse(format!("config line {}: unknown key {other:?}", no + 1))),
            }
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "mds-selfdual", version, about = "Construct and verify MDS self-dual GRS codes")]
struct Cli {
    /// Largest field order for which tables are built
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    table_limit: Option<u64>,
    /// Largest q^k enumerated by the exhaustive distance check
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    enum_limit: Option<u64>,
    /// Largest number of k-subsets in the full minor check
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    minor_limit: Option<u64>,
    /// Number of random minors in sampled mode
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    /// Longest code a construction may produce
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    length_limit: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// File of key=value settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from a theorem id and its parameters
    Construct(ConstructArgs),
    /// Check a code file for self-duality and the MDS property
    Verify(VerifyArgs),
    /// List which even lengths are realized over GF(q)
    Catalog(CatalogArgs),
    /// Run the identity suites over all fields up to a given order
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Theorem id, optionally followed by key=value parameters
    spec: Vec<String>,
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    f: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Stage degrees of an iterated lift, comma separated
    #[arg(long)]
    ms: Option<String>,
    /// tf or tf+2
    #[arg(long)]
    variant: Option<String>,
    /// Run the greedy clique below its guaranteed range
    #[arg(long)]
    permissive: bool,
    /// Write the code JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the generator matrix as text
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MdsChoice {
    Auto,
    Exhaustive,
    Minors,
    Sampled,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    mds: MdsChoice,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long)]
    q: u64,
    /// Largest length listed; defaults to q + 1
    #[arg(long)]
    max_n: Option<u64>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    max_q: u64,
    /// Corrupt one Zech entry of GF(Q) before running
    #[arg(long, hide = true)]
    corrupt_zech: Option<u64>,
}

/// Exit code for an error raised by the library.
pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Hypothesis => EXIT_HYPOTHESIS,
        ErrorKind::Verification => EXIT_VERIFICATION,
        ErrorKind::Limit => EXIT_TOO_LARGE,
        ErrorKind::Input => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let config = match config_from(&cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, &config, out, err),
        Command::Verify(a) => cmd_verify(&a, &config, out),
        Command::Catalog(a) => cmd_catalog(&a, &config, out, err),
        Command::Selftest(a) => cmd_selftest(&a, &config, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn config_from(cli: &Cli) -> Result<CliConfig> {
    let mut c = CliConfig::default();
    if let Some(path) = &cli.config {
        c.apply_file(&read(path)?)?;
    }
    let l = &mut c.limits;
    l.table_limit = cli.table_limit.unwrap_or(l.table_limit);
    l.enumeration_limit = cli.enum_limit.unwrap_or(l.enumeration_limit);
    l.minor_limit = cli.minor_limit.unwrap_or(l.minor_limit);
    l.sample_count = cli.samples.unwrap_or(l.sample_count);
    l.length_limit = cli.length_limit.unwrap_or(l.length_limit);
    c.format = cli.format.unwrap_or(c.format);
    Ok(c)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("output: {e}"))
}

/// Theorem id and named parameters gathered from flags and key=value words.
struct Params {
    theorem: String,
    values: BTreeMap<String, String>,
}

impl Params {
    fn from_args(a: &ConstructArgs) -> Result<Self> {
        let mut theorem = a.theorem.clone();
        let mut values = BTreeMap::new();
        for word in &a.spec {
            match word.split_once('=') {
                Some((k, v)) => {
                    values.insert(k.to_string(), v.to_string());
                }
                None if theorem.is_none() => theorem = Some(word.clone()),
                None => return Err(Error::Parse(format!("unexpected argument {word:?}"))),
            }
        }
        let flags = [
            ("r", a.r),
            ("p", a.p),
            ("m", a.m),
            ("s", a.s),
            ("e", a.e),
            ("t", a.t),
            ("f", a.f),
            ("q", a.q),
            ("n", a.n),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                values.insert(k.to_string(), v.to_string());
            }
        }
        if let Some(ms) = &a.ms {
            values.insert("ms".into(), ms.clone());
        }
        if let Some(v) = &a.variant {
            values.insert("variant".into(), v.clone());
        }
        let theorem = theorem.ok_or_else(|| Error::Parse("missing theorem id".into()))?;
        Ok(Params { theorem, values })
    }

    fn num(&self, key: &str) -> Result<u64> {
        let v = self
            .values
            .get(key)
            .ok_or_else(|| Error::Parse(format!("{} needs parameter {key}", self.theorem)))?;
        v.parse()
            .map_err(|_| Error::Parse(format!("parameter {key} = {v:?} is not a non-negative integer")))
    }

    fn list(&self, key: &str) -> Result<Vec<u64>> {
        let v = self
            .values
            .get(key)
            .ok_or_else(|| Error::Parse(format!("{} needs parameter {key}", self.theorem)))?;
        v.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("parameter {key} = {v:?} is not a list of integers")))
            })
            .collect()
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        match self.values.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("{} does not take parameter {k}", self.theorem))),
            None => Ok(()),
        }
    }
}

/// Builds the code named by a theorem id and string-valued parameters, as
/// accepted by `construct` (lists such as `ms` are comma separated).
pub fn construct(
    theorem: &str,
    params: &BTreeMap<String, String>,
    permissive: bool,
    limits: &Limits,
) -> Result<SelfDualCode> {
    let p = Params {
        theorem: theorem.to_string(),
        values: params.clone(),
    };
    build(&p, permissive, limits)
}

fn build(p: &Params, permissive: bool, limits: &Limits) -> Result<SelfDualCode> {
    let id = p.theorem.as_str();
    match id {
        "th1" | "th4" => {
            p.only(&["r", "m", "e", "t"])?;
            let f = if id == "th1" { th1_code } else { th4_code };
            f(p.num("r")?, p.num("m")?, p.num("e")?, p.num("t")?, limits)
        }
        "th2" | "th3" => {
            p.only(&["p", "m", "e", "t"])?;
            let f = if id == "th2" { th2_code } else { th3_code };
            f(p.num("p")?, p.num("m")?, p.num("e")?, p.num("t")?, limits)
        }
        "th8" | "th9" | "th10" | "th11" => {
            p.only(&["r", "s", "m", "e", "t"])?;
            let f = match id {
                "th8" => th8_code,
                "th9" => th9_code,
                "th10" => th10_code,
                _ => th11_code,
            };
            f(p.num("r")?, p.num("s")?, p.num("m")?, p.num("e")?, p.num("t")?, limits)
        }
        "cor1" | "cor2" | "cor3" | "cor4" => {
            p.only(&["r", "s", "ms", "e", "t"])?;
            let t = p.num("t")?;
            let (extended, even) = match id {
                "cor1" => (false, true),
                "cor2" => (false, false),
                "cor3" => (true, false),
                _ => (true, true),
            };
            if (t % 2 == 0) != even {
                let kind = if even { "even" } else { "odd" };
                return Err(Error::HypothesisViolated(format!("{id} requires t = {t} to be {kind}")));
            }
            iterated_lift(p.num("r")?, p.num("s")?, &p.list("ms")?, p.num("e")?, t, extended, limits)
        }
        "th12" => {
            p.only(&["r", "e", "f", "s", "t", "variant"])?;
            let variant = Th12Variant::parse(p.values.get("variant").map_or("tf", String::as_str))?;
            th12_code(p.num("r")?, p.num("e")?, p.num("f")?, p.num("s")?, p.num("t")?, variant, limits)
        }
        "th13" => {
            p.only(&["r", "e", "f", "s", "t"])?;
            th13_code(p.num("r")?, p.num("e")?, p.num("f")?, p.num("s")?, p.num("t")?, limits)
        }
        "large_q" => {
            p.only(&["q", "n"])?;
            let field = make_field_of_order(p.num("q")?, limits.table_limit)?;
            th_large_q_code(&field, p.num("n")? as usize, permissive)
        }
        other => Err(Error::Parse(format!("unknown theorem {other:?}"))),
    }
}

fn code_text(code: &SelfDualCode) -> String {
    let r = code.to_record();
    let params: Vec<String> = r.provenance.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let codes = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "theorem {} {}", r.provenance.theorem, params.join(" "));
    let _ = writeln!(s, "field GF({}) p={} m={}", code.field().q(), r.field.p, r.field.m);
    let _ = writeln!(s, "length {} dimension {} extended {}", code.length(), r.k, r.extended);
    let _ = writeln!(s, "a {}", codes(&r.a));
    let _ = writeln!(s, "v {}", codes(&r.v));
    s
}

fn cmd_construct(a: &ConstructArgs, c: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let params = Params::from_args(a)?;
    let code = build(&params, a.permissive, &c.limits)?;
    if let Some(path) = &a.matrix {
        write_file(path, &code.generator_matrix().to_text())?;
    }
    match &a.out {
        Some(path) => {
            write_file(path, &(code.to_json() + "\n"))?;
            writeln!(
                err,
                "wrote [{}, {}] code over GF({}) to {}",
                code.length(),
                code.k(),
                code.field().q(),
                path.display()
            )
            .map_err(io)?;
        }
        None => match c.format {
            Format::Json => writeln!(out, "{}", code.to_json()).map_err(io)?,
            Format::Text => write!(out, "{}", code_text(&code)).map_err(io)?,
        },
    }
    Ok(EXIT_OK)
}

/// Result of checking a code record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub self_dual: bool,
    pub mds: bool,
    pub mds_mode: MdsMode,
    pub min_distance: Option<usize>,
}

impl VerifyReport {
    pub fn mode_name(&self) -> &'static str {
        match self.mds_mode {
            MdsMode::Exhaustive => "exhaustive",
            MdsMode::Minors => "minors",
            MdsMode::Sampled => "sampled",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut report = json!({
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "self_dual": self.self_dual,
            "mds": self.mds,
            "mds_mode": self.mode_name(),
        });
        if let Some(d) = self.min_distance {
            report["min_distance"] = json!(d);
        }
        report
    }

    pub fn exit_code(&self) -> i32 {
        if !self.self_dual {
            EXIT_NOT_SELF_DUAL
        } else if !self.mds {
            EXIT_NOT_MDS
        } else {
            EXIT_OK
        }
    }
}

/// Checks self-duality and the MDS property of a record. Without a mode,
/// the cheapest complete check within the limits is used.
pub fn verify_record(record: &CodeRecord, mode: Option<MdsMode>, limits: &Limits) -> Result<VerifyReport> {
    let g = record.generator_matrix(limits.table_limit)?;
    let (n, k, q) = (g.cols(), g.rows(), g.field().q());
    let self_dual = match check_self_dual(&g) {
        Ok(b) => b,
        Err(Error::ShapeMismatch(_)) => false,
        Err(e) => return Err(e),
    };
    let space = arith::checked_pow(q, k as u32).map_or(u128::MAX, u128::from);
    let mode = mode.unwrap_or(if space <= limits.enumeration_limit as u128 {
        MdsMode::Exhaustive
    } else if arith::binomial(n as u64, k as u64) <= limits.minor_limit as u128 {
        MdsMode::Minors
    } else {
        MdsMode::Sampled
    });
    let (mds, min_distance) = if mode == MdsMode::Exhaustive {
        let d = min_distance(&g, limits.enumeration_limit)?;
        (d == n - k + 1, Some(d))
    } else {
        (check_mds(&g, mode, limits)?, None)
    };
    Ok(VerifyReport {
        q,
        n,
        k,
        self_dual,
        mds,
        mds_mode: mode,
        min_distance,
    })
}

fn cmd_verify(a: &VerifyArgs, c: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    let record = CodeRecord::from_json(&read(&a.file)?)?;
    let mode = match a.mds {
        MdsChoice::Auto => None,
        MdsChoice::Exhaustive => Some(MdsMode::Exhaustive),
        MdsChoice::Minors => Some(MdsMode::Minors),
        MdsChoice::Sampled => Some(MdsMode::Sampled),
    };
    let r = verify_record(&record, mode, &c.limits)?;
    match c.format {
        Format::Json => writeln!(out, "{}", r.to_json()).map_err(io)?,
        Format::Text => {
            writeln!(out, "code [{}, {}] over GF({})", r.n, r.k, r.q).map_err(io)?;
            writeln!(out, "self_dual {}", r.self_dual).map_err(io)?;
            writeln!(out, "mds {} ({})", r.mds, r.mode_name()).map_err(io)?;
            if let Some(d) = r.min_distance {
                writeln!(out, "min_distance {d}").map_err(io)?;
            }
        }
    }
    Ok(r.exit_code())
}

fn cmd_catalog(a: &CatalogArgs, c: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let n_max = a.max_n.unwrap_or(a.q.saturating_add(1));
    let cat = catalog(a.q, n_max, &c.limits)?;
    let text = match c.format {
        Format::Json => cat.to_jsonl(),
        Format::Text => cat.to_csv(true),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    for s in &cat.skipped {
        writeln!(err, "{s}").map_err(io)?;
    }
    for f in &cat.flagged {
        writeln!(err, "flagged: {f}").map_err(io)?;
    }
    Ok(if cat.flagged.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_selftest(a: &SelftestArgs, c: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut fields = arith::odd_prime_powers(a.max_q)
        .into_iter()
        .map(|q| make_field_of_order(q, c.limits.table_limit))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = a.corrupt_zech {
        for f in fields.iter_mut().filter(|f| f.q() == bad) {
            *f = f.with_corrupted_zech(1);
        }
    }
    let reports = run_suites(&fields, &c.limits);
    print_reports(&reports, a.max_q, fields.len(), c.format, out, err)?;
    Ok(if reports.iter().all(SuiteReport::passed) {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    })
}

fn print_reports(
    reports: &[SuiteReport],
    max_q: u64,
    field_count: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    for r in reports {
        match format {
            Format::Json => {
                let line = json!({
                    "suite": r.name,
                    "max_q": max_q,
                    "fields": field_count,
                    "checks": r.checks,
                    "failures": r.failures.len(),
                    "passed": r.passed(),
                });
                writeln!(out, "{line}").map_err(io)?;
            }
            Format::Text => {
                let status = if r.passed() { "ok" } else { "FAILED" };
                writeln!(out, "{:<20} {:>9} checks  {status}", r.name, r.checks).map_err(io)?;
            }
        }
        for w in &r.failures {
            writeln!(err, "{}: {w}", r.name).map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("mds-selfdual").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn config_file_keys() {
        let mut c = CliConfig::default();
        c.apply_file("# limits\ntable_limit = 1000\nformat=text\n").unwrap();
        assert_eq!(c.limits.table_limit, 1000);
        assert_eq!(c.format, Format::Text);
        assert!(c.apply_file("minor_limit=0").is_err());
        assert!(c.apply_file("colour=red").is_err());
        assert!(c.apply_file("nonsense").is_err());
    }

    #[test]
    fn positional_and_flag_forms_agree() {
        let a = run_str(&["construct", "th1", "r=13", "m=1", "e=0", "t=3"]);
        let b = run_str(&["construct", "--theorem", "th1", "--r", "13", "--m", "1", "--e", "0", "--t", "3"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        assert_eq!(run_str(&["construct", "th99"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["construct", "th1", "r=13"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["construct", "th1", "r=13", "m=1", "e=0", "t=3", "z=1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn corollary_parity() {
        let (code, _, err) = run_str(&["construct", "cor1", "r=5", "s=1", "ms=1,3", "e=0", "t=1"]);
        assert_eq!(code, EXIT_HYPOTHESIS, "{err}");
    }
}
