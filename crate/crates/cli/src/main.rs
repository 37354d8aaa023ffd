use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use g2c2_core::cache::{self, Cache};
use g2c2_core::char2inv::{install_k_table, KName, KTable};
use g2c2_core::curves::parse::{format_element, format_fq_poly};
use g2c2_core::curves::{enumerate_curves_with_progress, BinaryField, CurveError, Genus2Curve};
use g2c2_core::hilbert;
use g2c2_core::igusa0::{IgusaTable, JName};
use g2c2_core::polycore::format;
use g2c2_core::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "g2c2", version, about = "Characteristic-2 invariants of genus-2 curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Check this K-table (JSON) instead of the cached one.
        #[arg(long)]
        k_table: Option<PathBuf>,
    },
    /// Print the expansion of an invariant (K1..K15, or J2..J10, I4).
    Kpoly {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Describe the curve y^2 + a(x) y = b(x) over F_2^n.
    Curve {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1)]
        field_deg: u32,
        /// Include point counts, the L-polynomial and invariant values.
        #[arg(long)]
        info: bool,
        /// Print the JSON curve record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Classify every pair (a, b) over F_2^n.
    Enumerate {
        #[arg(long)]
        field_deg: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the L-polynomial comparison (point counts dominate the cost).
        #[arg(long)]
        no_l: bool,
    },
    /// Dimensions r(k) of the weight-k forms.
    Hilbert {
        #[arg(long)]
        max_k: usize,
        /// Print the full table k, r(k), |N_k|, c(k) with a header.
        #[arg(long)]
        table: bool,
    },
    /// Build, locate or clear the table cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Invariants,
    Hilbert,
    Curves,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Invariants => vec![Suite::Invariants],
            SuiteArg::Hilbert => vec![Suite::Hilbert],
            SuiteArg::Curves => vec![Suite::Curves],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Build,
    Path,
    Clear,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::NotSmooth => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn tables() -> Result<(IgusaTable, &'static KTable), CliError> {
    let (igusa, k) = Cache::from_env().tables()?;
    Ok((igusa, install_k_table(k)))
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn cmd_verify(suite: SuiteArg, json_out: Option<PathBuf>, k_table: Option<PathBuf>) -> Result<bool, CliError> {
    let (igusa, cached) = tables()?;
    let table = match k_table {
        Some(path) => {
            let text = fs::read_to_string(&path)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            cache::k_table_from_json(&value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => cached.clone(),
    };
    let mut report = verify::VerifyReport::default();
    let mut out = io::stdout().lock();
    for s in suite.suites() {
        let part = verify::run(&[s], &igusa, &table);
        for c in &part.checks {
            writeln!(out, "{}", c.line())?;
        }
        report.extend(s, part.checks);
    }
    let failures: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failures.is_empty() {
        writeln!(out, "all {} checks passed", report.checks.len())?;
    } else {
        writeln!(out, "{} of {} checks failed: {}", failures.len(), report.checks.len(), failures.join("; "))?;
    }
    if let Some(path) = json_out {
        let value = json!({ "passed": report.passed(), "suites": report.suites, "checks": report.checks });
        write_atomic(&path, &(serde_json::to_string_pretty(&value).expect("serializable") + "\n"))?;
    }
    Ok(report.passed())
}

fn cmd_kpoly(name: &str, fmt: PolyFormat) -> Result<(), CliError> {
    let text = if let Some(k) = KName::parse(name) {
        let (_, table) = tables()?;
        let body = table.body(k);
        match fmt {
            PolyFormat::Text => format::to_text(body),
            PolyFormat::Json => serde_json::to_string(&format::to_json_value(body)).expect("serializable"),
        }
    } else if let Some(j) = JName::parse(name) {
        let (igusa, _) = tables()?;
        let inv = igusa.get(j);
        match fmt {
            PolyFormat::Text => format!("({}) * ({})", inv.scale, format::to_text(&inv.body)),
            PolyFormat::Json => {
                let value = json!({ "name": j.to_string(), "scale": inv.scale.to_string(), "body": format::to_json_value(&inv.body) });
                serde_json::to_string(&value).expect("serializable")
            }
        }
    } else {
        return Err(CliError::Usage(format!("unknown invariant `{name}`")));
    };
    println!("{text}");
    Ok(())
}

fn field_name(n: u32) -> String {
    format!("F{}", 1u64 << n)
}

/// `1 + 4t^4`-style rendering of an integer polynomial in `t`.
fn format_l(l: &[i64; 5]) -> String {
    let mut s = String::new();
    for (i, &c) in l.iter().enumerate().filter(|(_, c)| **c != 0) {
        let mag = c.unsigned_abs();
        let body = match (i, mag) {
            (0, _) => mag.to_string(),
            (_, 1) => String::new(),
            _ => mag.to_string(),
        } + &match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if s.is_empty() {
            s = if c < 0 { format!("-{body}") } else { body };
        } else {
            s += &format!(" {} {body}", if c < 0 { '-' } else { '+' });
        }
    }
    s
}

fn cmd_curve(a: &str, b: &str, n: u32, info: bool, as_json: bool) -> Result<(), CliError> {
    let curve = Genus2Curve::parse(n, a, b)?;
    tables()?;
    if as_json {
        println!("{}", serde_json::to_string(&curve.record()).expect("serializable"));
        return Ok(());
    }
    let mut out = io::stdout().lock();
    let smooth = curve.is_smooth();
    writeln!(out, "field={}", field_name(n))?;
    writeln!(out, "a={}", format_fq_poly(&curve.a_poly()))?;
    writeln!(out, "b={}", format_fq_poly(&curve.b_poly()))?;
    writeln!(out, "smooth={smooth}")?;
    writeln!(out, "two_rank={}", curve.two_rank())?;
    if !info {
        return Ok(());
    }
    if smooth {
        writeln!(out, "points({})={}", field_name(n), curve.count_points(1)?)?;
        writeln!(out, "points({})={}", field_name(2 * n), curve.count_points(2)?)?;
        let l = curve.l_polynomial()?;
        writeln!(out, "L={}", format_l(&l))?;
        writeln!(out, "two_rank_from_L={}", curve.two_rank_from_l()?)?;
    }
    for (k, v) in curve.eval_invariants() {
        writeln!(out, "{k}={}", format_element(v))?;
    }
    Ok(())
}

fn cmd_enumerate(n: u32, out: Option<PathBuf>, no_l: bool) -> Result<bool, CliError> {
    let field = BinaryField::new(n)?;
    if n > 2 {
        return Err(CliError::Usage(format!("exhaustive enumeration is limited to F2 and F4, not {}", field_name(n))));
    }
    tables()?;
    let step = ((1u64 << (4 * n)) / 20).max(1);
    let report = enumerate_curves_with_progress(field, !no_l, |done, total| {
        if done % step == 0 || done == total {
            eprintln!("enumerate: {done}/{total} cubics");
        }
    });
    println!("{} pairs, {} smooth", report.pairs, report.smooth);
    for (bucket, count) in &report.buckets {
        println!(
            "two_rank={} K1={} K10_nonzero={}\t{count}",
            bucket.two_rank,
            format_element(bucket.k1),
            bucket.k10_nonzero
        );
    }
    println!("K1 = 0 iff 2-rank <= 1: {}", report.k1_zero_iff_nonordinary);
    if !no_l {
        println!("2-rank = deg(L mod 2): {}", report.rank_matches_l);
    }
    println!("K10 != 0 on smooth curves: {}", report.k10_nonzero_on_smooth);
    if let Some(path) = out {
        write_atomic(&path, &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))?;
    }
    Ok(report.passed())
}

fn cmd_hilbert(max_k: usize, full: bool) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    if full {
        writeln!(out, "k\tr\tN_k\tc")?;
    }
    for (k, r, n, c) in hilbert::table(max_k) {
        if full {
            writeln!(out, "{k}\t{r}\t{n}\t{c}")?;
        } else {
            writeln!(out, "{k}\t{r}")?;
        }
    }
    Ok(())
}

fn cmd_cache(action: CacheAction) -> Result<(), CliError> {
    let cache = Cache::from_env();
    match action {
        CacheAction::Path => println!("{}", cache.dir().display()),
        CacheAction::Clear => {
            if cache.dir().exists() {
                fs::remove_dir_all(cache.dir())?;
            }
        }
        CacheAction::Build => {
            let (igusa, digest, s1) = cache.igusa_table()?;
            let (_, s2) = cache.k_table(&igusa, &digest)?;
            println!("igusa table: {s1:?}\nK-table: {s2:?}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { suite, json, k_table } => cmd_verify(suite, json, k_table),
        Command::Kpoly { name, format } => cmd_kpoly(&name, format).map(|_| true),
        Command::Curve { a, b, field_deg, info, json } => cmd_curve(&a, &b, field_deg, info, json).map(|_| true),
        Command::Enumerate { field_deg, out, no_l } => cmd_enumerate(field_deg, out, no_l),
        Command::Hilbert { max_k, table } => cmd_hilbert(max_k, table).map(|_| true),
        Command::Cache { action } => cmd_cache(action).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("g2c2: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
