//! The `lcd-eaqecc` command line: construct, verify, scan, reproduce.

pub mod reproduce;
pub mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::certificate::{parse_documents, Document, Side};
use crate::lincode::{DistanceOptions, DEFAULT_BUDGET, DEFAULT_SAMPLES};
use crate::pipeline::{construct, FamilyParams, PipelineError, Request, DEFAULT_SEARCH_BUDGET};
use crate::verify::verify;

pub const CSV_HEADER: &str = "family,p,e,k,q,n,kq,d,c,mds,maxent,dist_method,seconds";

#[derive(Parser, Debug)]
#[command(name = "lcd-eaqecc", version, about = "Galois LCD MDS codes and their EAQECC parameters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one code and print its certificate.
    Construct(ConstructArgs),
    /// Re-check certificates from a JSON file (object or array).
    Verify(VerifyArgs),
    /// Tabulate parameters over ranges as CSV.
    Scan(ScanArgs),
    /// Rebuild the reference examples and compare parameters.
    Reproduce(ReproduceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    I,
    Ii,
    Iii,
    Iv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest q^l for exhaustive distance enumeration.
    #[arg(long, env = "LCD_EAQECC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Random codewords drawn when neither enumeration nor a structural bound applies.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BudgetArgs {
    pub fn options(&self) -> DistanceOptions {
        DistanceOptions { budget: self.budget, samples: self.samples, seed: self.seed, parallel: true }
    }
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Galois parameter, `0 <= k < e`. Defaults to 1 for family iv and 0 otherwise.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub case: Option<u8>,
    /// Also emit the certificate of the k-Galois dual.
    #[arg(long)]
    pub dual: bool,
    /// Multiplier candidates for family i.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub search_budget: u64,
    /// Family i: search even when `l >= t`.
    #[arg(long)]
    pub beyond_bound: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Lists like `5,7` or inclusive ranges like `2..10`, mixed freely.
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value = "1")]
    pub e: String,
    /// Defaults to 1 for family iv and 0 otherwise.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub search_budget: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Example id, or `all`.
    pub id: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Parse arguments and run; returns the process exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Scan(a) => scan::cmd_scan(&a),
        Command::Reproduce(a) => reproduce::cmd_reproduce(&a),
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, PipelineError> {
    v.ok_or_else(|| PipelineError::Precondition(format!("family {family} needs --{flag}")))
}

fn family_params(a: &ConstructArgs) -> Result<FamilyParams, PipelineError> {
    Ok(match a.family {
        FamilyArg::I => FamilyParams::I {
            n: need(a.n, "n", "i")?,
            l: need(a.l, "l", "i")? as usize,
            search_budget: a.search_budget,
            unchecked: a.beyond_bound,
        },
        FamilyArg::Ii => FamilyParams::II { r: need(a.r, "r", "ii")?, d: need(a.d, "d", "ii")? },
        FamilyArg::Iii => FamilyParams::III { l: need(a.l, "l", "iii")?, case: a.case.unwrap_or(1) },
        FamilyArg::Iv => FamilyParams::IV { l: need(a.l, "l", "iv")? },
    })
}

pub fn csv_row(doc: &Document, seconds: f64) -> String {
    let c = &doc.certificate;
    let f = &doc.source.code.field;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
        doc.source.family,
        f.characteristic(),
        f.degree(),
        doc.source.k,
        c.q,
        c.n,
        c.kq,
        c.d,
        c.c,
        c.flags.mds_eaqecc,
        c.flags.maximal_entanglement,
        c.distance.method,
        seconds
    )
}

fn write_output(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn cmd_construct(a: &ConstructArgs) -> i32 {
    let family = match family_params(a) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let k = a.k.unwrap_or(u32::from(a.family == FamilyArg::Iv));
    let req = Request { p: a.p, e: a.e, k, family, distance: a.budget.options() };
    let sides: &[Side] = if a.dual { &[Side::Code, Side::Dual] } else { &[Side::Code] };
    let start = Instant::now();
    let docs = match construct(&req, sides) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    let text = match a.format {
        Format::Json => {
            let values: Vec<Value> = docs.iter().map(Document::to_json).collect();
            let v = if values.len() == 1 { values.into_iter().next().unwrap() } else { Value::Array(values) };
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for d in &docs {
                s += &csv_row(d, seconds);
                s.push('\n');
            }
            s
        }
    };
    for d in &docs {
        eprintln!("{} ({} side)", d.certificate, d.source.side.as_str());
    }
    if let Err(e) = write_output(a.output.as_ref(), &text) {
        eprintln!("error: {e}");
        return 1;
    }
    0
}

fn cmd_verify(a: &VerifyArgs) -> i32 {
    let text = match fs::read_to_string(&a.path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", a.path.display());
            return 2;
        }
    };
    let docs = match serde_json::from_str::<Value>(&text).map_err(|e| e.to_string()).and_then(|v| {
        parse_documents(&v).map_err(|e| e.to_string())
    }) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let opts = a.budget.options();
    let mut ok = true;
    for (i, doc) in docs.iter().enumerate() {
        let report = verify(doc, &opts);
        println!("certificate {i}: {}", doc.certificate);
        print!("{report}");
        ok &= report.passed();
    }
    println!("{}", if ok { "verified" } else { "verification failed" });
    if ok {
        0
    } else {
        1
    }
}
