//! `wallcx`: build complexes and posets of Wall pairings, compute their
//! homology and run the verification suites.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wallcx::builders::{
    build_kpi, build_l, build_m, build_unimodular_complex, EnumerationBounds, MReading,
    BUILDER_VERSION,
};
use wallcx::homology::{homology, reduced_homology};
use wallcx::poset::{ComplexData, PosetData, SequencePoset, SimplicialComplex};
use wallcx::verify::{run_suite, Suite, VerifyOptions};
use wallcx::wall::{stable_range, StandardWallPairing};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

/// Environment variable sizing the work pool.
const THREADS_ENV: &str = "WALLCX_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "wallcx",
    version,
    about = "Complexes of Wall pairings and their integral homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate a bounded complex or sequence poset and write it as JSON.
    Build(BuildArgs),
    /// Integral homology of a complex or of the order complex of a poset.
    Homology(HomologyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the homological stability range floor((g - 3) / 2).
    StableRange {
        #[arg(long)]
        g: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Kpi,
    Unimodular,
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reading {
    DualToOwn,
    OrthogonalToAll,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    g: usize,
    /// Sup-norm bound on integer coordinates.
    #[arg(long, default_value_t = 1)]
    bound: i64,
    #[arg(long, default_value_t = 3)]
    maxdim: usize,
    /// Longest sequence kept in L and M (defaults to min(g, 4)).
    #[arg(long)]
    maxlen: Option<usize>,
    /// Reading of the duality condition in M.
    #[arg(long, value_enum, default_value_t = Reading::DualToOwn)]
    reading: Reading,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct HomologyArgs {
    input: PathBuf,
    #[arg(long = "through-dim", alias = "maxdim", default_value_t = 3)]
    through_dim: usize,
    #[arg(long)]
    reduced: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    fail(EXIT_SOFTWARE, e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(EXIT_IO, e.to_string())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn cmd_build(a: &BuildArgs) -> Result<u8, Failure> {
    let maxlen = a.maxlen.unwrap_or(a.g.min(4));
    let bounds = EnumerationBounds::new(a.bound, maxlen, a.maxdim)
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let p = StandardWallPairing::new(a.g);
    let reading = match a.reading {
        Reading::DualToOwn => MReading::DualToOwn,
        Reading::OrthogonalToAll => MReading::OrthogonalToAll,
    };
    let kind = match a.kind {
        Kind::Kpi => "kpi",
        Kind::Unimodular => "unimodular",
        Kind::L => "L",
        Kind::M => "M",
    };
    let mut provenance = json!({
        "tool": "wallcx",
        "version": BUILDER_VERSION,
        "kind": kind,
        "g": a.g,
        "bound": a.bound,
        "max_dim": a.maxdim,
        "max_seq_len": maxlen,
    });
    let body = match a.kind {
        Kind::Kpi => json!({"complex": build_kpi(&p, &bounds).map_err(internal)?.1.to_data()}),
        Kind::Unimodular => {
            json!({"complex": build_unimodular_complex(a.g, &bounds).map_err(internal)?.1.to_data()})
        }
        Kind::L | Kind::M => {
            let poset = if matches!(a.kind, Kind::L) {
                build_l(&p, &bounds)
            } else {
                provenance["reading"] = json!(reading);
                build_m(&p, &bounds, reading)
            }
            .map_err(internal)?;
            if !poset.satisfies_chain_condition() {
                return Err(internal("built poset violates the chain condition"));
            }
            json!({"poset": poset.to_data()})
        }
    };
    let mut doc = json!({"provenance": provenance});
    doc.as_object_mut()
        .expect("object")
        .extend(body.as_object().expect("object").clone());
    emit(a.out.as_deref(), &pretty(&doc))?;
    Ok(0)
}

/// Reads `{"complex": …}`, `{"poset": …}` or a bare complex. Faces are
/// closed downward, so listing facets is enough.
fn load_complex(path: &Path, max_dim: usize) -> Result<SimplicialComplex, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let bad = |e: &dyn std::fmt::Display| fail(EXIT_DATA, format!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
    if let Some(p) = v.get("poset") {
        let data: PosetData = serde_json::from_value(p.clone()).map_err(|e| bad(&e))?;
        let poset = SequencePoset::from_data(data).map_err(|e| bad(&e))?;
        return Ok(poset.order_complex(Some(max_dim + 1)));
    }
    let c = v.get("complex").unwrap_or(&v);
    let data: ComplexData = serde_json::from_value(c.clone()).map_err(|e| bad(&e))?;
    SimplicialComplex::from_generators(data.vertices, data.faces).map_err(|e| bad(&e))
}

fn cmd_homology(a: &HomologyArgs) -> Result<u8, Failure> {
    let k = load_complex(&a.input, a.through_dim)?;
    let h = if a.reduced {
        reduced_homology(&k, a.through_dim)
    } else {
        homology(&k, a.through_dim)
    }
    .map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    let text = match a.format {
        Format::Json => pretty(&serde_json::to_value(&h).map_err(internal)?),
        Format::Csv => h.to_csv(),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|e: wallcx::verify::UnknownSuite| fail(EXIT_USAGE, e.to_string()))?;
    let report = run_suite(
        suite,
        &VerifyOptions {
            seed: a.seed,
            budget: a.budget,
        },
    )
    .map_err(internal)?;
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(a.out.as_deref(), &text)?;
    for c in &report.checks {
        eprintln!("{:<24} {}", c.id, c.verdict);
    }
    Ok(report.exit_code() as u8)
}

fn cmd_stable_range(g: usize) -> u8 {
    let r = stable_range(g);
    if r < 0 {
        println!("{r}");
        println!("W_{g}: empty stable range, no degree is covered");
    } else {
        println!("{r}");
        println!("W_{g}: homology of the diffeomorphism group is stable in degrees k <= floor((g - 3) / 2) = {r}");
    }
    0
}

fn configure_pool() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            fail(
                EXIT_USAGE,
                format!("{THREADS_ENV} must be a positive integer"),
            )
        })?;
        if n == 0 {
            return Err(fail(
                EXIT_USAGE,
                format!("{THREADS_ENV} must be a positive integer"),
            ));
        }
        wallcx::par::init_pool(n);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = || -> Result<u8, Failure> {
        configure_pool()?;
        match &cli.command {
            Command::Build(a) => cmd_build(a),
            Command::Homology(a) => cmd_homology(a),
            Command::Verify(a) => cmd_verify(a),
            Command::StableRange { g } => Ok(cmd_stable_range(*g)),
        }
    };
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("wallcx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
