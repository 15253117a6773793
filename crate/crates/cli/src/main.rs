//! `kol31`: generate sequences, verify, render windows and compute spectra.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error,
//! 3 resource cap exceeded.

mod render;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kol31::diffraction::{
    deformation_params, periodicity_check, periodicity_peaks, spectrum_csv, spectrum_table, Deformation, Method,
    MethodChoice, SpectrumResources,
};
use kol31::io::atomic_write;
use kol31::modelset::{sigma_kol_sites, sites_csv};
use kol31::sequences::{block_fixed_point, format_bits, format_letters, kol_selfread};
use kol31::Error;
use serde_json::{json, Value};

pub const MAX_N: u64 = 10_000_000;
pub const MAX_DEPTH: u64 = 40;
pub const MAX_SAMPLES: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(name = "kol31", version, about = "Kolakoski-(3,1) model set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a prefix of Kol(p,q), its block word, or the site list.
    Generate(GenerateArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Render a window, its boundary or the lattice tiling.
    Render(RenderArgs),
    /// Compute the diffraction spectrum table.
    Diffract(DiffractArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    q: u32,
    /// Number of letters (or blocks, or sites).
    #[arg(long, default_value_t = 100)]
    n: u64,
    /// Write the block word over A, B, C instead of the digits.
    #[arg(long)]
    blocks: bool,
    /// `csv` writes the site list of ΣKol(3,1).
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Points,
    Rhombus,
    Sequence,
    Density,
    Tiling,
    Subset,
    Symmetry,
    Deformation,
    Periodicity,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Letters or sites.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    /// Half-length of the range [−L, L].
    #[arg(long = "L", default_value_t = 100_000.0)]
    pub l: f64,
    #[arg(long, default_value_t = 30)]
    pub depth: u32,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
    C,
    #[value(name = "AB")]
    Ab,
    #[value(name = "Omega")]
    Omega,
    Boundary,
    Tiling,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, value_enum, ignore_case = true, default_value_t = Which::Ab)]
    pub which: Which,
    #[arg(long, default_value_t = 16)]
    pub depth: u32,
    /// Image width in pixels.
    #[arg(long, default_value_t = 1024)]
    pub width: usize,
    /// `csv` writes the point cloud instead of the image.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value = "render.pgm")]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Params {
    None,
    Equal,
    Integer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Window,
    Sum,
    Both,
}

#[derive(Args, Debug)]
struct DiffractArgs {
    #[arg(long, value_enum, default_value_t = Params::None)]
    params: Params,
    #[arg(long, default_value_t = 3)]
    bound: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Sum)]
    method: MethodArg,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long = "L", default_value_t = 50_000.0)]
    l: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add the exact bracket terms and numeric period comparison to the summary.
    #[arg(long)]
    check_periodicity: bool,
    /// CSV path; the JSON summary goes to `<out>.json`. Without it the CSV goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 3,
            Error::InvalidArgument(_)
            | Error::DegenerateAlphabet(_)
            | Error::UnknownDeformation(_)
            | Error::CosetNotFound { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

pub fn check_cap(what: &'static str, value: u64, cap: u64) -> Result<(), Failure> {
    if value > cap {
        Err(Error::ResourceLimit { what, value, cap }.into())
    } else {
        Ok(())
    }
}

pub fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(atomic_write(p, text.as_bytes())?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(a: &GenerateArgs) -> Result<(), Failure> {
    check_cap("n", a.n, MAX_N)?;
    let n = a.n as usize;
    let text = match a.format {
        Some(Format::Csv) => {
            if (a.p, a.q) != (3, 1) {
                return Err(usage("the site list exists for p = 3, q = 1 only"));
            }
            sites_csv(&sigma_kol_sites(n, 0)?, 0)
        }
        Some(f) => return Err(usage(format!("generate does not write {f:?}"))),
        None if a.blocks => {
            if (a.p, a.q) != (3, 1) {
                return Err(usage("the block word exists for p = 3, q = 1 only"));
            }
            format_letters(&block_fixed_point(n)?)
        }
        None => format_bits(&kol_selfread(a.p, a.q, n)?),
    };
    write_or_print(a.out.as_ref(), &text)
}

fn diffract(a: &DiffractArgs) -> Result<(), Failure> {
    check_cap("samples", a.samples, MAX_SAMPLES)?;
    let kind = match a.params {
        Params::None => Deformation::None,
        Params::Equal => Deformation::EqualLengths,
        Params::Integer => Deformation::IntegerLengths,
    };
    let method = match a.method {
        MethodArg::Window => MethodChoice::Window,
        MethodArg::Sum => MethodChoice::Sum,
        MethodArg::Both => MethodChoice::Both,
    };
    let params = deformation_params(kind);
    let res = SpectrumResources {
        samples: a.samples as usize,
        range: a.l,
        seed: a.seed,
    };
    let table = spectrum_table(a.bound, &params, method, res)?;
    let mut summary = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "diffract",
        "params": kind.to_string(),
        "a": kol31::report::sig12(params.a_num),
        "b": kol31::report::sig12(params.b()),
        "bound": a.bound,
        "method": format!("{:?}", a.method).to_lowercase(),
        "samples": a.samples,
        "L": a.l,
        "seed": a.seed,
        "peaks": table.len(),
    });
    let mut ok = true;
    if method == MethodChoice::Both {
        let mut worst: f64 = 0.0;
        for w in table.iter().filter(|e| e.method == Method::WindowIntegral) {
            if let Some(s) = table
                .iter()
                .find(|e| e.method == Method::ExponentialSum && e.index == w.index)
            {
                worst = worst.max((w.amplitude - s.amplitude).norm());
            }
        }
        summary["max_cross_method_difference"] = json!(kol31::report::sig12(worst));
        summary["cross_method_agreement"] = json!(worst <= 0.01);
    }
    if a.check_periodicity {
        let r = periodicity_check(&params, &periodicity_peaks(), 1, a.l)?;
        let brackets: Vec<Value> = ["physical", "a_term", "b_term"]
            .iter()
            .zip(&r.brackets)
            .map(|(name, v)| json!({"term": name, "exact": v.to_string(), "zero": v.is_zero()}))
            .collect();
        let periodic = r.brackets_zero && r.max_diff <= 0.01;
        // the undeformed spectrum is expected not to be periodic
        let expected = if kind == Deformation::None { !periodic } else { periodic };
        ok &= expected;
        summary["periodicity"] = json!({
            "shift": r.shift,
            "period": kol31::report::sig12(r.period),
            "brackets": brackets,
            "max_difference": kol31::report::sig12(r.max_diff),
            "periodic": periodic,
            "status": if expected { "pass" } else { "fail" },
        });
    }
    let csv = spectrum_csv(&table);
    match &a.out {
        Some(p) => {
            atomic_write(p, csv.as_bytes())?;
            let mut side = p.as_os_str().to_owned();
            side.push(".json");
            let text = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
            atomic_write(std::path::Path::new(&side), text.as_bytes())?;
        }
        None => {
            print!("{csv}");
            eprintln!("{}", serde_json::to_string_pretty(&summary).map_err(Error::from)?);
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "periodicity check failed".into(),
        })
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("KOL_MAX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("KOL_MAX_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Verify(a) => suites::verify(a),
        Command::Render(a) => render::render(a),
        Command::Diffract(a) => diffract(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("kol31: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
