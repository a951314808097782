mod scan;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use starlike_core::affine::ConstructionInput;
use starlike_core::catalog::{build, Instance, InstanceSpec};
use starlike_core::permgroup::ENUMERATION_CAP;

use crate::verify::{Check, VerifyOptions};

#[derive(Parser)]
#[command(name = "starlike", version, about = "Build and check designs, groups and starlike bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog instance and write design.json, groups.json and graph.dot.
    Construct(ConstructArgs),
    /// Run checks on instance directories.
    Verify(VerifyArgs),
    /// List parameter triples (k, l, r) that pass the divisibility conditions.
    ScanArrays(ScanArgs),
    /// Write the incidence graph of an instance in DOT format.
    ExportDot(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    AffineSpace,
    Selfdual,
    Construction,
    Degenerate,
    Grid,
    Complete,
    CycleSubdivision,
    CompleteBipartite,
    FromFile,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum, required_unless_present = "spec")]
    kind: Option<Kind>,
    /// JSON instance spec, or a construction input {"d", "p", "G0_generators", "M1_basis"}.
    #[arg(long, conflicts_with = "kind")]
    spec: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    /// Comma-separated vector for selfdual.
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<u32>>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Instance directory for from_file.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directories written by `construct`.
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// Checks to run, in order. Defaults to all of them.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Distance for local_dt and r2_analysis. Defaults to the diameter.
    #[arg(long)]
    s: Option<usize>,
    /// Seed for sampled intersection-array checks on large graphs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Groups up to this order are also enumerated element by element.
    #[arg(long, default_value_t = ENUMERATION_CAP)]
    max_enumeration: usize,
    /// Replace G by the group with these generators, in cycle notation.
    #[arg(long = "g-gen")]
    g_gens: Vec<String>,
    /// Replace N by the group with these generators, in cycle notation.
    #[arg(long = "n-gen")]
    n_gens: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    /// Block size range, `a..b` inclusive or a single value.
    #[arg(long, default_value = "2..8")]
    k: String,
    #[arg(long, default_value = "2..4")]
    l: String,
    #[arg(long, default_value = "3..8")]
    r: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means some check failed; `Err` is an input error.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::ScanArrays(args) => scan_arrays(args),
        Command::ExportDot(args) => {
            let inst = load(&args.instance)?;
            write_or_print(args.out.as_deref(), &inst.dot())?;
            Ok(true)
        }
    }
}

fn construct(args: ConstructArgs) -> Result<bool> {
    let spec = match &args.spec {
        Some(path) => read_spec(path)?,
        None => spec_from_flags(&args)?,
    };
    spec.validate()?;
    let inst = build(&spec)?;
    inst.write_to(&args.out)?;
    println!(
        "{}: {} points, {} blocks, {} vertices, |G| = {}, |N| = {} -> {}",
        inst.name,
        inst.design.v(),
        inst.design.b(),
        inst.design.vertex_count(),
        inst.g.order(),
        inst.n.order(),
        args.out.display()
    );
    Ok(true)
}

fn read_spec(path: &Path) -> Result<InstanceSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match serde_json::from_str::<InstanceSpec>(&text) {
        Ok(spec) => Ok(spec),
        Err(spec_err) => match serde_json::from_str::<ConstructionInput>(&text) {
            Ok(input) => Ok(InstanceSpec::Construction(input)),
            Err(_) => Err(spec_err).with_context(|| format!("parsing {}", path.display())),
        },
    }
}

fn spec_from_flags(a: &ConstructArgs) -> Result<InstanceSpec> {
    fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T> {
        value.with_context(|| format!("{kind} needs --{flag}"))
    }
    let kind = a.kind.expect("clap requires --kind without --spec");
    Ok(match kind {
        Kind::AffineSpace => InstanceSpec::AffineSpace {
            d: need(a.d, "d", "affine_space")?,
            p: need(a.p, "p", "affine_space")?,
        },
        Kind::Selfdual => InstanceSpec::Selfdual {
            d: need(a.d, "d", "selfdual")?,
            p: need(a.p, "p", "selfdual")?,
            u: a.u.clone(),
        },
        Kind::Construction => bail!("construction needs --spec with a construction input file"),
        Kind::Degenerate => InstanceSpec::Degenerate {
            k: need(a.k, "k", "degenerate")?,
            l: need(a.l, "l", "degenerate")?,
        },
        Kind::Grid => InstanceSpec::Grid {
            k: need(a.k, "k", "grid")?,
            l: need(a.l, "l", "grid")?,
        },
        Kind::Complete => InstanceSpec::Complete {
            v: need(a.v, "v", "complete")?,
        },
        Kind::CycleSubdivision => InstanceSpec::CycleSubdivision {
            l: need(a.l, "l", "cycle_subdivision")?,
        },
        Kind::CompleteBipartite => InstanceSpec::CompleteBipartite {
            n: need(a.n, "n", "complete_bipartite")?,
            m: need(a.m, "m", "complete_bipartite")?,
        },
        Kind::FromFile => InstanceSpec::FromFile {
            dir: a.dir.clone().context("from_file needs --dir")?,
        },
    })
}

fn load(dir: &Path) -> Result<Instance> {
    Instance::read_from(dir).with_context(|| format!("loading instance {}", dir.display()))
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let checks = if args.checks.is_empty() { Check::ALL.to_vec() } else { args.checks.clone() };
    let opts = VerifyOptions {
        s: args.s,
        seed: args.seed,
        max_enumeration: args.max_enumeration,
    };
    let mut loaded = Vec::new();
    for dir in &args.instances {
        let mut inst = load(dir)?;
        verify::override_groups(&mut inst, &args.g_gens, &args.n_gens)
            .with_context(|| format!("replacing groups of {}", dir.display()))?;
        loaded.push((dir.clone(), inst));
    }
    let report = verify::run(&loaded, &checks, &opts);
    print!("{}", report.summary());
    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&report)? + "\n";
        fs::write(out, json).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(report.passed)
}

fn scan_arrays(args: ScanArgs) -> Result<bool> {
    let rows = scan::scan(scan::parse_range(&args.k)?, scan::parse_range(&args.l)?, scan::parse_range(&args.r)?);
    let text = match args.format {
        Format::Csv => scan::to_csv(&rows)?,
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    write_or_print(args.out.as_deref(), &text)?;
    Ok(true)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
