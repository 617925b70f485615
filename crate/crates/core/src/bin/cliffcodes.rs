use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use cliffcodes::catalog::{
    analyze, load_bundle, make_pauli_bundle, save_bundle, survey, CatalogError, OutputFormat,
    RunConfig,
};
use cliffcodes::chartab::DEFAULT_PRIME_BOUND;
use cliffcodes::clifford::{CliffordContext, CliffordError};
use cliffcodes::group::DEFAULT_MAX_ORDER;
use cliffcodes::repn::UnitaryRep;

#[derive(Parser)]
#[command(name = "cliffcodes", version, about = "Construct Clifford codes of finite error groups and decide which are stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Largest prime tried for the modular character-table stage.
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    /// Abort closure beyond this many elements.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Only report codes of at least this dimension.
    #[arg(long, default_value_t = 0)]
    min_dim: u64,
    /// Only report codes that are not stabilizer codes.
    #[arg(long)]
    only_true_clifford: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a bundle defines an error group.
    Verify { bundle: PathBuf },
    /// Enumerate and classify every Clifford code of a bundle.
    Analyze {
        bundle: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write each projector as JSON into this directory.
        #[arg(long)]
        emit_projectors: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Show one code in detail.
    Inspect {
        bundle: PathBuf,
        /// Index of N in the sorted list of normal subgroups.
        #[arg(long)]
        normal: usize,
        /// Row of χ in the character table of N.
        #[arg(long = "char")]
        chi: usize,
    },
    /// Analyze every bundle in a directory and print condensed rows.
    Survey {
        dir: PathBuf,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Write the n-qubit Pauli group bundle.
    MakePauli {
        #[arg(long)]
        qubits: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Exit code 1: verification failure or internal inconsistency.
#[derive(Debug)]
struct Inconsistent;

impl std::fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("inconsistency")
    }
}

impl std::error::Error for Inconsistent {}

fn config(common: &Common, format: Format) -> RunConfig {
    RunConfig {
        format: format.into(),
        min_dim: common.min_dim,
        only_true_clifford: common.only_true_clifford,
        prime_bound: common.prime_bound,
        max_group_order: common.max_order,
        ..RunConfig::default()
    }
}

fn verify(path: &Path) -> anyhow::Result<()> {
    let bundle = load_bundle(path)?;
    let group = bundle.default_group()?;
    let cert = UnitaryRep::new(group).verify_error_group();
    println!("{}", serde_json::to_string_pretty(&cert)?);
    if !cert.is_valid() {
        return Err(anyhow::Error::new(CatalogError::Verification(cert)));
    }
    Ok(())
}

fn inspect(path: &Path, k: usize, j: usize) -> anyhow::Result<()> {
    let bundle = load_bundle(path)?;
    let rep = UnitaryRep::new(bundle.default_group()?);
    let ctx = CliffordContext::new(rep)?;
    if k >= ctx.normals().len() {
        bail!("normal subgroup {k} out of range (0..{})", ctx.normals().len());
    }
    if j >= ctx.normal(k).table().len() {
        bail!("character {j} out of range (0..{})", ctx.normal(k).table().len());
    }
    let code = ctx.code(k, j)?;
    let c = ctx.classify(&code)?;
    let g = ctx.group();
    let words = |h: &cliffcodes::group::Subgroup| {
        g.generating_set(h)
            .into_iter()
            .map(|x| g.word_string(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("N = <{}>, |N| = {}", words(code.normal()), code.normal().order());
    let values: Vec<String> = code.chi_values().iter().map(ToString::to_string).collect();
    println!("chi = [{}]", values.join(", "));
    println!("chi(1) = {}, multiplicity = {}, dimQ = {}", code.chi_degree(), code.multiplicity(), code.dim());
    println!(
        "N_Z = <{}>, |N_Z| = {}{}",
        words(&c.extension.subgroup),
        c.extension.subgroup.order(),
        if c.extension.unchanged { " (unchanged)" } else { "" }
    );
    println!("P =\n{:?}", code.projector());
    println!("|T| = {}, Z(theta) = <{}>, |Z(theta)| = {}", c.inertia.inertia.order(), words(&c.inertia.quasikernel), c.inertia.quasikernel.order());
    println!(
        "admissible family: {} members, maximal order {}",
        c.family.members.len(),
        c.family.maximal_members().next().map_or(1, |a| a.order())
    );
    println!("tests: {:?}", c.verdict.tests);
    println!("verdict: {}", c.verdict.kind.as_str());
    if let Some(w) = &c.verdict.witness {
        println!("witness A = <{}>, |A| = {}", words(&w.subgroup), w.subgroup.order());
        for (&a, t) in w.subgroup.members().iter().zip(&w.theta) {
            println!("  theta({}) = {}", g.word_string(a), t);
        }
    }
    for e in &c.verdict.evidence {
        println!(
            "  |A| = {}, |N_Z|/|A| = {}, |G|/|A| = {}, chi(1)^2 = {}, stabilizer dim = {}",
            e.a_order, e.normal_quotient, e.group_quotient, e.target, e.stabilizer_dim
        );
    }
    println!(
        "census: |G| = {}, |T| = {}, |Z(theta)| = {}, undetectable = {}",
        c.census.group_order, c.census.inertia_order, c.census.quasikernel_order, c.census.undetectable
    );
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Verify { bundle } => verify(&bundle),
        Command::Analyze {
            bundle,
            format,
            emit_projectors,
            common,
        } => {
            let mut cfg = config(&common, format);
            cfg.inputs = vec![bundle.clone()];
            cfg.emit_projectors = emit_projectors;
            let b = load_bundle(&bundle)?;
            let report = analyze(&b, &cfg)?;
            print!("{}", report.render(cfg.format));
            Ok(())
        }
        Command::Inspect { bundle, normal, chi } => inspect(&bundle, normal, chi),
        Command::Survey {
            dir,
            jobs,
            format,
            common,
        } => {
            let mut cfg = config(&common, format);
            cfg.jobs = jobs;
            cfg.inputs = vec![dir.clone()];
            let report = survey(&dir, &cfg)?;
            print!("{}", report.render(cfg.format));
            for f in &report.failures {
                eprintln!("{}: {}", f.path, f.error);
            }
            if report.failures.iter().any(|f| !f.input_error) {
                return Err(anyhow::Error::new(Inconsistent));
            }
            if !report.failures.is_empty() {
                bail!("{} bundle(s) could not be read", report.failures.len());
            }
            Ok(())
        }
        Command::MakePauli { qubits, output } => {
            let bundle = make_pauli_bundle(qubits)?;
            save_bundle(&bundle, &output).with_context(|| format!("writing {}", output.display()))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Inconsistent>().is_some() {
        return 1;
    }
    if let Some(e) = err.downcast_ref::<CatalogError>() {
        return if e.is_input_error() { 2 } else { 1 };
    }
    if let Some(e) = err.downcast_ref::<CliffordError>() {
        return match e {
            CliffordError::NotConstituent { .. } | CliffordError::Group(_) => 2,
            _ => 1,
        };
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
