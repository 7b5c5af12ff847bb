use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use fkm::pipeline::{
    cmd_focal, cmd_invariants, cmd_rep, cmd_spectrum, cmd_system, cmd_table,
    cmd_verify, CommandOutput, FocalOp, SystemSource,
};
use fkm::tol;

#[derive(Parser)]
#[command(
    name = "fkm",
    about = "Clifford systems, the associated quartic, and its focal geometry",
    version
)]
struct Cli {
    /// Seed for all randomized sampling; FKM_SEED is used when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the JSON report (or artifact, for construction commands).
    #[arg(long, global = true)]
    json: bool,
    /// Write the report or artifact to a file; .json and .csv pick the format.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Number of anticommuting elements is m + 1.
    #[arg(long)]
    m: Option<u32>,
    /// Number of irreducible summands.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Orientation per summand, e.g. "+,-" or "1,-1".
    #[arg(long, value_delimiter = ',', value_parser = parse_sign, allow_hyphen_values = true)]
    signs: Option<Vec<i8>>,
    /// Read the system from a JSON file instead of building it.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["m", "k", "signs"])]
    system: Option<PathBuf>,
}

impl SystemArgs {
    fn source(&self) -> Result<SystemSource, String> {
        match (&self.system, self.m) {
            (Some(path), _) => Ok(SystemSource::File(path.clone())),
            (None, Some(m)) => Ok(SystemSource::Spec {
                m,
                k: self.k,
                signs: self.signs.clone(),
            }),
            (None, None) => Err("pass --m (with optional --k/--signs) or --system <file>".into()),
        }
    }
}

fn parse_sign(raw: &str) -> Result<i8, String> {
    match raw.trim() {
        "+" | "1" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(format!("bad sign {other:?}; use + or -")),
    }
}

fn parse_level(raw: &str) -> Result<f64, String> {
    let v = raw
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad level {raw:?}: {e}"))?;
    if v <= -1.0 || v >= 1.0 {
        return Err(format!("level {v} is not strictly between -1 and 1"));
    }
    Ok(v)
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the irreducible generator family for one m.
    Rep {
        #[arg(long)]
        m: u32,
    },
    /// Build a Clifford system and emit it with its invariants.
    System {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Multiplicity and equivalence-class table over a range of (m, k).
    Table {
        #[arg(long, default_value_t = 9)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Check the quartic's differential identities and the span identities.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = tol::VERIFY_DEFAULT)]
        tol: f64,
    },
    /// Principal curvature clusters on level hypersurfaces.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated levels strictly between -1 and 1.
        #[arg(
            long,
            value_delimiter = ',',
            value_parser = parse_level,
            allow_hyphen_values = true,
            default_value = "-0.5,0,0.5"
        )]
        levels: Vec<f64>,
    },
    /// Run the scripted focal-point scenarios.
    Invariants {
        /// One scenario by name; all of them when absent.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Focal-manifold computations at constructed points.
    Focal {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        op: FocalOp,
    },
}

fn run(cli: &Cli, seed: u64) -> Result<CommandOutput, fkm::FkmError> {
    match &cli.command {
        Command::Rep { m } => cmd_rep(*m, seed),
        Command::System { system } => {
            let source = system.source().map_err(fkm::FkmError::Parse)?;
            cmd_system(&source, seed)
        }
        Command::Table { m_max, k_max } => cmd_table(*m_max, *k_max, seed),
        Command::Verify { system, samples, tol } => {
            let source = system.source().map_err(fkm::FkmError::Parse)?;
            cmd_verify(&source, *samples, *tol, seed)
        }
        Command::Spectrum { system, levels } => {
            let source = system.source().map_err(fkm::FkmError::Parse)?;
            cmd_spectrum(&source, levels, seed)
        }
        Command::Invariants { scenario } => cmd_invariants(scenario.as_deref(), seed),
        Command::Focal { system, op } => {
            let source = system.source().map_err(fkm::FkmError::Parse)?;
            cmd_focal(&source, *op, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| std::env::var("FKM_SEED").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(7);
    let started = Instant::now();
    let output = match run(&cli, seed) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = started.elapsed();

    if cli.json {
        match &output.artifact {
            Some(artifact) => print!("{artifact}"),
            None => print!("{}", output.report.to_json()),
        }
    } else {
        print!("{}", output.report.to_text(Some(elapsed)));
    }

    if let Some(path) = &cli.out {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let payload = match (ext, &output.artifact) {
            ("json", Some(artifact)) => artifact.clone(),
            ("json", None) => output.report.to_json(),
            ("csv", _) => output.report.to_csv(),
            (_, _) => output.report.to_text(None),
        };
        if let Err(e) = std::fs::write(path, payload) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    if output.report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
