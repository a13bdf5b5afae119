use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hsym_core::mub::MUB_TOL;
use hsym_core::sympgroup::DEFAULT_CAP;
use hsym_core::{DimensionProfile, Error};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "hsym", version, about = "Symplectic groups over Z_n products, Clifford normalizers and MUBs")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of the symplectic group, optionally with a full listing.
    SpOrder {
        #[arg(long, value_parser = parse_dims)]
        dims: DimensionProfile,
        #[arg(long, value_enum, default_value_t = Method::Closure)]
        method: Method,
        /// Write the group listing here.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
        cap: usize,
    },
    /// Runs both membership tests on a matrix file.
    SpCheck {
        #[arg(long, value_parser = parse_dims)]
        dims: DimensionProfile,
        file: PathBuf,
    },
    /// Compares the orbit of the standard column pair with the full set of admissible pairs.
    Orbit {
        #[arg(long, value_parser = parse_dims)]
        dims: DimensionProfile,
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
        cap: usize,
    },
    /// Checklist of commutation, coupling and image identities for the normalizer generators.
    HeisenbergVerify {
        #[arg(long, value_parser = parse_dims)]
        dims: DimensionProfile,
        #[arg(long, default_value_t = 4096, value_parser = parse_cap)]
        cap: usize,
    },
    /// Mutually unbiased bases in prime-power dimension.
    #[command(subcommand)]
    Mub(MubCommand),
}

#[derive(Subcommand, Debug)]
enum MubCommand {
    Generate {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = MUB_TOL, value_parser = parse_tol)]
        tol: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Closure,
    Brute,
    /// Runs both and compares.
    Both,
}

fn parse_dims(s: &str) -> Result<DimensionProfile, String> {
    DimensionProfile::parse(s).map_err(|e| e.to_string())
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be positive".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Resource = 3,
}

impl Status {
    pub fn of(err: &Error) -> Self {
        match err {
            Error::CapExceeded { .. } | Error::TooLarge { .. } | Error::DegreeTooLarge { .. } => Status::Resource,
            _ => Status::Usage,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("hsym: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    }
    let status = match cli.command {
        Command::SpOrder { dims, method, emit, cap } => commands::sp_order(&dims, method, emit.as_deref(), cap),
        Command::SpCheck { dims, file } => commands::sp_check(&dims, &file),
        Command::Orbit { dims, cap } => commands::orbit(&dims, cap),
        Command::HeisenbergVerify { dims, cap } => commands::heisenberg_verify(&dims, cap),
        Command::Mub(MubCommand::Generate { p, n, out }) => commands::mub_generate(p, n, out.as_deref()),
        Command::Mub(MubCommand::Verify { file, tol }) => commands::mub_verify(&file, tol),
    };
    ExitCode::from(status as u8)
}
