//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::complex::{build_with, BuildOptions, TwoComplex};
use crate::error::{BuildError, MapError};
use crate::graph::enumerate_graphs;
use crate::maps::{check_fibration_conditions_with, phi_map, psi_map, FibrationOptions, Status};
use crate::verify::{check_simply_connected_with, FillingLimits, Limits, Verdict};

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const RESOURCES: i32 = 3;
    pub const UNKNOWN: i32 = 4;
    pub const REFUTED: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "pantscx", version, about = "Pant-decomposition complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Phi,
    Psi,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Source {
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub decorated: bool,
    /// Read a serialized complex instead of building one.
    #[arg(long = "in", conflicts_with_all = ["g", "n", "decorated"])]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_vertices: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the graphs of a surface type with their automorphism counts.
    Enumerate {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Build a complex and print its census.
    Build {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide simple connectedness.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// Build a cellular map and check the fibration conditions.
    Map {
        #[arg(value_enum)]
        kind: MapName,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_area: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Write a complex as text or DOT.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure(i32, String);

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Domain(_) => Failure(exit::DOMAIN, e.to_string()),
            BuildError::VertexCap { .. } => Failure(exit::RESOURCES, e.to_string()),
        }
    }
}

impl From<MapError> for Failure {
    fn from(e: MapError) -> Self {
        match e {
            MapError::Build(b) => b.into(),
            MapError::Domain(_)
            | MapError::GenusTooSmall(_)
            | MapError::NoSuchLeaf(_)
            | MapError::WrongComplexType { .. } => Failure(exit::DOMAIN, e.to_string()),
            _ => Failure(exit::REFUTED, e.to_string()),
        }
    }
}

fn load(source: &Source) -> Result<TwoComplex, Failure> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure(exit::IO, format!("{}: {e}", path.display())))?;
        return TwoComplex::parse(&text)
            .map_err(|e| Failure(exit::DOMAIN, format!("{}: {e}", path.display())));
    }
    let (Some(g), Some(n)) = (source.g, source.n) else {
        return Err(Failure(
            exit::DOMAIN,
            "either --in or both --g and --n are required".into(),
        ));
    };
    let opts = BuildOptions {
        decorated: source.decorated,
        threads: source.threads,
        vertex_cap: source.max_vertices,
    };
    Ok(build_with(g, n, &opts)?)
}

fn render(c: &TwoComplex, format: Format) -> String {
    match format {
        Format::Text => c.to_text(),
        Format::Dot => c.to_dot(),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Failure(exit::IO, format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Failure(exit::IO, e.to_string())),
    }
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(|e| Failure(exit::IO, e.to_string()))
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Trivial { .. } => exit::OK,
        Verdict::Unknown { .. } => exit::UNKNOWN,
        _ => exit::REFUTED,
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Enumerate { g, n } => {
            let graphs =
                enumerate_graphs(g, n).map_err(|e| Failure(exit::DOMAIN, e.to_string()))?;
            line(out, format!("g={g} n={n} count={}", graphs.len()))?;
            for (i, gr) in graphs.iter().enumerate() {
                line(
                    out,
                    format!(
                        "{i} aut={} key={}",
                        gr.automorphism_count(),
                        gr.canonical_key().digest()
                    ),
                )?;
            }
            Ok(exit::OK)
        }
        Command::Build {
            source,
            out: path,
            format,
        } => {
            let c = load(&source)?;
            line(out, c.census())?;
            if let Some(p) = &path {
                emit(out, Some(p), &render(&c, format))?;
            }
            Ok(exit::OK)
        }
        Command::Verify { source, max_cosets } => {
            let c = load(&source)?;
            let v = check_simply_connected_with(
                &c,
                Limits {
                    max_cosets,
                    max_time: None,
                },
            );
            line(out, &v)?;
            Ok(verdict_code(&v))
        }
        Command::Map {
            kind,
            g,
            n,
            out: path,
            max_area,
            max_cosets,
            threads,
        } => {
            let run = || -> Result<(String, String, i32), Failure> {
                let m = match kind {
                    MapName::Phi => phi_map(g, n)?,
                    MapName::Psi => psi_map(g)?,
                };
                let opts = FibrationOptions {
                    filling: FillingLimits {
                        max_area,
                        ..FillingLimits::default()
                    },
                    cosets: Limits {
                        max_cosets,
                        max_time: None,
                    },
                };
                let r = check_fibration_conditions_with(&m, &opts);
                let code = if r.count(Status::Failed) > 0 {
                    exit::REFUTED
                } else if r.count(Status::Unresolved) > 0 {
                    exit::UNKNOWN
                } else {
                    exit::OK
                };
                Ok((m.to_text(), r.to_string(), code))
            };
            let (map_text, report, code) = if threads == 0 {
                run()?
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Failure(exit::RESOURCES, e.to_string()))?;
                pool.install(run)?
            };
            if let Some(p) = &path {
                emit(out, Some(p), &map_text)?;
            }
            emit(out, None, &report)?;
            Ok(code)
        }
        Command::Export {
            source,
            out: path,
            format,
        } => {
            let c = load(&source)?;
            emit(out, path.as_ref(), &render(&c, format))?;
            Ok(exit::OK)
        }
    }
}

/// Runs one command; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                exit::DOMAIN
            } else {
                exit::OK
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
