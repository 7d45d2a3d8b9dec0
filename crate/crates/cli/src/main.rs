use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use waveset_core::construct::Depths;

mod commands;
mod figure;
mod report;

use figure::FigureFormat;
use report::{Report, Status};

/// Exact construction and verification of dyadic wavelet sets.
#[derive(Parser, Debug)]
#[command(name = "waveset", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a set or spectrum against its defining conditions.
    #[command(subcommand)]
    Verify(Verify),
    /// Build scaling sets and wavelet sets.
    #[command(subcommand)]
    Construct(Construct),
    /// Dimension function of a wavelet spectrum and its four conditions.
    Dimfun {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        depth: u32,
    },
    /// Calderón sum of a squared spectrum.
    Calderon { file: PathBuf },
    /// Translation equation for an odd shift.
    Tq {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: i64,
    },
    /// Orthonormal-wavelet certification of a real step transform.
    Orthonormal { file: PathBuf },
    /// The family 1 on [-1, -b) ∪ [b, 1).
    Psib {
        #[arg(long)]
        b: String,
    },
    /// Existence of a wavelet set for a planar dilation and lattice.
    Msf2d {
        #[arg(long)]
        matrix: PathBuf,
        /// Lattice basis file, or `id` for the integer lattice.
        #[arg(long, default_value = "id")]
        lattice: String,
    },
    /// Lattice-point counts in dilated discs against a bound C.
    Lce {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "id")]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        jmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        jmax: i64,
        #[arg(long)]
        c: String,
    },
    /// Render a set, step function or dimension window.
    Plot {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: FigureFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    ScalingSet { file: PathBuf },
    WaveletSet { file: PathBuf },
    Spectrum { file: PathBuf },
}

#[derive(Args, Debug)]
struct DepthArgs {
    #[arg(long, default_value_t = 40)]
    depth_n: u32,
    #[arg(long, default_value_t = 40)]
    depth_j: u32,
}

impl DepthArgs {
    fn depths(&self) -> Depths {
        Depths {
            n: self.depth_n,
            j: self.depth_j,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    ScalingSet {
        file: PathBuf,
        #[command(flatten)]
        depths: DepthArgs,
    },
    Rze {
        #[arg(long)]
        spectrum: PathBuf,
        #[command(flatten)]
        depths: DepthArgs,
    },
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Verify(Verify::ScalingSet { .. }) => "verify scaling-set",
        Command::Verify(Verify::WaveletSet { .. }) => "verify wavelet-set",
        Command::Verify(Verify::Spectrum { .. }) => "verify spectrum",
        Command::Construct(Construct::ScalingSet { .. }) => "construct scaling-set",
        Command::Construct(Construct::Rze { .. }) => "construct rze",
        Command::Dimfun { .. } => "dimfun",
        Command::Calderon { .. } => "calderon",
        Command::Tq { .. } => "tq",
        Command::Orthonormal { .. } => "orthonormal",
        Command::Psib { .. } => "psib",
        Command::Msf2d { .. } => "msf2d",
        Command::Lce { .. } => "lce",
        Command::Plot { .. } => "plot",
    }
}

fn run(command: &Command) -> waveset_core::Result<Report> {
    match command {
        Command::Verify(Verify::ScalingSet { file }) => commands::verify_scaling_set(file),
        Command::Verify(Verify::WaveletSet { file }) => commands::verify_wavelet_set_cmd(file),
        Command::Verify(Verify::Spectrum { file }) => commands::verify_spectrum(file),
        Command::Construct(Construct::ScalingSet { file, depths }) => {
            commands::construct_scaling(file, depths.depths())
        }
        Command::Construct(Construct::Rze { spectrum, depths }) => commands::construct_rze(spectrum, depths.depths()),
        Command::Dimfun { file, depth } => commands::dimfun(file, *depth),
        Command::Calderon { file } => commands::calderon(file),
        Command::Tq { file, alpha } => commands::tq(file, *alpha),
        Command::Orthonormal { file } => commands::orthonormal(file),
        Command::Psib { b } => commands::psib(b),
        Command::Msf2d { matrix, lattice } => commands::msf2d(matrix, lattice),
        Command::Lce {
            matrix,
            lattice,
            jmin,
            jmax,
            c,
        } => commands::lce(matrix, lattice, *jmin, *jmax, c),
        Command::Plot { file, format, out } => commands::plot(file, *format, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let report = Report::new("usage", Status::Error).with("message", serde_json::json!(e.kind().to_string()));
            emit(&report);
            return ExitCode::from(Status::Error.exit_code() as u8);
        }
    };
    let label = name(&cli.command);
    let report = run(&cli.command).unwrap_or_else(|e| Report::error(label, &e));
    emit(&report);
    ExitCode::from(report.status.exit_code() as u8)
}

/// A closed pipe on stdout is not worth a panic; the exit code still stands.
fn emit(report: &Report) {
    let _ = writeln!(io::stdout().lock(), "{}", report.render());
}
