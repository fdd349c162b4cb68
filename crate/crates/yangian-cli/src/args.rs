use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "yangian",
    version,
    about = "Exact rectangular representations of the Yangians Y(sl_n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dimension of the representation.
    Dims(Common),
    /// List the Gelfand-Tsetlin states in canonical order.
    States(Common),
    /// Charge functions Psi^(k) of every state and node.
    Psi(Selection),
    /// Raising and lowering amplitudes of every valid move.
    Amplitudes(AmplitudeArgs),
    /// Matrices of the mode operators e_m, f_m and psi_m.
    Modes(ModeArgs),
    /// Run verification suites; exits with 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Rank parameter of sl_n.
    #[arg(long)]
    pub n: usize,
    /// Framing node, 1 <= p <= n - 1.
    #[arg(long)]
    pub p: usize,
    /// Highest weight multiple.
    #[arg(long)]
    pub lambda: usize,
    /// Equivariant parameter, written P/Q.
    #[arg(long, default_value = "1")]
    pub epsilon: String,
    /// Flavour parameter, written P/Q.
    #[arg(long, default_value = "0")]
    pub h: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Selection {
    #[command(flatten)]
    pub common: Common,
    /// Restrict the output to one state, given in pattern text form.
    #[arg(long)]
    pub pattern: Option<String>,
}

#[derive(Debug, Args)]
pub struct AmplitudeArgs {
    #[command(flatten)]
    pub selection: Selection,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 3)]
    pub mode_cutoff: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 3)]
    pub mode_cutoff: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Localization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Constraints,
    Psi,
    Hysteresis,
    Modes,
    Serre,
    Gelfand,
    Localization,
    Reductions,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Constraints => "constraints",
            Suite::Psi => "psi",
            Suite::Hysteresis => "hysteresis",
            Suite::Modes => "modes",
            Suite::Serre => "serre",
            Suite::Gelfand => "gelfand",
            Suite::Localization => "localization",
            Suite::Reductions => "reductions",
            Suite::All => "all",
        }
    }

    /// The suites run by `all`, in output order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Constraints,
                Suite::Psi,
                Suite::Hysteresis,
                Suite::Modes,
                Suite::Serre,
                Suite::Gelfand,
                Suite::Localization,
                Suite::Reductions,
            ],
            s => vec![s],
        }
    }
}
