use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Capillary-gravity solitary waves with constant vorticity.
///
/// Every command writes its artifacts and a `<command>.manifest.json` into
/// `--out`. Exit codes: 0 success, 1 validation failure, 2 usage error,
/// 3 numerical failure, 4 I/O error.
#[derive(Debug, Parser)]
#[command(name = "capwave", version)]
pub struct Cli {
    /// JSON object of parameters (or a run manifest); explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Artifact directory, created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Branch speeds c+(k), c-(k) on a grid of negative frequencies (dispersion.csv).
    Dispersion {
        #[command(flatten)]
        params: ParamArgs,
        /// Most negative frequency [default: -4]
        #[arg(long, allow_negative_numbers = true)]
        k_min: Option<f64>,
        /// Frequency closest to zero, must be negative [default: -0.05]
        #[arg(long, allow_negative_numbers = true)]
        k_max: Option<f64>,
        /// Number of equally spaced frequencies [default: 200]
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Critical velocities and frequencies (critical.json).
    Critical {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Closed-form critical frequencies of the nondimensional quartic (radicals.json).
    Radicals {
        /// G = 1/V
        #[arg(long = "G", conflicts_with = "v", allow_negative_numbers = true)]
        g_recip: Option<f64>,
        /// V = sigma gamma^4 / g^3
        #[arg(long = "V", allow_negative_numbers = true)]
        v: Option<f64>,
    },
    /// Verified enclosure of the critical parameter V* (vstar.json).
    Vstar {
        /// Target enclosure width [default: 1e-9]
        #[arg(long, allow_negative_numbers = true)]
        width: Option<f64>,
    },
    /// Solitary wave at c = c* -/+ eps^2 (profile CSV and JSON sidecar).
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        wave: WaveArgs,
        /// Amplitude parameter in (0, 0.1] [default: 0.04]
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<f64>,
    },
    /// Solve along a ladder of eps and report NLS convergence (converge.csv, converge.json).
    Converge {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        wave: WaveArgs,
        /// Comma-separated eps values [default: 0.08,0.04,0.02,0.01]
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        eps_ladder: Option<Vec<f64>>,
        /// Half-width of the carrier window; defaults to |omega|/2
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
    },
    /// Run the property suite of every module (validate.json); exit 1 on any violation.
    Validate,
    /// f(V) and the number of focusing critical frequencies over log-spaced V (sweep.csv).
    Sweep {
        /// [default: 0.01]
        #[arg(long, allow_negative_numbers = true)]
        v_min: Option<f64>,
        /// [default: 0.5]
        #[arg(long, allow_negative_numbers = true)]
        v_max: Option<f64>,
        /// [default: 100]
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Physical parameters, each defaulting to 1.
#[derive(Debug, Args, Clone, Copy)]
pub struct ParamArgs {
    /// Gravity [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Surface tension [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Constant vorticity [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct WaveArgs {
    /// Dispersion branch: c1 (maximum of c+) or c2 (minimum of c-) [default: c2]
    #[arg(long)]
    pub branch: Option<String>,
    /// Sign of the envelope: + or - [default: +]
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Grid size (power of two); chosen automatically when absent
    #[arg(long, requires = "length")]
    pub n: Option<usize>,
    /// Period of the computational box
    #[arg(long, requires = "n", allow_negative_numbers = true)]
    pub length: Option<f64>,
    /// Newton tolerance on the residual norm [default: 1e-11]
    #[arg(long, allow_negative_numbers = true)]
    pub newton_tol: Option<f64>,
    /// Newton iteration cap per seed [default: 40]
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// analytic or finite_difference [default: analytic]
    #[arg(long)]
    pub jacobian: Option<String>,
    /// auto, dense or gmres [default: auto]
    #[arg(long)]
    pub linear_solver: Option<String>,
}
