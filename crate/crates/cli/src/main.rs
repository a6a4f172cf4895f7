mod commands;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{assemble, render_text};

#[derive(Parser)]
#[command(name = "lvkit", version, about = "Exact computations around the Lawrence–Venkatesh method")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Leave the timing block out of the report.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

/// Place and variant flags shared by `find-q` and `check-q`.
#[derive(Args, Debug, Clone)]
pub struct PlaceArgs {
    /// Genus of the curve (at least 2).
    #[arg(long)]
    pub genus: u32,

    /// Condition set: new, proposition or original.
    #[arg(long, default_value = "new")]
    pub variant: String,

    /// Residue field cardinality q_v of the place. Without it the check asks
    /// whether some unramified place of degree one works.
    #[arg(long)]
    pub qv: Option<String>,

    /// Ramification index of the place over Q_p.
    #[arg(long, default_value_t = 1)]
    pub e: u32,

    /// Override for n_v.
    #[arg(long = "n-v")]
    pub n_v: Option<String>,

    /// The place is not self-conjugate.
    #[arg(long)]
    pub not_self_conjugate: bool,

    /// The curve has good reduction at the place (n_v becomes 2).
    #[arg(long)]
    pub good_reduction: bool,

    /// The Kodaira–Parshin family has a good model (original variant only).
    #[arg(long)]
    pub good_model: bool,
}

#[derive(Args, Debug, Clone)]
pub struct LocalArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
}

#[derive(Args, Debug, Clone)]
pub struct ConnectionArgs {
    /// One matrix per variable, e.g. "[[0,t1],[0,0]]"; entries are polynomials
    /// in t1..tn with rational coefficients.
    #[arg(long, required = true)]
    pub omega: Vec<String>,

    /// Truncation order N.
    #[arg(long, default_value_t = 8)]
    pub order: u32,
}

#[derive(Subcommand)]
pub enum Command {
    /// Least odd prime q meeting the Kodaira–Parshin conditions.
    FindQ {
        #[command(flatten)]
        place: PlaceArgs,
        #[arg(long, default_value_t = lvkit::kpengine::DEFAULT_Q_CEILING)]
        ceiling: u64,
    },
    /// Evaluate the Kodaira–Parshin conditions at one q.
    CheckQ {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        place: PlaceArgs,
    },
    /// Density lower bound for the original multiplicative-order condition.
    Density {
        #[arg(long)]
        q: u64,
    },
    /// Least prime congruent to 3 mod 4 and to 2 mod every odd prime below r0.
    LinnikQ {
        #[arg(long)]
        r0: u64,
        #[arg(long, default_value_t = lvkit::kpengine::LINNIK_CEILING)]
        ceiling: u64,
    },
    /// Number of extensions of degree 2 or 3 of a p-adic field.
    CountExt {
        #[command(flatten)]
        local: LocalArgs,
        #[arg(long)]
        degree: u32,
    },
    /// n_v: extensions of degree 2 or 3 inside an algebraic closure.
    #[command(name = "n-v")]
    NV {
        #[command(flatten)]
        local: LocalArgs,
    },
    /// Decide whether a monic integer polynomial is a q-Weil polynomial.
    WeilCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: String,
        /// Weight.
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Build the four-Lagrangian witness over F_p and verify it by exhaustion.
    Sublemma {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: usize,
        /// Comma-separated distinct nonzero eigenvalues (default 1..d).
        #[arg(long, conflicts_with = "all_eigenvalues")]
        lambdas: Option<String>,
        /// Check every ordered tuple of distinct nonzero eigenvalues.
        #[arg(long)]
        all_eigenvalues: bool,
    },
    /// Count Lagrangian subspaces of F_p^{2d} by enumeration.
    LagrangianCount {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: usize,
    },
    /// Number of surjections Z^{2g} -> Z/k.
    SurjCount {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        k: u64,
    },
    /// Formal parallel transport of a flat connection.
    Transport {
        #[command(flatten)]
        connection: ConnectionArgs,
        /// Comma-separated rational point at which to evaluate T.
        #[arg(long)]
        point: Option<String>,
    },
    /// Test dω + ω∧ω = 0 up to the truncation order.
    FlatCheck {
        #[command(flatten)]
        connection: ConnectionArgs,
    },
    /// size_v of an orbit table, or the upper bound from (g, k, n_v).
    SizeV {
        /// Comma-separated orbit sizes.
        #[arg(long, conflicts_with_all = ["genus", "k", "n_v"])]
        orbits: Option<String>,
        #[arg(long, requires_all = ["k", "n_v"])]
        genus: Option<u32>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long = "n-v")]
        n_v: Option<String>,
    },
    /// Hodge–Tate weight identity for weights in {0, 1}.
    WeightIdentity {
        /// Weight n.
        #[arg(long, default_value_t = 1)]
        weight: u64,
        /// [L:K].
        #[arg(long)]
        field_degree: u64,
        #[arg(long)]
        dim_w: u64,
        /// Comma-separated degree:dimF1 pairs, one per place.
        #[arg(long)]
        places: String,
    },
    /// Exhaustive trichotomy closure scan, or a single closure check.
    TrichotomyScan {
        #[arg(long, default_value_t = 3)]
        max_d: u64,
        #[arg(long, default_value_t = 12)]
        max_points: u64,
        /// Check one orbit table instead of scanning.
        #[arg(long, requires_all = ["d", "dim_w0"])]
        orbits: Option<String>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        dim_w0: Option<u64>,
    },
    /// Relative dimension d_q and the symplectic dimension bounds.
    Dims {
        #[arg(long, requires = "q")]
        genus: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        /// Half-rank d for the automorphism and degree bounds.
        #[arg(long)]
        d: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FindQ { .. } => "find-q",
            Command::CheckQ { .. } => "check-q",
            Command::Density { .. } => "density",
            Command::LinnikQ { .. } => "linnik-q",
            Command::CountExt { .. } => "count-ext",
            Command::NV { .. } => "n-v",
            Command::WeilCheck { .. } => "weil-check",
            Command::Sublemma { .. } => "sublemma",
            Command::LagrangianCount { .. } => "lagrangian-count",
            Command::SurjCount { .. } => "surj-count",
            Command::Transport { .. } => "transport",
            Command::FlatCheck { .. } => "flat-check",
            Command::SizeV { .. } => "size-v",
            Command::WeightIdentity { .. } => "weight-identity",
            Command::TrichotomyScan { .. } => "trichotomy-scan",
            Command::Dims { .. } => "dims",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {name}: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let report = assemble(name, &outcome, elapsed);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", render_text(&report));
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
