use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use trumping::instance::{instance_from_inline, parse_instance, Instance};
use trumping::report::{
    cmd_certify, cmd_grid, cmd_majorize, cmd_rconvex, cmd_trump, CmdOutput, Format,
};
use trumping::scalar::parse_rational;
use trumping::trumping::GridConfig;

/// Decide majorization, trumping, and r-convex order relations between
/// positive vectors, and construct explicit catalyst certificates.
#[derive(Parser)]
#[command(name = "trumping", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file ("x: 5 5 5 5" / "y: 2 2 6 10" / optional "c: ...").
    #[arg(long, conflicts_with_all = ["x", "y"])]
    input: Option<PathBuf>,
    /// Inline x vector, e.g. "5 5 5 5" or "1/2 1/2".
    #[arg(long, requires = "y")]
    x: Option<String>,
    /// Inline y vector.
    #[arg(long, requires = "x")]
    y: Option<String>,
    /// Inline catalyst vector (checked as a direct witness).
    #[arg(long)]
    c: Option<String>,
    /// Output format: text, structured, or csv.
    #[arg(long, default_value = "text")]
    format: String,
    /// Boundary tolerance for strict-inequality verdicts.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partial-sum majorization verdict with independent certificates.
    Majorize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Trumping decision via power means, entropies, and the f_r family.
    Trump {
        #[command(flatten)]
        input: InputArgs,
        /// Half-width of the certified positivity window.
        #[arg(long)]
        window: Option<f64>,
    },
    /// Construct an exact catalyst certificate on the lattice q^Z.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        /// Lattice ratio q > 1 (integer or p/q).
        #[arg(long, default_value = "2")]
        q: String,
        /// Polya multiplier search bound.
        #[arg(long, default_value_t = 64)]
        nmax: usize,
        /// Order of the lattice division.
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Order-r convexity comparison via quotient and profile tests.
    Rconvex {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Export the (nu, A_nu, f_nu) table for both vectors.
    Grid {
        #[command(flatten)]
        input: InputArgs,
    },
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn load(input: &InputArgs) -> Result<Instance, String> {
    if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return parse_instance(&text).map_err(|e| e.to_string());
    }
    match (&input.x, &input.y) {
        (Some(x), Some(y)) => {
            instance_from_inline(x, y, input.c.as_deref()).map_err(|e| e.to_string())
        }
        _ => Err("provide either --input PATH or both --x and --y".into()),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "text" => Ok(Format::Text),
        "structured" => Ok(Format::Structured),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown format '{other}' (expected text, structured, or csv)")),
    }
}

fn grid_config(input: &InputArgs, window: Option<f64>) -> GridConfig {
    let mut grid = GridConfig::default();
    if let Some(t) = input.tolerance {
        grid.tolerance = t;
    }
    if let Some(w) = window {
        grid.window = w;
    }
    grid
}

fn emit(out: CmdOutput) -> ExitCode {
    print!("{}", out.rendered);
    ExitCode::from(out.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match &cli.cmd {
        Cmd::Majorize { input }
        | Cmd::Trump { input, .. }
        | Cmd::Certify { input, .. }
        | Cmd::Rconvex { input, .. }
        | Cmd::Grid { input } => input,
    };
    let format = match parse_format(&input.format) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let inst = match load(input) {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };
    match &cli.cmd {
        Cmd::Majorize { .. } => emit(cmd_majorize(&inst, format)),
        Cmd::Trump { window, .. } => {
            emit(cmd_trump(&inst, &grid_config(input, *window), format))
        }
        Cmd::Certify { q, nmax, r, .. } => {
            let Some(q) = parse_rational(q) else {
                return fail(&format!("cannot parse lattice ratio '{q}'"));
            };
            emit(cmd_certify(&inst, &q, *nmax, *r, format))
        }
        Cmd::Rconvex { r, .. } => emit(cmd_rconvex(&inst, *r, format)),
        Cmd::Grid { .. } => emit(cmd_grid(&inst, &grid_config(input, None), format)),
    }
}
