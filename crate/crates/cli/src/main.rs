//! `ultrarad`: master series, ultra-radicals and trinomial roots from the
//! command line.

mod commands;
mod output;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ultraradical::{SeriesOptions, SolveOptions};

use commands::CmdError;

#[derive(Debug, Parser)]
#[command(name = "ultrarad", version, about = "Series solutions of trinomial equations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[command(next_help_heading = "Global options")]
struct Global {
    /// Maximum number of series terms.
    #[arg(long, global = true, env = "ULTRARAD_MAX_TERMS", default_value_t = 5000)]
    max_terms: usize,
    /// Base residual tolerance for root verification.
    #[arg(long, global = true, env = "ULTRARAD_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Relative term size that counts as converged.
    #[arg(long, global = true, env = "ULTRARAD_REL_TOL", default_value_t = 1e-16)]
    rel_tol: f64,
    /// Logarithm sheets searched on each side of u = 0.
    #[arg(long, global = true, env = "ULTRARAD_U_MAX", default_value_t = 16)]
    u_max: u32,
    #[arg(long, global = true, env = "ULTRARAD_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Skip the Newton polish of truncated or inaccurate roots.
    #[arg(long, global = true, env = "ULTRARAD_NO_REFINE")]
    no_refine: bool,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Radius of convergence of M(m;a;b;x).
    Radius(commands::RadiusArgs),
    /// Branch n of y^a = 1 + a x y^b.
    Ultra(commands::UltraArgs),
    /// Roots of A Y^a + B Y^b + C = 0.
    Solve(commands::SolveArgs),
    /// Branch values along a line or an arc in x.
    Trajectory(commands::TrajectoryArgs),
    /// Direct, shifted, super-master or merged series.
    Series(commands::SeriesArgs),
}

impl Global {
    fn series(&self) -> Result<SeriesOptions, CmdError> {
        let s = SeriesOptions { max_terms: self.max_terms, rel_tol: self.rel_tol, ..SeriesOptions::default() };
        s.validate().map_err(|e| CmdError::Usage(e.to_string()))?;
        Ok(s)
    }

    fn solve(&self) -> Result<SolveOptions, CmdError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CmdError::Usage("--tol must be positive".into()));
        }
        Ok(SolveOptions {
            series: self.series()?,
            u_max: self.u_max,
            residual_tol: self.tol,
            refine: !self.no_refine,
            ..SolveOptions::default()
        })
    }

    fn echo(&self) -> Vec<(&'static str, output::Field)> {
        vec![
            ("max_terms", self.max_terms.into()),
            ("tol", self.tol.into()),
            ("rel_tol", self.rel_tol.into()),
            ("u_max", (self.u_max as i64).into()),
            ("refine", (!self.no_refine).into()),
        ]
    }
}

fn run(cli: &Cli) -> Result<output::OutputRecord, CmdError> {
    let g = &cli.global;
    let mut rec = match &cli.cmd {
        Cmd::Radius(a) => commands::radius(a)?,
        Cmd::Ultra(a) => commands::ultra_cmd(a, &g.solve()?)?,
        Cmd::Solve(a) => commands::solve(a, &g.solve()?)?,
        Cmd::Trajectory(a) => commands::trajectory(a, &g.solve()?)?,
        Cmd::Series(a) => commands::series(a, &g.series()?)?,
    };
    rec.inputs.0.extend(g.echo());
    Ok(rec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rec = match run(&cli) {
        Ok(rec) => rec,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code() as u8);
        }
    };
    let text = match cli.global.format {
        Format::Json => rec.to_json(),
        Format::Csv => rec.to_csv(),
    };
    let written = match &cli.cmd {
        Cmd::Trajectory(commands::TrajectoryArgs { output: Some(path), .. }) => std::fs::write(path, &text),
        _ => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for w in &rec.warnings {
        eprintln!("warning: {w}");
    }
    if rec.failed {
        eprintln!("error: numerical failure");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
