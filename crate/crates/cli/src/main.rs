use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use nullcone::nullcone::NullPoint;
use nullcone::random::rng_from_seed;
use nullcone::resolutions::{fiber_witnesses, mu, sample_resolution_point, unique_preimage, Variant};
use nullcone::Error;
use nullcone_cli::dims::dim_rows;
use nullcone_cli::params::parse_grid;
use nullcone_cli::suites::sample_point;
use nullcone_cli::{parse_json, run_suite, CliError, CliResult, Kind, Params, Suite};

/// Exit status of `resolve` over a point whose preimage is not unique.
const EXIT_NOT_UNIQUE: u8 = 3;

#[derive(Parser)]
#[command(name = "nullcone", version, about = "Exact null cones, their resolutions, and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print closed-form dimensions next to the tangent oracle.
    Dims {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the rows as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a seeded property suite over one cell or a grid.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the reports as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a seeded null point, or a resolution point with `--resolution`.
    Sample {
        #[command(flatten)]
        cell: CellArgs,
        /// Rank of T, or of A for gl; maximal when omitted.
        #[arg(long)]
        rank: Option<usize>,
        /// Rank of B for gl; defaults to m.
        #[arg(long)]
        rank_b: Option<usize>,
        #[arg(long)]
        resolution: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Read a null point and print its unique preimage, or a not-unique
    /// diagnostic with two witnesses.
    Resolve {
        #[command(flatten)]
        cell: CellArgs,
        /// JSON file holding the null point, `-` for stdin.
        #[arg(long, conflicts_with = "point")]
        input: Option<PathBuf>,
        /// The null point as inline JSON.
        #[arg(long)]
        point: Option<String>,
        /// Print the image of the preimage under the resolution map instead.
        #[arg(long)]
        mu: bool,
        /// Seed for the witnesses of a not-unique diagnostic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct CellArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    /// JSON list of parameter objects; replaces the single-cell flags.
    #[arg(long, conflicts_with_all = ["kind", "n", "m", "s"])]
    grid: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl CellArgs {
    fn cells(&self) -> CliResult<Vec<Params>> {
        if let Some(path) = &self.grid {
            let text = read_source(path)?;
            let mut grid = parse_grid(&path.display().to_string(), &text)?;
            for p in &mut grid {
                p.variant = p.variant.or(self.variant);
            }
            return Ok(grid);
        }
        Ok(vec![self.single()?])
    }

    fn single(&self) -> CliResult<Params> {
        if self.grid.is_some() {
            return Err(CliError::Usage("this command takes a single cell, not --grid".into()));
        }
        let missing = |flag: &str| CliError::Usage(format!("missing --{flag}"));
        let kind = self.kind.ok_or_else(|| missing("kind"))?;
        let n = self.n.ok_or_else(|| missing("n"))?;
        let m = self.m.ok_or_else(|| missing("m"))?;
        if kind != Kind::Gl && self.s.is_some() {
            return Err(CliError::Usage("--s only applies to --kind gl".into()));
        }
        let p = Params { kind, n, m, s: self.s, variant: self.variant };
        p.variant()?;
        Ok(p)
    }
}

fn read_source(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        Ok(std::fs::write(path, text)?)
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("points serialize"));
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Dims { cell, seed, json } => {
            let mut rows = Vec::new();
            for p in cell.cells()? {
                rows.extend(dim_rows(&p, seed)?);
            }
            match json {
                Some(path) => write_json(&path, &rows)?,
                None => rows.iter().for_each(|r| println!("{}", r.line())),
            }
            Ok(0)
        }
        Command::Verify { suite, cell, trials, seed, json } => {
            let mut reports = Vec::new();
            for p in cell.cells()? {
                let report = run_suite(suite, &p, trials, seed)?;
                if json.as_deref() != Some(Path::new("-")) {
                    println!("{}", report.summary());
                    for note in &report.notes {
                        println!("  note: {note}");
                    }
                    for f in &report.failures {
                        println!("  trial {} (seed {}): {}", f.trial, f.seed, f.description);
                    }
                }
                reports.push(report);
            }
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Sample { cell, rank, rank_b, resolution, seed } => {
            let p = cell.single()?;
            if resolution {
                if rank.is_some() || rank_b.is_some() {
                    return Err(CliError::Usage("resolution points are sampled at maximal rank".into()));
                }
                let mut rng = rng_from_seed(seed);
                print_json(&sample_resolution_point(p.variant()?, &p.setting()?, &mut rng)?);
                return Ok(0);
            }
            let ranks = match (p.kind, rank, rank_b) {
                (_, None, None) => None,
                (Kind::Gl, r, rb) => Some((r.unwrap_or(p.s.unwrap_or(0)), rb.unwrap_or(p.m))),
                (_, Some(r), None) => Some((r, 0)),
                (_, _, Some(_)) => return Err(CliError::Usage("--rank-b only applies to --kind gl".into())),
            };
            print_json(&sample_point(&p, ranks, seed)?);
            Ok(0)
        }
        Command::Resolve { cell, input, point, mu: apply_mu, seed } => {
            let p = cell.single()?;
            let setting = p.setting()?;
            let variant = p.variant()?;
            let (name, text) = match (input, point) {
                (Some(path), _) => (path.display().to_string(), read_source(&path)?),
                (None, Some(text)) => ("--point".to_string(), text),
                (None, None) => return Err(CliError::Usage("resolve needs --input or --point".into())),
            };
            let x: NullPoint = parse_json(&name, &text)?;
            match unique_preimage(variant, &setting, &x) {
                Ok(pre) if apply_mu => print_json(&mu(&pre)),
                Ok(pre) => print_json(&pre),
                Err(Error::NotUnique(reason)) => {
                    let mut rng = rng_from_seed(seed);
                    let (w1, w2) = fiber_witnesses(variant, &setting, &x, &mut rng)?;
                    print_json(&json!({ "not_unique": reason, "witnesses": [w1, w2] }));
                    return Ok(EXIT_NOT_UNIQUE);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
