//! `discrep`: command-line front end for the discrepancy toolkit.
//!
//! Every subcommand writes a machine-readable result (CSV with a header row,
//! or a single key-value line) to stdout or to the requested file, and exits
//! nonzero with a diagnostic on stderr for any domain error.

mod ranges;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use discrep_core::constants::{self, BoundQuery, ConstantProfile, VariantTag};
use discrep_core::covers::{
    bracketing_bound_anchored, bracketing_bound_unanchored, build_bracketing_unanchored,
    build_cover_anchored, validate_cover, CoverFamily,
};
use discrep_core::discrepancy::{
    discrepancy_lower_bound, extreme_discrepancy_exact, star_discrepancy_exact, DiscrepancyKind,
};
use discrep_core::harness::{bernstein_empirical_check, emit_figure, verify_bounds};
use discrep_core::{Error, PointSet};

#[derive(Parser)]
#[command(
    name = "discrep",
    about = "Exact discrepancy, explicit bound constants, delta-covers, and Monte Carlo bound verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bound constants A_s, B and c(N=2, s) over a range of dimensions
    Constants {
        /// Variant: star | extreme | aw-dep | aw-const
        #[arg(long, default_value = "star")]
        variant: VariantTag,
        /// Dimensions, e.g. "1:200", "2", or "1,5,10"
        #[arg(long, default_value = "1:10")]
        s: String,
        #[arg(long, default_value_t = 1.73)]
        alpha: f64,
        #[arg(long, default_value_t = 1.73)]
        beta: f64,
        /// Certified truncation tolerance for the series A_s and B
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Compute the star or extreme discrepancy of a point set read from CSV
    Discrepancy {
        /// Input CSV: one point per row, comma-separated coordinates in [0,1)
        #[arg(long)]
        input: PathBuf,
        /// Kind: star | extreme
        #[arg(long, default_value = "star")]
        kind: DiscrepancyKind,
        /// Method: exact | estimate
        #[arg(long, default_value = "exact")]
        method: String,
        /// Random boxes drawn by the estimator
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a delta-cover (anchored) or delta-bracketing cover (unanchored) and validate it
    Covers {
        /// Family: anchored | unanchored
        #[arg(long, default_value = "anchored")]
        family: CoverFamily,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 2)]
        s: u32,
        /// Random targets drawn during validation
        #[arg(long, default_value_t = 10_000)]
        check_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optionally export the cover elements to this CSV file
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Verify discrepancy bounds over a grid of seeds, dimensions, and sample sizes
    Verify {
        /// Seeds, e.g. "0:199"
        #[arg(long, default_value = "0:19")]
        seeds: String,
        /// Dimensions, e.g. "1:5"
        #[arg(long, default_value = "1:3")]
        s: String,
        /// Sample sizes; supports ellipsis lists like "2,4,...,256"
        #[arg(long, default_value = "2,4,...,64")]
        n: String,
        #[arg(long, default_value_t = 1.73)]
        alpha: f64,
        #[arg(long, default_value_t = 1.73)]
        beta: f64,
        /// Variant: star | extreme | aw-dep | aw-const
        #[arg(long, default_value = "star")]
        variant: VariantTag,
        /// Kind: star | extreme
        #[arg(long, default_value = "star")]
        kind: DiscrepancyKind,
        /// Estimator trials when exact enumeration is over budget
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Write the per-cell report CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the data behind one of the three figures as CSV
    Figures {
        /// Figure id: 1, 2 or 3
        #[arg(long)]
        id: u8,
        /// Output directory for figureK.csv
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 1.73)]
        alpha: f64,
        #[arg(long, default_value_t = 1.73)]
        beta: f64,
    },
    /// Compare the empirical maximal partial-sum tail against the Bernstein bound
    Bernstein {
        #[arg(long, default_value_t = 100)]
        n: u64,
        #[arg(long, default_value_t = 30.0)]
        t: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Constants {
            variant,
            s,
            alpha,
            beta,
            tol,
        } => {
            let dims = ranges::parse_u64_list(&s)?;
            let dims: Vec<u32> = dims
                .into_iter()
                .map(|d| {
                    u32::try_from(d).map_err(|_| Error::domain(format!("dimension {d} too large")))
                })
                .collect::<Result<_, _>>()?;
            let profile = ConstantProfile::new(variant, alpha, beta, tol, &dims)?;
            let b = constants::big_b(tol)?;
            writeln!(out, "s,A_s,B,c_at_N2")?;
            for s in dims {
                let a = profile.a_value(s)?;
                let c = profile.bound_c(BoundQuery::new(2, s)?)?;
                writeln!(out, "{s},{a},{b},{c}")?;
            }
        }
        Command::Discrepancy {
            input,
            kind,
            method,
            trials,
            seed,
        } => {
            let points = PointSet::from_csv_path(&input)?;
            let result = match method.as_str() {
                "exact" => match kind {
                    DiscrepancyKind::Star => star_discrepancy_exact(&points)?,
                    DiscrepancyKind::Extreme => extreme_discrepancy_exact(&points)?,
                },
                "estimate" => discrepancy_lower_bound(&points, kind, trials, seed)?,
                other => {
                    return Err(Error::domain(format!(
                        "method must be 'exact' or 'estimate', got {other:?}"
                    )))
                }
            };
            let s = points.dim();
            let lowers: Vec<String> = (1..=s).map(|i| format!("lower_{i}")).collect();
            let uppers: Vec<String> = (1..=s).map(|i| format!("upper_{i}")).collect();
            writeln!(out, "value,exact,{},{}", lowers.join(","), uppers.join(","))?;
            let lo: Vec<String> = result.witness.lower.iter().map(|v| format!("{v}")).collect();
            let hi: Vec<String> = result.witness.upper.iter().map(|v| format!("{v}")).collect();
            writeln!(
                out,
                "{},{},{},{}",
                result.value,
                result.exact,
                lo.join(","),
                hi.join(",")
            )?;
        }
        Command::Covers {
            family,
            delta,
            s,
            check_samples,
            seed,
            emit,
        } => {
            let cover = match family {
                CoverFamily::AnchoredC => build_cover_anchored(delta, s)?,
                CoverFamily::UnanchoredR => build_bracketing_unanchored(delta, s)?,
            };
            let report = validate_cover(&cover, check_samples, seed)?;
            let bound = match family {
                CoverFamily::AnchoredC => bracketing_bound_anchored(delta, s)?,
                CoverFamily::UnanchoredR => bracketing_bound_unanchored(delta, s)?,
            };
            writeln!(
                out,
                "family,delta,s,cardinality,theoretical_bound,checked,failures,valid"
            )?;
            writeln!(
                out,
                "{},{delta},{s},{},{bound},{},{},{}",
                family.as_str(),
                cover.cardinality(),
                report.checked,
                report.failures.len(),
                report.passed
            )?;
            if let Some(path) = emit {
                let file = std::fs::File::create(&path)?;
                cover.write_csv(std::io::BufWriter::new(file))?;
            }
        }
        Command::Verify {
            seeds,
            s,
            n,
            alpha,
            beta,
            variant,
            kind,
            trials,
            out: out_path,
        } => {
            let seeds = ranges::parse_u64_list(&seeds)?;
            let dims: Vec<u32> = ranges::parse_u64_list(&s)?
                .into_iter()
                .map(|d| {
                    u32::try_from(d).map_err(|_| Error::domain(format!("dimension {d} too large")))
                })
                .collect::<Result<_, _>>()?;
            let ns = ranges::parse_u64_list(&n)?;
            let report =
                verify_bounds(&seeds, &dims, &ns, alpha, beta, variant, kind, trials)?;
            match out_path {
                Some(path) => {
                    let file = std::fs::File::create(&path)?;
                    report.write_csv(std::io::BufWriter::new(file))?;
                }
                None => report.write_csv(&mut out)?,
            }
            writeln!(out, "passFraction,{}", report.pass_fraction)?;
        }
        Command::Figures {
            id,
            out: dir,
            alpha,
            beta,
        } => {
            let fig = emit_figure(id, alpha, beta)?;
            std::fs::create_dir_all(&dir)?;
            let path = dir.join(fig.file_name());
            let file = std::fs::File::create(&path)?;
            fig.write_csv(std::io::BufWriter::new(file))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        Command::Bernstein { n, t, trials, seed } => {
            let check = bernstein_empirical_check(n, trials, t, seed)?;
            writeln!(out, "n,t,trials,empirical,bound,holds")?;
            writeln!(
                out,
                "{n},{t},{trials},{},{},{}",
                check.empirical, check.bound, check.holds
            )?;
        }
    }
    Ok(())
}
