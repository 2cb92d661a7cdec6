use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewirt::io::{self, write_text};
use skewirt::summary::{self, recovery_report, summarize_abilities, summarize_items};
use skewirt::{synth, Abilities, Error, Result};

/// Mixture skew-probit item response models.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate responses from a preset scenario.
    Simulate {
        /// all-symmetric-40 or all-asymmetric-40
        #[arg(long)]
        preset: String,
        #[arg(long)]
        subjects: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the sampler as described by a config file.
    Fit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-item posterior summary table from a directory of draws.
    Summarize {
        #[arg(long)]
        draws: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Credible interval level.
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        /// Directory written by `simulate`; adds a recovery report.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// ESS, split-R̂ and acceptance rates.
    Diagnose {
        #[arg(long)]
        draws: PathBuf,
        /// Write the per-parameter table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Item characteristic curve on an even grid of abilities.
    IccCurve {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 81)]
        points: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate {
            preset,
            subjects,
            seed,
            out,
        } => {
            let scenario = synth::preset(&preset, subjects, seed)?;
            let (y, theta) = synth::generate(&scenario)?;
            io::write_responses(&out.join("responses.csv"), &y)?;
            write_text(
                &out.join("truth_items.csv"),
                &io::format_truth_items(&scenario, y.item_ids()),
            )?;
            write_text(
                &out.join("truth_theta.csv"),
                &io::format_truth_theta(&theta, y.subject_ids()),
            )?;
            eprintln!(
                "wrote {} items x {} subjects to {}",
                y.n_items(),
                y.n_subjects(),
                out.display()
            );
        }
        Command::Fit { config, out } => {
            let cfg = io::read_config(&config)?;
            let stores = skewirt::pipeline::fit(&cfg)?;
            for s in &stores {
                io::write_draws(s, &out.join(io::draws_file_name(s.chain_id)))?;
            }
            eprintln!("wrote {} chains to {}", stores.len(), out.display());
        }
        Command::Summarize {
            draws,
            out,
            level,
            truth,
        } => {
            let stores = io::read_draws_dir(&draws)?;
            let items = summarize_items(&stores, level)?;
            write_text(&out, &io::format_item_summaries(&items))?;
            if let Some(dir) = truth {
                let abilities = summarize_abilities(&stores)?;
                let (scenario, theta) = read_truth(&dir, &stores[0].item_ids)?;
                let report = recovery_report(&items, &abilities, &scenario, &theta)?;
                print!("{}", io::format_recovery(&report));
            }
        }
        Command::Diagnose { draws, out } => {
            let stores = io::read_draws_dir(&draws)?;
            let diag = summary::diagnostics(&stores)?;
            let table = io::format_diagnostics(&diag);
            match out {
                Some(path) => write_text(&path, &table)?,
                None => print!("{table}"),
            }
            print!("{}", io::format_acceptance(&diag));
            let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.3}"));
            eprintln!(
                "max split-R-hat {}, min ESS {}",
                fmt(diag.max_rhat()),
                fmt(diag.min_ess())
            );
        }
        Command::IccCurve {
            a,
            b,
            c,
            gamma,
            from,
            to,
            points,
        } => {
            let curve = io::icc_curve(a, b, c, gamma, from, to, points)?;
            print!("{}", io::format_curve(&curve));
        }
    }
    Ok(())
}

/// Reads the truth tables written by `simulate`, restricted to `item_ids`.
fn read_truth(dir: &Path, item_ids: &[String]) -> Result<(synth::Scenario, Abilities)> {
    let rows = |name: &str| -> Result<Vec<Vec<String>>> {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io { path, source: e })?;
        Ok(text
            .lines()
            .skip(1)
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(String::from).collect())
            .collect())
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Data(format!("bad number '{s}' in truth tables")))
    };
    let items = rows("truth_items.csv")?;
    let (mut a, mut b, mut c, mut g) = (vec![], vec![], vec![], vec![]);
    for id in item_ids {
        let r = items
            .iter()
            .find(|r| &r[0] == id)
            .ok_or_else(|| Error::Data(format!("item {id} missing from truth_items.csv")))?;
        a.push(num(&r[1])?);
        b.push(num(&r[2])?);
        c.push(num(&r[3])?);
        g.push(num(&r[4])?);
    }
    let theta = rows("truth_theta.csv")?
        .iter()
        .map(|r| num(&r[1]))
        .collect::<Result<Vec<_>>>()?;
    let scenario = synth::Scenario::new(theta.len(), a, b, c, g, 0)?;
    Ok((scenario, Abilities::new(theta)?))
}
