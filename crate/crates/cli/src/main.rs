use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pfclab::ensembles::{
    kwise_poly_family, pfc, CliffordEnsemble, HaarEnsemble, HaarIsometryEnsemble, KeyedPfcEnsemble,
    PermutationEnsemble, PhaseEnsemble, PolyPhaseEnsemble, PriEnsemble, PriKeys,
};
use pfclab::runner::{run, run_suite, sweep, sweep_csv, ExperimentConfig, SuiteConfig, SuiteLevel, EXPERIMENTS};
use pfclab::seed::rng;
use pfclab::symgroup::character_table;
use pfclab::tensor::write_operator;
use pfclab::Ensemble;

#[derive(Parser)]
#[command(name = "pfclab", version, about = "Run moment, design and query-harness experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl ParamArgs {
    fn config(&self, name: &str) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(name);
        c.n = self.n;
        c.d = self.d;
        c.t = self.t;
        c.s = self.s;
        c.samples = self.samples;
        c.probes = self.probes;
        c.seed = self.seed;
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one named experiment and print its report.
    Run {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the smoke or full suite.
    Suite {
        /// smoke or full; defaults to the config file's level, else smoke.
        #[arg(long)]
        level: Option<String>,
        /// Suite settings as `key = value` lines; flags override the file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Run independent experiments concurrently.
        #[arg(long)]
        parallel: bool,
        /// Write one report file per experiment here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Write the aggregate report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment over several values of one parameter and emit CSV.
    Sweep {
        name: String,
        /// Parameter to vary (n, d, t, s, samples, probes).
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<usize>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print one element of an ensemble in the operator text format.
    DumpEnsemble {
        /// haar, clifford, pfc, permutation, phase, poly-phase, keyed-pfc,
        /// pri, haar-isometry
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Element index for enumerable ensembles; sampled from the seed
        /// otherwise.
        #[arg(long)]
        index: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the character table of S_t: rows are irreps, columns cycle
    /// types, both labelled by partitions.
    CharTable {
        #[arg(long)]
        t: usize,
    },
}

fn ensemble(name: &str, p: &ParamArgs) -> Result<Arc<Ensemble>> {
    let n = p.n.unwrap_or(2);
    let d = p.d.unwrap_or(1 << n);
    let s = p.s.unwrap_or(1);
    Ok(match name {
        "haar" => Arc::new(HaarEnsemble { d }),
        "clifford" => Arc::new(CliffordEnsemble::new(n)?),
        "pfc" => Arc::new(pfc::<f64>(n)?),
        "permutation" => Arc::new(PermutationEnsemble { d }),
        "phase" => Arc::new(PhaseEnsemble { d }),
        "poly-phase" => Arc::new(PolyPhaseEnsemble { family: kwise_poly_family(n as u32, 2 * p.t.unwrap_or(2))? }),
        "keyed-pfc" => Arc::new(KeyedPfcEnsemble::new(n)?),
        "pri" => Arc::new(PriEnsemble::new(n, s, PriKeys::Random)?),
        "haar-isometry" => Arc::new(HaarIsometryEnsemble::new(1 << (n - s.min(n)), 1 << n)?),
        other => bail!("unknown ensemble '{other}'"),
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn char_table_text(t: usize) -> Result<String> {
    let table = character_table(t)?;
    let labels: Vec<String> = table.partitions().iter().map(|p| p.to_string()).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1).max(4);
    let mut s = format!("{:width$}", "");
    for l in &labels {
        s.push_str(&format!(" {l:>width$}"));
    }
    s.push('\n');
    for (l, row) in labels.iter().zip(table.values()) {
        s.push_str(&format!("{l:width$}"));
        for v in row {
            s.push_str(&format!(" {v:>width$}"));
        }
        s.push('\n');
    }
    Ok(s)
}

/// Exit status: 0 when every check passes, 1 on a failed check, 2 when the
/// run could not be carried out.
fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let pass = match cli.command {
        Command::Run { name, params, out } => {
            if !EXPERIMENTS.contains(&name.as_str()) {
                bail!("unknown experiment '{name}' (known: {})", EXPERIMENTS.join(", "));
            }
            let report = run(&params.config(&name))?;
            emit(&report.to_text(), out.as_ref())?;
            report.passed()
        }
        Command::Suite { level, config, seed, parallel, out_dir, out } => {
            let mut cfg = match config {
                Some(path) => std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .parse::<SuiteConfig>()?,
                None => SuiteConfig::new(SuiteLevel::Smoke),
            };
            if let Some(level) = level {
                cfg.level = level.parse()?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.parallel |= parallel;
            if out_dir.is_some() {
                cfg.out_dir = out_dir;
            }
            let report = run_suite(&cfg)?;
            emit(&report.to_text(), out.as_ref())?;
            report.passed()
        }
        Command::Sweep { name, param, values, params, csv } => {
            let rows = sweep(&params.config(&name), &param, &values)?;
            emit(&sweep_csv(&param, &rows), csv.as_ref())?;
            rows.iter().all(|r| r.passed)
        }
        Command::DumpEnsemble { name, params, index, out } => {
            let e = ensemble(&name, &params)?;
            let u = match index {
                Some(i) => e
                    .element(i)
                    .with_context(|| format!("{} has no element {i}", e.descriptor()))?,
                None => e.sample_with(&mut rng(params.seed)),
            };
            eprintln!("{}", e.descriptor());
            emit(&write_operator(&u.to_dense()), out.as_ref())?;
            true
        }
        Command::CharTable { t } => {
            print!("{}", char_table_text(t)?);
            true
        }
    };
    Ok(pass)
}
