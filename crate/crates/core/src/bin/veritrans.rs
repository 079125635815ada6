use std::error::Error;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use veritrans::cnf::parse_dimacs;
use veritrans::pipeline::{
    self, offline_translator_from_gold, read_dataset, read_rows, replay, replay_log, run_stage1, run_stage2,
    run_stage3, score_correctness, tau_range, tau_sweep, write_rows, ArtifactLog, Gate, PipelineConfig,
    RunOptions, SpecRecord, StageRow, StageSummary, TranslatorKind,
};
use veritrans::sat::{solve, Satisfiability};
use veritrans::stats::{summarize_with, BootstrapConfig};
use veritrans::translate::{HttpTranslator, Translator};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

/// NL→PL translation, Tseitin/DIMACS compilation, SAT checking and
/// round-trip validation over CSV datasets.
#[derive(Parser)]
#[command(name = "veritrans", version)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Batch {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: PathBuf,
    /// Append per-item artifacts to this JSONL file.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateArg {
    Similarity,
    Full,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Stage 1: NL→PL over a dataset CSV.
    Translate(Batch),
    /// Stage 2: PL→NL reconstruction and similarity over a stage-1 CSV.
    Roundtrip(Batch),
    /// Compile one formula to DIMACS without solving.
    Compile {
        #[arg(long)]
        formula: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Solve a DIMACS file, or run stage 3 over a CSV.
    Solve {
        #[arg(long, conflicts_with_all = ["input", "output"], required_unless_present = "input")]
        dimacs: Option<PathBuf>,
        #[arg(long, short, requires = "output")]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// All three stages over a dataset CSV.
    Pipeline(Batch),
    /// Coverage and accuracy across a τ grid.
    Sweep {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        tau_min: f64,
        #[arg(long, default_value_t = 95.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 5.0)]
        step: f64,
        #[arg(long, value_enum, default_value_t = GateArg::Both)]
        gate: GateArg,
        #[arg(long)]
        json: bool,
    },
    /// SAT/UNSAT correctness against gold labels.
    Score {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Distribution summary of one numeric CSV column.
    Stats {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value = "similarity")]
        column: String,
        /// Thresholds for the mass table.
        #[arg(long, value_delimiter = ',', default_value = "60,65,70,75,80,85,90,95")]
        taus: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        resamples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate DIMACS for a formula, or verify every hash in a log.
    Replay {
        #[arg(long, conflicts_with = "log", required_unless_present = "log")]
        formula: Option<String>,
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    let options = RunOptions {
        workers: config.workers,
        tfidf: config.tfidf.clone(),
    };
    match cli.command {
        Command::Translate(b) => {
            let records = load_dataset(&b.input, &config)?;
            let translator = make_translator(&config, &records)?;
            let rows = run_stage1(&records, translator.as_ref(), config.workers, open_log(&b.log)?.as_ref())?;
            finish_batch(&b.output, &rows)?;
        }
        Command::Roundtrip(b) => {
            let rows = load_rows(&b.input, &config)?;
            let translator = make_translator(&config, &[])?;
            let rows = run_stage2(rows, translator.as_ref(), &options, open_log(&b.log)?.as_ref())?;
            finish_batch(&b.output, &rows)?;
        }
        Command::Pipeline(b) => {
            let records = load_dataset(&b.input, &config)?;
            let translator = make_translator(&config, &records)?;
            let rows = pipeline::run_all(&records, translator.as_ref(), &options, open_log(&b.log)?.as_ref())?;
            finish_batch(&b.output, &rows)?;
        }
        Command::Compile { formula, output } => {
            let bytes = replay(&formula)?;
            match output {
                Some(path) => std::fs::write(path, bytes)?,
                None => io::stdout().write_all(&bytes)?,
            }
        }
        Command::Solve { dimacs: Some(path), .. } => {
            let cnf = parse_dimacs(&std::fs::read_to_string(path)?)?;
            let result = solve(&cnf)?;
            println!("s {}", match result.status {
                Satisfiability::Sat => "SATISFIABLE",
                Satisfiability::Unsat => "UNSATISFIABLE",
            });
            if let Some(model) = result.model {
                let lits: Vec<String> = model.literals().map(|l| l.to_string()).collect();
                println!("v {} 0", lits.join(" "));
            }
        }
        Command::Solve { input, output, log, .. } => {
            let (input, output) = (input.expect("clap enforces --input"), output.expect("clap enforces --output"));
            let rows = run_stage3(load_rows(&input, &config)?, config.workers, open_log(&log)?.as_ref())?;
            finish_batch(&output, &rows)?;
        }
        Command::Sweep {
            input,
            tau_min,
            tau_max,
            step,
            gate,
            json,
        } => {
            let rows = load_rows(&input, &config)?;
            let taus = tau_range(tau_min, tau_max, step)?;
            let sim = tau_sweep(&rows, &taus, Gate::Similarity)?;
            let full = tau_sweep(&rows, &taus, Gate::Full)?;
            if json {
                let value = match gate {
                    GateArg::Similarity => serde_json::json!({ "similarity": sim }),
                    GateArg::Full => serde_json::json!({ "full": full }),
                    GateArg::Both => serde_json::json!({ "similarity": sim, "full": full }),
                };
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                let pct = |a: Option<f64>| a.map_or("-".to_string(), |a| format!("{:.2}", 100.0 * a));
                println!("{:>6}  {:>22}  {:>22}", "tau", "similarity cov/acc %", "full gate cov/acc %");
                for (s, f) in sim.iter().zip(&full) {
                    let cell = |p: &pipeline::SweepPoint| format!("{:.2} / {}", 100.0 * p.coverage, pct(p.accuracy));
                    let (sc, fc) = match gate {
                        GateArg::Similarity => (cell(s), String::new()),
                        GateArg::Full => (String::new(), cell(f)),
                        GateArg::Both => (cell(s), cell(f)),
                    };
                    println!("{:>6.1}  {sc:>22}  {fc:>22}", s.tau);
                }
            }
        }
        Command::Score { input, json } => {
            let c = score_correctness(&load_rows(&input, &config)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&c)?);
            } else {
                let pct = |a: Option<f64>| a.map_or("-".to_string(), |a| format!("{:.2}%", 100.0 * a));
                println!("overall     {} ({}/{})", pct(Some(c.overall)), c.correct, c.labelled);
                println!("SAT only    {}", pct(c.sat_only));
                println!("UNSAT only  {}", pct(c.unsat_only));
                println!("unpredicted {}", c.unpredicted);
                println!("unlabelled  {}", c.unlabelled);
            }
        }
        Command::Stats {
            input,
            column,
            taus,
            resamples,
            json,
        } => {
            let scores = read_column(&input, &column)?;
            let bootstrap = BootstrapConfig {
                resamples,
                seed: config.seed,
                ..Default::default()
            };
            let s = summarize_with(&scores, &taus, &bootstrap)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&s)?);
            } else {
                println!("n       {}", s.n);
                println!("mean    {:.4}", s.mean);
                println!("median  {:.4}", s.median);
                println!("95% CI  [{:.4}, {:.4}]", s.ci95_low, s.ci95_high);
                println!("{:>8}  {:>8}  {:>10}", "tau", "count", "proportion");
                for m in &s.mass_at_tau {
                    println!("{:>8.2}  {:>8}  {:>10.4}", m.tau, m.count, m.proportion);
                }
            }
        }
        Command::Replay { formula: Some(f), .. } => io::stdout().write_all(&replay(&f)?)?,
        Command::Replay { log, .. } => {
            let report = replay_log(log.expect("clap enforces --log"))?;
            for m in &report.mismatches {
                println!(
                    "MISMATCH {} {:?}: logged {} replayed {}",
                    m.item_id,
                    m.formula,
                    m.logged_sha256,
                    m.replayed_sha256.as_deref().unwrap_or("(does not compile)")
                );
            }
            println!("{} checked, {} mismatches", report.checked, report.mismatches.len());
            if !report.is_clean() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_dataset(path: &Path, config: &PipelineConfig) -> Result<Vec<SpecRecord>> {
    Ok(read_dataset(File::open(path)?, &config.columns)?)
}

fn load_rows(path: &Path, config: &PipelineConfig) -> Result<Vec<StageRow>> {
    Ok(read_rows(File::open(path)?, &config.columns)?)
}

fn open_log(path: &Option<PathBuf>) -> Result<Option<ArtifactLog>> {
    Ok(path.as_ref().map(ArtifactLog::open).transpose()?)
}

fn make_translator(config: &PipelineConfig, records: &[SpecRecord]) -> Result<Box<dyn Translator>> {
    Ok(match config.translator {
        TranslatorKind::Offline => Box::new(offline_translator_from_gold(records)),
        TranslatorKind::Http => Box::new(HttpTranslator::new(config.llm.clone())?),
    })
}

fn finish_batch(output: &Path, rows: &[StageRow]) -> Result<()> {
    write_rows(File::create(output)?, rows)?;
    let s = StageSummary::of(rows);
    eprintln!(
        "{} rows: {} OK, {} skipped empty, {} unparseable, {} errors",
        s.total, s.ok, s.skipped_empty, s.unparseable, s.errors
    );
    Ok(())
}

fn read_column(path: &Path, column: &str) -> Result<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path)?;
    let index = reader
        .headers()?
        .iter()
        .position(|h| h.trim_start_matches('\u{feff}').trim() == column)
        .ok_or_else(|| format!("no column {column:?} in {}", path.display()))?;
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let cell = record?.get(index).unwrap_or("").trim().to_string();
        if cell.is_empty() {
            continue;
        }
        values.push(cell.parse().map_err(|e| format!("row {}: {column} = {cell:?}: {e}", i + 1))?);
    }
    Ok(values)
}
