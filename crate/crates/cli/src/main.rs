use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use evmine_cli::{output, selftest};
use evmine_core::edb::{load_json, save_json};
use evmine_core::ingest::{self, ConfidenceMap};
use evmine_core::reliability::{assess_source, AssessConfig};
use evmine_core::synth::{self, SynthConfig};
use evmine_core::{opminer, MinerConfig};

#[derive(Parser)]
#[command(
    name = "evmine",
    version,
    about = "Frequent opinion pattern mining over evidential databases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build evidential databases from a survey CSV.
    Ingest {
        #[arg(long)]
        survey: PathBuf,
        /// JSON map from confidence label to discount factor.
        #[arg(long)]
        confmap: Option<PathBuf>,
        /// Output file, or a directory receiving one `<source>.edb.json` per source.
        #[arg(long)]
        out: PathBuf,
        /// Only build this source.
        #[arg(long)]
        source: Option<String>,
    },
    /// Mine frequent opinion patterns.
    Mine {
        #[arg(long)]
        edb: PathBuf,
        #[arg(long)]
        minsup: f64,
        #[arg(long)]
        maxlen: Option<usize>,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate supports on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Assess a source from its best full-coverage pattern.
    Assess {
        #[arg(long)]
        edb: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.2,0.1,0.05")]
        minsup_ladder: Vec<f64>,
        #[arg(long)]
        confmap: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded synthetic database.
    Synth {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        attributes: usize,
        #[arg(long)]
        frame_size: usize,
        #[arg(long, default_value_t = 3)]
        max_focal: usize,
        #[arg(long, default_value_t = 0.5)]
        p_certain: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pattern counts and timings across increasing minsup values.
    Sweep {
        #[arg(long)]
        edb: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        minsups: Vec<f64>,
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long)]
        sequential: bool,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the bundled examples end to end.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn load_confmap(path: Option<&Path>) -> Result<ConfidenceMap> {
    Ok(match path {
        Some(p) => ConfidenceMap::load(p)?,
        None => ConfidenceMap::default(),
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Ingest {
            survey,
            confmap,
            out,
            source,
        } => {
            let confmap = load_confmap(confmap.as_deref())?;
            let parsed = ingest::parse_survey_csv(&survey)
                .with_context(|| format!("reading survey {}", survey.display()))?;
            let dbs = match &source {
                Some(s) => {
                    if !parsed.sources().contains(&s.as_str()) {
                        bail!("source {s:?} does not occur in {}", survey.display());
                    }
                    vec![ingest::build_source_edb(&parsed, &confmap, s)?]
                }
                None => ingest::build_edb(&parsed, &confmap)?,
            };
            if out.is_dir() {
                for db in &dbs {
                    let name = format!("{}.edb.json", db.source().unwrap_or("source"));
                    save_json(db, out.join(name))?;
                }
            } else {
                match dbs.as_slice() {
                    [db] => save_json(db, &out)?,
                    [] => bail!("{} holds no survey records", survey.display()),
                    _ => bail!(
                        "{} sources found; pass --source or an existing directory as --out",
                        dbs.len()
                    ),
                }
            }
            Ok(true)
        }
        Command::Mine {
            edb,
            minsup,
            maxlen,
            out,
            sequential,
        } => {
            let db = load_json(&edb)?;
            let mut cfg = MinerConfig::new(minsup)?.with_parallel(!sequential);
            if let Some(k) = maxlen {
                cfg = cfg.with_maxlen(k)?;
            }
            let patterns = opminer(&db, &cfg);
            let doc = output::patterns_document(
                &patterns,
                db.attributes(),
                minsup,
                cfg.effective_maxlen(db.num_attributes()),
                db.num_rows(),
            );
            emit(out.as_deref(), &json_text(&doc))?;
            Ok(true)
        }
        Command::Assess {
            edb,
            minsup_ladder,
            confmap,
            format,
            out,
        } => {
            let db = load_json(&edb)?;
            let cfg = AssessConfig::default()
                .with_ladder(&minsup_ladder)?
                .with_confidence_map(load_confmap(confmap.as_deref())?);
            let report = assess_source(&db, &cfg)?;
            let text = match format {
                Format::Json => json_text(&output::report_to_json(&report, db.attributes())),
                Format::Text => output::report_to_text(&report),
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Synth {
            rows,
            attributes,
            frame_size,
            max_focal,
            p_certain,
            seed,
            out,
        } => {
            let cfg = SynthConfig {
                rows,
                attributes,
                frame_size,
                max_focal,
                p_certain,
                seed,
            };
            save_json(&synth::generate(&cfg)?, &out)?;
            Ok(true)
        }
        Command::Sweep {
            edb,
            minsups,
            maxlen,
            sequential,
            out,
        } => {
            let db = load_json(&edb)?;
            let points = synth::sweep(&db, &minsups, maxlen, !sequential)?;
            emit(out.as_deref(), &synth::sweep_csv(&points))?;
            Ok(true)
        }
        Command::Selftest => {
            let checks = selftest::run();
            for c in &checks {
                println!(
                    "[{}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
