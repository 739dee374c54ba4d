use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cantor_core::constructions::{build_block_hierarchy, HierarchyCaps};
use cantor_core::scenario::config::{ActionConfig, CapConfig, HorizonConfig, SystemConfig};
use cantor_core::scenario::{
    build_system, output_path, resolve_budget, run_scenario, write_report, ConfigError, Report,
    ScenarioConfig, ScenarioKind,
};
use cantor_core::{generate_language, AlphabetMetric, SubstitutionSequence};
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 3;

/// Finite-model checks for substitutions built from group actions.
///
/// The word budget can be overridden with the CANTOR_BUDGET environment
/// variable (letters).
#[derive(Debug, Parser)]
#[command(name = "cantor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario file and write its report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; defaults to the config `output`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the generated language with the brute-force oracle for every seed.
    OracleCompare {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the language of one seed letter in the stratified text format.
    DumpLanguage {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        letter: usize,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the block hierarchy levels, markers and enumerated words.
    DumpHierarchy {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Scenario file supplying the `system` section.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Group spec acting on itself by left translation, e.g. `cyclic 4`.
    #[arg(long)]
    group: Option<String>,
}

enum Failure {
    Config(ConfigError),
    Usage(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

fn inline_config(kind: ScenarioKind, group: &str) -> ScenarioConfig {
    ScenarioConfig {
        kind,
        seed: None,
        output: None,
        system: Some(SystemConfig {
            group: Some(group.to_string()),
            group_table: None,
            action: ActionConfig::LeftTranslation,
            schedule: None,
            automorphisms: None,
            automorphisms_file: None,
        }),
        second: None,
        horizons: None,
        caps: CapConfig::default(),
        hierarchy: None,
        product: None,
        tower: None,
    }
}

/// The scenario named by `source` with its kind replaced, and the directory
/// relative paths resolve against.
fn load_source(source: &Source, kind: ScenarioKind) -> Result<(ScenarioConfig, PathBuf), Failure> {
    match (&source.config, &source.group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Config(ConfigError::Io {
                    path: path.clone(),
                    source: e,
                })
            })?;
            let mut cfg = ScenarioConfig::parse(&text)?;
            cfg.kind = kind;
            Ok((cfg, base_dir_of(path)))
        }
        (None, Some(group)) => Ok((inline_config(kind, group), PathBuf::from("."))),
        (None, None) => Err(Failure::Usage("give --config or --group".into())),
    }
}

fn base_dir_of(path: &Path) -> PathBuf {
    path.parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn horizons(
    cfg: &ScenarioConfig,
    max_len: Option<usize>,
    depth: Option<usize>,
) -> Result<HorizonConfig, Failure> {
    let from_cfg = cfg.horizons;
    let max_len = max_len
        .or(from_cfg.map(|h| h.max_len))
        .ok_or_else(|| Failure::Usage("--max-len is required without a horizons section".into()))?;
    let depth = depth
        .or(from_cfg.map(|h| h.depth))
        .ok_or_else(|| Failure::Usage("--depth is required without a horizons section".into()))?;
    Ok(HorizonConfig {
        max_len,
        depth,
        ..from_cfg.unwrap_or(HorizonConfig {
            max_len,
            depth,
            recurrence: None,
            p_max: None,
            aperiodicity_len: None,
        })
    })
}

/// The validated `system` section, for commands that only need the action.
fn system_section(cfg: &ScenarioConfig) -> Result<&SystemConfig, Failure> {
    let sys = cfg.system.as_ref().ok_or_else(|| {
        Failure::Config(ConfigError::Invalid {
            field: "system".into(),
            reason: "required".into(),
        })
    })?;
    sys.validate("system")?;
    Ok(sys)
}

fn emit_report(report: &Report, path: Option<PathBuf>) -> Result<u8, Failure> {
    match path {
        Some(p) => {
            write_report(report, &p)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
            print!("{}", report.summary());
        }
        None => {
            print!("{}", report.to_json());
            eprint!("{}", report.summary());
        }
    }
    Ok(report.exit_code() as u8)
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<u8, Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn execute(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Run { config, seed, out } => {
            let cfg = ScenarioConfig::load(&config, seed)?;
            let base = base_dir_of(&config);
            let report = run_scenario(&cfg, &base)?;
            emit_report(&report, output_path(&cfg, &base, out.as_deref()))
        }
        Command::OracleCompare {
            source,
            max_len,
            depth,
            out,
        } => {
            let (mut cfg, base) = load_source(&source, ScenarioKind::OracleCompare)?;
            cfg.horizons = Some(horizons(&cfg, max_len, depth)?);
            cfg.validate()?;
            let report = run_scenario(&cfg, &base)?;
            emit_report(&report, out)
        }
        Command::DumpLanguage {
            source,
            letter,
            max_len,
            depth,
            out,
        } => {
            let (cfg, base) = load_source(&source, ScenarioKind::OracleCompare)?;
            let h = horizons(&cfg, max_len, depth)?;
            let sys = build_system(system_section(&cfg)?, "system", &cfg, &base)?;
            let seq = SubstitutionSequence::from_action_schedule(&sys.action, &sys.schedule)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let lang = generate_language(&seq, letter, h.max_len, h.depth, &resolve_budget(&cfg))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit_text(&lang.dump(), out.as_deref())
        }
        Command::DumpHierarchy {
            source,
            levels,
            out,
        } => {
            let (cfg, base) = load_source(&source, ScenarioKind::BlockHierarchy)?;
            let sys = build_system(system_section(&cfg)?, "system", &cfg, &base)?;
            let defaults = HierarchyCaps::default();
            let caps = HierarchyCaps {
                levels: levels
                    .or(cfg.hierarchy.as_ref().map(|h| h.levels))
                    .unwrap_or(defaults.levels),
                marker_cap: cfg.caps.marker_cap.unwrap_or(defaults.marker_cap),
                enumeration_cap: cfg.caps.enumeration_cap.unwrap_or(defaults.enumeration_cap),
            };
            let h = build_block_hierarchy(&sys.action, AlphabetMetric::Discrete, caps, &[])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit_text(&h.dump(), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(e)) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
