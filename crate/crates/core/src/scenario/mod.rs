//! Scenario files, the language oracle, orchestration and reports.

pub mod config;
pub mod oracle;
pub mod report;
pub mod run;

pub use config::{ConfigError, ScenarioConfig, ScenarioKind};
pub use oracle::{complexity_profile, oracle_language, ComplexityProfile};
pub use report::{Check, Report, Status};
pub use run::{build_system, output_path, resolve_budget, run_scenario, write_report, BuiltSystem};
