mod args;
mod commands;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use landspec_core::scenario::ScenarioError;
use landspec_core::ModelError;

use args::{Cli, Command};

/// Error carried to `main` with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const NO_EQUILIBRIUM: u8 = 2;
    pub const ASSUMPTION: u8 = 3;
    pub const CHECK: u8 = 4;
    pub const NUMERICAL: u8 = 5;

    pub fn io(message: String) -> Self {
        Failure {
            code: Self::USAGE,
            message,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: Self::USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        let code = match e {
            ModelError::NoEquilibrium(_) => Self::NO_EQUILIBRIUM,
            ModelError::AssumptionViolated(_) => Self::ASSUMPTION,
            ModelError::MissingParameter(_) | ModelError::InvalidArgument(_) => Self::USAGE,
            _ => Self::NUMERICAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Failure::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Check(a) => commands::check(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("landspec: {f}");
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_errors_map_to_exit_codes() {
        let code = |e: ModelError| Failure::from(e).code;
        assert_eq!(code(ModelError::NoEquilibrium("x".into())), 2);
        assert_eq!(code(ModelError::MissingParameter("beta")), 1);
        assert_eq!(code(ModelError::TruncationCap { cap: 3 }), 5);
        assert_eq!(code(ModelError::ShootingFailed("x".into())), 5);
    }

    #[test]
    fn scenario_errors_are_usage_errors() {
        assert_eq!(Failure::from(ScenarioError::NoRate).code, 1);
    }
}
