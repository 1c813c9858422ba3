use std::path::PathBuf;

use cubelab_cubes::Frac;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Global knobs shared by every subcommand. Reports must stay bit-identical
/// across runs and thread counts, so nothing here may leak into stdout
/// except through `format` and the opt-in `timing` field.
#[derive(Clone, Debug)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub budget: f64,
    pub eta: Frac,
    pub sigma: Frac,
    pub delta: Frac,
    pub threads: usize,
    pub format: Format,
    pub seed: u64,
    pub timing: bool,
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.budget.is_finite() || self.budget <= 0.0 {
            return Err(CliError::Invalid(format!(
                "budget must be positive and finite, got {}",
                self.budget
            )));
        }
        let one = Frac::new(1, 1);
        if self.eta == Frac::new(0, 1) || self.eta > one {
            return Err(CliError::Invalid(format!("eta = {} not in (0, 1]", self.eta)));
        }
        if self.sigma >= one {
            return Err(CliError::Invalid(format!("sigma = {} not in [0, 1)", self.sigma)));
        }
        Ok(())
    }

    /// Worker partitions for the counting engines; --threads 0 keeps one.
    pub fn partitions(&self) -> usize {
        self.threads.max(1)
    }
}
