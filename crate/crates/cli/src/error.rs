use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] fbs_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Serialize)]
struct Report<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use fbs_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::Unsupported(_)) => 3,
            CliError::Core(E::BudgetExceeded(_)) => 4,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        use fbs_core::Error as E;
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e {
                E::InvalidCartan(_) => "invalid_cartan",
                E::UnknownPreset(_) => "unknown_preset",
                E::IndexOutOfRange { .. } => "index_out_of_range",
                E::RankMismatch { .. } => "rank_mismatch",
                E::NotDominant(_) => "not_dominant",
                E::EmptySubset => "empty_subset",
                E::InvalidSubset(_) => "invalid_subset",
                E::NonReducedWord(_) => "non_reduced_word",
                E::NegativeEntry { .. } => "negative_entry",
                E::Incompatible(_) => "incompatible",
                E::Unsupported(_) => "unsupported",
                E::BudgetExceeded(_) => "budget_exceeded",
                E::NotInCrystal(_) => "not_in_crystal",
                E::NotEClosed(_) => "not_e_closed",
                E::InvalidArgument(_) => "invalid_argument",
            },
        }
    }

    pub fn to_json(&self) -> String {
        let report = Report { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() };
        serde_json::to_string(&report).expect("plain data serializes")
    }
}
