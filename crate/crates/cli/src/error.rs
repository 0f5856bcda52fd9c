use std::path::PathBuf;

use eulerweft::enumerators::EnumError;
use eulerweft::graphs::GraphError;
use eulerweft::ising::IsingError;
use eulerweft::simulator::SimError;
use eulerweft::{CircuitError, Gf2Error};
use thiserror::Error;

/// Every failure maps to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

fn is_cap_gf2(e: &Gf2Error) -> bool {
    matches!(e, Gf2Error::CapExceeded { .. })
}

fn is_cap_circuit(e: &CircuitError) -> bool {
    matches!(e, CircuitError::Matrix(m) if is_cap_gf2(m))
}

fn is_cap_enum(e: &EnumError) -> bool {
    match e {
        EnumError::Gf2(g) => is_cap_gf2(g),
        EnumError::InvalidCircuit(c) => is_cap_circuit(c),
        EnumError::DimensionMismatch { .. } => false,
    }
}

fn is_cap_graph(e: &GraphError) -> bool {
    match e {
        GraphError::BudgetExhausted { .. } => true,
        GraphError::Gf2(g) => is_cap_gf2(g),
        GraphError::Circuit(c) => is_cap_circuit(c),
        _ => false,
    }
}

fn classify(cap: bool, msg: String) -> CliError {
    if cap {
        CliError::Cap(msg)
    } else {
        CliError::Validation(msg)
    }
}

impl From<Gf2Error> for CliError {
    fn from(e: Gf2Error) -> Self {
        classify(is_cap_gf2(&e), e.to_string())
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        classify(is_cap_circuit(&e), e.to_string())
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        classify(is_cap_enum(&e), e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        classify(is_cap_graph(&e), e.to_string())
    }
}

impl From<IsingError> for CliError {
    fn from(e: IsingError) -> Self {
        let cap = match &e {
            IsingError::CapExceeded { .. } => true,
            IsingError::Enum(x) => is_cap_enum(x),
            IsingError::Graph(x) => is_cap_graph(x),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        let cap = match &e {
            SimError::CapExceeded { .. } => true,
            SimError::Gf2(g) => is_cap_gf2(g),
            SimError::Circuit(c) => is_cap_circuit(c),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}
