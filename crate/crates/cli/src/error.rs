use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("construction at {position} needs {requested} elements, cap is {cap} (set LATKIT_CAP to raise it)")]
    Cap { requested: usize, cap: usize, position: usize },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Lib(#[from] latkit::Error),
}

impl CliError {
    /// 2 for a mathematical refutation of the input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use latkit::Error as E;
        match self {
            CliError::Lib(
                E::NotAPartialOrder { .. }
                | E::NotALattice { .. }
                | E::EmptyCarrier
                | E::NotDistributive { .. }
                | E::NotACongruence { .. }
                | E::NotAHomomorphism { .. }
                | E::NotConvex { .. }
                | E::ProbeOutsideVariety { .. }
                | E::UnclassifiableGadget { .. },
            ) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use latkit::Error as E;
        match self {
            CliError::Parse { .. } => "parse_error",
            CliError::Cap { .. } => "cap_exceeded",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Lib(e) => match e {
                E::NotAPartialOrder { .. } => "not_a_partial_order",
                E::NotALattice { .. } => "not_a_lattice",
                E::EmptyCarrier => "empty_carrier",
                E::IndexOutOfRange { .. } => "index_out_of_range",
                E::DuplicateName(_) => "duplicate_name",
                E::UnknownName(_) => "unknown_name",
                E::SizeGuard { .. } => "size_guard",
                E::CapExceeded { .. } => "cap_exceeded",
                E::NotDistributive { .. } => "not_distributive",
                E::UnknownFixture(_) => "unknown_fixture",
                E::CarrierMismatch { .. } => "carrier_mismatch",
                E::NotACongruence { .. } => "not_a_congruence",
                E::NotAHomomorphism { .. } => "not_a_homomorphism",
                E::UnboundVariable(_) => "unbound_variable",
                E::TooManyVariables { .. } => "too_many_variables",
                E::ProbeOutsideVariety { .. } => "probe_outside_variety",
                E::NotConvex { .. } => "not_convex",
                E::BudgetExceeded(_) => "budget_exceeded",
                E::UnclassifiableGadget { .. } => "unclassifiable_gadget",
                E::ElementOutOfWindow(_) => "element_out_of_window",
                E::Document(_) => "invalid_document",
                E::InvalidArgument(_) => "invalid_argument",
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::Parse { position, .. } | CliError::Cap { position, .. } = self {
            v["position"] = json!(position);
        }
        v
    }
}
