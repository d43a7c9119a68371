use std::time::Duration;

use diffprim::search::SearchConfig;
use diffprim::Error;
use serde_json::{json, Value};

use crate::Format;

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// The claim checked or searched for was established.
    Established,
    /// Caps ran out, nothing was found, or an identity failed.
    NotEstablished(String),
    /// The input could not be read, parsed or validated.
    InputError(String),
}

impl Status {
    pub fn code(&self) -> u8 {
        match self {
            Status::Established => 0,
            Status::NotEstablished(_) => 1,
            Status::InputError(_) => 2,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Status::Established => "ok",
            Status::NotEstablished(_) => "not_established",
            Status::InputError(_) => "input_error",
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Status::Established => None,
            Status::NotEstablished(m) | Status::InputError(m) => Some(m),
        }
    }
}

impl From<Error> for Status {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_)
            | Error::NotFound { .. }
            | Error::RandomizationExhausted { .. }
            | Error::DecompositionFailed { .. }
            | Error::NoWitness { .. }
            | Error::InvalidCertificate(_) => Status::NotEstablished(e.to_string()),
            _ => Status::InputError(e.to_string()),
        }
    }
}

/// What a subcommand produced: a structured payload, its human rendering
/// and the status.
pub struct Outcome {
    pub payload: Value,
    pub human: Vec<String>,
    pub status: Status,
}

impl Outcome {
    pub fn ok(payload: Value, human: Vec<String>) -> Self {
        Outcome { payload, human, status: Status::Established }
    }

    pub fn failed(status: Status) -> Self {
        Outcome { payload: Value::Null, human: Vec::new(), status }
    }
}

pub struct RunReport {
    pub command: Vec<String>,
    pub config: SearchConfig,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

fn config_json(cfg: &SearchConfig) -> Value {
    json!({
        "max_p_degree": cfg.max_p_degree,
        "max_coeff_height": cfg.max_coeff_height,
        "lambda_height": cfg.lambda_height,
        "retries": cfg.retries,
        "seed": cfg.seed,
        "membership_degree_cap": cfg.membership_degree_cap,
        "symbolic_confirm": cfg.symbolic_confirm,
        "symbolic_rank": cfg.symbolic_rank,
        "max_candidates": cfg.max_candidates,
        "parallel": cfg.parallel,
    })
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        self.outcome.status.code()
    }

    /// The machine document. Timing is left out so identical runs print
    /// identical bytes.
    pub fn machine(&self) -> String {
        let status = &self.outcome.status;
        let doc = json!({
            "command": self.command,
            "config": config_json(&self.config),
            "status": status.label(),
            "exit_code": status.code(),
            "error": status.message(),
            "result": self.outcome.payload,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("json values serialize");
        out.push('\n');
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for line in &self.outcome.human {
            out.push_str(line);
            out.push('\n');
        }
        if self.outcome.status == Status::Established {
            out.push_str(&format!("ok ({:.2?})\n", self.elapsed));
        }
        out
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Machine => print!("{}", self.machine()),
            Format::Human => print!("{}", self.human()),
        }
        if let Some(m) = self.outcome.status.message() {
            eprintln!("diffprim: {}: {m}", self.outcome.status.label().replace('_', " "));
        }
    }
}
