use serde::{Deserialize, Serialize};

use super::{verify_distance, ErrorClass, Frame, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub passes: bool,
    pub detectable: usize,
    pub trivial: usize,
    pub undetectable: Vec<String>,
}

/// On-disk form of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub frame: String,
    pub stabilizers: Vec<String>,
    pub logical_x: String,
    pub logical_z: String,
    pub word_operator: String,
    pub distance_report: DistanceSummary,
}

impl CodeFile {
    pub fn new(code: &StabilizerCode, word_operator: &PauliString) -> Self {
        let r = verify_distance(code);
        Self {
            n: code.n_qubits(),
            frame: code.frame.to_string(),
            stabilizers: code.generators().iter().map(ToString::to_string).collect(),
            logical_x: code.logical_x.to_string(),
            logical_z: code.logical_z.to_string(),
            word_operator: word_operator.to_string(),
            distance_report: DistanceSummary {
                passes: r.passes(),
                detectable: r.count(ErrorClass::Detectable),
                trivial: r.count(ErrorClass::Trivial),
                undetectable: r.undetectable().iter().map(|p| p.to_string()).collect(),
            },
        }
    }

    pub fn to_code(&self) -> Result<StabilizerCode> {
        let parse =
            |s: &str| PauliString::parse(s, self.n).map_err(|e| Error::Schema(e.to_string()));
        let frame = match self.frame.as_str() {
            "original" => Frame::Original,
            "standard" => Frame::Standard,
            other => return Err(Error::Schema(format!("unknown frame `{other}`"))),
        };
        StabilizerCode::new(
            self.stabilizers
                .iter()
                .map(|s| parse(s))
                .collect::<Result<_>>()?,
            parse(&self.logical_x)?,
            parse(&self.logical_z)?,
            frame,
        )
    }
}
