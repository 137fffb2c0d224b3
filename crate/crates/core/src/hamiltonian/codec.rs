use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MoleculeMeta, QubitHamiltonian};
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::scalar::Scalar;

pub const FORMAT_VERSION: u32 = 1;
pub const ORDERING_TAG: &str = "interleaved-spin-occupied-first";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: f64,
    pub pauli: String,
}

/// On-disk Hamiltonian layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub format_version: u32,
    pub n_qubits: usize,
    pub molecule: String,
    pub bond_length_angstrom: f64,
    pub n_electrons: usize,
    pub ordering: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_qubits_total: Option<usize>,
    pub hf_energy: Option<f64>,
    pub fci_energy: Option<f64>,
    pub terms: Vec<TermRecord>,
}

fn parse_term(label: &str, n: usize) -> Result<PauliString> {
    let t = label.trim();
    if t.starts_with(['+', '-', 'i']) {
        return Err(Error::Schema(format!(
            "term `{label}` carries a sign or phase; signs belong in coeff"
        )));
    }
    PauliString::parse(t, n).map_err(|e| Error::Schema(format!("term `{label}`: {e}")))
}

impl HamiltonianFile {
    pub fn into_hamiltonian<T: Scalar>(self) -> Result<QubitHamiltonian<T>> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Schema(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        if self.n_qubits == 0 {
            return Err(Error::Schema("n_qubits must be positive".into()));
        }
        if self.ordering.is_empty() {
            return Err(Error::Schema("ordering tag is empty".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for r in &self.terms {
            if !r.coeff.is_finite() {
                return Err(Error::Schema(format!("non-finite coeff on `{}`", r.pauli)));
            }
            terms.push((
                T::from_f64_lossy(r.coeff),
                parse_term(&r.pauli, self.n_qubits)?,
            ));
        }
        let meta = MoleculeMeta {
            n_qubits_total: self.n_qubits_total.unwrap_or(self.n_qubits),
            molecule: self.molecule,
            bond_length_angstrom: self.bond_length_angstrom,
            n_electrons: self.n_electrons,
            ordering: self.ordering,
            hf_energy: self.hf_energy,
            fci_energy: self.fci_energy,
        };
        QubitHamiltonian::new(self.n_qubits, terms, meta).map_err(|e| match e {
            Error::Schema(_) => e,
            other => Error::Schema(other.to_string()),
        })
    }

    pub fn from_hamiltonian<T: Scalar>(h: &QubitHamiltonian<T>) -> Self {
        let m = h.meta();
        Self {
            format_version: FORMAT_VERSION,
            n_qubits: h.n_qubits(),
            molecule: m.molecule.clone(),
            bond_length_angstrom: m.bond_length_angstrom,
            n_electrons: m.n_electrons,
            ordering: m.ordering.clone(),
            n_qubits_total: (m.n_qubits_total != h.n_qubits()).then_some(m.n_qubits_total),
            hf_energy: m.hf_energy,
            fci_energy: m.fci_energy,
            terms: h
                .terms()
                .iter()
                .map(|t| TermRecord {
                    coeff: t.coeff.as_f64(),
                    pauli: t.pauli.to_string(),
                })
                .collect(),
        }
    }
}

impl<T: Scalar> QubitHamiltonian<T> {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: HamiltonianFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.into_hamiltonian()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        Self::from_json_str(&text).map_err(|e| Error::Schema(format!("{}: {}", path.display(), e)))
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(
            &HamiltonianFile::from_hamiltonian(self),
        )?)
    }
}
