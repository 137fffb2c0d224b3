//! Qubit Hamiltonians `H = Σ h_i P_i` and their evaluation on stabilizer and
//! generalized stabilizer states.

mod codec;
mod energy;
mod ground;

use std::collections::HashMap;

pub use codec::{HamiltonianFile, TermRecord, FORMAT_VERSION, ORDERING_TAG};
pub(crate) use energy::energy_unchecked;
pub use energy::{
    energy_generalized, energy_stabilizer, optimal_theta, GeneralizedCoefficients, GeneralizedState,
};
pub use ground::{brute_force_ground, GroundState, MAX_BRUTE_FORCE_QUBITS};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::scalar::Scalar;

/// Molecular provenance of a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeMeta {
    pub molecule: String,
    pub bond_length_angstrom: f64,
    pub n_electrons: usize,
    pub n_qubits_total: usize,
    pub ordering: String,
    pub hf_energy: Option<f64>,
    pub fci_energy: Option<f64>,
}

impl MoleculeMeta {
    /// Placeholder metadata for synthetic Hamiltonians.
    pub fn synthetic(n_qubits: usize, n_electrons: usize) -> Self {
        Self {
            molecule: "synthetic".into(),
            bond_length_angstrom: 0.0,
            n_electrons,
            n_qubits_total: n_qubits,
            ordering: ORDERING_TAG.into(),
            hf_energy: None,
            fci_energy: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub coeff: T,
    /// Hermitian with sign +1.
    pub pauli: PauliString,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian<T> {
    n_qubits: usize,
    terms: Vec<Term<T>>,
    meta: MoleculeMeta,
}

impl<T: Scalar> QubitHamiltonian<T> {
    /// Normalizes: signs fold into coefficients, equal strings merge, exact
    /// zeros drop, terms sort by (weight, letters).
    pub fn new(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (T, PauliString)>,
        meta: MoleculeMeta,
    ) -> Result<Self> {
        if !meta.n_electrons.is_multiple_of(2) {
            return Err(Error::UnsupportedSystem(format!(
                "{} electrons: only closed-shell systems are supported",
                meta.n_electrons
            )));
        }
        if meta.n_electrons > n_qubits {
            return Err(Error::Schema(format!(
                "{} electrons do not fit in {n_qubits} spin orbitals",
                meta.n_electrons
            )));
        }
        let mut merged: HashMap<PauliString, T> = HashMap::new();
        let mut order = Vec::new();
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: p.n_qubits(),
                });
            }
            let Some(sign) = p.sign() else {
                return Err(Error::NotHermitian(p.to_string()));
            };
            if !c.is_finite() {
                return Err(Error::Schema(format!("non-finite coefficient on {p}")));
            }
            let key = p.unsigned();
            let c = if sign < 0 { -c } else { c };
            match merged.get_mut(&key) {
                Some(v) => *v = *v + c,
                None => {
                    order.push(key.clone());
                    merged.insert(key, c);
                }
            }
        }
        let mut terms: Vec<Term<T>> = order
            .into_iter()
            .filter_map(|p| {
                let c = merged[&p];
                (c != T::zero()).then_some(Term { coeff: c, pauli: p })
            })
            .collect();
        terms.sort_by_cached_key(|t| (t.pauli.weight(), t.pauli.to_dense_string()));
        Ok(Self {
            n_qubits,
            terms,
            meta,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn meta(&self) -> &MoleculeMeta {
        &self.meta
    }

    pub fn n_electrons(&self) -> usize {
        self.meta.n_electrons
    }

    /// `αH₁ + βH₂` on the same register; metadata taken from `self`.
    pub fn linear_combination(&self, alpha: T, other: &Self, beta: T) -> Result<Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| (t.coeff * alpha, t.pauli.clone()))
            .chain(
                other
                    .terms
                    .iter()
                    .map(|t| (t.coeff * beta, t.pauli.clone())),
            );
        Self::new(self.n_qubits, terms, self.meta.clone())
    }

    /// Hartree–Fock occupation: the first `n_electrons` qubits set.
    pub fn hf_bits(&self) -> Vec<bool> {
        (0..self.n_qubits)
            .map(|q| q < self.meta.n_electrons)
            .collect()
    }

    /// Convert coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> QubitHamiltonian<U> {
        QubitHamiltonian {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: U::from_f64_lossy(t.coeff.as_f64()),
                    pauli: t.pauli.clone(),
                })
                .collect(),
            meta: self.meta.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    #[test]
    fn normalization_merges_and_drops() {
        let h = QubitHamiltonian::<f64>::new(
            2,
            vec![
                (1.0, p("Z1", 2)),
                (0.5, p("Z1", 2)),
                (0.25, p("-X1X2", 2)),
                (0.3, p("Z2", 2)),
                (-0.3, p("Z2", 2)),
            ],
            MoleculeMeta::synthetic(2, 0),
        )
        .unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].coeff, 1.5);
        assert_eq!(h.terms()[1].coeff, -0.25);
        assert_eq!(h.terms()[1].pauli, p("X1X2", 2));
    }

    #[test]
    fn rejects_open_shell_and_bad_terms() {
        assert!(QubitHamiltonian::<f64>::new(2, vec![], MoleculeMeta::synthetic(2, 1)).is_err());
        assert!(QubitHamiltonian::<f64>::new(
            2,
            vec![(1.0, p("iZ1", 2))],
            MoleculeMeta::synthetic(2, 0)
        )
        .is_err());
        assert!(QubitHamiltonian::<f64>::new(
            2,
            vec![(f64::NAN, p("Z1", 2))],
            MoleculeMeta::synthetic(2, 0)
        )
        .is_err());
    }
}
