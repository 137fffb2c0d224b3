use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Clifford gate acting by conjugation on Pauli strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    Pauli(PauliString),
}

impl CliffordGate {
    pub fn inverse(&self) -> Self {
        match self {
            CliffordGate::S(q) => CliffordGate::Sdg(*q),
            CliffordGate::Sdg(q) => CliffordGate::S(*q),
            g => g.clone(),
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        match self {
            CliffordGate::H(_) | CliffordGate::S(_) | CliffordGate::Sdg(_) => true,
            CliffordGate::Cnot { .. } => false,
            CliffordGate::Pauli(p) => p.weight() <= 1,
        }
    }

    /// `P ← U P U†` for this gate `U`.
    pub(crate) fn conjugate_in_place(&self, p: &mut PauliString) {
        match self {
            CliffordGate::H(q) => {
                let (x, z) = (p.x_bit(*q), p.z_bit(*q));
                if x != z {
                    p.xor_x(*q);
                    p.xor_z(*q);
                }
                // Z^x X^z = (-1)^{xz} X^z Z^x
                if x && z {
                    p.add_phase(2);
                }
            }
            CliffordGate::S(q) => {
                if p.x_bit(*q) {
                    p.xor_z(*q);
                    p.add_phase(1);
                }
            }
            CliffordGate::Sdg(q) => {
                if p.x_bit(*q) {
                    p.xor_z(*q);
                    p.add_phase(3);
                }
            }
            CliffordGate::Cnot { control, target } => {
                if p.x_bit(*control) {
                    p.xor_x(*target);
                }
                if p.z_bit(*target) {
                    p.xor_z(*control);
                }
            }
            CliffordGate::Pauli(g) => {
                if g.anticommutes_with(p) {
                    p.add_phase(2);
                }
            }
        }
    }

    fn qubits(&self) -> Vec<usize> {
        match self {
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::Sdg(q) => vec![*q],
            CliffordGate::Cnot { control, target } => vec![*control, *target],
            CliffordGate::Pauli(_) => vec![],
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::H(q) => write!(f, "H({})", q + 1),
            CliffordGate::S(q) => write!(f, "S({})", q + 1),
            CliffordGate::Sdg(q) => write!(f, "Sdg({})", q + 1),
            CliffordGate::Cnot { control, target } => {
                write!(f, "CNOT({},{})", control + 1, target + 1)
            }
            CliffordGate::Pauli(p) => write!(f, "P({p})"),
        }
    }
}

/// Ordered gate list; the first gate is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<CliffordGate>,
}

impl CliffordCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n: n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: CliffordGate) -> Result<&mut Self> {
        for q in gate.qubits() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n: self.n,
                });
            }
        }
        match &gate {
            CliffordGate::Cnot { control, target } if control == target => {
                return Err(Error::InvalidCircuit(format!(
                    "CNOT control and target coincide on qubit {}",
                    control + 1
                )));
            }
            CliffordGate::Pauli(p) if p.n_qubits() != self.n => {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: p.n_qubits(),
                });
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(self)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CliffordCircuit) -> Result<Self> {
        if next.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: next.n,
            });
        }
        let mut out = self.clone();
        out.gates.extend(next.gates.iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            gates: self.gates.iter().rev().map(CliffordGate::inverse).collect(),
        }
    }

    pub fn is_local(&self) -> bool {
        self.gates.iter().all(CliffordGate::is_single_qubit)
    }

    /// `C P C†` with exact phase.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        if p.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n_qubits(),
            });
        }
        let mut out = p.clone();
        self.conjugate_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn conjugate_in_place(&self, p: &mut PauliString) {
        for g in &self.gates {
            g.conjugate_in_place(p);
        }
    }
}

/// `C P C†`.
pub fn conjugate_pauli(circuit: &CliffordCircuit, p: &PauliString) -> Result<PauliString> {
    circuit.conjugate(p)
}
