use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Circuit operation. Qubits `0..n_data` are data, the rest ancillas;
/// Pauli strings act on the data register only.
#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    H(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    /// Controlled X, Y or Z.
    ControlledPauli {
        control: usize,
        target: usize,
        letter: Pauli,
    },
    Pauli(PauliString),
    /// `exp(-iθY/2)`.
    Ry {
        qubit: usize,
        theta: f64,
    },
    /// Single-qubit depolarizing channel: X, Y, Z each with `p/3`.
    Depolarize {
        qubit: usize,
        p: f64,
    },
    /// X with probability `p`.
    Bitflip {
        qubit: usize,
        p: f64,
    },
    /// Z-basis measurement; the ancilla is not used again.
    Measure {
        qubit: usize,
        key: usize,
    },
    /// Apply `pauli` when the outcome stored under `key` equals `when`.
    Conditional {
        key: usize,
        when: bool,
        pauli: PauliString,
    },
}

impl Op {
    fn qubits(&self) -> Vec<usize> {
        match self {
            Op::H(q)
            | Op::Ry { qubit: q, .. }
            | Op::Depolarize { qubit: q, .. }
            | Op::Bitflip { qubit: q, .. }
            | Op::Measure { qubit: q, .. } => vec![*q],
            Op::Cnot { control, target }
            | Op::ControlledPauli {
                control, target, ..
            } => {
                vec![*control, *target]
            }
            Op::Pauli(_) | Op::Conditional { .. } => vec![],
        }
    }

    fn shifted(&self, n_data: usize, qubit_offset: usize, key_offset: usize) -> Op {
        let q = |q: usize| if q >= n_data { q + qubit_offset } else { q };
        match self {
            Op::H(a) => Op::H(q(*a)),
            Op::Cnot { control, target } => Op::Cnot {
                control: q(*control),
                target: q(*target),
            },
            Op::ControlledPauli {
                control,
                target,
                letter,
            } => Op::ControlledPauli {
                control: q(*control),
                target: q(*target),
                letter: *letter,
            },
            Op::Pauli(p) => Op::Pauli(p.clone()),
            Op::Ry { qubit, theta } => Op::Ry {
                qubit: q(*qubit),
                theta: *theta,
            },
            Op::Depolarize { qubit, p } => Op::Depolarize {
                qubit: q(*qubit),
                p: *p,
            },
            Op::Bitflip { qubit, p } => Op::Bitflip {
                qubit: q(*qubit),
                p: *p,
            },
            Op::Measure { qubit, key } => Op::Measure {
                qubit: q(*qubit),
                key: key + key_offset,
            },
            Op::Conditional { key, when, pauli } => Op::Conditional {
                key: key + key_offset,
                when: *when,
                pauli: pauli.clone(),
            },
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::H(q) => write!(f, "H {}", q + 1),
            Op::Cnot { control, target } => write!(f, "CNOT {} {}", control + 1, target + 1),
            Op::ControlledPauli {
                control,
                target,
                letter,
            } => {
                write!(f, "C{letter} {} {}", control + 1, target + 1)
            }
            Op::Pauli(p) => write!(f, "PAULI {p}"),
            Op::Ry { qubit, theta } => write!(f, "RY {} {theta}", qubit + 1),
            Op::Depolarize { qubit, p } => write!(f, "DEPOLARIZE {} {p}", qubit + 1),
            Op::Bitflip { qubit, p } => write!(f, "BITFLIP {} {p}", qubit + 1),
            Op::Measure { qubit, key } => write!(f, "MEASURE {} m{key}", qubit + 1),
            Op::Conditional { key, when, pauli } => {
                write!(f, "IF m{key}=={} {pauli}", u8::from(*when))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_data: usize,
    n_ancilla: usize,
    ops: Vec<Op>,
    /// Post-selection value per measurement key, `None` if unchecked.
    expected: Vec<Option<bool>>,
}

impl Circuit {
    pub fn new(n_data: usize) -> Self {
        Self {
            n_data,
            n_ancilla: 0,
            ops: Vec::new(),
            expected: Vec::new(),
        }
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn n_qubits(&self) -> usize {
        self.n_data + self.n_ancilla
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn n_keys(&self) -> usize {
        self.expected.len()
    }

    pub fn expected(&self, key: usize) -> Option<bool> {
        self.expected[key]
    }

    /// Keys that are post-selected, with their required outcomes.
    pub fn checks(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.expected
            .iter()
            .enumerate()
            .filter_map(|(k, e)| e.map(|v| (k, v)))
    }

    pub fn has_rotations(&self) -> bool {
        self.ops.iter().any(|op| matches!(op, Op::Ry { .. }))
    }

    /// A fresh ancilla in `|0⟩`; returns its qubit index.
    pub fn add_ancilla(&mut self) -> usize {
        self.n_ancilla += 1;
        self.n_qubits() - 1
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        let n = self.n_qubits();
        let qs = op.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidCircuit(format!(
                "`{op}` uses one qubit twice"
            )));
        }
        match &op {
            Op::Pauli(p) | Op::Conditional { pauli: p, .. } if p.n_qubits() != self.n_data => {
                return Err(Error::DimensionMismatch {
                    expected: self.n_data,
                    found: p.n_qubits(),
                })
            }
            Op::Conditional { key, .. } if *key >= self.n_keys() => {
                return Err(Error::InvalidCircuit(format!(
                    "`{op}` reads a key not yet measured"
                )))
            }
            Op::Depolarize { p, .. } | Op::Bitflip { p, .. } if !(0.0..=1.0).contains(p) => {
                return Err(Error::InvalidCircuit(format!(
                    "probability {p} outside [0, 1]"
                )))
            }
            Op::Measure { key, qubit } => {
                if *key != self.n_keys() {
                    return Err(Error::InvalidCircuit(format!(
                        "measurement key m{key} out of sequence"
                    )));
                }
                if *qubit < self.n_data {
                    return Err(Error::InvalidCircuit("only ancillas are measured".into()));
                }
                self.expected.push(None);
            }
            _ => {}
        }
        self.ops.push(op);
        Ok(())
    }

    /// Measure ancilla `qubit` under a new key; `expected` marks it as a check.
    pub fn measure(&mut self, qubit: usize, expected: Option<bool>) -> Result<usize> {
        let key = self.n_keys();
        self.push(Op::Measure { qubit, key })?;
        self.expected[key] = expected;
        Ok(key)
    }

    /// `self` followed by `other` on the same data register; the ancillas
    /// and keys of `other` are renumbered after those of `self`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if other.n_data != self.n_data {
            return Err(Error::DimensionMismatch {
                expected: self.n_data,
                found: other.n_data,
            });
        }
        let mut out = self.clone();
        out.n_ancilla += other.n_ancilla;
        out.expected.extend(other.expected.iter().copied());
        out.ops.extend(
            other
                .ops
                .iter()
                .map(|op| op.shifted(self.n_data, self.n_ancilla, self.n_keys())),
        );
        Ok(out)
    }

    /// Check that every ancilla is used in one contiguous block that ends
    /// with its measurement.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits();
        let mut measured = vec![false; n];
        for op in &self.ops {
            for q in op.qubits() {
                if measured[q] {
                    return Err(Error::InvalidCircuit(format!(
                        "`{op}` acts on measured qubit {}",
                        q + 1
                    )));
                }
            }
            if let Op::Measure { qubit, .. } = op {
                measured[*qubit] = true;
            }
        }
        if let Some(q) = (self.n_data..n).find(|&q| !measured[q]) {
            return Err(Error::InvalidCircuit(format!(
                "ancilla {} is never measured",
                q + 1
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} data, {} ancilla", self.n_data, self.n_ancilla)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}
