//! `[[n,1,2]]` error-detection codes whose codespace contains a given
//! stabilizer state, built through the codeword-stabilized construction.
//!
//! The state is brought to graph form by local Cliffords. Every weight-1 Pauli
//! then acts on the graph state like a Z-string (the error table), and any
//! other Z-string `w` serves as a word operator: `{I, w}` together with the
//! graph stabilizers define a one-qubit code. The equivalent stabilizer code
//! keeps the stabilizers commuting with `w`.

mod file;
mod word;

pub use file::{CodeFile, DistanceSummary};
pub use word::{find_word_operator, WordChoice, WordSearch, WordTier};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::stabilizer::{
    to_standard_form, CliffordCircuit, GraphForm, PauliGroup, StabilizerTableau,
};

/// Equivalent Z-string of every weight-1 error on a graph state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorTable {
    /// `rows[q]` holds the Z-support for `X_q`, `Y_q`, `Z_q`.
    rows: Vec<[Vec<bool>; 3]>,
    members: HashSet<Vec<bool>>,
}

fn kind_index(letter: Pauli) -> usize {
    match letter {
        Pauli::X => 0,
        Pauli::Y => 1,
        Pauli::Z => 2,
        Pauli::I => panic!("identity is not an error"),
    }
}

impl ErrorTable {
    pub fn n_qubits(&self) -> usize {
        self.rows.len()
    }

    /// Z-support equivalent to the error `letter` on qubit `q`.
    pub fn row(&self, q: usize, letter: Pauli) -> &[bool] {
        &self.rows[q][kind_index(letter)]
    }

    pub fn contains(&self, z_support: &[bool]) -> bool {
        self.members.contains(z_support)
    }

    /// `(q, letter, support)` for all `3n` rows.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Pauli, &[bool])> {
        self.rows.iter().enumerate().flat_map(|(q, r)| {
            [Pauli::X, Pauli::Y, Pauli::Z]
                .into_iter()
                .zip(r.iter())
                .map(move |(l, s)| (q, l, s.as_slice()))
        })
    }
}

/// `X_q → Z_{N(q)}`, `Y_q → Z_q Z_{N(q)}`, `Z_q → Z_q`.
pub fn build_error_table(g: &GraphForm) -> ErrorTable {
    let n = g.n_qubits();
    let rows: Vec<[Vec<bool>; 3]> = (0..n)
        .map(|q| {
            let x = g.adjacency[q].clone();
            let mut y = x.clone();
            y[q] = !y[q];
            let z: Vec<bool> = (0..n).map(|u| u == q).collect();
            [x, y, z]
        })
        .collect();
    let members = rows.iter().flat_map(|r| r.iter().cloned()).collect();
    ErrorTable { rows, members }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// The molecular qubit frame of the input state.
    Original,
    /// The graph-state frame after the local Clifford.
    Standard,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::Original => "original",
            Frame::Standard => "standard",
        })
    }
}

/// `[[n,1]]` stabilizer code with one logical pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n_qubits: usize,
    generators: Vec<PauliString>,
    pub logical_x: PauliString,
    pub logical_z: PauliString,
    pub frame: Frame,
}

impl StabilizerCode {
    pub fn new(
        generators: Vec<PauliString>,
        logical_x: PauliString,
        logical_z: PauliString,
        frame: Frame,
    ) -> Result<Self> {
        let code = Self {
            n_qubits: logical_x.n_qubits(),
            generators,
            logical_x,
            logical_z,
            frame,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn group(&self) -> PauliGroup {
        PauliGroup::from_generators(self.n_qubits, &self.generators)
            .expect("validated at construction")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits;
        let group = PauliGroup::from_generators(n, &self.generators)?;
        if self.generators.len() + 1 != n || group.rank() + 1 != n {
            return Err(Error::InvalidTableau(format!(
                "{} generators of rank {} for a one-qubit code on {n} qubits",
                self.generators.len(),
                group.rank()
            )));
        }
        for l in [&self.logical_x, &self.logical_z] {
            if l.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.n_qubits(),
                });
            }
            if !l.is_hermitian() {
                return Err(Error::NotHermitian(l.to_string()));
            }
            if !group.centralizes(l) {
                return Err(Error::InvalidTableau(format!(
                    "logical {l} anticommutes with a stabilizer"
                )));
            }
        }
        if !self.logical_x.anticommutes_with(&self.logical_z) {
            return Err(Error::InvalidTableau("logical X and Z commute".into()));
        }
        Ok(())
    }

    /// `C · code · C†`, relabelled as `frame`.
    pub fn conjugated(&self, c: &CliffordCircuit, frame: Frame) -> Result<Self> {
        let map = |p: &PauliString| c.conjugate(p);
        Self::new(
            self.generators.iter().map(map).collect::<Result<_>>()?,
            map(&self.logical_x)?,
            map(&self.logical_z)?,
            frame,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Anticommutes with some generator.
    Detectable,
    /// Inside the stabilizer group up to sign.
    Trivial,
    /// A nontrivial logical operator.
    Undetectable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub entries: Vec<(PauliString, ErrorClass)>,
}

impl DistanceReport {
    pub fn passes(&self) -> bool {
        self.count(ErrorClass::Undetectable) == 0
    }

    pub fn count(&self, class: ErrorClass) -> usize {
        self.entries.iter().filter(|(_, c)| *c == class).count()
    }

    pub fn undetectable(&self) -> Vec<&PauliString> {
        self.entries
            .iter()
            .filter(|(_, c)| *c == ErrorClass::Undetectable)
            .map(|(p, _)| p)
            .collect()
    }
}

pub fn classify_error(group: &PauliGroup, e: &PauliString) -> ErrorClass {
    if !group.centralizes(e) {
        ErrorClass::Detectable
    } else if group.membership(e).is_some() {
        ErrorClass::Trivial
    } else {
        ErrorClass::Undetectable
    }
}

/// Classify all `3n` weight-1 Paulis against the code.
pub fn verify_distance(code: &StabilizerCode) -> DistanceReport {
    let group = code.group();
    let n = code.n_qubits();
    let entries = (0..n)
        .flat_map(|q| [Pauli::X, Pauli::Y, Pauli::Z].map(|l| PauliString::single(n, q, l)))
        .map(|e| {
            let c = classify_error(&group, &e);
            (e, c)
        })
        .collect();
    DistanceReport { entries }
}

/// Every generator has expectation `+1` on the state.
pub fn codespace_contains(code: &StabilizerCode, state: &StabilizerTableau) -> Result<bool> {
    if state.n_qubits() != code.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: code.n_qubits(),
            found: state.n_qubits(),
        });
    }
    Ok(code
        .generators()
        .iter()
        .all(|g| state.expectation_unchecked(g) == 1))
}

/// Everything produced on the way from a state to its code.
#[derive(Debug, Clone)]
pub struct CodeConstruction {
    /// The code in the frame of the input state.
    pub code: StabilizerCode,
    /// The same code in the graph-state frame.
    pub standard: StabilizerCode,
    pub graph: GraphForm,
    pub table: ErrorTable,
    pub word: WordChoice,
}

impl CodeConstruction {
    /// The word operator in the input frame.
    pub fn word_operator(&self) -> &PauliString {
        &self.word.original
    }
}

/// Code in the graph frame for word operator `w` (a Z-string there):
/// `w` is logical X, the first graph generator anticommuting with it is
/// logical Z, and the other anticommuting generators are multiplied by it.
pub(crate) fn assemble_standard(g: &GraphForm, w: &PauliString) -> Result<StabilizerCode> {
    let gens = g.generators();
    let pick = gens
        .iter()
        .position(|s| s.anticommutes_with(w))
        .ok_or_else(|| Error::Invariant(format!("no graph generator anticommutes with {w}")))?;
    let s = gens[pick].clone();
    let rest = gens
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pick)
        .map(|(_, h)| {
            if h.anticommutes_with(w) {
                h * &s
            } else {
                h.clone()
            }
        })
        .collect();
    StabilizerCode::new(rest, w.clone(), s, Frame::Standard)
}

/// Standard form, error table, word-operator search and the equivalent
/// stabilizer code, reported back in the input frame.
pub fn build_code(state: &StabilizerTableau, opts: &WordSearch) -> Result<CodeConstruction> {
    let graph = to_standard_form(state);
    let table = build_error_table(&graph);
    let word = find_word_operator(state, &graph, &table, opts)?;
    let standard = assemble_standard(&graph, &word.standard)?;
    let code = standard.conjugated(&graph.local_clifford.inverse(), Frame::Original)?;
    if !codespace_contains(&code, state)? {
        return Err(Error::Invariant(
            "state is not in the codespace of its own code".into(),
        ));
    }
    Ok(CodeConstruction {
        code,
        standard,
        graph,
        table,
        word,
    })
}
