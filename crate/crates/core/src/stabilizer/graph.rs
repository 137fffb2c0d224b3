use crate::pauli::PauliString;

use super::group::reduce;
use super::{CliffordCircuit, CliffordGate, StabilizerTableau};

/// Graph-state standard form `±X_v Z_{N(v)}` reached by local Cliffords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphForm {
    pub adjacency: Vec<Vec<bool>>,
    /// Maps the input state to the graph state.
    pub local_clifford: CliffordCircuit,
    /// `true` where generator `v` carries sign −1.
    pub negative: Vec<bool>,
}

impl GraphForm {
    pub fn n_qubits(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n_qubits())
            .filter(|&u| self.adjacency[v][u])
            .collect()
    }

    /// `±X_v Z_{N(v)}` with its recorded sign.
    pub fn generator(&self, v: usize) -> PauliString {
        let n = self.n_qubits();
        let mut g = PauliString::z_on(n, self.neighbors(v));
        g.mul_right(&PauliString::x_on(n, [v]));
        // letters commute on distinct qubits; reapply the Hermitian sign
        g.with_sign(self.negative[v])
    }

    pub fn generators(&self) -> Vec<PauliString> {
        (0..self.n_qubits()).map(|v| self.generator(v)).collect()
    }

    /// Sign as ±1.
    pub fn sign(&self, v: usize) -> i8 {
        if self.negative[v] {
            -1
        } else {
            1
        }
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        !self.adjacency[v].iter().any(|&b| b)
    }
}

/// Standard form by local Cliffords: Hadamards on the columns without an X
/// pivot, Gauss-Jordan on the X block, then `S†` wherever a diagonal `Y`
/// remains.
pub fn to_standard_form(state: &StabilizerTableau) -> GraphForm {
    let n = state.n_qubits();
    let pivots: Vec<usize> = state
        .group()
        .pivots()
        .iter()
        .copied()
        .filter(|&c| c < n)
        .collect();
    let mut lc = CliffordCircuit::new(n);
    for q in (0..n).filter(|q| !pivots.contains(q)) {
        lc.push(CliffordGate::H(q)).expect("qubit in range");
    }
    let mut rows: Vec<PauliString> = state
        .generators()
        .iter()
        .map(|g| lc.conjugate(g).expect("same register"))
        .collect();
    // The X block is now invertible: restricted to the hadamarded columns the
    // incoming Z rows have full rank. Reduce it to the identity.
    rows = reduce(rows, n).rows;
    debug_assert!((0..n).all(|v| (0..n).all(|u| rows[v].x_bit(u) == (u == v))));
    for v in 0..n {
        if rows[v].z_bit(v) {
            let gate = CliffordGate::Sdg(v);
            for r in rows.iter_mut() {
                gate.conjugate_in_place(r);
            }
            lc.push(gate).expect("qubit in range");
        }
    }
    let adjacency: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| (0..n).map(|u| r.z_bit(u)).collect())
        .collect();
    debug_assert!((0..n).all(|v| (0..n).all(|u| adjacency[v][u] == adjacency[u][v])));
    GraphForm {
        negative: rows.iter().map(PauliString::is_negative).collect(),
        adjacency,
        local_clifford: lc,
    }
}
