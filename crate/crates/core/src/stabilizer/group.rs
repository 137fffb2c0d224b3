use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Bit of `p` in symplectic column `c`: columns `0..n` are the X block,
/// `n..2n` the Z block.
#[inline]
pub(crate) fn column_bit(p: &PauliString, c: usize) -> bool {
    let n = p.n_qubits();
    if c < n {
        p.x_bit(c)
    } else {
        p.z_bit(c - n)
    }
}

/// Result of a full row reduction.
pub(crate) struct Reduced {
    pub rows: Vec<PauliString>,
    pub pivots: Vec<usize>,
    /// Rows that reduced to a multiple of the identity (phase kept).
    pub null_rows: Vec<PauliString>,
}

/// Reduced row-echelon form over columns `[x_0..x_{n-1}, z_0..z_{n-1}]`,
/// every pivot column cleared in all other rows, phases tracked exactly.
pub(crate) fn reduce(mut rows: Vec<PauliString>, n: usize) -> Reduced {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..2 * n {
        if rank == rows.len() {
            break;
        }
        let Some(r) = (rank..rows.len()).find(|&r| column_bit(&rows[r], c)) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && column_bit(row, c) {
                row.mul_right(&pivot);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let null_rows = rows.split_off(rank);
    Reduced {
        rows,
        pivots,
        null_rows,
    }
}

/// Total order on canonical rows: column bits in column order, then sign.
pub(crate) fn row_cmp(a: &PauliString, b: &PauliString) -> Ordering {
    let n = a.n_qubits();
    for c in 0..2 * n {
        match column_bit(a, c).cmp(&column_bit(b, c)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.is_negative().cmp(&b.is_negative())
}

/// Abelian group of Hermitian Pauli strings not containing `-I`, stored in
/// canonical reduced form. Two groups are equal iff their forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliGroup {
    n: usize,
    rows: Vec<PauliString>,
    pivots: Vec<usize>,
}

impl PauliGroup {
    pub fn from_generators(n_qubits: usize, generators: &[PauliString]) -> Result<Self> {
        for g in generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: g.n_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::NotHermitian(g.to_string()));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.anticommutes_with(b) {
                    return Err(Error::InvalidTableau(format!("{a} and {b} anticommute")));
                }
            }
        }
        let red = reduce(generators.to_vec(), n_qubits);
        if red.null_rows.iter().any(|r| r.i_exponent() != 0) {
            return Err(Error::InvalidTableau(
                "generators produce -I (inconsistent signs)".into(),
            ));
        }
        Ok(Self {
            n: n_qubits,
            rows: red.rows,
            pivots: red.pivots,
        })
    }

    /// Caller guarantees the rows are commuting, Hermitian and consistent.
    pub(crate) fn from_trusted(n: usize, generators: Vec<PauliString>) -> Self {
        let red = reduce(generators, n);
        debug_assert!(red.null_rows.iter().all(|r| r.i_exponent() == 0));
        Self {
            n,
            rows: red.rows,
            pivots: red.pivots,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical generators.
    pub fn generators(&self) -> &[PauliString] {
        &self.rows
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `p` against the canonical rows in place. Afterwards `p` has
    /// zeros in every pivot column and `p_in = p_out · g` for some `g` in the
    /// group.
    pub(crate) fn reduce_in_place(&self, p: &mut PauliString) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if column_bit(p, c) {
                p.mul_right(row);
            }
        }
    }

    /// `Some(+1)` if `p` is in the group, `Some(-1)` if `-p` is, `None`
    /// otherwise. `p` must be Hermitian.
    pub fn membership(&self, p: &PauliString) -> Option<i8> {
        debug_assert_eq!(p.n_qubits(), self.n);
        let mut r = p.clone();
        self.reduce_in_place(&mut r);
        if !r.is_identity_letters() {
            return None;
        }
        // p · g = i^k I with g in the group, so p = i^k g.
        match r.i_exponent() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.membership(p) == Some(1)
    }

    /// True iff `p` commutes with every element.
    pub fn centralizes(&self, p: &PauliString) -> bool {
        self.rows.iter().all(|g| !g.anticommutes_with(p))
    }

    pub(crate) fn cmp_rows(&self, other: &Self) -> Ordering {
        for (a, b) in self.rows.iter().zip(&other.rows) {
            match row_cmp(a, b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.rows.len().cmp(&other.rows.len())
    }
}
