//! Pure stabilizer states.
//!
//! A [`StabilizerTableau`] always holds its generators in canonical reduced
//! form, so structural equality is group equality and hashing deduplicates
//! states.

mod amplitudes;
mod clifford;
mod graph;
mod group;
mod sum;

use std::cmp::Ordering;

pub use amplitudes::{bits_to_string, AmplitudeLimits, Amplitudes};
pub use clifford::{conjugate_pauli, CliffordCircuit, CliffordGate};
pub use graph::{to_standard_form, GraphForm};
pub use group::PauliGroup;
pub use sum::sum_stabilizers;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Action `i^m |b⟩` of a Pauli string on `|0…0⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisImage {
    pub bits: Vec<bool>,
    pub i_exponent: u8,
}

impl BasisImage {
    /// `P|0…0⟩` for `P = i^k X^x Z^z`.
    pub fn of(p: &PauliString) -> Self {
        Self {
            bits: (0..p.n_qubits()).map(|q| p.x_bit(q)).collect(),
            i_exponent: p.i_exponent(),
        }
    }

    pub fn is_zero_string(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }
}

/// Pure n-qubit stabilizer state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    group: PauliGroup,
}

impl StabilizerTableau {
    pub fn from_generators(generators: &[PauliString]) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliString::n_qubits)
            .ok_or_else(|| Error::InvalidTableau("no generators".into()))?;
        if generators.len() != n {
            return Err(Error::InvalidTableau(format!(
                "{} generators for {n} qubits",
                generators.len()
            )));
        }
        let group = PauliGroup::from_generators(n, generators)?;
        if group.rank() != n {
            return Err(Error::InvalidTableau(format!(
                "generators are dependent (rank {} < {n})",
                group.rank()
            )));
        }
        Ok(Self { group })
    }

    /// Parse a list of sparse or dense strings.
    pub fn parse(generators: &[&str], n_qubits: usize) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| PauliString::parse(s, n_qubits))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(&gens)
    }

    pub(crate) fn from_trusted(n: usize, generators: Vec<PauliString>) -> Self {
        let out = Self {
            group: PauliGroup::from_trusted(n, generators),
        };
        debug_assert!(out.validate().is_ok(), "{:?}", out.validate());
        out
    }

    /// Computational basis state; `bits[q]` is the occupation of qubit `q`.
    pub fn basis_state(bits: &[bool]) -> Self {
        let n = bits.len();
        let gens = bits
            .iter()
            .enumerate()
            .map(|(q, &b)| PauliString::z_on(n, [q]).with_sign(b))
            .collect();
        Self::from_trusted(n, gens)
    }

    pub fn zero_state(n_qubits: usize) -> Self {
        Self::basis_state(&vec![false; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.group.n_qubits()
    }

    /// Occupations if this is a computational basis state.
    pub fn basis_bits(&self) -> Option<Vec<bool>> {
        let n = self.n_qubits();
        (0..n)
            .map(
                |q| match self.expectation_unchecked(&PauliString::z_on(n, [q])) {
                    1 => Some(false),
                    -1 => Some(true),
                    _ => None,
                },
            )
            .collect()
    }

    /// Canonical generators.
    pub fn generators(&self) -> &[PauliString] {
        self.group.generators()
    }

    pub fn group(&self) -> &PauliGroup {
        &self.group
    }

    /// Re-check every tableau invariant from scratch.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits();
        let gens = self.generators();
        if gens.len() != n {
            return Err(Error::InvalidTableau(format!("rank {} ≠ {n}", gens.len())));
        }
        for g in gens {
            if !g.is_hermitian() {
                return Err(Error::InvalidTableau(format!("{g} is not Hermitian")));
            }
        }
        let regrouped = PauliGroup::from_generators(n, gens)?;
        if regrouped.rank() != n {
            return Err(Error::InvalidTableau("dependent generators".into()));
        }
        Ok(())
    }

    fn check_observable(&self, p: &PauliString) -> Result<()> {
        if p.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: p.n_qubits(),
            });
        }
        if !p.is_hermitian() {
            return Err(Error::NotHermitian(p.to_string()));
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩ ∈ {-1, 0, 1}` for Hermitian `P`.
    pub fn expectation(&self, p: &PauliString) -> Result<i8> {
        self.check_observable(p)?;
        Ok(self.expectation_unchecked(p))
    }

    /// As [`expectation`](Self::expectation) without argument checks.
    #[inline]
    pub fn expectation_unchecked(&self, p: &PauliString) -> i8 {
        self.group.membership(p).unwrap_or(0)
    }

    /// Real part of `⟨ψ|P|ψ⟩` for an arbitrary (possibly non-Hermitian)
    /// Pauli string `P`: it is nonzero only when `P` is `±`(a stabilizer).
    pub fn expectation_re(&self, p: &PauliString) -> i8 {
        let mut r = p.clone();
        self.group.reduce_in_place(&mut r);
        if !r.is_identity_letters() {
            return 0;
        }
        match r.i_exponent() {
            0 => 1,
            2 => -1,
            _ => 0,
        }
    }

    /// Tableau of `(I + (-1)^l E)|ψ⟩/√2` by the measurement-update rule.
    pub fn project_excitation(&self, e: &PauliString, l: bool) -> Result<Self> {
        self.check_observable(e)?;
        let gens = self.generators();
        let anti: Vec<usize> = (0..gens.len())
            .filter(|&i| gens[i].anticommutes_with(e))
            .collect();
        let Some((&pick, rest)) = anti.split_first() else {
            return Err(Error::NotUnbiased(format!(
                "{e} has expectation {} on the state",
                self.expectation_unchecked(e)
            )));
        };
        let mut out: Vec<PauliString> = gens.to_vec();
        for &i in rest {
            let g = out[pick].clone();
            out[i].mul_right(&g);
        }
        out[pick] = if l { e.negated() } else { e.clone() };
        Ok(Self::from_trusted(self.n_qubits(), out))
    }

    /// `C|ψ⟩`.
    pub fn apply_clifford(&self, c: &CliffordCircuit) -> Result<Self> {
        if c.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: c.n_qubits(),
            });
        }
        let gens = self
            .generators()
            .iter()
            .map(|g| {
                let mut g = g.clone();
                c.conjugate_in_place(&mut g);
                g
            })
            .collect();
        Ok(Self::from_trusted(self.n_qubits(), gens))
    }

    /// `P|ψ⟩` for a Pauli string `P` (global phase dropped).
    pub fn apply_pauli(&self, p: &PauliString) -> Self {
        let gens = self
            .generators()
            .iter()
            .map(|g| {
                if g.anticommutes_with(p) {
                    g.negated()
                } else {
                    g.clone()
                }
            })
            .collect();
        Self::from_trusted(self.n_qubits(), gens)
    }

    /// `|⟨φ|ψ⟩|²` between two stabilizer states.
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        if other.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: other.n_qubits(),
            });
        }
        // |⟨φ|ψ⟩|² = 2^{-n} Σ_{g∈S, h∈T} tr(g h)/2^n: nonzero only if the
        // two groups agree in sign on their intersection, then 2^{d-n}.
        let n = self.n_qubits();
        let inter = intersection(&self.group, &other.group);
        for g in &inter {
            if self.expectation_unchecked(g) != other.expectation_unchecked(g) {
                return Ok(0.0);
            }
        }
        Ok(2f64.powi(inter.len() as i32 - n as i32))
    }
}

/// Generators of the unsigned intersection of two maximal groups, each given
/// with the sign it carries in `a`.
fn intersection(a: &PauliGroup, b: &PauliGroup) -> Vec<PauliString> {
    // Elements of b that commute with all of a lie (up to sign) in a, since
    // a is maximal. Their subgroup is the kernel of the commutation map.
    let bg = b.generators();
    let ag = a.generators();
    let k = bg.len();
    // syndrome of each b-generator against a's generators
    let syn: Vec<Vec<bool>> = bg
        .iter()
        .map(|h| ag.iter().map(|g| g.anticommutes_with(h)).collect())
        .collect();
    // Gaussian elimination on syndromes, carrying the combined operator.
    let mut rows: Vec<(Vec<bool>, PauliString)> = syn.into_iter().zip(bg.iter().cloned()).collect();
    let mut rank = 0;
    for c in 0..ag.len() {
        let Some(r) = (rank..k).find(|&r| rows[r].0[c]) else {
            continue;
        };
        rows.swap(rank, r);
        let (ps, pp) = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.0[c] {
                for (x, y) in row.0.iter_mut().zip(&ps) {
                    *x ^= y;
                }
                row.1.mul_right(&pp);
            }
        }
        rank += 1;
    }
    rows.into_iter().skip(rank).map(|(_, p)| p).collect()
}

impl PartialOrd for StabilizerTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StabilizerTableau {
    /// Lexicographic order on canonical generators; used for tie-breaking.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits()
            .cmp(&other.n_qubits())
            .then_with(|| self.group.cmp_rows(&other.group))
    }
}
