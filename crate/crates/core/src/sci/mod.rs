//! Stabilizer configuration interaction: exhaustive and adaptive searches for
//! the lowest-energy stabilizer state reachable from a Hartree-Fock
//! reference by unbiased excitations.

mod adaptive;
mod enumerate;
mod full;
mod refine;

use std::cmp::Ordering;

pub use adaptive::adaptive_sci;
pub use enumerate::{
    enumerate_excitation_sets, excitation_operator, excitation_sets, set_partitions, ExcitationSet,
    OrbitalSpace, SinglePair, Spin,
};
pub use full::full_sci;
pub use refine::{generalized_refine, RefineSource, Refinement};

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::scalar::Scalar;
use crate::stabilizer::StabilizerTableau;

#[derive(Debug, Clone, PartialEq)]
pub struct SciConfig {
    /// States retained per adaptive step.
    pub beam_width: usize,
    /// Minimum energy decrease (Hartree) for an adaptive step to be taken.
    pub accept_tol: f64,
    /// Cap on generators per excitation set; `None` is unlimited.
    pub max_partition_blocks: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SciConfig {
    fn default() -> Self {
        Self {
            beam_width: 1,
            accept_tol: 1e-10,
            max_partition_blocks: None,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates: usize,
    pub distinct_states: usize,
    /// Sets abandoned because a generator was not unbiased mid-build.
    pub skipped: usize,
    /// Adaptive steps taken (0 for the exhaustive search).
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T> {
    pub reference: StabilizerTableau,
    pub state: StabilizerTableau,
    pub energy: T,
    /// Generators in application order; replaying them from the reference
    /// reproduces `state`.
    pub excitations: ExcitationSet,
    pub stats: SearchStats,
}

impl<T: Scalar> SearchResult<T> {
    pub fn trace(&self) -> impl Iterator<Item = (&crate::PauliString, bool)> {
        self.excitations.steps()
    }

    /// Re-apply the trace to the reference.
    pub fn replay(&self) -> Result<StabilizerTableau> {
        replay(&self.reference, &self.excitations)
    }
}

pub fn replay(reference: &StabilizerTableau, set: &ExcitationSet) -> Result<StabilizerTableau> {
    let mut s = reference.clone();
    for (e, l) in set.steps() {
        s = s.project_excitation(e, l)?;
    }
    Ok(s)
}

/// Reference occupations and orbital split, checked against the
/// Hamiltonian.
pub(crate) fn reference_space<T: Scalar>(
    h: &QubitHamiltonian<T>,
    reference: &StabilizerTableau,
) -> Result<OrbitalSpace> {
    if reference.n_qubits() != h.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: h.n_qubits(),
            found: reference.n_qubits(),
        });
    }
    let bits = reference.basis_bits().ok_or_else(|| {
        Error::Precondition("reference is not a computational basis state".into())
    })?;
    let ne = bits.iter().filter(|&&b| b).count();
    if ne != h.n_electrons() {
        return Err(Error::Precondition(format!(
            "reference holds {ne} electrons, Hamiltonian metadata says {}",
            h.n_electrons()
        )));
    }
    OrbitalSpace::from_reference(&bits)
}

/// Run `f` on a dedicated pool when a worker count is given.
pub(crate) fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// A scored candidate; ordering is (energy, canonical form, enumeration
/// index) so reductions are schedule independent.
#[derive(Debug, Clone)]
pub(crate) struct Scored<T> {
    pub energy: T,
    pub state: StabilizerTableau,
    pub order: (usize, usize),
    pub set: ExcitationSet,
}

impl<T: Scalar> Scored<T> {
    pub fn key_cmp(&self, other: &Self) -> Ordering {
        self.energy
            .partial_cmp(&other.energy)
            .expect("finite energies")
            .then_with(|| self.state.cmp(&other.state))
            .then_with(|| self.order.cmp(&other.order))
    }

    pub fn min(self, other: Self) -> Self {
        if other.key_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}
