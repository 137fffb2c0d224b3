use serde::{Deserialize, Serialize};
use stabci::hamiltonian::energy_stabilizer;
use stabci::sci::{RefineSource, Refinement, SearchResult};
use stabci::stabilizer::{bits_to_string, AmplitudeLimits};
use stabci::{Hamiltonian, Result, StabilizerTableau};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AmplitudeRecord {
    pub bits: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StepRecord {
    pub excitation: String,
    pub l: u8,
    /// `(occupied, unoccupied)` spin orbitals, 1-based.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StatsRecord {
    pub candidates: usize,
    pub distinct_states: usize,
    pub skipped: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RefinementRecord {
    pub source: String,
    pub theta: Option<f64>,
    pub excitation: Option<String>,
    pub l: Option<u8>,
    pub energy_generalized: f64,
}

/// JSON form of a search, optionally with its refinement.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SearchReport {
    pub molecule: String,
    pub bond_length_angstrom: f64,
    pub n_qubits: usize,
    pub method: String,
    pub reference: String,
    pub energy_hf: f64,
    pub energy: f64,
    /// Canonical generators of the final state.
    pub stabilizers: Vec<String>,
    /// Sorted by bitstring; absent when the support is too large to list.
    pub amplitudes: Option<Vec<AmplitudeRecord>>,
    /// Application order.
    pub trace: Vec<StepRecord>,
    pub stats: StatsRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refinement: Option<RefinementRecord>,
}

pub fn source_name(s: RefineSource) -> &'static str {
    match s {
        RefineSource::LastExcitation => "last-excitation",
        RefineSource::ReferenceScan => "reference-scan",
        RefineSource::Unchanged => "unchanged",
    }
}

impl SearchReport {
    pub fn new(h: &Hamiltonian, method: &str, r: &SearchResult<f64>) -> Result<Self> {
        let amplitudes = r
            .state
            .amplitudes_bounded::<f64>(AmplitudeLimits::default())
            .ok()
            .map(|a| {
                a.entries
                    .into_iter()
                    .map(|(bits, c)| AmplitudeRecord {
                        bits,
                        re: c.re,
                        im: c.im,
                    })
                    .collect()
            });
        let trace = r
            .excitations
            .generators
            .iter()
            .zip(&r.excitations.signs)
            .zip(&r.excitations.pairs)
            .map(|((e, &l), ps)| StepRecord {
                excitation: e.to_string(),
                l: l.into(),
                pairs: ps.iter().map(|p| (p.occ + 1, p.unocc + 1)).collect(),
            })
            .collect();
        Ok(Self {
            molecule: h.meta().molecule.clone(),
            bond_length_angstrom: h.meta().bond_length_angstrom,
            n_qubits: h.n_qubits(),
            method: method.into(),
            reference: bits_to_string(&r.reference.basis_bits().unwrap_or_default()),
            energy_hf: energy_stabilizer(h, &r.reference)?,
            energy: r.energy,
            stabilizers: r
                .state
                .generators()
                .iter()
                .map(ToString::to_string)
                .collect(),
            amplitudes,
            trace,
            stats: StatsRecord {
                candidates: r.stats.candidates,
                distinct_states: r.stats.distinct_states,
                skipped: r.stats.skipped,
                iterations: r.stats.iterations,
            },
            refinement: None,
        })
    }

    pub fn with_refinement(mut self, g: &Refinement<f64>) -> Self {
        self.refinement = Some(RefinementRecord {
            source: source_name(g.source).into(),
            theta: g.generalized.as_ref().map(|s| s.theta),
            excitation: g.generalized.as_ref().map(|s| s.excitation.to_string()),
            l: g.generalized.as_ref().map(|s| s.l.into()),
            energy_generalized: g.energy,
        });
        self
    }

    /// The final state recorded in the report.
    pub fn state(&self) -> Result<StabilizerTableau> {
        let gens: Vec<&str> = self.stabilizers.iter().map(String::as_str).collect();
        StabilizerTableau::parse(&gens, self.n_qubits)
    }
}
