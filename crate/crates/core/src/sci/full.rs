use std::collections::HashSet;

use rayon::prelude::*;

use super::enumerate::expand_selection;
use super::{
    reference_space, replay, with_jobs, ExcitationSet, SciConfig, Scored, SearchResult, SearchStats,
};
use crate::error::Result;
use crate::hamiltonian::{energy_stabilizer, QubitHamiltonian};
use crate::scalar::Scalar;
use crate::stabilizer::StabilizerTableau;

struct Partial<T> {
    best: Option<Scored<T>>,
    seen: HashSet<StabilizerTableau>,
    candidates: usize,
    skipped: usize,
}

impl<T: Scalar> Partial<T> {
    fn empty() -> Self {
        Self {
            best: None,
            seen: HashSet::new(),
            candidates: 0,
            skipped: 0,
        }
    }

    fn offer(&mut self, c: Scored<T>) {
        self.candidates += 1;
        self.seen.insert(c.state.clone());
        self.best = Some(match self.best.take() {
            None => c,
            Some(b) => b.min(c),
        });
    }

    fn merge(mut self, mut other: Self) -> Self {
        if self.seen.len() < other.seen.len() {
            std::mem::swap(&mut self.seen, &mut other.seen);
        }
        self.seen.extend(other.seen);
        self.candidates += other.candidates;
        self.skipped += other.skipped;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Exhaustive search over every valid excitation set (and the reference
/// itself); returns the lowest-energy state.
pub fn full_sci<T: Scalar>(
    h: &QubitHamiltonian<T>,
    reference: &StabilizerTableau,
    config: &SciConfig,
) -> Result<SearchResult<T>> {
    let space = reference_space(h, reference)?;
    let n = space.n_qubits();
    let selections = space.selections();
    let max_blocks = config.max_partition_blocks;

    let mut init = Partial::empty();
    init.offer(Scored {
        energy: energy_stabilizer(h, reference)?,
        state: reference.clone(),
        order: (0, 0),
        set: ExcitationSet::default(),
    });

    let total = with_jobs(config.jobs, || {
        selections
            .par_iter()
            .enumerate()
            .fold(Partial::empty, |mut acc, (si, sel)| {
                for (k, set) in expand_selection(n, sel, max_blocks).into_iter().enumerate() {
                    match replay(reference, &set) {
                        Ok(state) => {
                            let energy = crate::hamiltonian::energy_unchecked(h, &state);
                            acc.offer(Scored {
                                energy,
                                state,
                                order: (si + 1, k),
                                set,
                            });
                        }
                        Err(_) => acc.skipped += 1,
                    }
                }
                acc
            })
            .reduce(Partial::empty, Partial::merge)
    })?;
    let total = init.merge(total);
    let best = total.best.expect("reference is always a candidate");
    Ok(SearchResult {
        reference: reference.clone(),
        state: best.state,
        energy: best.energy,
        excitations: best.set,
        stats: SearchStats {
            candidates: total.candidates,
            distinct_states: total.seen.len(),
            skipped: total.skipped,
            iterations: 0,
        },
    })
}
