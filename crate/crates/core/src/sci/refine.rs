use super::enumerate::{excitation_sets, OrbitalSpace};
use super::{replay, SearchResult};
use crate::error::{Error, Result};
use crate::hamiltonian::{GeneralizedCoefficients, GeneralizedState, QubitHamiltonian};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineSource {
    /// θ optimized on the final excitation of the trace.
    LastExcitation,
    /// The trace was empty; θ optimized over every single-generator
    /// excitation of the reference.
    ReferenceScan,
    /// Nothing to refine (no valid excitation exists).
    Unchanged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement<T> {
    pub generalized: Option<GeneralizedState<T>>,
    pub energy: T,
    pub source: RefineSource,
}

/// Replace the final unbiased sum `(I + (-1)^l E)` by
/// `cos(θ/2) I + sin(θ/2) (-1)^l E` with the optimal θ.
pub fn generalized_refine<T: Scalar>(
    h: &QubitHamiltonian<T>,
    r: &SearchResult<T>,
) -> Result<Refinement<T>> {
    let steps = r.excitations.len();
    if steps > 0 {
        let mut prior = r.excitations.clone();
        let e = prior.generators.pop().expect("nonempty");
        let l = prior.signs.pop().expect("nonempty");
        prior.pairs.pop();
        let base = replay(&r.reference, &prior)?;
        let (theta, energy) = GeneralizedCoefficients::compute(h, &base, &e)?.minimize(l);
        return Ok(Refinement {
            generalized: Some(GeneralizedState::new(base, e, l, theta)?),
            energy,
            source: RefineSource::LastExcitation,
        });
    }

    let bits = r.reference.basis_bits().ok_or_else(|| {
        Error::Precondition("reference is not a computational basis state".into())
    })?;
    let space = OrbitalSpace::from_reference(&bits)?;
    let mut best: Option<(T, GeneralizedState<T>)> = None;
    for set in excitation_sets(&space, Some(1)) {
        // each generator appears with both signs; keep the first
        if set.signs[0] {
            continue;
        }
        let e = &set.generators[0];
        // θ ranges over a full period, so l = 0 already covers both signs
        let (theta, energy) = GeneralizedCoefficients::compute(h, &r.reference, e)?.minimize(false);
        if best.as_ref().is_none_or(|(b, _)| energy < *b) {
            best = Some((
                energy,
                GeneralizedState::new(r.reference.clone(), e.clone(), false, theta)?,
            ));
        }
    }
    Ok(match best {
        Some((energy, g)) if energy <= r.energy => Refinement {
            generalized: Some(g),
            energy,
            source: RefineSource::ReferenceScan,
        },
        _ => Refinement {
            generalized: None,
            energy: r.energy,
            source: RefineSource::Unchanged,
        },
    })
}
