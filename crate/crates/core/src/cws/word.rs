use super::{assemble_standard, verify_distance, ErrorTable};
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::stabilizer::{AmplitudeLimits, GraphForm, StabilizerTableau};

/// Preference classes for word operators, judged by the operator's action
/// on the state in the input frame. Lower is preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordTier {
    /// Equal to a Z-string up to a stabilizer: only relative signs change.
    ZType,
    /// Moves the support to strings with the same particle count in each
    /// spin sector (even and odd qubits).
    SpinPreserving,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordChoice {
    /// Z-string in the graph frame.
    pub standard: PauliString,
    /// The same operator in the input frame.
    pub original: PauliString,
    pub tier: WordTier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSearch {
    /// Largest Z-string weight considered; `None` allows all.
    pub max_weight: Option<usize>,
    /// Give up after this many candidate strings.
    pub max_candidates: usize,
}

impl Default for WordSearch {
    fn default() -> Self {
        Self {
            max_weight: None,
            max_candidates: 1 << 22,
        }
    }
}

/// Next `k`-subset of `0..m` in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn spin_weights(b: &[bool]) -> (usize, usize) {
    let even = b.iter().step_by(2).filter(|&&v| v).count();
    let odd = b.iter().skip(1).step_by(2).filter(|&&v| v).count();
    (even, odd)
}

fn tier_of(state: &StabilizerTableau, w: &PauliString, support: Option<&[Vec<bool>]>) -> WordTier {
    let mut r = w.clone();
    state.group().reduce_in_place(&mut r);
    if r.is_z_type() {
        return WordTier::ZType;
    }
    let n = w.n_qubits();
    let preserving = support.is_some_and(|sup| {
        sup.iter().all(|b| {
            let moved: Vec<bool> = (0..n).map(|q| b[q] ^ w.x_bit(q)).collect();
            spin_weights(&moved) == spin_weights(b)
        })
    });
    if preserving {
        WordTier::SpinPreserving
    } else {
        WordTier::Other
    }
}

/// Word operator choice: among Z-strings on non-isolated graph vertices
/// that are absent from the error table and give a code passing
/// [`verify_distance`](super::verify_distance), the best tier, then the
/// lowest weight, then the lexicographically smallest support.
///
/// Strings touching an isolated vertex `v` are skipped: the generator `±X_v`
/// would become a weight-1 logical.
pub fn find_word_operator(
    state: &StabilizerTableau,
    graph: &GraphForm,
    table: &ErrorTable,
    opts: &WordSearch,
) -> Result<WordChoice> {
    let n = graph.n_qubits();
    let active: Vec<usize> = (0..n).filter(|&v| !graph.is_isolated(v)).collect();
    let back = graph.local_clifford.inverse();
    let support: Option<Vec<Vec<bool>>> = state
        .amplitudes_bounded::<f64>(AmplitudeLimits::default())
        .ok()
        .map(|a| {
            a.entries
                .iter()
                .map(|(s, _)| s.bytes().map(|c| c == b'1').collect())
                .collect()
        });
    let cap = opts.max_weight.unwrap_or(n).min(active.len());

    let mut best: Option<WordChoice> = None;
    let (mut tried, mut in_table, mut too_weak) = (0usize, 0usize, 0usize);
    'weights: for k in 1..=cap {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            tried += 1;
            if tried > opts.max_candidates {
                break 'weights;
            }
            let qubits: Vec<usize> = idx.iter().map(|&i| active[i]).collect();
            let mut z = vec![false; n];
            qubits.iter().for_each(|&q| z[q] = true);
            if table.contains(&z) {
                in_table += 1;
            } else {
                let w = PauliString::z_on(n, qubits);
                let original = back.conjugate(&w)?;
                let tier = tier_of(state, &original, support.as_deref());
                if best.as_ref().is_none_or(|b| tier < b.tier) {
                    if verify_distance(&assemble_standard(graph, &w)?).passes() {
                        best = Some(WordChoice {
                            standard: w,
                            original,
                            tier,
                        });
                        if tier == WordTier::ZType {
                            break 'weights;
                        }
                    } else {
                        too_weak += 1;
                    }
                }
            }
            if !next_combination(&mut idx, active.len()) {
                break;
            }
        }
    }
    best.ok_or_else(|| {
        Error::NoWordOperator(format!(
            "{n} qubits, {} non-isolated vertices; {tried} Z-strings up to weight {cap} tried, \
             {in_table} in the error table, {too_weak} gave a weight-1 logical",
            active.len()
        ))
    })
}
