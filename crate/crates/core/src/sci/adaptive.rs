use std::collections::HashSet;

use rayon::prelude::*;

use super::enumerate::{excitation_operator, SinglePair, Spin};
use super::{
    reference_space, with_jobs, ExcitationSet, SciConfig, Scored, SearchResult, SearchStats,
};
use crate::error::Result;
use crate::hamiltonian::{energy_stabilizer, energy_unchecked, QubitHamiltonian};
use crate::scalar::Scalar;
use crate::stabilizer::StabilizerTableau;

#[derive(Clone)]
struct Node<T> {
    state: StabilizerTableau,
    energy: T,
    set: ExcitationSet,
    /// State before the last generator was applied.
    prev: Option<StabilizerTableau>,
    occ: Vec<usize>,
    unocc: Vec<usize>,
}

/// Valid doubles `X_{o_i}X_{o_j}X_{u_i}X_{u_j}` over the remaining orbitals,
/// each as its two spin-matched pairs.
fn doubles(occ: &[usize], unocc: &[usize]) -> Vec<Vec<SinglePair>> {
    let mut out = Vec::new();
    let pair = |o: usize, u: usize| SinglePair {
        occ: o,
        unocc: u,
        spin: Spin::of_qubit(o),
    };
    for (i, &o1) in occ.iter().enumerate() {
        for &o2 in &occ[i + 1..] {
            for (a, &u1) in unocc.iter().enumerate() {
                for &u2 in &unocc[a + 1..] {
                    let s = |q| Spin::of_qubit(q);
                    let mut d = if s(o1) == s(u1) && s(o2) == s(u2) {
                        vec![pair(o1, u1), pair(o2, u2)]
                    } else if s(o1) == s(u2) && s(o2) == s(u1) {
                        vec![pair(o1, u2), pair(o2, u1)]
                    } else {
                        continue;
                    };
                    d.sort();
                    out.push(d);
                }
            }
        }
    }
    out
}

struct Move {
    node: usize,
    double: usize,
    l: bool,
    merged: bool,
}

/// Greedy search adding one double excitation per step, either on top of
/// the current state or merged with the previous step's excitation, while
/// the energy strictly decreases.
pub fn adaptive_sci<T: Scalar>(
    h: &QubitHamiltonian<T>,
    reference: &StabilizerTableau,
    config: &SciConfig,
) -> Result<SearchResult<T>> {
    let space = reference_space(h, reference)?;
    let n = space.n_qubits();
    let tol = T::from_f64_lossy(config.accept_tol);
    let width = config.beam_width.max(1);

    let mut occ: Vec<usize> = space.occupied(Spin::Alpha).to_vec();
    occ.extend(space.occupied(Spin::Beta));
    occ.sort();
    let mut unocc: Vec<usize> = space.unoccupied(Spin::Alpha).to_vec();
    unocc.extend(space.unoccupied(Spin::Beta));
    unocc.sort();

    let root = Node {
        state: reference.clone(),
        energy: energy_stabilizer(h, reference)?,
        set: ExcitationSet::default(),
        prev: None,
        occ,
        unocc,
    };
    let mut best = root.clone();
    let mut beam = vec![root];
    let mut stats = SearchStats::default();
    let mut seen: HashSet<StabilizerTableau> = HashSet::new();
    seen.insert(reference.clone());

    loop {
        let per_node: Vec<Vec<Vec<SinglePair>>> =
            beam.iter().map(|b| doubles(&b.occ, &b.unocc)).collect();
        let mut moves = Vec::new();
        for (ni, node) in beam.iter().enumerate() {
            for di in 0..per_node[ni].len() {
                for l in [false, true] {
                    moves.push(Move {
                        node: ni,
                        double: di,
                        l,
                        merged: false,
                    });
                    if node.prev.is_some() {
                        moves.push(Move {
                            node: ni,
                            double: di,
                            l,
                            merged: true,
                        });
                    }
                }
            }
        }
        if moves.is_empty() {
            break;
        }
        let evaluated: Vec<Option<Scored<T>>> = with_jobs(config.jobs, || {
            moves
                .par_iter()
                .enumerate()
                .map(|(mi, m)| {
                    let node = &beam[m.node];
                    let d = &per_node[m.node][m.double];
                    let (base, mut set, pairs) = if m.merged {
                        let mut set = node.set.clone();
                        set.generators.pop();
                        set.signs.pop();
                        let mut pairs = set.pairs.pop().expect("merged move has a last step");
                        pairs.extend(d.iter().copied());
                        pairs.sort();
                        (
                            node.prev.as_ref().expect("merged move has a base"),
                            set,
                            pairs,
                        )
                    } else {
                        (&node.state, node.set.clone(), d.clone())
                    };
                    let e = excitation_operator(n, &pairs);
                    let state = base.project_excitation(&e, m.l).ok()?;
                    set.push(n, pairs, m.l);
                    Some(Scored {
                        energy: energy_unchecked(h, &state),
                        state,
                        order: (m.node, mi),
                        set,
                    })
                })
                .collect()
        })?;
        stats.candidates += evaluated.len();
        stats.skipped += evaluated.iter().filter(|c| c.is_none()).count();

        let mut improving: Vec<Scored<T>> = Vec::new();
        for c in evaluated.into_iter().flatten() {
            seen.insert(c.state.clone());
            if c.energy < beam[c.order.0].energy - tol {
                improving.push(c);
            }
        }
        if improving.is_empty() {
            break;
        }
        improving.sort_by(|a, b| a.key_cmp(b));
        let mut next: Vec<Node<T>> = Vec::new();
        let mut kept: HashSet<&StabilizerTableau> = HashSet::new();
        for c in &improving {
            if next.len() == width {
                break;
            }
            if !kept.insert(&c.state) {
                continue;
            }
            let m = &moves[c.order.1];
            let parent = &beam[m.node];
            let d = &per_node[m.node][m.double];
            let used: Vec<usize> = d.iter().flat_map(|p| [p.occ, p.unocc]).collect();
            next.push(Node {
                state: c.state.clone(),
                energy: c.energy,
                set: c.set.clone(),
                prev: if m.merged {
                    parent.prev.clone()
                } else {
                    Some(parent.state.clone())
                },
                occ: parent
                    .occ
                    .iter()
                    .copied()
                    .filter(|q| !used.contains(q))
                    .collect(),
                unocc: parent
                    .unocc
                    .iter()
                    .copied()
                    .filter(|q| !used.contains(q))
                    .collect(),
            });
        }
        stats.iterations += 1;
        if next[0].energy < best.energy
            || (next[0].energy == best.energy && next[0].state < best.state)
        {
            best = next[0].clone();
        }
        beam = next;
    }
    stats.distinct_states = seen.len();
    Ok(SearchResult {
        reference: reference.clone(),
        state: best.state,
        energy: best.energy,
        excitations: best.set,
        stats,
    })
}
