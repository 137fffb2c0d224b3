use crate::error::{Error, Result};
use crate::pauli::PauliString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Alpha,
    Beta,
}

impl Spin {
    /// Even 0-based qubits carry α, odd ones β.
    pub fn of_qubit(q: usize) -> Self {
        if q.is_multiple_of(2) {
            Spin::Alpha
        } else {
            Spin::Beta
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// One occupied → unoccupied move within a spin sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SinglePair {
    pub occ: usize,
    pub unocc: usize,
    pub spin: Spin,
}

/// Occupied and unoccupied spin orbitals of a closed-shell reference, split
/// by spin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalSpace {
    n_qubits: usize,
    occupied: [Vec<usize>; 2],
    unoccupied: [Vec<usize>; 2],
}

impl OrbitalSpace {
    pub fn from_reference(bits: &[bool]) -> Result<Self> {
        let n = bits.len();
        let mut occupied = [Vec::new(), Vec::new()];
        let mut unoccupied = [Vec::new(), Vec::new()];
        for (q, &b) in bits.iter().enumerate() {
            let s = Spin::of_qubit(q).index();
            if b {
                occupied[s].push(q);
            } else {
                unoccupied[s].push(q);
            }
        }
        let n_o = occupied[0].len() + occupied[1].len();
        if n_o % 2 == 1 || (n - n_o) % 2 == 1 {
            return Err(Error::UnsupportedSystem(format!(
                "need even numbers of occupied and unoccupied spin orbitals, got {n_o} and {}",
                n - n_o
            )));
        }
        if occupied[0].len() != occupied[1].len() {
            return Err(Error::UnsupportedSystem(format!(
                "open-shell reference with {} α and {} β electrons",
                occupied[0].len(),
                occupied[1].len()
            )));
        }
        Ok(Self {
            n_qubits: n,
            occupied,
            unoccupied,
        })
    }

    /// Reference with the first `n_o` qubits occupied.
    pub fn from_counts(n_o: usize, n_u: usize) -> Result<Self> {
        let bits: Vec<bool> = (0..n_o + n_u).map(|q| q < n_o).collect();
        Self::from_reference(&bits)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_occupied(&self) -> usize {
        self.occupied[0].len() + self.occupied[1].len()
    }

    pub fn n_unoccupied(&self) -> usize {
        self.unoccupied[0].len() + self.unoccupied[1].len()
    }

    pub fn occupied(&self, spin: Spin) -> &[usize] {
        &self.occupied[spin.index()]
    }

    pub fn unoccupied(&self, spin: Spin) -> &[usize] {
        &self.unoccupied[spin.index()]
    }

    pub fn reference_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.n_qubits];
        for q in self.occupied.iter().flatten() {
            bits[*q] = true;
        }
        bits
    }

    /// All rook selections over the two spin matrices with at least one
    /// pair, ordered by size and then lexicographically.
    pub fn selections(&self) -> Vec<Vec<SinglePair>> {
        let a = rook_placements(&self.occupied[0], &self.unoccupied[0], Spin::Alpha);
        let b = rook_placements(&self.occupied[1], &self.unoccupied[1], Spin::Beta);
        let mut out = Vec::with_capacity(a.len() * b.len());
        for pa in &a {
            for pb in &b {
                if pa.is_empty() && pb.is_empty() {
                    continue;
                }
                let mut sel: Vec<SinglePair> = pa.iter().chain(pb).copied().collect();
                sel.sort();
                out.push(sel);
            }
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out
    }
}

fn rook_placements(occ: &[usize], unocc: &[usize], spin: Spin) -> Vec<Vec<SinglePair>> {
    fn rec(
        i: usize,
        occ: &[usize],
        unocc: &[usize],
        spin: Spin,
        used: &mut [bool],
        cur: &mut Vec<SinglePair>,
        out: &mut Vec<Vec<SinglePair>>,
    ) {
        if i == occ.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, occ, unocc, spin, used, cur, out);
        for j in 0..unocc.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            cur.push(SinglePair {
                occ: occ[i],
                unocc: unocc[j],
                spin,
            });
            rec(i + 1, occ, unocc, spin, used, cur, out);
            cur.pop();
            used[j] = false;
        }
    }
    let mut out = Vec::new();
    rec(
        0,
        occ,
        unocc,
        spin,
        &mut vec![false; unocc.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Set partitions of `0..k` as restricted growth strings, in lexicographic
/// order, optionally capped at `max_blocks` blocks.
pub fn set_partitions(k: usize, max_blocks: Option<usize>) -> Vec<Vec<usize>> {
    let cap = max_blocks.unwrap_or(usize::MAX).max(1);
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut a = vec![0usize; k];
    fn rec(i: usize, blocks: usize, cap: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a.len() {
            out.push(a.clone());
            return;
        }
        for b in 0..=blocks.min(cap - 1) {
            a[i] = b;
            rec(i + 1, blocks.max(b + 1), cap, a, out);
        }
    }
    rec(1, 1, cap, &mut a, &mut out);
    out
}

/// `X` on every orbital touched by the pairs.
pub fn excitation_operator(n_qubits: usize, pairs: &[SinglePair]) -> PauliString {
    PauliString::x_on(n_qubits, pairs.iter().flat_map(|p| [p.occ, p.unocc]))
}

/// Ordered generators `E_1, E_2, …` with their signs `l_i`, each generator
/// a product of one or more single pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExcitationSet {
    pub generators: Vec<PauliString>,
    pub signs: Vec<bool>,
    pub pairs: Vec<Vec<SinglePair>>,
}

impl ExcitationSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.iter().map(Vec::len).sum()
    }

    pub fn push(&mut self, n_qubits: usize, pairs: Vec<SinglePair>, l: bool) {
        self.generators.push(excitation_operator(n_qubits, &pairs));
        self.signs.push(l);
        self.pairs.push(pairs);
    }

    /// `(E_i, l_i)` in application order.
    pub fn steps(&self) -> impl Iterator<Item = (&PauliString, bool)> {
        self.generators.iter().zip(self.signs.iter().copied())
    }
}

/// Every excitation set derived from one selection: each partition into
/// generators, each sign assignment.
pub(crate) fn expand_selection(
    n_qubits: usize,
    selection: &[SinglePair],
    max_blocks: Option<usize>,
) -> Vec<ExcitationSet> {
    let mut out = Vec::new();
    for rgs in set_partitions(selection.len(), max_blocks) {
        let n_blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (pair, &b) in selection.iter().zip(&rgs) {
            blocks[b].push(*pair);
        }
        for mask in 0..1usize << n_blocks {
            let mut set = ExcitationSet::default();
            for (j, block) in blocks.iter().enumerate() {
                let l = mask >> (n_blocks - 1 - j) & 1 == 1;
                set.push(n_qubits, block.clone(), l);
            }
            out.push(set);
        }
    }
    out
}

/// Stream of all valid excitation sets for `n_o` occupied and `n_u`
/// unoccupied spin orbitals, reference occupying the first `n_o` qubits.
pub fn enumerate_excitation_sets(
    n_o: usize,
    n_u: usize,
    max_blocks: Option<usize>,
) -> Result<impl Iterator<Item = ExcitationSet>> {
    let space = OrbitalSpace::from_counts(n_o, n_u)?;
    Ok(excitation_sets(&space, max_blocks))
}

pub fn excitation_sets(
    space: &OrbitalSpace,
    max_blocks: Option<usize>,
) -> impl Iterator<Item = ExcitationSet> {
    let n = space.n_qubits();
    space
        .selections()
        .into_iter()
        .flat_map(move |sel| expand_selection(n, &sel, max_blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let b: Vec<usize> = (1..=6).map(|k| set_partitions(k, None).len()).collect();
        assert_eq!(b, [1, 2, 5, 15, 52, 203]);
        assert_eq!(set_partitions(3, Some(1)), vec![vec![0, 0, 0]]);
        assert_eq!(set_partitions(3, Some(2)).len(), 4);
    }

    #[test]
    fn h2_space() {
        let s = OrbitalSpace::from_counts(2, 2).unwrap();
        assert_eq!(s.occupied(Spin::Alpha), [0]);
        assert_eq!(s.unoccupied(Spin::Beta), [3]);
        let sel = s.selections();
        assert_eq!(sel.len(), 3);
        let sets: Vec<_> = excitation_sets(&s, None).collect();
        // two singles with 2 signs each, the pair selection with 2 + 4
        assert_eq!(sets.len(), 2 + 2 + 6);
        assert!(
            sets.iter()
                .any(|e| e.len() == 1
                    && e.generators[0] == PauliString::parse("X1X2X3X4", 4).unwrap())
        );
    }

    #[test]
    fn odd_counts_rejected() {
        assert!(matches!(
            OrbitalSpace::from_counts(1, 3),
            Err(Error::UnsupportedSystem(_))
        ));
        assert!(enumerate_excitation_sets(2, 3, None).is_err());
        assert_eq!(enumerate_excitation_sets(0, 4, None).unwrap().count(), 0);
    }
}
