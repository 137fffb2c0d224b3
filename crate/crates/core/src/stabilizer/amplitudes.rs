use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli::{and_popcount, get_bit, set_bit, words_for, PauliString};
use crate::scalar::Scalar;

use super::StabilizerTableau;

/// Bounds on explicit amplitude extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmplitudeLimits {
    pub max_qubits: usize,
    pub max_terms: usize,
}

impl Default for AmplitudeLimits {
    fn default() -> Self {
        Self {
            max_qubits: 36,
            max_terms: 1 << 20,
        }
    }
}

/// `"1100"` with qubit 1 leftmost.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Nonzero amplitudes sorted by bitstring; the first one is real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes<T> {
    pub n_qubits: usize,
    pub entries: Vec<(String, Complex<T>)>,
}

impl<T: Scalar> Amplitudes<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, bits: &str) -> Option<Complex<T>> {
        self.entries
            .binary_search_by(|(k, _)| k.as_str().cmp(bits))
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Whether every amplitude is real.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, a)| a.im == T::zero())
    }
}

fn unit<T: Scalar>(i_exponent: u8, scale: T) -> Complex<T> {
    let z = T::zero();
    match i_exponent % 4 {
        0 => Complex::new(scale, z),
        1 => Complex::new(z, scale),
        2 => Complex::new(-scale, z),
        _ => Complex::new(z, -scale),
    }
}

impl StabilizerTableau {
    /// Explicit amplitudes under the default bounds.
    pub fn amplitudes<T: Scalar>(&self) -> Result<Amplitudes<T>> {
        self.amplitudes_bounded(AmplitudeLimits::default())
    }

    pub fn amplitudes_bounded<T: Scalar>(&self, limits: AmplitudeLimits) -> Result<Amplitudes<T>> {
        let n = self.n_qubits();
        if n > limits.max_qubits {
            return Err(Error::Resource(format!(
                "amplitude listing limited to {} qubits, state has {n}",
                limits.max_qubits
            )));
        }
        let (xrows, b0) = self.support_basis();
        let k = xrows.len();
        if k >= usize::BITS as usize || (1usize << k) > limits.max_terms {
            return Err(Error::Resource(format!(
                "support of 2^{k} strings exceeds the limit of {}",
                limits.max_terms
            )));
        }
        let scale = T::from_f64_lossy(2f64.powf(-(k as f64) / 2.0));
        let mut entries = Vec::with_capacity(1 << k);
        let mut g = PauliString::identity(n);
        let push = |g: &PauliString, entries: &mut Vec<(String, Complex<T>)>| {
            // g|ψ⟩ = |ψ⟩ and g|b0⟩ = i^k (-1)^{z·b0} |b0 ⊕ x|
            let ph = g.i_exponent() + 2 * (and_popcount(g.z_words(), &b0) % 2) as u8;
            let bits: String = (0..n)
                .map(|q| {
                    if get_bit(&b0, q) ^ g.x_bit(q) {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            entries.push((bits, unit(ph, scale)));
        };
        push(&g, &mut entries);
        for i in 1usize..(1 << k) {
            g.mul_right(&xrows[i.trailing_zeros() as usize]);
            push(&g, &mut entries);
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert_eq!(entries[0].1, unit(0, scale));
        Ok(Amplitudes {
            n_qubits: n,
            entries,
        })
    }

    /// The X-carrying canonical rows and the lexicographically smallest
    /// supported bitstring (as packed words).
    fn support_basis(&self) -> (Vec<PauliString>, Vec<u64>) {
        let n = self.n_qubits();
        let gens = self.generators();
        let pivots = self.group().pivots();
        let mut b0 = vec![0u64; words_for(n)];
        // Z-only rows fix bits: (-1)^{z·b} = sign. With only pivot bits set,
        // z·b reduces to the pivot bit since pivots are cleared elsewhere.
        for (g, &c) in gens.iter().zip(pivots) {
            if c >= n {
                set_bit(&mut b0, c - n, g.is_negative());
            }
        }
        let xrows: Vec<PauliString> = gens
            .iter()
            .zip(pivots)
            .filter(|(_, &c)| c < n)
            .map(|(g, _)| g.clone())
            .collect();
        // Smallest coset representative: clear every X pivot.
        for (g, &c) in gens.iter().zip(pivots) {
            if c < n && get_bit(&b0, c) {
                for (w, xw) in b0.iter_mut().zip(g.x_words()) {
                    *w ^= xw;
                }
            }
        }
        (xrows, b0)
    }

    /// Dense statevector indexed with qubit 1 as the most significant bit.
    pub fn to_statevector<T: Scalar>(&self) -> Result<Vec<Complex<T>>> {
        let n = self.n_qubits();
        if n > 24 {
            return Err(Error::Resource(format!(
                "dense statevector limited to 24 qubits, state has {n}"
            )));
        }
        let amps = self.amplitudes_bounded::<T>(AmplitudeLimits {
            max_qubits: 24,
            max_terms: 1 << 24,
        })?;
        let mut v = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        for (bits, a) in &amps.entries {
            let idx = bits
                .bytes()
                .fold(0usize, |acc, b| (acc << 1) | (b == b'1') as usize);
            v[idx] = *a;
        }
        Ok(v)
    }
}
