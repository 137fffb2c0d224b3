//! Dense statevectors for small registers.
//!
//! Basis index `b` has qubit 1 as its most significant bit, so index order
//! is the lexicographic order of bitstrings.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::scalar::Scalar;

/// Hard cap on dense registers.
pub const MAX_DENSE_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n: usize,
    amps: Vec<Complex<T>>,
}

#[inline]
fn mask(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

fn i_power<T: Scalar>(k: u8) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// Bit masks of a Pauli string in the dense index convention.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PauliMasks {
    pub x: usize,
    pub z: usize,
    pub phase: u8,
}

impl PauliMasks {
    pub fn of(p: &PauliString) -> Self {
        let n = p.n_qubits();
        let (mut x, mut z) = (0, 0);
        for q in 0..n {
            if p.x_bit(q) {
                x |= mask(n, q);
            }
            if p.z_bit(q) {
                z |= mask(n, q);
            }
        }
        Self {
            x,
            z,
            phase: p.i_exponent(),
        }
    }

    /// `P|b⟩ = c |b ⊕ x⟩` with `c = i^k (-1)^{z·b}`.
    #[inline]
    pub fn image(&self, b: usize) -> (usize, u8) {
        let k = self.phase + 2 * ((b & self.z).count_ones() % 2) as u8;
        (b ^ self.x, k % 4)
    }
}

impl<T: Scalar> StateVector<T> {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::Resource(format!(
                "dense statevector limited to {MAX_DENSE_QUBITS} qubits, requested {n_qubits}"
            )));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(Self { n: n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: amps.len(),
            });
        }
        Ok(Self { n: n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        if s > T::zero() {
            for a in &mut self.amps {
                *a = *a / s;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |s, v| s + v)
    }

    pub fn apply_pauli(&mut self, p: &PauliString) {
        debug_assert_eq!(p.n_qubits(), self.n);
        let m = PauliMasks::of(p);
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let (t, k) = m.image(b);
            out[t] = *a * i_power::<T>(k);
        }
        self.amps = out;
    }

    pub fn apply_h(&mut self, q: usize) {
        let m = mask(self.n, q);
        let h = T::FRAC_1_SQRT_2();
        for b in 0..self.amps.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | m]);
                self.amps[b] = (a0 + a1) * h;
                self.amps[b | m] = (a0 - a1) * h;
            }
        }
    }

    pub fn apply_s(&mut self, q: usize, dagger: bool) {
        let m = mask(self.n, q);
        let ph = i_power::<T>(if dagger { 3 } else { 1 });
        for b in 0..self.amps.len() {
            if b & m != 0 {
                self.amps[b] = self.amps[b] * ph;
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (c, t) = (mask(self.n, control), mask(self.n, target));
        for b in 0..self.amps.len() {
            if b & c != 0 && b & t == 0 {
                self.amps.swap(b, b | t);
            }
        }
    }

    /// `exp(-iθY/2)`.
    pub fn apply_ry(&mut self, q: usize, theta: T) {
        let m = mask(self.n, q);
        let two = T::one() + T::one();
        let (c, s) = ((theta / two).cos(), (theta / two).sin());
        for b in 0..self.amps.len() {
            if b & m == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | m]);
                self.amps[b] = a0 * c - a1 * s;
                self.amps[b | m] = a0 * s + a1 * c;
            }
        }
    }

    /// Probability of reading 1 on qubit `q`.
    pub fn prob_one(&self, q: usize) -> T {
        let m = mask(self.n, q);
        self.amps
            .iter()
            .enumerate()
            .filter(|(b, _)| b & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Project qubit `q` onto `outcome` and renormalize.
    pub fn collapse(&mut self, q: usize, outcome: bool) {
        let m = mask(self.n, q);
        for (b, a) in self.amps.iter_mut().enumerate() {
            if (b & m != 0) != outcome {
                *a = Complex::new(T::zero(), T::zero());
            }
        }
        self.normalize();
    }

    /// Remove qubit `q`, which must be in a definite basis state.
    pub fn discard_qubit(&mut self, q: usize) -> Result<()> {
        let m = mask(self.n, q);
        let p1 = self.prob_one(q);
        let eps = T::from_f64_lossy(1e-6);
        let keep_one = if p1 < eps {
            false
        } else if p1 > T::one() - eps {
            true
        } else {
            return Err(Error::Invariant(format!(
                "qubit {} is entangled when discarded",
                q + 1
            )));
        };
        let hi_mask = !((m << 1) - 1);
        let lo_mask = m - 1;
        let mut out = Vec::with_capacity(self.amps.len() / 2);
        for r in 0..self.amps.len() / 2 {
            let b = ((r << 1) & hi_mask) | (r & lo_mask) | if keep_one { m } else { 0 };
            out.push(self.amps[b]);
        }
        self.amps = out;
        self.n -= 1;
        Ok(())
    }

    /// Append a fresh `|0⟩` qubit as the last qubit.
    pub fn push_qubit(&mut self) -> Result<usize> {
        if self.n + 1 > MAX_DENSE_QUBITS {
            return Err(Error::Resource(format!(
                "dense statevector limited to {MAX_DENSE_QUBITS} qubits"
            )));
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amps.len() * 2];
        for (b, a) in self.amps.iter().enumerate() {
            out[b << 1] = *a;
        }
        self.amps = out;
        self.n += 1;
        Ok(self.n - 1)
    }

    /// `⟨ψ|P|ψ⟩` (complex for non-Hermitian strings).
    pub fn expectation(&self, p: &PauliString) -> Complex<T> {
        let m = PauliMasks::of(p);
        let mut s = Complex::new(T::zero(), T::zero());
        for (b, a) in self.amps.iter().enumerate() {
            let (t, k) = m.image(b);
            s = s + self.amps[t].conj() * *a * i_power::<T>(k);
        }
        s
    }
}

/// `y += c · P x` on raw amplitude slices.
pub(crate) fn accumulate_pauli<T: Scalar>(
    m: &PauliMasks,
    c: T,
    x: &[Complex<T>],
    y: &mut [Complex<T>],
) {
    let phases: [Complex<T>; 4] = [i_power(0), i_power(1), i_power(2), i_power(3)];
    for (b, a) in x.iter().enumerate() {
        let (t, k) = m.image(b);
        y[t] = y[t] + *a * phases[k as usize] * c;
    }
}
