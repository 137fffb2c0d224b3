use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QubitHamiltonian;
use crate::dense::{accumulate_pauli, PauliMasks};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_BRUTE_FORCE_QUBITS: usize = 12;

const KRYLOV_DIM: usize = 120;
const MAX_RESTARTS: usize = 60;

/// Lowest eigenpair of the full `2^n` matrix.
#[derive(Debug, Clone)]
pub struct GroundState<T> {
    pub energy: T,
    /// `‖Hv − Ev‖₂` for the returned unit vector.
    pub residual: T,
    pub vector: Vec<Complex<T>>,
}

struct Operator<T> {
    terms: Vec<(PauliMasks, T)>,
    dim: usize,
}

impl<T: Scalar> Operator<T> {
    fn apply(&self, x: &[Complex<T>], y: &mut [Complex<T>]) {
        y.iter_mut()
            .for_each(|v| *v = Complex::new(T::zero(), T::zero()));
        for (m, c) in &self.terms {
            accumulate_pauli(m, *c, x, y);
        }
    }
}

fn dot<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| {
            s + x.conj() * y
        })
}

fn norm<T: Scalar>(a: &[Complex<T>]) -> T {
    a.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
}

/// Lowest eigenvalue of `Σ h_i P_i` by restarted Lanczos with full
/// reorthogonalization.
pub fn brute_force_ground<T: Scalar>(h: &QubitHamiltonian<T>) -> Result<GroundState<T>> {
    let n = h.n_qubits();
    if n > MAX_BRUTE_FORCE_QUBITS {
        return Err(Error::Resource(format!(
            "brute-force diagonalization limited to {MAX_BRUTE_FORCE_QUBITS} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let op = Operator {
        terms: h
            .terms()
            .iter()
            .map(|t| (PauliMasks::of(&t.pauli), t.coeff))
            .collect(),
        dim,
    };
    let scale: T = h
        .terms()
        .iter()
        .map(|t| t.coeff.abs())
        .sum::<T>()
        .max(T::one());
    let tol = T::epsilon().sqrt() * T::from_f64_lossy(0.1) * scale;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut start: Vec<Complex<T>> = (0..dim)
        .map(|_| Complex::new(T::from_f64_lossy(rng.gen::<f64>() - 0.5), T::zero()))
        .collect();
    let s = norm(&start);
    start.iter_mut().for_each(|v| *v = *v / s);

    let mut best = None;
    for _ in 0..MAX_RESTARTS {
        let (energy, vector) = lanczos(&op, &start, KRYLOV_DIM.min(dim))?;
        let mut hv = vec![Complex::new(T::zero(), T::zero()); dim];
        op.apply(&vector, &mut hv);
        let r: Vec<Complex<T>> = hv
            .iter()
            .zip(&vector)
            .map(|(a, b)| *a - *b * energy)
            .collect();
        let residual = norm(&r);
        let done = residual <= tol;
        best = Some(GroundState {
            energy,
            residual,
            vector: vector.clone(),
        });
        if done {
            break;
        }
        start = vector;
    }
    best.ok_or_else(|| Error::Invariant("Lanczos produced no iterate".into()))
}

fn lanczos<T: Scalar>(
    op: &Operator<T>,
    start: &[Complex<T>],
    m: usize,
) -> Result<(T, Vec<Complex<T>>)> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut basis: Vec<Vec<Complex<T>>> = vec![start.to_vec()];
    let mut alpha: Vec<T> = Vec::with_capacity(m);
    let mut beta: Vec<T> = Vec::with_capacity(m);
    let mut w = vec![zero; op.dim];
    for j in 0..m {
        op.apply(&basis[j], &mut w);
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                w.iter_mut().zip(v).for_each(|(x, y)| *x = *x - *y * c);
            }
        }
        let b = norm(&w);
        if j + 1 == m || b <= T::epsilon() * T::from_f64_lossy(100.0) * (a.abs() + T::one()) {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|x| *x / b).collect());
    }
    let k = alpha.len();
    let (vals, vecs) = tridiagonal_eigen(&alpha, &beta[..k - 1])?;
    let imin = (0..k)
        .min_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite"))
        .expect("nonempty");
    let mut x = vec![zero; op.dim];
    for (j, v) in basis.iter().take(k).enumerate() {
        let c = vecs[j][imin];
        x.iter_mut().zip(v).for_each(|(a, b)| *a = *a + *b * c);
    }
    let s = norm(&x);
    x.iter_mut().for_each(|a| *a = *a / s);
    Ok((vals[imin], x))
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` by implicit QL. Column `i` of the returned
/// matrix is the eigenvector for eigenvalue `i`.
pub(crate) fn tridiagonal_eigen<T: Scalar>(diag: &[T], off: &[T]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e: Vec<T> = off.to_vec();
    e.push(T::zero());
    let mut z: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let two = T::one() + T::one();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                return Err(Error::Invariant("tridiagonal QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let sr = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sr);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok((d, z))
}
