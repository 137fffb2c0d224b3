use num_complex::Complex64;
use rand::Rng;

use super::circuit::{Circuit, Op};
use crate::dense::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::stabilizer::{CliffordCircuit, CliffordGate, StabilizerTableau};

/// Largest number of simultaneously live qubits on the statevector path.
pub const MAX_NOISY_DENSE_QUBITS: usize = 16;

/// Sample a depolarizing error. Two draws are always consumed so that
/// runs at different `p` stay aligned on the same random stream.
fn sample_depolarizing<R: Rng>(rng: &mut R, p: f64) -> Option<Pauli> {
    let u: f64 = rng.gen();
    let k = rng.gen_range(0..3);
    (u < p).then_some([Pauli::X, Pauli::Y, Pauli::Z][k])
}

fn sample_bitflip<R: Rng>(rng: &mut R, p: f64) -> bool {
    rng.gen::<f64>() < p
}

/// Noiseless stabilizer run with the first outcome chosen as 0 for every
/// random measurement; the Pauli-frame path runs relative to it.
#[derive(Debug, Clone)]
pub(crate) struct Reference {
    pub record: Vec<bool>,
    /// Data state with the measured ancillas appended.
    pub state: StabilizerTableau,
}

fn gate(n: usize, g: CliffordGate) -> Result<CliffordCircuit> {
    let mut c = CliffordCircuit::new(n);
    c.push(g)?;
    Ok(c)
}

fn letter_gates(control: usize, target: usize, letter: Pauli) -> Vec<CliffordGate> {
    let cx = CliffordGate::Cnot { control, target };
    match letter {
        Pauli::X => vec![cx],
        Pauli::Z => vec![CliffordGate::H(target), cx, CliffordGate::H(target)],
        Pauli::Y => vec![CliffordGate::Sdg(target), cx, CliffordGate::S(target)],
        Pauli::I => vec![],
    }
}

pub(crate) fn reference_run(c: &Circuit) -> Result<Reference> {
    let n = c.n_qubits();
    let mut s = StabilizerTableau::zero_state(n);
    let mut record = vec![false; c.n_keys()];
    for op in c.ops() {
        match op {
            Op::H(q) => s = s.apply_clifford(&gate(n, CliffordGate::H(*q))?)?,
            Op::Cnot { control, target } => {
                s = s.apply_clifford(&gate(
                    n,
                    CliffordGate::Cnot {
                        control: *control,
                        target: *target,
                    },
                )?)?
            }
            Op::ControlledPauli {
                control,
                target,
                letter,
            } => {
                let mut cc = CliffordCircuit::new(n);
                for g in letter_gates(*control, *target, *letter) {
                    cc.push(g)?;
                }
                s = s.apply_clifford(&cc)?;
            }
            Op::Pauli(p) => s = s.apply_pauli(&p.padded(n)),
            Op::Ry { .. } => {
                return Err(Error::InvalidCircuit(
                    "rotations need the statevector path".into(),
                ));
            }
            Op::Depolarize { .. } | Op::Bitflip { .. } => {}
            Op::Measure { qubit, key } => {
                let z = PauliString::single(n, *qubit, Pauli::Z);
                record[*key] = match s.expectation_unchecked(&z) {
                    0 => {
                        s = s.project_excitation(&z, false)?;
                        false
                    }
                    e => e < 0,
                };
            }
            Op::Conditional { key, when, pauli } => {
                if record[*key] == *when {
                    s = s.apply_pauli(&pauli.padded(n));
                }
            }
        }
    }
    Ok(Reference { record, state: s })
}

/// Outcome of one Pauli-frame trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FrameOutcome {
    /// Measurement flips relative to the reference run.
    pub flips: Vec<bool>,
    /// Residual data error.
    pub data_error: PauliString,
}

/// Propagate sampled Pauli errors through the Clifford gates.
pub(crate) fn frame_run<R: Rng>(c: &Circuit, rng: &mut R) -> FrameOutcome {
    let n = c.n_qubits();
    let (mut x, mut z) = (vec![false; n], vec![false; n]);
    let mut flips = vec![false; c.n_keys()];
    let inject = |x: &mut [bool], z: &mut [bool], q: usize, l: Pauli| match l {
        Pauli::X => x[q] ^= true,
        Pauli::Z => z[q] ^= true,
        Pauli::Y => {
            x[q] ^= true;
            z[q] ^= true;
        }
        Pauli::I => {}
    };
    let cnot = |x: &mut [bool], z: &mut [bool], c: usize, t: usize| {
        x[t] ^= x[c];
        z[c] ^= z[t];
    };
    for op in c.ops() {
        match op {
            Op::H(q) => std::mem::swap(&mut x[*q], &mut z[*q]),
            Op::Cnot { control, target } => cnot(&mut x, &mut z, *control, *target),
            Op::ControlledPauli {
                control,
                target,
                letter,
            } => match letter {
                Pauli::X => cnot(&mut x, &mut z, *control, *target),
                Pauli::Z => {
                    z[*target] ^= x[*control];
                    z[*control] ^= x[*target];
                }
                Pauli::Y => {
                    z[*target] ^= x[*target];
                    cnot(&mut x, &mut z, *control, *target);
                    z[*target] ^= x[*target];
                }
                Pauli::I => {}
            },
            Op::Pauli(_) | Op::Ry { .. } => {}
            Op::Depolarize { qubit, p } => {
                if let Some(l) = sample_depolarizing(rng, *p) {
                    inject(&mut x, &mut z, *qubit, l);
                }
            }
            Op::Bitflip { qubit, p } => {
                if sample_bitflip(rng, *p) {
                    x[*qubit] ^= true;
                }
            }
            Op::Measure { qubit, key } => flips[*key] = x[*qubit],
            Op::Conditional { key, pauli, .. } => {
                if flips[*key] {
                    for q in 0..c.n_data() {
                        x[q] ^= pauli.x_bit(q);
                        z[q] ^= pauli.z_bit(q);
                    }
                }
            }
        }
    }
    let letters: Vec<Pauli> = (0..c.n_data())
        .map(|q| match (x[q], z[q]) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        })
        .collect();
    FrameOutcome {
        flips,
        data_error: PauliString::from_letters(&letters),
    }
}

#[derive(Debug, Clone)]
pub struct DenseOutcome {
    pub record: Vec<bool>,
    /// Final data-register state.
    pub state: StateVector<f64>,
}

/// Statevector run with sampled noise and measurements. Ancillas are
/// allocated on first use and removed once measured, so the live width is
/// the data register plus the ancillas in flight. `forced` fixes outcomes
/// by key (an outcome of probability zero is an error).
pub fn dense_run<R: Rng>(
    c: &Circuit,
    rng: &mut R,
    forced: Option<&[bool]>,
) -> Result<DenseOutcome> {
    let nd = c.n_data();
    if nd > MAX_NOISY_DENSE_QUBITS {
        return Err(Error::Resource(format!(
            "{nd} data qubits exceed the statevector limit of {MAX_NOISY_DENSE_QUBITS}"
        )));
    }
    dense_run_from(c, StateVector::zero(nd)?, rng, forced)
}

/// As [`dense_run`] with the data register starting in `start`.
pub fn dense_run_from<R: Rng>(
    c: &Circuit,
    start: StateVector<f64>,
    rng: &mut R,
    forced: Option<&[bool]>,
) -> Result<DenseOutcome> {
    let nd = c.n_data();
    if start.n_qubits() != nd {
        return Err(Error::DimensionMismatch {
            expected: nd,
            found: start.n_qubits(),
        });
    }
    if nd > MAX_NOISY_DENSE_QUBITS {
        return Err(Error::Resource(format!(
            "{nd} data qubits exceed the statevector limit of {MAX_NOISY_DENSE_QUBITS}"
        )));
    }
    let mut sv = start;
    let mut slot: Vec<Option<usize>> = (0..c.n_qubits()).map(|q| (q < nd).then_some(q)).collect();
    let mut record = vec![false; c.n_keys()];

    fn live(sv: &mut StateVector<f64>, slot: &mut [Option<usize>], q: usize) -> Result<usize> {
        if let Some(i) = slot[q] {
            return Ok(i);
        }
        if sv.n_qubits() + 1 > MAX_NOISY_DENSE_QUBITS {
            return Err(Error::Resource(format!(
                "more than {MAX_NOISY_DENSE_QUBITS} live qubits on the statevector path"
            )));
        }
        let i = sv.push_qubit()?;
        slot[q] = Some(i);
        Ok(i)
    }

    for op in c.ops() {
        match op {
            Op::H(q) => {
                let i = live(&mut sv, &mut slot, *q)?;
                sv.apply_h(i);
            }
            Op::Cnot { control, target } => {
                let ci = live(&mut sv, &mut slot, *control)?;
                let ti = live(&mut sv, &mut slot, *target)?;
                sv.apply_cnot(ci, ti);
            }
            Op::ControlledPauli {
                control,
                target,
                letter,
            } => {
                let ci = live(&mut sv, &mut slot, *control)?;
                let ti = live(&mut sv, &mut slot, *target)?;
                match letter {
                    Pauli::X => sv.apply_cnot(ci, ti),
                    Pauli::Z => {
                        sv.apply_h(ti);
                        sv.apply_cnot(ci, ti);
                        sv.apply_h(ti);
                    }
                    Pauli::Y => {
                        sv.apply_s(ti, true);
                        sv.apply_cnot(ci, ti);
                        sv.apply_s(ti, false);
                    }
                    Pauli::I => {}
                }
            }
            Op::Pauli(p) => sv.apply_pauli(&p.padded(sv.n_qubits())),
            Op::Ry { qubit, theta } => {
                let i = live(&mut sv, &mut slot, *qubit)?;
                sv.apply_ry(i, *theta);
            }
            Op::Depolarize { qubit, p } => {
                let i = live(&mut sv, &mut slot, *qubit)?;
                if let Some(l) = sample_depolarizing(rng, *p) {
                    sv.apply_pauli(&PauliString::single(sv.n_qubits(), i, l));
                }
            }
            Op::Bitflip { qubit, p } => {
                let i = live(&mut sv, &mut slot, *qubit)?;
                if sample_bitflip(rng, *p) {
                    sv.apply_pauli(&PauliString::single(sv.n_qubits(), i, Pauli::X));
                }
            }
            Op::Measure { qubit, key } => {
                let i = live(&mut sv, &mut slot, *qubit)?;
                let p1 = sv.prob_one(i);
                let out = match forced {
                    Some(f) => {
                        let o = f[*key];
                        if (if o { p1 } else { 1.0 - p1 }) < 1e-12 {
                            return Err(Error::Precondition(format!(
                                "outcome {} of m{key} is impossible",
                                u8::from(o)
                            )));
                        }
                        o
                    }
                    None => rng.gen::<f64>() < p1,
                };
                record[*key] = out;
                sv.collapse(i, out);
                sv.discard_qubit(i)?;
                slot[*qubit] = None;
                for s in slot.iter_mut().flatten() {
                    if *s > i {
                        *s -= 1;
                    }
                }
            }
            Op::Conditional { key, when, pauli } => {
                if record[*key] == *when {
                    sv.apply_pauli(&pauli.padded(sv.n_qubits()));
                }
            }
        }
    }
    if sv.n_qubits() != nd {
        return Err(Error::InvalidCircuit("ancillas left unmeasured".into()));
    }
    Ok(DenseOutcome { record, state: sv })
}

/// `|⟨a|b⟩|²`.
pub(crate) fn fidelity(a: &StateVector<f64>, b: &StateVector<f64>) -> f64 {
    let ip: Complex64 = a.inner(b);
    ip.norm_sqr()
}
