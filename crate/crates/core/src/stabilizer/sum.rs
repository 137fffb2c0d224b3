use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

use super::{BasisImage, CliffordCircuit, CliffordGate};

/// Stabilizers of `(I + (-1)^l E)|ψ⟩/√2` built in the frame where
/// `c_i|ψ⟩ = |0…0⟩`, plus the circuit mapping the new state to `|0…0⟩`.
///
/// In that frame the sum is `|0⟩ + i^q|b⟩` with `q = 2l + m`, a GHZ state on
/// the support of `b` tensored with `|0⟩` elsewhere.
pub fn sum_stabilizers(
    c_i: &CliffordCircuit,
    e: &PauliString,
    l: bool,
) -> Result<(Vec<PauliString>, CliffordCircuit)> {
    let n = c_i.n_qubits();
    if !e.is_hermitian() {
        return Err(Error::NotHermitian(e.to_string()));
    }
    let image = BasisImage::of(&c_i.conjugate(e)?);
    let support: Vec<usize> = (0..n).filter(|&q| image.bits[q]).collect();
    let Some(&b1) = support.first() else {
        return Err(Error::NotUnbiased(format!(
            "{e} maps the state to itself up to phase"
        )));
    };
    let q = (2 * l as u8 + image.i_exponent) % 4;

    let mut frame = Vec::with_capacity(n);
    for k in 0..n {
        if !image.bits[k] {
            frame.push(PauliString::z_on(n, [k]));
        }
    }
    for w in support.windows(2) {
        frame.push(PauliString::z_on(n, [w[0], w[1]]));
    }
    // |0…0⟩ + i^q|1…1⟩ on the support: X…X with sign i^q for even q; for
    // odd q the first factor becomes Y and the sign is i^{q-1}.
    let mut ghz = PauliString::x_on(n, support.iter().copied());
    if q % 2 == 1 {
        ghz.set(b1, Pauli::Y);
    }
    frame.push(ghz.with_sign(q >= 2));

    let back = c_i.inverse();
    let generators = frame
        .iter()
        .map(|g| back.conjugate(g))
        .collect::<Result<Vec<_>>>()?;

    let mut ghz_to_zero = CliffordCircuit::new(n);
    for &bj in &support[1..] {
        ghz_to_zero.push(CliffordGate::Cnot {
            control: b1,
            target: bj,
        })?;
    }
    match q {
        1 => {
            ghz_to_zero.push(CliffordGate::Sdg(b1))?;
        }
        2 => {
            ghz_to_zero.push(CliffordGate::Pauli(PauliString::z_on(n, [b1])))?;
        }
        3 => {
            ghz_to_zero.push(CliffordGate::S(b1))?;
        }
        _ => {}
    }
    ghz_to_zero.push(CliffordGate::H(b1))?;
    Ok((generators, c_i.then(&ghz_to_zero)?))
}
