use super::circuit::{Circuit, Op};
use crate::cws::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::sci::{RefineSource, Refinement, SearchResult};
use crate::stabilizer::StabilizerTableau;

/// Controlled `P` (letters only, sign dropped) from `control` onto the data.
fn push_controlled(c: &mut Circuit, control: usize, p: &PauliString) -> Result<()> {
    for q in p.support() {
        match p.letter(q) {
            Pauli::X => c.push(Op::Cnot { control, target: q })?,
            letter => c.push(Op::ControlledPauli {
                control,
                target: q,
                letter,
            })?,
        }
    }
    Ok(())
}

/// Preparation of `∏ (I + (-1)^l E)` applied to the basis state
/// `reference`, one measured ancilla per excitation.
///
/// The ancilla projects onto `(I ± E)`; on the wrong outcome a stabilizer
/// of the pre-excitation state anticommuting with `E` is applied, which
/// maps one branch onto the other, so the output is deterministic. With
/// `theta`, the last ancilla starts in `RY(θ)|0⟩` instead of `|+⟩` and the
/// output is `cos(θ/2)|ψ⟩ + (-1)^l sin(θ/2) E|ψ⟩`.
pub fn build_prep_circuit(
    reference: &[bool],
    steps: &[(PauliString, bool)],
    theta: Option<f64>,
) -> Result<Circuit> {
    let n = reference.len();
    let mut c = Circuit::new(n);
    let occupied: Vec<usize> = (0..n).filter(|&q| reference[q]).collect();
    if !occupied.is_empty() {
        c.push(Op::Pauli(PauliString::x_on(n, occupied)))?;
    }
    if theta.is_some() && steps.is_empty() {
        return Err(Error::Precondition(
            "a rotation angle needs at least one excitation".into(),
        ));
    }
    let mut state = StabilizerTableau::basis_state(reference);
    for (i, (e, l)) in steps.iter().enumerate() {
        let fix = state
            .generators()
            .iter()
            .find(|g| g.anticommutes_with(e))
            .cloned()
            .ok_or_else(|| Error::Invariant(format!("no stabilizer anticommutes with {e}")))?;
        let a = c.add_ancilla();
        match theta {
            Some(t) if i + 1 == steps.len() => c.push(Op::Ry { qubit: a, theta: t })?,
            _ => c.push(Op::H(a))?,
        }
        push_controlled(&mut c, a, e)?;
        c.push(Op::H(a))?;
        let key = c.measure(a, None)?;
        // outcome 0 projects onto I + (letters of E)
        let target = *l != e.is_negative();
        c.push(Op::Conditional {
            key,
            when: !target,
            pauli: fix,
        })?;
        state = state.project_excitation(e, *l)?;
    }
    Ok(c)
}

/// One ancilla per generator: `H`, controlled letters, `H`, measure. The
/// expected outcome is 0 for `+g` and 1 for `-g`.
pub fn build_syndrome_circuit(code: &StabilizerCode) -> Result<Circuit> {
    let mut c = Circuit::new(code.n_qubits());
    for g in code.generators() {
        let a = c.add_ancilla();
        c.push(Op::H(a))?;
        push_controlled(&mut c, a, g)?;
        c.push(Op::H(a))?;
        c.measure(a, Some(g.is_negative()))?;
    }
    Ok(c)
}

/// Preparation circuit of a search result's state.
pub fn prep_for_result(r: &SearchResult<f64>) -> Result<Circuit> {
    let reference = r
        .reference
        .basis_bits()
        .ok_or_else(|| Error::Precondition("search reference is not a basis state".into()))?;
    let steps: Vec<(PauliString, bool)> = r.trace().map(|(e, l)| (e.clone(), l)).collect();
    build_prep_circuit(&reference, &steps, None)
}

/// Preparation circuit of a refined state: the trace up to the refined
/// excitation, which gets the rotation. `None` when nothing was refined.
pub fn prep_for_refinement(r: &SearchResult<f64>, g: &Refinement<f64>) -> Result<Option<Circuit>> {
    let Some(gen) = &g.generalized else {
        return Ok(None);
    };
    let reference = r
        .reference
        .basis_bits()
        .ok_or_else(|| Error::Precondition("search reference is not a basis state".into()))?;
    let mut steps: Vec<(PauliString, bool)> = match g.source {
        RefineSource::LastExcitation => r.trace().map(|(e, l)| (e.clone(), l)).collect(),
        _ => Vec::new(),
    };
    steps.pop();
    steps.push((gen.excitation.clone(), gen.l));
    build_prep_circuit(&reference, &steps, Some(gen.theta)).map(Some)
}
