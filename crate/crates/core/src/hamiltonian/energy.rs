use super::QubitHamiltonian;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::scalar::Scalar;
use crate::stabilizer::StabilizerTableau;

fn check_dims<T: Scalar>(h: &QubitHamiltonian<T>, n: usize) -> Result<()> {
    if h.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: h.n_qubits(),
            found: n,
        });
    }
    Ok(())
}

/// `Σ h_i ⟨P_i⟩` on a stabilizer state.
pub fn energy_stabilizer<T: Scalar>(
    h: &QubitHamiltonian<T>,
    state: &StabilizerTableau,
) -> Result<T> {
    check_dims(h, state.n_qubits())?;
    Ok(energy_unchecked(h, state))
}

pub(crate) fn energy_unchecked<T: Scalar>(h: &QubitHamiltonian<T>, state: &StabilizerTableau) -> T {
    let mut e = T::zero();
    for t in h.terms() {
        match state.expectation_unchecked(&t.pauli) {
            1 => e = e + t.coeff,
            -1 => e = e - t.coeff,
            _ => {}
        }
    }
    e
}

/// `cos(θ/2)|ψ⟩ + sin(θ/2)(-1)^l E|ψ⟩` with `⟨ψ|E|ψ⟩ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedState<T> {
    pub base: StabilizerTableau,
    pub excitation: PauliString,
    pub l: bool,
    pub theta: T,
}

impl<T: Scalar> GeneralizedState<T> {
    pub fn new(
        base: StabilizerTableau,
        excitation: PauliString,
        l: bool,
        theta: T,
    ) -> Result<Self> {
        if base.expectation(&excitation)? != 0 {
            return Err(Error::NotUnbiased(format!(
                "{excitation} has nonzero expectation on the base state"
            )));
        }
        Ok(Self {
            base,
            excitation,
            l,
            theta,
        })
    }

    pub fn x(&self) -> T {
        (self.theta / (T::one() + T::one())).cos()
    }

    pub fn y(&self) -> T {
        (self.theta / (T::one() + T::one())).sin()
    }

    /// The two stabilizer branches `|ψ⟩` and `(-1)^l E|ψ⟩` as tableaus
    /// (global phases dropped).
    pub fn branches(&self) -> (StabilizerTableau, StabilizerTableau) {
        (self.base.clone(), self.base.apply_pauli(&self.excitation))
    }
}

/// The sinusoid `E(θ) = A cos²(θ/2) + B sin²(θ/2) + (-1)^l C sin θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedCoefficients<T> {
    /// Energy of the base state.
    pub a: T,
    /// Energy of `E|ψ⟩`.
    pub b: T,
    /// `Σ h_i Re⟨P_i E⟩`.
    pub c: T,
}

impl<T: Scalar> GeneralizedCoefficients<T> {
    pub fn compute(
        h: &QubitHamiltonian<T>,
        base: &StabilizerTableau,
        e: &PauliString,
    ) -> Result<Self> {
        check_dims(h, base.n_qubits())?;
        if base.expectation(e)? != 0 {
            return Err(Error::NotUnbiased(format!(
                "{e} has nonzero expectation on the base state"
            )));
        }
        let (mut a, mut b, mut c) = (T::zero(), T::zero(), T::zero());
        for t in h.terms() {
            let ev = base.expectation_unchecked(&t.pauli);
            let anti = t.pauli.anticommutes_with(e);
            if ev != 0 {
                let v = if ev > 0 { t.coeff } else { -t.coeff };
                a = a + v;
                b = if anti { b - v } else { b + v };
            }
            // For anticommuting P, PE is anti-Hermitian and ⟨PE⟩ is imaginary.
            if !anti {
                let mut pe = t.pauli.clone();
                pe.mul_right(e);
                match base.expectation_re(&pe) {
                    1 => c = c + t.coeff,
                    -1 => c = c - t.coeff,
                    _ => {}
                }
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn energy(&self, theta: T, l: bool) -> T {
        let two = T::one() + T::one();
        let (ch, sh) = ((theta / two).cos(), (theta / two).sin());
        let v = if l { -self.c } else { self.c };
        self.a * ch * ch + self.b * sh * sh + v * theta.sin()
    }

    /// Closed-form minimizer `(θ*, E*)`, `θ*` in `(-π, π]`.
    pub fn minimize(&self, l: bool) -> (T, T) {
        let two = T::one() + T::one();
        let u = (self.a - self.b) / two;
        let v = if l { -self.c } else { self.c };
        let mean = (self.a + self.b) / two;
        let e_star = mean - (u * u + v * v).sqrt();
        if u == T::zero() && v == T::zero() {
            return (T::zero(), e_star);
        }
        let mut theta = (-v).atan2(-u);
        if theta <= -T::PI() {
            theta = theta + two * T::PI();
        }
        // clear a negative zero
        (theta + T::zero(), e_star)
    }
}

/// Energy of a generalized state, all expectations taken on the base.
pub fn energy_generalized<T: Scalar>(
    h: &QubitHamiltonian<T>,
    g: &GeneralizedState<T>,
) -> Result<T> {
    let k = GeneralizedCoefficients::compute(h, &g.base, &g.excitation)?;
    Ok(k.energy(g.theta, g.l))
}

/// `(θ*, E(θ*))` minimizing the generalized energy.
pub fn optimal_theta<T: Scalar>(
    h: &QubitHamiltonian<T>,
    base: &StabilizerTableau,
    e: &PauliString,
    l: bool,
) -> Result<(T, T)> {
    Ok(GeneralizedCoefficients::compute(h, base, e)?.minimize(l))
}
