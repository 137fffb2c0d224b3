use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for Hamiltonian coefficients, energies and amplitudes.
///
/// The Pauli and tableau algebra is exact over GF(2); only the numerical
/// layers (energies, rotation angles, eigen-solvers) are generic over this.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Copy
    + Send
    + Sync
    + Default
    + Debug
    + Display
    + 'static
{
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
