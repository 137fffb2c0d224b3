//! Signed Pauli strings in symplectic form.
//!
//! An operator is stored as `i^k · X^x · Z^z` where `x` and `z` are bit
//! vectors packed into 64-bit words and `k` is the exponent of the imaginary
//! unit. `Y = i·X·Z`, so a Y factor is `x = z = 1` with one unit of `k`.
//!
//! Qubits are 0-based internally. The text forms use 1-based indices:
//! sparse (`-Z1Z3`, `X_1X_2`) and dense (`IZXY`, leftmost character is
//! qubit 1).

use std::fmt;
use std::ops::{Mul, MulAssign};

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

#[inline]
pub(crate) fn get_bit(words: &[u64], q: usize) -> bool {
    (words[q / WORD] >> (q % WORD)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], q: usize, value: bool) {
    let mask = 1u64 << (q % WORD);
    if value {
        words[q / WORD] |= mask;
    } else {
        words[q / WORD] &= !mask;
    }
}

#[inline]
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(u, v)| (u & v).count_ones()).sum()
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An element of the n-qubit Pauli group with exact phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        Self {
            n: n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// Build from bit slices and an `i` exponent (taken mod 4).
    pub fn from_bits(x: &[bool], z: &[bool], i_exponent: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        let mut p = Self::identity(x.len());
        for (q, (&xb, &zb)) in x.iter().zip(z).enumerate() {
            set_bit(&mut p.x, q, xb);
            set_bit(&mut p.z, q, zb);
        }
        p.phase = i_exponent % 4;
        Ok(p)
    }

    /// Hermitian string with sign +1 from a letter per qubit.
    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    /// `X` on every listed qubit (0-based).
    pub fn x_on(n_qubits: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::identity(n_qubits);
        for q in qubits {
            set_bit(&mut p.x, q, true);
        }
        p
    }

    /// `Z` on every listed qubit (0-based).
    pub fn z_on(n_qubits: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::identity(n_qubits);
        for q in qubits {
            set_bit(&mut p.z, q, true);
        }
        p
    }

    /// Single-qubit operator `letter` on qubit `q`, sign +1.
    pub fn single(n_qubits: usize, q: usize, letter: Pauli) -> Self {
        let mut p = Self::identity(n_qubits);
        p.set(q, letter);
        p
    }

    /// Overwrite qubit `q` with `letter`, keeping the overall sign of a
    /// Hermitian string unchanged.
    pub fn set(&mut self, q: usize, letter: Pauli) {
        let old_y = self.x_bit(q) && self.z_bit(q);
        let (xb, zb) = letter.bits();
        set_bit(&mut self.x, q, xb);
        set_bit(&mut self.z, q, zb);
        let new_y = xb && zb;
        self.phase = (self.phase + 4 + new_y as u8 - old_y as u8) % 4;
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, q: usize) -> bool {
        get_bit(&self.x, q)
    }

    pub fn z_bit(&self, q: usize) -> bool {
        get_bit(&self.z, q)
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn i_exponent(&self) -> u8 {
        self.phase
    }

    pub fn letter(&self, q: usize) -> Pauli {
        match (self.x_bit(q), self.z_bit(q)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn y_count(&self) -> u32 {
        and_popcount(&self.x, &self.z)
    }

    /// The scalar in front of the letter product, as an `i` exponent:
    /// the operator equals `i^c · ⊗ letters`.
    fn coefficient_exponent(&self) -> u8 {
        ((self.phase as u32 + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.coefficient_exponent().is_multiple_of(2)
    }

    /// `Some(±1)` for Hermitian strings, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        match self.coefficient_exponent() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.coefficient_exponent() == 2
    }

    /// Same letters, coefficient forced to +1.
    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.phase = (self.y_count() % 4) as u8;
        p
    }

    /// Same letters with the given Hermitian sign.
    pub fn with_sign(&self, negative: bool) -> Self {
        let mut p = self.unsigned();
        if negative {
            p.phase = (p.phase + 2) % 4;
        }
        p
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    /// Multiply the operator by `i^k`.
    pub fn times_i_power(&self, k: u8) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + k) % 4;
        p
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Qubits (0-based) on which the string acts non-trivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// True when the letters are all `I` (any phase).
    pub fn is_identity_letters(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn is_x_type(&self) -> bool {
        self.z.iter().all(|&w| w == 0)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut p = self.clone();
        p.mul_right(other);
        Ok(p)
    }

    /// In-place `self ← self · other`. Panics on dimension mismatch.
    pub fn mul_right(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "Pauli strings act on different registers");
        // X^a Z^b X^c Z^d = (-1)^{|b∧c|} X^{a⊕c} Z^{b⊕d}
        let swaps = and_popcount(&other.x, &self.z);
        self.phase = ((self.phase as u32 + other.phase as u32 + 2 * swaps) % 4) as u8;
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// Symplectic form: true iff the two strings anticommute.
    #[inline]
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        (and_popcount(&self.x, &other.z) + and_popcount(&other.x, &self.z)) % 2 == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(!self.anticommutes_with(other))
    }

    pub(crate) fn xor_x(&mut self, q: usize) {
        self.x[q / WORD] ^= 1 << (q % WORD);
    }

    pub(crate) fn xor_z(&mut self, q: usize) {
        self.z[q / WORD] ^= 1 << (q % WORD);
    }

    pub(crate) fn add_phase(&mut self, k: u8) {
        self.phase = (self.phase + k) % 4;
    }

    /// Embed into a larger register (new qubits act as identity).
    pub fn padded(&self, n_qubits: usize) -> Self {
        assert!(n_qubits >= self.n);
        let mut p = Self::identity(n_qubits);
        for q in 0..self.n {
            set_bit(&mut p.x, q, self.x_bit(q));
            set_bit(&mut p.z, q, self.z_bit(q));
        }
        p.phase = self.phase;
        p
    }

    /// Restrict to the first `n_qubits` qubits. Letters beyond are dropped.
    pub fn truncated(&self, n_qubits: usize) -> Self {
        assert!(n_qubits <= self.n);
        let mut letters = Vec::with_capacity(n_qubits);
        for q in 0..n_qubits {
            letters.push(self.letter(q));
        }
        let p = Self::from_letters(&letters);
        p.times_i_power(self.coefficient_exponent())
    }

    /// Parse a dense (`IZXY`) or sparse (`-Z1Z3`) string on `n_qubits`.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let trimmed = text.trim();
        let (coeff, body) = split_coefficient(trimmed)?;
        if body.is_empty() {
            return Err(parse_err(trimmed, "missing operator"));
        }
        let mut p = if body == "I" {
            Self::identity(n_qubits)
        } else if body.chars().any(|c| c.is_ascii_digit()) {
            parse_sparse(body, n_qubits)?
        } else {
            parse_dense(body, n_qubits)?
        };
        p.phase = (p.phase + coeff) % 4;
        Ok(p)
    }

    /// Dense letters with a sign prefix (`-IZXY`).
    pub fn to_dense_string(&self) -> String {
        let mut s = coefficient_prefix(self.coefficient_exponent()).to_string();
        for q in 0..self.n {
            s.push(self.letter(q).as_char());
        }
        s
    }
}

fn parse_err(token: &str, reason: &str) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

fn split_coefficient(text: &str) -> Result<(u8, &str)> {
    let (negative, rest) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (imag, rest) = match rest.as_bytes().first() {
        Some(b'i') => (true, &rest[1..]),
        _ => (false, rest),
    };
    let exp = match (negative, imag) {
        (false, false) => 0,
        (false, true) => 1,
        (true, false) => 2,
        (true, true) => 3,
    };
    Ok((exp, rest))
}

fn coefficient_prefix(exp: u8) -> &'static str {
    match exp % 4 {
        0 => "",
        1 => "i",
        2 => "-",
        _ => "-i",
    }
}

fn parse_dense(body: &str, n: usize) -> Result<PauliString> {
    let letters: Vec<Pauli> = body
        .chars()
        .map(|c| {
            Pauli::from_char(c).ok_or_else(|| parse_err(&c.to_string(), "unknown Pauli letter"))
        })
        .collect::<Result<_>>()?;
    if letters.len() != n {
        return Err(parse_err(
            body,
            &format!("dense form has {} letters, expected {n}", letters.len()),
        ));
    }
    Ok(PauliString::from_letters(&letters))
}

fn parse_sparse(body: &str, n: usize) -> Result<PauliString> {
    let mut p = PauliString::identity(n);
    let mut seen = vec![false; n];
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        let letter = Pauli::from_char(chars[i]).ok_or_else(|| {
            let tail = chars[i + 1..]
                .iter()
                .take_while(|c| c.is_ascii_digit() || **c == '_');
            let tok: String = std::iter::once(&chars[i]).chain(tail).collect();
            parse_err(&tok, "expected one of X, Y, Z")
        })?;
        i += 1;
        if i < chars.len() && chars[i] == '_' {
            i += 1;
        }
        let digits_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let token: String = chars[start..i].iter().collect();
        if digits_start == i {
            return Err(parse_err(&token, "missing qubit index"));
        }
        if letter == Pauli::I {
            return Err(parse_err(
                &token,
                "identity factors are not allowed in sparse form",
            ));
        }
        let idx: usize = chars[digits_start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| parse_err(&token, "bad qubit index"))?;
        if idx == 0 || idx > n {
            return Err(parse_err(
                &token,
                &format!("qubit index out of range 1..={n}"),
            ));
        }
        if seen[idx - 1] {
            return Err(parse_err(&token, "duplicate qubit index"));
        }
        seen[idx - 1] = true;
        p.set(idx - 1, letter);
    }
    Ok(p)
}

impl fmt::Display for PauliString {
    /// Sparse signed form with 1-based indices, e.g. `-X1Y3`; identity is `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(coefficient_prefix(self.coefficient_exponent()))?;
        if self.is_identity_letters() {
            return f.write_str("I");
        }
        for q in 0..self.n {
            let l = self.letter(q);
            if l != Pauli::I {
                write!(f, "{}{}", l.as_char(), q + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({}; n={})", self, self.n)
    }
}

impl MulAssign<&PauliString> for PauliString {
    fn mul_assign(&mut self, rhs: &PauliString) {
        self.mul_right(rhs);
    }
}

impl Mul<&PauliString> for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        let mut p = self.clone();
        p.mul_right(rhs);
        p
    }
}

impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sparse_signed_form() {
        let p = PauliString::parse("-Z1Z3", 4).unwrap();
        assert_eq!(p.to_dense_string(), "-ZIZI");
        assert!(!p.x_bit(0) && p.z_bit(0) && p.z_bit(2));
        assert_eq!(p.i_exponent(), 2);
        assert_eq!(p.sign(), Some(-1));

        let q = PauliString::parse("-X_1X_2X_3X_4", 4).unwrap();
        assert_eq!(q.to_string(), "-X1X2X3X4");
    }

    #[test]
    fn identity_and_y_conventions() {
        let id = PauliString::parse("IIII", 4).unwrap();
        assert!(id.is_identity_letters());
        assert_eq!(id.i_exponent(), 0);
        assert_eq!(id.to_string(), "I");

        let y = PauliString::parse("Y1", 1).unwrap();
        assert!(y.x_bit(0) && y.z_bit(0));
        assert_eq!(y.i_exponent(), 1);
        assert_eq!(y.sign(), Some(1));
        assert_eq!(PauliString::parse("Y", 1).unwrap(), y);
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = PauliString::parse("X1Q2", 3).unwrap_err().to_string();
        assert!(err.contains("Q"), "{err}");
        let err = PauliString::parse("X1X5", 4).unwrap_err().to_string();
        assert!(err.contains("X5"), "{err}");
        let err = PauliString::parse("Z2X2", 4).unwrap_err().to_string();
        assert!(err.contains("X2") && err.contains("duplicate"), "{err}");
        assert!(PauliString::parse("XZ", 3).is_err());
        assert!(PauliString::parse("X0", 3).is_err());
        assert!(PauliString::parse("-", 3).is_err());
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let x = PauliString::parse("X1", 1).unwrap();
        let z = PauliString::parse("Z1", 1).unwrap();
        let y = PauliString::parse("Y1", 1).unwrap();
        let xz = x.multiply(&z).unwrap();
        // XZ = -iY, i.e. exponent differs from Y's by 2 once the i is removed
        assert_eq!(xz, y.times_i_power(3));
        assert_eq!(xz.i_exponent(), (y.i_exponent() + 3) % 4);
        assert!(!xz.is_hermitian());
        assert_eq!(xz.to_string(), "-iY1");
    }

    #[test]
    fn hermitian_squares_to_identity() {
        for s in ["X1Y2Z3", "-Y1Y2", "Z3", "-X1X2X3X4", "Y1Y2Y3Y4"] {
            let p = PauliString::parse(s, 4).unwrap();
            let sq = p.multiply(&p).unwrap();
            assert!(sq.is_identity_letters());
            assert_eq!(sq.sign(), Some(1), "{s}");
        }
    }

    #[test]
    fn product_of_h2_z_stabilizers() {
        let a = PauliString::parse("-Z1Z3", 4).unwrap();
        let b = PauliString::parse("-Z2Z4", 4).unwrap();
        assert_eq!(a.multiply(&b).unwrap().to_string(), "Z1Z2Z3Z4");
    }

    #[test]
    fn commutation_examples() {
        let p = |s| PauliString::parse(s, 4).unwrap();
        assert!(p("X1X2").commutes(&p("Z1Z2")).unwrap());
        assert!(!p("X1").commutes(&p("Z1")).unwrap());
        assert!(p("Z3Z4").commutes(&p("X1X2X3X4")).unwrap());
        assert!(p("X1").commutes(&PauliString::identity(3)).is_err());
        assert!(p("X1").multiply(&PauliString::identity(3)).is_err());
    }

    #[test]
    fn set_keeps_hermitian_sign() {
        let mut p = PauliString::parse("-X1", 3).unwrap();
        p.set(1, Pauli::Y);
        assert_eq!(p.to_string(), "-X1Y2");
        p.set(1, Pauli::I);
        assert_eq!(p.to_string(), "-X1");
    }

    #[test]
    fn wide_registers_span_words() {
        let n = 130;
        let p = PauliString::parse("X1Z65Y130", n).unwrap();
        assert_eq!(p.weight(), 3);
        assert_eq!(p.support(), vec![0, 64, 129]);
        let q = PauliString::parse("Z1X65", n).unwrap();
        assert!(p.commutes(&q).unwrap());
        assert_eq!(PauliString::parse(&p.to_string(), n).unwrap(), p);
    }
}
