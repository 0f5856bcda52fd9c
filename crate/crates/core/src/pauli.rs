//! Two-bit Pauli words and the real signed operators σ̃_b = (−i)^{|b|_Y} σ_b.
//!
//! Qubit `q` occupies bits `(2q, 2q+1)` of the word with the pair encoding
//! 00 = I, 01 = X, 11 = Y, 10 = Z. Writing the pair as `(z, x)`, σ̃ acts on
//! one qubit as `X^x Z^z`, so on a basis state
//! `σ̃_b |s⟩ = (−1)^{z·s} |s ⊕ x⟩`, a signed permutation with no complex
//! phase. Products compose as `σ̃_{b1} σ̃_{b2} = (−1)^{b1ᵀ C b2} σ̃_{b1⊕b2}`
//! with `b1ᵀ C b2 = Σ_q z1_q x2_q`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::BitVector;
use crate::scalar::{Real, Scalar};
use crate::state::StateVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("state has {found} qubits, operator has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Pauli bit vector must have even length, got {0}")]
    OddLength(usize),
    #[error("invalid Pauli letter `{0}`")]
    BadLetter(char),
    #[error("word on {0} qubits does not fit a 64-bit mask")]
    TooWide(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() ^ rhs.is_minus())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The `(first, second)` bit pair of the encoding.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Y => (true, true),
            Pauli::Z => (true, false),
        }
    }

    pub fn from_bits(first: bool, second: bool) -> Self {
        match (first, second) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, true) => Pauli::Y,
            (true, false) => Pauli::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Result<Self, PauliError> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(PauliError::BadLetter(c)),
        }
    }
}

/// A Pauli string on `n` qubits stored as its `2n`-bit encoding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    bits: BitVector,
}

impl PauliWord {
    pub fn identity(qubits: usize) -> Self {
        Self {
            bits: BitVector::zeros(2 * qubits),
        }
    }

    pub fn from_bits(bits: BitVector) -> Result<Self, PauliError> {
        if bits.len() % 2 != 0 {
            return Err(PauliError::OddLength(bits.len()));
        }
        Ok(Self { bits })
    }

    pub fn from_paulis(ps: &[Pauli]) -> Self {
        let mut w = Self::identity(ps.len());
        for (q, &p) in ps.iter().enumerate() {
            w.set(q, p);
        }
        w
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn qubits(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.bits.get(2 * q), self.bits.get(2 * q + 1))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (a, b) = p.bits();
        self.bits.set(2 * q, a);
        self.bits.set(2 * q + 1, b);
    }

    pub fn paulis(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.qubits()).map(|q| self.get(q))
    }

    /// Number of (11) pairs.
    pub fn y_count(&self) -> usize {
        (0..self.qubits())
            .filter(|&q| self.bits.get(2 * q) && self.bits.get(2 * q + 1))
            .count()
    }

    pub fn x_count(&self) -> usize {
        self.paulis().filter(|&p| p == Pauli::X).count()
    }

    /// Second bits of every pair (the qubits σ̃ flips).
    pub fn flip_bits(&self) -> BitVector {
        BitVector::from_bools((0..self.qubits()).map(|q| self.bits.get(2 * q + 1)))
    }

    /// First bits of every pair (the qubits σ̃ reads a phase from).
    pub fn phase_bits(&self) -> BitVector {
        BitVector::from_bools((0..self.qubits()).map(|q| self.bits.get(2 * q)))
    }

    /// `(flip_mask, phase_mask)` as machine words; bit `q` is qubit `q`.
    pub fn masks(&self) -> Result<(u64, u64), PauliError> {
        let n = self.qubits();
        if n > 64 {
            return Err(PauliError::TooWide(n));
        }
        let mut flip = 0u64;
        let mut phase = 0u64;
        for q in 0..n {
            if self.bits.get(2 * q + 1) {
                flip |= 1 << q;
            }
            if self.bits.get(2 * q) {
                phase |= 1 << q;
            }
        }
        Ok((flip, phase))
    }

    pub fn xor(&self, other: &PauliWord) -> Result<PauliWord, PauliError> {
        self.same_len(other)?;
        Ok(PauliWord {
            bits: self.bits.xor(&other.bits),
        })
    }

    fn same_len(&self, other: &PauliWord) -> Result<(), PauliError> {
        if self.bits.len() != other.bits.len() {
            Err(PauliError::LengthMismatch(self.qubits(), other.qubits()))
        } else {
            Ok(())
        }
    }
}

/// `b1ᵀ C b2` over GF(2).
pub fn c_form(b1: &PauliWord, b2: &PauliWord) -> Result<bool, PauliError> {
    b1.same_len(b2)?;
    Ok(b1.phase_bits().dot(&b2.flip_bits()))
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.paulis() {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = PauliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ps = s
            .trim()
            .chars()
            .map(Pauli::from_letter)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_paulis(&ps))
    }
}

/// Number of σ_Y factors in the word.
pub fn y_count(p: &PauliWord) -> usize {
    p.y_count()
}

/// The σ̃ multiplication rule: returns the sign and the XOR word.
pub fn tilde_product_sign(p1: &PauliWord, p2: &PauliWord) -> Result<(Sign, PauliWord), PauliError> {
    let odd = c_form(p1, p2)?;
    Ok((Sign::from_parity(odd), p1.xor(p2)?))
}

/// `σ̃_p · state`.
pub fn apply_sigma_tilde<T: Real>(p: &PauliWord, state: &StateVector<T>) -> Result<StateVector<T>, PauliError> {
    if p.qubits() != state.qubits() {
        return Err(PauliError::DimensionMismatch {
            expected: p.qubits(),
            found: state.qubits(),
        });
    }
    let (flip, phase) = p.masks()?;
    let src = state.amplitudes();
    let mut out = vec![T::zero(); src.len()];
    for (i, &a) in src.iter().enumerate() {
        let odd = (phase & i as u64).count_ones() & 1 == 1;
        out[i ^ flip as usize] = if odd { -a } else { a };
    }
    Ok(StateVector::from_amplitudes(out).expect("power of two"))
}

/// `⟨0…0|σ̃_p|0…0⟩`: 1 when the word has no X or Y factor.
pub fn zero_expectation(p: &PauliWord) -> u8 {
    u8::from(p.flip_bits().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    type CMat = Vec<Vec<Complex64>>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_2x2(p: Pauli) -> CMat {
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        match p {
            Pauli::I => vec![vec![o, z], vec![z, o]],
            Pauli::X => vec![vec![z, o], vec![o, z]],
            Pauli::Y => vec![vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]],
            Pauli::Z => vec![vec![o, z], vec![z, -o]],
        }
    }

    fn kron(a: &CMat, b: &CMat) -> CMat {
        let (n, m) = (a.len(), b.len());
        let mut out = vec![vec![c(0.0, 0.0); n * m]; n * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    fn matmul(a: &CMat, b: &CMat) -> CMat {
        let n = a.len();
        let mut out = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    /// Dense σ̃ built from the textbook Pauli matrices. Qubit 0 is the
    /// least significant basis bit, so it is the rightmost Kronecker factor.
    fn dense_sigma_tilde(p: &PauliWord) -> CMat {
        let mut m: CMat = vec![vec![c(1.0, 0.0)]];
        for q in 0..p.qubits() {
            m = kron(&pauli_2x2(p.get(q)), &m);
        }
        let phase = c(0.0, -1.0).powu(p.y_count() as u32);
        m.iter().map(|r| r.iter().map(|&x| x * phase).collect()).collect()
    }

    fn word_from_u64(bits: u64, n: usize) -> PauliWord {
        PauliWord::from_bits(BitVector::from_u64(bits, 2 * n)).unwrap()
    }

    #[test]
    fn y_counts() {
        assert_eq!(y_count(&PauliWord::identity(4)), 0);
        let w = PauliWord::from_bits(BitVector::from_bits(&[1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0])).unwrap();
        assert_eq!(w.to_string(), "YIXZIZ");
        assert_eq!(y_count(&w), 1);
        assert_eq!(y_count(&"YYY".parse().unwrap()), 3);
    }

    #[test]
    fn string_round_trip() {
        let w: PauliWord = "ZXYI".parse().unwrap();
        assert_eq!(w.to_string(), "ZXYI");
        assert_eq!(w.bits().to_bits(), vec![1, 0, 0, 1, 1, 1, 0, 0]);
        assert!("ZQ".parse::<PauliWord>().is_err());
        assert!(PauliWord::from_bits(BitVector::zeros(3)).is_err());
    }

    #[test]
    fn product_rule_examples() {
        let y: PauliWord = "Y".parse().unwrap();
        let (s, w) = tilde_product_sign(&y, &y).unwrap();
        assert_eq!((s, w.to_string().as_str()), (Sign::Minus, "I"));

        let z: PauliWord = "Z".parse().unwrap();
        let x: PauliWord = "X".parse().unwrap();
        let (s, w) = tilde_product_sign(&z, &x).unwrap();
        assert_eq!((s, w.to_string().as_str()), (Sign::Minus, "Y"));
        // 2x2 oracle: Z·X = [[0,1],[-1,0]] = -σ̃_Y
        let zx = matmul(&pauli_2x2(Pauli::Z), &pauli_2x2(Pauli::X));
        let ty = dense_sigma_tilde(&y);
        for i in 0..2 {
            for j in 0..2 {
                assert!((zx[i][j] + ty[i][j]).norm() < 1e-15);
            }
        }

        let p: PauliWord = "XZY".parse().unwrap();
        let (s, w) = tilde_product_sign(&PauliWord::identity(3), &p).unwrap();
        assert_eq!((s, w), (Sign::Plus, p.clone()));
        assert!(tilde_product_sign(&y, &p).is_err());
    }

    #[test]
    fn sigma_tilde_on_basis_states() {
        let y: PauliWord = "Y".parse().unwrap();
        let s1 = apply_sigma_tilde(&y, &StateVector::<f64>::zero(1)).unwrap();
        assert_eq!(s1.amplitudes(), &[0.0, 1.0]);
        let s0 = apply_sigma_tilde(&y, &StateVector::<f64>::basis(1, 1)).unwrap();
        assert_eq!(s0.amplitudes(), &[-1.0, 0.0]);
        let v = StateVector::from_amplitudes(vec![0.6, 0.8]).unwrap();
        assert_eq!(apply_sigma_tilde(&PauliWord::identity(1), &v).unwrap(), v);
        assert!(apply_sigma_tilde(&y, &StateVector::<f64>::zero(2)).is_err());
    }

    #[test]
    fn zero_expectations() {
        assert_eq!(zero_expectation(&"IZZ".parse().unwrap()), 1);
        assert_eq!(zero_expectation(&"IZX".parse().unwrap()), 0);
        assert_eq!(zero_expectation(&"YZZ".parse().unwrap()), 0);
    }

    #[test]
    fn dense_sigma_tilde_is_real_orthogonal() {
        for n in 1..=4usize {
            for bits in 0..1u64 << (2 * n) {
                let p = word_from_u64(bits, n);
                let m = dense_sigma_tilde(&p);
                let dim = m.len();
                for i in 0..dim {
                    for j in 0..dim {
                        assert!(m[i][j].im.abs() < 1e-15);
                        let dot: f64 = (0..dim).map(|k| m[k][i].re * m[k][j].re).sum();
                        assert!((dot - f64::from(u8::from(i == j))).abs() < 1e-12);
                    }
                }
                // the signed-permutation kernel agrees with the dense matrix
                for col in 0..dim {
                    let out = apply_sigma_tilde(&p, &StateVector::<f64>::basis(n, col)).unwrap();
                    for row in 0..dim {
                        assert!((out.amplitudes()[row] - m[row][col].re).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn product_rule_matches_dense_products() {
        for n in 1..=3usize {
            for a in 0..1u64 << (2 * n) {
                for b in 0..1u64 << (2 * n) {
                    let (p1, p2) = (word_from_u64(a, n), word_from_u64(b, n));
                    let (s, w) = tilde_product_sign(&p1, &p2).unwrap();
                    let lhs = matmul(&dense_sigma_tilde(&p1), &dense_sigma_tilde(&p2));
                    let rhs = dense_sigma_tilde(&w);
                    let sv = f64::from(s.to_i32());
                    for i in 0..lhs.len() {
                        for j in 0..lhs.len() {
                            assert!((lhs[i][j] - rhs[i][j] * sv).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn self_c_form_counts_y_parity(bits in any::<u64>(), n in 1usize..=32) {
            let p = word_from_u64(bits, n);
            prop_assert_eq!(c_form(&p, &p).unwrap(), p.y_count() % 2 == 1);
        }

        #[test]
        fn applying_twice_gives_sign(bits in 0u64..64, amps in proptest::collection::vec(-1.0f64..1.0, 8)) {
            let p = word_from_u64(bits, 3);
            let v = StateVector::from_amplitudes(amps).unwrap();
            let twice = apply_sigma_tilde(&p, &apply_sigma_tilde(&p, &v).unwrap()).unwrap();
            let s: f64 = if c_form(&p, &p).unwrap() { -1.0 } else { 1.0 };
            for (a, b) in twice.amplitudes().iter().zip(v.amplitudes()) {
                prop_assert!((a - s * b).abs() < 1e-15);
            }
        }
    }
}
