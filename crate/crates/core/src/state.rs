//! Dense statevectors. Basis index bit `q` holds qubit `q` (qubit 0 is the
//! leftmost factor in printed Pauli strings).

use num_complex::Complex;

use crate::scalar::Real;

/// Real amplitudes; σ̃ circuits never leave the reals.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    qubits: usize,
    amps: Vec<T>,
}

impl<T: Real> StateVector<T> {
    /// |0…0⟩ on `qubits` qubits.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = vec![T::zero(); 1usize << qubits];
        amps[index] = T::one();
        Self { qubits, amps }
    }

    /// Amplitude count must be a power of two.
    pub fn from_amplitudes(amps: Vec<T>) -> Option<Self> {
        let len = amps.len();
        (len.is_power_of_two()).then(|| Self {
            qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [T] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<T> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|&a| a * a).sum()
    }

    pub fn to_complex(&self) -> ComplexStateVector<T> {
        ComplexStateVector {
            qubits: self.qubits,
            amps: self.amps.iter().map(|&a| Complex::new(a, T::zero())).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStateVector<T> {
    qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> ComplexStateVector<T> {
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1usize << qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Self { qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Option<Self> {
        let len = amps.len();
        (len.is_power_of_two()).then(|| Self {
            qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest imaginary part in magnitude.
    pub fn max_imag(&self) -> T {
        self.amps.iter().map(|a| a.im.abs()).fold(T::zero(), T::max)
    }
}
