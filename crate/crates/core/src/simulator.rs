//! Dense statevector simulation of σ̃ gates (real path) and Pauli rotations
//! (complex path), the kernel-sum evaluation of ⟨0…0|U|0…0⟩, the sampled
//! Hadamard test and the decision-wrapper readout.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{require_valid, CircuitError, CircuitMatrix, GateSpec};
use crate::enumerators::signed_weight_counts;
use crate::gf2::{BitVector, EnumerationCap, Gf2Error};
use crate::pauli::{PauliError, PauliWord, Sign};
use crate::scalar::Real;
use crate::state::{ComplexStateVector, StateVector};

/// Largest register the dense simulator accepts.
pub const SIM_QUBIT_CAP: usize = 24;

const PAR_MIN_LEN: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("gate acts on {expected} qubits, state has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Pauli rotations need the complex simulator")]
    RequiresComplex,
    #[error("{qubits} qubits exceeds the simulator cap of {cap}")]
    CapExceeded { qubits: usize, cap: usize },
    #[error("epsilon and delta must lie in (0, 1), got epsilon={epsilon}, delta={delta}")]
    InvalidTolerance { epsilon: f64, delta: f64 },
    #[error("σ̃ gate word {0} has an even number of Y factors")]
    EvenYCount(String),
    #[error("σ̃ gate needs alpha² + beta² > 0")]
    DegenerateGate,
    #[error("qubit index {index} invalid for {qubits} qubits")]
    QubitIndex { index: usize, qubits: usize },
    #[error("controlled gate touches its own control qubit")]
    ControlOverlap,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Simulator-level gate.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp<T> {
    /// `(α I + s β σ̃_word) / √(α²+β²)`; the word has odd Y-count.
    SigmaTilde {
        word: PauliWord,
        alpha: T,
        beta: T,
        sign: Sign,
    },
    /// `exp(−i θ/2 σ_word) = cos(θ/2) I − i sin(θ/2) σ_word`.
    PauliRotation { word: PauliWord, theta: T },
    Cnot { control: usize, target: usize },
}

impl<T: Real> GateOp<T> {
    pub fn sigma_tilde(word: PauliWord, alpha: T, beta: T, sign: Sign) -> Result<Self, SimError> {
        if word.y_count() % 2 == 0 {
            return Err(SimError::EvenYCount(word.to_string()));
        }
        if alpha.hypot(beta) <= T::zero() {
            return Err(SimError::DegenerateGate);
        }
        Ok(GateOp::SigmaTilde {
            word,
            alpha,
            beta,
            sign,
        })
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, GateOp::PauliRotation { .. })
    }

    pub fn adjoint(&self) -> Self {
        match self {
            GateOp::SigmaTilde {
                word,
                alpha,
                beta,
                sign,
            } => GateOp::SigmaTilde {
                word: word.clone(),
                alpha: *alpha,
                beta: *beta,
                sign: sign.flipped(),
            },
            GateOp::PauliRotation { word, theta } => GateOp::PauliRotation {
                word: word.clone(),
                theta: -*theta,
            },
            GateOp::Cnot { control, target } => GateOp::Cnot {
                control: *control,
                target: *target,
            },
        }
    }

    /// Pads Pauli words with identities up to `qubits`.
    pub fn widened(&self, qubits: usize) -> Self {
        let pad = |w: &PauliWord| {
            let mut out = PauliWord::identity(qubits);
            for (q, p) in w.paulis().enumerate() {
                out.set(q, p);
            }
            out
        };
        match self {
            GateOp::SigmaTilde {
                word,
                alpha,
                beta,
                sign,
            } => GateOp::SigmaTilde {
                word: pad(word),
                alpha: *alpha,
                beta: *beta,
                sign: *sign,
            },
            GateOp::PauliRotation { word, theta } => GateOp::PauliRotation {
                word: pad(word),
                theta: *theta,
            },
            GateOp::Cnot { .. } => self.clone(),
        }
    }
}

/// Writes `out[j] = f(j)` for every index, in parallel for large states.
fn fill<A: Send, F: Fn(usize) -> A + Sync>(out: &mut [A], f: F) {
    if out.len() >= PAR_MIN_LEN {
        out.par_iter_mut().enumerate().for_each(|(j, o)| *o = f(j));
    } else {
        out.iter_mut().enumerate().for_each(|(j, o)| *o = f(j));
    }
}

#[inline]
fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

fn check_word(word: &PauliWord, qubits: usize, ctrl: u64) -> Result<(u64, u64), SimError> {
    if word.qubits() != qubits {
        return Err(SimError::DimensionMismatch {
            expected: word.qubits(),
            found: qubits,
        });
    }
    let (flip, phase) = word.masks()?;
    if (flip | phase) & ctrl != 0 {
        return Err(SimError::ControlOverlap);
    }
    Ok((flip, phase))
}

fn check_cnot(control: usize, target: usize, qubits: usize, ctrl: u64) -> Result<(), SimError> {
    for index in [control, target] {
        if index >= qubits {
            return Err(SimError::QubitIndex { index, qubits });
        }
    }
    if control == target || (1u64 << target) & ctrl != 0 {
        return Err(SimError::ControlOverlap);
    }
    Ok(())
}

/// Applies `op` to the real state, restricted to basis states where every
/// bit of `ctrl` is set (identity elsewhere).
fn apply_real_ctrl<T: Real>(state: &StateVector<T>, op: &GateOp<T>, ctrl: u64) -> Result<StateVector<T>, SimError> {
    let n = state.qubits();
    let src = state.amplitudes();
    let mut out = vec![T::zero(); src.len()];
    let active = |j: usize| (j as u64) & ctrl == ctrl;
    match op {
        GateOp::SigmaTilde {
            word,
            alpha,
            beta,
            sign,
        } => {
            let (flip, phase) = check_word(word, n, ctrl)?;
            let gamma = alpha.hypot(*beta);
            let (a, b) = (*alpha / gamma, sign.value::<T>() * *beta / gamma);
            fill(&mut out, |j| {
                if !active(j) {
                    return src[j];
                }
                let from = j ^ flip as usize;
                let s = if parity(phase & from as u64) { -src[from] } else { src[from] };
                a * src[j] + b * s
            });
        }
        GateOp::Cnot { control, target } => {
            check_cnot(*control, *target, n, ctrl)?;
            let cbit = 1usize << control;
            let tbit = 1usize << target;
            fill(&mut out, |j| if active(j) && j & cbit != 0 { src[j ^ tbit] } else { src[j] });
        }
        GateOp::PauliRotation { .. } => return Err(SimError::RequiresComplex),
    }
    Ok(StateVector::from_amplitudes(out).expect("power of two"))
}

fn apply_complex_ctrl<T: Real>(
    state: &ComplexStateVector<T>,
    op: &GateOp<T>,
    ctrl: u64,
) -> Result<ComplexStateVector<T>, SimError> {
    let n = state.qubits();
    let src = state.amplitudes();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; src.len()];
    let active = |j: usize| (j as u64) & ctrl == ctrl;
    match op {
        GateOp::SigmaTilde {
            word,
            alpha,
            beta,
            sign,
        } => {
            let (flip, phase) = check_word(word, n, ctrl)?;
            let gamma = alpha.hypot(*beta);
            let (a, b) = (*alpha / gamma, sign.value::<T>() * *beta / gamma);
            fill(&mut out, |j| {
                if !active(j) {
                    return src[j];
                }
                let from = j ^ flip as usize;
                let s = if parity(phase & from as u64) { -src[from] } else { src[from] };
                src[j] * a + s * b
            });
        }
        GateOp::PauliRotation { word, theta } => {
            let (flip, phase) = check_word(word, n, ctrl)?;
            let half = *theta / (T::one() + T::one());
            let (c, s) = (half.cos(), half.sin());
            // σ = i^{|b|_Y} σ̃, and the rotation carries a further −i.
            let y = word.y_count() as u32;
            let i_pow = Complex::new(T::zero(), T::one()).powu(y);
            let coef = Complex::new(T::zero(), -s) * i_pow;
            fill(&mut out, |j| {
                if !active(j) {
                    return src[j];
                }
                let from = j ^ flip as usize;
                let v = if parity(phase & from as u64) { -src[from] } else { src[from] };
                src[j] * c + coef * v
            });
        }
        GateOp::Cnot { control, target } => {
            check_cnot(*control, *target, n, ctrl)?;
            let cbit = 1usize << control;
            let tbit = 1usize << target;
            fill(&mut out, |j| if active(j) && j & cbit != 0 { src[j ^ tbit] } else { src[j] });
        }
    }
    Ok(ComplexStateVector::from_amplitudes(out).expect("power of two"))
}

pub fn apply_real<T: Real>(state: &StateVector<T>, op: &GateOp<T>) -> Result<StateVector<T>, SimError> {
    apply_real_ctrl(state, op, 0)
}

pub fn apply_complex<T: Real>(state: &ComplexStateVector<T>, op: &GateOp<T>) -> Result<ComplexStateVector<T>, SimError> {
    apply_complex_ctrl(state, op, 0)
}

fn check_cap(qubits: usize) -> Result<(), SimError> {
    if qubits > SIM_QUBIT_CAP {
        Err(SimError::CapExceeded {
            qubits,
            cap: SIM_QUBIT_CAP,
        })
    } else {
        Ok(())
    }
}

pub fn run_real<T: Real>(ops: &[GateOp<T>], qubits: usize) -> Result<StateVector<T>, SimError> {
    check_cap(qubits)?;
    ops.iter().try_fold(StateVector::zero(qubits), |s, op| apply_real(&s, op))
}

pub fn run_complex<T: Real>(ops: &[GateOp<T>], qubits: usize) -> Result<ComplexStateVector<T>, SimError> {
    check_cap(qubits)?;
    ops.iter().try_fold(ComplexStateVector::zero(qubits), |s, op| apply_complex(&s, op))
}

/// The circuit's gates in application order (column 0 first).
pub fn circuit_ops<T: Real>(c: &CircuitMatrix, g: &GateSpec<T>) -> Result<Vec<GateOp<T>>, SimError> {
    require_valid(c)?;
    (0..c.gates())
        .map(|k| GateOp::sigma_tilde(c.word(k), g.alpha, g.beta, g.sign(k)))
        .collect()
}

/// `⟨0…0|U|0…0⟩` by direct simulation.
pub fn amplitude_zero<T: Real>(c: &CircuitMatrix, g: &GateSpec<T>) -> Result<T, SimError> {
    let ops = circuit_ops(c, g)?;
    Ok(run_real(&ops, c.qubits())?.amplitudes()[0])
}

/// `⟨0…0|U|0…0⟩` from the kernel expansion
/// `γ^{−N} Σ_{a ∈ ker CH} (−1)^{h_a} Π_{k∈a} s_k · α^{N−|a|} β^{|a|}`.
pub fn amplitude_via_expansion<T: Real>(c: &CircuitMatrix, g: &GateSpec<T>, cap: EnumerationCap) -> Result<T, SimError> {
    require_valid(c)?;
    let n = c.gates();
    let negated = BitVector::from_bools((0..n).map(|k| g.sign(k).is_minus()));
    let counts = signed_weight_counts(c, Some(&negated), cap)?;
    let mut sum = T::zero();
    for (d, &cnt) in counts.iter().enumerate() {
        if cnt != 0 {
            let term = g.alpha.powu((n - d) as u32) * g.beta.powu(d as u32);
            sum = sum + T::lit(cnt as f64) * term;
        }
    }
    Ok(sum / g.gamma().powu(n as u32))
}

/// `γ^N`: the factor between ⟨0…0|U|0…0⟩ and the bare kernel sum.
pub fn expansion_normalization<T: Real>(g: &GateSpec<T>, gates: usize) -> T {
    g.gamma().powu(gates as u32)
}

/// Hoeffding count for a ±1 outcome: `⌈ln(2/δ) / (2 (ε/2)²)⌉`.
pub fn hoeffding_samples(epsilon: f64, delta: f64) -> Result<u64, SimError> {
    if !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0) {
        return Err(SimError::InvalidTolerance { epsilon, delta });
    }
    let half = epsilon / 2.0;
    Ok(((2.0 / delta).ln() / (2.0 * half * half)).ceil() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrature {
    Real,
    Imag,
}

fn hadamard_real_path<T: Real>(state: &mut StateVector<T>, anc: usize) {
    let bit = 1usize << anc;
    let r = T::one() / (T::one() + T::one()).sqrt();
    let amps = state.amplitudes_mut();
    for j in 0..amps.len() {
        if j & bit == 0 {
            let (a, b) = (amps[j], amps[j | bit]);
            amps[j] = (a + b) * r;
            amps[j | bit] = (a - b) * r;
        }
    }
}

fn hadamard_complex_path<T: Real>(state: &mut ComplexStateVector<T>, anc: usize) {
    let bit = 1usize << anc;
    let r = T::one() / (T::one() + T::one()).sqrt();
    let amps = state.amplitudes_mut();
    for j in 0..amps.len() {
        if j & bit == 0 {
            let (a, b) = (amps[j], amps[j | bit]);
            amps[j] = (a + b) * r;
            amps[j | bit] = (a - b) * r;
        }
    }
}

/// Builds the ancilla interference circuit (H, controlled-U, H; with an S†
/// on the ancilla for the imaginary part), simulates it once, and returns
/// the exact probability of reading 0 on the ancilla.
pub fn hadamard_p_zero<T: Real>(ops: &[GateOp<T>], qubits: usize, quadrature: Quadrature) -> Result<f64, SimError> {
    let total = qubits + 1;
    check_cap(total)?;
    let anc = qubits;
    let ctrl = 1u64 << anc;
    let wide: Vec<GateOp<T>> = ops.iter().map(|g| g.widened(total)).collect();
    let real = wide.iter().all(GateOp::is_real);
    let p0 = if real && quadrature == Quadrature::Real {
        let mut s = StateVector::zero(total);
        hadamard_real_path(&mut s, anc);
        for op in &wide {
            s = apply_real_ctrl(&s, op, ctrl)?;
        }
        hadamard_real_path(&mut s, anc);
        s.amplitudes()[..1 << anc].iter().map(|&a| a * a).sum::<T>()
    } else {
        let mut s = ComplexStateVector::zero(total);
        hadamard_complex_path(&mut s, anc);
        if quadrature == Quadrature::Imag {
            let minus_i = Complex::new(T::zero(), -T::one());
            for (j, a) in s.amplitudes_mut().iter_mut().enumerate() {
                if j >> anc & 1 == 1 {
                    *a = *a * minus_i;
                }
            }
        }
        for op in &wide {
            s = apply_complex_ctrl(&s, op, ctrl)?;
        }
        hadamard_complex_path(&mut s, anc);
        s.amplitudes()[..1 << anc].iter().map(|a| a.norm_sqr()).sum::<T>()
    };
    Ok(p0.to_f64().expect("finite").clamp(0.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateResult {
    pub estimate: f64,
    /// `2 p(0) − 1` from the simulated circuit.
    pub exact: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub samples: u64,
    pub seed: u64,
    pub quadrature: Quadrature,
}

/// Empirical `2 k / samples − 1` from `samples` ancilla shots at `p_zero`.
/// The shot count `k` is drawn as one binomial variate, which has the same
/// law as summing individual Bernoulli measurements.
pub fn sample_estimate(p_zero: f64, samples: u64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = Binomial::new(samples, p_zero).expect("p in [0,1]").sample(&mut rng);
    2.0 * k as f64 / samples as f64 - 1.0
}

fn hadamard_run<T: Real>(
    ops: &[GateOp<T>],
    qubits: usize,
    epsilon: f64,
    delta: f64,
    seed: u64,
    quadrature: Quadrature,
) -> Result<EstimateResult, SimError> {
    let samples = hoeffding_samples(epsilon, delta)?;
    let p0 = hadamard_p_zero(ops, qubits, quadrature)?;
    Ok(EstimateResult {
        estimate: sample_estimate(p0, samples, seed),
        exact: 2.0 * p0 - 1.0,
        epsilon,
        delta,
        samples,
        seed,
        quadrature,
    })
}

/// Additive estimate of `Re⟨0…0|U|0…0⟩`: within `epsilon` with probability
/// at least `1 − delta`.
pub fn hadamard_test<T: Real>(ops: &[GateOp<T>], qubits: usize, epsilon: f64, delta: f64, seed: u64) -> Result<EstimateResult, SimError> {
    hadamard_run(ops, qubits, epsilon, delta, seed, Quadrature::Real)
}

/// Same as [`hadamard_test`] for `Im⟨0…0|U|0…0⟩`.
pub fn hadamard_test_imag<T: Real>(ops: &[GateOp<T>], qubits: usize, epsilon: f64, delta: f64, seed: u64) -> Result<EstimateResult, SimError> {
    hadamard_run(ops, qubits, epsilon, delta, seed, Quadrature::Imag)
}

pub fn hadamard_test_circuit<T: Real>(
    c: &CircuitMatrix,
    g: &GateSpec<T>,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimateResult, SimError> {
    hadamard_test(&circuit_ops(c, g)?, c.qubits(), epsilon, delta, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecisionReport {
    /// Ancilla marginal.
    pub p_zero: f64,
    pub p_one: f64,
    /// Probability mass outside `|0…0⟩ ⊗ {|0⟩, |1⟩}`.
    pub residual: f64,
}

/// Runs a `decision_wrap` output on `qubits` qubits (ancilla last) from
/// `|0…0⟩`.
pub fn run_decision<T: Real>(wrapped: &[GateOp<T>], qubits: usize) -> Result<DecisionReport, SimError> {
    if qubits == 0 {
        return Err(SimError::QubitIndex { index: 0, qubits });
    }
    let anc = 1usize << (qubits - 1);
    let probs: Vec<f64> = if wrapped.iter().all(GateOp::is_real) {
        run_real(wrapped, qubits)?.amplitudes().iter().map(|&a| (a * a).to_f64().unwrap()).collect()
    } else {
        run_complex(wrapped, qubits)?.amplitudes().iter().map(|a| a.norm_sqr().to_f64().unwrap()).collect()
    };
    let p_one: f64 = probs.iter().enumerate().filter(|(j, _)| j & anc != 0).map(|(_, p)| p).sum();
    let total: f64 = probs.iter().sum();
    Ok(DecisionReport {
        p_zero: total - p_one,
        p_one,
        residual: (total - probs[0] - probs[anc]).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{adjoint, decision_wrap, GateForm};
    use crate::gf2::BitMatrix;
    use rand::Rng;

    fn word(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn random_valid_word<R: Rng>(rng: &mut R, n: usize) -> PauliWord {
        loop {
            let bits = BitVector::from_bools((0..2 * n).map(|_| rng.random_bool(0.5)));
            let w = PauliWord::from_bits(bits).unwrap();
            if w.y_count() % 2 == 1 {
                return w;
            }
        }
    }

    #[test]
    fn basic_gates() {
        let y = GateOp::sigma_tilde(word("Y"), 0.0, 1.0, Sign::Plus).unwrap();
        let s = apply_real(&StateVector::<f64>::zero(1), &y).unwrap();
        assert_eq!(s.amplitudes(), &[0.0, 1.0]);
        // |10⟩: qubit 0 set (control) -> |11⟩
        let cx = GateOp::Cnot { control: 0, target: 1 };
        let s = apply_real(&StateVector::<f64>::basis(2, 0b01), &cx).unwrap();
        assert_eq!(s.amplitudes(), StateVector::<f64>::basis(2, 0b11).amplitudes());
        assert!(GateOp::sigma_tilde(word("YY"), 1.0, 1.0, Sign::Plus).is_err());
        assert!(GateOp::sigma_tilde(word("Y"), 0.0, 0.0, Sign::Plus).is_err());
        assert_eq!(apply_real(&StateVector::<f64>::zero(2), &y), Err(SimError::DimensionMismatch { expected: 1, found: 2 }));
        let rot = GateOp::PauliRotation { word: word("Z"), theta: 1.0 };
        assert_eq!(apply_real(&StateVector::<f64>::zero(1), &rot), Err(SimError::RequiresComplex));
    }

    #[test]
    fn zz_rotation_is_the_sign_flip_diagonal() {
        let rot = GateOp::PauliRotation {
            word: word("ZZ"),
            theta: std::f64::consts::FRAC_PI_2,
        };
        let (alpha, beta) = (1.0f64, 1.0f64);
        let gamma = alpha.hypot(beta);
        for idx in 0..4usize {
            let out = apply_complex(&ComplexStateVector::<f64>::basis(2, idx), &rot).unwrap();
            // Z⊗Z eigenvalue of the basis state
            let ev = if (idx.count_ones() & 1) == 0 { 1.0 } else { -1.0 };
            let expect = Complex::new(alpha, -ev * beta) / gamma;
            for (j, a) in out.amplitudes().iter().enumerate() {
                let want = if j == idx { expect } else { Complex::new(0.0, 0.0) };
                assert!((a - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn real_and_complex_paths_agree_and_preserve_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 4;
        let ops: Vec<GateOp<f64>> = (0..100)
            .map(|_| {
                let s = if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus };
                GateOp::sigma_tilde(random_valid_word(&mut rng, n), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), s).unwrap()
            })
            .collect();
        let mut r = StateVector::<f64>::zero(n);
        let mut c = ComplexStateVector::<f64>::zero(n);
        for op in &ops {
            r = apply_real(&r, op).unwrap();
            c = apply_complex(&c, op).unwrap();
            assert!((r.norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(c.max_imag() < 1e-12);
        for (a, b) in r.amplitudes().iter().zip(c.amplitudes()) {
            assert!((a - b.re).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_matches_sigma_tilde_gate() {
        // cos(θ/2) I − i sin(θ/2) σ with σ̃ = −iσ for a single Y:
        // rotation by θ equals the σ̃ gate with α = cos(θ/2), β = sin(θ/2).
        let theta = 0.83f64;
        let w = word("ZXY");
        let rot = GateOp::PauliRotation { word: w.clone(), theta };
        let gate = GateOp::sigma_tilde(w, (theta / 2.0).cos(), (theta / 2.0).sin(), Sign::Plus).unwrap();
        for idx in 0..8 {
            let a = apply_complex(&ComplexStateVector::<f64>::basis(3, idx), &rot).unwrap();
            let b = apply_complex(&ComplexStateVector::<f64>::basis(3, idx), &gate).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn amplitude_small_cases() {
        let g = GateSpec::from_form(0.5, GateForm::EdgeWeight);
        assert_eq!(amplitude_zero(&CircuitMatrix::empty(2), &g).unwrap(), 1.0);
        let c = CircuitMatrix::from_words(2, &[word("YX")]).unwrap();
        let want = 1.0 / (1.0f64 + 0.25).sqrt();
        assert!((amplitude_zero(&c, &g).unwrap() - want).abs() < 1e-15);
        assert!((amplitude_via_expansion(&c, &g, EnumerationCap::default()).unwrap() - want).abs() < 1e-15);
        assert!(amplitude_zero(&CircuitMatrix::new(BitMatrix::zeros(2, 1)).unwrap(), &g).is_err());
    }

    #[test]
    fn expansion_matches_simulation_with_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=4);
            let gates = rng.random_range(0..=8);
            let words: Vec<_> = (0..gates).map(|_| random_valid_word(&mut rng, n)).collect();
            let c = CircuitMatrix::from_words(n, &words).unwrap();
            let signs = (0..gates).map(|_| if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus }).collect();
            let g = GateSpec::<f64>::new(rng.random_range(0.0..2.0), rng.random_range(0.1..2.0)).with_signs(signs);
            let a = amplitude_zero(&c, &g).unwrap();
            let b = amplitude_via_expansion(&c, &g, EnumerationCap::default()).unwrap();
            assert!((a - b).abs() < 1e-10, "{c:?}: {a} vs {b}");
        }
    }

    #[test]
    fn adjoint_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let words: Vec<_> = (0..5).map(|_| random_valid_word(&mut rng, 3)).collect();
        let c = CircuitMatrix::from_words(3, &words).unwrap();
        let g = GateSpec::from_form(0.7, GateForm::IdentityWeight);
        let (ca, ga) = adjoint(&c, &g);
        let mut ops = circuit_ops(&c, &g).unwrap();
        ops.extend(circuit_ops(&ca, &ga).unwrap());
        let amps = StateVector::from_amplitudes((0..8).map(|i| (i as f64 + 1.0).sqrt()).collect()).unwrap();
        let mut v = amps.clone();
        for op in &ops {
            v = apply_real(&v, op).unwrap();
        }
        assert!(v.max_abs_diff(&amps) < 1e-12);
    }

    #[test]
    fn hoeffding_counts() {
        assert_eq!(hoeffding_samples(0.05, 0.05).unwrap(), (40f64.ln() / (2.0 * 0.000625)).ceil() as u64);
        assert_eq!(hoeffding_samples(0.05, 0.05).unwrap(), 2952);
        assert!(hoeffding_samples(0.0, 0.5).is_err());
        assert!(hoeffding_samples(0.5, 1.0).is_err());
    }

    #[test]
    fn hadamard_identity_is_exact() {
        let r = hadamard_test::<f64>(&[], 2, 0.1, 0.1, 1).unwrap();
        assert!((r.exact - 1.0).abs() < 1e-12);
        assert_eq!(r.estimate, 1.0);
        assert!(hadamard_test::<f64>(&[], 2, 1.5, 0.1, 1).is_err());
    }

    #[test]
    fn hadamard_exact_term_matches_amplitude() {
        let c = CircuitMatrix::from_words(3, &[word("YXI"), word("IYX"), word("XZY"), word("YYY")]).unwrap();
        let g = GateSpec::from_form(0.5, GateForm::EdgeWeight).with_signs(vec![Sign::Minus]);
        let amp = amplitude_zero(&c, &g).unwrap();
        let r = hadamard_test_circuit(&c, &g, 0.05, 0.05, 9).unwrap();
        assert!((r.exact - amp).abs() < 1e-12);
        assert!((r.estimate - amp).abs() < 0.05);
        // σ̃ circuits are real: the imaginary quadrature is zero
        let im = hadamard_test_imag(&circuit_ops(&c, &g).unwrap(), 3, 0.05, 0.05, 9).unwrap();
        assert!(im.exact.abs() < 1e-12);
    }

    #[test]
    fn hadamard_imag_on_rotation() {
        // exp(−iθ/2 Z)|0⟩ = e^{−iθ/2}|0⟩
        let theta = 0.9f64;
        let ops = vec![GateOp::PauliRotation { word: word("Z"), theta }];
        let re = hadamard_test(&ops, 1, 0.1, 0.1, 0).unwrap();
        let im = hadamard_test_imag(&ops, 1, 0.1, 0.1, 0).unwrap();
        assert!((re.exact - (theta / 2.0).cos()).abs() < 1e-12);
        assert!((im.exact + (theta / 2.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn estimates_are_reproducible() {
        let a = sample_estimate(0.3, 1000, 42);
        let b = sample_estimate(0.3, 1000, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn rmse_shrinks_like_inverse_sqrt() {
        let p0 = 0.5 * (1.0 + 0.6);
        let truth = 0.6;
        let rmse = |samples: u64| {
            let sq: f64 = (0..50u64).map(|t| (sample_estimate(p0, samples, 1000 + t) - truth).powi(2)).sum();
            (sq / 50.0).sqrt()
        };
        let ratio = rmse(2000) / rmse(4000);
        assert!((1.2..=1.7).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn decision_on_superposition() {
        let h_like = GateOp::sigma_tilde(word("YI"), 1.0, 1.0, Sign::Plus).unwrap();
        let w = decision_wrap(std::slice::from_ref(&h_like), 2, 0).unwrap();
        let rep = run_decision(&w, 3).unwrap();
        let u = run_real(&[h_like], 2).unwrap();
        let p1: f64 = u.amplitudes().iter().enumerate().filter(|(j, _)| j & 1 == 1).map(|(_, a)| a * a).sum();
        assert!((rep.p_one - p1).abs() < 1e-12);
        assert!((rep.p_one - 0.5).abs() < 1e-12);
        // the copy entangles the ancilla, so U† cannot restore |00⟩
        assert!(rep.residual > 0.4);
    }

    #[test]
    fn circuit_ops_require_valid() {
        let bad = CircuitMatrix::from_words(2, &[word("YY")]).unwrap();
        assert!(matches!(circuit_ops(&bad, &GateSpec::new(1.0, 1.0)), Err(SimError::Circuit(_))));
    }

    #[test]
    fn cap_on_qubits() {
        assert!(matches!(run_real::<f64>(&[], 25), Err(SimError::CapExceeded { .. })));
    }
}
