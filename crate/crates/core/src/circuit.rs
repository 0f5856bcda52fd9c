//! The H-matrix circuit encoding.
//!
//! `H` is `2n × N`; column `k` is the Pauli word `b_k` of gate `G_k`, and
//! gates are applied in column order (column 0 first), so the realized
//! operator is `U = G_{N-1} ⋯ G_0`. Each gate is
//! `G_k = (α I + s_k β σ̃_{b_k}) / γ` with `γ = √(α² + β²)`; it is real
//! orthogonal exactly when `b_k` has an odd number of Y factors.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};
use crate::pauli::{Pauli, PauliWord, Sign};
use crate::scalar::Real;
use crate::simulator::GateOp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("index {index} out of range (< {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("H must have an even number of rows, got {0}")]
    OddRows(usize),
    #[error("header says {header}, matrix has {actual}")]
    HeaderMismatch { header: String, actual: String },
    #[error("invalid circuit: {0}")]
    Invalid(String),
    #[error(transparent)]
    Matrix(#[from] Gf2Error),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CircuitMatrix {
    h: BitMatrix,
}

impl CircuitMatrix {
    pub fn new(h: BitMatrix) -> Result<Self, CircuitError> {
        if h.rows() % 2 != 0 {
            return Err(CircuitError::OddRows(h.rows()));
        }
        Ok(Self { h })
    }

    pub fn empty(qubits: usize) -> Self {
        Self {
            h: BitMatrix::zeros(2 * qubits, 0),
        }
    }

    pub fn from_words(qubits: usize, words: &[PauliWord]) -> Result<Self, CircuitError> {
        let cols: Vec<_> = words.iter().map(|w| w.bits().clone()).collect();
        Ok(Self {
            h: BitMatrix::from_columns(2 * qubits, &cols)?,
        })
    }

    pub fn qubits(&self) -> usize {
        self.h.rows() / 2
    }

    pub fn gates(&self) -> usize {
        self.h.cols()
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn word(&self, k: usize) -> PauliWord {
        PauliWord::from_bits(self.h.column(k)).expect("even rows")
    }

    pub fn words(&self) -> Vec<PauliWord> {
        (0..self.gates()).map(|k| self.word(k)).collect()
    }

    /// Same gates, opposite column order. Use this to import a circuit that
    /// was written down as an operator product (leftmost factor applied last).
    pub fn reversed_columns(&self) -> Self {
        let n = self.gates();
        let cols: Vec<_> = (0..n).rev().map(|k| self.h.column(k)).collect();
        Self {
            h: BitMatrix::from_columns(self.h.rows(), &cols).expect("same height"),
        }
    }

    /// Text form: the GF(2) matrix preceded by `# qubits=n gates=N`.
    pub fn to_text(&self) -> String {
        format!("# qubits={} gates={}\n{}", self.qubits(), self.gates(), self.h.to_text())
    }

    pub fn parse(text: &str) -> Result<Self, CircuitError> {
        let h = BitMatrix::parse(text)?;
        let c = Self::new(h)?;
        for line in text.lines().map(str::trim).filter(|l| l.starts_with('#')) {
            let mut qubits = None;
            let mut gates = None;
            for tok in line.trim_start_matches('#').split_whitespace() {
                if let Some(v) = tok.strip_prefix("qubits=") {
                    qubits = v.parse::<usize>().ok();
                } else if let Some(v) = tok.strip_prefix("gates=") {
                    gates = v.parse::<usize>().ok();
                }
            }
            let bad_q = qubits.is_some_and(|q| q != c.qubits());
            let bad_g = gates.is_some_and(|g| g != c.gates());
            if bad_q || bad_g {
                return Err(CircuitError::HeaderMismatch {
                    header: line.to_string(),
                    actual: format!("qubits={} gates={}", c.qubits(), c.gates()),
                });
            }
        }
        Ok(c)
    }
}

impl fmt::Debug for CircuitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words().iter().map(|w| w.to_string()).collect();
        write!(f, "CircuitMatrix(n={}, [{}])", self.qubits(), words.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationReason {
    /// Gate is not real orthogonal: Y-count is even.
    EvenYCount { y: usize },
    /// Graph restriction: more than one Y.
    MultipleY { y: usize },
    /// Graph restriction: more than one X.
    MultipleX { x: usize },
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationReason::EvenYCount { y } => write!(f, "even Y-count ({y})"),
            ViolationReason::MultipleY { y } => write!(f, "more than one Y ({y})"),
            ViolationReason::MultipleX { x } => write!(f, "more than one X ({x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub column: usize,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub graph_restricted: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// No violations of any kind that was checked.
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every gate has odd Y-count (restriction violations ignored).
    pub fn is_valid(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v.reason, ViolationReason::EvenYCount { .. }))
    }
}

/// Lists every offending column. With `graph_restricted`, also enforces one
/// Y and at most one X per column.
pub fn validate(c: &CircuitMatrix, graph_restricted: bool) -> ValidationReport {
    let mut violations = Vec::new();
    for k in 0..c.gates() {
        let w = c.word(k);
        let y = w.y_count();
        if y % 2 == 0 {
            violations.push(Violation {
                column: k,
                reason: ViolationReason::EvenYCount { y },
            });
        }
        if graph_restricted {
            if y > 1 {
                violations.push(Violation {
                    column: k,
                    reason: ViolationReason::MultipleY { y },
                });
            }
            let x = w.x_count();
            if x > 1 {
                violations.push(Violation {
                    column: k,
                    reason: ViolationReason::MultipleX { x },
                });
            }
        }
    }
    ValidationReport {
        graph_restricted,
        violations,
    }
}

pub(crate) fn require_valid(c: &CircuitMatrix) -> Result<(), CircuitError> {
    let r = validate(c, false);
    if r.is_valid() {
        Ok(())
    } else {
        let cols: Vec<String> = r.violations.iter().map(|v| format!("column {}: {}", v.column, v.reason)).collect();
        Err(CircuitError::Invalid(cols.join("; ")))
    }
}

/// Decoded Pauli word of column `k`.
pub fn column_pauli(c: &CircuitMatrix, k: usize) -> Result<PauliWord, CircuitError> {
    if k >= c.gates() {
        return Err(CircuitError::IndexOutOfRange {
            index: k,
            bound: c.gates(),
        });
    }
    Ok(c.word(k))
}

/// Tensor-product display, e.g. `Z⊗X⊗Y`.
pub fn tensor_string(w: &PauliWord) -> String {
    let letters: Vec<String> = w.paulis().map(|p| p.letter().to_string()).collect();
    letters.join("⊗")
}

/// `C·H`: row `2i` receives row `2i+1` of H, odd rows are zero.
pub fn ch_matrix(c: &CircuitMatrix) -> BitMatrix {
    let h = c.h();
    let mut out = BitMatrix::zeros(h.rows(), h.cols());
    for i in 0..c.qubits() {
        out.set_row(2 * i, &h.row(2 * i + 1));
    }
    out
}

/// The `n × N` incidence block of `C·H` (its nonzero-capable rows).
pub fn flip_incidence(c: &CircuitMatrix) -> BitMatrix {
    let h = c.h();
    let mut out = BitMatrix::zeros(c.qubits(), h.cols());
    for i in 0..c.qubits() {
        out.set_row(i, &h.row(2 * i + 1));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateForm {
    /// `(λ I + σ̃) / √(λ²+1)`.
    IdentityWeight,
    /// `(I + λ σ̃) / √(1+λ²)`; kernel weight `λ^{|a|}`.
    EdgeWeight,
}

/// Coefficients shared by every gate of a circuit, plus per-gate signs.
/// Signs missing from `signs` default to `+`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSpec<T> {
    pub alpha: T,
    pub beta: T,
    pub signs: Vec<Sign>,
}

impl<T: Real> GateSpec<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        Self {
            alpha,
            beta,
            signs: Vec::new(),
        }
    }

    pub fn from_form(lambda: T, form: GateForm) -> Self {
        match form {
            GateForm::IdentityWeight => Self::new(lambda, T::one()),
            GateForm::EdgeWeight => Self::new(T::one(), lambda),
        }
    }

    pub fn with_signs(mut self, signs: Vec<Sign>) -> Self {
        self.signs = signs;
        self
    }

    pub fn gamma(&self) -> T {
        self.alpha.hypot(self.beta)
    }

    pub fn sign(&self, k: usize) -> Sign {
        self.signs.get(k).copied().unwrap_or_default()
    }

    /// Rotation angle θ of gate `k` written as `cos(θ/2) I − i sin(θ/2) σ_b`.
    /// `None` for an even Y-count, which is not a rotation.
    pub fn rotation_angle(&self, k: usize, y_count: usize) -> Option<T> {
        let two = T::one() + T::one();
        let s: T = self.sign(k).value();
        let theta = two * (s * self.beta).atan2(self.alpha);
        match y_count % 4 {
            1 => Some(theta),
            3 => Some(-theta),
            _ => None,
        }
    }
}

/// Magnitude of the rotation angle realized by the λ-parametrized gate.
pub fn gate_angle<T: Real>(lambda: T, form: GateForm) -> Result<T, CircuitError> {
    if !(lambda > T::zero()) {
        return Err(CircuitError::NonPositiveLambda(lambda.to_f64().unwrap_or(f64::NAN)));
    }
    let two = T::one() + T::one();
    let r = lambda / (T::one() + lambda * lambda).sqrt();
    Ok(match form {
        GateForm::IdentityWeight => two * r.acos(),
        GateForm::EdgeWeight => two * r.asin(),
    })
}

/// Inverse circuit: columns reversed and every sign flipped. For an odd-Y
/// word `σ̃ᵀ = −σ̃`, so this is the transpose of the original operator.
pub fn adjoint<T: Real>(c: &CircuitMatrix, g: &GateSpec<T>) -> (CircuitMatrix, GateSpec<T>) {
    let n = c.gates();
    let signs = (0..n).rev().map(|k| g.sign(k).flipped()).collect();
    (
        c.reversed_columns(),
        GateSpec {
            alpha: g.alpha,
            beta: g.beta,
            signs,
        },
    )
}

/// Wraps `u` (acting on `qubits` qubits) with an ancilla at index `qubits`:
/// `U`, then CNOT from the decision qubit onto the ancilla, then `U†`.
pub fn decision_wrap<T: Real>(u: &[GateOp<T>], qubits: usize, decision_qubit: usize) -> Result<Vec<GateOp<T>>, CircuitError> {
    if decision_qubit >= qubits {
        return Err(CircuitError::IndexOutOfRange {
            index: decision_qubit,
            bound: qubits,
        });
    }
    let widen = |g: &GateOp<T>| g.widened(qubits + 1);
    let mut out: Vec<GateOp<T>> = u.iter().map(widen).collect();
    out.push(GateOp::Cnot {
        control: decision_qubit,
        target: qubits,
    });
    out.extend(u.iter().rev().map(|g| widen(&g.adjoint())));
    Ok(out)
}

/// Pauli string for a single-qubit letter embedded in `n` qubits.
pub fn single_qubit_word(n: usize, q: usize, p: Pauli) -> PauliWord {
    let mut w = PauliWord::identity(n);
    w.set(q, p);
    w
}
