//! Ising models on graphs and three partition-function evaluators: direct
//! spin enumeration, the Eulerian-subgraph (high-temperature) expansion,
//! and the weight-enumerator form with a diagonal sign matrix.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerators::{multivariate_genfunc, qwgt, EnumError, QwgtInstance};
use crate::gf2::{BitMatrix, BitVector, EnumerationCap};
use crate::graphs::{incidence_matrix, GraphError, Hypergraph};
use crate::scalar::Real;

/// Largest vertex count for spin enumeration.
pub const DIRECT_VERTEX_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsingError {
    #[error("edge {0} is not a two-vertex edge")]
    NotAnEdge(usize),
    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{vertices} vertices exceed the spin-enumeration cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("coupling magnitudes differ between edges; the single-λ form needs them equal")]
    NonUniformCoupling,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Coupling on edge `e` is `(-1)^{w_e} J_e`; `w_e = 1` is antiferromagnetic.
#[derive(Clone, Debug, PartialEq)]
pub struct IsingInstance<T> {
    graph: Hypergraph,
    magnitudes: Vec<T>,
    signs: BitVector,
    beta: T,
}

impl<T: Real> IsingInstance<T> {
    /// Uniform magnitude `j` on every edge.
    pub fn new(graph: Hypergraph, j: T, signs: BitVector, beta: T) -> Result<Self, IsingError> {
        let m = graph.edge_count();
        Self::with_magnitudes(graph, vec![j; m], signs, beta)
    }

    pub fn with_magnitudes(graph: Hypergraph, magnitudes: Vec<T>, signs: BitVector, beta: T) -> Result<Self, IsingError> {
        if let Some(k) = graph.edges().iter().position(|e| e.len() != 2) {
            return Err(IsingError::NotAnEdge(k));
        }
        let m = graph.edge_count();
        for found in [magnitudes.len(), signs.len()] {
            if found != m {
                return Err(IsingError::DimensionMismatch { expected: m, found });
            }
        }
        let positive = |x: T| x > T::zero() && x.is_finite();
        if let Some(&j) = magnitudes.iter().find(|&&j| !positive(j)) {
            return Err(IsingError::NonPositive {
                what: "coupling magnitude",
                value: j.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !positive(beta) {
            return Err(IsingError::NonPositive {
                what: "beta",
                value: beta.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            graph,
            magnitudes,
            signs,
            beta,
        })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn magnitudes(&self) -> &[T] {
        &self.magnitudes
    }

    pub fn signs(&self) -> &BitVector {
        &self.signs
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Signed coupling `J_e`.
    pub fn coupling(&self, e: usize) -> T {
        if self.signs.get(e) {
            -self.magnitudes[e]
        } else {
            self.magnitudes[e]
        }
    }

    /// The common magnitude, if every edge has the same one.
    pub fn uniform_magnitude(&self) -> Option<T> {
        let first = *self.magnitudes.first()?;
        self.magnitudes.iter().all(|&j| j == first).then_some(first)
    }

    /// `-Σ J_e σ_i σ_j`.
    pub fn energy(&self, sigma: &SpinConfig) -> Result<T, IsingError> {
        if sigma.len() != self.graph.vertex_count() {
            return Err(IsingError::DimensionMismatch {
                expected: self.graph.vertex_count(),
                found: sigma.len(),
            });
        }
        Ok(self.energy_bits(sigma.up_mask()))
    }

    /// Energy with spin `i` up iff bit `i` of `up` is set.
    fn energy_bits(&self, up: u64) -> T {
        let mut h = T::zero();
        for (k, e) in self.graph.edges().iter().enumerate() {
            let aligned = (up >> e[0] & 1) == (up >> e[1] & 1);
            let j = self.coupling(k);
            h = if aligned { h - j } else { h + j };
        }
        h
    }
}

impl IsingInstance<f64> {
    /// Graph text, then `J <value>` (or one value per edge), `beta <value>`,
    /// and `w <bitstring>`. A missing `w` line means all ferromagnetic.
    pub fn parse(text: &str) -> Result<Self, IsingError> {
        let graph = Hypergraph::parse(text)?;
        let m = graph.edge_count();
        let mut mags = None;
        let mut beta = None;
        let mut signs = None;
        for (i, line) in text.lines().enumerate() {
            let mut toks = line.split_whitespace();
            let key = toks.next();
            let rest: Vec<&str> = toks.collect();
            let bad = |msg: String| IsingError::Parse { line: i + 1, msg };
            let nums = || -> Result<Vec<f64>, IsingError> {
                rest.iter().map(|t| t.parse::<f64>().map_err(|e| bad(format!("{t:?}: {e}")))).collect()
            };
            match key {
                Some("J") => {
                    let v = nums()?;
                    mags = Some(match v.len() {
                        1 => vec![v[0]; m],
                        n if n == m => v,
                        n => return Err(bad(format!("expected 1 or {m} coupling values, got {n}"))),
                    });
                }
                Some("beta") => {
                    let v = nums()?;
                    if v.len() != 1 {
                        return Err(bad("expected one value after `beta`".into()));
                    }
                    beta = Some(v[0]);
                }
                Some("w") => {
                    let bits = rest.concat();
                    if bits.len() != m || !bits.chars().all(|c| c == '0' || c == '1') {
                        return Err(bad(format!("`w` needs a {m}-character 0/1 string")));
                    }
                    signs = Some(BitVector::from_bools(bits.chars().map(|c| c == '1')));
                }
                _ => {}
            }
        }
        let missing = |what: &str| IsingError::Parse {
            line: 0,
            msg: format!("missing `{what}` line"),
        };
        Self::with_magnitudes(
            graph,
            mags.ok_or_else(|| missing("J"))?,
            signs.unwrap_or_else(|| BitVector::zeros(m)),
            beta.ok_or_else(|| missing("beta"))?,
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_text();
        match self.uniform_magnitude() {
            Some(j) => s.push_str(&format!("J {j}\n")),
            None => {
                let v: Vec<String> = self.magnitudes.iter().map(f64::to_string).collect();
                s.push_str(&format!("J {}\n", v.join(" ")));
            }
        }
        s.push_str(&format!("beta {}\nw {}\n", self.beta, self.signs));
        s
    }
}

/// Spins `±1`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfig {
    spins: Vec<i8>,
}

impl SpinConfig {
    /// `None` unless every entry is `±1`.
    pub fn new(spins: Vec<i8>) -> Option<Self> {
        spins.iter().all(|&s| s == 1 || s == -1).then_some(Self { spins })
    }

    pub fn all_up(n: usize) -> Self {
        Self { spins: vec![1; n] }
    }

    /// Spin `i` up iff bit `i` of `mask` is set.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self {
            spins: (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    fn up_mask(&self) -> u64 {
        self.spins
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 1)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.spins {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

const DIRECT_CHUNK_BITS: usize = 12;

/// `Σ_σ exp(-β H(σ))` over all `2^|V|` spin configurations.
pub fn partition_direct<T: Real>(inst: &IsingInstance<T>) -> Result<T, IsingError> {
    let n = inst.graph.vertex_count();
    if n > DIRECT_VERTEX_CAP {
        return Err(IsingError::CapExceeded {
            vertices: n,
            cap: DIRECT_VERTEX_CAP,
        });
    }
    let total = 1u64 << n;
    let chunk = 1u64 << DIRECT_CHUNK_BITS.min(n);
    // fixed chunking keeps the summation order independent of thread count
    let partials: Vec<T> = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            (c * chunk..(c + 1) * chunk)
                .map(|s| (-inst.beta * inst.energy_bits(s)).exp())
                .fold(T::zero(), |a, b| a + b)
        })
        .collect();
    Ok(partials.into_iter().fold(T::zero(), |a, b| a + b))
}

fn two_pow<T: Real>(n: usize) -> T {
    (T::one() + T::one()).powi(n as i32)
}

/// `2^|V| Π cosh(β J_e) · Σ_{a ∈ ker A} Π_{a_e = 1} tanh(β J_e)`.
pub fn partition_vdw<T: Real>(inst: &IsingInstance<T>, cap: EnumerationCap) -> Result<T, IsingError> {
    let m = inst.graph.edge_count();
    let couplings: Vec<T> = (0..m).map(|e| inst.beta * inst.coupling(e)).collect();
    let prefactor = couplings.iter().fold(two_pow::<T>(inst.graph.vertex_count()), |p, &x| p * x.cosh());
    let weights: Vec<T> = couplings.iter().map(|x| x.tanh()).collect();
    Ok(prefactor * multivariate_genfunc(&inst.graph, &weights, cap)?)
}

/// `2^|V| / (1 - λ²)^{|E|/2} · S(A, dg(w), λ, 1)` with `λ = tanh(βJ)`.
pub fn partition_qwgt<T: Real>(inst: &IsingInstance<T>, cap: EnumerationCap) -> Result<T, IsingError> {
    let m = inst.graph.edge_count();
    let j = match inst.uniform_magnitude() {
        Some(j) => j,
        None if m == 0 => T::one(),
        None => return Err(IsingError::NonUniformCoupling),
    };
    let lambda = (inst.beta * j).tanh();
    let s = qwgt(
        &QwgtInstance {
            a: incidence_matrix(&inst.graph),
            b: BitMatrix::diag(&inst.signs),
            x: lambda,
            y: T::one(),
        },
        cap,
    )?;
    let denom = (T::one() - lambda * lambda).powf(T::lit(m as f64 / 2.0));
    Ok(two_pow::<T>(inst.graph.vertex_count()) / denom * s)
}

/// All three evaluators and their largest pairwise relative deviation.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PartitionReport {
    pub direct: Option<f64>,
    pub vdw: Option<f64>,
    pub qwgt: Option<f64>,
    pub max_relative_deviation: f64,
}

pub fn max_relative_deviation(values: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    worst
}

/// Runs every evaluator that applies; inapplicable ones (too many
/// vertices, non-uniform coupling) are reported as `None`.
pub fn partition_all(inst: &IsingInstance<f64>, cap: EnumerationCap) -> Result<PartitionReport, IsingError> {
    let direct = match partition_direct(inst) {
        Ok(z) => Some(z),
        Err(IsingError::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let vdw = Some(partition_vdw(inst, cap)?);
    let qwgt = match partition_qwgt(inst, cap) {
        Ok(z) => Some(z),
        Err(IsingError::NonUniformCoupling) => None,
        Err(e) => return Err(e),
    };
    let vals: Vec<f64> = [direct, vdw, qwgt].into_iter().flatten().collect();
    Ok(PartitionReport {
        direct,
        vdw,
        qwgt,
        max_relative_deviation: max_relative_deviation(&vals),
    })
}
