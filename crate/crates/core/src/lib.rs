//! Pauli-product circuits and their (hyper)graphs over GF(2).
//!
//! A circuit of gates `(α I + β σ̃)/γ` is stored as a binary matrix `H`
//! whose columns encode the Pauli words. Its amplitude `⟨0…0|U|0…0⟩` is a
//! signed sum over the cycle space of the graph read off the flip bits,
//! which ties together quadratically signed weight enumerators, Eulerian
//! subgraph generating functions, and Ising partition functions. This crate
//! evaluates all of them exactly and simulates the circuits directly.

pub mod circuit;
pub mod corpus;
pub mod enumerators;
pub mod gf2;
pub mod graphs;
pub mod ising;
pub mod pauli;
pub mod scalar;
pub mod simulator;
pub mod state;

pub use circuit::{CircuitError, CircuitMatrix, GateForm, GateSpec, ValidationReport};
pub use enumerators::{EnumError, QwgtInstance, SignedPolynomial};
pub use gf2::{BitMatrix, BitVector, EnumerationCap, Gf2Error, KernelBasis, QuadraticForm};
pub use graphs::{GraphError, Hypergraph, LiftChoice, PhaseForm};
pub use ising::{IsingError, IsingInstance, SpinConfig};
pub use pauli::{Pauli, PauliError, PauliWord, Sign};
pub use scalar::{Real, Scalar};
pub use simulator::{EstimateResult, GateOp, SimError};
pub use state::{ComplexStateVector, StateVector};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type GateSpecF64 = GateSpec<f64>;
pub type GateSpecF32 = GateSpec<f32>;
pub type GateOpF64 = GateOp<f64>;
pub type StateVectorF64 = StateVector<f64>;
pub type StateVectorF32 = StateVector<f32>;
pub type ComplexStateVectorF64 = ComplexStateVector<f64>;
pub type IsingInstanceF64 = IsingInstance<f64>;
pub type IsingInstanceF32 = IsingInstance<f32>;
pub type QwgtInstanceF64 = QwgtInstance<f64>;
pub type QwgtInstanceRational = QwgtInstance<Rational>;
