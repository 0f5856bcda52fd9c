//! Exact kernel sums: quadratically signed weight enumerators, the Eulerian
//! subgraph generating function and its signed variant, all kept as integer
//! coefficient vectors and evaluated afterwards.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::circuit::{flip_incidence, require_valid, CircuitError, CircuitMatrix};
use crate::gf2::{
    kernel_basis, par_walk_kernel, BitMatrix, BitVector, EnumerationCap, Gf2Error, KernelBasis, QuadraticForm,
};
use crate::graphs::{incidence_matrix, Hypergraph, PhaseForm};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(#[from] CircuitError),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Integer polynomial `Σ c_d λ^d`, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPolynomial {
    coeffs: Vec<BigInt>,
}

impl SignedPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i128(counts: &[i128]) -> Self {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Highest nonzero degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `Σ |c_d|`.
    pub fn abs_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Horner evaluation in any scalar.
    pub fn evaluate<T: Scalar>(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + T::from_bigint(c))
    }

    /// Homogeneous evaluation `Σ c_d x^d y^{n-d}` with `n` the coefficient
    /// count minus one.
    pub fn evaluate_bivariate<T: Scalar>(&self, x: &T, y: &T) -> T {
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs.iter().enumerate().fold(T::zero(), |acc, (d, c)| {
            if c.is_zero() {
                acc
            } else {
                acc + T::from_bigint(c) * x.powu(d as u32) * y.powu((n - d) as u32)
            }
        })
    }
}

impl fmt::Display for SignedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let one = mag == BigInt::from(1);
            match d {
                0 => write!(f, "{mag}")?,
                _ if one => {}
                _ => write!(f, "{mag}*")?,
            }
            match d {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients serialize as decimal strings once they leave the i64 range.
impl Serialize for SignedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match i64::try_from(c) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Signed counts `c_d = Σ_{a ∈ ker K, |a| = d} (-1)^{q(a)}` for a kernel and
/// quadratic form, `d = 0..=ambient`.
pub fn kernel_form_counts(kb: &KernelBasis, form: &QuadraticForm, cap: EnumerationCap) -> Result<Vec<i128>, Gf2Error> {
    let m = kb.ambient_dim;
    let walker = form.walker(kb);
    let (counts, _) = par_walk_kernel(
        kb,
        cap,
        || (vec![0i128; m + 1], false),
        |(counts, phase), v, step| {
            *phase = walker.advance(*phase, v, step);
            counts[v.count_ones()] += if *phase { -1 } else { 1 };
        },
        |(mut a, p), (b, _)| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            (a, p)
        },
    )?;
    Ok(counts)
}

/// Unsigned per-weight counts of a kernel.
fn kernel_weight_counts(kb: &KernelBasis, cap: EnumerationCap) -> Result<Vec<i128>, Gf2Error> {
    let zero = QuadraticForm::new(BitMatrix::zeros(kb.ambient_dim, kb.ambient_dim));
    kernel_form_counts(kb, &zero, cap)
}

/// Per-weight signed counts for a circuit: `Σ_{a ∈ ker CH, |a|=d} (-1)^{h_a ⊕ n·a}`
/// where `n` optionally marks negated gates.
pub fn signed_weight_counts(c: &CircuitMatrix, negated: Option<&BitVector>, cap: EnumerationCap) -> Result<Vec<i128>, Gf2Error> {
    let kb = kernel_basis(&flip_incidence(c));
    let mut b = PhaseForm::of(c).lower;
    if let Some(neg) = negated {
        if neg.len() != c.gates() {
            return Err(Gf2Error::LengthMismatch {
                expected: c.gates(),
                found: neg.len(),
            });
        }
        b = b.add(&BitMatrix::diag(neg))?;
    }
    kernel_form_counts(&kb, &QuadraticForm::new(b), cap)
}

/// A weight-enumerator instance `S(A, B, x, y)`.
#[derive(Clone, Debug)]
pub struct QwgtInstance<T> {
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub x: T,
    pub y: T,
}

impl<T: Scalar> QwgtInstance<T> {
    fn check(&self) -> Result<(), EnumError> {
        let n = self.a.cols();
        if self.b.rows() != n || self.b.cols() != n {
            return Err(EnumError::DimensionMismatch {
                expected: n,
                found: if self.b.rows() != n { self.b.rows() } else { self.b.cols() },
            });
        }
        Ok(())
    }
}

/// Coefficient of `x^d y^{n-d}` in `S(A, B, x, y)` for every `d`.
pub fn qwgt_table<T: Scalar>(inst: &QwgtInstance<T>, cap: EnumerationCap) -> Result<SignedPolynomial, EnumError> {
    inst.check()?;
    let kb = kernel_basis(&inst.a);
    let counts = kernel_form_counts(&kb, &QuadraticForm::new(inst.b.clone()), cap)?;
    Ok(SignedPolynomial::from_i128(&counts))
}

/// `S(A, B, x, y) = Σ_{b: Ab = 0} (-1)^{bᵀBb} x^{|b|} y^{n-|b|}`.
pub fn qwgt<T: Scalar>(inst: &QwgtInstance<T>, cap: EnumerationCap) -> Result<T, EnumError> {
    Ok(qwgt_table(inst, cap)?.evaluate_bivariate(&inst.x, &inst.y))
}

/// `E(Γ, x)`: number of even-degree edge subsets of each size.
pub fn eulerian_genfunc(g: &Hypergraph, cap: EnumerationCap) -> Result<SignedPolynomial, EnumError> {
    let kb = kernel_basis(&incidence_matrix(g));
    Ok(SignedPolynomial::from_i128(&kernel_weight_counts(&kb, cap)?))
}

/// `E'(Γ, λ) = Σ_{a ∈ ker CH} (-1)^{h_a} λ^{|a|}`, unnormalized.
pub fn signed_genfunc(c: &CircuitMatrix, cap: EnumerationCap) -> Result<SignedPolynomial, EnumError> {
    require_valid(c)?;
    Ok(SignedPolynomial::from_i128(&signed_weight_counts(c, None, cap)?))
}

/// `Σ_{a ∈ ker A} Π_{e: a_e = 1} w_e`.
pub fn multivariate_genfunc<T: Scalar>(g: &Hypergraph, weights: &[T], cap: EnumerationCap) -> Result<T, EnumError> {
    if weights.len() != g.edge_count() {
        return Err(EnumError::DimensionMismatch {
            expected: g.edge_count(),
            found: weights.len(),
        });
    }
    let kb = kernel_basis(&incidence_matrix(g));
    let sum = par_walk_kernel(
        &kb,
        cap,
        T::zero,
        |acc: &mut T, v, _| {
            let term = v.iter_ones().fold(T::one(), |p, e| p * weights[e].clone());
            *acc = acc.clone() + term;
        },
        |a, b| a + b,
    )?;
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{lift_to_circuit, ColumnLift, LiftChoice};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn g(n: usize, edges: &[[usize; 2]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges).unwrap()
    }

    fn k3() -> Hypergraph {
        g(3, &[[0, 1], [1, 2], [0, 2]])
    }

    fn brute_counts(a: &BitMatrix, b: &BitMatrix) -> Vec<i128> {
        let n = a.cols();
        let mut c = vec![0i128; n + 1];
        for x in 0..1u64 << n {
            let v = BitVector::from_u64(x, n);
            if a.mul_vec(&v).unwrap().is_zero() {
                let q = b.mul_vec(&v).unwrap().dot(&v);
                c[v.count_ones()] += if q { -1 } else { 1 };
            }
        }
        c
    }

    fn coeffs(p: &SignedPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn qwgt_trivial_cases() {
        let inst = QwgtInstance {
            a: BitMatrix::zeros(1, 1),
            b: BitMatrix::zeros(1, 1),
            x: 0.3,
            y: 0.9,
        };
        assert!((qwgt(&inst, EnumerationCap::default()).unwrap() - 1.2).abs() < 1e-15);
        let inst = QwgtInstance {
            a: BitMatrix::identity(4),
            b: BitMatrix::identity(4),
            x: 2.0,
            y: 3.0,
        };
        assert_eq!(qwgt(&inst, EnumerationCap::default()).unwrap(), 81.0);
    }

    #[test]
    fn qwgt_k3_with_one_diagonal_sign() {
        let inst = QwgtInstance {
            a: incidence_matrix(&k3()),
            b: BitMatrix::diag(&BitVector::from_bits(&[1, 0, 0])),
            x: 0.5,
            y: 1.0,
        };
        let t = qwgt_table(&inst, EnumerationCap::default()).unwrap();
        assert_eq!(coeffs(&t), vec![1, 0, 0, -1]);
        assert_eq!(qwgt(&inst, EnumerationCap::default()).unwrap(), 1.0 - 0.125);
    }

    #[test]
    fn qwgt_rejects_bad_b() {
        let inst = QwgtInstance {
            a: BitMatrix::zeros(1, 3),
            b: BitMatrix::zeros(2, 2),
            x: 1.0,
            y: 1.0,
        };
        assert!(matches!(qwgt(&inst, EnumerationCap::default()), Err(EnumError::DimensionMismatch { .. })));
    }

    #[test]
    fn eulerian_examples() {
        let cap = EnumerationCap::default();
        assert_eq!(coeffs(&eulerian_genfunc(&k3(), cap).unwrap()), vec![1, 0, 0, 1]);
        let c4 = g(4, &[[0, 1], [1, 2], [2, 3], [3, 0]]);
        assert_eq!(coeffs(&eulerian_genfunc(&c4, cap).unwrap()), vec![1, 0, 0, 0, 1]);
        let bowtie = g(5, &[[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [2, 4]]);
        assert_eq!(coeffs(&eulerian_genfunc(&bowtie, cap).unwrap()), vec![1, 0, 0, 2, 0, 0, 1]);
        let tree = g(4, &[[0, 1], [1, 2], [1, 3]]);
        assert_eq!(coeffs(&eulerian_genfunc(&tree, cap).unwrap()), vec![1, 0, 0, 0]);
    }

    #[test]
    fn signed_examples() {
        let cap = EnumerationCap::default();
        let tree = g(3, &[[0, 1], [1, 2]]);
        let c = lift_to_circuit(&tree, &LiftChoice::lowest_endpoint(&tree)).unwrap();
        assert_eq!(coeffs(&signed_genfunc(&c, cap).unwrap()), vec![1, 0, 0]);

        let c = lift_to_circuit(&k3(), &LiftChoice::lowest_endpoint(&k3())).unwrap();
        assert_eq!(signed_genfunc(&c, cap).unwrap(), eulerian_genfunc(&k3(), cap).unwrap());

        // a Z on vertex 0 in the second gate meets the first gate's X there,
        // making h on the full triangle odd
        let mut choice = LiftChoice::lowest_endpoint(&k3());
        choice.columns[1] = ColumnLift { y: vec![1], z: vec![0] };
        let c = lift_to_circuit(&k3(), &choice).unwrap();
        let p = signed_genfunc(&c, cap).unwrap();
        assert_eq!(coeffs(&p), vec![1, 0, 0, -1]);
        assert_eq!(p.to_string(), "1 - x^3");
    }

    #[test]
    fn signed_rejects_invalid_circuit() {
        let c = CircuitMatrix::from_words(2, &["XX".parse().unwrap()]).unwrap();
        assert!(matches!(signed_genfunc(&c, EnumerationCap::default()), Err(EnumError::InvalidCircuit(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let edges: Vec<[usize; 2]> = (0..6).flat_map(|i| (i + 1..6).map(move |j| [i, j])).collect();
        let k6 = g(6, &edges);
        assert!(matches!(eulerian_genfunc(&k6, EnumerationCap(5)), Err(EnumError::Gf2(Gf2Error::CapExceeded { .. }))));
        assert!(eulerian_genfunc(&k6, EnumerationCap(10)).is_ok());
    }

    #[test]
    fn multivariate_examples() {
        let cap = EnumerationCap::default();
        let v = multivariate_genfunc(&k3(), &[0.2, 0.3, 0.5], cap).unwrap();
        assert!((v - (1.0 + 0.03)).abs() < 1e-15);
        let tree = g(4, &[[0, 1], [1, 2], [1, 3]]);
        assert_eq!(multivariate_genfunc(&tree, &[0.7, 0.1, 0.4], cap).unwrap(), 1.0);
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let exact = multivariate_genfunc(&k3(), &[q(1, 2), q(-2, 3), q(3, 5)], cap).unwrap();
        assert_eq!(exact, q(4, 5));
        assert!(multivariate_genfunc(&k3(), &[1.0], cap).is_err());
    }

    #[test]
    fn exact_evaluation() {
        let p = eulerian_genfunc(&k3(), EnumerationCap::default()).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.evaluate(&half), BigRational::new(9.into(), 8.into()));
        assert_eq!(p.evaluate(&0.0f32), 1.0);
    }

    #[test]
    fn display_and_serialize() {
        let p = SignedPolynomial::from_i128(&[0, -1, 2, 0, 1]);
        assert_eq!(p.to_string(), "-x + 2*x^2 + x^4");
        assert_eq!(SignedPolynomial::from_i128(&[0, 0]).to_string(), "0");
        assert_eq!(SignedPolynomial::from_i128(&[-3]).to_string(), "-3");
        assert_eq!(p.degree(), Some(4));
        let big = SignedPolynomial::new(vec![BigInt::from(1) << 70]);
        let mut s = Vec::new();
        big.serialize(&mut serde_json::Serializer::new(&mut s)).unwrap();
        assert_eq!(String::from_utf8(s).unwrap(), "[\"1180591620717411303424\"]");
    }

    fn arb_graph() -> impl Strategy<Value = Hypergraph> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=14).prop_map(move |es| {
                let mut h = Hypergraph::new(n);
                for (a, b) in es {
                    if a == b {
                        h.add_edge(&[a]).unwrap();
                    } else {
                        h.add_edge(&[a, b]).unwrap();
                    }
                }
                h
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(gr in arb_graph(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = incidence_matrix(&gr);
            let m = gr.edge_count();
            let mut b = BitMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    b.set(i, j, rng.random_bool(0.3));
                }
            }
            let inst = QwgtInstance { a: a.clone(), b: b.clone(), x: 1.0, y: 1.0 };
            let t = qwgt_table(&inst, EnumerationCap::default()).unwrap();
            prop_assert_eq!(t, SignedPolynomial::from_i128(&brute_counts(&a, &b)));
            let e = eulerian_genfunc(&gr, EnumerationCap::default()).unwrap();
            prop_assert!(e.is_nonnegative());
            prop_assert_eq!(e, SignedPolynomial::from_i128(&brute_counts(&a, &BitMatrix::zeros(m, m))));
        }

        #[test]
        fn signed_bounded_by_unsigned(gr in arb_graph(), seed in any::<u64>(), lam in -1.5f64..1.5) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let choice = LiftChoice {
                columns: gr.edges().iter().map(|e| {
                    let y = vec![e[rng.random_range(0..e.len())]];
                    let z = (0..gr.vertex_count()).filter(|v| !e.contains(v) && rng.random_bool(0.4)).collect();
                    ColumnLift { y, z }
                }).collect(),
            };
            let c = lift_to_circuit(&gr, &choice).unwrap();
            let cap = EnumerationCap::default();
            let sp = signed_genfunc(&c, cap).unwrap();
            let e = eulerian_genfunc(&gr, cap).unwrap();
            prop_assert!(sp.evaluate(&lam).abs() <= e.evaluate(&lam.abs()) + 1e-9);
            prop_assert_eq!(sp.evaluate(&0.0), 1.0);
            prop_assert!(sp.abs_sum() <= e.abs_sum());
            let w: Vec<f64> = vec![lam; gr.edge_count()];
            let mv = multivariate_genfunc(&gr, &w, cap).unwrap();
            prop_assert!((mv - e.evaluate(&lam)).abs() <= 1e-9 * e.evaluate(&lam.abs()).max(1.0));
        }
    }
}
