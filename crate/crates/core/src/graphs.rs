//! Hypergraphs, their incidence matrices, and the two-way mapping with
//! H-matrix circuits.
//!
//! The flip bits of a circuit (second bit of each qubit pair, i.e. the
//! nonzero rows of `C·H`) form an incidence matrix: qubit `i` is incident to
//! gate `k` when the gate puts an X or a Y on it. Going the other way, a
//! graph is lifted to a circuit by choosing which incident vertex carries
//! the Y (the others get X) and optionally sprinkling Z on non-incident
//! qubits. Loops are single-vertex edges with a single 1 in their column.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{flip_incidence, CircuitError, CircuitMatrix};
use crate::gf2::{
    kernel_basis, solve_affine, walk_kernel, BitMatrix, BitVector, EnumerationCap, Gf2Error, KernelBasis,
    QuadraticForm,
};
use crate::pauli::{Pauli, PauliWord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("invalid lift choice for edge {edge}: {msg}")]
    InvalidChoice { edge: usize, msg: String },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("search budget of {budget} candidates exhausted without a hit")]
    BudgetExhausted { budget: u64 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A hypergraph with ordered edges. Vertex indices are 0-based in memory and
/// 1-based in the text format. Each edge is stored sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn from_edges<E: AsRef<[usize]>>(vertex_count: usize, edges: &[E]) -> Result<Self, GraphError> {
        let mut g = Self::new(vertex_count);
        for e in edges {
            g.add_edge(e.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, vertices: &[usize]) -> Result<usize, GraphError> {
        let idx = self.edges.len();
        if vertices.is_empty() {
            return Err(GraphError::EmptyEdge(idx));
        }
        let mut e = vertices.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::RepeatedVertex(idx));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= self.vertex_count) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        self.edges.push(e);
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &[usize] {
        &self.edges[k]
    }

    /// Every edge has exactly two endpoints.
    pub fn is_simple_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() <= 2)
    }

    /// Dimension of the GF(2) kernel of the incidence matrix.
    pub fn cycle_space_dim(&self) -> usize {
        kernel_basis(&incidence_matrix(self)).free_count()
    }

    /// Same edge sequence after dropping vertices no edge touches.
    pub fn without_isolated(&self) -> Hypergraph {
        let mut used = vec![false; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                used[v] = true;
            }
        }
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        Hypergraph {
            vertex_count: next,
            edges: self.edges.iter().map(|e| e.iter().map(|&v| map[v]).collect()).collect(),
        }
    }

    /// `v <count>` then one line of 1-based vertex indices per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.vertex_count);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form. Lines starting with `#` are skipped, and so is
    /// any line whose first token is not a number (so Ising parameter lines
    /// can trail the edge list).
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `v <count>` header".into(),
        })?;
        let count = header
            .strip_prefix('v')
            .and_then(|r| r.trim().parse::<usize>().ok())
            .ok_or(GraphError::Parse {
                line: hl,
                msg: "header must be `v <count>`".into(),
            })?;
        let mut g = Hypergraph::new(count);
        for (ln, line) in lines {
            let first = line.split_whitespace().next().unwrap_or("");
            if first.parse::<usize>().is_err() {
                continue;
            }
            let vs = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GraphError::Parse {
                    line: ln,
                    msg: e.to_string(),
                })?;
            if vs.contains(&0) {
                return Err(GraphError::Parse {
                    line: ln,
                    msg: "vertex indices are 1-based".into(),
                });
            }
            let zero_based: Vec<usize> = vs.iter().map(|v| v - 1).collect();
            g.add_edge(&zero_based).map_err(|e| GraphError::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(v={}, {:?})", self.vertex_count, self.edges)
    }
}

/// `|V| × |E|`, one 1 per incident vertex.
pub fn incidence_matrix(g: &Hypergraph) -> BitMatrix {
    let mut a = BitMatrix::zeros(g.vertex_count(), g.edge_count());
    for (k, e) in g.edges().iter().enumerate() {
        for &v in e {
            a.set(v, k, true);
        }
    }
    a
}

/// Reads the graph off the flip bits of `H`, dropping qubits no gate flips.
pub fn graph_from_circuit(c: &CircuitMatrix) -> Hypergraph {
    let inc = flip_incidence(c);
    let edges: Vec<Vec<usize>> = (0..c.gates()).map(|k| inc.column(k).iter_ones().collect()).collect();
    let mut g = Hypergraph::new(c.qubits());
    for e in &edges {
        if !e.is_empty() {
            g.add_edge(e).expect("distinct in-range vertices");
        } else {
            // a gate without flips; keep the column count stable as an empty
            // edge is not representable, so this only happens for invalid H
            g.edges.push(Vec::new());
        }
    }
    g.without_isolated()
}

/// Lift decision for one edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ColumnLift {
    /// Incident vertices that receive Y (odd count); the rest get X.
    pub y: Vec<usize>,
    /// Non-incident vertices that receive Z.
    pub z: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LiftChoice {
    pub columns: Vec<ColumnLift>,
}

impl LiftChoice {
    /// Y on the lowest-indexed vertex of every edge, no Z.
    pub fn lowest_endpoint(g: &Hypergraph) -> Self {
        Self {
            columns: g
                .edges()
                .iter()
                .map(|e| ColumnLift {
                    y: vec![e[0]],
                    z: Vec::new(),
                })
                .collect(),
        }
    }
}

pub fn lift_to_circuit(g: &Hypergraph, choice: &LiftChoice) -> Result<CircuitMatrix, GraphError> {
    if choice.columns.len() != g.edge_count() {
        return Err(GraphError::LengthMismatch {
            expected: g.edge_count(),
            found: choice.columns.len(),
        });
    }
    let n = g.vertex_count();
    let mut words = Vec::with_capacity(g.edge_count());
    for (k, (e, col)) in g.edges().iter().zip(&choice.columns).enumerate() {
        let bad = |msg: String| GraphError::InvalidChoice { edge: k, msg };
        if col.y.len() % 2 == 0 {
            return Err(bad(format!("{} Y positions, need an odd number", col.y.len())));
        }
        let mut w = PauliWord::identity(n);
        for &v in e {
            w.set(v, Pauli::X);
        }
        for &v in &col.y {
            if !e.contains(&v) {
                return Err(bad(format!("Y on vertex {v}, which the edge does not touch")));
            }
            if w.get(v) == Pauli::Y {
                return Err(bad(format!("Y on vertex {v} twice")));
            }
            w.set(v, Pauli::Y);
        }
        for &v in &col.z {
            if v >= n {
                return Err(bad(format!("Z on vertex {v} out of range")));
            }
            if e.contains(&v) {
                return Err(bad(format!("Z on incident vertex {v}")));
            }
            w.set(v, Pauli::Z);
        }
        words.push(w);
    }
    Ok(CircuitMatrix::from_words(n, &words)?)
}

/// `HᵀCH` split into its strictly lower triangle `L` (which defines
/// `h_a = aᵀ L a`) and its diagonal (the Y-count parities).
#[derive(Clone, Debug)]
pub struct PhaseForm {
    pub lower: BitMatrix,
    pub diag: BitVector,
}

impl PhaseForm {
    pub fn of(c: &CircuitMatrix) -> Self {
        let full = ht_c_h(c);
        Self {
            lower: full.strictly_lower(),
            diag: full.diagonal(),
        }
    }

    pub fn quadratic_form(&self) -> QuadraticForm {
        QuadraticForm::new(self.lower.clone())
    }
}

/// `(HᵀCH)_{jk} = b_jᵀ C b_k`: phase bits of gate j against flip bits of gate k.
pub fn ht_c_h(c: &CircuitMatrix) -> BitMatrix {
    let n = c.gates();
    let q = c.qubits();
    let h = c.h();
    let mut phase = BitMatrix::zeros(q, n);
    for i in 0..q {
        phase.set_row(i, &h.row(2 * i));
    }
    phase.transpose().mul(&flip_incidence(c)).expect("conformable")
}

/// `h_a = aᵀ L a mod 2`.
pub fn quad_phase(pf: &PhaseForm, a: &BitVector) -> Result<bool, GraphError> {
    if a.len() != pf.lower.cols() {
        return Err(GraphError::LengthMismatch {
            expected: pf.lower.cols(),
            found: a.len(),
        });
    }
    let mut acc = false;
    for j in a.iter_ones() {
        acc ^= pf.lower.row(j).dot(a);
    }
    Ok(acc)
}

pub fn ch_kernel(c: &CircuitMatrix) -> KernelBasis {
    kernel_basis(&flip_incidence(c))
}

/// Polynomial-time test that `h_a = 0` on all of `ker(CH)`: zero on every
/// kernel basis vector, and zero polar form on every basis pair.
pub fn euler_condition_poly(c: &CircuitMatrix) -> bool {
    let kb = ch_kernel(c);
    PhaseForm::of(c).quadratic_form().walker(&kb).vanishes_on_span(&kb)
}

/// The same condition by scanning every kernel element.
pub fn euler_condition_exhaustive(c: &CircuitMatrix, cap: EnumerationCap) -> Result<bool, GraphError> {
    let kb = ch_kernel(c);
    let q = PhaseForm::of(c).quadratic_form();
    let mut ok = true;
    walk_kernel(&kb, cap, |a, _| ok &= !q.value(a))?;
    Ok(ok)
}

/// `Σ_{k<j} a_k x_k` for every `j`: the flips applied before gate `j`.
fn prefix_flips(incidence: &BitMatrix, a: &BitVector) -> Vec<BitVector> {
    let mut acc = BitVector::zeros(incidence.rows());
    let mut out = Vec::with_capacity(a.len());
    for j in 0..a.len() {
        out.push(acc.clone());
        if a.get(j) {
            acc.xor_assign(&incidence.column(j));
        }
    }
    out
}

/// Finds phase bits `z_j` (Y and Z positions of every gate) such that the
/// phase vanishes on the cycle space, or shows none exist.
///
/// With `P_a(j) = Σ_{k<j} a_k x_k`, the phase is `h(a) = Σ_j a_j z_j·P_a(j)`
/// and its polar form is `Σ_j z_j·(a_j P_b(j) + b_j P_a(j))`, both linear in
/// the unknowns. Each edge adds `Σ_{v∈e} z_j[v] = 1` (odd Y count).
pub fn solve_euler_lift(g: &Hypergraph) -> Option<LiftChoice> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let incidence = incidence_matrix(g);
    let kb = kernel_basis(&incidence);
    let prefixes: Vec<Vec<BitVector>> = kb.basis.iter().map(|a| prefix_flips(&incidence, a)).collect();
    let mut rows: Vec<BitVector> = Vec::new();
    let mut rhs: Vec<bool> = Vec::new();
    let var = |j: usize, v: usize| j * n + v;
    for (j, e) in g.edges().iter().enumerate() {
        let mut r = BitVector::zeros(m * n);
        for &v in e {
            r.set(var(j, v), true);
        }
        rows.push(r);
        rhs.push(true);
    }
    let push_form = |rows: &mut Vec<BitVector>, rhs: &mut Vec<bool>, coeff: &dyn Fn(usize) -> BitVector| {
        let mut r = BitVector::zeros(m * n);
        for j in 0..m {
            for v in coeff(j).iter_ones() {
                r.set(var(j, v), true);
            }
        }
        rows.push(r);
        rhs.push(false);
    };
    for (i, a) in kb.basis.iter().enumerate() {
        let pa = &prefixes[i];
        push_form(&mut rows, &mut rhs, &|j| if a.get(j) { pa[j].clone() } else { BitVector::zeros(n) });
        for (l, b) in kb.basis.iter().enumerate().skip(i + 1) {
            let pb = &prefixes[l];
            push_form(&mut rows, &mut rhs, &|j| {
                let mut c = BitVector::zeros(n);
                if a.get(j) {
                    c.xor_assign(&pb[j]);
                }
                if b.get(j) {
                    c.xor_assign(&pa[j]);
                }
                c
            });
        }
    }
    let system = BitMatrix::from_columns(m * n, &rows).expect("uniform lengths").transpose();
    let z = solve_affine(&system, &BitVector::from_bools(rhs)).expect("conformable")?;
    Some(LiftChoice {
        columns: g
            .edges()
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let (y, z): (Vec<usize>, Vec<usize>) = (0..n).filter(|&v| z.get(var(j, v))).partition(|v| e.contains(v));
                ColumnLift { y, z }
            })
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStrategy {
    Exhaustive,
    Randomized { seed: u64 },
    /// Exact: the condition is affine in the phase bits once the flip bits
    /// are fixed by the graph, so one linear solve settles the whole space.
    Solve,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        choice: LiftChoice,
        /// Candidates examined, including the hit.
        trials: u64,
    },
    /// Exhaustive search covered its space (Z masks up to the cap), or a
    /// linear solve showed no lift at all exists.
    Absent { trials: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct SearchParams {
    pub strategy: SearchStrategy,
    pub budget: u64,
    /// Largest Z-mask per column in exhaustive mode.
    pub z_cap: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            strategy: SearchStrategy::Exhaustive,
            budget: 1 << 20,
            z_cap: 2,
        }
    }
}

/// Odd-size subsets of `e`, by size then lexicographically.
fn odd_subsets(e: &[usize]) -> Vec<Vec<usize>> {
    let m = e.len();
    let mut subs: Vec<Vec<usize>> = (1u64..1 << m)
        .filter(|s| s.count_ones() % 2 == 1)
        .map(|s| (0..m).filter(|i| s >> i & 1 == 1).map(|i| e[i]).collect())
        .collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subs
}

/// Subsets of `pool` with at most `max` elements, by size then lexicographically.
fn small_subsets(pool: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l| pool.iter().position(|&p| p == l).unwrap() + 1);
            for &p in &pool[start..] {
                let mut t = s.clone();
                t.push(p);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Checks candidate lifts quickly: the kernel of `CH` is fixed by the
/// graph, only the phase bits change between candidates.
struct EulerProbe {
    kb: KernelBasis,
    incidence: BitMatrix,
    n: usize,
}

impl EulerProbe {
    fn new(g: &Hypergraph) -> Self {
        let incidence = incidence_matrix(g);
        Self {
            kb: kernel_basis(&incidence),
            incidence,
            n: g.vertex_count(),
        }
    }

    fn satisfied(&self, choice: &LiftChoice) -> bool {
        if self.kb.basis.is_empty() {
            return true;
        }
        let edges = choice.columns.len();
        let mut phase = BitMatrix::zeros(self.n, edges);
        for (k, col) in choice.columns.iter().enumerate() {
            for &v in col.y.iter().chain(&col.z) {
                phase.set(v, k, true);
            }
        }
        let full = phase.transpose().mul(&self.incidence).expect("conformable");
        QuadraticForm::new(full.strictly_lower()).walker(&self.kb).vanishes_on_span(&self.kb)
    }
}

/// Per-column option lists for exhaustive stage `s` (Z-masks of size ≤ s).
fn column_options(g: &Hypergraph, s: usize) -> Vec<Vec<ColumnLift>> {
    g.edges()
        .iter()
        .map(|e| {
            let others: Vec<usize> = (0..g.vertex_count()).filter(|v| !e.contains(v)).collect();
            let zs = small_subsets(&others, s);
            odd_subsets(e)
                .into_iter()
                .flat_map(|y| zs.iter().map(move |z| ColumnLift { y: y.clone(), z: z.clone() }))
                .collect()
        })
        .collect()
}

/// Decodes a mixed-radix index, column 0 most significant.
fn choice_at(options: &[Vec<ColumnLift>], mut idx: u128) -> LiftChoice {
    let mut cols = vec![None; options.len()];
    for (k, opts) in options.iter().enumerate().rev() {
        let r = opts.len() as u128;
        cols[k] = Some(opts[(idx % r) as usize].clone());
        idx /= r;
    }
    LiftChoice {
        columns: cols.into_iter().map(Option::unwrap).collect(),
    }
}

fn random_choice<R: Rng>(g: &Hypergraph, rng: &mut R) -> LiftChoice {
    LiftChoice {
        columns: g
            .edges()
            .iter()
            .map(|e| {
                let ys = odd_subsets(e);
                let y = ys[rng.random_range(0..ys.len())].clone();
                let z = (0..g.vertex_count()).filter(|v| !e.contains(v) && rng.random_bool(0.5)).collect();
                ColumnLift { y, z }
            })
            .collect(),
    }
}

/// Searches lift choices for one that satisfies the Euler condition.
///
/// Exhaustive mode walks stages of growing Z-mask size (0 up to `z_cap`),
/// each stage in lexicographic order over (column, Y placement, Z mask) and
/// skipping candidates already seen in an earlier stage. Randomized mode
/// draws `budget` independent choices; draw `t` uses its own generator
/// seeded from `(seed, t)`, and the lowest hitting `t` wins.
pub fn find_euler_circuit(g: &Hypergraph, params: &SearchParams) -> Result<SearchOutcome, GraphError> {
    let probe = EulerProbe::new(g);
    match params.strategy {
        SearchStrategy::Solve => Ok(match solve_euler_lift(g) {
            Some(choice) => SearchOutcome::Found { choice, trials: 1 },
            None => SearchOutcome::Absent { trials: 1 },
        }),
        SearchStrategy::Randomized { seed } => {
            let hit = (0..params.budget).into_par_iter().find_first(|&t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                probe.satisfied(&random_choice(g, &mut rng))
            });
            match hit {
                Some(t) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    Ok(SearchOutcome::Found {
                        choice: random_choice(g, &mut rng),
                        trials: t + 1,
                    })
                }
                None => Err(GraphError::BudgetExhausted { budget: params.budget }),
            }
        }
        SearchStrategy::Exhaustive => {
            let mut trials: u64 = 0;
            let max_stage = params.z_cap.min(g.vertex_count());
            for stage in 0..=max_stage {
                let options = column_options(g, stage);
                let total = options
                    .iter()
                    .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128))
                    .unwrap_or(u128::MAX);
                let fresh = |c: &LiftChoice| stage == 0 || c.columns.iter().any(|col| col.z.len() == stage);
                let remaining = params.budget.saturating_sub(trials) as u128;
                let span = total.min(remaining);
                let hit = (0..span as u64).into_par_iter().find_first(|&i| {
                    let c = choice_at(&options, i as u128);
                    fresh(&c) && probe.satisfied(&c)
                });
                if let Some(i) = hit {
                    let choice = choice_at(&options, i as u128);
                    let trials = trials
                        + (0..=i).filter(|&j| fresh(&choice_at(&options, j as u128))).count() as u64;
                    return Ok(SearchOutcome::Found { choice, trials });
                }
                let examined = (0..span as u64).filter(|&j| fresh(&choice_at(&options, j as u128))).count() as u64;
                trials += examined;
                if total > span {
                    return Err(GraphError::BudgetExhausted { budget: params.budget });
                }
            }
            Ok(SearchOutcome::Absent { trials })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{validate, ch_matrix};
    use proptest::prelude::*;

    fn k3() -> Hypergraph {
        Hypergraph::from_edges(3, &[[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn cycle(n: usize) -> Hypergraph {
        let edges: Vec<[usize; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
        Hypergraph::from_edges(n, &edges).unwrap()
    }

    fn six_gate_h() -> CircuitMatrix {
        CircuitMatrix::new(
            BitMatrix::from_rows(&[
                [1, 0, 0, 0, 0, 0],
                [1, 0, 0, 1, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 1, 0, 0, 1, 0],
                [0, 0, 1, 1, 1, 1],
                [0, 0, 1, 0, 1, 1],
                [0, 0, 0, 1, 0, 0],
                [1, 1, 1, 1, 0, 0],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence_matrix(&k3()).to_rows(), vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]);
        let multigraph = Hypergraph::from_edges(4, &[vec![0, 3], vec![1, 3], vec![2, 3], vec![0, 3], vec![1, 2], vec![2]]).unwrap();
        assert_eq!(
            incidence_matrix(&multigraph).to_rows(),
            vec![
                vec![1, 0, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 1, 0],
                vec![0, 0, 1, 0, 1, 1],
                vec![1, 1, 1, 1, 0, 0],
            ]
        );
        let lp = Hypergraph::from_edges(1, &[[0]]).unwrap();
        assert_eq!(incidence_matrix(&lp).to_rows(), vec![vec![1]]);
    }

    #[test]
    fn edge_validation() {
        let mut g = Hypergraph::new(3);
        assert!(matches!(g.add_edge(&[]), Err(GraphError::EmptyEdge(0))));
        assert!(matches!(g.add_edge(&[1, 1]), Err(GraphError::RepeatedVertex(0))));
        assert!(matches!(g.add_edge(&[0, 3]), Err(GraphError::VertexOutOfRange { vertex: 3, .. })));
    }

    #[test]
    fn graph_of_six_gate_h() {
        let g = graph_from_circuit(&six_gate_h());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[vec![0, 3], vec![1, 3], vec![2, 3], vec![0, 3], vec![1, 2], vec![2]]);
    }

    #[test]
    fn graph_of_three_gate_h() {
        let c = CircuitMatrix::new(
            BitMatrix::from_rows(&[[1, 1, 1], [0, 0, 1], [0, 1, 1], [1, 0, 0], [1, 1, 1], [1, 1, 0]]).unwrap(),
        )
        .unwrap();
        let g = graph_from_circuit(&c);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[vec![1, 2], vec![2], vec![0]]);
        assert_eq!(incidence_matrix(&g).to_rows(), vec![vec![0, 0, 1], vec![1, 0, 0], vec![1, 1, 0]]);
    }

    #[test]
    fn single_y_gates_are_loops() {
        let c = CircuitMatrix::from_words(3, &["YII".parse().unwrap(), "ZZY".parse().unwrap()]).unwrap();
        let g = graph_from_circuit(&c);
        assert!(g.edges().iter().all(|e| e.len() == 1));
    }

    #[test]
    fn lifts() {
        let c = lift_to_circuit(&k3(), &LiftChoice::lowest_endpoint(&k3())).unwrap();
        assert!(validate(&c, true).is_ok());
        assert_eq!(graph_from_circuit(&c), k3());

        let e = Hypergraph::from_edges(2, &[[0, 1]]).unwrap();
        let c = lift_to_circuit(&e, &LiftChoice::lowest_endpoint(&e)).unwrap();
        assert_eq!(c.word(0).to_string(), "YX");

        let lp = Hypergraph::from_edges(2, &[[0]]).unwrap();
        let c = lift_to_circuit(&lp, &LiftChoice::lowest_endpoint(&lp)).unwrap();
        assert_eq!(c.word(0).to_string(), "YI");
        assert_eq!(odd_subsets(&[0]), vec![vec![0]]);

        let bad_y = LiftChoice { columns: vec![ColumnLift { y: vec![1], z: vec![] }] };
        assert!(matches!(lift_to_circuit(&lp, &bad_y), Err(GraphError::InvalidChoice { .. })));
        let bad_z = LiftChoice { columns: vec![ColumnLift { y: vec![0], z: vec![0] }] };
        assert!(matches!(lift_to_circuit(&lp, &bad_z), Err(GraphError::InvalidChoice { .. })));

        let hyper = Hypergraph::from_edges(4, &[[0, 1, 2]]).unwrap();
        let even = LiftChoice { columns: vec![ColumnLift { y: vec![0, 1], z: vec![] }] };
        assert!(lift_to_circuit(&hyper, &even).is_err());
        let odd = LiftChoice { columns: vec![ColumnLift { y: vec![0, 1, 2], z: vec![3] }] };
        let c = lift_to_circuit(&hyper, &odd).unwrap();
        assert_eq!(c.word(0).to_string(), "YYYZ");
        assert!(validate(&c, false).is_valid());
        assert_eq!(graph_from_circuit(&c), Hypergraph::from_edges(3, &[[0, 1, 2]]).unwrap());
    }

    #[test]
    fn ch_matches_incidence_after_lift() {
        let g = cycle(5);
        let c = lift_to_circuit(&g, &LiftChoice::lowest_endpoint(&g)).unwrap();
        let ch = ch_matrix(&c);
        let nonzero = BitMatrix::from_rows(&(0..ch.rows()).step_by(2).map(|r| ch.row(r).to_bits()).collect::<Vec<_>>()).unwrap();
        assert_eq!(nonzero, incidence_matrix(&g));
    }

    #[test]
    fn quad_phase_small_cases() {
        let c = lift_to_circuit(&k3(), &LiftChoice::lowest_endpoint(&k3())).unwrap();
        let pf = PhaseForm::of(&c);
        assert!(pf.diag.iter().all(|b| b));
        assert!(!quad_phase(&pf, &BitVector::zeros(3)).unwrap());
        for k in 0..3 {
            let mut a = BitVector::zeros(3);
            a.set(k, true);
            assert!(!quad_phase(&pf, &a).unwrap());
        }
        for j in 0..3 {
            for k in 0..j {
                let mut a = BitVector::zeros(3);
                a.set(j, true);
                a.set(k, true);
                let (s, _) = crate::pauli::tilde_product_sign(&c.word(j), &c.word(k)).unwrap();
                assert_eq!(quad_phase(&pf, &a).unwrap(), s.is_minus());
            }
        }
        assert!(quad_phase(&pf, &BitVector::zeros(2)).is_err());
    }

    #[test]
    fn euler_condition_small_cases() {
        let tree = Hypergraph::from_edges(4, &[[0, 1], [1, 2], [1, 3]]).unwrap();
        let c = lift_to_circuit(&tree, &LiftChoice::lowest_endpoint(&tree)).unwrap();
        assert!(euler_condition_poly(&c));

        let c = lift_to_circuit(&k3(), &LiftChoice::lowest_endpoint(&k3())).unwrap();
        assert!(euler_condition_poly(&c));
        assert!(euler_condition_exhaustive(&c, EnumerationCap::default()).unwrap());

        // Y on vertex 1 for edge {0,1}: gate 0 phase bit hits nothing later
        let flipped = LiftChoice {
            columns: vec![
                ColumnLift { y: vec![1], z: vec![] },
                ColumnLift { y: vec![1], z: vec![] },
                ColumnLift { y: vec![0], z: vec![] },
            ],
        };
        let c = lift_to_circuit(&k3(), &flipped).unwrap();
        assert_eq!(euler_condition_poly(&c), euler_condition_exhaustive(&c, EnumerationCap::default()).unwrap());
    }

    #[test]
    fn search_examples() {
        let c4 = cycle(4);
        match find_euler_circuit(&c4, &SearchParams::default()).unwrap() {
            SearchOutcome::Found { choice, .. } => {
                assert!(euler_condition_poly(&lift_to_circuit(&c4, &choice).unwrap()));
            }
            other => panic!("{other:?}"),
        }
        let tree = Hypergraph::from_edges(3, &[[0, 1], [1, 2]]).unwrap();
        let out = find_euler_circuit(&tree, &SearchParams::default()).unwrap();
        assert_eq!(
            out,
            SearchOutcome::Found {
                choice: LiftChoice::lowest_endpoint(&tree),
                trials: 1
            }
        );
    }

    #[test]
    fn solve_strategy() {
        let c4 = cycle(4);
        let choice = solve_euler_lift(&c4).expect("C4 admits a lift");
        assert!(euler_condition_poly(&lift_to_circuit(&c4, &choice).unwrap()));
        let tree = Hypergraph::from_edges(3, &[[0, 1], [1, 2]]).unwrap();
        assert!(solve_euler_lift(&tree).is_some());
        let empty = Hypergraph::new(2);
        assert_eq!(solve_euler_lift(&empty), Some(LiftChoice { columns: vec![] }));
    }

    #[test]
    fn randomized_search_is_reproducible() {
        let g = cycle(6);
        let p = SearchParams {
            strategy: SearchStrategy::Randomized { seed: 5 },
            budget: 500,
            z_cap: 0,
        };
        let a = find_euler_circuit(&g, &p).unwrap();
        assert_eq!(a, find_euler_circuit(&g, &p).unwrap());
        if let SearchOutcome::Found { choice, .. } = a {
            assert!(euler_condition_poly(&lift_to_circuit(&g, &choice).unwrap()));
        }
    }

    #[test]
    fn exhausted_budget_is_an_error() {
        // a triangle with one Y-orientation pinned to fail needs more than one try
        let g = k3();
        let p = SearchParams {
            strategy: SearchStrategy::Randomized { seed: 1 },
            budget: 0,
            z_cap: 0,
        };
        assert!(matches!(find_euler_circuit(&g, &p), Err(GraphError::BudgetExhausted { .. })));
    }

    #[test]
    fn text_format() {
        let g = Hypergraph::from_edges(4, &[vec![0, 3], vec![2], vec![0, 1, 2]]).unwrap();
        let t = g.to_text();
        assert_eq!(t, "v 4\n1 4\n3\n1 2 3\n");
        assert_eq!(Hypergraph::parse(&t).unwrap(), g);
        assert!(Hypergraph::parse("v 2\n1 3\n").is_err());
        assert!(Hypergraph::parse("v 2\n0 1\n").is_err());
        assert!(Hypergraph::parse("x 2\n").is_err());
        let with_params = "v 2\n1 2\nJ 1.0\nbeta 0.5\nw 1\n";
        assert_eq!(Hypergraph::parse(with_params).unwrap().edge_count(), 1);
    }

    fn arb_multigraph() -> impl Strategy<Value = Hypergraph> {
        (2usize..=8).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=14).prop_map(move |es| {
                let mut g = Hypergraph::new(n);
                for (a, b) in es {
                    if a == b {
                        g.add_edge(&[a]).unwrap();
                    } else {
                        g.add_edge(&[a, b]).unwrap();
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn lift_round_trips(g in arb_multigraph(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let choice = random_choice(&g, &mut rng);
            let c = lift_to_circuit(&g, &choice).unwrap();
            prop_assert!(validate(&c, true).is_ok());
            prop_assert_eq!(graph_from_circuit(&c), g.without_isolated());
        }

        #[test]
        fn kernel_membership_is_even_degree(g in arb_multigraph(), mask in any::<u16>()) {
            let m = g.edge_count();
            let a = BitVector::from_bools((0..m).map(|k| mask >> k & 1 == 1));
            let in_kernel = incidence_matrix(&g).mul_vec(&a).unwrap().is_zero();
            let mut deg = vec![0usize; g.vertex_count()];
            for k in a.iter_ones() {
                for &v in g.edge(k) {
                    deg[v] += 1;
                }
            }
            prop_assert_eq!(in_kernel, deg.iter().all(|d| d % 2 == 0));
        }

        #[test]
        fn poly_check_matches_scan(g in arb_multigraph(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = lift_to_circuit(&g, &random_choice(&g, &mut rng)).unwrap();
            prop_assert_eq!(euler_condition_poly(&c), euler_condition_exhaustive(&c, EnumerationCap::default()).unwrap());
        }

        #[test]
        fn incremental_phase_matches_scratch(g in arb_multigraph(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = lift_to_circuit(&g, &random_choice(&g, &mut rng)).unwrap();
            let pf = PhaseForm::of(&c);
            let kb = ch_kernel(&c);
            let walker = pf.quadratic_form().walker(&kb);
            let mut h = false;
            walk_kernel(&kb, EnumerationCap::default(), |a, s| {
                h = walker.advance(h, a, s);
                assert_eq!(h, quad_phase(&pf, a).unwrap());
            }).unwrap();
        }

        #[test]
        fn solve_agrees_with_full_search(n in 2usize..=4, es in proptest::collection::vec((0usize..4, 0usize..4), 0..=4)) {
            let mut g = Hypergraph::new(n);
            for (a, b) in es {
                let (a, b) = (a % n, b % n);
                if a == b { g.add_edge(&[a]).unwrap(); } else { g.add_edge(&[a, b]).unwrap(); }
            }
            let solved = solve_euler_lift(&g);
            if let Some(choice) = &solved {
                prop_assert!(euler_condition_poly(&lift_to_circuit(&g, choice).unwrap()));
            }
            let full = SearchParams { strategy: SearchStrategy::Exhaustive, budget: u64::MAX, z_cap: n };
            let found = matches!(find_euler_circuit(&g, &full).unwrap(), SearchOutcome::Found { .. });
            prop_assert_eq!(found, solved.is_some());
        }
    }
}
