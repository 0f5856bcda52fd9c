//! Dense GF(2) linear algebra on bit-packed rows.
//!
//! Matrices are stored row-major with 64 columns per word. Row reduction,
//! kernel bases and Gray-code kernel walks are the building blocks for every
//! exponential sum in the crate, so the hot loops stay on packed words.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("kernel has {free} free dimensions, enumeration cap is {cap}")]
    CapExceeded { free: usize, cap: u32 },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = Self::zeros(0);
        for b in bits {
            v.push(b);
        }
        v
    }

    /// Builds a vector from 0/1 bytes; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b != 0))
    }

    /// Low `len` bits of `word`, bit `i` at position `i`.
    pub fn from_u64(word: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word & tail_mask(len);
        }
        v
    }

    fn push(&mut self, bit: bool) {
        if self.len % WORD == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// First word of the vector; only meaningful for `len <= 64`.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the inner product.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// A dense GF(2) matrix, row-major, with zeroed padding past `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from nested 0/1 rows. All rows must share one length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Builds a `len × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Gf2Error::LengthMismatch {
                    expected: len,
                    found: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let m = 1u64 << (c % WORD);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        let s = self.stride;
        self.data[r * s..(r + 1) * s].copy_from_slice(&v.words);
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        if dst == src {
            return;
        }
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= *y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `M · v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools((0..self.rows).map(|r| {
            let mut acc = 0u32;
            for (a, b) in self.row_words(r).iter().zip(&v.words) {
                acc ^= (a & b).count_ones();
            }
            acc & 1 == 1
        })))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for r in 0..self.rows {
            for k in self.row(r).iter_ones() {
                let src = other.row_words(k);
                let dst = &mut out.data[r * s..(r + 1) * s];
                for (x, y) in dst.iter_mut().zip(src) {
                    *x ^= *y;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= *b;
        }
        Ok(out)
    }

    /// Strictly lower-triangular part (entries with row > column).
    pub fn strictly_lower(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones().filter(|&c| c < r) {
                out.set(r, c, true);
            }
        }
        out
    }

    pub fn diagonal(&self) -> BitVector {
        let n = self.rows.min(self.cols);
        BitVector::from_bools((0..n).map(|i| self.get(i, i)))
    }

    /// Diagonal matrix `dg(w)`.
    pub fn diag(w: &BitVector) -> BitMatrix {
        let mut m = BitMatrix::zeros(w.len(), w.len());
        for i in w.iter_ones() {
            m.set(i, i, true);
        }
        m
    }

    /// Text form: `rows cols`, then one line of space separated 0/1 per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<&str> = (0..self.cols)
                .map(|c| if self.get(r, c) { "1" } else { "0" })
                .collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form. Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, Gf2Error> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Gf2Error::Parse {
            line: 0,
            msg: "missing `rows cols` header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| Gf2Error::Parse {
                line: hl,
                msg: format!("bad header: {e}"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Gf2Error::Parse {
                line: hl,
                msg: "header must be `rows cols`".into(),
            });
        };
        let mut m = BitMatrix::zeros(rows, cols);
        let mut r = 0;
        for (ln, line) in lines {
            if r == rows {
                return Err(Gf2Error::Parse {
                    line: ln,
                    msg: format!("more than {rows} rows"),
                });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(Gf2Error::Parse {
                    line: ln,
                    msg: format!("expected {cols} entries, found {}", toks.len()),
                });
            }
            for (c, t) in toks.iter().enumerate() {
                match *t {
                    "0" => {}
                    "1" => m.set(r, c, true),
                    other => {
                        return Err(Gf2Error::Parse {
                            line: ln,
                            msg: format!("entry `{other}` is not 0 or 1"),
                        })
                    }
                }
            }
            r += 1;
        }
        if r != rows {
            return Err(Gf2Error::Parse {
                line: 0,
                msg: format!("expected {rows} rows, found {r}"),
            });
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_bits()).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl FromStr for BitMatrix {
    type Err = Gf2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub rref: BitMatrix,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
pub fn rank_and_rref(m: &BitMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| a.get(r, col)) else {
            continue;
        };
        a.swap_rows(row, p);
        for r in 0..a.rows {
            if r != row && a.get(r, col) {
                a.xor_rows(r, row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        rank: pivots.len(),
        rref: a,
        pivots,
    }
}

/// One solution of `M x = rhs` (free variables set to zero), or `None` if
/// the system is inconsistent.
pub fn solve_affine(m: &BitMatrix, rhs: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
    if rhs.len() != m.rows() {
        return Err(Gf2Error::LengthMismatch {
            expected: m.rows(),
            found: rhs.len(),
        });
    }
    let n = m.cols();
    let mut aug = BitMatrix::zeros(m.rows(), n + 1);
    for r in 0..m.rows() {
        for c in m.row(r).iter_ones() {
            aug.set(r, c, true);
        }
        aug.set(r, n, rhs.get(r));
    }
    let red = rank_and_rref(&aug);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(n);
    for (r, &p) in red.pivots.iter().enumerate() {
        x.set(p, red.rref.get(r, n));
    }
    Ok(Some(x))
}

/// Basis of `{v : M v = 0}`, one vector per free column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient_dim: usize,
    pub basis: Vec<BitVector>,
}

impl KernelBasis {
    pub fn free_count(&self) -> usize {
        self.basis.len()
    }

    /// The kernel element indexed by the bits of `coeffs` (bit i selects basis vector i).
    pub fn combination(&self, coeffs: u64) -> BitVector {
        let mut v = BitVector::zeros(self.ambient_dim);
        for (i, b) in self.basis.iter().enumerate() {
            if (coeffs >> i) & 1 == 1 {
                v.xor_assign(b);
            }
        }
        v
    }
}

pub fn kernel_basis(m: &BitMatrix) -> KernelBasis {
    let Rref { rref, pivots, .. } = rank_and_rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rref.get(r, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    KernelBasis {
        ambient_dim: m.cols,
        basis,
    }
}

pub const DEFAULT_ENUMERATION_CAP: u32 = 30;
/// Gray-code indices are `u64`, so no override can go past this.
pub const HARD_ENUMERATION_LIMIT: u32 = 62;

/// Largest kernel dimension an exponential walk is allowed to visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap(pub u32);

impl Default for EnumerationCap {
    fn default() -> Self {
        Self(DEFAULT_ENUMERATION_CAP)
    }
}

impl EnumerationCap {
    pub fn check(self, free: usize) -> Result<(), Gf2Error> {
        let cap = self.0.min(HARD_ENUMERATION_LIMIT);
        if free > cap as usize {
            Err(Gf2Error::CapExceeded { free, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Walks the kernel in Gray-code order. The callback sees the current vector
/// and, after the first (zero) visit, the index of the basis vector that was
/// just XORed in.
pub fn walk_kernel<F>(kb: &KernelBasis, cap: EnumerationCap, mut visit: F) -> Result<(), Gf2Error>
where
    F: FnMut(&BitVector, Option<usize>),
{
    let k = kb.free_count();
    cap.check(k)?;
    let mut v = BitVector::zeros(kb.ambient_dim);
    visit(&v, None);
    let total: u64 = 1u64 << k;
    for i in 1..total {
        let flip = i.trailing_zeros() as usize;
        v.xor_assign(&kb.basis[flip]);
        visit(&v, Some(flip));
    }
    Ok(())
}

/// Visits every kernel element exactly once, zero vector first.
pub fn enumerate_kernel<F>(kb: &KernelBasis, cap: EnumerationCap, mut visit: F) -> Result<(), Gf2Error>
where
    F: FnMut(&BitVector),
{
    walk_kernel(kb, cap, |v, _| visit(v))
}

/// Below this many free dimensions the parallel walk runs on one thread.
const PAR_MIN_FREE: usize = 14;
const PAR_CHUNK_BITS: usize = 10;

/// Parallel kernel reduction. The Gray index range is split into blocks;
/// each block starts with a `None` step (state must be rebuilt from the
/// vector) and then proceeds incrementally. `merge` must be associative and
/// commutative; visit order across blocks is unspecified.
pub fn par_walk_kernel<A, I, F, M>(
    kb: &KernelBasis,
    cap: EnumerationCap,
    init: I,
    step: F,
    merge: M,
) -> Result<A, Gf2Error>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &BitVector, Option<usize>) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let k = kb.free_count();
    cap.check(k)?;
    if k < PAR_MIN_FREE {
        let mut acc = init();
        walk_kernel(kb, cap, |v, f| step(&mut acc, v, f))?;
        return Ok(acc);
    }
    let block_bits = PAR_CHUNK_BITS.min(k);
    let blocks: u64 = 1u64 << (k - block_bits);
    let per_block: u64 = 1u64 << block_bits;
    let acc = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = init();
            let start = b * per_block;
            let mut v = kb.combination(start ^ (start >> 1));
            step(&mut acc, &v, None);
            for i in start + 1..start + per_block {
                let flip = i.trailing_zeros() as usize;
                v.xor_assign(&kb.basis[flip]);
                step(&mut acc, &v, Some(flip));
            }
            acc
        })
        .reduce(&init, &merge);
    Ok(acc)
}

/// The quadratic form `q(a) = aᵀ B a` over GF(2), with its polar (bilinear)
/// form `aᵀ (B + Bᵀ) b` used for incremental updates:
/// `q(a ⊕ b) = q(a) ⊕ q(b) ⊕ aᵀ(B + Bᵀ)b`.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    matrix: BitMatrix,
    polar: BitMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: BitMatrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "quadratic form needs a square matrix");
        let polar = matrix.add(&matrix.transpose()).expect("square");
        Self { matrix, polar }
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn polar_matrix(&self) -> &BitMatrix {
        &self.polar
    }

    pub fn value(&self, a: &BitVector) -> bool {
        let mut acc = false;
        for r in a.iter_ones() {
            let mut p = 0u32;
            for (x, y) in self.matrix.row_words(r).iter().zip(a.words()) {
                p ^= (x & y).count_ones();
            }
            acc ^= p & 1 == 1;
        }
        acc
    }

    pub fn polar(&self, a: &BitVector, b: &BitVector) -> bool {
        let pb = self.polar.mul_vec(b).expect("dimension");
        a.dot(&pb)
    }

    /// Precomputes what a Gray walk over `kb` needs to update `q` in O(words).
    pub fn walker(&self, kb: &KernelBasis) -> PhaseWalker {
        let basis_values = kb.basis.iter().map(|v| self.value(v)).collect();
        let polar_images = kb
            .basis
            .iter()
            .map(|v| self.polar.mul_vec(v).expect("dimension"))
            .collect();
        PhaseWalker {
            form: self.clone(),
            basis_values,
            polar_images,
        }
    }
}

/// Incremental evaluator of a quadratic form along a kernel walk.
#[derive(Clone, Debug)]
pub struct PhaseWalker {
    form: QuadraticForm,
    basis_values: Vec<bool>,
    polar_images: Vec<BitVector>,
}

impl PhaseWalker {
    /// Next phase after a walk step. `current` is the vector after the flip
    /// (the polar form is alternating, so before/after give the same value).
    #[inline]
    pub fn advance(&self, phase: bool, current: &BitVector, step: Option<usize>) -> bool {
        match step {
            None => self.form.value(current),
            Some(i) => phase ^ self.basis_values[i] ^ current.dot(&self.polar_images[i]),
        }
    }

    /// Whether the form vanishes on the whole span of the basis: zero on
    /// every basis vector and polar form zero on every pair.
    pub fn vanishes_on_span(&self, kb: &KernelBasis) -> bool {
        if self.basis_values.iter().any(|&b| b) {
            return false;
        }
        for i in 0..kb.basis.len() {
            for j in i + 1..kb.basis.len() {
                if kb.basis[i].dot(&self.polar_images[j]) {
                    return false;
                }
            }
        }
        true
    }
}
