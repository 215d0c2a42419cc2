//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (structure constants, cochain differentials,
//! invariant subspaces) reduces to ranks and kernels of sparse matrices
//! over Q, so this module is the computational substrate. All arithmetic
//! is exact; there is no floating point anywhere in the crate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rat = BigRational;

/// Sparse vector: index -> nonzero rational.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as "p" or "p/q"; inverse of [`parse_rat`] on canonical forms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn vec_add_scaled<K: Ord + Copy>(dst: &mut BTreeMap<K, Rat>, src: &BTreeMap<K, Rat>, c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (&i, v) in src {
        let entry = dst.entry(i).or_insert_with(Rat::zero);
        *entry += v * c;
        if entry.is_zero() {
            dst.remove(&i);
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatlinError {
    #[error("composition d_out * d_in is nonzero at ({row}, {col})")]
    CompositionNonzero { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Sparse rational matrix, stored column-major. No zero entries are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, Rat)]) -> Self {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, c, v) in triplets {
            assert!(*r < rows && *c < cols, "entry out of bounds");
            let cur = m.get(*r, *c) + v;
            m.set(*r, *c, cur);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for col in &columns {
            if let Some((&r, _)) = col.last_key_value() {
                assert!(r < rows, "row index out of bounds");
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.columns[c].get(&r).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn columns_iter(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.columns.iter().enumerate()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Entries in (row, col) order, for deterministic serialization.
    pub fn entries_row_major(&self) -> Vec<(usize, usize, Rat)> {
        let mut out: Vec<(usize, usize, Rat)> = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                out.push((r, c, v.clone()));
            }
        }
        out.sort_by_key(|(r, c, _)| (*r, *c));
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.cols, self.rows);
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                m.columns[r].insert(c, v.clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &Rat) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        let mut m = self.clone();
        for col in &mut m.columns {
            for v in col.values_mut() {
                *v *= c;
            }
        }
        m
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (c, col) in other.columns.iter().enumerate() {
            vec_add_scaled(&mut m.columns[c], col, &Rat::one());
        }
        m
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, coeff) in v {
            assert!(j < self.cols);
            vec_add_scaled(&mut out, &self.columns[j], coeff);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch ({}x{} * {}x{})",
            self.rows, self.cols, other.rows, other.cols
        );
        let columns = other
            .columns
            .iter()
            .map(|col| self.mul_vec(col))
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    /// True when every nonzero entry sits on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(c, col)| col.keys().all(|&r| r == c))
    }

    /// Number of nonzero entries per row, used for static Markowitz-style
    /// pivot scoring.
    fn row_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.rows];
        for col in &self.columns {
            for &r in col.keys() {
                counts[r] += 1;
            }
        }
        counts
    }

    /// Rank over Q. Deterministic: columns are processed left to right in
    /// fixed blocks with least-fill pivot rows.
    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.rows, Some(self.row_counts()));
        for col in &self.columns {
            elim.push_column(col.clone());
        }
        elim.rank()
    }

    /// Basis of the right null space. Exactly `cols - rank` vectors, each
    /// satisfying `self * v = 0` exactly.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut elim = Eliminator::new(self.rows, Some(self.row_counts()));
        for col in &self.columns {
            elim.push_column(col.clone());
        }
        elim.kernel
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} sparse, {} nnz", self.rows, self.cols, self.nnz())
    }
}

struct Pivot {
    row: usize,
    /// Column reduced against all earlier pivots; support contains no pivot
    /// row of an earlier pivot.
    col: SparseVec,
    /// Combination of original columns producing `col`.
    comb: SparseVec,
}

/// Incremental column-echelon eliminator with kernel tracking.
///
/// Columns stream in one block at a time, so peak memory is bounded by the
/// reduced pivot set rather than the full input width. Pivot rows are chosen
/// by lowest static row occupancy (Markowitz-style least fill), ties broken
/// by row index, so results are reproducible.
pub struct Eliminator {
    rows: usize,
    pivots: Vec<Pivot>,
    kernel: Vec<SparseVec>,
    next_col: usize,
    row_scores: Option<Vec<usize>>,
}

impl Eliminator {
    pub fn new(rows: usize, row_scores: Option<Vec<usize>>) -> Self {
        Eliminator {
            rows,
            pivots: Vec::new(),
            kernel: Vec::new(),
            next_col: 0,
            row_scores,
        }
    }

    pub fn push_column(&mut self, mut col: SparseVec) {
        let idx = self.next_col;
        self.next_col += 1;
        let mut comb = SparseVec::new();
        comb.insert(idx, Rat::one());
        // A single in-order pass suffices: pivot k's column contains no pivot
        // row with index < k, so later eliminations cannot reintroduce rows
        // already cleared.
        for p in &self.pivots {
            if let Some(c) = col.get(&p.row).cloned() {
                let factor = -&c / p.col.get(&p.row).unwrap();
                vec_add_scaled(&mut col, &p.col, &factor);
                vec_add_scaled(&mut comb, &p.comb, &factor);
                debug_assert!(!col.contains_key(&p.row));
            }
        }
        if col.is_empty() {
            self.kernel.push(comb);
        } else {
            let row = self.choose_pivot_row(&col);
            assert!(row < self.rows, "entry out of declared row bounds");
            self.pivots.push(Pivot { row, col, comb });
        }
    }

    fn choose_pivot_row(&self, col: &SparseVec) -> usize {
        match &self.row_scores {
            Some(scores) => {
                let mut best: Option<(usize, usize)> = None;
                for &r in col.keys() {
                    let key = (scores[r], r);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
                best.unwrap().1
            }
            None => *col.keys().next().unwrap(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_vectors(&self) -> &[SparseVec] {
        &self.kernel
    }

    /// Solves `sum_j x_j * basis_j = rhs` against the columns pushed so far.
    /// Returns coefficients indexed by push order, or None if rhs is outside
    /// the span.
    pub fn solve(&self, rhs: &SparseVec) -> Option<SparseVec> {
        let mut col = rhs.clone();
        let mut comb = SparseVec::new();
        for p in &self.pivots {
            if let Some(c) = col.get(&p.row).cloned() {
                let factor = -&c / p.col.get(&p.row).unwrap();
                vec_add_scaled(&mut col, &p.col, &factor);
                vec_add_scaled(&mut comb, &p.comb, &factor);
            }
        }
        if col.is_empty() {
            // rhs = -comb over original columns
            let mut out = SparseVec::new();
            for (i, v) in comb {
                out.insert(i, -v);
            }
            Some(out)
        } else {
            None
        }
    }
}

/// Solver over the span of a fixed set of columns.
pub struct SpanSolver {
    elim: Eliminator,
    ncols: usize,
}

impl SpanSolver {
    pub fn new(rows: usize, columns: &[SparseVec]) -> Self {
        let mut elim = Eliminator::new(rows, None);
        for col in columns {
            elim.push_column(col.clone());
        }
        SpanSolver {
            elim,
            ncols: columns.len(),
        }
    }

    pub fn rank(&self) -> usize {
        self.elim.rank()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.elim.solve(v).is_some()
    }

    /// Coefficients expressing `v` in the original columns (dense form).
    pub fn solve_dense(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let sparse = self.elim.solve(v)?;
        let mut out = vec![Rat::zero(); self.ncols];
        for (i, c) in sparse {
            out[i] = c;
        }
        Some(out)
    }

    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        self.elim.solve(v)
    }
}

/// dim ker(d_out) - rank(d_in), the dimension of Ker d_out / Im d_in.
///
/// `d_in` maps into the same space `d_out` maps out of; the composition must
/// be exactly zero.
pub fn subquotient_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, RatlinError> {
    if d_in.rows() != d_out.cols() {
        return Err(RatlinError::DimensionMismatch(format!(
            "d_in is {}x{} but d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in);
    if !comp.is_zero() {
        let (r, c, _) = comp.entries_row_major().into_iter().next().unwrap();
        return Err(RatlinError::CompositionNonzero { row: r, col: c });
    }
    let ker = d_out.cols() - d_out.rank();
    let im = d_in.rank();
    Ok(ker - im)
}

/// Normalizes a sparse vector so its first nonzero entry is 1; handy for
/// comparing spans in tests.
pub fn normalize_leading(v: &SparseVec) -> SparseVec {
    match v.first_key_value() {
        None => SparseVec::new(),
        Some((_, lead)) => {
            let lead = lead.clone();
            v.iter().map(|(&i, x)| (i, x / &lead)).collect()
        }
    }
}

/// Signed magnitude bound of entries; tests use it to watch coefficient blowup.
pub fn max_abs_numer(m: &SparseMatrix) -> BigInt {
    let mut best = BigInt::from(0);
    for col in &m.columns {
        for v in col.values() {
            let a = v.numer().abs();
            if a > best {
                best = a;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, rat_int(v));
                }
            }
        }
        m
    }

    #[test]
    fn rank_empty() {
        assert_eq!(SparseMatrix::zero(0, 0).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_proportional_rows() {
        let m = mat(2, 3, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(SparseMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_one_by_two() {
        let m = mat(1, 2, &[&[1, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = normalize_leading(&k[0]);
        assert_eq!(v.get(&0), v.get(&1));
        assert!(m.mul_vec(&k[0]).is_empty());
    }

    #[test]
    fn kernel_random_sparse_annihilates() {
        // deterministic pseudo-random 20x30 sparse matrix
        let mut m = SparseMatrix::zero(20, 30);
        let mut state: u64 = 12345;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for _ in 0..80 {
            let r = (next() % 20) as usize;
            let c = (next() % 30) as usize;
            let v = (next() % 7) as i64 - 3;
            if v != 0 {
                m.set(r, c, rat_int(v));
            }
        }
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 30 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).is_empty());
        }
        // kernel vectors are linearly independent
        let solver = SpanSolver::new(30, &ker);
        assert_eq!(solver.rank(), ker.len());
    }

    #[test]
    fn subquotient_zero_complex() {
        let d_in = SparseMatrix::zero(5, 3);
        let d_out = SparseMatrix::zero(4, 5);
        assert_eq!(subquotient_dim(&d_in, &d_out).unwrap(), 5);
    }

    #[test]
    fn subquotient_exact_at_middle() {
        let d_in = SparseMatrix::identity(4);
        let d_out = SparseMatrix::zero(2, 4);
        assert_eq!(subquotient_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn subquotient_three_term() {
        // d_in: rank 2 into a 5-dim space; d_out: 5 -> 3 with nullity 4,
        // composition zero. Cross-checked by dense elimination below.
        let d_in = mat(5, 2, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0], &[0, 0]]);
        let d_out = mat(3, 5, &[&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 2], &[0, 0, 0, 0, -1]]);
        assert_eq!(subquotient_dim(&d_in, &d_out).unwrap(), 2);
        assert_eq!(dense_rank(&d_in), 2);
        assert_eq!(5 - dense_rank(&d_out), 4);
    }

    #[test]
    fn subquotient_rejects_nonzero_composition() {
        let d_in = SparseMatrix::identity(2);
        let d_out = SparseMatrix::identity(2);
        assert!(matches!(
            subquotient_dim(&d_in, &d_out),
            Err(RatlinError::CompositionNonzero { .. })
        ));
    }

    /// Independent dense Gaussian elimination oracle.
    fn dense_rank(m: &SparseMatrix) -> usize {
        let mut a: Vec<Vec<Rat>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let (nr, nc) = (m.rows(), m.cols());
        let mut rank = 0;
        for c in 0..nc {
            let piv = (rank..nr).find(|&r| !a[r][c].is_zero());
            let Some(p) = piv else { continue };
            a.swap(rank, p);
            for r in 0..nr {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    let pivot_row = a[rank].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= p * &f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_dense_oracle() {
        let m = mat(
            4,
            6,
            &[
                &[1, 2, 0, 0, 3, 1],
                &[0, 0, 1, 1, 0, 2],
                &[1, 2, 1, 1, 3, 3],
                &[2, 4, 0, 0, 6, 2],
            ],
        );
        assert_eq!(m.rank(), dense_rank(&m));
    }

    #[test]
    fn parse_format_roundtrip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert!(parse_rat("1/0").is_none());
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
    }
}
