//! Exact linear algebra over the rationals.
//!
//! Everything downstream (membership tests, trace-ansatz solves, kernel
//! computations, interpolation) reduces to row echelon form over `Rational`.
//! The reducer keeps rows fully reduced (RREF) so rank, kernels and solution
//! read-off stay one-liners. No pivoting heuristics are needed: arithmetic is
//! exact, any nonzero pivot is valid.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Incremental reduced-row-echelon accumulator.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    /// Rows sorted by pivot column; each row is normalized (pivot = 1) and
    /// fully reduced against the others.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduces `row` in place against the current basis.
    pub fn reduce_in_place(&self, row: &mut [Rational]) {
        assert_eq!(row.len(), self.cols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
    }

    /// Offers a row; inserts it if independent. Returns the pivot column of
    /// the newly inserted row, or `None` if the row was dependent.
    pub fn offer(&mut self, mut row: Vec<Rational>) -> Option<usize> {
        self.reduce_in_place(&mut row);
        let pivot = row.iter().position(|x| !x.is_zero())?;
        let inv = Rational::one() / row[pivot].clone();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // Back-eliminate to keep full RREF.
        for r in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let factor = r[pivot].clone();
                for (x, y) in r.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        Some(pivot)
    }

    /// Basis of `{x : A x = 0}` where the rows offered so far are the rows
    /// of `A`. One kernel vector per non-pivot column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut free: Vec<usize> = Vec::new();
        for c in 0..self.cols {
            if !self.pivots.contains(&c) {
                free.push(c);
            }
        }
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !r[f].is_zero() {
                    v[p] = -r[f].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Expresses `target` in the span of `basis` (vectors of equal length).
/// Returns exact coordinates, or `None` if `target` is outside the span.
pub fn membership(target: &[Rational], basis: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = basis.len();
    let mut reducer = RowReducer::new(n + k);
    for (i, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), n);
        let mut row: Vec<Rational> = Vec::with_capacity(n + k);
        row.extend_from_slice(b);
        row.resize(n + k, Rational::zero());
        row[n + i] = Rational::one();
        reducer.offer(row);
    }
    let mut row: Vec<Rational> = Vec::with_capacity(n + k);
    row.extend_from_slice(target);
    row.resize(n + k, Rational::zero());
    reducer.reduce_in_place(&mut row);
    if row[..n].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(row[n..].iter().map(|x| -x.clone()).collect())
}

/// Rank of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut reducer = RowReducer::new(vectors[0].len());
    for v in vectors {
        reducer.offer(v.clone());
    }
    reducer.rank()
}

/// Exact inverse of a square matrix given as rows. `None` if singular.
pub fn invert(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut reducer = RowReducer::new(2 * n);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), n);
        let mut row: Vec<Rational> = Vec::with_capacity(2 * n);
        row.extend_from_slice(r);
        row.resize(2 * n, Rational::zero());
        row[n + i] = Rational::one();
        reducer.offer(row);
    }
    let matrix_rank = reducer.pivots().iter().filter(|&&p| p < n).count();
    if matrix_rank < n {
        return None;
    }
    // Pivots are exactly 0..n; row with pivot i holds row i of the inverse.
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for (r, &p) in reducer.rows().iter().zip(reducer.pivots()) {
        debug_assert!(p < n);
        inv[p] = r[n..].to_vec();
    }
    Some(inv)
}

/// A linear system `M x = rhs` factored once and solved for many right-hand
/// sides. Solutions put free variables to zero; inconsistent systems are
/// reported as `None`.
#[derive(Clone, Debug)]
pub struct PrefactoredSolver {
    cols: usize,
    /// Pivot column of each RREF row of `M`, paired with the row-operation
    /// record `B` such that `rref_row = B * original_rows`. With free
    /// variables at zero, the solution is `x[pivot] = B * rhs`.
    rows: Vec<(usize, Vec<Rational>)>,
    /// Operation records of rows that reduced to zero; these are the
    /// consistency constraints `B_z * rhs = 0`.
    zero_rows: Vec<Vec<Rational>>,
}

impl PrefactoredSolver {
    pub fn factor(matrix_rows: &[Vec<Rational>]) -> Self {
        let m = matrix_rows.len();
        let cols = if m == 0 { 0 } else { matrix_rows[0].len() };
        let mut reducer = RowReducer::new(cols + m);
        for (i, r) in matrix_rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            let mut row: Vec<Rational> = Vec::with_capacity(cols + m);
            row.extend_from_slice(r);
            row.resize(cols + m, Rational::zero());
            row[cols + i] = Rational::one();
            reducer.offer(row);
        }
        let mut rows = Vec::new();
        let mut zero_rows = Vec::new();
        for (r, &p) in reducer.rows().iter().zip(reducer.pivots()) {
            if p < cols {
                rows.push((p, r[cols..].to_vec()));
            } else {
                // Pivot landed in the record part: the M-part is zero.
                zero_rows.push(r[cols..].to_vec());
            }
        }
        PrefactoredSolver {
            cols,
            rows,
            zero_rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Every column carries a pivot, so solutions are unique.
    pub fn is_injective(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        for z in &self.zero_rows {
            let mut acc = Rational::zero();
            for (c, r) in z.iter().zip(rhs.iter()) {
                if !c.is_zero() && !r.is_zero() {
                    acc += c * r;
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (p, record) in &self.rows {
            let mut t = Rational::zero();
            for (c, r) in record.iter().zip(rhs.iter()) {
                if !c.is_zero() && !r.is_zero() {
                    t += c * r;
                }
            }
            x[*p] = t;
        }
        Some(x)
    }
}
