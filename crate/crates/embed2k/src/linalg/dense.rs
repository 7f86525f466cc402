//! Dense exact matrices, generic over the scalar.
//!
//! The same container backs integer matrices (arbitrary precision, used for
//! Smith/Hermite reduction and lattice membership) and rational matrices
//! (used by the exact geometry solves). Field algorithms require `Num`
//! scalars; integer algorithms require `Integer + Signed`.

use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: std::fmt::Display> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }
}

impl<T: Clone + Zero + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self.at(i, j) == self.at(j, i)))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + PartialEq + std::ops::Neg<Output = T>,
{
    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.at(i, j) == -self.at(j, i).clone()))
    }
}

/// Outcome of an exact square linear solve.
pub enum LinearSolution<T> {
    Unique(Vec<T>),
    Inconsistent,
    Underdetermined,
}

impl<T: Clone + Num> Matrix<T> {
    /// Gaussian elimination rank over a field.
    pub fn field_rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv_pivot = T::one() / m.at(rank, col).clone();
            for r in 0..m.rows {
                if r != rank && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone() * inv_pivot.clone();
                    for j in col..m.cols {
                        let v = m.at(r, j).clone() - factor.clone() * m.at(rank, j).clone();
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Classify and solve the square-ish system `A x = b` over a field.
    pub fn solve_field(&self, b: &[T]) -> LinearSolution<T> {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            rhs.swap(rank, p);
            let inv_pivot = T::one() / m.at(rank, col).clone();
            for r in 0..m.rows {
                if r != rank && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone() * inv_pivot.clone();
                    for j in col..m.cols {
                        let v = m.at(r, j).clone() - factor.clone() * m.at(rank, j).clone();
                        m.set(r, j, v);
                    }
                    let v = rhs[r].clone() - factor * rhs[rank].clone();
                    rhs[r] = v;
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        for r in rank..m.rows {
            if !rhs[r].is_zero() {
                return LinearSolution::Inconsistent;
            }
        }
        if rank < m.cols {
            return LinearSolution::Underdetermined;
        }
        let mut x = vec![T::zero(); m.cols];
        for &(r, c) in &pivots {
            x[c] = rhs[r].clone() / m.at(r, c).clone();
        }
        LinearSolution::Unique(x)
    }

    /// Exact determinant over a field (square matrices).
    pub fn det_field(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = T::one();
        let mut neg = false;
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                neg = !neg;
            }
            det = det * m.at(col, col).clone();
            let inv_pivot = T::one() / m.at(col, col).clone();
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone() * inv_pivot.clone();
                    for j in col..m.cols {
                        let v = m.at(r, j).clone() - factor.clone() * m.at(col, j).clone();
                        m.set(r, j, v);
                    }
                }
            }
        }
        if neg {
            T::zero() - det
        } else {
            det
        }
    }
}

impl<T> Matrix<T>
where
    T: Integer + Signed + Clone,
{
    /// Rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank_over_q(&self) -> usize {
        let mut m = self.clone();
        let mut prev = T::one();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.at(rank, col).clone();
            for r in rank + 1..m.rows {
                for j in col + 1..m.cols {
                    let v = (pivot.clone() * m.at(r, j).clone()
                        - m.at(r, col).clone() * m.at(rank, j).clone())
                        / prev.clone();
                    m.set(r, j, v);
                }
                m.set(r, col, T::zero());
            }
            prev = pivot;
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Exact integer determinant (Bareiss).
    pub fn det_int(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut prev = T::one();
        let mut neg = false;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                neg = !neg;
            }
            let pivot = m.at(col, col).clone();
            for r in col + 1..n {
                for j in col + 1..n {
                    let v = (pivot.clone() * m.at(r, j).clone()
                        - m.at(r, col).clone() * m.at(col, j).clone())
                        / prev.clone();
                    m.set(r, j, v);
                }
                m.set(r, col, T::zero());
            }
            prev = pivot;
        }
        let d = m.at(n - 1, n - 1).clone();
        if neg {
            -d
        } else {
            d
        }
    }

    /// Column-style Hermite reduction: returns `(h, u)` with `A U = H`,
    /// `U` unimodular and `H` in column echelon form with positive pivots.
    pub fn hermite_columns(&self) -> (Matrix<T>, Matrix<T>) {
        let mut h = self.clone();
        let mut u = Matrix::<T>::identity(self.cols);
        let mut pivot_col = 0;
        for row in 0..self.rows {
            if pivot_col == self.cols {
                break;
            }
            // Reduce entries in this row (columns >= pivot_col) by gcd steps.
            loop {
                let mut best: Option<usize> = None;
                for j in pivot_col..self.cols {
                    if !h.at(row, j).is_zero() {
                        let better = match best {
                            None => true,
                            Some(b) => h.at(row, j).abs() < h.at(row, b).abs(),
                        };
                        if better {
                            best = Some(j);
                        }
                    }
                }
                let Some(b) = best else { break };
                h.swap_cols(pivot_col, b);
                u.swap_cols(pivot_col, b);
                let pivot = h.at(row, pivot_col).clone();
                let mut done = true;
                for j in pivot_col + 1..self.cols {
                    if !h.at(row, j).is_zero() {
                        let q = rounded_div(h.at(row, j), &pivot);
                        if !q.is_zero() {
                            col_axpy(&mut h, j, pivot_col, &-q.clone());
                            col_axpy(&mut u, j, pivot_col, &-q);
                        }
                        if !h.at(row, j).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if !h.at(row, pivot_col).is_zero() {
                if h.at(row, pivot_col).is_negative() {
                    col_neg(&mut h, pivot_col);
                    col_neg(&mut u, pivot_col);
                }
                pivot_col += 1;
            }
        }
        (h, u)
    }

    /// Basis of the integer kernel lattice `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (h, u) = self.hermite_columns();
        let mut out = Vec::new();
        for j in 0..self.cols {
            let zero_col = (0..self.rows).all(|i| h.at(i, j).is_zero());
            if zero_col {
                out.push((0..self.cols).map(|i| u.at(i, j).clone()).collect());
            }
        }
        out
    }

    /// Solve `A x = b` over the integers (lattice membership of `b` in the
    /// column lattice). Returns one exact solution or `None`.
    pub fn solve_lattice(&self, b: &[T]) -> Option<Vec<T>> {
        LatticeSolver::new(self).solve(b)
    }

    /// Smith normal form: returns `(u, d, v)` with `U A V = D`, `U` and `V`
    /// unimodular and `D` diagonal with a divisibility chain.
    pub fn smith_normal_form(&self) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
        let mut d = self.clone();
        let mut u = Matrix::<T>::identity(self.rows);
        let mut v = Matrix::<T>::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // Find a minimal nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !d.at(i, j).is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => d.at(i, j).abs() < d.at(bi, bj).abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            let pivot = d.at(t, t).clone();
            for i in t + 1..self.rows {
                if !d.at(i, t).is_zero() {
                    let q = rounded_div(d.at(i, t), &pivot);
                    if !q.is_zero() {
                        row_axpy(&mut d, i, t, &-q.clone());
                        row_axpy(&mut u, i, t, &-q);
                    }
                    if !d.at(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..self.cols {
                if !d.at(t, j).is_zero() {
                    let q = rounded_div(d.at(t, j), &pivot);
                    if !q.is_zero() {
                        col_axpy(&mut d, j, t, &-q.clone());
                        col_axpy(&mut v, j, t, &-q);
                    }
                    if !d.at(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let mut bad = None;
            'scan: for i in t + 1..self.rows {
                for j in t + 1..self.cols {
                    if !d.at(i, j).mod_floor(&pivot).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad {
                row_axpy(&mut d, t, i, &T::one());
                row_axpy(&mut u, t, i, &T::one());
                continue;
            }
            if d.at(t, t).is_negative() {
                row_neg(&mut d, t);
                row_neg(&mut u, t);
            }
            t += 1;
        }
        (u, d, v)
    }
}

/// Reusable integer solver for `A x = b` against a fixed `A`: the Hermite
/// reduction is done once, membership queries are forward substitutions.
pub struct LatticeSolver<T> {
    rows: usize,
    cols: usize,
    h: Matrix<T>,
    u: Matrix<T>,
}

impl<T: Integer + Signed + Clone> LatticeSolver<T> {
    pub fn new(a: &Matrix<T>) -> Self {
        let (h, u) = a.hermite_columns();
        LatticeSolver { rows: a.nrows(), cols: a.ncols(), h, u }
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut y = vec![T::zero(); self.cols];
        let mut residual: Vec<T> = b.to_vec();
        let mut col = 0;
        for row in 0..self.rows {
            if col < self.cols && !self.h.at(row, col).is_zero() {
                let (q, r) = residual[row].div_rem(self.h.at(row, col));
                if !r.is_zero() {
                    return None;
                }
                for i in 0..self.rows {
                    let v = residual[i].clone() - q.clone() * self.h.at(i, col).clone();
                    residual[i] = v;
                }
                y[col] = q;
                col += 1;
            } else if !residual[row].is_zero() {
                return None;
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(self.u.matvec(&y))
    }
}

fn rounded_div<T: Integer + Signed + Clone>(a: &T, b: &T) -> T {
    // Quotient with remainder in (-|b|/2, |b|/2].
    let (q, r) = a.div_rem(b);
    let two_r = r.clone() + r.clone();
    if two_r.abs() > b.abs() {
        if (r > T::zero()) == (b > &T::zero()) {
            q + T::one()
        } else {
            q - T::one()
        }
    } else {
        q
    }
}

fn col_axpy<T: Integer + Clone>(m: &mut Matrix<T>, target: usize, source: usize, c: &T) {
    for i in 0..m.nrows() {
        let v = m.at(i, target).clone() + c.clone() * m.at(i, source).clone();
        m.set(i, target, v);
    }
}

fn row_axpy<T: Integer + Clone>(m: &mut Matrix<T>, target: usize, source: usize, c: &T) {
    for j in 0..m.ncols() {
        let v = m.at(target, j).clone() + c.clone() * m.at(source, j).clone();
        m.set(target, j, v);
    }
}

fn col_neg<T: Integer + Clone>(m: &mut Matrix<T>, col: usize) {
    for i in 0..m.nrows() {
        let v = T::zero() - m.at(i, col).clone();
        m.set(i, col, v);
    }
}

fn row_neg<T: Integer + Clone>(m: &mut Matrix<T>, row: usize) {
    for j in 0..m.ncols() {
        let v = T::zero() - m.at(row, j).clone();
        m.set(row, j, v);
    }
}

/// The standard integer symplectic matrix H_{g,Z}: g diagonal blocks
/// `[[0,1],[-1,0]]`.
pub fn symplectic_int<T: Integer + Signed + Clone>(g: usize) -> Matrix<T> {
    let mut h = Matrix::<T>::zeros(2 * g, 2 * g);
    for b in 0..g {
        h.set(2 * b, 2 * b + 1, T::one());
        h.set(2 * b + 1, 2 * b, -T::one());
    }
    h
}

/// Decompose a skew-symmetric integer matrix as `A = Y^T H_{r/2,Z} Y` with
/// integer `Y`, where `r` is the rank of `A` over Q (always even).
///
/// Congruence reduction with gcd steps brings `A` to blocks
/// `[[0,d_i],[-d_i,0]]`; each block then factors through the unit symplectic
/// block by scaling one row of the witness by d_i.
pub fn decompose_skew_z<T: Integer + Signed + Clone>(a: &Matrix<T>) -> Result<(usize, Matrix<T>)> {
    if !a.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let n = a.nrows();
    let mut b = a.clone();
    // Track ninv = M^{-1} where B = M^T A M throughout.
    let mut ninv = Matrix::<T>::identity(n);
    let mut t = 0;
    let mut ds: Vec<T> = Vec::new();

    // Congruence helpers: every column operation is mirrored on rows to keep
    // B skew, and inverted on ninv.
    fn cong_swap<T: Integer + Signed + Clone>(
        b: &mut Matrix<T>,
        ninv: &mut Matrix<T>,
        i: usize,
        j: usize,
    ) {
        b.swap_cols(i, j);
        b.swap_rows(i, j);
        ninv.swap_rows(i, j);
    }
    fn cong_axpy<T: Integer + Signed + Clone>(
        b: &mut Matrix<T>,
        ninv: &mut Matrix<T>,
        target: usize,
        source: usize,
        c: &T,
    ) {
        // B <- E^T B E with E = I + c * e_source e_target^T.
        col_axpy(b, target, source, c);
        row_axpy(b, target, source, c);
        // ninv <- E^{-1} ninv: row_source -= c * row_target.
        row_axpy(ninv, source, target, &(T::zero() - c.clone()));
    }

    loop {
        // Minimal |entry| in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in i + 1..n {
                if !b.at(i, j).is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => b.at(i, j).abs() < b.at(bi, bj).abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        cong_swap(&mut b, &mut ninv, t, bi);
        // After the first swap the column bj may have moved.
        let bj = if bj == t { bi } else { bj };
        cong_swap(&mut b, &mut ninv, t + 1, bj);

        let pivot = b.at(t, t + 1).clone();
        debug_assert!(!pivot.is_zero());
        let mut clean = true;
        for j in t + 2..n {
            // Clear B[t][j] using column t+1 (B[t][t+1] = pivot).
            if !b.at(t, j).is_zero() {
                let q = rounded_div(b.at(t, j), &pivot);
                if !q.is_zero() {
                    cong_axpy(&mut b, &mut ninv, j, t + 1, &-q);
                }
                if !b.at(t, j).is_zero() {
                    clean = false;
                }
            }
            // Clear B[t+1][j] using column t (B[t+1][t] = -pivot).
            if !b.at(t + 1, j).is_zero() {
                let q = rounded_div(b.at(t + 1, j), &(T::zero() - pivot.clone()));
                if !q.is_zero() {
                    cong_axpy(&mut b, &mut ninv, j, t, &-q);
                }
                if !b.at(t + 1, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        let d = if b.at(t, t + 1).is_negative() {
            cong_swap(&mut b, &mut ninv, t, t + 1);
            b.at(t, t + 1).clone()
        } else {
            b.at(t, t + 1).clone()
        };
        ds.push(d);
        t += 2;
    }

    let r = 2 * ds.len();
    // Y = S * (first r rows of ninv) with S = diag(d_1, 1, d_2, 1, ...).
    let mut y = Matrix::<T>::zeros(r, n);
    for (blk, d) in ds.iter().enumerate() {
        for j in 0..n {
            y.set(2 * blk, j, d.clone() * ninv.at(2 * blk, j).clone());
            y.set(2 * blk + 1, j, ninv.at(2 * blk + 1, j).clone());
        }
    }
    let h = symplectic_int::<T>(r / 2);
    let check = y.transpose().mul(&h.mul(&y));
    if &check != a {
        return Err(Error::Internal(
            "skew decomposition failed exact validation".into(),
        ));
    }
    debug_assert_eq!(a.rank_over_q(), r);
    Ok((r, y))
}
