//! Integer matrices and the Smith normal form.
//!
//! The Smith normal form is computed by pivot-with-gcd elimination, which is
//! entirely adequate at the matrix sizes that occur here (at most 22x22).

use crate::error::ExactError;
use crate::Integer;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix with arbitrary-size entries, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![Integer::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::one();
        }
        m
    }

    /// Build from rows of `i64` entries. Panics when rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = Integer::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Integer {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = 1i32;
        let mut prev = Integer::one();
        for k in 0..n {
            // pivot search
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Integer::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = Integer::zero();
            }
            prev = a[k * n + k].clone();
        }
        let d = a[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Direct (block-diagonal) sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, lambda: &Integer) -> IntMatrix {
        let mut m = self.clone();
        for e in &mut m.data {
            *e *= lambda;
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = d` with `u`, `v` unimodular
/// and `d` diagonal with nonnegative entries `d1 | d2 | ...`.
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Integer> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm, ExactError> {
    if m.rows == 0 || m.cols == 0 {
        return Err(ExactError::EmptyMatrix);
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // Find entry of minimal nonzero magnitude in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !d[(i, j)].is_zero()
                        && best
                            .map(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // trailing block is zero; done
                return Ok(finish(u, d, v, k));
            };
            swap_rows(&mut d, &mut u, k, pi);
            swap_cols(&mut d, &mut v, k, pj);

            // Clear column k below the pivot and row k right of the pivot.
            let mut dirty = false;
            for i in k + 1..rows {
                if !d[(i, k)].is_zero() {
                    let q = div_nearest(&d[(i, k)], &d[(k, k)]);
                    row_sub(&mut d, &mut u, i, k, &q);
                    if !d[(i, k)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !d[(k, j)].is_zero() {
                    let q = div_nearest(&d[(k, j)], &d[(k, k)]);
                    col_sub(&mut d, &mut v, j, k, &q);
                    if !d[(k, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // Pivot must divide every entry of the remaining block.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // Fold the offending row into row k and repeat.
                    let one = Integer::from(-1);
                    row_sub(&mut d, &mut u, k, i, &one);
                }
                None => break,
            }
        }
    }
    Ok(finish(u, d, v, steps))
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix, upto: usize) -> SmithNormalForm {
    // Make diagonal entries nonnegative.
    for k in 0..upto {
        if d[(k, k)].is_negative() {
            for j in 0..d.cols {
                let x = -d[(k, j)].clone();
                d[(k, j)] = x;
            }
            for j in 0..u.cols {
                let x = -u[(k, j)].clone();
                u[(k, j)] = x;
            }
        }
    }
    SmithNormalForm { u, d, v }
}

/// Rounded division: quotient nearest to the exact ratio. Keeps remainders
/// small, which is what makes gcd-pivot elimination converge quickly.
fn div_nearest(a: &Integer, b: &Integer) -> Integer {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * Integer::from(2);
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + Integer::one()
        } else {
            q - Integer::one()
        }
    } else {
        q
    }
}

fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let x = d[(a, j)].clone();
        d[(a, j)] = d[(b, j)].clone();
        d[(b, j)] = x;
    }
    for j in 0..u.cols {
        let x = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = x;
    }
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let x = d[(i, a)].clone();
        d[(i, a)] = d[(i, b)].clone();
        d[(i, b)] = x;
    }
    for i in 0..v.rows {
        let x = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = x;
    }
}

/// row[i] -= q * row[k], mirrored on `u`.
fn row_sub(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &Integer) {
    for j in 0..d.cols {
        let delta = q * &d[(k, j)];
        d[(i, j)] -= delta;
    }
    for j in 0..u.cols {
        let delta = q * &u[(k, j)];
        u[(i, j)] -= delta;
    }
}

/// col[j] -= q * col[k], mirrored on `v`.
fn col_sub(d: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &Integer) {
    for i in 0..d.rows {
        let delta = q * &d[(i, k)];
        d[(i, j)] -= delta;
    }
    for i in 0..v.rows {
        let delta = q * &v[(i, k)];
        v[(i, j)] -= delta;
    }
}

/// Solve `m x = b` over the integers via the Smith normal form; `None` when
/// no integer solution exists.
pub fn solve_integer(m: &IntMatrix, b: &[Integer]) -> Option<Vec<Integer>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m).ok()?;
    let ub = snf.u.mul_vec(b);
    let n = m.cols();
    let mut y = vec![Integer::zero(); n];
    for i in 0..m.rows() {
        let d = if i < n.min(m.rows()) {
            snf.d[(i, i)].clone()
        } else {
            Integer::zero()
        };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else if i < n {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Do two integer matrices with the same number of columns span the same
/// row lattice over the integers?
pub fn same_row_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let at = a.transpose();
    let bt = b.transpose();
    let rows_in = |rows_of: &IntMatrix, span_t: &IntMatrix| -> bool {
        (0..rows_of.rows()).all(|i| {
            let row: Vec<Integer> = (0..rows_of.cols()).map(|j| rows_of[(i, j)].clone()).collect();
            solve_integer(span_t, &row).is_some()
        })
    };
    rows_in(b, &at) && rows_in(a, &bt)
}

/// Primitive generator of the rank-one kernel of `m` (columns), if the kernel
/// has rank exactly one. Sign is normalized so that more entries are positive
/// than negative; ties keep the first nonzero entry positive.
pub fn kernel_rank_one(m: &IntMatrix) -> Option<Vec<Integer>> {
    let snf = smith_normal_form(m).ok()?;
    let n = m.cols();
    let zero_diag: Vec<usize> = (0..n)
        .filter(|&j| j >= m.rows().min(n) || snf.d[(j, j)].is_zero())
        .collect();
    if zero_diag.len() != 1 {
        return None;
    }
    let j = zero_diag[0];
    // kernel generated by column j of v
    let mut gen: Vec<Integer> = (0..n).map(|i| snf.v[(i, j)].clone()).collect();
    let g = gen
        .iter()
        .fold(Integer::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut gen {
            *x /= &g;
        }
    }
    let pos = gen.iter().filter(|x| x.is_positive()).count();
    let neg = gen.iter().filter(|x| x.is_negative()).count();
    let flip = match pos.cmp(&neg) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => gen
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap_or(false),
    };
    if flip {
        for x in &mut gen {
            *x = -x.clone();
        }
    }
    Some(gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: reduce a copy by naive repeated row/column
    /// elimination without tracking transforms, returning the diagonal.
    fn snf_diagonal_oracle(m: &IntMatrix) -> Vec<Integer> {
        let mut d = m.clone();
        let (rows, cols) = (d.rows(), d.cols());
        let steps = rows.min(cols);
        for k in 0..steps {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in k..rows {
                    for j in k..cols {
                        if !d[(i, j)].is_zero()
                            && best
                                .map(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                                .unwrap_or(true)
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { break };
                for j in 0..cols {
                    let x = d[(k, j)].clone();
                    d[(k, j)] = d[(pi, j)].clone();
                    d[(pi, j)] = x;
                }
                for i in 0..rows {
                    let x = d[(i, k)].clone();
                    d[(i, k)] = d[(i, pj)].clone();
                    d[(i, pj)] = x;
                }
                let mut clean = true;
                for i in k + 1..rows {
                    while !d[(i, k)].is_zero() {
                        let q = div_nearest(&d[(i, k)], &d[(k, k)]);
                        for j in 0..cols {
                            let delta = &q * &d[(k, j)];
                            d[(i, j)] -= delta;
                        }
                        if !d[(i, k)].is_zero() {
                            // swap rows to keep magnitudes shrinking
                            for j in 0..cols {
                                let x = d[(k, j)].clone();
                                d[(k, j)] = d[(i, j)].clone();
                                d[(i, j)] = x;
                            }
                        }
                    }
                }
                for j in k + 1..cols {
                    while !d[(k, j)].is_zero() {
                        let q = div_nearest(&d[(k, j)], &d[(k, k)]);
                        for i in 0..rows {
                            let delta = &q * &d[(i, k)];
                            d[(i, j)] -= delta;
                        }
                        if !d[(k, j)].is_zero() {
                            for i in 0..rows {
                                let x = d[(i, k)].clone();
                                d[(i, k)] = d[(i, j)].clone();
                                d[(i, j)] = x;
                            }
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                let mut offender = None;
                'scan: for i in k + 1..rows {
                    for j in k + 1..cols {
                        if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        for j in 0..cols {
                            let x = d[(i, j)].clone();
                            d[(k, j)] += x;
                        }
                    }
                    None => break,
                }
            }
        }
        (0..steps).map(|i| d[(i, i)].abs()).collect()
    }

    fn check(m: &IntMatrix) {
        let snf = smith_normal_form(m).unwrap();
        // U*M*V = D exactly
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d);
        // U, V unimodular
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        // diagonal, nonnegative, divisibility chain
        let diag = snf.diagonal();
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        // against the oracle
        assert_eq!(diag, snf_diagonal_oracle(m));
    }

    #[test]
    fn identity_2x2() {
        let m = IntMatrix::identity(2);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d, IntMatrix::identity(2));
        check(&m);
    }

    #[test]
    fn hyperbolic_plane_gram() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.diagonal(), vec![Integer::one(), Integer::one()]);
        check(&m);
    }

    #[test]
    fn rectangular_and_singular() {
        check(&IntMatrix::from_rows(&[vec![2, 4, 6], vec![4, 8, 12]]));
        check(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
        check(&IntMatrix::from_rows(&[
            vec![2, 3, 5],
            vec![7, 11, 13],
            vec![17, 19, 23],
        ]));
    }

    #[test]
    fn kernel_of_corank_one() {
        // rows (1,1,-1,-1)-orthogonal
        let m = IntMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]);
        let k = kernel_rank_one(&m).unwrap();
        let mv = m.mul_vec(&k);
        assert!(mv.iter().all(|x| x.is_zero()));
        let full = IntMatrix::identity(3);
        assert!(kernel_rank_one(&full).is_none());
    }

    #[test]
    fn pseudo_random_matrices() {
        // deterministic LCG so the test is reproducible
        let mut state = 0x1234_5678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        };
        for _ in 0..25 {
            let rows = 2 + (next().unsigned_abs() as usize % 4);
            let cols = 2 + (next().unsigned_abs() as usize % 4);
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            check(&IntMatrix::from_rows(&data));
        }
    }
}
