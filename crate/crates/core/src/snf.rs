//! Integer matrices, Smith normal form and row-lattice membership.
//!
//! All arithmetic is over `BigInt`. Pivots are chosen by minimal absolute
//! value; both transforms are tracked so that `P * M * Q = D`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds from rows; every row must have the same length.
    pub fn from_rows(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows, cols, data }
    }

    /// Builds an empty-row matrix with a fixed column count.
    pub fn with_cols(cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(data: &[Vec<i64>]) -> Self {
        Self::from_rows(data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (x, row) in v.iter().zip(&self.data) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += x * a;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// row_i += f * row_t
    fn add_row(&mut self, i: usize, t: usize, f: &BigInt) {
        let src = self.data[t].clone();
        for (x, s) in self.data[i].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x += f * s;
            }
        }
    }

    /// col_j += f * col_t
    fn add_col(&mut self, j: usize, t: usize, f: &BigInt) {
        for r in &mut self.data {
            if !r[t].is_zero() {
                let v = f * &r[t];
                r[j] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `P * M * Q = D` with `P`, `Q` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ... | d_r`, followed by zeros.
#[derive(Debug, Clone)]
pub struct Snf {
    pub p: IntMatrix,
    pub d: IntMatrix,
    pub q: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    /// True when every invariant factor is 1 and the rank equals the column
    /// count, i.e. the rows span all of `Z^cols`.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.d.cols() && self.invariant_factors().iter().all(One::is_one)
    }

    /// Minimal number of generators of `Z^cols / rowspan`.
    pub fn cokernel_generators(&self) -> usize {
        let f = self.invariant_factors();
        (self.d.cols() - f.len()) + f.iter().filter(|x| !x.is_one()).count()
    }
}

fn min_abs_position(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a.data[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.data[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Smith normal form with transforms.
pub fn integer_diagonalize(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut p = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_position(&a, t) else { break };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let f = -a.data[i][t].div_floor(&a.data[t][t]);
                a.add_row(i, t, &f);
                p.add_row(i, t, &f);
                clean &= a.data[i][t].is_zero();
            }
            for j in t + 1..c {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let f = -a.data[t][j].div_floor(&a.data[t][t]);
                a.add_col(j, t, &f);
                q.add_col(j, t, &f);
                clean &= a.data[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; move it in
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a.data[i][t].is_zero() && a.data[i][t].abs() < a.data[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a.data[t][j].is_zero() && a.data[t][j].abs() < a.data[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                p.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                q.swap_cols(t, best.1);
                continue;
            }
            let pivot = a.data[t][t].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.data[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    p.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    Snf { p, d: a, q }
}

/// Row Hermite normal form: the nonzero rows of an echelon basis of the row
/// lattice, pivots positive, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.rows {
                if !a.data[i][c].is_zero() && best.is_none_or(|b| a.data[i][c].abs() < a.data[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..a.rows {
                if a.data[i][c].is_zero() {
                    continue;
                }
                let f = -a.data[i][c].div_floor(&a.data[r][c]);
                a.add_row(i, r, &f);
                done &= a.data[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a.data.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if a.data[r][c].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let f = -a.data[i][c].div_floor(&a.data[r][c]);
            if !f.is_zero() {
                a.add_row(i, r, &f);
            }
        }
        r += 1;
    }
    a.data.truncate(r);
    a.rows = r;
    a
}

/// The lattice spanned by the rows of a matrix, prepared for membership
/// queries.
#[derive(Debug, Clone)]
pub struct RowLattice {
    snf: Snf,
    dim: usize,
}

impl RowLattice {
    pub fn new(basis: &IntMatrix) -> Self {
        RowLattice { snf: integer_diagonalize(basis), dim: basis.cols() }
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }

    /// Coefficients `x` with `x * basis = v`, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let aq = {
            let row = IntMatrix::with_cols(self.dim, vec![v.to_vec()]);
            row.mul(&self.snf.q).into_rows().pop().unwrap()
        };
        let factors = self.snf.invariant_factors();
        let mut y = vec![BigInt::zero(); self.snf.p.rows()];
        for (j, x) in aq.iter().enumerate() {
            match factors.get(j) {
                Some(d) => {
                    let (quot, rem) = x.div_rem(d);
                    if !rem.is_zero() {
                        return None;
                    }
                    y[j] = quot;
                }
                None if !x.is_zero() => return None,
                None => {}
            }
        }
        Some(self.snf.p.left_apply(&y))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// True when every row of `other` lies in this lattice.
    pub fn contains_all(&self, other: &IntMatrix) -> bool {
        other.row_vecs().iter().all(|r| self.contains(r))
    }
}
