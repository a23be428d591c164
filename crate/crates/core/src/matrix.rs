//! Dense matrices over a finite field and structural minor analysis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Default cap on the number of minors a superregularity check may examine.
pub const DEFAULT_MINOR_BUDGET: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    spec: FieldSpec,
    data: Vec<FieldElement>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// One solution of `M x = rhs`, absent when the system is inconsistent.
    pub particular: Option<Matrix>,
    /// Basis of the right kernel of `M`, one column per vector.
    pub kernel: Matrix,
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.particular.is_some() && self.kernel.cols() == 0
    }
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            spec: spec.clone(),
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    /// Builds a matrix from rows of elements. All rows must have equal
    /// length and every element must belong to `spec`.
    pub fn from_rows(spec: &FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.spec() != spec {
                    return Err(Error::FieldMismatch);
                }
                data.push(e);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            spec: spec.clone(),
            data,
        })
    }

    /// Matrix of prime-subfield residues; handy for small examples.
    pub fn from_ints(spec: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| spec.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(spec, rows).expect("rectangular integer rows")
    }

    pub fn from_fn(
        spec: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            spec: spec.clone(),
            data,
        }
    }

    pub fn diagonal(spec: &FieldSpec, d: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(spec, d.len(), d.len());
        for (i, e) in d.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn column_vector(spec: &FieldSpec, v: Vec<FieldElement>) -> Matrix {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            spec: spec.clone(),
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.spec, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.spec != other.spec {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            spec: self.spec.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| -e)
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            spec: self.spec.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.spec, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(&self.spec, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            spec: self.spec.clone(),
            data,
        })
    }

    /// Block matrix from a grid of blocks with consistent shapes.
    pub fn block(spec: &FieldSpec, grid: &[Vec<Matrix>]) -> Result<Matrix> {
        let mut out: Option<Matrix> = None;
        for row in grid {
            let mut band: Option<Matrix> = None;
            for b in row {
                band = Some(match band {
                    None => b.clone(),
                    Some(acc) => acc.hstack(b)?,
                });
            }
            let band = band.unwrap_or_else(|| Matrix::zeros(spec, 0, 0));
            out = Some(match out {
                None => band,
                Some(acc) => acc.vstack(&band)?,
            });
        }
        Ok(out.unwrap_or_else(|| Matrix::zeros(spec, 0, 0)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.spec, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.echelon().pivots.len()
    }

    pub fn has_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    /// Basis of `{x : self * x = 0}`, one column per basis vector, in the
    /// order of the free columns.
    pub fn kernel(&self) -> Matrix {
        let e = self.echelon();
        kernel_from_echelon(&e, self.cols, &self.spec)
    }

    /// Solves `self * x = rhs` exactly.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side {}",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let e = aug.echelon();
        let n = self.cols;
        let consistent = e.pivots.iter().all(|&c| c < n);
        let lhs_pivots: Vec<usize> = e.pivots.iter().copied().filter(|&c| c < n).collect();
        let particular = consistent.then(|| {
            let mut x = Matrix::zeros(&self.spec, n, rhs.cols);
            for (r, &c) in lhs_pivots.iter().enumerate() {
                for j in 0..rhs.cols {
                    x.set(c, j, e.m.get(r, n + j).clone());
                }
            }
            x
        });
        let lhs = Echelon {
            m: e.m.select_cols(&(0..n).collect::<Vec<_>>()),
            pivots: lhs_pivots,
        };
        let kernel = kernel_from_echelon(&lhs, n, &self.spec);
        let sol = Solution { particular, kernel };
        if cfg!(debug_assertions) || cfg!(test) {
            if let Some(x) = &sol.particular {
                debug_assert_eq!(&(self * x), rhs, "solve produced a wrong solution");
            }
        }
        Ok(sol)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.spec, n))?;
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(e.m.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_in_place(self.clone()))
    }
}

fn kernel_from_echelon(e: &Echelon, n: usize, spec: &FieldSpec) -> Matrix {
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let mut k = Matrix::zeros(spec, n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, spec.one());
        for (r, &p) in e.pivots.iter().enumerate() {
            k.set(p, col, -e.m.get(r, f));
        }
    }
    k
}

/// Determinant by forward elimination; consumes its argument.
fn det_in_place(mut m: Matrix) -> FieldElement {
    let n = m.rows;
    let spec = m.spec.clone();
    let mut det = spec.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
            return spec.zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = -det;
        }
        let pivot = m.get(c, c).clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("pivot is nonzero");
        for i in c + 1..n {
            let f = m.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c + 1..n {
                let v = m.get(i, j) - &(&f * m.get(c, j));
                m.set(i, j, v);
            }
        }
    }
    det
}

impl std::ops::Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl std::ops::Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl std::ops::Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Which positions of a matrix class may be nonzero. `false` marks a
/// structural zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPattern {
    rows: usize,
    cols: usize,
    mask: Vec<bool>,
}

impl SupportPattern {
    pub fn new(rows: usize, cols: usize, mask: Vec<bool>) -> Result<SupportPattern> {
        if mask.len() != rows * cols {
            return Err(Error::DimensionMismatch("mask size".into()));
        }
        Ok(SupportPattern { rows, cols, mask })
    }

    pub fn full(rows: usize, cols: usize) -> SupportPattern {
        SupportPattern {
            rows,
            cols,
            mask: vec![true; rows * cols],
        }
    }

    /// Support of the actual nonzero entries of `m`.
    pub fn of_nonzeros(m: &Matrix) -> SupportPattern {
        SupportPattern {
            rows: m.rows(),
            cols: m.cols(),
            mask: m.data.iter().map(|e| !e.is_zero()).collect(),
        }
    }

    /// Lower block-triangular pattern with `blocks x blocks` blocks of size
    /// `block_rows x block_cols`; blocks strictly above the diagonal are zero.
    pub fn block_lower_triangular(blocks: usize, block_rows: usize, block_cols: usize) -> SupportPattern {
        let rows = blocks * block_rows;
        let cols = blocks * block_cols;
        let mask = (0..rows * cols)
            .map(|idx| {
                let (i, j) = (idx / cols, idx % cols);
                j / block_cols <= i / block_rows
            })
            .collect();
        SupportPattern { rows, cols, mask }
    }

    pub fn hstack(&self, other: &SupportPattern) -> SupportPattern {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mask = (0..self.rows * cols)
            .map(|idx| {
                let (i, j) = (idx / cols, idx % cols);
                if j < self.cols {
                    self.at(i, j)
                } else {
                    other.at(i, j - self.cols)
                }
            })
            .collect();
        SupportPattern {
            rows: self.rows,
            cols,
            mask,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.cols + j]
    }

    /// True when the submatrix on `rows x cols` admits a perfect matching
    /// inside the support, i.e. its minor is not trivially zero.
    pub fn has_matching(&self, rows: &[usize], cols: &[usize]) -> bool {
        let s = rows.len();
        if s != cols.len() {
            return false;
        }
        // Kuhn's augmenting paths
        let mut match_col: Vec<Option<usize>> = vec![None; s];
        for r in 0..s {
            let mut seen = vec![false; s];
            if !self.augment(rows, cols, r, &mut seen, &mut match_col) {
                return false;
            }
        }
        true
    }

    fn augment(
        &self,
        rows: &[usize],
        cols: &[usize],
        r: usize,
        seen: &mut [bool],
        match_col: &mut [Option<usize>],
    ) -> bool {
        for c in 0..cols.len() {
            if seen[c] || !self.at(rows[r], cols[c]) {
                continue;
            }
            seen[c] = true;
            let free = match match_col[c] {
                None => true,
                Some(other) => self.augment(rows, cols, other, seen, match_col),
            };
            if free {
                match_col[c] = Some(r);
                return true;
            }
        }
        false
    }
}

/// Lexicographic k-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Row/column index sets of a minor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorIndex {
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// All `size x size` minors of the pattern that are not trivially zero, in
/// lexicographic order of (row set, column set).
pub fn nontrivial_minor_indices(
    pattern: &SupportPattern,
    size: usize,
) -> impl Iterator<Item = MinorIndex> + '_ {
    Combinations::new(pattern.rows, size).flat_map(move |rows| {
        Combinations::new(pattern.cols, size).filter_map(move |cols| {
            pattern
                .has_matching(&rows, &cols)
                .then(|| MinorIndex { rows: rows.clone(), cols })
        })
    })
}

/// Result of a superregularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperregularReport {
    pub superregular: bool,
    /// Smallest vanishing non-trivial minor (by size, then rows, then
    /// columns).
    pub witness: Option<MinorIndex>,
    /// Non-trivial minors whose determinant was evaluated.
    pub minors_checked: u64,
}

/// Checks that every non-trivially-zero minor of `m` is nonzero. The budget
/// bounds the number of candidate submatrices examined; exceeding it is an
/// error rather than a partial answer.
pub fn is_superregular(m: &Matrix, pattern: &SupportPattern, budget: u64) -> Result<SuperregularReport> {
    if (m.rows(), m.cols()) != (pattern.rows, pattern.cols) {
        return Err(Error::DimensionMismatch("pattern does not match matrix".into()));
    }
    let max = m.rows().min(m.cols());
    let total: u64 = (1..=max)
        .map(|s| binomial(m.rows(), s).saturating_mul(binomial(m.cols(), s)))
        .fold(0u64, |a, b| a.saturating_add(b));
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{total} candidate minors exceed the budget of {budget}"
        )));
    }
    let mut checked = 0u64;
    for s in 1..=max {
        for idx in nontrivial_minor_indices(pattern, s) {
            checked += 1;
            let sub = m.submatrix(&idx.rows, &idx.cols);
            if det_in_place(sub).is_zero() {
                return Ok(SuperregularReport {
                    superregular: false,
                    witness: Some(idx),
                    minors_checked: checked,
                });
            }
        }
    }
    Ok(SuperregularReport {
        superregular: true,
        witness: None,
        minors_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf(3);
        assert_eq!(Matrix::zeros(&f, 4, 4).rank(), 0);
        let m = Matrix::from_ints(&f, &[&[1, 2], &[2, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::identity(&f, 3).rank(), 3);
    }

    #[test]
    fn inverse_of_q() {
        let f = gf(3);
        let q = Matrix::from_ints(&f, &[&[1, 1], &[1, 2]]);
        let qi = q.inverse().unwrap();
        assert_eq!(qi, Matrix::from_ints(&f, &[&[2, 2], &[2, 1]]));
        assert_eq!(&q * &qi, Matrix::identity(&f, 2));
        let h = Matrix::from_ints(&f, &[&[2]]);
        assert_eq!(h.inverse().unwrap(), h);
        assert_eq!(
            Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]).inverse().unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn solve_cases() {
        let f = gf(5);
        let id = Matrix::identity(&f, 3);
        let v = Matrix::from_ints(&f, &[&[1], &[2], &[3]]);
        let s = id.solve(&v).unwrap();
        assert!(s.is_unique());
        assert_eq!(s.particular.unwrap(), v);

        let z = Matrix::zeros(&f, 1, 2);
        let s = z.solve(&Matrix::from_ints(&f, &[&[1]])).unwrap();
        assert!(!s.is_consistent());
        assert_eq!(s.kernel.cols(), 2);

        let m = Matrix::from_ints(&f, &[&[1, 2, 3]]);
        let s = m.solve(&Matrix::from_ints(&f, &[&[4]])).unwrap();
        assert!(s.is_consistent() && !s.is_unique());
        assert!((&m * &s.kernel).is_zero());
        assert!(
            m.solve(&Matrix::zeros(&f, 2, 1)).is_err(),
            "row mismatch must be rejected"
        );
    }

    #[test]
    fn determinant_sign() {
        let f = gf(7);
        let m = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), f.from_i64(-1));
    }

    #[test]
    fn combinations_order() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(binomial(12, 4), 495);
    }

    #[test]
    fn minors_of_small_patterns() {
        let full = SupportPattern::full(2, 2);
        let v: Vec<_> = nontrivial_minor_indices(&full, 2).collect();
        assert_eq!(v, vec![MinorIndex { rows: vec![0, 1], cols: vec![0, 1] }]);
        let lower = SupportPattern::new(2, 2, vec![true, false, true, true]).unwrap();
        assert_eq!(nontrivial_minor_indices(&lower, 2).count(), 1);
        let upper_zero = SupportPattern::new(2, 2, vec![true, false, true, false]).unwrap();
        assert_eq!(nontrivial_minor_indices(&upper_zero, 2).count(), 0);
    }

    #[test]
    fn superregular_small() {
        let f = gf(3);
        let m = Matrix::from_ints(&f, &[&[1, 1], &[1, 2]]);
        let r = is_superregular(&m, &SupportPattern::full(2, 2), DEFAULT_MINOR_BUDGET).unwrap();
        assert!(r.superregular);
        let m = Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]);
        let r = is_superregular(&m, &SupportPattern::full(2, 2), DEFAULT_MINOR_BUDGET).unwrap();
        assert!(!r.superregular);
        assert_eq!(r.witness.unwrap().size(), 2);
        assert!(matches!(
            is_superregular(&m, &SupportPattern::full(2, 2), 3),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
