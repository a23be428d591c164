//! Polynomials in `z` over a finite field and matrices of them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{Combinations, Matrix};

/// Univariate polynomial, little-endian, without trailing zeros. The zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(spec: &FieldSpec) -> Poly {
        Poly {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(c.spec().clone(), vec![c])
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly::constant(spec.one())
    }

    /// `c * z^d`.
    pub fn monomial(c: FieldElement, d: usize) -> Poly {
        let spec = c.spec().clone();
        let mut coeffs = vec![spec.zero(); d];
        coeffs.push(c);
        Poly::new(spec, coeffs)
    }

    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { spec, coeffs }
    }

    pub fn from_ints(spec: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::new(spec.clone(), coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.spec.clone(),
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            self.spec.clone(),
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.spec.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut out = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.spec.clone(), out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(self.spec.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.spec.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(self.spec.clone(), coeffs)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(&self.spec), Poly::zero(&self.spec)));
        };
        if da < dd {
            return Ok((Poly::zero(&self.spec), self.clone()));
        }
        let mut quot = vec![self.spec.zero(); da - dd + 1];
        for i in (dd..=da).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &inv;
            for j in 0..=dd {
                rem[i - dd + j] = &rem[i - dd + j] - &(&f * &d.coeffs[j]);
            }
            quot[i - dd] = f;
        }
        Ok((Poly::new(self.spec.clone(), quot), Poly::new(self.spec.clone(), rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.spec.zero(), |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let compound = self.spec.r() > 1;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c_str = if compound { format!("({c})") } else { c.to_string() };
                match i {
                    0 => c_str,
                    _ if c.is_one() && i == 1 => "z".into(),
                    _ if c.is_one() => format!("z^{i}"),
                    1 => format!("{c_str}z"),
                    _ => format!("{c_str}z^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Matrix with polynomial entries.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    spec: FieldSpec,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            spec: spec.clone(),
            data: vec![Poly::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> PolyMatrix {
        PolyMatrix::from_constant(&Matrix::identity(spec, n))
    }

    pub fn from_fn(
        spec: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            spec: spec.clone(),
            data,
        }
    }

    pub fn from_rows(spec: &FieldSpec, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for p in row {
                if p.spec() != spec {
                    return Err(Error::FieldMismatch);
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            spec: spec.clone(),
            data,
        })
    }

    /// Entries given as integer coefficient lists, little-endian.
    pub fn from_int_rows(spec: &FieldSpec, rows: &[&[&[i64]]]) -> PolyMatrix {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|c| Poly::from_ints(spec, c)).collect())
            .collect();
        PolyMatrix::from_rows(spec, rows).expect("rectangular rows")
    }

    pub fn from_constant(m: &Matrix) -> PolyMatrix {
        PolyMatrix::from_fn(m.spec(), m.rows(), m.cols(), |i, j| {
            Poly::constant(m.get(i, j).clone())
        })
    }

    /// `sum_i coeffs[i] z^i` for same-shape constant matrices.
    pub fn from_coefficients(spec: &FieldSpec, rows: usize, cols: usize, coeffs: &[Matrix]) -> PolyMatrix {
        PolyMatrix::from_fn(spec, rows, cols, |i, j| {
            Poly::new(spec.clone(), coeffs.iter().map(|m| m.get(i, j).clone()).collect())
        })
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Highest degree of any entry.
    pub fn degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    /// Coefficient matrix of `z^d`.
    pub fn coefficient(&self, d: usize) -> Matrix {
        Matrix::from_fn(&self.spec, self.rows, self.cols, |i, j| self.get(i, j).coeff(d))
    }

    pub fn column(&self, j: usize) -> PolyMatrix {
        PolyMatrix::from_fn(&self.spec, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.spec, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.spec, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.spec, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(PolyMatrix::from_fn(&self.spec, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(PolyMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            spec: self.spec.clone(),
            data,
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("sum of differently shaped matrices".into()));
        }
        Ok(PolyMatrix::from_fn(&self.spec, self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        }))
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        PolyMatrix::from_fn(&self.spec, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix::from_fn(&self.spec, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(&self.spec), |acc, l| {
                acc.add(&self.get(i, l).mul(other.get(l, j)))
            })
        }))
    }

    /// `G(z) u(z)`; the same product as [`mul`](Self::mul).
    pub fn apply(&self, u: &PolyMatrix) -> Result<PolyMatrix> {
        self.mul(u)
    }

    /// Column degrees; `None` marks a zero column.
    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.get(i, j).degree()).max())
            .collect()
    }

    /// Sum of the column degrees. A zero column makes this undefined.
    pub fn external_degree(&self) -> Result<usize> {
        self.column_degrees()
            .into_iter()
            .enumerate()
            .map(|(j, d)| {
                d.ok_or_else(|| Error::InvalidArgument(format!("column {j} is zero")))
            })
            .sum()
    }

    /// Highest degree among the full-size (`cols x cols`) minors; `None`
    /// when they all vanish.
    pub fn internal_degree(&self) -> Result<Option<usize>> {
        if self.cols > self.rows {
            return Err(Error::DimensionMismatch(
                "internal degree needs at least as many rows as columns".into(),
            ));
        }
        let mut best = None;
        for rows in Combinations::new(self.rows, self.cols) {
            let d = self.select_rows(&rows).determinant()?.degree();
            best = best.max(d);
        }
        Ok(best)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let (_, det) = bareiss(self.clone(), true);
        Ok(det)
    }

    /// Rank over the rational function field `F(z)`.
    pub fn rank(&self) -> usize {
        bareiss(self.clone(), false).0
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .determinant()
                .is_ok_and(|d| d.degree() == Some(0))
    }

    /// Classical adjugate, by cofactors.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::identity(&self.spec, 1));
        }
        let mut adj = PolyMatrix::zeros(&self.spec, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select_rows(&rows).select_cols(&cols).determinant()?;
                adj.set(i, j, if (i + j) % 2 == 0 { minor } else { minor.neg() });
            }
        }
        Ok(adj)
    }

    /// The polynomial `x` with `self · x = v`, if there is one. Requires full
    /// column rank, so that the rational solution is unique; `v` lies in the
    /// `F[z]`-image exactly when that solution is polynomial.
    pub fn preimage(&self, v: &PolyMatrix) -> Result<Option<PolyMatrix>> {
        if v.rows != self.rows || v.cols != 1 {
            return Err(Error::DimensionMismatch("preimage needs a column of matching length".into()));
        }
        let k = self.cols;
        if self.rank() < k {
            return Err(Error::InvalidArgument("preimage needs full column rank".into()));
        }
        let rows = crate::matrix::Combinations::new(self.rows, k)
            .find(|r| !self.select_rows(r).determinant().is_ok_and(|d| d.is_zero()))
            .expect("full column rank has a nonsingular row subset");
        let g = self.select_rows(&rows);
        let det = g.determinant()?;
        let num = g.adjugate()?.mul(&v.select_rows(&rows))?;
        let mut x = PolyMatrix::zeros(&self.spec, k, 1);
        for i in 0..k {
            let (q, r) = num.get(i, 0).divrem(&det)?;
            if !r.is_zero() {
                return Ok(None);
            }
            x.set(i, 0, q);
        }
        Ok((self.mul(&x)? == *v).then_some(x))
    }

    /// Whether `v` lies in the `F[z]`-column span (see [`Self::preimage`]).
    pub fn spans(&self, v: &PolyMatrix) -> Result<bool> {
        Ok(self.preimage(v)?.is_some())
    }

    /// Matrix of the leading coefficients of each column (coefficient of
    /// `z^{ν_j}` in column `j`). Zero columns give zero columns.
    pub fn leading_column_matrix(&self) -> Matrix {
        let degs = self.column_degrees();
        Matrix::from_fn(&self.spec, self.rows, self.cols, |i, j| match degs[j] {
            Some(d) => self.get(i, j).coeff(d),
            None => self.spec.zero(),
        })
    }

    pub fn is_column_reduced(&self) -> bool {
        self.column_degrees().iter().all(Option::is_some)
            && self.leading_column_matrix().rank() == self.cols
    }

    /// Column reduction by unimodular column operations. Each round takes the
    /// first kernel vector `c` of the leading coefficient matrix, picks the
    /// column of highest degree in its support (lowest index on ties) and
    /// replaces it by `sum_i (c_i / c_j) z^{ν_j - ν_i} col_i`, which lowers
    /// that column's degree.
    pub fn column_reduce(&self) -> Result<PolyMatrix> {
        let mut g = self.clone();
        loop {
            let degs = g.column_degrees();
            if let Some(j) = degs.iter().position(Option::is_none) {
                return Err(Error::InvalidArgument(format!(
                    "column {j} is zero; matrix is not of full column rank"
                )));
            }
            let degs: Vec<usize> = degs.into_iter().map(Option::unwrap).collect();
            let kernel = g.leading_column_matrix().kernel();
            if kernel.cols() == 0 {
                return Ok(g);
            }
            let c = kernel.col(0);
            let support: Vec<usize> = (0..g.cols).filter(|&i| !c[i].is_zero()).collect();
            let j = *support
                .iter()
                .max_by(|&&a, &&b| degs[a].cmp(&degs[b]).then(b.cmp(&a)))
                .expect("kernel vector is nonzero");
            let cj_inv = c[j].inv()?;
            let mut new_col: Vec<Poly> = vec![Poly::zero(&g.spec); g.rows];
            for &i in &support {
                let f = Poly::monomial(&c[i] * &cj_inv, degs[j] - degs[i]);
                for (r, slot) in new_col.iter_mut().enumerate() {
                    *slot = slot.add(&g.get(r, i).mul(&f));
                }
            }
            for (r, p) in new_col.into_iter().enumerate() {
                g.set(r, j, p);
            }
        }
    }

    /// Minimal polynomial basis of the right kernel `{x : P x = 0}`.
    ///
    /// Degree sweep: for `d = 0, 1, ...` the kernel vectors of degree at most
    /// `d` are the kernel of a block Sylvester matrix over the base field.
    /// A vector is kept when its `z^d` coefficient is independent of the
    /// `z^d` coefficients of the shifted vectors already kept, so the result
    /// is column reduced with minimal degrees. The columns are ordered by
    /// degree.
    pub fn minimal_kernel_basis(&self) -> Result<PolyMatrix> {
        let m = self.rows;
        let ncols = self.cols;
        let rank = self.rank();
        let want = ncols - rank;
        let mut basis: Vec<(usize, Vec<Matrix>)> = Vec::new();
        if want == 0 {
            return Ok(PolyMatrix::zeros(&self.spec, ncols, 0));
        }
        let dp = self.degree().unwrap_or(0);
        // minimal indices sum to at most the sum of row degrees
        let max_d = m * dp + 1;
        let coeffs: Vec<Matrix> = (0..=dp).map(|i| self.coefficient(i)).collect();
        for d in 0..=max_d {
            let sylvester = sylvester_matrix(&self.spec, &coeffs, m, ncols, d);
            let kernel = sylvester.kernel();
            // leading blocks of the vectors already chosen, seen at degree d
            let mut leads = Matrix::zeros(&self.spec, ncols, 0);
            for (deg, vecs) in &basis {
                leads = leads.hstack(&vecs[*deg].clone())?;
            }
            let mut current_rank = leads.rank();
            for col in 0..kernel.cols() {
                let v = kernel.col(col);
                let lead = Matrix::column_vector(&self.spec, v[d * ncols..(d + 1) * ncols].to_vec());
                if lead.is_zero() {
                    continue;
                }
                let trial = leads.hstack(&lead)?;
                let r = trial.rank();
                if r > current_rank {
                    current_rank = r;
                    leads = trial;
                    let blocks: Vec<Matrix> = (0..=d)
                        .map(|i| Matrix::column_vector(&self.spec, v[i * ncols..(i + 1) * ncols].to_vec()))
                        .collect();
                    basis.push((d, blocks));
                    if basis.len() == want {
                        return Ok(assemble_basis(&self.spec, ncols, &basis));
                    }
                }
            }
        }
        Err(Error::InvalidArgument(
            "kernel basis search did not terminate within the degree bound".into(),
        ))
    }
}

fn assemble_basis(spec: &FieldSpec, ncols: usize, basis: &[(usize, Vec<Matrix>)]) -> PolyMatrix {
    PolyMatrix::from_fn(spec, ncols, basis.len(), |i, j| {
        Poly::new(spec.clone(), basis[j].1.iter().map(|b| b.get(i, 0).clone()).collect())
    })
}

/// Block convolution matrix `S_d` with `S_d (x_0; ...; x_d) = coefficients of
/// P(z) x(z)`.
fn sylvester_matrix(spec: &FieldSpec, coeffs: &[Matrix], m: usize, n: usize, d: usize) -> Matrix {
    let dp = coeffs.len() - 1;
    let mut s = Matrix::zeros(spec, (d + dp + 1) * m, (d + 1) * n);
    for i in 0..=d {
        for (j, c) in coeffs.iter().enumerate() {
            s.set_block((i + j) * m, i * n, c);
        }
    }
    s
}

/// Fraction-free elimination. Returns the rank, and when `square` the
/// determinant.
fn bareiss(mut m: PolyMatrix, square: bool) -> (usize, Poly) {
    let spec = m.spec.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = Poly::one(&spec);
    let mut sign_neg = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            if square {
                return (r, Poly::zero(&spec));
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            sign_neg = !sign_neg;
        }
        let pivot = m.get(r, c).clone();
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = pivot
                    .mul(m.get(i, j))
                    .sub(&m.get(i, c).mul(m.get(r, j)));
                let v = num.exact_div(&prev).expect("Bareiss division is exact");
                m.set(i, j, v);
            }
            m.set(i, c, Poly::zero(&spec));
        }
        prev = pivot;
        r += 1;
    }
    if !square {
        return (r, Poly::zero(&spec));
    }
    let det = if rows == 0 {
        Poly::one(&spec)
    } else {
        m.get(rows - 1, cols - 1).clone()
    };
    (r, if sign_neg { det.neg() } else { det })
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
