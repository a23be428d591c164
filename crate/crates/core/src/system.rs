//! Input/state/output representations `Σ = (A, B, C, D)` and their codes.
//!
//! A codeword is `v(z) = (y(z); u(z))` with the `n - k` parity rows first.
//! The code of `Σ` is the kernel of `[zK' + L' | M']`, which unwinds to
//!
//! ```text
//! x_t = A x_{t+1} + B u_{t+1},   y_t = C x_t + D u_t,   A x_0 + B u_0 = 0
//! ```
//!
//! for the coefficients of `v(z)`: the familiar forward recursion
//! `x_{t+1} = A x_t + B u_t` from `x = 0` runs over the coefficients from
//! the highest degree down. Encoding, membership and the transfer function
//! all use this orientation; the windowed decoder works on the transmitted
//! (forward) time order directly.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSystem {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
    n: usize,
    k: usize,
    delta: usize,
}

impl IsoSystem {
    /// Validates shapes: `A` is `δ x δ`, `B` is `δ x k`, `C` is
    /// `(n-k) x δ`, `D` is `(n-k) x k`, with `0 < k < n` and `δ ≥ 1`.
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<IsoSystem> {
        let spec = a.spec().clone();
        if [&b, &c, &d].iter().any(|m| m.spec() != &spec) {
            return Err(Error::FieldMismatch);
        }
        let delta = a.rows();
        let k = b.cols();
        let p = c.rows();
        let bad = |what: &str| Err(Error::DimensionMismatch(what.to_string()));
        if delta == 0 {
            return bad("state dimension must be at least 1");
        }
        if !a.is_square() {
            return bad("A must be square");
        }
        if b.rows() != delta {
            return bad("B must have delta rows");
        }
        if c.cols() != delta {
            return bad("C must have delta columns");
        }
        if d.rows() != p || d.cols() != k {
            return bad("D must be (n-k) x k");
        }
        if k == 0 || p == 0 {
            return bad("need 0 < k < n");
        }
        Ok(IsoSystem {
            a,
            b,
            c,
            d,
            n: k + p,
            k,
            delta,
        })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }
    pub fn b(&self) -> &Matrix {
        &self.b
    }
    pub fn c(&self) -> &Matrix {
        &self.c
    }
    pub fn d(&self) -> &Matrix {
        &self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// Number of parity symbols per block, `n - k`.
    pub fn p(&self) -> usize {
        self.n - self.k
    }
    pub fn delta(&self) -> usize {
        self.delta
    }
    pub fn spec(&self) -> &FieldSpec {
        self.a.spec()
    }

    pub fn controllability(&self) -> Matrix {
        controllability_matrix(&self.a, &self.b, self.delta).expect("validated shapes")
    }

    pub fn observability(&self) -> Matrix {
        observability_matrix(&self.a, &self.c, self.delta).expect("validated shapes")
    }

    pub fn is_reachable(&self) -> bool {
        self.controllability().rank() == self.delta
    }

    pub fn is_observable(&self) -> bool {
        self.observability().rank() == self.delta
    }

    /// `(K', L', M')` with `K' = [-I; 0]`, `L' = [A; C]` and
    /// `M' = [[0, B], [-I, D]]`.
    pub fn first_order_form(&self) -> (Matrix, Matrix, Matrix) {
        let spec = self.spec();
        let (dl, p, k) = (self.delta, self.p(), self.k);
        let mut kk = Matrix::zeros(spec, dl + p, dl);
        kk.set_block(0, 0, &Matrix::identity(spec, dl).neg());
        let ll = self.a.vstack(&self.c).expect("shapes");
        let mut mm = Matrix::zeros(spec, dl + p, p + k);
        mm.set_block(0, p, &self.b);
        mm.set_block(dl, 0, &Matrix::identity(spec, p).neg());
        mm.set_block(dl, p, &self.d);
        (kk, ll, mm)
    }

    /// `[zK' + L' | M']` as a polynomial matrix.
    pub fn kernel_operator(&self) -> PolyMatrix {
        let (kk, ll, mm) = self.first_order_form();
        let spec = self.spec();
        let left = PolyMatrix::from_coefficients(spec, ll.rows(), ll.cols(), &[ll.clone(), kk]);
        left.hstack(&PolyMatrix::from_constant(&mm)).expect("shapes")
    }

    /// Minimal `n x k` encoder: the `v` block of a minimal basis of
    /// `Ker [zK' + L' | M']`.
    pub fn extract_encoder(&self) -> Result<PolyMatrix> {
        if !self.is_reachable() {
            return Err(Error::NotReachable);
        }
        let basis = self.kernel_operator().minimal_kernel_basis()?;
        let rows: Vec<usize> = (self.delta..self.delta + self.n).collect();
        Ok(basis.select_rows(&rows))
    }

    fn forward_step(&self, x: &Matrix, u: &Matrix) -> (Matrix, Matrix) {
        let y = &(&self.c * x) + &(&self.d * u);
        let next = &(&self.a * x) + &(&self.b * u);
        (y, next)
    }

    /// Codeword generated by the input `u(z)` (a `k x 1` polynomial
    /// matrix). The input is fed highest coefficient first from `x = 0`,
    /// then zero input is applied until the state returns to zero. The
    /// returned `n x 1` word therefore carries `z^m u(z)` in its information
    /// rows, `m` being the number of flush steps.
    ///
    /// Under zero input the state reaches zero within `δ` steps or never,
    /// so the flush is bounded by `δ`.
    pub fn encode(&self, u: &PolyMatrix) -> Result<PolyMatrix> {
        if u.rows() != self.k || u.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "input must be {}x1, got {}x{}",
                self.k,
                u.rows(),
                u.cols()
            )));
        }
        let spec = self.spec();
        let Some(deg) = u.degree() else {
            return Ok(PolyMatrix::zeros(spec, self.n, 1));
        };
        let mut x = Matrix::zeros(spec, self.delta, 1);
        let mut blocks: Vec<Matrix> = Vec::new();
        for t in 0..=deg {
            let ut = u.coefficient(deg - t);
            let (y, next) = self.forward_step(&x, &ut);
            blocks.push(y.vstack(&ut)?);
            x = next;
        }
        let zero_u = Matrix::zeros(spec, self.k, 1);
        let mut flush = 0;
        while !x.is_zero() {
            if flush == self.delta {
                return Err(Error::StateNotFlushed(self.delta));
            }
            let (y, next) = self.forward_step(&x, &zero_u);
            blocks.push(y.vstack(&zero_u)?);
            x = next;
            flush += 1;
        }
        blocks.reverse();
        Ok(PolyMatrix::from_coefficients(spec, self.n, 1, &blocks))
    }

    /// Exact membership test for `v(z) = (y; u)`.
    pub fn contains(&self, v: &PolyMatrix) -> Result<bool> {
        if v.rows() != self.n || v.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "codeword must be {}x1, got {}x{}",
                self.n,
                v.rows(),
                v.cols()
            )));
        }
        let Some(deg) = v.degree() else {
            return Ok(true);
        };
        let p = self.p();
        let mut x = Matrix::zeros(self.spec(), self.delta, 1);
        for t in 0..=deg {
            let block = v.coefficient(deg - t);
            let y = block.select_rows(&(0..p).collect::<Vec<_>>());
            let u = block.select_rows(&(p..self.n).collect::<Vec<_>>());
            let (expect, next) = self.forward_step(&x, &u);
            if expect != y {
                return Ok(false);
            }
            x = next;
        }
        Ok(x.is_zero())
    }

    /// True when every column of `g` is a codeword.
    pub fn contains_all(&self, g: &PolyMatrix) -> Result<bool> {
        for j in 0..g.cols() {
            if !self.contains(&g.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `T(z) = C (zI - A)^{-1} B + D` as `(numerator, denominator)` with
    /// numerator `C adj(zI - A) B + det(zI - A) D`. No cancellation.
    pub fn transfer_function(&self) -> Result<(PolyMatrix, Poly)> {
        let spec = self.spec();
        let zi_minus_a = PolyMatrix::from_coefficients(
            spec,
            self.delta,
            self.delta,
            &[self.a.neg(), Matrix::identity(spec, self.delta)],
        );
        let den = zi_minus_a.determinant()?;
        let adj = zi_minus_a.adjugate()?;
        let c = PolyMatrix::from_constant(&self.c);
        let b = PolyMatrix::from_constant(&self.b);
        let num = c
            .mul(&adj)?
            .mul(&b)?
            .add(&PolyMatrix::from_constant(&self.d).scale(&den))?;
        Ok((num, den))
    }

    /// Forward simulation from `x_0 = 0` over the given time-ordered inputs.
    /// Returns the blocks `(y_t; u_t)` and the states `x_0..x_T`.
    pub fn simulate(&self, inputs: &[Matrix]) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        let mut x = Matrix::zeros(self.spec(), self.delta, 1);
        let mut states = vec![x.clone()];
        let mut blocks = Vec::with_capacity(inputs.len());
        for u in inputs {
            if u.rows() != self.k || u.cols() != 1 {
                return Err(Error::DimensionMismatch("input block shape".into()));
            }
            let (y, next) = self.forward_step(&x, u);
            blocks.push(y.vstack(u)?);
            x = next;
            states.push(x.clone());
        }
        Ok((blocks, states))
    }
}

/// `[B | AB | ... | A^{steps-1} B]`.
pub fn controllability_matrix(a: &Matrix, b: &Matrix, steps: usize) -> Result<Matrix> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("A must be square with as many rows as B".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let mut out = b.clone();
    let mut cur = b.clone();
    for _ in 1..steps {
        cur = a.try_mul(&cur)?;
        out = out.hstack(&cur)?;
    }
    Ok(out)
}

/// `[C; CA; ...; C A^{steps-1}]`.
pub fn observability_matrix(a: &Matrix, c: &Matrix, steps: usize) -> Result<Matrix> {
    if !a.is_square() || a.cols() != c.cols() {
        return Err(Error::DimensionMismatch("A must be square with as many columns as C".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let mut out = c.clone();
    let mut cur = c.clone();
    for _ in 1..steps {
        cur = cur.try_mul(a)?;
        out = out.vstack(&cur)?;
    }
    Ok(out)
}

/// A system together with its lazily extracted encoder.
#[derive(Debug, Clone)]
pub struct CodeHandle {
    system: IsoSystem,
    encoder: OnceLock<PolyMatrix>,
}

impl CodeHandle {
    pub fn new(system: IsoSystem) -> CodeHandle {
        CodeHandle {
            system,
            encoder: OnceLock::new(),
        }
    }

    pub fn system(&self) -> &IsoSystem {
        &self.system
    }

    pub fn encoder(&self) -> Result<&PolyMatrix> {
        if let Some(g) = self.encoder.get() {
            return Ok(g);
        }
        let g = self.system.extract_encoder()?;
        Ok(self.encoder.get_or_init(|| g))
    }

    pub fn contains(&self, v: &PolyMatrix) -> Result<bool> {
        self.system.contains(v)
    }
}

/// Random element of the field, uniform over all `q` values.
pub fn random_element<R: rand::Rng>(spec: &FieldSpec, rng: &mut R) -> FieldElement {
    match spec.size_u64() {
        Some(q) => spec.from_index(rng.gen_range(0..q)),
        None => {
            let coeffs: Vec<u64> = (0..spec.r()).map(|_| rng.gen_range(0..spec.p())).collect();
            spec.element(&coeffs).expect("coefficients in range")
        }
    }
}

pub fn random_matrix<R: rand::Rng>(spec: &FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(spec, rows, cols, |_, _| random_element(spec, rng))
}

/// Random invertible matrix by rejection sampling.
pub fn random_invertible<R: rand::Rng>(spec: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(spec, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Uniformly random system of the given shape.
pub fn random_system<R: rand::Rng>(spec: &FieldSpec, n: usize, k: usize, delta: usize, rng: &mut R) -> Result<IsoSystem> {
    if k == 0 || k >= n || delta == 0 {
        return Err(Error::InvalidArgument(format!(
            "invalid parameters (n, k, delta) = ({n}, {k}, {delta})"
        )));
    }
    let a = random_matrix(spec, delta, delta, rng);
    let b = random_matrix(spec, delta, k, rng);
    let c = random_matrix(spec, n - k, delta, rng);
    let d = random_matrix(spec, n - k, k, rng);
    IsoSystem::new(a, b, c, d)
}
