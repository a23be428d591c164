//! Windowed decoding matrices, output observability, GDP, MDP and
//! distances.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::{
    is_superregular, Combinations, Matrix, SuperregularReport, SupportPattern, DEFAULT_MINOR_BUDGET,
};
use crate::system::{observability_matrix, IsoSystem};

/// Default cap on exhaustive enumerations (subsets, inputs).
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// `L = ⌊δ/k⌋ + ⌊δ/(n-k)⌋`.
pub fn window_length(n: usize, k: usize, delta: usize) -> usize {
    delta / k + delta / (n - k)
}

/// Generalized Singleton bound `(n-k)(⌊δ/k⌋ + 1) + δ + 1`.
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> usize {
    (n - k) * (delta / k + 1) + delta + 1
}

/// Column distance bound `(n-k)(j+1) + 1`.
pub fn column_bound(n: usize, k: usize, j: usize) -> usize {
    (n - k) * (j + 1) + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMatrices {
    pub l: usize,
    /// `Ω_{L+1}(A, C)`, `(L+1)(n-k) x δ`.
    pub omega: Matrix,
    /// `F_L`, `(L+1)(n-k) x (L+1)k`.
    pub f: Matrix,
    /// `T_L = [Ω_{L+1} | F_L]`.
    pub t: Matrix,
    /// `(L+1)(n-k) - δ`; negative when the window is too short.
    pub alpha: i64,
}

impl WindowMatrices {
    /// Support class of `F_L`: blocks above the diagonal vanish.
    pub fn f_pattern(&self, sys: &IsoSystem) -> SupportPattern {
        SupportPattern::block_lower_triangular(self.l + 1, sys.p(), sys.k())
    }

    /// Support class of `T_L`: `Ω` is full, `F_L` block lower triangular.
    pub fn t_pattern(&self, sys: &IsoSystem) -> SupportPattern {
        SupportPattern::full(self.omega.rows(), self.omega.cols()).hstack(&self.f_pattern(sys))
    }

    /// `[-I | F_L]`: columns are `y_t..y_{t+L}` then `u_t..u_{t+L}`.
    pub fn erasure_operator(&self) -> Matrix {
        let rows = self.f.rows();
        Matrix::identity(self.f.spec(), rows)
            .neg()
            .hstack(&self.f)
            .expect("same row count")
    }
}

/// Column of `[-I | F_L]` holding the symbol at window position
/// `(block, index)`, where `index < n - k` is a parity symbol and the rest
/// are information symbols.
pub fn operator_column(sys: &IsoSystem, l: usize, block: usize, index: usize) -> usize {
    let p = sys.p();
    if index < p {
        block * p + index
    } else {
        (l + 1) * p + block * sys.k() + (index - p)
    }
}

/// Inverse of [`operator_column`].
pub fn column_position(sys: &IsoSystem, l: usize, col: usize) -> (usize, usize) {
    let p = sys.p();
    let y_cols = (l + 1) * p;
    if col < y_cols {
        (col / p, col % p)
    } else {
        let c = col - y_cols;
        (c / sys.k(), p + c % sys.k())
    }
}

pub fn build_windows(sys: &IsoSystem, l: usize) -> WindowMatrices {
    let spec = sys.spec();
    let (p, k) = (sys.p(), sys.k());
    let omega = observability_matrix(sys.a(), sys.c(), l + 1).expect("validated system");
    // markov[j] = C A^{j-1} B for j >= 1, markov[0] = D
    let mut markov = vec![sys.d().clone()];
    let mut ab = sys.b().clone();
    for _ in 1..=l {
        markov.push(sys.c() * &ab);
        ab = sys.a() * &ab;
    }
    let mut f = Matrix::zeros(spec, (l + 1) * p, (l + 1) * k);
    for i in 0..=l {
        for j in 0..=i {
            f.set_block(i * p, j * k, &markov[i - j]);
        }
    }
    let t = omega.hstack(&f).expect("same row count");
    let alpha = ((l + 1) * p) as i64 - sys.delta() as i64;
    WindowMatrices { l, omega, f, t, alpha }
}

/// `rank(T_{L'})` is maximal for every `L'` in `1..=l`.
pub fn is_output_observable(sys: &IsoSystem, l: usize) -> bool {
    (1..=l.max(1)).all(|ll| build_windows(sys, ll).t.has_full_rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdpReport {
    pub gdp: bool,
    pub alpha: usize,
    /// First failing column set of `[-I | F_L]` (lexicographic).
    pub failing: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

/// The restricted admissibility filter. In transmission order (block by
/// block, `n` symbols each) the chosen positions must extend to a set
/// `i_1 < .. < i_{(L+1)(n-k)}` with `i_{s(n-k)} <= s n` for every `s`.
/// Filling the set with the earliest unchosen positions is optimal, so the
/// check is exact. In effect the last `r` blocks may hold at most `r (n-k)`
/// chosen positions.
pub fn restricted_admissible(sys: &IsoSystem, l: usize, cols: &[usize]) -> bool {
    let (n, p) = (sys.n(), sys.p());
    let len = (l + 1) * n;
    let mut chosen = vec![false; len];
    for &c in cols {
        let (b, i) = column_position(sys, l, c);
        chosen[b * n + i] = true;
    }
    let want = (l + 1) * p;
    if cols.len() > want {
        return false;
    }
    let mut extra = want - cols.len();
    let mut set = Vec::with_capacity(want);
    for (pos, &c) in chosen.iter().enumerate() {
        if c {
            set.push(pos);
        } else if extra > 0 {
            extra -= 1;
            set.push(pos);
        }
    }
    set.len() == want && (1..=l + 1).all(|s| p == 0 || set[s * p - 1] < s * n)
}

/// Good decodable property: `[Ω_{L+1} | F_α]` has full rank for every
/// α-subset of columns of `[-I | F_L]` (optionally only the admissible
/// ones).
pub fn is_gdp(sys: &IsoSystem, l: usize, restricted: bool, budget: u64) -> Result<GdpReport> {
    let w = build_windows(sys, l);
    if w.alpha < 0 {
        return Err(Error::WindowTooShort(w.alpha));
    }
    let alpha = w.alpha as usize;
    let op = w.erasure_operator();
    let total = crate::matrix::binomial(op.cols(), alpha);
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{total} column subsets exceed the budget of {budget}"
        )));
    }
    let rows = w.omega.rows();
    let mut checked = 0;
    for cols in Combinations::new(op.cols(), alpha) {
        if restricted && !restricted_admissible(sys, l, &cols) {
            continue;
        }
        checked += 1;
        let m = w.omega.hstack(&op.select_cols(&cols))?;
        if m.rank() < rows {
            return Ok(GdpReport {
                gdp: false,
                alpha,
                failing: Some(cols),
                subsets_checked: checked,
            });
        }
    }
    Ok(GdpReport {
        gdp: true,
        alpha,
        failing: None,
        subsets_checked: checked,
    })
}

/// Every non-trivially-zero minor of `F_L` is nonzero. `D = 0` is rejected.
pub fn is_mdp_minors(sys: &IsoSystem, l: usize, budget: u64) -> Result<SuperregularReport> {
    if sys.d().is_zero() {
        return Err(Error::InvalidArgument("D = 0 cannot give an MDP code".into()));
    }
    let w = build_windows(sys, l);
    is_superregular(&w.f, &w.f_pattern(sys), budget)
}

/// Superregularity of `T_L` with its structural pattern.
pub fn is_superregular_tl(sys: &IsoSystem, l: usize, budget: u64) -> Result<SuperregularReport> {
    let w = build_windows(sys, l);
    is_superregular(&w.t, &w.t_pattern(sys), budget)
}

fn weight(m: &Matrix) -> usize {
    (0..m.rows()).filter(|&i| !m.get(i, 0).is_zero()).count()
}

fn field_size(sys: &IsoSystem) -> Result<u64> {
    sys.spec()
        .size_u64()
        .ok_or_else(|| Error::BudgetExceeded("field too large to enumerate".into()))
}

/// All input blocks `u ∈ F^k`, in index order.
fn input_blocks(sys: &IsoSystem) -> Result<Vec<Matrix>> {
    let q = field_size(sys)?;
    let k = sys.k();
    let count = q
        .checked_pow(k as u32)
        .ok_or_else(|| Error::BudgetExceeded("input alphabet too large".into()))?;
    let spec = sys.spec();
    Ok((0..count)
        .map(|mut idx| {
            let v: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let e = spec.from_index(idx % q);
                    idx /= q;
                    e
                })
                .collect();
            Matrix::column_vector(spec, v)
        })
        .collect())
}

fn enumeration_size(sys: &IsoSystem, depth: usize, budget: u64) -> Result<()> {
    let q = field_size(sys)? as u128;
    let total = q
        .checked_pow((sys.k() * (depth + 1)) as u32)
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} input sequences exceed the budget of {budget}"
        )));
    }
    Ok(())
}

struct Walk<'a> {
    sys: &'a IsoSystem,
    inputs: &'a [Matrix],
    /// best[j] = min weight over truncations of length j+1
    column: Vec<usize>,
    /// best codeword weight found with input length t+1
    free: Vec<usize>,
    track_free: bool,
}

impl<'a> Walk<'a> {
    fn step(&mut self, x: &Matrix, t: usize, acc: usize) {
        let inputs = self.inputs;
        for (idx, u) in inputs.iter().enumerate() {
            if t == 0 && idx == 0 {
                continue; // u_0 = 0 excluded
            }
            let y = &(self.sys.c() * x) + &(self.sys.d() * u);
            let w = acc + weight(&y) + weight(u);
            let next = &(self.sys.a() * x) + &(self.sys.b() * u);
            if w < self.column[t] {
                self.column[t] = w;
            }
            if self.track_free {
                if let Some(tail) = flush_weight(self.sys, &next) {
                    let total = w + tail;
                    if total < self.free[t] {
                        self.free[t] = total;
                    }
                }
            }
            if t + 1 < self.column.len() {
                self.step(&next, t + 1, w);
            }
        }
    }
}

/// Weight of the zero-input tail from state `x`, if the state dies out.
fn flush_weight(sys: &IsoSystem, x: &Matrix) -> Option<usize> {
    let mut x = x.clone();
    let mut w = 0;
    for _ in 0..=sys.delta() {
        if x.is_zero() {
            return Some(w);
        }
        w += weight(&(sys.c() * &x));
        x = sys.a() * &x;
    }
    None
}

/// Column distances `d_0^c .. d_j^c` by exhaustive enumeration of the
/// truncated inputs `u_0 ≠ 0, u_1, .., u_j` from `x_0 = 0`.
pub fn column_distances(sys: &IsoSystem, j: usize, budget: u64) -> Result<Vec<usize>> {
    enumeration_size(sys, j, budget)?;
    let inputs = input_blocks(sys)?;
    let mut walk = Walk {
        sys,
        inputs: &inputs,
        column: vec![usize::MAX; j + 1],
        free: vec![usize::MAX; j + 1],
        track_free: false,
    };
    walk.step(&Matrix::zeros(sys.spec(), sys.delta(), 1), 0, 0);
    Ok(walk.column)
}

pub fn column_distance(sys: &IsoSystem, j: usize, budget: u64) -> Result<usize> {
    Ok(column_distances(sys, j, budget)?[j])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDistance {
    pub value: usize,
    pub horizon: usize,
    /// Running minimum after each input length `1..=horizon+1`.
    pub history: Vec<usize>,
    pub column_distances: Vec<usize>,
    pub converged: bool,
}

/// Minimum weight over codewords whose input has at most `horizon + 1`
/// blocks (zero flush appended). `converged` requires the running minimum
/// to be stable over the last two horizons and to equal a column distance
/// that has itself stopped growing.
pub fn free_distance_estimate(sys: &IsoSystem, horizon: usize, budget: u64) -> Result<FreeDistance> {
    enumeration_size(sys, horizon, budget)?;
    let inputs = input_blocks(sys)?;
    let mut walk = Walk {
        sys,
        inputs: &inputs,
        column: vec![usize::MAX; horizon + 1],
        free: vec![usize::MAX; horizon + 1],
        track_free: true,
    };
    walk.step(&Matrix::zeros(sys.spec(), sys.delta(), 1), 0, 0);
    let mut history = Vec::with_capacity(horizon + 1);
    let mut best = usize::MAX;
    for &f in &walk.free {
        best = best.min(f);
        history.push(best);
    }
    let cd = walk.column;
    let stable = horizon >= 1 && history[horizon] == history[horizon - 1];
    let matches_column = (1..cd.len()).any(|j| cd[j] == cd[j - 1] && cd[j] == best);
    Ok(FreeDistance {
        value: best,
        horizon,
        history,
        column_distances: cd,
        converged: stable && matches_column && best != usize::MAX,
    })
}

/// `d_j^c` meets `(n-k)(j+1) + 1` for `j = 0..=l`.
pub fn is_mdp_distances(sys: &IsoSystem, l: usize, budget: u64) -> Result<bool> {
    let cd = column_distances(sys, l, budget)?;
    Ok(cd
        .iter()
        .enumerate()
        .all(|(j, &d)| d == column_bound(sys.n(), sys.k(), j)))
}

/// Converged free distance equal to the generalized Singleton bound.
pub fn is_mds(sys: &IsoSystem, horizon: usize, budget: u64) -> Result<bool> {
    let fd = free_distance_estimate(sys, horizon, budget)?;
    Ok(fd.converged && fd.value == singleton_bound(sys.n(), sys.k(), sys.delta()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub dfree_upper: usize,
    pub dfree_estimate: FreeDistance,
    pub column_distances: Vec<usize>,
    pub is_mds: bool,
    pub is_mdp: bool,
}

pub fn distance_profile(sys: &IsoSystem, l: usize, horizon: usize, budget: u64) -> Result<DistanceProfile> {
    let h = horizon.max(l);
    let fd = free_distance_estimate(sys, h, budget)?;
    let column_distances: Vec<usize> = fd.column_distances[..=l].to_vec();
    let is_mdp = column_distances
        .iter()
        .enumerate()
        .all(|(j, &d)| d == column_bound(sys.n(), sys.k(), j));
    let upper = singleton_bound(sys.n(), sys.k(), sys.delta());
    Ok(DistanceProfile {
        dfree_upper: upper,
        is_mds: fd.converged && fd.value == upper,
        dfree_estimate: fd,
        column_distances,
        is_mdp,
    })
}

/// Structural flags of a system at window parameter `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub reachable: bool,
    pub observable: bool,
    pub output_observable: bool,
    pub gdp: Option<bool>,
    pub mdp_minors: Option<bool>,
    pub f_full_rank: bool,
}

/// Flags that do not need exhaustive distance enumeration. `gdp` is `None`
/// when the window is too short and `mdp_minors` when `D = 0` or the minor
/// budget is exceeded.
pub fn structural_flags(sys: &IsoSystem, l: usize) -> Flags {
    Flags {
        reachable: sys.is_reachable(),
        observable: sys.is_observable(),
        output_observable: is_output_observable(sys, l),
        gdp: is_gdp(sys, l, false, DEFAULT_ENUM_BUDGET).ok().map(|r| r.gdp),
        mdp_minors: is_mdp_minors(sys, l, DEFAULT_MINOR_BUDGET)
            .ok()
            .map(|r| r.superregular),
        f_full_rank: build_windows(sys, l).f.has_full_rank(),
    }
}
