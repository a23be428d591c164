//! Erasure channel and the sliding-window decoder.
//!
//! A transmitted stream is the time-ordered sequence of blocks
//! `v_t = (y_t; u_t)` produced by the forward recursion from `x_0 = 0`.
//! Each window of `L + 1` blocks starting at `t` satisfies
//! `Ω_{L+1} x_t + [-I | F_L] v = 0`, which is solved for the erased symbols
//! (and for `x_t` when the state is not known).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{build_windows, operator_column, WindowMatrices};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;
use crate::system::{random_element, IsoSystem};

/// Received symbols; `None` marks an erasure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedWord {
    pub n: usize,
    pub symbols: Vec<Option<FieldElement>>,
}

impl ErasedWord {
    pub fn new(n: usize, symbols: Vec<Option<FieldElement>>) -> Result<ErasedWord> {
        if n == 0 || !symbols.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch(format!(
                "stream length {} is not a multiple of n = {n}",
                symbols.len()
            )));
        }
        Ok(ErasedWord { n, symbols })
    }

    pub fn blocks(&self) -> usize {
        self.symbols.len() / self.n
    }

    pub fn erasure_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    pub fn erased_positions(&self) -> Vec<usize> {
        (0..self.symbols.len()).filter(|&i| self.symbols[i].is_none()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelModel {
    /// Each symbol erased independently with probability `eps`.
    Iid { eps: f64 },
    /// Bursts of `len` erasures every `len + gap` symbols, starting at a
    /// seeded offset.
    Burst { len: usize, gap: usize },
}

/// Erases symbols of `v` using ChaCha8 seeded with `seed`.
pub fn channel_erase(v: &[FieldElement], n: usize, model: ChannelModel, seed: u64) -> Result<ErasedWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask: Vec<bool> = match model {
        ChannelModel::Iid { eps } => {
            if !(0.0..=1.0).contains(&eps) {
                return Err(Error::InvalidArgument(format!(
                    "erasure probability {eps} is outside [0, 1]"
                )));
            }
            v.iter().map(|_| rng.gen::<f64>() < eps).collect()
        }
        ChannelModel::Burst { len, gap } => {
            let period = len + gap;
            if period == 0 {
                return Err(Error::InvalidArgument("burst period must be positive".into()));
            }
            let offset = rng.gen_range(0..period);
            (0..v.len()).map(|i| (i + offset) % period < len).collect()
        }
    };
    let symbols = v
        .iter()
        .zip(mask)
        .map(|(s, erased)| (!erased).then(|| s.clone()))
        .collect();
    ErasedWord::new(n, symbols)
}

/// Random input stream of `blocks` blocks and its transmitted symbols.
pub fn random_codeword_stream(sys: &IsoSystem, blocks: usize, seed: u64) -> Result<Vec<FieldElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = sys.spec();
    let inputs: Vec<Matrix> = (0..blocks)
        .map(|_| Matrix::column_vector(spec, (0..sys.k()).map(|_| random_element(spec, &mut rng)).collect()))
        .collect();
    let (out, _) = sys.simulate(&inputs)?;
    Ok(out.into_iter().flat_map(|b| b.col(0)).collect())
}

/// Outcome of one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowOutcome {
    /// Every erasure in the window was determined.
    Recovered {
        symbols: Vec<FieldElement>,
        /// State entering the window (solved for when it was unknown).
        state: Matrix,
        /// State after the first block.
        next_state: Matrix,
    },
    /// The linear system has more than one solution.
    Underdetermined,
}

/// Decodes one window of `(L' + 1) n` symbols. With `state = Some(x_t)` the
/// unknowns are the erased symbols; with `None` the entering state is
/// solved for as well.
pub fn decode_window(sys: &IsoSystem, state: Option<&Matrix>, window: &[Option<FieldElement>]) -> Result<WindowOutcome> {
    let n = sys.n();
    if window.is_empty() || !window.len().is_multiple_of(n) {
        return Err(Error::DimensionMismatch("window length must be a positive multiple of n".into()));
    }
    let l = window.len() / n - 1;
    let w = build_windows(sys, l);
    decode_window_with(sys, &w, state, window)
}

fn decode_window_with(
    sys: &IsoSystem,
    w: &WindowMatrices,
    state: Option<&Matrix>,
    window: &[Option<FieldElement>],
) -> Result<WindowOutcome> {
    let spec = sys.spec();
    let n = sys.n();
    let l = w.l;
    let op = w.erasure_operator();
    let mut erased_cols = Vec::new();
    let mut erased_pos = Vec::new();
    let mut known_cols = Vec::new();
    let mut known_vals = Vec::new();
    for (pos, s) in window.iter().enumerate() {
        let col = operator_column(sys, l, pos / n, pos % n);
        match s {
            None => {
                erased_cols.push(col);
                erased_pos.push(pos);
            }
            Some(v) => {
                known_cols.push(col);
                known_vals.push(v.clone());
            }
        }
    }
    let known = Matrix::column_vector(spec, known_vals);
    let mut rhs = (&op.select_cols(&known_cols) * &known).neg();
    let lhs = match state {
        Some(x) => {
            rhs = &rhs - &(&w.omega * x);
            op.select_cols(&erased_cols)
        }
        None => w.omega.hstack(&op.select_cols(&erased_cols))?,
    };
    let sol = lhs.solve(&rhs)?;
    let Some(x) = sol.particular.as_ref() else {
        return Err(Error::InvalidArgument(
            "window equations are inconsistent; the stream does not belong to this system".into(),
        ));
    };
    if sol.kernel.cols() > 0 {
        return Ok(WindowOutcome::Underdetermined);
    }
    let offset = if state.is_some() { 0 } else { sys.delta() };
    let entering = match state {
        Some(s) => s.clone(),
        None => x.select_rows(&(0..sys.delta()).collect::<Vec<_>>()),
    };
    let mut symbols: Vec<FieldElement> = Vec::with_capacity(window.len());
    let mut next_erased = 0;
    for s in window {
        match s {
            Some(v) => symbols.push(v.clone()),
            None => {
                symbols.push(x.get(offset + next_erased, 0).clone());
                next_erased += 1;
            }
        }
    }
    let u0 = Matrix::column_vector(spec, symbols[sys.p()..n].to_vec());
    let next_state = &(sys.a() * &entering) + &(sys.b() * &u0);
    debug_assert_eq!(erased_pos.len(), next_erased);
    Ok(WindowOutcome::Recovered {
        symbols,
        state: entering,
        next_state,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeStats {
    pub erasures: usize,
    pub recovered: usize,
    pub unresolved: usize,
    pub windows_processed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeReport {
    /// Decoded stream; `None` where an erasure stayed unresolved.
    pub recovered: Vec<Option<FieldElement>>,
    /// Window start blocks where in-window recovery failed with a known
    /// state; the state is dropped there.
    pub failures: Vec<usize>,
    /// Window start blocks where the state was re-established after loss.
    pub reanchors: Vec<usize>,
    /// `x_t` for `t = 0..=blocks`, `None` while the state is unknown.
    pub states: Vec<Option<Matrix>>,
    pub stats: DecodeStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DecodeOptions {
    /// Slide by `L + 1` blocks after a successful window instead of one.
    pub jump: bool,
}

/// Sliding-window decoding from `x_0 = 0`.
///
/// With a known state the window at `t` is solved whenever it contains
/// erasures; success fills every erasure in it, failure drops the state and
/// leaves block `t`'s erasures unresolved. While the state is unknown each
/// window is solved jointly for `x_t` and its erasures, which succeeds at
/// the latest on `L + 1` clean blocks when `Σ` is observable. Windows near
/// the end of the stream are shortened.
pub fn decode_stream(sys: &IsoSystem, l: usize, received: &ErasedWord, opts: DecodeOptions) -> Result<DecodeReport> {
    let n = sys.n();
    if received.n != n {
        return Err(Error::DimensionMismatch(format!(
            "stream block size {} differs from n = {n}",
            received.n
        )));
    }
    let blocks = received.blocks();
    let p = sys.p();
    let spec = sys.spec();
    let windows: Vec<WindowMatrices> = (0..=l).map(|ll| build_windows(sys, ll)).collect();
    let mut rec = received.symbols.clone();
    let mut states: Vec<Option<Matrix>> = vec![None; blocks + 1];
    states[0] = Some(Matrix::zeros(spec, sys.delta(), 1));
    let mut failures = Vec::new();
    let mut reanchors = Vec::new();
    let mut processed = 0;
    let mut t = 0;
    while t < blocks {
        let ll = l.min(blocks - 1 - t);
        let range = t * n..(t + ll + 1) * n;
        let has_erasures = rec[range.clone()].iter().any(Option::is_none);
        let state = states[t].clone();
        if let (Some(x), false) = (&state, has_erasures) {
            let u = Matrix::column_vector(
                spec,
                rec[t * n + p..(t + 1) * n].iter().map(|s| s.clone().unwrap()).collect(),
            );
            states[t + 1] = Some(&(sys.a() * x) + &(sys.b() * &u));
            t += 1;
            continue;
        }
        processed += 1;
        let outcome = decode_window_with(sys, &windows[ll], state.as_ref(), &rec[range.clone()])?;
        match outcome {
            WindowOutcome::Recovered {
                symbols,
                state: entering,
                next_state,
            } => {
                if state.is_none() {
                    reanchors.push(t);
                    states[t] = Some(entering.clone());
                }
                for (slot, s) in rec[range].iter_mut().zip(symbols) {
                    *slot = Some(s);
                }
                states[t + 1] = Some(next_state);
                if opts.jump {
                    // advance through the rest of the now complete window
                    let end = t + ll + 1;
                    for tt in t + 1..end {
                        let x = states[tt].clone().expect("state known");
                        let u = Matrix::column_vector(
                            spec,
                            rec[tt * n + p..(tt + 1) * n].iter().map(|s| s.clone().unwrap()).collect(),
                        );
                        states[tt + 1] = Some(&(sys.a() * &x) + &(sys.b() * &u));
                    }
                    t = end;
                } else {
                    t += 1;
                }
            }
            WindowOutcome::Underdetermined => {
                if state.is_some() {
                    failures.push(t);
                }
                states[t + 1] = None;
                t += 1;
            }
        }
    }
    let erasures = received.erasure_count();
    let unresolved = rec.iter().filter(|s| s.is_none()).count();
    Ok(DecodeReport {
        recovered: rec,
        failures,
        reanchors,
        states,
        stats: DecodeStats {
            erasures,
            recovered: erasures - unresolved,
            unresolved,
            windows_processed: processed,
        },
    })
}
