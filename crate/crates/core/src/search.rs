//! Seeded system search, code families from group actions, equivalence
//! testing and an empirical probe of the diagonal-subgroup conjecture.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::actions::{apply_action, ActionKind, ActionSpec};
use crate::analysis::{
    build_windows, is_gdp, is_mdp_minors, is_output_observable, is_superregular_tl, window_length,
    DEFAULT_ENUM_BUDGET,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{Matrix, DEFAULT_MINOR_BUDGET};
use crate::poly::{Poly, PolyMatrix};
use crate::system::{random_element, random_invertible, random_system as draw_system, CodeHandle, IsoSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    Reachable,
    Observable,
    OutputObservable,
    Gdp,
    GdpRestricted,
    MdpMinors,
    SuperregularTl,
}

impl Flag {
    pub const ALL: [Flag; 7] = [
        Flag::Reachable,
        Flag::Observable,
        Flag::OutputObservable,
        Flag::Gdp,
        Flag::GdpRestricted,
        Flag::MdpMinors,
        Flag::SuperregularTl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Reachable => "reachable",
            Flag::Observable => "observable",
            Flag::OutputObservable => "output_observable",
            Flag::Gdp => "gdp",
            Flag::GdpRestricted => "gdp_restricted",
            Flag::MdpMinors => "mdp_minors",
            Flag::SuperregularTl => "superregular_tl",
        }
    }

    pub fn parse(s: &str) -> Result<Flag> {
        Flag::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown flag {s:?}")))
    }
}

/// Evaluates one flag at window parameter `l`. Checks whose preconditions
/// fail (short window, `D = 0`, exceeded budget) count as not holding.
pub fn check_flag(sys: &IsoSystem, flag: Flag, l: usize) -> bool {
    match flag {
        Flag::Reachable => sys.is_reachable(),
        Flag::Observable => sys.is_observable(),
        Flag::OutputObservable => is_output_observable(sys, l),
        Flag::Gdp => is_gdp(sys, l, false, DEFAULT_ENUM_BUDGET).is_ok_and(|r| r.gdp),
        Flag::GdpRestricted => is_gdp(sys, l, true, DEFAULT_ENUM_BUDGET).is_ok_and(|r| r.gdp),
        Flag::MdpMinors => is_mdp_minors(sys, l, DEFAULT_MINOR_BUDGET).is_ok_and(|r| r.superregular),
        Flag::SuperregularTl => is_superregular_tl(sys, l, DEFAULT_MINOR_BUDGET).is_ok_and(|r| r.superregular),
    }
}

#[derive(Clone, Debug)]
pub struct SearchCriteria {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub flags: Vec<Flag>,
    /// Maximum number of candidates drawn.
    pub budget: usize,
    pub seed: u64,
    /// Window parameter for windowed flags; defaults to the formula value.
    pub window_l: Option<usize>,
}

impl SearchCriteria {
    pub fn l(&self) -> usize {
        self.window_l
            .unwrap_or_else(|| window_length(self.n, self.k, self.delta))
    }
}

/// A passing candidate and its index in the seeded stream.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub index: usize,
    pub system: IsoSystem,
}

/// Seeded stream of uniformly random systems, filtered by the flags. Draws
/// at most `budget` candidates.
pub struct RandomSystems {
    criteria: SearchCriteria,
    rng: ChaCha8Rng,
    drawn: usize,
}

impl Iterator for RandomSystems {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        let c = &self.criteria;
        let l = c.l();
        while self.drawn < c.budget {
            let index = self.drawn;
            self.drawn += 1;
            let sys = draw_system(&c.field, c.n, c.k, c.delta, &mut self.rng).ok()?;
            if c.flags.iter().all(|&f| check_flag(&sys, f, l)) {
                return Some(Candidate { index, system: sys });
            }
        }
        None
    }
}

pub fn random_systems(criteria: SearchCriteria) -> Result<RandomSystems> {
    let (n, k, delta) = (criteria.n, criteria.k, criteria.delta);
    if k == 0 || k >= n || delta == 0 {
        return Err(Error::InvalidArgument(format!(
            "invalid parameters (n, k, delta) = ({n}, {k}, {delta})"
        )));
    }
    let rng = ChaCha8Rng::seed_from_u64(criteria.seed);
    Ok(RandomSystems {
        criteria,
        rng,
        drawn: 0,
    })
}

/// Properties that every group action preserves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFlags {
    pub reachable: bool,
    pub observable: bool,
    pub output_observable: bool,
    pub f_full_rank: bool,
}

impl FamilyFlags {
    fn of(sys: &IsoSystem, l: usize) -> FamilyFlags {
        FamilyFlags {
            reachable: sys.is_reachable(),
            observable: sys.is_observable(),
            output_observable: is_output_observable(sys, l),
            f_full_rank: build_windows(sys, l).f.has_full_rank(),
        }
    }

    fn regressions(&self, after: &FamilyFlags) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.reachable && !after.reachable {
            out.push("reachable");
        }
        if self.observable && !after.observable {
            out.push("observable");
        }
        if self.output_observable && !after.output_observable {
            out.push("output_observable");
        }
        if self.f_full_rank && !after.f_full_rank {
            out.push("f_full_rank");
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub action: ActionSpec,
    pub system: IsoSystem,
    pub flags: FamilyFlags,
}

/// Applies each action to `sys` and re-checks the preserved properties; a
/// regression is reported as an error.
pub fn generate_family(sys: &IsoSystem, actions: &[ActionSpec], l: usize) -> Result<Vec<FamilyMember>> {
    if !sys.is_reachable() || !sys.is_observable() {
        return Err(Error::InvalidArgument(
            "family generation needs a reachable and observable system".into(),
        ));
    }
    let base = FamilyFlags::of(sys, l);
    actions
        .iter()
        .map(|act| {
            let s = apply_action(sys, act)?;
            let flags = FamilyFlags::of(&s, l);
            let lost = base.regressions(&flags);
            if !lost.is_empty() {
                return Err(Error::Regression(format!(
                    "{} action lost {}",
                    act.kind(),
                    lost.join(", ")
                )));
            }
            Ok(FamilyMember {
                action: act.clone(),
                system: s,
                flags,
            })
        })
        .collect()
}

/// `(σ v)_i = v_{perm[i]}`.
pub fn permute_rows(v: &PolyMatrix, perm: &[usize]) -> PolyMatrix {
    v.select_rows(perm)
}

fn inverse_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `σ(C1) = C2` for this permutation.
    Permutation(Vec<usize>),
    /// A word of one code none of whose coordinate permutations lies in the
    /// other. `in_first` tells which code contains it.
    SeparatingWord { word: PolyMatrix, in_first: bool },
    /// Per permutation, a generator that fails to map into the other code:
    /// `(perm, from_first, column)`.
    PerPermutation(Vec<(Vec<usize>, bool, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub witness: Witness,
}

/// Largest `n` accepted by [`are_equivalent`].
pub const MAX_EQUIVALENCE_N: usize = 6;

/// Permutation equivalence of two codes by mutual membership of the
/// permuted generators.
pub fn are_equivalent(c1: &CodeHandle, c2: &CodeHandle) -> Result<EquivalenceVerdict> {
    let (s1, s2) = (c1.system(), c2.system());
    if s1.n() != s2.n() || s1.k() != s2.k() {
        return Err(Error::DimensionMismatch("codes have different (n, k)".into()));
    }
    if s1.spec() != s2.spec() {
        return Err(Error::FieldMismatch);
    }
    let n = s1.n();
    if n > MAX_EQUIVALENCE_N {
        return Err(Error::BudgetExceeded(format!(
            "n = {n} is too large for exhaustive permutation search"
        )));
    }
    let g1 = c1.encoder()?;
    let g2 = c2.encoder()?;
    let perms = permutations(n);
    let mut failures = Vec::new();
    for perm in &perms {
        let inv = inverse_perm(perm);
        let forward = first_outside(g1, perm, s2)?;
        let backward = match forward {
            Some(_) => None,
            None => first_outside(g2, &inv, s1)?,
        };
        match (forward, backward) {
            (None, None) => {
                return Ok(EquivalenceVerdict {
                    equivalent: true,
                    witness: Witness::Permutation(perm.clone()),
                })
            }
            (Some(j), _) => failures.push((perm.clone(), true, j)),
            (None, Some(j)) => failures.push((perm.clone(), false, j)),
        }
    }
    let witness = match separating_word(g1, s2, &perms)? {
        Some(word) => Witness::SeparatingWord { word, in_first: true },
        None => match separating_word(g2, s1, &perms)? {
            Some(word) => Witness::SeparatingWord { word, in_first: false },
            None => Witness::PerPermutation(failures),
        },
    };
    Ok(EquivalenceVerdict {
        equivalent: false,
        witness,
    })
}

fn first_outside(g: &PolyMatrix, perm: &[usize], other: &IsoSystem) -> Result<Option<usize>> {
    for j in 0..g.cols() {
        if !other.contains(&permute_rows(&g.column(j), perm))? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Looks for a word among the generators and their pairwise sums that no
/// permutation maps into `other`.
fn separating_word(g: &PolyMatrix, other: &IsoSystem, perms: &[Vec<usize>]) -> Result<Option<PolyMatrix>> {
    let mut candidates: Vec<PolyMatrix> = (0..g.cols()).map(|j| g.column(j)).collect();
    for i in 0..g.cols() {
        for j in i + 1..g.cols() {
            candidates.push(g.column(i).add(&g.column(j))?);
        }
    }
    for v in candidates {
        let mut outside_all = true;
        for perm in perms {
            if other.contains(&permute_rows(&v, perm))? {
                outside_all = false;
                break;
            }
        }
        if outside_all {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// True when `v` (and every coordinate permutation of it) lies outside the
/// code of `sys`.
pub fn outside_under_all_permutations(sys: &IsoSystem, v: &PolyMatrix) -> Result<bool> {
    for perm in permutations(v.rows()) {
        if sys.contains(&permute_rows(v, &perm))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSample {
    pub kind: ActionKind,
    pub matrix: Matrix,
    pub diagonal: bool,
    pub survives: bool,
    /// For non-diagonal survivors: whether every power of the matrix (its
    /// cyclic subgroup) also preserves superregularity.
    pub cyclic_closure: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub label: &'static str,
    pub seed: u64,
    pub l: usize,
    pub samples: Vec<ProbeSample>,
    pub control: Vec<ProbeSample>,
}

impl ProbeReport {
    pub fn survivors(&self) -> usize {
        self.samples.iter().filter(|s| s.survives).count()
    }

    pub fn control_survival(&self) -> usize {
        self.control.iter().filter(|s| s.survives).count()
    }

    /// Non-diagonal survivors whose whole cyclic subgroup survives.
    pub fn candidates(&self) -> Vec<&ProbeSample> {
        self.samples
            .iter()
            .filter(|s| s.cyclic_closure == Some(true))
            .collect()
    }
}

pub const PROBE_LABEL: &str = "empirical evidence only";

/// Powers tried before the closure check gives up (reported as `None`).
pub const MAX_CYCLIC_ORDER: usize = 64;

fn random_non_diagonal(spec: &FieldSpec, size: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_invertible(spec, size, rng);
        if !m.is_diagonal() {
            return m;
        }
    }
}

fn random_diagonal(spec: &FieldSpec, size: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let d: Vec<_> = (0..size)
        .map(|_| loop {
            let e = random_element(spec, rng);
            if !e.is_zero() {
                break e;
            }
        })
        .collect();
    Matrix::diagonal(spec, &d)
}

fn survives(sys: &IsoSystem, act: &ActionSpec, l: usize) -> Result<bool> {
    let s = apply_action(sys, act)?;
    Ok(is_mdp_minors(&s, l, DEFAULT_MINOR_BUDGET)?.superregular)
}

/// `None` when the order of `m` exceeds [`MAX_CYCLIC_ORDER`].
fn cyclic_closure(sys: &IsoSystem, kind: ActionKind, m: &Matrix, l: usize) -> Result<Option<bool>> {
    let id = Matrix::identity(m.spec(), m.rows());
    let mut powers = vec![m.clone()];
    while powers.last() != Some(&id) {
        if powers.len() >= MAX_CYCLIC_ORDER {
            return Ok(None);
        }
        let next = powers.last().expect("non-empty") * m;
        powers.push(next);
    }
    powers.pop();
    // m itself was already checked by the caller
    for power in powers.into_iter().skip(1) {
        if !survives(sys, &ActionSpec::new(kind, power)?, l)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Samples non-diagonal invertible `Q` (and `H` when `n - k > 1`) and
/// records whether superregularity of `F_L` survives the action. A
/// diagonal control group of the same size is sampled alongside.
pub fn conjecture_probe(sys: &IsoSystem, trials: usize, seed: u64, l: usize) -> Result<ProbeReport> {
    let base = is_mdp_minors(sys, l, DEFAULT_MINOR_BUDGET)?;
    if !base.superregular {
        let at = base
            .witness
            .map(|m| format!(" (rows {:?}, columns {:?})", m.rows, m.cols))
            .unwrap_or_default();
        return Err(Error::NotMdp(format!("F_L has a vanishing non-trivial minor{at}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = sys.spec();
    let mut kinds = vec![ActionKind::Parity];
    if sys.p() > 1 {
        kinds.push(ActionKind::Information);
    }
    let mut samples = Vec::with_capacity(trials);
    let mut control = Vec::with_capacity(trials);
    for t in 0..trials {
        let kind = kinds[t % kinds.len()];
        let size = kind.size_for(sys);
        if size > 1 {
            let m = random_non_diagonal(spec, size, &mut rng);
            let ok = survives(sys, &ActionSpec::new(kind, m.clone())?, l)?;
            let closure = if ok { cyclic_closure(sys, kind, &m, l)? } else { None };
            samples.push(ProbeSample {
                kind,
                matrix: m,
                diagonal: false,
                survives: ok,
                cyclic_closure: closure,
            });
        }
        let d = random_diagonal(spec, size, &mut rng);
        let ok = survives(sys, &ActionSpec::new(kind, d.clone())?, l)?;
        control.push(ProbeSample {
            kind,
            matrix: d,
            diagonal: true,
            survives: ok,
            cyclic_closure: None,
        });
    }
    Ok(ProbeReport {
        label: PROBE_LABEL,
        seed,
        l,
        samples,
        control,
    })
}

/// Convenience: a constant polynomial column from integers.
pub fn int_column(spec: &FieldSpec, coeffs: &[&[i64]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        spec,
        coeffs.iter().map(|c| vec![Poly::from_ints(spec, c)]).collect(),
    )
    .expect("single column")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ex1;

    #[test]
    fn permutation_listing() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn code_is_equivalent_to_itself() {
        let c = CodeHandle::new(ex1());
        let v = are_equivalent(&c, &c).unwrap();
        assert!(v.equivalent);
        assert_eq!(v.witness, Witness::Permutation(vec![0, 1, 2]));
    }

    #[test]
    fn flag_names_round_trip() {
        for f in Flag::ALL {
            assert_eq!(Flag::parse(f.name()).unwrap(), f);
        }
        assert!(Flag::parse("bogus").is_err());
    }

    #[test]
    fn empty_family() {
        assert!(generate_family(&ex1(), &[], 3).unwrap().is_empty());
    }
}
