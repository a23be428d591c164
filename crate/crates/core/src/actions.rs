//! Group actions on I/S/O systems.
//!
//! * state `S`:       `(S^{-1} A S, S^{-1} B, C S, D)`
//! * parity `Q`:      `(A, B Q, C, D Q)`
//! * information `H`: `(A, B, H^{-1} C, H^{-1} D)`

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::system::IsoSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionKind {
    State,
    Parity,
    Information,
}

impl ActionKind {
    pub fn name(self) -> &'static str {
        match self {
            ActionKind::State => "state",
            ActionKind::Parity => "parity",
            ActionKind::Information => "information",
        }
    }

    pub fn parse(s: &str) -> Result<ActionKind> {
        match s {
            "state" => Ok(ActionKind::State),
            "parity" => Ok(ActionKind::Parity),
            "information" => Ok(ActionKind::Information),
            other => Err(Error::Parse(format!(
                "unknown action kind {other:?} (expected state, parity or information)"
            ))),
        }
    }

    /// Size of the acting matrix for a system.
    pub fn size_for(self, sys: &IsoSystem) -> usize {
        match self {
            ActionKind::State => sys.delta(),
            ActionKind::Parity => sys.k(),
            ActionKind::Information => sys.p(),
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    kind: ActionKind,
    matrix: Matrix,
}

impl ActionSpec {
    /// The matrix must be square and invertible.
    pub fn new(kind: ActionKind, matrix: Matrix) -> Result<ActionSpec> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("action matrix must be square".into()));
        }
        if matrix.rank() != matrix.rows() {
            return Err(Error::Singular);
        }
        Ok(ActionSpec { kind, matrix })
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.spec(), self.matrix.rows())
    }
}

pub fn apply_action(sys: &IsoSystem, act: &ActionSpec) -> Result<IsoSystem> {
    let m = &act.matrix;
    if m.spec() != sys.spec() {
        return Err(Error::FieldMismatch);
    }
    let want = act.kind.size_for(sys);
    if m.rows() != want {
        return Err(Error::DimensionMismatch(format!(
            "{} action needs a {want}x{want} matrix, got {}x{}",
            act.kind,
            m.rows(),
            m.cols()
        )));
    }
    let (a, b, c, d) = (sys.a(), sys.b(), sys.c(), sys.d());
    match act.kind {
        ActionKind::State => {
            let si = m.inverse()?;
            IsoSystem::new(&(&si * a) * m, &si * b, c * m, d.clone())
        }
        ActionKind::Parity => IsoSystem::new(a.clone(), b * m, c.clone(), d * m),
        ActionKind::Information => {
            let hi = m.inverse()?;
            IsoSystem::new(a.clone(), b.clone(), &hi * c, &hi * d)
        }
    }
}

/// Applies the actions left to right.
pub fn apply_all(sys: &IsoSystem, acts: &[ActionSpec]) -> Result<IsoSystem> {
    acts.iter().try_fold(sys.clone(), |s, a| apply_action(&s, a))
}

/// Composition "first `a1`, then `a2`". Same-kind actions merge into one
/// (`M1 M2` for every kind, since `S` and `Q` act on the right and `H^{-1}`
/// on the left). Actions of different kinds commute; the result is sorted
/// as state, parity, information.
pub fn compose_actions(a1: &ActionSpec, a2: &ActionSpec) -> Result<Vec<ActionSpec>> {
    normalize(&[a1.clone(), a2.clone()])
}

/// Merges a sequence of actions into at most one action per kind.
pub fn normalize(acts: &[ActionSpec]) -> Result<Vec<ActionSpec>> {
    let mut out: Vec<ActionSpec> = Vec::new();
    for kind in [ActionKind::State, ActionKind::Parity, ActionKind::Information] {
        let mut acc: Option<Matrix> = None;
        for a in acts.iter().filter(|a| a.kind == kind) {
            acc = Some(match acc {
                None => a.matrix.clone(),
                Some(m) => m.try_mul(&a.matrix)?,
            });
        }
        if let Some(m) = acc {
            out.push(ActionSpec { kind, matrix: m });
        }
    }
    Ok(out)
}

pub fn invert_action(act: &ActionSpec) -> ActionSpec {
    ActionSpec {
        kind: act.kind,
        matrix: act.matrix.inverse().expect("action matrices are invertible"),
    }
}
