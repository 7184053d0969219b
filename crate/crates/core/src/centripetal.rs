//! The Game map `a ↦ a_σ`, its fixpoints, the step count `n(a)` and the cone
//! of central minorants.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::mv::MvElement;
use crate::spectra::{below_order, SpectrumPoint};
use crate::term::Term;

/// Successive σ-images of `start`.
///
/// `steps[0] == start`, `steps[k + 1] == steps[k]_σ`, and `n` is the least
/// index with `steps[n] == steps[n + 1]`; the trace stores `n + 2` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTrace {
    pub steps: Vec<MvElement>,
    pub n: usize,
}

impl GameTrace {
    pub fn start(&self) -> &MvElement {
        &self.steps[0]
    }

    pub fn fixpoint(&self) -> &MvElement {
        &self.steps[self.n]
    }
}

/// `2/5 → 1/5 → 0; n=2`
impl fmt::Display for GameTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.steps[..=self.n].iter().map(|e| e.to_string()).collect();
        write!(f, "{}; n={}", path.join(" → "), self.n)
    }
}

pub fn game_step(a: &MvElement) -> MvElement {
    a.apply_term(&Term::sigma())
}

/// Iterates [`game_step`] to its exact fixpoint.
///
/// Terminates because σ moves every coordinate off `{0, 1/2, 1}` strictly
/// toward the nearest of those three values and the carrier is finite.
pub fn game_fixpoint(a: &MvElement) -> GameTrace {
    let sigma = Term::sigma();
    let mut steps = vec![a.clone()];
    loop {
        let last = steps.last().expect("nonempty");
        let next = last.apply_term(&sigma);
        let stable = &next == last;
        steps.push(next);
        if stable {
            let n = steps.len() - 2;
            return GameTrace { steps, n };
        }
    }
}

/// `{i : a_i = 1/2}`.
pub fn half_set(a: &MvElement) -> BTreeSet<SpectrumPoint> {
    (0..a.rank())
        .filter(|&i| a.is_half_at(i))
        .map(SpectrumPoint)
        .collect()
}

/// All boolean `r` with `r ⊑ a`, in boolean-bitmask order.
pub fn central_cone(a: &MvElement) -> Vec<MvElement> {
    a.algebra()
        .booleans()
        .filter(|r| below_order(r, a).expect("same algebra"))
        .collect()
}

/// Summary of the cone against the fixpoint predictions.
#[derive(Clone, Debug)]
pub struct CentralCone {
    pub members: Vec<MvElement>,
    pub fixpoint: MvElement,
    pub fixpoint_oplus: MvElement,
    pub fixpoint_odot: MvElement,
}

impl CentralCone {
    pub fn of(a: &MvElement) -> Self {
        let fixpoint = game_fixpoint(a).fixpoint().clone();
        let fixpoint_oplus = fixpoint.oplus(&fixpoint).expect("same algebra");
        let fixpoint_odot = fixpoint.odot(&fixpoint).expect("same algebra");
        CentralCone {
            members: central_cone(a),
            fixpoint,
            fixpoint_oplus,
            fixpoint_odot,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }
}

/// `n(a) ≤ n(b)` when `a ⊑ b` and the half-sets agree; `None` when that
/// hypothesis fails.
pub fn check_monotonicity(a: &MvElement, b: &MvElement) -> Result<Option<bool>> {
    let below = below_order(a, b)?;
    if !below || half_set(a) != half_set(b) {
        return Ok(None);
    }
    Ok(Some(game_fixpoint(a).n <= game_fixpoint(b).n))
}
