use serde::{Deserialize, Serialize};

use super::physics::discretize;
use super::scenario::RadioScenario;
use crate::error::{Error, Result};

/// The primary user's power-control strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimaryPolicy {
    /// Jump straight to the discretized target `D(eta1 * p1 / sinr1)`.
    Classic,
    /// Move at most one level per frame toward the target.
    Stepwise,
}

impl PrimaryPolicy {
    /// Applies the policy on level indices. `p1_index` must be valid and
    /// `sinr1` the exact SINR measured at the primary receiver this frame.
    pub fn next_index(
        self,
        scenario: &RadioScenario,
        p1_index: usize,
        sinr1: f64,
    ) -> Result<usize> {
        match self {
            PrimaryPolicy::Classic => {
                let p1 = scenario.primary_levels[p1_index];
                let next = primary_update_classic(scenario, p1, sinr1)?;
                // discretize returns a member of the level set, so the
                // position lookup cannot fail.
                Ok(scenario
                    .primary_levels
                    .iter()
                    .position(|&l| l == next)
                    .expect("discretized power is a level"))
            }
            PrimaryPolicy::Stepwise => primary_update_stepwise(scenario, p1_index, sinr1),
        }
    }
}

impl std::fmt::Display for PrimaryPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrimaryPolicy::Classic => write!(f, "classic"),
            PrimaryPolicy::Stepwise => write!(f, "stepwise"),
        }
    }
}

fn check_sinr(sinr1: f64) -> Result<()> {
    if !(sinr1 > 0.0) {
        return Err(Error::InvalidMeasurement(sinr1));
    }
    Ok(())
}

/// Classical power control: aim for the power that would bring the measured
/// SINR to the threshold, discretized upward onto the admissible levels.
pub fn primary_update_classic(scenario: &RadioScenario, p1: f64, sinr1: f64) -> Result<f64> {
    check_sinr(sinr1)?;
    let target = scenario.sinr_threshold[0] * p1 / sinr1;
    Ok(discretize(&scenario.primary_levels, target))
}

/// Conservative stepwise control: with target `tau = eta1 * p1 / sinr1`,
/// step up one level when `tau` falls between the current and next level,
/// step down one when `tau` is at or below the previous level, otherwise
/// stay. The output index differs from the input by at most one.
pub fn primary_update_stepwise(
    scenario: &RadioScenario,
    p1_index: usize,
    sinr1: f64,
) -> Result<usize> {
    check_sinr(sinr1)?;
    let levels = &scenario.primary_levels;
    let p1 = levels[p1_index];
    let tau = scenario.sinr_threshold[0] * p1 / sinr1;
    if p1_index + 1 < levels.len() && levels[p1_index] <= tau && tau <= levels[p1_index + 1] {
        Ok(p1_index + 1)
    } else if p1_index >= 1 && tau <= levels[p1_index - 1] {
        Ok(p1_index - 1)
    } else {
        Ok(p1_index)
    }
}
