//! Distributed constrained power control: both users iteratively scale
//! their power by `threshold / SINR`, clamped at their maximum level.
//! Powers are continuous here; only the max-power constraint applies.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radio::{RadioScenario, User};

/// Default absolute SINR tolerance for declaring convergence.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

/// Default iteration budget.
pub const DEFAULT_MAX_STEPS: u32 = 200;

/// One frame of a DCPC run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcpcPoint {
    pub p1: f64,
    pub p2: f64,
    pub sinr1: f64,
    pub sinr2: f64,
}

/// Trajectory of a DCPC run, initial point included.
#[derive(Clone, Debug)]
pub struct DcpcRun {
    pub trajectory: Vec<DcpcPoint>,
    /// First step at which both SINRs were within tolerance of their
    /// thresholds; `None` when the budget ran out first.
    pub steps_to_tolerance: Option<u32>,
    pub converged: bool,
}

/// One update: `min(p_max, eta * p / sinr)`. The measured SINR must be
/// positive.
pub fn dcpc_update(p: f64, sinr: f64, eta: f64, p_max: f64) -> Result<f64> {
    if !(sinr > 0.0) {
        return Err(Error::InvalidMeasurement(sinr));
    }
    Ok((eta * p / sinr).min(p_max))
}

/// Runs synchronous DCPC from the given initial powers until both SINRs are
/// within `tolerance` of their thresholds or `max_steps` frames elapse.
pub fn run_dcpc(
    scenario: &RadioScenario,
    p1_start: f64,
    p2_start: f64,
    max_steps: u32,
    tolerance: f64,
) -> Result<DcpcRun> {
    if !(p1_start > 0.0 && p2_start > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "DCPC starting powers must be positive, got ({p1_start}, {p2_start})"
        )));
    }
    let p1_max = *scenario.primary_levels.last().unwrap();
    let p2_max = *scenario.secondary_levels.last().unwrap();
    let [eta1, eta2] = scenario.sinr_threshold;

    let snapshot = |p1: f64, p2: f64| DcpcPoint {
        p1,
        p2,
        sinr1: scenario.sinr(p1, p2, User::Primary),
        sinr2: scenario.sinr(p1, p2, User::Secondary),
    };
    let within = |pt: &DcpcPoint| (pt.sinr1 - eta1).abs() < tolerance && (pt.sinr2 - eta2).abs() < tolerance;

    let mut current = snapshot(p1_start.min(p1_max), p2_start.min(p2_max));
    let mut trajectory = vec![current];
    let mut steps_to_tolerance = within(&current).then_some(0);

    let mut step = 0u32;
    while steps_to_tolerance.is_none() && step < max_steps {
        let p1 = dcpc_update(current.p1, current.sinr1, eta1, p1_max)?;
        let p2 = dcpc_update(current.p2, current.sinr2, eta2, p2_max)?;
        current = snapshot(p1, p2);
        step += 1;
        if within(&current) {
            steps_to_tolerance = Some(step);
        }
        trajectory.push(current);
    }

    Ok(DcpcRun {
        converged: steps_to_tolerance.is_some(),
        trajectory,
        steps_to_tolerance,
    })
}

/// Writes a run as `step,p1,p2,sinr1,sinr2` CSV.
pub fn write_trajectory_csv(run: &DcpcRun, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "step,p1,p2,sinr1,sinr2")?;
    for (step, pt) in run.trajectory.iter().enumerate() {
        writeln!(w, "{step},{},{},{},{}", pt.p1, pt.p2, pt.sinr1, pt.sinr2)?;
    }
    Ok(())
}
