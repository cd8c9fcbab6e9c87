//! Evaluation harness: success rate and transition-step metrics over
//! independent greedy episodes, training curves over checkpoint snapshots,
//! and side-by-side trajectories against the DCPC baseline.

use std::io::Write;

use rand::Rng;

use crate::agent::{
    run_policy, GreedyNetPolicy, GreedyRun, SecondaryPolicy, TrainConfig, Trainer,
};
use crate::dcpc::{run_dcpc, DcpcRun};
use crate::error::{Error, Result};
use crate::nn::{Normalizer, QNetwork};
use crate::radio::{PowerPair, PrimaryPolicy, RadioScenario};
use crate::rng::eval_episode_rng;

/// Evaluation protocol: independent episodes from uniformly random initial
/// pairs, each succeeding if a goal state is reached within the frame
/// budget.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    pub runs: usize,
    pub max_frames: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            runs: 1000,
            max_frames: 20,
        }
    }
}

/// Outcome of one evaluation episode. `steps` is the number of frames
/// until the first goal state for successes (0 when the initial pair is
/// already a goal) and the frame budget for failures.
#[derive(Clone, Copy, Debug)]
pub struct EpisodeRecord {
    pub start: PowerPair,
    pub success: bool,
    pub steps: u32,
}

/// Aggregated evaluation results.
#[derive(Clone, Debug)]
pub struct EvalMetrics {
    pub records: Vec<EpisodeRecord>,
}

impl EvalMetrics {
    pub fn runs(&self) -> usize {
        self.records.len()
    }

    pub fn successes(&self) -> usize {
        self.records.iter().filter(|r| r.success).count()
    }

    pub fn success_rate(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        self.successes() as f64 / self.runs() as f64
    }

    /// Mean frames-to-goal over successful episodes; undefined without any
    /// success.
    pub fn avg_steps(&self) -> Option<f64> {
        let successes: Vec<u32> = self
            .records
            .iter()
            .filter(|r| r.success)
            .map(|r| r.steps)
            .collect();
        if successes.is_empty() {
            return None;
        }
        Some(successes.iter().map(|&s| s as f64).sum::<f64>() / successes.len() as f64)
    }
}

/// Runs `config.runs` independent episodes of `policy` against the primary
/// user, each on its own RNG stream derived from `seed`, so results do not
/// depend on execution order.
pub fn evaluate_policy(
    policy: &dyn SecondaryPolicy,
    scenario: &RadioScenario,
    primary: PrimaryPolicy,
    config: &EvalConfig,
    seed: u64,
) -> Result<EvalMetrics> {
    let mut records = Vec::with_capacity(config.runs);
    for episode in 0..config.runs {
        let mut rng = eval_episode_rng(seed, episode as u64);
        let start = PowerPair::new(
            rng.gen_range(0..scenario.primary_level_count()),
            rng.gen_range(0..scenario.secondary_level_count()),
        );
        let run = run_policy(policy, scenario, primary, start, config.max_frames, &mut rng)?;
        records.push(EpisodeRecord {
            start,
            success: run.succeeded(),
            steps: run.steps_to_goal.unwrap_or(config.max_frames),
        });
    }
    Ok(EvalMetrics { records })
}

/// Evaluates a trained network greedily (exploration fixed at zero).
pub fn evaluate(
    net: &QNetwork,
    normalizer: &Normalizer,
    scenario: &RadioScenario,
    primary: PrimaryPolicy,
    config: &EvalConfig,
    seed: u64,
) -> Result<EvalMetrics> {
    evaluate_policy(
        &GreedyNetPolicy { net, normalizer },
        scenario,
        primary,
        config,
        seed,
    )
}

/// One snapshot of a training curve.
#[derive(Clone, Copy, Debug)]
pub struct TrainingCurvePoint {
    /// Iterations trained when the snapshot was taken.
    pub k: u64,
    /// Most recent minibatch loss at the snapshot.
    pub loss: Option<f64>,
    pub success_rate: f64,
    pub avg_steps: Option<f64>,
}

/// Logarithmically spaced snapshot iterations over `[from, to]`,
/// deduplicated and ascending.
pub fn log_schedule(from: u64, to: u64, points: usize) -> Vec<u64> {
    assert!(from >= 1 && to >= from && points >= 1);
    if points == 1 {
        return vec![to];
    }
    let (a, b) = (from as f64, to as f64);
    let mut schedule: Vec<u64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (a * (b / a).powf(t)).round() as u64
        })
        .collect();
    schedule.sort_unstable();
    schedule.dedup();
    schedule
}

/// Trains once, snapshotting the network at each scheduled iteration and
/// evaluating every snapshot greedily. Snapshot iterations must be
/// ascending and within the configured total.
pub fn training_curve(
    scenario: &RadioScenario,
    config: &TrainConfig,
    schedule: &[u64],
    eval_config: &EvalConfig,
) -> Result<Vec<TrainingCurvePoint>> {
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig(
            "snapshot schedule must be strictly increasing".into(),
        ));
    }
    if schedule.last().is_some_and(|&k| k > config.total_iterations) {
        return Err(Error::InvalidConfig(format!(
            "snapshot beyond total_iterations {}",
            config.total_iterations
        )));
    }
    let mut trainer = Trainer::new(scenario, config.clone())?;
    let mut points = Vec::with_capacity(schedule.len());
    for &snapshot_k in schedule {
        while trainer.iteration() <= snapshot_k {
            trainer.step()?;
        }
        let metrics = evaluate(
            trainer.net(),
            trainer.normalizer(),
            scenario,
            config.primary_policy,
            eval_config,
            config.master_seed,
        )?;
        points.push(TrainingCurvePoint {
            k: snapshot_k,
            loss: trainer.last_loss(),
            success_rate: metrics.success_rate(),
            avg_steps: metrics.avg_steps(),
        });
    }
    Ok(points)
}

/// A greedy DQN rollout and a DCPC run from the same initial pair.
#[derive(Clone, Debug)]
pub struct TrajectoryComparison {
    pub start: PowerPair,
    pub dqn: GreedyRun,
    pub dcpc: DcpcRun,
}

/// Runs the trained policy and the DCPC baseline from the same starting
/// powers. The DQN side stops at its first goal state, the DCPC side once
/// both SINRs are within `tolerance` of their thresholds.
#[allow(clippy::too_many_arguments)]
pub fn compare_trajectories(
    net: &QNetwork,
    normalizer: &Normalizer,
    scenario: &RadioScenario,
    primary: PrimaryPolicy,
    start: PowerPair,
    max_steps: u32,
    tolerance: f64,
    rng: &mut impl Rng,
) -> Result<TrajectoryComparison> {
    let dqn = run_policy(
        &GreedyNetPolicy { net, normalizer },
        scenario,
        primary,
        start,
        max_steps,
        rng,
    )?;
    let (p1, p2) = start.watts(scenario);
    let dcpc = run_dcpc(scenario, p1, p2, max_steps, tolerance)?;
    Ok(TrajectoryComparison { start, dqn, dcpc })
}

/// Writes per-episode results as `run,start_p1,start_p2,success,steps` CSV.
pub fn write_metrics_csv(
    metrics: &EvalMetrics,
    scenario: &RadioScenario,
    w: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(w, "run,start_p1,start_p2,success,steps")?;
    for (run, r) in metrics.records.iter().enumerate() {
        let (p1, p2) = r.start.watts(scenario);
        writeln!(w, "{run},{p1},{p2},{},{}", r.success, r.steps)?;
    }
    Ok(())
}

/// Writes a training curve as `k,loss,success_rate,avg_steps` CSV; undefined
/// values are left empty.
pub fn write_curve_csv(points: &[TrainingCurvePoint], w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "k,loss,success_rate,avg_steps")?;
    for p in points {
        let loss = p.loss.map(|l| l.to_string()).unwrap_or_default();
        let avg = p.avg_steps.map(|s| s.to_string()).unwrap_or_default();
        writeln!(w, "{},{loss},{},{avg}", p.k, p.success_rate)?;
    }
    Ok(())
}

/// Writes paired trajectories as `step,method,p1,p2,sinr1,sinr2` CSV.
pub fn write_comparison_csv(
    comparison: &TrajectoryComparison,
    w: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(w, "step,method,p1,p2,sinr1,sinr2")?;
    for (step, pt) in comparison.dqn.trajectory.iter().enumerate() {
        writeln!(w, "{step},dqn,{},{},{},{}", pt.p1, pt.p2, pt.sinr1, pt.sinr2)?;
    }
    for (step, pt) in comparison.dcpc.trajectory.iter().enumerate() {
        writeln!(w, "{step},dcpc,{},{},{},{}", pt.p1, pt.p2, pt.sinr1, pt.sinr2)?;
    }
    Ok(())
}
