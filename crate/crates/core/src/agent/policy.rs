use rand::Rng;

use crate::error::Result;
use crate::nn::{argmax_first, Normalizer, QNetwork};
use crate::radio::{PowerPair, PrimaryPolicy, RadioScenario, StateVector, User};

/// A decision rule for the secondary user's next power level. Network
/// policies act on the sensor observation; diagnostic policies such as the
/// tabular oracle act on the true power pair the observation was taken at.
pub trait SecondaryPolicy {
    fn choose(&self, observation: &StateVector, pair: PowerPair) -> Result<usize>;
}

/// Greedy deployment policy: the argmax of the trained network's action
/// values for the normalized observation.
pub struct GreedyNetPolicy<'a> {
    pub net: &'a QNetwork,
    pub normalizer: &'a Normalizer,
}

impl SecondaryPolicy for GreedyNetPolicy<'_> {
    fn choose(&self, observation: &StateVector, _pair: PowerPair) -> Result<usize> {
        let values = self.net.forward(&self.normalizer.apply(observation))?;
        Ok(argmax_first(&values))
    }
}

/// One frame of an executed trajectory.
#[derive(Clone, Copy, Debug)]
pub struct TrajectoryPoint {
    pub pair: PowerPair,
    pub p1: f64,
    pub p2: f64,
    pub sinr1: f64,
    pub sinr2: f64,
    pub is_goal: bool,
}

/// A rollout from one initial pair.
#[derive(Clone, Debug)]
pub struct GreedyRun {
    /// Visited pairs, the initial one included.
    pub trajectory: Vec<TrajectoryPoint>,
    /// Frames elapsed until the first goal state; 0 when the initial pair
    /// is already a goal, `None` when the frame budget ran out first.
    pub steps_to_goal: Option<u32>,
}

impl GreedyRun {
    pub fn succeeded(&self) -> bool {
        self.steps_to_goal.is_some()
    }
}

fn point(scenario: &RadioScenario, pair: PowerPair) -> TrajectoryPoint {
    let (p1, p2) = pair.watts(scenario);
    let (sinr1, sinr2) = scenario.sinrs(p1, p2);
    TrajectoryPoint {
        pair,
        p1,
        p2,
        sinr1,
        sinr2,
        is_goal: scenario.is_goal(p1, p2),
    }
}

/// Rolls a secondary policy against the primary's power control, stopping
/// at the first goal state or after `max_frames` transitions. Observations
/// are drawn with fresh noise each frame.
pub fn run_policy(
    policy: &dyn SecondaryPolicy,
    scenario: &RadioScenario,
    primary: PrimaryPolicy,
    start: PowerPair,
    max_frames: u32,
    rng: &mut impl Rng,
) -> Result<GreedyRun> {
    let mut pair = start;
    let mut trajectory = vec![point(scenario, pair)];
    let mut steps_to_goal = trajectory[0].is_goal.then_some(0);
    let mut frames = 0u32;

    while steps_to_goal.is_none() && frames < max_frames {
        let (p1, p2) = pair.watts(scenario);
        let observation = scenario.observe(p1, p2, rng);
        let sinr1 = scenario.sinr(p1, p2, User::Primary);
        let p1_next = primary.next_index(scenario, pair.p1_index, sinr1)?;
        let action = policy.choose(&observation, pair)?;
        pair = PowerPair::new(p1_next, action);
        frames += 1;
        let entry = point(scenario, pair);
        if entry.is_goal {
            steps_to_goal = Some(frames);
        }
        trajectory.push(entry);
    }

    Ok(GreedyRun {
        trajectory,
        steps_to_goal,
    })
}

/// Greedy deployment of a trained network (exploration fixed at zero).
pub fn act_greedy(
    net: &QNetwork,
    normalizer: &Normalizer,
    scenario: &RadioScenario,
    primary: PrimaryPolicy,
    start: PowerPair,
    max_frames: u32,
    rng: &mut impl Rng,
) -> Result<GreedyRun> {
    run_policy(
        &GreedyNetPolicy { net, normalizer },
        scenario,
        primary,
        start,
        max_frames,
        rng,
    )
}
