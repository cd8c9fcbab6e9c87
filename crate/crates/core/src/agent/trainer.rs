use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::replay::{ReplayMemory, Transition};
use crate::error::{Error, Result};
use crate::nn::{argmax_first, AdamState, Normalizer, QNetwork, TrainingBatch};
use crate::radio::{PrimaryPolicy, RadioScenario, StateVector, User};
use crate::rng::{rng_stream, stream};

/// Hyperparameters of one training run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Total environment iterations K.
    pub total_iterations: u64,
    /// Transitions collected before the first optimizer step (and the
    /// sample the input normalizer is fitted on).
    pub warmup_size: usize,
    pub minibatch_size: usize,
    pub replay_capacity: usize,
    /// Discount factor, in [0, 1).
    pub discount: f64,
    /// Exploration probability at iteration 0; decays linearly to 0 at K.
    pub epsilon_start: f64,
    /// Frame budget used when evaluating the learned policy.
    pub eval_max_frames: u32,
    pub primary_policy: PrimaryPolicy,
    pub learning_rate: f64,
    pub master_seed: u64,
}

impl TrainConfig {
    /// The reference setup: 1e5 iterations, warm-up 300, minibatch 256,
    /// replay capacity 400, discount 0.5, exploration from 0.8.
    pub fn reference(primary_policy: PrimaryPolicy, master_seed: u64) -> Self {
        TrainConfig {
            total_iterations: 100_000,
            warmup_size: 300,
            minibatch_size: 256,
            replay_capacity: 400,
            discount: 0.5,
            epsilon_start: 0.8,
            eval_max_frames: 20,
            primary_policy,
            learning_rate: 1e-3,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.total_iterations == 0 {
            return Err(Error::InvalidConfig("total_iterations must be >= 1".into()));
        }
        if self.warmup_size < 2 {
            return Err(Error::InvalidConfig(
                "warmup_size must be >= 2 to fit the normalizer".into(),
            ));
        }
        if self.warmup_size > self.replay_capacity {
            return Err(Error::InvalidConfig(format!(
                "warmup_size {} exceeds replay_capacity {}",
                self.warmup_size, self.replay_capacity
            )));
        }
        if self.minibatch_size == 0 || self.minibatch_size > self.replay_capacity {
            return Err(Error::InvalidConfig(format!(
                "minibatch_size {} must be in 1..=replay_capacity {}",
                self.minibatch_size, self.replay_capacity
            )));
        }
        if self.minibatch_size > self.warmup_size {
            return Err(Error::InvalidConfig(format!(
                "minibatch_size {} exceeds warmup_size {}; the first optimizer \
                 step samples without replacement from exactly warmup_size transitions",
                self.minibatch_size, self.warmup_size
            )));
        }
        if !(0.0..1.0).contains(&self.discount) {
            return Err(Error::InvalidConfig(format!(
                "discount {} must be in [0, 1)",
                self.discount
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon_start) {
            return Err(Error::InvalidConfig(format!(
                "epsilon_start {} must be in [0, 1]",
                self.epsilon_start
            )));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning_rate {} must be positive and finite",
                self.learning_rate
            )));
        }
        Ok(())
    }
}

/// Exploration probability at iteration `k`: `epsilon_start * (1 - k / K)`,
/// clamped below at zero. Non-increasing in `k`.
pub fn epsilon(k: u64, config: &TrainConfig) -> f64 {
    let frac = k as f64 / config.total_iterations as f64;
    (config.epsilon_start * (1.0 - frac)).max(0.0)
}

/// Epsilon-greedy action selection: with probability `eps` a uniformly
/// random level index, otherwise the argmax of the network's action values
/// for the normalized state, ties broken toward the lowest index.
pub fn select_action(
    net: &QNetwork,
    normalizer: &Normalizer,
    state: &StateVector,
    eps: f64,
    rng: &mut impl Rng,
) -> Result<usize> {
    if rng.gen::<f64>() < eps {
        Ok(rng.gen_range(0..net.output_dim()))
    } else {
        let values = net.forward(&normalizer.apply(state))?;
        Ok(argmax_first(&values))
    }
}

/// Bellman regression targets for a minibatch: each transition's reward
/// plus the discounted maximum action value of its next state under the
/// network's current parameters. No terminal masking is applied;
/// transitions into goal states bootstrap like any other.
pub fn compute_targets(
    net: &QNetwork,
    normalizer: &Normalizer,
    minibatch: &[&Transition],
    discount: f64,
) -> Result<Vec<f64>> {
    let batch = minibatch.len();
    if batch == 0 {
        return Err(Error::InvalidConfig("empty minibatch".into()));
    }
    let dim = net.input_dim();
    let mut next_states = vec![0.0; batch * dim];
    for (row, t) in next_states.chunks_exact_mut(dim).zip(minibatch) {
        normalizer.apply_into(&t.next_state, row);
    }
    let values = net.forward_batch(&next_states, batch)?;
    let l2 = net.output_dim();
    Ok(minibatch
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let row = &values[i * l2..(i + 1) * l2];
            let max = row.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            t.reward + discount * max
        })
        .collect())
}

/// Result of a completed training run.
#[derive(Clone, Debug)]
pub struct TrainOutcome {
    pub net: QNetwork,
    pub normalizer: Normalizer,
    /// `(iteration, loss)` for every optimizer step, in order.
    pub loss_history: Vec<(u64, f64)>,
}

impl TrainOutcome {
    /// Mean loss over the last `window` optimizer steps.
    pub fn final_loss(&self, window: usize) -> Option<f64> {
        if self.loss_history.is_empty() {
            return None;
        }
        let tail = &self.loss_history[self.loss_history.len().saturating_sub(window)..];
        Some(tail.iter().map(|&(_, l)| l).sum::<f64>() / tail.len() as f64)
    }
}

/// Writes the loss history as `iteration,loss` CSV.
pub fn write_loss_csv(history: &[(u64, f64)], w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "iteration,loss")?;
    for &(k, loss) in history {
        writeln!(w, "{k},{loss}")?;
    }
    Ok(())
}

/// The training loop. Each iteration the primary user applies its power
/// control, the secondary picks an epsilon-greedy action, the next state is
/// observed and stored, and once the replay memory holds `warmup_size`
/// transitions one Adam step is taken on a sampled minibatch. Reaching a
/// goal state re-initializes both powers uniformly at random (after the
/// transition out of the goal state has been stored).
pub struct Trainer<'a> {
    scenario: &'a RadioScenario,
    config: TrainConfig,
    net: QNetwork,
    adam: AdamState,
    replay: ReplayMemory,
    normalizer: Normalizer,
    normalizer_fitted: bool,
    rng: ChaCha8Rng,
    /// 1-based index of the next iteration to execute.
    k: u64,
    p1_index: usize,
    p2_index: usize,
    state: StateVector,
    loss_history: Vec<(u64, f64)>,
}

impl<'a> Trainer<'a> {
    pub fn new(scenario: &'a RadioScenario, config: TrainConfig) -> Result<Self> {
        config.validate()?;
        if scenario.goal_pairs().is_empty() {
            return Err(Error::Infeasible);
        }
        let mut init_rng = rng_stream(config.master_seed, stream::NETWORK_INIT);
        let net = QNetwork::new(
            scenario.sensor_count,
            scenario.secondary_level_count(),
            &mut init_rng,
        );
        let adam = AdamState::new(&net).with_learning_rate(config.learning_rate);
        let replay = ReplayMemory::new(config.replay_capacity);
        let normalizer = Normalizer::identity(scenario.sensor_count);

        let mut rng = rng_stream(config.master_seed, stream::TRAIN);
        let p1_index = rng.gen_range(0..scenario.primary_level_count());
        let p2_index = rng.gen_range(0..scenario.secondary_level_count());
        let state = scenario.observe(
            scenario.primary_levels[p1_index],
            scenario.secondary_levels[p2_index],
            &mut rng,
        );

        Ok(Trainer {
            scenario,
            config,
            net,
            adam,
            replay,
            normalizer,
            normalizer_fitted: false,
            rng,
            k: 1,
            p1_index,
            p2_index,
            state,
            loss_history: Vec::new(),
        })
    }

    /// 1-based index of the next iteration [`Self::step`] will execute.
    pub fn iteration(&self) -> u64 {
        self.k
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn net(&self) -> &QNetwork {
        &self.net
    }

    /// Identity until the warm-up sample has been collected and fitted.
    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    pub fn loss_history(&self) -> &[(u64, f64)] {
        &self.loss_history
    }

    pub fn last_loss(&self) -> Option<f64> {
        self.loss_history.last().map(|&(_, l)| l)
    }

    pub fn current_pair(&self) -> (usize, usize) {
        (self.p1_index, self.p2_index)
    }

    /// Executes one environment iteration (plus one optimizer step once
    /// past warm-up).
    pub fn step(&mut self) -> Result<()> {
        let scenario = self.scenario;
        let p1 = scenario.primary_levels[self.p1_index];
        let p2 = scenario.secondary_levels[self.p2_index];

        let sinr1 = scenario.sinr(p1, p2, User::Primary);
        let mut p1_next = self
            .config
            .primary_policy
            .next_index(scenario, self.p1_index, sinr1)?;

        let eps = epsilon(self.k, &self.config);
        let action = select_action(&self.net, &self.normalizer, &self.state, eps, &mut self.rng)?;
        let mut p2_next = action;

        let mut next_state = scenario.observe(
            scenario.primary_levels[p1_next],
            scenario.secondary_levels[p2_next],
            &mut self.rng,
        );
        let reward = scenario.reward(
            scenario.primary_levels[p1_next],
            scenario.secondary_levels[p2_next],
        );
        self.replay.push(Transition {
            state: self.state.clone(),
            action,
            reward,
            next_state: next_state.clone(),
        });

        if self.k >= self.config.warmup_size as u64 {
            if !self.normalizer_fitted {
                self.normalizer = Normalizer::fit(self.replay.iter_ordered().map(|t| &t.state))?;
                self.normalizer_fitted = true;
            }
            self.optimizer_step()?;
        }

        // Goal states reset the interaction: once the current pair meets
        // both thresholds, next-frame powers are redrawn uniformly.
        if scenario.is_goal(p1, p2) {
            p1_next = self.rng.gen_range(0..scenario.primary_level_count());
            p2_next = self.rng.gen_range(0..scenario.secondary_level_count());
            next_state = scenario.observe(
                scenario.primary_levels[p1_next],
                scenario.secondary_levels[p2_next],
                &mut self.rng,
            );
        }

        self.p1_index = p1_next;
        self.p2_index = p2_next;
        self.state = next_state;
        self.k += 1;
        Ok(())
    }

    fn optimizer_step(&mut self) -> Result<()> {
        let indices = self
            .replay
            .sample_indices(&mut self.rng, self.config.minibatch_size);
        let minibatch: Vec<&Transition> = indices.iter().map(|&i| self.replay.get(i)).collect();

        let targets = compute_targets(
            &self.net,
            &self.normalizer,
            &minibatch,
            self.config.discount,
        )?;

        let dim = self.net.input_dim();
        let mut states = vec![0.0; minibatch.len() * dim];
        for (row, t) in states.chunks_exact_mut(dim).zip(&minibatch) {
            self.normalizer.apply_into(&t.state, row);
        }
        let actions: Vec<usize> = minibatch.iter().map(|t| t.action).collect();

        let (loss, grads) = self.net.loss_and_gradients(&TrainingBatch {
            states: &states,
            actions: &actions,
            targets: &targets,
        })?;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss {
                iteration: self.k,
                loss,
            });
        }
        self.adam.step(&mut self.net, &grads);
        self.loss_history.push((self.k, loss));
        Ok(())
    }

    /// Runs every remaining iteration up to `total_iterations`.
    pub fn run(mut self) -> Result<TrainOutcome> {
        while self.k <= self.config.total_iterations {
            self.step()?;
        }
        Ok(self.into_outcome())
    }

    pub fn into_outcome(self) -> TrainOutcome {
        TrainOutcome {
            net: self.net,
            normalizer: self.normalizer,
            loss_history: self.loss_history,
        }
    }
}

/// Trains to completion with a fresh [`Trainer`].
pub fn train(scenario: &RadioScenario, config: TrainConfig) -> Result<TrainOutcome> {
    Trainer::new(scenario, config)?.run()
}
