use super::policy::SecondaryPolicy;
use crate::error::{Error, Result};
use crate::radio::{PowerPair, PrimaryPolicy, RadioScenario, StateVector, User};

/// Sup-norm change below which value iteration is considered converged.
const VALUE_TOLERANCE: f64 = 1e-10;

/// Exact solution of the noiseless finite MDP by value iteration. With
/// exact observations the state is the power pair itself, so the full
/// dynamics fit in a table of `L1 * L2` states by `L2` actions. Serves as
/// the brute-force reference the learned network is compared against.
#[derive(Clone, Debug)]
pub struct TabularOracle {
    pub primary_policy: PrimaryPolicy,
    pub discount: f64,
    /// Converged state values, indexed like [`RadioScenario::pair_index`].
    pub values: Vec<f64>,
    /// Greedy action per state, ties broken toward the lowest level.
    pub greedy_action: Vec<usize>,
    /// Minimum frames to reach a goal state from each state; goal states
    /// are 0, unreachable states `None`.
    pub steps_to_goal: Vec<Option<u32>>,
    /// Value-iteration sweeps until convergence.
    pub sweeps: u64,
    secondary_level_count: usize,
}

impl TabularOracle {
    pub fn solve(
        scenario: &RadioScenario,
        primary_policy: PrimaryPolicy,
        discount: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&discount) {
            return Err(Error::InvalidConfig(format!(
                "discount {discount} must be in [0, 1)"
            )));
        }
        let l2 = scenario.secondary_level_count();
        let states = scenario.pair_count();

        // Deterministic transition and reward tables. The primary's next
        // level depends only on the current pair; the secondary's action is
        // its next level.
        let mut next = vec![0usize; states * l2];
        let mut reward = vec![0.0f64; states * l2];
        for s in 0..states {
            let pair = scenario.pair_from_index(s);
            let (p1, p2) = pair.watts(scenario);
            let sinr1 = scenario.sinr(p1, p2, User::Primary);
            let p1_next = primary_policy.next_index(scenario, pair.p1_index, sinr1)?;
            for a in 0..l2 {
                let next_pair = PowerPair::new(p1_next, a);
                next[s * l2 + a] = scenario.pair_index(next_pair);
                reward[s * l2 + a] = scenario.reward(
                    scenario.primary_levels[p1_next],
                    scenario.secondary_levels[a],
                );
            }
        }

        let mut values = vec![0.0f64; states];
        let mut sweeps = 0u64;
        loop {
            sweeps += 1;
            let mut delta = 0.0f64;
            for s in 0..states {
                let mut best = f64::NEG_INFINITY;
                for a in 0..l2 {
                    let q = reward[s * l2 + a] + discount * values[next[s * l2 + a]];
                    if q > best {
                        best = q;
                    }
                }
                delta = delta.max((best - values[s]).abs());
                values[s] = best;
            }
            if delta < VALUE_TOLERANCE {
                break;
            }
            if sweeps > 1_000_000 {
                return Err(Error::InvalidConfig(
                    "value iteration failed to converge".into(),
                ));
            }
        }

        let greedy_action = (0..states)
            .map(|s| {
                let mut best_a = 0;
                let mut best_q = f64::NEG_INFINITY;
                for a in 0..l2 {
                    let q = reward[s * l2 + a] + discount * values[next[s * l2 + a]];
                    if q > best_q {
                        best_q = q;
                        best_a = a;
                    }
                }
                best_a
            })
            .collect();

        // Shortest frames-to-goal over the same deterministic graph, by
        // fixed-point iteration; paths are at most `states` long.
        let mut steps = vec![u32::MAX; states];
        for s in 0..states {
            if scenario.is_goal_pair(scenario.pair_from_index(s)) {
                steps[s] = 0;
            }
        }
        for _ in 0..states {
            let mut changed = false;
            for s in 0..states {
                if steps[s] == 0 {
                    continue;
                }
                let mut best = u32::MAX;
                for a in 0..l2 {
                    let target = steps[next[s * l2 + a]];
                    if target != u32::MAX {
                        best = best.min(target + 1);
                    }
                }
                if best < steps[s] {
                    steps[s] = best;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let steps_to_goal = steps
            .into_iter()
            .map(|s| (s != u32::MAX).then_some(s))
            .collect();

        Ok(TabularOracle {
            primary_policy,
            discount,
            values,
            greedy_action,
            steps_to_goal,
            sweeps,
            secondary_level_count: l2,
        })
    }

    pub fn action(&self, pair: PowerPair) -> usize {
        self.greedy_action[pair.p1_index * self.secondary_level_count + pair.p2_index]
    }

    pub fn steps_from(&self, pair: PowerPair) -> Option<u32> {
        self.steps_to_goal[pair.p1_index * self.secondary_level_count + pair.p2_index]
    }
}

impl SecondaryPolicy for TabularOracle {
    fn choose(&self, _observation: &StateVector, pair: PowerPair) -> Result<usize> {
        Ok(self.action(pair))
    }
}
