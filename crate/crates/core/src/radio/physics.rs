use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::scenario::{PowerPair, RadioScenario, StateVector, User};

/// Maps a continuous power target onto the smallest admissible level that is
/// no less than it; targets above the top level clamp to the top level.
/// `levels` must be nonempty and ascending.
pub fn discretize(levels: &[f64], x: f64) -> f64 {
    debug_assert!(!levels.is_empty());
    for &level in levels {
        if level >= x {
            return level;
        }
    }
    *levels.last().unwrap()
}

impl RadioScenario {
    /// SINR at the given receiver for transmit powers `p1`, `p2` in watts:
    /// the receiver's own link power over cross-link interference plus
    /// receiver noise.
    pub fn sinr(&self, p1: f64, p2: f64, receiver: User) -> f64 {
        let g = &self.channel_gain_sq;
        match receiver {
            User::Primary => g[0][0] * p1 / (g[1][0] * p2 + self.noise_power[0]),
            User::Secondary => g[1][1] * p2 / (g[0][1] * p1 + self.noise_power[1]),
        }
    }

    /// Both SINRs at once.
    pub fn sinrs(&self, p1: f64, p2: f64) -> (f64, f64) {
        (
            self.sinr(p1, p2, User::Primary),
            self.sinr(p1, p2, User::Secondary),
        )
    }

    /// True when both receivers meet their SINR thresholds.
    pub fn is_goal(&self, p1: f64, p2: f64) -> bool {
        self.sinr(p1, p2, User::Primary) >= self.sinr_threshold[0]
            && self.sinr(p1, p2, User::Secondary) >= self.sinr_threshold[1]
    }

    pub fn is_goal_pair(&self, pair: PowerPair) -> bool {
        let (p1, p2) = pair.watts(self);
        self.is_goal(p1, p2)
    }

    /// Reward observed after a transition whose next-frame powers are
    /// (`p1_next`, `p2_next`): 10 on reaching a goal state, 0 otherwise.
    pub fn reward(&self, p1_next: f64, p2_next: f64) -> f64 {
        if self.is_goal(p1_next, p2_next) {
            10.0
        } else {
            0.0
        }
    }

    /// Exhaustively enumerates every goal pair over the two level sets.
    /// Doubles as the brute-force feasibility check: an empty result means
    /// the scenario violates the goal-existence assumption.
    pub fn goal_pairs(&self) -> Vec<PowerPair> {
        let mut pairs = Vec::new();
        for (i, &p1) in self.primary_levels.iter().enumerate() {
            for (j, &p2) in self.secondary_levels.iter().enumerate() {
                if self.is_goal(p1, p2) {
                    pairs.push(PowerPair::new(i, j));
                }
            }
        }
        pairs
    }

    /// One sensor sweep: entry n is `p1 * g1n + p2 * g2n + w_n` with `w_n`
    /// zero-mean Gaussian of deviation `sigma_n`. Values are not clamped;
    /// negative readings are part of the model.
    pub fn observe(&self, p1: f64, p2: f64, rng: &mut impl Rng) -> StateVector {
        let rss = (0..self.sensor_count)
            .map(|n| {
                let mean = p1 * self.sensor_gain_primary[n] + p2 * self.sensor_gain_secondary[n];
                let sigma = self.sensor_noise_std[n];
                if sigma > 0.0 {
                    let normal = Normal::new(mean, sigma).expect("finite noise deviation");
                    normal.sample(rng)
                } else {
                    mean
                }
            })
            .collect();
        StateVector { rss }
    }
}
