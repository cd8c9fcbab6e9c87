use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{rng_stream, stream};

/// Which of the two users a quantity refers to. User 1 is the licensed
/// primary transmitter/receiver pair, user 2 the opportunistic secondary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum User {
    Primary,
    Secondary,
}

/// Sensor placement: signal wavelength plus the distance from each
/// transmitter to every sensor node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensorGeometry {
    /// Signal wavelength in meters.
    pub wavelength: f64,
    /// Distance in meters from the primary transmitter to sensor n.
    pub distances_primary: Vec<f64>,
    /// Distance in meters from the secondary transmitter to sensor n.
    pub distances_secondary: Vec<f64>,
}

impl SensorGeometry {
    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength > 0.0) {
            return Err(Error::InvalidScenario(format!(
                "wavelength must be positive, got {}",
                self.wavelength
            )));
        }
        if self.distances_primary.len() != self.distances_secondary.len() {
            return Err(Error::InvalidScenario(
                "per-transmitter distance lists must have equal length".into(),
            ));
        }
        for &d in self.distances_primary.iter().chain(&self.distances_secondary) {
            if !(d > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "sensor distances must be positive, got {d}"
                )));
            }
        }
        Ok(())
    }

    /// Free-space power gain `(wavelength / (4 pi d))^2` between the given
    /// transmitter and sensor `n`.
    pub fn friis_gain(&self, sensor: usize, tx: User) -> f64 {
        let d = match tx {
            User::Primary => self.distances_primary[sensor],
            User::Secondary => self.distances_secondary[sensor],
        };
        let amplitude = self.wavelength / (4.0 * PI * d);
        amplitude * amplitude
    }

    pub fn sensor_count(&self) -> usize {
        self.distances_primary.len()
    }
}

/// The received-signal-strength readings from all sensors at one time frame.
/// Entries are in watts and can be negative because the observation noise is
/// additive Gaussian.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub rss: Vec<f64>,
}

impl StateVector {
    pub fn len(&self) -> usize {
        self.rss.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rss.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.rss
    }
}

/// A pair of indices into the two discrete power-level sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PowerPair {
    pub p1_index: usize,
    pub p2_index: usize,
}

impl PowerPair {
    pub fn new(p1_index: usize, p2_index: usize) -> Self {
        Self { p1_index, p2_index }
    }

    /// The pair expressed in watts under the given scenario's level sets.
    pub fn watts(self, scenario: &RadioScenario) -> (f64, f64) {
        (
            scenario.primary_levels[self.p1_index],
            scenario.secondary_levels[self.p2_index],
        )
    }
}

/// How the per-sensor observation-noise deviation is chosen when a scenario
/// is generated from a [`ScenarioSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SensorNoiseSpec {
    /// `sigma_n = (p1_min * g1n + p2_min * g2n) / divisor`, with `p*_min`
    /// the lowest level of each power set. Divisor 10 is the low-noise
    /// regime, 3 the high-noise one.
    Divisor { divisor: f64 },
    /// Explicit per-sensor standard deviations in watts.
    Explicit { sigma: Vec<f64> },
}

/// Everything needed to generate a [`RadioScenario`]: physical constants
/// plus the recipe for sensor placement and observation noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub primary_levels: Vec<f64>,
    pub secondary_levels: Vec<f64>,
    /// Squared channel gains `|h_ij|^2`, indexed `[transmitter][receiver]`.
    pub channel_gain_sq: [[f64; 2]; 2],
    /// Receiver noise powers `[N1, N2]` in watts.
    pub noise_power: [f64; 2],
    /// Minimum SINR requirements `[eta1, eta2]`.
    pub sinr_threshold: [f64; 2],
    pub sensor_count: usize,
    /// Signal wavelength in meters used for the Friis gains.
    pub wavelength: f64,
    /// Sensor distances are drawn uniformly from this interval in meters.
    pub distance_range: [f64; 2],
    pub sensor_noise: SensorNoiseSpec,
}

impl ScenarioSpec {
    /// Draws sensor positions with the scenario stream of `master_seed`,
    /// derives the Friis gains and noise deviations, and validates the
    /// result. The seed is recorded in the scenario so the generation is
    /// reproducible.
    pub fn generate(&self, master_seed: u64) -> Result<RadioScenario> {
        if self.sensor_count == 0 {
            return Err(Error::InvalidScenario("sensor_count must be >= 1".into()));
        }
        let [lo, hi] = self.distance_range;
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::InvalidScenario(format!(
                "distance range [{lo}, {hi}] must be positive and ordered"
            )));
        }
        let mut rng = rng_stream(master_seed, stream::SCENARIO);
        let mut draw = |n: usize| -> Vec<f64> {
            (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
        };
        let geometry = SensorGeometry {
            wavelength: self.wavelength,
            distances_primary: draw(self.sensor_count),
            distances_secondary: draw(self.sensor_count),
        };
        geometry.validate()?;

        let gain_primary: Vec<f64> = (0..self.sensor_count)
            .map(|n| geometry.friis_gain(n, User::Primary))
            .collect();
        let gain_secondary: Vec<f64> = (0..self.sensor_count)
            .map(|n| geometry.friis_gain(n, User::Secondary))
            .collect();

        let sigma = match &self.sensor_noise {
            SensorNoiseSpec::Divisor { divisor } => {
                if !(*divisor > 0.0) {
                    return Err(Error::InvalidScenario(format!(
                        "noise divisor must be positive, got {divisor}"
                    )));
                }
                let p1_min = *self.primary_levels.first().ok_or_else(|| {
                    Error::InvalidScenario("primary_levels is empty".into())
                })?;
                let p2_min = *self.secondary_levels.first().ok_or_else(|| {
                    Error::InvalidScenario("secondary_levels is empty".into())
                })?;
                gain_primary
                    .iter()
                    .zip(&gain_secondary)
                    .map(|(g1, g2)| (p1_min * g1 + p2_min * g2) / divisor)
                    .collect()
            }
            SensorNoiseSpec::Explicit { sigma } => sigma.clone(),
        };

        RadioScenario::new(
            self.primary_levels.clone(),
            self.secondary_levels.clone(),
            self.channel_gain_sq,
            self.noise_power,
            self.sinr_threshold,
            gain_primary,
            gain_secondary,
            sigma,
            Some(geometry),
            Some(master_seed),
        )
    }
}

/// All physical constants of one spectrum-sharing scenario, immutable after
/// construction. Constructors reject level sets that are not strictly
/// increasing, negative physical quantities, and scenarios with no goal pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadioScenario {
    /// Admissible primary transmit powers in watts, strictly increasing.
    pub primary_levels: Vec<f64>,
    /// Admissible secondary transmit powers in watts, strictly increasing.
    pub secondary_levels: Vec<f64>,
    /// Squared channel gains `|h_ij|^2`, indexed `[transmitter][receiver]`.
    pub channel_gain_sq: [[f64; 2]; 2],
    /// Receiver noise powers `[N1, N2]` in watts.
    pub noise_power: [f64; 2],
    /// Minimum SINR requirements `[eta1, eta2]`.
    pub sinr_threshold: [f64; 2],
    pub sensor_count: usize,
    /// Path gain from the primary transmitter to each sensor.
    pub sensor_gain_primary: Vec<f64>,
    /// Path gain from the secondary transmitter to each sensor.
    pub sensor_gain_secondary: Vec<f64>,
    /// Per-sensor observation-noise standard deviation in watts.
    pub sensor_noise_std: Vec<f64>,
    /// The geometry the sensor gains were derived from, when generated.
    pub geometry: Option<SensorGeometry>,
    /// Seed that drew the geometry, recorded for reproducibility.
    pub master_seed: Option<u64>,
}

impl RadioScenario {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        primary_levels: Vec<f64>,
        secondary_levels: Vec<f64>,
        channel_gain_sq: [[f64; 2]; 2],
        noise_power: [f64; 2],
        sinr_threshold: [f64; 2],
        sensor_gain_primary: Vec<f64>,
        sensor_gain_secondary: Vec<f64>,
        sensor_noise_std: Vec<f64>,
        geometry: Option<SensorGeometry>,
        master_seed: Option<u64>,
    ) -> Result<Self> {
        let scenario = Self {
            sensor_count: sensor_gain_primary.len(),
            primary_levels,
            secondary_levels,
            channel_gain_sq,
            noise_power,
            sinr_threshold,
            sensor_gain_primary,
            sensor_gain_secondary,
            sensor_noise_std,
            geometry,
            master_seed,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        check_levels("primary_levels", &self.primary_levels)?;
        check_levels("secondary_levels", &self.secondary_levels)?;
        for row in &self.channel_gain_sq {
            for &g in row {
                if !(g >= 0.0) {
                    return Err(Error::InvalidScenario(format!(
                        "channel gains must be nonnegative, got {g}"
                    )));
                }
            }
        }
        for (i, &n) in self.noise_power.iter().enumerate() {
            if !(n > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "receiver noise power N{} must be positive, got {n}",
                    i + 1
                )));
            }
        }
        for &eta in &self.sinr_threshold {
            if !(eta >= 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "SINR thresholds must be nonnegative, got {eta}"
                )));
            }
        }
        if self.sensor_count == 0 {
            return Err(Error::InvalidScenario("sensor_count must be >= 1".into()));
        }
        for (name, values) in [
            ("sensor_gain_primary", &self.sensor_gain_primary),
            ("sensor_gain_secondary", &self.sensor_gain_secondary),
            ("sensor_noise_std", &self.sensor_noise_std),
        ] {
            if values.len() != self.sensor_count {
                return Err(Error::InvalidScenario(format!(
                    "{name} has {} entries, expected sensor_count = {}",
                    values.len(),
                    self.sensor_count
                )));
            }
            for &v in values.iter() {
                if !(v >= 0.0) {
                    return Err(Error::InvalidScenario(format!(
                        "{name} entries must be nonnegative, got {v}"
                    )));
                }
            }
        }
        if let Some(geometry) = &self.geometry {
            geometry.validate()?;
            if geometry.sensor_count() != self.sensor_count {
                return Err(Error::InvalidScenario(
                    "geometry sensor count disagrees with sensor_count".into(),
                ));
            }
        }
        // The learning problem needs at least one goal pair to exist.
        if self.goal_pairs().is_empty() {
            return Err(Error::Infeasible);
        }
        Ok(())
    }

    pub fn primary_level_count(&self) -> usize {
        self.primary_levels.len()
    }

    pub fn secondary_level_count(&self) -> usize {
        self.secondary_levels.len()
    }

    pub fn pair_count(&self) -> usize {
        self.primary_levels.len() * self.secondary_levels.len()
    }

    /// Dense index of a pair, row-major over (p1, p2).
    pub fn pair_index(&self, pair: PowerPair) -> usize {
        pair.p1_index * self.secondary_levels.len() + pair.p2_index
    }

    pub fn pair_from_index(&self, index: usize) -> PowerPair {
        let l2 = self.secondary_levels.len();
        PowerPair::new(index / l2, index % l2)
    }

    /// Serializes the scenario as a TOML document with every field explicit.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Document(e.to_string()))
    }

    /// Parses and validates a scenario document produced by [`Self::to_toml`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let scenario: Self =
            toml::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }
}

fn check_levels(name: &str, levels: &[f64]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::InvalidScenario(format!("{name} is empty")));
    }
    if !(levels[0] > 0.0) {
        return Err(Error::InvalidScenario(format!(
            "{name} must be positive, got {}",
            levels[0]
        )));
    }
    if levels.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidScenario(format!(
            "{name} must be strictly increasing"
        )));
    }
    Ok(())
}
