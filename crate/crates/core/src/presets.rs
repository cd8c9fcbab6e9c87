//! Canonical experiment setups.
//!
//! The reference scenario uses eight power levels from 0.05 W to 0.4 W for
//! both users, unit channel gains, 0.01 W receiver noise, SINR thresholds
//! (1.2, 0.7), ten sensors placed 100–300 m from each transmitter, and
//! observation noise at one tenth of the lowest-power signal level.

use crate::error::Result;
use crate::radio::{RadioScenario, ScenarioSpec, SensorNoiseSpec};

/// Power levels common to both users in the reference scenario.
pub const REFERENCE_LEVELS: [f64; 8] = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40];

/// Default wavelength in meters (2.4 GHz band).
pub const DEFAULT_WAVELENGTH: f64 = 0.125;

/// The reference scenario spec with its default sensor count and noise
/// divisor. Adjust `sensor_count` or `sensor_noise` on the returned value
/// for the reduced-sensor and high-noise variants.
pub fn reference_spec() -> ScenarioSpec {
    ScenarioSpec {
        primary_levels: REFERENCE_LEVELS.to_vec(),
        secondary_levels: REFERENCE_LEVELS.to_vec(),
        channel_gain_sq: [[1.0, 1.0], [1.0, 1.0]],
        noise_power: [0.01, 0.01],
        sinr_threshold: [1.2, 0.7],
        sensor_count: 10,
        wavelength: DEFAULT_WAVELENGTH,
        distance_range: [100.0, 300.0],
        sensor_noise: SensorNoiseSpec::Divisor { divisor: 10.0 },
    }
}

/// Generates the reference scenario for a master seed.
pub fn reference_scenario(master_seed: u64) -> Result<RadioScenario> {
    reference_spec().generate(master_seed)
}

/// The reference scenario with exact (noise-free) sensor readings, used by
/// the tabular-oracle comparisons.
pub fn reference_scenario_noiseless(master_seed: u64) -> Result<RadioScenario> {
    let mut spec = reference_spec();
    spec.sensor_noise = SensorNoiseSpec::Explicit { sigma: vec![0.0; spec.sensor_count] };
    spec.generate(master_seed)
}
