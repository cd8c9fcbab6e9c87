//! Radio physics: SINR, Friis path loss, sensor observations, goal logic,
//! and the primary user's power-control policies.

mod physics;
mod primary;
mod scenario;

pub use physics::discretize;
pub use primary::{primary_update_classic, primary_update_stepwise, PrimaryPolicy};
pub use scenario::{
    PowerPair, RadioScenario, ScenarioSpec, SensorGeometry, SensorNoiseSpec, StateVector, User,
};
