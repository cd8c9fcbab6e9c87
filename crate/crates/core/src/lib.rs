//! Simulator and learning toolkit for transmit-power control in a two-user
//! spectrum-sharing radio system.
//!
//! A licensed primary transmitter follows one of two fixed power-control
//! policies; an opportunistic secondary transmitter learns, from noisy
//! received-signal-strength readings collected by a set of sensor nodes, how
//! to pick its own transmit power so that both links reach their SINR
//! targets within a few time frames.
//!
//! The crate is organized as:
//!
//! - [`radio`] — channel physics, sensor observations, goal logic, and the
//!   primary user's power-control policies.
//! - [`nn`] — a small fully connected action-value network with
//!   hand-written backpropagation and an Adam optimizer.
//! - [`agent`] — replay memory, the epsilon-greedy training loop, greedy
//!   deployment, and an exact tabular value-iteration oracle.
//! - [`dcpc`] — the distributed constrained power-control baseline.
//! - [`eval`] — success-rate / transition-step metrics, training curves,
//!   and trajectory comparisons, all emitted as CSV.
//!
//! Every stochastic component draws from a ChaCha stream derived from a
//! single master seed (see [`rng`]), so any run is reproducible bit for bit.

pub mod agent;
pub mod dcpc;
pub mod error;
pub mod eval;
pub mod nn;
pub mod presets;
pub mod radio;
pub mod rng;

pub use agent::{
    act_greedy, compute_targets, epsilon, run_policy, select_action, train, GreedyNetPolicy,
    GreedyRun, ReplayMemory, SecondaryPolicy, TabularOracle, TrainConfig, TrainOutcome, Trainer,
    TrajectoryPoint, Transition,
};
pub use dcpc::{dcpc_update, run_dcpc, DcpcPoint, DcpcRun};
pub use error::{Error, Result};
pub use eval::{
    compare_trajectories, evaluate, evaluate_policy, training_curve, EpisodeRecord, EvalConfig,
    EvalMetrics, TrainingCurvePoint, TrajectoryComparison,
};
pub use nn::{
    load_checkpoint, save_checkpoint, AdamState, Gradients, Normalizer, QNetwork, TrainingBatch,
};
pub use radio::{
    discretize, primary_update_classic, primary_update_stepwise, PowerPair, PrimaryPolicy,
    RadioScenario, ScenarioSpec, SensorGeometry, SensorNoiseSpec, StateVector, User,
};
