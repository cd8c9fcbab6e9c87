//! The learning agent: replay memory, the epsilon-greedy training loop,
//! greedy deployment, and an exact tabular oracle for the noiseless case.

mod oracle;
mod policy;
mod replay;
mod trainer;

pub use oracle::TabularOracle;
pub use policy::{act_greedy, run_policy, GreedyNetPolicy, GreedyRun, SecondaryPolicy, TrajectoryPoint};
pub use replay::{ReplayMemory, Transition};
pub use trainer::{
    compute_targets, epsilon, select_action, train, write_loss_csv, TrainConfig, TrainOutcome,
    Trainer,
};
