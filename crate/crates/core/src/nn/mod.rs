//! A small fully connected action-value network: forward pass, hand-written
//! backpropagation for the masked squared-error loss, Adam updates, input
//! normalization, and a binary checkpoint format.

mod adam;
mod checkpoint;
mod linalg;
mod network;
mod normalizer;

pub use adam::AdamState;
pub use checkpoint::{load_checkpoint, read_checkpoint, save_checkpoint, write_checkpoint};
pub use network::{Activation, Gradients, Layer, LayerGradients, QNetwork, TrainingBatch};
pub use normalizer::Normalizer;

/// Index of the largest entry, ties broken toward the lowest index.
pub fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::argmax_first;

    #[test]
    fn argmax_breaks_ties_low() {
        assert_eq!(argmax_first(&[0.0, 5.0, 1.0, 5.0]), 1);
        assert_eq!(argmax_first(&[2.0, 2.0, 2.0]), 0);
        assert_eq!(argmax_first(&[-1.0]), 0);
    }
}
