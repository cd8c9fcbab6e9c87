use rand::Rng;

use super::linalg::{gemm, gemm_nt, gemm_tn};
use crate::error::{Error, Result};

/// Hidden-layer widths of the standard action-value network.
pub const HIDDEN_DIMS: [usize; 3] = [256, 256, 512];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Tanh,
    Linear,
}

impl Activation {
    fn apply_in_place(self, values: &mut [f64]) {
        match self {
            Activation::Relu => {
                for v in values {
                    if *v < 0.0 {
                        *v = 0.0;
                    }
                }
            }
            Activation::Tanh => {
                for v in values {
                    *v = v.tanh();
                }
            }
            Activation::Linear => {}
        }
    }

    /// Derivative expressed through the activation output. The ReLU
    /// derivative at exactly zero is taken as zero.
    fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::Relu => {
                if y > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => 1.0 - y * y,
            Activation::Linear => 1.0,
        }
    }
}

/// One fully connected layer. Weights are stored input-major:
/// `weights[i * out_dim + o]` connects input `i` to output `o`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    pub activation: Activation,
}

impl Layer {
    fn init(in_dim: usize, out_dim: usize, activation: Activation, rng: &mut impl Rng) -> Self {
        // Zero-mean uniform weights scaled by 1/sqrt(fan_in); zero biases.
        let scale = 1.0 / (in_dim as f64).sqrt();
        let weights = (0..in_dim * out_dim)
            .map(|_| rng.gen_range(-scale..scale))
            .collect();
        Layer {
            in_dim,
            out_dim,
            weights,
            biases: vec![0.0; out_dim],
            activation,
        }
    }
}

/// Parameter-shaped gradients for one layer.
#[derive(Clone, Debug)]
pub struct LayerGradients {
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

/// Gradients for every layer of a [`QNetwork`], in layer order.
#[derive(Clone, Debug)]
pub struct Gradients {
    pub layers: Vec<LayerGradients>,
}

/// A minibatch for the masked squared-error loss: `states` holds
/// `batch * input_dim` normalized inputs row-major, and for each row only
/// the output selected by `actions` is regressed toward `targets`.
#[derive(Clone, Copy, Debug)]
pub struct TrainingBatch<'a> {
    pub states: &'a [f64],
    pub actions: &'a [usize],
    pub targets: &'a [f64],
}

impl TrainingBatch<'_> {
    pub fn batch_size(&self) -> usize {
        self.actions.len()
    }

    fn validate(&self, net: &QNetwork) -> Result<()> {
        let batch = self.actions.len();
        if batch == 0 {
            return Err(Error::InvalidConfig("empty training batch".into()));
        }
        if self.states.len() != batch * net.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: batch * net.input_dim(),
                got: self.states.len(),
            });
        }
        if self.targets.len() != batch {
            return Err(Error::DimensionMismatch {
                expected: batch,
                got: self.targets.len(),
            });
        }
        if let Some(&bad) = self.actions.iter().find(|&&a| a >= net.output_dim()) {
            return Err(Error::DimensionMismatch {
                expected: net.output_dim(),
                got: bad,
            });
        }
        Ok(())
    }
}

/// Fully connected action-value network. The input width matches the sensor
/// count, the output width the number of secondary power levels; entry `i`
/// of the output estimates the value of switching to level `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QNetwork {
    pub layers: Vec<Layer>,
}

impl QNetwork {
    /// Standard topology: three hidden layers of widths 256, 256, 512 with
    /// ReLU, ReLU, tanh activations and a linear output layer.
    pub fn new(input_dim: usize, output_dim: usize, rng: &mut impl Rng) -> Self {
        let dims = [
            input_dim,
            HIDDEN_DIMS[0],
            HIDDEN_DIMS[1],
            HIDDEN_DIMS[2],
            output_dim,
        ];
        Self::with_dims(&dims, rng)
    }

    /// Arbitrary layer widths with the canonical activation assignment:
    /// every hidden layer is ReLU except the last, which is tanh; the
    /// output layer is linear.
    pub fn with_dims(dims: &[usize], rng: &mut impl Rng) -> Self {
        assert!(dims.len() >= 2, "need at least input and output widths");
        assert!(dims.iter().all(|&d| d >= 1), "layer widths must be >= 1");
        let layer_count = dims.len() - 1;
        let layers = (0..layer_count)
            .map(|l| {
                let activation = if l + 1 == layer_count {
                    Activation::Linear
                } else if l + 2 == layer_count {
                    Activation::Tanh
                } else {
                    Activation::Relu
                };
                Layer::init(dims[l], dims[l + 1], activation, rng)
            })
            .collect();
        QNetwork { layers }
    }

    pub fn input_dim(&self) -> usize {
        self.layers.first().map_or(0, |l| l.in_dim)
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(0, |l| l.out_dim)
    }

    /// Layer widths from input to output, e.g. `[10, 256, 256, 512, 8]`.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.input_dim()];
        dims.extend(self.layers.iter().map(|l| l.out_dim));
        dims
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    pub fn all_finite(&self) -> bool {
        self.layers.iter().all(|l| {
            l.weights.iter().all(|w| w.is_finite()) && l.biases.iter().all(|b| b.is_finite())
        })
    }

    /// Action values for a single normalized input.
    pub fn forward(&self, input: &[f64]) -> Result<Vec<f64>> {
        self.forward_batch(input, 1)
    }

    /// Action values for `batch` normalized inputs packed row-major;
    /// returns `batch * output_dim` values row-major.
    pub fn forward_batch(&self, inputs: &[f64], batch: usize) -> Result<Vec<f64>> {
        if inputs.len() != batch * self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: batch * self.input_dim(),
                got: inputs.len(),
            });
        }
        let mut current = inputs.to_vec();
        for layer in &self.layers {
            current = apply_layer(layer, &current, batch);
        }
        Ok(current)
    }

    /// Forward pass keeping every layer's activation, input included.
    fn forward_collect(&self, inputs: &[f64], batch: usize) -> Vec<Vec<f64>> {
        let mut activations = Vec::with_capacity(self.layers.len() + 1);
        activations.push(inputs.to_vec());
        for layer in &self.layers {
            let next = apply_layer(layer, activations.last().unwrap(), batch);
            activations.push(next);
        }
        activations
    }

    /// Mean over the batch of the squared error between each sample's
    /// target and the output entry of the action taken in that sample.
    pub fn loss(&self, batch: &TrainingBatch) -> Result<f64> {
        batch.validate(self)?;
        let b = batch.batch_size();
        let out = self.forward_batch(batch.states, b)?;
        let l2 = self.output_dim();
        let mut total = 0.0;
        for i in 0..b {
            let q = out[i * l2 + batch.actions[i]];
            let diff = batch.targets[i] - q;
            total += diff * diff;
        }
        Ok(total / b as f64)
    }

    /// Exact gradients of [`Self::loss`] with respect to every parameter,
    /// plus the loss value itself. Per sample, only the taken action's
    /// output receives direct error signal.
    pub fn loss_and_gradients(&self, batch: &TrainingBatch) -> Result<(f64, Gradients)> {
        batch.validate(self)?;
        let b = batch.batch_size();
        let activations = self.forward_collect(batch.states, b);
        let l2 = self.output_dim();
        let out = activations.last().unwrap();

        // Seed: dL/d(out[i][a_i]) = 2 (out - target) / batch.
        let mut loss = 0.0;
        let mut delta = vec![0.0; b * l2];
        for i in 0..b {
            let q = out[i * l2 + batch.actions[i]];
            let diff = q - batch.targets[i];
            loss += diff * diff;
            delta[i * l2 + batch.actions[i]] = 2.0 * diff / b as f64;
        }
        loss /= b as f64;

        let mut grads = Vec::with_capacity(self.layers.len());
        for (l, layer) in self.layers.iter().enumerate().rev() {
            // delta currently holds dL/d(activation of layer l); fold the
            // activation derivative in to get dL/d(pre-activation).
            let output = &activations[l + 1];
            for (d, &y) in delta.iter_mut().zip(output.iter()) {
                *d *= layer.activation.derivative_from_output(y);
            }

            let input = &activations[l];
            let mut dw = vec![0.0; layer.in_dim * layer.out_dim];
            gemm_tn(layer.in_dim, b, layer.out_dim, input, &delta, &mut dw);

            let mut db = vec![0.0; layer.out_dim];
            for row in delta.chunks_exact(layer.out_dim) {
                for (acc, &d) in db.iter_mut().zip(row) {
                    *acc += d;
                }
            }

            if l > 0 {
                let mut prev = vec![0.0; b * layer.in_dim];
                gemm_nt(b, layer.out_dim, layer.in_dim, &delta, &layer.weights, &mut prev);
                delta = prev;
            }
            grads.push(LayerGradients { weights: dw, biases: db });
        }
        grads.reverse();
        Ok((loss, Gradients { layers: grads }))
    }
}

fn apply_layer(layer: &Layer, input: &[f64], batch: usize) -> Vec<f64> {
    let mut out = vec![0.0; batch * layer.out_dim];
    gemm(batch, layer.in_dim, layer.out_dim, input, &layer.weights, &mut out);
    for row in out.chunks_exact_mut(layer.out_dim) {
        for (v, &bias) in row.iter_mut().zip(&layer.biases) {
            *v += bias;
        }
    }
    layer.activation.apply_in_place(&mut out);
    out
}

impl Gradients {
    /// Largest absolute entry across all parameters; zero for empty nets.
    pub fn max_abs(&self) -> f64 {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(&l.biases))
            .fold(0.0, |acc: f64, &g| acc.max(g.abs()))
    }
}
