use super::network::{Gradients, QNetwork};

/// Adaptive-moment optimizer state: one first- and second-moment
/// accumulator per parameter plus the bias-correction step counter.
#[derive(Clone, Debug)]
pub struct AdamState {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub step_count: u64,
    moments: Vec<LayerMoments>,
}

#[derive(Clone, Debug)]
struct LayerMoments {
    weight_m: Vec<f64>,
    weight_v: Vec<f64>,
    bias_m: Vec<f64>,
    bias_v: Vec<f64>,
}

impl AdamState {
    /// Zeroed moments shaped like `net`, with the usual defaults
    /// (learning rate 1e-3, decays 0.9/0.999, epsilon 1e-8).
    pub fn new(net: &QNetwork) -> Self {
        let moments = net
            .layers
            .iter()
            .map(|l| LayerMoments {
                weight_m: vec![0.0; l.weights.len()],
                weight_v: vec![0.0; l.weights.len()],
                bias_m: vec![0.0; l.biases.len()],
                bias_v: vec![0.0; l.biases.len()],
            })
            .collect();
        AdamState {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            step_count: 0,
            moments,
        }
    }

    pub fn with_learning_rate(mut self, learning_rate: f64) -> Self {
        self.learning_rate = learning_rate;
        self
    }

    /// One bias-corrected update of every parameter in `net`.
    pub fn step(&mut self, net: &mut QNetwork, grads: &Gradients) {
        assert_eq!(net.layers.len(), grads.layers.len());
        self.step_count += 1;
        let t = self.step_count as i32;
        let bc1 = 1.0 - self.beta1.powi(t);
        let bc2 = 1.0 - self.beta2.powi(t);
        for ((layer, grad), moments) in net
            .layers
            .iter_mut()
            .zip(&grads.layers)
            .zip(&mut self.moments)
        {
            update_params(
                &mut layer.weights,
                &grad.weights,
                &mut moments.weight_m,
                &mut moments.weight_v,
                self.learning_rate,
                self.beta1,
                self.beta2,
                self.epsilon,
                bc1,
                bc2,
            );
            update_params(
                &mut layer.biases,
                &grad.biases,
                &mut moments.bias_m,
                &mut moments.bias_v,
                self.learning_rate,
                self.beta1,
                self.beta2,
                self.epsilon,
                bc1,
                bc2,
            );
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn update_params(
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
    lr: f64,
    beta1: f64,
    beta2: f64,
    epsilon: f64,
    bc1: f64,
    bc2: f64,
) {
    assert_eq!(params.len(), grads.len());
    for i in 0..params.len() {
        let g = grads[i];
        m[i] = beta1 * m[i] + (1.0 - beta1) * g;
        v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
        let m_hat = m[i] / bc1;
        let v_hat = v[i] / bc2;
        params[i] -= lr * m_hat / (v_hat.sqrt() + epsilon);
    }
}
