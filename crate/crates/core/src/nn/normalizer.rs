use crate::error::{Error, Result};
use crate::radio::StateVector;

/// Per-dimension affine input normalization. Raw sensor readings sit around
/// 1e-9 W, which would stall gradient descent; states are shifted by the
/// sample mean and divided by the sample deviation before entering the
/// network.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalizer {
    pub shift: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Normalizer {
    /// Deviations below this floor are clamped so constant dimensions map
    /// to exactly zero instead of dividing by zero.
    pub const MIN_SCALE: f64 = 1e-30;

    /// No-op normalization (zero shift, unit scale).
    pub fn identity(dim: usize) -> Self {
        Normalizer {
            shift: vec![0.0; dim],
            scale: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    /// Fits shift to the per-dimension sample mean and scale to the sample
    /// standard deviation, floored at [`Self::MIN_SCALE`]. Needs at least
    /// two samples.
    pub fn fit<'a>(samples: impl IntoIterator<Item = &'a StateVector>) -> Result<Self> {
        let samples: Vec<&StateVector> = samples.into_iter().collect();
        if samples.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "normalizer fit needs >= 2 samples, got {}",
                samples.len()
            )));
        }
        let dim = samples[0].len();
        for s in &samples {
            if s.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.len(),
                });
            }
        }
        let n = samples.len() as f64;
        let mut shift = vec![0.0; dim];
        for s in &samples {
            for (acc, &x) in shift.iter_mut().zip(&s.rss) {
                *acc += x;
            }
        }
        for m in &mut shift {
            *m /= n;
        }
        let mut scale = vec![0.0; dim];
        for s in &samples {
            for ((acc, &x), &m) in scale.iter_mut().zip(&s.rss).zip(&shift) {
                let d = x - m;
                *acc += d * d;
            }
        }
        for v in &mut scale {
            *v = (*v / (n - 1.0)).sqrt().max(Self::MIN_SCALE);
        }
        Ok(Normalizer { shift, scale })
    }

    /// Maps `x -> (x - shift) / scale`.
    pub fn apply(&self, state: &StateVector) -> Vec<f64> {
        debug_assert_eq!(state.len(), self.dim());
        state
            .rss
            .iter()
            .zip(self.shift.iter().zip(&self.scale))
            .map(|(&x, (&m, &s))| (x - m) / s)
            .collect()
    }

    /// [`Self::apply`] writing into a preallocated slice.
    pub fn apply_into(&self, state: &StateVector, out: &mut [f64]) {
        debug_assert_eq!(state.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        for ((o, &x), (&m, &s)) in out
            .iter_mut()
            .zip(&state.rss)
            .zip(self.shift.iter().zip(&self.scale))
        {
            *o = (x - m) / s;
        }
    }
}
