//! Named trainable tensors with gradient slots and optimizer state.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::scalar::Scalar;

/// Row-major 2-D tensor. Column vectors use shape `(n, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tensor {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// Initialization scheme for a new parameter tensor.
#[derive(Debug, Clone, Copy)]
pub enum Init {
    Zeros,
    /// Square identity; used for the frozen question projection.
    Identity,
    /// Uniform in `±sqrt(6 / (fan_in + fan_out))` for affine weights.
    GlorotUniform,
    /// `N(0, 0.02)` for embedding tables.
    NormalEmbedding,
}

#[derive(Debug, Clone)]
pub struct Param<T> {
    pub name: String,
    pub value: Tensor<T>,
    pub grad: Tensor<T>,
    /// First/second AdamW moments.
    pub m: Tensor<T>,
    pub v: Tensor<T>,
    /// Frozen parameters are skipped by the optimizer.
    pub trainable: bool,
}

/// All trainable tensors of a model, in creation order.
///
/// Creation order is the serialization order, so two models built from the
/// same config have identical layouts.
#[derive(Debug, Clone)]
pub struct ParameterStore<T> {
    params: Vec<Param<T>>,
    index: std::collections::BTreeMap<String, usize>,
    /// Optimizer step counter; non-decreasing.
    pub step: u64,
}

impl<T: Scalar> Default for ParameterStore<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> ParameterStore<T> {
    pub fn new() -> Self {
        ParameterStore {
            params: Vec::new(),
            index: std::collections::BTreeMap::new(),
            step: 0,
        }
    }

    /// Register a tensor. Panics on duplicate names: the model builder owns
    /// the namespace.
    pub fn add(&mut self, name: &str, rows: usize, cols: usize, init: Init, rng: &mut ChaCha8Rng) -> usize {
        assert!(
            !self.index.contains_key(name),
            "duplicate parameter name {name}"
        );
        let mut value = Tensor::zeros(rows, cols);
        match init {
            Init::Zeros => {}
            Init::Identity => {
                assert_eq!(rows, cols, "identity init needs a square tensor");
                for i in 0..rows {
                    value.data[i * cols + i] = T::one();
                }
            }
            Init::GlorotUniform => {
                let limit = (6.0 / (rows + cols) as f64).sqrt();
                for x in value.data.iter_mut() {
                    *x = T::from_f64(rng.gen_range(-limit..limit));
                }
            }
            Init::NormalEmbedding => {
                for x in value.data.iter_mut() {
                    let n: f64 = StandardNormal.sample(rng);
                    *x = T::from_f64(n * 0.02);
                }
            }
        }
        let idx = self.params.len();
        self.params.push(Param {
            name: name.to_string(),
            grad: Tensor::zeros(rows, cols),
            m: Tensor::zeros(rows, cols),
            v: Tensor::zeros(rows, cols),
            value,
            trainable: true,
        });
        self.index.insert(name.to_string(), idx);
        idx
    }

    pub fn set_trainable(&mut self, name: &str, trainable: bool) {
        let idx = self.index[name];
        self.params[idx].trainable = trainable;
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn id(&self, name: &str) -> usize {
        *self
            .index
            .get(name)
            .unwrap_or_else(|| panic!("unknown parameter {name}"))
    }

    pub fn get(&self, idx: usize) -> &Param<T> {
        &self.params[idx]
    }

    pub fn get_mut(&mut self, idx: usize) -> &mut Param<T> {
        &mut self.params[idx]
    }

    pub fn by_name(&self, name: &str) -> &Param<T> {
        &self.params[self.id(name)]
    }

    pub fn by_name_mut(&mut self, name: &str) -> &mut Param<T> {
        let idx = self.id(name);
        &mut self.params[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Param<T>> {
        self.params.iter()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut Param<T>> {
        self.params.iter_mut()
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Total scalar count across all tensors.
    pub fn scalar_count(&self) -> usize {
        self.params.iter().map(|p| p.value.len()).sum()
    }

    /// Reset every gradient slot to exactly zero.
    pub fn zero_grads(&mut self) {
        for p in self.params.iter_mut() {
            for g in p.grad.data.iter_mut() {
                *g = T::zero();
            }
        }
    }

    /// Add `delta` into the gradient slot of parameter `idx`.
    pub fn accumulate_grad(&mut self, idx: usize, delta: &[T]) {
        let g = &mut self.params[idx].grad.data;
        debug_assert_eq!(g.len(), delta.len());
        for (gi, di) in g.iter_mut().zip(delta) {
            *gi += *di;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn zero_grads_resets_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut store = ParameterStore::<f32>::new();
        let w = store.add("w", 2, 3, Init::GlorotUniform, &mut rng);
        store.accumulate_grad(w, &[1.0; 6]);
        store.zero_grads();
        assert!(store.get(w).grad.data.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn identity_init() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut store = ParameterStore::<f64>::new();
        let w = store.add("proj", 3, 3, Init::Identity, &mut rng);
        let t = &store.get(w).value;
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(t.data[r * 3 + c], if r == c { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn creation_order_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut store = ParameterStore::<f32>::new();
        store.add("b", 1, 1, Init::Zeros, &mut rng);
        store.add("a", 1, 1, Init::Zeros, &mut rng);
        let names: Vec<&str> = store.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["b", "a"]);
    }
}
