//! Minimal dense-tensor compute with reverse-mode differentiation.
//!
//! Everything is generic over the scalar type: `f32` is the training and
//! persistence dtype, `f64` backs the finite-difference gradient checker.

mod gradcheck;
mod layers;
mod optim;
mod params;
mod scalar;
mod tape;

pub use gradcheck::{grad_check, GradCheckReport};
pub use layers::{
    dropout, feed_forward, layer_norm_rows, layer_norm_vec, mlp_forward, multi_head_attention,
    Activation, AttentionParams, MlpParams, MlpSpec,
};
pub use optim::{AdamConfig, LrSchedule};
pub use params::{Init, ParameterStore, Tensor};
pub use scalar::Scalar;
pub use tape::{NodeId, Tape};
