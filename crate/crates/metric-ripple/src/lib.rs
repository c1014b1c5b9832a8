//! Numerical core for a metric-perturbation model of single-particle dynamics.
//!
//! The crate implements, with built-in cross-checking oracles:
//!
//! * transverse-traceless (TT) Gaussian perturbation fields on a Minkowski
//!   background ([`packet`], [`gauge`]),
//! * geodesic-deviation trajectories, both the first-order closed form and a
//!   fixed-step Runge-Kutta integration of the equation of motion
//!   ([`geodesic`]),
//! * two-slit superposition of perturbation waves and the transverse
//!   displacement they imprint on a particle ([`interference`]),
//! * the cosine fixed-point map that sets the fringe displacement, with
//!   iteration, bisection, and cobweb diagnostics ([`fringe`]),
//! * the discrete-pulse interaction transform with its complex Gaussian
//!   kernel and a quadrature oracle ([`pulse`]).
//!
//! Everything is a pure function over immutable values; no operation keeps
//! shared mutable state, so concurrent use needs no coordination.

// Validation uses `!(x > 0.0)` so NaN is rejected along with the
// out-of-range values; index loops mirror the tensor algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod consts;
mod error;
pub mod fringe;
pub mod gauge;
pub mod geodesic;
pub mod interference;
pub mod packet;
pub mod pulse;
pub mod rng;
pub mod tensor;

pub use consts::PhysConst;
pub use error::{Error, Result};
pub use fringe::{FringeMap, IterationTrace};
pub use gauge::{FourVector, GaugeReport};
pub use geodesic::{ParticleState, PsiSampling, Trajectory};
pub use interference::{ScreenSample, Slit, TwoSlitSetup};
pub use packet::{evaluate_packet, perturbed_metric, GaussianPacket};
pub use pulse::{KernelConvention, PulseInput, TransferParams};
pub use tensor::{Metric4, SymTensor3};

pub use num_complex::Complex64;
