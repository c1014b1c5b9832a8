//! Particle trajectories under the perturbation field: the first-order
//! closed-form solution and a classical fixed-step fourth-order
//! Runge-Kutta integration of the equation of motion
//!
//! ```text
//! d^2 x_j / dt^2 = (1/2) Re(d^2 psi_jk / dt^2) x_k
//!                = -(omega^2 / 2) Re(psi_jk(z0, t)) x_k
//! ```
//!
//! The forcing uses the analytic second time derivative, and psi is
//! sampled at the particle's initial z-coordinate: the closed form is the
//! frozen-coordinate first-order solution, so the integrator must see the
//! same field for the comparison to isolate the O(|A|^2) terms.

use crate::gauge::check_tt;
use crate::packet::{evaluate_packet, GaussianPacket};
use crate::{Error, Result};

/// Gauge tolerance required of any packet fed to the closed form.
pub const GAUGE_TOL: f64 = 1e-12;

const Z_HAT: [f64; 3] = [0.0, 0.0, 1.0];

/// Snapshot of a particle: position \[m\], velocity \[m/s\], time \[s\].
/// In the TT coordinates used here, coordinate time equals proper time to
/// first order in the perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub position: [f64; 3],
    pub velocity: [f64; 3],
    pub time: f64,
}

/// Uniformly sampled integration output.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<ParticleState>,
    dt: f64,
}

impl Trajectory {
    pub fn samples(&self) -> &[ParticleState] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn last(&self) -> &ParticleState {
        self.samples.last().expect("trajectory is never empty")
    }
}

/// Where the field is sampled while the particle moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiSampling {
    /// At the particle's initial z-coordinate (the frozen-coordinate
    /// convention of the first-order derivation). Default.
    InitialPosition,
    /// At the unperturbed comoving coordinate z0 + v_z t.
    Comoving,
}

fn require_tt(p: &GaussianPacket) -> Result<()> {
    let report = check_tt(p.amplitude(), Z_HAT, GAUGE_TOL)?;
    if !report.passed {
        return Err(Error::GaugeViolation {
            residual: report.max_residual(),
        });
    }
    Ok(())
}

/// First-order trajectory
///
/// ```text
/// x_j(t) = x0_j + (1/2) Re(psi_jk) x0_k + v0_j t
/// ```
///
/// with psi evaluated at the initial z-coordinate (see [`PsiSampling`]).
/// Requires the packet amplitude to pass the TT check at 1e-12.
pub fn closed_form_position(
    p: &GaussianPacket,
    x0: [f64; 3],
    v0: [f64; 3],
    t: f64,
) -> Result<[f64; 3]> {
    closed_form_position_with(p, x0, v0, t, PsiSampling::InitialPosition)
}

/// [`closed_form_position`] with an explicit field-sampling convention.
pub fn closed_form_position_with(
    p: &GaussianPacket,
    x0: [f64; 3],
    v0: [f64; 3],
    t: f64,
    sampling: PsiSampling,
) -> Result<[f64; 3]> {
    require_tt(p)?;
    let z_eval = match sampling {
        PsiSampling::InitialPosition => x0[2],
        PsiSampling::Comoving => x0[2] + v0[2] * t,
    };
    let psi = evaluate_packet(p, z_eval, t);
    let shift = psi.re_mul_vec(x0);
    Ok([
        x0[0] + 0.5 * shift[0] + v0[0] * t,
        x0[1] + 0.5 * shift[1] + v0[1] * t,
        x0[2] + 0.5 * shift[2] + v0[2] * t,
    ])
}

/// The closed form's state at t = 0: position includes the instantaneous
/// (1/2) Re(psi) x0 offset and velocity the matching (1/2) d/dt Re(psi) x0
/// term. Used to seed the integrator when comparing the two routes.
pub fn first_order_state(p: &GaussianPacket, x0: [f64; 3], v0: [f64; 3]) -> Result<ParticleState> {
    let position = closed_form_position(p, x0, v0, 0.0)?;
    // d/dt Re(psi e^{-i omega t}) at t = 0 is omega * Im(psi(0))
    let psi0 = evaluate_packet(p, x0[2], 0.0);
    let im = psi0.im_mul_vec(x0);
    let w = 0.5 * p.omega();
    let velocity = [v0[0] + w * im[0], v0[1] + w * im[1], v0[2] + w * im[2]];
    Ok(ParticleState {
        position,
        velocity,
        time: 0.0,
    })
}

fn acceleration(p: &GaussianPacket, z_eval: f64, t: f64, x: &[f64; 3]) -> [f64; 3] {
    let psi = evaluate_packet(p, z_eval, t);
    let coupled = psi.re_mul_vec(*x);
    let factor = -0.5 * p.omega() * p.omega();
    [
        factor * coupled[0],
        factor * coupled[1],
        factor * coupled[2],
    ]
}

/// One classical RK4 step; `dt` may be negative (used by the reversal
/// tests).
fn rk4_step(
    p: &GaussianPacket,
    z_eval: f64,
    t: f64,
    dt: f64,
    x: [f64; 3],
    v: [f64; 3],
) -> ([f64; 3], [f64; 3]) {
    let half = 0.5 * dt;

    let k1x = v;
    let k1v = acceleration(p, z_eval, t, &x);

    let x2 = [
        x[0] + half * k1x[0],
        x[1] + half * k1x[1],
        x[2] + half * k1x[2],
    ];
    let v2 = [
        v[0] + half * k1v[0],
        v[1] + half * k1v[1],
        v[2] + half * k1v[2],
    ];
    let k2x = v2;
    let k2v = acceleration(p, z_eval, t + half, &x2);

    let x3 = [
        x[0] + half * k2x[0],
        x[1] + half * k2x[1],
        x[2] + half * k2x[2],
    ];
    let v3 = [
        v[0] + half * k2v[0],
        v[1] + half * k2v[1],
        v[2] + half * k2v[2],
    ];
    let k3x = v3;
    let k3v = acceleration(p, z_eval, t + half, &x3);

    let x4 = [x[0] + dt * k3x[0], x[1] + dt * k3x[1], x[2] + dt * k3x[2]];
    let v4 = [v[0] + dt * k3v[0], v[1] + dt * k3v[1], v[2] + dt * k3v[2]];
    let k4x = v4;
    let k4v = acceleration(p, z_eval, t + dt, &x4);

    let sixth = dt / 6.0;
    let xn = [
        x[0] + sixth * (k1x[0] + 2.0 * k2x[0] + 2.0 * k3x[0] + k4x[0]),
        x[1] + sixth * (k1x[1] + 2.0 * k2x[1] + 2.0 * k3x[1] + k4x[1]),
        x[2] + sixth * (k1x[2] + 2.0 * k2x[2] + 2.0 * k3x[2] + k4x[2]),
    ];
    let vn = [
        v[0] + sixth * (k1v[0] + 2.0 * k2v[0] + 2.0 * k3v[0] + k4v[0]),
        v[1] + sixth * (k1v[1] + 2.0 * k2v[1] + 2.0 * k3v[1] + k4v[1]),
        v[2] + sixth * (k1v[2] + 2.0 * k2v[2] + 2.0 * k3v[2] + k4v[2]),
    ];
    (xn, vn)
}

/// Fixed-step integration from an arbitrary state; `t1 < t0` integrates
/// backward. Sample times are computed as t0 + i*dt, never accumulated.
fn integrate_from(
    p: &GaussianPacket,
    z_eval: f64,
    x0: [f64; 3],
    v0: [f64; 3],
    t0: f64,
    t1: f64,
    steps: usize,
) -> Trajectory {
    let dt = (t1 - t0) / steps.max(1) as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(ParticleState {
        position: x0,
        velocity: v0,
        time: t0,
    });
    let mut x = x0;
    let mut v = v0;
    for i in 0..steps {
        let t = t0 + i as f64 * dt;
        let (xn, vn) = rk4_step(p, z_eval, t, dt, x, v);
        x = xn;
        v = vn;
        samples.push(ParticleState {
            position: x,
            velocity: v,
            time: t0 + (i + 1) as f64 * dt,
        });
    }
    Trajectory { samples, dt }
}

fn step_count(t_end: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::NonPositive {
            name: "dt",
            value: dt,
        });
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::NonFinite {
            name: "t_end",
            value: t_end,
        });
    }
    let ratio = t_end / dt;
    let n = ratio.round();
    if (ratio - n).abs() > 1e-9 {
        return Err(Error::StepMismatch {
            dt,
            t_end,
            remainder: ratio - n,
        });
    }
    Ok(n as usize)
}

/// Integrates the equation of motion from (x0, v0) over [0, t_end] with a
/// uniform step. `dt` must be positive and divide `t_end` to within 1e-9
/// of a step; the first sample is exactly (x0, v0).
pub fn integrate_deviation(
    p: &GaussianPacket,
    x0: [f64; 3],
    v0: [f64; 3],
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    let steps = step_count(t_end, dt)?;
    Ok(integrate_from(p, x0[2], x0, v0, 0.0, t_end, steps))
}

/// Maximum distance between the closed-form trajectory and the integrated
/// one, over all samples.
///
/// The integrator is seeded with the closed form's t = 0 state
/// ([`first_order_state`]) so that both routes describe the same particle;
/// the report then measures only the O(|A|^2) terms the first-order
/// solution drops.
pub fn deviation_report(
    p: &GaussianPacket,
    x0: [f64; 3],
    v0: [f64; 3],
    t_end: f64,
    dt: f64,
) -> Result<f64> {
    let steps = step_count(t_end, dt)?;
    let seed = first_order_state(p, x0, v0)?;
    let traj = integrate_from(p, x0[2], seed.position, seed.velocity, 0.0, t_end, steps);
    let mut max_dev: f64 = 0.0;
    for s in traj.samples() {
        let cf = closed_form_position(p, x0, v0, s.time)?;
        let d = ((s.position[0] - cf[0]).powi(2)
            + (s.position[1] - cf[1]).powi(2)
            + (s.position[2] - cf[2]).powi(2))
        .sqrt();
        max_dev = max_dev.max(d);
    }
    Ok(max_dev)
}
