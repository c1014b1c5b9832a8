//! Gaussian-modulated plane-wave metric perturbation and the perturbed
//! metric g = eta + psi.
//!
//! The field is
//!
//! ```text
//! psi_jk(z, t) = A_jk * exp(-k'(z - z')^2 / (4 sigma)) * exp(i(k' z - omega t))
//! ```
//!
//! with the carrier phase written in the propagation coordinate z. The
//! envelope parameter sigma carries meters so the exponent is
//! dimensionless; the 1/e half-width of the envelope is `2*sqrt(sigma/k')`.
//! Downstream physics always takes the real part explicitly;
//! [`evaluate_packet`] returns the full complex tensor.

use num_complex::Complex64;

use crate::tensor::{Metric4, SymTensor3};
use crate::{Error, Result};

/// Parameters of the Gaussian perturbation, propagating along +z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    amplitude: SymTensor3,
    k_prime: f64,
    omega: f64,
    z_center: f64,
    sigma: f64,
}

impl GaussianPacket {
    /// Validates k' > 0, sigma > 0, omega >= 0 and a real amplitude.
    /// `sigma = f64::INFINITY` is accepted and disables the envelope.
    pub fn new(
        amplitude: SymTensor3,
        k_prime: f64,
        omega: f64,
        z_center: f64,
        sigma: f64,
    ) -> Result<Self> {
        if !(k_prime > 0.0) || !k_prime.is_finite() {
            return Err(Error::NonPositive {
                name: "k_prime",
                value: k_prime,
            });
        }
        if !(sigma > 0.0) {
            return Err(Error::NonPositive {
                name: "sigma",
                value: sigma,
            });
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::NonFinite {
                name: "omega",
                value: omega,
            });
        }
        if !z_center.is_finite() {
            return Err(Error::NonFinite {
                name: "z_center",
                value: z_center,
            });
        }
        for j in 0..3 {
            for k in 0..3 {
                if amplitude.get(j, k).im != 0.0 {
                    return Err(Error::ComplexAmplitude { row: j, col: k });
                }
            }
        }
        Ok(Self {
            amplitude,
            k_prime,
            omega,
            z_center,
            sigma,
        })
    }

    /// Carrier-only packet (sigma = infinity, unit envelope everywhere).
    pub fn without_envelope(
        amplitude: SymTensor3,
        k_prime: f64,
        omega: f64,
        z_center: f64,
    ) -> Result<Self> {
        Self::new(amplitude, k_prime, omega, z_center, f64::INFINITY)
    }

    pub fn amplitude(&self) -> &SymTensor3 {
        &self.amplitude
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn z_center(&self) -> f64 {
        self.z_center
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// 1/e half-width of the Gaussian envelope, `2*sqrt(sigma/k')`.
    pub fn envelope_half_width(&self) -> f64 {
        2.0 * (self.sigma / self.k_prime).sqrt()
    }

    /// Real envelope factor exp(-k'(z - z')^2 / (4 sigma)).
    pub fn envelope(&self, z: f64) -> f64 {
        let dz = z - self.z_center;
        (-self.k_prime * dz * dz / (4.0 * self.sigma)).exp()
    }

    /// Complex carrier exp(i(k' z - omega t)).
    pub fn carrier(&self, z: f64, t: f64) -> Complex64 {
        Complex64::new(0.0, self.k_prime * z - self.omega * t).exp()
    }
}

/// Evaluates psi_jk(z, t): the amplitude tensor scaled by envelope times
/// carrier. Symmetric by construction; total for valid packets.
pub fn evaluate_packet(p: &GaussianPacket, z: f64, t: f64) -> SymTensor3 {
    p.amplitude.scale(p.carrier(z, t).scale(p.envelope(z)))
}

/// g_munu = eta_munu + Re(psi_jk) on the spatial block; the time row and
/// column are untouched (the perturbation is purely spatial in TT gauge).
///
/// Rejects any entry with |psi_jk| >= 1: outside the perturbative regime.
pub fn perturbed_metric(eta: &Metric4, psi: &SymTensor3) -> Result<Metric4> {
    for j in 0..3 {
        for k in j..3 {
            let magnitude = psi.get(j, k).norm();
            if !(magnitude < 1.0) {
                return Err(Error::NonPerturbative {
                    row: j,
                    col: k,
                    magnitude,
                });
            }
        }
    }
    let mut g = *eta;
    for j in 0..3 {
        for k in j..3 {
            g.set(j + 1, k + 1, eta.get(j + 1, k + 1) + psi.get(j, k).re);
        }
    }
    Ok(g)
}
