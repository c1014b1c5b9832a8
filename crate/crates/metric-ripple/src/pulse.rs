//! Discrete-pulse interaction transform: a delta pulse riding at the
//! particle speed is converted by the free-particle transfer function into
//! a spreading complex-Gaussian envelope,
//!
//! ```text
//! psi_out(x, t) = a * K(alpha, x - v t) * exp(i(k' x - omega t)),
//! alpha = -i hbar dt / (2 m),
//! ```
//!
//! where K is the Gaussian integral over the pulse's Fourier modes,
//!
//! ```text
//! integral e^{-alpha k^2} e^{i k u} dk = sqrt(pi/alpha) e^{-u^2 / 4 alpha}.
//! ```
//!
//! Two prefactor conventions are offered: `Standard` carries
//! sqrt(pi/alpha); `Paper` carries 1/(2 sqrt(pi alpha)). The envelope
//! e^{-u^2/4 alpha} is identical in both, and the two differ by the exact
//! u-independent constant 2 pi. Pure-imaginary alpha is the Fresnel limit:
//! the closed form uses the principal-branch square root and is validated
//! by epsilon-regularized quadrature. The de Broglie helpers quantify the
//! electron-energy bookkeeping implied by a given carrier wavelength.

use num_complex::Complex64;

use crate::consts::{ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR, PLANCK, SPEED_OF_LIGHT};
use crate::{Error, Result};

/// Damping needed at the truncation point: e^{-27.631} < 1e-12.
const TAIL_EXPONENT: f64 = 27.631021115928547;

/// Prefactor convention for the closed-form kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelConvention {
    /// sqrt(pi / alpha), the Gaussian-integral value.
    Standard,
    /// 1 / (2 sqrt(pi alpha)), as printed alongside the transform.
    Paper,
}

/// Constants of the interaction transfer function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferParams {
    a: f64,
    mass: f64,
    dt_interaction: f64,
}

impl TransferParams {
    pub fn new(a: f64, mass: f64, dt_interaction: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite {
                name: "a",
                value: a,
            });
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::NonPositive {
                name: "mass",
                value: mass,
            });
        }
        if !(dt_interaction > 0.0) || !dt_interaction.is_finite() {
            return Err(Error::NonPositive {
                name: "dt_interaction",
                value: dt_interaction,
            });
        }
        Ok(Self {
            a,
            mass,
            dt_interaction,
        })
    }

    pub fn prefactor(&self) -> f64 {
        self.a
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn dt_interaction(&self) -> f64 {
        self.dt_interaction
    }

    /// alpha = -i hbar dt / (2 m) \[m^2\]; purely imaginary by construction.
    pub fn alpha(&self) -> Complex64 {
        Complex64::new(0.0, -HBAR * self.dt_interaction / (2.0 * self.mass))
    }
}

/// Moving delta-pulse input: position x' = v t, carrier e^{i k' x - i omega t}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseInput {
    pub v: f64,
    pub k_prime: f64,
    pub omega: f64,
}

impl PulseInput {
    pub fn new(v: f64, k_prime: f64, omega: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                name: "v",
                value: v,
            });
        }
        if !(k_prime > 0.0) || !k_prime.is_finite() {
            return Err(Error::NonPositive {
                name: "k_prime",
                value: k_prime,
            });
        }
        if !omega.is_finite() {
            return Err(Error::NonFinite {
                name: "omega",
                value: omega,
            });
        }
        Ok(Self { v, k_prime, omega })
    }

    /// Pulse center x' = v t.
    pub fn center(&self, t: f64) -> f64 {
        self.v * t
    }
}

/// alpha = -i hbar dt / (2 m); errors on non-positive mass or duration.
pub fn alpha_of(mass: f64, dt: f64) -> Result<Complex64> {
    Ok(TransferParams::new(1.0, mass, dt)?.alpha())
}

fn validate_alpha(alpha: Complex64) -> Result<()> {
    if alpha == Complex64::ZERO || alpha.re < 0.0 || !alpha.re.is_finite() || !alpha.im.is_finite()
    {
        return Err(Error::InvalidAlpha {
            re: alpha.re,
            im: alpha.im,
        });
    }
    Ok(())
}

/// Closed form of `integral e^{-alpha k^2} e^{i k u} dk` under the chosen
/// prefactor convention, with the principal branch of the square root.
/// Pure-imaginary alpha is accepted as the (conditionally convergent)
/// Fresnel limit; Re(alpha) < 0 or alpha = 0 is rejected.
pub fn gaussian_kernel_closed(
    alpha: Complex64,
    u: f64,
    convention: KernelConvention,
) -> Result<Complex64> {
    validate_alpha(alpha)?;
    let pi = std::f64::consts::PI;
    let prefactor = match convention {
        KernelConvention::Standard => (Complex64::new(pi, 0.0) / alpha).sqrt(),
        KernelConvention::Paper => {
            Complex64::new(0.5, 0.0) / (Complex64::new(pi, 0.0) * alpha).sqrt()
        }
    };
    let envelope = (-Complex64::new(u * u, 0.0) / (4.0 * alpha)).exp();
    Ok(prefactor * envelope)
}

/// Composite-Simpson oracle for the same integral, over [-k_max, k_max]
/// with the damped integrand e^{-(alpha + epsilon) k^2} e^{i k u}.
///
/// Preconditions: epsilon > 0, n >= 1000, and the damped integrand below
/// 1e-12 at the truncation point, (Re(alpha) + epsilon) * k_max^2 >=
/// 27.631 (for pure-imaginary alpha this is the plain
/// e^{-epsilon k_max^2} < 1e-12 condition). Summation is fixed-order, so
/// results are bit-stable run to run.
pub fn gaussian_kernel_quadrature(
    alpha: Complex64,
    u: f64,
    epsilon: f64,
    k_max: f64,
    n: usize,
) -> Result<Complex64> {
    validate_alpha(alpha)?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Quadrature {
            reason: "epsilon must be positive",
        });
    }
    if n < 1000 {
        return Err(Error::Quadrature {
            reason: "need at least 1000 subintervals",
        });
    }
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::Quadrature {
            reason: "k_max must be positive",
        });
    }
    if (alpha.re + epsilon) * k_max * k_max < TAIL_EXPONENT {
        return Err(Error::Quadrature {
            reason: "k_max too small: damped integrand above 1e-12 at the cut",
        });
    }
    let n = n + (n % 2); // Simpson needs an even subinterval count
    let damped = alpha + Complex64::new(epsilon, 0.0);
    let h = 2.0 * k_max / n as f64;
    let f = |k: f64| (-damped * (k * k) + Complex64::new(0.0, k * u)).exp();
    let mut sum = f(-k_max) + f(k_max);
    for i in 1..n {
        let k = -k_max + i as f64 * h;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += f(k).scale(w);
    }
    Ok(sum.scale(h / 3.0))
}

/// Truncation point at which the damped integrand has decayed below
/// 1e-12, padded so the [`gaussian_kernel_quadrature`] precondition holds
/// after rounding.
pub fn quadrature_cutoff(alpha: Complex64, epsilon: f64) -> f64 {
    (TAIL_EXPONENT / (alpha.re + epsilon)).sqrt() * (1.0 + 1e-9)
}

/// Suggested Simpson subinterval count: resolves the fastest local phase
/// 2 |Im alpha| k_max + |u| with a safe number of points per radian.
pub fn quadrature_subintervals(alpha: Complex64, u: f64, k_max: f64) -> usize {
    let phase_rate = 2.0 * alpha.im.abs() * k_max + u.abs();
    let n = (k_max * phase_rate * 3.2).ceil() as usize;
    n.clamp(20_000, 4_000_000)
}

/// Transform output psi_out(x, t): prefactor times kernel envelope at
/// u = x - v t, times the carrier e^{i(k' x - omega t)}. The envelope
/// center rides at the particle speed; for the physical (pure-imaginary)
/// alpha its modulus is constant in u.
pub fn psi_out(
    x: f64,
    t: f64,
    pulse: &PulseInput,
    params: &TransferParams,
    convention: KernelConvention,
) -> Result<Complex64> {
    let u = x - pulse.center(t);
    let kernel = gaussian_kernel_closed(params.alpha(), u, convention)?;
    let carrier = Complex64::new(0.0, pulse.k_prime * x - pulse.omega * t).exp();
    Ok(kernel.scale(params.prefactor()) * carrier)
}

/// de Broglie wavelength lambda = h / p.
pub fn de_broglie_wavelength(momentum: f64) -> Result<f64> {
    if !(momentum > 0.0) || !momentum.is_finite() {
        return Err(Error::NonPositive {
            name: "momentum",
            value: momentum,
        });
    }
    Ok(PLANCK / momentum)
}

/// Momentum p = h / lambda (exact inverse of [`de_broglie_wavelength`]).
pub fn momentum_of(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositive {
            name: "lambda",
            value: lambda,
        });
    }
    Ok(PLANCK / lambda)
}

/// Electron de Broglie wavelength after acceleration through `voltage`.
/// The relativistic form is lambda = h / sqrt(2 m e V (1 + e V / 2 m c^2)).
pub fn electron_wavelength(voltage: f64, relativistic: bool) -> Result<f64> {
    if !(voltage > 0.0) || !voltage.is_finite() {
        return Err(Error::NonPositive {
            name: "voltage",
            value: voltage,
        });
    }
    let ev = ELEMENTARY_CHARGE * voltage;
    let correction = if relativistic {
        1.0 + ev / (2.0 * ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT)
    } else {
        1.0
    };
    Ok(PLANCK / (2.0 * ELECTRON_MASS * ev * correction).sqrt())
}

/// Accelerating voltage at which the electron de Broglie wavelength
/// equals `lambda`; inverse of [`electron_wavelength`] in closed form
/// (for the relativistic branch, eV = sqrt(m^2 c^4 + (h c / lambda)^2)
/// - m c^2).
pub fn accelerating_voltage_of(lambda: f64, relativistic: bool) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositive {
            name: "lambda",
            value: lambda,
        });
    }
    let p = PLANCK / lambda;
    let ev = if relativistic {
        let pc = p * SPEED_OF_LIGHT;
        let mc2 = ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
        (mc2 * mc2 + pc * pc).sqrt() - mc2
    } else {
        p * p / (2.0 * ELECTRON_MASS)
    };
    Ok(ev / ELEMENTARY_CHARGE)
}
