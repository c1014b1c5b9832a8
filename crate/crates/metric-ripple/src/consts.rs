//! Physical constants (SI units).

use crate::{Error, Result};

/// CODATA-2018 constants used across the crate.
///
/// `hbar` is stored as `h / 2pi` rather than the independently rounded
/// CODATA digits, so `h == 2*pi*hbar` holds to machine precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConst {
    /// Planck constant \[J s\].
    pub h: f64,
    /// Reduced Planck constant h/2pi \[J s\].
    pub hbar: f64,
    /// Speed of light in vacuum \[m/s\].
    pub c: f64,
    /// Electron rest mass \[kg\].
    pub electron_mass: f64,
    /// Elementary charge \[C\].
    pub electron_charge: f64,
}

/// Planck constant \[J s\], exact by SI definition.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant \[J s\].
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
/// Speed of light in vacuum \[m/s\], exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Electron rest mass \[kg\].
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Elementary charge \[C\], exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

impl PhysConst {
    /// The SI value set.
    pub const fn si() -> Self {
        Self {
            h: PLANCK,
            hbar: HBAR,
            c: SPEED_OF_LIGHT,
            electron_mass: ELECTRON_MASS,
            electron_charge: ELEMENTARY_CHARGE,
        }
    }

    /// Checks positivity of every constant and `h == 2*pi*hbar` to 1e-12
    /// relative.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("h", self.h),
            ("hbar", self.hbar),
            ("c", self.c),
            ("electron_mass", self.electron_mass),
            ("electron_charge", self.electron_charge),
        ];
        for (name, value) in fields {
            if !(value > 0.0) {
                return Err(Error::NonPositive { name, value });
            }
        }
        let expected = 2.0 * std::f64::consts::PI * self.hbar;
        if ((self.h - expected) / self.h).abs() > 1e-12 {
            return Err(Error::NonFinite {
                name: "h vs 2*pi*hbar",
                value: self.h - expected,
            });
        }
        Ok(())
    }
}

impl Default for PhysConst {
    fn default() -> Self {
        Self::si()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_values_are_consistent() {
        let c = PhysConst::si();
        assert!(c.validate().is_ok());
        assert!(((c.h - 2.0 * std::f64::consts::PI * c.hbar) / c.h).abs() <= 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        let mut c = PhysConst::si();
        c.electron_mass = 0.0;
        assert!(matches!(
            c.validate(),
            Err(Error::NonPositive {
                name: "electron_mass",
                ..
            })
        ));
    }
}
