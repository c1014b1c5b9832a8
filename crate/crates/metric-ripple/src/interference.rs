//! Two-slit superposition of perturbation waves and the transverse
//! displacement pattern at the screen.
//!
//! Wave B travels the extra path `delta_z = x d / D`, shifting both its
//! envelope and its carrier. The merged closed form
//!
//! ```text
//! psi_C = 2 A_jk exp(-k'(z - z')^2 / 4 sigma)
//!         * exp(i(k'(z + dz/2) - omega t)) * cos(k' dz / 2)
//! ```
//!
//! collapses the two envelopes onto a single center; with the envelope
//! disabled it equals the exact sum of the slit waves (product-to-sum
//! identity), and with the envelope on it deviates by O(k' dz^2 / sigma).
//! Both routes are exposed so each can check the other.

use num_complex::Complex64;

use crate::packet::{evaluate_packet, GaussianPacket};
use crate::tensor::SymTensor3;
use crate::{Error, Result};

/// Slit geometry plus the packet the slits re-emit.
///
/// Invariants: d > 0, D > 0, lambda > 0 and the packet wavenumber matches
/// 2*pi/lambda to 1e-12 relative. A separation-to-distance ratio above
/// 0.01 is legal but reported by [`TwoSlitSetup::geometry_warnings`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSlitSetup {
    slit_separation: f64,
    screen_distance: f64,
    wavelength: f64,
    packet: GaussianPacket,
}

/// Which slit a wave emanates from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slit {
    A,
    B,
}

/// One screen-plane sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenSample {
    /// Transverse screen coordinate \[m\].
    pub x: f64,
    /// Path difference x d / D \[m\].
    pub delta_z: f64,
    /// Complex field at the sample (merged closed form at z = z', t = 0).
    pub psi: SymTensor3,
    /// Transverse displacement amplitude \[m\].
    pub displacement: f64,
}

impl TwoSlitSetup {
    /// Builds the setup and the packet it re-emits; the packet wavenumber
    /// is derived from the wavelength.
    pub fn new(
        slit_separation: f64,
        screen_distance: f64,
        wavelength: f64,
        amplitude: SymTensor3,
        sigma: f64,
        omega: f64,
        z_center: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("d", slit_separation),
            ("D", screen_distance),
            ("lambda", wavelength),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositive { name, value });
            }
        }
        let k_prime = 2.0 * std::f64::consts::PI / wavelength;
        let packet = GaussianPacket::new(amplitude, k_prime, omega, z_center, sigma)?;
        Ok(Self {
            slit_separation,
            screen_distance,
            wavelength,
            packet,
        })
    }

    /// Adopts an existing packet, requiring k' = 2*pi/lambda to 1e-12
    /// relative.
    pub fn with_packet(
        slit_separation: f64,
        screen_distance: f64,
        wavelength: f64,
        packet: GaussianPacket,
    ) -> Result<Self> {
        for (name, value) in [
            ("d", slit_separation),
            ("D", screen_distance),
            ("lambda", wavelength),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositive { name, value });
            }
        }
        let expected = 2.0 * std::f64::consts::PI / wavelength;
        if ((packet.k_prime() - expected) / expected).abs() > 1e-12 {
            return Err(Error::WavenumberMismatch {
                packet: packet.k_prime(),
                expected,
            });
        }
        Ok(Self {
            slit_separation,
            screen_distance,
            wavelength,
            packet,
        })
    }

    pub fn slit_separation(&self) -> f64 {
        self.slit_separation
    }

    pub fn screen_distance(&self) -> f64 {
        self.screen_distance
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn packet(&self) -> &GaussianPacket {
        &self.packet
    }

    /// Small-angle quality warnings (none means the geometry is clean).
    pub fn geometry_warnings(&self) -> Vec<String> {
        let ratio = self.slit_separation / self.screen_distance;
        if ratio > 0.01 {
            vec![format!(
                "slit separation over screen distance d/D = {ratio:.3e} exceeds 0.01; \
                 the small-angle path difference x*d/D is inaccurate"
            )]
        } else {
            Vec::new()
        }
    }

    /// Path difference delta_z = x d / D (sign follows x).
    pub fn path_difference(&self, x: f64) -> f64 {
        x * self.slit_separation / self.screen_distance
    }

    /// Field of one slit at propagation coordinate z: wave B is evaluated
    /// at z + delta_z (envelope and carrier both shifted).
    pub fn slit_wave(&self, which: Slit, z: f64, t: f64, delta_z: f64) -> SymTensor3 {
        let coord = match which {
            Slit::A => z,
            Slit::B => z + delta_z,
        };
        evaluate_packet(&self.packet, coord, t)
    }

    /// Merged closed form of the superposed field at screen coordinate x.
    pub fn pattern_closed_form(&self, z: f64, t: f64, x: f64) -> SymTensor3 {
        let dz = self.path_difference(x);
        let p = &self.packet;
        let phase = Complex64::new(0.0, p.k_prime() * (z + dz / 2.0) - p.omega() * t).exp();
        let scalar = phase.scale(2.0 * p.envelope(z) * (p.k_prime() * dz / 2.0).cos());
        p.amplitude().scale(scalar)
    }

    /// Transverse displacement amplitude at screen coordinate x for a
    /// particle entering at height y0, with the envelope factor at its
    /// center (unit envelope):
    ///
    /// ```text
    /// x = y0 |A_12| cos(k' dz / 2)
    /// ```
    ///
    /// Requires the polarization A_31 = A_32 = A_33 = 0.
    pub fn displacement_x(&self, y0: f64, x: f64) -> Result<f64> {
        self.displacement_x_at(y0, x, self.packet.z_center())
    }

    /// [`TwoSlitSetup::displacement_x`] with the envelope factor taken at
    /// an explicit z.
    pub fn displacement_x_at(&self, y0: f64, x: f64, z: f64) -> Result<f64> {
        let a = self.packet.amplitude();
        if a.get(2, 0).norm() != 0.0 || a.get(2, 1).norm() != 0.0 || a.get(2, 2).norm() != 0.0 {
            return Err(Error::Polarization);
        }
        let p = &self.packet;
        let dz = self.path_difference(x);
        Ok(y0 * a.get(0, 1).norm() * p.envelope(z) * (p.k_prime() * dz / 2.0).cos())
    }

    /// Uniform screen scan: n samples of field and displacement across
    /// [x_min, x_max].
    pub fn screen_profile(
        &self,
        x_min: f64,
        x_max: f64,
        n: usize,
        y0: f64,
    ) -> Result<Vec<ScreenSample>> {
        if n < 2 {
            return Err(Error::InvalidRange {
                reason: "need at least 2 samples",
            });
        }
        if !(x_min < x_max) {
            return Err(Error::InvalidRange {
                reason: "x_min must be below x_max",
            });
        }
        let step = (x_max - x_min) / (n - 1) as f64;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = x_min + i as f64 * step;
            out.push(ScreenSample {
                x,
                delta_z: self.path_difference(x),
                psi: self.pattern_closed_form(self.packet.z_center(), 0.0, x),
                displacement: self.displacement_x(y0, x)?,
            });
        }
        Ok(out)
    }
}

/// Elementwise complex sum of fields; rejects an empty list.
pub fn superpose(fields: &[SymTensor3]) -> Result<SymTensor3> {
    let (first, rest) = fields.split_first().ok_or(Error::EmptySuperposition)?;
    let mut acc = *first;
    for f in rest {
        acc = acc.add(f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    /// Unit-scale geometry keeps carrier phases O(1), so the exact
    /// product-to-sum identity is observable at f64 precision.
    fn unit_setup() -> TwoSlitSetup {
        let amp = SymTensor3::from_upper_real(0.0, 1e-6, 0.0, 0.0, 0.0, 0.0);
        TwoSlitSetup::new(
            0.01,
            1.0,
            2.0, // k' = pi
            amp,
            f64::INFINITY,
            std::f64::consts::PI,
            0.0,
        )
        .unwrap()
    }

    fn table_scale_setup(sigma: f64) -> TwoSlitSetup {
        let a12 = 6e-6_f64.sqrt();
        let amp = SymTensor3::from_upper_real(0.0, a12, 0.0, 0.0, 0.0, 0.0);
        let k_prime = 2.0 * std::f64::consts::PI / 5e-11;
        TwoSlitSetup::new(
            0.5e-6,
            0.35,
            5e-11,
            amp,
            sigma,
            crate::consts::SPEED_OF_LIGHT * k_prime,
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn path_difference_examples() {
        let s = table_scale_setup(1e-5);
        assert_eq!(s.path_difference(0.0), 0.0);
        let dz = s.path_difference(4.30e-6);
        // direct arithmetic x d / D
        assert!((dz - 4.30e-6 * 0.5e-6 / 0.35).abs() <= 1e-27);
        assert!((dz - 6.142857142857143e-12).abs() <= 1e-18);
        assert_eq!(s.path_difference(-4.30e-6), -dz);
    }

    #[test]
    fn path_difference_is_linear() {
        let s = table_scale_setup(1e-5);
        for x in [1e-7, 3.7e-6, 1.9e-5] {
            let a = s.path_difference(2.0 * x);
            let b = 2.0 * s.path_difference(x);
            assert!((a - b).abs() <= f64::EPSILON * a.abs());
        }
    }

    #[test]
    fn coincident_slits_give_identical_waves() {
        let s = table_scale_setup(1e-5);
        let a = s.slit_wave(Slit::A, 1e-8, 0.2e-19, 0.0);
        let b = s.slit_wave(Slit::B, 1e-8, 0.2e-19, 0.0);
        assert_eq!(a, b);
    }

    #[test]
    fn slit_b_is_carrier_shifted_without_envelope() {
        let s = unit_setup();
        let dz = 0.125;
        let kp = s.packet().k_prime();
        for z in [-0.7, 0.0, 0.4] {
            let a = s.slit_wave(Slit::A, z, 0.3, dz);
            let b = s.slit_wave(Slit::B, z, 0.3, dz);
            let shifted = a.scale(Complex64::new(0.0, kp * dz).exp());
            assert!(b.max_abs_diff(&shifted) <= 1e-15 * a.max_abs());
        }
    }

    #[test]
    fn unit_envelope_at_center() {
        let s = table_scale_setup(1e-5);
        let z = s.packet().z_center();
        let w = s.slit_wave(Slit::A, z, 0.0, 0.0);
        let expected = s
            .packet()
            .amplitude()
            .scale(Complex64::new(0.0, s.packet().k_prime() * z).exp());
        assert!(w.max_abs_diff(&expected) <= 1e-15 * expected.max_abs());
    }

    #[test]
    fn superpose_cancels_opposite_fields() {
        let s = unit_setup();
        let a = s.slit_wave(Slit::A, 0.3, 0.1, 0.0);
        let sum = superpose(&[a, a.scale_re(-1.0)]).unwrap();
        assert_eq!(sum.max_abs(), 0.0);
    }

    #[test]
    fn superpose_doubles_coincident_waves() {
        let s = unit_setup();
        let a = s.slit_wave(Slit::A, 0.3, 0.1, 0.0);
        let b = s.slit_wave(Slit::B, 0.3, 0.1, 0.0);
        let sum = superpose(&[a, b]).unwrap();
        assert!(sum.max_abs_diff(&a.scale_re(2.0)) == 0.0);
    }

    #[test]
    fn superpose_is_linear_and_single_identity() {
        let s = unit_setup();
        let a = s.slit_wave(Slit::A, 0.1, 0.0, 0.0);
        let b = s.slit_wave(Slit::A, 0.2, 0.0, 0.0);
        assert_eq!(superpose(&[a]).unwrap(), a);
        let ab = superpose(&[a, b]).unwrap();
        let ba = superpose(&[b, a]).unwrap();
        assert!(ab.max_abs_diff(&ba) <= f64::EPSILON * ab.max_abs());
        assert_eq!(superpose(&[]), Err(Error::EmptySuperposition));
    }

    #[test]
    fn half_wave_path_difference_cancels() {
        // k' dz = pi makes cos(k' dz / 2) = 0; without the envelope the
        // direct sum vanishes at every z
        let s = unit_setup();
        let kp = s.packet().k_prime();
        let dz = std::f64::consts::PI / kp;
        for z in [-0.9, 0.0, 0.33] {
            let a = s.slit_wave(Slit::A, z, 0.0, dz);
            let b = s.slit_wave(Slit::B, z, 0.0, dz);
            let sum = superpose(&[a, b]).unwrap();
            assert!(sum.max_abs() <= 1e-15 * a.max_abs());
        }
    }

    #[test]
    fn closed_form_reduces_to_doubled_wave_on_axis() {
        let s = table_scale_setup(1e-5);
        let z = 1e-8;
        let t = 0.1e-19;
        let pattern = s.pattern_closed_form(z, t, 0.0);
        let doubled = evaluate_packet(s.packet(), z, t).scale_re(2.0);
        assert!(pattern.max_abs_diff(&doubled) <= 1e-15 * doubled.max_abs());
    }

    #[test]
    fn closed_form_equals_direct_sum_without_envelope() {
        let s = unit_setup();
        let mut rng = SplitMix64::new(0x5EED_0001);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let z = rng.in_range(-1.0, 1.0);
            let t = rng.in_range(0.0, 2.0);
            let x = rng.in_range(-1.0, 1.0);
            let dz = s.path_difference(x);
            let a = s.slit_wave(Slit::A, z, t, dz);
            let b = s.slit_wave(Slit::B, z, t, dz);
            let sum = superpose(&[a, b]).unwrap();
            let pattern = s.pattern_closed_form(z, t, x);
            let scale = a.max_abs() + b.max_abs();
            worst = worst.max(pattern.max_abs_diff(&sum) / scale);
        }
        assert!(worst <= 1e-14, "worst relative mismatch {worst:e}");
    }

    #[test]
    fn closed_form_deviation_is_bounded_with_envelope() {
        // at z = z' the merged-envelope error is bounded by k' dz^2 / 4 sigma
        let s = table_scale_setup(1e-5);
        let kp = s.packet().k_prime();
        let sigma = s.packet().sigma();
        for x in [2e-5, 5e-5] {
            let dz = s.path_difference(x);
            let a = s.slit_wave(Slit::A, 0.0, 0.0, dz);
            let b = s.slit_wave(Slit::B, 0.0, 0.0, dz);
            let sum = superpose(&[a, b]).unwrap();
            let pattern = s.pattern_closed_form(0.0, 0.0, x);
            let scale = a.max_abs() + b.max_abs();
            let bound = kp * dz * dz / (4.0 * sigma);
            assert!(pattern.max_abs_diff(&sum) / scale <= bound);
        }
    }

    #[test]
    fn on_axis_displacement_is_a12_squared() {
        let s = table_scale_setup(1e-5);
        let a12 = s.packet().amplitude().get(0, 1).re;
        let d = s.displacement_x(a12, 0.0).unwrap();
        assert!((d - 6e-6).abs() <= 1e-20);
    }

    #[test]
    fn dark_fringe_at_quarter_wave() {
        // cos argument k' dz / 2 = pi/2 at dz = pi / k'
        let s = table_scale_setup(1e-5);
        let kp = s.packet().k_prime();
        let x = std::f64::consts::PI / kp * s.screen_distance() / s.slit_separation();
        let d = s.displacement_x(1e-3, x).unwrap();
        assert!(d.abs() <= 1e-19);
    }

    #[test]
    fn displacement_is_even_and_bounded() {
        let s = table_scale_setup(1e-5);
        let a12 = s.packet().amplitude().get(0, 1).re;
        let y0 = a12;
        let bound = y0 * a12;
        for x in [0.0, 1e-6, 4.3e-6, 1.7e-5] {
            let plus = s.displacement_x(y0, x).unwrap();
            let minus = s.displacement_x(y0, -x).unwrap();
            assert_eq!(plus, minus);
            assert!(plus.abs() <= bound * (1.0 + 1e-15));
        }
    }

    #[test]
    fn displacement_rejects_longitudinal_polarization() {
        let amp = SymTensor3::from_upper_real(0.0, 1e-3, 0.0, 0.0, 0.0, 1e-3);
        let s = TwoSlitSetup::new(0.5e-6, 0.35, 5e-11, amp, 1e-5, 0.0, 0.0).unwrap();
        assert_eq!(s.displacement_x(1e-3, 0.0), Err(Error::Polarization));
    }

    #[test]
    fn profile_zeros_and_symmetry() {
        let s = table_scale_setup(1e-5);
        let a12 = s.packet().amplitude().get(0, 1).re;
        let kp = s.packet().k_prime();
        // zeros of cos(k' x d / 2D) sit at k' x d / 2D = pi/2 + m pi
        let x_zero =
            (std::f64::consts::PI / 2.0) / (kp * s.slit_separation() / (2.0 * s.screen_distance()));
        let d = s.displacement_x(a12, x_zero).unwrap();
        assert!(d.abs() <= 6e-6 * 1e-12);

        let profile = s.screen_profile(-2e-5, 2e-5, 401, a12).unwrap();
        assert_eq!(profile.len(), 401);
        for (left, right) in profile.iter().zip(profile.iter().rev()) {
            assert!((left.displacement - right.displacement).abs() <= 1e-19);
            assert!((left.x + right.x).abs() <= 1e-19);
        }
        // delta_z column stays exactly x d / D
        for s_ in &profile {
            assert_eq!(s_.delta_z, s.path_difference(s_.x));
        }
        // on-axis maximum
        let mid = &profile[200];
        assert_eq!(mid.x, 0.0);
        assert!((mid.displacement - 6e-6).abs() <= 1e-20);
    }

    #[test]
    fn profile_maxima_spacing_follows_cos_argument() {
        // adjacent maxima of cos(k' x d / 2D) are 2 lambda D / d apart;
        // verified on a wide scan
        let s = table_scale_setup(1e-5);
        let a12 = s.packet().amplitude().get(0, 1).re;
        let spacing = 2.0 * s.wavelength() * s.screen_distance() / s.slit_separation();
        assert!((spacing - 7e-5).abs() <= 1e-18);
        let profile = s.screen_profile(-1e-4, 1e-4, 2001, a12).unwrap();
        let mut maxima = Vec::new();
        for w in profile.windows(3) {
            if w[1].displacement > w[0].displacement && w[1].displacement > w[2].displacement {
                maxima.push(w[1].x);
            }
        }
        assert_eq!(maxima.len(), 3);
        let grid = 2e-4 / 2000.0;
        assert!((maxima[1] - maxima[0] - spacing).abs() <= grid);
        assert!((maxima[2] - maxima[1] - spacing).abs() <= grid);
    }

    #[test]
    fn profile_validates_range() {
        let s = table_scale_setup(1e-5);
        assert!(matches!(
            s.screen_profile(0.0, 1.0, 1, 1e-3),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            s.screen_profile(1.0, 0.0, 10, 1e-3),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn setup_validates_geometry_and_wavenumber() {
        let amp = SymTensor3::zero();
        assert!(TwoSlitSetup::new(0.0, 0.35, 5e-11, amp, 1e-5, 0.0, 0.0).is_err());
        assert!(TwoSlitSetup::new(0.5e-6, -1.0, 5e-11, amp, 1e-5, 0.0, 0.0).is_err());
        let p = GaussianPacket::new(amp, 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            TwoSlitSetup::with_packet(0.5e-6, 0.35, 5e-11, p),
            Err(Error::WavenumberMismatch { .. })
        ));
        // warning fires for wide-angle geometry
        let wide = TwoSlitSetup::new(0.02, 1.0, 2.0, amp, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(wide.geometry_warnings().len(), 1);
        let narrow = TwoSlitSetup::new(0.5e-6, 0.35, 5e-11, amp, 1e-5, 0.0, 0.0).unwrap();
        assert!(narrow.geometry_warnings().is_empty());
    }
}
