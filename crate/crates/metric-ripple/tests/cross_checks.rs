//! Cross-module consistency at the public API surface.

use metric_ripple::consts::SPEED_OF_LIGHT;
use metric_ripple::fringe::table1_map;
use metric_ripple::geodesic::closed_form_position;
use metric_ripple::packet::evaluate_packet;
use metric_ripple::pulse::{
    gaussian_kernel_closed, gaussian_kernel_quadrature, psi_out, quadrature_cutoff,
    quadrature_subintervals, KernelConvention, PulseInput, TransferParams,
};
use metric_ripple::{Complex64, SymTensor3, TwoSlitSetup};

fn reference_setup() -> TwoSlitSetup {
    let a12 = 6e-6_f64.sqrt();
    let amplitude = SymTensor3::from_upper_real(0.0, a12, 0.0, 0.0, 0.0, 0.0);
    let k_prime = 2.0 * std::f64::consts::PI / 5e-11;
    TwoSlitSetup::new(
        0.5e-6,
        0.35,
        5e-11,
        amplitude,
        1e-5,
        SPEED_OF_LIGHT * k_prime,
        0.0,
    )
    .unwrap()
}

/// The screen displacement cos argument is half the fringe-map gain
/// times x: displacement(y0, x) = y0 |A12| cos(gain x / 2). The map
/// itself keeps the full gain, as its difference equation prints it.
#[test]
fn displacement_cos_argument_is_half_the_map_gain() {
    let setup = reference_setup();
    let map = table1_map();
    let a12 = setup.packet().amplitude().get(0, 1).re;
    let gain = setup.packet().k_prime() * (setup.slit_separation() / setup.screen_distance());
    assert_eq!(gain, map.gain());
    for x in [0.0, 1.1e-6, 4.3e-6, -7.7e-6] {
        let from_profile = setup.displacement_x(a12, x).unwrap();
        let from_gain = a12 * a12 * (map.gain() * x / 2.0).cos();
        assert!(
            (from_profile - from_gain).abs() <= 1e-20,
            "x = {x:e}: {from_profile:e} vs {from_gain:e}"
        );
    }
}

/// The first-order trajectory reproduces the field-level displacement:
/// for a particle at (0, y0, 0) only psi_12 couples, and the transverse
/// offset is half the field times y0.
#[test]
fn closed_form_offset_matches_field_coupling() {
    let setup = reference_setup();
    let packet = setup.packet();
    let y0 = 6e-6;
    for t in [0.0, 2.7e-20, 1.3e-19] {
        let position = closed_form_position(packet, [0.0, y0, 0.0], [0.0; 3], t).unwrap();
        let field = evaluate_packet(packet, 0.0, t).get(0, 1).re;
        assert!((position[0] - 0.5 * y0 * field).abs() <= 1e-24);
        assert_eq!(position[1], y0);
    }
}

/// psi_out decomposes into prefactor, kernel envelope, and carrier; the
/// kernel factor recovered from psi_out matches the quadrature oracle.
#[test]
fn pulse_output_reconstructs_the_kernel() {
    let pulse = PulseInput::new(1.4e7, 2.0 * std::f64::consts::PI / 5e-11, 1e16).unwrap();
    // interaction duration scaled so |alpha| = hbar dt / 2m is order one,
    // keeping the regularized quadrature comparison well conditioned
    let params = TransferParams::new(0.5, 9.1093837015e-31, 1.7e4).unwrap();
    let alpha = params.alpha();
    let (x, t) = (1.3, 2e-8);
    let u = x - pulse.v * t;
    let out = psi_out(x, t, &pulse, &params, KernelConvention::Standard).unwrap();
    let carrier = Complex64::new(0.0, pulse.k_prime * x - pulse.omega * t).exp();
    let recovered = out / (carrier * params.prefactor());

    let closed = gaussian_kernel_closed(alpha, u, KernelConvention::Standard).unwrap();
    assert!((recovered - closed).norm() <= 1e-12 * closed.norm());

    let epsilon = 1e-3;
    let k_max = quadrature_cutoff(alpha, epsilon);
    let n = quadrature_subintervals(alpha, u, k_max);
    let quad = gaussian_kernel_quadrature(alpha, u, epsilon, k_max, n).unwrap();
    assert!(
        (quad - closed).norm() <= 2e-3 * closed.norm(),
        "quadrature {quad} vs closed {closed}"
    );
}

/// The literal-d variant and the reference map disagree about the fixed
/// point by construction; both are exposed so the CLI can show the
/// contrast.
#[test]
fn reference_and_literal_maps_disagree() {
    let reference = metric_ripple::fringe::solve_fixed_point(&table1_map(), 5.41e-6, 1e-12, 10_000)
        .unwrap()
        .fixed_point
        .unwrap();
    let literal = metric_ripple::fringe::solve_fixed_point(
        &metric_ripple::fringe::table1_map_literal_d(),
        5.41e-6,
        1e-12,
        10_000,
    )
    .unwrap()
    .fixed_point
    .unwrap();
    assert!((reference - 4.2996e-6).abs() <= 1e-9);
    assert!(literal >= 5.9e-6);
}

/// A packet built by the two-slit setup satisfies the geodesic module's
/// gauge precondition out of the box.
#[test]
fn setup_packet_is_gauge_clean() {
    let setup = reference_setup();
    let report =
        metric_ripple::gauge::check_tt(setup.packet().amplitude(), [0.0, 0.0, 1.0], 1e-12).unwrap();
    assert!(report.passed);
    assert_eq!(report.max_residual(), 0.0);
}
