#!/usr/bin/env python3
"""Smoke test for the metric_ripple Python extension.

Builds nothing itself: it locates the compiled cdylib under target/
(release preferred), exposes it as an importable module, and exercises
one path through every binding group. Build the extension first with

    cargo build -p metric-ripple-py --release
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    names = ["libmetric_ripple_py.so", "libmetric_ripple_py.dylib", "metric_ripple_py.dll"]
    for profile in ("release", "debug"):
        for name in names:
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    sys.exit("extension not built: run `cargo build -p metric-ripple-py --release` first")


def import_extension():
    cdylib = locate_cdylib()
    stage = pathlib.Path(tempfile.mkdtemp(prefix="metric-ripple-py-"))
    suffix = ".so" if cdylib.suffix in (".so", ".dylib") else ".pyd"
    shutil.copy2(cdylib, stage / f"metric_ripple{suffix}")
    sys.path.insert(0, str(stage))
    import metric_ripple

    return metric_ripple


def approx(a, b, rel=1e-9):
    scale = max(abs(a), abs(b), 1e-300)
    assert abs(a - b) <= rel * scale, f"{a!r} !~ {b!r}"


def main():
    mr = import_extension()
    print(f"metric_ripple {mr.__version__} from {mr.__file__}")

    # fringe map: fixed point by iteration and by bisection
    fm = mr.FringeMap.table1()
    approx(fm.a2, 6e-6)
    approx(fm.gain, 1.79519580205131e5, rel=1e-11)
    fixed, converged, residual, derivative = fm.solve(5.41e-6)
    assert converged and residual <= 2e-12
    approx(fixed, 4.2996444e-6, rel=1e-6)
    assert 0.70 <= derivative <= 0.80
    approx(fm.bisect(0.0, fm.a2), fixed, rel=1e-6)
    assert abs(fm.fringe_width() - 2 * fixed) <= 1e-12
    orbit = fm.iterate(5.41e-6, 2)
    approx(orbit[1], 3.385850967912518e-6, rel=1e-12)
    assert len(fm.cobweb(5.41e-6, 3)) == 7

    literal = mr.FringeMap.table1_literal_d()
    lit_fixed, _, _, _ = literal.solve(5.41e-6)
    assert lit_fixed >= 5.9e-6

    # packet field, gauge checks, curvature
    k_prime = 2 * math.pi / 5e-11
    packet = mr.GaussianPacket(0, 1e-6, 0, 0, 0, 0, k_prime, omega=1e3, sigma=1e-5)
    psi = packet.evaluate(0.0, 0.0)
    approx(psi[0][1].real, 1e-6, rel=1e-12)
    report = mr.check_tt(packet.amplitude(), (0.0, 0.0, 1.0))
    assert report.passed and report.trace == 0.0
    projected = mr.tt_project([[1e-6, 0, 0], [0, 1e-6, 0], [0, 0, 1e-6]], (0.0, 0.0, 1.0))
    assert max(abs(projected[j][k]) for j in range(3) for k in range(3)) <= 1e-20
    curv = packet.curvature(0.0, 0.0)
    approx(curv[0][1].real, 0.5, rel=1e-9)
    g = mr.perturbed_metric(psi)
    approx(g[1][2], 1e-6, rel=1e-12)
    approx(g[0][0], -1.0)

    # geodesic: straight line without amplitude, first-order match with it
    flat = mr.GaussianPacket(0, 0, 0, 0, 0, 0, k_prime, omega=1e3, sigma=1e-5)
    x = flat.closed_form_position((1.0, 2.0, 3.0), (0.5, 0.0, 0.0), 4.0)
    assert x == (3.0, 2.0, 3.0)
    omega = 299792458.0 * k_prime
    wave = mr.GaussianPacket(0, 1e-6, 0, 0, 0, 0, k_prime, omega=omega, sigma=1e-5)
    t_end = 4 * 2 * math.pi / omega
    deviation = wave.deviation_report((0.0, 6e-6, 0.0), (0.0, 0.0, 0.0), t_end, t_end / 1024)
    assert deviation / 6e-6 <= 1e-10
    rows = wave.integrate_deviation((0.0, 6e-6, 0.0), (0.0, 0.0, 0.0), t_end, t_end / 256)
    assert len(rows) == 257 and rows[0][2] == 6e-6

    # two-slit screen scan
    a12 = math.sqrt(6e-6)
    slits = mr.TwoSlitSetup(0.5e-6, 0.35, 5e-11, a12, sigma=1e-5)
    approx(slits.displacement(a12, 0.0), 6e-6, rel=1e-12)
    profile = slits.screen_profile(-2e-5, 2e-5, 401, a12)
    assert len(profile) == 401
    approx(profile[200][2], 6e-6, rel=1e-12)
    wave_a = slits.slit_wave("A", 0.0, 0.0)
    doubled = mr.superpose([wave_a, wave_a])
    approx(doubled[0][1].real, 2 * wave_a[0][1].real, rel=1e-12)

    # pulse kernel and its quadrature oracle
    # hbar enters as h / 2 pi exactly
    hbar = 6.62607015e-34 / (2 * math.pi)
    alpha = mr.alpha_of(9.1093837015e-31, 1e-18)
    approx(alpha.imag, -hbar * 1e-18 / (2 * 9.1093837015e-31), rel=1e-14)
    closed = mr.gaussian_kernel_closed(1 + 0j, 0.0)
    approx(closed.real, math.sqrt(math.pi), rel=1e-12)
    quad = mr.gaussian_kernel_quadrature(1 + 0j, 2.0, 1e-12, 8.0, 20000)
    ref = mr.gaussian_kernel_closed(1 + 0j, 2.0)
    approx(quad.real, ref.real, rel=1e-7)
    out = mr.psi_out(0.0, 0.0, 1.4e7, k_prime, 1e16)
    assert abs(out) > 0

    # electron-energy bookkeeping
    approx(mr.electron_wavelength(5e4), 5.355306960297786e-12, rel=1e-12)
    approx(mr.accelerating_voltage_of(5e-11, relativistic=False), 601.6482601867799, rel=1e-12)
    approx(mr.de_broglie_wavelength(mr.momentum_of(5e-11)), 5e-11, rel=1e-14)

    print("smoke test passed")


if __name__ == "__main__":
    main()
