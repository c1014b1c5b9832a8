//! Python bindings: the main types and operations of the metric-ripple
//! library behind a thin conversion layer. Tensors cross the boundary as
//! 3x3 nested lists of complex numbers, vectors as 3-tuples.
//!
//! Build with `cargo build -p metric-ripple-py --release`, then import
//! the produced cdylib as `metric_ripple` (see python/smoke_test.py).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use metric_ripple as mr;
use mr::pulse::KernelConvention;

type Matrix = Vec<Vec<Complex64>>;

fn err(e: mr::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tensor_to_py(t: &mr::SymTensor3) -> Matrix {
    (0..3)
        .map(|j| (0..3).map(|k| t.get(j, k)).collect())
        .collect()
}

fn tensor_from_py(entries: Matrix) -> PyResult<mr::SymTensor3> {
    if entries.len() != 3 || entries.iter().any(|row| row.len() != 3) {
        return Err(PyValueError::new_err("expected a 3x3 matrix"));
    }
    let mut m = [[Complex64::ZERO; 3]; 3];
    for (j, row) in entries.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            m[j][k] = *v;
        }
    }
    mr::SymTensor3::from_entries(m).map_err(err)
}

fn convention_from_py(name: &str) -> PyResult<KernelConvention> {
    match name {
        "standard" => Ok(KernelConvention::Standard),
        "paper" => Ok(KernelConvention::Paper),
        _ => Err(PyValueError::new_err(format!(
            "convention must be 'standard' or 'paper', got {name:?}"
        ))),
    }
}

/// Gaussian perturbation packet propagating along +z.
#[pyclass(name = "GaussianPacket")]
struct PyGaussianPacket {
    inner: mr::GaussianPacket,
}

#[pymethods]
impl PyGaussianPacket {
    /// amplitude is the real upper triangle (a11, a12, a13, a22, a23, a33).
    #[new]
    #[pyo3(signature = (a11, a12, a13, a22, a23, a33, k_prime, omega=0.0, z_center=0.0, sigma=f64::INFINITY))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        a11: f64,
        a12: f64,
        a13: f64,
        a22: f64,
        a23: f64,
        a33: f64,
        k_prime: f64,
        omega: f64,
        z_center: f64,
        sigma: f64,
    ) -> PyResult<Self> {
        let amplitude = mr::SymTensor3::from_upper_real(a11, a12, a13, a22, a23, a33);
        Ok(Self {
            inner: mr::GaussianPacket::new(amplitude, k_prime, omega, z_center, sigma)
                .map_err(err)?,
        })
    }

    #[getter]
    fn k_prime(&self) -> f64 {
        self.inner.k_prime()
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.omega()
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.inner.sigma()
    }

    #[getter]
    fn z_center(&self) -> f64 {
        self.inner.z_center()
    }

    fn envelope_half_width(&self) -> f64 {
        self.inner.envelope_half_width()
    }

    fn amplitude(&self) -> Matrix {
        tensor_to_py(self.inner.amplitude())
    }

    /// Field tensor psi(z, t).
    fn evaluate(&self, z: f64, t: f64) -> Matrix {
        tensor_to_py(&mr::evaluate_packet(&self.inner, z, t))
    }

    /// Curvature components R_{j0k0}(z, t) = omega^2/2 psi(z, t).
    fn curvature(&self, z: f64, t: f64) -> Matrix {
        tensor_to_py(&mr::gauge::curvature_j0k0(&self.inner, z, t))
    }

    /// First-order position of a particle seeded at x0 with velocity v0.
    fn closed_form_position(
        &self,
        x0: (f64, f64, f64),
        v0: (f64, f64, f64),
        t: f64,
    ) -> PyResult<(f64, f64, f64)> {
        let x = mr::geodesic::closed_form_position(
            &self.inner,
            [x0.0, x0.1, x0.2],
            [v0.0, v0.1, v0.2],
            t,
        )
        .map_err(err)?;
        Ok((x[0], x[1], x[2]))
    }

    /// Fixed-step integration of the equation of motion; returns rows of
    /// (t, x, y, z, vx, vy, vz).
    #[allow(clippy::type_complexity)]
    fn integrate_deviation(
        &self,
        x0: (f64, f64, f64),
        v0: (f64, f64, f64),
        t_end: f64,
        dt: f64,
    ) -> PyResult<Vec<(f64, f64, f64, f64, f64, f64, f64)>> {
        let traj = mr::geodesic::integrate_deviation(
            &self.inner,
            [x0.0, x0.1, x0.2],
            [v0.0, v0.1, v0.2],
            t_end,
            dt,
        )
        .map_err(err)?;
        Ok(traj
            .samples()
            .iter()
            .map(|s| {
                (
                    s.time,
                    s.position[0],
                    s.position[1],
                    s.position[2],
                    s.velocity[0],
                    s.velocity[1],
                    s.velocity[2],
                )
            })
            .collect())
    }

    /// max |closed form - integration| over the run.
    fn deviation_report(
        &self,
        x0: (f64, f64, f64),
        v0: (f64, f64, f64),
        t_end: f64,
        dt: f64,
    ) -> PyResult<f64> {
        mr::geodesic::deviation_report(
            &self.inner,
            [x0.0, x0.1, x0.2],
            [v0.0, v0.1, v0.2],
            t_end,
            dt,
        )
        .map_err(err)
    }
}

/// Residuals of the transverse-traceless constraints.
#[pyclass(name = "GaugeReport")]
struct PyGaugeReport {
    #[pyo3(get)]
    transversality_u: f64,
    #[pyo3(get)]
    transversality_k: f64,
    #[pyo3(get)]
    trace: f64,
    #[pyo3(get)]
    passed: bool,
}

#[pyfunction]
#[pyo3(signature = (entries, propagation, tol=1e-12))]
fn check_tt(entries: Matrix, propagation: (f64, f64, f64), tol: f64) -> PyResult<PyGaugeReport> {
    let a = tensor_from_py(entries)?;
    let report =
        mr::gauge::check_tt(&a, [propagation.0, propagation.1, propagation.2], tol).map_err(err)?;
    Ok(PyGaugeReport {
        transversality_u: report.transversality_u,
        transversality_k: report.transversality_k,
        trace: report.trace,
        passed: report.passed,
    })
}

#[pyfunction]
fn tt_project(entries: Matrix, propagation: (f64, f64, f64)) -> PyResult<Matrix> {
    let a = tensor_from_py(entries)?;
    let projected =
        mr::gauge::tt_project(&a, [propagation.0, propagation.1, propagation.2]).map_err(err)?;
    Ok(tensor_to_py(&projected))
}

#[pyfunction]
fn perturbed_metric(psi: Matrix) -> PyResult<Vec<Vec<f64>>> {
    let tensor = tensor_from_py(psi)?;
    let g = mr::perturbed_metric(&mr::Metric4::minkowski(), &tensor).map_err(err)?;
    Ok((0..4)
        .map(|mu| (0..4).map(|nu| g.get(mu, nu)).collect())
        .collect())
}

/// Two-slit geometry plus its re-emitted packet.
#[pyclass(name = "TwoSlitSetup")]
struct PyTwoSlitSetup {
    inner: mr::TwoSlitSetup,
}

#[pymethods]
impl PyTwoSlitSetup {
    #[new]
    #[pyo3(signature = (d, big_d, lambda, a12, sigma=f64::INFINITY, omega=0.0, z_center=0.0))]
    fn new(
        d: f64,
        big_d: f64,
        lambda: f64,
        a12: f64,
        sigma: f64,
        omega: f64,
        z_center: f64,
    ) -> PyResult<Self> {
        let amplitude = mr::SymTensor3::from_upper_real(0.0, a12, 0.0, 0.0, 0.0, 0.0);
        Ok(Self {
            inner: mr::TwoSlitSetup::new(d, big_d, lambda, amplitude, sigma, omega, z_center)
                .map_err(err)?,
        })
    }

    fn path_difference(&self, x: f64) -> f64 {
        self.inner.path_difference(x)
    }

    #[pyo3(signature = (which, z, t, delta_z=0.0))]
    fn slit_wave(&self, which: &str, z: f64, t: f64, delta_z: f64) -> PyResult<Matrix> {
        let slit = match which {
            "A" | "a" => mr::Slit::A,
            "B" | "b" => mr::Slit::B,
            _ => return Err(PyValueError::new_err("slit must be 'A' or 'B'")),
        };
        Ok(tensor_to_py(&self.inner.slit_wave(slit, z, t, delta_z)))
    }

    fn pattern_closed_form(&self, z: f64, t: f64, x: f64) -> Matrix {
        tensor_to_py(&self.inner.pattern_closed_form(z, t, x))
    }

    fn displacement(&self, y0: f64, x: f64) -> PyResult<f64> {
        self.inner.displacement_x(y0, x).map_err(err)
    }

    /// Rows of (x, delta_z, displacement).
    fn screen_profile(
        &self,
        x_min: f64,
        x_max: f64,
        n: usize,
        y0: f64,
    ) -> PyResult<Vec<(f64, f64, f64)>> {
        Ok(self
            .inner
            .screen_profile(x_min, x_max, n, y0)
            .map_err(err)?
            .iter()
            .map(|s| (s.x, s.delta_z, s.displacement))
            .collect())
    }

    fn geometry_warnings(&self) -> Vec<String> {
        self.inner.geometry_warnings()
    }
}

#[pyfunction]
fn superpose(fields: Vec<Matrix>) -> PyResult<Matrix> {
    let tensors: Vec<mr::SymTensor3> = fields
        .into_iter()
        .map(tensor_from_py)
        .collect::<PyResult<_>>()?;
    Ok(tensor_to_py(
        &mr::interference::superpose(&tensors).map_err(err)?,
    ))
}

/// The fringe fixed-point map x -> a2 cos(c x).
#[pyclass(name = "FringeMap")]
struct PyFringeMap {
    inner: mr::FringeMap,
}

#[pymethods]
impl PyFringeMap {
    #[new]
    fn new(a2: f64, c: f64) -> PyResult<Self> {
        Ok(Self {
            inner: mr::FringeMap::new(a2, c).map_err(err)?,
        })
    }

    /// The bundled reference dataset (slit separation 0.5 um).
    #[staticmethod]
    fn table1() -> Self {
        Self {
            inner: mr::fringe::table1_map(),
        }
    }

    /// The d = 0.5e-11 m transcription variant of the reference dataset.
    #[staticmethod]
    fn table1_literal_d() -> Self {
        Self {
            inner: mr::fringe::table1_map_literal_d(),
        }
    }

    #[getter]
    fn a2(&self) -> f64 {
        self.inner.a2()
    }

    #[getter]
    fn gain(&self) -> f64 {
        self.inner.gain()
    }

    fn apply(&self, x: f64) -> f64 {
        self.inner.apply(x)
    }

    fn iterate(&self, x0: f64, n: usize) -> Vec<f64> {
        mr::fringe::iterate(&self.inner, x0, n).iterates
    }

    /// (fixed_point or None, converged, residual, |f'| or None).
    #[pyo3(signature = (x0, tol=1e-12, max_iter=10000))]
    fn solve(
        &self,
        x0: f64,
        tol: f64,
        max_iter: usize,
    ) -> PyResult<(Option<f64>, bool, f64, Option<f64>)> {
        let trace = mr::fringe::solve_fixed_point(&self.inner, x0, tol, max_iter).map_err(err)?;
        Ok((
            trace.fixed_point,
            trace.converged,
            trace.residual,
            trace.derivative_magnitude,
        ))
    }

    #[pyo3(signature = (lo, hi, tol=1e-14))]
    fn bisect(&self, lo: f64, hi: f64, tol: f64) -> PyResult<f64> {
        mr::fringe::bisect_fixed_point(&self.inner, lo, hi, tol).map_err(err)
    }

    fn cobweb(&self, x0: f64, n: usize) -> Vec<(f64, f64)> {
        mr::fringe::cobweb_data(&self.inner, x0, n)
    }

    fn fringe_width(&self) -> PyResult<f64> {
        mr::fringe::fringe_width(&self.inner).map_err(err)
    }

    fn transient_width(&self, x0: f64, k: usize) -> f64 {
        mr::fringe::transient_width(&self.inner, x0, k)
    }
}

#[pyfunction]
fn alpha_of(mass: f64, dt: f64) -> PyResult<Complex64> {
    mr::pulse::alpha_of(mass, dt).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, u, convention="standard"))]
fn gaussian_kernel_closed(alpha: Complex64, u: f64, convention: &str) -> PyResult<Complex64> {
    mr::pulse::gaussian_kernel_closed(alpha, u, convention_from_py(convention)?).map_err(err)
}

#[pyfunction]
fn gaussian_kernel_quadrature(
    alpha: Complex64,
    u: f64,
    epsilon: f64,
    k_max: f64,
    n: usize,
) -> PyResult<Complex64> {
    mr::pulse::gaussian_kernel_quadrature(alpha, u, epsilon, k_max, n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, t, v, k_prime, omega, a=1.0, mass=mr::consts::ELECTRON_MASS, dt_interaction=1e-18, convention="standard"))]
#[allow(clippy::too_many_arguments)]
fn psi_out(
    x: f64,
    t: f64,
    v: f64,
    k_prime: f64,
    omega: f64,
    a: f64,
    mass: f64,
    dt_interaction: f64,
    convention: &str,
) -> PyResult<Complex64> {
    let pulse = mr::PulseInput::new(v, k_prime, omega).map_err(err)?;
    let params = mr::TransferParams::new(a, mass, dt_interaction).map_err(err)?;
    mr::pulse::psi_out(x, t, &pulse, &params, convention_from_py(convention)?).map_err(err)
}

#[pyfunction]
fn de_broglie_wavelength(momentum: f64) -> PyResult<f64> {
    mr::pulse::de_broglie_wavelength(momentum).map_err(err)
}

#[pyfunction]
fn momentum_of(lambda: f64) -> PyResult<f64> {
    mr::pulse::momentum_of(lambda).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (voltage, relativistic=true))]
fn electron_wavelength(voltage: f64, relativistic: bool) -> PyResult<f64> {
    mr::pulse::electron_wavelength(voltage, relativistic).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lambda, relativistic=true))]
fn accelerating_voltage_of(lambda: f64, relativistic: bool) -> PyResult<f64> {
    mr::pulse::accelerating_voltage_of(lambda, relativistic).map_err(err)
}

#[pymodule]
#[pyo3(name = "metric_ripple")]
fn metric_ripple_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGaussianPacket>()?;
    m.add_class::<PyGaugeReport>()?;
    m.add_class::<PyTwoSlitSetup>()?;
    m.add_class::<PyFringeMap>()?;
    m.add_function(wrap_pyfunction!(check_tt, m)?)?;
    m.add_function(wrap_pyfunction!(tt_project, m)?)?;
    m.add_function(wrap_pyfunction!(perturbed_metric, m)?)?;
    m.add_function(wrap_pyfunction!(superpose, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_of, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_kernel_closed, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_kernel_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(psi_out, m)?)?;
    m.add_function(wrap_pyfunction!(de_broglie_wavelength, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_of, m)?)?;
    m.add_function(wrap_pyfunction!(electron_wavelength, m)?)?;
    m.add_function(wrap_pyfunction!(accelerating_voltage_of, m)?)?;
    Ok(())
}
