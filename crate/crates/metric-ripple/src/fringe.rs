//! The scalar fixed-point map behind the fringe displacement,
//!
//! ```text
//! x_{n+1} = a2 * cos(c * x_n)
//! ```
//!
//! with displacement scale a2 = A_12^2 \[m\] and gain c = k' d / D \[1/m\],
//! plus iteration traces, a bisection oracle, cobweb data for plotting,
//! and the fringe-width estimate.

use crate::{Error, Result};

/// Default successive-difference tolerance \[m\]; the iterates are O(1e-6) m.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Reference dataset: slit separation d = 0.5 um, screen distance
/// D = 350 mm, wavelength lambda = 5e-11 m, displacement scale
/// A_12^2 = 6e-6 m.
pub const REFERENCE_A2: f64 = 6e-6;
pub const REFERENCE_WAVELENGTH: f64 = 5e-11;
pub const REFERENCE_SLIT_SEPARATION: f64 = 0.5e-6;
/// Transcription variant of the slit separation that circulates with the
/// reference dataset; it is inconsistent with the dataset's own iterates
/// (see [`table1_map_literal_d`]).
pub const LITERAL_SLIT_SEPARATION: f64 = 0.5e-11;
pub const REFERENCE_SCREEN_DISTANCE: f64 = 0.35;
/// Customary seed for the reference iteration \[m\].
pub const REFERENCE_SEED: f64 = 5.41e-6;

/// The map x -> a2 cos(c x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeMap {
    a2: f64,
    c: f64,
}

impl FringeMap {
    pub fn new(a2: f64, c: f64) -> Result<Self> {
        if !(a2 > 0.0) || !a2.is_finite() {
            return Err(Error::NonPositive {
                name: "a2",
                value: a2,
            });
        }
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::NonFinite {
                name: "c",
                value: c,
            });
        }
        Ok(Self { a2, c })
    }

    /// Displacement scale A_12^2 \[m\].
    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Gain c = k' d / D \[1/m\].
    pub fn gain(&self) -> f64 {
        self.c
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.a2 * (self.c * x).cos()
    }

    /// f'(x) = -a2 c sin(c x).
    pub fn derivative(&self, x: f64) -> f64 {
        -self.a2 * self.c * (self.c * x).sin()
    }
}

/// The reference map: a2 = 6e-6 m and c = (2 pi / lambda)(d / D)
/// ~ 1.79520e5 1/m with d = 0.5 um. Only this slit separation reproduces
/// the dataset's own iterates and fixed point.
pub fn table1_map() -> FringeMap {
    let k_prime = 2.0 * std::f64::consts::PI / REFERENCE_WAVELENGTH;
    FringeMap {
        a2: REFERENCE_A2,
        c: k_prime * (REFERENCE_SLIT_SEPARATION / REFERENCE_SCREEN_DISTANCE),
    }
}

/// The reference map built with the literal d = 0.5e-11 m variant. Its
/// gain is ~1.79520 1/m, the cosine argument stays ~1e-5, and the fixed
/// point sits at ~a2 instead of ~4.30e-6 m: the variant cannot have
/// produced the reference iterates.
pub fn table1_map_literal_d() -> FringeMap {
    let k_prime = 2.0 * std::f64::consts::PI / REFERENCE_WAVELENGTH;
    FringeMap {
        a2: REFERENCE_A2,
        c: k_prime * (LITERAL_SLIT_SEPARATION / REFERENCE_SCREEN_DISTANCE),
    }
}

/// Record of a map iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    /// x_0, x_1, ..., in order.
    pub iterates: Vec<f64>,
    /// Successive difference dropped below the requested tolerance.
    pub converged: bool,
    /// Final iterate when converged.
    pub fixed_point: Option<f64>,
    /// |x_last - f(x_last)| \[m\].
    pub residual: f64,
    /// |f'| at the candidate fixed point (None for plain iteration).
    pub derivative_magnitude: Option<f64>,
}

impl IterationTrace {
    /// Converged onto a point where the map is a local contraction.
    pub fn is_attracting(&self) -> bool {
        self.converged && self.derivative_magnitude.is_some_and(|d| d < 1.0)
    }
}

/// Applies the map n times from x0; the trace holds n + 1 values.
pub fn iterate(map: &FringeMap, x0: f64, n: usize) -> IterationTrace {
    let mut iterates = Vec::with_capacity(n + 1);
    iterates.push(x0);
    let mut x = x0;
    for _ in 0..n {
        x = map.apply(x);
        iterates.push(x);
    }
    IterationTrace {
        iterates,
        converged: false,
        fixed_point: None,
        residual: (x - map.apply(x)).abs(),
        derivative_magnitude: None,
    }
}

/// Iterates until |x_{n+1} - x_n| <= tol or max_iter steps elapse.
/// Non-convergence is reported through `converged = false`, not an error;
/// the final iterate always satisfies |x* - f(x*)| <= 2 tol when
/// convergence is reached.
pub fn solve_fixed_point(
    map: &FringeMap,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<IterationTrace> {
    if !(tol > 0.0) {
        return Err(Error::NonPositive {
            name: "tol",
            value: tol,
        });
    }
    let mut iterates = vec![x0];
    let mut x = x0;
    for _ in 0..max_iter {
        let next = map.apply(x);
        iterates.push(next);
        let step = (next - x).abs();
        x = next;
        if step <= tol {
            let residual = (x - map.apply(x)).abs();
            let derivative = map.derivative(x).abs();
            return Ok(IterationTrace {
                iterates,
                converged: true,
                fixed_point: Some(x),
                residual,
                derivative_magnitude: Some(derivative),
            });
        }
    }
    let residual = (x - map.apply(x)).abs();
    let derivative = map.derivative(x).abs();
    Ok(IterationTrace {
        iterates,
        converged: false,
        fixed_point: None,
        residual,
        derivative_magnitude: Some(derivative),
    })
}

/// Independent root-finding oracle: bisects g(x) = x - f(x) on [lo, hi].
/// Requires a sign change of g across the bracket.
pub fn bisect_fixed_point(map: &FringeMap, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::NonPositive {
            name: "tol",
            value: tol,
        });
    }
    let g = |x: f64| x - map.apply(x);
    let (mut lo, mut hi) = (lo, hi);
    if !(lo < hi) || g(lo) * g(hi) > 0.0 {
        return Err(Error::InvalidRange {
            reason: "bracket must straddle a sign change of x - f(x)",
        });
    }
    let mut glo = g(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval no longer splits in f64
            break;
        }
        let gmid = g(mid);
        if glo * gmid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            glo = gmid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Cobweb vertices for plotting: (x0, 0) -> (x0, f(x0)) -> (f(x0), f(x0))
/// -> ... with 2n + 1 points for n iterations; every second point lies on
/// the diagonal.
pub fn cobweb_data(map: &FringeMap, x0: f64, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(2 * n + 1);
    let mut x = x0;
    out.push((x, 0.0));
    for _ in 0..n {
        let y = map.apply(x);
        out.push((x, y));
        out.push((y, y));
        x = y;
    }
    out
}

/// Two-sided fringe envelope 2 x*, from the attracting fixed point of the
/// map (solved from x0 = a2 at the default tolerance). Errors when the
/// iteration fails to converge or the fixed point is not attracting.
pub fn fringe_width(map: &FringeMap) -> Result<f64> {
    let trace = solve_fixed_point(map, map.a2(), DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    if !trace.converged {
        return Err(Error::NoConvergence {
            max_iter: DEFAULT_MAX_ITER,
        });
    }
    let derivative = trace.derivative_magnitude.unwrap_or(f64::INFINITY);
    if derivative >= 1.0 {
        return Err(Error::NotAttracting { derivative });
    }
    Ok(2.0
        * trace
            .fixed_point
            .expect("converged trace has a fixed point"))
}

/// Companion diagnostic: twice the k-th iterate from x0 (the transient
/// double-amplitude convention rather than the limit 2 x*).
pub fn transient_width(map: &FringeMap, x0: f64, k: usize) -> f64 {
    2.0 * iterate(map, x0, k).iterates[k].abs()
}
