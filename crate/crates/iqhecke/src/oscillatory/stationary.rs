//! Stationary-phase evaluation of `I = int_a^b g(x) e(f(x)) dx` and the
//! companion derivative bounds.
//!
//! The caller supplies closed-form derivatives for the phase and amplitude
//! (finite differences are reserved for the validation suite) together with
//! the scaling parameters `theta_f`, `omega_f`, `omega_g` that normalize the
//! derivative sizes: `f^(i) = O(theta_f / omega_f^i)` and
//! `g^(j) = O(1 / omega_g^j)` on the domain.

use super::OscError;
use crate::quad::{integrate2d, QuadOpts};
use crate::{e, C64};

/// Which first error term accompanies the stationary main term. Two
/// parameterizations of the same expansion are in circulation; they differ
/// only in how the distance `kappa` from the stationary point to the domain
/// boundary enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorTermConvention {
    /// First error term `omega_f^4 / (theta_f^2 kappa^3)`.
    #[default]
    KappaCubed,
    /// First error term `omega_f^4 / (theta_f^3 kappa)`.
    KappaLinear,
}

/// A phase/amplitude pair with derivative access and declared scalings.
///
/// `f(x, i)` must return the i-th derivative of the real phase for
/// `i <= 4`; `g(x, j)` the j-th derivative of the (possibly complex)
/// amplitude for `j <= 2`. Orders beyond those are never requested.
pub struct PhasePair<'a> {
    pub f: &'a dyn Fn(f64, u32) -> f64,
    pub g: &'a dyn Fn(f64, u32) -> C64,
    pub domain: (f64, f64),
    /// Size scale of the phase: `f^(i) = O(theta_f / omega_f^i)`.
    pub theta_f: f64,
    /// Length scale of the phase.
    pub omega_f: f64,
    /// Length scale of the amplitude: `g^(j) = O(1 / omega_g^j)`.
    pub omega_g: f64,
    pub convention: ErrorTermConvention,
}

/// Outcome of a stationary-phase evaluation: the explicit main term and an
/// error budget the true integral is expected to sit within (up to the
/// calibrated constant recorded by the test family).
#[derive(Debug, Clone, Copy)]
pub struct StationaryResult {
    pub main: C64,
    pub error_bound: f64,
    pub stationary_point: Option<f64>,
}

/// Sample points used for derivative-positivity checks on a domain.
const CHECK_GRID: usize = 257;

fn grid(domain: (f64, f64), n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = domain;
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(move |i| a + step * i as f64)
}

/// Main term `g(x0) e(f(x0) + 1/8) / sqrt(f''(x0))` at the unique interior
/// zero of `f'`, plus the associated explicit error budget.
///
/// Requires `f'' >= theta_f / omega_f^2` across the domain (checked on a
/// sample grid) and a sign change of `f'` from negative to positive.
pub fn stationary_phase_main(pp: &PhasePair) -> Result<StationaryResult, OscError> {
    let (a, b) = pp.domain;
    let required = pp.theta_f / (pp.omega_f * pp.omega_f);
    for x in grid((a, b), CHECK_GRID) {
        let f2 = (pp.f)(x, 2);
        if !(f2 >= required) {
            return Err(OscError::NonConvexPhase {
                x,
                value: f2,
                required,
            });
        }
    }
    // f'' > 0 everywhere, so f' is strictly increasing: an interior zero
    // exists exactly when the endpoint signs straddle zero.
    let fp_a = (pp.f)(a, 1);
    let fp_b = (pp.f)(b, 1);
    if !(fp_a < 0.0 && fp_b > 0.0) {
        return Err(OscError::NoStationaryPoint);
    }
    let mut lo = a;
    let mut hi = b;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (pp.f)(mid, 1) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    let x0 = 0.5 * (lo + hi);
    let f0 = (pp.f)(x0, 0);
    let f2 = (pp.f)(x0, 2);
    let main = (pp.g)(x0, 0) * e(f0 + 0.125) / f2.sqrt();
    let kappa = (b - x0).min(x0 - a);
    let t32 = pp.theta_f.powf(1.5);
    let first = match pp.convention {
        ErrorTermConvention::KappaCubed => {
            pp.omega_f.powi(4) / (pp.theta_f * pp.theta_f * kappa.powi(3))
        }
        ErrorTermConvention::KappaLinear => pp.omega_f.powi(4) / (pp.theta_f.powi(3) * kappa),
    };
    let error_bound =
        first + pp.omega_f / t32 + pp.omega_f.powi(3) / (t32 * pp.omega_g * pp.omega_g);
    Ok(StationaryResult {
        main,
        error_bound,
        stationary_point: Some(x0),
    })
}

/// First-derivative bound for the non-stationary regime: with
/// `Lambda = min |f'|` on the domain and `f'`, `f''` of constant sign,
///
/// `|I| <= C * theta_f/(omega_f^2 Lambda^3) *
///         (1 + omega_f/omega_g + omega_f^2/omega_g^2 * Lambda/(theta_f/omega_f))`.
pub fn nonstationary_bound(pp: &PhasePair) -> Result<f64, OscError> {
    let mut lambda = f64::INFINITY;
    let mut sign_fp = 0.0f64;
    let mut sign_f2 = 0.0f64;
    for x in grid(pp.domain, CHECK_GRID * 4) {
        let fp = (pp.f)(x, 1);
        let f2 = (pp.f)(x, 2);
        if fp == 0.0 || (sign_fp != 0.0 && fp.signum() != sign_fp) {
            return Err(OscError::DegeneratePhase {
                reason: "phase derivative vanishes on the domain; bound requires f' != 0",
            });
        }
        if f2 == 0.0 || (sign_f2 != 0.0 && f2.signum() != sign_f2) {
            return Err(OscError::DegeneratePhase {
                reason: "phase second derivative vanishes on the domain; bound requires f'' != 0",
            });
        }
        sign_fp = fp.signum();
        sign_f2 = f2.signum();
        lambda = lambda.min(fp.abs());
    }
    let ratio = pp.omega_f / pp.omega_g;
    let bound = pp.theta_f / (pp.omega_f * pp.omega_f * lambda.powi(3))
        * (1.0 + ratio + ratio * ratio * lambda * pp.omega_f / pp.theta_f);
    Ok(bound)
}

/// Value and bound returned by [`double_integral_bound`].
#[derive(Debug, Clone, Copy)]
pub struct DoubleIntegralOutcome {
    /// `int int g(x,y) e(f(x,y)) dy dx` by 2D quadrature.
    pub value: C64,
    /// `var(g) / (r1 r2)` with `var(g) = int int |d^2 g / dx dy|`.
    pub bound: f64,
}

/// Second-derivative bound in two variables. `f2d(x, y, (i, j))` returns
/// the mixed partial of the real phase of order `(i, j)` for
/// `i + j <= 2`; `g2d` likewise for the amplitude (orders `(0,0)` and
/// `(1,1)` are used). Checks the sampled Hessian conditions
/// `f_xx >= r1^2`, `f_yy >= r2^2`, `f_xx f_yy - f_xy^2 >= r1^2 r2^2`,
/// then returns the quadrature value alongside `var(g)/(r1 r2)`.
pub fn double_integral_bound(
    f2d: &dyn Fn(f64, f64, (u32, u32)) -> f64,
    g2d: &dyn Fn(f64, f64, (u32, u32)) -> C64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    r1: f64,
    r2: f64,
) -> Result<DoubleIntegralOutcome, OscError> {
    const HESS_GRID: usize = 33;
    let (r1sq, r2sq) = (r1 * r1, r2 * r2);
    for x in grid(x_range, HESS_GRID) {
        for y in grid(y_range, HESS_GRID) {
            let fxx = f2d(x, y, (2, 0));
            let fyy = f2d(x, y, (0, 2));
            let fxy = f2d(x, y, (1, 1));
            let checks: [(&'static str, f64, f64); 3] = [
                ("f_xx", fxx, r1sq),
                ("f_yy", fyy, r2sq),
                ("det Hessian", fxx * fyy - fxy * fxy, r1sq * r2sq),
            ];
            for (which, value, required) in checks {
                if !(value >= required) {
                    return Err(OscError::HessianViolation {
                        which,
                        x,
                        y,
                        value,
                        required,
                    });
                }
            }
        }
    }
    // Total variation of the amplitude; smooth non-oscillatory integrand.
    let var_opts = QuadOpts {
        tol_abs: 1e-8,
        ..QuadOpts::default()
    };
    let var = integrate2d(
        |x, y| C64::new(g2d(x, y, (1, 1)).norm(), 0.0),
        x_range,
        y_range,
        var_opts,
        4,
    )?
    .value
    .re;
    // The oscillatory value itself. Seed panel counts from the phase
    // gradient sampled on the same grid.
    let mut max_fx = 0.0f64;
    let mut max_fy = 0.0f64;
    for x in grid(x_range, HESS_GRID) {
        for y in grid(y_range, HESS_GRID) {
            max_fx = max_fx.max(f2d(x, y, (1, 0)).abs());
            max_fy = max_fy.max(f2d(x, y, (0, 1)).abs());
        }
    }
    let outer_initial = crate::quad::panels_for_phase(x_range.0, x_range.1, max_fx);
    let inner_initial = crate::quad::panels_for_phase(y_range.0, y_range.1, max_fy);
    let value_opts = QuadOpts {
        tol_abs: 1e-9,
        max_panels: 1 << 22,
        initial_panels: outer_initial,
    };
    let value = integrate2d(
        |x, y| g2d(x, y, (0, 0)) * e(f2d(x, y, (0, 0))),
        x_range,
        y_range,
        value_opts,
        inner_initial,
    )?
    .value;
    Ok(DoubleIntegralOutcome {
        value,
        bound: var / (r1 * r2),
    })
}
