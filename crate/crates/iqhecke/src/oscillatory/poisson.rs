//! Numerical verification of Poisson summation in arithmetic progressions:
//!
//! `sum_{m = shift mod M} h(m)  =  (1/M) sum_n hhat(n/M) e(n shift / M)`
//!
//! with `hhat(xi) = int h(x) e(-xi x) dx`. Both sides are computed
//! independently (direct lattice sum vs quadrature Fourier transform), so
//! the reported difference is a genuine consistency check on any machinery
//! built on the identity.

use super::OscError;
use crate::quad::{integrate, panels_for_phase, QuadOpts};
use crate::{e_frac, C64};

/// Both sides of the identity and their distance.
#[derive(Debug, Clone, Copy)]
pub struct PoissonCheck {
    pub lhs: C64,
    pub rhs: C64,
    pub diff: f64,
    /// Number of dual-side frequencies `n` that were actually summed;
    /// grows like modulus / (effective width of h).
    pub dual_terms: usize,
}

/// Check the identity for a smooth `h` supported (to working precision)
/// inside `window`. `modulus >= 1`; `shift` is reduced mod `modulus`.
pub fn poisson_check(
    h: &dyn Fn(f64) -> f64,
    window: (f64, f64),
    modulus: u32,
    shift: i64,
) -> Result<PoissonCheck, OscError> {
    assert!(modulus >= 1, "modulus must be positive");
    let (lo, hi) = window;
    assert!(
        lo.is_finite() && hi.is_finite() && lo < hi,
        "window must be a finite interval"
    );
    let m = modulus as i64;

    // Direct side: integers congruent to shift inside the window.
    let mut lhs = 0.0;
    let first = {
        let lo_i = lo.ceil() as i64;
        let mut x = lo_i + (shift - lo_i).rem_euclid(m);
        if (x as f64) < lo {
            x += m;
        }
        x
    };
    let mut x = first;
    while (x as f64) <= hi {
        lhs += h(x as f64);
        x += m;
    }

    // Dual side: hhat(n/M) decays rapidly for smooth h; extend until five
    // consecutive frequencies contribute below threshold.
    let hhat = |xi: f64| -> Result<C64, OscError> {
        let opts = QuadOpts {
            tol_abs: 1e-12,
            max_panels: 1 << 21,
            initial_panels: panels_for_phase(lo, hi, xi.abs()),
        };
        Ok(integrate(|t| C64::new(h(t), 0.0) * crate::e(-xi * t), lo, hi, opts)?.value)
    };
    let mut rhs = hhat(0.0)?;
    let mut dual_terms = 1usize;
    let mut quiet = 0u32;
    let mut n = 1i64;
    while quiet < 5 && n <= 10_000 {
        let plus = hhat(n as f64 / modulus as f64)?;
        let minus = hhat(-(n as f64) / modulus as f64)?;
        rhs += plus * e_frac(n * shift, m) + minus * e_frac(-n * shift, m);
        dual_terms += 2;
        if plus.norm() + minus.norm() < 1e-13 {
            quiet += 1;
        } else {
            quiet = 0;
        }
        n += 1;
    }
    rhs /= modulus as f64;

    let lhs = C64::new(lhs, 0.0);
    Ok(PoissonCheck {
        lhs,
        rhs,
        diff: (lhs - rhs).norm(),
        dual_terms,
    })
}
