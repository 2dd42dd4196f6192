//! Smooth compactly supported test windows with analytic derivatives.
//!
//! Two families cover the needs of the oscillatory-integral routines: a
//! C-infinity exponential bump (rapid Fourier decay, the default weight for
//! the summation-formula checks) and a C^4 polynomial spline (cheap, exact
//! derivatives, handy when only a few derivatives matter). Both are
//! normalized so the supremum over the support is 1 and evaluate to exactly
//! 0 outside the closed support.

use super::OscError;

/// Which window profile a [`SmoothBump`] uses on its support `[a, b]`,
/// writing `u(x) = (x - a)(b - x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpKind {
    /// `exp(-1/u(x))`, smooth to all orders, all derivatives vanish at the
    /// endpoints.
    StandardExpBump,
    /// `u(x)^5`, polynomial inside the support, C^4 across the endpoints.
    PolynomialSpline,
}

/// A smooth nonnegative window supported on `[a, b]` with `0 < a < b`,
/// scaled so its maximum value (attained at the midpoint) is 1.
#[derive(Debug, Clone, Copy)]
pub struct SmoothBump {
    pub kind: BumpKind,
    pub a: f64,
    pub b: f64,
    /// Scale applied to the raw profile so that the supremum is 1.
    pub normalization: f64,
}

impl SmoothBump {
    /// Build a window on `[a, b]`. The support must sit strictly inside the
    /// positive axis; several consumers divide by `x` or take `log x` on the
    /// support.
    pub fn new(kind: BumpKind, a: f64, b: f64) -> Result<Self, OscError> {
        if !(a > 0.0 && b > a && a.is_finite() && b.is_finite()) {
            return Err(OscError::InvalidSupport { a, b });
        }
        let half = (b - a) / 2.0;
        let u_peak = half * half;
        let normalization = match kind {
            BumpKind::StandardExpBump => (1.0 / u_peak).exp(),
            BumpKind::PolynomialSpline => 1.0 / u_peak.powi(5),
        };
        Ok(SmoothBump { kind, a, b, normalization })
    }

    /// The default weight used across the verification drivers: the
    /// exponential bump on `[1, 2]`.
    pub fn standard() -> Self {
        SmoothBump::new(BumpKind::StandardExpBump, 1.0, 2.0).expect("fixed valid support")
    }

    pub fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn inside(&self, x: f64) -> bool {
        x > self.a && x < self.b
    }

    /// Window value; exactly 0 outside the open support.
    pub fn eval(&self, x: f64) -> f64 {
        if !self.inside(x) {
            return 0.0;
        }
        let u = (x - self.a) * (self.b - x);
        match self.kind {
            BumpKind::StandardExpBump => self.normalization * (-1.0 / u).exp(),
            BumpKind::PolynomialSpline => self.normalization * u.powi(5),
        }
    }

    /// First derivative, analytic on the open support, 0 outside.
    pub fn d1(&self, x: f64) -> f64 {
        if !self.inside(x) {
            return 0.0;
        }
        let u = (x - self.a) * (self.b - x);
        let up = self.a + self.b - 2.0 * x;
        match self.kind {
            BumpKind::StandardExpBump => {
                // w = n exp(-1/u), w' = w * u'/u^2
                self.eval(x) * up / (u * u)
            }
            BumpKind::PolynomialSpline => 5.0 * self.normalization * u.powi(4) * up,
        }
    }

    /// Second derivative, analytic on the open support, 0 outside.
    pub fn d2(&self, x: f64) -> f64 {
        if !self.inside(x) {
            return 0.0;
        }
        let u = (x - self.a) * (self.b - x);
        let up = self.a + self.b - 2.0 * x;
        match self.kind {
            BumpKind::StandardExpBump => {
                // phi = -1/u, phi' = u'/u^2, phi'' = (u'' u - 2 u'^2)/u^3
                // with u'' = -2; then w'' = w (phi'' + phi'^2).
                let phi1 = up / (u * u);
                let phi2 = (-2.0 * u - 2.0 * up * up) / (u * u * u);
                self.eval(x) * (phi2 + phi1 * phi1)
            }
            BumpKind::PolynomialSpline => {
                // w'' = 5 n u^3 (4 u'^2 + u u'')
                5.0 * self.normalization * u.powi(3) * (4.0 * up * up - 2.0 * u)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_is_one_at_midpoint() {
        for kind in [BumpKind::StandardExpBump, BumpKind::PolynomialSpline] {
            let w = SmoothBump::new(kind, 1.0, 2.0).unwrap();
            assert!((w.eval(1.5) - 1.0).abs() < 1e-15);
            // scan for anything exceeding 1
            for i in 0..=1000 {
                let x = 1.0 + i as f64 / 1000.0;
                assert!(w.eval(x) <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn zero_outside_support() {
        let w = SmoothBump::standard();
        for x in [0.0, 0.5, 1.0, 2.0, 2.5, -3.0] {
            assert_eq!(w.eval(x), 0.0);
            assert_eq!(w.d1(x), 0.0);
            assert_eq!(w.d2(x), 0.0);
        }
    }

    #[test]
    fn rejects_bad_support() {
        assert!(SmoothBump::new(BumpKind::StandardExpBump, 0.0, 1.0).is_err());
        assert!(SmoothBump::new(BumpKind::StandardExpBump, -1.0, 1.0).is_err());
        assert!(SmoothBump::new(BumpKind::StandardExpBump, 2.0, 2.0).is_err());
        assert!(SmoothBump::new(BumpKind::PolynomialSpline, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Central differences at interior points, both kinds.
        let h = 1e-6;
        for kind in [BumpKind::StandardExpBump, BumpKind::PolynomialSpline] {
            let w = SmoothBump::new(kind, 1.0, 2.0).unwrap();
            for &x in &[1.2, 1.5, 1.7, 1.9] {
                let fd1 = (w.eval(x + h) - w.eval(x - h)) / (2.0 * h);
                let fd2 = (w.eval(x + h) - 2.0 * w.eval(x) + w.eval(x - h)) / (h * h);
                assert!((w.d1(x) - fd1).abs() < 1e-6 * (1.0 + fd1.abs()), "{kind:?} d1 at {x}");
                assert!((w.d2(x) - fd2).abs() < 1e-3 * (1.0 + fd2.abs()), "{kind:?} d2 at {x}");
            }
        }
    }

    #[test]
    fn spline_is_exact_polynomial() {
        let w = SmoothBump::new(BumpKind::PolynomialSpline, 1.0, 3.0).unwrap();
        // u = (x-1)(3-x), peak u = 1 at x = 2, so normalization = 1.
        assert!((w.normalization - 1.0).abs() < 1e-15);
        let x = 2.5f64;
        let u = (x - 1.0) * (3.0 - x);
        assert!((w.eval(x) - u.powi(5)).abs() < 1e-15);
    }
}
