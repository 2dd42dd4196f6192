//! Central numeric tolerances.
//!
//! Every comparison in the crate and its test suite pulls its threshold from
//! here, so loosening one is a visible, reviewable act. Constants come in two
//! flavors: identity tolerances (the math is exact; the budget covers only
//! floating-point accumulation) and quadrature/truncation tolerances (the
//! budget also covers a controlled discretization error).

/// Closed-form quadratic Gauss sums vs the brute sum. The identity is exact;
/// both sides accumulate O(c) rounding at c <= a few hundred.
pub const GAUSS_CLOSED_VS_BRUTE: f64 = 1e-9;

/// Modulus check |g(a,0,c)| = sqrt(c) for odd c.
pub const GAUSS_MODULUS: f64 = 1e-10;

/// Six-branch arithmetic part vs the brute character-sum oracle.
pub const ARITH_CLOSED_VS_BRUTE: f64 = 1e-8;

/// Class-decomposition identity: direct coefficient sum vs the weighted
/// per-class lattice sums. Exact identity, pure rounding budget.
pub const CLASS_DECOMPOSITION: f64 = 1e-10;

/// Term-level dual-sum check: arithmetic x analytic part vs the mid-level
/// Poisson oracle (one 2D Fourier integral per term).
pub const DUAL_TERM_VS_POISSON: f64 = 1e-8;

/// Global dual-sum identity at standard budget, relative.
pub const VORONOI_REL: f64 = 1e-4;

/// Global dual-sum identity at 10x budget, relative.
pub const VORONOI_REL_TIGHT: f64 = 1e-6;

/// Delta identity: computed delta vs {0,1}. Exact identity.
pub const DELTA_IDENTITY: f64 = 1e-9;

/// Delta sign symmetry delta(n) = delta(-n). Conjugate pairing is exact.
pub const DELTA_SYMMETRY: f64 = 1e-12;

/// Bessel J relative accuracy vs the integral-representation oracle.
pub const BESSEL_REL: f64 = 1e-10;

/// Series/asymptotic agreement at the internal crossover, small orders.
pub const BESSEL_CROSSOVER: f64 = 1e-8;

/// Absolute target for oscillatory quadrature (W-dagger and friends).
pub const OSC_QUAD_ABS: f64 = 1e-9;

/// Numerical Poisson-summation residual for rapidly decaying test functions.
pub const POISSON_CHECK: f64 = 1e-8;

/// Stationary-phase calibration ceiling: |main - quadrature| scaled by
/// min(|beta|,|r|)^{3/2} must stay below this across the sweep families.
pub const STATIONARY_CALIBRATION_C: f64 = 10.0;

/// Agreement between the two stationary-phase code paths on the
/// log-phase/power-amplitude family they both cover.
pub const STATIONARY_PATHS_AGREE: f64 = 1e-9;

/// Dirichlet series vs Euler product, relative, in the absolute-convergence
/// region (after both tails are driven below this).
pub const SERIES_VS_EULER_REL: f64 = 1e-6;

/// Coefficient regeneration from Euler data vs lattice enumeration.
pub const LAMBDA_REGEN: f64 = 1e-10;

/// Coefficient multiplicativity on coprime pairs.
pub const LAMBDA_MULT: f64 = 1e-10;

/// Unit invariance of Hecke character values.
pub const UNIT_INVARIANCE: f64 = 1e-12;

/// Linearity of smoothed windows in the bump.
pub const WINDOW_LINEARITY: f64 = 1e-12;

/// Truncation-monotonicity drift allowance for dual sums (quadrature noise).
pub const TRUNCATION_DRIFT: f64 = 1e-9;
