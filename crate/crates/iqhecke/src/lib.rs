//! Arithmetic of Hecke characters over imaginary quadratic fields, with
//! numerical verification machinery.
//!
//! The crate is organized in layers:
//!
//! * [`quadfield`] — the field `Q(sqrt(-D))`: ring elements, norms, prime
//!   splitting, ideal lattices, and class-group representatives.
//! * [`characters`] — Dirichlet characters mod p, Kronecker symbols, Hecke
//!   characters of prime conductor and integer weight, and their coefficient
//!   series `lambda(n)`.
//! * [`gauss_sums`] — quadratic Gauss sums in closed form and the six-branch
//!   closed form of the arithmetic part of the dual-sum expansion, both with
//!   brute-force oracles.
//! * [`oscillatory`] — Bessel J, oscillation-aware quadrature consumers,
//!   stationary-phase main terms with error bounds, and a numerical Poisson
//!   summation check.
//! * [`voronoi`] — both sides of the twisted-coefficient-sum identity:
//!   class-decomposed lattice sums versus the dual sum of arithmetic times
//!   analytic parts, with a mid-level Poisson oracle.
//! * [`delta_method`] — the Kloosterman-form delta identity and the
//!   conductor-lowering decomposition.
//! * [`lfunc`] — L-series evaluation in the absolute-convergence region with
//!   an Euler-product oracle, smoothed coefficient windows, and an
//!   exploratory growth scan.
//!
//! Every nontrivial closed form is paired with an independent brute-force or
//! quadrature oracle; the test suite pins the two paths against each other at
//! the tolerances in [`tol`].

pub mod arith;
pub mod characters;
pub mod delta_method;
pub mod gauss_sums;
pub mod lfunc;
pub mod oscillatory;
pub mod quadfield;
pub mod tol;
pub mod voronoi;

mod dd;
pub mod quad;

/// Complex double shorthand used across the crate.
pub type C64 = num_complex::Complex64;

/// `e(x) = exp(2 pi i x)`, the additive character normalization used
/// everywhere in this crate.
#[inline]
pub fn e(x: f64) -> C64 {
    let t = 2.0 * std::f64::consts::PI * x;
    C64::new(t.cos(), t.sin())
}

/// `e` evaluated at a rational argument `num/den`, reduced into `[0,1)`
/// before the trigonometry so huge integer phases lose no precision.
#[inline]
pub fn e_frac(num: i64, den: i64) -> C64 {
    debug_assert!(den != 0);
    let r = num.rem_euclid(den);
    e(r as f64 / den as f64)
}
