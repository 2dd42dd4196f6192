//! Both sides of the Voronoi identity for twisted coefficient sums: the
//! class-decomposed lattice sums `S_L` against the dual expansion
//! `sum_{(c,f)} A(mp,(c,f);q) J((c,f);q)`, plus a mid-level Poisson oracle
//! that certifies single dual terms before the polar-coordinate reduction.
//!
//! The left side is elementary: `S_L = sum_{gamma in L} psi(gamma)
//! e(m N(gamma)/(q l)) V(N(gamma)/(N l))`, and the full twisted sum is
//! `(1/w_K) sum_classes S_L / psi(L)`. The right side pairs the six-branch
//! closed form of the arithmetic part with a Bessel-transform analytic
//! part; equality of the two sides is exact, so the residual measures only
//! quadrature and truncation.

use crate::arith;
use crate::characters::{eval_hecke_or_zero, lambda_coefficients, HeckeCharacter};
use crate::gauss_sums::{
    arithmetic_part_brute, arithmetic_part_closed, ArithPartParams, GaussError,
};
use crate::oscillatory::SmoothBump;
use crate::quad::{self, QuadError, QuadOpts};
use crate::quadfield::{self, IdealLatticeBasis, RingType};
use crate::{e, e_frac, C64};
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum VoronoiError {
    #[error(
        "dual sum reached radius {radius:.1} with {terms} terms before the shell sums went quiet"
    )]
    BudgetExceeded { radius: f64, terms: usize },
    #[error("oracle modulus {size} exceeds the cap {cap}")]
    OracleTooLarge { size: u64, cap: u64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Arithmetic(#[from] GaussError),
}

/// Stopping and accuracy policy for the dual-sum enumeration.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPolicy {
    /// Hard cap on the dual radius `sqrt(c^2 D + f^2)`.
    pub max_radius: f64,
    /// Width of the enumeration shells in that radius.
    pub shell_width: f64,
    /// Stop once this many consecutive shells fall below the floor.
    pub quiet_shells: usize,
    /// Absolute sum of |term| under which a shell counts as quiet.
    pub shell_floor: f64,
    /// Absolute quadrature target for each analytic-part integral.
    pub quad_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_radius: 4000.0,
            shell_width: 16.0,
            quiet_shells: 3,
            shell_floor: 1e-9,
            quad_tol: 1e-12,
        }
    }
}

impl TruncationPolicy {
    /// Roughly 10x the default budget: deeper radius, lower floor, tighter
    /// per-term quadrature.
    pub fn tight() -> Self {
        TruncationPolicy {
            max_radius: 9000.0,
            shell_width: 16.0,
            quiet_shells: 4,
            shell_floor: 1e-12,
            quad_tol: 1e-14,
        }
    }
}

/// One verification instance: a character, a twist `e(m n / q)`, a scale,
/// a window, and the class representative whose lattice sum is dualized.
#[derive(Debug, Clone)]
pub struct VoronoiInstance {
    pub psi: HeckeCharacter,
    pub m: i64,
    pub q: u64,
    pub n_scale: f64,
    pub window: SmoothBump,
    pub rep: IdealLatticeBasis,
    pub truncation: TruncationPolicy,
    /// Opt-in for fields with -D = 2 mod 4 on the dual side, where only
    /// term-level validation backs the closed forms.
    pub even_field_opt_in: bool,
}

impl VoronoiInstance {
    pub fn new(
        psi: HeckeCharacter,
        m: i64,
        q: u64,
        n_scale: f64,
        window: SmoothBump,
        rep: IdealLatticeBasis,
        truncation: TruncationPolicy,
    ) -> Self {
        assert!(q >= 1 && m >= 1, "twist must have m >= 1, q >= 1");
        assert!(n_scale > 0.0 && n_scale.is_finite());
        assert_eq!(arith::gcd(m, q as i64), 1, "m must be coprime to q");
        assert!(rep.ell % 2 == 1 && rep.ell != psi.ps.p);
        assert_eq!(
            arith::gcd(rep.ell as i64, psi.ps.p as i64 * m),
            1,
            "l must be coprime to p and m"
        );
        assert_eq!(
            arith::gcd(q as i64, rep.ell as i64),
            1,
            "q must be coprime to l"
        );
        VoronoiInstance {
            psi,
            m,
            q,
            n_scale,
            window,
            rep,
            truncation,
            even_field_opt_in: false,
        }
    }

    fn ell(&self) -> u64 {
        self.rep.ell
    }

    fn qpl(&self) -> u64 {
        self.q * self.psi.ps.p * self.ell()
    }

    fn arith_proto(&self) -> ArithPartParams {
        ArithPartParams::new(
            &self.psi.ctx,
            &self.psi.ps,
            &self.psi.chi,
            &self.rep,
            self.q,
            self.m as u64,
            0,
            0,
        )
    }

    fn assert_dual_side_field(&self) {
        let d = self.psi.ctx.d;
        assert!(
            d % 4 == 1 || (d % 4 == 2 && self.even_field_opt_in),
            "dual side covers -D = 3 mod 4; -D = 2 mod 4 is opt-in"
        );
    }
}

/// One dual term: the pair of factors at a lattice point of the support.
#[derive(Debug, Clone, Copy)]
pub struct DualTerm {
    pub c: i64,
    pub f: i64,
    pub arith: C64,
    pub analytic: C64,
}

/// Outcome of a two-sided verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerificationReport {
    pub lhs: C64,
    pub rhs: C64,
    pub abs_err: f64,
    /// Present only when the truncation tail is small enough for the ratio
    /// to be meaningful (|lhs| > 10 * tail estimate).
    pub rel_err: Option<f64>,
    pub terms_used: usize,
    pub truncation_tail_estimate: f64,
    pub wall_time_s: f64,
}

/// `sum_n lambda(n) e(n m / q) V(n / N)` through the coefficient series.
pub fn direct_sum(inst: &VoronoiInstance) -> C64 {
    let (_, hi) = inst.window.support();
    let n_max = (hi * inst.n_scale).ceil() as usize;
    if n_max == 0 {
        return C64::new(0.0, 0.0);
    }
    let series = lambda_coefficients(&inst.psi, n_max);
    let mut total = C64::new(0.0, 0.0);
    for n in 1..=n_max {
        let v = inst.window.eval(n as f64 / inst.n_scale);
        if v == 0.0 {
            continue;
        }
        let twist = e_frac(
            ((inst.m as i128 * n as i128).rem_euclid(inst.q as i128)) as i64,
            inst.q as i64,
        );
        total += series.lambda(n) * twist * v;
    }
    total
}

/// `S_L`: the windowed, twisted character sum over the lattice of the
/// instance's representative ideal.
pub fn class_sum(inst: &VoronoiInstance) -> C64 {
    let ell = inst.ell();
    let (_, hi) = inst.window.support();
    let bound = hi * inst.n_scale * ell as f64;
    let ql = (inst.q * ell) as i128;
    let mut total = C64::new(0.0, 0.0);
    quadfield::for_each_lattice_point(&inst.psi.ctx, Some(&inst.rep), bound, |gamma| {
        let norm = quadfield::norm(&inst.psi.ctx, &gamma);
        let v = inst.window.eval(norm as f64 / (inst.n_scale * ell as f64));
        if v == 0.0 {
            return;
        }
        let val = eval_hecke_or_zero(&inst.psi, &gamma);
        if val.norm_sqr() == 0.0 {
            return;
        }
        let twist = e_frac(
            ((inst.m as i128 * norm as i128).rem_euclid(ql)) as i64,
            ql as i64,
        );
        total += val * twist * v;
    });
    total
}

/// `(1/w_K) sum_classes S_L / psi(L)`: the class decomposition that must
/// reproduce [`direct_sum`] exactly.
pub fn class_decomposed_sum(inst: &VoronoiInstance) -> C64 {
    let omega = inst.psi.ctx.omega_k as f64;
    let mut total = C64::new(0.0, 0.0);
    for (rep, phase) in inst.psi.class_phases.clone() {
        let mut class_inst = inst.clone();
        class_inst.rep = rep;
        total += class_sum(&class_inst) / phase;
    }
    total / omega
}

/// Congruence-detector form of `S_L`: a sum over the full order with the
/// literal `(1/l) sum_xi e((c + f d_l) xi / l)` membership detector, and
/// for half-integral rings the literal parity detector `1 + e((c+f)/2)`
/// as printed (no compensating 1/2). Oracle for the detector identities;
/// the half-integral detector overcounts by exactly 2.
pub fn class_sum_detector_display(inst: &VoronoiInstance) -> C64 {
    let ell = inst.ell() as i64;
    let d_ell = inst.rep.signed_root();
    let (_, hi) = inst.window.support();
    let bound = hi * inst.n_scale * inst.ell() as f64;
    let ql = (inst.q * inst.ell()) as i128;
    let rt1 = inst.psi.ctx.ring_type == RingType::Rt1;
    let mut total = C64::new(0.0, 0.0);
    quadfield::for_each_lattice_point(&inst.psi.ctx, None, bound, |gamma| {
        let (na, nb) = gamma.numerator();
        // display coordinates: numerator pair for half-integral rings,
        // integral coordinates otherwise
        let (c, f) = if rt1 { (na, nb) } else { (na / 2, nb / 2) };
        let mut detector = C64::new(0.0, 0.0);
        let res = (c + f * d_ell).rem_euclid(ell);
        for xi in 0..ell {
            detector += e_frac((res * xi).rem_euclid(ell), ell);
        }
        detector /= ell as f64;
        if rt1 {
            // literal parity factor; (c+f)/2 is an integer exactly on
            // elements, so this is the constant 2 here
            detector *= C64::new(1.0, 0.0) + e((c + f) as f64 / 2.0);
        }
        let val = eval_hecke_or_zero(&inst.psi, &gamma);
        if val.norm_sqr() == 0.0 {
            return;
        }
        let norm = quadfield::norm(&inst.psi.ctx, &gamma);
        let v = inst.window.eval(norm as f64 / (inst.n_scale * inst.ell() as f64));
        if v == 0.0 {
            return;
        }
        let twist = e_frac(
            ((inst.m as i128 * norm as i128).rem_euclid(ql)) as i64,
            ql as i64,
        );
        total += val * twist * v * detector;
    });
    total
}

/// Radial factor of the analytic part:
/// `int V(R) J_r(2 pi sqrt(N R) a / (q p sqrt(l D))) dR`.
fn analytic_radial(inst: &VoronoiInstance, a_val: f64, tol: f64) -> Result<f64, QuadError> {
    let (lo, hi) = inst.window.support();
    let kappa = 2.0 * PI * inst.n_scale.sqrt() * a_val
        / ((inst.q * inst.psi.ps.p) as f64 * (inst.ell() as f64 * inst.psi.ctx.d as f64).sqrt());
    let r = inst.psi.r;
    // phase derivative of J_r(kappa sqrt(R)) is at most kappa/(2 sqrt(lo))
    let cycles_per_unit = kappa / (2.0 * lo.sqrt()) / (2.0 * PI);
    let opts = QuadOpts {
        tol_abs: tol,
        max_panels: 1 << 18,
        initial_panels: quad::panels_for_phase(lo, hi, cycles_per_unit),
    };
    let q = quad::integrate(
        |rr| C64::new(inst.window.eval(rr) * crate::oscillatory::bessel_j(r, kappa * rr.sqrt()), 0.0),
        lo,
        hi,
        opts,
    )?;
    Ok(q.value.re)
}

/// The analytic part `J((c,f);q)` in polar-reduced form:
/// `(N l pi / sqrt(D)) e^{-i r phi} int V(R) J_r(...) dR` with
/// `phi = atan2(c sqrt(D), f)`. At the origin the polar phase is
/// undefined; the pre-polar integral vanishes there for r >= 1 by the
/// angular integration.
pub fn analytic_part(inst: &VoronoiInstance, c: i64, f: i64) -> C64 {
    let d = inst.psi.ctx.d as f64;
    let nl = inst.n_scale * inst.ell() as f64;
    if c == 0 && f == 0 {
        if inst.psi.r >= 1 {
            return C64::new(0.0, 0.0);
        }
        let (lo, hi) = inst.window.support();
        let q = quad::integrate(
            |rr| C64::new(inst.window.eval(rr), 0.0),
            lo,
            hi,
            QuadOpts::default(),
        )
        .expect("window integral");
        return q.value * nl * PI / d.sqrt();
    }
    let a_val = ((c as f64).powi(2) * d + (f as f64).powi(2)).sqrt();
    let radial = analytic_radial(inst, a_val, inst.truncation.quad_tol)
        .expect("analytic-part quadrature within budget");
    let phi = (c as f64 * d.sqrt()).atan2(f as f64);
    C64::from_polar(1.0, -(inst.psi.r as f64) * phi) * (nl * PI / d.sqrt()) * radial
}

/// Pre-polar form of the analytic part: the literal two-dimensional
/// Fourier integral of the weight-r kernel against the window.
pub fn analytic_part_cartesian(
    inst: &VoronoiInstance,
    c: i64,
    f: i64,
    tol_abs: f64,
) -> Result<C64, QuadError> {
    let d = inst.psi.ctx.d as f64;
    let nl = inst.n_scale * inst.ell() as f64;
    let (_, hi) = inst.window.support();
    let n = inst.qpl() as f64;
    let zmax = (nl * hi).sqrt();
    let ymax = (nl * hi / d).sqrt();
    let r = inst.psi.r as f64;
    let integrand = |z: f64, y: f64| -> C64 {
        let v = inst.window.eval((z * z + y * y * d) / nl);
        if v == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let theta = (y * d.sqrt()).atan2(z);
        C64::from_polar(v, r * theta) * e(-(c as f64 * z + f as f64 * y) / n)
    };
    let inner_initial = quad::panels_for_phase(-zmax, zmax, c as f64 / n);
    let outer_initial = quad::panels_for_phase(-ymax, ymax, f as f64 / n);
    let q = quad::integrate2d(
        integrand,
        (-zmax, zmax),
        (-ymax, ymax),
        QuadOpts {
            tol_abs,
            max_panels: 1 << 20,
            initial_panels: outer_initial,
        },
        inner_initial,
    )?;
    Ok(q.value)
}

pub const POISSON_ORACLE_CAP: u64 = 200;

/// One dual term evaluated the slow way: brute-force character sum times
/// the two-dimensional Fourier integral, i.e. the expansion one step
/// before both the closed-form algebra and the polar reduction.
pub fn poisson_oracle(inst: &VoronoiInstance, c: i64, f: i64) -> Result<C64, VoronoiError> {
    inst.assert_dual_side_field();
    let size = inst.qpl();
    if size > POISSON_ORACLE_CAP {
        return Err(VoronoiError::OracleTooLarge {
            size,
            cap: POISSON_ORACLE_CAP,
        });
    }
    let mut params = inst.arith_proto();
    params.c = c;
    params.f = f;
    let a_factor = arithmetic_part_brute(&params)?;
    let j_factor = analytic_part_cartesian(inst, c, f, 1e-9)?;
    Ok(a_factor * j_factor)
}

fn crt_pair(r1: i64, m1: i64, r2: i64, m2: i64) -> (i64, i64) {
    if m2 == 1 {
        return (r1, m1);
    }
    let m = m1 * m2;
    let inv = arith::mod_inv(m1.rem_euclid(m2), m2).expect("moduli coprime");
    let k = ((r2 - r1).rem_euclid(m2) * inv).rem_euclid(m2);
    ((r1 + m1 * k).rem_euclid(m), m)
}

/// Lattice points of the dual support with radius in `[a_lo, a_hi)`,
/// in a fixed deterministic order (c ascending, then f ascending).
fn support_candidates(inst: &VoronoiInstance, a_lo: f64, a_hi: f64) -> Vec<(i64, i64)> {
    let d = inst.psi.ctx.d as i64;
    let ell = inst.ell() as i64;
    let d_ell = inst.rep.signed_root();
    let p = inst.psi.ps.p as i64;
    let d_p = inst.psi.ps.d_p.expect("split") as i64;
    let g = arith::gcd(inst.q as i64, d);
    let case2 = inst.q % inst.psi.ps.p == 0;
    let step = ell * p * g;
    let lo2 = a_lo * a_lo;
    let hi2 = a_hi * a_hi;
    let c_max = quadfield::int_sqrt_leq(hi2 / d as f64);
    let parity = match inst.q % 4 {
        2 => Some(1i64), // both odd
        0 => Some(0),    // both even
        _ => None,
    };
    let mut out = Vec::new();
    for c in -c_max..=c_max {
        if case2 && c % p != 0 {
            continue;
        }
        if let Some(par) = parity {
            if c.rem_euclid(2) != par {
                continue;
            }
        }
        // f = c d_l mod l; f = c d_p mod p (or 0 mod p when p | q); f = 0 mod g
        let (r1, m1) = ((c * d_ell).rem_euclid(ell), ell);
        let r2 = if case2 { 0 } else { (c * d_p).rem_euclid(p) };
        let (r12, m12) = crt_pair(r1, m1, r2, p);
        let (f0, modulus) = crt_pair(r12, m12, 0, g);
        debug_assert_eq!(modulus, step);
        let fc2 = hi2 - (c * c * d) as f64;
        let f_max = quadfield::int_sqrt_leq(fc2.max(0.0)) + step;
        let k_lo = (-f_max - f0).div_euclid(step);
        let k_hi = (f_max - f0).div_euclid(step);
        for k in k_lo..=k_hi {
            let f = f0 + k * step;
            if let Some(par) = parity {
                if f.rem_euclid(2) != par {
                    continue;
                }
            }
            let norm2 = (c * c * d + f * f) as f64;
            if norm2 >= lo2 && norm2 < hi2 {
                out.push((c, f));
            }
        }
    }
    out
}

/// Tail estimate from the measured shell sums: fit the geometric decay of
/// the trailing shells and sum the extrapolated remainder. The window's
/// smoothness makes the per-shell totals decay superpolynomially, so by
/// the stopping point the fitted ratio is well under 1; the estimate is
/// deliberately anchored at the largest of the quiet shells.
fn extrapolate_tail(shell_sums: &[f64], quiet_shells: usize) -> f64 {
    let n = shell_sums.len();
    if n == 0 {
        return 0.0;
    }
    let tail_base = shell_sums[n.saturating_sub(quiet_shells)..]
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    if tail_base == 0.0 {
        return 0.0;
    }
    let k = 6.min(n - 1);
    if k == 0 {
        return 20.0 * tail_base;
    }
    let s0 = shell_sums[n - 1 - k];
    let s1 = shell_sums[n - 1].max(tail_base * 1e-3);
    if s0 <= s1 {
        return 20.0 * tail_base;
    }
    let rho = (s1 / s0).powf(1.0 / k as f64).min(0.95);
    tail_base * rho / (1.0 - rho)
}

/// Chebyshev-Lobatto nodes on `[a, b]`, endpoint-inclusive, ascending.
fn cheb_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            let t = (PI * j as f64 / n as f64).cos();
            0.5 * (a + b) - 0.5 * (b - a) * t
        })
        .collect()
}

/// Barycentric interpolation on Lobatto nodes (weights (-1)^j, halved at
/// the ends). Exact at the nodes.
fn cheb_eval(nodes: &[f64], vals: &[f64], x: f64) -> f64 {
    let n = nodes.len() - 1;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..=n {
        let dx = x - nodes[j];
        if dx == 0.0 {
            return vals[j];
        }
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == n {
            w *= 0.5;
        }
        let t = w / dx;
        num += t * vals[j];
        den += t;
    }
    num / den
}

/// Full dual-sum expansion with the adaptive shell stopping rule.
#[derive(Debug)]
pub struct DualExpansion {
    pub terms: Vec<DualTerm>,
    pub tail_estimate: f64,
    pub stopped_radius: f64,
}

impl DualExpansion {
    pub fn value(&self) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for t in &self.terms {
            s += t.arith * t.analytic;
        }
        s
    }
}

/// Enumerate and evaluate the dual sum `sum_{(c,f)} A * J` over the
/// support lattice, shell by shell, until the contributions go quiet.
///
/// Within a shell the radial integral is a smooth function of the radius
/// alone, so it is sampled at Chebyshev nodes (count set by the phase
/// slope) and interpolated to each support point; two interior probes per
/// shell are still integrated directly and checked against the
/// interpolant. Terms with a vanishing arithmetic factor are dropped.
pub fn dual_terms(inst: &VoronoiInstance) -> Result<DualExpansion, VoronoiError> {
    inst.assert_dual_side_field();
    let proto = inst.arith_proto();
    let policy = inst.truncation;
    let d = inst.psi.ctx.d as f64;
    let prefactor = inst.n_scale * inst.ell() as f64 * PI / d.sqrt();
    let r = inst.psi.r as f64;
    let kappa_slope = 2.0 * PI * inst.n_scale.sqrt()
        / ((inst.q * inst.psi.ps.p) as f64 * (inst.ell() as f64 * d).sqrt());
    // the interpolant must resolve phases up to kappa_slope * sqrt(2) per
    // unit radius; 1.06 ~ 1.5 * sqrt(2)/2 gives headroom past Bernstein
    let n_nodes = 24 + (1.06 * kappa_slope * policy.shell_width).ceil() as usize;
    // arm the quiet counter only after the first support congruence class
    // is reachable so a sparse lattice cannot stop the scan at radius zero
    let g = arith::gcd(inst.q as i64, inst.psi.ctx.d as i64) as u64;
    let case2 = inst.q % inst.psi.ps.p == 0;
    let support_modulus =
        inst.ell() * inst.psi.ps.p * g * if case2 { inst.psi.ps.p } else { 1 };
    let arming_radius = 4.0 * (support_modulus as f64).sqrt();

    let mut terms: Vec<DualTerm> = Vec::new();
    let mut shell_sums: Vec<f64> = Vec::new();
    let mut quiet = 0usize;
    let mut shell = 0usize;
    let mut stopped = None;
    while (shell as f64) * policy.shell_width < policy.max_radius {
        let a_lo = shell as f64 * policy.shell_width;
        let a_hi = ((shell + 1) as f64 * policy.shell_width).min(policy.max_radius);
        let cands = support_candidates(inst, a_lo, a_hi);
        let mut shell_abs = 0.0f64;
        if !cands.is_empty() {
            let nodes = cheb_nodes(a_lo, a_hi, n_nodes);
            let vals: Result<Vec<f64>, QuadError> = nodes
                .par_iter()
                .map(|&a| analytic_radial(inst, a, policy.quad_tol))
                .collect();
            let vals = vals?;
            let val_scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if val_scale > 100.0 * policy.quad_tol {
                for frac in [0.318, 0.777] {
                    let probe = a_lo + frac * (a_hi - a_lo);
                    let direct = analytic_radial(inst, probe, policy.quad_tol)?;
                    let interp = cheb_eval(&nodes, &vals, probe);
                    assert!(
                        (direct - interp).abs() <= 1e-8 + 1e-8 * direct.abs(),
                        "radial interpolant drifted at radius {probe}: {direct} vs {interp}"
                    );
                }
            }
            let new_terms: Result<Vec<Option<DualTerm>>, VoronoiError> = cands
                .par_iter()
                .map(|&(c, f)| {
                    let mut params = proto.clone();
                    params.c = c;
                    params.f = f;
                    let arith = arithmetic_part_closed(&params)?;
                    if arith.norm_sqr() == 0.0 {
                        return Ok(None);
                    }
                    let a_val = ((c as f64).powi(2) * d + (f as f64).powi(2)).sqrt();
                    let radial = cheb_eval(&nodes, &vals, a_val);
                    let phi = (c as f64 * d.sqrt()).atan2(f as f64);
                    let analytic = C64::from_polar(1.0, -r * phi) * (prefactor * radial);
                    Ok(Some(DualTerm {
                        c,
                        f,
                        arith,
                        analytic,
                    }))
                })
                .collect();
            for t in new_terms?.into_iter().flatten() {
                shell_abs += (t.arith * t.analytic).norm();
                terms.push(t);
            }
        }
        shell_sums.push(shell_abs);
        if shell_abs < policy.shell_floor && a_hi >= arming_radius {
            quiet += 1;
            if quiet >= policy.quiet_shells {
                stopped = Some(a_hi);
                break;
            }
        } else {
            quiet = 0;
        }
        shell += 1;
    }
    let Some(a_stop) = stopped else {
        return Err(VoronoiError::BudgetExceeded {
            radius: policy.max_radius,
            terms: terms.len(),
        });
    };
    let tail = extrapolate_tail(&shell_sums, policy.quiet_shells);
    Ok(DualExpansion {
        terms,
        tail_estimate: tail,
        stopped_radius: a_stop,
    })
}

/// Dual-sum value with its tail estimate and term count.
pub fn dual_sum(inst: &VoronoiInstance) -> Result<(C64, f64, usize), VoronoiError> {
    let exp = dual_terms(inst)?;
    Ok((exp.value(), exp.tail_estimate, exp.terms.len()))
}

/// Compute both sides and package the comparison.
pub fn verify(inst: &VoronoiInstance) -> Result<VerificationReport, VoronoiError> {
    let t0 = std::time::Instant::now();
    let lhs = class_sum(inst);
    let (rhs, tail, terms_used) = dual_sum(inst)?;
    let abs_err = (lhs - rhs).norm();
    let rel_err = if lhs.norm() > 10.0 * tail {
        Some(abs_err / lhs.norm())
    } else {
        None
    };
    Ok(VerificationReport {
        lhs,
        rhs,
        abs_err,
        rel_err,
        terms_used,
        truncation_tail_estimate: tail,
        wall_time_s: t0.elapsed().as_secs_f64(),
    })
}
