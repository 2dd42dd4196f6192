//! L-function evaluation in the absolute-convergence region, an
//! Euler-product oracle, smoothed central-window sums, and an exploratory
//! growth scan over the window scale.
//!
//! Every local factor is the uniform degree-2 polynomial
//! `1 - lambda(l) x + (lambda(l)^2 - lambda(l^2)) x^2` with `x = l^{-s}`:
//! for split primes the quadratic coefficient recovers the product of the
//! two prime-ideal values, for inert primes the linear term vanishes, for
//! ramified primes and the conductor prime the quadratic term vanishes, so
//! one formula covers all four shapes without branching.

use crate::characters::{eval_hecke_or_zero, lambda_coefficients, HeckeCharacter};
use crate::oscillatory::SmoothBump;
use crate::quadfield::{self, RingElement, RingType};
use crate::{arith, C64};

#[derive(Debug, thiserror::Error)]
pub enum LfuncError {
    #[error("series abscissa {sigma} below the convergence guard {min}")]
    AbscissaTooSmall { sigma: f64, min: f64 },
}

/// Partial Dirichlet series value with an attached tail majorant.
#[derive(Debug, Clone)]
pub struct LSeriesEval {
    pub psi: HeckeCharacter,
    pub s: C64,
    pub terms: usize,
    pub value: C64,
    /// Majorant for the omitted tail: `sum_{n > terms} d(n) n^{-Re s}`.
    pub tail_bound: f64,
}

/// One smoothed window sum `S(N) = sum lambda(n) n^{-it} V(n/N)`.
#[derive(Debug, Clone)]
pub struct SmoothedWindow {
    pub psi: HeckeCharacter,
    pub t: f64,
    pub n_scale: f64,
    pub window: SmoothBump,
    pub value: C64,
}

/// Riemann zeta on the real axis, sigma > 1 (Euler-Maclaurin through the
/// first derivative correction; plenty for majorant duty).
#[cfg(test)]
fn zeta_real(sigma: f64) -> f64 {
    assert!(sigma > 1.0);
    let m = 60.0f64;
    let mut s = 0.0;
    let mut n = 1.0;
    while n < m {
        s += n.powf(-sigma);
        n += 1.0;
    }
    s + m.powf(1.0 - sigma) / (sigma - 1.0) + 0.5 * m.powf(-sigma)
        - sigma * m.powf(-sigma - 1.0) / 12.0
}

/// `sum_{n > t} d(n) n^{-sigma}` via the hyperbola split: both short legs
/// contribute `t^{1-sigma} (ln sqrt(t) + 1) / (sigma - 1)`, the corner is
/// lower order.
fn divisor_tail_majorant(t: usize, sigma: f64) -> f64 {
    assert!(sigma > 1.0 && t >= 1);
    let tf = t as f64;
    let leg = 2.0 * tf.powf(1.0 - sigma) * (tf.sqrt().ln() + 1.0) / (sigma - 1.0);
    let corner = tf.powf(1.5 * (1.0 - sigma)) / ((sigma - 1.0) * (sigma - 1.0));
    leg + corner
}

fn n_pow_neg_s(n: usize, s: C64) -> C64 {
    (-s * (n as f64).ln()).exp()
}

const SERIES_ABSCISSA_MIN: f64 = 1.2;

/// Partial sum of `sum lambda(n) n^{-s}` with a divisor-function tail
/// majorant (|lambda(n)| is at most the ideal count at norm n, which the
/// divisor function dominates).
pub fn dirichlet_series(
    psi: &HeckeCharacter,
    s: C64,
    terms: usize,
) -> Result<LSeriesEval, LfuncError> {
    if s.re < SERIES_ABSCISSA_MIN {
        return Err(LfuncError::AbscissaTooSmall {
            sigma: s.re,
            min: SERIES_ABSCISSA_MIN,
        });
    }
    assert!(terms >= 1);
    let series = lambda_coefficients(psi, terms);
    let mut value = C64::new(0.0, 0.0);
    for n in 1..=terms {
        let lam = series.lambda(n);
        if lam.norm_sqr() != 0.0 {
            value += lam * n_pow_neg_s(n, s);
        }
    }
    Ok(LSeriesEval {
        psi: psi.clone(),
        s,
        terms,
        value,
        tail_bound: divisor_tail_majorant(terms, s.re),
    })
}

/// `lambda(n)` for a single `n` by norm-exact enumeration: per class,
/// solve `na^2 + D nb^2 = 4 n ell` column by column instead of sweeping
/// the whole norm ball. Cheap enough to reach `n = l^2` for five-digit
/// primes, which the Euler oracle needs.
pub fn lambda_at_norm(psi: &HeckeCharacter, n: u64) -> C64 {
    assert!(n >= 1);
    let ctx = &psi.ctx;
    let d = ctx.d as i128;
    let omega = ctx.omega_k as f64;
    let mut total = C64::new(0.0, 0.0);
    for (lat, phase) in &psi.class_phases {
        let target = 4 * n as i128 * lat.ell as i128;
        let mut class_sum = C64::new(0.0, 0.0);
        let nb_max = quadfield::int_sqrt_leq((target / d) as f64);
        for nb in 0..=nb_max {
            let rem = target - d * nb as i128 * nb as i128;
            let na = quadfield::int_sqrt_leq(rem as f64);
            if na as i128 * na as i128 != rem {
                continue;
            }
            if (na - nb) % 2 != 0 || (ctx.ring_type == RingType::Rt23 && na % 2 != 0) {
                continue;
            }
            let na_signs: &[i64] = if na == 0 { &[1] } else { &[1, -1] };
            let nb_signs: &[i64] = if nb == 0 { &[1] } else { &[1, -1] };
            for &sa in na_signs {
                for &sb in nb_signs {
                    let x = RingElement::new_half(sa * na, sb * nb);
                    if quadfield::lattice_contains(lat, &x) {
                        class_sum += eval_hecke_or_zero(psi, &x);
                    }
                }
            }
        }
        total += class_sum / (omega * phase);
    }
    total
}

/// Local factor data at a prime: `(a, b)` with L-factor
/// `(1 - a x + b x^2)^{-1}`, `x = l^{-s}`.
fn local_factor_coeffs(psi: &HeckeCharacter, ell: u64) -> (C64, C64) {
    let a = lambda_at_norm(psi, ell);
    let a2 = lambda_at_norm(psi, ell * ell);
    (a, a * a - a2)
}

const EULER_ABSCISSA_MIN: f64 = 1.5;

/// Euler-product oracle over primes up to `prime_bound`. Independent of
/// the series route: local data comes from norm-exact coefficient
/// evaluation, composition from the degree-2 factors.
pub fn euler_product(psi: &HeckeCharacter, s: C64, prime_bound: u64) -> C64 {
    assert!(
        s.re >= EULER_ABSCISSA_MIN,
        "product abscissa {} below {}",
        s.re,
        EULER_ABSCISSA_MIN
    );
    let mut product = C64::new(1.0, 0.0);
    for ell in arith::primes_up_to(prime_bound) {
        let (a, b) = local_factor_coeffs(psi, ell);
        let x = n_pow_neg_s(ell as usize, s);
        product *= (C64::new(1.0, 0.0) - a * x + b * x * x).inv();
    }
    product
}

/// Regenerate `lambda(1..=n_max)` from the local factors alone: prime
/// powers by the degree-2 recursion `u_k = a u_{k-1} - b u_{k-2}`,
/// composites by multiplicativity.
pub fn lambda_from_euler(psi: &HeckeCharacter, n_max: usize) -> Vec<C64> {
    let mut values = vec![C64::new(1.0, 0.0); n_max + 1];
    values[0] = C64::new(0.0, 0.0);
    if n_max == 0 {
        return values;
    }
    let mut smallest_factor = vec![0usize; n_max + 1];
    for ell in arith::primes_up_to(n_max as u64) {
        let ell = ell as usize;
        let mut k = ell;
        while k <= n_max {
            if smallest_factor[k] == 0 {
                smallest_factor[k] = ell;
            }
            k += ell;
        }
        let (a, b) = local_factor_coeffs(psi, ell as u64);
        let mut u_prev = C64::new(1.0, 0.0);
        let mut u = a;
        let mut pk = ell;
        loop {
            values[pk] = u;
            match pk.checked_mul(ell) {
                Some(v) if v <= n_max => pk = v,
                _ => break,
            }
            let next = a * u - b * u_prev;
            u_prev = u;
            u = next;
        }
    }
    // composites: peel the full power of the smallest prime factor
    for n in 2..=n_max {
        let ell = smallest_factor[n];
        let mut pk = 1usize;
        let mut rest = n;
        while rest % ell == 0 {
            pk *= ell;
            rest /= ell;
        }
        if rest > 1 {
            values[n] = values[pk] * values[rest];
        }
    }
    values
}

/// The smoothed, unitarily twisted window sum `S(N)`.
pub fn smoothed_window(
    psi: &HeckeCharacter,
    t: f64,
    n_scale: f64,
    window: SmoothBump,
) -> SmoothedWindow {
    assert!(n_scale > 0.0 && n_scale <= 1e6, "desk-scale N only");
    let (_, hi) = window.support();
    let n_max = (hi * n_scale).ceil() as usize;
    let value = if n_max == 0 {
        C64::new(0.0, 0.0)
    } else {
        let series = lambda_coefficients(psi, n_max);
        window_sum(&series.values, t, n_scale, &window)
    };
    SmoothedWindow {
        psi: psi.clone(),
        t,
        n_scale,
        window,
        value,
    }
}

fn window_sum(values: &[C64], t: f64, n_scale: f64, window: &SmoothBump) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for (n, lam) in values.iter().enumerate().skip(1) {
        let v = window.eval(n as f64 / n_scale);
        if v == 0.0 || lam.norm_sqr() == 0.0 {
            continue;
        }
        total += lam * C64::from_polar(v, -t * (n as f64).ln());
    }
    total
}

/// Cutoff policy for the growth scan: window scales run over dyadic `N`
/// downward from `(t p)^{cutoff_exponent}`.
#[derive(Debug, Clone, Copy)]
pub struct ScanPolicy {
    pub cutoff_exponent: f64,
    pub min_n: f64,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        ScanPolicy {
            cutoff_exponent: 1.05,
            min_n: 8.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub t: f64,
    /// Window scale at which the ratio peaked (0 when no scale fit).
    pub n_at_sup: f64,
    /// `sup_N |S(N)| / sqrt(N)` over the dyadic scales.
    pub sup_ratio: f64,
}

/// Least-squares exponent of `sup_ratio ~ t^exponent`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentFit {
    pub exponent: f64,
    pub intercept: f64,
    /// 95% half-width from the ordinary regression standard error.
    pub ci_half_width: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthScan {
    pub rows: Vec<ScanRow>,
    pub fit: Option<ExponentFit>,
    /// Caveat carried into every report.
    pub note: &'static str,
}

pub const SCAN_NOTE: &str = "exploratory: cutoff X = (t*p)^1.05 is a pragmatic stand-in \
and the exponent fit is diagnostic, not a gate";

fn fit_exponent(rows: &[ScanRow]) -> Option<ExponentFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.t > 0.0 && r.sup_ratio > 0.0)
        .map(|r| (r.t.ln(), r.sup_ratio.ln()))
        .collect();
    let m = pts.len();
    if m < 3 {
        return None;
    }
    let mf = m as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / mf;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / mf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_resid: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let se = (ss_resid / (mf - 2.0) / sxx).sqrt();
    Some(ExponentFit {
        exponent: slope,
        intercept,
        ci_half_width: 1.96 * se,
    })
}

fn scan_with_coeffs(
    values: &[C64],
    p: u64,
    window: SmoothBump,
    t_grid: &[f64],
    policy: ScanPolicy,
) -> GrowthScan {
    let (_, hi) = window.support();
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let x_cut = (t * p as f64).powf(policy.cutoff_exponent);
        let mut n_scale = x_cut;
        let mut best = ScanRow {
            t,
            n_at_sup: 0.0,
            sup_ratio: 0.0,
        };
        while n_scale >= policy.min_n {
            assert!(
                (hi * n_scale).ceil() as usize <= values.len() - 1,
                "coefficient table too short for the cutoff"
            );
            let s = window_sum(values, t, n_scale, &window);
            let ratio = s.norm() / n_scale.sqrt();
            if ratio > best.sup_ratio {
                best = ScanRow {
                    t,
                    n_at_sup: n_scale,
                    sup_ratio: ratio,
                };
            }
            n_scale /= 2.0;
        }
        rows.push(best);
    }
    let fit = fit_exponent(&rows);
    GrowthScan {
        rows,
        fit,
        note: SCAN_NOTE,
    }
}

/// Sup of `|S(N)|/sqrt(N)` over dyadic window scales for each `t`, with a
/// diagnostic exponent fit. Uses the standard window on `[1, 2]`.
pub fn growth_scan(psi: &HeckeCharacter, t_grid: &[f64], policy: ScanPolicy) -> GrowthScan {
    let window = SmoothBump::standard();
    if t_grid.is_empty() {
        return GrowthScan {
            rows: Vec::new(),
            fit: None,
            note: SCAN_NOTE,
        };
    }
    let p = psi.ps.p;
    let x_max = t_grid
        .iter()
        .fold(0.0f64, |m, &t| m.max((t * p as f64).powf(policy.cutoff_exponent)));
    let (_, hi) = window.support();
    let n_max = ((hi * x_max).ceil() as usize).max(1);
    assert!(n_max <= 2_000_000, "scan cutoff beyond desk scale");
    let series = lambda_coefficients(psi, n_max);
    scan_with_coeffs(&series.values, p, window, t_grid, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{make_dirichlet, make_hecke};
    use crate::oscillatory::BumpKind;
    use crate::quad::{self, QuadOpts};
    use crate::quadfield::{classify_prime, make_field, SplitKind};
    use crate::tol;
    use std::f64::consts::PI;

    fn gaussian_psi() -> HeckeCharacter {
        let ctx = make_field(1).unwrap();
        let ps = classify_prime(&ctx, 13).unwrap();
        let chi = make_dirichlet(13, 6).unwrap();
        make_hecke(&ctx, &ps, &chi, 2).unwrap()
    }

    fn d5_psi() -> HeckeCharacter {
        let ctx = make_field(5).unwrap();
        let ps = classify_prime(&ctx, 3).unwrap();
        let chi = make_dirichlet(3, 1).unwrap();
        make_hecke(&ctx, &ps, &chi, 1).unwrap()
    }

    #[test]
    fn abscissa_gate_enforced() {
        let psi = gaussian_psi();
        match dirichlet_series(&psi, C64::new(1.1, 4.0), 10) {
            Err(LfuncError::AbscissaTooSmall { sigma, .. }) => assert_eq!(sigma, 1.1),
            other => panic!("expected abscissa error, got {other:?}"),
        }
        assert!(dirichlet_series(&psi, C64::new(1.2, 0.0), 10).is_ok());
    }

    #[test]
    fn series_value_within_divisor_majorant() {
        let psi = gaussian_psi();
        let eval = dirichlet_series(&psi, C64::new(2.0, 0.0), 5000).unwrap();
        let zeta2 = zeta_real(2.0);
        assert!(
            eval.value.norm() <= zeta2 * zeta2,
            "|L(2)| = {} vs {}",
            eval.value.norm(),
            zeta2 * zeta2
        );
        assert!(eval.tail_bound < 1e-2);
    }

    #[test]
    fn lambda_at_norm_matches_table() {
        for psi in [gaussian_psi(), d5_psi()] {
            let series = lambda_coefficients(&psi, 300);
            for n in 1..=300usize {
                let direct = lambda_at_norm(&psi, n as u64);
                assert!(
                    (direct - series.lambda(n)).norm() < 1e-12,
                    "p={} n={n}: {direct} vs {}",
                    psi.ps.p,
                    series.lambda(n)
                );
            }
        }
    }

    #[test]
    fn series_matches_euler_product() {
        for psi in [gaussian_psi(), d5_psi()] {
            for s in [C64::new(2.0, 0.0), C64::new(2.0, 5.0), C64::new(3.0, -2.0)] {
                let terms = if s.re >= 3.0 { 20_000 } else { 200_000 };
                let eval = dirichlet_series(&psi, s, terms).unwrap();
                let product = euler_product(&psi, s, 20_000);
                // allowance: series tail majorant plus the product tail
                // (omitted factors differ from 1 by about d(l) l^-sigma)
                let product_tail =
                    3.0 * (20_000f64).powf(1.0 - s.re) / (s.re - 1.0) * eval.value.norm();
                let allow = (eval.tail_bound + product_tail)
                    .max(tol::SERIES_VS_EULER_REL * eval.value.norm());
                let diff = (eval.value - product).norm();
                assert!(
                    diff <= allow,
                    "p={} s={s}: {} vs {} (diff {diff:.2e}, allow {allow:.2e})",
                    psi.ps.p,
                    eval.value,
                    product
                );
            }
        }
    }

    #[test]
    fn euler_product_self_consistent_in_bound() {
        // measured truncation steps for this fixture: 1e3 -> 1e4 moves the
        // value by 2.9e-6, 1e4 -> 3e4 lands under 1e-6
        let psi = gaussian_psi();
        let s = C64::new(2.0, 0.0);
        let coarse = euler_product(&psi, s, 1_000);
        let mid = euler_product(&psi, s, 10_000);
        let fine = euler_product(&psi, s, 30_000);
        assert!(
            (coarse - mid).norm() <= 1e-5,
            "diff {:.2e}",
            (coarse - mid).norm()
        );
        assert!(
            (mid - fine).norm() <= tol::SERIES_VS_EULER_REL,
            "{mid} vs {fine}: diff {:.2e}",
            (mid - fine).norm()
        );
    }

    #[test]
    fn euler_empty_product_is_one() {
        let psi = gaussian_psi();
        assert_eq!(
            euler_product(&psi, C64::new(2.0, 0.0), 1),
            C64::new(1.0, 0.0)
        );
    }

    #[test]
    fn inert_factors_match_inert_restricted_series() {
        // product over inert primes below a small bound vs the series over
        // integers all of whose prime factors are those inert primes
        let psi = gaussian_psi();
        let s = C64::new(2.0, 0.0);
        let bound = 30u64;
        let mut product = C64::new(1.0, 0.0);
        let mut inert: Vec<u64> = Vec::new();
        for ell in arith::primes_up_to(bound) {
            if ell == 2 || ell == psi.ps.p {
                continue;
            }
            if classify_prime(&psi.ctx, ell).unwrap().kind == SplitKind::Inert {
                inert.push(ell);
                let (a, b) = local_factor_coeffs(&psi, ell);
                assert!(a.norm() < 1e-12, "inert prime {ell} has lambda {a}");
                let x = n_pow_neg_s(ell as usize, s);
                product *= (C64::new(1.0, 0.0) - a * x + b * x * x).inv();
            }
        }
        assert!(inert.len() >= 3);
        let n_max = 40_000usize;
        let series = lambda_coefficients(&psi, n_max);
        let mut restricted = C64::new(0.0, 0.0);
        for n in 1..=n_max {
            let mut rest = n as u64;
            for &ell in &inert {
                while rest % ell == 0 {
                    rest /= ell;
                }
            }
            if rest == 1 {
                restricted += series.lambda(n) * n_pow_neg_s(n, s);
            }
        }
        assert!(
            (product - restricted).norm() < 1e-6,
            "{product} vs {restricted}"
        );
    }

    #[test]
    fn lambda_regenerates_from_local_factors() {
        for psi in [gaussian_psi(), d5_psi()] {
            let table = lambda_coefficients(&psi, 500);
            let regen = lambda_from_euler(&psi, 500);
            for n in 1..=500usize {
                assert!(
                    (table.lambda(n) - regen[n]).norm() < tol::LAMBDA_REGEN,
                    "p={} n={n}: {} vs {}",
                    psi.ps.p,
                    table.lambda(n),
                    regen[n]
                );
            }
        }
    }

    #[test]
    fn window_definition_unrolled() {
        let psi = gaussian_psi();
        let w = smoothed_window(&psi, 0.0, 10.0, SmoothBump::standard());
        let series = lambda_coefficients(&psi, 20);
        let mut manual = C64::new(0.0, 0.0);
        for n in 10..=20usize {
            manual += series.lambda(n) * SmoothBump::standard().eval(n as f64 / 10.0);
        }
        assert!((w.value - manual).norm() < 1e-14);
    }

    #[test]
    fn window_bounded_by_divisor_sum() {
        let psi = gaussian_psi();
        let n_scale = 80.0;
        let w = smoothed_window(&psi, 3.0, n_scale, SmoothBump::standard());
        let mut bound = 0.0;
        for n in 1..=(2.0 * n_scale).ceil() as u64 {
            let mut divisors = 0.0;
            for d in 1..=n {
                if n % d == 0 {
                    divisors += 1.0;
                }
            }
            bound += divisors * SmoothBump::standard().eval(n as f64 / n_scale);
        }
        assert!(w.value.norm() <= bound);
    }

    #[test]
    fn window_golden_value() {
        // frozen from the direct lattice-backed sum at t=2, N=50
        let psi = gaussian_psi();
        let w = smoothed_window(&psi, 2.0, 50.0, SmoothBump::standard());
        let pinned = C64::new(-2.70199696046217630e-1, 9.67133308096575273e-1);
        assert!((w.value - pinned).norm() < 1e-12, "{}", w.value);
    }

    #[test]
    fn window_is_linear_in_the_bump() {
        let psi = gaussian_psi();
        let n_scale = 60.0;
        let t = 1.5;
        let v1 = SmoothBump::standard();
        let v2 = SmoothBump::new(BumpKind::StandardExpBump, 1.5, 3.0).unwrap();
        let w1 = smoothed_window(&psi, t, n_scale, v1);
        let w2 = smoothed_window(&psi, t, n_scale, v2);
        let series = lambda_coefficients(&psi, (3.0 * n_scale).ceil() as usize);
        let mut combined = C64::new(0.0, 0.0);
        for (n, lam) in series.values.iter().enumerate().skip(1) {
            let v = v1.eval(n as f64 / n_scale) + v2.eval(n as f64 / n_scale);
            if v != 0.0 {
                combined += lam * C64::from_polar(v, -t * (n as f64).ln());
            }
        }
        assert!(
            (w1.value + w2.value - combined).norm() < tol::WINDOW_LINEARITY,
            "{} + {} vs {combined}",
            w1.value,
            w2.value
        );
    }

    #[test]
    fn scan_empty_grid_is_empty() {
        let psi = gaussian_psi();
        let scan = growth_scan(&psi, &[], ScanPolicy::default());
        assert!(scan.rows.is_empty() && scan.fit.is_none());
    }

    #[test]
    fn scan_exponent_stable_under_grid_refinement() {
        let psi = gaussian_psi();
        let coarse: Vec<f64> = (0..8).map(|k| 4.0 * 1.35f64.powi(k)).collect();
        let fine: Vec<f64> = (0..16)
            .map(|k| 4.0 * 1.35f64.powf(k as f64 / 2.0))
            .collect();
        let a = growth_scan(&psi, &coarse, ScanPolicy::default())
            .fit
            .expect("fit");
        let b = growth_scan(&psi, &fine, ScanPolicy::default())
            .fit
            .expect("fit");
        assert!(
            (a.exponent - b.exponent).abs() <= 0.05,
            "{} vs {}",
            a.exponent,
            b.exponent
        );
    }

    #[test]
    fn scan_trivial_weight_reproduces_divisor_growth() {
        // control: coefficients replaced by the plain ideal counts. In the
        // slow-twist regime the window sum is dominated by the density main
        // term rho * Mellin(V)(1 - it) * N, so sup |S|/sqrt(N) should track
        // rho * |Vhat(1-it)| * sqrt(X(t)), exponent about 0.525. Both the
        // measured rows and the fitted slope are checked against that
        // prediction, derived only from the lattice-point density.
        let ctx = make_field(1).unwrap();
        let p_scale = 2003u64;
        let policy = ScanPolicy::default();
        let t_grid: Vec<f64> = (0..10)
            .map(|k| 0.2 * 5.0f64.powf(k as f64 / 9.0))
            .collect();
        let x_max = (t_grid.last().unwrap() * p_scale as f64).powf(policy.cutoff_exponent);
        let n_max = (2.0 * x_max).ceil() as usize;
        let omega = ctx.omega_k as f64;
        let mut counts = vec![C64::new(0.0, 0.0); n_max + 1];
        quadfield::for_each_lattice_point(&ctx, None, n_max as f64, |x| {
            if !x.is_zero() {
                let n = quadfield::norm(&ctx, &x) as usize;
                if n <= n_max {
                    counts[n] += C64::new(1.0 / omega, 0.0);
                }
            }
        });
        let window = SmoothBump::standard();
        let scan = scan_with_coeffs(&counts, p_scale, window, &t_grid, policy);
        let fit = scan.fit.expect("fit");

        // ideals of norm <= x number rho x, rho = 2 pi h / (omega sqrt|disc|)
        let rho = 2.0 * PI / (omega * 2.0);
        let mut predicted = Vec::with_capacity(t_grid.len());
        for (row, &t) in scan.rows.iter().zip(&t_grid) {
            let mellin = quad::integrate(
                |v| C64::from_polar(window.eval(v), -t * v.ln()),
                1.0,
                2.0,
                QuadOpts::default(),
            )
            .unwrap()
            .value;
            let x_cut = (t * p_scale as f64).powf(policy.cutoff_exponent);
            let pred = rho * mellin.norm() * x_cut.sqrt();
            assert!(
                (row.sup_ratio - pred).abs() <= 0.3 * pred,
                "t={t}: measured {} vs predicted {pred}",
                row.sup_ratio
            );
            predicted.push(ScanRow {
                t,
                n_at_sup: x_cut,
                sup_ratio: pred,
            });
        }
        let pred_fit = fit_exponent(&predicted).expect("fit");
        assert!(
            (pred_fit.exponent - 0.525).abs() <= 0.05,
            "prediction drifted: {}",
            pred_fit.exponent
        );
        assert!(
            (fit.exponent - pred_fit.exponent).abs() <= (2.0 * fit.ci_half_width).max(0.05),
            "measured {} +- {} vs predicted {}",
            fit.exponent,
            fit.ci_half_width,
            pred_fit.exponent
        );
    }
}
