//! Bessel function of the first kind, integer order 0..=50, x >= 0.
//!
//! Three evaluation routes:
//!
//! * ascending power series, accumulated in double-double because the
//!   alternating terms can tower many orders of magnitude over the result;
//! * Hankel large-argument asymptotic with optimal truncation and a
//!   self-reported error estimate;
//! * Miller's backward recurrence, which is uniformly accurate and picks up
//!   the band where neither expansion can certify the target accuracy
//!   (moderate x at large order).
//!
//! The dispatcher prefers series up to `max(12, 2 nu)` and the asymptotic
//! beyond, exactly in that order, falling back to Miller only when a route's
//! own error estimate cannot certify ~1e-12 relative accuracy.

use crate::dd::Dd;

/// Double-double unit roundoff with slack for a few operations per term.
const DD_EPS: f64 = 1e-31;

/// J_nu(x) for integer order `nu <= 50` and `x >= 0`.
///
/// Relative accuracy is ~1e-12 away from zeros of J_nu (argument reduction in
/// the phase is the limit for very large x).
pub fn bessel_j(nu: u32, x: f64) -> f64 {
    assert!(nu <= 50, "order capped at 50, got {nu}");
    assert!(x >= 0.0 && x.is_finite(), "argument must be finite and nonnegative");
    let switch = (12.0f64).max(2.0 * nu as f64);
    if x <= switch {
        let (val, err) = series(nu, x);
        if err <= 1e-13 * val.abs() + 1e-305 {
            val
        } else {
            miller(nu, x)
        }
    } else {
        let (val, err) = asymptotic(nu, x);
        // Certify against the envelope sqrt(2/(pi x)), not the value, so a
        // near-zero of J does not force a spurious rejection.
        let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
        if err <= 1e-12 * amp {
            val
        } else {
            miller(nu, x)
        }
    }
}

/// Ascending series with its absolute error estimate (roundoff on the
/// largest intermediate term). Exposed for the crossover validation tests.
pub fn series(nu: u32, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (if nu == 0 { 1.0 } else { 0.0 }, 0.0);
    }
    let half = 0.5 * x;
    // t_0 = (x/2)^nu / nu!, built factor by factor to stay in range.
    let mut term = Dd::from(1.0);
    for i in 1..=nu {
        term = term.mul(Dd::from(half)).div_f64(i as f64);
    }
    let neg_quarter_sq = Dd::prod(half, half).neg(); // exact two-product
    let mut sum = term;
    let mut max_abs = term.abs();
    let mut terms = 1.0f64;
    for k in 1..=500u32 {
        term = term
            .mul(neg_quarter_sq)
            .div_f64(k as f64)
            .div_f64((nu + k) as f64);
        sum = sum.add(term);
        terms += 1.0;
        let ta = term.abs();
        if ta > max_abs {
            max_abs = ta;
        }
        if ta < 1e-40 * max_abs.max(1e-300) && (k as f64) > half {
            break;
        }
    }
    (sum.to_f64(), max_abs * DD_EPS * terms)
}

/// Hankel asymptotic truncated at the globally smallest term; returns the
/// value and an absolute error estimate (the omitted term scaled by the
/// envelope). Terms may grow before they shrink when x is near 2 nu, so the
/// whole term sequence is walked and the best truncation point kept.
/// Exposed for the crossover tests.
pub fn asymptotic(nu: u32, x: f64) -> (f64, f64) {
    let fourn2 = 4.0 * (nu as f64) * (nu as f64);
    // u_k = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (8 j x); split exact divisors.
    let mut u = Dd::from(1.0);
    let mut p_sum = Dd::from(1.0); // k = 0 lands in P with sign +
    let mut q_sum = Dd::ZERO;
    let mut best = (p_sum, q_sum, f64::INFINITY); // truncation snapshot
    let mut peak = 1.0f64;
    for k in 1..=200u32 {
        let j = k as f64;
        let numer = fourn2 - (2.0 * j - 1.0) * (2.0 * j - 1.0);
        u = u.mul(Dd::from(numer)).div_f64(8.0 * j).div_f64(x);
        let ua = u.abs();
        // Truncating before u_k leaves the current sums with error ~|u_k|.
        if ua < best.2 {
            best = (p_sum, q_sum, ua);
        }
        if ua > peak {
            peak = ua;
        }
        let signed = match k % 4 {
            0 | 1 => u,       // +u_k into P (k=0 mod 4) or Q (k=1 mod 4)
            2 | 3 => u.neg(), // -u_k
            _ => unreachable!(),
        };
        if k % 2 == 0 {
            p_sum = p_sum.add(signed);
        } else {
            q_sum = q_sum.add(signed);
        }
        if ua < 1e-20 {
            // Converged outright; the tail below this is negligible.
            best = (p_sum, q_sum, ua);
            break;
        }
        if ua > 1e8 * best.2 {
            break; // far past the optimal point, nothing better coming
        }
    }
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let omega = x - (nu as f64) * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let value = amp * (omega.cos() * best.0.to_f64() - omega.sin() * best.1.to_f64());
    (value, amp * (best.2 + peak * DD_EPS))
}

/// Miller's backward recurrence with the even-order normalization
/// 1 = J_0 + 2 sum_k J_{2k}. Uniformly ~1e-13 relative at this scale.
pub fn miller(nu: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    let base = (nu as f64).max(x.ceil()) as u32 + 1;
    let mut start = base + 1 + (160.0 * (base as f64 + 1.0)).sqrt().ceil() as u32;
    if start % 2 == 1 {
        start += 1; // even start keeps the normalization bookkeeping simple
    }
    let mut jp = 0.0f64; // J_{m+1} (unnormalized)
    let mut j = 1e-30f64; // J_m
    let mut norm = 0.0f64; // J_0 + 2 sum J_{2k}, accumulated on even m
    let mut target = 0.0f64;
    let mut m = start;
    loop {
        let jm = (2.0 * (m as f64) / x) * j - jp; // J_{m-1}
        jp = j;
        j = jm;
        m -= 1;
        if m % 2 == 0 {
            norm += if m == 0 { j } else { 2.0 * j };
        }
        if m == nu {
            target = j;
        }
        if m == 0 {
            break;
        }
        if j.abs() > 1e250 {
            jp *= 1e-250;
            j *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    target / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_small_arguments() {
        // J_0(0) = 1; J_1 ~ x/2 for tiny x.
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
        let x = 1e-4;
        assert!((bessel_j(1, x) - x / 2.0).abs() < 1e-12);
    }

    #[test]
    fn known_values() {
        // Reference values (15+ digits, standard tables).
        let cases = [
            (0u32, 1.0, 0.765_197_686_557_966_6),
            (0, 5.0, -0.177_596_771_314_338_3),
            (1, 2.0, 0.576_724_807_756_873_4),
            (2, 5.0, 0.046_565_116_277_752_2),
            (5, 10.0, -0.234_061_528_186_794_2),
            (0, 100.0, 0.019_985_850_304_223_12),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(0.01),
                "J_{nu}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn miller_agrees_with_series_where_series_is_safe() {
        for nu in 0..=20u32 {
            for &x in &[0.5, 1.0, 3.0, 8.0, 14.5] {
                let (s, err) = series(nu, x);
                if err < 1e-14 * s.abs() {
                    let m = miller(nu, x);
                    assert!(
                        (s - m).abs() <= 1e-12 * s.abs().max(1e-15),
                        "nu={nu} x={x}: series {s} vs miller {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn hard_corner_large_order_moderate_argument() {
        // nu = 50, x = 100 sits where the raw series and the raw asymptotic
        // both fail; the dispatcher must still produce a good value.
        // Reference: J_50(100) = -0.038698339728522440... (mpmath, 25 digits)
        let got = bessel_j(50, 100.0);
        let want = -0.038_698_339_728_522_44;
        assert!((got - want).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn recurrence_identity_three_term() {
        // 2 nu J_nu(x) / x = J_{nu-1}(x) + J_{nu+1}(x)
        for &x in &[2.5, 9.0, 31.0, 140.0] {
            for nu in 1..=49u32 {
                let lhs = 2.0 * nu as f64 / x * bessel_j(nu, x);
                let rhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
                assert!(
                    (lhs - rhs).abs() < 1e-11,
                    "nu={nu} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }
}
