//! Quadratic Gauss sums `g(a,b,c)` in closed form, and the six-branch
//! closed form of the arithmetic part `A(mp,(c,f);q)` that appears in the
//! dual side of the Voronoi summation, each paired with brute-force
//! oracles.
//!
//! The arithmetic part is
//! `A = (1/l) sum_{xi mod l} (1/(qpl)^2) sum_{beta,gamma mod qpl}
//!  chi(beta + gamma d) e((beta + gamma d_l) xi / l)
//!  e(m (beta^2 + gamma^2 D) / (q l)) e((c beta + f gamma)/(qpl))`,
//! supported on pairs with `l | (c d_l - f)`, `g | f` (g = gcd(q, D)) and
//! a mod-p congruence that depends on whether p divides q.

use crate::arith;
use crate::characters::{gauss_sum_tau, DirichletCharacter};
use crate::quadfield::{FieldContext, IdealLatticeBasis, PrimeSplitData, SplitKind};
use crate::{e_frac, C64};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GaussError {
    #[error("epsilon factor needs an odd argument, got {0}")]
    EvenInput(i64),
    #[error("closed form needs gcd(a, c) = 1, got a={a}, c={c}")]
    NotCoprime { a: i64, c: u64 },
    #[error("brute-force scale {size} exceeds the cap {cap}")]
    OracleTooLarge { size: u64, cap: u64 },
    #[error("closed form undefined here: {0}")]
    InvalidCase(&'static str),
}

/// `eps_a = 1` when `a = 1 (mod 4)`, `i` when `a = 3 (mod 4)`.
pub fn epsilon_factor(a: i64) -> Result<C64, GaussError> {
    match a.rem_euclid(4) {
        1 => Ok(C64::new(1.0, 0.0)),
        3 => Ok(C64::new(0.0, 1.0)),
        _ => Err(GaussError::EvenInput(a)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussSumParams {
    pub a: i64,
    pub b: i64,
    pub c: u64,
}

/// Direct evaluation of `g(a,b,c) = sum_{beta mod c} e((a beta^2 + b beta)/c)`.
pub fn quadratic_gauss_brute(params: &GaussSumParams) -> C64 {
    let c = params.c;
    assert!(c >= 1 && c <= 1_000_000, "oracle scale is c <= 10^6");
    let ci = c as i128;
    let am = (params.a as i128).rem_euclid(ci);
    let bm = (params.b as i128).rem_euclid(ci);
    let mut s = C64::new(0.0, 0.0);
    for beta in 0..ci {
        let num = (am * beta % ci * beta + bm * beta) % ci;
        s += e_frac(num as i64, c as i64);
    }
    s
}

/// The three-branch closed form: odd modulus, `c = 2 (mod 4)` (vanishing
/// unless b is odd), and `4 | c` (vanishing unless b is even).
pub fn quadratic_gauss_closed(params: &GaussSumParams) -> Result<C64, GaussError> {
    let GaussSumParams { a, b, c } = *params;
    assert!(c >= 1);
    if arith::gcd(a, c as i64).abs() != 1 {
        return Err(GaussError::NotCoprime { a, c });
    }
    let ci = c as i64;
    let val = if c % 2 == 1 {
        let inv4a = inv_mod(4 * a, ci).expect("c odd");
        let num = (-(inv4a as i128) * (b as i128 % ci as i128) * (b as i128 % ci as i128))
            .rem_euclid(ci as i128);
        e_frac(num as i64, ci)
            * arith::kronecker(a, ci) as f64
            * epsilon_factor(ci)?
            * (c as f64).sqrt()
    } else if c % 4 == 2 {
        if b % 2 == 0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let c1 = ci / 2;
        let inv8a = inv_mod(8 * a, c1).expect("c1 odd");
        let num = (-(inv8a as i128) * (b as i128 % c1 as i128) * (b as i128 % c1 as i128))
            .rem_euclid(c1 as i128);
        2.0 * e_frac(num as i64, c1)
            * arith::kronecker(2 * a, c1) as f64
            * epsilon_factor(c1)?
            * (c1 as f64).sqrt()
    } else {
        if b % 2 != 0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let b1 = b / 2;
        let inv_a = inv_mod(a, ci).expect("a odd, c a multiple of 4");
        let num = (-(inv_a as i128) * (b1 as i128 % ci as i128) * (b1 as i128 % ci as i128))
            .rem_euclid(ci as i128);
        e_frac(num as i64, ci)
            * arith::kronecker(ci, a) as f64
            * (C64::new(1.0, 1.0) / epsilon_factor(a)?)
            * (c as f64).sqrt()
    };
    Ok(val)
}

/// Inputs of the arithmetic part of the dual sum.
#[derive(Debug, Clone)]
pub struct ArithPartParams {
    pub ctx: FieldContext,
    /// Split conductor prime p with its root d.
    pub ps: PrimeSplitData,
    /// Primitive character mod p.
    pub chi: DirichletCharacter,
    /// Class-representative prime l with its root d_l.
    pub lat: IdealLatticeBasis,
    pub q: u64,
    pub m: u64,
    pub c: i64,
    pub f: i64,
}

impl ArithPartParams {
    pub fn new(
        ctx: &FieldContext,
        ps: &PrimeSplitData,
        chi: &DirichletCharacter,
        lat: &IdealLatticeBasis,
        q: u64,
        m: u64,
        c: i64,
        f: i64,
    ) -> Self {
        assert!(q >= 1 && m >= 1);
        assert_eq!(ps.kind, SplitKind::Split);
        assert_eq!(chi.p, ps.p, "character modulus must be the conductor");
        assert_eq!(arith::gcd(m as i64, q as i64), 1, "m must be coprime to q");
        assert!(lat.ell % 2 == 1 && lat.ell != ps.p && m % lat.ell != 0);
        assert_eq!(
            arith::gcd(q as i64, lat.ell as i64),
            1,
            "q must be coprime to l"
        );
        let d_ell = lat.signed_root();
        assert_eq!(
            (d_ell * d_ell + ctx.d as i64).rem_euclid(lat.ell as i64),
            0,
            "d_l must be a root of x^2 + D mod l"
        );
        ArithPartParams {
            ctx: ctx.clone(),
            ps: *ps,
            chi: chi.clone(),
            lat: *lat,
            q,
            m,
            c,
            f,
        }
    }

    pub fn g(&self) -> u64 {
        arith::gcd(self.q as i64, self.ctx.d as i64) as u64
    }

    pub fn d_q(&self) -> u64 {
        self.ctx.d / self.g()
    }

    pub fn q_d(&self) -> u64 {
        self.q / self.g()
    }

    /// qpl, the full modulus of the beta and gamma sums.
    pub fn qpl(&self) -> u64 {
        self.q * self.ps.p * self.lat.ell
    }

    pub fn conductor_root(&self) -> i64 {
        self.ps.d_p.expect("split") as i64
    }
}

pub const ARITH_BRUTE_CAP: u64 = 400;

/// Literal triple sum of the defining expression. The dominating cost is
/// `(qpl)^2 * l` table lookups.
pub fn arithmetic_part_brute(params: &ArithPartParams) -> Result<C64, GaussError> {
    arithmetic_part_brute_with_cap(params, ARITH_BRUTE_CAP)
}

pub fn arithmetic_part_brute_with_cap(
    params: &ArithPartParams,
    cap: u64,
) -> Result<C64, GaussError> {
    let qpl = params.qpl();
    if qpl > cap {
        return Err(GaussError::OracleTooLarge { size: qpl, cap });
    }
    let ell = params.lat.ell as i64;
    let p = params.ps.p as i64;
    let d = params.conductor_root();
    let d_ell = params.lat.signed_root();
    let q = params.q as i64;
    let n = qpl as i64;
    let ql = q * ell;

    // e(x / modulus) tables
    let table_n: Vec<C64> = (0..n).map(|x| e_frac(x, n)).collect();
    let table_ql: Vec<C64> = (0..ql).map(|x| e_frac(x, ql)).collect();
    let table_l: Vec<C64> = (0..ell).map(|x| e_frac(x, ell)).collect();
    let chi_table: Vec<C64> = (0..p).map(|x| params.chi.eval(x)).collect();

    let m = params.m as i64;
    let (c, f) = (params.c, params.f);
    let mut total = C64::new(0.0, 0.0);
    for beta in 0..n {
        let mb2 = (m as i128 * beta as i128 % ql as i128 * beta as i128).rem_euclid(ql as i128);
        let cb = (c as i128 * beta as i128).rem_euclid(n as i128) as i64;
        for gamma in 0..n {
            let chi_v = chi_table[((beta + gamma * d) % p) as usize];
            if chi_v.norm_sqr() == 0.0 {
                continue;
            }
            let quad = ((mb2
                + m as i128 * params.ctx.d as i128 * gamma as i128 % ql as i128
                    * gamma as i128)
                % ql as i128) as i64;
            let lin = ((cb as i128 + f as i128 * gamma as i128).rem_euclid(n as i128)) as i64;
            let base = chi_v * table_ql[quad as usize] * table_n[lin as usize];
            let res = (beta + gamma * d_ell).rem_euclid(ell);
            let mut xi_sum = C64::new(0.0, 0.0);
            for xi in 0..ell {
                xi_sum += table_l[((res * xi) % ell) as usize];
            }
            total += base * xi_sum;
        }
    }
    Ok(total / (ell as f64 * (n as f64) * (n as f64)))
}

/// The same quantity through the Gauss-formula expansion of chi: a b-sum
/// over the conductor of products of two one-dimensional quadratic sums.
/// Independent of the closed form's branch algebra and cheap enough
/// (O(p*l*qpl)) to reach moduli the literal oracle cannot.
pub fn arithmetic_part_b_expansion(params: &ArithPartParams) -> C64 {
    let ell = params.lat.ell as i64;
    let p = params.ps.p as i64;
    let d = params.conductor_root();
    let d_ell = params.lat.signed_root();
    let q = params.q as i64;
    let n = params.qpl() as i64;
    let chi_bar = params.chi.conj();
    let tau_bar = gauss_sum_tau(&chi_bar);
    let m = params.m as i64;

    // B(xi, b, A, c0; q) = (1/qpl) sum_beta e((A beta^2 + (c0 + qp xi + b q l) beta)/(qpl))
    let one_dim = |a_coef: i64, c0: i64, xi: i64, b: i64| -> C64 {
        let shift = c0 as i128 + (q * p) as i128 * xi as i128 + (b * q * ell) as i128;
        let am = (a_coef as i128).rem_euclid(n as i128);
        let sm = shift.rem_euclid(n as i128);
        let mut s = C64::new(0.0, 0.0);
        for beta in 0..n as i128 {
            let num = (am * beta % n as i128 * beta + sm * beta) % n as i128;
            s += e_frac(num as i64, n);
        }
        s / n as f64
    };

    let mut total = C64::new(0.0, 0.0);
    for b in 1..p {
        let w = chi_bar.eval(b);
        let mut xi_sum = C64::new(0.0, 0.0);
        for xi in 0..ell {
            let b1 = one_dim(m * p, params.c, xi, b);
            let b2 = one_dim(
                m * p * params.ctx.d as i64,
                params.f,
                (d_ell * xi).rem_euclid(ell),
                (b * d).rem_euclid(p),
            );
            xi_sum += b1 * b2;
        }
        total += w * xi_sum;
    }
    total / tau_bar / ell as f64
}

fn inv_mod(x: i64, modulus: i64) -> Option<i64> {
    if modulus == 1 {
        return Some(0);
    }
    arith::mod_inv(x.rem_euclid(modulus), modulus)
}

/// `e(-(inv(x) * k) / modulus)` with the inverse taken mod the printed
/// denominator of the exponential.
fn twist(x: i64, k: i128, modulus: i64) -> Result<C64, GaussError> {
    let inv = inv_mod(x, modulus).ok_or(GaussError::InvalidCase(
        "modular inverse in the exponential does not exist",
    ))?;
    let num = (-(inv as i128) * k.rem_euclid(modulus as i128)).rem_euclid(modulus as i128);
    Ok(e_frac(num as i64, modulus))
}

/// The six-branch closed form, dispatching on whether p divides q and on
/// q mod 4. Equals the brute oracle everywhere on its domain; the only
/// refusal is `q = 2 (mod 4)` with even `gcd(q, D)`, where the printed
/// closed form's inverse of 8 does not exist.
pub fn arithmetic_part_closed(params: &ArithPartParams) -> Result<C64, GaussError> {
    let ell = params.lat.ell as i64;
    let p = params.ps.p as i64;
    let d = params.conductor_root();
    let d_ell = params.lat.signed_root();
    let q = params.q as i64;
    let m = params.m as i64;
    let dd = params.ctx.d as i64;
    let g = params.g() as i64;
    let d_q = params.d_q() as i64;
    let q_d = params.q_d() as i64;
    let (c, f) = (params.c, params.f);
    let zero = C64::new(0.0, 0.0);

    // support shared by all branches
    if (c * d_ell - f).rem_euclid(ell) != 0 || f.rem_euclid(g) != 0 {
        return Ok(zero);
    }
    let k_val = c as i128 * c as i128 * dd as i128 + f as i128 * f as i128;

    let p_divides_q = q % p == 0;
    let chi_part = if p_divides_q {
        // p | q forces gcd(m, p) = 1; support needs p | c and p | f.
        if c.rem_euclid(p) != 0 || f.rem_euclid(p) != 0 {
            return Ok(zero);
        }
        let (cp, fp) = (c / p, f / p);
        params.chi.conj().eval(-2 * m * d) * params.chi.eval(cp * d - fp)
    } else {
        if (c * d - f).rem_euclid(p) != 0 {
            return Ok(zero);
        }
        let tau_bar = gauss_sum_tau(&params.chi.conj());
        params.chi.eval(-q * ell) * params.chi.conj().eval(c) / tau_bar
    };
    if chi_part.norm_sqr() == 0.0 {
        return Ok(zero);
    }

    // the p^2 that migrates between the inverse and the modulus
    let (inv_p2, mod_p2) = if p_divides_q { (1, p * p) } else { (p * p, 1) };

    let scale = (g as f64).sqrt() / (q as f64 * ell as f64);
    let tail = if q % 2 == 1 {
        (arith::kronecker(m, g) * arith::kronecker(d_q, q_d * ell)) as f64
            * epsilon_factor(q * ell)?
            * epsilon_factor(q_d * ell)?
            * twist(4 * m * inv_p2 * d_q, k_val, g * q * mod_p2 * ell)?
    } else if q % 4 == 2 {
        if c % 2 == 0 || f % 2 == 0 {
            return Ok(zero);
        }
        if g % 2 == 0 {
            return Err(GaussError::InvalidCase(
                "q = 2 mod 4 with even gcd(q, D): inverse of 8 undefined",
            ));
        }
        let q1 = q / 2;
        let q_1d = q1 / g;
        2.0 * (arith::kronecker(2 * m, g) * arith::kronecker(d_q, q_1d * ell)) as f64
            * epsilon_factor(q1 * ell)?
            * epsilon_factor(q_1d * ell)?
            * twist(8 * m * inv_p2 * d_q, k_val, g * q1 * mod_p2 * ell)?
    } else {
        if c % 2 != 0 || f % 2 != 0 {
            return Ok(zero);
        }
        (arith::kronecker(g, m) * arith::kronecker(q_d * ell, d_q)) as f64
            * (C64::new(0.0, 2.0) / (epsilon_factor(m)? * epsilon_factor(m * d_q)?))
            * twist(m * inv_p2 * d_q, k_val, 4 * g * q * mod_p2 * ell)?
    };
    Ok(chi_part * scale * tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{classify_prime, make_field};
    use crate::tol;
    use crate::{characters::make_dirichlet, quadfield::IdealLatticeBasis};
    use approx::assert_abs_diff_eq;

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_factor(5), Ok(C64::new(1.0, 0.0)));
        assert_eq!(epsilon_factor(3), Ok(C64::new(0.0, 1.0)));
        assert_eq!(epsilon_factor(-1), Ok(C64::new(0.0, 1.0)));
        assert_eq!(epsilon_factor(4), Err(GaussError::EvenInput(4)));
    }

    #[test]
    fn gauss_brute_small_values() {
        let g = quadratic_gauss_brute(&GaussSumParams { a: 1, b: 0, c: 3 });
        assert_abs_diff_eq!((g - C64::new(0.0, 3f64.sqrt())).norm(), 0.0, epsilon = 1e-12);
        let g = quadratic_gauss_brute(&GaussSumParams { a: 1, b: 0, c: 6 });
        assert_abs_diff_eq!(g.norm(), 0.0, epsilon = 1e-12);
        let g = quadratic_gauss_brute(&GaussSumParams { a: 1, b: 1, c: 4 });
        assert_abs_diff_eq!(g.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gauss_closed_examples() {
        let g = quadratic_gauss_closed(&GaussSumParams { a: 2, b: 0, c: 5 }).unwrap();
        assert_abs_diff_eq!((g - C64::new(-(5f64.sqrt()), 0.0)).norm(), 0.0, epsilon = 1e-12);
        let g = quadratic_gauss_closed(&GaussSumParams { a: 1, b: 0, c: 6 }).unwrap();
        assert_abs_diff_eq!(g.norm(), 0.0, epsilon = 1e-12);
        let g = quadratic_gauss_closed(&GaussSumParams { a: 1, b: 2, c: 8 }).unwrap();
        assert_abs_diff_eq!((g - C64::new(4.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_eq!(
            quadratic_gauss_closed(&GaussSumParams { a: 2, b: 1, c: 6 }),
            Err(GaussError::NotCoprime { a: 2, c: 6 })
        );
    }

    #[test]
    fn gauss_closed_matches_brute_everywhere() {
        for c in 1..=60u64 {
            for a in 1..=(2 * c as i64 + 1) {
                if arith::gcd(a, c as i64) != 1 {
                    continue;
                }
                for b in 0..c as i64 {
                    let params = GaussSumParams { a, b, c };
                    let closed = quadratic_gauss_closed(&params).unwrap();
                    let brute = quadratic_gauss_brute(&params);
                    assert!(
                        (closed - brute).norm() < tol::GAUSS_CLOSED_VS_BRUTE,
                        "a={a} b={b} c={c}: {closed} vs {brute}"
                    );
                }
            }
        }
        // negative a as well
        for c in [3u64, 4, 5, 6, 8, 9, 12] {
            for a in [-1i64, -3, -5, -7] {
                if arith::gcd(a, c as i64).abs() != 1 {
                    continue;
                }
                for b in 0..c as i64 {
                    let params = GaussSumParams { a, b, c };
                    let closed = quadratic_gauss_closed(&params).unwrap();
                    let brute = quadratic_gauss_brute(&params);
                    assert!((closed - brute).norm() < tol::GAUSS_CLOSED_VS_BRUTE);
                }
            }
        }
    }

    #[test]
    fn gauss_modulus_on_odd_c() {
        for c in (1..200u64).step_by(2) {
            for a in 1..20 {
                if arith::gcd(a, c as i64) != 1 {
                    continue;
                }
                let g = quadratic_gauss_closed(&GaussSumParams { a, b: 0, c }).unwrap();
                assert!(
                    (g.norm() - (c as f64).sqrt()).abs() < tol::GAUSS_MODULUS,
                    "a={a} c={c}"
                );
            }
        }
    }

    #[test]
    fn even_modulus_factorization() {
        // reciprocity splitting for 2^k || c, k in {1,2,3}
        for (two_k, c_k) in [(2u64, 15u64), (4, 9), (8, 5), (2, 7), (4, 21), (8, 11)] {
            let c = two_k * c_k;
            for a in [1i64, 3, 5, 11] {
                if arith::gcd(a, c as i64) != 1 {
                    continue;
                }
                for b in 0..c as i64 {
                    let whole = quadratic_gauss_brute(&GaussSumParams { a, b, c });
                    let mut even_part = C64::new(0.0, 0.0);
                    for gamma in 0..two_k as i64 {
                        let num =
                            (a * c_k as i64 * gamma * gamma + b * gamma).rem_euclid(two_k as i64);
                        even_part += e_frac(num, two_k as i64);
                    }
                    let mut odd_part = C64::new(0.0, 0.0);
                    for beta in 0..c_k as i64 {
                        let num =
                            (two_k as i64 * a * beta * beta + b * beta).rem_euclid(c_k as i64);
                        odd_part += e_frac(num, c_k as i64);
                    }
                    assert!(
                        (whole - even_part * odd_part).norm() < 1e-9,
                        "a={a} b={b} c={c}"
                    );
                }
            }
        }
    }

    fn gaussian_params(q: u64, m: u64, c: i64, f: i64) -> ArithPartParams {
        let ctx = make_field(1).unwrap();
        let ps = classify_prime(&ctx, 13).unwrap();
        let chi = make_dirichlet(13, 6).unwrap();
        let lat = IdealLatticeBasis {
            ell: 5,
            d_ell: 2,
            conjugate: false,
        };
        ArithPartParams::new(&ctx, &ps, &chi, &lat, q, m, c, f)
    }

    fn d5_params(q: u64, m: u64, c: i64, f: i64) -> ArithPartParams {
        let ctx = make_field(5).unwrap();
        let ps = classify_prime(&ctx, 3).unwrap();
        let chi = make_dirichlet(3, 1).unwrap();
        let lat = IdealLatticeBasis {
            ell: 7,
            d_ell: 3,
            conjugate: false,
        };
        ArithPartParams::new(&ctx, &ps, &chi, &lat, q, m, c, f)
    }

    #[test]
    fn off_support_vanishes() {
        // l = 5 does not divide c*d_l - f = 2 - 1
        let params = gaussian_params(3, 1, 1, 1);
        let brute = arithmetic_part_brute(&params).unwrap();
        assert_abs_diff_eq!(brute.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            arithmetic_part_closed(&params).unwrap().norm(),
            0.0,
            epsilon = 1e-15
        );
        // g | f fails (D=5, q=5 gives g=5)
        let params = d5_params(5, 1, 7, 3);
        assert!(3 % 5 != 0);
        assert_abs_diff_eq!(
            arithmetic_part_brute(&params).unwrap().norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            arithmetic_part_closed(&params).unwrap().norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn oracle_cap_enforced() {
        let params = gaussian_params(13, 1, 0, 0);
        assert!(matches!(
            arithmetic_part_brute(&params),
            Err(GaussError::OracleTooLarge { size: 845, .. })
        ));
        assert!(arithmetic_part_brute_with_cap(&params, 1000).is_ok());
    }

    #[test]
    fn b_expansion_matches_literal_triple_sum() {
        // the Gauss-formula regrouping against the defining sum
        for (c, f) in [(1, -8), (0, 0), (2, 4), (-5, 10), (3, -7)] {
            let params = gaussian_params(3, 1, c, f);
            let brute = arithmetic_part_brute(&params).unwrap();
            let via_b = arithmetic_part_b_expansion(&params);
            assert!(
                (brute - via_b).norm() < 1e-10,
                "(c,f)=({c},{f}): {brute} vs {via_b}"
            );
        }
        for (c, f) in [(7, 14), (1, 3), (-7, 0), (6, -2)] {
            let params = d5_params(2, 1, c, f);
            let brute = arithmetic_part_brute(&params).unwrap();
            let via_b = arithmetic_part_b_expansion(&params);
            assert!((brute - via_b).norm() < 1e-10, "(c,f)=({c},{f})");
        }
    }

    #[test]
    fn closed_matches_brute_case1_small_grid() {
        // (p, q) = 1 across all three parity branches
        for q in [1u64, 3, 2, 6, 4, 8] {
            for cf in -10..=10i64 {
                for ff in -10..=10i64 {
                    let params = gaussian_params(q, 1, cf, ff);
                    let closed = arithmetic_part_closed(&params).unwrap();
                    let brute = arithmetic_part_brute_with_cap(&params, 600).unwrap();
                    assert!(
                        (closed - brute).norm() < tol::ARITH_CLOSED_VS_BRUTE,
                        "q={q} (c,f)=({cf},{ff}): closed {closed} vs brute {brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_matches_brute_case1_d5() {
        // D = 5 exercises nontrivial g = gcd(q, D)
        for q in [1u64, 5, 2, 10, 4, 20] {
            for cf in -8..=8i64 {
                for ff in -8..=8i64 {
                    let params = d5_params(q, 1, cf, ff);
                    let closed = arithmetic_part_closed(&params).unwrap();
                    let brute = arithmetic_part_brute_with_cap(&params, 450).unwrap();
                    assert!(
                        (closed - brute).norm() < tol::ARITH_CLOSED_VS_BRUTE,
                        "q={q} (c,f)=({cf},{ff}): closed {closed} vs brute {brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_matches_brute_p_divides_q() {
        // D=5, p=3: q multiples of 3 in all parity classes; qpl stays small
        for q in [3u64, 6, 12] {
            for cf in -9..=9i64 {
                for ff in -9..=9i64 {
                    let params = d5_params(q, 1, cf, ff);
                    let closed = arithmetic_part_closed(&params).unwrap();
                    let brute = arithmetic_part_brute_with_cap(&params, 450).unwrap();
                    assert!(
                        (closed - brute).norm() < tol::ARITH_CLOSED_VS_BRUTE,
                        "q={q} (c,f)=({cf},{ff}): closed {closed} vs brute {brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_matches_brute_p_divides_m() {
        for q in [1u64, 2, 4] {
            for cf in -6..=6i64 {
                for ff in -6..=6i64 {
                    let params = gaussian_params(q, 13, cf, ff);
                    let closed = arithmetic_part_closed(&params).unwrap();
                    let brute = arithmetic_part_brute(&params).unwrap();
                    assert!(
                        (closed - brute).norm() < tol::ARITH_CLOSED_VS_BRUTE,
                        "q={q} m=13 (c,f)=({cf},{ff})"
                    );
                }
            }
        }
    }

    #[test]
    fn p_divides_q_needs_p_dividing_c() {
        // c=1, f=3 sits on the l-support (7 | 3c-f) but p=3 does not
        // divide c, so both routes vanish.
        let params = d5_params(3, 1, 1, 3);
        assert_abs_diff_eq!(
            arithmetic_part_closed(&params).unwrap().norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            arithmetic_part_brute(&params).unwrap().norm(),
            0.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn support_divisibility_on_nonzero_values() {
        // case 1: l*p*g | c^2 D + f^2 whenever the brute value is nonzero
        for q in [1u64, 2, 5] {
            for cf in -10..=10i64 {
                for ff in -10..=10i64 {
                    let params = d5_params(q, 1, cf, ff);
                    let brute = arithmetic_part_brute_with_cap(&params, 450).unwrap();
                    if brute.norm() > 1e-9 {
                        let k = cf * cf * 5 + ff * ff;
                        let modulus = (params.lat.ell * params.ps.p * params.g()) as i64;
                        assert_eq!(k.rem_euclid(modulus), 0, "q={q} (c,f)=({cf},{ff})");
                    }
                }
            }
        }
        // case 2: l*p^2*g | c^2 D + f^2
        for cf in -9..=9i64 {
            for ff in -9..=9i64 {
                let params = d5_params(3, 1, cf, ff);
                let brute = arithmetic_part_brute_with_cap(&params, 450).unwrap();
                if brute.norm() > 1e-9 {
                    let k = cf * cf * 5 + ff * ff;
                    let modulus = (params.lat.ell * params.ps.p * params.ps.p * params.g()) as i64;
                    assert_eq!(k.rem_euclid(modulus), 0, "(c,f)=({cf},{ff})");
                }
            }
        }
    }

    #[test]
    fn golden_cell_values() {
        // Frozen values, generated once by the brute oracle. One nonzero
        // on-support cell per parity branch and per fixture field; both
        // routes must reproduce the pinned numbers.
        let cells: [(u64, u64, i64, i64, f64, f64); 6] = [
            // (d, q, c, f, re, im), m = 1 throughout
            (1, 3, 1, -8, -9.245003270420622e-3, -1.601281538050828e-2),
            (1, 2, 1, -73, 5.547001962252152e-2, 0.0),
            (1, 4, 2, -16, 2.773500981126166e-2, 0.0),
            (5, 1, 1, 10, 0.0, 8.247860988423231e-2),
            (5, 5, 1, 10, -2.168078565023856e-2, -2.984104139059960e-2),
            (5, 2, 1, -11, 0.0, -8.247860988423208e-2),
        ];
        for &(d, q, c, f, re, im) in &cells {
            let pinned = C64::new(re, im);
            let params = if d == 1 {
                gaussian_params(q, 1, c, f)
            } else {
                d5_params(q, 1, c, f)
            };
            let brute = arithmetic_part_brute_with_cap(&params, 600).unwrap();
            let closed = arithmetic_part_closed(&params).unwrap();
            assert!(
                (brute - pinned).norm() < 1e-12,
                "brute drifted from golden at d={d} q={q} (c,f)=({c},{f})"
            );
            assert!(
                (closed - pinned).norm() < 1e-12,
                "closed drifted from golden at d={d} q={q} (c,f)=({c},{f})"
            );
        }
    }

    #[test]
    fn even_field_even_q_branch_is_empty() {
        // D = 2, q = 2: gcd(q, D) = 2, so the support delta g | f and the
        // parity delta (c, f both odd) exclude each other. The branch is
        // empty: both routes must agree on 0 for every pair, and the
        // inverse-of-8 refusal stays unreachable.
        let ctx = make_field(2).unwrap();
        let ps = classify_prime(&ctx, 3).unwrap();
        let chi = make_dirichlet(3, 1).unwrap();
        let lat = IdealLatticeBasis {
            ell: 11,
            d_ell: 3,
            conjugate: false,
        };
        for cf in -6..=6i64 {
            for ff in -6..=6i64 {
                let p = ArithPartParams::new(&ctx, &ps, &chi, &lat, 2, 1, cf, ff);
                let brute = arithmetic_part_brute_with_cap(&p, 450).unwrap();
                match arithmetic_part_closed(&p) {
                    Ok(v) => {
                        assert!((v - brute).norm() < tol::ARITH_CLOSED_VS_BRUTE);
                        assert!(v.norm() < 1e-15);
                    }
                    Err(e) => panic!("closed form refused unexpectedly: {e}"),
                }
            }
        }
    }
}
