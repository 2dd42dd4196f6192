//! Dirichlet characters mod an odd prime, Kronecker symbols, Hecke
//! characters of prime conductor and integer weight on an imaginary
//! quadratic field, and their coefficient series `lambda(n)`.
//!
//! A weight-`r` Hecke character on elements is
//! `psi(x) = chi(Theta(x)) * (x/|x|)^r`, where `Theta` is the residue map
//! of the split conductor prime. The residue map already multiplies half
//! elements by the inverse of 2 mod p, which is where the extra
//! `conj(chi)(2)` factor of the half-integral case lives.

use crate::arith;
use crate::quadfield::{
    self, FieldContext, IdealLatticeBasis, PrimeSplitData, RingElement, SplitKind,
};
use crate::{e_frac, C64};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CharError {
    #[error("Kronecker symbol needs a nonzero second argument")]
    ZeroModulus,
    #[error("character index {k} mod {p} is not primitive")]
    NonPrimitive { p: u64, k: u64 },
    #[error("no weight-{r} Hecke character: psi({unit:?}) = {value} on a unit")]
    UnitInconsistency {
        r: u32,
        unit: RingElement,
        value: C64,
    },
    #[error("element has norm {n} sharing a factor with the conductor {p}")]
    NotCoprime { n: u64, p: u64 },
}

/// Kronecker symbol `(a|n)`, the fully multiplicative extension of the
/// Legendre symbol.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i64, CharError> {
    if n == 0 {
        return Err(CharError::ZeroModulus);
    }
    Ok(arith::kronecker(a, n))
}

/// A Dirichlet character mod an odd prime `p`, indexed against the least
/// primitive root `g`: `chi(g) = e(k/(p-1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub p: u64,
    pub generator: u64,
    pub k: u64,
    /// `log_table[x]` is the discrete log of `x` base `generator`;
    /// entry 0 is an unused sentinel.
    log_table: Vec<u32>,
}

fn build_log_table(p: u64, g: u64) -> Vec<u32> {
    let mut table = vec![0u32; p as usize];
    let mut x = 1u64;
    for j in 0..p - 1 {
        table[x as usize] = j as u32;
        x = x * g % p;
    }
    table
}

/// A primitive character: requires `1 <= k <= p-2`.
pub fn make_dirichlet(p: u64, k: u64) -> Result<DirichletCharacter, CharError> {
    assert!(p > 2 && arith::is_prime(p), "modulus must be an odd prime");
    if k == 0 || k > p - 2 {
        return Err(CharError::NonPrimitive { p, k });
    }
    let g = arith::least_primitive_root(p as i64) as u64;
    Ok(DirichletCharacter {
        p,
        generator: g,
        k,
        log_table: build_log_table(p, g),
    })
}

impl DirichletCharacter {
    /// The principal character mod `p` (1 on units, 0 at multiples of p).
    pub fn trivial(p: u64) -> Self {
        assert!(p > 2 && arith::is_prime(p));
        let g = arith::least_primitive_root(p as i64) as u64;
        DirichletCharacter {
            p,
            generator: g,
            k: 0,
            log_table: build_log_table(p, g),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.k != 0
    }

    pub fn eval(&self, x: i64) -> C64 {
        let xm = x.rem_euclid(self.p as i64) as u64;
        if xm == 0 {
            return C64::new(0.0, 0.0);
        }
        let log = self.log_table[xm as usize] as i64;
        e_frac(self.k as i64 * log, self.p as i64 - 1)
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            k: if self.k == 0 { 0 } else { self.p - 1 - self.k },
            log_table: self.log_table.clone(),
            ..*self
        }
    }

    /// `chi(-1)`, which is `(-1)^k`.
    pub fn parity(&self) -> i64 {
        if self.k % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// `tau(chi) = sum_{b mod p} chi(b) e(b/p)`; modulus `sqrt(p)` for
/// primitive `chi`, and `-1` for the principal character.
pub fn gauss_sum_tau(chi: &DirichletCharacter) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for b in 1..chi.p {
        let z = if chi.k == 0 {
            C64::new(1.0, 0.0)
        } else {
            chi.eval(b as i64)
        };
        s += z * e_frac(b as i64, chi.p as i64);
    }
    s
}

/// A Hecke character of conductor `ps.p` and weight `r`, with one fixed
/// phase per ideal class.
#[derive(Debug, Clone)]
pub struct HeckeCharacter {
    pub ctx: FieldContext,
    pub ps: PrimeSplitData,
    pub chi: DirichletCharacter,
    pub r: u32,
    /// One lattice representative per ideal class (the conductor prime is
    /// never used as a representative), paired with the chosen value
    /// `psi(L)`. Principal class first.
    pub class_phases: Vec<(IdealLatticeBasis, C64)>,
}

/// `(x/|x|)^r` by exact integer powering of `x^r` followed by a single
/// normalization, avoiding accumulated angle error.
fn unit_phase_pow(ctx: &FieldContext, x: &RingElement, r: u32) -> C64 {
    let (na, nb) = x.numerator();
    let (mut pa, mut pb): (i128, i128) = (2, 0);
    let d = ctx.d as i128;
    for _ in 0..r {
        let (qa, qb) = (pa, pb);
        pa = (qa * na as i128 - d * qb * nb as i128) / 2;
        pb = (qa * nb as i128 + qb * na as i128) / 2;
        assert!(
            pa.abs() < (1 << 120) && pb.abs() < (1 << 120),
            "weight/norm combination too large for exact powering"
        );
    }
    // x^r = (pa + pb sqrt(-D)) / 2, with |x^r| = norm(x)^(r/2).
    let modulus = (quadfield::norm(ctx, x) as f64).powf(r as f64 / 2.0);
    C64::new(pa as f64 / 2.0, pb as f64 * (ctx.d as f64).sqrt() / 2.0) / modulus
}

/// Total evaluation: `chi(Theta(x)) * (x/|x|)^r`, which is 0 exactly on
/// the conductor-ideal multiples (and at 0). Multiples of the conjugate
/// conductor prime evaluate to their honest unit-modulus value.
pub fn eval_hecke_or_zero(psi: &HeckeCharacter, x: &RingElement) -> C64 {
    if x.is_zero() {
        return C64::new(0.0, 0.0);
    }
    let theta = quadfield::residue_map(&psi.ctx, &psi.ps, x).expect("conductor prime splits");
    let chi_val = psi.chi.eval(theta as i64);
    if chi_val.norm_sqr() == 0.0 {
        return chi_val;
    }
    chi_val * unit_phase_pow(&psi.ctx, x, psi.r)
}

/// Evaluate on an element coprime to the conductor ideal. Elements lying
/// in the conjugate prime above p are fine (their norm is divisible by p,
/// but the conductor does not divide them); elements of the conductor
/// ideal itself are rejected.
pub fn eval_hecke_element(psi: &HeckeCharacter, x: &RingElement) -> Result<C64, CharError> {
    let theta = quadfield::residue_map(&psi.ctx, &psi.ps, x).expect("conductor prime splits");
    if x.is_zero() || theta == 0 {
        return Err(CharError::NotCoprime {
            n: quadfield::norm(&psi.ctx, x),
            p: psi.ps.p,
        });
    }
    Ok(eval_hecke_or_zero(psi, x))
}

/// A generator of `L^h`: a lattice point of `L` of norm `ell^h` lying
/// outside the conjugate lattice, so its ideal is exactly `L^h`.
pub fn power_generator(ctx: &FieldContext, lat: &IdealLatticeBasis, h: u32) -> RingElement {
    let target = (lat.ell as i128).pow(h);
    let conj = lat.conj();
    let mut found = None;
    quadfield::for_each_lattice_point(ctx, Some(lat), target as f64, |x| {
        if found.is_none()
            && quadfield::norm(ctx, &x) as i128 == target
            && !quadfield::lattice_contains(&conj, &x)
        {
            found = Some(x);
        }
    });
    found.expect("L^h is principal, so a generator of that norm exists")
}

/// Construct the weight-`r` character, verifying `psi = 1` on every unit
/// and fixing one phase per ideal class. `extension` in `[0, h)` selects
/// among the `h` roots on non-principal classes; 0 is the canonical
/// choice (argument in `[0, 2*pi/h)`).
pub fn make_hecke_extension(
    ctx: &FieldContext,
    ps: &PrimeSplitData,
    chi: &DirichletCharacter,
    r: u32,
    extension: u32,
) -> Result<HeckeCharacter, CharError> {
    assert!(ps.kind == SplitKind::Split, "conductor prime must split");
    assert!(chi.is_primitive(), "conductor-p character must be primitive");
    assert!(r > 0, "weight must be positive");
    assert_eq!(ps.p, chi.p, "character modulus must match the conductor");
    let h = ctx.class_number;
    assert!(extension < h || extension == 0);

    let mut psi = HeckeCharacter {
        ctx: ctx.clone(),
        ps: *ps,
        chi: chi.clone(),
        r,
        class_phases: Vec::new(),
    };

    for u in quadfield::units(ctx) {
        let v = eval_hecke_or_zero(&psi, &u);
        if (v - C64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(CharError::UnitInconsistency { r, unit: u, value: v });
        }
    }

    let reps = quadfield::class_representatives(ctx, 10_000, &[ps.p])
        .expect("split primes below 10^4 cover every class at desk scale");
    for lat in reps {
        let phase = if quadfield::is_principal(ctx, &lat) {
            // Forced: psi of a principal ideal is psi of its generator.
            eval_hecke_or_zero(&psi, &power_generator(ctx, &lat, 1))
        } else {
            let gen = power_generator(ctx, &lat, h);
            let val = eval_hecke_or_zero(&psi, &gen);
            let mut arg = val.arg();
            if arg < 0.0 {
                arg += std::f64::consts::TAU;
            }
            let root_arg =
                arg / h as f64 + extension as f64 * std::f64::consts::TAU / h as f64;
            C64::from_polar(1.0, root_arg)
        };
        psi.class_phases.push((lat, phase));
    }
    Ok(psi)
}

/// The canonical extension (see [`make_hecke_extension`]).
pub fn make_hecke(
    ctx: &FieldContext,
    ps: &PrimeSplitData,
    chi: &DirichletCharacter,
    r: u32,
) -> Result<HeckeCharacter, CharError> {
    make_hecke_extension(ctx, ps, chi, r, 0)
}

/// All `h` extensions of the character to the class group. Each is a
/// genuine Hecke character when `h <= 2` (one free root choice); for a
/// single class there is no choice at all.
pub fn hecke_extensions(
    ctx: &FieldContext,
    ps: &PrimeSplitData,
    chi: &DirichletCharacter,
    r: u32,
) -> Result<Vec<HeckeCharacter>, CharError> {
    (0..ctx.class_number)
        .map(|j| make_hecke_extension(ctx, ps, chi, r, j))
        .collect()
}

/// The coefficients `lambda(n) = sum over ideals of norm n of psi`,
/// extended by zero on conductor multiples.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    pub psi: HeckeCharacter,
    /// `values[n]` is `lambda(n)`; index 0 is unused.
    pub values: Vec<C64>,
}

/// Accumulate every `lambda(n)` for `n <= n_max` in one lattice sweep per
/// class: ideals of norm `n` in the class of `conj(L)` correspond to
/// lattice points of `L` of norm `n*ell`, counted once per unit orbit via
/// the `1/omega_K` weight and twisted by `1/psi(L)`.
pub fn lambda_coefficients(psi: &HeckeCharacter, n_max: usize) -> CoefficientSeries {
    assert!(n_max >= 1);
    let ctx = &psi.ctx;
    let omega = ctx.omega_k as f64;
    let mut values = vec![C64::new(0.0, 0.0); n_max + 1];
    for (lat, phase) in &psi.class_phases {
        let ell = lat.ell;
        let weight = (omega * phase).inv();
        quadfield::for_each_lattice_point(ctx, Some(lat), (n_max as u64 * ell) as f64, |x| {
            if x.is_zero() {
                return;
            }
            let n = quadfield::norm(ctx, &x);
            debug_assert_eq!(n % ell, 0);
            let idx = (n / ell) as usize;
            if idx >= 1 && idx <= n_max {
                values[idx] += eval_hecke_or_zero(psi, &x) * weight;
            }
        });
    }
    CoefficientSeries {
        psi: psi.clone(),
        values,
    }
}

/// Single-coefficient evaluation by a fresh per-`n` scan; the independent
/// cross-check for [`lambda_coefficients`].
pub fn lambda_single(psi: &HeckeCharacter, n: u64) -> C64 {
    assert!(n >= 1);
    let ctx = &psi.ctx;
    let mut total = C64::new(0.0, 0.0);
    for (lat, phase) in &psi.class_phases {
        let target = n * lat.ell;
        let mut class_sum = C64::new(0.0, 0.0);
        quadfield::for_each_lattice_point(ctx, Some(lat), target as f64, |x| {
            if quadfield::norm(ctx, &x) == target {
                class_sum += eval_hecke_or_zero(psi, &x);
            }
        });
        total += class_sum / (ctx.omega_k as f64 * phase);
    }
    total
}

impl CoefficientSeries {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn lambda(&self, n: usize) -> C64 {
        self.values[n]
    }

    /// CSV rows `n,re_lambda,im_lambda` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re_lambda,im_lambda\n");
        for (n, v) in self.values.iter().enumerate().skip(1) {
            out.push_str(&format!("{n},{:.17e},{:.17e}\n", v.re, v.im));
        }
        out
    }
}
