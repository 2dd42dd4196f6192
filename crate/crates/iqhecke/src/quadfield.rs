//! The imaginary quadratic field `K = Q(sqrt(-D))`, `D > 0` squarefree:
//! maximal-order elements, norms, prime splitting, prime ideal lattices,
//! and class-group representatives identified through reduced binary
//! quadratic forms.
//!
//! The maximal order is `Z[alpha]` with `alpha = sqrt(-D)` when
//! `-D = 2, 3 (mod 4)` (discriminant `-4D`) and `alpha = (1+sqrt(-D))/2`
//! when `-D = 1 (mod 4)` (discriminant `-D`). Elements carry an explicit
//! `half` flag instead of a rescaled basis so both cases share one code
//! path for norms, lattices, and residue maps.

use crate::arith;

/// Errors from field construction and prime operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuadFieldError {
    #[error("D = {d} is not squarefree")]
    NotSquarefree { d: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("{p} does not split in Q(sqrt(-{d}))")]
    NotSplit { p: u64, d: u64 },
    #[error("no representative found for every ideal class among odd split primes <= {bound}")]
    SearchExhausted { bound: u64 },
}

/// Shape of the maximal order, keyed by `-D mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingType {
    /// `-D = 2, 3 (mod 4)`: order `Z[sqrt(-D)]`, discriminant `-4D`.
    Rt23,
    /// `-D = 1 (mod 4)`: order `Z[(1+sqrt(-D))/2]`, discriminant `-D`.
    Rt1,
}

/// An element of the maximal order: `a + b sqrt(-D)`, or
/// `(a + b sqrt(-D))/2` when `half` is set (requires `a = b (mod 2)` and
/// only arises for [`RingType::Rt1`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub a: i64,
    pub b: i64,
    pub half: bool,
}

impl RingElement {
    pub fn new_int(a: i64, b: i64) -> Self {
        RingElement { a, b, half: false }
    }

    /// `(a + b sqrt(-D))/2`; panics unless `a = b (mod 2)`.
    pub fn new_half(a: i64, b: i64) -> Self {
        assert!(
            (a - b) % 2 == 0,
            "half element requires equal parity, got ({a}, {b})"
        );
        if a % 2 == 0 {
            RingElement {
                a: a / 2,
                b: b / 2,
                half: false,
            }
        } else {
            RingElement { a, b, half: true }
        }
    }

    pub fn zero() -> Self {
        RingElement::new_int(0, 0)
    }

    pub fn one() -> Self {
        RingElement::new_int(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Numerator pair over denominator 2: integral `x` maps to `(2a, 2b)`,
    /// half elements to `(a, b)`.
    pub fn numerator(&self) -> (i64, i64) {
        if self.half {
            (self.a, self.b)
        } else {
            (2 * self.a, 2 * self.b)
        }
    }

    fn from_numerator(na: i64, nb: i64) -> Self {
        assert!((na - nb) % 2 == 0, "numerator parity violated");
        RingElement::new_half(na, nb)
    }

    pub fn conj(&self) -> Self {
        RingElement {
            a: self.a,
            b: -self.b,
            half: self.half,
        }
    }

    pub fn neg(&self) -> Self {
        RingElement {
            a: -self.a,
            b: -self.b,
            half: self.half,
        }
    }
}

/// How an odd prime behaves in the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// Splitting data for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSplitData {
    pub p: u64,
    pub kind: SplitKind,
    /// Canonical root of `d^2 = -D (mod p)` with `0 < d < p/2`; present
    /// exactly when `kind` is `Split`.
    pub d_p: Option<u64>,
}

/// The index-`ell` sublattice attached to a prime ideal above a split odd
/// prime: membership is `ell | (a + b d_ell)` on numerators, with the sign
/// of `d_ell` flipped for the conjugate ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealLatticeBasis {
    pub ell: u64,
    pub d_ell: u64,
    pub conjugate: bool,
}

impl IdealLatticeBasis {
    /// The root actually used by the membership congruence, as a signed
    /// residue: `d_ell` for the ideal itself, `-d_ell` for its conjugate.
    pub fn signed_root(&self) -> i64 {
        if self.conjugate {
            -(self.d_ell as i64)
        } else {
            self.d_ell as i64
        }
    }

    pub fn conj(&self) -> Self {
        IdealLatticeBasis {
            conjugate: !self.conjugate,
            ..*self
        }
    }
}

/// Everything derived from `D` that downstream layers need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    pub d: u64,
    pub ring_type: RingType,
    pub disc: i64,
    pub omega_k: u32,
    pub class_number: u32,
    pub class_reps: Vec<IdealLatticeBasis>,
}

/// Build the field context for squarefree `D >= 1`, including one ideal
/// lattice representative per class (found among the smallest split odd
/// primes, none avoided).
pub fn make_field(d: u64) -> Result<FieldContext, QuadFieldError> {
    if d == 0 || !arith::is_squarefree(d) {
        return Err(QuadFieldError::NotSquarefree { d });
    }
    // -D mod 4 == 1  <=>  D mod 4 == 3.
    let ring_type = if d % 4 == 3 { RingType::Rt1 } else { RingType::Rt23 };
    let disc = match ring_type {
        RingType::Rt1 => -(d as i64),
        RingType::Rt23 => -4 * d as i64,
    };
    let omega_k = match d {
        1 => 4,
        3 => 6,
        _ => 2,
    };
    let forms = reduced_forms(disc);
    let mut ctx = FieldContext {
        d,
        ring_type,
        disc,
        omega_k,
        class_number: forms.len() as u32,
        class_reps: Vec::new(),
    };
    ctx.class_reps = class_representatives(&ctx, 10_000, &[])?;
    Ok(ctx)
}

/// Classify an odd prime by the Kronecker symbol of the discriminant.
pub fn classify_prime(ctx: &FieldContext, p: u64) -> Result<PrimeSplitData, QuadFieldError> {
    assert!(p % 2 == 1, "only odd primes are classified, got {p}");
    if !arith::is_prime(p) {
        return Err(QuadFieldError::NotPrime { p });
    }
    let kind = match arith::kronecker(ctx.disc, p as i64) {
        1 => SplitKind::Split,
        -1 => SplitKind::Inert,
        _ => SplitKind::Ramified,
    };
    let d_p = if kind == SplitKind::Split {
        Some(split_root(ctx, p)?)
    } else {
        None
    };
    Ok(PrimeSplitData { p, kind, d_p })
}

/// The canonical root `d` of `d^2 = -D (mod p)` with `0 < d < p/2`.
///
/// Exhaustive search below 100 (which doubles as the oracle in the test
/// suite), Tonelli-Shanks above.
pub fn split_root(ctx: &FieldContext, p: u64) -> Result<u64, QuadFieldError> {
    let target = (-(ctx.d as i64)).rem_euclid(p as i64) as u64;
    let root = if p < 100 {
        split_root_exhaustive(target, p)
    } else {
        arith::sqrt_mod_prime(target as i64, p as i64).map(|r| r as u64)
    };
    match root {
        Some(r) if r != 0 => Ok(r.min(p - r)),
        _ => Err(QuadFieldError::NotSplit { p, d: ctx.d }),
    }
}

/// Smallest nonnegative square root of `target` mod `p` by scanning; the
/// independent oracle for [`split_root`].
pub fn split_root_exhaustive(target: u64, p: u64) -> Option<u64> {
    (0..p).find(|&x| (x as u128 * x as u128) % p as u128 == target as u128)
}

/// `N(a + b sqrt(-D)) = a^2 + D b^2`, divided by 4 for half elements.
/// Always a nonnegative integer on the maximal order.
pub fn norm(ctx: &FieldContext, x: &RingElement) -> u64 {
    if x.half {
        debug_assert_eq!(ctx.ring_type, RingType::Rt1);
    }
    let (na, nb) = (x.a as i128, x.b as i128);
    let n = na * na + ctx.d as i128 * nb * nb;
    let n = if x.half { n / 4 } else { n };
    debug_assert!(n >= 0);
    n as u64
}

/// Ring multiplication (denominator-2 numerator arithmetic keeps the two
/// ring types on one path).
pub fn mul_elements(ctx: &FieldContext, x: &RingElement, y: &RingElement) -> RingElement {
    let (xa, xb) = x.numerator();
    let (ya, yb) = y.numerator();
    let d = ctx.d as i64;
    // (xa + xb s)(ya + yb s) / 4 with s^2 = -D; the numerator over 4 is
    // always divisible by 2 because the product stays in the order.
    let pa = xa * ya - d * xb * yb;
    let pb = xa * yb + xb * ya;
    debug_assert!(pa % 2 == 0 && pb % 2 == 0);
    RingElement::from_numerator(pa / 2, pb / 2)
}

pub fn add_elements(x: &RingElement, y: &RingElement) -> RingElement {
    let (xa, xb) = x.numerator();
    let (ya, yb) = y.numerator();
    RingElement::from_numerator(xa + ya, xb + yb)
}

/// The unit group: 4 elements for D=1, 6 for D=3, otherwise just `{1, -1}`.
pub fn units(ctx: &FieldContext) -> Vec<RingElement> {
    match ctx.d {
        1 => vec![
            RingElement::new_int(1, 0),
            RingElement::new_int(0, 1),
            RingElement::new_int(-1, 0),
            RingElement::new_int(0, -1),
        ],
        3 => {
            // powers of zeta_6 = (1 + sqrt(-3))/2
            let mut us = Vec::with_capacity(6);
            let mut u = RingElement::one();
            let zeta = RingElement { a: 1, b: 1, half: true };
            for _ in 0..6 {
                us.push(u);
                u = mul_elements(ctx, &u, &zeta);
            }
            us
        }
        _ => vec![RingElement::new_int(1, 0), RingElement::new_int(-1, 0)],
    }
}

/// Membership test for the ideal lattice: `ell | (na + nb * (+-d_ell))` on
/// the numerator pair (the factor 2 on numerators of integral elements is
/// invertible mod odd `ell`, so one congruence serves both ring types).
pub fn lattice_contains(lat: &IdealLatticeBasis, x: &RingElement) -> bool {
    let (na, nb) = x.numerator();
    let ell = lat.ell as i128;
    ((na as i128 + nb as i128 * lat.signed_root() as i128) % ell).rem_euclid(ell) == 0
}

pub(crate) fn int_sqrt_leq(x: f64) -> i64 {
    if x < 0.0 {
        return -1;
    }
    let mut n = x.sqrt().floor() as i64;
    while ((n + 1) as f64) * ((n + 1) as f64) <= x {
        n += 1;
    }
    while n >= 0 && (n as f64) * (n as f64) > x {
        n -= 1;
    }
    n
}

/// Visit every lattice point of norm at most `X` exactly once (zero
/// included), without materializing the list. The search box uses exact
/// integer bounds on the numerator coordinates, so no point near the
/// boundary is lost to rounding.
pub fn for_each_lattice_point(
    ctx: &FieldContext,
    lat: Option<&IdealLatticeBasis>,
    x_bound: f64,
    mut visit: impl FnMut(RingElement),
) {
    assert!(x_bound >= 0.0 && x_bound.is_finite());
    // Numerator coordinates (na, nb) over denominator 2 satisfy
    // na^2 + D nb^2 <= 4X; Rt23 admits only even numerators.
    let four_x = 4.0 * x_bound;
    let na_max = int_sqrt_leq(four_x);
    let nb_max = int_sqrt_leq(four_x / ctx.d as f64);
    for nb in -nb_max..=nb_max {
        for na in -na_max..=na_max {
            if (na - nb) % 2 != 0 {
                continue;
            }
            if ctx.ring_type == RingType::Rt23 && na % 2 != 0 {
                continue;
            }
            let q = na as i128 * na as i128 + ctx.d as i128 * nb as i128 * nb as i128;
            // norm = q/4 <= X, exactly.
            if q as f64 > four_x {
                continue;
            }
            let x = RingElement::from_numerator(na, nb);
            if let Some(l) = lat {
                if !lattice_contains(l, &x) {
                    continue;
                }
            }
            visit(x);
        }
    }
}

/// All lattice points of norm at most `X`, each exactly once, zero
/// included; `lat = None` enumerates the full maximal order. Unit
/// multiples are distinct points; de-duplication by units is the caller's
/// concern.
pub fn enumerate_lattice(
    ctx: &FieldContext,
    lat: Option<&IdealLatticeBasis>,
    x_bound: f64,
) -> Vec<RingElement> {
    let mut out = Vec::new();
    for_each_lattice_point(ctx, lat, x_bound, |x| out.push(x));
    out
}

/// `Theta(x) mod p` under the splitting isomorphism fixed by `d_p`:
/// numerator `(na + nb d)` times the inverse of 2 mod p.
pub fn residue_map(
    ctx: &FieldContext,
    ps: &PrimeSplitData,
    x: &RingElement,
) -> Result<u64, QuadFieldError> {
    let d = match (ps.kind, ps.d_p) {
        (SplitKind::Split, Some(d)) => d,
        _ => return Err(QuadFieldError::NotSplit { p: ps.p, d: ctx.d }),
    };
    let p = ps.p as i128;
    let (na, nb) = x.numerator();
    let num = (na as i128 + nb as i128 * d as i128).rem_euclid(p);
    let inv2 = arith::mod_inv(2, ps.p as i64).expect("p odd") as i128;
    Ok(((num * inv2) % p) as u64)
}

/// A primitive positive-definite binary quadratic form `(a, b, c)`.
pub type Form = (i64, i64, i64);

/// All reduced primitive forms of negative discriminant `disc`
/// (`|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`), in
/// lexicographic order of enumeration: the principal form comes first.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    assert!(disc < 0 && (disc.rem_euclid(4) == 0 || disc.rem_euclid(4) == 1));
    let mut forms = Vec::new();
    let a_max = ((-disc) as f64 / 3.0).sqrt().floor() as i64 + 1;
    for a in 1..=a_max {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if arith::gcd(arith::gcd(a, b.abs()), c) != 1 {
                continue;
            }
            forms.push((a, b, c));
        }
    }
    forms
}

/// Reduce a positive-definite form to its canonical representative.
pub fn reduce_form(mut f: Form) -> Form {
    let disc = f.1 * f.1 - 4 * f.0 * f.2;
    debug_assert!(disc < 0 && f.0 > 0);
    loop {
        let (a, b, c) = f;
        if c < a {
            f = (c, -b, a);
            continue;
        }
        if b > a || b <= -a {
            // translate b into (-a, a]
            let mut r = b.rem_euclid(2 * a);
            if r > a {
                r -= 2 * a;
            }
            let c2 = (r * r - disc) / (4 * a);
            f = (a, r, c2);
            continue;
        }
        if a == c && b < 0 {
            f = (a, -b, c);
            continue;
        }
        return f;
    }
}

/// The form attached to the ideal lattice of `(ell, d)`: `(ell, -2d,
/// (d^2+D)/ell)` for Rt23 and `(ell, b0, (b0^2+D)/(4 ell))` with `b0` an
/// odd representative of `-d mod ell` for Rt1. The reduction of this form
/// identifies the ideal class.
pub fn lattice_form(ctx: &FieldContext, ell: u64, d_signed: i64) -> Form {
    let ell_i = ell as i64;
    let dd = ctx.d as i64;
    match ctx.ring_type {
        RingType::Rt23 => {
            let c = (d_signed * d_signed + dd) / ell_i;
            (ell_i, -2 * d_signed, c)
        }
        RingType::Rt1 => {
            let mut b0 = (-d_signed).rem_euclid(ell_i);
            if b0 % 2 == 0 {
                b0 += ell_i;
            }
            (ell_i, b0, (b0 * b0 + dd) / (4 * ell_i))
        }
    }
}

/// The principal (identity-class) reduced form of the field discriminant.
pub fn principal_form(ctx: &FieldContext) -> Form {
    match ctx.ring_type {
        RingType::Rt23 => (1, 0, ctx.d as i64),
        RingType::Rt1 => (1, 1, (1 + ctx.d as i64) / 4),
    }
}

/// Whether the lattice's ideal is principal (its form reduces to the
/// principal form).
pub fn is_principal(ctx: &FieldContext, lat: &IdealLatticeBasis) -> bool {
    reduce_form(lattice_form(ctx, lat.ell, lat.signed_root())) == principal_form(ctx)
}

/// One prime ideal lattice per class, searched over odd split primes in
/// ascending order, skipping any `ell` in `avoid`. Output is ordered by
/// the canonical form enumeration (principal class first).
pub fn class_representatives(
    ctx: &FieldContext,
    search_bound: u64,
    avoid: &[u64],
) -> Result<Vec<IdealLatticeBasis>, QuadFieldError> {
    let forms = reduced_forms(ctx.disc);
    let mut found: Vec<Option<IdealLatticeBasis>> = vec![None; forms.len()];
    let mut remaining = forms.len();
    for ell in arith::primes_up_to(search_bound) {
        if ell == 2 || avoid.contains(&ell) || ctx.d % ell == 0 {
            continue;
        }
        if arith::kronecker(ctx.disc, ell as i64) != 1 {
            continue;
        }
        let basis = IdealLatticeBasis {
            ell,
            d_ell: split_root(ctx, ell)?,
            conjugate: false,
        };
        let reduced = reduce_form(lattice_form(ctx, ell, basis.signed_root()));
        let idx = forms
            .iter()
            .position(|&f| f == reduced)
            .expect("reduction lands on a reduced form of the same discriminant");
        if found[idx].is_none() {
            found[idx] = Some(basis);
            remaining -= 1;
            if remaining == 0 {
                return Ok(found.into_iter().map(|f| f.unwrap()).collect());
            }
        }
    }
    Err(QuadFieldError::SearchExhausted {
        bound: search_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_context() {
        let ctx = make_field(1).unwrap();
        assert_eq!(ctx.ring_type, RingType::Rt23);
        assert_eq!(ctx.disc, -4);
        assert_eq!(ctx.omega_k, 4);
        assert_eq!(ctx.class_number, 1);
        assert_eq!(ctx.class_reps.len(), 1);
    }

    #[test]
    fn class_number_two_field() {
        let ctx = make_field(5).unwrap();
        assert_eq!(ctx.disc, -20);
        assert_eq!(ctx.class_number, 2);
        assert_eq!(
            reduced_forms(-20),
            vec![(1, 0, 5), (2, 2, 3)],
            "reduced forms of disc -20"
        );
    }

    #[test]
    fn eisenstein_field_context() {
        let ctx = make_field(3).unwrap();
        assert_eq!(ctx.ring_type, RingType::Rt1);
        assert_eq!(ctx.disc, -3);
        assert_eq!(ctx.omega_k, 6);
        assert_eq!(ctx.class_number, 1);
        assert_eq!(units(&ctx).len(), 6);
        for u in units(&ctx) {
            assert_eq!(norm(&ctx, &u), 1);
        }
    }

    #[test]
    fn square_divisor_rejected() {
        assert_eq!(make_field(4), Err(QuadFieldError::NotSquarefree { d: 4 }));
        assert!(make_field(12).is_err());
        assert!(make_field(0).is_err());
    }

    #[test]
    fn prime_classification() {
        let ctx = make_field(1).unwrap();
        let five = classify_prime(&ctx, 5).unwrap();
        assert_eq!(five.kind, SplitKind::Split);
        assert_eq!(five.d_p, Some(2));
        assert_eq!(classify_prime(&ctx, 3).unwrap().kind, SplitKind::Inert);
        let ctx5 = make_field(5).unwrap();
        assert_eq!(classify_prime(&ctx5, 5).unwrap().kind, SplitKind::Ramified);
        assert_eq!(
            classify_prime(&ctx, 9),
            Err(QuadFieldError::NotPrime { p: 9 })
        );
    }

    #[test]
    fn split_roots_canonical() {
        let ctx1 = make_field(1).unwrap();
        assert_eq!(split_root(&ctx1, 13), Ok(5));
        assert_eq!(split_root(&ctx1, 5), Ok(2));
        let ctx5 = make_field(5).unwrap();
        assert_eq!(split_root(&ctx5, 3), Ok(1));
        assert_eq!(split_root(&ctx5, 7), Ok(3));
        assert_eq!(split_root(&ctx5, 29), Ok(13));
        assert_eq!(split_root(&ctx5, 41), Ok(6));
        assert!(matches!(
            split_root(&ctx1, 3),
            Err(QuadFieldError::NotSplit { .. })
        ));
    }

    #[test]
    fn split_root_scan_matches_tonelli_shanks() {
        // The sub-100 scan is the oracle; force both paths on a range of
        // larger primes and compare.
        for d in [1u64, 2, 5, 6, 10] {
            let ctx = make_field(d).unwrap();
            for p in arith::primes_up_to(1000) {
                if p < 101 || arith::kronecker(ctx.disc, p as i64) != 1 {
                    continue;
                }
                let target = (-(d as i64)).rem_euclid(p as i64) as u64;
                let scan = split_root_exhaustive(target, p).unwrap();
                let fast = split_root(&ctx, p).unwrap();
                assert_eq!(fast, scan.min(p - scan), "d={d} p={p}");
                assert_eq!((fast as u128 * fast as u128 + d as u128) % p as u128, 0);
            }
        }
    }

    #[test]
    fn norms() {
        let ctx1 = make_field(1).unwrap();
        assert_eq!(norm(&ctx1, &RingElement::new_int(3, 2)), 13);
        let ctx3 = make_field(3).unwrap();
        assert_eq!(norm(&ctx3, &RingElement::new_half(1, 1)), 1);
        let ctx5 = make_field(5).unwrap();
        assert_eq!(norm(&ctx5, &RingElement::new_int(0, 1)), 5);
    }

    #[test]
    fn norm_is_multiplicative() {
        let ctx = make_field(3).unwrap();
        let xs = enumerate_lattice(&ctx, None, 30.0);
        for x in xs.iter().step_by(3) {
            for y in xs.iter().step_by(5) {
                let p = mul_elements(&ctx, x, y);
                assert_eq!(norm(&ctx, &p), norm(&ctx, x) * norm(&ctx, y));
            }
        }
    }

    #[test]
    fn unit_ball_of_gaussian_integers() {
        let ctx = make_field(1).unwrap();
        let pts = enumerate_lattice(&ctx, None, 1.0);
        assert_eq!(pts.len(), 5, "zero plus the four units");
        let units: Vec<_> = pts.iter().filter(|x| norm(&ctx, x) == 1).collect();
        assert_eq!(units.len(), 4);
        assert!(pts.iter().any(|x| x.is_zero()));
    }

    #[test]
    fn lattice_ball_is_zero_plus_unit_orbit() {
        let ctx = make_field(1).unwrap();
        let lat = IdealLatticeBasis {
            ell: 5,
            d_ell: 2,
            conjugate: false,
        };
        let pts = enumerate_lattice(&ctx, Some(&lat), 5.0);
        // 1 + 2i generates the norm-5 members: its four unit multiples
        // plus zero. 2 + i belongs to the conjugate lattice instead.
        assert_eq!(pts.len(), 5);
        for x in &pts {
            assert!(x.is_zero() || norm(&ctx, x) == 5);
            assert!(lattice_contains(&lat, x));
        }
        assert!(pts.contains(&RingElement::new_int(1, 2)));
        assert!(!pts.contains(&RingElement::new_int(2, 1)));
        let conj_pts = enumerate_lattice(&ctx, Some(&lat.conj()), 5.0);
        assert!(conj_pts.contains(&RingElement::new_int(2, 1)));
    }

    #[test]
    fn tiny_ball_is_just_zero() {
        let ctx = make_field(5).unwrap();
        let pts = enumerate_lattice(&ctx, None, 0.5);
        assert_eq!(pts, vec![RingElement::zero()]);
    }

    #[test]
    fn half_elements_enumerated() {
        let ctx = make_field(3).unwrap();
        // norm <= 1: zero plus the six units, four of which are half
        // elements.
        let pts = enumerate_lattice(&ctx, None, 1.0);
        assert_eq!(pts.len(), 7);
        assert_eq!(pts.iter().filter(|x| x.half).count(), 4);
    }

    #[test]
    fn representatives_cover_classes() {
        let ctx1 = make_field(1).unwrap();
        assert_eq!(ctx1.class_reps.len(), 1);
        assert_eq!(ctx1.class_reps[0].ell, 5);

        let ctx5 = make_field(5).unwrap();
        let reps = &ctx5.class_reps;
        assert_eq!(reps.len(), 2);
        // principal class first (29 = 9 + 20), then the non-principal
        // class, first reached at ell = 3
        assert_eq!(reps[0].ell, 29);
        assert!(is_principal(&ctx5, &reps[0]));
        assert_eq!(reps[1].ell, 3);
        assert!(!is_principal(&ctx5, &reps[1]));
    }

    #[test]
    fn avoid_set_honored() {
        let ctx = make_field(1).unwrap();
        let reps = class_representatives(&ctx, 1000, &[5]).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].ell, 13);
        assert_eq!(reps[0].d_ell, 5);
    }

    #[test]
    fn search_exhaustion_reported() {
        let ctx = make_field(5).unwrap();
        // No split odd prime <= 5 lands in the principal class.
        assert_eq!(
            class_representatives(&ctx, 5, &[]),
            Err(QuadFieldError::SearchExhausted { bound: 5 })
        );
    }

    #[test]
    fn residue_map_values() {
        let ctx = make_field(1).unwrap();
        let ps = classify_prime(&ctx, 5).unwrap();
        assert_eq!(
            residue_map(&ctx, &ps, &RingElement::new_int(1, 1)).unwrap(),
            3
        );
        assert_eq!(
            residue_map(&ctx, &ps, &RingElement::new_int(-1, 0)).unwrap(),
            4
        );
        // homomorphism spot check: (1+i)(2+i) = 1+3i
        let x = RingElement::new_int(1, 1);
        let y = RingElement::new_int(2, 1);
        let xy = mul_elements(&ctx, &x, &y);
        assert_eq!(xy, RingElement::new_int(1, 3));
        assert_eq!(
            residue_map(&ctx, &ps, &xy).unwrap(),
            (residue_map(&ctx, &ps, &x).unwrap() * residue_map(&ctx, &ps, &y).unwrap()) % 5
        );
        let inert = classify_prime(&ctx, 3).unwrap();
        assert!(residue_map(&ctx, &inert, &x).is_err());
    }

    #[test]
    fn residue_map_on_half_elements() {
        let ctx = make_field(3).unwrap();
        let ps = classify_prime(&ctx, 7).unwrap();
        let d = ps.d_p.unwrap();
        assert_eq!((d * d + 3) % 7, 0);
        // Theta is a ring homomorphism on half elements too.
        let zeta = RingElement { a: 1, b: 1, half: true };
        let z2 = mul_elements(&ctx, &zeta, &zeta);
        let t = residue_map(&ctx, &ps, &zeta).unwrap();
        assert_eq!(residue_map(&ctx, &ps, &z2).unwrap(), (t * t) % 7);
    }

    #[test]
    fn form_reduction_examples() {
        assert_eq!(reduce_form((29, -26, 6)), (1, 0, 5));
        assert_eq!(reduce_form((3, -2, 2)), (2, 2, 3));
        assert_eq!(reduce_form((7, -6, 2)), (2, 2, 3));
        assert_eq!(reduced_forms(-4), vec![(1, 0, 1)]);
        assert_eq!(reduced_forms(-3), vec![(1, 1, 1)]);
    }
}
