//! Elementary integer arithmetic shared by every module: gcd chains, modular
//! inverses, primality, Kronecker symbols, square roots mod p, factorization.
//!
//! Everything here is deliberately desk-scale (64-bit inputs, trial division
//! where it is honest to do so); the number-theoretic heavy lifting in this
//! crate is in the identities, not in big-integer performance.

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a,b)`, g >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Inverse of `a` modulo `m > 1`, in `[0, m)`. Returns `None` when
/// `gcd(a, m) != 1`.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    debug_assert!(m > 1);
    let (g, x, _) = egcd(a.rem_euclid(m), m);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m))
    }
}

/// `base^exp mod m` for `m > 0`, via square-and-multiply in 128-bit
/// intermediates.
pub fn mod_pow(base: i64, mut exp: u64, m: i64) -> i64 {
    debug_assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let m128 = m as i128;
    let mut acc: i128 = 1;
    let mut b: i128 = (base.rem_euclid(m)) as i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as i64
}

/// Deterministic Miller-Rabin for u64 (the usual 12-base certificate).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Kronecker symbol `(a/n)`, the total extension of the Jacobi symbol to all
/// nonzero lower arguments (and `(±1/0) = 1` by the usual convention).
pub fn kronecker(mut a: i64, mut n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0, // a even against the factor (a/2)
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Square root of `a` modulo an odd prime `p` via Tonelli-Shanks. Returns
/// `None` when `a` is a non-residue. `a = 0` maps to `0`.
pub fn sqrt_mod_prime(a: i64, p: i64) -> Option<i64> {
    debug_assert!(p > 2 && is_prime(p as u64));
    let a = a.rem_euclid(p);
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, ((p - 1) / 2) as u64, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, ((p + 1) / 4) as u64, p));
    }
    // Write p-1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Any quadratic non-residue works as the seed.
    let mut z = 2i64;
    while mod_pow(z, ((p - 1) / 2) as u64, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q as u64, p);
    let mut t = mod_pow(a, q as u64, p);
    let mut r = mod_pow(a, ((q + 1) / 2) as u64, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod_u64(t2 as u64, t2 as u64, p as u64) as i64;
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        let b2 = mul_mod_u64(b as u64, b as u64, p as u64) as i64;
        r = mul_mod_u64(r as u64, b as u64, p as u64) as i64;
        t = mul_mod_u64(t as u64, b2 as u64, p as u64) as i64;
        c = b2;
        m = i;
    }
    Some(r)
}

/// Trial-division factorization, smallest prime first, `n >= 1`.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e);
    let mut p = 3u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    out
}

/// True when no prime square divides `n` (n >= 1).
pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Least primitive root modulo an odd prime `p`.
pub fn least_primitive_root(p: i64) -> i64 {
    debug_assert!(p > 2 && is_prime(p as u64));
    let phi = (p - 1) as u64;
    let prime_factors: Vec<u64> = factor(phi).into_iter().map(|(q, _)| q).collect();
    'g: for g in 2..p {
        for &q in &prime_factors {
            if mod_pow(g, phi / q, p) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

/// Number of divisors of `n >= 1`.
pub fn divisor_count(n: u64) -> u64 {
    factor(n).iter().map(|&(_, e)| (e + 1) as u64).product()
}

/// Primes in `[2, bound]`, ascending (simple sieve).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut k = p * p;
            while k <= n {
                sieve[k] = false;
                k += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}
