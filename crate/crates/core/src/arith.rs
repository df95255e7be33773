//! Rational-integer helpers: primality, trial-division factoring, Legendre
//! symbols and `q`-adic valuations of big integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound used when no explicit budget is given.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= n`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Reduces a possibly negative integer into `[0, m)`.
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn reduce_big(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Modular inverse of `a` modulo `m` (`gcd(a, m) = 1` required).
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// `q`-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, q: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let q = BigInt::from(q);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        n = quo;
        v += 1;
    }
}

/// `q`-adic valuation of a rational; `None` for zero.
pub fn val_rat(x: &BigRational, q: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(val_int(x.numer(), q) as i64 - val_int(x.denom(), q) as i64)
}

/// Strips every factor of `q` from `n`, returning the exponent removed.
pub fn strip_factor(n: &mut BigInt, q: u64) -> u32 {
    let q = BigInt::from(q);
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        *n = quo;
        v += 1;
    }
}

/// Factors `|n|` by trial division up to `bound`.
///
/// A leftover cofactor below `(bound + 1)^2` is necessarily prime and is
/// returned as such; anything larger is reported as unfactored.
pub fn factor(n: &BigInt, bound: u64) -> Result<Vec<(u64, u32)>> {
    match partial_factor(n, bound)? {
        (out, None) => Ok(out),
        (_, Some(rest)) => Err(Error::FactorBudget { bound, cofactor: rest.to_string() }),
    }
}

/// Like [`factor`], but returns the primes found together with any unfactored cofactor.
pub fn partial_factor(n: &BigInt, bound: u64) -> Result<(Vec<(u64, u32)>, Option<BigInt>)> {
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut trial = 2u64;
    while trial <= bound {
        if rest.is_one() {
            return Ok((out, None));
        }
        let t = BigInt::from(trial);
        if &t * &t > rest {
            break;
        }
        let e = strip_factor(&mut rest, trial);
        if e > 0 {
            out.push((trial, e));
        }
        trial += if trial == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok((out, None));
    }
    let limit = BigInt::from(bound + 1) * BigInt::from(bound + 1);
    let tried_past_root = {
        let t = BigInt::from(trial);
        &t * &t > rest
    };
    match rest.to_u64() {
        Some(p) if tried_past_root || rest < limit => {
            out.push((p, 1));
            out.sort_unstable();
            Ok((out, None))
        }
        _ => Ok((out, Some(rest))),
    }
}

/// Distinct prime factors of `|n|`, ascending.
pub fn prime_support(n: &BigInt, bound: u64) -> Result<Vec<u64>> {
    Ok(factor(n, bound)?.into_iter().map(|(p, _)| p).collect())
}

/// Whether every prime factor of the rational `x` lies in `allowed`.
pub fn supported_on(x: &BigRational, allowed: &[u64]) -> bool {
    if x.is_zero() {
        return false;
    }
    let mut num = x.numer().abs();
    let mut den = x.denom().abs();
    for &l in allowed {
        strip_factor(&mut num, l);
        strip_factor(&mut den, l);
    }
    num.is_one() && den.is_one()
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_mul(c) == Some(n))
}

pub fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}
