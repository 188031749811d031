//! Small-integer number theory used by the residue rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization in ascending order of primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

/// Reduce an arbitrary integer into `[0, n)`.
pub fn reduce_big(v: &BigInt, n: u64) -> u64 {
    let m = BigInt::from(n);
    let r = v.mod_floor(&m);
    u64::try_from(r).expect("residue fits in u64")
}

/// Inverse of `a` modulo `m` for big moduli.
pub fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.abs() != BigInt::from(1) {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Exact integer k-th root, if one exists.
pub fn exact_root(c: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if c.is_zero() {
        return Some(BigInt::zero());
    }
    if c.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-c, k).map(|r| -r);
    }
    let r = c.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *c {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factor(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(36), vec![(2, 2), (3, 2)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(97), vec![(97, 1)]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 5), Some(2));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(0, 1), Some(0));
        for n in 2..40u64 {
            for a in 0..n {
                match inv_mod(a, n) {
                    Some(b) => assert_eq!(mul_mod(a, b, n), 1),
                    None => assert!(gcd_u64(a, n) > 1),
                }
            }
        }
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&BigInt::from(9), 2), Some(BigInt::from(3)));
        assert_eq!(exact_root(&BigInt::from(8), 2), None);
        assert_eq!(exact_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root(&BigInt::from(-4), 2), None);
    }
}
