//! Dense univariate polynomials over `Z/n`, coefficients low-to-high with no
//! trailing zeros. Division and gcd need `n` prime.

use super::numtheory::{inv_mod, mul_mod};

pub type Coeffs = Vec<u64>;

pub fn trim(mut a: Coeffs) -> Coeffs {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], n: u64) -> Coeffs {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ((x as u128 + y as u128) % n as u128) as u64
        })
        .collect();
    trim(out)
}

pub fn neg(a: &[u64], n: u64) -> Coeffs {
    trim(a.iter().map(|&x| (n - x) % n).collect())
}

pub fn sub(a: &[u64], b: &[u64], n: u64) -> Coeffs {
    add(a, &neg(b, n), n)
}

pub fn mul(a: &[u64], b: &[u64], n: u64) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + mul_mod(x, y, n) as u128) % n as u128) as u64;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, n: u64) -> Coeffs {
    trim(a.iter().map(|&x| mul_mod(x, c, n)).collect())
}

/// Quotient and remainder; `None` when the divisor is zero or its leading
/// coefficient is not invertible.
pub fn divrem(a: &[u64], b: &[u64], n: u64) -> Option<(Coeffs, Coeffs)> {
    let db = degree(b)?;
    let lead_inv = inv_mod(*b.last()?, n)?;
    let mut r: Coeffs = a.to_vec();
    if r.len() < b.len() {
        return Some((Vec::new(), trim(r)));
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, n);
        let shift = dr - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let t = mul_mod(c, bi, n);
            r[shift + i] = (r[shift + i] + n - t) % n;
        }
        r = trim(r);
    }
    Some((trim(q), r))
}

pub fn monic(a: &[u64], p: u64) -> Coeffs {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p).expect("prime modulus"), p),
    }
}

/// Monic gcd over `F_p`; the gcd of zero polynomials is zero.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p).expect("prime modulus");
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, u, v)` with `g = u*a + v*b` the monic gcd over `F_p`.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs, Coeffs) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut u0, mut u1) = (vec![1u64], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p).expect("prime modulus");
        let u = sub(&u0, &mul(&q, &u1, p), p);
        let v = sub(&v0, &mul(&q, &v1, p), p);
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, u);
        (v0, v1) = (v1, v);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(&l) => {
            let inv = inv_mod(l, p).expect("prime modulus");
            (scale(&r0, inv, p), scale(&trim(u0), inv, p), scale(&trim(v0), inv, p))
        }
    }
}

pub fn eval(a: &[u64], x: u64, n: u64) -> u64 {
    a.iter()
        .rev()
        .fold(0u64, |acc, &c| ((mul_mod(acc, x, n) as u128 + c as u128) % n as u128) as u64)
}

pub fn roots(a: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(a, x, p) == 0).collect()
}

/// All monic polynomials of exact degree `d` over `F_p`.
pub fn monics_of_degree(d: usize, p: u64) -> Vec<Coeffs> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Coeffs| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut v| {
            v.push(1);
            v
        })
        .collect()
}

/// Irreducibility over `F_p`: root test up to degree 3, trial division by
/// monic polynomials of degree at most `deg/2` above that.
pub fn is_irreducible(a: &[u64], p: u64) -> bool {
    let Some(d) = degree(a) else {
        return false;
    };
    match d {
        0 => false,
        1 => true,
        2 | 3 => roots(a, p).is_empty(),
        _ => (1..=d / 2).all(|k| {
            monics_of_degree(k, p)
                .iter()
                .all(|f| !divrem(a, f, p).map(|(_, r)| r.is_empty()).unwrap_or(false))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_roundtrip() {
        let p = 5;
        let a = vec![1, 2, 3, 4];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&a, &b, p).unwrap();
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_and_irreducibility() {
        // (X-1)(X-2) and (X-1)(X+1) over F_5 share X-1
        let a = mul(&[4, 1], &[3, 1], 5);
        let b = mul(&[4, 1], &[1, 1], 5);
        assert_eq!(gcd(&a, &b, 5), vec![4, 1]);
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // X^4 + X + 1 is irreducible over F_2, X^4 + X^2 + 1 = (X^2+X+1)^2 is not
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }
}
