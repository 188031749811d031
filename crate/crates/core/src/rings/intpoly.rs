//! Dense univariate integer polynomials and Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::numtheory::{inv_mod_big, is_prime};
use crate::error::{Error, Result};

/// Coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `X^d + c_{d-1} X^{d-1} + ... + c_0` from `[c_0, ..., c_{d-1}]`.
    pub fn monic_from_low(mut low: Vec<BigInt>) -> IntPoly {
        low.push(BigInt::one());
        IntPoly::new(low)
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// All integer roots, ascending. Nonzero roots divide the lowest nonzero coefficient.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let low = self.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero poly");
        if self.coeffs[0].is_zero() {
            roots.push(BigInt::zero());
        }
        for d in divisors(&low.abs()) {
            for r in [-d.clone(), d] {
                if self.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Lift a simple root `x0` of monic `P` modulo prime `p` to the unique root
/// modulo `p^q` congruent to `x0`, by Newton iteration with exponent doubling.
pub fn hensel_lift(poly: &IntPoly, p: u64, x0: &BigInt, q: u32) -> Result<BigInt> {
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pb = BigInt::from(p);
    let dp = poly.derivative();
    let x0 = x0.mod_floor(&pb);
    if !poly.eval_mod(&x0, &pb).is_zero() {
        return Err(Error::NotASimpleRoot(format!("P({x0}) is not 0 mod {p}")));
    }
    if dp.eval_mod(&x0, &pb).is_zero() {
        return Err(Error::NotASimpleRoot(format!("P'({x0}) vanishes mod {p}")));
    }
    if q == 0 {
        return Ok(BigInt::zero());
    }
    let mut r = x0;
    let mut k = 1u32;
    while k < q {
        k = (2 * k).min(q);
        let m = num_traits::pow(pb.clone(), k as usize);
        let inv = inv_mod_big(&dp.eval_mod(&r, &m), &m).expect("derivative is a unit mod p^k");
        r = (&r - poly.eval_mod(&r, &m) * inv).mod_floor(&m);
    }
    Ok(r)
}
