//! Composition series and associated primes of `Z/n`.

use serde::{Deserialize, Serialize};

use super::ideal::Ideal;
use super::numtheory::factor;
use super::{Elem, RingSpec};
use crate::error::{Error, Result};

/// Descending chain `I_0 = A ⊃ I_1 ⊃ ... ⊃ I_n = 0` with `I_j / I_{j+1} ≅ A / p_j`
/// generated by `alpha_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationData {
    pub ring: RingSpec,
    pub ideals: Vec<Ideal>,
    pub primes: Vec<Ideal>,
    pub gens: Vec<Elem>,
}

/// Primes `p_i` with `p_i = ann(alpha_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedPrimesData {
    pub ring: RingSpec,
    pub pairs: Vec<(Ideal, Elem)>,
}

fn zmod_n(spec: &RingSpec) -> Result<u64> {
    match spec {
        RingSpec::Zmod(n) => Ok(*n),
        _ => Err(Error::InvalidArgument(format!("{spec} is not of the form zmod:n"))),
    }
}

/// Maximal chain `(d_0 = 1) ⊃ (d_1) ⊃ ... ⊃ (d_k = n)` with `d_{j+1} / d_j` prime,
/// primes taken in ascending order.
pub fn composition_series(spec: &RingSpec) -> Result<FiltrationData> {
    let n = zmod_n(spec)?;
    let primes: Vec<u64> = factor(n)
        .into_iter()
        .flat_map(|(p, e)| std::iter::repeat(p).take(e as usize))
        .collect();
    let mut d = 1u64;
    let mut ideals = vec![Ideal::principal(spec.clone(), Elem::Res(d % n))?];
    let mut gens = Vec::new();
    let mut prime_ideals = Vec::new();
    for &p in &primes {
        gens.push(Elem::Res(d % n));
        prime_ideals.push(Ideal::principal(spec.clone(), Elem::Res(p % n))?);
        d *= p;
        ideals.push(Ideal::principal(spec.clone(), Elem::Res(d % n))?);
    }
    Ok(FiltrationData { ring: spec.clone(), ideals, primes: prime_ideals, gens })
}

pub fn associated_primes(spec: &RingSpec) -> Result<AssociatedPrimesData> {
    let n = zmod_n(spec)?;
    if n < 2 {
        return Err(Error::InvalidArgument("associated primes of the zero ring".into()));
    }
    let pairs = factor(n)
        .into_iter()
        .map(|(p, _)| Ok((Ideal::principal(spec.clone(), Elem::Res(p % n))?, Elem::Res(n / p))))
        .collect::<Result<Vec<_>>>()?;
    Ok(AssociatedPrimesData { ring: spec.clone(), pairs })
}

impl FiltrationData {
    /// Exhaustive check of the chain conditions over a finite ring: endpoints,
    /// primality, and that `t -> t*alpha_j` induces `A/p_j ≅ I_j/I_{j+1}`.
    pub fn check_exhaustive(&self) -> Result<bool> {
        let ring = &self.ring;
        let all = ring.enumerate(0);
        let k = self.primes.len();
        if self.ideals.len() != k + 1 || self.gens.len() != k {
            return Ok(false);
        }
        if !self.ideals[0].contains(&ring.one())? || !self.ideals[k].is_zero_ideal() {
            return Ok(false);
        }
        for j in 0..k {
            let (ij, next, p, alpha) = (&self.ideals[j], &self.ideals[j + 1], &self.primes[j], &self.gens[j]);
            if p.is_prime() != Some(true) || !ij.contains(alpha)? {
                return Ok(false);
            }
            for t in &all {
                if next.contains(&ring.mul(t, alpha))? != p.contains(t)? {
                    return Ok(false);
                }
            }
            for e in ij.span()? {
                let mut hit = false;
                for t in &all {
                    if next.contains(&ring.sub(&e, &ring.mul(t, alpha)))? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl AssociatedPrimesData {
    /// Exhaustive check: `ann(alpha_i) = p_i` and the union of the `p_i` is the
    /// set of zero-divisors.
    pub fn check_exhaustive(&self) -> Result<bool> {
        let ring = &self.ring;
        let all = ring.enumerate(0);
        for (p, alpha) in &self.pairs {
            for t in &all {
                if ring.is_zero(&ring.mul(t, alpha)) != p.contains(t)? {
                    return Ok(false);
                }
            }
        }
        for a in &all {
            let zero_divisor = all.iter().any(|b| !ring.is_zero(b) && ring.is_zero(&ring.mul(a, b)));
            let mut in_union = false;
            for (p, _) in &self.pairs {
                in_union |= p.contains(a)?;
            }
            if zero_divisor != in_union {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(v: &[u64]) -> Vec<Elem> {
        v.iter().map(|&r| Elem::Res(r)).collect()
    }

    #[test]
    fn twelve() {
        let f = composition_series(&RingSpec::Zmod(12)).unwrap();
        let gens: Vec<Elem> = f.ideals.iter().map(|i| i.generators[0].clone()).collect();
        assert_eq!(gens, res(&[1, 2, 4, 0]));
        let ps: Vec<Elem> = f.primes.iter().map(|i| i.generators[0].clone()).collect();
        assert_eq!(ps, res(&[2, 2, 3]));
        assert_eq!(f.gens, res(&[1, 2, 4]));
        assert!(f.check_exhaustive().unwrap());
    }

    #[test]
    fn small_cases() {
        let f = composition_series(&RingSpec::Zmod(4)).unwrap();
        assert_eq!(f.gens, res(&[1, 2]));
        let z = composition_series(&RingSpec::Zmod(1)).unwrap();
        assert_eq!(z.ideals.len(), 1);
        assert!(z.primes.is_empty());
        assert!(z.check_exhaustive().unwrap());
        for n in 1..=36 {
            let f = composition_series(&RingSpec::Zmod(n)).unwrap();
            let omega: u32 = factor(n).iter().map(|(_, e)| e).sum();
            assert_eq!(f.primes.len(), omega as usize);
            assert!(f.check_exhaustive().unwrap(), "n={n}");
        }
    }

    #[test]
    fn associated() {
        let a = associated_primes(&RingSpec::Zmod(12)).unwrap();
        let pairs: Vec<(Elem, Elem)> =
            a.pairs.iter().map(|(p, al)| (p.generators[0].clone(), al.clone())).collect();
        assert_eq!(pairs, vec![(Elem::Res(2), Elem::Res(6)), (Elem::Res(3), Elem::Res(4))]);
        for n in 2..=36 {
            assert!(associated_primes(&RingSpec::Zmod(n)).unwrap().check_exhaustive().unwrap());
        }
        assert!(associated_primes(&RingSpec::Zmod(1)).is_err());
    }
}
