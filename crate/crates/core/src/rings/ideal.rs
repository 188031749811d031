//! Finitely generated ideals with exact membership and quotients.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::hom::{HomAction, RingHom};
use super::numtheory::{gcd_u64, is_prime};
use super::{fpoly, res_vec, Elem, RingSpec};
use crate::error::{Error, Result};

/// Largest finite ring for which the exhaustive span fallback is used.
const FINITE_SCAN_LIMIT: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    PrincipalGcd,
    PolyDivision,
    QuotientMap { hom: RingHom },
    FiniteScan,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ideal {
    pub ring: RingSpec,
    pub generators: Vec<Elem>,
    pub strategy: Strategy,
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.ring.encode(g)).collect();
        write!(f, "({})", gens.join("; "))
    }
}

impl Ideal {
    /// Ideal with an automatically selected membership strategy.
    pub fn new(ring: RingSpec, generators: Vec<Elem>) -> Result<Ideal> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("ideal needs at least one generator".into()));
        }
        for g in &generators {
            ring.check(g)?;
        }
        let strategy = match &ring {
            RingSpec::Int | RingSpec::Zmod(_) | RingSpec::PrimeField(_) => Strategy::PrincipalGcd,
            RingSpec::Poly { base, .. } if is_prime(base.modulus().unwrap_or(0)) => {
                Strategy::PolyDivision
            }
            r if r.cardinality().is_some_and(|c| c <= FINITE_SCAN_LIMIT) => Strategy::FiniteScan,
            r => return Err(Error::UnsupportedStrategy(r.to_string())),
        };
        Ok(Ideal { ring, generators, strategy })
    }

    pub fn principal(ring: RingSpec, g: Elem) -> Result<Ideal> {
        Ideal::new(ring, vec![g])
    }

    /// Parse generators given as `;`-separated element encodings.
    pub fn parse(ring: RingSpec, text: &str) -> Result<Ideal> {
        let gens = text
            .split(';')
            .map(|g| ring.decode(g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// The ideal `(gens of p, x - c)` of `B = A[x]/(f)`, which is the kernel of
    /// `B -> A/p, x -> c` whenever `f(c)` lies in `p`.
    pub fn ext_point(ext: &RingSpec, base_ideal: &Ideal, c: &Elem) -> Result<Ideal> {
        let RingSpec::MonicExt { base, coeffs } = ext else {
            return Err(Error::InvalidArgument(format!("{ext} is not a monic extension")));
        };
        if **base != base_ideal.ring {
            return Err(Error::InvalidArgument("base ideal lives in another ring".into()));
        }
        // f(c) = c^d + sum c_i c^i
        let d = coeffs.len() as u32;
        let mut fc = base.pow(c, d);
        for (i, ci) in coeffs.iter().enumerate() {
            fc = base.add(&fc, &base.mul(ci, &base.pow(c, i as u32)));
        }
        if !base_ideal.contains(&fc)? {
            return Err(Error::InvalidArgument(format!(
                "{} is not a root of the defining polynomial modulo {base_ideal}",
                base.encode(c)
            )));
        }
        let (quot, pi) = base_ideal.quotient()?;
        let embed = |e: &Elem| {
            let mut v = vec![base.zero(); coeffs.len()];
            v[0] = e.clone();
            Elem::Seq(v)
        };
        let mut generators: Vec<Elem> = base_ideal.generators.iter().map(embed).collect();
        let x = ext.generator().expect("extension generator");
        generators.push(ext.sub(&x, &embed(c)));
        let root = pi.apply(c);
        let hom = RingHom {
            source: ext.clone(),
            target: quot,
            action: HomAction::ExtEval { base: Box::new(pi), root },
        };
        Ok(Ideal { ring: ext.clone(), generators, strategy: Strategy::QuotientMap { hom } })
    }

    pub fn contains(&self, a: &Elem) -> Result<bool> {
        self.ring.check(a)?;
        match &self.strategy {
            Strategy::PrincipalGcd | Strategy::PolyDivision => self
                .ring
                .ideal_contains(&self.generators, a)
                .ok_or_else(|| Error::UnsupportedStrategy(self.ring.to_string())),
            Strategy::QuotientMap { hom } => Ok(hom.target.is_zero(&hom.apply(a))),
            Strategy::FiniteScan => Ok(self.span()?.contains(a)),
        }
    }

    /// All elements of the ideal, for finite rings.
    pub fn span(&self) -> Result<BTreeSet<Elem>> {
        if !self.ring.cardinality().is_some_and(|c| c <= FINITE_SCAN_LIMIT) {
            return Err(Error::NotFinite(self.ring.to_string()));
        }
        let ring = &self.ring;
        let all = ring.enumerate(0);
        let mut span: BTreeSet<Elem> = BTreeSet::from([ring.zero()]);
        for g in &self.generators {
            let multiples: BTreeSet<Elem> = all.iter().map(|r| ring.mul(r, g)).collect();
            let mut next = BTreeSet::new();
            for s in &span {
                for m in &multiples {
                    next.insert(ring.add(s, m));
                }
            }
            span = next;
        }
        Ok(span)
    }

    /// Principal generator for `Int`/`Zmod` ideals: the nonnegative gcd (with `n` in `Z/n`).
    pub fn gcd_generator(&self) -> Option<BigInt> {
        match &self.ring {
            RingSpec::Int => Some(
                self.generators
                    .iter()
                    .fold(BigInt::zero(), |acc, g| acc.gcd(g.as_int().expect("int")))
                    .abs(),
            ),
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => Some(BigInt::from(
                self.generators.iter().fold(*n, |acc, g| gcd_u64(acc, g.as_res().expect("res"))),
            )),
            _ => None,
        }
    }

    /// Monic gcd generator of an ideal of `F_p[X]` (empty for the zero ideal).
    pub fn poly_generator(&self) -> Option<Vec<u64>> {
        let RingSpec::Poly { base, .. } = &self.ring else { return None };
        let p = base.modulus()?;
        if !is_prime(p) {
            return None;
        }
        Some(self.generators.iter().fold(Vec::new(), |acc, g| fpoly::gcd(&acc, &res_vec(g), p)))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| self.ring.is_zero(g))
    }

    /// Exact primality certificate; `None` when undecided.
    pub fn is_prime(&self) -> Option<bool> {
        match &self.strategy {
            Strategy::PrincipalGcd => {
                let g = self.gcd_generator()?;
                match &self.ring {
                    RingSpec::Int => {
                        if g.is_zero() {
                            Some(true)
                        } else {
                            Some(g.to_u64().is_some_and(is_prime))
                        }
                    }
                    _ => Some(g.to_u64().is_some_and(is_prime)),
                }
            }
            Strategy::PolyDivision => {
                let g = self.poly_generator()?;
                let p = self.ring.poly_modulus();
                Some(g.is_empty() || fpoly::is_irreducible(&g, p))
            }
            Strategy::QuotientMap { hom } => {
                if hom.target.is_zero_ring() {
                    Some(false)
                } else {
                    hom.target.is_domain()
                }
            }
            Strategy::FiniteScan => {
                let span = self.span().ok()?;
                let ring = &self.ring;
                if span.contains(&ring.one()) {
                    return Some(false);
                }
                let all = ring.enumerate(0);
                Some(all.iter().all(|a| {
                    span.contains(a)
                        || all.iter().all(|b| span.contains(b) || !span.contains(&ring.mul(a, b)))
                }))
            }
        }
    }

    /// Quotient ring and canonical projection with section.
    pub fn quotient(&self) -> Result<(RingSpec, RingHom)> {
        let unsupported = || Error::UnsupportedQuotient(format!("{} / {self}", self.ring));
        let target = match (&self.ring, &self.strategy) {
            (_, Strategy::QuotientMap { hom }) => return Ok((hom.target.clone(), hom.clone())),
            (RingSpec::Int, _) => {
                let g = self.gcd_generator().expect("int ideal");
                if g.is_zero() {
                    return Err(unsupported());
                }
                RingSpec::Zmod(g.to_u64().ok_or_else(unsupported)?)
            }
            (RingSpec::Zmod(_), _) => {
                RingSpec::Zmod(self.gcd_generator().and_then(|g| g.to_u64()).expect("divisor"))
            }
            (RingSpec::Poly { base, .. }, Strategy::PolyDivision) => {
                let g = self.poly_generator().expect("poly ideal");
                let p = base.modulus().expect("residue base");
                let (target, action) = match g.len() {
                    0 | 1 => return Err(unsupported()),
                    2 => {
                        // X + g0 vanishes at -g0
                        let point = Elem::Res((p - g[0]) % p);
                        ((**base).clone(), HomAction::PolyEval { point })
                    }
                    _ => {
                        let coeffs = g[..g.len() - 1].iter().map(|&c| Elem::Res(c)).collect();
                        (RingSpec::monic_extension((**base).clone(), coeffs)?, HomAction::PolyReduce)
                    }
                };
                return Ok((
                    target.clone(),
                    RingHom { source: self.ring.clone(), target, action },
                ));
            }
            _ => return Err(unsupported()),
        };
        Ok((
            target.clone(),
            RingHom { source: self.ring.clone(), target, action: HomAction::ReduceMod },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_ideal(n: u64, gens: &[u64]) -> Ideal {
        Ideal::new(RingSpec::Zmod(n), gens.iter().map(|&g| Elem::Res(g)).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let i = Ideal::new(RingSpec::Int, vec![Elem::int(2), Elem::int(3)]).unwrap();
        assert!(i.contains(&Elem::int(1)).unwrap());
        assert!(!zmod_ideal(12, &[2]).contains(&Elem::Res(7)).unwrap());
        let b: RingSpec = "monicext:int:[5,1]".parse().unwrap();
        let p5 = Ideal::principal(RingSpec::Int, Elem::int(5)).unwrap();
        let q = Ideal::ext_point(&b, &p5, &Elem::int(0)).unwrap();
        assert!(q.contains(&b.decode("[10,3]").unwrap()).unwrap());
        assert!(!q.contains(&b.decode("[1,0]").unwrap()).unwrap());
        assert_eq!(q.is_prime(), Some(true));
        let (quot, _) = q.quotient().unwrap();
        assert_eq!(quot, RingSpec::Zmod(5));
    }

    #[test]
    fn ext_point_requires_root() {
        let b: RingSpec = "monicext:int:[5,1]".parse().unwrap();
        let p5 = Ideal::principal(RingSpec::Int, Elem::int(5)).unwrap();
        assert!(Ideal::ext_point(&b, &p5, &Elem::int(1)).is_err());
        assert!(Ideal::ext_point(&b, &p5, &Elem::int(-1)).is_ok());
    }

    #[test]
    fn gcd_strategy_matches_scan() {
        for n in 1..=36u64 {
            for g in 0..n {
                let fast = zmod_ideal(n, &[g]);
                let slow = Ideal { strategy: Strategy::FiniteScan, ..fast.clone() };
                for a in 0..n {
                    assert_eq!(
                        fast.contains(&Elem::Res(a)).unwrap(),
                        slow.contains(&Elem::Res(a)).unwrap()
                    );
                }
                assert_eq!(fast.is_prime(), slow.is_prime(), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn primality() {
        let int = |v: i64| Ideal::principal(RingSpec::Int, Elem::int(v)).unwrap();
        assert_eq!(int(7).is_prime(), Some(true));
        assert_eq!(int(6).is_prime(), Some(false));
        assert_eq!(int(1).is_prime(), Some(false));
        let r: RingSpec = "poly:gfp:3:X".parse().unwrap();
        let irr = Ideal::principal(r.clone(), r.decode("1,0,1").unwrap()).unwrap();
        assert_eq!(irr.is_prime(), Some(true));
        let red = Ideal::principal(r.clone(), r.decode("2,0,1").unwrap()).unwrap();
        assert_eq!(red.is_prime(), Some(false));
    }

    #[test]
    fn quotients() {
        let (q, pi) = Ideal::principal(RingSpec::Int, Elem::int(5)).unwrap().quotient().unwrap();
        assert_eq!(q, RingSpec::Zmod(5));
        assert_eq!(pi.apply(&Elem::int(-1)), Elem::Res(4));
        assert_eq!(pi.section(&Elem::Res(4)), Elem::int(4));
        let (q, _) = zmod_ideal(12, &[2]).quotient().unwrap();
        assert_eq!(q, RingSpec::Zmod(2));
        let r: RingSpec = "poly:gfp:5:X".parse().unwrap();
        let (q, pi) = Ideal::principal(r.clone(), r.decode("4,1").unwrap()).unwrap().quotient().unwrap();
        assert_eq!(q, RingSpec::PrimeField(5));
        assert_eq!(pi.apply(&r.decode("0,1").unwrap()), Elem::Res(1));
        let (q, pi) = Ideal::principal(r.clone(), r.decode("2,0,1").unwrap()).unwrap().quotient().unwrap();
        assert_eq!(q.to_string(), "monicext:gfp:5:[2,0]");
        assert_eq!(pi.apply(&r.decode("0,0,1").unwrap()), q.decode("[3,0]").unwrap());
    }
}
