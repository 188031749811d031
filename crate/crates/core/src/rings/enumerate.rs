//! Heights and height-graded enumeration.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Elem, RingSpec};

impl RingSpec {
    /// Size measure driving bounded search: `|v|` for integers, 0 for residues,
    /// degree for polynomials (0 for the zero polynomial), max over coordinates
    /// for extensions and products.
    pub fn height(&self, a: &Elem) -> u64 {
        match (self, a) {
            (RingSpec::Int, Elem::Int(v)) => v.abs().to_u64().unwrap_or(u64::MAX),
            (RingSpec::Zmod(_) | RingSpec::PrimeField(_), _) => 0,
            (RingSpec::Poly { .. }, Elem::Seq(cs)) => cs.len().saturating_sub(1) as u64,
            (RingSpec::MonicExt { base, .. }, Elem::Seq(cs)) => {
                cs.iter().map(|c| base.height(c)).max().unwrap_or(0)
            }
            (RingSpec::Product(l, r), Elem::Seq(cs)) => l.height(&cs[0]).max(r.height(&cs[1])),
            _ => panic!("encoding mismatch: {a:?} is not an element of {self}"),
        }
    }

    /// Elements of height at most `h` in canonical order: layers of exact height
    /// `0, 1, ..., h`, each layer in the order given by [`RingSpec::enumerate_layer`].
    pub fn enumerate(&self, h: u64) -> Vec<Elem> {
        let top = if self.is_finite() { 0 } else { h };
        (0..=top).flat_map(|k| self.enumerate_layer(k)).collect()
    }

    /// Elements of height exactly `k`.
    ///
    /// Integers: `k, -k` (just `0` for `k = 0`). Polynomials: all of exact degree `k`
    /// (plus the zero polynomial at `k = 0`), lexicographic in `c_0, c_1, ...`.
    /// Tuples: lexicographic in the coordinates' own canonical orders, coordinate 0
    /// most significant, restricted to tuples whose maximal coordinate height is `k`.
    pub fn enumerate_layer(&self, k: u64) -> Vec<Elem> {
        match self {
            RingSpec::Int => {
                if k == 0 {
                    vec![Elem::Int(BigInt::from(0))]
                } else {
                    vec![Elem::Int(BigInt::from(k)), Elem::Int(-BigInt::from(k))]
                }
            }
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => {
                if k == 0 {
                    (0..*n).map(Elem::Res).collect()
                } else {
                    Vec::new()
                }
            }
            RingSpec::Poly { base, .. } => {
                let n = base.modulus().expect("residue base");
                if n == 1 {
                    return if k == 0 { vec![Elem::Seq(Vec::new())] } else { Vec::new() };
                }
                let mut out = Vec::new();
                if k == 0 {
                    out.push(Elem::Seq(Vec::new()));
                }
                let lower = lex_product(&vec![(0..n).collect::<Vec<u64>>(); k as usize]);
                for low in lower {
                    for lead in 1..n {
                        let mut cs: Vec<Elem> = low.iter().map(|&c| Elem::Res(c)).collect();
                        cs.push(Elem::Res(lead));
                        out.push(Elem::Seq(cs));
                    }
                }
                // lex with c_0 most significant: sort the (low..., lead) tuples
                out.sort_by(|a, b| poly_lex(a, b));
                out
            }
            RingSpec::MonicExt { base, coeffs } => {
                let comps: Vec<&RingSpec> = vec![base.as_ref(); coeffs.len()];
                tuple_layer(&comps, k)
            }
            RingSpec::Product(l, r) => tuple_layer(&[l.as_ref(), r.as_ref()], k),
        }
    }
}

fn poly_lex(a: &Elem, b: &Elem) -> std::cmp::Ordering {
    let (Elem::Seq(x), Elem::Seq(y)) = (a, b) else { unreachable!() };
    let len = x.len().max(y.len());
    let get = |v: &[Elem], i: usize| v.get(i).and_then(Elem::as_res).unwrap_or(0);
    (0..len).map(|i| get(x, i).cmp(&get(y, i))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn lex_product<T: Clone>(sets: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::with_capacity(out.len() * s.len());
        for prefix in &out {
            for x in s {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn tuple_layer(comps: &[&RingSpec], k: u64) -> Vec<Elem> {
    let sets: Vec<Vec<Elem>> = comps.iter().map(|c| c.enumerate(k)).collect();
    lex_product(&sets)
        .into_iter()
        .filter(|t| t.iter().zip(comps).map(|(e, c)| c.height(e)).max().unwrap_or(0) == k)
        .map(Elem::Seq)
        .collect()
}
