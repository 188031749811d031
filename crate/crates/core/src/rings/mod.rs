//! Computable commutative rings with canonical element encodings.
//!
//! A [`RingSpec`] describes the ring; an [`Elem`] is a canonical encoding of one of
//! its elements. Arithmetic methods on `RingSpec` assume their arguments are valid
//! encodings for that spec (use [`RingSpec::check`] or [`RingSpec::arith`] at trust
//! boundaries) and always return canonical results.

mod encode;
mod enumerate;
pub mod fpoly;
pub mod hom;
pub mod ideal;
pub mod intpoly;
pub mod numtheory;
pub mod structure;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use numtheory::{gcd_u64, inv_mod, is_prime, mul_mod, reduce_big};

pub use hom::{HomAction, RingHom};
pub use ideal::{Ideal, Strategy};
pub use structure::{associated_primes, composition_series, AssociatedPrimesData, FiltrationData};

/// Canonical element encoding.
///
/// * `Int` for the integers.
/// * `Res(r)` for residues `0 <= r < n` of `Zmod(n)` and `PrimeField(p)`.
/// * `Seq` for polynomial coefficient lists (low to high, no trailing zeros),
///   coordinate vectors of monic extensions, and pairs of a product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Res(u64),
    Seq(Vec<Elem>),
}

impl Elem {
    pub fn int(v: impl Into<BigInt>) -> Elem {
        Elem::Int(v.into())
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_res(&self) -> Option<u64> {
        match self {
            Elem::Res(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Elem]> {
        match self {
            Elem::Seq(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Int,
    /// `Z/n`; `n = 1` is the zero ring.
    Zmod(u64),
    PrimeField(u64),
    /// Univariate polynomials over a finite `Zmod`/`PrimeField` base.
    Poly { base: Box<RingSpec>, var: String },
    /// `base[X]/(X^d + c_{d-1} X^{d-1} + ... + c_0)` with `coeffs = [c_0, ..., c_{d-1}]`.
    MonicExt { base: Box<RingSpec>, coeffs: Vec<Elem> },
    Product(Box<RingSpec>, Box<RingSpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Eq,
    Zero,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Elem(Elem),
    Bool(bool),
}

/// Outcome of solving `a * v = b` for `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolve {
    /// At most one solution; `None` when there is none.
    Unique(Option<Elem>),
    /// Possibly several solutions (or the ring cannot decide cheaply).
    Ambiguous,
}

impl RingSpec {
    pub fn zmod(n: u64) -> Result<RingSpec> {
        if n == 0 {
            return Err(Error::InvalidRingSpec("zmod:0".into()));
        }
        Ok(RingSpec::Zmod(n))
    }

    pub fn prime_field(p: u64) -> Result<RingSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidRingSpec(format!("gfp:{p} (not prime)")));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn poly(base: RingSpec, var: &str) -> Result<RingSpec> {
        match base {
            RingSpec::Zmod(_) | RingSpec::PrimeField(_) => {}
            _ => return Err(Error::InvalidRingSpec(format!("poly over {base}"))),
        }
        if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::InvalidRingSpec(format!("poly variable `{var}`")));
        }
        Ok(RingSpec::Poly { base: Box::new(base), var: var.to_string() })
    }

    /// `base[X]/(X^d + c_{d-1}X^{d-1} + ... + c_0)`.
    pub fn monic_extension(base: RingSpec, coeffs: Vec<Elem>) -> Result<RingSpec> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        for c in &coeffs {
            base.check(c)?;
        }
        Ok(RingSpec::MonicExt { base: Box::new(base), coeffs })
    }

    pub fn product(left: RingSpec, right: RingSpec) -> RingSpec {
        RingSpec::Product(Box::new(left), Box::new(right))
    }

    /// Modulus of a residue ring (`Zmod`/`PrimeField`).
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => Some(*n),
            _ => None,
        }
    }

    /// Modulus of the coefficient ring of a `Poly` spec.
    fn poly_modulus(&self) -> u64 {
        match self {
            RingSpec::Poly { base, .. } => base.modulus().expect("poly base is a residue ring"),
            _ => panic!("not a polynomial ring: {self}"),
        }
    }

    /// The extension degree `d` of a `MonicExt`.
    pub fn ext_degree(&self) -> Option<usize> {
        match self {
            RingSpec::MonicExt { coeffs, .. } => Some(coeffs.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingSpec::Int | RingSpec::Poly { .. } => false,
            RingSpec::Zmod(_) | RingSpec::PrimeField(_) => true,
            RingSpec::MonicExt { base, .. } => base.is_finite(),
            RingSpec::Product(a, b) => a.is_finite() && b.is_finite(),
        }
    }

    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingSpec::Int | RingSpec::Poly { .. } => None,
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => Some(*n as u128),
            RingSpec::MonicExt { base, coeffs } => {
                base.cardinality()?.checked_pow(coeffs.len() as u32)
            }
            RingSpec::Product(a, b) => a.cardinality()?.checked_mul(b.cardinality()?),
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.cardinality() == Some(1)
    }

    pub fn zero(&self) -> Elem {
        match self {
            RingSpec::Int => Elem::Int(BigInt::zero()),
            RingSpec::Zmod(_) | RingSpec::PrimeField(_) => Elem::Res(0),
            RingSpec::Poly { .. } => Elem::Seq(Vec::new()),
            RingSpec::MonicExt { base, coeffs } => Elem::Seq(vec![base.zero(); coeffs.len()]),
            RingSpec::Product(a, b) => Elem::Seq(vec![a.zero(), b.zero()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_int(&BigInt::from(v))
    }

    /// Image of an integer under the unique ring map from the integers.
    pub fn from_int(&self, v: &BigInt) -> Elem {
        match self {
            RingSpec::Int => Elem::Int(v.clone()),
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => Elem::Res(reduce_big(v, *n)),
            RingSpec::Poly { .. } => {
                let c = reduce_big(v, self.poly_modulus());
                Elem::Seq(fpoly::trim(vec![c]).into_iter().map(Elem::Res).collect())
            }
            RingSpec::MonicExt { base, coeffs } => {
                let mut coords = vec![base.zero(); coeffs.len()];
                coords[0] = base.from_int(v);
                Elem::Seq(coords)
            }
            RingSpec::Product(a, b) => Elem::Seq(vec![a.from_int(v), b.from_int(v)]),
        }
    }

    /// The class of the generator `X` of a `MonicExt` or `Poly` ring.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            RingSpec::Poly { .. } => {
                if self.poly_modulus() == 1 {
                    Some(Elem::Seq(Vec::new()))
                } else {
                    Some(Elem::Seq(vec![Elem::Res(0), Elem::Res(1)]))
                }
            }
            RingSpec::MonicExt { base, coeffs } => {
                let d = coeffs.len();
                let mut x = vec![base.zero(); d];
                if d >= 2 {
                    x[1] = base.one();
                } else {
                    x[0] = base.neg(&coeffs[0]);
                }
                Some(Elem::Seq(x))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        *a == self.zero()
    }

    /// Validate that `a` is a canonical encoding for this spec.
    pub fn check(&self, a: &Elem) -> Result<()> {
        let ok = match (self, a) {
            (RingSpec::Int, Elem::Int(_)) => true,
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(r)) => r < n,
            (RingSpec::Poly { .. }, Elem::Seq(cs)) => {
                let n = self.poly_modulus();
                cs.last() != Some(&Elem::Res(0))
                    && cs.iter().all(|c| matches!(c, Elem::Res(r) if *r < n))
            }
            (RingSpec::MonicExt { base, coeffs }, Elem::Seq(cs)) => {
                cs.len() == coeffs.len() && cs.iter().all(|c| base.check(c).is_ok())
            }
            (RingSpec::Product(l, r), Elem::Seq(cs)) => {
                cs.len() == 2 && l.check(&cs[0]).is_ok() && r.check(&cs[1]).is_ok()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::EncodingMismatch { ring: self.to_string(), encoding: format!("{a:?}") })
        }
    }

    /// Checked arithmetic entry point.
    pub fn arith(&self, op: ArithOp, args: &[Elem]) -> Result<ArithValue> {
        for a in args {
            self.check(a)?;
        }
        let arity = match op {
            ArithOp::Zero | ArithOp::One => 0,
            ArithOp::Neg => 1,
            ArithOp::Add | ArithOp::Mul | ArithOp::Eq => 2,
        };
        if args.len() != arity {
            return Err(Error::InvalidArgument(format!("{op:?} takes {arity} arguments")));
        }
        Ok(match op {
            ArithOp::Add => ArithValue::Elem(self.add(&args[0], &args[1])),
            ArithOp::Mul => ArithValue::Elem(self.mul(&args[0], &args[1])),
            ArithOp::Neg => ArithValue::Elem(self.neg(&args[0])),
            ArithOp::Eq => ArithValue::Bool(args[0] == args[1]),
            ArithOp::Zero => ArithValue::Elem(self.zero()),
            ArithOp::One => ArithValue::Elem(self.one()),
        })
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (RingSpec::Int, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (RingSpec::Poly { .. }, Elem::Seq(_), Elem::Seq(_)) => {
                let n = self.poly_modulus();
                res_seq(fpoly::add(&res_vec(a), &res_vec(b), n))
            }
            (RingSpec::MonicExt { base, .. }, Elem::Seq(x), Elem::Seq(y)) => {
                Elem::Seq(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            (RingSpec::Product(l, r), Elem::Seq(x), Elem::Seq(y)) => {
                Elem::Seq(vec![l.add(&x[0], &y[0]), r.add(&x[1], &y[1])])
            }
            _ => mismatch(self, a),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (RingSpec::Int, Elem::Int(x)) => Elem::Int(-x),
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(x)) => Elem::Res((n - x) % n),
            (RingSpec::Poly { .. }, Elem::Seq(_)) => {
                res_seq(fpoly::neg(&res_vec(a), self.poly_modulus()))
            }
            (RingSpec::MonicExt { base, .. }, Elem::Seq(x)) => {
                Elem::Seq(x.iter().map(|u| base.neg(u)).collect())
            }
            (RingSpec::Product(l, r), Elem::Seq(x)) => Elem::Seq(vec![l.neg(&x[0]), r.neg(&x[1])]),
            _ => mismatch(self, a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (RingSpec::Int, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(mul_mod(*x, *y, *n))
            }
            (RingSpec::Poly { .. }, Elem::Seq(_), Elem::Seq(_)) => {
                res_seq(fpoly::mul(&res_vec(a), &res_vec(b), self.poly_modulus()))
            }
            (RingSpec::MonicExt { base, coeffs }, Elem::Seq(x), Elem::Seq(y)) => {
                Elem::Seq(ext_mul(base, coeffs, x, y))
            }
            (RingSpec::Product(l, r), Elem::Seq(x), Elem::Seq(y)) => {
                Elem::Seq(vec![l.mul(&x[0], &y[0]), r.mul(&x[1], &y[1])])
            }
            _ => mismatch(self, a),
        }
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Structure constants of a `MonicExt`: entry `[i][j]` holds the coordinates
    /// of `x^i * x^j` in the basis `1, x, ..., x^{d-1}`.
    pub fn structure_constants(&self) -> Option<Vec<Vec<Vec<Elem>>>> {
        let RingSpec::MonicExt { base, coeffs } = self else {
            return None;
        };
        let d = coeffs.len();
        let basis: Vec<Vec<Elem>> = (0..d)
            .map(|i| (0..d).map(|k| if k == i { base.one() } else { base.zero() }).collect())
            .collect();
        Some(
            (0..d)
                .map(|i| (0..d).map(|j| ext_mul(base, coeffs, &basis[i], &basis[j])).collect())
                .collect(),
        )
    }

    /// Multiplicative inverse, when it exists and can be computed.
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (RingSpec::Int, Elem::Int(x)) => {
                if x.abs().is_one() {
                    Some(Elem::Int(x.clone()))
                } else {
                    None
                }
            }
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(x)) => {
                inv_mod(*x, *n).map(Elem::Res)
            }
            (RingSpec::Poly { .. }, Elem::Seq(cs)) => {
                let n = self.poly_modulus();
                if n == 1 {
                    return Some(Elem::Seq(Vec::new()));
                }
                match cs.as_slice() {
                    [Elem::Res(c)] => inv_mod(*c, n).map(|i| Elem::Seq(vec![Elem::Res(i)])),
                    _ => None,
                }
            }
            (RingSpec::MonicExt { .. }, _) => match self.solve_linear(a, &self.one()) {
                LinearSolve::Unique(v) => v,
                LinearSolve::Ambiguous => None,
            },
            (RingSpec::Product(l, r), Elem::Seq(x)) => {
                Some(Elem::Seq(vec![l.inverse(&x[0])?, r.inverse(&x[1])?]))
            }
            _ => None,
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Solve `a * v = b`.
    pub fn solve_linear(&self, a: &Elem, b: &Elem) -> LinearSolve {
        let none_unless_zero = |ring: &RingSpec| {
            if ring.is_zero(b) {
                LinearSolve::Ambiguous
            } else {
                LinearSolve::Unique(None)
            }
        };
        match (self, a, b) {
            (RingSpec::Int, Elem::Int(x), Elem::Int(y)) => {
                if x.is_zero() {
                    return none_unless_zero(self);
                }
                let (q, r) = y.div_rem(x);
                LinearSolve::Unique(if r.is_zero() { Some(Elem::Int(q)) } else { None })
            }
            (RingSpec::Zmod(n) | RingSpec::PrimeField(n), Elem::Res(x), Elem::Res(y)) => {
                let g = gcd_u64(*x, *n);
                if y % g != 0 {
                    LinearSolve::Unique(None)
                } else if g == 1 {
                    let inv = inv_mod(*x, *n).expect("unit");
                    LinearSolve::Unique(Some(Elem::Res(mul_mod(inv, *y, *n))))
                } else {
                    LinearSolve::Ambiguous
                }
            }
            (RingSpec::Poly { .. }, Elem::Seq(_), Elem::Seq(_)) => {
                if self.is_zero(a) {
                    return none_unless_zero(self);
                }
                let n = self.poly_modulus();
                match fpoly::divrem(&res_vec(b), &res_vec(a), n) {
                    Some((q, r)) if is_prime(n) => {
                        LinearSolve::Unique(if r.is_empty() { Some(res_seq(q)) } else { None })
                    }
                    _ => LinearSolve::Ambiguous,
                }
            }
            (RingSpec::MonicExt { base, .. }, Elem::Seq(_), Elem::Seq(y)) => {
                if self.is_zero(a) {
                    return none_unless_zero(self);
                }
                let matrix = self.mult_matrix(a);
                match base.as_ref() {
                    RingSpec::Int => solve_int_system(&matrix, y),
                    RingSpec::PrimeField(p) => solve_fp_system(&matrix, y, *p),
                    RingSpec::Zmod(p) if is_prime(*p) => solve_fp_system(&matrix, y, *p),
                    _ => LinearSolve::Ambiguous,
                }
            }
            (RingSpec::Product(l, r), Elem::Seq(x), Elem::Seq(y)) => {
                match (l.solve_linear(&x[0], &y[0]), r.solve_linear(&x[1], &y[1])) {
                    (LinearSolve::Unique(None), _) | (_, LinearSolve::Unique(None)) => {
                        LinearSolve::Unique(None)
                    }
                    (LinearSolve::Unique(Some(u)), LinearSolve::Unique(Some(v))) => {
                        LinearSolve::Unique(Some(Elem::Seq(vec![u, v])))
                    }
                    _ => LinearSolve::Ambiguous,
                }
            }
            _ => mismatch(self, a),
        }
    }

    /// Matrix of multiplication by `a` on a `MonicExt`, column `j` = coords of `a * x^j`.
    fn mult_matrix(&self, a: &Elem) -> Vec<Vec<Elem>> {
        let RingSpec::MonicExt { base, coeffs } = self else {
            panic!("not a monic extension");
        };
        let d = coeffs.len();
        let Elem::Seq(ac) = a else { mismatch(self, a) };
        let cols: Vec<Vec<Elem>> = (0..d)
            .map(|j| {
                let e: Vec<Elem> =
                    (0..d).map(|k| if k == j { base.one() } else { base.zero() }).collect();
                ext_mul(base, coeffs, ac, &e)
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Solve `sum a_i * v_i = b`. `Some(None)` means no solution; `None` means
    /// this ring has no cheap exact method.
    pub fn solve_combination(&self, a: &[Elem], b: &Elem) -> Option<Option<Vec<Elem>>> {
        match self {
            RingSpec::Int => {
                let ints: Vec<BigInt> = a.iter().map(|e| e.as_int().expect("int").clone()).collect();
                let b = b.as_int().expect("int");
                Some(int_combination(&ints, b).map(|v| v.into_iter().map(Elem::Int).collect()))
            }
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => {
                let mut ints: Vec<BigInt> = a.iter().map(|e| BigInt::from(e.as_res().expect("res"))).collect();
                ints.push(BigInt::from(*n));
                let b = BigInt::from(b.as_res().expect("res"));
                Some(int_combination(&ints, &b).map(|mut v| {
                    v.pop();
                    v.iter().map(|x| Elem::Res(reduce_big(x, *n))).collect()
                }))
            }
            RingSpec::Poly { .. } => {
                let p = self.poly_modulus();
                if !is_prime(p) {
                    return self.solve_by_one(a, b);
                }
                let mut g: Vec<u64> = Vec::new();
                let mut us: Vec<Vec<u64>> = Vec::new();
                for e in a {
                    let (g2, x, y) = fpoly::ext_gcd(&g, &res_vec(e), p);
                    for u in us.iter_mut() {
                        *u = fpoly::mul(u, &x, p);
                    }
                    us.push(y);
                    g = g2;
                }
                let bv = res_vec(b);
                if g.is_empty() {
                    return Some(bv.is_empty().then(|| vec![self.zero(); a.len()]));
                }
                match fpoly::divrem(&bv, &g, p).expect("monic gcd") {
                    (q, r) if r.is_empty() => {
                        Some(Some(us.iter().map(|u| res_seq(fpoly::mul(u, &q, p))).collect()))
                    }
                    _ => Some(None),
                }
            }
            RingSpec::Product(l, r) => {
                let split = |i: usize| -> Vec<Elem> { a.iter().map(|e| e.as_seq().expect("pair")[i].clone()).collect() };
                let bs = b.as_seq().expect("pair");
                let left = l.solve_combination(&split(0), &bs[0])?;
                let right = r.solve_combination(&split(1), &bs[1])?;
                Some(left.zip(right).map(|(x, y)| {
                    x.into_iter().zip(y).map(|(u, v)| Elem::Seq(vec![u, v])).collect()
                }))
            }
            RingSpec::MonicExt { .. } => self.solve_by_one(a, b),
        }
    }

    /// Put all weight on one coefficient that divides `b`.
    fn solve_by_one(&self, a: &[Elem], b: &Elem) -> Option<Option<Vec<Elem>>> {
        for (i, ai) in a.iter().enumerate() {
            if let LinearSolve::Unique(Some(x)) = self.solve_linear(ai, b) {
                let mut v = vec![self.zero(); a.len()];
                v[i] = x;
                return Some(Some(v));
            }
        }
        None
    }

    /// Decide whether `c` lies in the ideal generated by `gens`, when this ring
    /// supports a cheap exact test. Returns `None` when it does not.
    pub fn ideal_contains(&self, gens: &[Elem], c: &Elem) -> Option<bool> {
        match self {
            RingSpec::Int => {
                let g = gens
                    .iter()
                    .fold(BigInt::zero(), |acc, e| acc.gcd(e.as_int().expect("int")));
                let c = c.as_int().expect("int");
                Some(if g.is_zero() { c.is_zero() } else { (c % &g).is_zero() })
            }
            RingSpec::Zmod(n) | RingSpec::PrimeField(n) => {
                let g = gens.iter().fold(*n, |acc, e| gcd_u64(acc, e.as_res().expect("res")));
                Some(c.as_res().expect("res") % g == 0)
            }
            RingSpec::Poly { .. } => {
                let p = self.poly_modulus();
                if !is_prime(p) {
                    return None;
                }
                let g = gens.iter().fold(Vec::new(), |acc, e| fpoly::gcd(&acc, &res_vec(e), p));
                let cv = res_vec(c);
                Some(if g.is_empty() {
                    cv.is_empty()
                } else {
                    fpoly::divrem(&cv, &g, p).expect("monic gcd").1.is_empty()
                })
            }
            RingSpec::MonicExt { .. } => None,
            RingSpec::Product(l, r) => {
                let (lg, rg): (Vec<Elem>, Vec<Elem>) = gens
                    .iter()
                    .map(|e| {
                        let s = e.as_seq().expect("pair");
                        (s[0].clone(), s[1].clone())
                    })
                    .unzip();
                let s = c.as_seq().expect("pair");
                Some(l.ideal_contains(&lg, &s[0])? && r.ideal_contains(&rg, &s[1])?)
            }
        }
    }

    /// Whether the ring is an integral domain; `None` when undecided.
    pub fn is_domain(&self) -> Option<bool> {
        match self {
            RingSpec::Int | RingSpec::PrimeField(_) => Some(true),
            RingSpec::Zmod(n) => Some(is_prime(*n)),
            RingSpec::Poly { base, .. } => base.is_domain(),
            RingSpec::MonicExt { base, coeffs } => {
                if coeffs.len() == 1 {
                    return base.is_domain();
                }
                match base.as_ref() {
                    RingSpec::PrimeField(p) => Some(fpoly::is_irreducible(&ext_fp_poly(coeffs), *p)),
                    RingSpec::Zmod(p) if is_prime(*p) => {
                        Some(fpoly::is_irreducible(&ext_fp_poly(coeffs), *p))
                    }
                    RingSpec::Int if coeffs.len() <= 3 => {
                        let f = intpoly::IntPoly::monic_from_low(
                            coeffs.iter().map(|c| c.as_int().expect("int").clone()).collect(),
                        );
                        // degree <= 3: irreducible over Q iff no rational (hence integer) root
                        Some(f.integer_roots().is_empty())
                    }
                    RingSpec::Poly { base: k, .. } if coeffs.len() <= 3 && k.is_field() => {
                        // a root of a monic polynomial over k[X] has degree at most the
                        // largest coefficient degree; degree <= 3 and no root means
                        // irreducible over k(X), so k[X][x]/(f) embeds in a field
                        let bound = coeffs.iter().map(|c| base.height(c)).max().unwrap_or(0);
                        Some(base.enumerate(bound).iter().all(|r| {
                            let mut v = base.pow(r, coeffs.len() as u32);
                            for (i, c) in coeffs.iter().enumerate() {
                                v = base.add(&v, &base.mul(c, &base.pow(r, i as u32)));
                            }
                            !base.is_zero(&v)
                        }))
                    }
                    _ => None,
                }
            }
            RingSpec::Product(a, b) => {
                if a.is_zero_ring() {
                    b.is_domain()
                } else if b.is_zero_ring() {
                    a.is_domain()
                } else {
                    Some(false)
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::PrimeField(_) => true,
            RingSpec::Zmod(n) => is_prime(*n),
            RingSpec::MonicExt { base, .. } => base.is_field() && self.is_domain() == Some(true),
            _ => false,
        }
    }

    /// Variable name of a `Poly` ring.
    pub fn poly_var(&self) -> Option<&str> {
        match self {
            RingSpec::Poly { var, .. } => Some(var),
            _ => None,
        }
    }
}

fn ext_mul(base: &RingSpec, coeffs: &[Elem], x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let d = coeffs.len();
    let mut prod = vec![base.zero(); 2 * d - 1];
    for (i, u) in x.iter().enumerate() {
        if base.is_zero(u) {
            continue;
        }
        for (j, v) in y.iter().enumerate() {
            let t = base.mul(u, v);
            prod[i + j] = base.add(&prod[i + j], &t);
        }
    }
    for k in (d..2 * d - 1).rev() {
        let c = prod[k].clone();
        if base.is_zero(&c) {
            continue;
        }
        for (i, ci) in coeffs.iter().enumerate() {
            let t = base.mul(&c, ci);
            prod[k - d + i] = base.sub(&prod[k - d + i], &t);
        }
    }
    prod.truncate(d);
    prod
}

fn ext_fp_poly(coeffs: &[Elem]) -> Vec<u64> {
    let mut f: Vec<u64> = coeffs.iter().map(|c| c.as_res().expect("res")).collect();
    f.push(1);
    f
}

/// Integers `v` with `sum a_i v_i = b`, if any.
fn int_combination(a: &[BigInt], b: &BigInt) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    let mut us: Vec<BigInt> = Vec::with_capacity(a.len());
    for ai in a {
        let e = g.extended_gcd(ai);
        for u in us.iter_mut() {
            *u *= &e.x;
        }
        us.push(e.y);
        g = e.gcd;
    }
    if g.is_zero() {
        return b.is_zero().then(|| vec![BigInt::zero(); a.len()]);
    }
    let (q, r) = b.div_rem(&g);
    r.is_zero().then(|| us.into_iter().map(|u| u * &q).collect())
}

pub(crate) fn res_vec(a: &Elem) -> Vec<u64> {
    match a {
        Elem::Seq(cs) => cs.iter().map(|c| c.as_res().expect("residue coefficient")).collect(),
        _ => panic!("encoding mismatch: expected coefficient list, got {a:?}"),
    }
}

pub(crate) fn res_seq(v: Vec<u64>) -> Elem {
    Elem::Seq(v.into_iter().map(Elem::Res).collect())
}

fn mismatch(ring: &RingSpec, a: &Elem) -> ! {
    panic!("encoding mismatch: {a:?} is not an element of {ring}")
}

/// Bareiss fraction-free determinant.
fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn solve_int_system(m: &[Vec<Elem>], rhs: &[Elem]) -> LinearSolve {
    let mi: Vec<Vec<BigInt>> =
        m.iter().map(|row| row.iter().map(|e| e.as_int().unwrap().clone()).collect()).collect();
    let d = det_int(&mi);
    if d.is_zero() {
        return LinearSolve::Ambiguous;
    }
    let n = mi.len();
    let mut sol = Vec::with_capacity(n);
    for col in 0..n {
        let replaced: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if j == col { rhs[i].as_int().unwrap().clone() } else { mi[i][j].clone() })
                    .collect()
            })
            .collect();
        let (q, r) = det_int(&replaced).div_rem(&d);
        if !r.is_zero() {
            return LinearSolve::Unique(None);
        }
        sol.push(Elem::Int(q));
    }
    LinearSolve::Unique(Some(Elem::Seq(sol)))
}

fn solve_fp_system(m: &[Vec<Elem>], rhs: &[Elem], p: u64) -> LinearSolve {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = m[i].iter().map(|e| e.as_res().unwrap()).collect();
            row.push(rhs[i].as_res().unwrap());
            row
        })
        .collect();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return LinearSolve::Ambiguous;
        };
        a.swap(k, piv);
        let inv = inv_mod(a[k][k], p).expect("field");
        for v in a[k].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..n {
            if i != k && a[i][k] != 0 {
                let f = a[i][k];
                for j in 0..=n {
                    let t = mul_mod(f, a[k][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
    }
    LinearSolve::Unique(Some(Elem::Seq((0..n).map(|i| Elem::Res(a[i][n])).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Elem {
        Elem::int(v)
    }

    fn ext(base: RingSpec, coeffs: &[i64]) -> RingSpec {
        let cs = coeffs.iter().map(|&c| base.from_i64(c)).collect();
        RingSpec::monic_extension(base, cs).unwrap()
    }

    #[test]
    fn zmod_addition_wraps() {
        let r = RingSpec::Zmod(12);
        assert_eq!(r.add(&Elem::Res(7), &Elem::Res(8)), Elem::Res(3));
    }

    #[test]
    fn monic_ext_reduces_square_of_generator() {
        // x^2 + x + 5: x*x = -5 - x
        let b = ext(RingSpec::Int, &[5, 1]);
        let x = b.generator().unwrap();
        assert_eq!(x, Elem::Seq(vec![int(0), int(1)]));
        assert_eq!(b.mul(&x, &x), Elem::Seq(vec![int(-5), int(-1)]));
    }

    #[test]
    fn gaussian_integers() {
        let zi = ext(RingSpec::Int, &[1, 0]);
        let i = Elem::Seq(vec![int(0), int(1)]);
        assert_eq!(zi.mul(&i, &i), Elem::Seq(vec![int(-1), int(0)]));
    }

    #[test]
    fn product_componentwise() {
        let r = RingSpec::product(RingSpec::Zmod(2), RingSpec::Zmod(3));
        let a = Elem::Seq(vec![Elem::Res(1), Elem::Res(2)]);
        assert_eq!(r.mul(&a, &a), Elem::Seq(vec![Elem::Res(1), Elem::Res(1)]));
    }

    #[test]
    fn arith_rejects_foreign_encodings() {
        let r = RingSpec::Zmod(5);
        assert!(r.arith(ArithOp::Add, &[Elem::Res(7), Elem::Res(1)]).is_err());
        assert!(r.arith(ArithOp::Add, &[int(1), Elem::Res(1)]).is_err());
        assert_eq!(
            r.arith(ArithOp::Eq, &[Elem::Res(1), Elem::Res(1)]).unwrap(),
            ArithValue::Bool(true)
        );
    }

    #[test]
    fn zmod_matches_integer_arithmetic() {
        for n in 1..=36u64 {
            let r = RingSpec::Zmod(n);
            for a in 0..n {
                for b in 0..n {
                    let (ea, eb) = (Elem::Res(a), Elem::Res(b));
                    assert_eq!(r.add(&ea, &eb), Elem::Res((a + b) % n));
                    assert_eq!(r.mul(&ea, &eb), Elem::Res((a * b) % n));
                    assert_eq!(r.sub(&ea, &eb), Elem::Res((a + n - b) % n));
                }
            }
        }
    }

    #[test]
    fn nine_element_field() {
        let f9 = ext(RingSpec::PrimeField(3), &[1, 0]);
        assert!(f9.is_field());
        let all = f9.enumerate(0);
        assert_eq!(all.len(), 9);
        for a in all.iter().filter(|a| !f9.is_zero(a)) {
            let inv = f9.inverse(a).expect("nonzero element is invertible");
            assert_eq!(f9.mul(a, &inv), f9.one());
        }
        assert!(!ext(RingSpec::PrimeField(5), &[1, 0]).is_field());
    }

    #[test]
    fn monic_ext_is_commutative_ring() {
        let bases = [ext(RingSpec::Int, &[5, 1]), ext(RingSpec::Int, &[1, 0])];
        for b in &bases {
            let elems = b.enumerate(2);
            for x in &elems {
                for y in &elems {
                    assert_eq!(b.mul(x, y), b.mul(y, x));
                }
            }
            let small = b.enumerate(1);
            for x in &small {
                for y in &small {
                    for z in &small {
                        assert_eq!(b.mul(&b.mul(x, y), z), b.mul(x, &b.mul(y, z)));
                        assert_eq!(
                            b.mul(x, &b.add(y, z)),
                            b.add(&b.mul(x, y), &b.mul(x, z))
                        );
                    }
                }
            }
        }
        for (p, cs) in [(3u64, [1i64, 0]), (2, [1, 1]), (3, [2, 1])] {
            let b = ext(RingSpec::PrimeField(p), &cs);
            let elems = b.enumerate(0);
            for x in &elems {
                for y in &elems {
                    assert_eq!(b.mul(x, y), b.mul(y, x));
                    for z in &elems {
                        assert_eq!(b.mul(&b.mul(x, y), z), b.mul(x, &b.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn linear_solving() {
        assert_eq!(
            RingSpec::Int.solve_linear(&int(3), &int(12)),
            LinearSolve::Unique(Some(int(4)))
        );
        assert_eq!(RingSpec::Int.solve_linear(&int(3), &int(13)), LinearSolve::Unique(None));
        assert_eq!(RingSpec::Int.solve_linear(&int(0), &int(0)), LinearSolve::Ambiguous);
        let z12 = RingSpec::Zmod(12);
        assert_eq!(z12.solve_linear(&Elem::Res(2), &Elem::Res(3)), LinearSolve::Unique(None));
        assert_eq!(z12.solve_linear(&Elem::Res(2), &Elem::Res(4)), LinearSolve::Ambiguous);
        assert_eq!(
            z12.solve_linear(&Elem::Res(5), &Elem::Res(1)),
            LinearSolve::Unique(Some(Elem::Res(5)))
        );
        // x * v = -5 - x in Z[x]/(x^2+x+5) has the solution v = x
        let b = ext(RingSpec::Int, &[5, 1]);
        let x = b.generator().unwrap();
        let rhs = b.mul(&x, &x);
        assert_eq!(b.solve_linear(&x, &rhs), LinearSolve::Unique(Some(x.clone())));
        assert_eq!(b.solve_linear(&b.from_i64(2), &x), LinearSolve::Unique(None));
        // polynomial exact division over F_5
        let p = RingSpec::poly(RingSpec::PrimeField(5), "X").unwrap();
        let a = res_seq(vec![4, 1]);
        let prod = p.mul(&a, &res_seq(vec![1, 1]));
        assert_eq!(p.solve_linear(&a, &prod), LinearSolve::Unique(Some(res_seq(vec![1, 1]))));
    }

    #[test]
    fn coefficient_ideals() {
        let r = RingSpec::Int;
        assert_eq!(r.ideal_contains(&[int(4), int(6)], &int(2)), Some(true));
        assert_eq!(r.ideal_contains(&[int(4), int(6)], &int(3)), Some(false));
        let z = RingSpec::Zmod(12);
        assert_eq!(z.ideal_contains(&[Elem::Res(8)], &Elem::Res(4)), Some(true));
        assert_eq!(z.ideal_contains(&[Elem::Res(8)], &Elem::Res(2)), Some(false));
        let p = RingSpec::poly(RingSpec::PrimeField(5), "X").unwrap();
        // gcd(X-1, (X-1)(X+1)) = X-1 does not contain 1
        let xm1 = res_seq(vec![4, 1]);
        let g2 = p.mul(&xm1, &res_seq(vec![1, 1]));
        assert_eq!(p.ideal_contains(&[xm1.clone(), g2], &p.one()), Some(false));
        assert_eq!(p.ideal_contains(&[xm1, res_seq(vec![0, 1])], &p.one()), Some(true));
    }

    #[test]
    fn domains() {
        assert_eq!(RingSpec::Zmod(35).is_domain(), Some(false));
        assert_eq!(RingSpec::Zmod(7).is_domain(), Some(true));
        assert_eq!(ext(RingSpec::Int, &[5, 1]).is_domain(), Some(true));
        // x^2 + x = x(x+1)
        assert_eq!(ext(RingSpec::Int, &[0, 1]).is_domain(), Some(false));
    }
}
