//! Effective ring homomorphisms with constant-lifting sections.

use serde::{Deserialize, Serialize};

use super::{fpoly, res_seq, res_vec, Elem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomAction {
    /// `Z -> Z/n` or `Z/n -> Z/d` with `d | n`.
    ReduceMod,
    /// `F_p[X] -> F_p[X]/(f)` presented as a monic extension.
    PolyReduce,
    /// `F_p[X] -> F_p`, `X -> point`.
    PolyEval { point: Elem },
    /// `A[X]/(f) -> T`, coordinates mapped by `base` and `X -> root`.
    ExtEval { base: Box<RingHom>, root: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingHom {
    pub source: RingSpec,
    pub target: RingSpec,
    pub action: HomAction,
}

impl RingHom {
    pub fn apply(&self, a: &Elem) -> Elem {
        match &self.action {
            HomAction::ReduceMod => match a {
                Elem::Int(v) => self.target.from_int(v),
                Elem::Res(r) => self.target.from_int(&(*r).into()),
                Elem::Seq(_) => panic!("reduction applied to {a:?}"),
            },
            HomAction::PolyReduce => {
                let RingSpec::MonicExt { base, coeffs } = &self.target else {
                    panic!("poly reduction into {}", self.target);
                };
                let p = base.modulus().expect("residue base");
                let mut f: Vec<u64> = coeffs.iter().map(|c| c.as_res().expect("res")).collect();
                f.push(1);
                let (_, r) = fpoly::divrem(&res_vec(a), &f, p).expect("monic modulus");
                let mut coords: Vec<Elem> = r.into_iter().map(Elem::Res).collect();
                coords.resize(coeffs.len(), Elem::Res(0));
                Elem::Seq(coords)
            }
            HomAction::PolyEval { point } => {
                let p = self.target.modulus().expect("residue target");
                Elem::Res(fpoly::eval(&res_vec(a), point.as_res().expect("res"), p))
            }
            HomAction::ExtEval { base, root } => {
                let coords = a.as_seq().expect("extension coordinates");
                let t = &self.target;
                let mut acc = t.zero();
                let mut power = t.one();
                for c in coords {
                    acc = t.add(&acc, &t.mul(&base.apply(c), &power));
                    power = t.mul(&power, root);
                }
                acc
            }
        }
    }

    /// Canonical representative lift: `apply(section(y)) == y`.
    pub fn section(&self, y: &Elem) -> Elem {
        match &self.action {
            HomAction::ReduceMod => match (&self.source, y) {
                (RingSpec::Int, Elem::Res(r)) => Elem::int(*r),
                (_, Elem::Res(r)) => Elem::Res(*r),
                _ => panic!("section of {y:?}"),
            },
            HomAction::PolyReduce => res_seq(fpoly::trim(res_vec(y))),
            HomAction::PolyEval { .. } => res_seq(fpoly::trim(vec![y.as_res().expect("res")])),
            HomAction::ExtEval { base, .. } => {
                let d = self.source.ext_degree().expect("extension source");
                let RingSpec::MonicExt { base: a, .. } = &self.source else { unreachable!() };
                let mut coords = vec![a.zero(); d];
                coords[0] = base.section(y);
                Elem::Seq(coords)
            }
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.action {
            HomAction::ReduceMod => format!("reduction {} -> {}", self.source, self.target),
            HomAction::PolyReduce => format!("reduction {} -> {}", self.source, self.target),
            HomAction::PolyEval { point } => {
                let var = self.source.poly_var().unwrap_or("X");
                format!("evaluation {var} -> {}", self.target.encode(point))
            }
            HomAction::ExtEval { base, root } => {
                format!("x -> {} over {}", self.target.encode(root), base.describe())
            }
        }
    }
}
