//! Formulas in the language of rings with constants: AST, classification,
//! substitution and canonical ordering.

mod mpoly;
mod normal;
mod pretty;
mod sexpr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rings::Elem;

pub use mpoly::{Monomial, MPoly};
pub use normal::{union_normal_form, Block, NormalForm};
pub(crate) use normal::rename_apart;
pub use pretty::pretty;
pub use sexpr::{parse_formula, parse_term, print_formula, print_term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub String);

impl VarId {
    pub fn new(name: impl Into<String>) -> VarId {
        VarId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Elem),
    Var(VarId),
    Sum(Vec<Term>),
    Prod(Vec<Term>),
    Neg(Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Neq(Term, Term),
    And(Vec<Formula>),
    /// `Or(vec![])` is FALSE.
    Or(Vec<Formula>),
    Exists(Vec<VarId>, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FragmentClass {
    PositiveExistential,
    Existential,
}

pub type Substitution = BTreeMap<VarId, Term>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(VarId::new(name))
    }

    pub fn sum(terms: Vec<Term>) -> Term {
        assert!(!terms.is_empty(), "empty sum");
        if terms.len() == 1 {
            terms.into_iter().next().unwrap()
        } else {
            Term::Sum(terms)
        }
    }

    pub fn prod(terms: Vec<Term>) -> Term {
        assert!(!terms.is_empty(), "empty product");
        if terms.len() == 1 {
            terms.into_iter().next().unwrap()
        } else {
            Term::Prod(terms)
        }
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Sum(ts) | Term::Prod(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Term::Neg(t) => t.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn substitute(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Sum(ts) => Term::Sum(ts.iter().map(|t| t.substitute(sigma)).collect()),
            Term::Prod(ts) => Term::Prod(ts.iter().map(|t| t.substitute(sigma)).collect()),
            Term::Neg(t) => Term::Neg(Box::new(t.substitute(sigma))),
        }
    }

    /// Apply `f` to every constant.
    pub fn map_consts(&self, f: &dyn Fn(&Elem) -> Elem) -> Term {
        match self {
            Term::Const(c) => Term::Const(f(c)),
            Term::Var(_) => self.clone(),
            Term::Sum(ts) => Term::Sum(ts.iter().map(|t| t.map_consts(f)).collect()),
            Term::Prod(ts) => Term::Prod(ts.iter().map(|t| t.map_consts(f)).collect()),
            Term::Neg(t) => Term::Neg(Box::new(t.map_consts(f))),
        }
    }
}

impl Formula {
    pub fn falsity() -> Formula {
        Formula::Or(Vec::new())
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    /// `And` that unwraps a single conjunct.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    /// `Or` that unwraps a single disjunct.
    pub fn or(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    /// `Exists` that drops an empty binder list.
    pub fn exists(vars: Vec<VarId>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Exists(vars, Box::new(body))
        }
    }

    pub fn classify(&self) -> FragmentClass {
        if self.has_neq() {
            FragmentClass::Existential
        } else {
            FragmentClass::PositiveExistential
        }
    }

    fn has_neq(&self) -> bool {
        match self {
            Formula::Eq(..) => false,
            Formula::Neq(..) => true,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_neq),
            Formula::Exists(_, body) => body.has_neq(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_free(&BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &BTreeSet<VarId>, out: &mut BTreeSet<VarId>) {
        match self {
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Exists(vs, body) => {
                let mut inner = bound.clone();
                inner.extend(vs.iter().cloned());
                body.collect_free(&inner, out);
            }
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_all(out)),
            Formula::Exists(vs, body) => {
                out.extend(vs.iter().cloned());
                body.collect_all(out);
            }
        }
    }

    /// Capture-avoiding substitution of free variables. Bound variables that would
    /// capture a variable of the substituted terms are renamed by appending `'`.
    pub fn substitute(&self, sigma: &Substitution) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(sigma), b.substitute(sigma)),
            Formula::Neq(a, b) => Formula::Neq(a.substitute(sigma), b.substitute(sigma)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(sigma)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(sigma)).collect()),
            Formula::Exists(vs, body) => {
                let body_free = body.free_vars();
                let active: Substitution = sigma
                    .iter()
                    .filter(|(k, _)| !vs.contains(k) && body_free.contains(k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                if active.is_empty() {
                    return self.clone();
                }
                let incoming: BTreeSet<VarId> =
                    active.values().flat_map(|t| t.vars()).collect();
                let mut avoid = incoming.clone();
                avoid.extend(body.all_vars());
                avoid.extend(vs.iter().cloned());
                let mut renaming = Substitution::new();
                let mut new_vs = Vec::with_capacity(vs.len());
                for v in vs {
                    if incoming.contains(v) {
                        let mut fresh = format!("{}'", v.0);
                        while avoid.contains(&VarId(fresh.clone())) {
                            fresh.push('\'');
                        }
                        let fresh = VarId(fresh);
                        avoid.insert(fresh.clone());
                        renaming.insert(v.clone(), Term::Var(fresh.clone()));
                        new_vs.push(fresh);
                    } else {
                        new_vs.push(v.clone());
                    }
                }
                let renamed = if renaming.is_empty() { (**body).clone() } else { body.substitute(&renaming) };
                Formula::Exists(new_vs, Box::new(renamed.substitute(&active)))
            }
        }
    }

    pub fn map_consts(&self, f: &dyn Fn(&Elem) -> Elem) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.map_consts(f), b.map_consts(f)),
            Formula::Neq(a, b) => Formula::Neq(a.map_consts(f), b.map_consts(f)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.map_consts(f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.map_consts(f)).collect()),
            Formula::Exists(vs, body) => Formula::Exists(vs.clone(), Box::new(body.map_consts(f))),
        }
    }

    /// Sort and deduplicate the children of every `And`/`Or`.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => self.clone(),
            Formula::And(fs) => Formula::And(sorted(fs)),
            Formula::Or(fs) => Formula::Or(sorted(fs)),
            Formula::Exists(vs, body) => Formula::Exists(vs.clone(), Box::new(body.canonical())),
        }
    }

    /// Number of nodes, for diagnostics.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Neq(..) => 1,
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Exists(_, body) => 1 + body.size(),
        }
    }
}

/// `base`, or `base` followed by primes, whichever is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<VarId>) -> VarId {
    let mut name = base.to_string();
    while avoid.contains(&VarId(name.clone())) {
        name.push('\'');
    }
    VarId(name)
}

fn sorted(fs: &[Formula]) -> Vec<Formula> {
    let set: BTreeSet<Formula> = fs.iter().map(Formula::canonical).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: &str) -> Term {
        Term::var(n)
    }

    fn c(v: i64) -> Term {
        Term::Const(Elem::int(v))
    }

    #[test]
    fn classification() {
        assert_eq!(Formula::falsity().classify(), FragmentClass::PositiveExistential);
        let field = Formula::exists(
            vec![VarId::new("x")],
            Formula::eq(Term::prod(vec![t("t"), t("x")]), c(1)),
        );
        assert_eq!(field.classify(), FragmentClass::PositiveExistential);
        let with_neq = Formula::exists(
            vec![VarId::new("w")],
            Formula::And(vec![
                Formula::eq(Term::prod(vec![t("x"), t("w")]), t("t")),
                Formula::Neq(t("w"), c(0)),
            ]),
        );
        assert_eq!(with_neq.classify(), FragmentClass::Existential);
    }

    #[test]
    fn free_variables() {
        assert_eq!(Formula::eq(t("t"), c(0)).free_vars(), BTreeSet::from([VarId::new("t")]));
        let f = Formula::exists(vec![VarId::new("x")], Formula::eq(Term::prod(vec![t("t"), t("x")]), c(1)));
        assert_eq!(f.free_vars(), BTreeSet::from([VarId::new("t")]));
        assert!(Formula::falsity().free_vars().is_empty());
    }

    #[test]
    fn substitution_avoids_capture() {
        let f = Formula::exists(vec![VarId::new("x")], Formula::eq(Term::prod(vec![t("x"), t("t")]), c(1)));
        let sigma = Substitution::from([(VarId::new("t"), t("x"))]);
        let expected = Formula::exists(
            vec![VarId::new("x'")],
            Formula::eq(Term::prod(vec![t("x'"), t("x")]), c(1)),
        );
        assert_eq!(f.substitute(&sigma), expected);
        let g = Formula::eq(Term::prod(vec![t("t"), t("x")]), c(1));
        let sigma = Substitution::from([(VarId::new("t"), c(5))]);
        assert_eq!(g.substitute(&sigma), Formula::eq(Term::prod(vec![c(5), t("x")]), c(1)));
    }

    #[test]
    fn bound_variables_are_not_substituted() {
        let f = Formula::exists(vec![VarId::new("t")], Formula::eq(t("t"), c(1)));
        let sigma = Substitution::from([(VarId::new("t"), c(5))]);
        assert_eq!(f.substitute(&sigma), f);
    }

    #[test]
    fn canonical_dedups() {
        let a = Formula::eq(t("a"), c(0));
        let b = Formula::eq(t("b"), c(0));
        let f = Formula::Or(vec![b.clone(), a.clone(), b.clone()]);
        assert_eq!(f.canonical(), Formula::Or(vec![a, b]));
    }
}
