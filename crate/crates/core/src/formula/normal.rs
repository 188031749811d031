//! Disjunctive normal form: a finite union of existentially quantified systems.

use std::collections::BTreeSet;

use super::{Formula, Substitution, Term, VarId};

/// One disjunct: `∃ vars: eqs ∧ neqs`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Block {
    pub vars: Vec<VarId>,
    pub eqs: Vec<(Term, Term)>,
    pub neqs: Vec<(Term, Term)>,
}

/// `blocks = []` is FALSE.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalForm {
    pub blocks: Vec<Block>,
}

/// Distribute conjunctions over disjunctions and pull quantifiers to the front of
/// each disjunct. Bound variables are renamed apart first so that every block's
/// variables are distinct from each other and from the free variables.
pub fn union_normal_form(phi: &Formula) -> NormalForm {
    let mut used: BTreeSet<VarId> = phi.free_vars();
    let renamed = rename_apart(phi, &mut used);
    NormalForm { blocks: blocks_of(&renamed) }
}

pub(crate) fn rename_apart(phi: &Formula, used: &mut BTreeSet<VarId>) -> Formula {
    match phi {
        Formula::Eq(..) | Formula::Neq(..) => phi.clone(),
        Formula::And(fs) => Formula::And(fs.iter().map(|f| rename_apart(f, used)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|f| rename_apart(f, used)).collect()),
        Formula::Exists(vs, body) => {
            let mut sigma = Substitution::new();
            let mut new_vs = Vec::with_capacity(vs.len());
            for v in vs {
                let mut name = v.0.clone();
                while used.contains(&VarId(name.clone())) {
                    name.push('\'');
                }
                let fresh = VarId(name);
                used.insert(fresh.clone());
                if fresh != *v {
                    sigma.insert(v.clone(), Term::Var(fresh.clone()));
                }
                new_vs.push(fresh);
            }
            // the fresh names are unused elsewhere, so plain substitution cannot capture
            let body = if sigma.is_empty() { (**body).clone() } else { body.substitute(&sigma) };
            Formula::Exists(new_vs, Box::new(rename_apart(&body, used)))
        }
    }
}

fn blocks_of(phi: &Formula) -> Vec<Block> {
    match phi {
        Formula::Eq(a, b) => vec![Block { eqs: vec![(a.clone(), b.clone())], ..Block::default() }],
        Formula::Neq(a, b) => vec![Block { neqs: vec![(a.clone(), b.clone())], ..Block::default() }],
        Formula::Or(fs) => fs.iter().flat_map(blocks_of).collect(),
        Formula::And(fs) => {
            let mut acc = vec![Block::default()];
            for f in fs {
                let right = blocks_of(f);
                let mut next = Vec::with_capacity(acc.len() * right.len());
                for l in &acc {
                    for r in &right {
                        let mut b = l.clone();
                        b.vars.extend(r.vars.iter().cloned());
                        b.eqs.extend(r.eqs.iter().cloned());
                        b.neqs.extend(r.neqs.iter().cloned());
                        next.push(b);
                    }
                }
                acc = next;
            }
            acc
        }
        Formula::Exists(vs, body) => blocks_of(body)
            .into_iter()
            .map(|mut b| {
                let mut vars = vs.clone();
                vars.append(&mut b.vars);
                b.vars = vars;
                b
            })
            .collect(),
    }
}

impl NormalForm {
    pub fn to_formula(&self) -> Formula {
        Formula::or(
            self.blocks
                .iter()
                .map(|b| {
                    let atoms: Vec<Formula> = b
                        .eqs
                        .iter()
                        .map(|(l, r)| Formula::Eq(l.clone(), r.clone()))
                        .chain(b.neqs.iter().map(|(l, r)| Formula::Neq(l.clone(), r.clone())))
                        .collect();
                    Formula::exists(b.vars.clone(), Formula::and(atoms))
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::FragmentClass;
    use crate::rings::Elem;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn zero() -> Term {
        Term::Const(Elem::Res(0))
    }

    #[test]
    fn false_has_no_blocks() {
        assert!(union_normal_form(&Formula::falsity()).blocks.is_empty());
    }

    #[test]
    fn distributes() {
        let f = Formula::And(vec![
            Formula::eq(v("a"), zero()),
            Formula::Or(vec![Formula::eq(v("b"), zero()), Formula::eq(v("c"), zero())]),
        ]);
        let nf = union_normal_form(&f);
        assert_eq!(nf.blocks.len(), 2);
        assert_eq!(nf.blocks[0].eqs, vec![(v("a"), zero()), (v("b"), zero())]);
        assert_eq!(nf.blocks[1].eqs, vec![(v("a"), zero()), (v("c"), zero())]);
    }

    #[test]
    fn renames_clashing_binders() {
        // (∃x: x = 0) ∧ (∃x: x = t) needs two distinct bound names
        let f = Formula::And(vec![
            Formula::exists(vec![VarId::new("x")], Formula::eq(v("x"), zero())),
            Formula::exists(vec![VarId::new("x")], Formula::eq(v("x"), v("t"))),
        ]);
        let nf = union_normal_form(&f);
        assert_eq!(nf.blocks.len(), 1);
        assert_eq!(nf.blocks[0].vars, vec![VarId::new("x"), VarId::new("x'")]);
        assert_eq!(nf.blocks[0].eqs[1], (v("x'"), v("t")));
        let back = nf.to_formula();
        assert_eq!(back.free_vars(), f.free_vars());
        assert_eq!(back.classify(), FragmentClass::PositiveExistential);
    }

    #[test]
    fn binder_named_like_free_variable() {
        // t free outside, bound inside
        let f = Formula::And(vec![
            Formula::eq(v("t"), zero()),
            Formula::exists(vec![VarId::new("t")], Formula::eq(v("t"), v("t"))),
        ]);
        let nf = union_normal_form(&f);
        assert_eq!(nf.blocks[0].vars, vec![VarId::new("t'")]);
        assert_eq!(nf.blocks[0].eqs[0], (v("t"), zero()));
    }
}
