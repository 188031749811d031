//! Bounded witness search over a normal form.
//!
//! Each block `∃ v̄: eqs ∧ neqs` is solved by depth-first search over the
//! variables in a fixed static order, most constrained first, each ranging over
//! `enumerate(h)` for the current height `h` of the schedule. Propagation runs at
//! every node:
//!
//! * an equation that became a nonzero constant, or whose constant term is
//!   outside the ideal generated by its other coefficients, is a conflict;
//! * an equation left with a single unknown is solved outright (linear with a
//!   constant coefficient) or, over a finite ring, by scanning its roots;
//! * a disequation that became the constant zero is a conflict.
//!
//! Before the search, a variable that occurs only linearly, with constant
//! coefficients that include a unit, and in no disequation, is solved for and
//! substituted away; it is recovered once a solution is found. During the
//! search an unknown occurring linearly in exactly one equation and nowhere else
//! is slack: it is never branched on, and an equation left with only slack
//! unknowns is solved as a linear combination. Remaining atoms that share no
//! unknown are solved independently. Forced values are not bounded by `h`.
//!
//! The reported witness is the first solution met in this order: heights in
//! schedule order, blocks in normal-form order, then the depth-first order.

use crate::error::{Error, Result};
use crate::formula::{union_normal_form, Block, Formula, MPoly, Term, VarId};
use crate::rings::{Elem, LinearSolve, RingSpec};

use super::direct::{eval_term, Assignment};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Strictly increasing height bounds.
    pub heights: Vec<u64>,
    /// Branching nodes allowed per evaluation.
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { heights: vec![2, 4, 8, 16, 32, 64], node_limit: 2_000_000 }
    }
}

impl SearchBudget {
    pub fn new(heights: Vec<u64>, node_limit: u64) -> Result<SearchBudget> {
        if heights.is_empty() || heights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "height schedule must be nonempty and strictly increasing".into(),
            ));
        }
        Ok(SearchBudget { heights, node_limit })
    }

    /// Parse `h1,h2,...`.
    pub fn parse(text: &str) -> Result<SearchBudget> {
        let heights = text
            .split(',')
            .map(|h| {
                h.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad height `{h}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        SearchBudget::new(heights, SearchBudget::default().node_limit)
    }

    pub fn max_height(&self) -> u64 {
        *self.heights.last().expect("nonempty schedule")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Witness values for the bound variables of the satisfied block, and the
    /// schedule height at which it was found.
    True { witness: Vec<(VarId, Elem)>, height: u64 },
    /// Every block's witness space was finite and fully explored.
    FalseExhaustive,
    /// No witness within the budget; `height` is the last bound tried.
    Unknown { height: u64 },
}

impl Verdict {
    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::True { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::True { .. } => "true",
            Verdict::FalseExhaustive => "false",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub nodes: u64,
    /// Heights actually explored.
    pub heights: Vec<u64>,
}

/// Normalize `phi`, then search for witnesses block by block.
pub fn search(
    ring: &RingSpec,
    phi: &Formula,
    env: &Assignment,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    for v in phi.free_vars() {
        match env.get(&v) {
            Some(e) => ring.check(e)?,
            None => return Err(Error::UnboundVariable(v.0)),
        }
    }
    let nf = union_normal_form(phi);
    let mut problems = Vec::with_capacity(nf.blocks.len());
    for b in &nf.blocks {
        problems.push(Problem::new(ring, b, env)?);
    }
    let mut exhausted: Vec<bool> = problems.iter().map(|p| p.unsat).collect();
    let mut nodes = 0u64;
    let mut tried = Vec::new();
    let schedule: Vec<u64> = if ring.is_finite() { vec![budget.heights[0]] } else { budget.heights.clone() };
    for &h in &schedule {
        if exhausted.iter().all(|&e| e) {
            break;
        }
        tried.push(h);
        let domain = ring.enumerate(h);
        for (bi, prob) in problems.iter().enumerate() {
            if exhausted[bi] {
                continue;
            }
            let mut s = Searcher {
                ring,
                prob,
                domain: &domain,
                finite: ring.is_finite(),
                nodes: &mut nodes,
                limit: budget.node_limit,
                truncated: false,
            };
            match s.run() {
                Err(Abort) => {
                    return Ok(SearchOutcome { verdict: Verdict::Unknown { height: h }, nodes, heights: tried });
                }
                Ok(Some(values)) => {
                    let witness: Vec<(VarId, Elem)> =
                        prob.names.iter().cloned().zip(values).collect();
                    recheck(ring, &nf.blocks[bi], env, &witness)?;
                    return Ok(SearchOutcome {
                        verdict: Verdict::True { witness, height: h },
                        nodes,
                        heights: tried,
                    });
                }
                Ok(None) => {
                    if !s.truncated {
                        exhausted[bi] = true;
                    }
                }
            }
        }
    }
    let verdict = if exhausted.iter().all(|&e| e) {
        Verdict::FalseExhaustive
    } else {
        Verdict::Unknown { height: *tried.last().unwrap_or(&budget.max_height()) }
    };
    Ok(SearchOutcome { verdict, nodes, heights: tried })
}

/// Re-evaluate every atom of the block by direct term arithmetic.
fn recheck(ring: &RingSpec, block: &Block, env: &Assignment, witness: &[(VarId, Elem)]) -> Result<()> {
    let mut full = env.clone();
    full.extend(witness.iter().cloned());
    for (l, r) in &block.eqs {
        if eval_term(l, ring, &full)? != eval_term(r, ring, &full)? {
            return Err(Error::WitnessRecheck(format!("equation fails for {witness:?}")));
        }
    }
    for (l, r) in &block.neqs {
        if eval_term(l, ring, &full)? == eval_term(r, ring, &full)? {
            return Err(Error::WitnessRecheck(format!("disequation fails for {witness:?}")));
        }
    }
    Ok(())
}

struct Problem {
    names: Vec<VarId>,
    eqs: Vec<MPoly>,
    neqs: Vec<MPoly>,
    /// `(v, expr)`: `x_v = expr`, recovered in reverse order.
    elim: Vec<(usize, MPoly)>,
    order: Vec<usize>,
    unsat: bool,
}

impl Problem {
    fn new(ring: &RingSpec, block: &Block, env: &Assignment) -> Result<Problem> {
        let names = block.vars.clone();
        let n = names.len();
        // a bound variable may reuse the name of an assigned one
        let consts: crate::formula::Substitution = env
            .iter()
            .filter(|(k, _)| !names.contains(k))
            .map(|(k, v)| (k.clone(), Term::Const(v.clone())))
            .collect();
        let index = |v: &VarId| names.iter().position(|x| x == v);
        let to_poly = |(l, r): &(Term, Term)| -> Result<MPoly> {
            let l = MPoly::from_term(&l.substitute(&consts), n, &index, ring)?;
            let r = MPoly::from_term(&r.substitute(&consts), n, &index, ring)?;
            Ok(l.sub(&r, ring))
        };
        let mut eqs = block.eqs.iter().map(to_poly).collect::<Result<Vec<_>>>()?;
        let neqs = block.neqs.iter().map(to_poly).collect::<Result<Vec<_>>>()?;
        let mut unsat = false;
        eqs.retain(|p| match p.as_constant(ring) {
            Some(c) => {
                unsat |= !ring.is_zero(&c);
                false
            }
            None => true,
        });
        for p in &neqs {
            if p.as_constant(ring).is_some_and(|c| ring.is_zero(&c)) {
                unsat = true;
            }
        }

        let mut elim = Vec::new();
        loop {
            let mut progress = false;
            for v in 0..n {
                if unsat || neqs.iter().any(|p| p.occurs(v)) {
                    continue;
                }
                let holders: Vec<usize> = (0..eqs.len()).filter(|&i| eqs[i].occurs(v)).collect();
                let coefs: Option<Vec<Elem>> = holders.iter().map(|&i| eqs[i].linear_coef(v)).collect();
                let Some(coefs) = coefs else { continue };
                let Some((k, ainv)) = coefs.iter().enumerate().find_map(|(k, a)| Some((k, ring.inverse(a)?)))
                else {
                    continue;
                };
                let xv = MPoly::var(n, v, ring);
                let e = &eqs[holders[k]];
                // a*x_v + rest = 0  =>  x_v = -a^{-1} * rest
                let rest = e.sub(&xv.scale(&coefs[k], ring), ring);
                let expr = rest.scale(&ring.neg(&ainv), ring);
                for (j, &i) in holders.iter().enumerate() {
                    if j != k {
                        let b = &coefs[j];
                        eqs[i] = eqs[i].sub(&xv.scale(b, ring), ring).add(&expr.scale(b, ring), ring);
                    }
                }
                eqs.remove(holders[k]);
                elim.push((v, expr));
                eqs.retain(|p| match p.as_constant(ring) {
                    Some(c) => {
                        unsat |= !ring.is_zero(&c);
                        false
                    }
                    None => true,
                });
                progress = true;
            }
            if !progress {
                break;
            }
        }

        // most constrained first
        let weight = |v: usize| eqs.iter().chain(&neqs).filter(|p| p.occurs(v)).count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(weight(v)));
        Ok(Problem { names, eqs, neqs, elim, order, unsat })
    }
}

struct Abort;

#[derive(Clone)]
struct State {
    values: Vec<Option<Elem>>,
    eqs: Vec<MPoly>,
    neqs: Vec<MPoly>,
}

enum Prop {
    Conflict,
    Open(Option<(usize, Vec<Elem>)>),
}

struct Searcher<'a> {
    ring: &'a RingSpec,
    prob: &'a Problem,
    domain: &'a [Elem],
    finite: bool,
    nodes: &'a mut u64,
    limit: u64,
    truncated: bool,
}

impl Searcher<'_> {
    fn run(&mut self) -> std::result::Result<Option<Vec<Elem>>, Abort> {
        if self.prob.unsat {
            return Ok(None);
        }
        let n = self.prob.names.len();
        let state = State { values: vec![None; n], eqs: self.prob.eqs.clone(), neqs: self.prob.neqs.clone() };
        let Some(done) = self.dfs(state)? else { return Ok(None) };
        let zero = self.ring.zero();
        let mut values: Vec<Elem> = done.values.into_iter().map(|v| v.unwrap_or_else(|| zero.clone())).collect();
        for (v, expr) in self.prob.elim.iter().rev() {
            values[*v] = expr.eval(&values, self.ring);
        }
        Ok(Some(values))
    }

    fn assign(&self, s: &mut State, v: usize, val: &Elem) {
        s.values[v] = Some(val.clone());
        for p in s.eqs.iter_mut().chain(s.neqs.iter_mut()) {
            if p.occurs(v) {
                *p = p.substitute_var(v, val, self.ring);
            }
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Abort> {
        *self.nodes += 1;
        if *self.nodes > self.limit {
            Err(Abort)
        } else {
            Ok(())
        }
    }

    fn propagate(&mut self, s: &mut State) -> Prop {
        let ring = self.ring;
        'outer: loop {
            let mut cand: Option<(usize, Vec<Elem>)> = None;
            let mut i = 0;
            while i < s.eqs.len() {
                let p = &s.eqs[i];
                if let Some(c) = p.as_constant(ring) {
                    if !ring.is_zero(&c) {
                        return Prop::Conflict;
                    }
                    s.eqs.remove(i);
                    continue;
                }
                let c0 = p.constant_term(ring);
                if !ring.is_zero(&c0) && ring.ideal_contains(&p.nonconstant_coefs(), &c0) == Some(false) {
                    return Prop::Conflict;
                }
                let vars = p.vars();
                if vars.len() == 1 {
                    let v = vars[0];
                    if self.finite {
                        let roots: Vec<Elem> = self
                            .domain
                            .iter()
                            .filter(|x| ring.is_zero(&p.substitute_var(v, x, ring).constant_term(ring)))
                            .cloned()
                            .collect();
                        match roots.len() {
                            0 => return Prop::Conflict,
                            1 => {
                                self.assign(s, v, &roots[0]);
                                continue 'outer;
                            }
                            k => {
                                if cand.as_ref().map_or(true, |(_, l)| k < l.len()) {
                                    cand = Some((v, roots));
                                }
                            }
                        }
                    } else if let Some(a) = p.linear_coef(v) {
                        let b = ring.neg(&c0);
                        match ring.solve_linear(&a, &b) {
                            LinearSolve::Unique(None) => return Prop::Conflict,
                            LinearSolve::Unique(Some(x)) => {
                                self.assign(s, v, &x);
                                continue 'outer;
                            }
                            LinearSolve::Ambiguous => {}
                        }
                    }
                }
                i += 1;
            }
            let mut j = 0;
            while j < s.neqs.len() {
                match s.neqs[j].as_constant(ring) {
                    Some(c) if ring.is_zero(&c) => return Prop::Conflict,
                    Some(_) => {
                        s.neqs.remove(j);
                    }
                    None => j += 1,
                }
            }
            return Prop::Open(cand);
        }
    }

    fn dfs(&mut self, mut s: State) -> std::result::Result<Option<State>, Abort> {
        let cand = match self.propagate(&mut s) {
            Prop::Conflict => return Ok(None),
            Prop::Open(c) => c,
        };
        if let Some((v, roots)) = cand {
            return self.branch(s, v, roots);
        }
        let ring = self.ring;
        let n = s.values.len();
        let mut eq_count = vec![0usize; n];
        let mut in_neq = vec![false; n];
        for p in &s.eqs {
            for v in p.vars() {
                eq_count[v] += 1;
            }
        }
        for p in &s.neqs {
            for v in p.vars() {
                in_neq[v] = true;
            }
        }
        let slack = |v: usize, p: &MPoly| eq_count[v] == 1 && !in_neq[v] && p.linear_coef(v).is_some();

        // equations in slack variables only are solved outright
        let mut i = 0;
        while i < s.eqs.len() {
            let vars = s.eqs[i].vars();
            if !vars.iter().all(|&v| slack(v, &s.eqs[i])) {
                i += 1;
                continue;
            }
            let coefs: Vec<Elem> = vars.iter().map(|&v| s.eqs[i].linear_coef(v).expect("linear")).collect();
            let b = ring.neg(&s.eqs[i].constant_term(ring));
            match ring.solve_combination(&coefs, &b) {
                Some(None) => return Ok(None),
                Some(Some(xs)) => {
                    for (v, x) in vars.into_iter().zip(xs) {
                        s.values[v] = Some(x);
                    }
                    s.eqs.remove(i);
                }
                None => {
                    if !self.finite {
                        self.truncated = true;
                    }
                    let v = vars[0];
                    return self.branch(s, v, self.domain.to_vec());
                }
            }
        }

        // connected components of the remaining atoms, through shared unknowns
        let atoms: Vec<Vec<usize>> = s.eqs.iter().chain(&s.neqs).map(|p| p.vars()).collect();
        if atoms.is_empty() {
            return Ok(Some(s));
        }
        let mut comp: Vec<usize> = (0..atoms.len()).collect();
        fn root(comp: &mut [usize], mut i: usize) -> usize {
            while comp[i] != i {
                comp[i] = comp[comp[i]];
                i = comp[i];
            }
            i
        }
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (a, vars) in atoms.iter().enumerate() {
            for &v in vars {
                match owner[v] {
                    None => owner[v] = Some(a),
                    Some(b) => {
                        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                        comp[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..atoms.len()).map(|a| root(&mut comp, a)).collect();
        let mut groups: Vec<usize> = roots.clone();
        groups.sort_unstable();
        groups.dedup();
        if groups.len() > 1 {
            let neq_start = s.eqs.len();
            let mut merged = s.values.clone();
            for g in groups {
                let pick = |range: std::ops::Range<usize>, polys: &[MPoly], off: usize| -> Vec<MPoly> {
                    range.filter(|&a| roots[a] == g).map(|a| polys[a - off].clone()).collect()
                };
                let sub = State {
                    values: s.values.clone(),
                    eqs: pick(0..neq_start, &s.eqs, 0),
                    neqs: pick(neq_start..atoms.len(), &s.neqs, neq_start),
                };
                let Some(done) = self.dfs(sub)? else { return Ok(None) };
                for (m, d) in merged.iter_mut().zip(done.values) {
                    if m.is_none() {
                        *m = d;
                    }
                }
            }
            return Ok(Some(State { values: merged, eqs: Vec::new(), neqs: Vec::new() }));
        }

        let next = self.prob.order.iter().copied().find(|&v| {
            s.values[v].is_none()
                && owner[v].is_some()
                && !s.eqs.iter().any(|p| p.occurs(v) && slack(v, p))
        });
        // each remaining atom has an unknown that is not slack
        let v = next.expect("branching variable");
        if !self.finite {
            self.truncated = true;
        }
        self.branch(s, v, self.domain.to_vec())
    }

    fn branch(&mut self, s: State, v: usize, values: Vec<Elem>) -> std::result::Result<Option<State>, Abort> {
        for x in &values {
            self.tick()?;
            let mut child = s.clone();
            self.assign(&mut child, v, x);
            if let Some(found) = self.dfs(child)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}
