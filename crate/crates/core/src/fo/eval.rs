//! Bounded evaluation over a finite semigroup.
//!
//! Quantifiers range over members in increasing order. A quantifier whose
//! body pins the variable by an equation `f(v) = t`, with `f` injective
//! (sums, multiples, successors, differences, quotients), is decided at the
//! single solution of that equation. Comparisons against the variable
//! narrow the scanned range. Both shortcuts only skip values where the body
//! is false (for `exists`) or the premise is false (for `forall ... =>`).

use super::syntax::{Bound, Const, Domain, Formula, Printer, Quant, Sentence, Sort, Term, VarId};
use crate::error::{Error, Result};
use crate::semigroup::{Elem, TwoGenSemigroup};
use std::sync::OnceLock;

/// Interpretations of the constant symbols. Canonical unless mutated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constants {
    pub a: Elem,
    pub b: Elem,
    pub ab: Elem,
    pub alpha1: Elem,
    pub beta1: Elem,
    pub conductor: Elem,
}

impl Constants {
    pub fn canonical(s: &TwoGenSemigroup) -> Self {
        Constants {
            a: Elem::from(s.a()),
            b: Elem::from(s.b()),
            ab: s.ab(),
            alpha1: s.alpha1(),
            beta1: s.beta1(),
            conductor: s.conductor(),
        }
    }

    pub fn get(&self, c: Const) -> Elem {
        match c {
            Const::A => self.a,
            Const::B => self.b,
            Const::AB => self.ab,
            Const::Alpha1 => self.alpha1,
            Const::Beta1 => self.beta1,
            Const::C => self.conductor,
        }
    }

    pub fn set(&mut self, c: Const, v: Elem) {
        match c {
            Const::A => self.a = v,
            Const::B => self.b = v,
            Const::AB => self.ab = v,
            Const::Alpha1 => self.alpha1 = v,
            Const::Beta1 => self.beta1 = v,
            Const::C => self.conductor = v,
        }
    }
}

/// Members below the conductor; everything from the conductor on is a member.
#[derive(Debug)]
struct MemberTable {
    small: Vec<Elem>,
    c: Elem,
}

impl MemberTable {
    fn new(s: &TwoGenSemigroup) -> Self {
        let c = s.conductor();
        MemberTable {
            small: (0..c).filter(|&x| s.contains(x)).collect(),
            c,
        }
    }

    fn member_at(&self, i: usize) -> Elem {
        match self.small.get(i) {
            Some(&x) => x,
            None => self.c + (i - self.small.len()) as Elem,
        }
    }

    /// Number of members strictly below `x`.
    fn rank(&self, x: Elem) -> usize {
        if x >= self.c {
            self.small.len() + (x - self.c) as usize
        } else {
            self.small.partition_point(|&y| y < x)
        }
    }
}

/// A semigroup with an interpretation of the constants. Functions and
/// predicates always keep their meaning in the underlying semigroup.
#[derive(Debug)]
pub struct Structure {
    sg: TwoGenSemigroup,
    consts: Constants,
    table: OnceLock<MemberTable>,
}

impl Clone for Structure {
    fn clone(&self) -> Self {
        Structure::with_constants(self.sg, self.consts)
    }
}

impl Structure {
    pub fn new(sg: TwoGenSemigroup) -> Self {
        Structure::with_constants(sg, Constants::canonical(&sg))
    }

    pub fn with_constants(sg: TwoGenSemigroup, consts: Constants) -> Self {
        Structure {
            sg,
            consts,
            table: OnceLock::new(),
        }
    }

    pub fn semigroup(&self) -> &TwoGenSemigroup {
        &self.sg
    }

    pub fn constants(&self) -> &Constants {
        &self.consts
    }

    fn table(&self) -> &MemberTable {
        self.table.get_or_init(|| MemberTable::new(&self.sg))
    }

    /// The `i`-th member in increasing order (`member_at(0) == 0`).
    pub fn member_at(&self, i: usize) -> Elem {
        self.table().member_at(i)
    }

    /// Number of members strictly below `x`.
    pub fn rank(&self, x: Elem) -> usize {
        self.table().rank(x)
    }

    fn succ_steps(&self, mut x: Elem, i: i64) -> Option<Elem> {
        let c = self.sg.conductor();
        if i >= 0 {
            let mut k = i as u128;
            while k > 0 {
                if x >= c {
                    return x.checked_add(k);
                }
                x = self.sg.successor(x);
                k -= 1;
            }
            Some(x)
        } else {
            let mut k = i.unsigned_abs() as u128;
            while k > 0 {
                if x >= c + k {
                    return Some(x - k);
                }
                x = self.sg.predecessor(x)?;
                k -= 1;
            }
            Some(x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    /// Bound `U` for `U` and `(W k)` quantifier bounds.
    pub universe: Elem,
    /// Evenly spaced members added to the notable elements in sampled domains.
    pub sample_size: usize,
}

impl EvalConfig {
    /// `U = 3ab`, the default universe.
    pub fn auto(s: &TwoGenSemigroup) -> Self {
        EvalConfig {
            universe: 3 * s.ab(),
            sample_size: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub value: bool,
    /// Atoms that were false because some term was undefined.
    pub undefined: u64,
    /// First few such atoms, with the variable assignment at the time.
    pub undefined_samples: Vec<String>,
    /// For a false sentence, the assignment of the failing universal block.
    pub counterexample: Option<Vec<(String, Elem)>>,
}

const MAX_SAMPLES: usize = 6;

/// Evaluates a term in `env` (indexed by [`VarId`]). `Ok(None)` means undefined.
pub fn eval_term(st: &Structure, env: &[Option<Elem>], t: &Term) -> Result<Option<Elem>> {
    let mut vars = Vec::new();
    t.collect_vars(&mut vars);
    if let Some(v) = vars
        .into_iter()
        .find(|&v| env.get(v).copied().flatten().is_none())
    {
        return Err(Error::UnboundVariable(format!("#{v}")));
    }
    let cfg = EvalConfig {
        universe: 0,
        sample_size: 0,
    };
    let names: Vec<String> = Vec::new();
    let ctx = Ctx::new(st, cfg, &names, env.to_vec());
    Ok(ctx.term(t))
}

/// Evaluates a closed sentence.
pub fn eval_formula(st: &Structure, s: &Sentence, cfg: &EvalConfig) -> EvalReport {
    eval_with(st, s, cfg, &[])
}

/// Evaluates `s` with its first `free.len()` variables bound to `free`.
/// Sentences with free variables come from [`super::parse::parse_open`].
pub fn eval_with(st: &Structure, s: &Sentence, cfg: &EvalConfig, free: &[Elem]) -> EvalReport {
    let mut env = vec![None; s.names.len()];
    for (slot, &v) in env.iter_mut().zip(free) {
        *slot = Some(v);
    }
    let mut ctx = Ctx::new(st, *cfg, &s.names, env);
    ctx.bound.extend(0..free.len());
    let value = ctx.formula(&s.formula);
    EvalReport {
        value,
        undefined: ctx.undefined,
        undefined_samples: ctx.samples,
        counterexample: if value {
            None
        } else {
            ctx.cex.map(|c| {
                c.into_iter()
                    .map(|(v, x)| (s.names[v].clone(), x))
                    .collect()
            })
        },
    }
}

enum Inv {
    Value(Elem),
    NoSolution,
    Unknown,
}

enum Plan {
    Range(Elem, Elem),
    Single(Elem),
    Empty,
}

struct Ctx<'a> {
    st: &'a Structure,
    sg: &'a TwoGenSemigroup,
    cfg: EvalConfig,
    names: &'a [String],
    env: Vec<Option<Elem>>,
    bound: Vec<VarId>,
    undefined: u64,
    samples: Vec<String>,
    cex: Option<Vec<(VarId, Elem)>>,
    sample: Option<Vec<Elem>>,
}

fn conjuncts(f: &Formula) -> &[Formula] {
    match f {
        Formula::And(fs) => fs,
        other => std::slice::from_ref(other),
    }
}

impl<'a> Ctx<'a> {
    fn new(
        st: &'a Structure,
        cfg: EvalConfig,
        names: &'a [String],
        env: Vec<Option<Elem>>,
    ) -> Self {
        Ctx {
            st,
            sg: &st.sg,
            cfg,
            names,
            env,
            bound: Vec::new(),
            undefined: 0,
            samples: Vec::new(),
            cex: None,
            sample: None,
        }
    }

    fn member(&self, x: Elem) -> Option<Elem> {
        self.sg.contains(x).then_some(x)
    }

    fn term(&self, t: &Term) -> Option<Elem> {
        match t {
            Term::Var(v) => self.env.get(*v).copied().flatten(),
            Term::Const(c) => self.member(self.st.consts.get(*c)),
            Term::Lit(k) => self.member(*k),
            Term::Add(l, r) => self.term(l)?.checked_add(self.term(r)?),
            Term::Mul(n, s) => self.term(s)?.checked_mul(Elem::from(*n)),
            _ => self.rare_term(t),
        }
    }

    #[inline(never)]
    fn rare_term(&self, t: &Term) -> Option<Elem> {
        let sg = self.sg;
        match t {
            Term::Sub(l, r) => {
                let (x, y) = (self.term(l)?, self.term(r)?);
                self.member(x.checked_sub(y)?)
            }
            Term::Div(s, n) => {
                let x = self.term(s)?;
                let n = Elem::from(*n);
                if x % n == 0 {
                    self.member(x / n)
                } else {
                    None
                }
            }
            Term::Alpha(s) => sg.alpha(self.term(s)?).ok(),
            Term::Beta(s) => sg.beta(self.term(s)?).ok(),
            Term::PiA(s, level) | Term::PiB(s, level) => {
                let x = self.term(s)?;
                let lo = Elem::from(*level) * sg.ab();
                if x < lo || x >= lo + sg.ab() {
                    return None;
                }
                let d = sg.decompose(x).ok()?;
                Some(if matches!(t, Term::PiA(..)) {
                    d.a_part(sg)
                } else {
                    d.b_part(sg)
                })
            }
            Term::Succ(s, i) => self.st.succ_steps(self.term(s)?, *i),
            Term::Var(_) | Term::Const(_) | Term::Lit(_) | Term::Add(..) | Term::Mul(..) => {
                self.term(t)
            }
        }
    }

    fn log_undefined(&mut self, f: &Formula) {
        self.undefined += 1;
        if self.samples.len() < MAX_SAMPLES {
            let binds: Vec<String> = self
                .bound
                .iter()
                .filter_map(|&v| {
                    self.env[v].map(|x| format!("{}={x}", self.names.get(v).map_or("?", |s| s)))
                })
                .collect();
            let atom = Printer {
                item: f,
                names: self.names,
            }
            .to_string();
            self.samples.push(if binds.is_empty() {
                atom
            } else {
                format!("{atom} at {}", binds.join(", "))
            });
        }
    }

    fn atom1(&mut self, f: &Formula, t: &Term, p: impl Fn(&TwoGenSemigroup, Elem) -> bool) -> bool {
        match self.term(t) {
            Some(x) => p(self.sg, x),
            None => {
                self.log_undefined(f);
                false
            }
        }
    }

    fn atom2(&mut self, f: &Formula, l: &Term, r: &Term, p: impl Fn(Elem, Elem) -> bool) -> bool {
        match (self.term(l), self.term(r)) {
            (Some(x), Some(y)) => p(x, y),
            _ => {
                self.log_undefined(f);
                false
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(l, r) => self.atom2(f, l, r, |x, y| x == y),
            Formula::Lt(l, r) => self.atom2(f, l, r, |x, y| x < y),
            Formula::Le(l, r) => self.atom2(f, l, r, |x, y| x <= y),
            Formula::Ma(t) => self.atom1(f, t, |s, x| s.is_ma(x)),
            Formula::Mb(t) => self.atom1(f, t, |s, x| s.is_mb(x)),
            Formula::R { n, r, t } => self.atom1(f, t, |s, x| s.residue_r(x, *n, *r)),
            Formula::Ra { n, r, t } => self.atom1(f, t, |s, x| {
                s.is_ma(x) && s.residue_ra(x, *n, *r).unwrap_or(false)
            }),
            Formula::Rb { n, r, t } => self.atom1(f, t, |s, x| {
                s.is_mb(x) && s.residue_rb(x, *n, *r).unwrap_or(false)
            }),
            Formula::Not(g) => !self.formula(g),
            Formula::And(gs) => gs.iter().all(|g| self.formula(g)),
            Formula::Or(gs) => gs.iter().any(|g| self.formula(g)),
            Formula::Implies(p, q) => !self.formula(p) || self.formula(q),
            Formula::Iff(p, q) => self.formula(p) == self.formula(q),
            Formula::Exists(q, body) => self.exists(q, body),
            Formula::Forall(q, body) => self.forall(q, body),
        }
    }

    fn bound_value(&mut self, q: &Quant) -> Option<Elem> {
        match &q.bound {
            Bound::Universe => Some(self.cfg.universe),
            Bound::Witness(k) => Some(self.cfg.universe + Elem::from(*k) * self.sg.ab()),
            Bound::Term(t) => {
                let v = self.term(t);
                if v.is_none() {
                    self.undefined += 1;
                }
                v
            }
        }
    }

    /// Solves `t = target` for the single occurrence of `v` in `t`.
    fn invert(&self, t: &Term, v: VarId, target: Elem) -> Inv {
        match t {
            Term::Var(w) if *w == v => Inv::Value(target),
            Term::Add(l, r) => {
                let (inner, other) = if l.occurrences(v) > 0 { (l, r) } else { (r, l) };
                match self.term(other) {
                    Some(o) if target >= o => self.invert(inner, v, target - o),
                    Some(_) => Inv::NoSolution,
                    None => Inv::Unknown,
                }
            }
            Term::Mul(n, s) if *n > 0 => {
                let n = Elem::from(*n);
                if target.is_multiple_of(n) {
                    self.invert(s, v, target / n)
                } else {
                    Inv::NoSolution
                }
            }
            Term::Succ(s, i) => {
                if !self.sg.contains(target) {
                    return Inv::NoSolution;
                }
                match self.st.succ_steps(target, -*i) {
                    Some(x) => self.invert(s, v, x),
                    None => Inv::NoSolution,
                }
            }
            Term::Sub(l, r) => {
                if !self.sg.contains(target) {
                    return Inv::NoSolution;
                }
                if l.occurrences(v) > 0 {
                    match self.term(r) {
                        Some(y) => self.invert(l, v, target + y),
                        None => Inv::Unknown,
                    }
                } else {
                    match self.term(l) {
                        Some(x) if x >= target => self.invert(r, v, x - target),
                        Some(_) => Inv::NoSolution,
                        None => Inv::Unknown,
                    }
                }
            }
            Term::Div(s, n) => {
                if !self.sg.contains(target) {
                    return Inv::NoSolution;
                }
                match target.checked_mul(Elem::from(*n)) {
                    Some(x) => self.invert(s, v, x),
                    None => Inv::NoSolution,
                }
            }
            _ => Inv::Unknown,
        }
    }

    fn is_invertible(t: &Term, v: VarId) -> bool {
        match t {
            Term::Var(w) => *w == v,
            Term::Add(l, r) | Term::Sub(l, r) => match (l.occurrences(v), r.occurrences(v)) {
                (1, 0) => Self::is_invertible(l, v),
                (0, 1) => Self::is_invertible(r, v),
                _ => false,
            },
            Term::Mul(n, s) => *n > 0 && Self::is_invertible(s, v),
            Term::Succ(s, _) | Term::Div(s, _) => Self::is_invertible(s, v),
            _ => false,
        }
    }

    /// Values of `v` outside the plan falsify some conjunct.
    fn plan(&self, v: VarId, conj: &[Formula], hi: Elem) -> Plan {
        let (mut lo, mut hi) = (0 as Elem, hi);
        let mut single = None;
        let free = |t: &Term| t.occurrences(v) == 0;
        let is_v = |t: &Term| matches!(t, Term::Var(w) if *w == v);
        for f in conj {
            match f {
                Formula::Lt(l, r) if is_v(l) && free(r) => match self.term(r) {
                    Some(0) => return Plan::Empty,
                    Some(y) => hi = hi.min(y - 1),
                    None => {}
                },
                Formula::Le(l, r) if is_v(l) && free(r) => {
                    if let Some(y) = self.term(r) {
                        hi = hi.min(y);
                    }
                }
                Formula::Lt(l, r) if is_v(r) && free(l) => {
                    if let Some(y) = self.term(l) {
                        lo = lo.max(y + 1);
                    }
                }
                Formula::Le(l, r) if is_v(r) && free(l) => {
                    if let Some(y) = self.term(l) {
                        lo = lo.max(y);
                    }
                }
                Formula::Eq(l, r) if single.is_none() => {
                    let (side, other) = if free(r) && Self::is_invertible(l, v) {
                        (l, r)
                    } else if free(l) && Self::is_invertible(r, v) {
                        (r, l)
                    } else {
                        continue;
                    };
                    let Some(target) = self.term(other) else {
                        continue;
                    };
                    match self.invert(side, v, target) {
                        Inv::Value(x) => single = Some(x),
                        Inv::NoSolution => return Plan::Empty,
                        Inv::Unknown => {}
                    }
                }
                _ => {}
            }
        }
        match single {
            Some(x) if x >= lo && x <= hi => Plan::Single(x),
            Some(_) => Plan::Empty,
            None if lo > hi => Plan::Empty,
            None => Plan::Range(lo, hi),
        }
    }

    fn in_sort(&self, sort: Sort, x: Elem) -> bool {
        match sort {
            Sort::All => self.sg.contains(x),
            Sort::Ma => self.sg.is_ma(x),
            Sort::Mb => self.sg.is_mb(x),
        }
    }

    fn sample(&mut self) -> &[Elem] {
        if self.sample.is_none() {
            let s = self.sg;
            let u = self.cfg.universe;
            let (a, b, ab) = (Elem::from(s.a()), Elem::from(s.b()), s.ab());
            let mut pts = vec![
                0,
                a,
                2 * a,
                b,
                a + b,
                2 * b,
                s.alpha1(),
                s.beta1(),
                s.conductor(),
                ab - a,
                ab - b,
                ab,
                ab + a,
                ab + b,
                2 * ab,
                2 * ab + a,
                2 * ab + b,
                u / 2,
                u,
            ];
            let n = self.st.rank(u + 1);
            for i in 0..self.cfg.sample_size {
                pts.push(self.st.member_at(i * n / self.cfg.sample_size.max(1)));
            }
            let mut out: Vec<Elem> = Vec::new();
            for p in pts {
                if p > u {
                    continue;
                }
                let p = if s.contains(p) { p } else { s.successor(p) };
                out.push(p);
                out.extend(s.predecessor(p));
                out.push(s.successor(p));
            }
            out.retain(|&x| x <= u);
            out.sort_unstable();
            out.dedup();
            self.sample = Some(out);
        }
        self.sample.as_deref().unwrap()
    }

    /// Calls `f` on candidate values in increasing order until it returns false.
    /// Returns false if `f` did.
    fn scan(&mut self, q: &Quant, plan: Plan, mut f: impl FnMut(&mut Self, Elem) -> bool) -> bool {
        let (lo, hi) = match plan {
            Plan::Empty => return true,
            Plan::Single(x) => {
                return !self.in_sort(q.sort, x) || f(self, x);
            }
            Plan::Range(lo, hi) => (lo, hi),
        };
        match (q.sort, q.domain) {
            (Sort::All, Domain::Full) => {
                let (start, end) = (self.st.rank(lo), self.st.rank(hi.saturating_add(1)));
                for i in start..end {
                    let x = self.st.member_at(i);
                    if !f(self, x) {
                        return false;
                    }
                }
                true
            }
            (Sort::All, Domain::Sampled) => {
                let (i, j) = {
                    let s = self.sample();
                    (
                        s.partition_point(|&x| x < lo),
                        s.partition_point(|&x| x <= hi),
                    )
                };
                (i..j).all(|k| {
                    let x = self.sample.as_ref().expect("sample is built")[k];
                    f(self, x)
                })
            }
            (Sort::Ma | Sort::Mb, _) => {
                let step = Elem::from(if q.sort == Sort::Ma {
                    self.sg.a()
                } else {
                    self.sg.b()
                });
                let ab = self.sg.ab();
                let mut x = lo.div_ceil(step) * step;
                while x < ab && x <= hi {
                    if !f(self, x) {
                        return false;
                    }
                    x += step;
                }
                !(lo <= ab && ab <= hi) || f(self, ab)
            }
        }
    }

    fn with_var<R>(&mut self, v: VarId, x: Elem, k: impl FnOnce(&mut Self) -> R) -> R {
        let saved = self.env[v];
        self.env[v] = Some(x);
        self.bound.push(v);
        let r = k(self);
        self.bound.pop();
        self.env[v] = saved;
        r
    }

    fn exists(&mut self, q: &Quant, body: &Formula) -> bool {
        match body {
            Formula::Or(gs) => return gs.iter().any(|g| self.exists(q, g)),
            Formula::Implies(p, r) if p.is_closed_wrt(q.var) => {
                return !self.formula(p) || self.exists(q, r);
            }
            _ => {}
        }
        let Some(hi) = self.bound_value(q) else {
            return false;
        };
        let plan = self.plan(q.var, conjuncts(body), hi);
        !self.scan(q, plan, |this, x| {
            !this.with_var(q.var, x, |t| t.formula(body))
        })
    }

    fn forall(&mut self, q: &Quant, body: &Formula) -> bool {
        if let Formula::Implies(p, _) = body {
            // a false conjunct not mentioning the variable makes every instance vacuous
            let closed = conjuncts(p).iter().filter(|g| g.is_closed_wrt(q.var));
            for g in closed {
                if !self.formula(g) {
                    return true;
                }
            }
        }
        let Some(hi) = self.bound_value(q) else {
            return false;
        };
        let plan = match body {
            Formula::Implies(p, _) => self.plan(q.var, conjuncts(p), hi),
            _ => Plan::Range(0, hi),
        };
        self.scan(q, plan, |this, x| {
            let ok = this.with_var(q.var, x, |t| t.formula(body));
            if !ok {
                let keep = matches!(&this.cex, Some(c) if c.contains(&(q.var, x)));
                if !keep {
                    let mut snap: Vec<(VarId, Elem)> = this
                        .bound
                        .iter()
                        .filter_map(|&v| this.env[v].map(|y| (v, y)))
                        .collect();
                    snap.push((q.var, x));
                    this.cex = Some(snap);
                }
            }
            ok
        })
    }
}

impl Formula {
    /// True if `v` does not occur free.
    pub fn is_closed_wrt(&self, v: VarId) -> bool {
        let mut free = true;
        self.for_each_atom_term(&mut |t| free &= t.occurrences(v) == 0);
        free
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::parse::{parse_sentence, parse_term};

    fn st(a: u64, b: u64) -> Structure {
        Structure::new(TwoGenSemigroup::new(a, b).unwrap())
    }

    fn holds(s: &Structure, src: &str) -> EvalReport {
        eval_formula(
            s,
            &parse_sentence(src).unwrap(),
            &EvalConfig::auto(s.semigroup()),
        )
    }

    #[test]
    fn term_examples() {
        let s = st(4, 7);
        let t = |src: &str| eval_term(&s, &[], &parse_term(src).unwrap()).unwrap();
        assert_eq!(t("(alpha (beta a))"), Some(4));
        assert_eq!(t("(- a b)"), None);
        assert_eq!(t("(succ 1 alpha1)"), Some(21));
        assert_eq!(t("(succ 1 4)"), Some(7));
        assert_eq!(t("(succ -1 7)"), Some(4));
        assert_eq!(t("(succ -1 0)"), None);
        assert_eq!(t("(div 14 2)"), Some(7));
        assert_eq!(t("(div 18 2)"), None);
        assert_eq!(t("(pi-a 30 1)"), Some(16));
        assert_eq!(t("(pi-b 30 1)"), Some(14));
        assert_eq!(t("(pi-a 30 0)"), None);
        assert_eq!(t("10"), None);
        assert!(matches!(
            eval_term(&s, &[], &Term::Var(0)),
            Err(Error::UnboundVariable(_))
        ));
    }

    #[test]
    fn formula_examples() {
        let s = st(4, 7);
        assert!(holds(&s, "(and (Ma ab) (Mb ab))").value);
        let r = holds(&s, "(exists (x 28) (= (+ x b) a))");
        assert!(!r.value);
        assert_eq!(r.undefined, 0);
        assert!(holds(&st(5, 7), "(R 2 1 b)").value);
    }

    #[test]
    fn undefined_atoms_are_false_and_logged() {
        let s = st(4, 7);
        let r = holds(&s, "(not (= (- a b) 0))");
        assert!(r.value);
        assert_eq!(r.undefined, 1);
        assert!(r.undefined_samples[0].contains("(- a b)"));
    }

    #[test]
    fn counterexample_is_reported() {
        let s = st(4, 7);
        let r = holds(
            &s,
            "(forall (x U) (forall (y U) (=> (< x y) (< (+ x 10) y))))",
        );
        assert!(!r.value);
        let cex = r.counterexample.unwrap();
        assert_eq!(cex, vec![("x".to_string(), 0), ("y".to_string(), 4)]);
    }

    #[test]
    fn shortcuts_agree_with_plain_scan() {
        // Wrapping comparisons in `not not` hides them from the planner.
        let s = st(5, 7);
        for src in [
            "(forall (x U) (=> (< 0 x) (exists (y U) (or (= (+ y a) x) (= (+ y b) x)))))",
            "(forall (x U) (<=> (R 3 1 x) (exists (y (W 3)) (= (+ (* 3 ab) x) (succ 1 (* 3 y))))))",
            "(forall (x 40) (exists (y U) (and (<= x y) (< y (+ x 3)) (Mb y))))",
            "(exists (y U) (= (- y 7) 15))",
            "(exists (y U) (= (div y 2) 7))",
            "(exists (y U) (= (succ 3 y) 12))",
        ] {
            let fast = holds(&s, src);
            let f = parse_sentence(src).unwrap();
            let slow = eval_formula(&s, &hide_equations(&f), &EvalConfig::auto(s.semigroup()));
            assert_eq!(fast.value, slow.value, "{src}");
        }
    }

    fn hide_equations(s: &Sentence) -> Sentence {
        fn go(f: &Formula) -> Formula {
            match f {
                Formula::Eq(..) | Formula::Lt(..) | Formula::Le(..) => {
                    Formula::not(Formula::not(f.clone()))
                }
                Formula::Not(g) => Formula::not(go(g)),
                Formula::And(gs) => Formula::And(gs.iter().map(go).collect()),
                Formula::Or(gs) => Formula::And(vec![Formula::Or(gs.iter().map(go).collect())]),
                Formula::Implies(p, q) => Formula::And(vec![Formula::implies(go(p), go(q))]),
                Formula::Iff(p, q) => Formula::iff(go(p), go(q)),
                Formula::Forall(q, g) => Formula::Forall(q.clone(), Box::new(go(g))),
                Formula::Exists(q, g) => Formula::Exists(q.clone(), Box::new(go(g))),
                other => other.clone(),
            }
        }
        Sentence {
            formula: go(&s.formula),
            names: s.names.clone(),
        }
    }

    #[test]
    fn member_table_rank() {
        let s = st(4, 7);
        let members: Vec<Elem> = (0..30).map(|i| s.member_at(i)).collect();
        assert_eq!(&members[..8], &[0, 4, 7, 8, 11, 12, 14, 15]);
        for x in 0..60 {
            assert_eq!(
                s.rank(x),
                (0..x).filter(|&y| s.semigroup().contains(y)).count()
            );
        }
    }
}
