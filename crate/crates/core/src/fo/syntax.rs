use std::fmt;

/// Index of a bound variable; names live in [`Sentence::names`].
pub type VarId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Const {
    A,
    B,
    AB,
    Alpha1,
    Beta1,
    /// The conductor.
    C,
}

impl Const {
    pub fn symbol(self) -> &'static str {
        match self {
            Const::A => "a",
            Const::B => "b",
            Const::AB => "ab",
            Const::Alpha1 => "alpha1",
            Const::Beta1 => "beta1",
            Const::C => "c",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Const> {
        Some(match s {
            "a" => Const::A,
            "b" => Const::B,
            "ab" => Const::AB,
            "alpha1" => Const::Alpha1,
            "beta1" => Const::Beta1,
            "c" => Const::C,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(VarId),
    Const(Const),
    /// A numeral. Denotes that natural number when it is an element.
    Lit(u128),
    Add(Box<Term>, Box<Term>),
    /// Partial: defined when the difference is an element.
    Sub(Box<Term>, Box<Term>),
    /// `n(t)`, the n-fold sum.
    Mul(u64, Box<Term>),
    /// Partial: `t/n`, defined when `n | t` and the quotient is an element.
    Div(Box<Term>, u64),
    Alpha(Box<Term>),
    Beta(Box<Term>),
    /// `pi_a^level`, defined on `[level*ab, (level+1)*ab)`.
    PiA(Box<Term>, u32),
    PiB(Box<Term>, u32),
    /// `s^i(t)`: i-th successor, or predecessor for negative i.
    Succ(Box<Term>, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    All,
    Ma,
    Mb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Full,
    /// Notable elements plus evenly spaced members; see `EvalConfig::sample_size`.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Term(Term),
    /// The universe bound supplied at evaluation time.
    Universe,
    /// Universe bound plus `k * ab`, used for existential witnesses.
    Witness(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quant {
    pub var: VarId,
    pub bound: Bound,
    pub sort: Sort,
    pub domain: Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Lt(Term, Term),
    Le(Term, Term),
    Ma(Term),
    Mb(Term),
    R { n: u64, r: u64, t: Term },
    Ra { n: u64, r: u64, t: Term },
    Rb { n: u64, r: u64, t: Term },
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Quant, Box<Formula>),
    Exists(Quant, Box<Formula>),
}

/// A formula together with the names of its variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub formula: Formula,
    pub names: Vec<String>,
}

impl Term {
    pub fn var(v: VarId) -> Term {
        Term::Var(v)
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Term, r: Term) -> Term {
        Term::Sub(Box::new(l), Box::new(r))
    }

    /// Number of occurrences of `v`.
    pub fn occurrences(&self, v: VarId) -> usize {
        match self {
            Term::Var(w) => usize::from(*w == v),
            Term::Const(_) | Term::Lit(_) => 0,
            Term::Add(l, r) | Term::Sub(l, r) => l.occurrences(v) + r.occurrences(v),
            Term::Mul(_, t)
            | Term::Div(t, _)
            | Term::Alpha(t)
            | Term::Beta(t)
            | Term::PiA(t, _)
            | Term::PiB(t, _)
            | Term::Succ(t, _) => t.occurrences(v),
        }
    }

    pub fn is_ground(&self) -> bool {
        let mut vars = Vec::new();
        self.collect_vars(&mut vars);
        vars.is_empty()
    }

    pub fn collect_vars(&self, out: &mut Vec<VarId>) {
        match self {
            Term::Var(w) => out.push(*w),
            Term::Const(_) | Term::Lit(_) => {}
            Term::Add(l, r) | Term::Sub(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Mul(_, t)
            | Term::Div(t, _)
            | Term::Alpha(t)
            | Term::Beta(t)
            | Term::PiA(t, _)
            | Term::PiB(t, _)
            | Term::Succ(t, _) => t.collect_vars(out),
        }
    }

    /// Largest numeral or multiplier appearing in the term.
    pub fn max_coefficient(&self) -> u128 {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Lit(k) => *k,
            Term::Add(l, r) | Term::Sub(l, r) => l.max_coefficient().max(r.max_coefficient()),
            Term::Mul(n, t) | Term::Div(t, n) => u128::from(*n).max(t.max_coefficient()),
            Term::Alpha(t) | Term::Beta(t) => t.max_coefficient(),
            Term::PiA(t, l) | Term::PiB(t, l) => u128::from(*l + 1).max(t.max_coefficient()),
            Term::Succ(t, i) => u128::from(i.unsigned_abs()).max(t.max_coefficient()),
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(p: Formula, q: Formula) -> Formula {
        Formula::Implies(Box::new(p), Box::new(q))
    }

    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::Iff(Box::new(p), Box::new(q))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.is_quantifier_free() && q.is_quantifier_free()
            }
            _ => true,
        }
    }

    /// Calls `f` on every term at the top of an atom.
    pub fn for_each_atom_term(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(l, r) | Formula::Lt(l, r) | Formula::Le(l, r) => {
                f(l);
                f(r);
            }
            Formula::Ma(t)
            | Formula::Mb(t)
            | Formula::R { t, .. }
            | Formula::Ra { t, .. }
            | Formula::Rb { t, .. } => f(t),
            Formula::Not(g) => g.for_each_atom_term(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.for_each_atom_term(f)),
            Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.for_each_atom_term(f);
                q.for_each_atom_term(f);
            }
            Formula::Forall(q, g) | Formula::Exists(q, g) => {
                if let Bound::Term(t) = &q.bound {
                    f(t);
                }
                g.for_each_atom_term(f);
            }
        }
    }

    /// Largest integer parameter: numerals, multipliers, residue moduli.
    pub fn max_coefficient(&self) -> u128 {
        let mut m = 0u128;
        self.for_each_atom_term(&mut |t| m = m.max(t.max_coefficient()));
        self.visit_residues(&mut |n, _| m = m.max(u128::from(n)));
        m
    }

    /// Calls `f(n, r)` for every residue atom.
    pub fn visit_residues(&self, f: &mut impl FnMut(u64, u64)) {
        match self {
            Formula::R { n, r, .. } | Formula::Ra { n, r, .. } | Formula::Rb { n, r, .. } => {
                f(*n, *r)
            }
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_residues(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit_residues(f)),
            Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.visit_residues(f);
                q.visit_residues(f);
            }
            _ => {}
        }
    }
}

/// Prints in the s-expression grammar accepted by [`crate::fo::parse`].
pub struct Printer<'a, T: ?Sized> {
    pub item: &'a T,
    pub names: &'a [String],
}

impl fmt::Display for Printer<'_, Term> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |t: &Term| {
            Printer {
                item: t,
                names: self.names,
            }
            .to_string()
        };
        match self.item {
            Term::Var(v) => match self.names.get(*v) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "?{v}"),
            },
            Term::Const(c) => write!(f, "{}", c.symbol()),
            Term::Lit(k) => write!(f, "{k}"),
            Term::Add(l, r) => write!(f, "(+ {} {})", p(l), p(r)),
            Term::Sub(l, r) => write!(f, "(- {} {})", p(l), p(r)),
            Term::Mul(n, t) => write!(f, "(* {n} {})", p(t)),
            Term::Div(t, n) => write!(f, "(div {} {n})", p(t)),
            Term::Alpha(t) => write!(f, "(alpha {})", p(t)),
            Term::Beta(t) => write!(f, "(beta {})", p(t)),
            Term::PiA(t, l) => write!(f, "(pi-a {} {l})", p(t)),
            Term::PiB(t, l) => write!(f, "(pi-b {} {l})", p(t)),
            Term::Succ(t, i) => write!(f, "(succ {i} {})", p(t)),
        }
    }
}

impl fmt::Display for Printer<'_, Formula> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |t: &Term| {
            Printer {
                item: t,
                names: self.names,
            }
            .to_string()
        };
        let g = |g: &Formula| {
            Printer {
                item: g,
                names: self.names,
            }
            .to_string()
        };
        let list = |gs: &[Formula]| gs.iter().map(g).collect::<Vec<_>>().join(" ");
        match self.item {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Eq(l, r) => write!(f, "(= {} {})", t(l), t(r)),
            Formula::Lt(l, r) => write!(f, "(< {} {})", t(l), t(r)),
            Formula::Le(l, r) => write!(f, "(<= {} {})", t(l), t(r)),
            Formula::Ma(x) => write!(f, "(Ma {})", t(x)),
            Formula::Mb(x) => write!(f, "(Mb {})", t(x)),
            Formula::R { n, r, t: x } => write!(f, "(R {n} {r} {})", t(x)),
            Formula::Ra { n, r, t: x } => write!(f, "(Ra {n} {r} {})", t(x)),
            Formula::Rb { n, r, t: x } => write!(f, "(Rb {n} {r} {})", t(x)),
            Formula::Not(x) => write!(f, "(not {})", g(x)),
            Formula::And(gs) => write!(f, "(and {})", list(gs)),
            Formula::Or(gs) => write!(f, "(or {})", list(gs)),
            Formula::Implies(p, q) => write!(f, "(=> {} {})", g(p), g(q)),
            Formula::Iff(p, q) => write!(f, "(<=> {} {})", g(p), g(q)),
            Formula::Forall(q, body) | Formula::Exists(q, body) => {
                let kw = if matches!(self.item, Formula::Forall(..)) {
                    "forall"
                } else {
                    "exists"
                };
                let name = self
                    .names
                    .get(q.var)
                    .cloned()
                    .unwrap_or_else(|| format!("?{}", q.var));
                let bound = match &q.bound {
                    Bound::Universe => "U".to_string(),
                    Bound::Witness(k) => format!("(W {k})"),
                    Bound::Term(b) => t(b),
                };
                let sort = match q.sort {
                    Sort::All => "",
                    Sort::Ma => " :ma",
                    Sort::Mb => " :mb",
                };
                let dom = if q.domain == Domain::Sampled {
                    " :sampled"
                } else {
                    ""
                };
                write!(f, "({kw} ({name} {bound}{sort}{dom}) {})", g(body))
            }
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            Printer {
                item: &self.formula,
                names: &self.names
            }
        )
    }
}
