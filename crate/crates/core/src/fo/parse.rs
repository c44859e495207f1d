//! S-expression grammar for terms and formulas.
//!
//! ```text
//! term    := NUMERAL | a | b | ab | alpha1 | beta1 | c | VAR
//!          | (+ term term ...) | (- term term) | (* N term) | (div term N)
//!          | (alpha term) | (beta term) | (pi-a term L) | (pi-b term L)
//!          | (succ I term)
//! formula := true | false
//!          | (= term term) | (< term term) | (<= term term) | (> term term) | (>= term term)
//!          | (Ma term) | (Mb term) | (R N R term) | (Ra N R term) | (Rb N R term)
//!          | (not formula) | (and formula ...) | (or formula ...)
//!          | (=> formula formula) | (<=> formula formula)
//!          | (forall binding formula) | (exists binding formula)
//!          | (forall (binding ...) formula) | (exists (binding ...) formula)
//! binding := (VAR bound option*)
//! bound   := U | (W K) | term
//! option  := :ma | :mb | :sampled
//! catalog := (define NAME formula)*
//! ```
//!
//! `U` is the universe bound chosen at evaluation time and `(W k)` is
//! `U + k*ab`. `:ma`/`:mb` restrict the variable to `M_a`/`M_b`. Residue
//! atoms need `r < n`. Comments run from `;` to end of line.

use super::syntax::{Bound, Const, Domain, Formula, Quant, Sentence, Sort, Term, VarId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn read_all(src: &str) -> Result<Vec<Sexp>> {
    let bytes = src.as_bytes();
    let mut stack: Vec<(Vec<Sexp>, usize)> = vec![(Vec::new(), 0)];
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                stack.push((Vec::new(), i));
                i += 1;
            }
            b')' => {
                if stack.len() == 1 {
                    return err(i, "unbalanced `)`");
                }
                let (items, start) = stack.pop().unwrap();
                stack.last_mut().unwrap().0.push(Sexp::List(items, start));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'(' | b')' | b';')
                {
                    i += 1;
                }
                stack
                    .last_mut()
                    .unwrap()
                    .0
                    .push(Sexp::Atom(src[start..i].to_string(), start));
            }
        }
    }
    if stack.len() > 1 {
        return err(stack.last().unwrap().1, "unclosed `(`");
    }
    Ok(stack.pop().unwrap().0)
}

struct Parser {
    names: Vec<String>,
    scope: Vec<(String, VarId)>,
}

const RESERVED: &[&str] = &[
    "a", "b", "ab", "alpha1", "beta1", "c", "U", "W", "true", "false", "define",
];

fn int<T: std::str::FromStr>(s: &Sexp, what: &str) -> Result<T> {
    match s {
        Sexp::Atom(a, p) => a
            .parse()
            .or_else(|_| err(*p, format!("expected {what}, got `{a}`"))),
        Sexp::List(_, p) => err(*p, format!("expected {what}")),
    }
}

impl Parser {
    fn new() -> Self {
        Parser {
            names: Vec::new(),
            scope: Vec::new(),
        }
    }

    fn lookup(&self, name: &str) -> Option<VarId> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    fn term(&mut self, s: &Sexp) -> Result<Term> {
        match s {
            Sexp::Atom(a, p) => {
                if let Some(c) = Const::from_symbol(a) {
                    return Ok(Term::Const(c));
                }
                if a.bytes().all(|b| b.is_ascii_digit()) {
                    return a
                        .parse()
                        .map(Term::Lit)
                        .or_else(|_| err(*p, "numeral too large"));
                }
                self.lookup(a)
                    .map(Term::Var)
                    .ok_or_else(|| Error::UnboundVariable(a.clone()))
            }
            Sexp::List(items, p) => {
                let (head, args) = match items.split_first() {
                    Some((Sexp::Atom(h, _), rest)) => (h.as_str(), rest),
                    _ => return err(*p, "expected an operator"),
                };
                let arity = |n: usize| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        err(*p, format!("`{head}` takes {n} arguments"))
                    }
                };
                let boxed = |this: &mut Self, s: &Sexp| this.term(s).map(Box::new);
                Ok(match head {
                    "+" => {
                        if args.len() < 2 {
                            return err(*p, "`+` takes at least 2 arguments");
                        }
                        let mut acc = self.term(&args[0])?;
                        for a in &args[1..] {
                            acc = Term::add(acc, self.term(a)?);
                        }
                        acc
                    }
                    "-" => {
                        arity(2)?;
                        Term::Sub(boxed(self, &args[0])?, boxed(self, &args[1])?)
                    }
                    "*" => {
                        arity(2)?;
                        Term::Mul(int(&args[0], "a multiplier")?, boxed(self, &args[1])?)
                    }
                    "div" => {
                        arity(2)?;
                        let n: u64 = int(&args[1], "a divisor")?;
                        if n < 2 {
                            return err(args[1].pos(), "divisor must be at least 2");
                        }
                        Term::Div(boxed(self, &args[0])?, n)
                    }
                    "alpha" => {
                        arity(1)?;
                        Term::Alpha(boxed(self, &args[0])?)
                    }
                    "beta" => {
                        arity(1)?;
                        Term::Beta(boxed(self, &args[0])?)
                    }
                    "pi-a" | "pi-b" => {
                        arity(2)?;
                        let t = boxed(self, &args[0])?;
                        let level = int(&args[1], "a level")?;
                        if head == "pi-a" {
                            Term::PiA(t, level)
                        } else {
                            Term::PiB(t, level)
                        }
                    }
                    "succ" => {
                        arity(2)?;
                        Term::Succ(boxed(self, &args[1])?, int(&args[0], "a step count")?)
                    }
                    _ => return err(*p, format!("unknown function `{head}`")),
                })
            }
        }
    }

    fn residue(&mut self, args: &[Sexp], p: usize) -> Result<(u64, u64, Term)> {
        if args.len() != 3 {
            return err(p, "residue atoms take `n r term`");
        }
        let n: u64 = int(&args[0], "a modulus")?;
        let r: u64 = int(&args[1], "a residue")?;
        if n == 0 || r >= n {
            return err(p, format!("need 0 <= r < n, got n={n} r={r}"));
        }
        Ok((n, r, self.term(&args[2])?))
    }

    fn binding(&mut self, s: &Sexp) -> Result<(String, Quant)> {
        let (items, p) = match s {
            Sexp::List(items, p) if items.len() >= 2 => (items, *p),
            _ => return err(s.pos(), "expected a binding `(var bound ...)`"),
        };
        let name = match &items[0] {
            Sexp::Atom(n, np) => {
                if RESERVED.contains(&n.as_str())
                    || n.starts_with(':')
                    || n.bytes().all(|b| b.is_ascii_digit())
                {
                    return err(*np, format!("`{n}` cannot be a variable"));
                }
                n.clone()
            }
            _ => return err(p, "expected a variable name"),
        };
        let bound = match &items[1] {
            Sexp::Atom(u, _) if u == "U" => Bound::Universe,
            Sexp::List(w, _) if matches!(w.first(), Some(Sexp::Atom(h, _)) if h == "W") => {
                if w.len() != 2 {
                    return err(p, "`(W k)` takes one argument");
                }
                Bound::Witness(int(&w[1], "a witness multiplier")?)
            }
            other => Bound::Term(self.term(other)?),
        };
        let mut quant = Quant {
            var: 0,
            bound,
            sort: Sort::All,
            domain: Domain::Full,
        };
        for opt in &items[2..] {
            match opt {
                Sexp::Atom(o, _) if o == ":ma" => quant.sort = Sort::Ma,
                Sexp::Atom(o, _) if o == ":mb" => quant.sort = Sort::Mb,
                Sexp::Atom(o, _) if o == ":sampled" => quant.domain = Domain::Sampled,
                other => return err(other.pos(), "unknown binding option"),
            }
        }
        Ok((name, quant))
    }

    fn formula(&mut self, s: &Sexp) -> Result<Formula> {
        let (items, p) = match s {
            Sexp::Atom(a, _) if a == "true" => return Ok(Formula::True),
            Sexp::Atom(a, _) if a == "false" => return Ok(Formula::False),
            Sexp::Atom(a, p) => return err(*p, format!("expected a formula, got `{a}`")),
            Sexp::List(items, p) => (items, *p),
        };
        let (head, args) = match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) => (h.as_str(), rest),
            _ => return err(p, "expected a connective or predicate"),
        };
        let two_terms = |this: &mut Self| -> Result<(Term, Term)> {
            if args.len() != 2 {
                return err(p, format!("`{head}` takes 2 terms"));
            }
            Ok((this.term(&args[0])?, this.term(&args[1])?))
        };
        let one_term = |this: &mut Self| -> Result<Term> {
            if args.len() != 1 {
                return err(p, format!("`{head}` takes 1 term"));
            }
            this.term(&args[0])
        };
        Ok(match head {
            "=" => {
                let (l, r) = two_terms(self)?;
                Formula::Eq(l, r)
            }
            "<" => {
                let (l, r) = two_terms(self)?;
                Formula::Lt(l, r)
            }
            "<=" => {
                let (l, r) = two_terms(self)?;
                Formula::Le(l, r)
            }
            ">" => {
                let (l, r) = two_terms(self)?;
                Formula::Lt(r, l)
            }
            ">=" => {
                let (l, r) = two_terms(self)?;
                Formula::Le(r, l)
            }
            "Ma" => Formula::Ma(one_term(self)?),
            "Mb" => Formula::Mb(one_term(self)?),
            "R" => {
                let (n, r, t) = self.residue(args, p)?;
                Formula::R { n, r, t }
            }
            "Ra" => {
                let (n, r, t) = self.residue(args, p)?;
                Formula::Ra { n, r, t }
            }
            "Rb" => {
                let (n, r, t) = self.residue(args, p)?;
                Formula::Rb { n, r, t }
            }
            "not" => {
                if args.len() != 1 {
                    return err(p, "`not` takes 1 formula");
                }
                Formula::not(self.formula(&args[0])?)
            }
            "and" | "or" => {
                let fs = args
                    .iter()
                    .map(|a| self.formula(a))
                    .collect::<Result<Vec<_>>>()?;
                if head == "and" {
                    Formula::And(fs)
                } else {
                    Formula::Or(fs)
                }
            }
            "=>" | "<=>" => {
                if args.len() != 2 {
                    return err(p, format!("`{head}` takes 2 formulas"));
                }
                let l = self.formula(&args[0])?;
                let r = self.formula(&args[1])?;
                if head == "=>" {
                    Formula::implies(l, r)
                } else {
                    Formula::iff(l, r)
                }
            }
            "forall" | "exists" => {
                if args.len() != 2 {
                    return err(p, format!("`{head}` takes bindings and a body"));
                }
                let bindings: Vec<&Sexp> = match &args[0] {
                    Sexp::List(bs, _) if matches!(bs.first(), Some(Sexp::List(..))) => {
                        bs.iter().collect()
                    }
                    single => vec![single],
                };
                let mut quants = Vec::new();
                for b in bindings {
                    // Bounds may mention earlier bindings of the same group.
                    let (name, mut q) = self.binding(b)?;
                    q.var = self.names.len();
                    self.names.push(name.clone());
                    self.scope.push((name, q.var));
                    quants.push(q);
                }
                let mut body = self.formula(&args[1])?;
                for q in quants.into_iter().rev() {
                    self.scope.pop();
                    body = if head == "forall" {
                        Formula::Forall(q, Box::new(body))
                    } else {
                        Formula::Exists(q, Box::new(body))
                    };
                }
                body
            }
            _ => return err(p, format!("unknown predicate or connective `{head}`")),
        })
    }
}

fn single(src: &str) -> Result<Sexp> {
    let mut items = read_all(src)?;
    match items.len() {
        1 => Ok(items.pop().unwrap()),
        0 => err(0, "empty input"),
        _ => err(items[1].pos(), "trailing input"),
    }
}

/// Parses a closed formula.
pub fn parse_sentence(src: &str) -> Result<Sentence> {
    let mut p = Parser::new();
    let formula = p.formula(&single(src)?)?;
    Ok(Sentence {
        formula,
        names: p.names,
    })
}

/// Parses a formula whose free variables are `free`, in that order.
/// They get the first variable ids.
pub fn parse_open(src: &str, free: &[&str]) -> Result<Sentence> {
    let mut p = Parser::new();
    for (i, name) in free.iter().enumerate() {
        p.names.push(name.to_string());
        p.scope.push((name.to_string(), i));
    }
    let formula = p.formula(&single(src)?)?;
    Ok(Sentence {
        formula,
        names: p.names,
    })
}

/// Parses a ground term.
pub fn parse_term(src: &str) -> Result<Term> {
    Parser::new().term(&single(src)?)
}

/// Parses a sequence of `(define NAME formula)` forms.
pub fn parse_catalog(src: &str) -> Result<Vec<(String, Sentence)>> {
    let mut out: Vec<(String, Sentence)> = Vec::new();
    for item in read_all(src)? {
        let (items, p) = match &item {
            Sexp::List(items, p) => (items, *p),
            Sexp::Atom(_, p) => return err(*p, "expected `(define NAME formula)`"),
        };
        match items.as_slice() {
            [Sexp::Atom(d, _), Sexp::Atom(name, np), body] if d == "define" => {
                if out.iter().any(|(n, _)| n == name) {
                    return err(*np, format!("duplicate definition `{name}`"));
                }
                let mut parser = Parser::new();
                let formula = parser.formula(body)?;
                out.push((
                    name.clone(),
                    Sentence {
                        formula,
                        names: parser.names,
                    },
                ));
            }
            _ => return err(p, "expected `(define NAME formula)`"),
        }
    }
    Ok(out)
}
