use super::{LimitModel, SymbolicElement};
use crate::error::{Error, Result};
use crate::fo::{Formula, Sentence, Term};
use num_rational::Ratio;

/// Outcome of a quantifier-free sentence in the limit model. Atoms with an
/// undefined term are false and counted once, exactly as in finite evaluation.
/// Connectives short-circuit left to right, so unreached atoms are not counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QfReport {
    pub value: bool,
    pub undefined: u64,
}

/// Value of a ground term, `None` where a partial function is undefined.
pub fn eval_sym_term(md: &LimitModel, t: &Term) -> Result<Option<SymbolicElement>> {
    let member = |x: SymbolicElement| -> Result<Option<SymbolicElement>> {
        Ok(if x >= SymbolicElement::zero() && md.is_member(&x)? {
            Some(x)
        } else {
            None
        })
    };
    let sub = |t: &Term| eval_sym_term(md, t);
    Ok(match t {
        Term::Var(v) => return Err(Error::UnboundVariable(format!("#{v}"))),
        Term::Const(c) => Some(md.constant(*c)),
        Term::Lit(k) => (*k == 0).then(SymbolicElement::zero),
        Term::Add(l, r) => match (sub(l)?, sub(r)?) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        },
        Term::Sub(l, r) => match (sub(l)?, sub(r)?) {
            (Some(x), Some(y)) => member(x - y)?,
            _ => None,
        },
        Term::Mul(n, s) => sub(s)?.map(|x| x.scale(Ratio::from_integer(i128::from(*n)))),
        Term::Div(s, n) => match sub(s)? {
            Some(x) if md.residue_of(&x, *n)? == 0 => {
                member(x.scale(Ratio::new(1, i128::from(*n))))?
            }
            _ => None,
        },
        Term::Alpha(s) => match sub(s)? {
            Some(x) if x <= md.ab_elem() => Some(md.alpha_sym(&x)?),
            _ => None,
        },
        Term::Beta(s) => match sub(s)? {
            Some(x) if x <= md.ab_elem() => Some(md.beta_sym(&x)?),
            _ => None,
        },
        Term::PiA(s, level) | Term::PiB(s, level) => match sub(s)? {
            Some(x) => {
                let lo = md.ab_elem().scale(Ratio::from_integer(i128::from(*level)));
                if x < lo || x >= lo + md.ab_elem() {
                    None
                } else {
                    let d = md.decompose(&x)?;
                    Some(if matches!(t, Term::PiA(..)) {
                        d.a_part
                    } else {
                        d.b_part
                    })
                }
            }
            None => None,
        },
        Term::Succ(s, i) => match sub(s)? {
            Some(x) => Some(md.succ(&x, *i)?),
            None => None,
        },
    })
}

struct Ctx<'a> {
    md: &'a LimitModel,
    undefined: u64,
}

impl Ctx<'_> {
    fn cmp(
        &mut self,
        l: &Term,
        r: &Term,
        f: impl Fn(&SymbolicElement, &SymbolicElement) -> bool,
    ) -> Result<bool> {
        match (eval_sym_term(self.md, l)?, eval_sym_term(self.md, r)?) {
            (Some(x), Some(y)) => Ok(f(&x, &y)),
            _ => {
                self.undefined += 1;
                Ok(false)
            }
        }
    }

    fn atom(
        &mut self,
        t: &Term,
        f: impl Fn(&LimitModel, &SymbolicElement) -> Result<bool>,
    ) -> Result<bool> {
        match eval_sym_term(self.md, t)? {
            Some(x) => f(self.md, &x),
            None => {
                self.undefined += 1;
                Ok(false)
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<bool> {
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(l, r) => self.cmp(l, r, |x, y| x == y)?,
            Formula::Lt(l, r) => self.cmp(l, r, |x, y| x < y)?,
            Formula::Le(l, r) => self.cmp(l, r, |x, y| x <= y)?,
            Formula::Ma(t) => self.atom(t, |md, x| md.is_ma(x))?,
            Formula::Mb(t) => self.atom(t, |md, x| md.is_mb(x))?,
            Formula::R { n, r, t } => self.atom(t, |md, x| Ok(md.residue_of(x, *n)? == *r))?,
            Formula::Ra { n, r, t } => self.atom(t, |md, x| md.ra(x, *n, *r))?,
            Formula::Rb { n, r, t } => self.atom(t, |md, x| md.rb(x, *n, *r))?,
            Formula::Not(g) => !self.formula(g)?,
            Formula::And(gs) => {
                for g in gs {
                    if !self.formula(g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(gs) => {
                for g in gs {
                    if self.formula(g)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(p, q) => !self.formula(p)? || self.formula(q)?,
            Formula::Iff(p, q) => self.formula(p)? == self.formula(q)?,
            Formula::Forall(..) | Formula::Exists(..) => {
                return Err(Error::Unsupported("quantifiers in the limit model".into()))
            }
        })
    }
}

/// Truth value of a closed quantifier-free sentence in the prime model.
pub fn eval_qf_sentence(md: &LimitModel, s: &Sentence) -> Result<QfReport> {
    let mut ctx = Ctx { md, undefined: 0 };
    let value = ctx.formula(&s.formula)?;
    Ok(QfReport {
        value,
        undefined: ctx.undefined,
    })
}
