use super::{Branch, LimitModel};
use crate::error::{Error, Result};
use crate::fo::Const;
use crate::semigroup::Elem;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub type Q = Ratio<i128>;

fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

fn qi(n: impl Into<i128>) -> Q {
    Ratio::from_integer(n.into())
}

/// `ab*ab + b*b + a*a + one` with rational coefficients. In the rational
/// branch `b` is always expanded, so the `b` coefficient is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymbolicElement {
    pub ab: Q,
    pub b: Q,
    pub a: Q,
    pub one: Q,
}

impl SymbolicElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        SymbolicElement {
            one: Q::one(),
            ..Self::default()
        }
    }

    pub fn scale(self, s: Q) -> Self {
        SymbolicElement {
            ab: self.ab * s,
            b: self.b * s,
            a: self.a * s,
            one: self.one * s,
        }
    }

    fn coeffs(&self) -> [Q; 4] {
        [self.ab, self.b, self.a, self.one]
    }

    /// Value at a concrete pair, if it is a non-negative integer.
    pub fn eval_at(&self, a: u64, b: u64) -> Option<Elem> {
        let (ai, bi) = (i128::from(a), i128::from(b));
        let v = self.ab * qi(ai.checked_mul(bi)?) + self.b * qi(bi) + self.a * qi(ai) + self.one;
        (v.is_integer() && !v.is_negative()).then(|| v.to_integer() as Elem)
    }

    fn sign(&self) -> Ordering {
        self.cmp(&Self::zero())
    }
}

impl Ord for SymbolicElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

impl PartialOrd for SymbolicElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for SymbolicElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SymbolicElement {
            ab: self.ab + o.ab,
            b: self.b + o.b,
            a: self.a + o.a,
            one: self.one + o.one,
        }
    }
}

impl Sub for SymbolicElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for SymbolicElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-Q::one())
    }
}

impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs().into_iter().zip(["ab", "b", "a", ""]) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let c = c.abs();
            match (c.is_one(), name.is_empty()) {
                (true, false) => write!(f, "{name}")?,
                (_, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{name}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Unique decomposition `m*ab + a_part + b_part` of a symbolic element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymDecomposition {
    pub m: i128,
    pub a_part: SymbolicElement,
    pub b_part: SymbolicElement,
}

/// A rational combination of the integer unknowns `ab`, `b`, `a`,
/// `i = alpha(b)/a` and `1`, used for quotients and indices.
#[derive(Debug, Clone, Copy, Default)]
struct Affine {
    ab: Q,
    b: Q,
    a: Q,
    i: Q,
    one: Q,
}

impl Affine {
    fn scale(self, s: Q) -> Self {
        Affine {
            ab: self.ab * s,
            b: self.b * s,
            a: self.a * s,
            i: self.i * s,
            one: self.one * s,
        }
    }
}

fn sign(x: Q) -> Ordering {
    x.cmp(&Q::zero())
}

fn lex_sign(xs: &[Q]) -> Ordering {
    xs.iter()
        .map(|&x| sign(x))
        .find(|&o| o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Floor of a standard rational plus an infinitesimal of the given sign.
fn floor_std(x: Q, eps: Ordering) -> i128 {
    let f = x.floor().to_integer();
    if x.is_integer() && eps == Ordering::Less {
        f - 1
    } else {
        f
    }
}

impl LimitModel {
    fn qm(&self) -> Q {
        qi(self.m)
    }

    /// `y - floor(y)` for an affine combination of integer unknowns.
    fn frac(&self, y: &Affine) -> Result<Q> {
        let coeffs = [y.ab, y.b, y.a, y.i, y.one];
        let d = coeffs.iter().fold(1i128, |acc, c| acc.lcm(c.denom()));
        if d == 1 {
            return Ok(Q::zero());
        }
        let mut total: i128 = 0;
        for (idx, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = (c * qi(d)).to_integer();
            let g = num.gcd(&d);
            let sub = u64::try_from(d / g).map_err(|_| Error::Overflow)?;
            let x = match idx {
                0 => self.ab_mod(sub)?,
                1 => self.b_mod(sub)?,
                2 => self.a_mod(sub)?,
                3 => self.i_mod(sub)?,
                _ => 1,
            };
            total =
                (total + (num / g).rem_euclid(d / g) * i128::from(x) % (d / g) * g).rem_euclid(d);
        }
        Ok(q(total, d))
    }

    /// `floor(y + eps)` where `eps` is infinitesimal with the given sign.
    fn floor(&self, mut y: Affine, eps: Ordering) -> Result<Affine> {
        let f = self.frac(&y)?;
        y.one -= f;
        if f.is_zero() && eps == Ordering::Less {
            y.one -= Q::one();
        }
        Ok(y)
    }

    /// `v/(q*a)` as an affine part plus the sign of the infinitesimal rest.
    fn div_a(&self, v: &SymbolicElement, q_: u64) -> (Affine, Ordering) {
        let (t, n) = (qi(self.t), qi(self.n));
        let y = Affine {
            b: v.ab,
            i: v.b,
            one: v.b * t / self.qm() + v.a,
            ..Affine::default()
        };
        (
            y.scale(q(1, i128::from(q_))),
            sign(v.b * n / self.qm() + v.one),
        )
    }

    /// `v/(q*b)` as an affine part plus the sign of the infinitesimal rest.
    fn div_b(&self, v: &SymbolicElement, q_: u64) -> (Affine, Ordering) {
        let (y, eps) = match self.branch() {
            Branch::Zero { .. } => (
                Affine {
                    a: v.ab,
                    one: v.b,
                    ..Affine::default()
                },
                lex_sign(&[v.a, v.one]),
            ),
            Branch::Rational { k } => {
                let k = qi(*k);
                let y = Affine {
                    a: v.ab,
                    one: v.a * self.qm() / k,
                    ..Affine::default()
                };
                (y, sign(v.one - v.a * qi(self.n) / k))
            }
        };
        (y.scale(q(1, i128::from(q_))), eps)
    }

    /// `a*y` for `y` over `b`, `i` and `1`.
    fn times_a(&self, y: &Affine) -> SymbolicElement {
        debug_assert!(y.ab.is_zero() && y.a.is_zero());
        let a_i = match self.branch() {
            Branch::Zero { .. } => SymbolicElement {
                b: Q::one(),
                a: -qi(self.t) / self.qm(),
                one: -qi(self.n) / self.qm(),
                ..SymbolicElement::zero()
            },
            Branch::Rational { k } => SymbolicElement {
                a: qi(k - self.t) / self.qm(),
                ..SymbolicElement::zero()
            },
        };
        SymbolicElement {
            ab: y.b,
            a: y.one,
            ..SymbolicElement::zero()
        } + a_i.scale(y.i)
    }

    /// `b*y` for `y` over `a` and `1`.
    fn times_b(&self, y: &Affine) -> SymbolicElement {
        debug_assert!(y.ab.is_zero() && y.b.is_zero() && y.i.is_zero());
        SymbolicElement {
            ab: y.a,
            ..SymbolicElement::zero()
        } + self.b_elem().scale(y.one)
    }

    pub fn a_elem(&self) -> SymbolicElement {
        SymbolicElement {
            a: Q::one(),
            ..SymbolicElement::zero()
        }
    }

    pub fn b_elem(&self) -> SymbolicElement {
        match self.branch() {
            Branch::Zero { .. } => SymbolicElement {
                b: Q::one(),
                ..SymbolicElement::zero()
            },
            Branch::Rational { k } => SymbolicElement {
                a: qi(*k) / self.qm(),
                one: qi(self.n) / self.qm(),
                ..SymbolicElement::zero()
            },
        }
    }

    pub fn ab_elem(&self) -> SymbolicElement {
        SymbolicElement {
            ab: Q::one(),
            ..SymbolicElement::zero()
        }
    }

    /// `(m*b + l*ab)/n`.
    pub fn beta1(&self) -> SymbolicElement {
        (self.b_elem().scale(self.qm()) + self.ab_elem().scale(qi(self.l)))
            .scale(q(1, i128::from(self.n)))
    }

    pub fn alpha1(&self) -> SymbolicElement {
        self.beta1() - SymbolicElement::unit()
    }

    /// `b - (n + t*a)/m`.
    pub fn alpha_b(&self) -> SymbolicElement {
        let l = SymbolicElement {
            a: qi(self.t),
            one: qi(self.n),
            ..SymbolicElement::zero()
        }
        .scale(Q::one() / self.qm());
        self.b_elem() - l
    }

    pub fn conductor(&self) -> SymbolicElement {
        self.ab_elem() - self.a_elem() - self.b_elem() + SymbolicElement::unit()
    }

    pub fn constant(&self, c: Const) -> SymbolicElement {
        match c {
            Const::A => self.a_elem(),
            Const::B => self.b_elem(),
            Const::AB => self.ab_elem(),
            Const::Alpha1 => self.alpha1(),
            Const::Beta1 => self.beta1(),
            Const::C => self.conductor(),
        }
    }

    /// `0, a, b, ab, alpha(b), alpha1, beta1` with their names.
    pub fn constants(&self) -> Vec<(&'static str, SymbolicElement)> {
        vec![
            ("0", SymbolicElement::zero()),
            ("a", self.a_elem()),
            ("b", self.b_elem()),
            ("ab", self.ab_elem()),
            ("alpha(b)", self.alpha_b()),
            ("alpha1", self.alpha1()),
            ("beta1", self.beta1()),
        ]
    }

    /// `v mod a`, as an element over `a` and `1`.
    pub fn mod_a(&self, v: &SymbolicElement) -> Result<SymbolicElement> {
        let (y, eps) = self.div_a(v, 1);
        Ok(*v - self.times_a(&self.floor(y, eps)?))
    }

    /// `v mod b`.
    pub fn mod_b(&self, v: &SymbolicElement) -> Result<SymbolicElement> {
        let (y, eps) = self.div_b(v, 1);
        Ok(*v - self.times_b(&self.floor(y, eps)?))
    }

    /// `v mod j` for a standard modulus `j`.
    pub fn residue_of(&self, v: &SymbolicElement, j: u64) -> Result<u64> {
        if j == 0 {
            return Err(Error::OutOfDomain("modulus 0".into()));
        }
        let y = Affine {
            ab: v.ab,
            b: v.b,
            a: v.a,
            one: v.one,
            ..Affine::default()
        }
        .scale(q(1, i128::from(j)));
        let r = self.frac(&y)? * qi(j);
        if !r.is_integer() {
            return Err(Error::OutOfDomain(format!("{v} is not an integer")));
        }
        Ok(r.to_integer() as u64)
    }

    pub fn decompose(&self, v: &SymbolicElement) -> Result<SymDecomposition> {
        let rho = self.mod_a(v)?;
        debug_assert!(rho.ab.is_zero() && rho.b.is_zero());
        // index of the b-part: rho * b^-1 mod a, with n*b^-1 = m + l*a
        let (m, l, n) = (self.qm(), qi(self.l), qi(self.n));
        let u = rho.a * l / n;
        let v1 = (rho.a * m + rho.one * l) / n;
        let w = rho.one * m / n;
        let fl = self.floor(
            Affine {
                a: u,
                one: v1,
                ..Affine::default()
            },
            sign(w),
        )?;
        let j = Affine {
            a: v1 - fl.one,
            one: w,
            ..Affine::default()
        };
        let b_part = self.times_b(&j);
        let rest = *v - b_part;
        let md = floor_std(rest.ab, lex_sign(&[rest.b, rest.a, rest.one]));
        let a_part = rest - self.ab_elem().scale(qi(md));
        Ok(SymDecomposition {
            m: md,
            a_part,
            b_part,
        })
    }

    pub fn is_member(&self, v: &SymbolicElement) -> Result<bool> {
        Ok(self.decompose(v)?.m >= 0)
    }

    pub fn add(&self, x: &SymbolicElement, y: &SymbolicElement) -> SymbolicElement {
        *x + *y
    }

    pub fn sub(&self, x: &SymbolicElement, y: &SymbolicElement) -> Result<SymbolicElement> {
        let d = *x - *y;
        if d.sign() == Ordering::Less || !self.is_member(&d)? {
            return Err(Error::NotSubtractable);
        }
        Ok(d)
    }

    pub fn div_n(&self, x: &SymbolicElement, n: u64) -> Result<SymbolicElement> {
        if n == 0 || self.residue_of(x, n)? != 0 {
            return Err(Error::NotDivisible(n));
        }
        let y = x.scale(q(1, i128::from(n)));
        if !self.is_member(&y)? {
            return Err(Error::NotDivisible(n));
        }
        Ok(y)
    }

    fn check_range(&self, x: &SymbolicElement, what: &str) -> Result<()> {
        if x.sign() == Ordering::Less || *x > self.ab_elem() {
            return Err(Error::OutOfDomain(format!(
                "{what}({x}) needs 0 <= x <= ab"
            )));
        }
        Ok(())
    }

    /// Greatest multiple of `a` not above `x`, for `x <= ab`.
    pub fn alpha_sym(&self, x: &SymbolicElement) -> Result<SymbolicElement> {
        self.check_range(x, "alpha")?;
        if *x == self.ab_elem() {
            return Ok(*x);
        }
        Ok(*x - self.mod_a(x)?)
    }

    /// Least multiple of `b` not below `x`, for `x <= ab`.
    pub fn beta_sym(&self, x: &SymbolicElement) -> Result<SymbolicElement> {
        self.check_range(x, "beta")?;
        let (y, eps) = self.div_b(&-*x, 1);
        Ok(-self.times_b(&self.floor(y, eps)?))
    }

    /// `0 <= x <= ab` and `a | x`.
    pub fn is_ma(&self, x: &SymbolicElement) -> Result<bool> {
        if x.sign() == Ordering::Less || *x > self.ab_elem() {
            return Ok(false);
        }
        let (y, eps) = self.div_a(x, 1);
        Ok(eps == Ordering::Equal && self.frac(&y)?.is_zero())
    }

    pub fn is_mb(&self, x: &SymbolicElement) -> Result<bool> {
        if x.sign() == Ordering::Less || *x > self.ab_elem() {
            return Ok(false);
        }
        let (y, eps) = self.div_b(x, 1);
        Ok(eps == Ordering::Equal && self.frac(&y)?.is_zero())
    }

    /// `x` in `M_a` with `x/a = r mod n`.
    pub fn ra(&self, x: &SymbolicElement, n: u64, r: u64) -> Result<bool> {
        if !self.is_ma(x)? {
            return Ok(false);
        }
        let (y, _) = self.div_a(x, n);
        Ok(self.frac(&y)? * qi(n) == qi(r))
    }

    /// `x` in `M_b` with `x/b = r mod n`.
    pub fn rb(&self, x: &SymbolicElement, n: u64, r: u64) -> Result<bool> {
        if !self.is_mb(x)? {
            return Ok(false);
        }
        let (y, _) = self.div_b(x, n);
        Ok(self.frac(&y)? * qi(n) == qi(r))
    }

    /// The `i`-th successor (or predecessor for negative `i`) of a member.
    /// Only steps that stay at or above the conductor are supported.
    pub fn succ(&self, x: &SymbolicElement, i: i64) -> Result<SymbolicElement> {
        let y = *x + SymbolicElement::unit().scale(qi(i));
        let c = self.conductor();
        if i == 0 || (*x >= c && y >= c) {
            Ok(y)
        } else {
            Err(Error::Unsupported(format!(
                "successor steps below the conductor from {x}"
            )))
        }
    }
}
