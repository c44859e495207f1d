//! The finite engine: a numerical semigroup `<a, b>` with coprime generators.
//!
//! Elements are `u128`. Generators are `u64`, so `ab` and small multiples of
//! it never overflow.
//!
//! Membership uses the minimal element of each residue class modulo `a`:
//! the multiples `0, b, 2b, ..., (a-1)b` form a complete residue system, so
//! `x` is a member iff `x >= k*b` where `k = x * b^-1 mod a`.

use crate::arith::{gcd, mod_inverse, rem};
use crate::error::{Error, Result};
use serde::Serialize;

pub type Elem = u128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TwoGenSemigroup {
    a: u64,
    b: u64,
    ab: Elem,
    conductor: Elem,
    frobenius: Elem,
    genus: Elem,
    /// `b mod a`
    l: u64,
    /// `l^-1 mod a`, which is also `b^-1 mod a`
    k_inv: u64,
    alpha1: Elem,
    beta1: Elem,
}

/// The unique triple with `s = m*ab + m_a*a + m_b*b`, `m_a < b`, `m_b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    pub m: Elem,
    pub m_a: u64,
    pub m_b: u64,
}

impl Decomposition {
    pub fn value(&self, s: &TwoGenSemigroup) -> Elem {
        self.m * s.ab
            + Elem::from(self.m_a) * Elem::from(s.a)
            + Elem::from(self.m_b) * Elem::from(s.b)
    }

    /// The `M_a` component `m_a * a`.
    pub fn a_part(&self, s: &TwoGenSemigroup) -> Elem {
        Elem::from(self.m_a) * Elem::from(s.a)
    }

    /// The `M_b` component `m_b * b`.
    pub fn b_part(&self, s: &TwoGenSemigroup) -> Elem {
        Elem::from(self.m_b) * Elem::from(s.b)
    }
}

/// `beta_k`, `alpha_k` and the multiplicity `n_k` with `beta_k = k*beta1 - n_k*ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaK {
    pub beta_k: Elem,
    pub alpha_k: Elem,
    pub n_k: Elem,
}

impl TwoGenSemigroup {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 2 || a >= b {
            return Err(Error::BadOrder { a, b });
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        let (a128, b128) = (Elem::from(a), Elem::from(b));
        let ab = a128 * b128;
        let conductor = ab - a128 - b128 + 1;
        let l = b % a;
        let k_inv = mod_inverse(l, a).expect("coprime generators have an inverse");
        let beta1 = Elem::from(k_inv) * b128;
        Ok(TwoGenSemigroup {
            a,
            b,
            ab,
            conductor,
            frobenius: conductor - 1,
            genus: (a128 - 1) * (b128 - 1) / 2,
            l,
            k_inv,
            alpha1: beta1 - 1,
            beta1,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn ab(&self) -> Elem {
        self.ab
    }
    pub fn conductor(&self) -> Elem {
        self.conductor
    }
    pub fn frobenius(&self) -> Elem {
        self.frobenius
    }
    pub fn genus(&self) -> Elem {
        self.genus
    }
    /// `b mod a`.
    pub fn l(&self) -> u64 {
        self.l
    }
    /// Inverse of `b` (equivalently of `l`) modulo `a`.
    pub fn k_inv(&self) -> u64 {
        self.k_inv
    }
    pub fn alpha1(&self) -> Elem {
        self.alpha1
    }
    pub fn beta1(&self) -> Elem {
        self.beta1
    }

    /// Index `k < a` of the multiple `k*b` that is minimal in the residue class of `x` mod `a`.
    fn b_index(&self, x: Elem) -> u64 {
        let r = rem(x, self.a);
        match r.checked_mul(self.k_inv) {
            Some(p) => p % self.a,
            None => ((u128::from(r) * u128::from(self.k_inv)) % u128::from(self.a)) as u64,
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x >= self.conductor || x >= Elem::from(self.b_index(x)) * Elem::from(self.b)
    }

    pub fn decompose(&self, x: Elem) -> Result<Decomposition> {
        let m_b = self.b_index(x);
        let rest = x
            .checked_sub(Elem::from(m_b) * Elem::from(self.b))
            .ok_or(Error::NotMember(x))?;
        let q = rest / Elem::from(self.a);
        Ok(Decomposition {
            m: q / Elem::from(self.b),
            m_a: (q % Elem::from(self.b)) as u64,
            m_b,
        })
    }

    pub fn is_ma(&self, x: Elem) -> bool {
        x == self.ab || (x < self.ab && rem(x, self.a) == 0)
    }

    pub fn is_mb(&self, x: Elem) -> bool {
        x == self.ab || (x < self.ab && rem(x, self.b) == 0)
    }

    /// Greatest `M_a` element `<= x`, for `x <= ab`.
    pub fn alpha(&self, x: Elem) -> Result<Elem> {
        if x > self.ab {
            return Err(Error::OutOfDomain(format!(
                "alpha({x}) with ab = {}",
                self.ab
            )));
        }
        let a = Elem::from(self.a);
        Ok(if x == self.ab { x } else { x / a * a })
    }

    /// Least `M_b` element `>= x`, for `x <= ab`.
    pub fn beta(&self, x: Elem) -> Result<Elem> {
        if x > self.ab {
            return Err(Error::OutOfDomain(format!(
                "beta({x}) with ab = {}",
                self.ab
            )));
        }
        let b = Elem::from(self.b);
        Ok(x.div_ceil(b) * b)
    }

    /// `alpha` past `ab`: acts on the `b`-component of the unique decomposition.
    pub fn alpha_ext(&self, x: Elem) -> Result<Elem> {
        let d = self.decompose(x)?;
        Ok(d.m * self.ab + d.a_part(self) + self.alpha(d.b_part(self))?)
    }

    /// `beta` past `ab`: acts on the `a`-component of the unique decomposition.
    pub fn beta_ext(&self, x: Elem) -> Result<Elem> {
        let d = self.decompose(x)?;
        Ok(d.m * self.ab + self.beta(d.a_part(self))? + d.b_part(self))
    }

    /// `beta_k`: the minimal multiple of `b` lying exactly `k` above a multiple of `a`.
    pub fn beta_k(&self, k: u64) -> Result<BetaK> {
        if k == 0 || k >= self.b {
            return Err(Error::OutOfDomain(format!(
                "beta_k needs 1 <= k < b, got {k}"
            )));
        }
        let j0 = self.b_index(Elem::from(k));
        // j0 = 0 means a | k; the least multiple of b at least k is then ab.
        let j = if j0 == 0 { self.a } else { j0 };
        let beta_k = Elem::from(j) * Elem::from(self.b);
        let kb1 = Elem::from(k) * self.beta1;
        Ok(BetaK {
            beta_k,
            alpha_k: beta_k - Elem::from(k),
            n_k: (kb1 - beta_k) / self.ab,
        })
    }

    /// `R_{n,r}(x)`: `x = r (mod n)`.
    pub fn residue_r(&self, x: Elem, n: u64, r: u64) -> bool {
        n > 0 && rem(x, n) == r
    }

    /// `R_{n,r}` through its first-order definition: some member `y`
    /// satisfies `n*ab + x = n*y + r`.
    pub fn residue_r_by_definition(&self, x: Elem, n: u64, r: u64) -> bool {
        if n == 0 {
            return false;
        }
        let lhs = Elem::from(n) * self.ab + x;
        match lhs.checked_sub(Elem::from(r)) {
            Some(t) if t % Elem::from(n) == 0 => self.contains(t / Elem::from(n)),
            _ => false,
        }
    }

    /// `R^a_{n,r}(x)`: `x` is in `M_a` and its index `x/a` is `r` mod `n`.
    pub fn residue_ra(&self, x: Elem, n: u64, r: u64) -> Result<bool> {
        if !self.is_ma(x) {
            return Err(Error::OutOfDomain(format!("R^a on non-multiple {x}")));
        }
        Ok(n > 0 && rem(x / Elem::from(self.a), n) == r)
    }

    /// `R^b_{n,r}(x)`: `x` is in `M_b` and its index `x/b` is `r` mod `n`.
    pub fn residue_rb(&self, x: Elem, n: u64, r: u64) -> Result<bool> {
        if !self.is_mb(x) {
            return Err(Error::OutOfDomain(format!("R^b on non-multiple {x}")));
        }
        Ok(n > 0 && rem(x / Elem::from(self.b), n) == r)
    }

    /// Given `alpha_elem` in `M_a`, `beta_elem` in `M_b` with `alpha_elem <= beta_elem`
    /// and equal residues mod `n`, find `(beta', alpha')` in `M_b x M_a` with
    /// `beta - alpha = n (beta' - alpha')`. When `beta - alpha < n*a` the
    /// returned `alpha'` is `alpha(beta')`.
    pub fn axiom12_witness(
        &self,
        alpha_elem: Elem,
        beta_elem: Elem,
        n: u64,
    ) -> Result<Option<(Elem, Elem)>> {
        if !self.is_ma(alpha_elem) {
            return Err(Error::OutOfDomain(format!("{alpha_elem} is not in M_a")));
        }
        if !self.is_mb(beta_elem) {
            return Err(Error::OutOfDomain(format!("{beta_elem} is not in M_b")));
        }
        if n == 0 || alpha_elem > beta_elem {
            return Err(Error::OutOfDomain("need n >= 1 and alpha <= beta".into()));
        }
        let n128 = Elem::from(n);
        if alpha_elem % n128 != beta_elem % n128 {
            return Err(Error::ResidueMismatch(format!(
                "{beta_elem} and {alpha_elem} differ modulo {n}"
            )));
        }
        let d = (beta_elem - alpha_elem) / n128;
        // The only M_b candidates congruent to d mod a are j0*b (j0 < a) and, when a | d, ab.
        let j0 = self.b_index(d);
        let beta_p = if j0 == 0 && d > 0 {
            self.ab
        } else {
            Elem::from(j0) * Elem::from(self.b)
        };
        Ok(beta_p.checked_sub(d).map(|alpha_p| (beta_p, alpha_p)))
    }

    /// Members `<= bound` in increasing order.
    pub fn members_up_to(&self, bound: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..=bound).filter(move |&x| self.contains(x))
    }

    /// Least member strictly greater than `x`.
    pub fn successor(&self, x: Elem) -> Elem {
        let mut y = x + 1;
        while !self.contains(y) {
            y += 1;
        }
        y
    }

    /// Greatest member strictly less than `x`, if any.
    pub fn predecessor(&self, x: Elem) -> Option<Elem> {
        let mut y = x.checked_sub(1)?;
        loop {
            if self.contains(y) {
                return Some(y);
            }
            y = y.checked_sub(1)?;
        }
    }
}
