//! Exact calculator for the prime model of a limit of two-generator
//! semigroups with `a -> infinity`, in the case where `b mod a` is eventually
//! the fixed fraction `n/m`.
//!
//! Elements are rational combinations of `ab`, `b`, `a` and `1`, compared
//! lexicographically. With `q0 = 0` the four scales are independent; with
//! `q0 = m/k` the relation `m*b = k*a + n` removes `b`. Everything that
//! depends on residues is computed from the finite [`ResidueProfile`]s, and a
//! modulus outside them is reported as [`Error::InsufficientProfile`].

mod decide;
mod element;
mod eval;
mod profile;

pub use decide::{decide_reduced_system, default_floor, witness, Decision};
pub use element::{SymDecomposition, SymbolicElement, Q};
pub use eval::{eval_qf_sentence, eval_sym_term, QfReport};
pub use profile::ResidueProfile;

use crate::arith::{factorize, mod_inverse};
use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Behaviour of `q0 = a/b` in the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Q0Spec {
    /// `b/a` is unbounded; `alphaB_residues` gives `alpha(b)/a` modulo
    /// finitely many moduli.
    Zero {
        #[serde(rename = "alphaB_residues")]
        alpha_b_residues: ResidueProfile,
    },
    /// `m*b = k*a + n` exactly, so `q0 = m/k`.
    Rational { k: u64 },
}

/// Raw invariants as read from a preset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitInvariants {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default = "default_version")]
    pub format_version: u32,
    /// `m*b = beta_n`: `m*b` is exactly `n` above a multiple of `a`.
    pub m: u64,
    pub n: u64,
    pub q0: Q0Spec,
    pub a_residues: ResidueProfile,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl LimitInvariants {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::IncoherentProfile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("invariants serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Branch {
    Zero { i_res: ResidueProfile },
    Rational { k: u64 },
}

/// Validated invariants together with the derived quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitModel {
    inv: LimitInvariants,
    m: u64,
    n: u64,
    /// `m*(b - alpha(b)) = n + t*a`, `0 <= t < m`.
    t: u64,
    /// `n*beta1 = m*b + l*ab`, `0 <= l < n`.
    l: u64,
    branch: Branch,
    a_res: ResidueProfile,
}

/// Inverse of `a` modulo `q` from the profile.
fn inverse_of_a(p: &ResidueProfile, q: u64) -> Result<u64> {
    if q == 1 {
        return Ok(0);
    }
    let r = p.get(q).ok_or_else(|| {
        Error::InverseMissing(format!("residue of a modulo {q} is not in the profile"))
    })?;
    mod_inverse(r, q)
        .ok_or_else(|| Error::InverseMissing(format!("a = {r} mod {q} is not invertible")))
}

/// Checks the invariants and derives `t`, `l`, `q0`, `q1`, `q2`.
pub fn validate(inv: &LimitInvariants) -> Result<LimitModel> {
    let (m, n) = (inv.m, inv.n);
    if m == 0 || n == 0 {
        return Err(Error::IncoherentProfile("m and n must be positive".into()));
    }
    let a_res = inv.a_residues.clone();
    // A prime dividing a divides n iff it divides b, since m*b = n mod a.
    for (p, _) in factorize(a_res.combined().1) {
        if a_res.get(p) != Some(0) {
            continue;
        }
        match (m % p == 0, n % p == 0) {
            (false, true) => {
                return Err(Error::CoprimalityViolation(format!(
                    "{p} divides a and n, hence b"
                )));
            }
            (true, false) => {
                return Err(Error::IncoherentProfile(format!(
                    "{p} divides a and m but not n"
                )));
            }
            _ => {}
        }
    }
    let t = (m - n % m) % m * inverse_of_a(&a_res, m)? % m;
    let l = (n - m % n) % n * inverse_of_a(&a_res, n)? % n;
    let branch = match &inv.q0 {
        Q0Spec::Zero { alpha_b_residues } => Branch::Zero {
            i_res: alpha_b_residues.clone(),
        },
        Q0Spec::Rational { k } => {
            let k = *k;
            if k < m {
                return Err(Error::IncoherentProfile(format!(
                    "k = {k} < m = {m} would give b < a"
                )));
            }
            if k % m != t {
                return Err(Error::IncoherentProfile(format!(
                    "alpha(b) = (k - t)a/m needs k = t mod m (k = {k}, t = {t}, m = {m})"
                )));
            }
            Branch::Rational { k }
        }
    };
    let model = LimitModel {
        inv: inv.clone(),
        m,
        n,
        t,
        l,
        branch,
        a_res,
    };
    // With p | a and p | m | n the coprimality of b needs the derived residue.
    for (p, _) in factorize(model.a_res.combined().1) {
        if model.a_res.get(p) == Some(0) {
            if let Ok(0) = model.b_mod(p) {
                return Err(Error::CoprimalityViolation(format!(
                    "{p} divides both a and b"
                )));
            }
        }
    }
    Ok(model)
}

impl LimitModel {
    pub fn invariants(&self) -> &LimitInvariants {
        &self.inv
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `k` of the rational branch.
    pub fn k(&self) -> Option<u64> {
        match self.branch {
            Branch::Rational { k } => Some(k),
            Branch::Zero { .. } => None,
        }
    }

    pub fn a_residues(&self) -> &ResidueProfile {
        &self.a_res
    }

    /// Residues of `alpha(b)/a` (zero branch only).
    pub fn alpha_b_residues(&self) -> Option<&ResidueProfile> {
        match &self.branch {
            Branch::Zero { i_res } => Some(i_res),
            Branch::Rational { .. } => None,
        }
    }

    pub(crate) fn branch(&self) -> &Branch {
        &self.branch
    }

    pub fn q0(&self) -> Ratio<u64> {
        match self.branch {
            Branch::Zero { .. } => Ratio::from_integer(0),
            Branch::Rational { k } => Ratio::new(self.m, k),
        }
    }

    pub fn q1(&self) -> Ratio<u64> {
        Ratio::new(self.t, self.m)
    }

    pub fn q2(&self) -> Ratio<u64> {
        Ratio::new(self.l, self.n)
    }

    pub fn a_mod(&self, q: u64) -> Result<u64> {
        self.a_res.get(q).ok_or(Error::InsufficientProfile(q))
    }

    /// `alpha(b)/a` modulo `q`.
    pub fn i_mod(&self, q: u64) -> Result<u64> {
        match &self.branch {
            Branch::Zero { i_res } => i_res.get(q).ok_or(Error::InsufficientProfile(q)),
            Branch::Rational { k } => Ok((k - self.t) / self.m % q),
        }
    }

    /// `b` modulo `q`, from `m*b = m*a*i + n + t*a` (zero branch) or
    /// `m*b = k*a + n` (rational branch).
    pub fn b_mod(&self, q: u64) -> Result<u64> {
        let mq = u128::from(self.m) * u128::from(q);
        let big = u64::try_from(mq).map_err(|_| Error::Overflow)?;
        let am = u128::from(self.a_mod(big)?);
        let (m, n, t) = (u128::from(self.m), u128::from(self.n), u128::from(self.t));
        let mb = match &self.branch {
            Branch::Zero { .. } => {
                let i = u128::from(self.i_mod(q)?);
                (m * (am % u128::from(q) * i % u128::from(q)) + n + t * am) % mq
            }
            Branch::Rational { k } => (u128::from(*k) * am + n) % mq,
        };
        if mb % m != 0 {
            return Err(Error::IncoherentProfile(format!(
                "m*b is not divisible by m modulo {q}"
            )));
        }
        Ok((mb / m) as u64)
    }

    pub fn ab_mod(&self, q: u64) -> Result<u64> {
        Ok((u128::from(self.a_mod(q)?) * u128::from(self.b_mod(q)?) % u128::from(q)) as u64)
    }

    /// Whether a concrete pair is consistent with every invariant.
    pub fn admits(&self, a: u64, b: u64) -> bool {
        let (ra, ka) = self.a_res.combined();
        if a % ka != ra || a <= self.n || crate::arith::gcd(a, b) != 1 || b <= a {
            return false;
        }
        let rem = b % a;
        if u128::from(self.m) * u128::from(rem)
            != u128::from(self.n) + u128::from(self.t) * u128::from(a)
        {
            return false;
        }
        match &self.branch {
            Branch::Zero { i_res } => {
                let (ri, ki) = i_res.combined();
                (b / a) % ki == ri
            }
            Branch::Rational { k } => {
                u128::from(self.m) * u128::from(b)
                    == u128::from(*k) * u128::from(a) + u128::from(self.n)
            }
        }
    }
}
