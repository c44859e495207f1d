//! Residue/window systems on an unknown `x` in `M_b`.
//!
//! A reduced system fixes `x/b mod n`, `(x - alpha(x)) mod n`, an open
//! window for the distance `x - alpha(x)` and an open window for `x`. A
//! full system also fixes `alpha(x)/a mod n`.
//!
//! Two solvers: [`solve_direct`] walks `M_b` in increasing order;
//! [`solve_via_lambda`] walks the admissible distances `v` and maps each
//! back through the inverse of `lambda(w) = (b mod a) * w mod a`.

use crate::arith::{factorize, gcd, mod_inverse, valuation};
use crate::error::{Error, Result};
use crate::fo::{eval_term, parse_term, syntax::Printer, Structure, Term};
use crate::semigroup::{Elem, TwoGenSemigroup};
use serde::{Deserialize, Serialize};

/// A window endpoint: a plain integer, a ground term, or the distance
/// between two ground terms (`hi - lo`, not necessarily an element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Int(Elem),
    Term(Term),
    Diff(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSystem {
    pub n: u64,
    pub mb_residue: u64,
    pub diff_residue: u64,
    pub diff_window: (Endpoint, Endpoint),
    pub x_window: (Endpoint, Endpoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSystem {
    pub reduced: ReducedSystem,
    pub ma_residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SystemJson", try_from = "SystemJson")]
pub enum System {
    Reduced(ReducedSystem),
    Full(FullSystem),
}

impl System {
    pub fn reduced(&self) -> &ReducedSystem {
        match self {
            System::Reduced(r) => r,
            System::Full(f) => &f.reduced,
        }
    }

    pub fn ma_residue(&self) -> Option<u64> {
        match self {
            System::Reduced(_) => None,
            System::Full(f) => Some(f.ma_residue),
        }
    }
}

impl From<ReducedSystem> for System {
    fn from(r: ReducedSystem) -> Self {
        System::Reduced(r)
    }
}

impl From<FullSystem> for System {
    fn from(f: FullSystem) -> Self {
        System::Full(f)
    }
}

impl ReducedSystem {
    /// A system with integer endpoints.
    pub fn ints(
        n: u64,
        mb_residue: u64,
        diff_residue: u64,
        diff_window: (Elem, Elem),
        x_window: (Elem, Elem),
    ) -> Self {
        ReducedSystem {
            n,
            mb_residue,
            diff_residue,
            diff_window: (Endpoint::Int(diff_window.0), Endpoint::Int(diff_window.1)),
            x_window: (Endpoint::Int(x_window.0), Endpoint::Int(x_window.1)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EndpointJson {
    Int(u64),
    Term(String),
    Diff(String, String),
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    n: u64,
    mb_residue: u64,
    diff_residue: u64,
    ma_residue: Option<u64>,
    diff_window: [EndpointJson; 2],
    x_window: [EndpointJson; 2],
}

fn show(t: &Term) -> String {
    Printer {
        item: t,
        names: &[],
    }
    .to_string()
}

impl From<&Endpoint> for EndpointJson {
    fn from(e: &Endpoint) -> Self {
        match e {
            Endpoint::Int(k) => match u64::try_from(*k) {
                Ok(k) => EndpointJson::Int(k),
                Err(_) => EndpointJson::Term(k.to_string()),
            },
            Endpoint::Term(t) => EndpointJson::Term(show(t)),
            Endpoint::Diff(h, l) => EndpointJson::Diff(show(h), show(l)),
        }
    }
}

impl TryFrom<EndpointJson> for Endpoint {
    type Error = Error;
    fn try_from(e: EndpointJson) -> Result<Self> {
        Ok(match e {
            EndpointJson::Int(k) => Endpoint::Int(Elem::from(k)),
            EndpointJson::Term(s) => match parse_term(&s)? {
                Term::Lit(k) => Endpoint::Int(k),
                t => Endpoint::Term(t),
            },
            EndpointJson::Diff(h, l) => Endpoint::Diff(parse_term(&h)?, parse_term(&l)?),
        })
    }
}

impl From<System> for SystemJson {
    fn from(s: System) -> Self {
        let ma_residue = s.ma_residue();
        let r = s.reduced();
        SystemJson {
            n: r.n,
            mb_residue: r.mb_residue,
            diff_residue: r.diff_residue,
            ma_residue,
            diff_window: [(&r.diff_window.0).into(), (&r.diff_window.1).into()],
            x_window: [(&r.x_window.0).into(), (&r.x_window.1).into()],
        }
    }
}

impl TryFrom<SystemJson> for System {
    type Error = Error;
    fn try_from(j: SystemJson) -> Result<Self> {
        let [d0, d1] = j.diff_window;
        let [x0, x1] = j.x_window;
        let reduced = ReducedSystem {
            n: j.n,
            mb_residue: j.mb_residue,
            diff_residue: j.diff_residue,
            diff_window: (d0.try_into()?, d1.try_into()?),
            x_window: (x0.try_into()?, x1.try_into()?),
        };
        Ok(match j.ma_residue {
            Some(ma_residue) => System::Full(FullSystem {
                reduced,
                ma_residue,
            }),
            None => System::Reduced(reduced),
        })
    }
}

/// A system with every endpoint evaluated in a concrete semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolved {
    pub n: u64,
    pub mb: u64,
    pub diff: u64,
    pub ma: Option<u64>,
    pub a1: Elem,
    pub a2: Elem,
    pub b1: Elem,
    pub b2: Elem,
}

fn endpoint(st: &Structure, e: &Endpoint) -> Result<Elem> {
    let term = |t: &Term| {
        eval_term(st, &[], t)?
            .ok_or_else(|| Error::InvalidSystem(format!("endpoint {} is undefined", show(t))))
    };
    match e {
        Endpoint::Int(k) => Ok(*k),
        Endpoint::Term(t) => term(t),
        Endpoint::Diff(h, l) => {
            let (h, l) = (term(h)?, term(l)?);
            h.checked_sub(l)
                .ok_or_else(|| Error::InvalidSystem("negative distance endpoint".into()))
        }
    }
}

/// Evaluates endpoints and checks the well-formedness conditions.
pub fn resolve(s: &TwoGenSemigroup, sys: &System) -> Result<Resolved> {
    let st = Structure::new(*s);
    let r = sys.reduced();
    let res = Resolved {
        n: r.n,
        mb: r.mb_residue,
        diff: r.diff_residue,
        ma: sys.ma_residue(),
        a1: endpoint(&st, &r.diff_window.0)?,
        a2: endpoint(&st, &r.diff_window.1)?,
        b1: endpoint(&st, &r.x_window.0)?,
        b2: endpoint(&st, &r.x_window.1)?,
    };
    let bad = |m: String| Err(Error::InvalidSystem(m));
    if res.n == 0 {
        return bad("modulus must be positive".into());
    }
    if res.mb >= res.n || res.diff >= res.n || res.ma.is_some_and(|m| m >= res.n) {
        return bad(format!("residues must be below {}", res.n));
    }
    if res.a1 >= res.a2 || res.b1 >= res.b2 {
        return bad("windows must satisfy lo < hi".into());
    }
    if res.a2 > s.ab() || res.b2 > s.ab() {
        return bad(format!("windows must lie in [0, {}]", s.ab()));
    }
    if !s.is_mb(res.b1) || !s.is_mb(res.b2) {
        return bad("x-window endpoints must be multiples of b".into());
    }
    Ok(res)
}

impl Resolved {
    /// Checks `x = w*b` (with `w = a` standing for `ab`) against every constraint.
    fn accepts(&self, s: &TwoGenSemigroup, w: u64) -> bool {
        let (a, b) = (s.a(), Elem::from(s.b()));
        let x = Elem::from(w) * b;
        let d = if w == a { 0 } else { x % Elem::from(a) };
        let n = Elem::from(self.n);
        Elem::from(w) % n == Elem::from(self.mb)
            && d % n == Elem::from(self.diff)
            && self.a1 < d
            && d < self.a2
            && self.b1 < x
            && x < self.b2
            && self
                .ma
                .is_none_or(|ma| ((x - d) / Elem::from(a)) % n == Elem::from(ma))
    }
}

/// Least `x` in `M_b` satisfying the system, by scanning `M_b` upward.
pub fn solve_direct(s: &TwoGenSemigroup, sys: &System) -> Result<Option<Elem>> {
    let r = resolve(s, sys)?;
    Ok((0..=s.a())
        .find(|&w| r.accepts(s, w))
        .map(|w| Elem::from(w) * Elem::from(s.b())))
}

/// `w -> (b mod a) * w mod a`, a permutation of `[0, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaMap {
    a: u64,
    l: u64,
    l_inv: u64,
}

impl LambdaMap {
    pub fn apply(&self, w: u64) -> u64 {
        ((u128::from(self.l) * u128::from(w % self.a)) % u128::from(self.a)) as u64
    }

    pub fn inverse(&self, v: u64) -> u64 {
        ((u128::from(self.l_inv) * u128::from(v % self.a)) % u128::from(self.a)) as u64
    }
}

pub fn lambda_map(s: &TwoGenSemigroup) -> LambdaMap {
    LambdaMap {
        a: s.a(),
        l: s.l(),
        l_inv: s.k_inv(),
    }
}

/// Same answer as [`solve_direct`], found by enumerating admissible
/// distances `v = lambda(w)` in the window and pulling them back.
/// Distance 0 is never admissible (`a1 >= 0` and the window is open), so
/// neither `0` nor `ab` needs separate treatment.
pub fn solve_via_lambda(s: &TwoGenSemigroup, sys: &System) -> Result<Option<Elem>> {
    let r = resolve(s, sys)?;
    let lam = lambda_map(s);
    let (a, n) = (s.a(), r.n);
    let b = Elem::from(s.b());
    let ok_w = |w: u64, v: u64| {
        let x = Elem::from(w) * b;
        w % n == r.mb
            && r.b1 < x
            && x < r.b2
            && r.ma.is_none_or(|ma| {
                ((x - Elem::from(v)) / Elem::from(a)) % Elem::from(n) == Elem::from(ma)
            })
    };
    let mut best: Option<u64> = None;
    // First admissible distance at or above a1 + 1 with v = diff (mod n).
    let lo = r.a1 + 1;
    let first = lo + (Elem::from(r.diff) + Elem::from(n) - lo % Elem::from(n)) % Elem::from(n);
    let hi = r.a2.min(Elem::from(a));
    let mut v = first;
    while v < hi {
        let v64 = v as u64;
        let w = lam.inverse(v64);
        debug_assert_eq!(lam.apply(w), v64);
        if ok_w(w, v64) && best.is_none_or(|bw| w < bw) {
            best = Some(w);
        }
        v += Elem::from(n);
    }
    Ok(best.map(|w| Elem::from(w) * b))
}

/// Modulus at which residues of `alpha(x)` pin its `M_a`-residues modulo `n`:
/// each prime power `p^k || n` becomes `p^(e+k)` with `p^e || a`.
pub fn lifted_modulus(s: &TwoGenSemigroup, n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| p.pow(valuation(s.a(), p) + k))
        .product()
}

/// Reduced systems at the lifted modulus `N` that together are equivalent to
/// the full system: `x` satisfies the full system iff it satisfies one of them.
pub fn full_to_reduced(s: &TwoGenSemigroup, f: &FullSystem) -> Vec<ReducedSystem> {
    let r = &f.reduced;
    let n = r.n;
    let big = lifted_modulus(s, n);
    let a = s.a();
    let g = gcd(a % big, big).max(1);
    let a_red_inv = mod_inverse((a / g) % (big / g), big / g);
    let mut out = Vec::new();
    for mb in (r.mb_residue..big).step_by(n as usize) {
        for diff in (r.diff_residue..big).step_by(n as usize) {
            // alpha(x) = x - (x - alpha(x)) = mb*b - diff (mod N)
            let alpha = (u128::from(mb) * u128::from(s.b()) + u128::from(big) - u128::from(diff))
                % u128::from(big);
            let alpha = alpha as u64;
            if !alpha.is_multiple_of(g) {
                continue;
            }
            let Some(inv) = a_red_inv else { continue };
            let j = (u128::from(alpha / g) * u128::from(inv) % u128::from(big / g)) as u64;
            if j % n != f.ma_residue {
                continue;
            }
            out.push(ReducedSystem {
                n: big,
                mb_residue: mb,
                diff_residue: diff,
                diff_window: r.diff_window.clone(),
                x_window: r.x_window.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(a: u64, b: u64) -> TwoGenSemigroup {
        TwoGenSemigroup::new(a, b).unwrap()
    }

    fn both(s: &TwoGenSemigroup, sys: ReducedSystem) -> Option<Elem> {
        let sys = System::Reduced(sys);
        let d = solve_direct(s, &sys).unwrap();
        assert_eq!(d, solve_via_lambda(s, &sys).unwrap());
        d
    }

    #[test]
    fn direct_examples() {
        let s = sg(5, 7);
        assert_eq!(
            both(&s, ReducedSystem::ints(2, 1, 0, (1, 5), (0, 35))),
            Some(7)
        );
        // w=1 has an even distance, w=3 has distance 1, and w=5 is ab itself.
        assert_eq!(
            both(&s, ReducedSystem::ints(2, 1, 1, (2, 5), (0, 35))),
            None
        );
        assert_eq!(both(&s, ReducedSystem::ints(5, 0, 0, (0, 5), (0, 7))), None);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_map(&sg(5, 7)).apply(3), 1);
        assert_eq!(lambda_map(&sg(4, 7)).apply(1), 3);
        assert_eq!(lambda_map(&sg(9, 20)).apply(0), 0);
        let s = sg(4, 7);
        assert_eq!(
            both(&s, ReducedSystem::ints(2, 1, 1, (0, 4), (0, 28))),
            Some(7)
        );
        assert_eq!(
            both(&s, ReducedSystem::ints(2, 0, 0, (0, 4), (0, 14))),
            None
        );
    }

    #[test]
    fn symbolic_endpoints() {
        let s = sg(5, 7);
        let sys = ReducedSystem {
            n: 2,
            mb_residue: 1,
            diff_residue: 0,
            diff_window: (Endpoint::Int(1), Endpoint::Term(parse_term("a").unwrap())),
            x_window: (Endpoint::Int(0), Endpoint::Term(parse_term("ab").unwrap())),
        };
        assert_eq!(both(&s, sys), Some(7));
        let sys = ReducedSystem {
            diff_window: (
                Endpoint::Int(0),
                Endpoint::Diff(parse_term("b").unwrap(), parse_term("(alpha b)").unwrap()),
            ),
            ..ReducedSystem::ints(1, 0, 0, (0, 0), (0, 35))
        };
        // distances below b - alpha(b) = 2 leave only d = 1 at x = 21
        assert_eq!(both(&s, sys), Some(21));
    }

    #[test]
    fn invalid_systems() {
        let s = sg(5, 7);
        for sys in [
            ReducedSystem::ints(0, 0, 0, (0, 5), (0, 35)),
            ReducedSystem::ints(2, 2, 0, (0, 5), (0, 35)),
            ReducedSystem::ints(2, 0, 0, (5, 5), (0, 35)),
            ReducedSystem::ints(2, 0, 0, (0, 5), (0, 36)),
            ReducedSystem::ints(2, 0, 0, (0, 5), (1, 35)),
        ] {
            assert!(matches!(
                solve_direct(&s, &sys.into()),
                Err(Error::InvalidSystem(_))
            ));
        }
    }

    #[test]
    fn json_round_trip() {
        let sys = System::Full(FullSystem {
            reduced: ReducedSystem {
                diff_window: (
                    Endpoint::Int(1),
                    Endpoint::Diff(parse_term("b").unwrap(), parse_term("(alpha b)").unwrap()),
                ),
                ..ReducedSystem::ints(3, 1, 2, (0, 0), (0, 35))
            },
            ma_residue: 0,
        });
        let js = serde_json::to_string(&sys).unwrap();
        assert_eq!(
            js,
            r#"{"n":3,"mb_residue":1,"diff_residue":2,"ma_residue":0,"diff_window":[1,["b","(alpha b)"]],"x_window":[0,35]}"#
        );
        assert_eq!(serde_json::from_str::<System>(&js).unwrap(), sys);
        let red: System = serde_json::from_str(r#"{"n":2,"mb_residue":1,"diff_residue":0,"ma_residue":null,"diff_window":[1,5],"x_window":[0,"ab"]}"#).unwrap();
        assert_eq!(solve_direct(&sg(5, 7), &red).unwrap(), Some(7));
    }
}
