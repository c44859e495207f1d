use super::{Branch, LimitModel};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::semigroup::{Elem, TwoGenSemigroup};
use crate::systems::{solve_direct, Endpoint, ReducedSystem, System};
use serde::Serialize;

/// Answer for a reduced system together with the finite certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub realizable: bool,
    /// The witness semigroup `(a*, b*)`, absent when the residue
    /// conditions alone rule the system out.
    pub witness: Option<(u64, u64)>,
    /// Least solution in the witness.
    pub x: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const MAX_TRIES: u64 = 100_000;

/// Least pair `(a*, b*)` with `a* >= floor` that matches every invariant.
/// In the zero branch `b*/a* >= floor` as well.
pub fn witness(md: &LimitModel, floor: u64) -> Result<TwoGenSemigroup> {
    let (ra, ka) = md.a_residues().combined();
    let floor = floor.max(md.n() + 1).max(2);
    let first = floor + (ra + ka - floor % ka) % ka;
    let (m, n, t) = (md.m(), md.n(), md.t());
    for step in 0..MAX_TRIES {
        let a = first
            .checked_add(step.checked_mul(ka).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        // b mod a is l = (n + t*a)/m
        let lm = u128::from(n) + u128::from(t) * u128::from(a);
        if lm % u128::from(m) != 0 {
            continue;
        }
        let l = (lm / u128::from(m)) as u64;
        let candidates: Vec<u64> = match md.branch() {
            Branch::Zero { i_res } => {
                let (ri, ki) = i_res.combined();
                let i0 = floor + (ri + ki - floor % ki) % ki;
                (0..16u64)
                    .filter_map(|s| {
                        let i = i0.checked_add(s.checked_mul(ki)?)?;
                        a.checked_mul(i)?.checked_add(l)
                    })
                    .collect()
            }
            Branch::Rational { k } => {
                let num = u128::from(*k) * u128::from(a) + u128::from(n);
                if num % u128::from(m) != 0 {
                    continue;
                }
                u64::try_from(num / u128::from(m)).into_iter().collect()
            }
        };
        for b in candidates {
            if gcd(a, b) == 1 && md.admits(a, b) {
                return TwoGenSemigroup::new(a, b);
            }
        }
    }
    Err(Error::WitnessConstructionFailed(format!(
        "no consistent pair found above {floor}"
    )))
}

/// Ten times the largest number appearing in the system.
pub fn default_floor(sys: &ReducedSystem) -> u64 {
    let ep = |e: &Endpoint| -> u128 {
        match e {
            Endpoint::Int(k) => *k,
            Endpoint::Term(t) => t.max_coefficient(),
            Endpoint::Diff(h, l) => h.max_coefficient().max(l.max_coefficient()),
        }
    };
    let m = [
        ep(&sys.diff_window.0),
        ep(&sys.diff_window.1),
        ep(&sys.x_window.0),
        ep(&sys.x_window.1),
    ]
    .into_iter()
    .max()
    .unwrap_or(0)
    .max(u128::from(sys.n))
    .max(2);
    u64::try_from(m.saturating_mul(10)).unwrap_or(u64::MAX)
}

/// Decides a reduced system in the limit model by solving it in a finite
/// witness consistent with the invariants. Residue conditions that already
/// clash modulo `gcd(a, n)` are rejected without a witness.
pub fn decide_reduced_system(
    md: &LimitModel,
    sys: &ReducedSystem,
    floor: Option<u64>,
) -> Result<Decision> {
    let n = sys.n;
    if n == 0 || sys.mb_residue >= n || sys.diff_residue >= n {
        return Err(Error::InvalidSystem(
            "residues must lie below a positive modulus".into(),
        ));
    }
    // x = w*b with w = mb (mod n) and x - alpha(x) = x mod a, so the distance
    // is w*b modulo every common divisor of a and n.
    let g = gcd(md.a_mod(n)?, n);
    let bg = md.b_mod(g)?;
    if !(sys.diff_residue + g * n - sys.mb_residue * bg % g).is_multiple_of(g) {
        return Ok(Decision {
            realizable: false,
            witness: None,
            x: None,
            note: Some(format!(
                "distance residue clashes with the b-residue modulo {g}"
            )),
        });
    }
    let s = witness(md, floor.unwrap_or_else(|| default_floor(sys)))?;
    let x = solve_direct(&s, &System::Reduced(sys.clone()))?;
    Ok(Decision {
        realizable: x.is_some(),
        witness: Some((s.a(), s.b())),
        x,
        note: None,
    })
}
