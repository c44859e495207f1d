//! Ratio invariants `q0 = a/b`, `q1 = (b - alpha(b))/a`, `q2 = beta1/ab`
//! and the coprime-pair sweep over `(q1, q2)`.

mod grid;
mod svg;
mod sweep;

pub use grid::{GridAccumulator, GridStats};
pub use svg::SvgWriter;
pub use sweep::{
    format_sig, sweep, sweep_collect, CongruenceFilter, CsvWriter, Record, SweepConfig, CSV_HEADER,
};

use crate::error::{Error, Result};
use crate::semigroup::{Elem, TwoGenSemigroup};
use num_rational::Ratio;
use serde::Serialize;

/// `(x_hi - x_lo) / (y_hi - y_lo)`. For members of a finite semigroup this is
/// the supremum of `p/q` with `p*y_hi + q*x_lo <= q*x_hi + p*y_lo`.
pub fn ratio(x_hi: Elem, x_lo: Elem, y_hi: Elem, y_lo: Elem) -> Result<Ratio<Elem>> {
    if y_hi <= y_lo {
        return Err(Error::DegenerateDenominator);
    }
    let num = x_hi.checked_sub(x_lo).ok_or_else(|| {
        Error::OutOfDomain(format!("ratio needs x_hi >= x_lo, got {x_hi} < {x_lo}"))
    })?;
    Ok(Ratio::new(num, y_hi - y_lo))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioTriple {
    #[serde(serialize_with = "ser_ratio")]
    pub q0: Ratio<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub q1: Ratio<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub q2: Ratio<u64>,
    /// `b mod a`
    pub l: u64,
    /// `l^-1 mod a`
    pub k: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

pub fn triple(s: &TwoGenSemigroup) -> RatioTriple {
    let a = s.a();
    RatioTriple {
        q0: Ratio::new(a, s.b()),
        q1: Ratio::new(s.l(), a),
        q2: Ratio::new(s.k_inv(), a),
        l: s.l(),
        k: s.k_inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_examples() {
        let s = TwoGenSemigroup::new(4, 7).unwrap();
        let alpha_b = s.alpha(7).unwrap();
        assert_eq!(ratio(7, alpha_b, 4, 0).unwrap(), Ratio::new(3, 4));
        assert_eq!(ratio(s.beta1(), 0, s.ab(), 0).unwrap(), Ratio::new(3, 4));
        assert_eq!(ratio(9, 9, 5, 0).unwrap(), Ratio::from_integer(0));
        assert_eq!(ratio(9, 1, 5, 5), Err(Error::DegenerateDenominator));
    }

    #[test]
    fn triples() {
        let t = |a, b| {
            let t = triple(&TwoGenSemigroup::new(a, b).unwrap());
            (t.q0, t.q1, t.q2)
        };
        assert_eq!(
            t(4, 7),
            (Ratio::new(4, 7), Ratio::new(3, 4), Ratio::new(3, 4))
        );
        assert_eq!(
            t(5, 7),
            (Ratio::new(5, 7), Ratio::new(2, 5), Ratio::new(3, 5))
        );
        assert_eq!(
            t(2, 3),
            (Ratio::new(2, 3), Ratio::new(1, 2), Ratio::new(1, 2))
        );
    }

    #[test]
    fn q2_is_beta1_over_ab() {
        for (a, b) in [(4u64, 7u64), (9, 20), (11, 13), (17, 100)] {
            let s = TwoGenSemigroup::new(a, b).unwrap();
            let t = triple(&s);
            let r = ratio(s.beta1(), 0, s.ab(), 0).unwrap();
            assert_eq!(
                (*r.numer(), *r.denom()),
                (u128::from(*t.q2.numer()), u128::from(*t.q2.denom()))
            );
        }
    }
}
