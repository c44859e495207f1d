use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::io::Write;

/// Exact CSV column layout.
pub const CSV_HEADER: &str = "a,b,l,k,q1_num,q1_den,q2_num,q2_den,q1,q2";

/// Keep pairs with `a = res_a` and `b = res_b` modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceFilter {
    pub modulus: u64,
    pub res_a: u64,
    pub res_b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest generator `N`; pairs satisfy `2 <= a < b <= N`.
    pub max: u64,
    pub filter: Option<CongruenceFilter>,
    /// Worker count; `None` uses the rayon default. Never affects output.
    pub threads: Option<usize>,
}

/// One coprime pair. `q1 = l/a` and `q2 = k/a` are already in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Record {
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub k: u64,
}

impl Record {
    pub fn q1(&self) -> (u64, u64) {
        (self.l, self.a)
    }

    pub fn q2(&self) -> (u64, u64) {
        (self.k, self.a)
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(f) = self.filter {
            if f.modulus == 0 || f.res_a >= f.modulus || f.res_b >= f.modulus {
                return Err(Error::ConfigRejected(
                    "residues must be below a positive modulus".into(),
                ));
            }
            let g = gcd(gcd(f.res_a, f.res_b), f.modulus);
            if g > 1 {
                return Err(Error::ConfigRejected(format!(
                    "residues {} and {} share the factor {g} with modulus {}, so no pair is coprime",
                    f.res_a, f.res_b, f.modulus
                )));
            }
        }
        Ok(())
    }
}

fn records_for_a(a: u64, cfg: &SweepConfig) -> Vec<Record> {
    if cfg.filter.is_some_and(|f| a % f.modulus != f.res_a) {
        return Vec::new();
    }
    // inverse of each residue class mod a, 0 for non-units
    let inv: Vec<u64> = (0..a)
        .map(|r| {
            if gcd(r, a) == 1 {
                mod_inverse(r, a).unwrap_or(0)
            } else {
                0
            }
        })
        .collect();
    let (start, step) = match cfg.filter {
        Some(f) => {
            let first = a + 1 + (f.res_b + f.modulus - (a + 1) % f.modulus) % f.modulus;
            (first, f.modulus)
        }
        None => (a + 1, 1),
    };
    let mut out = Vec::new();
    let mut b = start;
    while b <= cfg.max {
        let l = b % a;
        let k = inv[l as usize];
        if k != 0 {
            out.push(Record { a, b, l, k });
        }
        b += step;
    }
    out
}

/// Streams every record in `(a, b)` order to `emit`. Returns the count.
pub fn sweep(cfg: &SweepConfig, mut emit: impl FnMut(&Record) -> Result<()>) -> Result<u64> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::ConfigRejected(e.to_string()))?;
    let mut count = 0u64;
    let mut a = 2u64;
    // Batches of roughly a million candidate pairs keep memory flat.
    while a < cfg.max {
        let mut hi = a;
        let mut budget = 0u64;
        while hi < cfg.max && budget < 1 << 20 {
            budget += cfg.max - hi;
            hi += 1;
        }
        let batch: Vec<Vec<Record>> = pool.install(|| {
            (a..hi)
                .into_par_iter()
                .map(|x| records_for_a(x, cfg))
                .collect()
        });
        for r in batch.iter().flatten() {
            emit(r)?;
            count += 1;
        }
        a = hi;
    }
    Ok(count)
}

pub fn sweep_collect(cfg: &SweepConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    sweep(cfg, |r| {
        out.push(*r);
        Ok(())
    })?;
    Ok(out)
}

/// `p/q` with `sig` significant digits, rounded half up from the exact
/// fraction. Plain decimal for exponents in `[-5, sig)`, otherwise `d.ddde-X`.
pub fn format_sig(p: u64, q: u64, sig: u32) -> String {
    assert!(q > 0 && sig > 0);
    if p == 0 {
        return "0".into();
    }
    let ndig = |x: u64| x.to_string().len() as i32;
    let e0 = ndig(p) - ndig(q);
    let mut e = if ge_pow10(p, q, e0) { e0 } else { e0 - 1 };
    let mut digits = scaled_round(p, q, sig as i32 - 1 - e);
    if digits.len() > sig as usize {
        digits.truncate(sig as usize);
        e += 1;
    }
    if (-5..sig as i32).contains(&e) {
        let s = if e >= 0 {
            let (int, frac) = digits.split_at((e + 1) as usize);
            format!("{int}.{frac}")
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        };
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        let mant = if rest.is_empty() {
            lead.to_string()
        } else {
            format!("{lead}.{rest}")
        };
        format!(
            "{mant}e{}{:02}",
            if e < 0 { '-' } else { '+' },
            e.unsigned_abs()
        )
    }
}

/// `p * 10^max(s,0)` and `q * 10^max(-s,0)`.
fn scale(p: u64, q: u64, s: i32) -> (BigUint, BigUint) {
    let t = BigUint::from(10u32).pow(s.unsigned_abs());
    if s >= 0 {
        (BigUint::from(p) * t, BigUint::from(q))
    } else {
        (BigUint::from(p), BigUint::from(q) * t)
    }
}

fn scale_u128(p: u64, q: u64, s: i32) -> Option<(u128, u128)> {
    let t = 10u128.checked_pow(s.unsigned_abs())?;
    if s >= 0 {
        Some((u128::from(p).checked_mul(t)?, u128::from(q)))
    } else {
        Some((u128::from(p), u128::from(q).checked_mul(t)?))
    }
}

/// `p/q >= 10^k`.
fn ge_pow10(p: u64, q: u64, k: i32) -> bool {
    match scale_u128(p, q, -k) {
        Some((n, d)) => n >= d,
        None => {
            let (n, d) = scale(p, q, -k);
            n >= d
        }
    }
}

/// Decimal digits of `round_half_up(p/q * 10^shift)`.
fn scaled_round(p: u64, q: u64, shift: i32) -> String {
    if let Some((n, d)) = scale_u128(p, q, shift) {
        if let (Some(n2), Some(d2)) = (
            n.checked_mul(2).and_then(|n2| n2.checked_add(d)),
            d.checked_mul(2),
        ) {
            return (n2 / d2).to_string();
        }
    }
    let (n, d) = scale(p, q, shift);
    ((n * 2u32 + &d) / (d * 2u32)).to_string()
}

/// CSV in the exact [`CSV_HEADER`] layout with LF line endings.
pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{CSV_HEADER}").map_err(|e| Error::SinkFailure(e.to_string()))?;
        Ok(CsvWriter { out })
    }

    pub fn write(&mut self, r: &Record) -> Result<()> {
        writeln!(
            self.out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.a,
            r.b,
            r.l,
            r.k,
            r.l,
            r.a,
            r.k,
            r.a,
            format_sig(r.l, r.a, 12),
            format_sig(r.k, r.a, 12)
        )
        .map_err(|e| Error::SinkFailure(e.to_string()))
    }

    pub fn finish(mut self) -> Result<W> {
        self.out
            .flush()
            .map_err(|e| Error::SinkFailure(e.to_string()))?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(max: u64) -> SweepConfig {
        SweepConfig {
            max,
            filter: None,
            threads: Some(1),
        }
    }

    #[test]
    fn small_sweep_matches_brute_force() {
        let got = sweep_collect(&cfg(30)).unwrap();
        let mut want = Vec::new();
        for a in 2..=30u64 {
            for b in a + 1..=30 {
                if gcd(a, b) == 1 {
                    let l = b % a;
                    let k = (1..a).find(|k| k * l % a == 1).unwrap();
                    want.push(Record { a, b, l, k });
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn filter() {
        let f = CongruenceFilter {
            modulus: 15,
            res_a: 4,
            res_b: 7,
        };
        let got = sweep_collect(&SweepConfig {
            filter: Some(f),
            ..cfg(100)
        })
        .unwrap();
        assert!(!got.is_empty());
        assert!(got
            .iter()
            .all(|r| r.a % 15 == 4 && r.b % 15 == 7 && gcd(r.a, r.b) == 1));
        let all = sweep_collect(&cfg(100)).unwrap();
        let n = all
            .iter()
            .filter(|r| r.a % 15 == 4 && r.b % 15 == 7)
            .count();
        assert_eq!(got.len(), n);
    }

    #[test]
    fn rejected_filter() {
        let f = CongruenceFilter {
            modulus: 15,
            res_a: 3,
            res_b: 6,
        };
        let e = sweep(
            &SweepConfig {
                filter: Some(f),
                ..cfg(100)
            },
            |_| Ok(()),
        )
        .unwrap_err();
        assert_eq!(e.kind(), "ConfigRejected");
    }

    #[test]
    fn formatting() {
        assert_eq!(format_sig(3, 4, 12), "0.75");
        assert_eq!(format_sig(1, 3, 12), "0.333333333333");
        assert_eq!(format_sig(2, 3, 12), "0.666666666667");
        assert_eq!(format_sig(1, 1, 12), "1");
        assert_eq!(format_sig(1, 7, 3), "0.143");
        assert_eq!(format_sig(1, 200000, 12), "5e-06");
        assert_eq!(format_sig(1, 3000000, 4), "3.333e-07");
        assert_eq!(format_sig(1, 4999, 12), "0.000200040008002");
        assert_eq!(format_sig(999_999, 1_000_000, 3), "1");
        assert_eq!(format_sig(1, 8, 2), "0.13");
    }

    #[test]
    fn csv_rows() {
        let mut w = CsvWriter::new(Vec::new()).unwrap();
        w.write(&Record {
            a: 4,
            b: 7,
            l: 3,
            k: 3,
        })
        .unwrap();
        let s = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(
            s,
            "a,b,l,k,q1_num,q1_den,q2_num,q2_den,q1,q2\n4,7,3,3,3,4,3,4,0.75,0.75\n"
        );
    }
}
