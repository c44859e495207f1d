use super::sweep::Record;
use crate::error::{Error, Result};
use serde::Serialize;

/// Occupancy of the `k x k` grid on `(0,1]^2` by `(q1, q2)`, plus the share of
/// records with `q1 < 1/2` and with `q2 < 1/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridStats {
    pub k: u64,
    pub total: u64,
    pub occupied: u64,
    pub coverage: f64,
    pub q1_below_half: u64,
    pub q2_below_half: u64,
    pub frac_q1_below_half: f64,
    pub frac_q2_below_half: f64,
}

/// Streaming accumulator for [`GridStats`].
#[derive(Debug, Clone)]
pub struct GridAccumulator {
    k: u64,
    cells: Vec<bool>,
    total: u64,
    q1_half: u64,
    q2_half: u64,
}

/// Cell `i` covers `((i)/k, (i+1)/k]`, so a value on a boundary goes to the
/// lower cell.
fn cell(num: u64, den: u64, k: u64) -> usize {
    let scaled = u128::from(num) * u128::from(k);
    let den = u128::from(den);
    let c = scaled.div_ceil(den);
    (c.max(1) - 1).min(u128::from(k) - 1) as usize
}

impl GridAccumulator {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 || k > 1 << 14 {
            return Err(Error::ConfigRejected(format!(
                "grid size {k} must be in 1..=16384"
            )));
        }
        Ok(GridAccumulator {
            k,
            cells: vec![false; (k * k) as usize],
            total: 0,
            q1_half: 0,
            q2_half: 0,
        })
    }

    pub fn push(&mut self, r: &Record) {
        let (n1, d1) = r.q1();
        let (n2, d2) = r.q2();
        let i = cell(n1, d1, self.k);
        let j = cell(n2, d2, self.k);
        self.cells[i * self.k as usize + j] = true;
        self.total += 1;
        self.q1_half += u64::from(2 * n1 < d1);
        self.q2_half += u64::from(2 * n2 < d2);
    }

    pub fn finish(&self) -> Result<GridStats> {
        if self.total == 0 {
            return Err(Error::EmptyInput);
        }
        let occupied = self.cells.iter().filter(|&&c| c).count() as u64;
        let t = self.total as f64;
        Ok(GridStats {
            k: self.k,
            total: self.total,
            occupied,
            coverage: occupied as f64 / (self.k * self.k) as f64,
            q1_below_half: self.q1_half,
            q2_below_half: self.q2_half,
            frac_q1_below_half: self.q1_half as f64 / t,
            frac_q2_below_half: self.q2_half as f64 / t,
        })
    }
}

impl GridStats {
    pub fn from_records<'a>(
        records: impl IntoIterator<Item = &'a Record>,
        k: u64,
    ) -> Result<GridStats> {
        let mut acc = GridAccumulator::new(k)?;
        records.into_iter().for_each(|r| acc.push(r));
        acc.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_record() {
        let r = Record {
            a: 4,
            b: 7,
            l: 3,
            k: 3,
        };
        let st = GridStats::from_records([&r], 2).unwrap();
        assert_eq!(st.occupied, 1);
        assert_eq!(st.coverage, 0.25);
        assert_eq!(st.q1_below_half, 0);
    }

    #[test]
    fn boundaries_go_low() {
        assert_eq!(cell(1, 2, 2), 0);
        assert_eq!(cell(1, 1, 2), 1);
        assert_eq!(cell(1, 3, 3), 0);
        assert_eq!(cell(2, 5, 2), 0);
        assert_eq!(cell(3, 5, 2), 1);
    }

    #[test]
    fn empty_and_bad_k() {
        assert_eq!(GridStats::from_records([], 4), Err(Error::EmptyInput));
        assert!(GridAccumulator::new(0).is_err());
    }
}
