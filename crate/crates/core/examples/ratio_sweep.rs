//! Sweep coprime pairs up to N, write the CSV to a file and print grid stats.
//!
//! cargo run --release --example ratio_sweep -- 1000 20 /tmp/pairs.csv
//! cargo run --release --example ratio_sweep -- 5000 20 /tmp/f.csv 15 4 7

use sg2::invariants::{sweep, CongruenceFilter, CsvWriter, GridAccumulator, SweepConfig};
use std::fs::File;
use std::io::BufWriter;
use std::time::Instant;

fn main() -> sg2::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let path = std::env::args()
        .nth(3)
        .unwrap_or_else(|| "pairs.csv".into());
    let max = args.first().copied().unwrap_or(1000);
    let k = args.get(1).copied().unwrap_or(20);
    let filter = match args[2.min(args.len())..] {
        [m, ra, rb, ..] => Some(CongruenceFilter {
            modulus: m,
            res_a: ra,
            res_b: rb,
        }),
        _ => None,
    };
    let cfg = SweepConfig {
        max,
        filter,
        threads: None,
    };

    let start = Instant::now();
    let file = File::create(&path).map_err(|e| sg2::Error::SinkFailure(e.to_string()))?;
    let mut csv = CsvWriter::new(BufWriter::new(file))?;
    let mut grid = GridAccumulator::new(k)?;
    let n = sweep(&cfg, |r| {
        grid.push(r);
        csv.write(r)
    })?;
    csv.finish()?;
    let st = grid.finish()?;
    println!("{n} pairs written to {path} in {:.2?}", start.elapsed());
    println!(
        "k={} occupied={} coverage={:.6} q1<1/2: {:.6} q2<1/2: {:.6}",
        st.k, st.occupied, st.coverage, st.frac_q1_below_half, st.frac_q2_below_half
    );
    Ok(())
}
