//! Model-check the axiom catalog on one semigroup and on mutated copies.
//!
//! cargo run --release --example axiom_check -- 5 7

use sg2::fo::{check_axioms, find_failing_axiom, Const, Constants, SchemeCaps, Structure, Theory};
use sg2::TwoGenSemigroup;
use std::time::Instant;

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (a, b) = match args.as_slice() {
        [a, b, ..] => (*a, *b),
        _ => (5, 7),
    };
    let sg = TwoGenSemigroup::new(a, b).expect("coprime generators with 2 <= a < b");
    let caps = SchemeCaps::default();

    let t = Instant::now();
    let report = check_axioms(&Structure::new(sg), 3 * sg.ab(), &caps);
    println!(
        "<{a},{b}> universe {} checked in {:.2?}",
        report.universe,
        t.elapsed()
    );
    for (axiom, theory, ok, total) in report.summary() {
        let label = match theory {
            Theory::Tons => format!("axiom {axiom:>2}"),
            Theory::Tlons => "lons     ".to_string(),
        };
        println!("  {label}  {ok:>3}/{total:<3}");
    }
    if let Some(first) = report.failures().find(|r| r.theory == Theory::Tlons) {
        println!("  first failing lons instance: {}", first.name);
    }

    for c in [
        Const::A,
        Const::B,
        Const::AB,
        Const::Alpha1,
        Const::Beta1,
        Const::C,
    ] {
        let mut consts = Constants::canonical(&sg);
        consts.set(c, sg.successor(consts.get(c)));
        let st = Structure::with_constants(sg, consts);
        match find_failing_axiom(&st, 3 * sg.ab(), &caps) {
            Some(f) => println!("  {} -> successor: fails {}", c.symbol(), f.name),
            None => println!("  {} -> successor: no failure found", c.symbol()),
        }
    }
}
