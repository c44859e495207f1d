//! Solve residue/window systems on M_b with both solvers.
//!
//! cargo run --example systems

use sg2::systems::{
    full_to_reduced, lambda_map, solve_direct, solve_via_lambda, FullSystem, ReducedSystem, System,
};
use sg2::TwoGenSemigroup;

fn main() -> sg2::Result<()> {
    let s = TwoGenSemigroup::new(5, 7)?;
    let lam = lambda_map(&s);
    let table: Vec<u64> = (0..s.a()).map(|w| lam.apply(w)).collect();
    println!("lambda on <5, 7>: {table:?}");

    let json =
        r#"{"n":2,"mb_residue":1,"diff_residue":0,"diff_window":[1,"a"],"x_window":[0,"ab"]}"#;
    let sys: System =
        serde_json::from_str(json).map_err(|e| sg2::Error::InvalidSystem(e.to_string()))?;
    println!("{json}");
    println!(
        "  direct: {:?}  lambda: {:?}",
        solve_direct(&s, &sys)?,
        solve_via_lambda(&s, &sys)?
    );

    let clash = ReducedSystem::ints(2, 1, 1, (2, 5), (0, 35));
    println!(
        "odd multiple with odd distance in (2, 5): {:?}",
        solve_direct(&s, &clash.into())?
    );

    let s = TwoGenSemigroup::new(6, 25)?;
    let full = FullSystem {
        reduced: ReducedSystem::ints(2, 1, 1, (0, 6), (0, 150)),
        ma_residue: 0,
    };
    let pieces = full_to_reduced(&s, &full);
    let best = pieces
        .iter()
        .filter_map(|r| solve_direct(&s, &r.clone().into()).ok().flatten())
        .min();
    println!(
        "full system on <6, 25>: {} reduced pieces, least x {:?}",
        pieces.len(),
        best
    );
    println!("  solved directly: {:?}", solve_direct(&s, &full.into())?);
    Ok(())
}
