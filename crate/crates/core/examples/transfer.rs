//! Compare the limit model with large finite semigroups for every preset.
//!
//! cargo run --release --example transfer

use sg2::limit::validate;
use sg2::transfer::{
    catalog_threshold, check_agreement, default_catalog, generate_family, preset, FamilySpec,
    PRESETS,
};

fn main() -> sg2::Result<()> {
    let catalog = default_catalog();
    let threshold = catalog_threshold(&catalog);
    for (name, _) in PRESETS {
        let md = validate(&preset(name)?)?;
        let family = generate_family(
            &md,
            &FamilySpec {
                count: 10,
                a_floor: 10_000,
                seed: 1,
            },
        )?;
        let report = check_agreement(&md, &family, &catalog, threshold);
        println!("== {name}  q0={} q1={} q2={}", md.q0(), md.q1(), md.q2());
        print!("{}", report.table());
    }
    Ok(())
}
