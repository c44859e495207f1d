//! Symbolic arithmetic in a limit model built from rational invariants.
//!
//! cargo run --example limit_model

use sg2::fo::parse_sentence;
use sg2::limit::{decide_reduced_system, eval_qf_sentence, validate, witness};
use sg2::systems::System;
use sg2::transfer::preset;

fn main() -> sg2::Result<()> {
    for name in ["zero_m1_n3", "rational_m3_k4_n2"] {
        let md = validate(&preset(name)?)?;
        println!(
            "== {name}: q0={} q1={} q2={} (t={}, l={})",
            md.q0(),
            md.q1(),
            md.q2(),
            md.t(),
            md.l()
        );
        for (c, v) in md.constants() {
            println!("  {c:<7} = {v}");
        }
        let b1 = md.beta1();
        let d = md.decompose(&md.add(&b1, &md.a_elem()))?;
        println!("  beta1 + a = {}*ab + ({}) + ({})", d.m, d.a_part, d.b_part);
        println!(
            "  alpha(2b) = {}",
            md.alpha_sym(&md.add(&md.b_elem(), &md.b_elem()))?
        );
        for src in ["(< (* 2 beta1) ab)", "(R 2 0 ab)", "(Rb 3 1 beta1)"] {
            match eval_qf_sentence(&md, &parse_sentence(src)?) {
                Ok(r) => println!("  {src} -> {}", r.value),
                Err(e) => println!("  {src} -> {}", e.kind()),
            }
        }
        let w = witness(&md, 1000)?;
        println!("  witness <{}, {}>", w.a(), w.b());
        let json =
            r#"{"n":1,"mb_residue":0,"diff_residue":0,"diff_window":[0,4],"x_window":[0,"ab"]}"#;
        let sys: System =
            serde_json::from_str(json).map_err(|e| sg2::Error::InvalidSystem(e.to_string()))?;
        println!(
            "  x in M_b below ab at distance < 4: {:?}",
            decide_reduced_system(&md, sys.reduced(), None)?
        );
    }
    Ok(())
}
