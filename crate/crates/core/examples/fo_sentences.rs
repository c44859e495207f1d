//! Parse and evaluate first-order sentences, including the definable
//! predicates, on a small semigroup.
//!
//! cargo run --example fo_sentences

use sg2::fo::{eval_formula, parse_sentence, EvalConfig, FoDefinitions, Structure};
use sg2::TwoGenSemigroup;

const SENTENCES: [&str; 5] = [
    "(< alpha1 beta1)",
    "(= (+ (succ 1 c) alpha1) (+ c beta1))",
    "(forall (x U) (=> (<= c x) (exists (y (W 1)) (= y (succ 1 x)))))",
    "(forall (x ab :mb) (=> (and (< 0 x) (< x ab)) (not (Ma x))))",
    "(exists (x U) (and (Mb x) (R 3 2 x) (< b x)))",
];

fn main() -> sg2::Result<()> {
    let s = TwoGenSemigroup::new(5, 7)?;
    let st = Structure::new(s);
    let cfg = EvalConfig::auto(&s);
    for src in SENTENCES {
        let rep = eval_formula(&st, &parse_sentence(src)?, &cfg);
        println!("{:<5} undefined={}  {src}", rep.value, rep.undefined);
        if let Some(cx) = rep.counterexample {
            println!("      counterexample {cx:?}");
        }
    }

    let defs = FoDefinitions::new();
    let ma: Vec<u128> = (0..=s.ab())
        .filter(|&x| s.contains(x) && defs.is_ma(&st, &cfg, x))
        .collect();
    let mb: Vec<u128> = (0..=s.ab())
        .filter(|&x| s.contains(x) && defs.is_mb(&st, &cfg, x))
        .collect();
    println!("members of M_a up to ab, by definition: {ma:?}");
    println!("members of M_b up to ab, by definition: {mb:?}");
    println!(
        "conductor from its definition: {:?}",
        defs.conductor(&st, &cfg)
    );
    Ok(())
}
