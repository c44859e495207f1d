//! Constants, membership, decompositions and beta_k for one semigroup.
//!
//! cargo run --example basic_facts -- 4 7

use sg2::invariants::triple;
use sg2::TwoGenSemigroup;

fn main() -> sg2::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (a, b) = match args.as_slice() {
        [a, b, ..] => (*a, *b),
        _ => (4, 7),
    };
    let s = TwoGenSemigroup::new(a, b)?;
    println!(
        "<{a}, {b}>: ab={} frobenius={} conductor={} genus={}",
        s.ab(),
        s.frobenius(),
        s.conductor(),
        s.genus()
    );
    println!(
        "alpha1={} beta1={} l={} k_inv={}",
        s.alpha1(),
        s.beta1(),
        s.l(),
        s.k_inv()
    );

    let gaps: Vec<u128> = (0..s.conductor()).filter(|&x| !s.contains(x)).collect();
    println!("gaps: {gaps:?}");

    for x in [s.b(), s.b() + 1, 2 * s.b()].map(u128::from) {
        if let (Ok(al), Ok(be)) = (s.alpha(x), s.beta(x)) {
            println!("alpha({x})={al} beta({x})={be}");
        }
    }
    for x in [s.conductor(), s.ab() + 5, 2 * s.ab() + s.beta1()] {
        let d = s.decompose(x)?;
        println!("{x} = {}*ab + {}*a + {}*b", d.m, d.m_a, d.m_b);
    }
    for k in 1..s.b().min(5) {
        let bk = s.beta_k(k)?;
        println!(
            "beta_{k}={} alpha_{k}={} n_{k}={}",
            bk.beta_k, bk.alpha_k, bk.n_k
        );
    }
    let t = triple(&s);
    println!("q0={} q1={} q2={}", t.q0, t.q1, t.q2);
    Ok(())
}
