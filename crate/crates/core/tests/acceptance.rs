//! One pass/fail line per acceptance criterion, run in order.

mod common;

use common::*;
use rand::Rng;
use sg2::fo::{
    check_axioms, find_failing_axiom, Const, Constants, EvalConfig, FoDefinitions, SchemeCaps,
    Structure, Theory,
};
use sg2::invariants::{
    sweep, CongruenceFilter, CsvWriter, GridAccumulator, GridStats, SweepConfig,
};
use sg2::limit::{decide_reduced_system, default_floor, validate};
use sg2::systems::{solve_direct, solve_via_lambda, Endpoint, ReducedSystem};
use sg2::transfer::{
    catalog_threshold, check_agreement, default_catalog, generate_family, preset, FamilySpec,
    PRESETS,
};
use sha2::{Digest, Sha256};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: u64) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e <= Duration::from_secs(limit), || {
        format!("took {e:.2?}, limit {limit}s")
    })
}

fn c1_formula_oracle() -> Outcome {
    let t = Instant::now();
    let pairs = coprime_pairs(40);
    for &(a, b) in &pairs {
        let s = sg(a, b);
        let (f, c, g) = brute_invariants(a, b);
        ensure(
            s.frobenius() as i128 == f && s.conductor() == c && s.genus() == g,
            || format!("<{a},{b}>"),
        )?;
    }
    within(t, 5)?;
    Ok(format!("{} pairs", pairs.len()))
}

fn c2_unique_decomposition() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for (a, b) in coprime_pairs(15) {
        let s = sg(a, b);
        for x in s.members_up_to(3 * s.ab()) {
            let all = brute_decompositions(a, b, x);
            let d = s.decompose(x).map_err(|e| e.to_string())?;
            ensure(all == vec![(d.m, d.m_a, d.m_b)], || {
                format!("<{a},{b}> x={x}: {all:?} vs {d:?}")
            })?;
            n += 1;
        }
    }
    let mut r = rng(1002);
    for _ in 0..25 {
        let (a, b) = random_pair(&mut r, 500);
        let s = sg(a, b);
        for _ in 0..1000 {
            let x = s.successor(r.gen_range(0..3 * s.ab()));
            let d = s.decompose(x).map_err(|e| e.to_string())?;
            ensure(d.m_a < b && d.m_b < a && d.value(&s) == x, || {
                format!("<{a},{b}> x={x}")
            })?;
        }
    }
    within(t, 10)?;
    Ok(format!("{n} exhaustive members, 25000 sampled"))
}

fn c3_concordance() -> Outcome {
    let t = Instant::now();
    let mut r = rng(1003);
    let defs = FoDefinitions::new();
    let mut checks = 0u64;
    for _ in 0..20 {
        let (a, b) = random_pair(&mut r, 11);
        let s = sg(a, b);
        let st = Structure::new(s);
        let cfg = EvalConfig::auto(&s);
        ensure(
            defs.conductor(&st, &cfg) == Some(brute_invariants(a, b).1),
            || format!("<{a},{b}> conductor"),
        )?;
        let ab = s.ab();
        for x in s.members_up_to(3 * ab) {
            let ma = x == ab || (x < ab && x % u128::from(a) == 0);
            let mb = x == ab || (x < ab && x % u128::from(b) == 0);
            ensure(
                defs.is_ma(&st, &cfg, x) == ma && defs.is_mb(&st, &cfg, x) == mb,
                || format!("<{a},{b}> x={x}"),
            )?;
            for n in 1..=12u64 {
                for k in 0..n {
                    let want = x % u128::from(n) == u128::from(k);
                    ensure(defs.residue(&st, &cfg, x, n, k) == want, || {
                        format!("<{a},{b}> R_{n},{k}({x})")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} residue checks in {:.2?}", t.elapsed()))
}

fn c4_axioms() -> Outcome {
    let t = Instant::now();
    let caps = SchemeCaps::default();
    let mut r = rng(1004);
    for _ in 0..50 {
        let (a, b) = random_pair(&mut r, 200);
        let s = sg(a, b);
        let rep = check_axioms(&Structure::new(s), 3 * s.ab(), &caps);
        ensure(rep.passes(Theory::Tons), || {
            format!(
                "<{a},{b}> fails {:?}",
                rep.failures().map(|f| f.name.clone()).collect::<Vec<_>>()
            )
        })?;
    }
    let s = sg(5, 7);
    for c in [
        Const::A,
        Const::B,
        Const::AB,
        Const::Alpha1,
        Const::Beta1,
        Const::C,
    ] {
        let mut consts = Constants::canonical(&s);
        consts.set(c, s.successor(consts.get(c)));
        let st = Structure::with_constants(s, consts);
        ensure(find_failing_axiom(&st, 3 * s.ab(), &caps).is_some(), || {
            format!("mutated {} passes", c.symbol())
        })?;
    }
    within(t, 60)?;
    Ok(format!("50 pairs, 6 mutations, {:.2?}", t.elapsed()))
}

fn c5_axiom12() -> Outcome {
    let t = Instant::now();
    let mut n_checked = 0u64;
    for (a, b) in coprime_pairs(30) {
        let s = sg(a, b);
        let ab = s.ab();
        let ma: Vec<u128> = (0..=ab).filter(|&x| s.is_ma(x)).collect();
        let mb: Vec<u128> = (0..=ab).filter(|&x| s.is_mb(x)).collect();
        for n in 1..=6u64 {
            let n1 = u128::from(n);
            for &al in &ma {
                for &be in mb.iter().filter(|&&be| be >= al && (be - al) % n1 == 0) {
                    let w = s.axiom12_witness(al, be, n).map_err(|e| e.to_string())?;
                    let (bp, ap) =
                        w.ok_or_else(|| format!("<{a},{b}> n={n} alpha={al} beta={be}: none"))?;
                    ensure(
                        s.is_mb(bp) && s.is_ma(ap) && n1 * (bp - ap) == be - al,
                        || format!("<{a},{b}> bad witness"),
                    )?;
                    if be - al < n1 * u128::from(a) {
                        ensure(s.alpha(bp).ok() == Some(ap), || format!("<{a},{b}> alpha'"))?;
                    }
                    n_checked += 1;
                }
            }
        }
    }
    within(t, 30)?;
    Ok(format!("{n_checked} instances"))
}

fn c6_beta_k() -> Outcome {
    let mut r = rng(1006);
    for _ in 0..30 {
        let (a, b) = random_pair(&mut r, 60);
        let s = sg(a, b);
        for k in 1..b {
            let bk = s.beta_k(k).map_err(|e| e.to_string())?;
            ensure(
                bk.beta_k + bk.n_k * s.ab() == u128::from(k) * s.beta1() && bk.n_k < u128::from(k),
                || format!("<{a},{b}> k={k}"),
            )?;
        }
    }
    Ok("30 semigroups".into())
}

fn c7_solvers() -> Outcome {
    let mut r = rng(1007);
    let mut realizable = 0;
    for _ in 0..1000 {
        let (a, b) = random_pair(&mut r, 300);
        let s = sg(a, b);
        let sys = random_system(&mut r, a, b, 10, false);
        let d = solve_direct(&s, &sys).map_err(|e| e.to_string())?;
        let l = solve_via_lambda(&s, &sys).map_err(|e| e.to_string())?;
        ensure(d == l, || format!("<{a},{b}> {sys:?}: {d:?} vs {l:?}"))?;
        realizable += usize::from(d.is_some());
    }
    Ok(format!("1000 systems, {realizable} realizable"))
}

fn c8_residues() -> Outcome {
    let mut r = rng(1008);
    for _ in 0..10 {
        let (a, b) = random_pair(&mut r, 12);
        let s = sg(a, b);
        let xs: Vec<u128> = s.members_up_to(3 * s.ab()).collect();
        for n in 1..=8u64 {
            let n1 = u128::from(n);
            for &x in &xs {
                ensure(
                    (0..n).filter(|&k| s.residue_r(x, n, k)).count() == 1,
                    || format!("<{a},{b}> partition"),
                )?;
                for m in (1..=8u64).filter(|&m| gcd(n, m) == 1) {
                    for k in 0..n * m {
                        let joint = s.residue_r(x, n * m, k);
                        ensure(
                            joint == (s.residue_r(x, n, k % n) && s.residue_r(x, m, k % m)),
                            || format!("CRT x={x}"),
                        )?;
                    }
                }
                for &y in &xs {
                    ensure(
                        s.residue_r(x + y, n, ((x % n1 + y % n1) % n1) as u64),
                        || format!("additivity {x}+{y}"),
                    )?;
                    for (is, idx) in [(0, u128::from(a)), (1, u128::from(b))] {
                        let member = |z: u128| if is == 0 { s.is_ma(z) } else { s.is_mb(z) };
                        if !(member(x) && member(y) && member(x + y)) {
                            continue;
                        }
                        let k = (((x / idx) % n1 + (y / idx) % n1) % n1) as u64;
                        let holds = if is == 0 {
                            s.residue_ra(x + y, n, k)
                        } else {
                            s.residue_rb(x + y, n, k)
                        };
                        ensure(holds == Ok(true), || {
                            format!("<{a},{b}> sorted additivity {x}+{y} mod {n}")
                        })?;
                    }
                }
            }
        }
    }
    Ok("10 semigroups".into())
}

fn sweep_hash(
    max: u64,
    filter: Option<CongruenceFilter>,
    threads: usize,
) -> Result<(String, GridStats), String> {
    let cfg = SweepConfig {
        max,
        filter,
        threads: Some(threads),
    };
    let mut csv = CsvWriter::new(Vec::new()).map_err(|e| e.to_string())?;
    let mut grid = GridAccumulator::new(20).map_err(|e| e.to_string())?;
    sweep(&cfg, |r| {
        grid.push(r);
        csv.write(r)
    })
    .map_err(|e| e.to_string())?;
    let bytes = csv.finish().map_err(|e| e.to_string())?;
    Ok((
        format!("{:x}", Sha256::digest(&bytes)),
        grid.finish().map_err(|e| e.to_string())?,
    ))
}

fn c9_figure() -> Outcome {
    let mut cov = Vec::new();
    for n in [200, 1000] {
        cov.push(sweep_hash(n, None, 1)?.1.coverage);
    }
    let t = Instant::now();
    let (h1, st) = sweep_hash(5000, None, 1)?;
    let single = t.elapsed();
    cov.push(st.coverage);
    ensure(cov.windows(2).all(|w| w[0] <= w[1]), || {
        format!("coverage not monotone: {cov:?}")
    })?;
    ensure(single <= Duration::from_secs(120), || {
        format!("single-threaded sweep took {single:.2?}")
    })?;
    ensure(
        h1 == "f27e3a9af84aee4081ec4961ca6265b8584d621f0f27a968f0bc6a76f0269944",
        || format!("hash {h1}"),
    )?;
    let t = Instant::now();
    let (h8, _) = sweep_hash(5000, None, 8)?;
    let eight = t.elapsed();
    ensure(h8 == h1, || "output differs with 8 workers".into())?;
    ensure(eight <= Duration::from_secs(30), || {
        format!("8-worker sweep took {eight:.2?}")
    })?;
    let f = CongruenceFilter {
        modulus: 15,
        res_a: 4,
        res_b: 7,
    };
    let (hf, sf) = sweep_hash(5000, Some(f), 1)?;
    ensure(
        hf == "e574ca37b4e22644102e0080110a7f03f7217d85cc8b466e417e2dedea17beee",
        || format!("filtered hash {hf}"),
    )?;
    ensure(
        sf.total == 39663 && sf.occupied == 400 && sf.q1_below_half == 24259,
        || format!("{sf:?}"),
    )?;
    Ok(format!(
        "coverage {:.4} {:.4} {:.4}; filtered coverage {:.4}, q1<1/2 {:.6}; 1 worker {single:.2?}, 8 workers {eight:.2?}",
        cov[0], cov[1], cov[2], sf.coverage, sf.frac_q1_below_half
    ))
}

fn c10_limit() -> Outcome {
    let t = Instant::now();
    let catalog = default_catalog();
    ensure(catalog.len() >= 30, || {
        format!("catalog has {} sentences", catalog.len())
    })?;
    let threshold = catalog_threshold(&catalog);
    let mut models = Vec::new();
    let mut branches = (0, 0);
    for (name, _) in PRESETS {
        let md = validate(&preset(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let fam = generate_family(
            &md,
            &FamilySpec {
                count: 10,
                a_floor: 10_000,
                seed: 1,
            },
        )
        .map_err(|e| e.to_string())?;
        let rep = check_agreement(&md, &fam, &catalog, threshold);
        let (ok, all) = rep.counts();
        ensure(rep.all_agree() && all == 10 * catalog.len(), || {
            format!("{name}: {ok}/{all}\n{}", rep.table())
        })?;
        if md.k().is_some() {
            branches.1 += 1;
        } else {
            branches.0 += 1;
        }
        models.push(md);
    }
    ensure(branches.0 > 0 && branches.1 > 0, || {
        "both q0 branches must be covered".into()
    })?;
    let mut r = rng(1010);
    let small = ["a", "(* 2 a)", "(alpha b)"];
    let big = ["b", "(* 2 b)", "beta1", "ab"];
    let term = |s: &str| Endpoint::Term(sg2::fo::parse_term(s).unwrap());
    for i in 0..200 {
        let md = &models[i % models.len()];
        let n = r.gen_range(1..=6);
        let lo = r.gen_range(0..6);
        let sys = ReducedSystem {
            n,
            mb_residue: r.gen_range(0..n),
            diff_residue: r.gen_range(0..n),
            diff_window: (Endpoint::Int(lo), term(small[r.gen_range(0..small.len())])),
            x_window: (Endpoint::Int(0), term(big[r.gen_range(0..big.len())])),
        };
        let f = default_floor(&sys);
        let d1 = decide_reduced_system(md, &sys, Some(f)).map_err(|e| e.to_string())?;
        let d2 = decide_reduced_system(md, &sys, Some(f + md.a_residues().combined().1))
            .map_err(|e| e.to_string())?;
        ensure(d1.realizable == d2.realizable, || {
            format!("{sys:?}: {d1:?} vs {d2:?}")
        })?;
    }
    within(t, 120)?;
    Ok(format!(
        "5 presets x 10 members x {} sentences, 200 systems, {:.2?}",
        catalog.len(),
        t.elapsed()
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("formula oracle", c1_formula_oracle),
        ("unique decomposition", c2_unique_decomposition),
        ("first-order/arithmetic concordance", c3_concordance),
        ("axiom suite and mutations", c4_axioms),
        ("axiom-12 constructivity", c5_axiom12),
        ("beta_k identity", c6_beta_k),
        ("solver equivalence", c7_solvers),
        ("residue algebra", c8_residues),
        ("ratio sweeps", c9_figure),
        ("limit-model soundness", c10_limit),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name} [{secs:.2}s] {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
