//! Executable axiom catalog for ordered two-generator semigroups.
//!
//! Each instance is a sentence in the [`super::parse`] grammar. Universal
//! quantifiers range over members up to the universe bound `U`; existential
//! witnesses are searched up to `U + k*ab` with `k` stated per instance.
//! Universals over two or more unrestricted variables use sampled domains
//! (notable elements and evenly spaced members) to keep the check
//! polynomial of low degree; all others are exhaustive.
//!
//! The minimality of the conductor is witnessed by `x = a`, `y = ab - b`
//! (their difference is the Frobenius number), so its existential over `x`
//! is sampled too; `a` is always in the sample.
//!
//! The conductor axiom is checked in the `>= c` form: whenever
//! `y >= c + x`, the difference `y - x` exists. The strict form is weaker
//! and follows from it.

use super::eval::{eval_formula, eval_with, EvalConfig, EvalReport, Structure};
use super::parse::{parse_open, parse_sentence};
use super::syntax::Sentence;
use crate::semigroup::Elem;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Theory {
    /// The axioms every finite two-generator semigroup satisfies.
    Tons,
    /// The extra instances `a + k*alpha1 > k*beta1` forcing infinite generators.
    Tlons,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchemeCaps {
    /// Largest modulus in residue schemes (and `pi` levels are `0..=pi_levels`).
    pub n_max: u64,
    /// Largest `k` in `a + k*alpha1 > k*beta1`.
    pub k_max: u64,
    pub pi_levels: u32,
}

impl Default for SchemeCaps {
    fn default() -> Self {
        SchemeCaps {
            n_max: 8,
            k_max: 8,
            pi_levels: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomInstance {
    pub axiom: u8,
    pub theory: Theory,
    pub name: String,
    pub sentence: Sentence,
}

fn inst(out: &mut Vec<AxiomInstance>, axiom: u8, name: String, src: &str) {
    let sentence = parse_sentence(src).unwrap_or_else(|e| panic!("catalog entry {name}: {e}"));
    out.push(AxiomInstance {
        axiom,
        theory: Theory::Tons,
        name,
        sentence,
    });
}

/// `exactly one of R^sort_{n,0..n}(x)`.
fn exactly_one(pred: &str, n: u64, x: &str) -> String {
    let cases: Vec<String> = (0..n)
        .map(|i| {
            let others: Vec<String> = (0..n)
                .filter(|&j| j != i)
                .map(|j| format!("(not ({pred} {n} {j} {x}))"))
                .collect();
            format!("(and ({pred} {n} {i} {x}) {})", others.join(" "))
        })
        .collect();
    format!("(or {})", cases.join(" "))
}

/// All axiom instances up to the caps, ordered by axiom number then name.
pub fn axiom_catalog(caps: &SchemeCaps) -> Vec<AxiomInstance> {
    let mut v = Vec::new();
    let ns = || 1..=caps.n_max;
    let ns2 = || 2..=caps.n_max.max(1);

    inst(
        &mut v,
        1,
        "1/identity".into(),
        "(forall (x U) (= (+ x 0) x))",
    );
    inst(&mut v, 1, "1/zero-least".into(), "(forall (x U) (<= 0 x))");
    inst(
        &mut v,
        1,
        "1/commutative".into(),
        "(forall ((x U :sampled) (y U :sampled)) (= (+ x y) (+ y x)))",
    );
    inst(
        &mut v,
        1,
        "1/associative".into(),
        "(forall ((x U :sampled) (y U :sampled) (z U :sampled)) (= (+ (+ x y) z) (+ x (+ y z))))",
    );
    inst(
        &mut v,
        1,
        "1/total-order".into(),
        "(forall ((x U :sampled) (y U :sampled)) (or (< x y) (= x y) (< y x)))",
    );
    inst(
        &mut v,
        1,
        "1/order-compatible".into(),
        "(forall ((x U :sampled) (y U :sampled) (z U :sampled)) (=> (< x y) (< (+ x z) (+ y z))))",
    );
    inst(
        &mut v,
        1,
        "1/discrete".into(),
        "(forall (x U) (exists (y (W 1)) (and (< x y) (forall (z y) (=> (< x z) (<= y z))))))",
    );

    inst(
        &mut v,
        2,
        "2/a".into(),
        "(and (< 0 a) (forall (x U) (=> (< 0 x) (<= a x))))",
    );
    inst(
        &mut v,
        2,
        "2/b".into(),
        "(and (< a b) (not (exists (y b) (= (+ y a) b))) \
         (forall (x U) (=> (and (< 0 x) (< x b)) (exists (y x) (= (+ y a) x)))))",
    );
    // ab is the least positive element from which both a and b can be
    // subtracted but a+b cannot.
    inst(
        &mut v,
        2,
        "2/ab".into(),
        "(and (exists (y ab) (= (+ y a) ab)) (exists (z ab) (= (+ z b) ab)) \
         (not (exists (w ab) (= (+ (+ w a) b) ab))) \
         (forall (x ab) (=> (and (< 0 x) (< x ab) (exists (y x) (= (+ y a) x)) (exists (z x) (= (+ z b) x))) \
         (exists (w x) (= (+ (+ w a) b) x)))))",
    );
    // beta1 - alpha1 is one unit, written through the conductor.
    inst(
        &mut v,
        2,
        "2/alpha1-beta1".into(),
        "(and (Ma alpha1) (Mb beta1) (= (+ (succ 1 c) alpha1) (+ c beta1)) \
         (forall (x alpha1 :ma) (=> (< x alpha1) (not (exists (y ab :mb) (= (+ (succ 1 c) x) (+ c y)))))))",
    );

    inst(
        &mut v,
        3,
        "3/conductor-sum".into(),
        "(= (succ 1 ab) (+ c a b))",
    );
    inst(
        &mut v,
        3,
        "3/conductor-subtractable".into(),
        "(forall ((x U :sampled) (y U :sampled)) (=> (<= (+ c x) y) (exists (z U) (= (+ z x) y))))",
    );
    inst(
        &mut v,
        3,
        "3/conductor-least".into(),
        "(exists ((x U :sampled) (y U)) (and (<= (+ (succ -1 c) x) y) (not (exists (z U) (= (+ z x) y)))))",
    );

    inst(
        &mut v,
        4,
        "4/predecessor".into(),
        "(forall (x U) (=> (< 0 x) (exists (y U) (or (= (+ y a) x) (= (+ y b) x)))))",
    );

    for (s, m, sort) in [("a", "Ma", ":ma"), ("b", "Mb", ":mb")] {
        let r = if s == "a" { "Ra" } else { "Rb" };
        for n in ns2() {
            inst(
                &mut v,
                5,
                format!("5/div-{s}/n={n}"),
                &format!("(forall (x U {sort}) (=> ({r} {n} 0 x) (= (* {n} (div x {n})) x)))"),
            );
        }
        for n in ns() {
            for k in 0..n {
                inst(
                    &mut v,
                    5,
                    format!("5/{r}-def/n={n},r={k}"),
                    &format!(
                        "(forall (x U) (<=> ({r} {n} {k} x) (and ({m} x) (exists (y ab {sort}) (= x (+ (* {n} y) (* {k} {s})))))))"
                    ),
                );
            }
            inst(
                &mut v,
                5,
                format!("5/{r}-unique/n={n}"),
                &format!("(forall (x U {sort}) {})", exactly_one(r, n, "x")),
            );
            for i in 0..n {
                for j in 0..n {
                    inst(
                        &mut v,
                        5,
                        format!("5/{r}-add/n={n},i={i},j={j}"),
                        &format!(
                            "(forall ((x ab {sort}) (y ab {sort})) (=> (and ({r} {n} {i} x) ({r} {n} {j} y) ({m} (+ x y))) ({r} {n} {} (+ x y))))",
                            (i + j) % n
                        ),
                    );
                }
            }
        }
    }

    for (s, m, sort) in [("a", "Ma", ":ma"), ("b", "Mb", ":mb")] {
        inst(
            &mut v,
            6,
            format!("6/difference-{s}"),
            &format!("(forall ((x ab {sort}) (y ab {sort})) (=> (< x y) (and ({m} (- y x)) (= (+ (- y x) x) y))))"),
        );
    }

    for (s, m, sort) in [("a", "Ma", ":ma"), ("b", "Mb", ":mb")] {
        inst(
            &mut v,
            7,
            format!("7/interval-{s}"),
            &format!("(forall (x U) (exists (y ab {sort}) (=> (< (+ x {s}) ab) (and ({m} y) (<= x y) (< y (+ x {s}))))))"),
        );
    }

    inst(
        &mut v,
        8,
        "8/decomposition-exists".into(),
        "(forall (x U) (=> (not (exists (w U) (= (+ w ab) x))) (exists ((z ab :mb) (y ab :ma)) (and (Ma y) (Mb z) (= x (+ y z))))))",
    );
    inst(
        &mut v,
        8,
        "8/unique-decomposition".into(),
        "(forall ((x U :sampled) (y1 ab :ma) (y2 ab :ma)) (=> (and (< y1 y2) (exists (z1 ab :mb) (= x (+ y1 z1))) (exists (z2 ab :mb) (= x (+ y2 z2)))) (exists (w U) (= (+ w ab) x))))",
    );

    inst(
        &mut v,
        9,
        "9/alpha".into(),
        "(forall (x ab) (and (Ma (alpha x)) (<= (alpha x) x) (not (exists (y ab :ma) (and (< (alpha x) y) (<= y x))))))",
    );
    inst(
        &mut v,
        9,
        "9/beta".into(),
        "(forall (x ab) (and (Mb (beta x)) (<= x (beta x)) (not (exists (y ab :mb) (and (<= x y) (< y (beta x)))))))",
    );
    for level in 0..=caps.pi_levels {
        let alts: Vec<String> = (0..=level)
            .map(|m| format!("(= x (+ (* {m} ab) (pi-a x {level}) (pi-b x {level})))"))
            .collect();
        inst(
            &mut v,
            9,
            format!("9/pi/level={level}"),
            &format!(
                "(forall (x (* {} ab)) (=> (<= (* {level} ab) x) (=> (< x (* {} ab)) \
                 (and (Ma (pi-a x {level})) (Mb (pi-b x {level})) (< (pi-a x {level}) ab) (< (pi-b x {level}) ab) (or {})))))",
                level + 1,
                level + 1,
                alts.join(" ")
            ),
        );
    }

    for n in ns2() {
        inst(
            &mut v,
            10,
            format!("10/coprime/n={n}"),
            &format!("(and (=> (R {n} 0 a) (not (R {n} 0 b))) (=> (R {n} 0 b) (not (R {n} 0 a))))"),
        );
        for i in 0..n {
            for j in 0..n {
                inst(
                    &mut v,
                    10,
                    format!("10/product/n={n},i={i},j={j}"),
                    &format!(
                        "(=> (and (R {n} {i} a) (R {n} {j} b)) (R {n} {} ab))",
                        i * j % n
                    ),
                );
            }
            inst(
                &mut v,
                10,
                format!("10/Ra-ab/n={n},i={i}"),
                &format!("(<=> (Ra {n} {i} ab) (R {n} {i} b))"),
            );
            inst(
                &mut v,
                10,
                format!("10/Rb-ab/n={n},i={i}"),
                &format!("(<=> (Rb {n} {i} ab) (R {n} {i} a))"),
            );
        }
    }
    inst(
        &mut v,
        10,
        "10/successor".into(),
        "(forall (x U) (=> (<= c x) (= (+ (succ 1 x) alpha1) (+ x beta1))))",
    );

    // The witness y of R_{n,r}(x) satisfies n*y <= n*ab + x, so U + n*ab bounds it.
    for n in ns() {
        for r in 0..n {
            inst(
                &mut v,
                11,
                format!("11/R-def/n={n},r={r}"),
                &format!("(forall (x U) (<=> (R {n} {r} x) (exists (y (W {n})) (= (+ (* {n} ab) x) (succ {r} (* {n} y))))))"),
            );
        }
    }

    for k in 1..=caps.k_max {
        let sentence = parse_sentence(&format!("(< (* {k} beta1) (+ a (* {k} alpha1)))")).unwrap();
        v.push(AxiomInstance {
            axiom: 12,
            theory: Theory::Tlons,
            name: format!("lons/k={k}"),
            sentence,
        });
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub axiom: u8,
    pub theory: Theory,
    pub name: String,
    pub passed: bool,
    pub value: bool,
    pub undefined: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub undefined_samples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<(String, Elem)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub universe: Elem,
    pub results: Vec<InstanceResult>,
}

impl AxiomReport {
    pub fn passes(&self, theory: Theory) -> bool {
        self.results
            .iter()
            .filter(|r| r.theory == theory)
            .all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    /// `(axiom, theory, passed instances, total instances)` per axiom.
    pub fn summary(&self) -> Vec<(u8, Theory, usize, usize)> {
        let mut out: Vec<(u8, Theory, usize, usize)> = Vec::new();
        for r in &self.results {
            match out.last_mut() {
                Some(last) if last.0 == r.axiom => {
                    last.2 += usize::from(r.passed);
                    last.3 += 1;
                }
                _ => out.push((r.axiom, r.theory, usize::from(r.passed), 1)),
            }
        }
        out
    }
}

/// Checks every catalog instance. An instance passes when it is true and
/// no atom inside it was undefined.
pub fn check_axioms(st: &Structure, universe: Elem, caps: &SchemeCaps) -> AxiomReport {
    check(st, universe, caps, false)
}

/// Like [`check_axioms`] but stops after the first failing instance of the
/// base theory. Useful when only refutation matters.
pub fn find_failing_axiom(
    st: &Structure,
    universe: Elem,
    caps: &SchemeCaps,
) -> Option<InstanceResult> {
    check(st, universe, caps, true)
        .results
        .pop()
        .filter(|r| !r.passed)
}

fn result(inst: AxiomInstance, rep: EvalReport) -> InstanceResult {
    InstanceResult {
        axiom: inst.axiom,
        theory: inst.theory,
        name: inst.name,
        passed: rep.value && rep.undefined == 0,
        value: rep.value,
        undefined: rep.undefined,
        undefined_samples: rep.undefined_samples,
        counterexample: rep.counterexample,
    }
}

fn check(st: &Structure, universe: Elem, caps: &SchemeCaps, stop: bool) -> AxiomReport {
    let cfg = EvalConfig {
        universe,
        ..EvalConfig::auto(st.semigroup())
    };
    let catalog = axiom_catalog(caps);
    let results = if stop {
        let mut out = Vec::new();
        for inst in catalog.into_iter().filter(|i| i.theory == Theory::Tons) {
            let rep = eval_formula(st, &inst.sentence, &cfg);
            out.push(result(inst, rep));
            if !out.last().is_some_and(|r| r.passed) {
                break;
            }
        }
        out
    } else {
        catalog
            .into_par_iter()
            .map(|inst| {
                let rep = eval_formula(st, &inst.sentence, &cfg);
                result(inst, rep)
            })
            .collect()
    };
    AxiomReport { universe, results }
}

/// First-order definitions of the notable predicates and constants,
/// evaluated through the bounded evaluator.
pub struct FoDefinitions {
    ma: Sentence,
    mb: Sentence,
    conductor_phi: Sentence,
}

impl Default for FoDefinitions {
    fn default() -> Self {
        Self::new()
    }
}

impl FoDefinitions {
    pub fn new() -> Self {
        FoDefinitions {
            ma: parse_open("(or (= x ab) (not (exists (y x) (= (+ y b) x))))", &["x"]).unwrap(),
            mb: parse_open("(or (= x ab) (not (exists (y x) (= (+ y a) x))))", &["x"]).unwrap(),
            conductor_phi: parse_open(
                "(forall ((x U) (y U)) (=> (<= (+ cc x) y) (exists (z (W 1)) (= (+ z x) y))))",
                &["cc"],
            )
            .unwrap(),
        }
    }

    pub fn is_ma(&self, st: &Structure, cfg: &EvalConfig, x: Elem) -> bool {
        eval_with(st, &self.ma, cfg, &[x]).value
    }

    pub fn is_mb(&self, st: &Structure, cfg: &EvalConfig, x: Elem) -> bool {
        eval_with(st, &self.mb, cfg, &[x]).value
    }

    /// `phi(x)`: all pairs at distance at least `x` are subtractable.
    pub fn conductor_phi(&self, st: &Structure, cfg: &EvalConfig, x: Elem) -> bool {
        eval_with(st, &self.conductor_phi, cfg, &[x]).value
    }

    /// Least member satisfying `phi`, scanning members up to the universe.
    pub fn conductor(&self, st: &Structure, cfg: &EvalConfig) -> Option<Elem> {
        (0..st.rank(cfg.universe + 1))
            .map(|i| st.member_at(i))
            .find(|&x| self.conductor_phi(st, cfg, x))
    }

    /// `R_{n,r}(x)` through `exists y (n*ab + x = s^r(n*y))`.
    pub fn residue(&self, st: &Structure, cfg: &EvalConfig, x: Elem, n: u64, r: u64) -> bool {
        let s = parse_open(
            &format!("(exists (y (W {n})) (= (+ (* {n} ab) x) (succ {r} (* {n} y))))"),
            &["x"],
        )
        .unwrap();
        eval_with(st, &s, cfg, &[x]).value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::eval::Constants;
    use crate::fo::syntax::Const;
    use crate::semigroup::TwoGenSemigroup;

    fn structure(a: u64, b: u64) -> Structure {
        Structure::new(TwoGenSemigroup::new(a, b).unwrap())
    }

    #[test]
    fn catalog_contents() {
        let cat = axiom_catalog(&SchemeCaps::default());
        for name in [
            "8/unique-decomposition",
            "7/interval-a",
            "3/conductor-sum",
            "11/R-def/n=8,r=7",
        ] {
            assert!(cat.iter().any(|i| i.name == name), "{name}");
        }
        for ax in 1..=11u8 {
            assert!(
                cat.iter()
                    .any(|i| i.axiom == ax && i.theory == Theory::Tons),
                "axiom {ax}"
            );
        }
        let mut keys: Vec<u8> = cat.iter().map(|i| i.axiom).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
    }

    #[test]
    fn four_seven_passes() {
        let st = structure(4, 7);
        let rep = check_axioms(&st, 3 * 28, &SchemeCaps::default());
        let bad: Vec<_> = rep
            .failures()
            .filter(|r| r.theory == Theory::Tons)
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn five_seven_fails_lons_first_at_a() {
        let st = structure(5, 7);
        let rep = check_axioms(&st, 3 * 35, &SchemeCaps::default());
        assert!(rep.passes(Theory::Tons));
        let first = rep
            .results
            .iter()
            .find(|r| r.theory == Theory::Tlons && !r.passed)
            .unwrap();
        assert_eq!(first.name, "lons/k=5");
    }

    #[test]
    fn mutated_beta1_fails_axiom_2() {
        let sg = TwoGenSemigroup::new(4, 7).unwrap();
        let mut consts = Constants::canonical(&sg);
        consts.set(Const::Beta1, 14);
        let rep = check_axioms(
            &Structure::with_constants(sg, consts),
            84,
            &SchemeCaps::default(),
        );
        let failing: Vec<&str> = rep.failures().map(|r| r.name.as_str()).collect();
        assert!(failing.contains(&"2/alpha1-beta1"), "{failing:?}");
    }

    #[test]
    fn fo_definitions_small() {
        let st = structure(3, 5);
        let cfg = EvalConfig::auto(st.semigroup());
        let defs = FoDefinitions::new();
        assert_eq!(defs.conductor(&st, &cfg), Some(8));
        for x in (0..=45).filter(|&x| st.semigroup().contains(x)) {
            assert_eq!(defs.is_ma(&st, &cfg, x), st.semigroup().is_ma(x), "{x}");
            assert_eq!(defs.is_mb(&st, &cfg, x), st.semigroup().is_mb(x), "{x}");
            assert!(defs.residue(&st, &cfg, x, 4, (x % 4) as u64));
            assert!(!defs.residue(&st, &cfg, x, 4, ((x + 1) % 4) as u64));
        }
    }
}
