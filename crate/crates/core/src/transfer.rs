//! Families of concrete semigroups consistent with a set of limit invariants,
//! and sentence-by-sentence comparison of the limit model with each member.

use crate::error::{Error, Result};
use crate::fo::{eval_formula, parse_catalog, syntax::Printer, EvalConfig, Sentence, Structure};
use crate::limit::{eval_qf_sentence, LimitInvariants, LimitModel};
use crate::semigroup::TwoGenSemigroup;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

pub const FORMAT_VERSION: u32 = 1;

/// The shipped sentence catalog.
pub const SENTENCES: &str = include_str!("../data/sentences.sexp");

/// The shipped invariant presets as `(file stem, JSON)`.
pub const PRESETS: [(&str, &str); 5] = [
    (
        "zero_m1_n3",
        include_str!("../data/presets/zero_m1_n3.json"),
    ),
    (
        "zero_m2_n1",
        include_str!("../data/presets/zero_m2_n1.json"),
    ),
    (
        "zero_m3_n2",
        include_str!("../data/presets/zero_m3_n2.json"),
    ),
    (
        "rational_m1_k2_n3",
        include_str!("../data/presets/rational_m1_k2_n3.json"),
    ),
    (
        "rational_m3_k4_n2",
        include_str!("../data/presets/rational_m3_k4_n2.json"),
    ),
];

pub fn default_catalog() -> Vec<(String, Sentence)> {
    parse_catalog(SENTENCES).expect("shipped catalog parses")
}

pub fn preset(name: &str) -> Result<LimitInvariants> {
    let (_, src) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::OutOfDomain(format!("no preset named `{name}`")))?;
    LimitInvariants::from_json(src)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub count: usize,
    pub a_floor: u64,
    pub seed: u64,
}

/// `count` distinct semigroups with strictly increasing `a >= a_floor`, each
/// matching the residue profile, `m*b = n (mod a)` and the `q0` branch. In
/// the zero branch `b/a >= a_floor` too.
pub fn generate_family(md: &LimitModel, spec: &FamilySpec) -> Result<Vec<TwoGenSemigroup>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (ra, ka) = md.a_residues().combined();
    let floor = spec.a_floor.max(md.n() + 1).max(2);
    let mut a = floor + (ra + ka - floor % ka) % ka;
    let (m, n, t) = (u128::from(md.m()), u128::from(md.n()), u128::from(md.t()));
    let mut out = Vec::with_capacity(spec.count);
    let mut misses = 0u32;
    while out.len() < spec.count {
        if misses > 10_000 {
            return Err(Error::UnsatisfiableSpec(format!(
                "no consistent pair found near a = {a}"
            )));
        }
        let lm = n + t * u128::from(a);
        let b = match (md.k(), md.alpha_b_residues()) {
            (Some(k), _) => {
                let num = u128::from(k) * u128::from(a) + n;
                (num % m == 0).then(|| num / m)
            }
            (None, Some(ires)) => {
                let (ri, ki) = ires.combined();
                let i0 = floor + (ri + ki - floor % ki) % ki;
                let i = u128::from(i0) + u128::from(ki) * rng.gen_range(0..4u128);
                (lm % m == 0).then(|| u128::from(a) * i + lm / m)
            }
            (None, None) => unreachable!("every model has a q0 branch"),
        };
        match b.and_then(|b| u64::try_from(b).ok()) {
            Some(b) if md.admits(a, b) => {
                out.push(TwoGenSemigroup::new(a, b)?);
                misses = 0;
            }
            _ => misses += 1,
        }
        let gap = rng.gen_range(1..=3u64);
        a = a.checked_add(gap * ka).ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// Four times the largest numeral, multiplier or modulus in the catalog.
pub fn catalog_threshold(catalog: &[(String, Sentence)]) -> u64 {
    let m = catalog
        .iter()
        .map(|(_, s)| s.formula.max_coefficient())
        .max()
        .unwrap_or(0);
    u64::try_from(m.saturating_mul(4)).unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberResult {
    pub a: u64,
    pub b: u64,
    pub value: bool,
    pub undefined: u64,
    pub agrees: bool,
    pub below_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceResult {
    pub name: String,
    pub sentence: String,
    pub symbolic: Option<bool>,
    pub symbolic_undefined: u64,
    /// Why the limit model could not evaluate the sentence.
    pub skipped: Option<String>,
    pub members: Vec<MemberResult>,
    /// Disagreements at or above the threshold.
    pub mismatches: usize,
    pub smallest_failing: Option<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub format_version: u32,
    pub preset: Option<String>,
    pub threshold: u64,
    pub sentences: Vec<SentenceResult>,
}

impl AgreementReport {
    /// `(agreeing, compared)` over members at or above the threshold.
    pub fn counts(&self) -> (usize, usize) {
        let rows = self
            .sentences
            .iter()
            .filter(|s| s.skipped.is_none())
            .flat_map(|s| &s.members);
        rows.filter(|r| !r.below_threshold)
            .fold((0, 0), |(ok, all), r| (ok + usize::from(r.agrees), all + 1))
    }

    pub fn skipped(&self) -> usize {
        self.sentences
            .iter()
            .filter(|s| s.skipped.is_some())
            .count()
    }

    pub fn all_agree(&self) -> bool {
        let (ok, all) = self.counts();
        ok == all && self.skipped() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per sentence.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let w = self
            .sentences
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(8);
        let _ = writeln!(
            s,
            "{:<w$}  {:<7}  {:>7}  note",
            "sentence", "limit", "agree"
        );
        for r in &self.sentences {
            let limit = match (r.symbolic, &r.skipped) {
                (Some(v), _) => v.to_string(),
                (None, _) => "-".into(),
            };
            let total = r.members.iter().filter(|m| !m.below_threshold).count();
            let agree = r
                .members
                .iter()
                .filter(|m| !m.below_threshold && m.agrees)
                .count();
            let note = match (&r.skipped, r.smallest_failing) {
                (Some(why), _) => format!("skipped: {why}"),
                (None, Some((a, b))) => format!("first mismatch at ({a}, {b})"),
                _ => String::new(),
            };
            let _ = writeln!(
                s,
                "{:<w$}  {:<7}  {:>7}  {note}",
                r.name,
                limit,
                format!("{agree}/{total}")
            );
        }
        let (ok, all) = self.counts();
        let _ = writeln!(
            s,
            "agreement {ok}/{all}, {} skipped, threshold a >= {}",
            self.skipped(),
            self.threshold
        );
        s
    }
}

/// Compares the limit model with every family member on every sentence.
/// Members are checked in parallel; output order is catalog order, then `a`.
pub fn check_agreement(
    md: &LimitModel,
    family: &[TwoGenSemigroup],
    catalog: &[(String, Sentence)],
    threshold: u64,
) -> AgreementReport {
    let mut fam: Vec<TwoGenSemigroup> = family.to_vec();
    fam.sort_by_key(|s| s.a());
    let sentences = catalog
        .iter()
        .map(|(name, s)| {
            let printed = Printer {
                item: &s.formula,
                names: &s.names,
            }
            .to_string();
            let sym = if s.formula.is_quantifier_free() {
                eval_qf_sentence(md, s)
            } else {
                Err(Error::Unsupported("sentence has quantifiers".into()))
            };
            let (symbolic, symbolic_undefined, skipped) = match sym {
                Ok(r) => (Some(r.value), r.undefined, None),
                Err(e) => (None, 0, Some(format!("{}: {e}", e.kind()))),
            };
            let members: Vec<MemberResult> = fam
                .par_iter()
                .map(|sg| {
                    let st = Structure::new(*sg);
                    let cfg = EvalConfig {
                        universe: sg.ab(),
                        sample_size: 0,
                    };
                    let rep = eval_formula(&st, s, &cfg);
                    MemberResult {
                        a: sg.a(),
                        b: sg.b(),
                        value: rep.value,
                        undefined: rep.undefined,
                        agrees: symbolic == Some(rep.value) && symbolic_undefined == rep.undefined,
                        below_threshold: sg.a() < threshold,
                    }
                })
                .collect();
            let failing: Vec<&MemberResult> = members
                .iter()
                .filter(|r| skipped.is_none() && !r.agrees && !r.below_threshold)
                .collect();
            SentenceResult {
                name: name.clone(),
                sentence: printed,
                symbolic,
                symbolic_undefined,
                skipped,
                mismatches: failing.len(),
                smallest_failing: failing.first().map(|r| (r.a, r.b)),
                members,
            }
        })
        .collect();
    AgreementReport {
        format_version: FORMAT_VERSION,
        preset: md.invariants().name.clone(),
        threshold,
        sentences,
    }
}
