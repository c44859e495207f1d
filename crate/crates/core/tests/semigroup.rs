mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn closed_formulas_match_membership_scan() {
    for (a, b) in coprime_pairs(40) {
        let s = sg(a, b);
        let (frob, c, g) = brute_invariants(a, b);
        assert_eq!(s.frobenius() as i128, frob, "<{a},{b}>");
        assert_eq!(s.conductor(), c, "<{a},{b}>");
        assert_eq!(s.genus(), g, "<{a},{b}>");
    }
}

#[test]
fn decomposition_is_the_unique_triple() {
    for (a, b) in coprime_pairs(15) {
        let s = sg(a, b);
        let m = sieve(a, b, 3 * s.ab());
        for x in 0..=3 * s.ab() {
            let all = brute_decompositions(a, b, x);
            if m[x as usize] {
                assert_eq!(all.len(), 1, "<{a},{b}> x={x}");
                let d = s.decompose(x).unwrap();
                assert_eq!((d.m, d.m_a, d.m_b), all[0]);
            } else {
                assert!(all.is_empty());
                assert!(s.decompose(x).is_err());
            }
        }
    }
}

#[test]
fn decomposition_bounds_on_large_semigroups() {
    let mut r = rng(11);
    for _ in 0..25 {
        let (a, b) = random_pair(&mut r, 500);
        let s = sg(a, b);
        for _ in 0..400 {
            let x = s.successor(r.gen_range(0..3 * s.ab()));
            let d = s.decompose(x).unwrap();
            assert!(d.m_a < b && d.m_b < a);
            assert_eq!(d.value(&s), x);
        }
    }
}

#[test]
fn beta_k_identity_and_minimality() {
    let mut r = rng(12);
    for _ in 0..30 {
        let (a, b) = random_pair(&mut r, 60);
        let s = sg(a, b);
        for k in 1..b {
            let bk = s.beta_k(k).unwrap();
            assert_eq!(bk.beta_k, u128::from(k) * s.beta1() - bk.n_k * s.ab());
            assert!(bk.n_k < u128::from(k));
            let least = (1..=a)
                .map(|j| u128::from(j * b))
                .find(|&y| y >= u128::from(k) && (y - u128::from(k)) % u128::from(a) == 0)
                .unwrap();
            assert_eq!(bk.beta_k, least, "<{a},{b}> k={k}");
        }
    }
}

#[test]
fn axiom12_witness_is_constructive() {
    for (a, b) in coprime_pairs(30) {
        let s = sg(a, b);
        let ab = s.ab();
        let ma: Vec<u128> = (0..=ab).filter(|&x| s.is_ma(x)).collect();
        let mb: Vec<u128> = (0..=ab).filter(|&x| s.is_mb(x)).collect();
        for n in 1..=6u64 {
            let n1 = u128::from(n);
            for &al in &ma {
                for &be in mb.iter().filter(|&&be| be >= al && (be - al) % n1 == 0) {
                    let (bp, ap) = s
                        .axiom12_witness(al, be, n)
                        .unwrap()
                        .unwrap_or_else(|| panic!("<{a},{b}> n={n} alpha={al} beta={be}"));
                    assert!(s.is_mb(bp) && s.is_ma(ap));
                    assert_eq!(n1 * (bp - ap), be - al);
                    if be - al < n1 * u128::from(a) {
                        assert_eq!(ap, s.alpha(bp).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn residue_algebra() {
    let mut r = rng(13);
    for _ in 0..10 {
        let (a, b) = random_pair(&mut r, 14);
        let s = sg(a, b);
        let xs: Vec<u128> = s.members_up_to(3 * s.ab()).collect();
        for n in 1..=8u64 {
            for &x in &xs {
                let hits = (0..n).filter(|&k| s.residue_r(x, n, k)).count();
                assert_eq!(hits, 1);
                for k in 0..n {
                    assert_eq!(s.residue_r(x, n, k), s.residue_r_by_definition(x, n, k));
                }
                for m in 1..=8u64 {
                    if gcd(n, m) != 1 {
                        continue;
                    }
                    for k in 0..n * m {
                        let joint = s.residue_r(x, n * m, k);
                        assert_eq!(joint, s.residue_r(x, n, k % n) && s.residue_r(x, m, k % m));
                    }
                }
            }
            for &x in &xs {
                let rx = (x % u128::from(n)) as u64;
                for &y in &xs {
                    let ry = (y % u128::from(n)) as u64;
                    assert!(s.residue_r(x + y, n, (rx + ry) % n));
                }
            }
            let ma: Vec<u128> = xs.iter().copied().filter(|&x| s.is_ma(x)).collect();
            let mb: Vec<u128> = xs.iter().copied().filter(|&x| s.is_mb(x)).collect();
            for (set, idx) in [(&ma, u128::from(a)), (&mb, u128::from(b))] {
                for &x in set {
                    for &y in set {
                        if !set.contains(&(x + y)) {
                            continue;
                        }
                        let (rx, ry) = ((x / idx) as u64 % n, (y / idx) as u64 % n);
                        let sum = (rx + ry) % n;
                        let holds = if idx == u128::from(a) {
                            s.residue_ra(x + y, n, sum).unwrap()
                        } else {
                            s.residue_rb(x + y, n, sum).unwrap()
                        };
                        assert!(holds, "<{a},{b}> n={n} x={x} y={y}");
                    }
                }
            }
        }
    }
}

fn pair() -> impl Strategy<Value = (u64, u64)> {
    (2u64..80, 3u64..120).prop_filter_map("coprime a < b", |(a, b)| {
        (a < b && gcd(a, b) == 1).then_some((a, b))
    })
}

proptest! {
    #[test]
    fn membership_matches_sieve((a, b) in pair()) {
        let s = sg(a, b);
        let m = sieve(a, b, 2 * s.ab());
        for x in 0..=2 * s.ab() {
            prop_assert_eq!(s.contains(x), m[x as usize]);
        }
    }

    #[test]
    fn successor_and_predecessor_are_inverse((a, b) in pair(), x in 0u128..20_000) {
        let s = sg(a, b);
        let y = s.successor(x);
        prop_assert!(y > x && s.contains(y));
        prop_assert!((x + 1..y).all(|z| !s.contains(z)));
        prop_assert_eq!(s.predecessor(y).map(|p| p <= x), Some(true));
    }

    #[test]
    fn alpha_beta_bracket((a, b) in pair(), t in 0.0f64..=1.0) {
        let s = sg(a, b);
        let x = (t * s.ab() as f64) as u128;
        let (al, be) = (s.alpha(x).unwrap(), s.beta(x).unwrap());
        prop_assert!(al <= x && x <= be);
        prop_assert!(s.is_ma(al) && s.is_mb(be));
        prop_assert_eq!(al, brute_alpha(a, b, x));
    }

    #[test]
    fn conductor_sum_identity((a, b) in pair()) {
        let s = sg(a, b);
        prop_assert_eq!(s.successor(s.conductor()) + s.alpha1(), s.conductor() + s.beta1());
        prop_assert_eq!(s.beta1(), u128::from(brute_inverse(a, b)) * u128::from(b));
        prop_assert_eq!(s.alpha(s.beta1()).unwrap(), s.alpha1());
    }
}
