//! Brute-force oracles and seeded generators shared by the integration tests.
//! Nothing here calls into the library's arithmetic beyond construction.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sg2::systems::{Endpoint, ReducedSystem, System};
use sg2::TwoGenSemigroup;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

pub fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    (2..max)
        .flat_map(|a| (a + 1..=max).map(move |b| (a, b)))
        .filter(|&(a, b)| gcd(a, b) == 1)
        .collect()
}

pub fn sg(a: u64, b: u64) -> TwoGenSemigroup {
    TwoGenSemigroup::new(a, b).expect("valid generators")
}

/// A uniformly drawn coprime pair with `2 <= a < b <= max`.
pub fn random_pair(r: &mut ChaCha8Rng, max: u64) -> (u64, u64) {
    loop {
        let a = r.gen_range(2..max);
        let b = r.gen_range(a + 1..=max);
        if gcd(a, b) == 1 {
            return (a, b);
        }
    }
}

/// Membership sieve on `[0, bound]`.
pub fn sieve(a: u64, b: u64, bound: u128) -> Vec<bool> {
    let n = bound as usize;
    let mut m = vec![false; n + 1];
    m[0] = true;
    for x in 1..=n {
        m[x] = (x >= a as usize && m[x - a as usize]) || (x >= b as usize && m[x - b as usize]);
    }
    m
}

/// `(frobenius, conductor, genus)` by scanning the sieve up to `ab`.
pub fn brute_invariants(a: u64, b: u64) -> (i128, u128, u128) {
    let m = sieve(a, b, u128::from(a * b));
    let gaps: Vec<usize> = (0..m.len()).filter(|&x| !m[x]).collect();
    let frob = gaps.last().map_or(-1, |&g| g as i128);
    (frob, (frob + 1) as u128, gaps.len() as u128)
}

/// Every `(m, m_a, m_b)` with `m_a < b`, `m_b < a` and `x = m*ab + m_a*a + m_b*b`.
pub fn brute_decompositions(a: u64, b: u64, x: u128) -> Vec<(u128, u64, u64)> {
    let (a1, b1, ab) = (u128::from(a), u128::from(b), u128::from(a * b));
    let mut out = Vec::new();
    for mb in 0..a {
        for ma in 0..b {
            let part = u128::from(ma) * a1 + u128::from(mb) * b1;
            if part <= x && (x - part).is_multiple_of(ab) {
                out.push(((x - part) / ab, ma, mb));
            }
        }
    }
    out
}

/// Least `j >= 1` with `j*b = 1 (mod a)`.
pub fn brute_inverse(a: u64, b: u64) -> u64 {
    (1..=a)
        .find(|&j| (u128::from(j) * u128::from(b)) % u128::from(a) == 1 % u128::from(a))
        .expect("coprime")
}

/// Greatest multiple of `a` at most `x`, or `ab` itself.
pub fn brute_alpha(a: u64, b: u64, x: u128) -> u128 {
    let ab = u128::from(a) * u128::from(b);
    if x == ab {
        return ab;
    }
    (0..=x).rev().find(|y| y % u128::from(a) == 0).unwrap_or(0)
}

/// Least `x` in `M_b` satisfying an integer-endpoint reduced system, by
/// checking every multiple `w*b`, `0 <= w <= a`.
pub fn brute_solve(
    a: u64,
    b: u64,
    n: u64,
    mb: u64,
    diff: u64,
    dw: (u128, u128),
    xw: (u128, u128),
    ma: Option<u64>,
) -> Option<u128> {
    let ab = u128::from(a) * u128::from(b);
    (0..=a).map(|w| u128::from(w) * u128::from(b)).find(|&x| {
        let idx = if x == ab {
            u128::from(a)
        } else {
            x / u128::from(b)
        };
        let al = brute_alpha(a, b, x);
        let d = x - al;
        let ai = if x == ab {
            u128::from(b)
        } else {
            al / u128::from(a)
        };
        idx % u128::from(n) == u128::from(mb)
            && d % u128::from(n) == u128::from(diff)
            && dw.0 < d
            && d < dw.1
            && xw.0 < x
            && x < xw.1
            && ma.is_none_or(|m| ai % u128::from(n) == u128::from(m))
    })
}

/// A random well-formed integer-endpoint system for `<a, b>`.
pub fn random_system(r: &mut ChaCha8Rng, a: u64, b: u64, n_max: u64, full: bool) -> System {
    let ab = u128::from(a) * u128::from(b);
    let n = r.gen_range(1..=n_max);
    let d1 = r.gen_range(0..u128::from(a));
    let d2 = r.gen_range(d1 + 1..=u128::from(a) + 1).min(ab);
    let w1 = r.gen_range(0..a);
    let w2 = r.gen_range(w1 + 1..=a);
    let reduced = ReducedSystem {
        n,
        mb_residue: r.gen_range(0..n),
        diff_residue: r.gen_range(0..n),
        diff_window: (Endpoint::Int(d1), Endpoint::Int(d2)),
        x_window: (
            Endpoint::Int(u128::from(w1) * u128::from(b)),
            Endpoint::Int(u128::from(w2) * u128::from(b)),
        ),
    };
    if full {
        System::Full(sg2::systems::FullSystem {
            reduced,
            ma_residue: r.gen_range(0..n),
        })
    } else {
        System::Reduced(reduced)
    }
}

/// The integer endpoints of a system built by [`random_system`].
pub fn ints(sys: &System) -> ((u128, u128), (u128, u128)) {
    let r = sys.reduced();
    let v = |e: &Endpoint| match e {
        Endpoint::Int(k) => *k,
        _ => panic!("integer endpoints only"),
    };
    (
        (v(&r.diff_window.0), v(&r.diff_window.1)),
        (v(&r.x_window.0), v(&r.x_window.1)),
    )
}

/// Membership by trying every `b`-multiplicity below `a`.
pub fn brute_member(a: u64, b: u64, x: u128) -> bool {
    (0..u128::from(a))
        .map(|j| j * u128::from(b))
        .any(|jb| jb <= x && (x - jb).is_multiple_of(u128::from(a)))
}

/// `(m, m_a, m_b)` for a member, found by trying every `m_b < a`.
pub fn brute_decompose(a: u64, b: u64, x: u128) -> Option<(u128, u64, u64)> {
    let (a1, b1) = (u128::from(a), u128::from(b));
    let mb = (0..a1).find(|j| j * b1 <= x && (x - j * b1).is_multiple_of(a1))?;
    let q = (x - mb * b1) / a1;
    Some((q / b1, (q % b1) as u64, mb as u64))
}

/// Least member in each residue class mod `a`, tabulated from the
/// multiples `j*b`, `j < a`.
pub struct Apery {
    a: u128,
    least: Vec<u128>,
}

impl Apery {
    pub fn new(a: u64, b: u64) -> Self {
        let (a, b) = (u128::from(a), u128::from(b));
        let mut least = vec![0; a as usize];
        for j in 0..a {
            least[(j * b % a) as usize] = j * b;
        }
        Apery { a, least }
    }

    pub fn member(&self, x: u128) -> bool {
        x >= self.least[(x % self.a) as usize]
    }
}
