//! Small number-theoretic helpers on machine integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `x mod m`, using 64-bit division when `x` fits.
#[inline]
pub fn rem(x: u128, m: u64) -> u64 {
    match u64::try_from(x) {
        Ok(x) => x % m,
        Err(_) => (x % u128::from(m)) as u64,
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Inverse of `x` modulo `m`, if it exists. `mod_inverse(x, 1)` is `Some(0)`.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i128::from(x % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

/// Combine `x = r1 (mod m1)` and `x = r2 (mod m2)`; `None` if incompatible.
/// Returns `(r, lcm)`.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<(u64, u64)> {
    let g = gcd(m1, m2);
    if (r1 % g) != (r2 % g) {
        return None;
    }
    let l = lcm(m1, m2);
    let m1g = m1 / g;
    let m2g = m2 / g;
    // r1 + m1 * s, with m1 * s = r2 - r1 (mod m2)
    let diff = (i128::from(r2) - i128::from(r1)).rem_euclid(i128::from(m2)) as u64 / g;
    let inv = mod_inverse(m1g % m2g.max(1), m2g).unwrap_or(0);
    let s = (u128::from(diff) * u128::from(inv) % u128::from(m2g.max(1))) as u64;
    let r = (u128::from(r1) + u128::from(m1) * u128::from(s)) % u128::from(l);
    Some((r as u64, l))
}

/// Prime factorization by trial division, as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of the largest power of `p` dividing `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 4), Some(3));
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
        for m in 2..60u64 {
            for x in 0..m {
                match mod_inverse(x, m) {
                    Some(y) => assert_eq!(x * y % m, 1),
                    None => assert_ne!(gcd(x, m), 1),
                }
            }
        }
    }

    #[test]
    fn crt() {
        for m1 in 1..13u64 {
            for m2 in 1..13u64 {
                for r1 in 0..m1 {
                    for r2 in 0..m2 {
                        let brute = (0..lcm(m1, m2)).find(|x| x % m1 == r1 && x % m2 == r2);
                        assert_eq!(crt_pair(r1, m1, r2, m2).map(|p| p.0), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn factor() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(valuation(48, 2), 4);
    }
}
