//! Integer helpers: modular exponentiation, primality, factoring and
//! primitive roots. Everything here is exact `u64`/`u128` arithmetic.

/// `base^exp mod modulus`, with `0^0 = 1`. `modulus` must be nonzero.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` in increasing order (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    if p == 2 {
        return Some(1);
    }
    let factors = prime_factors(p - 1);
    (2..p).find(|&g| factors.iter().all(|&f| mod_pow(g, (p - 1) / f, p) != 1))
}

/// Checked `base^exp`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// If `q = p^n` for a prime `p` and `n >= 1`, returns `(p, n)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = *prime_factors(q).first()?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Binomial coefficient `C(n, 2)` with overflow checking.
pub fn choose2(n: u64) -> Option<u64> {
    if n < 2 {
        return Some(0);
    }
    let (a, b) = if n % 2 == 0 { (n / 2, n - 1) } else { (n, (n - 1) / 2) };
    a.checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_prime(n), "n = {n}");
        }
        assert!(is_prime(1093));
        assert!(is_prime(3511));
        assert!(!is_prime(3511 * 1093));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), Some(2));
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(73), Some(5));
        assert_eq!(primitive_root(9), None);
    }

    #[test]
    fn factoring_helpers() {
        assert_eq!(prime_factors(1330), vec![2, 5, 7, 19]);
        assert_eq!(prime_factors(624), vec![2, 3, 13]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(1331), Some((11, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(choose2(32_500), Some(528_108_750));
    }

    #[test]
    fn mod_pow_edge_cases() {
        assert_eq!(mod_pow(0, 0, 7), 1);
        assert_eq!(mod_pow(2, 4, 25), 16);
        assert_eq!(mod_pow(2, 1092, 1093 * 1093), 1);
        assert_eq!(mod_pow(5, 3, 1), 0);
    }
}
