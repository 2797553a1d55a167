//! Finite fields `F_{p^n}` backed by full exponent/logarithm tables.
//!
//! The defining polynomial is chosen deterministically so that every table,
//! family and profile derived from a field is reproducible:
//!
//! * `n = 1`: `x - g` where `g` is the least primitive root mod `p`, so the
//!   generator is `g` itself;
//! * `n >= 2`: the lexicographically least monic primitive polynomial of
//!   degree `n`, comparing coefficient sequences `c_0, c_1, ..., c_{n-1}`.
//!
//! The generator is always the residue class of `x`.

use crate::algebra::arith::{checked_pow, is_prime, prime_factors, primitive_root};
use crate::algebra::group::AdditiveGroup;
use crate::algebra::poly::{Polynomial, Quotient};
use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Polynomial,
    arith: Quotient,
    group: AdditiveGroup,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds `F_{p^n}`.
pub fn build_field(p: u64, n: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
    }
    let q = checked_pow(p, n)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(Error::BudgetExceeded {
            what: "field order",
            size: (p as u128).saturating_pow(n),
            budget: MAX_FIELD_ORDER as u128,
        })?;

    let modulus = if n == 1 {
        let g = primitive_root(p).expect("prime has a primitive root");
        Polynomial::new(vec![(p - g) % p, 1], p)
    } else {
        least_primitive_polynomial(p, n, q)
    };
    let arith = Quotient::new(&modulus);
    let generator = arith.x();

    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = 1u32;
    for k in 0..q - 1 {
        debug_assert_eq!(log[cur as usize], NO_LOG, "generator order too small");
        exp.push(cur);
        log[cur as usize] = k as u32;
        cur = arith.mul(cur, generator);
    }
    debug_assert_eq!(cur, 1);

    Ok(FieldCtx {
        p: p as u32,
        n,
        q: q as u32,
        modulus,
        group: AdditiveGroup::new(p as u32, n)?,
        arith,
        generator,
        exp,
        log,
    })
}

/// Scans monic degree-`n` polynomials in lexicographic order of
/// `(c_0, ..., c_{n-1})` and returns the first one for which `x` has
/// multiplicative order `p^n - 1`. Such an `x` generates every nonzero
/// residue, so the quotient is a field and the polynomial is primitive.
fn least_primitive_polynomial(p: u64, n: u32, q: u64) -> Polynomial {
    let factors = prime_factors(q - 1);
    let span = q; // number of (c_0..c_{n-1}) tuples
    for idx in 0..span {
        // c_0 is the most significant position in the ordering.
        let mut coeffs = vec![0u64; n as usize + 1];
        let mut rest = idx;
        for i in (0..n as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs[n as usize] = 1;
        let f = Polynomial::new(coeffs, p);
        let arith = Quotient::new(&f);
        let x = arith.x();
        if arith.pow(x, q - 1) != 1 {
            continue;
        }
        if factors.iter().all(|&l| arith.pow(x, (q - 1) / l) != 1) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist for every degree")
}

impl FieldCtx {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus_poly(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn additive_group(&self) -> AdditiveGroup {
        self.group
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    /// Coefficient sequence of an element, least degree first.
    pub fn coefficients(&self, a: u32) -> Vec<u64> {
        self.arith.decode(a)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> u32 {
        self.arith.encode(coeffs)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.group.add(a, b)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.group.sub(a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.group.neg(a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * e as u128;
        self.exp[(l % (self.q as u128 - 1)) as usize]
    }

    /// Discrete logarithm to the base of the generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        match self.log.get(a as usize) {
            Some(&l) if l != NO_LOG => Some(l),
            _ => None,
        }
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Product by polynomial arithmetic, bypassing the tables.
    pub fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        self.arith.mul(a, b)
    }

    pub fn is_square(&self, a: u32) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => self.p == 2 || l % 2 == 0,
        }
    }
}

/// The cyclotomic classes `C_i = { g^t : t = i (mod e) }`, each sorted.
pub fn cyclotomic_classes(ctx: &FieldCtx, e: u32) -> Result<Vec<Vec<u32>>> {
    let qm1 = ctx.order() - 1;
    if e == 0 || qm1 % e != 0 {
        return Err(Error::NotADivisor {
            divisor: e as u64,
            value: qm1 as u64,
        });
    }
    let f = qm1 / e;
    Ok((0..e)
        .map(|i| {
            let mut class: Vec<u32> = (0..f).map(|t| ctx.exp((t * e + i) as u64)).collect();
            class.sort_unstable();
            class
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Order of `a` in `Z_p^*` by brute force.
    fn brute_order(a: u64, p: u64) -> u64 {
        let mut x = a % p;
        let mut k = 1;
        while x != 1 {
            x = x * a % p;
            k += 1;
        }
        k
    }

    #[test]
    fn prime_field_generator() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.generator(), 2);
        assert_eq!(brute_order(2, 5), 4);
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn f9_modulus_is_least_primitive() {
        // Exhaustive oracle over the nine monic quadratics: irreducible and x
        // of order 8, lexicographic in (c0, c1).
        let mut primitive = Vec::new();
        for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let f = Polynomial::new(vec![c0, c1, 1], 3);
                if !f.is_irreducible() {
                    continue;
                }
                let q = Quotient::new(&f);
                let x = q.x();
                let mut cur = x;
                let mut ord = 1;
                while cur != 1 {
                    cur = q.mul(cur, x);
                    ord += 1;
                }
                if ord == 8 {
                    primitive.push((c0, c1));
                }
            }
        }
        assert_eq!(primitive[0], (2, 1));
        let f = build_field(3, 2).unwrap();
        assert_eq!(f.modulus_poly().coeffs(), &[2, 1, 1]);
        assert_eq!(f.modulus_poly().to_string(), "x^2 + x + 2");
        // x * x = 2x + 1
        let x = f.generator();
        assert_eq!(f.coefficients(f.mul(x, x)), vec![1, 2]);
    }

    #[test]
    fn generator_order_in_f1331() {
        let f = build_field(11, 3).unwrap();
        assert_eq!(f.order(), 1331);
        let g = f.generator();
        assert_eq!(f.pow(g, 1330), 1);
        for l in prime_factors(1330) {
            assert_ne!(f.pow(g, 1330 / l), 1);
        }
        assert!(f.modulus_poly().is_irreducible());
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (7, 2), (11, 2)] {
            let f = build_field(p, n).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for (p, n) in [(2, 3), (3, 2), (5, 2), (3, 4), (11, 2), (7, 2)] {
            let f = build_field(p, n).unwrap();
            let q = f.order();
            assert!(q <= 121);
            for a in 0..q {
                for b in 0..q {
                    let lhs = f.pow(f.add(a, b), p);
                    let rhs = f.add(f.pow(a, p), f.pow(b, p));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(build_field(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(build_field(2, 21), Err(Error::BudgetExceeded { .. })));
        let f = build_field(5, 1).unwrap();
        assert!(matches!(f.inv(0), Err(Error::InverseOfZero)));
        assert!(cyclotomic_classes(&f, 3).is_err());
    }

    #[test]
    fn classes_of_f5_and_sizes() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(cyclotomic_classes(&f, 2).unwrap(), vec![vec![1, 4], vec![2, 3]]);

        let f9 = build_field(3, 2).unwrap();
        let c = cyclotomic_classes(&f9, 4).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|cl| cl.len() == 2));

        let f625 = build_field(5, 4).unwrap();
        let c = cyclotomic_classes(&f625, 52).unwrap();
        assert_eq!(c.len(), 52);
        assert!(c.iter().all(|cl| cl.len() == 12));
    }

    #[test]
    fn classes_partition_and_are_translates() {
        let f = build_field(5, 4).unwrap();
        for e in [2, 4, 26, 52] {
            let classes = cyclotomic_classes(&f, e).unwrap();
            let mut all: Vec<u32> = classes.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (1..f.order()).collect::<Vec<_>>());
            let g = f.generator();
            for i in 0..e as usize {
                let mut shifted: Vec<u32> = classes[0].iter().map(|&c| f.mul(c, f.pow(g, i as u64))).collect();
                shifted.sort_unstable();
                assert_eq!(shifted, classes[i]);
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        let f = build_field(3, 4).unwrap();
        for a in 0..f.order() {
            assert_eq!(f.from_coefficients(&f.coefficients(a)), a);
        }
    }
}
