//! Dense univariate polynomials over `Z_m` and arithmetic in the quotient
//! `Z_m[x]/(f)` for a monic `f`.
//!
//! Quotient elements are packed into a single `u32`: the coefficient
//! sequence `c_0, c_1, ..., c_{n-1}` (least degree first) is read as the
//! base-`m` digits of the encoding, `c_0` least significant.

use std::fmt;

use crate::algebra::arith::mod_pow;

/// A polynomial with coefficients in `Z_modulus`, least degree first.
///
/// The coefficient vector never carries trailing (high-degree) zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Polynomial {
    pub fn new(coeffs: impl Into<Vec<u64>>, modulus: u64) -> Self {
        assert!(modulus >= 2, "coefficient modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into();
        for c in &mut coeffs {
            *c %= modulus;
        }
        let mut p = Polynomial { coeffs, modulus };
        p.trim();
        p
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(Vec::new(), modulus)
    }

    /// The monomial `x`.
    pub fn x(modulus: u64) -> Self {
        Self::new(vec![0, 1], modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// The same coefficients read in `Z_modulus` (a lift when the new
    /// modulus is a multiple of the old one).
    pub fn with_modulus(&self, modulus: u64) -> Self {
        Self::new(self.coeffs.clone(), modulus)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..len).map(|i| (self.coeff(i) + rhs.coeff(i)) % m).collect::<Vec<_>>();
        Self::new(c, m)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..len)
            .map(|i| (self.coeff(i) + m - rhs.coeff(i)) % m)
            .collect::<Vec<_>>();
        Self::new(c, m)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % m;
            }
        }
        Self::new(out, m)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Self {
        assert!(divisor.is_monic(), "divisor must be monic");
        let n = divisor.degree().unwrap();
        let m = self.modulus;
        let mut c = self.coeffs.clone();
        while c.len() > n {
            let lead = c.pop().unwrap();
            if lead == 0 {
                continue;
            }
            let shift = c.len() - n;
            for (i, &d) in divisor.coeffs[..n].iter().enumerate() {
                c[shift + i] = (c[shift + i] + m - lead * d % m) % m;
            }
        }
        Self::new(c, m)
    }

    /// Scale to a monic polynomial. Requires a prime modulus.
    fn monic_prime(&self) -> Self {
        let m = self.modulus;
        let inv = mod_pow(self.leading(), m - 2, m);
        Self::new(self.coeffs.iter().map(|&c| c * inv % m).collect::<Vec<_>>(), m)
    }

    /// Remainder over a prime field for an arbitrary nonzero divisor.
    fn rem_prime(&self, divisor: &Self) -> Self {
        let m = self.modulus;
        let lead_inv = mod_pow(divisor.leading(), m - 2, m);
        let monic = Self::new(divisor.coeffs.iter().map(|&c| c * lead_inv % m).collect::<Vec<_>>(), m);
        self.rem_monic(&monic)
    }

    /// Monic gcd over the prime field `F_modulus`.
    pub fn gcd_prime(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem_prime(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic_prime()
        }
    }

    /// `self^exp mod f` for monic `f`.
    pub fn pow_mod(&self, mut exp: u64, f: &Self) -> Self {
        let mut acc = Self::new(vec![1], self.modulus).rem_monic(f);
        let mut base = self.rem_monic(f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem_monic(f);
            }
            base = base.mul(&base).rem_monic(f);
            exp >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test. The modulus must be prime and the
    /// polynomial monic of degree at least one.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 || !self.is_monic() {
            return false;
        }
        let p = self.modulus;
        let x = Self::x(p);
        // x^(p^k) mod f by repeated p-th powering.
        let frob = |k: usize| {
            let mut t = x.rem_monic(self);
            for _ in 0..k {
                t = t.pow_mod(p, self);
            }
            t
        };
        if frob(n).sub(&x.rem_monic(self)) != Self::zero(p) {
            return false;
        }
        crate::algebra::arith::prime_factors(n as u64).into_iter().all(|q| {
            let h = frob(n / q as usize).sub(&x);
            self.gcd_prime(&h).degree() == Some(0)
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Arithmetic in `Z_m[x]/(f)` on packed `u32` encodings.
#[derive(Clone, Debug)]
pub struct Quotient {
    modulus: u64,
    degree: usize,
    /// Low coefficients `f_0..f_{n-1}` of the monic reduction polynomial.
    reduction: Vec<u64>,
    order: u32,
}

impl Quotient {
    /// `f` must be monic of degree at least one and `m^deg(f)` must fit in
    /// a `u32`.
    pub fn new(f: &Polynomial) -> Self {
        assert!(f.is_monic(), "reduction polynomial must be monic");
        let degree = f.degree().expect("nonzero polynomial");
        assert!(degree >= 1, "reduction polynomial must have positive degree");
        let order = crate::algebra::arith::checked_pow(f.modulus(), degree as u32)
            .filter(|&o| o <= u32::MAX as u64)
            .expect("quotient order fits in u32");
        Quotient {
            modulus: f.modulus(),
            degree,
            reduction: f.coeffs()[..degree].to_vec(),
            order: order as u32,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn decode(&self, mut a: u32) -> Vec<u64> {
        let m = self.modulus as u32;
        (0..self.degree)
            .map(|_| {
                let d = a % m;
                a /= m;
                d as u64
            })
            .collect()
    }

    /// Packs a coefficient sequence of length at most `degree`.
    pub fn encode(&self, coeffs: &[u64]) -> u32 {
        debug_assert!(coeffs.len() <= self.degree);
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.modulus + c % self.modulus) as u32
    }

    pub fn from_poly(&self, p: &Polynomial) -> u32 {
        let f = self.reduction_poly();
        let r = p.with_modulus(self.modulus).rem_monic(&f);
        self.encode(r.coeffs())
    }

    pub fn to_poly(&self, a: u32) -> Polynomial {
        Polynomial::new(self.decode(a), self.modulus)
    }

    pub fn reduction_poly(&self) -> Polynomial {
        let mut c = self.reduction.clone();
        c.push(1);
        Polynomial::new(c, self.modulus)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.degree;
        let m = self.modulus;
        if n == 1 {
            // Z_m[x]/(x - c) is Z_m itself.
            return (a as u64 * b as u64 % m) as u32;
        }
        let x = self.decode(a);
        let y = self.decode(b);
        let mut t = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                t[i + j] = (t[i + j] + xi * yj) % m;
            }
        }
        for d in (n..t.len()).rev() {
            let lead = t[d];
            if lead == 0 {
                continue;
            }
            for (i, &fi) in self.reduction.iter().enumerate() {
                let idx = d - n + i;
                t[idx] = (t[idx] + m - lead * fi % m) % m;
            }
        }
        self.encode(&t[..n])
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: u64, a: u32) -> u32 {
        let coeffs: Vec<u64> = self
            .decode(a)
            .into_iter()
            .map(|d| d * (c % self.modulus) % self.modulus)
            .collect();
        self.encode(&coeffs)
    }

    /// The residue class of `x`.
    pub fn x(&self) -> u32 {
        self.from_poly(&Polynomial::x(self.modulus))
    }
}
