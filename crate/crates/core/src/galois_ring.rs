//! The Galois ring `GR(p^2, r) = Z_{p^2}[x]/(f)`.
//!
//! `f` is the residue field's defining polynomial with its coefficients
//! read in `Z_{p^2}`; its reduction mod `p` is primitive, hence irreducible,
//! so `f` is basic irreducible. The Teichmüller generator is obtained from the
//! class `a` of `x` by a single Frobenius power, `xi = a^(p^r)`: for any
//! `b`, `(a + p b)^(p^r) = a^(p^r) (mod p^2)`, and the result is fixed by
//! `t -> t^(p^r)`.
//!
//! Every element has a unique p-adic form `a0 + p a1` with `a0, a1` in the
//! Teichmüller set `T = {0, 1, xi, ..., xi^(p^r - 2)}`, and every unit a
//! unique form `a0 (1 + p a1)` with `a0` in `T*`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::arith::{checked_pow, is_prime};
use crate::algebra::{build_field, AdditiveGroup, FieldCtx, Polynomial, Quotient};
use crate::error::{Error, Result};

/// Largest ring order (number of encodings) accepted by [`build_ring`].
pub const MAX_RING_ORDER: u64 = 1 << 26;

#[derive(Clone, Debug)]
pub struct RingCtx {
    p: u32,
    r: u32,
    residue_order: u32,
    residue_field: FieldCtx,
    modulus: Polynomial,
    arith: Quotient,
    group: AdditiveGroup,
    xi: u32,
    /// `[0, 1, xi, xi^2, ..., xi^(p^r - 2)]`.
    teichmuller: Vec<u32>,
    teich_log: HashMap<u32, u32>,
    /// Residue-field encoding -> the Teichmüller element reducing to it.
    lift: Vec<u32>,
}

/// `u = teich_part * (1 + p * principal_part)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitDecomposition {
    pub teich_part: u32,
    pub principal_part: u32,
}

/// Squares and non-squares of the Teichmüller group, in increasing powers of
/// `xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSplit {
    pub squares: Vec<u32>,
    pub non_squares: Vec<u32>,
}

/// Where `2` sits relative to the Teichmüller group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoClass {
    SquareInT,
    NonsquareInT,
    NotInT,
}

pub fn build_ring(p: u64, r: u32) -> Result<RingCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
    }
    let residue_order = checked_pow(p, r).ok_or(Error::Overflow("p^r"))?;
    if residue_order < 3 {
        return Err(Error::InvalidParameters(format!("GR({}, {r}) needs p^r >= 3", p * p)));
    }
    let order = checked_pow(p, 2 * r)
        .filter(|&o| o <= MAX_RING_ORDER)
        .ok_or(Error::BudgetExceeded {
            what: "ring order",
            size: (p as u128).saturating_pow(2 * r),
            budget: MAX_RING_ORDER as u128,
        })?;
    debug_assert!(order <= u32::MAX as u64);

    let residue_field = build_field(p, r)?;
    let pp = p * p;
    let modulus = residue_field.modulus_poly().with_modulus(pp);
    let arith = Quotient::new(&modulus);
    let group = AdditiveGroup::new(pp as u32, r)?;

    let xi = arith.pow(arith.x(), residue_order);

    let q = residue_order as u32;
    let mut teichmuller = Vec::with_capacity(q as usize);
    teichmuller.push(0);
    let mut teich_log = HashMap::with_capacity(q as usize);
    let mut lift = vec![u32::MAX; q as usize];
    lift[0] = 0;

    let mut ctx = RingCtx {
        p: p as u32,
        r,
        residue_order: q,
        residue_field,
        modulus,
        arith,
        group,
        xi,
        teichmuller: Vec::new(),
        teich_log: HashMap::new(),
        lift: Vec::new(),
    };

    let mut cur = 1u32;
    for k in 0..q - 1 {
        let res = ctx.residue(cur) as usize;
        assert_eq!(lift[res], u32::MAX, "Teichmüller residues must be distinct");
        lift[res] = cur;
        teichmuller.push(cur);
        teich_log.insert(cur, k);
        cur = ctx.arith.mul(cur, xi);
    }
    assert_eq!(cur, 1, "xi must have order p^r - 1");

    ctx.teichmuller = teichmuller;
    ctx.teich_log = teich_log;
    ctx.lift = lift;

    for &t in &ctx.teichmuller {
        assert_eq!(ctx.arith.pow(t, residue_order), t, "t^(p^r) = t on T");
    }
    Ok(ctx)
}

impl RingCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`, the size of the Teichmüller set.
    pub fn residue_order(&self) -> u32 {
        self.residue_order
    }

    /// `p^(2r)`.
    pub fn order(&self) -> u32 {
        self.group.order()
    }

    pub fn modulus_poly(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn residue_field(&self) -> &FieldCtx {
        &self.residue_field
    }

    pub fn additive_group(&self) -> AdditiveGroup {
        self.group
    }

    pub fn xi(&self) -> u32 {
        self.xi
    }

    /// `[0, 1, xi, ..., xi^(p^r - 2)]`.
    pub fn teichmuller(&self) -> &[u32] {
        &self.teichmuller
    }

    /// `T* = [1, xi, ..., xi^(p^r - 2)]`.
    pub fn teich_units(&self) -> &[u32] {
        &self.teichmuller[1..]
    }

    /// `k` with `t = xi^k`, if `t` lies in `T*`.
    pub fn teich_exponent(&self, t: u32) -> Option<u32> {
        self.teich_log.get(&t).copied()
    }

    pub fn is_teichmuller(&self, a: u32) -> bool {
        a == 0 || self.teich_log.contains_key(&a)
    }

    /// `xi^k`.
    pub fn xi_pow(&self, k: u64) -> u32 {
        self.teichmuller[1 + (k % (self.residue_order as u64 - 1)) as usize]
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
        self.arith.mul(a, b)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        self.arith.pow(a, e)
    }

    /// The integer `c` as a ring element.
    pub fn from_int(&self, c: u64) -> u32 {
        self.arith.encode(&[c % (self.p as u64 * self.p as u64)])
    }

    /// `p * a`.
    pub fn times_p(&self, a: u32) -> u32 {
        self.arith.scale(self.p as u64, a)
    }

    /// Reduction mod `p`, as a residue-field encoding.
    pub fn residue(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let digits: Vec<u64> = self.arith.decode(a).into_iter().map(|d| d % p).collect();
        self.residue_field.from_coefficients(&digits)
    }

    /// The Teichmüller element reducing to a residue-field element.
    pub fn teich_lift(&self, residue: u32) -> u32 {
        self.lift[residue as usize]
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.residue(a) != 0
    }

    /// `a / p` for `a` in the maximal ideal, reduced to the residue field.
    fn div_p_residue(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let digits: Vec<u64> = self
            .arith
            .decode(a)
            .into_iter()
            .map(|d| {
                debug_assert_eq!(d % p, 0);
                d / p
            })
            .collect();
        self.residue_field.from_coefficients(&digits)
    }

    /// The unique `(a0, a1)` in `T x T` with `a = a0 + p a1`.
    pub fn p_adic(&self, a: u32) -> (u32, u32) {
        let a0 = self.teich_lift(self.residue(a));
        let a1 = self.teich_lift(self.div_p_residue(self.sub(a, a0)));
        (a0, a1)
    }

    pub fn unit_decompose(&self, u: u32) -> Result<UnitDecomposition> {
        let a0 = self.teich_lift(self.residue(u));
        if a0 == 0 {
            return Err(Error::NotAUnit(u));
        }
        let k = self.teich_log[&a0] as u64;
        let inv = self.xi_pow(self.residue_order as u64 - 1 - k);
        let principal = self.mul(u, inv);
        let a1 = self.teich_lift(self.div_p_residue(self.sub(principal, 1)));
        Ok(UnitDecomposition {
            teich_part: a0,
            principal_part: a1,
        })
    }

    /// `(1 + p a)` for a Teichmüller `a`.
    pub fn principal_unit(&self, a: u32) -> u32 {
        self.add(1, self.times_p(a))
    }

    /// Even and odd powers of `xi`. Refused for `p = 2`.
    pub fn square_split(&self) -> Result<SquareSplit> {
        if self.p == 2 {
            return Err(Error::InvalidParameters(
                "the square split needs an odd characteristic".into(),
            ));
        }
        let units = self.teich_units();
        Ok(SquareSplit {
            squares: units.iter().step_by(2).copied().collect(),
            non_squares: units.iter().skip(1).step_by(2).copied().collect(),
        })
    }

    /// Whether the Teichmüller element `t` (nonzero) is a square in `T*`.
    pub fn is_teich_square(&self, t: u32) -> Option<bool> {
        self.teich_exponent(t).map(|k| k % 2 == 0)
    }

    /// Whether the unit `u` is a square in the unit group. For odd `p` the
    /// principal units form a group of odd order, so this is decided by the
    /// Teichmüller part alone.
    pub fn is_square_unit(&self, u: u32) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::InvalidParameters("squareness needs odd p".into()));
        }
        let d = self.unit_decompose(u)?;
        Ok(self.teich_exponent(d.teich_part).unwrap() % 2 == 0)
    }

    /// Classifies `2` as a square or non-square of `T*`, or outside `T*`.
    pub fn is_two_teichmuller_square(&self) -> Result<TwoClass> {
        if self.p == 2 {
            return Err(Error::InvalidParameters("2 is not a unit for p = 2".into()));
        }
        let two = self.from_int(2);
        let d = self.unit_decompose(two)?;
        if d.principal_part != 0 {
            return Ok(TwoClass::NotInT);
        }
        Ok(if self.teich_exponent(two).unwrap() % 2 == 0 {
            TwoClass::SquareInT
        } else {
            TwoClass::NonsquareInT
        })
    }

    /// The subgroup of `T*` of the given index: `{ xi^(index * t) }`.
    pub fn teich_subgroup(&self, index: u32) -> Result<Vec<u32>> {
        let n = self.residue_order - 1;
        if index == 0 || n % index != 0 {
            return Err(Error::NotADivisor {
                divisor: index as u64,
                value: n as u64,
            });
        }
        Ok((0..n / index).map(|t| self.xi_pow(t as u64 * index as u64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::mod_pow;

    fn sorted(mut v: Vec<u32>) -> Vec<u32> {
        v.sort_unstable();
        v
    }

    #[test]
    fn teichmuller_sets_of_z25_and_z9() {
        // Exhaustive oracle: solutions of t^p = t mod p^2.
        for (p, expected) in [(5u64, vec![0, 1, 7, 18, 24]), (3, vec![0, 1, 8])] {
            let brute: Vec<u32> = (0..p * p)
                .filter(|&t| mod_pow(t, p, p * p) == t)
                .map(|t| t as u32)
                .collect();
            assert_eq!(brute, expected);
            let ring = build_ring(p, 1).unwrap();
            assert_eq!(sorted(ring.teichmuller().to_vec()), expected);
        }
        assert_eq!(build_ring(5, 1).unwrap().xi(), 7);
    }

    #[test]
    fn gr_25_2_teichmuller_group() {
        let ring = build_ring(5, 2).unwrap();
        assert_eq!(ring.order(), 625);
        assert_eq!(ring.teich_units().len(), 24);
        let xi = ring.xi();
        let mut cur = xi;
        let mut ord = 1;
        while cur != 1 {
            cur = ring.mul(cur, xi);
            ord += 1;
        }
        assert_eq!(ord, 24);
        let f = ring.modulus_poly().with_modulus(5);
        assert!(f.is_irreducible());
    }

    #[test]
    fn p_adic_examples() {
        let z25 = build_ring(5, 1).unwrap();
        assert_eq!(z25.p_adic(12), (7, 1));
        assert_eq!(z25.p_adic(0), (0, 0));
        let z9 = build_ring(3, 1).unwrap();
        assert_eq!(z9.p_adic(5), (8, 8));
    }

    #[test]
    fn p_adic_is_unique_and_reconstructs() {
        for (p, r) in [(3, 1), (5, 1), (3, 2), (7, 1), (5, 2)] {
            let ring = build_ring(p, r).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in 0..ring.order() {
                let (a0, a1) = ring.p_adic(a);
                assert!(ring.is_teichmuller(a0) && ring.is_teichmuller(a1));
                assert_eq!(ring.add(a0, ring.times_p(a1)), a);
                assert!(seen.insert((a0, a1)));
            }
        }
    }

    #[test]
    fn unit_decomposition_examples() {
        let z25 = build_ring(5, 1).unwrap();
        let d = z25.unit_decompose(6).unwrap();
        assert_eq!((d.teich_part, d.principal_part), (1, 1));
        let d = z25.unit_decompose(7).unwrap();
        assert_eq!((d.teich_part, d.principal_part), (7, 0));
        assert!(matches!(z25.unit_decompose(10), Err(Error::NotAUnit(10))));
        let z9 = build_ring(3, 1).unwrap();
        let d = z9.unit_decompose(4).unwrap();
        assert_eq!((d.teich_part, d.principal_part), (1, 1));
    }

    #[test]
    fn unit_decomposition_reconstructs_all_units() {
        for (p, r) in [(3, 2), (5, 2), (7, 1), (2, 2)] {
            let ring = build_ring(p, r).unwrap();
            let mut units = 0;
            for u in 0..ring.order() {
                if !ring.is_unit(u) {
                    assert!(ring.unit_decompose(u).is_err());
                    continue;
                }
                units += 1;
                let d = ring.unit_decompose(u).unwrap();
                let back = ring.mul(d.teich_part, ring.principal_unit(d.principal_part));
                assert_eq!(back, u);
            }
            let q = ring.residue_order();
            assert_eq!(units, q * q - q);
        }
    }

    #[test]
    fn reduction_is_a_bijection_on_t() {
        for (p, r) in [(2, 2), (3, 1), (3, 3), (5, 2), (7, 2), (11, 1)] {
            let ring = build_ring(p, r).unwrap();
            let residues = sorted(ring.teichmuller().iter().map(|&t| ring.residue(t)).collect());
            assert_eq!(residues, (0..ring.residue_order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn principal_units_multiply_additively() {
        for (p, r) in [(3, 1), (5, 1), (7, 1), (3, 2), (2, 2), (5, 2), (7, 2)] {
            let ring = build_ring(p, r).unwrap();
            for &a in ring.teichmuller() {
                for &b in ring.teichmuller() {
                    let lhs = ring.mul(ring.principal_unit(a), ring.principal_unit(b));
                    let rhs = ring.add(1, ring.times_p(ring.add(a, b)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn square_split_z25() {
        let z25 = build_ring(5, 1).unwrap();
        let s = z25.square_split().unwrap();
        assert_eq!(sorted(s.squares), vec![1, 24]);
        assert_eq!(sorted(s.non_squares), vec![7, 18]);
        assert!(build_ring(2, 2).unwrap().square_split().is_err());
    }

    #[test]
    fn square_split_structure() {
        for (p, r) in [(3, 2), (5, 2), (7, 1), (13, 1), (3, 3)] {
            let ring = build_ring(p, r).unwrap();
            let q = ring.residue_order();
            let s = ring.square_split().unwrap();
            assert_eq!(s.squares.len() as u32, (q - 1) / 2);
            assert_eq!(s.non_squares.len() as u32, (q - 1) / 2);
            let set: std::collections::HashSet<_> = s.squares.iter().copied().collect();
            for &a in &s.squares {
                for &b in &s.squares {
                    assert!(set.contains(&ring.mul(a, b)));
                }
            }
            let shifted = sorted(s.squares.iter().map(|&a| ring.mul(a, ring.xi())).collect());
            assert_eq!(shifted, sorted(s.non_squares.clone()));
        }
    }

    #[test]
    fn teichmuller_differences_are_units() {
        for (p, r) in [(3, 2), (5, 2), (7, 1), (2, 3)] {
            let ring = build_ring(p, r).unwrap();
            for &a in ring.teich_units() {
                for &b in ring.teich_units() {
                    if a != b {
                        assert!(ring.is_unit(ring.sub(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn two_classification() {
        assert_eq!(
            build_ring(5, 1).unwrap().is_two_teichmuller_square().unwrap(),
            TwoClass::NotInT
        );
        assert_eq!(
            build_ring(5, 2).unwrap().is_two_teichmuller_square().unwrap(),
            TwoClass::NotInT
        );
        assert_eq!(
            build_ring(7, 1).unwrap().is_two_teichmuller_square().unwrap(),
            TwoClass::NotInT
        );
        assert_eq!(mod_pow(2, 6, 49), 15);
        assert!(build_ring(2, 2).unwrap().is_two_teichmuller_square().is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(build_ring(4, 1), Err(Error::NotPrime(4))));
        assert!(build_ring(2, 1).is_err());
        assert!(matches!(build_ring(3, 13), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn subgroups() {
        let ring = build_ring(7, 1).unwrap();
        let cube = sorted(ring.teich_subgroup(3).unwrap());
        assert_eq!(cube, vec![1, 48]);
        assert!(ring.teich_subgroup(4).is_err());
    }
}
