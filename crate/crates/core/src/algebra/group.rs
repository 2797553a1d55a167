use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The additive group `(Z_modulus)^dim` on packed base-`modulus` encodings.
///
/// The additive group of `F_{p^n}` is `(Z_p)^n`; that of `GR(p^2, r)` is
/// `(Z_{p^2})^r`. Both pack coefficient sequences the same way, so one
/// descriptor serves every family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdditiveGroup {
    modulus: u32,
    dim: u32,
    order: u32,
}

impl AdditiveGroup {
    pub fn new(modulus: u32, dim: u32) -> Result<Self> {
        if modulus < 2 || dim == 0 {
            return Err(Error::InvalidParameters(format!(
                "group Z_{modulus}^{dim} is degenerate"
            )));
        }
        let order = crate::algebra::arith::checked_pow(modulus as u64, dim)
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or_else(|| Error::BudgetExceeded {
                what: "additive group",
                size: (modulus as u128).pow(dim),
                budget: u32::MAX as u128,
            })?;
        Ok(AdditiveGroup {
            modulus,
            dim,
            order: order as u32,
        })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.dim == 1 {
            let s = a + b;
            return if s >= self.modulus { s - self.modulus } else { s };
        }
        let m = self.modulus;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            let mut d = a % m + b % m;
            if d >= m {
                d -= m;
            }
            out += d * place;
            place = place.wrapping_mul(m);
            a /= m;
            b /= m;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.dim == 1 {
            return if a >= b { a - b } else { a + self.modulus - b };
        }
        let m = self.modulus;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            let (x, y) = (a % m, b % m);
            let d = if x >= y { x - y } else { x + m - y };
            out += d * place;
            place = place.wrapping_mul(m);
            a /= m;
            b /= m;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order
    }
}

impl fmt::Display for AdditiveGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}^{}", self.modulus, self.dim)
    }
}

impl FromStr for AdditiveGroup {
    type Err = Error;

    /// Parses `Z<modulus>^<dim>` (the `Z` is optional).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('Z');
        let (m, d) = body.split_once('^').unwrap_or((body, "1"));
        let bad = || Error::InvalidParameters(format!("malformed group descriptor {s:?}"));
        let modulus = m.parse().map_err(|_| bad())?;
        let dim = d.parse().map_err(|_| bad())?;
        Self::new(modulus, dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_arithmetic() {
        let g = AdditiveGroup::cyclic(25).unwrap();
        assert_eq!(g.add(20, 7), 2);
        assert_eq!(g.sub(3, 7), 21);
        assert_eq!(g.neg(0), 0);
    }

    #[test]
    fn parse_and_display() {
        let g: AdditiveGroup = "Z25^2".parse().unwrap();
        assert_eq!(g.order(), 625);
        assert_eq!(g.to_string(), "Z25^2");
        assert_eq!("Z9".parse::<AdditiveGroup>().unwrap().order(), 9);
        assert!("Zx^2".parse::<AdditiveGroup>().is_err());
    }

    proptest! {
        #[test]
        fn add_sub_inverse(m in 2u32..30, dim in 1u32..4, a in any::<u32>(), b in any::<u32>()) {
            let g = AdditiveGroup::new(m, dim).unwrap();
            let (a, b) = (a % g.order(), b % g.order());
            prop_assert_eq!(g.sub(g.add(a, b), b), a);
            prop_assert_eq!(g.add(a, g.neg(a)), 0);
            prop_assert_eq!(g.add(a, b), g.add(b, a));
        }
    }
}
