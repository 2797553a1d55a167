use serde::Serialize;

use super::{profile_direct, Design};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "mapping", rename_all = "kebab-case")]
pub enum IsoOutcome {
    /// `mapping[x]` is the point of `B` that point `x` of `A` goes to.
    Mapping(Vec<u32>),
    Nonexistent,
    Unknown,
}

type Bits = Vec<u64>;

fn bitset(points: &[u32], words: usize) -> Bits {
    let mut b = vec![0u64; words];
    for &x in points {
        b[x as usize / 64] |= 1 << (x % 64);
    }
    b
}

fn contains(sup: &Bits, sub: &Bits) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

struct Side<'a> {
    design: &'a Design,
    bits: Vec<Bits>,
    inc: Vec<Vec<u32>>,
    pairs: Vec<u32>,
}

impl<'a> Side<'a> {
    fn new(design: &'a Design) -> Self {
        let v = design.v() as usize;
        let words = v.div_ceil(64).max(1);
        let mut pairs = vec![0u32; v * v];
        for b in design.blocks() {
            for &x in b {
                for &y in b {
                    if x != y {
                        pairs[x as usize * v + y as usize] += 1;
                    }
                }
            }
        }
        Side {
            design,
            bits: design.blocks().iter().map(|b| bitset(b, words)).collect(),
            inc: design.incidence(),
            pairs,
        }
    }

    fn blocks_containing(&self, s: &Bits) -> usize {
        self.bits.iter().filter(|b| contains(b, s)).count()
    }
}

struct Search<'a> {
    a: Side<'a>,
    b: Side<'a>,
    v: usize,
    words: usize,
    map: Vec<u32>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        if self.a.inc[x].len() != self.b.inc[y].len() {
            return false;
        }
        for x2 in 0..x {
            let y2 = self.map[x2] as usize;
            if self.a.pairs[x * self.v + x2] != self.b.pairs[y * self.v + y2] {
                return false;
            }
        }
        // Every block through x restricted to the mapped points must be
        // contained in as many blocks of B as its image.
        for &blk in &self.a.inc[x] {
            let pts: Vec<u32> = self.a.design.blocks()[blk as usize]
                .iter()
                .copied()
                .filter(|&p| (p as usize) < x)
                .chain(std::iter::once(x as u32))
                .collect();
            if pts.len() < 3 {
                continue;
            }
            let img: Vec<u32> = pts
                .iter()
                .map(|&p| {
                    if p as usize == x {
                        y as u32
                    } else {
                        self.map[p as usize]
                    }
                })
                .collect();
            let sa = bitset(&pts, self.words);
            let sb = bitset(&img, self.words);
            if self.a.blocks_containing(&sa) != self.b.blocks_containing(&sb) {
                return false;
            }
        }
        true
    }

    fn transports(&self) -> bool {
        let mut mapped: Vec<Vec<u32>> = self
            .a
            .design
            .blocks()
            .iter()
            .map(|b| {
                let mut m: Vec<u32> = b.iter().map(|&x| self.map[x as usize]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        let mut target: Vec<Vec<u32>> = self.b.design.blocks().to_vec();
        mapped.sort_unstable();
        target.sort_unstable();
        mapped == target
    }

    fn extend(&mut self, x: usize) -> Step {
        if x == self.v {
            return if self.transports() {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        for y in 0..self.v {
            if self.used[y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            if !self.consistent(x, y) {
                continue;
            }
            self.map[x] = y as u32;
            self.used[y] = true;
            match self.extend(x + 1) {
                Step::Exhausted => {}
                done => return done,
            }
            self.used[y] = false;
        }
        Step::Exhausted
    }
}

/// Searches for a point bijection carrying the blocks of `a` onto those of
/// `b` (as multisets). Designs with different intersection profiles are
/// rejected before any search. `node_budget` caps the number of tentative
/// point assignments.
pub fn iso_oracle(a: &Design, b: &Design, node_budget: u64) -> Result<IsoOutcome> {
    if (a.v(), a.b(), a.k()) != (b.v(), b.b(), b.k()) {
        return Err(Error::Mismatch(format!(
            "parameters (v, b, k) = ({}, {}, {}) and ({}, {}, {})",
            a.v(),
            a.b(),
            a.k(),
            b.v(),
            b.b(),
            b.k()
        )));
    }
    if profile_direct(a)? != profile_direct(b)? {
        return Ok(IsoOutcome::Nonexistent);
    }
    let v = a.v() as usize;
    let mut search = Search {
        a: Side::new(a),
        b: Side::new(b),
        v,
        words: v.div_ceil(64).max(1),
        map: vec![0; v],
        used: vec![false; v],
        nodes: 0,
        budget: node_budget,
    };
    Ok(match search.extend(0) {
        Step::Found => IsoOutcome::Mapping(search.map),
        Step::Exhausted => IsoOutcome::Nonexistent,
        Step::OutOfBudget => IsoOutcome::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::develop;
    use crate::families::Construction;

    #[test]
    fn identity_on_self() {
        let d = develop(&Construction::Wilson.build(3, 1).unwrap());
        let out = iso_oracle(&d, &d, 10_000).unwrap();
        assert_eq!(out, IsoOutcome::Mapping((0..9).collect()));
    }

    #[test]
    fn rejects_mismatched_parameters() {
        let a = develop(&Construction::Wilson.build(3, 1).unwrap());
        let b = develop(&Construction::GrSquares.build(5, 1).unwrap());
        assert!(iso_oracle(&a, &b, 10).is_err());
    }

    #[test]
    fn profile_precheck() {
        let a = Design::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let b = Design::new(4, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(iso_oracle(&a, &b, 0).unwrap(), IsoOutcome::Nonexistent);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let d = develop(&Construction::GrTeichmuller.build(5, 1).unwrap());
        assert_eq!(iso_oracle(&d, &d, 3).unwrap(), IsoOutcome::Unknown);
    }

    #[test]
    fn same_profile_but_not_isomorphic() {
        // A hexagon against two triangles: both 2-regular on six points.
        let a = Design::new(
            6,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 0]],
        )
        .unwrap();
        let b = Design::new(
            6,
            vec![vec![0, 1], vec![1, 2], vec![2, 0], vec![3, 4], vec![4, 5], vec![5, 3]],
        )
        .unwrap();
        assert_eq!(profile_direct(&a).unwrap(), profile_direct(&b).unwrap());
        assert_eq!(iso_oracle(&a, &b, 1_000_000).unwrap(), IsoOutcome::Nonexistent);
    }
}
