//! Developments of difference families and the invariants computed on them.
//!
//! A development is kept as an *indexed* family of `v b` blocks: translates
//! that happen to coincide are kept as separate blocks, and every pair of
//! distinct block indices counts toward the intersection profile.

mod iso;
mod profile;

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::DifferenceFamily;

pub use iso::{iso_oracle, IsoOutcome};
pub use profile::{
    intersection_numbers, profile_direct, profile_via_differences, IntersectionProfile, DIRECT_BLOCK_BUDGET,
};

/// Which base block and translate produced a developed block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub base: u32,
    pub translate: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: u32,
    k: u32,
    blocks: Vec<Vec<u32>>,
    provenance: Option<Vec<Provenance>>,
}

impl Design {
    /// A design from explicit blocks on points `0..v`. Blocks are sorted;
    /// all must have the same size and contain distinct valid points.
    pub fn new(v: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let k = blocks.first().map_or(0, |b| b.len() as u32);
        let mut out = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            if b.len() as u32 != k {
                return Err(Error::InvalidParameters(format!("block {i} has size {}", b.len())));
            }
            if b.windows(2).any(|w| w[0] == w[1]) || b.last().is_some_and(|&x| x >= v) {
                return Err(Error::InvalidParameters(format!("block {i} is not a subset of 0..{v}")));
            }
            out.push(b);
        }
        Ok(Design {
            v,
            k,
            blocks: out,
            provenance: None,
        })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn provenance(&self) -> Option<&[Provenance]> {
        self.provenance.as_deref()
    }

    /// Number of blocks equal to some block with a smaller index.
    pub fn duplicate_blocks(&self) -> usize {
        let mut sorted: Vec<&Vec<u32>> = self.blocks.iter().collect();
        sorted.sort_unstable();
        sorted.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// Applies a point permutation (`perm[x]` is the image of `x`).
    pub fn relabel(&self, perm: &[u32]) -> Result<Design> {
        if perm.len() != self.v as usize {
            return Err(Error::Mismatch("permutation length differs from v".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| perm[x as usize]).collect())
            .collect();
        Design::new(self.v, blocks)
    }

    /// Point-to-block incidence lists.
    pub(crate) fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.v as usize];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                inc[x as usize].push(i as u32);
            }
        }
        inc
    }
}

/// All translates `D_i + g`, base block major, translate minor.
pub fn develop(fam: &DifferenceFamily) -> Design {
    let g = fam.group();
    let v = fam.v();
    let mut blocks = Vec::with_capacity(fam.b() * v as usize);
    let mut provenance = Vec::with_capacity(blocks.capacity());
    for (i, base) in fam.blocks().iter().enumerate() {
        for t in 0..v {
            let mut b: Vec<u32> = base.iter().map(|&x| g.add(x, t)).collect();
            b.sort_unstable();
            blocks.push(b);
            provenance.push(Provenance {
                base: i as u32,
                translate: t,
            });
        }
    }
    Design {
        v,
        k: fam.k(),
        blocks,
        provenance: Some(provenance),
    }
}

/// Largest point count accepted by [`verify_2design`].
pub const PAIR_COUNT_BUDGET: u32 = 6000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum PairCheck {
    Pass,
    Fail { pair: (u32, u32), count: u32 },
}

/// Counts, for every unordered point pair, the blocks containing it.
pub fn verify_2design(design: &Design, lambda: u32) -> Result<PairCheck> {
    let v = design.v();
    if v > PAIR_COUNT_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "pair count table",
            size: v as u128,
            budget: PAIR_COUNT_BUDGET as u128,
        });
    }
    let n = v as usize;
    // Upper-triangular table indexed by (x, y), x < y.
    let row = |x: usize| x * n - x * (x + 1) / 2;
    let mut counts = vec![0u32; n * (n.saturating_sub(1)) / 2];
    for b in design.blocks() {
        for (i, &x) in b.iter().enumerate() {
            let base = row(x as usize);
            for &y in &b[i + 1..] {
                counts[base + (y as usize - x as usize - 1)] += 1;
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let c = counts[row(x) + (y - x - 1)];
            if c != lambda {
                return Ok(PairCheck::Fail {
                    pair: (x as u32, y as u32),
                    count: c,
                });
            }
        }
    }
    Ok(PairCheck::Pass)
}

/// Writes `v b k` followed by one sorted block per line.
pub fn write_design<W: Write>(design: &Design, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", design.v(), design.b(), design.k())?;
    let mut line = String::new();
    for b in design.blocks() {
        line.clear();
        for (i, x) in b.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&x.to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_design<R: BufRead>(input: R) -> Result<Design> {
    let mut header: Option<(usize, u32, usize, usize)> = None;
    let mut blocks = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = t
            .split_whitespace()
            .map(|s| {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("expected an integer, found {s:?}"),
                })
            })
            .collect::<Result<_>>()?;
        match header {
            None => {
                let [v, b, k] = nums[..] else {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header must be `v b k`".into(),
                    });
                };
                header = Some((lineno, v, b as usize, k as usize));
            }
            Some((_, _, _, k)) => {
                if nums.len() != k {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("block has {} points, expected {k}", nums.len()),
                    });
                }
                blocks.push(nums);
            }
        }
    }
    let (hline, v, b, _) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if blocks.len() != b {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {b} blocks, found {}", blocks.len()),
        });
    }
    Design::new(v, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AdditiveGroup;
    use crate::families::Construction;

    #[test]
    fn single_block_orbit() {
        let g = AdditiveGroup::cyclic(5).unwrap();
        // Not a difference family; development is still defined.
        let fam = DifferenceFamily::new(g, vec![vec![1, 2]], 0);
        assert!(fam.is_err());
        let d = Design::new(5, (0..5).map(|t| vec![(1 + t) % 5, (2 + t) % 5]).collect()).unwrap();
        assert_eq!(d.b(), 5);
        assert_eq!(d.duplicate_blocks(), 0);
    }

    #[test]
    fn development_sizes() {
        let fam = Construction::GrSquares.build(5, 1).unwrap();
        let d = develop(&fam);
        assert_eq!(d.b(), 300);
        assert_eq!(d.duplicate_blocks(), 0);
        assert_eq!(d.provenance().unwrap()[25], Provenance { base: 1, translate: 0 });
        let fam = Construction::WilsonHalf.build(5, 2).unwrap();
        assert_eq!(develop(&fam).b(), 32_500);
    }

    #[test]
    fn two_design_checks() {
        let fam = Construction::GrSquares.build(5, 1).unwrap();
        assert_eq!(verify_2design(&develop(&fam), 1).unwrap(), PairCheck::Pass);
        let fam = Construction::Wilson.build(3, 1).unwrap();
        assert_eq!(verify_2design(&develop(&fam), 1).unwrap(), PairCheck::Pass);
        let bad = Design::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(
            verify_2design(&bad, 1).unwrap(),
            PairCheck::Fail { pair: (0, 2), count: 0 }
        );
    }

    #[test]
    fn design_file_round_trip() {
        let d = develop(&Construction::GrTeichmuller.build(3, 1).unwrap());
        let mut buf = Vec::new();
        write_design(&d, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("9 36 2\n"));
        let back = read_design(&buf[..]).unwrap();
        assert_eq!(back.blocks(), d.blocks());
        assert!(read_design("3 1 2\n0 5\n".as_bytes()).is_err());
        assert!(read_design("3 2 2\n0 1\n".as_bytes()).is_err());
    }

    #[test]
    fn duplicates_are_reported() {
        let d = Design::new(3, vec![vec![0, 1], vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(d.duplicate_blocks(), 1);
    }
}
