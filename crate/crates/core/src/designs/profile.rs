use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::Design;
use crate::algebra::arith::choose2;
use crate::error::{Error, Result};
use crate::families::DifferenceFamily;

/// Largest block count accepted by [`profile_direct`].
pub const DIRECT_BLOCK_BUDGET: usize = 20_000;

/// Intersection number → number of unordered pairs of distinct block
/// indices meeting in that many points. Zero multiplicities are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionProfile {
    counts: BTreeMap<u64, u64>,
}

impl IntersectionProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut p = Self::new();
        for (k, m) in counts {
            p.add(k, m)?;
        }
        Ok(p)
    }

    /// Adds `mult` pairs at key `n`, merging with any existing entry.
    pub fn add(&mut self, n: u64, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.counts.entry(n).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(Error::Overflow("profile multiplicity"))?;
        Ok(())
    }

    pub fn get(&self, n: u64) -> u64 {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn total(&self) -> Result<u64> {
        self.counts.values().try_fold(0u64, |acc, &m| {
            acc.checked_add(m).ok_or(Error::Overflow("profile total"))
        })
    }

    /// Checks the pair-count identity for a design with `blocks` blocks.
    pub fn total_matches(&self, blocks: u64) -> Result<bool> {
        let expected = choose2(blocks).ok_or(Error::Overflow("block pair count"))?;
        Ok(self.total()? == expected)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serialization is infallible")
    }
}

/// Keys with nonzero multiplicity, ascending.
pub fn intersection_numbers(profile: &IntersectionProfile) -> Vec<u64> {
    profile.counts.keys().copied().collect()
}

impl fmt::Display for IntersectionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, m)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {m}")?;
        }
        f.write_str("}")
    }
}

// Multiplicities are written as decimal strings so consumers with narrow
// integer types do not silently truncate them.
impl Serialize for IntersectionProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.counts.len()))?;
        for (k, m) in &self.counts {
            map.serialize_entry(&k.to_string(), &m.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for IntersectionProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntersectionProfile;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map of intersection numbers to decimal multiplicities")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Self::Value, A::Error> {
                let mut p = IntersectionProfile::new();
                while let Some((k, m)) = a.next_entry::<String, String>()? {
                    let k: u64 = k.parse().map_err(de::Error::custom)?;
                    let m: u64 = m.parse().map_err(de::Error::custom)?;
                    p.add(k, m).map_err(de::Error::custom)?;
                }
                Ok(p)
            }
        }
        d.deserialize_map(V)
    }
}

fn histogram_to_profile(hist: &[u64], scale: u64) -> Result<IntersectionProfile> {
    let mut p = IntersectionProfile::new();
    for (n, &m) in hist.iter().enumerate() {
        let m = m.checked_mul(scale).ok_or(Error::Overflow("profile multiplicity"))?;
        p.add(n as u64, m)?;
    }
    Ok(p)
}

/// Pairwise scan of the developed blocks through the point incidence lists.
pub fn profile_direct(design: &Design) -> Result<IntersectionProfile> {
    let nb = design.b();
    if nb > DIRECT_BLOCK_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "direct profile block count",
            size: nb as u128,
            budget: DIRECT_BLOCK_BUDGET as u128,
        });
    }
    let inc = design.incidence();
    let mut hist = vec![0u64; design.k() as usize + 1];
    let mut meet = vec![0u32; nb];
    let mut touched = Vec::new();
    for (i, block) in design.blocks().iter().enumerate() {
        for &x in block {
            for &j in &inc[x as usize] {
                let j = j as usize;
                if j > i {
                    if meet[j] == 0 {
                        touched.push(j);
                    }
                    meet[j] += 1;
                }
            }
        }
        hist[0] += (nb - i - 1 - touched.len()) as u64;
        for &j in &touched {
            hist[meet[j] as usize] += 1;
            meet[j] = 0;
        }
        touched.clear();
    }
    histogram_to_profile(&hist, 1)
}

struct PairScratch {
    hist: Vec<u64>,
    mult: Vec<u32>,
    touched: Vec<u32>,
}

impl PairScratch {
    fn new(v: usize, k: usize) -> Self {
        PairScratch {
            hist: vec![0; k + 1],
            mult: vec![0; v],
            touched: Vec::new(),
        }
    }

    /// Records, for every `d` other than the excluded self-pair, the
    /// multiplicity of `d` in `D_i − D_j`.
    fn tally(&mut self, fam: &DifferenceFamily, i: usize, j: usize) -> Result<()> {
        let g = fam.group();
        let (di, dj) = (&fam.blocks()[i], &fam.blocks()[j]);
        for &a in di {
            for &b in dj {
                let d = g.sub(a, b);
                if self.mult[d as usize] == 0 {
                    self.touched.push(d);
                }
                self.mult[d as usize] += 1;
            }
        }
        // With i = j the excluded d = 0 is always hit, so in both cases the
        // absent differences number v minus the distinct ones.
        let absent = fam.v() as u64 - self.touched.len() as u64;
        self.hist[0] = self.hist[0]
            .checked_add(absent)
            .ok_or(Error::Overflow("difference histogram"))?;
        for &d in &self.touched {
            let n = self.mult[d as usize] as usize;
            self.mult[d as usize] = 0;
            if i == j && d == 0 {
                continue;
            }
            self.hist[n] = self.hist[n]
                .checked_add(1)
                .ok_or(Error::Overflow("difference histogram"))?;
        }
        self.touched.clear();
        Ok(())
    }
}

fn merge_hist(mut a: Vec<u64>, b: Vec<u64>) -> Result<Vec<u64>> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.checked_add(y).ok_or(Error::Overflow("difference histogram"))?;
    }
    Ok(a)
}

/// Profile of `dev(fam)` from the difference multisets `D_i − D_j`.
///
/// Each ordered base pair `(i, j)` and difference `d` stands for the `v`
/// ordered block pairs `(D_i + g, D_j + g + d)`, which meet in exactly as
/// many points as `d` occurs in `D_i − D_j`. The ordered totals are halved.
/// Base pairs are reduced in parallel on the current rayon pool.
pub fn profile_via_differences(fam: &DifferenceFamily) -> Result<IntersectionProfile> {
    let b = fam.b();
    let v = fam.v() as usize;
    let k = fam.k() as usize;
    let hist = (0..b * b)
        .into_par_iter()
        .try_fold(
            || PairScratch::new(v, k),
            |mut s, idx| {
                s.tally(fam, idx / b, idx % b)?;
                Ok::<_, Error>(s)
            },
        )
        .map(|s| s.map(|s| s.hist))
        .try_reduce(|| vec![0u64; k + 1], merge_hist)?;
    let mut profile = IntersectionProfile::new();
    for (n, &m) in hist.iter().enumerate() {
        let ordered = m.checked_mul(v as u64).ok_or(Error::Overflow("profile multiplicity"))?;
        if ordered % 2 != 0 {
            return Err(Error::Mismatch(format!("odd ordered pair count at key {n}")));
        }
        profile.add(n as u64, ordered / 2)?;
    }
    Ok(profile)
}
