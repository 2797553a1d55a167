//! Difference families: the Wilson cyclotomic families in `F_q`, the Davis
//! and Teichmüller-squares families in `GR(p^2, r)`, Furino's coset
//! families for an arbitrary subgroup of units, and three two-block
//! families in `F_{11^3}` assembled from the order-14 cyclotomic classes.

mod io;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::arith::checked_pow;
use crate::algebra::{build_field, cyclotomic_classes, AdditiveGroup, FieldCtx};
use crate::error::{Error, Result};
use crate::galois_ring::{build_ring, RingCtx};

pub use io::{read_family, write_family};

/// Base blocks in an additive group with declared `(v, k, lambda)`.
///
/// Blocks are stored as sorted, duplicate-free element encodings. The
/// `disjoint` and `near_complete` flags describe the stored blocks; they are
/// computed, not trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceFamily {
    group: AdditiveGroup,
    blocks: Vec<Vec<u32>>,
    k: u32,
    lambda: u32,
    disjoint: bool,
    near_complete: bool,
}

impl DifferenceFamily {
    /// Checks the structural invariants: equal block sizes, elements inside
    /// the group, no repeated element within a block, and the counting
    /// identity `lambda (v - 1) = b k (k - 1)`.
    pub fn new(group: AdditiveGroup, blocks: Vec<Vec<u32>>, lambda: u32) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::InvalidParameters("a family needs at least one block".into()));
        };
        let k = first.len() as u32;
        let mut normalized = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters(format!("block {i} repeats an element")));
            }
            if b.len() as u32 != k {
                return Err(Error::InvalidParameters(format!(
                    "block {i} has size {} instead of {k}",
                    b.len()
                )));
            }
            if let Some(&x) = b.iter().find(|&&x| !group.contains(x)) {
                return Err(Error::InvalidParameters(format!(
                    "block {i} contains {x}, outside {group}"
                )));
            }
            normalized.push(b);
        }
        let v = group.order() as u64;
        let b = normalized.len() as u64;
        let lhs = lambda as u64 * (v - 1);
        let rhs = b * k as u64 * (k as u64).saturating_sub(1);
        if lhs != rhs {
            return Err(Error::InvalidParameters(format!(
                "lambda (v - 1) = {lhs} but b k (k - 1) = {rhs}"
            )));
        }
        let (disjoint, near_complete) = partition_flags(&group, &normalized);
        Ok(DifferenceFamily {
            group,
            blocks: normalized,
            k,
            lambda,
            disjoint,
            near_complete,
        })
    }

    pub fn group(&self) -> AdditiveGroup {
        self.group
    }

    pub fn v(&self) -> u32 {
        self.group.order()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    pub fn is_near_complete(&self) -> bool {
        self.near_complete
    }
}

fn partition_flags(group: &AdditiveGroup, blocks: &[Vec<u32>]) -> (bool, bool) {
    let mut seen = vec![false; group.order() as usize];
    let mut disjoint = true;
    for &x in blocks.iter().flatten() {
        if std::mem::replace(&mut seen[x as usize], true) {
            disjoint = false;
        }
    }
    let near_complete = disjoint && !seen[0] && seen[1..].iter().all(|&s| s);
    (disjoint, near_complete)
}

/// Outcome of [`validate_ddf`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_difference_family: bool,
    /// The common count of every nonzero difference, or `None` when the
    /// count is not constant.
    pub observed_lambda: Option<u32>,
    pub disjoint: bool,
    pub near_complete: bool,
    /// A nonzero element whose count differs from the declared lambda, or
    /// an element shared by two blocks when the family is not disjoint.
    pub offending_element: Option<u32>,
}

/// Counts every difference `a - a'` (`a != a'`) within each block and
/// checks that each nonzero group element occurs exactly `lambda` times.
pub fn validate_ddf(fam: &DifferenceFamily) -> ValidationReport {
    let g = fam.group();
    let mut counts = vec![0u32; g.order() as usize];
    for block in fam.blocks() {
        for &a in block {
            for &b in block {
                if a != b {
                    counts[g.sub(a, b) as usize] += 1;
                }
            }
        }
    }
    let nonzero = &counts[1..];
    let observed_lambda = nonzero.first().copied().filter(|&c| nonzero.iter().all(|&x| x == c));
    let mut offending_element = nonzero.iter().position(|&c| c != fam.lambda()).map(|i| i as u32 + 1);

    let mut owner = vec![usize::MAX; g.order() as usize];
    let mut shared = None;
    for (i, block) in fam.blocks().iter().enumerate() {
        for &x in block {
            if owner[x as usize] != usize::MAX && owner[x as usize] != i {
                shared.get_or_insert(x);
            }
            owner[x as usize] = i;
        }
    }
    let disjoint = shared.is_none();
    if offending_element.is_none() {
        offending_element = shared;
    }
    ValidationReport {
        is_difference_family: observed_lambda == Some(fam.lambda()),
        observed_lambda,
        disjoint,
        near_complete: disjoint && fam.is_near_complete(),
        offending_element,
    }
}

/// The cyclotomic classes of order `e` in `F_q` as a near-complete
/// `(q, f, f - 1)` family, `e f = q - 1`, `e, f >= 2`.
pub fn wilson_family(field: &FieldCtx, e: u32) -> Result<DifferenceFamily> {
    let qm1 = field.order() - 1;
    if e < 2 || qm1 % e != 0 || qm1 / e < 2 {
        return Err(Error::InvalidParameters(format!(
            "Wilson family needs e f = {qm1} with e, f >= 2 (got e = {e})"
        )));
    }
    let f = qm1 / e;
    DifferenceFamily::new(field.additive_group(), cyclotomic_classes(field, e)?, f - 1)
}

/// `{(1 + p a) T* : a in T} + {p T*}`: a near-complete
/// `(p^2r, p^r - 1, p^r - 2)` family. Blocks follow the Teichmüller order of
/// `a`, then `p T*`.
pub fn davis_family(ring: &RingCtx) -> Result<DifferenceFamily> {
    let q = ring.residue_order();
    if q < 3 {
        return Err(Error::InvalidParameters("p^r must be at least 3".into()));
    }
    let units = ring.teich_units();
    let blocks = coset_blocks(ring, &[units]);
    DifferenceFamily::new(ring.additive_group(), blocks, q - 2)
}

/// Cosets of the Teichmüller squares: square cosets `(1 + p a) T_S*`,
/// `p T_S*`, then non-square cosets `(1 + p a) T_N*`, `p T_N*`. A
/// near-complete `(p^2r, (p^r - 1)/2, (p^r - 3)/2)` family for odd `p`,
/// `p^r >= 5`.
pub fn squares_family(ring: &RingCtx) -> Result<DifferenceFamily> {
    let q = ring.residue_order();
    if ring.p() == 2 || q < 5 {
        return Err(Error::InvalidParameters(format!(
            "the squares family needs odd p and p^r >= 5 (got p^r = {q})"
        )));
    }
    let split = ring.square_split()?;
    let blocks = coset_blocks(ring, &[&split.squares, &split.non_squares]);
    DifferenceFamily::new(ring.additive_group(), blocks, (q - 3) / 2)
}

/// For each subset `S` in order: `(1 + p a) S` for `a` in `T`, then `p S`.
fn coset_blocks(ring: &RingCtx, subsets: &[&[u32]]) -> Vec<Vec<u32>> {
    let mut blocks = Vec::new();
    for s in subsets {
        for &a in ring.teichmuller() {
            let u = ring.principal_unit(a);
            blocks.push(s.iter().map(|&t| ring.mul(u, t)).collect());
        }
        blocks.push(s.iter().map(|&t| ring.times_p(t)).collect());
    }
    blocks
}

/// Furino's family `{ s B : s in S }` for a multiplicative subgroup `B` of
/// the unit group with `Delta B` inside the units. Representatives are
/// taken by sweeping nonzero encodings upward and skipping covered
/// elements.
pub fn furino_family(ring: &RingCtx, subgroup: &[u32]) -> Result<DifferenceFamily> {
    let members: HashSet<u32> = subgroup.iter().copied().collect();
    if members.len() != subgroup.len() || !members.contains(&1) {
        return Err(Error::NotASubgroup("must contain 1 without repeats".into()));
    }
    for &a in subgroup {
        if !ring.is_unit(a) {
            return Err(Error::NotASubgroup(format!("{a} is not a unit")));
        }
        for &b in subgroup {
            if !members.contains(&ring.mul(a, b)) {
                return Err(Error::NotASubgroup(format!("{a} * {b} leaves the set")));
            }
            if a != b && !ring.is_unit(ring.sub(a, b)) {
                return Err(Error::NonUnitDifference { a, b });
            }
        }
    }
    let k = subgroup.len() as u32;
    let mut covered = vec![false; ring.order() as usize];
    let mut blocks = Vec::new();
    for s in 1..ring.order() {
        if covered[s as usize] {
            continue;
        }
        let block: Vec<u32> = subgroup.iter().map(|&b| ring.mul(s, b)).collect();
        for &x in &block {
            covered[x as usize] = true;
        }
        blocks.push(block);
    }
    DifferenceFamily::new(ring.additive_group(), blocks, k - 1)
}

/// Class-index unions for the three two-block families in `F_{11^3}`.
pub const FENG_INDEX_SETS: [[&[u32]; 2]; 3] = [
    [&[0, 2, 4, 6, 8, 10, 12], &[1, 3, 5, 7, 9, 11, 13]],
    [&[0, 1, 2, 3, 4, 5, 6], &[7, 8, 9, 10, 11, 12, 13]],
    [&[0, 1, 3, 4, 5, 6, 9], &[2, 7, 8, 10, 11, 12, 13]],
];

/// Three `(1331, 665, 664)` families, each block a union of seven
/// order-14 cyclotomic classes of `F_{11^3}`.
pub fn feng_families(field: &FieldCtx) -> Result<[DifferenceFamily; 3]> {
    if field.characteristic() != 11 || field.degree() != 3 {
        return Err(Error::InvalidParameters(format!(
            "these families live in F_11^3, not F_{}^{}",
            field.characteristic(),
            field.degree()
        )));
    }
    let classes = cyclotomic_classes(field, 14)?;
    let build = |sets: &[&[u32]; 2]| {
        let blocks = sets
            .iter()
            .map(|idx| idx.iter().flat_map(|&i| classes[i as usize].iter().copied()).collect())
            .collect();
        DifferenceFamily::new(field.additive_group(), blocks, 664)
    };
    Ok([
        build(&FENG_INDEX_SETS[0])?,
        build(&FENG_INDEX_SETS[1])?,
        build(&FENG_INDEX_SETS[2])?,
    ])
}

/// Named constructions, parameterised by `(p, r)`.
///
/// `Wilson` and `WilsonHalf` live in `F_{p^2r}` with orders `e = p^r + 1` and
/// `e = 2 (p^r + 1)`; `GrTeichmuller` and `GrSquares` live in `GR(p^2, r)`.
/// The Feng families ignore `(p, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Wilson,
    WilsonHalf,
    GrTeichmuller,
    GrSquares,
    Feng(u8),
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::Wilson,
        Construction::WilsonHalf,
        Construction::GrTeichmuller,
        Construction::GrSquares,
        Construction::Feng(1),
        Construction::Feng(2),
        Construction::Feng(3),
    ];

    pub fn name(&self) -> String {
        match self {
            Construction::Wilson => "wilson".into(),
            Construction::WilsonHalf => "wilson-half".into(),
            Construction::GrTeichmuller => "gr-teichmuller".into(),
            Construction::GrSquares => "gr-squares".into(),
            Construction::Feng(i) => format!("feng-{i}"),
        }
    }

    pub fn uses_parameters(&self) -> bool {
        !matches!(self, Construction::Feng(_))
    }

    /// Builds the family. For the Wilson variants, `e_override` replaces the
    /// default order.
    pub fn build_with_order(&self, p: u64, r: u32, e_override: Option<u32>) -> Result<DifferenceFamily> {
        match self {
            Construction::Wilson | Construction::WilsonHalf => {
                let q = checked_pow(p, r).ok_or(Error::Overflow("p^r"))?;
                let field = build_field(p, 2 * r)?;
                let default = if *self == Construction::Wilson {
                    q + 1
                } else {
                    2 * (q + 1)
                };
                wilson_family(&field, e_override.unwrap_or(default as u32))
            }
            _ if e_override.is_some() => Err(Error::InvalidParameters(format!(
                "{} does not take an order",
                self.name()
            ))),
            Construction::GrTeichmuller => davis_family(&build_ring(p, r)?),
            Construction::GrSquares => squares_family(&build_ring(p, r)?),
            Construction::Feng(i) => {
                let field = build_field(11, 3)?;
                let [a, b, c] = feng_families(&field)?;
                Ok(match i {
                    1 => a,
                    2 => b,
                    _ => c,
                })
            }
        }
    }

    pub fn build(&self, p: u64, r: u32) -> Result<DifferenceFamily> {
        self.build_with_order(p, r, None)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown construction {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(fam: &DifferenceFamily, v: u32, k: u32, lambda: u32, b: usize) {
        assert_eq!((fam.v(), fam.k(), fam.lambda(), fam.b()), (v, k, lambda, b));
        let report = validate_ddf(fam);
        assert!(report.is_difference_family, "{report:?}");
        assert_eq!(report.observed_lambda, Some(lambda));
        assert!(report.disjoint && report.near_complete);
    }

    #[test]
    fn wilson_examples() {
        let f9 = build_field(3, 2).unwrap();
        check(&wilson_family(&f9, 4).unwrap(), 9, 2, 1, 4);
        check(&wilson_family(&f9, 2).unwrap(), 9, 4, 3, 2);
        let f625 = build_field(5, 4).unwrap();
        check(&wilson_family(&f625, 52).unwrap(), 625, 12, 11, 52);
        let f1331 = build_field(11, 3).unwrap();
        check(&wilson_family(&f1331, 14).unwrap(), 1331, 95, 94, 14);
        assert!(wilson_family(&f9, 8).is_err()); // f = 1
        assert!(wilson_family(&f9, 3).is_err());
    }

    #[test]
    fn davis_gr9_blocks_by_hand() {
        // T = {0, 1, 8} in Z_9; cosets (1 + 3a){1, 8} and 3{1, 8}.
        let ring = build_ring(3, 1).unwrap();
        let fam = davis_family(&ring).unwrap();
        let mut blocks = fam.blocks().to_vec();
        blocks.sort();
        assert_eq!(blocks, vec![vec![1, 8], vec![2, 7], vec![3, 6], vec![4, 5]]);
        check(&fam, 9, 2, 1, 4);
    }

    #[test]
    fn davis_and_squares_parameters() {
        check(&davis_family(&build_ring(5, 1).unwrap()).unwrap(), 25, 4, 3, 6);
        check(&davis_family(&build_ring(5, 2).unwrap()).unwrap(), 625, 24, 23, 26);
        check(&squares_family(&build_ring(5, 1).unwrap()).unwrap(), 25, 2, 1, 12);
        check(&squares_family(&build_ring(5, 2).unwrap()).unwrap(), 625, 12, 11, 52);
        assert!(squares_family(&build_ring(3, 1).unwrap()).is_err());
    }

    #[test]
    fn squares_refine_davis_two_to_one() {
        for (p, r) in [(5, 1), (7, 1), (3, 2), (5, 2)] {
            let ring = build_ring(p, r).unwrap();
            let davis = davis_family(&ring).unwrap();
            let halves = squares_family(&ring).unwrap();
            let mut hits = vec![0; davis.b()];
            for h in halves.blocks() {
                let parent = davis
                    .blocks()
                    .iter()
                    .position(|d| h.iter().all(|x| d.binary_search(x).is_ok()))
                    .expect("each half lies in a Davis block");
                hits[parent] += 1;
            }
            assert!(hits.iter().all(|&h| h == 2));
        }
    }

    #[test]
    fn furino_reproduces_davis_and_squares() {
        let ring = build_ring(5, 2).unwrap();
        let as_set = |f: &DifferenceFamily| {
            let mut b = f.blocks().to_vec();
            b.sort();
            b
        };
        let davis = davis_family(&ring).unwrap();
        let fur = furino_family(&ring, ring.teich_units()).unwrap();
        assert_eq!(as_set(&fur), as_set(&davis));
        let squares = squares_family(&ring).unwrap();
        let fur = furino_family(&ring, &ring.square_split().unwrap().squares).unwrap();
        assert_eq!(as_set(&fur), as_set(&squares));
    }

    #[test]
    fn furino_cube_subgroup_of_gr49() {
        let ring = build_ring(7, 1).unwrap();
        let b = ring.teich_subgroup(3).unwrap();
        let fam = furino_family(&ring, &b).unwrap();
        check(&fam, 49, 2, 1, 24);
    }

    #[test]
    fn furino_rejects_bad_subgroups() {
        let ring = build_ring(5, 1).unwrap();
        // {1, 6} is the principal subgroup generated by 6 partially; 6 - 1 = 5 is not a unit.
        let principal: Vec<u32> = (0..5).map(|i| ring.pow(6, i)).collect();
        assert!(matches!(
            furino_family(&ring, &principal),
            Err(Error::NonUnitDifference { .. })
        ));
        assert!(matches!(furino_family(&ring, &[1, 7]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn feng_families_validate_and_cut_into_classes() {
        let field = build_field(11, 3).unwrap();
        let fams = feng_families(&field).unwrap();
        let wilson = wilson_family(&field, 14).unwrap();
        for fam in &fams {
            assert_eq!(fam.blocks()[0].len(), 665);
            assert_eq!(fam.blocks()[1].len(), 665);
            check(fam, 1331, 665, 664, 2);
            // Each block is a union of whole classes of the order-14 family.
            let mut pieces = Vec::new();
            for block in fam.blocks() {
                for class in wilson.blocks() {
                    let inside = class.iter().filter(|x| block.binary_search(x).is_ok()).count();
                    assert!(inside == 0 || inside == class.len());
                    if inside > 0 {
                        pieces.push(class.clone());
                    }
                }
            }
            pieces.sort();
            let mut classes = wilson.blocks().to_vec();
            classes.sort();
            assert_eq!(pieces, classes);
        }
        assert!(feng_families(&build_field(5, 4).unwrap()).is_err());
    }

    #[test]
    fn validation_detects_shared_elements() {
        let g = AdditiveGroup::cyclic(7).unwrap();
        // {1,2,4} is a (7,3,1) difference set; duplicating it is a (7,3,2)
        // family whose blocks overlap.
        let fam = DifferenceFamily::new(g, vec![vec![1, 2, 4], vec![1, 2, 4]], 2).unwrap();
        let report = validate_ddf(&fam);
        assert!(report.is_difference_family);
        assert!(!report.disjoint);
        assert_eq!(report.offending_element, Some(1));
        assert!(!fam.is_disjoint());
    }

    #[test]
    fn validation_detects_non_constant_counts() {
        let g = AdditiveGroup::cyclic(7).unwrap();
        let fam = DifferenceFamily::new(g, vec![vec![1, 2, 3]], 1).unwrap();
        let report = validate_ddf(&fam);
        assert!(!report.is_difference_family);
        assert_eq!(report.observed_lambda, None);
        assert!(report.offending_element.is_some());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let g = AdditiveGroup::cyclic(7).unwrap();
        assert!(DifferenceFamily::new(g, vec![], 1).is_err());
        assert!(DifferenceFamily::new(g, vec![vec![1, 1, 2]], 1).is_err());
        assert!(DifferenceFamily::new(g, vec![vec![1, 2, 9]], 1).is_err());
        assert!(DifferenceFamily::new(g, vec![vec![1, 2, 4]], 2).is_err());
        assert!(DifferenceFamily::new(g, vec![vec![1, 2, 4], vec![3, 5]], 1).is_err());
    }

    #[test]
    fn construction_names_round_trip() {
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
        assert!("davis".parse::<Construction>().is_err());
    }

    #[test]
    fn parameter_identity_for_all_constructions() {
        for (p, r) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            for c in [
                Construction::Wilson,
                Construction::WilsonHalf,
                Construction::GrTeichmuller,
                Construction::GrSquares,
            ] {
                let Ok(fam) = c.build(p, r) else { continue };
                let (v, k, l, b) = (fam.v() as u64, fam.k() as u64, fam.lambda() as u64, fam.b() as u64);
                assert_eq!(l * (v - 1), b * k * (k - 1));
                assert_eq!(b * k, v - 1);
                let rep = validate_ddf(&fam);
                assert_eq!(rep.observed_lambda, Some(fam.lambda()), "{c} at ({p},{r})");
            }
        }
    }
}
