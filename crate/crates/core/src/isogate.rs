//! Closed-form intersection profiles, the gate deciding when the square
//! families in `F_{p^{2r}}` and `GR(p^2, r)` are provably nonisomorphic,
//! the coset and multiplicity checks behind it, and profile comparison.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::arith::{checked_pow, is_prime, mod_pow};
use crate::designs::{intersection_numbers, profile_via_differences, IntersectionProfile, IsoOutcome};
use crate::error::{Error, Result};
use crate::families::{Construction, DifferenceFamily};
use crate::galois_ring::RingCtx;

fn pow_u128(q: u64, e: u32) -> Result<u128> {
    (q as u128).checked_pow(e).ok_or(Error::Overflow("closed-form power"))
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("closed-form multiplicity"))
}

fn residue_order(p: u64, r: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    checked_pow(p, r).ok_or(Error::Overflow("p^r"))
}

/// Profile of `dev(C)` for the order-`(p^r+1)` Wilson family in
/// `F_{p^{2r}}`. With `Q = p^r`:
/// `0 → ½(3Q⁵+Q⁴−2Q³)`, `1 → ½(Q⁶−Q⁵−Q⁴+Q³)`, `Q−2 → ½(Q⁴−Q²)`.
pub fn closed_form_profile_c(p: u64, r: u32) -> Result<IntersectionProfile> {
    let q = residue_order(p, r)?;
    if q < 3 {
        return Err(Error::InvalidParameters(format!("p^r = {q} < 3")));
    }
    let [q2, q3, q4, q5, q6] = [2, 3, 4, 5, 6].map(|e| pow_u128(q, e));
    let (q2, q3, q4, q5, q6) = (q2?, q3?, q4?, q5?, q6?);
    let rows = [
        (0, (3 * q5 + q4 - 2 * q3) / 2),
        (1, (q6 + q3 - q5 - q4) / 2),
        (q - 2, (q4 - q2) / 2),
    ];
    let mut out = IntersectionProfile::new();
    for (n, m) in rows {
        out.add(n, to_u64(m)?)?;
    }
    Ok(out)
}

/// Profile of `dev(C^H)` for the order-`2(p^r+1)` Wilson family, `p` odd,
/// `Q = p^r ≥ 5`. The two nontrivial keys depend on `Q mod 4`; coinciding
/// keys are merged.
pub fn closed_form_profile_ch(p: u64, r: u32) -> Result<IntersectionProfile> {
    let q = residue_order(p, r)?;
    if p == 2 {
        return Err(Error::InvalidParameters("p must be odd".into()));
    }
    if q < 5 {
        return Err(Error::InvalidParameters(format!("p^r = {q} < 5")));
    }
    let [q2, q3, q4, q5, q6] = [2, 3, 4, 5, 6].map(|e| pow_u128(q, e));
    let (q2, q3, q4, q5, q6) = (q2?, q3?, q4?, q5?, q6?);
    let single = (q4 - q2) / 2;
    let triple = 3 * (q4 - q2) / 2;
    let (a, b) = if q % 4 == 1 {
        (((q - 5) / 4, single), ((q - 1) / 4, triple))
    } else {
        (((q - 3) / 4, triple), ((q + 1) / 4, single))
    };
    let rows = [
        (0, (3 * q6 + 9 * q5 + q4 + 2 * q2 - 3 * q3) / 2),
        (1, (q6 + q3 - q5 - q4) / 2),
        a,
        b,
    ];
    let mut out = IntersectionProfile::new();
    for (n, m) in rows {
        out.add(n, to_u64(m)?)?;
    }
    Ok(out)
}

/// `2^(p−1) ≡ 1 (mod p²)`.
pub fn wieferich(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = (p as u128 * p as u128) as u64;
    let m = if p < 1 << 32 {
        m
    } else {
        return Err(Error::Overflow("p^2"));
    };
    Ok(mod_pow(2, p - 1, m) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub p: u64,
    pub r: u32,
    pub p_odd: bool,
    /// `(p^r − 1) mod 24`.
    pub mod24: u64,
    pub wieferich: bool,
    pub applies: bool,
    pub reasons: Vec<String>,
}

/// Whether the intersection-number argument separates `dev(C^H)` from
/// `dev(E^H)`: `p` odd, not Wieferich, and `24 | p^r − 1`.
pub fn gate(p: u64, r: u32) -> Result<GateReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    let mod24 = (mod_pow(p, r as u64, 24) + 23) % 24;
    let p_odd = p != 2;
    let wief = wieferich(p)?;
    let mut reasons = Vec::new();
    if !p_odd {
        reasons.push("p = 2 is even".to_string());
    }
    if wief {
        reasons.push(format!("p = {p} is a Wieferich prime"));
    }
    if mod24 != 0 {
        reasons.push(format!("p^r - 1 = {mod24} (mod 24)"));
    }
    Ok(GateReport {
        p,
        r,
        p_odd,
        mod24,
        wieferich: wief,
        applies: p_odd && !wief && mod24 == 0,
        reasons,
    })
}

fn split(ring: &RingCtx) -> Result<(Vec<u32>, Vec<u32>)> {
    if ring.residue_order() < 5 {
        return Err(Error::InvalidParameters("p^r must be at least 5".into()));
    }
    let s = ring.square_split()?;
    Ok((s.squares, s.non_squares))
}

fn is_square(ring: &RingCtx, unit: u32) -> bool {
    ring.residue_field().is_square(ring.residue(unit))
}

/// Multiset `A − B` (ordered differences, `a ≠ b`) as a dense count vector.
fn difference_counts(ring: &RingCtx, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut counts = vec![0u32; ring.order() as usize];
    for &x in a {
        for &y in b {
            if x != y {
                counts[ring.sub(x, y) as usize] += 1;
            }
        }
    }
    counts
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTally {
    pub square: u64,
    pub non_square: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCountReport {
    pub delta_ts: CosetTally,
    pub ts_minus_tn: CosetTally,
    pub expected_delta_ts: CosetTally,
    pub expected_ts_minus_tn: CosetTally,
}

impl CosetCountReport {
    pub fn matches(&self) -> bool {
        self.delta_ts == self.expected_delta_ts && self.ts_minus_tn == self.expected_ts_minus_tn
    }
}

fn tally(ring: &RingCtx, a: &[u32], b: &[u32], h: u64) -> Result<CosetTally> {
    let (mut sq, mut nsq) = (0u64, 0u64);
    for &x in a {
        for &y in b {
            if x == y {
                continue;
            }
            let d = ring.sub(x, y);
            if !ring.is_unit(d) {
                return Err(Error::NonUnitDifference { a: x, b: y });
            }
            if is_square(ring, d) {
                sq += 1;
            } else {
                nsq += 1;
            }
        }
    }
    if sq % h != 0 || nsq % h != 0 {
        return Err(Error::Mismatch("difference multiset is not a union of cosets".into()));
    }
    Ok(CosetTally {
        square: sq / h,
        non_square: nsq / h,
    })
}

/// Counts the square and non-square cosets of `T_S*` making up `ΔT_S*` and
/// `T_S* − T_N*`, next to the values predicted from `p^r mod 4`.
pub fn sn_coset_counts(ring: &RingCtx) -> Result<CosetCountReport> {
    let (ts, tn) = split(ring)?;
    let q = ring.residue_order() as u64;
    let h = ts.len() as u64;
    let (expected_delta_ts, expected_ts_minus_tn) = if q % 4 == 1 {
        let a = (q - 1) / 4;
        (
            CosetTally {
                square: (q - 5) / 4,
                non_square: a,
            },
            CosetTally {
                square: a,
                non_square: a,
            },
        )
    } else {
        let a = (q - 3) / 4;
        (
            CosetTally {
                square: a,
                non_square: a,
            },
            CosetTally {
                square: a,
                non_square: (q + 1) / 4,
            },
        )
    };
    Ok(CosetCountReport {
        delta_ts: tally(ring, &ts, &ts, h)?,
        ts_minus_tn: tally(ring, &ts, &tn, h)?,
        expected_delta_ts,
        expected_ts_minus_tn,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundScope {
    /// `ΔT_S* \ 2T_S*`, used when `p^r ≡ 1 (mod 4)`.
    DeltaTs,
    /// `(T_S* − T_N*) \ 2T_S*`, used when `p^r ≡ 3 (mod 4)`.
    TsMinusTn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub d: u32,
    pub multiplicity: u64,
    pub square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub scope: BoundScope,
    pub entries: Vec<BoundEntry>,
    pub min_over_scope: u64,
    pub max_over_scope: u64,
    /// Every in-scope multiplicity exceeds 1.
    pub lower_holds: bool,
    /// The strict upper bound, when `p^r − 1 ≡ 0` or `18 (mod 24)`.
    pub upper_bound: Option<u64>,
    pub upper_holds: Option<bool>,
    /// Largest multiplicity among the differences the upper bound covers.
    pub max_under_upper: Option<u64>,
    pub verdict: bool,
}

/// Exact multiplicities behind the lower and upper bounds on
/// `|T_S* ∩ (T_S* + d)|` and `|T_S* ∩ (T_N* + d)|`.
///
/// For `p^r ≡ 1 (mod 24)` the upper bound `(p^r−5)/4` is checked on square
/// in-scope differences; for `p^r ≡ 19 (mod 24)` the bound `(p^r+1)/4` is
/// checked on every in-scope difference.
pub fn bound_report(ring: &RingCtx) -> Result<BoundReport> {
    let (ts, tn) = split(ring)?;
    let p = ring.p() as u64;
    if wieferich(p)? {
        return Err(Error::InvalidParameters(format!("p = {p} is a Wieferich prime")));
    }
    let q = ring.residue_order() as u64;
    let (scope, counts) = if q % 4 == 1 {
        (BoundScope::DeltaTs, difference_counts(ring, &ts, &ts))
    } else {
        (BoundScope::TsMinusTn, difference_counts(ring, &ts, &tn))
    };
    let two = ring.from_int(2);
    let twice: BTreeSet<u32> = ts.iter().map(|&s| ring.mul(two, s)).collect();
    let entries: Vec<BoundEntry> = counts
        .iter()
        .enumerate()
        .filter(|&(d, &c)| c > 0 && !twice.contains(&(d as u32)))
        .map(|(d, &c)| BoundEntry {
            d: d as u32,
            multiplicity: c as u64,
            square: is_square(ring, d as u32),
        })
        .collect();
    let min_over_scope = entries.iter().map(|e| e.multiplicity).min().unwrap_or(0);
    let max_over_scope = entries.iter().map(|e| e.multiplicity).max().unwrap_or(0);
    let lower_holds = entries.iter().all(|e| e.multiplicity > 1);
    let (upper_bound, covered): (Option<u64>, Vec<&BoundEntry>) = match (q - 1) % 24 {
        0 => (
            (q.checked_sub(5)).map(|x| x / 4),
            entries.iter().filter(|e| e.square).collect(),
        ),
        18 => (Some((q + 1) / 4), entries.iter().collect()),
        _ => (None, Vec::new()),
    };
    let max_under_upper = upper_bound.and(covered.iter().map(|e| e.multiplicity).max());
    let upper_holds = upper_bound.map(|u| covered.iter().all(|e| e.multiplicity < u));
    Ok(BoundReport {
        scope,
        verdict: !entries.is_empty() && lower_holds && upper_holds.unwrap_or(true),
        entries,
        min_over_scope,
        max_over_scope,
        lower_holds,
        upper_bound,
        upper_holds,
        max_under_upper,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureMode {
    /// Distinct multiplicities of `pT_S* − pT_N*` on elements of `pT_N*`.
    pub on_ptn: BTreeSet<u64>,
    /// Distinct multiplicities on elements of `pT_S*`.
    pub on_pts: BTreeSet<u64>,
    /// Total multiplicity on everything else.
    pub elsewhere: u64,
}

/// Multiplicities in the multiset `pT_S* − pT_N*`.
pub fn failure_mode(ring: &RingCtx) -> Result<FailureMode> {
    let (ts, tn) = split(ring)?;
    let pts: Vec<u32> = ts.iter().map(|&x| ring.times_p(x)).collect();
    let ptn: Vec<u32> = tn.iter().map(|&x| ring.times_p(x)).collect();
    let counts = difference_counts(ring, &pts, &ptn);
    let on = |set: &[u32]| set.iter().map(|&x| counts[x as usize] as u64).collect::<BTreeSet<_>>();
    let on_ptn = on(&ptn);
    let on_pts = on(&pts);
    let inside: BTreeSet<u32> = pts.iter().chain(&ptn).copied().collect();
    let elsewhere = counts
        .iter()
        .enumerate()
        .filter(|(d, _)| !inside.contains(&(*d as u32)))
        .map(|(_, &c)| c as u64)
        .sum();
    Ok(FailureMode {
        on_ptn,
        on_pts,
        elsewhere,
    })
}

/// Squareness facts about `−1`, `1` and `2` relative to `T_S*` and `T_N*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareStructure {
    pub minus_one_teich_square: bool,
    pub one_in_delta_ts: bool,
    pub one_in_tn_minus_ts: bool,
    pub two_is_square: bool,
    /// Sum of the six sixth roots of unity in `T*`, when `6 | p^r − 1`.
    pub sixth_roots_sum_zero: Option<bool>,
}

pub fn square_structure(ring: &RingCtx) -> Result<SquareStructure> {
    let (ts, tn) = split(ring)?;
    let minus_one = ring.neg(1);
    let minus_one_teich_square = ring
        .is_teich_square(minus_one)
        .ok_or(Error::Mismatch("-1 is not Teichmüller".into()))?;
    let ts_set: BTreeSet<u32> = ts.iter().copied().collect();
    let one_in_delta_ts = ts.iter().any(|&s| s != 1 && ts_set.contains(&ring.sub(s, 1)));
    let one_in_tn_minus_ts = tn.iter().any(|&n| ts_set.contains(&ring.sub(n, 1)));
    let two_is_square = ring.is_square_unit(ring.from_int(2))?;
    let n = ring.residue_order() as u64 - 1;
    let sixth_roots_sum_zero =
        (n % 6 == 0).then(|| (0..6).fold(0, |acc, k| ring.add(acc, ring.xi_pow(k * n / 6))) == 0);
    Ok(SquareStructure {
        minus_one_teich_square,
        one_in_delta_ts,
        one_in_tn_minus_ts,
        two_is_square,
        sixth_roots_sum_zero,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Nonisomorphic {
        witness_key: u64,
    },
    /// Equal profiles. The profile is not a complete invariant, so this is
    /// never upgraded to "isomorphic".
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub profile_a: IntersectionProfile,
    pub profile_b: IntersectionProfile,
    pub verdict: Verdict,
}

/// The smallest key in the symmetric difference of the key sets, else the
/// smallest key whose multiplicities differ.
pub fn witness_key(a: &IntersectionProfile, b: &IntersectionProfile) -> Option<u64> {
    let ka: BTreeSet<u64> = intersection_numbers(a).into_iter().collect();
    let kb: BTreeSet<u64> = intersection_numbers(b).into_iter().collect();
    ka.symmetric_difference(&kb)
        .next()
        .copied()
        .or_else(|| ka.iter().copied().find(|&k| a.get(k) != b.get(k)))
}

/// Compares the intersection profiles of `dev(a)` and `dev(b)`, computed
/// concurrently.
pub fn compare_designs(a: &DifferenceFamily, b: &DifferenceFamily) -> Result<Comparison> {
    if (a.v(), a.k(), a.b()) != (b.v(), b.k(), b.b()) {
        return Err(Error::Mismatch(format!(
            "(v, k, b) = ({}, {}, {}) against ({}, {}, {})",
            a.v(),
            a.k(),
            a.b(),
            b.v(),
            b.k(),
            b.b()
        )));
    }
    let (pa, pb) = rayon::join(|| profile_via_differences(a), || profile_via_differences(b));
    let (profile_a, profile_b) = (pa?, pb?);
    let verdict = match witness_key(&profile_a, &profile_b) {
        Some(witness_key) => Verdict::Nonisomorphic { witness_key },
        None => Verdict::Inconclusive,
    };
    Ok(Comparison {
        profile_a,
        profile_b,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedDesign {
    pub construction: String,
    pub group: String,
    pub v: u32,
    pub k: u32,
    pub lambda: u32,
    pub b: usize,
    pub intersection_numbers: Vec<u64>,
    pub profile: IntersectionProfile,
}

impl CertifiedDesign {
    fn new(c: Construction, fam: &DifferenceFamily, profile: IntersectionProfile) -> Self {
        CertifiedDesign {
            construction: c.name(),
            group: fam.group().to_string(),
            v: fam.v(),
            k: fam.k(),
            lambda: fam.lambda(),
            b: fam.b(),
            intersection_numbers: intersection_numbers(&profile),
            profile,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub p: Option<u64>,
    pub r: Option<u32>,
}

/// Machine-readable outcome of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub tool: &'static str,
    pub version: &'static str,
    pub parameters: Parameters,
    pub design_a: CertifiedDesign,
    pub design_b: CertifiedDesign,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateReport>,
    pub verdict: &'static str,
    pub witness_key: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_search: Option<IsoOutcome>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }
}

/// Builds both families and certifies their comparison. `p` and `r` are
/// required unless both constructions ignore them; the gate is reported
/// whenever they are given.
pub fn certify(p: Option<u64>, r: Option<u32>, a: Construction, b: Construction) -> Result<Certificate> {
    let build = |c: Construction| match (p, r) {
        (Some(p), Some(r)) => c.build(p, r),
        _ if !c.uses_parameters() => c.build(0, 0),
        _ => Err(Error::InvalidParameters(format!("{c} needs --p and --r"))),
    };
    let (fa, fb) = (build(a)?, build(b)?);
    let cmp = compare_designs(&fa, &fb)?;
    let gate = match (p, r) {
        (Some(p), Some(r)) => Some(gate(p, r)?),
        _ => None,
    };
    let (verdict, witness_key) = match cmp.verdict {
        Verdict::Nonisomorphic { witness_key } => ("nonisomorphic", Some(witness_key)),
        Verdict::Inconclusive => ("inconclusive", None),
    };
    Ok(Certificate {
        tool: "ddf",
        version: crate::TOOL_VERSION,
        parameters: Parameters { p, r },
        design_a: CertifiedDesign::new(a, &fa, cmp.profile_a),
        design_b: CertifiedDesign::new(b, &fb, cmp.profile_b),
        gate,
        verdict,
        witness_key,
        iso_search: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::choose2;
    use crate::galois_ring::build_ring;

    #[test]
    fn profile_c_at_25() {
        let p = closed_form_profile_c(5, 2).unwrap();
        assert_eq!(p.get(0), (3 * 5u64.pow(10) + 5u64.pow(8) - 2 * 5u64.pow(6)) / 2);
        assert_eq!(p.get(1), 117_000_000);
        assert_eq!(p.get(23), (5u64.pow(8) - 5u64.pow(4)) / 2);
        assert!(p.total_matches(625 * 26).unwrap());
    }

    #[test]
    fn profile_c_merges_at_3() {
        let p = closed_form_profile_c(3, 1).unwrap();
        assert_eq!(intersection_numbers(&p), vec![0, 1]);
        assert!(p.total_matches(9 * 4).unwrap());
    }

    #[test]
    fn profile_ch_examples() {
        let p = closed_form_profile_ch(5, 2).unwrap();
        assert_eq!(
            p.counts().iter().map(|(&k, &m)| (k, m)).collect::<Vec<_>>(),
            vec![(0, 410_328_750), (1, 117_000_000), (5, 195_000), (6, 585_000)]
        );
        assert_eq!(
            intersection_numbers(&closed_form_profile_ch(7, 1).unwrap()),
            vec![0, 1, 2]
        );
        assert_eq!(
            intersection_numbers(&closed_form_profile_ch(13, 1).unwrap()),
            vec![0, 1, 2, 3]
        );
        for (p, r) in [(5u64, 1), (7, 1), (3, 2), (13, 1), (7, 2), (11, 1)] {
            let q = p.pow(r);
            let blocks = q * q * 2 * (q + 1);
            assert_eq!(
                closed_form_profile_ch(p, r).unwrap().total().unwrap(),
                choose2(blocks).unwrap()
            );
        }
        assert!(closed_form_profile_ch(2, 3).is_err());
        assert!(closed_form_profile_ch(3, 1).is_err());
    }

    #[test]
    fn gate_examples() {
        let g = gate(5, 2).unwrap();
        assert!(g.applies && g.reasons.is_empty());
        let g = gate(7, 1).unwrap();
        assert!(!g.applies);
        assert_eq!(g.mod24, 6);
        let g = gate(1093, 2).unwrap();
        assert!(g.wieferich && !g.applies);
        assert!(!gate(2, 4).unwrap().applies);
        assert!(gate(9, 1).is_err());
    }

    #[test]
    fn wieferich_examples() {
        assert!(wieferich(1093).unwrap());
        assert!(wieferich(3511).unwrap());
        assert!(!wieferich(5).unwrap());
        assert!(wieferich(15).is_err());
    }

    #[test]
    fn coset_counts() {
        let r = sn_coset_counts(&build_ring(5, 2).unwrap()).unwrap();
        assert_eq!(
            r.delta_ts,
            CosetTally {
                square: 5,
                non_square: 6
            }
        );
        assert_eq!(
            r.ts_minus_tn,
            CosetTally {
                square: 6,
                non_square: 6
            }
        );
        assert!(r.matches());
        let r = sn_coset_counts(&build_ring(7, 1).unwrap()).unwrap();
        assert_eq!(
            r.delta_ts,
            CosetTally {
                square: 1,
                non_square: 1
            }
        );
        assert_eq!(
            r.ts_minus_tn,
            CosetTally {
                square: 1,
                non_square: 2
            }
        );
        let r = sn_coset_counts(&build_ring(5, 1).unwrap()).unwrap();
        assert_eq!(
            r.delta_ts,
            CosetTally {
                square: 0,
                non_square: 1
            }
        );
        assert!(sn_coset_counts(&build_ring(3, 1).unwrap()).is_err());
    }

    #[test]
    fn bounds_at_25() {
        let b = bound_report(&build_ring(5, 2).unwrap()).unwrap();
        assert_eq!(b.scope, BoundScope::DeltaTs);
        assert_eq!(b.upper_bound, Some(5));
        assert!(b.verdict);
        assert!(b
            .entries
            .iter()
            .filter(|e| e.square)
            .all(|e| 1 < e.multiplicity && e.multiplicity < 5));
    }

    #[test]
    fn failure_mode_at_19() {
        let f = failure_mode(&build_ring(19, 1).unwrap()).unwrap();
        assert_eq!(f.on_ptn, BTreeSet::from([5]));
        assert_eq!(f.on_pts, BTreeSet::from([4]));
    }

    #[test]
    fn witness_prefers_key_set_difference() {
        let a = IntersectionProfile::from_counts([(0, 5), (1, 3), (4, 1)]).unwrap();
        let b = IntersectionProfile::from_counts([(0, 4), (1, 3), (2, 1), (4, 1)]).unwrap();
        assert_eq!(witness_key(&a, &b), Some(2));
        let c = IntersectionProfile::from_counts([(0, 4), (1, 4), (4, 1)]).unwrap();
        assert_eq!(witness_key(&a, &c), Some(0));
        assert_eq!(witness_key(&a, &a), None);
    }
}
