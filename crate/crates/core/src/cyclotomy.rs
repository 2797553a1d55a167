//! Cyclotomic numbers `(i,j)_e = |(C_i + 1) ∩ C_j|`.
//!
//! Tables come either from brute force over a field or from the closed
//! forms for orders `e = p^r + 1` and `2e` over `F_{p^{2r}}`. In the
//! order-`2e` closed form most cells are only known up to the constraint
//! that each quadruple `(i,j), (i,j+e), (i+e,j), (i+e,j+e)` sums to 1;
//! those cells are stored as unknown rather than guessed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::arith::{checked_pow, is_prime};
use crate::algebra::{build_field, FieldCtx};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicTable {
    e: u32,
    f: u64,
    q: u64,
    /// Row-major, `None` for an unknown cell.
    cells: Vec<Option<u64>>,
}

impl CyclotomicTable {
    fn blank(e: u32, q: u64) -> Self {
        CyclotomicTable {
            e,
            f: (q - 1) / e as u64,
            q,
            cells: vec![None; e as usize * e as usize],
        }
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn get(&self, i: u32, j: u32) -> Option<u64> {
        self.cells[i as usize * self.e as usize + j as usize]
    }

    pub fn set(&mut self, i: u32, j: u32, value: Option<u64>) {
        let e = self.e as usize;
        self.cells[i as usize * e + j as usize] = value;
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn unknown_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    /// Cells `(i,j)` where both tables are known and disagree.
    pub fn known_mismatches(&self, other: &CyclotomicTable) -> Result<Vec<(u32, u32)>> {
        if (self.e, self.q) != (other.e, other.q) {
            return Err(Error::Mismatch("tables of different order or field".into()));
        }
        let mut out = Vec::new();
        for i in 0..self.e {
            for j in 0..self.e {
                if let (Some(a), Some(b)) = (self.get(i, j), other.get(i, j)) {
                    if a != b {
                        out.push((i, j));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Header row `e,f,q`, then one row per `i`; unknown cells print as `?`.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{},{},{}\n", self.e, self.f, self.q);
        for i in 0..self.e {
            for j in 0..self.e {
                if j > 0 {
                    s.push(',');
                }
                match self.get(i, j) {
                    Some(v) => write!(s, "{v}").unwrap(),
                    None => s.push('?'),
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Brute-force table: each nonzero `x` with `x + 1 ≠ 0` contributes to
/// `(ind x, ind (x+1))`.
pub fn cyclotomic_table(field: &FieldCtx, e: u32) -> Result<CyclotomicTable> {
    let q = field.order() as u64;
    if e == 0 || (q - 1) % e as u64 != 0 {
        return Err(Error::NotADivisor {
            divisor: e as u64,
            value: q - 1,
        });
    }
    let mut t = CyclotomicTable::blank(e, q);
    let mut counts = vec![0u64; e as usize * e as usize];
    for x in 1..field.order() {
        let y = field.add(x, 1);
        if y == 0 {
            continue;
        }
        let i = field.log(x).expect("nonzero") % e;
        let j = field.log(y).expect("nonzero") % e;
        counts[i as usize * e as usize + j as usize] += 1;
    }
    t.cells = counts.into_iter().map(Some).collect();
    Ok(t)
}

fn residue_order(p: u64, r: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    let big_q = checked_pow(p, r).ok_or(Error::Overflow("p^r"))?;
    checked_pow(big_q, 2).ok_or(Error::Overflow("p^(2r)"))?;
    Ok(big_q)
}

/// The order-`(p^r+1)` table over `F_{p^{2r}}`: `(0,0) = p^r − 2`, `1` for
/// `i ≠ j` with `i, j ≠ 0`, and `0` elsewhere.
pub fn closed_form_order_e(p: u64, r: u32) -> Result<CyclotomicTable> {
    let big_q = residue_order(p, r)?;
    let e = u32::try_from(big_q + 1).map_err(|_| Error::Overflow("order"))?;
    let mut t = CyclotomicTable::blank(e, big_q * big_q);
    for i in 0..e {
        for j in 0..e {
            let v = if i == 0 && j == 0 {
                big_q - 2
            } else if i != 0 && j != 0 && i != j {
                1
            } else {
                0
            };
            t.set(i, j, Some(v));
        }
    }
    Ok(t)
}

/// The order-`2(p^r+1)` table over `F_{p^{2r}}`, `p` odd. The four cells on
/// `{0, e}` depend on `p^r mod 4`; cells in row or column `0` or `e`, or
/// with `i ≡ j (mod e)`, are zero; the rest are unknown.
pub fn closed_form_order_2e(p: u64, r: u32) -> Result<CyclotomicTable> {
    let big_q = residue_order(p, r)?;
    if p == 2 {
        return Err(Error::InvalidParameters("order-2e closed form needs odd p".into()));
    }
    let e = u32::try_from(big_q + 1).map_err(|_| Error::Overflow("order"))?;
    let mut t = CyclotomicTable::blank(2 * e, big_q * big_q);
    let special = |x: u32| x == 0 || x == e;
    for i in 0..2 * e {
        for j in 0..2 * e {
            let v = if special(i) && special(j) {
                Some(if big_q % 4 == 1 {
                    if i == 0 && j == 0 {
                        (big_q - 5) / 4
                    } else {
                        (big_q - 1) / 4
                    }
                } else if i == 0 && j == e {
                    (big_q + 1) / 4
                } else {
                    (big_q - 3) / 4
                })
            } else if special(i) || special(j) || i % e == j % e {
                Some(0)
            } else {
                None
            };
            t.set(i, j, v);
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SumCheck {
    Pass,
    /// `expected` is `(i,j)_e`; `found` is the sum of the four order-`2e`
    /// cells, or `None` when the four cells are all unknown and the
    /// sum-one constraint cannot hold.
    Fail {
        cell: (u32, u32),
        expected: u64,
        found: Option<u64>,
    },
}

/// Checks `(i,j)_e = Σ (k,l)_{2e}` over `k ∈ {i, i+e}`, `l ∈ {j, j+e}`. A
/// fully unknown quadruple is taken to satisfy its sum-one constraint.
pub fn check_sum_relation(table_e: &CyclotomicTable, table_2e: &CyclotomicTable) -> Result<SumCheck> {
    if table_e.q != table_2e.q || table_2e.e != 2 * table_e.e {
        return Err(Error::Mismatch(format!(
            "orders {} and {} over fields of order {} and {}",
            table_e.e, table_2e.e, table_e.q, table_2e.q
        )));
    }
    if !table_e.is_complete() {
        return Err(Error::UnknownEntries);
    }
    let e = table_e.e;
    for i in 0..e {
        for j in 0..e {
            let expected = table_e.get(i, j).expect("complete");
            let quad = [(i, j), (i, j + e), (i + e, j), (i + e, j + e)].map(|(k, l)| table_2e.get(k, l));
            let known = quad.iter().filter(|c| c.is_some()).count();
            let found = match known {
                4 => Some(quad.iter().map(|c| c.unwrap()).sum::<u64>()),
                0 => None,
                _ => {
                    return Err(Error::Mismatch(format!(
                        "quadruple for ({i},{j}) is only partially known"
                    )))
                }
            };
            let ok = match found {
                Some(s) => s == expected,
                None => expected == 1,
            };
            if !ok {
                return Ok(SumCheck::Fail {
                    cell: (i, j),
                    expected,
                    found,
                });
            }
        }
    }
    Ok(SumCheck::Pass)
}

/// Fully unknown quadruples of an order-`2e` table, by their order-`e` cell.
pub fn unknown_quadruples(table_2e: &CyclotomicTable) -> Vec<(u32, u32)> {
    let e = table_2e.e / 2;
    let mut out = Vec::new();
    for i in 0..e {
        for j in 0..e {
            let quad = [(i, j), (i, j + e), (i + e, j), (i + e, j + e)];
            if quad.iter().all(|&(k, l)| table_2e.get(k, l).is_none()) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Checks that every unknown quadruple of `closed` holds exactly one 1 and
/// three 0s in the brute-force table `brute`. Returns the first offender.
pub fn check_unknown_quadruples(closed: &CyclotomicTable, brute: &CyclotomicTable) -> Result<Option<(u32, u32)>> {
    if (closed.e, closed.q) != (brute.e, brute.q) || !brute.is_complete() {
        return Err(Error::Mismatch("need a complete table of the same order".into()));
    }
    let e = closed.e / 2;
    for (i, j) in unknown_quadruples(closed) {
        let mut vals = [(i, j), (i, j + e), (i + e, j), (i + e, j + e)].map(|(k, l)| brute.get(k, l).unwrap());
        vals.sort_unstable();
        if vals != [0, 0, 0, 1] {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

/// `N → n_e(N)`, the number of cells equal to `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountSummary {
    pub counts: BTreeMap<u64, u64>,
}

impl CountSummary {
    pub fn get(&self, n: u64) -> u64 {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Frequency map of a complete table. For an order-`(p^r+1)` table over
/// `F_{p^{2r}}` the counts `n(0) = 3p^r`, `n(1) = p^r(p^r−1)` and
/// `n(p^r−2) = 1` (merged when keys coincide) are also enforced.
pub fn count_summary(table: &CyclotomicTable) -> Result<CountSummary> {
    let mut counts = BTreeMap::new();
    for c in &table.cells {
        let v = c.ok_or(Error::UnknownEntries)?;
        *counts.entry(v).or_insert(0u64) += 1;
    }
    let summary = CountSummary { counts };
    let big_q = table.e as u64 - 1;
    if big_q >= 2 && big_q * big_q == table.q {
        let mut expected = BTreeMap::new();
        for (n, m) in [(0, 3 * big_q), (1, big_q * (big_q - 1)), (big_q - 2, 1)] {
            *expected.entry(n).or_insert(0u64) += m;
        }
        if expected != summary.counts {
            return Err(Error::Mismatch(format!(
                "order-{} counts {:?} differ from {:?}",
                table.e, summary.counts, expected
            )));
        }
    }
    Ok(summary)
}

/// Row sums must equal `f − [−1 ∈ C_i]`. Returns the first failing row.
pub fn check_row_sums(field: &FieldCtx, table: &CyclotomicTable) -> Option<u32> {
    let minus_one = field.log(field.neg(1)).expect("nonzero") % table.e;
    (0..table.e).find(|&i| {
        let sum: u64 = (0..table.e).map(|j| table.get(i, j).unwrap_or(0)).sum();
        sum != table.f - u64::from(i == minus_one)
    })
}

/// Consecutive square patterns in `F_{p^r}`: how many nonzero `s` of each
/// kind have `s + 1` a nonzero square or a non-square. `s = −1` is skipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DicksonCounts {
    pub qq: u64,
    pub qn: u64,
    pub nn: u64,
    pub nq: u64,
}

impl DicksonCounts {
    pub fn as_tuple(&self) -> (u64, u64, u64, u64) {
        (self.qq, self.qn, self.nn, self.nq)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DicksonReport {
    pub counted: DicksonCounts,
    pub formula: DicksonCounts,
}

impl DicksonReport {
    pub fn matches(&self) -> bool {
        self.counted == self.formula
    }
}

pub fn dickson_formula(big_q: u64) -> DicksonCounts {
    if big_q % 4 == 1 {
        let a = (big_q - 1) / 4;
        DicksonCounts {
            qq: (big_q - 5) / 4,
            qn: a,
            nn: a,
            nq: a,
        }
    } else {
        let a = (big_q - 3) / 4;
        DicksonCounts {
            qq: a,
            qn: (big_q + 1) / 4,
            nn: a,
            nq: a,
        }
    }
}

pub fn dickson_counts(p: u64, r: u32) -> Result<DicksonReport> {
    if p == 2 {
        return Err(Error::InvalidParameters("square patterns need odd p".into()));
    }
    let field = build_field(p, r)?;
    let mut c = DicksonCounts {
        qq: 0,
        qn: 0,
        nn: 0,
        nq: 0,
    };
    for s in 1..field.order() {
        let t = field.add(s, 1);
        if t == 0 {
            continue;
        }
        match (field.is_square(s), field.is_square(t)) {
            (true, true) => c.qq += 1,
            (true, false) => c.qn += 1,
            (false, true) => c.nq += 1,
            (false, false) => c.nn += 1,
        }
    }
    Ok(DicksonReport {
        counted: c,
        formula: dickson_formula(field.order() as u64),
    })
}
