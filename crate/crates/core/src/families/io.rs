//! Plain-text family files.
//!
//! ```text
//! # group Z25^2
//! v k lambda b
//! <block 1 encodings, space separated>
//! ...
//! ```
//!
//! The `# group` line is optional; without it the group is cyclic `Z_v`.
//! Other lines starting with `#` and blank lines are ignored.

use std::io::{BufRead, Write};

use super::DifferenceFamily;
use crate::algebra::AdditiveGroup;
use crate::error::{Error, Result};

pub fn write_family<W: Write>(fam: &DifferenceFamily, mut out: W) -> Result<()> {
    writeln!(out, "# group {}", fam.group())?;
    writeln!(out, "{} {} {} {}", fam.v(), fam.k(), fam.lambda(), fam.b())?;
    for block in fam.blocks() {
        let line: Vec<String> = block.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected a non-negative integer, found {t:?}"),
            })
        })
        .collect()
}

/// Reads and validates a family file. Structural invariants are enforced by
/// [`DifferenceFamily::new`]; the difference counts themselves are left to
/// [`super::validate_ddf`].
pub fn read_family<R: BufRead>(input: R) -> Result<DifferenceFamily> {
    let mut group: Option<AdditiveGroup> = None;
    let mut header: Option<(usize, [u32; 4])> = None;
    let mut blocks = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(desc) = comment.trim().strip_prefix("group") {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "group line must precede the header".into(),
                    });
                }
                group = Some(desc.trim().parse().map_err(|e: Error| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?);
            }
            continue;
        }
        let nums = parse_numbers(trimmed, lineno)?;
        if header.is_none() {
            let [v, k, lambda, b] = nums[..] else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("header must be `v k lambda b`, found {} fields", nums.len()),
                });
            };
            header = Some((lineno, [v, k, lambda, b]));
        } else {
            blocks.push((lineno, nums));
        }
    }
    let Some((hline, [v, k, lambda, b])) = header else {
        return Err(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        });
    };
    let group = match group {
        Some(g) => g,
        None => AdditiveGroup::cyclic(v)?,
    };
    if group.order() != v {
        return Err(Error::Parse {
            line: hline,
            msg: format!("v = {v} but {group} has order {}", group.order()),
        });
    }
    if blocks.len() != b as usize {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {b} blocks, found {}", blocks.len()),
        });
    }
    if let Some((line, blk)) = blocks.iter().find(|(_, blk)| blk.len() != k as usize) {
        return Err(Error::Parse {
            line: *line,
            msg: format!("block has {} elements, expected {k}", blk.len()),
        });
    }
    DifferenceFamily::new(group, blocks.into_iter().map(|(_, b)| b).collect(), lambda)
}
